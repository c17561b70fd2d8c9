//! Finitely generated modules over a local algebra, given as cokernels, and
//! bounded complexes of such modules.
//!
//! Everything here reduces to `F_p`-linear algebra on the expanded
//! matrices: a submodule of `A^g` generated by columns is the `F_p`-span of
//! all monomial multiples of those columns, which is exactly the column
//! space of the expanded matrix.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{LocalAlgebra, PrimeSite, ProductRing};
use crate::complex::{FreeComplex, LocalComplex};
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, SpanBuilder};
use crate::matrix::{flatten, unflatten, LocalMatrix};

/// `coker(rel : A^r -> A^gens)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub gens: usize,
    pub rel: LocalMatrix,
}

impl Presentation {
    pub fn free(alg: &LocalAlgebra, rank: usize) -> Self {
        Self {
            gens: rank,
            rel: LocalMatrix::zeros(alg, rank, 0),
        }
    }

    /// `A / (a)`.
    pub fn cyclic(a: &[u32]) -> Self {
        Self {
            gens: 1,
            rel: LocalMatrix::from_entries(1, 1, vec![a.to_vec()]),
        }
    }

    /// The residue field `A / m`.
    pub fn residue_field(alg: &LocalAlgebra) -> Self {
        let gens = alg.generator_variables();
        let cols: Vec<Vec<u32>> = gens.iter().map(|&v| alg.variable(v)).collect();
        Self {
            gens: 1,
            rel: LocalMatrix::from_entries(1, cols.len(), cols),
        }
    }

    /// `dim_k` of the module.
    pub fn k_dim(&self, alg: &LocalAlgebra) -> usize {
        self.gens * alg.dim() - self.rel.expand(alg).rank()
    }
}

/// Columns among `cols` (vectors in `A^rows`) that minimally generate their
/// span, chosen greedily in order.
pub fn minimal_generators(alg: &LocalAlgebra, rows: usize, cols: &[Vec<Vec<u32>>]) -> Vec<Vec<Vec<u32>>> {
    let dim = alg.dim();
    let mut span = SpanBuilder::new(alg.field(), rows * dim);
    // m * N
    for col in cols {
        for b in 1..dim {
            let mut mono = alg.zero();
            mono[b] = 1;
            let v: Vec<Vec<u32>> = col.iter().map(|e| alg.mul(&mono, e)).collect();
            span.insert(&flatten(&v));
        }
    }
    cols.iter().filter(|col| span.insert(&flatten(col))).cloned().collect()
}

/// Minimal generators of `ker(m : A^cols -> A^rows)`, as the columns of a
/// `m.cols() x h` matrix.
pub fn kernel_generators(alg: &LocalAlgebra, m: &LocalMatrix) -> LocalMatrix {
    let kernel = m.expand(alg).kernel_basis();
    let cands: Vec<Vec<Vec<u32>>> = kernel.iter().map(|v| unflatten(alg, v)).collect();
    let gens = minimal_generators(alg, m.cols(), &cands);
    LocalMatrix::from_columns(alg, m.cols(), &gens)
}

/// Removes generators that are killed by a relation with a unit entry and
/// prunes relations to a minimal generating set.
pub fn minimize_presentation(alg: &LocalAlgebra, p: &Presentation) -> Presentation {
    let mut rel = p.rel.clone();
    let mut gens = p.gens;
    while let Some((r, c)) = rel.find_unit(alg) {
        let u_inv = alg.inverse(rel.get(r, c)).expect("unit");
        let keep_rows: Vec<usize> = (0..rel.rows()).filter(|&k| k != r).collect();
        let keep_cols: Vec<usize> = (0..rel.cols()).filter(|&k| k != c).collect();
        let mut next = rel.submatrix(&keep_rows, &keep_cols);
        for (a, &rr) in keep_rows.iter().enumerate() {
            let g = alg.mul(rel.get(rr, c), &u_inv);
            if alg.is_zero(&g) {
                continue;
            }
            for (b, &cc) in keep_cols.iter().enumerate() {
                let v = alg.sub(next.get(a, b), &alg.mul(&g, rel.get(r, cc)));
                next.set(a, b, v);
            }
        }
        rel = next;
        gens -= 1;
    }
    let cols: Vec<Vec<Vec<u32>>> = (0..rel.cols()).map(|c| rel.column(c)).collect();
    let min = minimal_generators(alg, gens, &cols);
    Presentation {
        gens,
        rel: LocalMatrix::from_columns(alg, gens, &min),
    }
}

/// A minimal free resolution `... -> F_1 -> F_0 -> M`, computed up to a cap.
#[derive(Debug, Clone)]
pub struct Resolution {
    /// `betti[j] = rank F_j`.
    pub betti: Vec<usize>,
    /// `maps[j-1] : F_j -> F_{j-1}`, shape `betti[j-1] x betti[j]`.
    pub maps: Vec<LocalMatrix>,
    /// True when some syzygy vanished within the cap.
    pub finite: bool,
}

impl Resolution {
    pub fn proj_dim(&self) -> Option<usize> {
        if !self.finite {
            return None;
        }
        self.betti.iter().rposition(|&b| b > 0)
    }
}

/// Minimal resolution with at most `steps` maps computed.
pub fn resolve(alg: &LocalAlgebra, p: &Presentation, steps: usize) -> Resolution {
    let min = minimize_presentation(alg, p);
    let mut betti = vec![min.gens];
    let mut maps = Vec::new();
    if min.gens == 0 {
        return Resolution { betti, maps, finite: true };
    }
    let mut current = min.rel;
    loop {
        if current.cols() == 0 {
            return Resolution { betti, maps, finite: true };
        }
        if maps.len() >= steps {
            return Resolution { betti, maps, finite: false };
        }
        betti.push(current.cols());
        let next = kernel_generators(alg, &current);
        maps.push(current);
        current = next;
    }
}

/// `Ω^j M = ker(F_{j-1} -> F_{j-2})`, presented as `coker(F_{j+1} -> F_j)`.
pub fn syzygy(alg: &LocalAlgebra, p: &Presentation, j: usize) -> Presentation {
    let res = resolve(alg, p, j + 1);
    let gens = res.betti.get(j).copied().unwrap_or(0);
    let rel = match res.maps.get(j) {
        Some(m) => m.clone(),
        None => LocalMatrix::zeros(alg, gens, 0),
    };
    Presentation { gens, rel }
}

/// `Hom_A(M, A)`: the kernel of `rel^T`, presented by its own syzygies.
pub fn dual_presentation(alg: &LocalAlgebra, p: &Presentation) -> Presentation {
    let b = kernel_generators(alg, &p.rel.transpose());
    let h = b.cols();
    let rel = kernel_generators(alg, &b);
    Presentation { gens: h, rel }
}

/// True when the module is free (its minimal presentation has no relations).
pub fn is_free(alg: &LocalAlgebra, p: &Presentation) -> bool {
    minimize_presentation(alg, p).rel.cols() == 0
}

/// A bounded complex of finitely presented modules over one local algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalModuleComplex {
    alg: Arc<LocalAlgebra>,
    lo: i64,
    terms: Vec<Presentation>,
    // diffs[j]: generators of term j -> generators of term j+1
    diffs: Vec<LocalMatrix>,
}

impl LocalModuleComplex {
    pub fn new(alg: Arc<LocalAlgebra>, lo: i64, terms: Vec<Presentation>, diffs: Vec<LocalMatrix>) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::InvariantViolation("wrong number of module differentials".into()));
        }
        for (j, t) in terms.iter().enumerate() {
            if t.rel.rows() != t.gens {
                return Err(Error::InvariantViolation(format!(
                    "relations of term at degree {} have the wrong shape",
                    lo + j as i64
                )));
            }
        }
        for (j, d) in diffs.iter().enumerate() {
            if d.rows() != terms[j + 1].gens || d.cols() != terms[j].gens {
                return Err(Error::InvariantViolation(format!(
                    "differential at degree {} has the wrong shape",
                    lo + j as i64
                )));
            }
        }
        let c = Self { alg, lo, terms, diffs };
        c.check()?;
        Ok(c)
    }

    fn contained(&self, sub: &LocalMatrix, within: &LocalMatrix) -> bool {
        let a = sub.expand(&self.alg);
        let b = within.expand(&self.alg);
        b.hstack(&a).rank() == b.rank()
    }

    fn check(&self) -> Result<()> {
        let alg = &self.alg;
        for j in 0..self.diffs.len() {
            let d = &self.diffs[j];
            let deg = self.lo + j as i64;
            if !self.contained(&d.mul(alg, &self.terms[j].rel), &self.terms[j + 1].rel) {
                return Err(Error::InvariantViolation(format!(
                    "differential at degree {deg} is not well defined on the cokernel"
                )));
            }
            if j + 1 < self.diffs.len() {
                let dd = self.diffs[j + 1].mul(alg, d);
                if !self.contained(&dd, &self.terms[j + 2].rel) {
                    return Err(Error::InvariantViolation(format!("d∘d ≠ 0 at degree {deg}")));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<LocalAlgebra> {
        &self.alg
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        if self.terms.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.terms.len() as i64 - 1))
        }
    }

    pub fn term(&self, deg: i64) -> Option<&Presentation> {
        let j = deg - self.lo;
        if j < 0 {
            None
        } else {
            self.terms.get(j as usize)
        }
    }

    pub fn terms(&self) -> &[Presentation] {
        &self.terms
    }

    pub fn diffs(&self) -> &[LocalMatrix] {
        &self.diffs
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    fn gens(&self, deg: i64) -> usize {
        self.term(deg).map_or(0, |t| t.gens)
    }

    fn diff(&self, deg: i64) -> LocalMatrix {
        let j = deg - self.lo;
        if j >= 0 && (j as usize) < self.diffs.len() {
            self.diffs[j as usize].clone()
        } else {
            LocalMatrix::zeros(&self.alg, self.gens(deg + 1), self.gens(deg))
        }
    }

    fn rel_expanded(&self, deg: i64) -> FpMatrix {
        match self.term(deg) {
            Some(t) => t.rel.expand(&self.alg),
            None => FpMatrix::zeros(self.alg.field(), 0, 0),
        }
    }

    /// `dim_k H^i` for every degree with nonzero cohomology.
    pub fn homology_dims(&self) -> BTreeMap<i64, usize> {
        let Some((lo, hi)) = self.window() else {
            return BTreeMap::new();
        };
        let dim = self.alg.dim();
        let f = self.alg.field();
        let rel_rank = |deg: i64| -> usize {
            if self.term(deg).is_some() {
                self.rel_expanded(deg).rank()
            } else {
                0
            }
        };
        // rank [D_i | N_{i+1}]
        let joint = |deg: i64| -> usize {
            let rows = self.gens(deg + 1) * dim;
            if rows == 0 {
                return 0;
            }
            let d = self.diff(deg).expand(&self.alg);
            let n = if self.term(deg + 1).is_some() {
                self.rel_expanded(deg + 1)
            } else {
                FpMatrix::zeros(f, rows, 0)
            };
            d.hstack(&n).rank()
        };
        (lo..=hi)
            .filter_map(|i| {
                let free = self.gens(i) * dim;
                let h = free + rel_rank(i + 1) - joint(i) - joint(i - 1);
                (h > 0).then_some((i, h))
            })
            .collect()
    }

    pub fn shift(&self, n: i64) -> Self {
        let sign = self.alg.field().sign(n);
        Self {
            alg: self.alg.clone(),
            lo: self.lo - n,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale_fp(&self.alg, sign)).collect(),
        }
    }

    /// `(degree, module)` when exactly one term is nonzero (or none).
    pub fn single_term(&self) -> Option<Option<(i64, Presentation)>> {
        let nonzero: Vec<(i64, &Presentation)> = self
            .terms
            .iter()
            .enumerate()
            .filter(|(_, t)| t.k_dim(&self.alg) > 0)
            .map(|(j, t)| (self.lo + j as i64, t))
            .collect();
        match nonzero.len() {
            0 => Some(None),
            1 => Some(Some((nonzero[0].0, nonzero[0].1.clone()))),
            _ => None,
        }
    }

    pub fn from_local_free(c: &LocalComplex) -> Self {
        let alg = c.algebra().clone();
        let Some((lo, hi)) = c.window() else {
            return Self { alg, lo: 0, terms: Vec::new(), diffs: Vec::new() };
        };
        let terms = (lo..=hi).map(|i| Presentation::free(&alg, c.rank(i))).collect();
        let diffs = (lo..hi).map(|i| c.diff(i)).collect();
        Self { alg, lo, terms, diffs }
    }

    pub fn module(alg: Arc<LocalAlgebra>, deg: i64, m: Presentation) -> Self {
        Self { alg, lo: deg, terms: vec![m], diffs: Vec::new() }
    }

    pub fn zero(alg: Arc<LocalAlgebra>) -> Self {
        Self { alg, lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }
}

/// A bounded complex of finitely generated modules over a product ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleComplex {
    ring: Arc<ProductRing>,
    parts: Vec<LocalModuleComplex>,
}

impl ModuleComplex {
    pub fn from_parts(ring: Arc<ProductRing>, parts: Vec<LocalModuleComplex>) -> Result<Self> {
        if parts.len() != ring.num_sites() {
            return Err(Error::RingMismatch);
        }
        for (p, a) in parts.iter().zip(ring.factors()) {
            if p.algebra().as_ref() != a.as_ref() {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Self { ring, parts })
    }

    /// A module (one presentation per site) placed in degree `deg`.
    pub fn module(ring: &Arc<ProductRing>, deg: i64, sites: Vec<Presentation>) -> Result<Self> {
        if sites.len() != ring.num_sites() {
            return Err(Error::RingMismatch);
        }
        let parts = ring
            .factors()
            .iter()
            .zip(sites)
            .map(|(a, p)| LocalModuleComplex::module(a.clone(), deg, p))
            .collect();
        Ok(Self { ring: ring.clone(), parts })
    }

    pub fn from_free(x: &FreeComplex) -> Self {
        Self {
            ring: x.ring().clone(),
            parts: x.parts().iter().map(LocalModuleComplex::from_local_free).collect(),
        }
    }

    pub fn ring(&self) -> &Arc<ProductRing> {
        &self.ring
    }

    pub fn parts(&self) -> &[LocalModuleComplex] {
        &self.parts
    }

    pub fn part(&self, s: PrimeSite) -> &LocalModuleComplex {
        &self.parts[s.0]
    }

    pub fn shift(&self, n: i64) -> Self {
        Self {
            ring: self.ring.clone(),
            parts: self.parts.iter().map(|p| p.shift(n)).collect(),
        }
    }

    pub fn homology_profile(&self) -> crate::homology::HomologyProfile {
        crate::homology::HomologyProfile::from_sites(self.parts.iter().map(LocalModuleComplex::homology_dims).collect())
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        self.parts.iter().filter_map(LocalModuleComplex::window).reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn alg(n: u32) -> LocalAlgebra {
        LocalAlgebra::new(PrimeField::new(101).unwrap(), vec!["x".into()], vec![vec![n]]).unwrap()
    }

    #[test]
    fn residue_field_has_dimension_one() {
        let a = alg(3);
        assert_eq!(Presentation::residue_field(&a).k_dim(&a), 1);
        assert_eq!(Presentation::free(&a, 2).k_dim(&a), 6);
    }

    #[test]
    fn residue_field_resolution_is_periodic() {
        let a = alg(3);
        let res = resolve(&a, &Presentation::residue_field(&a), 6);
        assert!(!res.finite);
        assert!(res.betti.iter().all(|&b| b == 1));
        assert_eq!(res.betti.len(), 7);
    }

    #[test]
    fn free_module_resolution_stops() {
        let a = alg(2);
        let res = resolve(&a, &Presentation::free(&a, 3), 5);
        assert!(res.finite);
        assert_eq!(res.proj_dim(), Some(0));
        // 1 + x is a unit, so A/(1+x) = 0
        let u = a.add(&a.one(), &a.variable(0));
        let zero = resolve(&a, &Presentation::cyclic(&u), 5);
        assert_eq!(zero.betti, vec![0]);
        assert_eq!(zero.proj_dim(), None);
    }

    #[test]
    fn syzygy_and_dual_over_gorenstein() {
        let a = alg(3);
        let x = a.variable(0);
        // Ω(A/(x)) = (x) ≅ A/(x^2)
        let m = Presentation::cyclic(&x);
        let om = syzygy(&a, &m, 1);
        assert_eq!(om.k_dim(&a), 2);
        // duality preserves length over a self-injective ring
        let d = dual_presentation(&a, &m);
        assert_eq!(d.k_dim(&a), 1);
        assert!(!is_free(&a, &d));
        let df = dual_presentation(&a, &Presentation::free(&a, 2));
        assert_eq!(df.k_dim(&a), 6);
    }

    #[test]
    fn module_homology_matches_free_case() {
        let a = Arc::new(alg(2));
        let x = a.variable(0);
        let c = LocalComplex::new(a.clone(), -1, vec![1, 1], vec![LocalMatrix::from_entries(1, 1, vec![x])]).unwrap();
        let m = LocalModuleComplex::from_local_free(&c);
        assert_eq!(m.homology_dims(), crate::homology::local_homology_dims(&c));
    }

    #[test]
    fn ill_defined_map_rejected() {
        let a = Arc::new(alg(2));
        // k -> A by 1 is not well defined (x*1 != 0 in A)
        let k = Presentation::residue_field(&a);
        let free = Presentation::free(&a, 1);
        let e = LocalModuleComplex::new(a.clone(), 0, vec![k, free], vec![LocalMatrix::identity(&a, 1)]);
        assert!(e.is_err());
        // k -> A by x is fine
        let k = Presentation::residue_field(&a);
        let ok = LocalModuleComplex::new(
            a.clone(),
            0,
            vec![k, Presentation::free(&a, 1)],
            vec![LocalMatrix::from_entries(1, 1, vec![a.variable(0)])],
        )
        .unwrap();
        // H^0 = 0 (injective), H^1 = A/(x) = k
        assert_eq!(ok.homology_dims(), BTreeMap::from([(1, 1)]));
    }
}
