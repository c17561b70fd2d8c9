//! Bounded complexes of finite free modules.
//!
//! Indexing is cohomological: `d^i : X^i -> X^{i+1}`. A [`FreeComplex`] over a
//! product ring is stored as one [`LocalComplex`] per factor, which is exactly
//! a bounded complex of finitely generated projectives over the product. All
//! surgery operations act factorwise.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{LocalAlgebra, PrimeSite, ProductRing, RingElement};
use crate::error::{Error, Result};
use crate::matrix::LocalMatrix;

/// A bounded complex of free modules over one local algebra.
///
/// `diffs[j]` is the differential out of degree `lo + j`; the differential
/// out of the top degree is zero and not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalComplex {
    alg: Arc<LocalAlgebra>,
    lo: i64,
    ranks: Vec<usize>,
    diffs: Vec<LocalMatrix>,
}

/// Sign conventions available for dualizing. Only `Standard` is correct;
/// `RowAlternating` exists so the verifier can prove it detects sign faults.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DualConvention {
    #[default]
    Standard,
    RowAlternating,
}

impl LocalComplex {
    pub fn zero(alg: Arc<LocalAlgebra>) -> Self {
        Self {
            alg,
            lo: 0,
            ranks: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// The free module `A^rank` placed in degree `deg`.
    pub fn free_module(alg: Arc<LocalAlgebra>, deg: i64, rank: usize) -> Self {
        Self::from_parts_unchecked(alg, deg, vec![rank], Vec::new())
    }

    /// Validates shapes and `d∘d = 0`.
    pub fn new(
        alg: Arc<LocalAlgebra>,
        lo: i64,
        ranks: Vec<usize>,
        diffs: Vec<LocalMatrix>,
    ) -> Result<Self> {
        if diffs.len() + 1 != ranks.len().max(1) {
            return Err(Error::InvariantViolation(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (j, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[j + 1] || d.cols() != ranks[j] {
                return Err(Error::InvariantViolation(format!(
                    "differential at degree {} has shape {}x{}, expected {}x{}",
                    lo + j as i64,
                    d.rows(),
                    d.cols(),
                    ranks[j + 1],
                    ranks[j]
                )));
            }
        }
        let c = Self::from_parts_unchecked(alg, lo, ranks, diffs);
        c.check_d_squared()?;
        Ok(c)
    }

    pub(crate) fn from_parts_unchecked(
        alg: Arc<LocalAlgebra>,
        lo: i64,
        ranks: Vec<usize>,
        diffs: Vec<LocalMatrix>,
    ) -> Self {
        let mut c = Self {
            alg,
            lo,
            ranks,
            diffs,
        };
        c.trim();
        c
    }

    // drop zero-rank ends so the window is tight
    fn trim(&mut self) {
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.diffs.pop();
        }
        let lead = self.ranks.iter().take_while(|&&r| r == 0).count();
        if lead > 0 {
            self.ranks.drain(..lead);
            self.diffs.drain(..lead.min(self.diffs.len()));
            self.lo += lead as i64;
        }
        if self.ranks.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
        if self.diffs.len() + 1 > self.ranks.len() && !self.ranks.is_empty() {
            self.diffs.truncate(self.ranks.len() - 1);
        }
    }

    pub fn algebra(&self) -> &Arc<LocalAlgebra> {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// `(lo, hi)` of the tight window, `None` for the zero complex.
    pub fn window(&self) -> Option<(i64, i64)> {
        if self.ranks.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.ranks.len() as i64 - 1))
        }
    }

    pub fn rank(&self, deg: i64) -> usize {
        let j = deg - self.lo;
        if j < 0 || j >= self.ranks.len() as i64 {
            0
        } else {
            self.ranks[j as usize]
        }
    }

    /// `d^deg`, a `rank(deg+1) x rank(deg)` matrix (zero outside the window).
    pub fn diff(&self, deg: i64) -> LocalMatrix {
        let j = deg - self.lo;
        if j >= 0 && (j as usize) < self.diffs.len() {
            self.diffs[j as usize].clone()
        } else {
            LocalMatrix::zeros(&self.alg, self.rank(deg + 1), self.rank(deg))
        }
    }

    pub fn graded_ranks(&self) -> BTreeMap<i64, usize> {
        self.ranks
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(j, &r)| (self.lo + j as i64, r))
            .collect()
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for j in 1..self.diffs.len() {
            let prod = self.diffs[j].mul(&self.alg, &self.diffs[j - 1]);
            if !prod.is_zero() {
                return Err(Error::InvariantViolation(format!(
                    "d∘d ≠ 0 at degree {}",
                    self.lo + j as i64 - 1
                )));
            }
        }
        Ok(())
    }

    /// Every differential entry lies in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| d.is_minimal(&self.alg))
    }

    /// Euler characteristic of the underlying `F_p`-complex.
    pub fn euler_characteristic(&self) -> i64 {
        let dim = self.alg.dim() as i64;
        self.graded_ranks()
            .iter()
            .map(|(&i, &r)| if i.rem_euclid(2) == 0 { r as i64 * dim } else { -(r as i64) * dim })
            .sum()
    }

    /// `(X[n])^i = X^{i+n}` with differentials multiplied by `(-1)^n`.
    pub fn shift(&self, n: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let sign = self.alg.field().sign(n);
        Self {
            alg: self.alg.clone(),
            lo: self.lo - n,
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|d| d.scale_fp(&self.alg, sign)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let alg = &self.alg;
        let (lo, hi) = match (self.window(), other.window()) {
            (None, None) => return self.clone(),
            (Some(_), None) => return self.clone(),
            (None, Some(_)) => return other.clone(),
            (Some((a, b)), Some((c, d))) => (a.min(c), b.max(d)),
        };
        let ranks: Vec<usize> = (lo..=hi).map(|i| self.rank(i) + other.rank(i)).collect();
        let diffs = (lo..hi)
            .map(|i| {
                let mut m = LocalMatrix::zeros(alg, ranks[(i + 1 - lo) as usize], ranks[(i - lo) as usize]);
                m.put_block(0, 0, &self.diff(i));
                m.put_block(self.rank(i + 1), self.rank(i), &other.diff(i));
                m
            })
            .collect();
        Self::from_parts_unchecked(alg.clone(), lo, ranks, diffs)
    }

    /// Brutal truncation to the degrees `> cut` (a subcomplex).
    pub fn truncate_above(&self, cut: i64) -> Self {
        self.restrict_degrees(|i| i > cut)
    }

    /// Brutal truncation to the degrees `<= cut` (a quotient complex).
    pub fn truncate_below(&self, cut: i64) -> Self {
        self.restrict_degrees(|i| i <= cut)
    }

    fn restrict_degrees(&self, keep: impl Fn(i64) -> bool) -> Self {
        let Some((lo, hi)) = self.window() else {
            return self.clone();
        };
        let ranks: Vec<usize> = (lo..=hi).map(|i| if keep(i) { self.rank(i) } else { 0 }).collect();
        let diffs = (lo..hi)
            .map(|i| {
                if keep(i) && keep(i + 1) {
                    self.diff(i)
                } else {
                    LocalMatrix::zeros(&self.alg, ranks[(i + 1 - lo) as usize], ranks[(i - lo) as usize])
                }
            })
            .collect();
        Self::from_parts_unchecked(self.alg.clone(), lo, ranks, diffs)
    }

    pub fn dual_with(&self, convention: DualConvention) -> Self {
        let Some((lo, hi)) = self.window() else {
            return self.clone();
        };
        let alg = &self.alg;
        let f = alg.field();
        let new_lo = -hi;
        let ranks: Vec<usize> = (new_lo..=-lo).map(|i| self.rank(-i)).collect();
        let diffs = (new_lo..-lo)
            .map(|i| {
                let t = self.diff(-i - 1).transpose().scale_fp(alg, f.sign(i + 1));
                match convention {
                    DualConvention::Standard => t,
                    DualConvention::RowAlternating => {
                        let mut m = t;
                        for r in (1..m.rows()).step_by(2) {
                            for c in 0..m.cols() {
                                let v = alg.neg(m.get(r, c));
                                m.set(r, c, v);
                            }
                        }
                        m
                    }
                }
            })
            .collect();
        Self::from_parts_unchecked(alg.clone(), new_lo, ranks, diffs)
    }

    /// `(X*)^i = (X^{-i})*` with `d^i = (-1)^{i+1} (d_X^{-i-1})^T`.
    pub fn dual(&self) -> Self {
        self.dual_with(DualConvention::Standard)
    }

    /// Total tensor complex with `d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db`.
    pub fn tensor(&self, other: &Self) -> Self {
        let alg = &self.alg;
        let f = alg.field();
        let (Some((xl, xh)), Some((yl, yh))) = (self.window(), other.window()) else {
            return Self::zero(alg.clone());
        };
        let lo = xl + yl;
        let hi = xh + yh;
        // offset of the block X^i ⊗ Y^{n-i} inside (X⊗Y)^n
        let offset = |n: i64, i: i64| -> usize {
            (xl..i).map(|a| self.rank(a) * other.rank(n - a)).sum()
        };
        let total = |n: i64| -> usize { (xl..=xh).map(|a| self.rank(a) * other.rank(n - a)).sum() };
        let ranks: Vec<usize> = (lo..=hi).map(total).collect();
        let mut diffs = Vec::new();
        for n in lo..hi {
            let mut m = LocalMatrix::zeros(alg, total(n + 1), total(n));
            for i in xl..=xh {
                let j = n - i;
                let (ri, rj) = (self.rank(i), other.rank(j));
                if ri * rj == 0 {
                    continue;
                }
                let col0 = offset(n, i);
                // d_X ⊗ 1 into X^{i+1} ⊗ Y^j
                if self.rank(i + 1) > 0 {
                    let block = self.diff(i).kron(alg, &LocalMatrix::identity(alg, rj));
                    m.put_block(offset(n + 1, i + 1), col0, &block);
                }
                // (-1)^i 1 ⊗ d_Y into X^i ⊗ Y^{j+1}
                if other.rank(j + 1) > 0 {
                    let block = LocalMatrix::identity(alg, ri)
                        .kron(alg, &other.diff(j))
                        .scale_fp(alg, f.sign(i));
                    m.put_block(offset(n + 1, i), col0, &block);
                }
            }
            diffs.push(m);
        }
        Self::from_parts_unchecked(alg.clone(), lo, ranks, diffs)
    }

    /// Splits off contractible summands `A --u--> A` (u a unit) until every
    /// differential entry lies in the maximal ideal. The result is homotopy
    /// equivalent to the input.
    pub fn minimize(&self) -> Self {
        let alg = self.alg.clone();
        let mut lo = self.lo;
        let mut ranks = self.ranks.clone();
        let mut diffs = self.diffs.clone();
        loop {
            let hit = diffs
                .iter()
                .enumerate()
                .find_map(|(j, d)| d.find_unit(&alg).map(|rc| (j, rc)));
            let Some((j, (r, c))) = hit else { break };
            let d = &diffs[j];
            let u_inv = alg.inverse(d.get(r, c)).expect("unit entry");
            let keep_rows: Vec<usize> = (0..d.rows()).filter(|&k| k != r).collect();
            let keep_cols: Vec<usize> = (0..d.cols()).filter(|&k| k != c).collect();
            // ε - γ φ^{-1} δ
            let mut reduced = d.submatrix(&keep_rows, &keep_cols);
            for (a, &rr) in keep_rows.iter().enumerate() {
                let gamma = d.get(rr, c);
                if alg.is_zero(gamma) {
                    continue;
                }
                let g = alg.mul(gamma, &u_inv);
                for (b, &cc) in keep_cols.iter().enumerate() {
                    let delta = d.get(r, cc);
                    if alg.is_zero(delta) {
                        continue;
                    }
                    let v = alg.sub(reduced.get(a, b), &alg.mul(&g, delta));
                    reduced.set(a, b, v);
                }
            }
            if j > 0 {
                let prev = &diffs[j - 1];
                let rows: Vec<usize> = (0..prev.rows()).filter(|&k| k != c).collect();
                let cols: Vec<usize> = (0..prev.cols()).collect();
                diffs[j - 1] = prev.submatrix(&rows, &cols);
            }
            if j + 1 < diffs.len() {
                let next = &diffs[j + 1];
                let rows: Vec<usize> = (0..next.rows()).collect();
                let cols: Vec<usize> = (0..next.cols()).filter(|&k| k != r).collect();
                diffs[j + 1] = next.submatrix(&rows, &cols);
            }
            diffs[j] = reduced;
            ranks[j] -= 1;
            ranks[j + 1] -= 1;
            let trimmed = Self::from_parts_unchecked(alg.clone(), lo, ranks, diffs);
            lo = trimmed.lo;
            ranks = trimmed.ranks;
            diffs = trimmed.diffs;
        }
        Self::from_parts_unchecked(alg, lo, ranks, diffs)
    }
}

/// Degreewise maps `f^i : X^i -> Y^i` of local complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalChainMap {
    maps: BTreeMap<i64, LocalMatrix>,
}

impl LocalChainMap {
    pub fn new(maps: BTreeMap<i64, LocalMatrix>) -> Self {
        Self { maps }
    }

    /// `f^deg`, zero where unspecified.
    pub fn at(&self, deg: i64, src: &LocalComplex, dst: &LocalComplex) -> LocalMatrix {
        match self.maps.get(&deg) {
            Some(m) => m.clone(),
            None => LocalMatrix::zeros(src.algebra(), dst.rank(deg), src.rank(deg)),
        }
    }

    pub fn identity(x: &LocalComplex) -> Self {
        Self::scalar(x, &x.algebra().one())
    }

    pub fn scalar(x: &LocalComplex, a: &[u32]) -> Self {
        let alg = x.algebra();
        Self::new(
            x.graded_ranks()
                .into_iter()
                .map(|(i, r)| (i, LocalMatrix::scalar_diag(alg, r, a)))
                .collect(),
        )
    }

    fn check(&self, src: &LocalComplex, dst: &LocalComplex) -> Result<()> {
        let alg = src.algebra();
        for (&i, m) in &self.maps {
            if m.rows() != dst.rank(i) || m.cols() != src.rank(i) {
                return Err(Error::NotChainMap(format!("shape mismatch at degree {i}")));
            }
        }
        let lo = src.window().map_or(0, |w| w.0).min(dst.window().map_or(0, |w| w.0)) - 1;
        let hi = src.window().map_or(0, |w| w.1).max(dst.window().map_or(0, |w| w.1)) + 1;
        for i in lo..=hi {
            let lhs = dst.diff(i).mul(alg, &self.at(i, src, dst));
            let rhs = self.at(i + 1, src, dst).mul(alg, &src.diff(i));
            if lhs != rhs {
                return Err(Error::NotChainMap(format!("d f ≠ f d at degree {i}")));
            }
        }
        Ok(())
    }
}

/// Cone of `f : X -> Y` with `cone^i = X^{i+1} ⊕ Y^i` and
/// `d = [[-d_X, 0], [f, d_Y]]`.
fn local_cone(x: &LocalComplex, y: &LocalComplex, f: &LocalChainMap) -> LocalComplex {
    let alg = x.algebra();
    let xs = x.shift(1);
    let lo = match (xs.window(), y.window()) {
        (None, None) => return LocalComplex::zero(alg.clone()),
        (Some(a), None) => a.0,
        (None, Some(b)) => b.0,
        (Some(a), Some(b)) => a.0.min(b.0),
    };
    let hi = xs.window().map_or(i64::MIN, |w| w.1).max(y.window().map_or(i64::MIN, |w| w.1));
    let ranks: Vec<usize> = (lo..=hi).map(|i| x.rank(i + 1) + y.rank(i)).collect();
    let diffs = (lo..hi)
        .map(|i| {
            let mut m = LocalMatrix::zeros(alg, ranks[(i + 1 - lo) as usize], ranks[(i - lo) as usize]);
            // X[1] differential already carries the minus sign
            m.put_block(0, 0, &xs.diff(i));
            m.put_block(x.rank(i + 2), 0, &f.at(i + 1, x, y));
            m.put_block(x.rank(i + 2), x.rank(i + 1), &y.diff(i));
            m
        })
        .collect();
    LocalComplex::from_parts_unchecked(alg.clone(), lo, ranks, diffs)
}

/// A perfect complex over a product ring, one local complex per site.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeComplex {
    ring: Arc<ProductRing>,
    parts: Vec<LocalComplex>,
}

/// Matrix with entries in a product ring, used to describe free complexes
/// with the same rank at every site.
pub type RingMatrix = Vec<Vec<RingElement>>;

impl FreeComplex {
    pub fn from_parts(ring: Arc<ProductRing>, parts: Vec<LocalComplex>) -> Result<Self> {
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

    pub fn zero(ring: &Arc<ProductRing>) -> Self {
        let parts = ring.factors().iter().map(|a| LocalComplex::zero(a.clone())).collect();
        Self {
            ring: ring.clone(),
            parts,
        }
    }

    /// `R^rank` in degree `deg`.
    pub fn free_module(ring: &Arc<ProductRing>, deg: i64, rank: usize) -> Self {
        let parts = ring
            .factors()
            .iter()
            .map(|a| LocalComplex::free_module(a.clone(), deg, rank))
            .collect();
        Self {
            ring: ring.clone(),
            parts,
        }
    }

    /// The ring itself as a complex concentrated in degree 0.
    pub fn unit(ring: &Arc<ProductRing>) -> Self {
        Self::free_module(ring, 0, 1)
    }

    /// Builds a free complex from ring-level matrices; `diffs[j]` is the
    /// differential out of degree `lo + j`, of shape `ranks[j+1] x ranks[j]`.
    pub fn from_matrices(
        ring: &Arc<ProductRing>,
        lo: i64,
        ranks: Vec<usize>,
        diffs: Vec<RingMatrix>,
    ) -> Result<Self> {
        let mut parts = Vec::with_capacity(ring.num_sites());
        for (s, alg) in ring.factors().iter().enumerate() {
            let mut local = Vec::with_capacity(diffs.len());
            for (j, d) in diffs.iter().enumerate() {
                let rows = ranks.get(j + 1).copied().unwrap_or(0);
                let cols = ranks.get(j).copied().unwrap_or(0);
                if d.len() != rows || d.iter().any(|row| row.len() != cols) {
                    return Err(Error::InvariantViolation(format!(
                        "differential at degree {} has the wrong shape",
                        lo + j as i64
                    )));
                }
                let entries = d.iter().flat_map(|row| row.iter().map(|e| e.part(PrimeSite(s)).to_vec())).collect();
                local.push(LocalMatrix::from_entries(rows, cols, entries));
            }
            parts.push(LocalComplex::new(alg.clone(), lo, ranks.clone(), local)?);
        }
        Ok(Self {
            ring: ring.clone(),
            parts,
        })
    }

    pub fn ring(&self) -> &Arc<ProductRing> {
        &self.ring
    }

    pub fn parts(&self) -> &[LocalComplex] {
        &self.parts
    }

    pub fn part(&self, s: PrimeSite) -> &LocalComplex {
        &self.parts[s.0]
    }

    fn map_parts(&self, f: impl Fn(&LocalComplex) -> LocalComplex) -> Self {
        Self {
            ring: self.ring.clone(),
            parts: self.parts.iter().map(f).collect(),
        }
    }

    fn zip_parts(&self, other: &Self, f: impl Fn(&LocalComplex, &LocalComplex) -> LocalComplex) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(Self {
            ring: self.ring.clone(),
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(LocalComplex::is_zero)
    }

    /// Hull of the site windows.
    pub fn window(&self) -> Option<(i64, i64)> {
        self.parts.iter().filter_map(LocalComplex::window).reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
    }

    pub fn check_d_squared(&self) -> Result<()> {
        self.parts.iter().try_for_each(LocalComplex::check_d_squared)
    }

    pub fn is_minimal(&self) -> bool {
        self.parts.iter().all(LocalComplex::is_minimal)
    }

    pub fn shift(&self, n: i64) -> Self {
        self.map_parts(|p| p.shift(n))
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.zip_parts(other, LocalComplex::direct_sum)
    }

    pub fn dual(&self) -> Self {
        self.map_parts(LocalComplex::dual)
    }

    pub fn dual_with(&self, convention: DualConvention) -> Self {
        self.map_parts(|p| p.dual_with(convention))
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.zip_parts(other, LocalComplex::tensor)
    }

    pub fn minimize(&self) -> Self {
        self.map_parts(LocalComplex::minimize)
    }

    /// Brutal split at `cut` into the subcomplex of degrees `> cut` and the
    /// quotient of degrees `<= cut`; the input is minimized first.
    pub fn truncate_split(&self, cut: i64) -> (Self, Self) {
        let m = self.minimize();
        (m.map_parts(|p| p.truncate_above(cut)), m.map_parts(|p| p.truncate_below(cut)))
    }

    /// Projection to the factor at `s`, as a complex over that factor alone.
    pub fn localize_at(&self, s: PrimeSite) -> Result<Self> {
        self.ring.check_site(s)?;
        let alg = self.ring.factor(s).as_ref().clone();
        Ok(Self {
            ring: Arc::new(ProductRing::local(alg)),
            parts: vec![self.parts[s.0].clone()],
        })
    }

    /// Per-site graded ranks of the minimal model.
    pub fn minimal_ranks(&self) -> Vec<BTreeMap<i64, usize>> {
        self.parts.iter().map(|p| p.minimize().graded_ranks()).collect()
    }
}

/// A degreewise map of free complexes over the same product ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: FreeComplex,
    target: FreeComplex,
    parts: Vec<LocalChainMap>,
}

impl ChainMap {
    /// Validates shapes and `d_Y f = f d_X` at every site.
    pub fn new(source: FreeComplex, target: FreeComplex, parts: Vec<LocalChainMap>) -> Result<Self> {
        if source.ring != target.ring || parts.len() != source.parts.len() {
            return Err(Error::RingMismatch);
        }
        for ((m, x), y) in parts.iter().zip(&source.parts).zip(&target.parts) {
            m.check(x, y)?;
        }
        Ok(Self { source, target, parts })
    }

    pub(crate) fn new_unchecked(source: FreeComplex, target: FreeComplex, parts: Vec<LocalChainMap>) -> Self {
        Self { source, target, parts }
    }

    pub fn identity(x: &FreeComplex) -> Self {
        Self::new_unchecked(x.clone(), x.clone(), x.parts.iter().map(LocalChainMap::identity).collect())
    }

    /// Multiplication by a ring element.
    pub fn scalar(x: &FreeComplex, a: &RingElement) -> Self {
        let parts = x
            .parts
            .iter()
            .enumerate()
            .map(|(s, p)| LocalChainMap::scalar(p, a.part(PrimeSite(s))))
            .collect();
        Self::new_unchecked(x.clone(), x.clone(), parts)
    }

    pub fn zero(x: &FreeComplex, y: &FreeComplex) -> Result<Self> {
        if x.ring != y.ring {
            return Err(Error::RingMismatch);
        }
        let parts = x.parts.iter().map(|_| LocalChainMap::new(BTreeMap::new())).collect();
        Ok(Self::new_unchecked(x.clone(), y.clone(), parts))
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    pub fn parts(&self) -> &[LocalChainMap] {
        &self.parts
    }

    pub fn part(&self, s: PrimeSite) -> &LocalChainMap {
        &self.parts[s.0]
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &ChainMap) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::NotChainMap("composition of non-composable maps".into()));
        }
        let parts = (0..self.parts.len())
            .map(|s| {
                let x = &first.source.parts[s];
                let y = &first.target.parts[s];
                let z = &self.target.parts[s];
                let alg = x.algebra();
                let degs: Vec<i64> = x.graded_ranks().keys().copied().collect();
                LocalChainMap::new(
                    degs.into_iter()
                        .map(|i| (i, self.parts[s].at(i, y, z).mul(alg, &first.parts[s].at(i, x, y))))
                        .collect(),
                )
            })
            .collect();
        Ok(Self::new_unchecked(first.source.clone(), self.target.clone(), parts))
    }

    pub fn cone(&self) -> FreeComplex {
        let parts = (0..self.parts.len())
            .map(|s| local_cone(&self.source.parts[s], &self.target.parts[s], &self.parts[s]))
            .collect();
        FreeComplex {
            ring: self.source.ring.clone(),
            parts,
        }
    }
}

/// A candidate exact triangle `A -u-> B -v-> C -w-> A[1]`.
#[derive(Debug, Clone)]
pub struct Triangle {
    pub a: FreeComplex,
    pub b: FreeComplex,
    pub c: FreeComplex,
    pub u: ChainMap,
    pub v: ChainMap,
    pub w: ChainMap,
}

impl Triangle {
    /// The standard triangle `X -f-> Y -> cone(f) -> X[1]`.
    pub fn from_map(f: &ChainMap) -> Self {
        let x = f.source.clone();
        let y = f.target.clone();
        let c = f.cone();
        let xs = x.shift(1);
        let n = x.parts.len();
        let mut inc = Vec::with_capacity(n);
        let mut proj = Vec::with_capacity(n);
        for s in 0..n {
            let (xp, yp, cp) = (&x.parts[s], &y.parts[s], &c.parts[s]);
            let alg = xp.algebra();
            let mut im = BTreeMap::new();
            let mut pm = BTreeMap::new();
            if let Some((lo, hi)) = cp.window() {
                for i in lo..=hi {
                    let (rx, ry) = (xp.rank(i + 1), yp.rank(i));
                    let mut a = LocalMatrix::zeros(alg, rx + ry, ry);
                    a.put_block(rx, 0, &LocalMatrix::identity(alg, ry));
                    im.insert(i, a);
                    let mut b = LocalMatrix::zeros(alg, rx, rx + ry);
                    b.put_block(0, 0, &LocalMatrix::identity(alg, rx));
                    pm.insert(i, b);
                }
            }
            inc.push(LocalChainMap::new(im));
            proj.push(LocalChainMap::new(pm));
        }
        Triangle {
            a: x,
            b: y.clone(),
            c: c.clone(),
            u: f.clone(),
            v: ChainMap::new_unchecked(y, c.clone(), inc),
            w: ChainMap::new_unchecked(c, xs, proj),
        }
    }

    /// Checks that all three maps are chain maps.
    pub fn check_maps(&self) -> Result<()> {
        for m in [&self.u, &self.v, &self.w] {
            ChainMap::new(m.source.clone(), m.target.clone(), m.parts.clone())?;
        }
        Ok(())
    }
}

/// `P -> X -> Y -> P[1]` from the brutal split of a complex at `cut`; the
/// connecting map is the differential crossing the cut.
pub fn truncation_triangle(x: &FreeComplex, cut: i64) -> Triangle {
    let n = x.parts.len();
    let p = x.map_parts(|c| c.truncate_above(cut));
    let y = x.map_parts(|c| c.truncate_below(cut));
    let ps = p.shift(1);
    let mut inc = Vec::with_capacity(n);
    let mut quo = Vec::with_capacity(n);
    let mut conn = Vec::with_capacity(n);
    for s in 0..n {
        let xp = &x.parts[s];
        let alg = xp.algebra();
        let mut im = BTreeMap::new();
        let mut qm = BTreeMap::new();
        let mut cm = BTreeMap::new();
        for (i, r) in xp.graded_ranks() {
            let id = LocalMatrix::identity(alg, r);
            if i > cut {
                im.insert(i, id);
            } else {
                qm.insert(i, id);
            }
        }
        if xp.rank(cut) > 0 && xp.rank(cut + 1) > 0 {
            cm.insert(cut, xp.diff(cut));
        }
        inc.push(LocalChainMap::new(im));
        quo.push(LocalChainMap::new(qm));
        conn.push(LocalChainMap::new(cm));
    }
    Triangle {
        a: p.clone(),
        b: x.clone(),
        c: y.clone(),
        u: ChainMap::new_unchecked(p, x.clone(), inc),
        v: ChainMap::new_unchecked(x.clone(), y.clone(), quo),
        w: ChainMap::new_unchecked(y, ps, conn),
    }
}

/// For `f : X -> Y` and `g : Y -> Z`, the triangle
/// `cone(gf) -> cone(g) ⊕ X[1] -> Y[1] -> cone(gf)[1]`.
pub fn compose_cone_triangle(f: &ChainMap, g: &ChainMap) -> Result<Triangle> {
    if f.target != g.source {
        return Err(Error::NotChainMap("maps are not composable".into()));
    }
    let gf = g.compose_after(f)?;
    let a = gf.cone();
    let cg = g.cone();
    let x = &f.source;
    let y = &f.target;
    let z = &g.target;
    let b = cg.direct_sum(&x.shift(1))?;
    let c = y.shift(1);
    let a1 = a.shift(1);
    let n = x.parts.len();
    let (mut alpha, mut beta, mut gamma) = (Vec::new(), Vec::new(), Vec::new());
    for s in 0..n {
        let (xp, yp, zp) = (&x.parts[s], &y.parts[s], &z.parts[s]);
        let alg = xp.algebra();
        let fm = &f.parts[s];
        let gm = &g.parts[s];
        let (mut am, mut bm, mut cm) = (BTreeMap::new(), BTreeMap::new(), BTreeMap::new());
        let lo = [xp.window(), yp.window(), zp.window()]
            .iter()
            .flatten()
            .map(|w| w.0)
            .min()
            .unwrap_or(0)
            - 2;
        let hi = [xp.window(), yp.window(), zp.window()]
            .iter()
            .flatten()
            .map(|w| w.1)
            .max()
            .unwrap_or(0)
            + 1;
        for i in lo..=hi {
            let (rx1, ry1, rz) = (xp.rank(i + 1), yp.rank(i + 1), zp.rank(i));
            let rz1 = zp.rank(i + 1);
            let rx2 = xp.rank(i + 2);
            // alpha: (x, z) -> ((f x, z), x); cone(g)^i = Y^{i+1} ⊕ Z^i, then X^{i+1}
            if rx1 + rz > 0 {
                let mut m = LocalMatrix::zeros(alg, ry1 + rz + rx1, rx1 + rz);
                m.put_block(0, 0, &fm.at(i + 1, xp, yp));
                m.put_block(ry1, rx1, &LocalMatrix::identity(alg, rz));
                m.put_block(ry1 + rz, 0, &LocalMatrix::identity(alg, rx1));
                am.insert(i, m);
            }
            // beta: ((y, z), x) -> y - f x
            if ry1 > 0 {
                let mut m = LocalMatrix::zeros(alg, ry1, ry1 + rz + rx1);
                m.put_block(0, 0, &LocalMatrix::identity(alg, ry1));
                m.put_block(0, ry1 + rz, &fm.at(i + 1, xp, yp).neg(alg));
                bm.insert(i, m);
            }
            // gamma: y -> (0, g y) in cone(gf)[1]^i = X^{i+2} ⊕ Z^{i+1}
            if ry1 > 0 && rx2 + rz1 > 0 {
                let mut m = LocalMatrix::zeros(alg, rx2 + rz1, ry1);
                m.put_block(rx2, 0, &gm.at(i + 1, yp, zp));
                cm.insert(i, m);
            }
        }
        alpha.push(LocalChainMap::new(am));
        beta.push(LocalChainMap::new(bm));
        gamma.push(LocalChainMap::new(cm));
    }
    Ok(Triangle {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        u: ChainMap::new_unchecked(a, b.clone(), alpha),
        v: ChainMap::new_unchecked(b, c.clone(), beta),
        w: ChainMap::new_unchecked(c, a1, gamma),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_numbers() -> Arc<ProductRing> {
        Arc::new(ProductRing::build(101, &["x"], &[vec![2]]).unwrap())
    }

    fn kx(ring: &Arc<ProductRing>) -> FreeComplex {
        let x = ring.minimal_generators(PrimeSite(0)).unwrap().remove(0);
        FreeComplex::from_matrices(ring, -1, vec![1, 1], vec![vec![vec![x]]]).unwrap()
    }

    #[test]
    fn rejects_nonzero_square() {
        let ring = dual_numbers();
        let one = ring.one();
        let err = FreeComplex::from_matrices(
            &ring,
            0,
            vec![1, 1, 1],
            vec![vec![vec![one.clone()]], vec![vec![one]]],
        )
        .unwrap_err();
        assert_eq!(err, Error::InvariantViolation("d∘d ≠ 0 at degree 0".into()));
    }

    #[test]
    fn shift_composes() {
        let ring = dual_numbers();
        let k = kx(&ring);
        assert_eq!(k.shift(2).shift(-5), k.shift(-3));
        assert_eq!(k.shift(0), k);
        assert_eq!(k.shift(1).window(), Some((-2, -1)));
    }

    #[test]
    fn cone_of_identity_minimizes_to_zero() {
        let ring = dual_numbers();
        let r = FreeComplex::unit(&ring);
        let c = ChainMap::identity(&r).cone();
        c.check_d_squared().unwrap();
        assert!(c.minimize().is_zero());
    }

    #[test]
    fn dual_of_koszul_moves_to_nonnegative_degrees() {
        let ring = dual_numbers();
        let d = kx(&ring).dual();
        assert_eq!(d.window(), Some((0, 1)));
        assert_eq!(FreeComplex::unit(&ring).dual(), FreeComplex::unit(&ring));
        // d** = -d under this sign convention; same graded ranks
        assert_eq!(kx(&ring).dual().dual().minimal_ranks(), kx(&ring).minimal_ranks());
    }

    #[test]
    fn tensor_unit_is_identity() {
        let ring = dual_numbers();
        let k = kx(&ring);
        assert_eq!(FreeComplex::unit(&ring).tensor(&k).unwrap(), k);
        let kk = k.tensor(&k).unwrap();
        kk.check_d_squared().unwrap();
        assert_eq!(kk.part(PrimeSite(0)).graded_ranks(), BTreeMap::from([(-2, 1), (-1, 2), (0, 1)]));
    }

    #[test]
    fn localize_projects() {
        let f = crate::field::PrimeField::new(101).unwrap();
        let a = LocalAlgebra::new(f, vec!["x".into()], vec![vec![2]]).unwrap();
        let b = LocalAlgebra::new(f, vec!["y".into()], vec![vec![2]]).unwrap();
        let ring = Arc::new(ProductRing::new(vec![a.clone(), b]).unwrap());
        let x = ring.minimal_generators(PrimeSite(0)).unwrap().remove(0);
        let k = FreeComplex::from_matrices(&ring, -1, vec![1, 1], vec![vec![vec![x]]]).unwrap();
        assert!(k.localize_at(PrimeSite(1)).unwrap().minimize().is_zero());
        let at0 = k.localize_at(PrimeSite(0)).unwrap();
        assert_eq!(at0.ring().num_sites(), 1);
        assert_eq!(at0.part(PrimeSite(0)).graded_ranks().len(), 2);
        assert!(k.localize_at(PrimeSite(2)).is_err());
    }

    #[test]
    fn truncation_split_degreewise() {
        let ring = dual_numbers();
        let x = FreeComplex::unit(&ring).shift(1).direct_sum(&FreeComplex::unit(&ring)).unwrap();
        let (p, y) = x.truncate_split(0);
        assert!(p.is_zero());
        assert_eq!(y, x.minimize());
        let k1 = kx(&ring).shift(-1);
        let (p, y) = k1.truncate_split(0);
        assert_eq!(p.window(), Some((1, 1)));
        assert_eq!(y.window(), Some((0, 0)));
        truncation_triangle(&k1, 0).check_maps().unwrap();
    }

    #[test]
    fn not_chain_map_detected() {
        let ring = dual_numbers();
        let k = kx(&ring);
        let alg = ring.factor(PrimeSite(0)).clone();
        let bad = LocalChainMap::new(BTreeMap::from([(0, LocalMatrix::identity(&alg, 1))]));
        let e = ChainMap::new(k.clone(), k.clone(), vec![bad]).unwrap_err();
        assert!(matches!(e, Error::NotChainMap(_)));
    }
}
