//! Projective dimension, depth, G-dimension and the NE-locus.
//!
//! Every site of a product ring is an artinian local ring, so depth of the
//! ring is zero there and depth of a complex is the infimum of its local
//! cohomology: a nonzero finite module over an artinian ring has a nonzero
//! socle, so `Hom(k, H^a X) != 0` at `a = inf X`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{PrimeSite, ProductRing, RingElement};
use crate::complex::{FreeComplex, LocalComplex, Triangle};
use crate::error::{Error, Result};
use crate::ext::ExtInt;
use crate::homology::{homology_profile, local_homology_dims, HomologyProfile};
use crate::koszul::twist;
use crate::module::{resolve, LocalModuleComplex, ModuleComplex};

pub type NeLocus = BTreeSet<PrimeSite>;

/// Either a perfect complex or a bounded complex of finitely generated
/// modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Object {
    Perfect(FreeComplex),
    Module(ModuleComplex),
}

impl From<FreeComplex> for Object {
    fn from(x: FreeComplex) -> Self {
        Object::Perfect(x)
    }
}

impl From<ModuleComplex> for Object {
    fn from(x: ModuleComplex) -> Self {
        Object::Module(x)
    }
}

impl Object {
    pub fn ring(&self) -> &Arc<ProductRing> {
        match self {
            Object::Perfect(x) => x.ring(),
            Object::Module(m) => m.ring(),
        }
    }

    pub fn homology_profile(&self) -> HomologyProfile {
        match self {
            Object::Perfect(x) => homology_profile(x),
            Object::Module(m) => m.homology_profile(),
        }
    }

    pub fn shift(&self, n: i64) -> Object {
        match self {
            Object::Perfect(x) => Object::Perfect(x.shift(n)),
            Object::Module(m) => Object::Module(m.shift(n)),
        }
    }

    pub fn as_perfect(&self) -> Option<&FreeComplex> {
        match self {
            Object::Perfect(x) => Some(x),
            Object::Module(_) => None,
        }
    }
}

/// `pd` of a local free complex: `-inf(X ⊗ k)`, read off from the residue
/// matrices.
pub fn local_proj_dim(c: &LocalComplex) -> ExtInt {
    let Some((lo, hi)) = c.window() else {
        return ExtInt::NegInf;
    };
    let alg = c.algebra();
    let mut below = 0;
    for i in lo..=hi {
        let out = c.diff(i).residue(alg).rank();
        if c.rank(i) > out + below {
            return ExtInt::Fin(-i);
        }
        below = out;
    }
    ExtInt::NegInf
}

pub fn proj_dim(x: &FreeComplex, s: PrimeSite) -> Result<ExtInt> {
    x.ring().check_site(s)?;
    Ok(local_proj_dim(x.part(s)))
}

/// Sup over all sites.
pub fn proj_dim_global(x: &FreeComplex) -> ExtInt {
    ExtInt::sup(x.parts().iter().map(local_proj_dim))
}

/// A projective dimension together with whether it rests on the resolution
/// cap over a factor where the cap is not known to be sound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PdValue {
    pub value: ExtInt,
    pub heuristic: bool,
}

impl PdValue {
    fn exact(value: ExtInt) -> Self {
        Self { value, heuristic: false }
    }
}

/// The local free complex underlying a module complex whose terms carry no
/// relations.
fn as_free(m: &LocalModuleComplex) -> Option<LocalComplex> {
    if m.terms().iter().any(|t| !t.rel.is_zero()) {
        return None;
    }
    let ranks = m.terms().iter().map(|t| t.gens).collect();
    LocalComplex::new(m.algebra().clone(), m.lo(), ranks, m.diffs().to_vec()).ok()
}

/// Resolution cap for a module complex: its span plus `dim_k` of the ring
/// plus two.
pub fn resolution_cap(m: &LocalModuleComplex) -> usize {
    let span = m.window().map_or(0, |(lo, hi)| (hi - lo + 1) as usize);
    span + m.algebra().dim() + 2
}

fn local_module_pd(m: &LocalModuleComplex) -> Result<PdValue> {
    if let Some(c) = as_free(m) {
        return Ok(PdValue::exact(local_proj_dim(&c)));
    }
    let single = m.single_term().ok_or(Error::UnsupportedModuleComplex)?;
    let Some((deg, pres)) = single else {
        return Ok(PdValue::exact(ExtInt::NegInf));
    };
    let alg = m.algebra();
    let res = resolve(alg, &pres, resolution_cap(m));
    Ok(match res.proj_dim() {
        Some(n) => PdValue::exact(ExtInt::Fin(n as i64 - deg)),
        None => PdValue {
            value: ExtInt::PosInf,
            heuristic: !alg.is_hypersurface(),
        },
    })
}

/// Local projective dimension of either kind of object.
pub fn proj_dim_object(x: &Object, s: PrimeSite) -> Result<PdValue> {
    x.ring().check_site(s)?;
    match x {
        Object::Perfect(c) => Ok(PdValue::exact(local_proj_dim(c.part(s)))),
        Object::Module(m) => local_module_pd(m.part(s)),
    }
}

/// `depth X_s = inf H(X_s)`; `+inf` when `X_s` is acyclic.
pub fn depth_of(x: &Object, s: PrimeSite) -> Result<ExtInt> {
    x.ring().check_site(s)?;
    Ok(x.homology_profile().inf_at(s.0))
}

fn require_gorenstein(ring: &ProductRing, s: PrimeSite) -> Result<()> {
    let a = ring.factor(s);
    if a.is_gorenstein() {
        Ok(())
    } else {
        Err(Error::NotGorenstein(s.0, a.socle().len()))
    }
}

/// `gdim X_s = depth R_s - depth X_s = -depth X_s`.
pub fn gdim_of(x: &Object, s: PrimeSite) -> Result<ExtInt> {
    x.ring().check_site(s)?;
    let profile = x.homology_profile();
    if profile.sites[s.0].is_empty() {
        return Ok(ExtInt::NegInf);
    }
    require_gorenstein(x.ring(), s)?;
    Ok(-profile.inf_at(s.0))
}

/// `rfd X = sup_s (depth R_s - depth X_s)`; every site where `X` is nonzero
/// must be Gorenstein.
pub fn rfd_of(x: &Object) -> Result<ExtInt> {
    let ring = x.ring().clone();
    let mut out = ExtInt::NegInf;
    for s in ring.sites() {
        out = out.max(gdim_of(x, s)?);
    }
    Ok(out)
}

/// `sup H((X^*)_s)`, which equals `gdim X_s` for perfect `X`.
pub fn gdim_via_dual(x: &FreeComplex, s: PrimeSite) -> Result<ExtInt> {
    x.ring().check_site(s)?;
    Ok(ExtInt::sup(
        local_homology_dims(&x.part(s).dual()).keys().map(|&d| ExtInt::Fin(d)),
    ))
}

/// `X ∈ E_R`, i.e. `pd X ≤ 0`.
pub fn is_in_e(x: &FreeComplex) -> bool {
    proj_dim_global(x) <= ExtInt::ZERO
}

/// `pd X_s ≤ n` at the designated site and `pd ≤ 0` at every other site.
pub fn is_in_k0n(x: &FreeComplex, n: i64, designated: PrimeSite) -> Result<bool> {
    x.ring().check_site(designated)?;
    Ok(x.parts().iter().enumerate().all(|(s, c)| {
        let bound = if s == designated.0 { n } else { 0 };
        local_proj_dim(c) <= ExtInt::Fin(bound)
    }))
}

/// No cohomology in negative degrees at any site.
pub fn is_mcm(x: &Object) -> bool {
    let p = x.homology_profile();
    (0..p.sites.len()).all(|s| p.inf_at(s) >= ExtInt::ZERO)
}

/// `{s : pd X_s > 0}`.
pub fn ne_locus(x: &FreeComplex) -> NeLocus {
    x.parts()
        .iter()
        .enumerate()
        .filter(|(_, c)| local_proj_dim(c) > ExtInt::ZERO)
        .map(|(s, _)| PrimeSite(s))
        .collect()
}

/// NE-locus of an object of either kind.
pub fn ne_locus_object(x: &Object) -> Result<NeLocus> {
    let mut out = NeLocus::new();
    for s in x.ring().sites() {
        if proj_dim_object(x, s)?.value > ExtInt::ZERO {
            out.insert(s);
        }
    }
    Ok(out)
}

/// Union of NE-loci.
pub fn ne_of_set(xs: &[FreeComplex]) -> NeLocus {
    xs.iter().flat_map(ne_locus).collect()
}

/// Element that is a non-unit at `p` and a unit at `q`: the first variable
/// of each factor (zero at field factors), with `1` at `q`.
pub fn separating_element(ring: &ProductRing, p: PrimeSite, q: PrimeSite) -> RingElement {
    let parts = ring
        .factors()
        .iter()
        .enumerate()
        .map(|(s, a)| {
            if s == q.0 && s != p.0 {
                a.one()
            } else {
                match a.generator_variables().first() {
                    Some(&v) => a.variable(v),
                    None => a.zero(),
                }
            }
        })
        .collect();
    RingElement::from_parts(parts)
}

/// An object `Y` built from `X` by twists and sums with `NE(Y) = W`.
///
/// For each `p ∈ W` the complex `X` is twisted once for every other point
/// `q` of `NE(X)` (ascending), by an element lying in `p` but not in `q`;
/// the results are summed.
pub fn ne_shrink(x: &FreeComplex, w: &NeLocus) -> Result<FreeComplex> {
    let ne = ne_locus(x);
    if !w.is_subset(&ne) {
        return Err(Error::NotContained);
    }
    if w.is_empty() {
        return Ok(FreeComplex::unit(x.ring()));
    }
    if *w == ne {
        return Ok(x.clone());
    }
    let ring = x.ring();
    let mut out: Option<FreeComplex> = None;
    for &p in w {
        let elements: Vec<RingElement> = ne
            .iter()
            .filter(|&&q| q != p)
            .map(|&q| separating_element(ring, p, q))
            .collect();
        let y = twist(x, &elements)?;
        out = Some(match out {
            None => y,
            Some(acc) => acc.direct_sum(&y)?,
        });
    }
    Ok(out.expect("W nonempty"))
}

/// Checks the projective dimension and depth inequalities of an exact
/// triangle `A -> B -> C -> A[1]` at every site.
pub fn check_triangle_inequalities(t: &Triangle) -> std::result::Result<(), String> {
    let (pa, pb, pc) = (homology_profile(&t.a), homology_profile(&t.b), homology_profile(&t.c));
    for s in 0..t.a.ring().num_sites() {
        let pd = |x: &FreeComplex| local_proj_dim(&x.parts()[s]);
        let (a, b, c) = (pd(&t.a), pd(&t.b), pd(&t.c));
        let checks = [
            (b <= a.max(c), "pd B ≤ sup(pd A, pd C)"),
            (a <= b.max(c.offset(-1)), "pd A ≤ sup(pd B, pd C - 1)"),
            (c <= b.max(a.offset(1)), "pd C ≤ sup(pd B, pd A + 1)"),
        ];
        let (da, db, dc) = (pa.inf_at(s), pb.inf_at(s), pc.inf_at(s));
        let depth_checks = [
            (db >= da.min(dc), "depth B ≥ inf(depth A, depth C)"),
            (da >= db.min(dc.offset(1)), "depth A ≥ inf(depth B, depth C + 1)"),
            (dc >= db.min(da.offset(-1)), "depth C ≥ inf(depth B, depth A - 1)"),
        ];
        for (ok, what) in checks.iter().chain(depth_checks.iter()) {
            if !ok {
                return Err(format!("{what} fails at site {s}"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ChainMap;
    use crate::koszul::ring_koszul;
    use crate::module::Presentation;

    fn ring(vars: &[&str], rels: &[Vec<u32>]) -> Arc<ProductRing> {
        Arc::new(ProductRing::build(101, vars, rels).unwrap())
    }

    fn two_sites() -> Arc<ProductRing> {
        let f = crate::field::PrimeField::new(101).unwrap();
        let a = crate::algebra::LocalAlgebra::new(f, vec!["x".into()], vec![vec![2]]).unwrap();
        let b = crate::algebra::LocalAlgebra::new(f, vec!["y".into()], vec![vec![2]]).unwrap();
        Arc::new(ProductRing::new(vec![a, b]).unwrap())
    }

    #[test]
    fn pd_of_unit_and_koszul() {
        let r = ring(&["x", "y"], &[vec![2, 0], vec![0, 2]]);
        assert_eq!(proj_dim_global(&FreeComplex::unit(&r)), ExtInt::ZERO);
        let k = ring_koszul(&r, PrimeSite(0)).unwrap();
        assert_eq!(proj_dim_global(&k), ExtInt::Fin(2));
        assert_eq!(proj_dim_global(&k.shift(3)), ExtInt::Fin(5));
        assert_eq!(proj_dim_global(&FreeComplex::zero(&r)), ExtInt::NegInf);
    }

    #[test]
    fn pd_ignores_contractible_pieces() {
        let r = ring(&["x"], &[vec![2]]);
        let unit = FreeComplex::unit(&r);
        let c = ChainMap::identity(&unit).cone();
        assert_eq!(proj_dim_global(&c), ExtInt::NegInf);
        assert_eq!(proj_dim_global(&c.direct_sum(&unit).unwrap()), ExtInt::ZERO);
    }

    #[test]
    fn depth_and_auslander_buchsbaum() {
        let r = ring(&["x"], &[vec![3]]);
        let k = ring_koszul(&r, PrimeSite(0)).unwrap();
        let obj = Object::from(k.clone());
        assert_eq!(depth_of(&obj, PrimeSite(0)).unwrap(), ExtInt::Fin(-1));
        assert_eq!(proj_dim(&k, PrimeSite(0)).unwrap(), ExtInt::Fin(1));
        assert_eq!(depth_of(&obj.shift(2), PrimeSite(0)).unwrap(), ExtInt::Fin(-3));
    }

    #[test]
    fn gdim_matches_dual_sup() {
        let r = ring(&["x"], &[vec![3]]);
        let k = ring_koszul(&r, PrimeSite(0)).unwrap();
        for n in -2..3 {
            let x = k.shift(n);
            let g = gdim_of(&Object::from(x.clone()), PrimeSite(0)).unwrap();
            assert_eq!(g, gdim_via_dual(&x, PrimeSite(0)).unwrap());
            assert_eq!(g, ExtInt::Fin(1 + n));
            assert_eq!(rfd_of(&Object::from(x)).unwrap(), g);
        }
    }

    #[test]
    fn gdim_of_residue_field_module() {
        let r = ring(&["x"], &[vec![3]]);
        let a = r.factor(PrimeSite(0)).clone();
        let m = ModuleComplex::module(&r, 0, vec![Presentation::residue_field(&a)]).unwrap();
        assert_eq!(gdim_of(&Object::from(m), PrimeSite(0)).unwrap(), ExtInt::ZERO);
    }

    #[test]
    fn gdim_needs_gorenstein() {
        let r = ring(&["x", "y"], &[vec![2, 0], vec![1, 1], vec![0, 2]]);
        let e = gdim_of(&Object::from(FreeComplex::unit(&r)), PrimeSite(0));
        assert_eq!(e, Err(Error::NotGorenstein(0, 2)));
    }

    #[test]
    fn module_pd_free_and_infinite() {
        let r = ring(&["x"], &[vec![2]]);
        let a = r.factor(PrimeSite(0)).clone();
        let k = Object::from(ModuleComplex::module(&r, 0, vec![Presentation::residue_field(&a)]).unwrap());
        let v = proj_dim_object(&k, PrimeSite(0)).unwrap();
        assert_eq!(v, PdValue { value: ExtInt::PosInf, heuristic: false });
        let free = Object::from(ModuleComplex::module(&r, 2, vec![Presentation::free(&a, 2)]).unwrap());
        assert_eq!(proj_dim_object(&free, PrimeSite(0)).unwrap().value, ExtInt::Fin(-2));
        let avatar = Object::from(ModuleComplex::from_free(&ring_koszul(&r, PrimeSite(0)).unwrap()));
        assert_eq!(proj_dim_object(&avatar, PrimeSite(0)).unwrap().value, ExtInt::Fin(1));
    }

    #[test]
    fn heuristic_flag_off_hypersurface() {
        let r = ring(&["x", "y"], &[vec![2, 0], vec![0, 2]]);
        let a = r.factor(PrimeSite(0)).clone();
        let k = Object::from(ModuleComplex::module(&r, 0, vec![Presentation::residue_field(&a)]).unwrap());
        assert!(proj_dim_object(&k, PrimeSite(0)).unwrap().heuristic);
    }

    #[test]
    fn k0n_membership_chain() {
        let r = ring(&["x"], &[vec![2]]);
        let k = ring_koszul(&r, PrimeSite(0)).unwrap();
        for n in 0..5 {
            let w = k.shift(n - 1);
            assert!(is_in_k0n(&w, n, PrimeSite(0)).unwrap());
            assert!(!is_in_k0n(&w, n - 1, PrimeSite(0)).unwrap());
        }
        assert!(is_in_e(&FreeComplex::unit(&r)));
        assert!(!is_in_e(&k));
    }

    #[test]
    fn mcm_checks() {
        let r = ring(&["x"], &[vec![2]]);
        let unit = FreeComplex::unit(&r);
        assert!(is_mcm(&Object::from(unit.clone())));
        assert!(!is_mcm(&Object::from(unit.shift(1))));
    }

    #[test]
    fn ne_loci_and_shrink() {
        let r = two_sites();
        let k0 = ring_koszul(&r, PrimeSite(0)).unwrap();
        let k1 = ring_koszul(&r, PrimeSite(1)).unwrap();
        assert_eq!(ne_locus(&k0), NeLocus::from([PrimeSite(0)]));
        let x = k0.direct_sum(&k1).unwrap();
        let ne = ne_locus(&x);
        assert_eq!(ne, NeLocus::from([PrimeSite(0), PrimeSite(1)]));
        assert_eq!(ne_of_set(&[k0.clone(), k1.clone()]), ne);

        assert_eq!(ne_shrink(&x, &NeLocus::new()).unwrap(), FreeComplex::unit(&r));
        assert_eq!(ne_shrink(&x, &ne).unwrap(), x);
        let w = NeLocus::from([PrimeSite(0)]);
        let y = ne_shrink(&x, &w).unwrap();
        assert_eq!(ne_locus(&y), w);
        assert_eq!(proj_dim(&y, PrimeSite(0)).unwrap(), ExtInt::Fin(1));
        let (dy, dx) = (
            depth_of(&Object::from(y), PrimeSite(0)).unwrap(),
            depth_of(&Object::from(x.clone()), PrimeSite(0)).unwrap(),
        );
        assert_eq!(dy, dx);
        assert_eq!(ne_shrink(&k0, &NeLocus::from([PrimeSite(1)])), Err(Error::NotContained));
    }

    #[test]
    fn cone_triangle_inequalities() {
        let r = ring(&["x"], &[vec![3]]);
        let x = r.minimal_generators(PrimeSite(0)).unwrap().remove(0);
        let t = Triangle::from_map(&ChainMap::scalar(&FreeComplex::unit(&r), &x));
        check_triangle_inequalities(&t).unwrap();
    }
}
