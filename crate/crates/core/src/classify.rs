//! Classifying invariants of generator sets: the maps `Φ` and `Q`, the
//! membership tests they decide, the Koszul chain witnesses, the
//! perfect/MCM separation and the resulting fingerprint.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{PrimeSite, ProductRing};
use crate::complex::{FreeComplex, LocalComplex};
use crate::error::{Error, Result};
use crate::ext::ExtInt;
use crate::invariants::{local_proj_dim, ne_locus_object, proj_dim_object, NeLocus, Object};
use crate::koszul::ring_koszul;
use crate::matrix::LocalMatrix;
use crate::module::{dual_presentation, resolve, syzygy, LocalModuleComplex, ModuleComplex, Presentation};
use crate::spectrum::{check_grade_consistent, OrderMap, SpClosedSet, SpecPoset};

/// Finite generating data for a resolving subcategory; `R` is always
/// implicitly included.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    ring: Arc<ProductRing>,
    objects: Vec<Object>,
}

impl GeneratorSet {
    pub fn new(ring: &Arc<ProductRing>, objects: Vec<Object>) -> Result<Self> {
        if objects.iter().any(|x| x.ring().as_ref() != ring.as_ref()) {
            return Err(Error::RingMismatch);
        }
        Ok(Self { ring: ring.clone(), objects })
    }

    pub fn perfect(ring: &Arc<ProductRing>, xs: Vec<FreeComplex>) -> Result<Self> {
        Self::new(ring, xs.into_iter().map(Object::Perfect).collect())
    }

    pub fn ring(&self) -> &Arc<ProductRing> {
        &self.ring
    }

    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    pub fn with(&self, x: Object) -> Result<Self> {
        let mut objects = self.objects.clone();
        objects.push(x);
        Self::new(&self.ring, objects)
    }
}

/// `Φ(G ∪ {R})(p) = sup pd X_p`.
pub fn phi_map(g: &GeneratorSet) -> Result<OrderMap> {
    let mut values = vec![ExtInt::ZERO; g.ring.num_sites()];
    for x in &g.objects {
        for s in g.ring.sites() {
            values[s.0] = values[s.0].max(proj_dim_object(x, s)?.value);
        }
    }
    Ok(OrderMap::new(values))
}

/// `X ∈ res(G)` iff `pd X_p ≤ Φ(G ∪ {R})(p)` everywhere.
pub fn res_membership(x: &FreeComplex, g: &GeneratorSet) -> Result<bool> {
    if x.ring().as_ref() != g.ring.as_ref() {
        return Err(Error::RingMismatch);
    }
    let phi = phi_map(g)?;
    Ok(x.parts().iter().enumerate().all(|(s, c)| local_proj_dim(c) <= phi.get(s)))
}

/// `Q(G ∪ {R})(p) = sup pd (X^*)_p` over perfect generators.
pub fn q_map(ring: &Arc<ProductRing>, xs: &[FreeComplex]) -> Result<OrderMap> {
    let mut values = vec![ExtInt::ZERO; ring.num_sites()];
    for x in xs {
        if x.ring().as_ref() != ring.as_ref() {
            return Err(Error::RingMismatch);
        }
        for (s, c) in x.parts().iter().enumerate() {
            values[s] = values[s].max(local_proj_dim(&c.dual()));
        }
    }
    Ok(OrderMap::new(values))
}

/// `X ∈ G(f)`: `pd (X^*)_p ≤ f(p)` everywhere.
pub fn g_membership(f: &OrderMap, x: &FreeComplex) -> bool {
    x.parts().iter().enumerate().all(|(s, c)| local_proj_dim(&c.dual()) <= f.get(s))
}

/// `X ∈ G(f)[1]`, i.e. `X[-1] ∈ G(f)`.
pub fn g_shift_membership(f: &OrderMap, x: &FreeComplex) -> bool {
    g_membership(f, &x.shift(-1))
}

/// `X ∈ H(f)`: `H^i(X_p) = 0` for all `i ≥ f(p)`.
pub fn h_membership(f: &OrderMap, x: &Object) -> bool {
    let profile = x.homology_profile();
    (0..profile.sites.len()).all(|s| profile.sup_at(s) < f.get(s))
}

/// `K_R[n - e]` at site `s`, of projective dimension exactly `n` there.
pub fn k0_chain_witness(ring: &Arc<ProductRing>, s: PrimeSite, n: i64) -> Result<FreeComplex> {
    ring.check_site(s)?;
    let a = ring.factor(s);
    if a.is_field() && n >= 1 {
        return Err(Error::RegularFactor(s.0));
    }
    let e = a.embedding_dim() as i64;
    Ok(ring_koszul(ring, s)?.shift(n - e))
}

/// The witnesses `K(x_p)[f(p) - e_p]` for every site with finite `f(p)`.
pub fn phi_witnesses(ring: &Arc<ProductRing>, f: &OrderMap) -> Result<Vec<FreeComplex>> {
    let mut out = Vec::new();
    for s in ring.sites() {
        if let Some(n) = f.get(s.0).finite() {
            let e = ring.factor(s).embedding_dim() as i64;
            out.push(ring_koszul(ring, s)?.shift(n - e));
        }
    }
    Ok(out)
}

/// An exact triangle `X -> P -> Y -> X[1]` with `P` perfect and `Y`
/// maximal Cohen–Macaulay.
#[derive(Debug, Clone)]
pub struct Separation {
    pub perfect: FreeComplex,
    pub mcm: Object,
}

fn require_gorenstein_support(x: &Object) -> Result<()> {
    let profile = x.homology_profile();
    for s in x.ring().sites() {
        let a = x.ring().factor(s);
        if !profile.sites[s.0].is_empty() && !a.is_gorenstein() {
            return Err(Error::NotGorenstein(s.0, a.socle().len()));
        }
    }
    Ok(())
}

/// Splits a minimal free complex at degree zero: `P = σ^{≤0} X` and
/// `Y = (σ^{>0} X)[1]`.
fn separate_free(x: &FreeComplex) -> Separation {
    let m = x.minimize();
    let ring = m.ring().clone();
    let p = m.parts().iter().map(|c| c.truncate_below(0)).collect();
    let y = m.parts().iter().map(|c| c.truncate_above(0).shift(1)).collect();
    Separation {
        perfect: FreeComplex::from_parts(ring.clone(), p).expect("same ring"),
        mcm: Object::Perfect(FreeComplex::from_parts(ring, y).expect("same ring")),
    }
}

/// A module `M` placed in degree `t` over a self-injective local ring.
///
/// For `t > 0` the complex is already MCM after one shift. Otherwise, with
/// `q = -t` and `G -> M^*` a minimal resolution, `M` is coresolved by
/// `G_0^* -> G_1^* -> ...`; `P` is its part `G_0^* -> ... -> G_q^*` placed
/// in degrees `[-q, 0]` and `Y` is `(Ω^{q+1} M^*)^*` in degree zero.
fn separate_local_module(
    alg: &Arc<crate::algebra::LocalAlgebra>,
    deg: i64,
    m: &Presentation,
) -> (LocalComplex, LocalModuleComplex) {
    if deg > 0 {
        return (LocalComplex::zero(alg.clone()), LocalModuleComplex::module(alg.clone(), deg - 1, m.clone()));
    }
    let q = (-deg) as usize;
    let dual = dual_presentation(alg, m);
    let res = resolve(alg, &dual, q + 1);
    let ranks: Vec<usize> = (0..=q).map(|j| res.betti.get(j).copied().unwrap_or(0)).collect();
    let diffs: Vec<LocalMatrix> = (0..q)
        .map(|j| match res.maps.get(j) {
            Some(map) => map.transpose(),
            None => LocalMatrix::zeros(alg, ranks[j + 1], ranks[j]),
        })
        .collect();
    let p = LocalComplex::new(alg.clone(), -(q as i64), ranks, diffs).expect("dual of a resolution");
    let y = dual_presentation(alg, &syzygy(alg, &dual, q + 1));
    (p, LocalModuleComplex::module(alg.clone(), 0, y))
}

/// The triangle `X -> P -> Y` with `P` perfect and `Y` MCM.
pub fn separate(x: &Object) -> Result<Separation> {
    require_gorenstein_support(x)?;
    match x {
        Object::Perfect(c) => Ok(separate_free(c)),
        Object::Module(m) => {
            let ring = m.ring().clone();
            let mut ps = Vec::new();
            let mut ys = Vec::new();
            for part in m.parts() {
                let alg = part.algebra();
                let single = part.single_term().ok_or(Error::UnsupportedModuleComplex)?;
                let (p, y) = match single {
                    None => (LocalComplex::zero(alg.clone()), LocalModuleComplex::zero(alg.clone())),
                    Some((deg, pres)) => separate_local_module(alg, deg, &pres),
                };
                ps.push(p);
                ys.push(y);
            }
            Ok(Separation {
                perfect: FreeComplex::from_parts(ring.clone(), ps)?,
                mcm: Object::Module(ModuleComplex::from_parts(ring, ys)?),
            })
        }
    }
}

/// The classifying pair: an order-preserving map on `Spec R` and a
/// specialization-closed subset of the singular locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub fmap: OrderMap,
    pub sing_part: SpClosedSet,
}

/// Separation data recorded for one generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSplit {
    pub perfect_pd: Vec<ExtInt>,
    pub mcm_ne: NeLocus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FingerprintReport {
    pub fingerprint: Fingerprint,
    pub generators: Vec<GeneratorSplit>,
    pub warnings: Vec<String>,
}

/// Fingerprint of `res(G)`: `Φ` of the perfect parts and the NE-locus of
/// the MCM parts, intersected with the singular locus.
pub fn fingerprint(g: &GeneratorSet) -> Result<FingerprintReport> {
    let ring = &g.ring;
    let poset = SpecPoset::from_ring(ring);
    let sing = poset.singular_set();
    let mut warnings = Vec::new();
    for s in ring.singular_locus() {
        if !ring.is_hypersurface_at(s)? {
            warnings.push(format!("site {s} is not a hypersurface; the singular part may be incomplete"));
        }
    }
    let mut perfect = Vec::new();
    let mut generators = Vec::new();
    let mut ne = BTreeSet::new();
    for x in &g.objects {
        let sep = separate(x)?;
        let y_ne = ne_locus_object(&sep.mcm)?;
        for s in ring.sites() {
            if proj_dim_object(&sep.mcm, s)?.heuristic {
                warnings.push(format!("projective dimension at site {s} decided by the resolution cap"));
            }
        }
        ne.extend(y_ne.iter().map(|s| s.0).filter(|&s| sing.contains(s)));
        generators.push(GeneratorSplit {
            perfect_pd: sep.perfect.parts().iter().map(local_proj_dim).collect(),
            mcm_ne: y_ne,
        });
        perfect.push(sep.perfect);
    }
    warnings.sort();
    warnings.dedup();
    let fmap = phi_map(&GeneratorSet::perfect(ring, perfect)?)?;
    let sing_part = SpClosedSet::new(&poset, ne)?;
    Ok(FingerprintReport {
        fingerprint: Fingerprint { fmap, sing_part },
        generators,
        warnings,
    })
}

/// The inclusion arm `(g, W) ↦ (g, W)` from module data to complex data.
pub fn restrict_module_fingerprint(poset: &SpecPoset, g: &OrderMap, w: &SpClosedSet) -> Result<Fingerprint> {
    if !check_grade_consistent(poset, g)? {
        return Err(Error::NotGradeConsistent);
    }
    if !w.is_subset(&poset.singular_set()) {
        return Err(Error::InvariantViolation("subset is not contained in the singular locus".into()));
    }
    Ok(Fingerprint { fmap: g.clone(), sing_part: w.clone() })
}

/// Module-side data of a set of modules (each placed in degree zero): the
/// pointwise sup of finite projective dimensions and the union of the
/// nonfree loci.
pub fn module_level_invariants(ring: &Arc<ProductRing>, modules: &[ModuleComplex]) -> Result<(OrderMap, SpClosedSet)> {
    let poset = SpecPoset::from_ring(ring);
    let mut values = vec![ExtInt::ZERO; ring.num_sites()];
    let mut nonfree = BTreeSet::new();
    for m in modules {
        if m.ring().as_ref() != ring.as_ref() {
            return Err(Error::RingMismatch);
        }
        let x = Object::Module(m.clone());
        for s in ring.sites() {
            match proj_dim_object(&x, s)?.value {
                ExtInt::PosInf => {
                    nonfree.insert(s.0);
                }
                v => values[s.0] = values[s.0].max(v),
            }
        }
    }
    Ok((OrderMap::new(values), SpClosedSet::new(&poset, nonfree)?))
}
