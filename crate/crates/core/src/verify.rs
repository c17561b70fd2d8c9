//! Seeded property sweeps over the whole library. Each check has a stable
//! identifier; results are reported in identifier order.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{LocalAlgebra, PrimeSite, ProductRing, RingElement};
use crate::classify::{
    fingerprint, g_membership, g_shift_membership, h_membership, k0_chain_witness, module_level_invariants, phi_map,
    phi_witnesses, res_membership, restrict_module_fingerprint, GeneratorSet,
};
use crate::complex::{compose_cone_triangle, truncation_triangle, ChainMap, DualConvention, FreeComplex, Triangle};
use crate::error::Error;
use crate::ext::ExtInt;
use crate::field::PrimeField;
use crate::gen::{product_ring, scoped_rings, total_rank, ElementKind, Gen};
use crate::homology::{check_les, homology_profile};
use crate::invariants::{
    check_triangle_inequalities, depth_of, gdim_of, gdim_via_dual, is_in_k0n, ne_locus, ne_shrink, proj_dim,
    NeLocus, Object,
};
use crate::koszul::{koszul_complex, ring_koszul, twist, KoszulSpec};
use crate::module::{ModuleComplex, Presentation};
use crate::spectrum::{
    check_t_function, check_weak_cousin, enumerate_filtrations, enumerate_order_maps, enumerate_posets, filt_to_map,
    map_to_filt, OrderMap, SpecPoset,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub enum Scale {
    Tiny,
    #[default]
    Default,
    Full,
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Tiny => "tiny",
            Scale::Default => "default",
            Scale::Full => "full",
        })
    }
}

/// Deliberate faults the verifier must be able to catch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Dualize with alternating row signs instead of the standard sign.
    DualSign,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyConfig {
    pub scale: Scale,
    pub seed: u64,
    pub fault: Option<Fault>,
}

/// A failed check: what went wrong and, when there is one, the smallest
/// complex that exhibits it.
#[derive(Debug, Clone)]
pub struct Failure {
    pub message: String,
    pub instance: Option<FreeComplex>,
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure { message, instance: None }
    }
}

impl From<&str> for Failure {
    fn from(message: &str) -> Self {
        Failure { message: message.to_string(), instance: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { message: e.to_string(), instance: None }
    }
}

pub type Outcome = Result<String, Failure>;

pub struct Check {
    pub id: &'static str,
    pub about: &'static str,
    /// Included in the tiny subset.
    pub tiny: bool,
    run: fn(&Ctx) -> Outcome,
}

pub struct CheckResult {
    pub id: &'static str,
    pub about: &'static str,
    pub outcome: Outcome,
}

pub struct Ctx {
    config: VerifyConfig,
}

impl Ctx {
    pub fn new(config: VerifyConfig) -> Self {
        Ctx { config }
    }

    pub fn scale(&self) -> Scale {
        self.config.scale
    }

    fn full(&self) -> bool {
        self.config.scale == Scale::Full
    }

    /// A sample count: `full` at full scale, half by default, a tenth when tiny.
    pub fn count(&self, full: usize) -> usize {
        match self.config.scale {
            Scale::Full => full,
            Scale::Default => full.div_ceil(2),
            Scale::Tiny => (full / 10).max(1),
        }
    }

    /// Generator for one check, derived from the run seed and a per-check salt.
    pub fn gen(&self, salt: u64) -> Gen {
        Gen::new(salt ^ self.config.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    pub fn dual(&self, x: &FreeComplex) -> FreeComplex {
        match self.config.fault {
            Some(Fault::DualSign) => x.dual_with(DualConvention::RowAlternating),
            None => x.dual(),
        }
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::from(msg()))
    }
}

/// Runs `test` on every sample; on failure reports the failing sample of
/// least total rank, minimized when the minimized form still fails.
fn sweep(xs: Vec<FreeComplex>, test: impl Fn(&FreeComplex) -> Result<(), String>) -> Result<(), Failure> {
    let mut worst: Option<(usize, FreeComplex, String)> = None;
    for x in xs {
        if let Err(msg) = test(&x) {
            let size = total_rank(&x);
            if worst.as_ref().is_none_or(|w| size < w.0) {
                worst = Some((size, x, msg));
            }
        }
    }
    let Some((_, x, msg)) = worst else {
        return Ok(());
    };
    let m = x.minimize();
    let (instance, message) = match test(&m) {
        Err(msg) => (m, msg),
        Ok(()) => (x, msg),
    };
    Err(Failure { message, instance: Some(instance) })
}

fn field() -> PrimeField {
    PrimeField::default()
}

fn local_ring(vars: &[&str], rels: &[Vec<u32>]) -> Arc<ProductRing> {
    Arc::new(ProductRing::build(field().p(), vars, rels).expect("valid ring"))
}

fn ring_axioms(ctx: &Ctx) -> Outcome {
    let mut g = ctx.gen(10);
    let rings = scoped_rings(field());
    let n = ctx.count(200);
    for i in 0..n {
        let r = &rings[i % rings.len()];
        let [a, b, c] = [0; 3].map(|_| g.element(r, ElementKind::Mixed));
        ensure(r.mul(&r.mul(&a, &b), &c) == r.mul(&a, &r.mul(&b, &c)), || "product not associative".into())?;
        ensure(r.mul(&a, &r.add(&b, &c)) == r.add(&r.mul(&a, &b), &r.mul(&a, &c)), || {
            "product not distributive".into()
        })?;
        ensure(r.mul(&a, &b) == r.mul(&b, &a), || "product not commutative".into())?;
        for s in r.sites() {
            let unit = r.is_unit_at(&a, s)? && r.is_unit_at(&b, s)?;
            ensure(r.is_unit_at(&r.mul(&a, &b), s)? == unit, || format!("unit test of ab wrong at {s}"))?;
        }
    }
    Ok(format!("{n} triples"))
}

fn koszul_pd(ctx: &Ctx) -> Outcome {
    let mut cases: Vec<(Arc<ProductRing>, i64)> = vec![
        (local_ring(&["x"], &[vec![1]]), 0),
        (local_ring(&["x"], &[vec![2]]), 1),
        (local_ring(&["x", "y"], &[vec![2, 0], vec![0, 2]]), 2),
    ];
    if ctx.scale() != Scale::Tiny {
        cases.push((local_ring(&["x", "y", "z"], &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]), 3));
    }
    for (r, e) in &cases {
        let k = ring_koszul(r, PrimeSite(0))?;
        let pd = proj_dim(&k, PrimeSite(0))?;
        ensure(pd == ExtInt::Fin(*e), || format!("pd K_R = {pd}, expected {e}"))?;
        let a = r.factor(PrimeSite(0));
        let unit = r.element(vec![a.add(&a.one(), &a.variable(0))]);
        let mut xs = r.minimal_generators(PrimeSite(0))?;
        xs.push(unit.clone());
        for seq in [vec![unit], xs] {
            let kz = koszul_complex(&KoszulSpec::new(r, seq)?).minimize();
            ensure(kz.is_zero(), || "unit-containing Koszul complex is not zero".into())?;
        }
    }
    let es: Vec<String> = cases.iter().map(|c| c.1.to_string()).collect();
    Ok(format!("e = {} and unit sequences", es.join(", ")))
}

fn k0_chain(ctx: &Ctx) -> Outcome {
    let r = local_ring(&["x"], &[vec![2]]);
    let s = PrimeSite(0);
    let top = match ctx.scale() {
        Scale::Tiny => 2,
        Scale::Default => 4,
        Scale::Full => 6,
    };
    let w = |n: i64| k0_chain_witness(&r, s, n);
    for n in 0..=top {
        let x = w(n)?;
        let up = w(n + 1)?;
        ensure(is_in_k0n(&x, n, s)? && !is_in_k0n(&x, n - 1, s)?, || format!("witness {n} has the wrong level"))?;
        let r_up = GeneratorSet::perfect(&r, vec![up.clone()])?;
        let r_down = GeneratorSet::perfect(&r, vec![x.clone()])?;
        ensure(res_membership(&x, &r_up)?, || format!("witness {n} not in res(witness {})", n + 1))?;
        ensure(!res_membership(&up, &r_down)?, || format!("witness {} in res(witness {n})", n + 1))?;
    }
    Ok(format!("n = 0..{top}"))
}

fn phi_roundtrip(ctx: &Ctx) -> Outcome {
    let r = product_ring(field(), &[1, 2, 3]);
    let mut g = ctx.gen(11);
    let n = ctx.count(20);
    for _ in 0..n {
        let f = g.natural_map(3, 4);
        let phi = phi_map(&GeneratorSet::perfect(&r, phi_witnesses(&r, &f)?)?)?;
        ensure(phi == f, || format!("Φ of witnesses {phi} differs from {f}"))?;
    }
    Ok(format!("{n} maps on a 3-factor ring"))
}

fn poset_counts(ctx: &Ctx) -> Outcome {
    let expected = [1, 1, 2, 5, 16, 63];
    let top = if ctx.full() { 5 } else { 4 };
    for (n, &want) in expected.iter().enumerate().take(top + 1) {
        let got = enumerate_posets(n)?.len();
        ensure(got == want, || format!("{got} posets on {n} points up to isomorphism, expected {want}"))?;
    }
    Ok(format!("sizes 0..{top}"))
}

fn filtration_bijection(ctx: &Ctx) -> Outcome {
    let top = match ctx.scale() {
        Scale::Tiny => 3,
        Scale::Default => 4,
        Scale::Full => 5,
    };
    let (mut maps, mut filts, mut posets) = (0, 0, 0);
    for n in 0..=top {
        for poset in enumerate_posets(n)? {
            posets += 1;
            for f in enumerate_order_maps(&poset, 3)? {
                let phi = map_to_filt(&poset, &f)?;
                ensure(filt_to_map(&poset, &phi)? == f, || format!("F∘P ≠ id at {f}"))?;
                if check_weak_cousin(&poset, &phi) {
                    ensure(check_t_function(&poset, &f), || format!("weak Cousin P({f}) but not a t-function"))?;
                }
                maps += 1;
            }
            for phi in enumerate_filtrations(&poset, 3)? {
                let f = filt_to_map(&poset, &phi)?;
                ensure(map_to_filt(&poset, &f)? == phi, || format!("P∘F ≠ id at {}", phi.format(&poset)))?;
                filts += 1;
            }
        }
    }
    ensure(maps == filts, || format!("{maps} maps but {filts} filtrations"))?;
    Ok(format!("{posets} posets, {maps} maps, {filts} filtrations"))
}

fn element_choices(a: &LocalAlgebra) -> Vec<Vec<u32>> {
    let mut out = vec![a.zero(), a.one()];
    for v in a.generator_variables() {
        out.push(a.variable(v));
        out.push(a.add(&a.one(), &a.variable(v)));
    }
    out
}

fn twist_ne(ctx: &Ctx) -> Outcome {
    let mut g = ctx.gen(24);
    let mut count = 0;
    let rings = [product_ring(field(), &[1, 2]), product_ring(field(), &[3, 0])];
    for (ri, r) in rings.iter().enumerate() {
        let c0 = element_choices(r.factor(PrimeSite(0)));
        let c1 = element_choices(r.factor(PrimeSite(1)));
        let n = ctx.count(25 + ri);
        let xs: Vec<FreeComplex> = (0..n).map(|_| g.complex(r)).collect();
        count += xs.len();
        sweep(xs, |x| {
            let ne = ne_locus(x);
            for a in &c0 {
                for b in &c1 {
                    let e = RingElement::from_parts(vec![a.clone(), b.clone()]);
                    let v: NeLocus = r.sites().filter(|&s| !r.is_unit_at(&e, s).unwrap_or(false)).collect();
                    let expected: NeLocus = ne.intersection(&v).copied().collect();
                    let got = ne_locus(&twist(x, std::slice::from_ref(&e)).map_err(|e| e.to_string())?);
                    if got != expected {
                        return Err(format!(
                            "NE(X(x)) = {got:?}, expected {expected:?} for x = {}",
                            r.format_element(&e)
                        ));
                    }
                }
            }
            Ok(())
        })?;
    }
    if ctx.full() {
        ensure(count >= 50, || "too few complexes".into())?;
    }
    Ok(format!("{count} complexes × all element tuples on 2 rings"))
}

fn shrink(ctx: &Ctx) -> Outcome {
    let mut g = ctx.gen(26);
    let rings = [product_ring(field(), &[1, 2]), product_ring(field(), &[2, 0, 3])];
    let target = ctx.count(30);
    let (mut done, mut attempts) = (0, 0);
    while done < target {
        attempts += 1;
        ensure(attempts < 10_000, || "could not sample instances".into())?;
        let r = &rings[done % 2];
        let x = g.complex(r);
        let ne = ne_locus(&x);
        if ne.is_empty() {
            continue;
        }
        let w: NeLocus = ne.iter().copied().filter(|_| g.coin()).collect();
        let fail = |message: String| Failure { message, instance: Some(x.clone()) };
        let y = ne_shrink(&x, &w)?;
        if ne_locus(&y) != w {
            return Err(fail(format!("NE(Y) = {:?}, W = {w:?}", ne_locus(&y))));
        }
        for &p in &w {
            if proj_dim(&y, p)? != proj_dim(&x, p)? {
                return Err(fail(format!("pd changed at {p}")));
            }
            if depth_of(&Object::from(y.clone()), p)? != depth_of(&Object::from(x.clone()), p)? {
                return Err(fail(format!("depth changed at {p}")));
            }
        }
        done += 1;
    }
    Ok(format!("{target} instances over 2- and 3-factor rings"))
}

fn auslander_buchsbaum(ctx: &Ctx) -> Outcome {
    let mut g = ctx.gen(27);
    let rings = scoped_rings(field());
    let n = ctx.count(100);
    for r in &rings {
        let xs: Vec<FreeComplex> = (0..n).map(|_| g.nonzero_minimal(r)).collect();
        sweep(xs, |x| {
            let obj = Object::from(x.clone());
            for s in r.sites().filter(|&s| !x.part(s).is_zero()) {
                let pd = proj_dim(x, s).map_err(|e| e.to_string())?;
                let depth = depth_of(&obj, s).map_err(|e| e.to_string())?;
                if pd.finite().zip(depth.finite()).map(|(a, b)| a + b) != Some(0) {
                    return Err(format!("pd {pd} + depth {depth} ≠ 0 at {s}"));
                }
            }
            Ok(())
        })?;
    }
    Ok(format!("{n} complexes on each of {} rings", rings.len()))
}

fn gdim_dual(ctx: &Ctx) -> Outcome {
    let mut g = ctx.gen(33);
    let rings = scoped_rings(field());
    let n = ctx.count(30);
    for r in &rings {
        let xs: Vec<FreeComplex> = (0..n).map(|_| g.complex(r)).collect();
        sweep(xs, |x| {
            for s in r.sites() {
                let a = gdim_of(&Object::from(x.clone()), s).map_err(|e| e.to_string())?;
                let b = gdim_via_dual(x, s).map_err(|e| e.to_string())?;
                if a != b {
                    return Err(format!("gdim {a} but sup H(X*) = {b} at {s}"));
                }
            }
            Ok(())
        })?;
    }
    Ok(format!("{n} complexes on each of {} rings", rings.len()))
}

fn check_triangle(t: &Triangle) -> Result<(), Failure> {
    let instance = || Some(t.a.clone());
    t.check_maps().map_err(|e| Failure { message: e.to_string(), instance: instance() })?;
    check_les(t).map_err(|message| Failure { message, instance: instance() })?;
    check_triangle_inequalities(t).map_err(|message| Failure { message, instance: instance() })
}

fn triangle_inequalities(ctx: &Ctx) -> Outcome {
    let mut g = ctx.gen(28);
    let mut count = 0;
    let n = ctx.count(12);
    for r in scoped_rings(field()) {
        for _ in 0..n {
            let x = g.complex(&r);
            let a = g.element(&r, ElementKind::Mixed);
            let b = g.element(&r, ElementKind::Nonunit);
            let fa = ChainMap::scalar(&x, &a);
            let fb = ChainMap::scalar(&x, &b);
            check_triangle(&Triangle::from_map(&fa))?;
            check_triangle(&Triangle::from_map(&fb))?;
            check_triangle(&compose_cone_triangle(&fa, &fb)?)?;
            let m = x.minimize();
            for cut in -1..=0 {
                check_triangle(&truncation_triangle(&m, cut))?;
            }
            count += 5;
        }
    }
    if ctx.full() {
        ensure(count >= 200, || format!("only {count} triangles"))?;
    }
    Ok(format!("{count} cone, twist, composite and truncation triangles"))
}

fn minimize_certificates(ctx: &Ctx) -> Outcome {
    let mut g = ctx.gen(34);
    let rings = scoped_rings(field());
    let n = ctx.count(100);
    let xs: Vec<FreeComplex> = (0..n).map(|i| g.complex(&rings[i % rings.len()])).collect();
    sweep(xs, |x| {
        let m = x.minimize();
        m.check_d_squared().map_err(|e| e.to_string())?;
        if !m.is_minimal() {
            return Err("minimize left a unit entry".into());
        }
        if homology_profile(&m) != homology_profile(x) {
            return Err("minimize changed the homology".into());
        }
        if m.minimize() != m {
            return Err("minimize is not idempotent".into());
        }
        Ok(())
    })?;
    Ok(format!("{n} complexes"))
}

fn euler_characteristic(ctx: &Ctx) -> Outcome {
    let mut g = ctx.gen(35);
    let rings = scoped_rings(field());
    let n = ctx.count(100);
    let xs: Vec<FreeComplex> = (0..n).map(|i| g.complex(&rings[i % rings.len()])).collect();
    sweep(xs, |x| {
        let h = homology_profile(x);
        for (s, c) in x.parts().iter().enumerate() {
            let chain = c.euler_characteristic();
            if chain != h.euler_at(s) {
                return Err(format!("site {s}: chain-level χ {chain}, homology χ {}", h.euler_at(s)));
            }
        }
        Ok(())
    })?;
    Ok(format!("{n} complexes"))
}

fn g_shift_equals_h(ctx: &Ctx) -> Outcome {
    let r = product_ring(field(), &[1, 2]);
    let poset = SpecPoset::from_ring(&r);
    let mut g = ctx.gen(29);
    let mut fs: Vec<OrderMap> = Vec::new();
    let nf = ctx.count(20);
    while fs.len() < nf {
        let values = (0..2)
            .map(|_| match g.range(0, 4) {
                4 => ExtInt::PosInf,
                v => ExtInt::Fin(v),
            })
            .collect();
        let f = OrderMap::new(values);
        if check_t_function(&poset, &f) {
            fs.push(f);
        }
    }
    let nx = ctx.count(30);
    let xs: Vec<FreeComplex> = (0..nx).map(|_| g.complex(&r)).collect();
    for f in &fs {
        sweep(xs.clone(), |x| {
            let lhs = g_shift_membership(f, x);
            let rhs = h_membership(f, &Object::from(x.clone()));
            if lhs != rhs {
                return Err(format!("G(f)[1] says {lhs}, H(f) says {rhs} for f = {f}"));
            }
            Ok(())
        })?;
    }
    Ok(format!("{nf} t-functions × {nx} complexes"))
}

fn module_square(ctx: &Ctx) -> Outcome {
    let mut checked = 0;
    let exponents: &[u32] = if ctx.scale() == Scale::Tiny { &[2] } else { &[2, 3] };
    for &n in exponents {
        let r = local_ring(&["x"], &[vec![n]]);
        let a = r.factor(PrimeSite(0)).clone();
        let poset = SpecPoset::from_ring(&r);
        let mut pool = vec![Presentation::free(&a, 1), Presentation::free(&a, 2), Presentation::residue_field(&a)];
        for i in 1..n {
            let mut xi = a.one();
            for _ in 0..i {
                xi = a.mul(&xi, &a.variable(0));
            }
            pool.push(Presentation::cyclic(&xi));
        }
        let mods = pool
            .iter()
            .map(|p| ModuleComplex::module(&r, 0, vec![p.clone()]))
            .collect::<crate::error::Result<Vec<_>>>()?;
        let mut sets: Vec<Vec<ModuleComplex>> = mods.iter().map(|m| vec![m.clone()]).collect();
        for i in 0..mods.len() {
            for j in i + 1..mods.len() {
                sets.push(vec![mods[i].clone(), mods[j].clone()]);
            }
        }
        for set in sets {
            let (gmap, w) = module_level_invariants(&r, &set)?;
            let lhs = restrict_module_fingerprint(&poset, &gmap, &w)?;
            let gens = GeneratorSet::new(&r, set.into_iter().map(Object::Module).collect())?;
            let rhs = fingerprint(&gens)?.fingerprint;
            ensure(lhs == rhs, || format!("module side {lhs:?} vs complex side {rhs:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} module generator sets"))
}

fn biduality(ctx: &Ctx) -> Outcome {
    let mut g = ctx.gen(31);
    let rings = scoped_rings(field());
    let n = ctx.count(100);
    let xs: Vec<FreeComplex> = (0..n).map(|i| g.complex(&rings[i % rings.len()])).collect();
    sweep(xs, |x| {
        let d = ctx.dual(x);
        d.check_d_squared().map_err(|e| format!("X*: {e}"))?;
        let dd = ctx.dual(&d);
        dd.check_d_squared().map_err(|e| format!("X**: {e}"))?;
        if dd.minimal_ranks() != x.minimal_ranks() {
            return Err("X** has different minimal ranks".into());
        }
        if homology_profile(&dd) != homology_profile(x) {
            return Err("X** has a different homology profile".into());
        }
        Ok(())
    })?;
    Ok(format!("{n} complexes"))
}

fn duality_transport(ctx: &Ctx) -> Outcome {
    let mut g = ctx.gen(36);
    let rings = scoped_rings(field());
    let n = ctx.count(100);
    for i in 0..n {
        let r = &rings[i % rings.len()];
        let x = g.complex(r);
        let f = g.natural_map(r.num_sites(), 3);
        let witnesses = GeneratorSet::perfect(r, phi_witnesses(r, &f)?)?;
        let lhs = g_membership(&f, &x);
        let rhs = res_membership(&ctx.dual(&x), &witnesses)?;
        if lhs != rhs {
            return Err(Failure {
                message: format!("G({f}) says {lhs}, Φ-side on the dual says {rhs}"),
                instance: Some(x),
            });
        }
    }
    Ok(format!("{n} complexes"))
}

/// Every check, in identifier order.
pub fn checks() -> Vec<Check> {
    let mut all = vec![
        Check { id: "algebra.ring-axioms", about: "products are associative, commutative and distributive", tiny: true, run: ring_axioms },
        Check { id: "classify.duality-transport", about: "G(f) membership matches Φ-side membership of the dual", tiny: false, run: duality_transport },
        Check { id: "classify.g-shift-equals-h", about: "G(f)[1] agrees with H(f) on perfect complexes", tiny: false, run: g_shift_equals_h },
        Check { id: "classify.k0-chain", about: "Koszul chain witnesses sit at exact levels with strict inclusions", tiny: true, run: k0_chain },
        Check { id: "classify.module-square", about: "module fingerprint agrees with the complex fingerprint", tiny: false, run: module_square },
        Check { id: "classify.phi-roundtrip", about: "Φ of the Koszul witness family reproduces the map", tiny: true, run: phi_roundtrip },
        Check { id: "complex.biduality", about: "dualizing twice preserves d∘d = 0 and certificates", tiny: true, run: biduality },
        Check { id: "complex.minimize", about: "minimize is idempotent, minimal and keeps homology", tiny: true, run: minimize_certificates },
        Check { id: "complex.triangle-inequalities", about: "triangles are exact and satisfy pd and depth inequalities", tiny: false, run: triangle_inequalities },
        Check { id: "homology.euler-characteristic", about: "homology and chain Euler characteristics agree", tiny: true, run: euler_characteristic },
        Check { id: "invariants.auslander-buchsbaum", about: "pd + depth = 0 at every site of a minimal complex", tiny: true, run: auslander_buchsbaum },
        Check { id: "invariants.gdim-dual", about: "gdim equals sup of the homology of the dual", tiny: false, run: gdim_dual },
        Check { id: "invariants.ne-shrink", about: "shrinking hits W and keeps pd and depth on W", tiny: false, run: shrink },
        Check { id: "koszul.projective-dimension", about: "pd of the Koszul complex on the maximal ideal is its embedding dimension", tiny: true, run: koszul_pd },
        Check { id: "koszul.twist-ne-locus", about: "twisting by x cuts the NE-locus by V(x)", tiny: false, run: twist_ne },
        Check { id: "spectrum.filtration-bijection", about: "filtrations and order-preserving maps are mutually inverse", tiny: true, run: filtration_bijection },
        Check { id: "spectrum.poset-counts", about: "posets up to isomorphism have the known counts", tiny: true, run: poset_counts },
    ];
    all.sort_by_key(|c| c.id);
    all
}

impl Check {
    pub fn run(&self, ctx: &Ctx) -> Outcome {
        (self.run)(ctx)
    }
}

/// Runs the checks selected by the scale, in identifier order.
pub fn run_suite(config: VerifyConfig) -> Vec<CheckResult> {
    let ctx = Ctx::new(config);
    checks()
        .into_iter()
        .filter(|c| config.scale != Scale::Tiny || c.tiny)
        .map(|c| CheckResult { id: c.id, about: c.about, outcome: c.run(&ctx) })
        .collect()
}

/// Runs one check by identifier.
pub fn run_check(id: &str, config: VerifyConfig) -> Option<Outcome> {
    let ctx = Ctx::new(config);
    checks().into_iter().find(|c| c.id == id).map(|c| c.run(&ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_suite_passes() {
        let results = run_suite(VerifyConfig { scale: Scale::Tiny, ..Default::default() });
        for r in &results {
            assert!(r.outcome.is_ok(), "{}: {:?}", r.id, r.outcome.as_ref().err().map(|f| &f.message));
        }
        assert!(results.windows(2).all(|w| w[0].id < w[1].id));
    }

    #[test]
    fn dual_sign_fault_is_caught_by_biduality() {
        let config = VerifyConfig { scale: Scale::Tiny, seed: 0, fault: Some(Fault::DualSign) };
        let failure = run_check("complex.biduality", config).unwrap().unwrap_err();
        assert!(failure.instance.is_some());
        let clean = run_check("complex.biduality", VerifyConfig { fault: None, ..config }).unwrap();
        assert!(clean.is_ok());
    }
}
