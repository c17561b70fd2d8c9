use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use resolvent_core::algebra::{PrimeSite, ProductRing};
use resolvent_core::classify::{
    fingerprint, phi_map, q_map, res_membership, separate, GeneratorSet,
};
use resolvent_core::complex::{ChainMap, FreeComplex, LocalChainMap};
use resolvent_core::ext::ExtInt;
use resolvent_core::field::PrimeField;
use resolvent_core::gen::{product_ring, scoped_rings, ElementKind, Gen};
use resolvent_core::homology::homology_profile;
use resolvent_core::invariants::{
    is_in_e, is_mcm, ne_locus, ne_locus_object, proj_dim, proj_dim_global, Object,
};
use resolvent_core::koszul::{koszul_complex, ring_koszul, twist, KoszulSpec};
use resolvent_core::matrix::LocalMatrix;
use resolvent_core::spectrum::{enumerate_grade_consistent, enumerate_posets, grade_of, SpecPoset};

fn field() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn pick_ring(seed: u64) -> Arc<ProductRing> {
    let rings = scoped_rings(field());
    rings[(seed % rings.len() as u64) as usize].clone()
}

fn euler(x: &FreeComplex, s: usize) -> i64 {
    x.parts()[s].euler_characteristic()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let r = pick_ring(seed);
        let mut g = Gen::new(seed);
        let a = g.element(&r, ElementKind::Mixed);
        let b = g.element(&r, ElementKind::Mixed);
        let c = g.element(&r, ElementKind::Mixed);
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        for s in r.sites() {
            let (ua, ub) = (r.is_unit_at(&a, s).unwrap(), r.is_unit_at(&b, s).unwrap());
            prop_assert_eq!(r.is_unit_at(&r.mul(&a, &b), s).unwrap(), ua && ub);
        }
    }

    #[test]
    fn minimize_is_idempotent_and_keeps_homology(seed in any::<u64>()) {
        let r = pick_ring(seed);
        let x = Gen::new(seed).complex(&r);
        let m = x.minimize();
        prop_assert!(m.is_minimal());
        m.check_d_squared().unwrap();
        prop_assert_eq!(homology_profile(&m), homology_profile(&x));
        prop_assert_eq!(m.minimize().minimal_ranks(), m.minimal_ranks());
    }

    #[test]
    fn cone_euler_and_les_bound(seed in any::<u64>()) {
        let r = pick_ring(seed);
        let mut g = Gen::new(seed);
        let x = g.complex(&r);
        let a = g.element(&r, ElementKind::Mixed);
        let c = ChainMap::scalar(&x, &a).cone();
        c.check_d_squared().unwrap();
        let (hx, hc) = (homology_profile(&x), homology_profile(&c));
        for s in 0..r.num_sites() {
            prop_assert_eq!(euler(&c, s), 0);
            prop_assert_eq!(hc.euler_at(s), 0);
            for (&i, &h) in &hc.sites[s] {
                prop_assert!(h <= hx.dim(s, i) + hx.dim(s, i + 1));
            }
        }
    }

    #[test]
    fn shift_and_dual_bookkeeping(seed in any::<u64>(), a in -3i64..3, b in -3i64..3) {
        let r = pick_ring(seed);
        let x = Gen::new(seed).complex(&r);
        prop_assert_eq!(x.shift(a).shift(b), x.shift(a + b));
        prop_assert_eq!(proj_dim_global(&x.shift(a)), proj_dim_global(&x).offset(a));
        let d = x.dual();
        for (s, c) in x.parts().iter().enumerate() {
            let reversed: BTreeMap<i64, usize> = c.graded_ranks().into_iter().map(|(i, n)| (-i, n)).collect();
            prop_assert_eq!(d.parts()[s].graded_ranks(), reversed);
        }
    }

    #[test]
    fn koszul_tensor_matches_cone(seed in any::<u64>()) {
        let r = pick_ring(seed);
        let mut g = Gen::new(seed);
        let x = g.complex(&r);
        let e = g.element(&r, ElementKind::Mixed);
        let k = koszul_complex(&KoszulSpec::new(&r, vec![e.clone()]).unwrap());
        let t = k.tensor(&x).unwrap();
        prop_assert_eq!(homology_profile(&t), homology_profile(&ChainMap::scalar(&x, &e).cone()));
        let tw = twist(&x, std::slice::from_ref(&e)).unwrap();
        prop_assert_eq!(homology_profile(&tw), homology_profile(&ChainMap::scalar(&x, &e).cone().shift(-1)));
    }

    #[test]
    fn pd_is_sup_of_local_pd_and_respects_sums(seed in any::<u64>()) {
        let r = pick_ring(seed);
        let mut g = Gen::new(seed);
        let x = g.complex(&r);
        let y = g.complex(&r);
        let sup = ExtInt::sup(r.sites().map(|s| proj_dim(&x.localize_or_part(s), PrimeSite(0)).unwrap()));
        prop_assert_eq!(proj_dim_global(&x), sup);
        let xy = x.direct_sum(&y).unwrap();
        prop_assert_eq!(proj_dim_global(&xy), proj_dim_global(&x).max(proj_dim_global(&y)));
        let ne: std::collections::BTreeSet<_> = ne_locus(&x).union(&ne_locus(&y)).copied().collect();
        prop_assert_eq!(ne_locus(&xy), ne.clone());
        prop_assert_eq!(ne.is_empty(), is_in_e(&xy));
    }

    #[test]
    fn mcm_parts_have_ne_in_singular_locus(seed in any::<u64>()) {
        let r = product_ring(field(), &[1, 0, 2]);
        let x = Gen::new(seed).complex(&r);
        let sep = separate(&Object::from(x)).unwrap();
        prop_assert!(is_mcm(&sep.mcm));
        let sing = r.singular_locus();
        for s in ne_locus_object(&sep.mcm).unwrap() {
            prop_assert!(sing.contains(&s));
        }
    }

    #[test]
    fn resolving_decision_is_a_closure(seed in any::<u64>()) {
        let r = pick_ring(seed);
        let mut g = Gen::new(seed);
        let xs: Vec<FreeComplex> = (0..3).map(|_| g.complex(&r)).collect();
        let gset = GeneratorSet::perfect(&r, vec![xs[0].clone()]).unwrap();
        prop_assert!(res_membership(&xs[0], &gset).unwrap());
        let bigger = GeneratorSet::perfect(&r, vec![xs[0].clone(), xs[1].clone()]).unwrap();
        if res_membership(&xs[2], &gset).unwrap() {
            prop_assert!(res_membership(&xs[2], &bigger).unwrap());
        }
        if res_membership(&xs[1], &gset).unwrap() && res_membership(&xs[2], &bigger).unwrap() {
            prop_assert!(res_membership(&xs[2], &gset).unwrap());
        }
        let unit = GeneratorSet::perfect(&r, vec![]).unwrap();
        prop_assert_eq!(res_membership(&xs[1], &unit).unwrap(), is_in_e(&xs[1]));
    }

    #[test]
    fn chain_is_total_at_a_site(seed in any::<u64>()) {
        let r = product_ring(field(), &[2, 0]);
        let mut g = Gen::new(seed);
        let s0 = |x: FreeComplex| {
            let parts = vec![x.parts()[0].clone(), resolvent_core::complex::LocalComplex::zero(r.factor(PrimeSite(1)).clone())];
            FreeComplex::from_parts(r.clone(), parts).unwrap()
        };
        let x = s0(g.nonzero_minimal(&r));
        let y = s0(g.nonzero_minimal(&r));
        if proj_dim_global(&x) >= ExtInt::ZERO && proj_dim_global(&y) >= ExtInt::ZERO {
            let gx = GeneratorSet::perfect(&r, vec![x.clone()]).unwrap();
            let gy = GeneratorSet::perfect(&r, vec![y.clone()]).unwrap();
            prop_assert!(res_membership(&x, &gy).unwrap() || res_membership(&y, &gx).unwrap());
        }
    }

    #[test]
    fn fingerprint_stable_under_dominated_generators(seed in any::<u64>()) {
        let r = product_ring(field(), &[1, 2]);
        let mut g = Gen::new(seed);
        let x = g.complex(&r);
        let gset = GeneratorSet::perfect(&r, vec![x.clone()]).unwrap();
        let before = fingerprint(&gset).unwrap().fingerprint;
        // a twist of X is built from X by cones, so its invariants are dominated
        let e = g.element(&r, ElementKind::Nonunit);
        let y = twist(&x, &[e]).unwrap();
        let after = fingerprint(&gset.with(Object::from(y)).unwrap()).unwrap().fingerprint;
        prop_assert_eq!(before, after);
    }

    #[test]
    fn koszul_twist_dominates(seed in any::<u64>()) {
        let r = product_ring(field(), &[3]);
        let x = Gen::new(seed).nonzero_minimal(&r);
        let xs = r.minimal_generators(PrimeSite(0)).unwrap();
        let n = xs.len() as i64;
        let k = koszul_complex(&KoszulSpec::new(&r, xs).unwrap());
        let kx = k.tensor(&x.shift(-n)).unwrap();
        let lhs = phi_map(&GeneratorSet::perfect(&r, vec![kx]).unwrap()).unwrap();
        let rhs = phi_map(&GeneratorSet::perfect(&r, vec![x]).unwrap()).unwrap();
        prop_assert!(lhs.get(0) >= rhs.get(0));
    }

    #[test]
    fn q_map_via_double_dual(seed in any::<u64>()) {
        let r = pick_ring(seed);
        let x = Gen::new(seed).complex(&r);
        let q = q_map(&r, std::slice::from_ref(&x)).unwrap();
        let qq = q_map(&r, &[x.dual().dual()]).unwrap();
        prop_assert_eq!(q, qq);
    }
}

trait LocalizeOrPart {
    fn localize_or_part(&self, s: PrimeSite) -> FreeComplex;
}

impl LocalizeOrPart for FreeComplex {
    fn localize_or_part(&self, s: PrimeSite) -> FreeComplex {
        self.localize_at(s).unwrap()
    }
}

#[test]
fn koszul_product_triangle() {
    // K(x) -> K(xy) -> K(y): the cone of the first map has the homology of K(y)
    let r = Arc::new(ProductRing::build(101, &["x", "y"], &[vec![3, 0], vec![0, 3]]).unwrap());
    let a = r.factor(PrimeSite(0)).clone();
    let mut g = Gen::new(5);
    for _ in 0..10 {
        let x = g.element(&r, ElementKind::Mixed);
        let y = g.element(&r, ElementKind::Mixed);
        let xy = r.mul(&x, &y);
        let kx = koszul_complex(&KoszulSpec::new(&r, vec![x.clone()]).unwrap());
        let kxy = koszul_complex(&KoszulSpec::new(&r, vec![xy]).unwrap());
        let ky = koszul_complex(&KoszulSpec::new(&r, vec![y.clone()]).unwrap());
        let maps = BTreeMap::from([
            (-1, LocalMatrix::identity(&a, 1)),
            (0, LocalMatrix::from_entries(1, 1, vec![y.part(PrimeSite(0)).to_vec()])),
        ]);
        let u = ChainMap::new(kx, kxy, vec![LocalChainMap::new(maps)]).unwrap();
        assert_eq!(homology_profile(&u.cone()), homology_profile(&ky));
    }
}

#[test]
fn small_cones_and_koszul_homology() {
    let r = Arc::new(ProductRing::build(101, &["x"], &[vec![2]]).unwrap());
    let unit = FreeComplex::unit(&r);
    assert!(homology_profile(&ChainMap::identity(&unit).cone()).is_zero());
    let k = ring_koszul(&r, PrimeSite(0)).unwrap();
    let kk = k.tensor(&k).unwrap();
    assert_eq!(
        homology_profile(&kk).sites[0],
        BTreeMap::from([(-2, 1), (-1, 2), (0, 1)])
    );
    let dk = k.dual();
    assert_eq!(dk.window(), Some((0, 1)));
    assert_eq!(proj_dim(&unit.shift(1), PrimeSite(0)).unwrap(), ExtInt::Fin(1));
    let zero_map = ChainMap::zero(&unit, &unit).unwrap();
    assert_eq!(
        homology_profile(&zero_map.cone()),
        homology_profile(&unit.direct_sum(&unit.shift(1)).unwrap())
    );
}

#[test]
fn grade_bounds_on_small_posets() {
    for n in 1..=4 {
        for poset in enumerate_posets(n).unwrap() {
            let labelled = SpecPoset::new(
                poset.labels().to_vec(),
                &poset.saturated_pairs(),
                (0..n as u32).map(|i| (i * 7 + 3) % 3).collect(),
                vec![false; n],
            )
            .unwrap();
            for p in 0..n {
                assert!(grade_of(&labelled, p) <= labelled.depth(p));
            }
            for f in enumerate_grade_consistent(&labelled).unwrap() {
                assert!(f.is_order_preserving(&labelled) && f.is_natural());
            }
        }
    }
}
