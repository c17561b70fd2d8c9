//! Seeded generators of rings, elements and complexes for property sweeps.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{LocalAlgebra, PrimeSite, ProductRing, RingElement};
use crate::complex::{ChainMap, FreeComplex, LocalComplex};
use crate::ext::ExtInt;
use crate::field::PrimeField;
use crate::koszul::{koszul_complex, ring_koszul, KoszulSpec};
use crate::spectrum::OrderMap;

const MAX_TOTAL_RANK: usize = 16;

/// `(variables, relations)` of the local algebras used by the sweeps.
pub fn local_presets() -> Vec<(Vec<&'static str>, Vec<Vec<u32>>)> {
    vec![
        (vec![], vec![]),
        (vec!["x"], vec![vec![2]]),
        (vec!["x"], vec![vec![3]]),
        (vec!["x", "y"], vec![vec![2, 0], vec![0, 2]]),
    ]
}

pub fn local_algebra(field: PrimeField, preset: usize) -> LocalAlgebra {
    let (vars, rels) = local_presets().swap_remove(preset);
    if vars.is_empty() {
        return LocalAlgebra::prime_field(field);
    }
    LocalAlgebra::new(field, vars.iter().map(|v| v.to_string()).collect(), rels).expect("preset is valid")
}

/// A product of the given presets.
pub fn product_ring(field: PrimeField, presets: &[usize]) -> Arc<ProductRing> {
    Arc::new(ProductRing::new(presets.iter().map(|&p| local_algebra(field, p)).collect()).expect("nonempty"))
}

/// The rings every sweep runs over: each local preset on its own, plus a
/// two-factor and a three-factor product.
pub fn scoped_rings(field: PrimeField) -> Vec<Arc<ProductRing>> {
    let mut out: Vec<Arc<ProductRing>> = (0..local_presets().len()).map(|p| product_ring(field, &[p])).collect();
    out.push(product_ring(field, &[1, 2]));
    out.push(product_ring(field, &[2, 0, 3]));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    /// In the maximal ideal at every site.
    Nonunit,
    /// A unit at every site.
    Unit,
    /// Independently a unit or not at each site.
    Mixed,
}

/// Deterministic source of random objects.
pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    fn local_element(&mut self, alg: &LocalAlgebra, unit: bool) -> Vec<u32> {
        let p = alg.field().p();
        let mut v: Vec<u32> = (0..alg.dim()).map(|_| self.rng.gen_range(0..p)).collect();
        v[0] = if unit { self.rng.gen_range(1..p) } else { 0 };
        v
    }

    pub fn element(&mut self, ring: &ProductRing, kind: ElementKind) -> RingElement {
        let parts = ring
            .factors()
            .iter()
            .map(|a| {
                let unit = match kind {
                    ElementKind::Nonunit => false,
                    ElementKind::Unit => true,
                    ElementKind::Mixed => self.coin(),
                };
                self.local_element(a, unit)
            })
            .collect();
        RingElement::from_parts(parts)
    }

    pub fn site(&mut self, ring: &ProductRing) -> PrimeSite {
        PrimeSite(self.rng.gen_range(0..ring.num_sites()))
    }

    fn leaf(&mut self, ring: &Arc<ProductRing>) -> FreeComplex {
        let shift = self.range(-2, 2);
        match self.rng.gen_range(0..3) {
            0 => FreeComplex::unit(ring).shift(shift),
            1 => {
                let s = self.site(ring);
                ring_koszul(ring, s).expect("valid site").shift(shift)
            }
            _ => {
                let n = self.rng.gen_range(1..=2);
                let kind = if self.rng.gen_bool(0.8) { ElementKind::Nonunit } else { ElementKind::Mixed };
                let xs = (0..n).map(|_| self.element(ring, kind)).collect();
                koszul_complex(&KoszulSpec::new(ring, xs).expect("nonempty")).shift(shift)
            }
        }
    }

    /// A random perfect complex built from units, Koszul complexes, cones,
    /// sums and tensors, then scrambled by basis changes and contractible
    /// summands so that it is usually not minimal.
    pub fn complex(&mut self, ring: &Arc<ProductRing>) -> FreeComplex {
        let x = self.structured(ring, 2);
        self.scramble(&x)
    }

    /// Like [`Gen::complex`] but minimized and nonzero.
    pub fn nonzero_minimal(&mut self, ring: &Arc<ProductRing>) -> FreeComplex {
        loop {
            let x = self.complex(ring).minimize();
            if !x.is_zero() {
                return x;
            }
        }
    }

    fn structured(&mut self, ring: &Arc<ProductRing>, budget: u32) -> FreeComplex {
        if budget == 0 {
            return self.leaf(ring);
        }
        let x = match self.rng.gen_range(0..4) {
            0 => self.leaf(ring),
            1 => {
                let y = self.structured(ring, budget - 1);
                let a = self.element(ring, ElementKind::Mixed);
                ChainMap::scalar(&y, &a).cone()
            }
            2 => {
                let a = self.structured(ring, budget - 1);
                let b = self.structured(ring, budget - 1);
                a.direct_sum(&b).expect("same ring")
            }
            _ => {
                let a = self.leaf(ring);
                let b = self.structured(ring, budget - 1);
                a.tensor(&b).expect("same ring").minimize()
            }
        };
        if total_rank(&x) > MAX_TOTAL_RANK {
            let m = x.minimize();
            if total_rank(&m) > MAX_TOTAL_RANK {
                return self.leaf(ring);
            }
            return m;
        }
        x
    }

    /// Random elementary basis changes plus, sometimes, a contractible
    /// summand `R --1--> R`.
    pub fn scramble(&mut self, x: &FreeComplex) -> FreeComplex {
        let ring = x.ring().clone();
        let mut parts: Vec<LocalComplex> = x.parts().to_vec();
        if self.rng.gen_bool(0.5) {
            let at = self.range(-2, 1);
            let unit = FreeComplex::unit(&ring).shift(-at);
            let cone = ChainMap::identity(&unit).cone();
            parts = parts.iter().zip(cone.parts()).map(|(a, b)| a.direct_sum(b)).collect();
        }
        for c in parts.iter_mut() {
            for _ in 0..4 {
                *c = self.basis_change(c);
            }
        }
        FreeComplex::from_parts(ring, parts).expect("same ring")
    }

    /// Replaces basis vector `e_k` of `X^i` by `e_k + a e_j`.
    fn basis_change(&mut self, c: &LocalComplex) -> LocalComplex {
        let Some((lo, hi)) = c.window() else {
            return c.clone();
        };
        let deg = self.range(lo, hi);
        let n = c.rank(deg);
        if n < 2 {
            return c.clone();
        }
        let alg = c.algebra().clone();
        let j = self.rng.gen_range(0..n);
        let mut k = self.rng.gen_range(0..n - 1);
        if k >= j {
            k += 1;
        }
        let unit = self.coin();
        let a = self.local_element(&alg, unit);
        let neg_a = alg.neg(&a);
        let mut diffs: Vec<_> = (lo..hi).map(|i| c.diff(i)).collect();
        let idx = |i: i64| (i - lo) as usize;
        // outgoing: column k += a * column j
        if deg < hi {
            let d = &mut diffs[idx(deg)];
            for r in 0..d.rows() {
                let v = alg.add(d.get(r, k), &alg.mul(&a, d.get(r, j)));
                d.set(r, k, v);
            }
        }
        // incoming: row j -= a * row k
        if deg > lo {
            let d = &mut diffs[idx(deg - 1)];
            for col in 0..d.cols() {
                let v = alg.add(d.get(j, col), &alg.mul(&neg_a, d.get(k, col)));
                d.set(j, col, v);
            }
        }
        let ranks = (lo..=hi).map(|i| c.rank(i)).collect();
        LocalComplex::new(alg, lo, ranks, diffs).expect("basis change preserves d∘d = 0")
    }

    /// A map to `{0, ..., cap}` that is order-preserving on a discrete
    /// poset (any map is).
    pub fn natural_map(&mut self, n: usize, cap: i64) -> OrderMap {
        OrderMap::new((0..n).map(|_| ExtInt::Fin(self.range(0, cap))).collect())
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.rng);
    }
}

pub fn total_rank(x: &FreeComplex) -> usize {
    x.parts().iter().map(LocalComplex::total_rank).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology_profile;

    #[test]
    fn same_seed_same_complex() {
        let f = PrimeField::new(101).unwrap();
        let r = product_ring(f, &[1, 2]);
        let a: Vec<_> = {
            let mut g = Gen::new(7);
            (0..5).map(|_| g.complex(&r)).collect()
        };
        let mut g = Gen::new(7);
        let b: Vec<_> = (0..5).map(|_| g.complex(&r)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn scramble_keeps_homology() {
        let f = PrimeField::new(101).unwrap();
        let mut g = Gen::new(3);
        for r in scoped_rings(f) {
            for _ in 0..5 {
                let x = g.structured(&r, 2);
                let y = g.scramble(&x);
                y.check_d_squared().unwrap();
                assert_eq!(homology_profile(&x), homology_profile(&y));
                assert_eq!(x.minimal_ranks(), y.minimal_ranks());
            }
        }
    }
}
