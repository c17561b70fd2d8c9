//! Koszul complexes and the twist `X(x) = K(x) ⊗ X[-1]`.

use std::sync::Arc;

use crate::algebra::{LocalAlgebra, PrimeSite, ProductRing, RingElement};
use crate::complex::{FreeComplex, LocalComplex};
use crate::error::{Error, Result};
use crate::matrix::LocalMatrix;

/// A nonempty sequence of elements of one ring.
#[derive(Debug, Clone)]
pub struct KoszulSpec {
    ring: Arc<ProductRing>,
    elements: Vec<RingElement>,
}

impl KoszulSpec {
    pub fn new(ring: &Arc<ProductRing>, elements: Vec<RingElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvariantViolation("Koszul sequence must be nonempty".into()));
        }
        for e in &elements {
            if e.parts().len() != ring.num_sites()
                || e.parts().iter().zip(ring.factors()).any(|(p, a)| p.len() != a.dim())
            {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Self {
            ring: ring.clone(),
            elements,
        })
    }

    pub fn elements(&self) -> &[RingElement] {
        &self.elements
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Exterior-algebra Koszul complex of local elements in degrees `[-n, 0]`;
/// `d(e_S) = Σ_k (-1)^k x_{S_k} e_{S \ S_k}`.
pub fn local_koszul(alg: &Arc<LocalAlgebra>, xs: &[Vec<u32>]) -> LocalComplex {
    let n = xs.len();
    let layers: Vec<Vec<Vec<usize>>> = (0..=n).map(|j| subsets(n, j)).collect();
    // degree -j holds Λ^j
    let lo = -(n as i64);
    let ranks: Vec<usize> = (0..=n).rev().map(|j| layers[j].len()).collect();
    let mut diffs = Vec::with_capacity(n);
    for j in (1..=n).rev() {
        let src = &layers[j];
        let dst = &layers[j - 1];
        let mut m = LocalMatrix::zeros(alg, dst.len(), src.len());
        for (c, s) in src.iter().enumerate() {
            for (k, &idx) in s.iter().enumerate() {
                let mut t = s.clone();
                t.remove(k);
                let r = dst.iter().position(|d| *d == t).expect("face present");
                let v = if k % 2 == 0 { xs[idx].clone() } else { alg.neg(&xs[idx]) };
                m.set(r, c, v);
            }
        }
        diffs.push(m);
    }
    LocalComplex::from_parts_unchecked(alg.clone(), lo, ranks, diffs)
}

fn koszul_on(ring: &Arc<ProductRing>, xs: &[RingElement]) -> FreeComplex {
    let parts = ring
        .factors()
        .iter()
        .enumerate()
        .map(|(s, a)| {
            let local: Vec<Vec<u32>> = xs.iter().map(|x| x.part(PrimeSite(s)).to_vec()).collect();
            local_koszul(a, &local)
        })
        .collect();
    FreeComplex::from_parts(ring.clone(), parts).expect("parts match ring")
}

/// `K(x_1, ..., x_n)` in degrees `[-n, 0]` with ranks `C(n, j)`.
pub fn koszul_complex(spec: &KoszulSpec) -> FreeComplex {
    koszul_on(&spec.ring, &spec.elements)
}

/// The Koszul complex of the local ring at `s`: Koszul on the minimal
/// generators of its maximal ideal, padded by units elsewhere so it vanishes
/// at every other site. At a field factor it is the ring supported at `s`.
pub fn ring_koszul(ring: &Arc<ProductRing>, s: PrimeSite) -> Result<FreeComplex> {
    let gens = ring.minimal_generators(s)?;
    if !gens.is_empty() {
        return Ok(koszul_on(ring, &gens));
    }
    let parts = ring
        .factors()
        .iter()
        .enumerate()
        .map(|(t, a)| {
            if t == s.0 {
                LocalComplex::free_module(a.clone(), 0, 1)
            } else {
                LocalComplex::zero(a.clone())
            }
        })
        .collect();
    FreeComplex::from_parts(ring.clone(), parts)
}

/// Iterated twist `X(x_1, ..., x_i) = (X(x_1, ..., x_{i-1}))(x_i)`, each step
/// `K(x) ⊗ X[-1]` followed by minimization.
pub fn twist(x: &FreeComplex, xs: &[RingElement]) -> Result<FreeComplex> {
    let mut cur = x.clone();
    for e in xs {
        let k = koszul_on(x.ring(), std::slice::from_ref(e));
        cur = k.tensor(&cur.shift(-1))?.minimize();
    }
    Ok(cur)
}
