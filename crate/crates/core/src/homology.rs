//! Cohomology of complexes, computed by expanding ring matrices into
//! `F_p`-linear maps through the multiplication table.

use std::collections::BTreeMap;

use crate::complex::{ChainMap, FreeComplex, LocalChainMap, LocalComplex, Triangle};
use crate::ext::ExtInt;
use crate::linalg::FpMatrix;

/// `dim_k H^i` for every degree with nonzero cohomology.
pub fn local_homology_dims(c: &LocalComplex) -> BTreeMap<i64, usize> {
    let Some((lo, hi)) = c.window() else {
        return BTreeMap::new();
    };
    let alg = c.algebra();
    let dim = alg.dim();
    // rank of d^i for i in lo-1..=hi
    let ranks: BTreeMap<i64, usize> = (lo..hi).map(|i| (i, c.diff(i).expand(alg).rank())).collect();
    (lo..=hi)
        .filter_map(|i| {
            let total = c.rank(i) * dim;
            let out = ranks.get(&i).copied().unwrap_or(0);
            let inc = ranks.get(&(i - 1)).copied().unwrap_or(0);
            let h = total - out - inc;
            (h > 0).then_some((i, h))
        })
        .collect()
}

/// Per-site cohomology dimensions of an object.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyProfile {
    pub sites: Vec<BTreeMap<i64, usize>>,
}

impl HomologyProfile {
    pub fn from_sites(sites: Vec<BTreeMap<i64, usize>>) -> Self {
        Self { sites }
    }

    pub fn dim(&self, site: usize, deg: i64) -> usize {
        self.sites[site].get(&deg).copied().unwrap_or(0)
    }

    /// `sup X_s`; `-inf` when the site is acyclic.
    pub fn sup_at(&self, site: usize) -> ExtInt {
        self.sites[site].keys().next_back().map_or(ExtInt::NegInf, |&d| ExtInt::Fin(d))
    }

    /// `inf X_s`; `+inf` when the site is acyclic.
    pub fn inf_at(&self, site: usize) -> ExtInt {
        self.sites[site].keys().next().map_or(ExtInt::PosInf, |&d| ExtInt::Fin(d))
    }

    pub fn sup(&self) -> ExtInt {
        ExtInt::sup((0..self.sites.len()).map(|s| self.sup_at(s)))
    }

    pub fn inf(&self) -> ExtInt {
        ExtInt::inf((0..self.sites.len()).map(|s| self.inf_at(s)))
    }

    pub fn is_zero(&self) -> bool {
        self.sites.iter().all(BTreeMap::is_empty)
    }

    /// Alternating sum of dimensions at a site.
    pub fn euler_at(&self, site: usize) -> i64 {
        self.sites[site]
            .iter()
            .map(|(&i, &h)| if i.rem_euclid(2) == 0 { h as i64 } else { -(h as i64) })
            .sum()
    }
}

pub fn homology_profile(x: &FreeComplex) -> HomologyProfile {
    HomologyProfile::from_sites(x.parts().iter().map(local_homology_dims).collect())
}

/// Dimension of the image of `H^deg(src) -> H^deg(dst)` under `f`.
pub fn homology_image_rank(f: &LocalChainMap, src: &LocalComplex, dst: &LocalComplex, deg: i64) -> usize {
    let alg = src.algebra();
    let field = alg.field();
    let dim = alg.dim();
    if src.rank(deg) == 0 || dst.rank(deg) == 0 {
        return 0;
    }
    let cycles = src.diff(deg).expand(alg).kernel_basis();
    if cycles.is_empty() {
        return 0;
    }
    let fm = f.at(deg, src, dst).expand(alg);
    let images: Vec<Vec<u32>> = cycles.iter().map(|z| fm.mul_vec(z)).collect();
    let img = FpMatrix::from_columns(field, dst.rank(deg) * dim, &images);
    let bd = dst.diff(deg - 1).expand(alg);
    img.hstack(&bd).rank() - bd.rank()
}

fn map_rank(m: &ChainMap, site: usize, deg: i64) -> usize {
    homology_image_rank(&m.parts()[site], &m.source().parts()[site], &m.target().parts()[site], deg)
}

/// Verifies exactness of the long exact cohomology sequence of a triangle at
/// every site and degree. Returns a description of the first failure.
pub fn check_les(t: &Triangle) -> Result<(), String> {
    let n = t.a.ring().num_sites();
    for s in 0..n {
        let ha = local_homology_dims(&t.a.parts()[s]);
        let hb = local_homology_dims(&t.b.parts()[s]);
        let hc = local_homology_dims(&t.c.parts()[s]);
        let windows = [t.a.parts()[s].window(), t.b.parts()[s].window(), t.c.parts()[s].window()];
        let Some(lo) = windows.iter().flatten().map(|w| w.0).min() else {
            continue;
        };
        let hi = windows.iter().flatten().map(|w| w.1).max().unwrap_or(lo);
        for i in (lo - 2)..=(hi + 1) {
            let u = map_rank(&t.u, s, i);
            let u_next = map_rank(&t.u, s, i + 1);
            let v = map_rank(&t.v, s, i);
            let w = map_rank(&t.w, s, i);
            let dim = |h: &BTreeMap<i64, usize>, d: i64| h.get(&d).copied().unwrap_or(0);
            if u + v != dim(&hb, i) {
                return Err(format!("not exact at H^{i}(B), site {s}: {u} + {v} != {}", dim(&hb, i)));
            }
            if v + w != dim(&hc, i) {
                return Err(format!("not exact at H^{i}(C), site {s}: {v} + {w} != {}", dim(&hc, i)));
            }
            if w + u_next != dim(&ha, i + 1) {
                return Err(format!(
                    "not exact at H^{}(A), site {s}: {w} + {u_next} != {}",
                    i + 1,
                    dim(&ha, i + 1)
                ));
            }
        }
    }
    Ok(())
}
