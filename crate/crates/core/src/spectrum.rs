//! Finite posets standing in for `Spec R`, order-preserving maps to
//! `N ∪ {∞}`, specialization-closed subsets and sp-filtrations.
//!
//! Points are indexed `0..n`; `p ≤ q` means `p ⊆ q`, so specialization-closed
//! subsets are the up-sets.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::ProductRing;
use crate::error::{Error, Result};
use crate::ext::ExtInt;

const MAX_ENUM_POINTS: usize = 7;
const MAX_ENUM_CAP: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecPoset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    // longest chain length from p up to q, when p ≤ q
    height: Vec<Vec<Option<usize>>>,
    depth: Vec<u32>,
    singular: Vec<bool>,
}

impl SpecPoset {
    /// Builds the order generated by `covers` (pairs `p < q`).
    pub fn new(labels: Vec<String>, covers: &[(usize, usize)], depth: Vec<u32>, singular: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        if depth.len() != n || singular.len() != n {
            return Err(Error::InvariantViolation("label lists have the wrong length".into()));
        }
        let mut leq = vec![vec![false; n]; n];
        for (p, row) in leq.iter_mut().enumerate() {
            row[p] = true;
        }
        for &(p, q) in covers {
            if p >= n || q >= n {
                return Err(Error::InvariantViolation(format!("cover ({p}, {q}) names an unknown element")));
            }
            if p == q {
                return Err(Error::InvariantViolation("order not antisymmetric".into()));
            }
            leq[p][q] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    let row = leq[k].clone();
                    for (cell, &via) in leq[i].iter_mut().zip(&row) {
                        *cell |= via;
                    }
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                if p != q && leq[p][q] && leq[q][p] {
                    return Err(Error::InvariantViolation("order not antisymmetric".into()));
                }
                if singular[p] && leq[p][q] && !singular[q] {
                    return Err(Error::InvariantViolation("singular set not upward-closed".into()));
                }
            }
        }
        let height = longest_chains(n, covers, &leq);
        Ok(Self { labels, leq, height, depth, singular })
    }

    /// The discrete poset of sites of a product ring: depth zero everywhere,
    /// singular exactly at the non-field factors.
    pub fn from_ring(ring: &ProductRing) -> Self {
        let n = ring.num_sites();
        let sing = ring.singular_locus();
        let singular = (0..n).map(|s| sing.iter().any(|t| t.0 == s)).collect();
        Self::new((0..n).map(|s| format!("s{s}")).collect(), &[], vec![0; n], singular).expect("discrete poset")
    }

    /// Unlabelled poset with depth zero and nothing singular.
    pub fn plain(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        Self::new((0..n).map(|i| format!("p{i}")).collect(), covers, vec![0; n], vec![false; n])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.leq[p][q]
    }

    /// Length of the longest chain from `p` to `q`; `None` unless `p ≤ q`.
    pub fn height(&self, p: usize, q: usize) -> Option<usize> {
        self.height[p][q]
    }

    /// Pairs `p ⊊ q` with nothing strictly between.
    pub fn saturated_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if p != q && self.leq[p][q] && !(0..n).any(|r| r != p && r != q && self.leq[p][r] && self.leq[r][q]) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    pub fn depth(&self, p: usize) -> u32 {
        self.depth[p]
    }

    pub fn is_singular(&self, p: usize) -> bool {
        self.singular[p]
    }

    pub fn singular_set(&self) -> SpClosedSet {
        SpClosedSet((0..self.len()).filter(|&p| self.singular[p]).collect())
    }

    pub fn all(&self) -> SpClosedSet {
        SpClosedSet((0..self.len()).collect())
    }

    pub fn up_set(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&q| self.leq[p][q])
    }

    /// Some linear extension of the order.
    fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&p| (0..self.len()).filter(|&q| self.leq[q][p]).count());
        order
    }
}

fn longest_chains(n: usize, covers: &[(usize, usize)], leq: &[Vec<bool>]) -> Vec<Vec<Option<usize>>> {
    let mut out = vec![vec![None; n]; n];
    // topological order: by number of elements below
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&p| (0..n).filter(|&q| leq[q][p]).count());
    for p in 0..n {
        let mut best: Vec<Option<usize>> = vec![None; n];
        best[p] = Some(0);
        for &u in &order {
            let Some(h) = best[u] else { continue };
            for &(a, b) in covers {
                if a == u {
                    best[b] = Some(best[b].map_or(h + 1, |v: usize| v.max(h + 1)));
                }
            }
        }
        out[p] = best;
    }
    out
}

/// `grade p = min{depth q | p ≤ q}`.
pub fn grade_of(poset: &SpecPoset, p: usize) -> u32 {
    poset.up_set(p).map(|q| poset.depth(q)).min().expect("p ≤ p")
}

/// A map from the points of a poset to `Z ∪ {±∞}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderMap {
    values: Vec<ExtInt>,
}

impl OrderMap {
    pub fn new(values: Vec<ExtInt>) -> Self {
        Self { values }
    }

    pub fn constant(n: usize, v: ExtInt) -> Self {
        Self { values: vec![v; n] }
    }

    pub fn get(&self, p: usize) -> ExtInt {
        self.values[p]
    }

    pub fn values(&self) -> &[ExtInt] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_order_preserving(&self, poset: &SpecPoset) -> bool {
        self.values.len() == poset.len()
            && (0..poset.len()).all(|p| poset.up_set(p).all(|q| self.values[p] <= self.values[q]))
    }

    /// Values in `N ∪ {∞}`.
    pub fn is_natural(&self) -> bool {
        self.values.iter().all(|&v| v >= ExtInt::ZERO)
    }
}

impl fmt::Display for OrderMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(ExtInt::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Order-preserving, finite, and bounded by depth; the bound by grade is
/// computed as well and must agree.
pub fn check_grade_consistent(poset: &SpecPoset, f: &OrderMap) -> Result<bool> {
    if !f.is_order_preserving(poset) || !f.values().iter().all(|v| v.is_finite() && *v >= ExtInt::ZERO) {
        return Ok(false);
    }
    let by_depth = (0..poset.len()).all(|p| f.get(p) <= ExtInt::Fin(poset.depth(p) as i64));
    let by_grade = (0..poset.len()).all(|p| f.get(p) <= ExtInt::Fin(grade_of(poset, p) as i64));
    if by_depth != by_grade {
        return Err(Error::InvariantViolation("grade and depth bounds disagree".into()));
    }
    Ok(by_depth)
}

/// `f(p) ≤ f(q) ≤ f(p) + height(q/p)` for all `p ≤ q`.
pub fn check_t_function(poset: &SpecPoset, f: &OrderMap) -> bool {
    (0..poset.len()).all(|p| {
        poset.up_set(p).all(|q| {
            let h = poset.height(p, q).expect("p ≤ q") as i64;
            f.get(p) <= f.get(q) && f.get(q) <= f.get(p).offset(h)
        })
    })
}

/// An up-set of a poset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SpClosedSet(BTreeSet<usize>);

impl SpClosedSet {
    pub fn new(poset: &SpecPoset, points: BTreeSet<usize>) -> Result<Self> {
        let closed = sp_closure(poset, &points);
        if closed.0 != points {
            return Err(Error::InvariantViolation("subset is not specialization-closed".into()));
        }
        Ok(closed)
    }

    pub fn empty() -> Self {
        Self(BTreeSet::new())
    }

    pub fn points(&self) -> &BTreeSet<usize> {
        &self.0
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.contains(&p)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn format(&self, poset: &SpecPoset) -> String {
        let names: Vec<&str> = self.0.iter().map(|&p| poset.label(p)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// Upward closure.
pub fn sp_closure(poset: &SpecPoset, points: &BTreeSet<usize>) -> SpClosedSet {
    SpClosedSet(points.iter().flat_map(|&p| poset.up_set(p)).collect())
}

/// An order-reversing `Z`-indexed family of up-sets, stored as an explicit
/// window plus constant tails. The window is trimmed so that equal
/// filtrations have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpFiltration {
    lo: i64,
    window: Vec<SpClosedSet>,
    left: SpClosedSet,
    right: SpClosedSet,
}

impl SpFiltration {
    pub fn new(lo: i64, window: Vec<SpClosedSet>, left: SpClosedSet, right: SpClosedSet) -> Result<Self> {
        let chain: Vec<&SpClosedSet> = std::iter::once(&left).chain(window.iter()).chain(std::iter::once(&right)).collect();
        if chain.windows(2).any(|w| !w[1].is_subset(w[0])) {
            return Err(Error::InvariantViolation("filtration is not order-reversing".into()));
        }
        let mut f = Self { lo, window, left, right };
        f.normalize();
        Ok(f)
    }

    fn normalize(&mut self) {
        while self.window.last() == Some(&self.right) {
            self.window.pop();
        }
        let skip = self.window.iter().take_while(|s| **s == self.left).count();
        self.window.drain(..skip);
        self.lo = if self.window.is_empty() && self.left == self.right { 0 } else { self.lo + skip as i64 };
    }

    pub fn at(&self, i: i64) -> &SpClosedSet {
        if i < self.lo {
            &self.left
        } else {
            self.window.get((i - self.lo) as usize).unwrap_or(&self.right)
        }
    }

    /// `[lo, hi]` of the explicit window, if nonempty.
    pub fn window(&self) -> Option<(i64, i64)> {
        (!self.window.is_empty()).then(|| (self.lo, self.lo + self.window.len() as i64 - 1))
    }

    /// First index governed by the right tail.
    pub fn right_start(&self) -> i64 {
        self.lo + self.window.len() as i64
    }

    pub fn left_tail(&self) -> &SpClosedSet {
        &self.left
    }

    pub fn right_tail(&self) -> &SpClosedSet {
        &self.right
    }

    /// Indices covering the window and one step of each tail.
    fn span(&self) -> std::ops::RangeInclusive<i64> {
        (self.lo.min(0) - 1)..=(self.right_start().max(0) + 1)
    }

    pub fn format(&self, poset: &SpecPoset) -> String {
        let mut parts = vec![format!("i<{}: {}", self.lo, self.left.format(poset))];
        for (j, s) in self.window.iter().enumerate() {
            parts.push(format!("{}: {}", self.lo + j as i64, s.format(poset)));
        }
        parts.push(format!("i>={}: {}", self.right_start(), self.right.format(poset)));
        parts.join("; ")
    }
}

/// If `q ∈ φ(i)` then `p ∈ φ(i - 1)` for every saturated `p ⊊ q`.
pub fn check_weak_cousin(poset: &SpecPoset, phi: &SpFiltration) -> bool {
    let pairs = poset.saturated_pairs();
    phi.span().all(|i| {
        pairs
            .iter()
            .all(|&(p, q)| !phi.at(i).contains(q) || phi.at(i - 1).contains(p))
    })
}

/// `F(φ)(p) = sup{j | p ∈ φ(j)} + 1`; needs `φ(-1) = Spec`.
pub fn filt_to_map(poset: &SpecPoset, phi: &SpFiltration) -> Result<OrderMap> {
    if phi.at(-1).points().len() != poset.len() {
        return Err(Error::TailViolation);
    }
    let values = (0..poset.len())
        .map(|p| {
            if phi.right_tail().contains(p) {
                return ExtInt::PosInf;
            }
            let top = phi.span().filter(|&j| phi.at(j).contains(p)).max().expect("p ∈ φ(-1)");
            ExtInt::Fin(top + 1)
        })
        .collect();
    Ok(OrderMap::new(values))
}

/// `P(f)(i) = {p | f(p) > i}`.
pub fn map_to_filt(poset: &SpecPoset, f: &OrderMap) -> Result<SpFiltration> {
    if !f.is_order_preserving(poset) {
        return Err(Error::InvariantViolation("map is not order-preserving".into()));
    }
    let finite: Vec<i64> = f.values().iter().filter_map(|v| v.finite()).collect();
    let lo = finite.iter().copied().min().unwrap_or(0).min(0);
    let hi = finite.iter().copied().max().unwrap_or(0);
    let level = |i: ExtInt| SpClosedSet((0..poset.len()).filter(|&p| f.get(p) > i).collect());
    let window = (lo..=hi).map(|i| level(ExtInt::Fin(i))).collect();
    SpFiltration::new(lo, window, level(ExtInt::Fin(lo - 1)), level(ExtInt::Fin(hi + 1)))
}

fn check_enum_size(poset: &SpecPoset, cap: u32) -> Result<()> {
    if poset.len() > MAX_ENUM_POINTS {
        return Err(Error::TooLarge(format!("{} points (limit {MAX_ENUM_POINTS})", poset.len())));
    }
    if cap > MAX_ENUM_CAP {
        return Err(Error::TooLarge(format!("value cap {cap} (limit {MAX_ENUM_CAP})")));
    }
    Ok(())
}

/// All order-preserving maps with values in `{0, ..., cap, ∞}`.
pub fn enumerate_order_maps(poset: &SpecPoset, cap: u32) -> Result<Vec<OrderMap>> {
    check_enum_size(poset, cap)?;
    let mut choices: Vec<ExtInt> = (0..=cap as i64).map(ExtInt::Fin).collect();
    choices.push(ExtInt::PosInf);
    Ok(enumerate_bounded(poset, &vec![choices; poset.len()]))
}

/// All grade-consistent functions.
pub fn enumerate_grade_consistent(poset: &SpecPoset) -> Result<Vec<OrderMap>> {
    check_enum_size(poset, 0)?;
    let choices: Vec<Vec<ExtInt>> = (0..poset.len())
        .map(|p| (0..=grade_of(poset, p) as i64).map(ExtInt::Fin).collect())
        .collect();
    Ok(enumerate_bounded(poset, &choices))
}

fn enumerate_bounded(poset: &SpecPoset, choices: &[Vec<ExtInt>]) -> Vec<OrderMap> {
    fn rec(
        poset: &SpecPoset,
        order: &[usize],
        choices: &[Vec<ExtInt>],
        k: usize,
        cur: &mut Vec<ExtInt>,
        out: &mut Vec<OrderMap>,
    ) {
        if k == order.len() {
            out.push(OrderMap::new(cur.clone()));
            return;
        }
        let p = order[k];
        for &v in &choices[p] {
            // every point below p has already been assigned
            if order[..k].iter().all(|&q| !poset.leq(q, p) || cur[q] <= v) {
                cur[p] = v;
                rec(poset, order, choices, k + 1, cur, out);
            }
        }
    }
    let order = poset.linear_extension();
    let mut out = Vec::new();
    rec(poset, &order, choices, 0, &mut vec![ExtInt::NegInf; poset.len()], &mut out);
    out.sort();
    out
}

/// All specialization-closed subsets, ordered by their point lists.
pub fn enumerate_sp_closed(poset: &SpecPoset) -> Result<Vec<SpClosedSet>> {
    check_enum_size(poset, 0)?;
    let n = poset.len();
    let mut out: Vec<SpClosedSet> = (0u32..1 << n)
        .map(|mask| (0..n).filter(|&p| mask & (1 << p) != 0).collect::<BTreeSet<usize>>())
        .filter(|s| s.iter().all(|&p| poset.up_set(p).all(|q| s.contains(&q))))
        .map(SpClosedSet)
        .collect();
    out.sort();
    Ok(out)
}

/// All sp-filtrations with `φ(-1) = Spec` that are constant from index
/// `cap` on; these are exactly `P(f)` for `f` with values in
/// `{0, ..., cap, ∞}`.
pub fn enumerate_filtrations(poset: &SpecPoset, cap: u32) -> Result<Vec<SpFiltration>> {
    check_enum_size(poset, cap)?;
    let ups = enumerate_sp_closed(poset)?;
    let mut out = Vec::new();
    let mut chain = vec![poset.all()];
    fn rec(ups: &[SpClosedSet], len: usize, chain: &mut Vec<SpClosedSet>, out: &mut Vec<SpFiltration>) {
        if chain.len() == len {
            let left = chain[0].clone();
            let right = chain[len - 1].clone();
            let window = chain[1..len - 1].to_vec();
            out.push(SpFiltration::new(0, window, left, right).expect("chain is decreasing"));
            return;
        }
        let last = chain.last().expect("nonempty").clone();
        for s in ups.iter().filter(|s| s.is_subset(&last)) {
            chain.push(s.clone());
            rec(ups, len, chain, out);
            chain.pop();
        }
    }
    // Spec (i ≤ -1), φ(0..cap-1), right tail φ(cap)
    rec(&ups, cap as usize + 2, &mut chain, &mut out);
    Ok(out)
}

/// All posets on `n` points up to isomorphism, each given with a natural
/// labelling (`p < q` only when `p < q` as integers).
pub fn enumerate_posets(n: usize) -> Result<Vec<SpecPoset>> {
    if n > 5 {
        return Err(Error::TooLarge(format!("poset enumeration on {n} points (limit 5)")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let rel: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &p)| p)
            .collect();
        let set: BTreeSet<(usize, usize)> = rel.iter().copied().collect();
        let transitive = rel
            .iter()
            .all(|&(a, b)| rel.iter().filter(|&&(c, _)| c == b).all(|&(_, d)| set.contains(&(a, d))));
        if !transitive {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|perm| {
                let mut r: Vec<(usize, usize)> = rel.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
                r.sort();
                r
            })
            .min()
            .expect("at least one permutation");
        if seen.insert(canonical) {
            out.push(SpecPoset::plain(n, &rel)?);
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2(depths: (u32, u32)) -> SpecPoset {
        SpecPoset::new(vec!["p".into(), "q".into()], &[(0, 1)], vec![depths.0, depths.1], vec![false, false]).unwrap()
    }

    fn fin(v: &[i64]) -> OrderMap {
        OrderMap::new(v.iter().map(|&x| ExtInt::Fin(x)).collect())
    }

    #[test]
    fn cyclic_order_rejected() {
        let e = SpecPoset::plain(2, &[(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(e, Error::InvariantViolation("order not antisymmetric".into()));
        let e = SpecPoset::new(vec!["a".into(), "b".into()], &[(0, 1)], vec![0, 0], vec![true, false]);
        assert!(e.is_err());
    }

    #[test]
    fn heights_use_longest_chain() {
        // a < b < c and a < c directly
        let p = SpecPoset::plain(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.height(0, 2), Some(2));
        assert_eq!(p.height(1, 1), Some(0));
        assert_eq!(p.height(2, 0), None);
        assert_eq!(p.saturated_pairs(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn grades() {
        let p = SpecPoset::from_ring(&ProductRing::build(101, &["x"], &[vec![2]]).unwrap());
        assert_eq!(grade_of(&p, 0), 0);
        let c = chain2((1, 2));
        assert_eq!((grade_of(&c, 0), grade_of(&c, 1)), (1, 2));
        assert_eq!(grade_of(&chain2((2, 1)), 0), 1);
    }

    #[test]
    fn grade_consistency() {
        let c = chain2((1, 2));
        assert!(check_grade_consistent(&c, &fin(&[0, 0])).unwrap());
        assert!(check_grade_consistent(&c, &fin(&[1, 2])).unwrap());
        assert!(!check_grade_consistent(&c, &fin(&[2, 2])).unwrap());
        let d = SpecPoset::plain(3, &[]).unwrap();
        assert!(!check_grade_consistent(&d, &fin(&[0, 1, 0])).unwrap());
    }

    #[test]
    fn t_functions() {
        let c = chain2((0, 0));
        assert!(check_t_function(&c, &fin(&[3, 3])));
        assert!(!check_t_function(&c, &fin(&[0, 2])));
        assert!(check_t_function(&c, &fin(&[0, 1])));
        assert!(!check_t_function(&c, &OrderMap::new(vec![ExtInt::Fin(0), ExtInt::PosInf])));
        assert!(check_t_function(&c, &OrderMap::constant(2, ExtInt::PosInf)));
    }

    #[test]
    fn weak_cousin_violation() {
        let c = chain2((0, 0));
        let q = SpClosedSet::new(&c, BTreeSet::from([1])).unwrap();
        let all = c.all();
        // φ(0) = {q}, φ(-1) = {q}: q ∈ φ(0) but p ∉ φ(-1)
        let phi = SpFiltration::new(-1, vec![q.clone(), q], all, SpClosedSet::empty()).unwrap();
        assert!(!check_weak_cousin(&c, &phi));
    }

    #[test]
    fn single_point_roundtrip() {
        let p = SpecPoset::plain(1, &[]).unwrap();
        let f = fin(&[3]);
        let phi = map_to_filt(&p, &f).unwrap();
        for i in -3..=2 {
            assert!(phi.at(i).contains(0));
        }
        assert!(!phi.at(3).contains(0));
        assert_eq!(filt_to_map(&p, &phi).unwrap(), f);
    }

    #[test]
    fn constant_filtrations() {
        let p = SpecPoset::plain(2, &[(0, 1)]).unwrap();
        let phi = SpFiltration::new(0, vec![], p.all(), SpClosedSet::empty()).unwrap();
        assert_eq!(filt_to_map(&p, &phi).unwrap(), fin(&[0, 0]));
        let xi = map_to_filt(&p, &OrderMap::constant(2, ExtInt::PosInf)).unwrap();
        for i in -5..5 {
            assert_eq!(xi.at(i), &p.all());
        }
        let bad = SpFiltration::new(0, vec![], SpClosedSet::empty(), SpClosedSet::empty()).unwrap();
        assert_eq!(filt_to_map(&p, &bad), Err(Error::TailViolation));
    }

    #[test]
    fn enumeration_counts() {
        let c = SpecPoset::plain(2, &[(0, 1)]).unwrap();
        assert_eq!(enumerate_order_maps(&c, 1).unwrap().len(), 6);
        let d = SpecPoset::plain(3, &[]).unwrap();
        assert_eq!(enumerate_sp_closed(&d).unwrap().len(), 8);
        assert_eq!(sp_closure(&d, &BTreeSet::new()), SpClosedSet::empty());
        assert_eq!(enumerate_filtrations(&c, 1).unwrap().len(), 6);
        let big = SpecPoset::plain(8, &[]).unwrap();
        assert!(matches!(enumerate_order_maps(&big, 1), Err(Error::TooLarge(_))));
        assert!(matches!(enumerate_order_maps(&c, 5), Err(Error::TooLarge(_))));
    }

    #[test]
    fn poset_counts_up_to_isomorphism() {
        let counts: Vec<usize> = (0..=5).map(|n| enumerate_posets(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn roundtrips_on_three_points() {
        for poset in enumerate_posets(3).unwrap() {
            for f in enumerate_order_maps(&poset, 2).unwrap() {
                assert_eq!(filt_to_map(&poset, &map_to_filt(&poset, &f).unwrap()).unwrap(), f);
            }
            for phi in enumerate_filtrations(&poset, 2).unwrap() {
                assert_eq!(map_to_filt(&poset, &filt_to_map(&poset, &phi).unwrap()).unwrap(), phi);
            }
        }
    }
}
