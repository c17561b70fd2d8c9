//! Zero-dimensional monomial algebras over `F_p` and their finite products.
//!
//! A [`LocalAlgebra`] is `F_p[x_1..x_n] / I` with `I` a monomial ideal that
//! contains a pure power of every variable. The standard monomials (those not
//! divisible by any generator of `I`) form a basis, and since `I` is monomial
//! the product of two basis monomials is either another basis monomial or
//! zero. Elements are coefficient vectors over that basis; index 0 is always
//! the constant monomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;

pub type Monomial = Vec<u32>;

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

#[derive(Debug, Clone)]
pub struct LocalAlgebra {
    field: PrimeField,
    vars: Vec<String>,
    relations: Vec<Monomial>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    // dim x dim, row-major; None means the product lies in the ideal
    mult: Vec<Option<usize>>,
}

impl PartialEq for LocalAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.vars == other.vars
            && self.basis == other.basis
    }
}

impl Eq for LocalAlgebra {}

impl LocalAlgebra {
    pub fn new(field: PrimeField, vars: Vec<String>, relations: Vec<Monomial>) -> Result<Self> {
        let n = vars.len();
        for r in &relations {
            if r.len() != n {
                return Err(Error::InvariantViolation(format!(
                    "relation has {} exponents, expected {n}",
                    r.len()
                )));
            }
            if r.iter().all(|&e| e == 0) {
                return Err(Error::InvariantViolation("relation 1 generates the unit ideal".into()));
            }
        }
        // smallest pure power of each variable bounds the exponent box
        let mut bounds = Vec::with_capacity(n);
        for (i, name) in vars.iter().enumerate() {
            let pure = relations
                .iter()
                .filter(|r| r.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|r| r[i])
                .min();
            match pure {
                Some(b) => bounds.push(b),
                None => return Err(Error::NotZeroDimensional(name.clone())),
            }
        }
        let mut basis = Vec::new();
        let mut cur = vec![0u32; n];
        loop {
            if !relations.iter().any(|r| divides(r, &cur)) {
                basis.push(cur.clone());
            }
            // odometer over the box
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        basis.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let index: HashMap<Monomial, usize> =
            basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let dim = basis.len();
        let mut mult = vec![None; dim * dim];
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let prod: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
                mult[i * dim + j] = index.get(&prod).copied();
            }
        }
        Ok(Self {
            field,
            vars,
            relations,
            basis,
            index,
            mult,
        })
    }

    /// The prime field itself, presented with no variables.
    pub fn prime_field(field: PrimeField) -> Self {
        Self::new(field, Vec::new(), Vec::new()).expect("field is zero-dimensional")
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn relations(&self) -> &[Monomial] {
        &self.relations
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Dimension over `F_p`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn monomial_index(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Product of two basis monomials, as a basis index (or `None` if zero).
    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> Option<usize> {
        self.mult[i * self.dim() + j]
    }

    pub fn is_field(&self) -> bool {
        self.dim() == 1
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim()]
    }

    pub fn one(&self) -> Vec<u32> {
        self.scalar(1)
    }

    pub fn scalar(&self, c: u32) -> Vec<u32> {
        let mut v = self.zero();
        v[0] = c % self.field.p();
        v
    }

    /// Image of the `i`-th variable (zero if the variable itself is a relation).
    pub fn variable(&self, i: usize) -> Vec<u32> {
        let mut m = vec![0u32; self.vars.len()];
        m[i] = 1;
        let mut v = self.zero();
        if let Some(k) = self.monomial_index(&m) {
            v[k] = 1;
        }
        v
    }

    /// Indices of variables that survive in `m / m^2`.
    pub fn generator_variables(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| {
                let mut m = vec![0u32; self.vars.len()];
                m[i] = 1;
                self.index.contains_key(&m)
            })
            .collect()
    }

    pub fn embedding_dim(&self) -> usize {
        self.generator_variables().len()
    }

    pub fn is_zero(&self, a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.field.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| self.field.neg(x)).collect()
    }

    pub fn scale(&self, c: u32, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = self.zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                if let Some(k) = self.basis_product(i, j) {
                    out[k] = f.add(out[k], f.mul(x, y));
                }
            }
        }
        out
    }

    /// `a * b + acc` accumulated into `acc`.
    pub fn mul_acc(&self, acc: &mut [u32], a: &[u32], b: &[u32]) {
        let f = self.field;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                if let Some(k) = self.basis_product(i, j) {
                    acc[k] = f.add(acc[k], f.mul(x, y));
                }
            }
        }
    }

    pub fn is_unit(&self, a: &[u32]) -> bool {
        a[0] != 0
    }

    /// Inverse of a unit `c(1 + n)` with `n` nilpotent, via the finite
    /// geometric series.
    pub fn inverse(&self, a: &[u32]) -> Option<Vec<u32>> {
        let f = self.field;
        let cinv = f.inv(a[0])?;
        // u = c (1 - n) with n = -(a/c - 1)
        let mut n = self.scale(cinv, a);
        n[0] = 0;
        let n = self.neg(&n);
        let mut sum = self.one();
        let mut pow = self.one();
        loop {
            pow = self.mul(&pow, &n);
            if self.is_zero(&pow) {
                break;
            }
            sum = self.add(&sum, &pow);
        }
        Some(self.scale(cinv, &sum))
    }

    /// Projection onto the residue field.
    pub fn residue(&self, a: &[u32]) -> u32 {
        a[0]
    }

    /// Basis indices spanning the socle `(0 : m)`. For a monomial algebra
    /// the socle is spanned by the standard monomials it contains.
    pub fn socle(&self) -> Vec<usize> {
        let n = self.vars.len();
        (0..self.dim())
            .filter(|&k| {
                (0..n).all(|i| {
                    let mut m = self.basis[k].clone();
                    m[i] += 1;
                    !self.index.contains_key(&m)
                })
            })
            .collect()
    }

    pub fn is_gorenstein(&self) -> bool {
        self.socle().len() == 1
    }

    /// Codepth is `edim - depth`, and depth is zero at this scope.
    pub fn is_hypersurface(&self) -> bool {
        self.embedding_dim() <= 1
    }

    pub fn format_element(&self, a: &[u32]) -> String {
        let mut terms = Vec::new();
        for (k, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono: Vec<String> = self.basis[k]
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], e)
                    }
                })
                .collect();
            let term = match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono.join("*"),
                (_, false) => format!("{}*{}", c, mono.join("*")),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// A site of `Spec` of a product ring: the index of a factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeSite(pub usize);

impl fmt::Display for PrimeSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

/// A finite product of local algebras over a common prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductRing {
    field: PrimeField,
    factors: Vec<Arc<LocalAlgebra>>,
}

/// Element of a product ring: one coefficient vector per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    parts: Vec<Vec<u32>>,
}

impl RingElement {
    pub fn from_parts(parts: Vec<Vec<u32>>) -> Self {
        Self { parts }
    }

    pub fn part(&self, s: PrimeSite) -> &[u32] {
        &self.parts[s.0]
    }

    pub fn parts(&self) -> &[Vec<u32>] {
        &self.parts
    }
}

impl ProductRing {
    pub fn new(factors: Vec<LocalAlgebra>) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::InvariantViolation("product ring needs at least one factor".into()));
        };
        let field = first.field();
        if factors.iter().any(|a| a.field() != field) {
            return Err(Error::InvariantViolation("factors over different primes".into()));
        }
        Ok(Self {
            field,
            factors: factors.into_iter().map(Arc::new).collect(),
        })
    }

    pub fn local(a: LocalAlgebra) -> Self {
        Self::new(vec![a]).expect("one factor")
    }

    /// Convenience: `F_p[vars] / (monomials)` as a one-factor ring.
    pub fn build(p: u32, vars: &[&str], relations: &[Monomial]) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let alg = LocalAlgebra::new(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
            relations.to_vec(),
        )?;
        Ok(Self::local(alg))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn factors(&self) -> &[Arc<LocalAlgebra>] {
        &self.factors
    }

    pub fn factor(&self, s: PrimeSite) -> &Arc<LocalAlgebra> {
        &self.factors[s.0]
    }

    pub fn num_sites(&self) -> usize {
        self.factors.len()
    }

    pub fn sites(&self) -> impl Iterator<Item = PrimeSite> {
        (0..self.factors.len()).map(PrimeSite)
    }

    pub fn check_site(&self, s: PrimeSite) -> Result<()> {
        if s.0 < self.factors.len() {
            Ok(())
        } else {
            Err(Error::InvalidSite(s.0))
        }
    }

    pub fn zero(&self) -> RingElement {
        RingElement::from_parts(self.factors.iter().map(|a| a.zero()).collect())
    }

    pub fn one(&self) -> RingElement {
        self.scalar(1)
    }

    pub fn scalar(&self, c: u32) -> RingElement {
        RingElement::from_parts(self.factors.iter().map(|a| a.scalar(c)).collect())
    }

    /// Element with the given local parts; panics on shape mismatch.
    pub fn element(&self, parts: Vec<Vec<u32>>) -> RingElement {
        assert_eq!(parts.len(), self.factors.len());
        for (p, a) in parts.iter().zip(&self.factors) {
            assert_eq!(p.len(), a.dim());
        }
        RingElement::from_parts(parts)
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement::from_parts(
            self.factors
                .iter()
                .enumerate()
                .map(|(i, f)| f.add(&a.parts[i], &b.parts[i]))
                .collect(),
        )
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        RingElement::from_parts(
            self.factors
                .iter()
                .enumerate()
                .map(|(i, f)| f.neg(&a.parts[i]))
                .collect(),
        )
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement::from_parts(
            self.factors
                .iter()
                .enumerate()
                .map(|(i, f)| f.mul(&a.parts[i], &b.parts[i]))
                .collect(),
        )
    }

    pub fn is_unit_at(&self, a: &RingElement, s: PrimeSite) -> Result<bool> {
        self.check_site(s)?;
        Ok(self.factors[s.0].is_unit(&a.parts[s.0]))
    }

    /// Variable images of factor `s`, padded with `1` at every other factor.
    pub fn minimal_generators(&self, s: PrimeSite) -> Result<Vec<RingElement>> {
        self.check_site(s)?;
        let alg = &self.factors[s.0];
        Ok(alg
            .generator_variables()
            .into_iter()
            .map(|v| {
                let mut parts: Vec<Vec<u32>> = self.factors.iter().map(|a| a.one()).collect();
                parts[s.0] = alg.variable(v);
                RingElement::from_parts(parts)
            })
            .collect())
    }

    pub fn embedding_dim(&self, s: PrimeSite) -> Result<usize> {
        self.check_site(s)?;
        Ok(self.factors[s.0].embedding_dim())
    }

    /// Sites whose local algebra is not a field. An artinian local ring is
    /// regular exactly when it is a field.
    pub fn singular_locus(&self) -> Vec<PrimeSite> {
        self.sites().filter(|s| !self.factors[s.0].is_field()).collect()
    }

    pub fn is_hypersurface_at(&self, s: PrimeSite) -> Result<bool> {
        self.check_site(s)?;
        Ok(self.factors[s.0].is_hypersurface())
    }

    pub fn format_element(&self, a: &RingElement) -> String {
        if self.factors.len() == 1 {
            return self.factors[0].format_element(&a.parts[0]);
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .zip(&a.parts)
            .map(|(f, p)| f.format_element(p))
            .collect();
        format!("[{}]", parts.join("; "))
    }
}
