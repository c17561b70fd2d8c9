//! Dense matrices with entries in a [`LocalAlgebra`].

use crate::algebra::LocalAlgebra;
use crate::linalg::FpMatrix;

/// `rows x cols` matrix of local algebra elements, row-major. The algebra
/// is supplied to every arithmetic call rather than stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<u32>>,
}

impl LocalMatrix {
    pub fn zeros(alg: &LocalAlgebra, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![alg.zero(); rows * cols],
        }
    }

    pub fn identity(alg: &LocalAlgebra, n: usize) -> Self {
        Self::scalar_diag(alg, n, &alg.one())
    }

    /// `a * I_n`.
    pub fn scalar_diag(alg: &LocalAlgebra, n: usize, a: &[u32]) -> Self {
        let mut m = Self::zeros(alg, n, n);
        for i in 0..n {
            m.set(i, i, a.to_vec());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Vec<u32>>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &[u32] {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Vec<u32>) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.iter().all(|&c| c == 0))
    }

    pub fn column(&self, c: usize) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.get(r, c).to_vec()).collect()
    }

    pub fn from_columns(alg: &LocalAlgebra, rows: usize, cols: &[Vec<Vec<u32>>]) -> Self {
        let mut m = Self::zeros(alg, rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn mul(&self, alg: &LocalAlgebra, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(alg, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if alg.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if alg.is_zero(b) {
                        continue;
                    }
                    alg.mul_acc(&mut out.entries[i * other.cols + j], a, b);
                }
            }
        }
        out
    }

    pub fn add(&self, alg: &LocalAlgebra, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| alg.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, alg: &LocalAlgebra, a: &[u32]) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| alg.mul(a, e)).collect(),
        }
    }

    /// Multiplies by a field scalar.
    pub fn scale_fp(&self, alg: &LocalAlgebra, c: u32) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| alg.scale(c, e)).collect(),
        }
    }

    pub fn neg(&self, alg: &LocalAlgebra) -> Self {
        self.scale_fp(alg, alg.field().neg(1))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).to_vec());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Kronecker product `self ⊗ other`; row `(i, k)` maps to `i * other.rows + k`.
    pub fn kron(&self, alg: &LocalAlgebra, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(alg, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if alg.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !alg.is_zero(b) {
                            out.set(i * other.rows + k, j * other.cols + l, alg.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).to_vec());
            }
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).to_vec());
            }
        }
        Self {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// First entry (column-major scan) whose constant term is nonzero.
    pub fn find_unit(&self, alg: &LocalAlgebra) -> Option<(usize, usize)> {
        for c in 0..self.cols {
            for r in 0..self.rows {
                if alg.is_unit(self.get(r, c)) {
                    return Some((r, c));
                }
            }
        }
        None
    }

    /// True when every entry lies in the maximal ideal.
    pub fn is_minimal(&self, alg: &LocalAlgebra) -> bool {
        self.entries.iter().all(|e| !alg.is_unit(e))
    }

    /// Reduction modulo the maximal ideal.
    pub fn residue(&self, alg: &LocalAlgebra) -> FpMatrix {
        let mut m = FpMatrix::zeros(alg.field(), self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, alg.residue(self.get(r, c)));
            }
        }
        m
    }

    /// The `F_p`-linear map `A^cols -> A^rows` in the basis
    /// `e_c * b_j`, indexed `c * dim + j`.
    pub fn expand(&self, alg: &LocalAlgebra) -> FpMatrix {
        let f = alg.field();
        let dim = alg.dim();
        let mut m = FpMatrix::zeros(f, self.rows * dim, self.cols * dim);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                for (i, &coef) in a.iter().enumerate() {
                    if coef == 0 {
                        continue;
                    }
                    for j in 0..dim {
                        if let Some(k) = alg.basis_product(i, j) {
                            let row = r * dim + k;
                            let col = c * dim + j;
                            m.set(row, col, f.add(m.get(row, col), coef));
                        }
                    }
                }
            }
        }
        m
    }
}

/// Flattens a vector of local elements into `F_p` coordinates.
pub fn flatten(v: &[Vec<u32>]) -> Vec<u32> {
    v.iter().flat_map(|e| e.iter().copied()).collect()
}

/// Inverse of [`flatten`].
pub fn unflatten(alg: &LocalAlgebra, v: &[u32]) -> Vec<Vec<u32>> {
    v.chunks(alg.dim()).map(|c| c.to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn alg() -> LocalAlgebra {
        let f = PrimeField::new(101).unwrap();
        LocalAlgebra::new(f, vec!["x".into()], vec![vec![3]]).unwrap()
    }

    #[test]
    fn expansion_is_multiplicative() {
        let a = alg();
        let x = a.variable(0);
        let one = a.one();
        let m1 = LocalMatrix::from_entries(1, 2, vec![x.clone(), one.clone()]);
        let m2 = LocalMatrix::from_entries(2, 1, vec![x.clone(), a.add(&x, &one)]);
        let prod = m1.mul(&a, &m2);
        assert_eq!(prod.expand(&a), m1.expand(&a).mul(&m2.expand(&a)));
    }

    #[test]
    fn multiplication_by_x_has_rank_dim_minus_one() {
        let a = alg();
        let m = LocalMatrix::scalar_diag(&a, 1, &a.variable(0));
        assert_eq!(m.expand(&a).rank(), 2);
        assert!(m.is_minimal(&a));
    }

    #[test]
    fn kron_shape_and_transpose() {
        let a = alg();
        let m = LocalMatrix::from_entries(1, 2, vec![a.variable(0), a.one()]);
        let k = m.kron(&a, &LocalMatrix::identity(&a, 2));
        assert_eq!((k.rows(), k.cols()), (2, 4));
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.find_unit(&a), Some((0, 1)));
    }
}
