//! Dense row-major complex square matrices.

use std::ops::{Index, IndexMut, Mul};

use crate::algebra::{NodeMatrix, C64, ONE, ZERO};

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    /// Places `blocks[k]` on rows/columns `2k, 2k+1`.
    pub fn block_diagonal(blocks: &[NodeMatrix]) -> Self {
        let mut m = Self::zeros(2 * blocks.len());
        for (k, b) in blocks.iter().enumerate() {
            let (r, c) = (2 * k, 2 * k + 1);
            m[(r, r)] = b.m11;
            m[(r, c)] = b.m12;
            m[(c, r)] = b.m21;
            m[(c, c)] = b.m22;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// 2×2 sub-block at rows/columns `(r, r+1)`, `(c, c+1)`.
    pub fn block(&self, r: usize, c: usize) -> NodeMatrix {
        NodeMatrix::new(
            self[(r, c)],
            self[(r, c + 1)],
            self[(r + 1, c)],
            self[(r + 1, c + 1)],
        )
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &DenseMatrix {
    type Output = DenseMatrix;
    fn mul(self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        let m = DenseMatrix::from_fn(3, |i, j| C64::new(i as f64, j as f64 - 1.0));
        let id = DenseMatrix::identity(3);
        assert_eq!(&id * &m, m);
        assert_eq!(&m * &id, m);
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let m = DenseMatrix::from_fn(2, |i, j| C64::new(i as f64, j as f64 + 1.0));
        let a = m.adjoint();
        assert_eq!(a[(0, 1)], m[(1, 0)].conj());
        assert_eq!(a.adjoint(), m);
    }

    #[test]
    fn block_roundtrip() {
        let b = NodeMatrix::new(
            C64::new(1.0, 2.0),
            C64::new(3.0, 0.0),
            C64::new(0.0, -1.0),
            C64::new(5.0, 5.0),
        );
        let m = DenseMatrix::block_diagonal(&[NodeMatrix::IDENTITY, b]);
        assert_eq!(m.block(2, 2), b);
        assert_eq!(m.block(0, 2), NodeMatrix::new(ZERO, ZERO, ZERO, ZERO));
    }
}
