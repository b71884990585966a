//! Subspaces of GF(p)^n kept in canonical reduced echelon form.

use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use super::matrix::Matrix;

/// A subspace of `GF(p)^n` stored as the reduced row echelon basis of its
/// spanning vectors. Two subspaces are equal iff their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, n: usize) -> Self {
        Subspace { basis: Matrix::zeros(field, 0, n), pivots: vec![] }
    }

    pub fn full(field: PrimeField, n: usize) -> Self {
        Subspace { basis: Matrix::identity(field, n), pivots: (0..n).collect() }
    }

    /// Span of the given row vectors.
    pub fn from_rows(rows: &Matrix) -> Self {
        let e = rows.rref();
        let k = e.pivots.len();
        let idx: Vec<usize> = (0..k).collect();
        Subspace { basis: e.reduced.select_rows(&idx), pivots: e.pivots }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Matrix) -> Self {
        Self::from_rows(&m.transpose())
    }

    pub fn from_vectors(field: PrimeField, n: usize, vs: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(vs.len() * n);
        for v in vs {
            assert_eq!(v.len(), n);
            data.extend_from_slice(v);
        }
        Self::from_rows(&Matrix::from_vec(field, vs.len(), n, data))
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    /// Basis as rows (reduced echelon form).
    pub fn rows(&self) -> &Matrix {
        &self.basis
    }

    /// Basis as columns, `ambient x dim`.
    pub fn as_columns(&self) -> Matrix {
        self.basis.transpose()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<u32>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    /// Reduces `v` against the basis, returning the remainder.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut r = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let x = r[c];
            if x != 0 {
                let row = self.basis.row(i);
                for (a, &b) in r.iter_mut().zip(row) {
                    *a = f.sub(*a, f.mul(x, b));
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the stored basis; `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient(), other.ambient());
        Self::from_rows(&self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient(), other.ambient());
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Self::zero(f, self.ambient());
        }
        // x A = y B  <=>  [A; -B]^T-kernel
        let stacked = self.basis.vstack(&other.basis.scale(f.neg(1)));
        let k = stacked.transpose().kernel_basis();
        let a = self.dim();
        let mut vs = Vec::new();
        for j in 0..k.cols() {
            let coeffs: Vec<u32> = (0..a).map(|i| k.get(i, j)).collect();
            vs.push(self.combine(&coeffs));
        }
        Self::from_vectors(f, self.ambient(), &vs)
    }

    /// Linear combination of basis rows.
    pub fn combine(&self, coeffs: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut v = vec![0; self.ambient()];
        for (i, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (a, &b) in v.iter_mut().zip(self.basis.row(i)) {
                *a = f.add(*a, f.mul(c, b));
            }
        }
        v
    }

    /// Indices of standard basis vectors completing this subspace to the
    /// whole space (the non-pivot coordinates).
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient());
        if self.is_zero() {
            return Self::zero(self.field(), m.rows());
        }
        Self::from_rows(&m.mul(&self.as_columns()).transpose())
    }

    /// Preimage `{x : m x ∈ self}`.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient());
        let f = self.field();
        // Project onto the complement coordinates after reducing: m x ∈ W iff
        // reduce(m x) = 0, and reduce is linear.
        let comp = self.complement_indices();
        let mut red = Matrix::zeros(f, comp.len(), m.cols());
        for j in 0..m.cols() {
            let r = self.reduce(&m.col(j));
            for (i, &c) in comp.iter().enumerate() {
                red.set(i, j, r[c]);
            }
        }
        Self::column_span(&red.kernel_basis())
    }
}
