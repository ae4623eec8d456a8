//! Rank-revealing helpers built on the SVD, and the [`Subspace`] type.
//!
//! Rank decisions use a singular value cutoff of `RANK_RTOL · σ_max`,
//! floored at `RANK_ATOL` so that matrices which vanish up to round-off are
//! treated as exactly zero.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, SVD};

use crate::exterior::{binomial, Multivector};

pub const RANK_RTOL: f64 = 1e-9;
pub const RANK_ATOL: f64 = 1e-11;

fn cutoff(singular_values: &DVector<f64>) -> f64 {
    let max = singular_values.iter().copied().fold(0.0, f64::max);
    (RANK_RTOL * max).max(RANK_ATOL)
}

/// Orthonormal basis (as columns) of the kernel of `a`.
pub fn nullspace(a: &DMatrix<f64>) -> DMatrix<f64> {
    let cols = a.ncols();
    if cols == 0 {
        return DMatrix::zeros(0, 0);
    }
    if a.nrows() == 0 {
        return DMatrix::identity(cols, cols);
    }
    // pad short matrices so that the SVD returns a full right basis
    let padded = if a.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (a.nrows(), cols)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = SVD::new(padded, false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let cut = cutoff(&svd.singular_values);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] <= cut)
        .collect();
    let mut out = DMatrix::zeros(cols, keep.len());
    for (c, &k) in keep.iter().enumerate() {
        out.set_column(c, &v_t.row(k).transpose());
    }
    out
}

/// Orthonormal basis (as columns) of the column span of `a`.
pub fn range(a: &DMatrix<f64>) -> DMatrix<f64> {
    let rows = a.nrows();
    if a.ncols() == 0 || rows == 0 {
        return DMatrix::zeros(rows, 0);
    }
    let svd = SVD::new(a.clone(), true, false);
    let u = svd.u.expect("left singular vectors requested");
    let cut = cutoff(&svd.singular_values);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > cut)
        .collect();
    let mut out = DMatrix::zeros(rows, keep.len());
    for (c, &k) in keep.iter().enumerate() {
        out.set_column(c, &u.column(k));
    }
    out
}

pub fn rank(a: &DMatrix<f64>) -> usize {
    range(a).ncols()
}

/// Spectral norm.
pub fn op_norm(a: &DMatrix<f64>) -> f64 {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0.0;
    }
    SVD::new(a.clone(), false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Stack matrices with equal column counts vertically.
pub fn vstack(blocks: &[DMatrix<f64>], ncols: usize) -> DMatrix<f64> {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = DMatrix::zeros(rows, ncols);
    let mut r = 0;
    for b in blocks {
        debug_assert_eq!(b.ncols(), ncols);
        out.view_mut((r, 0), (b.nrows(), ncols)).copy_from(b);
        r += b.nrows();
    }
    out
}

/// Concatenate matrices with equal row counts horizontally.
pub fn hstack(blocks: &[DMatrix<f64>], nrows: usize) -> DMatrix<f64> {
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = DMatrix::zeros(nrows, cols);
    let mut c = 0;
    for b in blocks {
        debug_assert_eq!(b.nrows(), nrows);
        out.view_mut((0, c), (nrows, b.ncols())).copy_from(b);
        c += b.ncols();
    }
    out
}

/// A subspace of the degree `p` forms on ℝⁿ, stored as an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    n: usize,
    p: usize,
    basis: DMatrix<f64>,
}

impl Subspace {
    /// Wrap columns that are already orthonormal.
    pub fn from_orthonormal(n: usize, p: usize, basis: DMatrix<f64>) -> Self {
        debug_assert_eq!(basis.nrows(), binomial(n, p));
        Subspace { n, p, basis }
    }

    /// Span of arbitrary columns.
    pub fn from_span(n: usize, p: usize, columns: &DMatrix<f64>) -> Self {
        Subspace::from_orthonormal(n, p, range(columns))
    }

    pub fn from_columns(n: usize, p: usize, rows: usize, columns: &[DVector<f64>]) -> Self {
        let mut m = DMatrix::zeros(rows, columns.len());
        for (k, c) in columns.iter().enumerate() {
            m.set_column(k, c);
        }
        Subspace::from_span(n, p, &m)
    }

    pub fn from_forms(n: usize, p: usize, forms: &[Multivector]) -> Self {
        let cols: Vec<DVector<f64>> = forms.iter().map(|u| u.grade_vector(p)).collect();
        Subspace::from_columns(n, p, binomial(n, p), &cols)
    }

    pub fn full(n: usize, p: usize) -> Self {
        let d = binomial(n, p);
        Subspace::from_orthonormal(n, p, DMatrix::identity(d, d))
    }

    pub fn zero(n: usize, p: usize) -> Self {
        Subspace::from_orthonormal(n, p, DMatrix::zeros(binomial(n, p), 0))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn basis_forms(&self) -> Vec<Multivector> {
        self.basis
            .column_iter()
            .map(|c| Multivector::from_dvector(self.n, self.p, &c.clone_owned()).unwrap())
            .collect()
    }

    /// Orthogonal projector onto the subspace.
    pub fn projector(&self) -> DMatrix<f64> {
        &self.basis * self.basis.transpose()
    }

    /// Orthogonal projector onto the complement.
    pub fn complement_projector(&self) -> DMatrix<f64> {
        let d = self.ambient_dim();
        DMatrix::identity(d, d) - self.projector()
    }

    pub fn complement(&self) -> Subspace {
        Subspace::from_orthonormal(self.n, self.p, nullspace(&self.basis.transpose()))
    }

    /// Norm of the component of `v` orthogonal to the subspace.
    pub fn distance_to(&self, v: &DVector<f64>) -> f64 {
        let coeffs = self.basis.transpose() * v;
        (v - &self.basis * coeffs).norm()
    }

    /// Frobenius distance between orthogonal projectors.
    pub fn distance(&self, other: &Subspace) -> f64 {
        (self.projector() - other.projector()).norm()
    }

    /// Largest distance from a column of `vectors` to the subspace.
    pub fn max_distance(&self, vectors: &DMatrix<f64>) -> f64 {
        if vectors.ncols() == 0 {
            return 0.0;
        }
        let residual = vectors - &self.basis * (self.basis.transpose() * vectors);
        residual.column_iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// The subspace of vectors `B c` with `op (B c) = 0`.
    pub fn restrict_kernel(&self, op: &DMatrix<f64>) -> Subspace {
        if self.dim() == 0 {
            return self.clone();
        }
        let coeffs = nullspace(&(op * &self.basis));
        // B has orthonormal columns, so B·N stays orthonormal
        Subspace::from_orthonormal(self.n, self.p, &self.basis * coeffs)
    }

    /// Sum of two subspaces of the same degree.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        let joined = hstack(
            &[self.basis.clone(), other.basis.clone()],
            self.ambient_dim(),
        );
        Subspace::from_span(self.n, self.p, &joined)
    }
}
