//! Linear subspaces of the underlying vector space, carried around as an
//! explicit basis plus a cached orthonormal basis and orthogonal projector.
//!
//! Two subspaces are considered equal when their projectors agree entrywise
//! within `10 * tol`; membership of a vector v is decided by the distance
//! `|(I - P) v| <= tol * (1 + |v|)`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;

#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: DMatrix<f64>,
    ortho: DMatrix<f64>,
    projector: DMatrix<f64>,
}

impl Subspace {
    /// Build from a basis given as the columns of an `n x p` matrix.
    /// The columns must be linearly independent.
    pub fn new(basis: DMatrix<f64>, tol: f64) -> Result<Self> {
        let n = basis.nrows();
        let (smin, _) = linalg::singular_extremes(&basis);
        if basis.ncols() > 0 && smin <= tol {
            return Err(Error::RankDeficient {
                what: "subspace basis",
                sigma: smin,
            });
        }
        let ortho = linalg::orthonormal_span(&basis, tol);
        if ortho.ncols() != basis.ncols() {
            return Err(Error::RankDeficient {
                what: "subspace basis",
                sigma: smin,
            });
        }
        let projector = &ortho * ortho.transpose();
        Ok(Subspace {
            ambient_dim: n,
            basis,
            ortho,
            projector,
        })
    }

    /// Build from an arbitrary spanning set; dependent vectors are allowed
    /// and the stored basis is the orthonormal one.
    pub fn span(ambient_dim: usize, vectors: &[DVector<f64>], tol: f64) -> Self {
        let mut m = DMatrix::zeros(ambient_dim, vectors.len());
        for (c, v) in vectors.iter().enumerate() {
            m.set_column(c, v);
        }
        Self::from_orthonormal(ambient_dim, linalg::orthonormal_span(&m, tol))
    }

    pub(crate) fn from_orthonormal(ambient_dim: usize, ortho: DMatrix<f64>) -> Self {
        let projector = &ortho * ortho.transpose();
        Subspace {
            ambient_dim,
            basis: ortho.clone(),
            ortho,
            projector,
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_orthonormal(ambient_dim, DMatrix::zeros(ambient_dim, 0))
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_orthonormal(ambient_dim, DMatrix::identity(ambient_dim, ambient_dim))
    }

    pub fn dim(&self) -> usize {
        self.ortho.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// The basis as originally provided (orthonormal for computed spans).
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn orthonormal_basis(&self) -> &DMatrix<f64> {
        &self.ortho
    }

    pub fn projector(&self) -> &DMatrix<f64> {
        &self.projector
    }

    pub fn basis_vector(&self, k: usize) -> DVector<f64> {
        DVector::from(self.basis.column(k))
    }

    /// Euclidean distance from `v` to the subspace.
    pub fn distance(&self, v: &DVector<f64>) -> f64 {
        (v - &self.projector * v).norm()
    }

    pub fn contains(&self, v: &DVector<f64>, tol: f64) -> bool {
        self.distance(v) <= tol * (1.0 + v.norm())
    }

    pub fn projector_distance(&self, other: &Subspace) -> f64 {
        linalg::max_abs(&(&self.projector - &other.projector))
    }

    pub fn equals(&self, other: &Subspace, tol: f64) -> bool {
        self.ambient_dim == other.ambient_dim && self.projector_distance(other) <= 10.0 * tol
    }

    pub fn is_subset_of(&self, other: &Subspace, tol: f64) -> bool {
        (0..self.dim()).all(|k| other.contains(&DVector::from(self.ortho.column(k)), tol))
    }

    /// Orthogonal complement with respect to the Euclidean inner product.
    pub fn euclidean_complement(&self, tol: f64) -> Subspace {
        let k = linalg::kernel(&self.ortho.transpose(), tol);
        Self::from_orthonormal(self.ambient_dim, k)
    }

    /// Orthogonal complement with respect to the bilinear form with Gram
    /// matrix `gram`: all v with gram(v, s) = 0 for every s in the subspace.
    pub fn complement_under(&self, gram: &DMatrix<f64>, tol: f64) -> Subspace {
        let m = self.ortho.transpose() * gram;
        Self::from_orthonormal(self.ambient_dim, linalg::kernel(&m, tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(entries)
    }

    #[test]
    fn rank_deficient_basis_rejected() {
        let b = DMatrix::from_fn(3, 2, |i, j| if j == 0 { i as f64 } else { 2.0 * i as f64 });
        assert!(Subspace::new(b, 1e-9).is_err());
    }

    #[test]
    fn span_collapses_dependent_vectors() {
        let s = Subspace::span(3, &[v(&[1.0, 0.0, 0.0]), v(&[2.0, 0.0, 0.0])], 1e-9);
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&v(&[-3.0, 0.0, 0.0]), 1e-9));
        assert!(!s.contains(&v(&[0.0, 1.0, 0.0]), 1e-9));
    }

    #[test]
    fn projector_is_idempotent_and_symmetric() {
        let s = Subspace::span(4, &[v(&[1.0, 1.0, 0.0, 0.0]), v(&[0.0, 1.0, 1.0, 0.0])], 1e-9);
        let p = s.projector();
        assert!(linalg::max_abs(&(p * p - p)) < 1e-12);
        assert!(linalg::max_abs(&(p.transpose() - p)) < 1e-12);
    }

    #[test]
    fn complement_dimensions_add_up() {
        let s = Subspace::span(5, &[v(&[1.0, 2.0, 3.0, 4.0, 5.0]), v(&[1.0, 0.0, 0.0, 0.0, 1.0])], 1e-9);
        let c = s.euclidean_complement(1e-9);
        assert_eq!(s.dim() + c.dim(), 5);
        for k in 0..c.dim() {
            let w = c.basis_vector(k);
            assert!(s.distance(&w) > 0.9);
        }
    }

    #[test]
    fn equality_by_projector() {
        let a = Subspace::span(3, &[v(&[1.0, 1.0, 0.0]), v(&[1.0, -1.0, 0.0])], 1e-9);
        let b = Subspace::span(3, &[v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])], 1e-9);
        assert!(a.equals(&b, 1e-9));
        let c = Subspace::span(3, &[v(&[1.0, 0.0, 0.0]), v(&[0.0, 0.0, 1.0])], 1e-9);
        assert!(!a.equals(&c, 1e-9));
    }
}
