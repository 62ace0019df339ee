//! Nondegenerate symmetric bilinear forms (scalar products) on the
//! underlying vector space, stored as a Gram matrix together with its
//! inverse and signature.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;

#[derive(Debug, Clone)]
pub struct ScalarProduct {
    gram: DMatrix<f64>,
    dual: DMatrix<f64>,
    signature: (usize, usize),
}

impl ScalarProduct {
    /// Accepts an exactly symmetric Gram matrix; rejects it as degenerate
    /// when the smallest |eigenvalue| is below `tol` times the largest.
    pub fn new(gram: DMatrix<f64>, tol: f64) -> Result<Self> {
        if gram.nrows() != gram.ncols() {
            return Err(Error::DimensionMismatch {
                what: "Gram matrix",
                expected: gram.nrows(),
                got: gram.ncols(),
            });
        }
        if gram != gram.transpose() {
            return Err(Error::NotSymmetric {
                what: "Gram matrix",
            });
        }
        let eig = gram.clone().symmetric_eigen();
        let lmax = eig.eigenvalues.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
        let lmin = eig.eigenvalues.iter().fold(f64::INFINITY, |a, x| a.min(x.abs()));
        if lmax == 0.0 || lmin <= tol * lmax {
            return Err(Error::DegenerateMetric {
                ratio: if lmax == 0.0 { 0.0 } else { lmin / lmax },
                tol,
            });
        }
        let n_plus = eig.eigenvalues.iter().filter(|&&l| l > 0.0).count();
        let n = gram.nrows();

        // Invert through the eigendecomposition and re-symmetrize so that
        // the stored inverse is exactly symmetric.
        let q = &eig.eigenvectors;
        let inv_diag = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| 1.0 / l));
        let raw = q * inv_diag * q.transpose();
        let dual = 0.5 * (&raw + raw.transpose());

        let residual = linalg::max_abs(&(&gram * &dual - DMatrix::identity(n, n)));
        if residual > tol * (1.0 + lmax / lmin) {
            return Err(Error::Internal {
                check: "gram * dual_gram == identity",
                defect: residual,
                threshold: tol * (1.0 + lmax / lmin),
            });
        }
        Ok(ScalarProduct {
            gram,
            dual,
            signature: (n_plus, n - n_plus),
        })
    }

    pub fn identity(n: usize) -> Self {
        ScalarProduct {
            gram: DMatrix::identity(n, n),
            dual: DMatrix::identity(n, n),
            signature: (n, 0),
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    /// Inverse Gram matrix: the induced scalar product on the dual space.
    pub fn dual_gram(&self) -> &DMatrix<f64> {
        &self.dual
    }

    /// (positive, negative) inertia counts.
    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn is_riemannian(&self) -> bool {
        self.signature.1 == 0
    }

    pub fn inner(&self, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        (u.transpose() * &self.gram * v)[(0, 0)]
    }

    /// The scalar product induced on the dual space, with the roles of the
    /// Gram matrix and its inverse exchanged.
    pub fn dual_product(&self) -> ScalarProduct {
        ScalarProduct {
            gram: self.dual.clone(),
            dual: self.gram.clone(),
            signature: self.signature,
        }
    }

    /// Adjoint of a matrix with respect to this scalar product:
    /// gram(M^t u, v) = gram(u, M v).
    pub fn adjoint(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        &self.dual * m.transpose() * &self.gram
    }

    pub fn max_abs_entry(&self) -> f64 {
        linalg::max_abs(&self.gram)
    }
}
