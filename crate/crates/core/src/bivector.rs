//! Bivectors r in Lambda^2 of the algebra, stored as exactly antisymmetric
//! matrices, and even-dimensional subspaces carrying a nondegenerate
//! antisymmetric form.
//!
//! The matrix acts on covectors by (r . alpha)_i = sum_j r[i][j] alpha_j,
//! and the induced 2-form on the dual is r(alpha, beta) = alpha(r . beta).

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq)]
pub struct Bivector {
    r: DMatrix<f64>,
}

impl Bivector {
    /// The matrix must be square and exactly antisymmetric.
    pub fn new(r: DMatrix<f64>) -> Result<Self> {
        if r.nrows() != r.ncols() {
            return Err(Error::DimensionMismatch {
                what: "bivector matrix",
                expected: r.nrows(),
                got: r.ncols(),
            });
        }
        if r != -r.transpose() {
            return Err(Error::NotAntisymmetric { what: "bivector" });
        }
        Ok(Bivector { r })
    }

    /// Build from wedge coefficients on pairs i < j; the lower triangle is
    /// filled with exact negations.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, f64)]) -> Result<Self> {
        let mut r = DMatrix::zeros(dim, dim);
        for &(i, j, v) in entries {
            if i >= j || j >= dim {
                return Err(Error::BracketIndex { i, j, dim });
            }
            r[(i, j)] = v;
            r[(j, i)] = -v;
        }
        Ok(Bivector { r })
    }

    pub fn zero(dim: usize) -> Self {
        Bivector {
            r: DMatrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.r.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.r
    }

    /// Coefficient of e_i wedge e_j, i.e. the (i, j) matrix entry.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.r[(i, j)]
    }

    /// The image r(alpha) of a covector, expressed in the vector basis.
    pub fn apply(&self, alpha: &DVector<f64>) -> Result<DVector<f64>> {
        if alpha.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                what: "covector applied to bivector",
                expected: self.dim(),
                got: alpha.len(),
            });
        }
        Ok(&self.r * alpha)
    }

    /// The value r(alpha, beta) = alpha(r . beta).
    pub fn pair(&self, alpha: &DVector<f64>, beta: &DVector<f64>) -> Result<f64> {
        Ok(alpha.dot(&self.apply(beta)?))
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.r)
    }

    pub fn is_zero(&self) -> bool {
        self.max_abs() == 0.0
    }
}

/// A subspace of even dimension at least two together with a nondegenerate
/// antisymmetric form on it, expressed in the coordinates of the stored
/// basis.
#[derive(Debug, Clone)]
pub struct SymplecticSubspace {
    subspace: Subspace,
    omega: DMatrix<f64>,
}

impl SymplecticSubspace {
    pub fn new(subspace: Subspace, omega: DMatrix<f64>, tol: f64) -> Result<Self> {
        let p = subspace.dim();
        if p == 0 || p % 2 != 0 {
            return Err(Error::OddDimension { dim: p });
        }
        if omega.nrows() != p || omega.ncols() != p {
            return Err(Error::DimensionMismatch {
                what: "symplectic form",
                expected: p,
                got: omega.nrows().max(omega.ncols()),
            });
        }
        if omega != -omega.transpose() {
            return Err(Error::NotAntisymmetric {
                what: "symplectic form",
            });
        }
        let (smin, smax) = linalg::singular_extremes(&omega);
        if smax == 0.0 || smin <= tol * smax {
            return Err(Error::RankDeficient {
                what: "symplectic form",
                sigma: smin,
            });
        }
        Ok(SymplecticSubspace { subspace, omega })
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn omega(&self) -> &DMatrix<f64> {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.subspace.ambient_dim()
    }
}
