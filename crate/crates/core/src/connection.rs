//! The Levi-Civita product of a Lie algebra with a scalar product: the
//! bilinear map A with
//!
//!   2 <A_u v, w> = <[u,v], w> + <[w,u], v> + <[w,v], u>,
//!
//! which is torsion-free (A_u v - A_v u = [u,v]) and acts by maps that are
//! skew-adjoint for the scalar product.  The closed form
//!
//!   A_u v = 1/2 [u,v] - 1/2 (adt_u v + adt_v u),
//!
//! with adt the metric adjoint of ad, is evaluated as the primary route and
//! checked against a direct linear solve of the trilinear formula; both
//! routes must agree before a `Connection` is handed out.

use nalgebra::{DMatrix, DVector};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg;
use crate::metric::ScalarProduct;

#[derive(Debug, Clone)]
pub struct Connection {
    mats: Vec<DMatrix<f64>>,
}

impl Connection {
    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    /// Matrix of v -> A_{e_i} v.
    pub fn basis_matrix(&self, i: usize) -> &DMatrix<f64> {
        &self.mats[i]
    }

    /// Coefficient of e_k in A_{e_i} e_j.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> f64 {
        self.mats[i][(k, j)]
    }

    pub fn matrix_of(&self, u: &DVector<f64>) -> Result<DMatrix<f64>> {
        let n = self.dim();
        if u.len() != n {
            return Err(Error::DimensionMismatch {
                what: "vector in connection operation",
                expected: n,
                got: u.len(),
            });
        }
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            if u[i] != 0.0 {
                m += u[i] * &self.mats[i];
            }
        }
        Ok(m)
    }

    pub fn apply(&self, u: &DVector<f64>, v: &DVector<f64>) -> Result<DVector<f64>> {
        Ok(self.matrix_of(u)? * v)
    }

    pub fn max_abs(&self) -> f64 {
        self.mats.iter().map(linalg::max_abs).fold(0.0, f64::max)
    }
}

/// Combined magnitude of the structure constants and the metric, used to
/// scale tolerance thresholds for connection computations.
pub fn connection_scale(alg: &LieAlgebra, metric: &ScalarProduct) -> f64 {
    let kappa = linalg::max_abs(metric.gram()) * linalg::max_abs(metric.dual_gram());
    alg.max_structure_constant() * (1.0 + kappa)
}

/// Metric adjoint of ad_u: gram(adt_u x, y) = gram(x, [u, y]).
pub fn adjoint_ad(alg: &LieAlgebra, metric: &ScalarProduct, u: &DVector<f64>) -> Result<DMatrix<f64>> {
    check_dims(alg, metric)?;
    Ok(metric.adjoint(&alg.ad_matrix(u)?))
}

pub fn levi_civita(alg: &LieAlgebra, metric: &ScalarProduct, tol: f64) -> Result<Connection> {
    check_dims(alg, metric)?;
    let n = alg.dim();
    let threshold = tol * (1.0 + connection_scale(alg, metric));

    let adt: Vec<DMatrix<f64>> = (0..n).map(|i| metric.adjoint(alg.ad_basis(i))).collect();

    let mut mats = Vec::with_capacity(n);
    for i in 0..n {
        // Column j of the correction term is adt_{e_j} e_i.
        let mut cross = DMatrix::zeros(n, n);
        for j in 0..n {
            cross.set_column(j, &adt[j].column(i));
        }
        let a = 0.5 * alg.ad_basis(i) - 0.5 * &adt[i] - 0.5 * cross;
        mats.push(a);
    }

    // Independent route: solve the trilinear formula entry by entry.
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let bij = alg.basis_bracket(i, j);
            let mut rhs = DVector::zeros(n);
            for w in 0..n {
                let ew = DVector::from_fn(n, |r, _| if r == w { 1.0 } else { 0.0 });
                let bwi = alg.basis_bracket(w, i);
                let bwj = alg.basis_bracket(w, j);
                let ej = DVector::from_fn(n, |r, _| if r == j { 1.0 } else { 0.0 });
                let ei = DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 });
                rhs[w] = metric.inner(&bij, &ew) + metric.inner(&bwi, &ej) + metric.inner(&bwj, &ei);
            }
            let direct = 0.5 * metric.dual_gram() * rhs;
            let diff = &direct - DVector::from(mats[i].column(j));
            worst = worst.max(linalg::vec_max_abs(&diff));
        }
    }
    if worst > threshold {
        return Err(Error::Internal {
            check: "closed-form Levi-Civita product vs trilinear solve",
            defect: worst,
            threshold,
        });
    }

    // Torsion: A_{e_i} e_j - A_{e_j} e_i = [e_i, e_j].
    let mut torsion = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let t = DVector::from(mats[i].column(j)) - DVector::from(mats[j].column(i))
                - alg.basis_bracket(i, j);
            torsion = torsion.max(linalg::vec_max_abs(&t));
        }
    }
    if torsion > threshold {
        return Err(Error::Internal {
            check: "Levi-Civita product is torsion-free",
            defect: torsion,
            threshold,
        });
    }

    // Skew-adjointness: gram * A_i + A_i^T * gram = 0.
    let mut skew = 0.0_f64;
    for m in &mats {
        let s = metric.gram() * m + m.transpose() * metric.gram();
        skew = skew.max(linalg::max_abs(&s));
    }
    if skew > threshold {
        return Err(Error::Internal {
            check: "Levi-Civita maps are skew-adjoint",
            defect: skew,
            threshold,
        });
    }

    Ok(Connection { mats })
}

/// The difference D_u = ad_u - A_u between the adjoint action and the
/// Levi-Civita product.  Its metric adjoint annihilates u itself; that
/// identity is asserted before returning.
pub fn d_operator(
    alg: &LieAlgebra,
    metric: &ScalarProduct,
    u: &DVector<f64>,
    tol: f64,
) -> Result<DMatrix<f64>> {
    let conn = levi_civita(alg, metric, tol)?;
    let d = alg.ad_matrix(u)? - conn.matrix_of(u)?;
    let dt = metric.adjoint(&d);
    let residual = linalg::vec_max_abs(&(&dt * u));
    let threshold = tol * (1.0 + u.norm_squared()) * (1.0 + connection_scale(alg, metric));
    if residual > threshold {
        return Err(Error::Internal {
            check: "adjoint of D_u annihilates u",
            defect: residual,
            threshold,
        });
    }
    Ok(d)
}

fn check_dims(alg: &LieAlgebra, metric: &ScalarProduct) -> Result<()> {
    if alg.dim() != metric.dim() {
        return Err(Error::DimensionMismatch {
            what: "scalar product vs algebra",
            expected: alg.dim(),
            got: metric.dim(),
        });
    }
    Ok(())
}
