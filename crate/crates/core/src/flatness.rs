//! Flatness verdicts for a Lie algebra with a scalar product.
//!
//! Four computable conditions are evaluated against each other: vanishing
//! of the bracket identity [A_u v, w] + [u, A_w v] = 0, the Levi-Civita
//! product acting by derivations of the bracket, vanishing curvature, and
//! the rotations/translations splitting of the algebra.  For a
//! positive-definite product these are equivalent; for indefinite products
//! the verdicts are still reported but no equivalence is claimed.

use nalgebra::{DMatrix, DVector};

use crate::algebra::LieAlgebra;
use crate::connection::{self, Connection};
use crate::error::{Error, Result};
use crate::linalg;
use crate::metric::ScalarProduct;
use crate::subspace::Subspace;

/// Largest residual of [A_u v, w] + [u, A_w v] over basis triples; zero
/// exactly when the algebra with this scalar product is a Riemann-Lie
/// algebra.  The equivalent derivation form is computed independently and
/// the two maxima must agree.
pub fn riemann_lie_defect(alg: &LieAlgebra, metric: &ScalarProduct, tol: f64) -> Result<f64> {
    let conn = connection::levi_civita(alg, metric, tol)?;
    let d8 = bracket_identity_defect(alg, &conn);
    let d9 = derivation_defect(alg, &conn);
    let threshold = tol * (1.0 + connection::connection_scale(alg, metric));
    if (d8 - d9).abs() > threshold {
        return Err(Error::Internal {
            check: "bracket-identity defect agrees with derivation defect",
            defect: (d8 - d9).abs(),
            threshold,
        });
    }
    Ok(d8)
}

/// Largest residual of A_u [v, w] = [A_u v, w] + [v, A_u w] over basis
/// triples, i.e. failure of A to act by derivations of the bracket.
pub fn parallel_dtheta_defect(alg: &LieAlgebra, metric: &ScalarProduct, tol: f64) -> Result<f64> {
    let conn = connection::levi_civita(alg, metric, tol)?;
    Ok(derivation_defect(alg, &conn))
}

fn bracket_identity_defect(alg: &LieAlgebra, conn: &Connection) -> f64 {
    let n = alg.dim();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let aij = DVector::from(conn.basis_matrix(i).column(j));
            for k in 0..n {
                // [A_{e_i} e_j, e_k] = -ad_{e_k}(A_{e_i} e_j)
                let term = -(alg.ad_basis(k) * &aij)
                    + alg.ad_basis(i) * DVector::from(conn.basis_matrix(k).column(j));
                worst = worst.max(linalg::vec_max_abs(&term));
            }
        }
    }
    worst
}

fn derivation_defect(alg: &LieAlgebra, conn: &Connection) -> f64 {
    let n = alg.dim();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = alg.ad_basis(i) * alg.basis_bracket(j, k);
                let aij = DVector::from(conn.basis_matrix(i).column(j));
                let aik = DVector::from(conn.basis_matrix(i).column(k));
                let rhs = -(alg.ad_basis(k) * &aij) + alg.ad_basis(j) * &aik;
                worst = worst.max(linalg::vec_max_abs(&(lhs - rhs)));
            }
        }
    }
    worst
}

/// Largest entry of the curvature R(e_i, e_j) = A_{[e_i, e_j]} - [A_{e_i}, A_{e_j}]
/// over basis pairs.
pub fn curvature_defect(alg: &LieAlgebra, metric: &ScalarProduct, tol: f64) -> Result<f64> {
    let conn = connection::levi_civita(alg, metric, tol)?;
    Ok(curvature_of(alg, &conn))
}

pub(crate) fn curvature_of(alg: &LieAlgebra, conn: &Connection) -> f64 {
    let n = alg.dim();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let ai = conn.basis_matrix(i);
            let aj = conn.basis_matrix(j);
            let bracket_mat = conn
                .matrix_of(&alg.basis_bracket(i, j))
                .expect("bracket has ambient dimension");
            let r = bracket_mat - (ai * aj - aj * ai);
            worst = worst.max(linalg::max_abs(&r));
        }
    }
    worst
}

/// The subalgebra of all u whose adjoint action is skew-adjoint for the
/// scalar product: the kernel of u -> ad_u + adt_u.  Closure under the
/// bracket is verified before returning.
pub fn orthogonal_subalgebra(alg: &LieAlgebra, metric: &ScalarProduct, tol: f64) -> Result<Subspace> {
    let n = alg.dim();
    let mut stacked = DMatrix::zeros(n * n, n);
    for i in 0..n {
        let m = alg.ad_basis(i) + metric.adjoint(alg.ad_basis(i));
        for (r, x) in m.iter().enumerate() {
            stacked[(r, i)] = *x;
        }
    }
    let s = Subspace::from_orthonormal(n, linalg::kernel(&stacked, tol));
    let flags = alg.subspace_flags(&s, tol);
    if !flags.is_subalgebra {
        return Err(Error::Internal {
            check: "skew-adjoint locus is closed under the bracket",
            defect: 1.0,
            threshold: tol,
        });
    }
    Ok(s)
}

/// Scalar-product orthogonal of the derived algebra, computed as the joint
/// kernel of the adjoint maps adt_{e_i} and cross-checked two independent
/// ways: as the Gram-orthocomplement of the derived algebra, and as the
/// locus where D_u = ad_u - A_u is self-adjoint.
pub fn derived_perp(alg: &LieAlgebra, metric: &ScalarProduct, tol: f64) -> Result<Subspace> {
    let n = alg.dim();
    let adt: Vec<DMatrix<f64>> = (0..n).map(|i| metric.adjoint(alg.ad_basis(i))).collect();
    let joint = linalg::vstack(&adt);
    let primary = Subspace::from_orthonormal(n, linalg::kernel(&joint, tol));

    let by_complement = alg.derived_algebra(tol).complement_under(metric.gram(), tol);
    if !primary.equals(&by_complement, tol) {
        return Err(Error::Internal {
            check: "joint adjoint kernel equals Gram-orthocomplement of derived algebra",
            defect: primary.projector_distance(&by_complement),
            threshold: 10.0 * tol,
        });
    }

    let conn = connection::levi_civita(alg, metric, tol)?;
    let mut stacked = DMatrix::zeros(n * n, n);
    for i in 0..n {
        let d = alg.ad_basis(i) - conn.basis_matrix(i);
        let gap = &d - metric.adjoint(&d);
        for (r, x) in gap.iter().enumerate() {
            stacked[(r, i)] = *x;
        }
    }
    let by_self_adjoint = Subspace::from_orthonormal(n, linalg::kernel(&stacked, tol));
    if !primary.equals(&by_self_adjoint, tol) {
        return Err(Error::Internal {
            check: "joint adjoint kernel equals self-adjoint locus of D",
            defect: primary.projector_distance(&by_self_adjoint),
            threshold: 10.0 * tol,
        });
    }

    Ok(primary)
}

/// Why the rotations/translations splitting failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MilnorClause {
    RotationsNotAbelian,
    SplitIncomplete,
    TranslationsNotIdeal,
    TranslationsNotAbelian,
}

impl std::fmt::Display for MilnorClause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MilnorClause::RotationsNotAbelian => "rotation subalgebra is not abelian",
            MilnorClause::SplitIncomplete => {
                "rotation subalgebra and its orthogonal do not fill the space"
            }
            MilnorClause::TranslationsNotIdeal => "orthogonal of the rotations is not an ideal",
            MilnorClause::TranslationsNotAbelian => "orthogonal of the rotations is not abelian",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub enum MilnorOutcome {
    /// Orthogonal splitting into an abelian subalgebra acting by
    /// skew-adjoint maps and an abelian ideal.
    Split {
        rotations: Subspace,
        translations: Subspace,
    },
    Failed { clause: MilnorClause },
}

impl MilnorOutcome {
    pub fn is_split(&self) -> bool {
        matches!(self, MilnorOutcome::Split { .. })
    }
}

/// Try to split the algebra as rotations + translations: the orthogonal
/// subalgebra must be abelian and its metric orthogonal an abelian ideal.
/// The first failing clause is reported.
pub fn milnor_decomposition(
    alg: &LieAlgebra,
    metric: &ScalarProduct,
    tol: f64,
) -> Result<MilnorOutcome> {
    let s = orthogonal_subalgebra(alg, metric, tol)?;
    let s_flags = alg.subspace_flags(&s, tol);
    if !s_flags.is_abelian {
        return Ok(MilnorOutcome::Failed {
            clause: MilnorClause::RotationsNotAbelian,
        });
    }
    let u = s.complement_under(metric.gram(), tol);
    if s.dim() + u.dim() != alg.dim() {
        return Ok(MilnorOutcome::Failed {
            clause: MilnorClause::SplitIncomplete,
        });
    }
    let u_flags = alg.subspace_flags(&u, tol);
    if !u_flags.is_ideal {
        return Ok(MilnorOutcome::Failed {
            clause: MilnorClause::TranslationsNotIdeal,
        });
    }
    if !u_flags.is_abelian {
        return Ok(MilnorOutcome::Failed {
            clause: MilnorClause::TranslationsNotAbelian,
        });
    }
    Ok(MilnorOutcome::Split {
        rotations: s,
        translations: u,
    })
}

/// Joint verdict over the four computable flatness conditions.
#[derive(Debug, Clone)]
pub struct Classification {
    pub dim: usize,
    pub tol: f64,
    pub threshold: f64,
    pub riemannian: bool,
    pub signature: (usize, usize),
    pub riemann_lie_defect: f64,
    pub dtheta_defect: f64,
    pub curvature_defect: f64,
    pub condition_riemann_lie: bool,
    pub condition_dtheta: bool,
    pub condition_curvature: bool,
    pub condition_milnor: bool,
    pub milnor: MilnorOutcome,
    pub orthogonal: Subspace,
    /// Whether the four condition verdicts coincide; only meaningful (and
    /// only set) for a positive-definite scalar product.
    pub consistent: Option<bool>,
    pub is_riemann_lie: bool,
}

pub fn classify(alg: &LieAlgebra, metric: &ScalarProduct, tol: f64) -> Result<Classification> {
    let scale = alg.max_structure_constant() * metric.max_abs_entry();
    let threshold = tol * (1.0 + scale);

    let d_rl = riemann_lie_defect(alg, metric, tol)?;
    let d_dtheta = parallel_dtheta_defect(alg, metric, tol)?;
    let d_curv = curvature_defect(alg, metric, tol)?;
    let milnor = milnor_decomposition(alg, metric, tol)?;
    let orthogonal = orthogonal_subalgebra(alg, metric, tol)?;

    let c1 = d_rl <= threshold;
    let c3 = d_dtheta <= threshold;
    let c4 = d_curv <= threshold;
    let c5 = milnor.is_split();
    let riemannian = metric.is_riemannian();
    let consistent = if riemannian {
        Some(c1 == c3 && c1 == c4 && c1 == c5)
    } else {
        None
    };

    Ok(Classification {
        dim: alg.dim(),
        tol,
        threshold,
        riemannian,
        signature: metric.signature(),
        riemann_lie_defect: d_rl,
        dtheta_defect: d_dtheta,
        curvature_defect: d_curv,
        condition_riemann_lie: c1,
        condition_dtheta: c3,
        condition_curvature: c4,
        condition_milnor: c5,
        milnor,
        orthogonal,
        consistent,
        is_riemann_lie: c1,
    })
}
