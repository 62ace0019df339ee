//! Yang-Baxter bivectors, the dual brackets they induce, and the
//! certification pipeline for Riemann-Poisson bialgebra data.
//!
//! Conventions fixed here and verified against each other by the identity
//! checks below: the coadjoint action on covector coordinates is the plain
//! transpose of the adjoint matrix, the dual bracket of a bivector r is
//!
//!   [alpha, beta]_r = ad*_{r(beta)} alpha - ad*_{r(alpha)} beta,
//!
//! and the Schouten bracket is
//!
//!   [r,r](a, b, c) = a([rb, rc]) + b([rc, ra]) + c([ra, rb]).

use nalgebra::{DMatrix, DVector};

use crate::algebra::LieAlgebra;
use crate::bivector::{Bivector, SymplecticSubspace};
use crate::connection::{self, Connection};
use crate::error::{Error, Result};
use crate::flatness::{self, Classification};
use crate::linalg;
use crate::metric::ScalarProduct;
use crate::subspace::Subspace;

/// Matrix of the coadjoint action ad*_x on covector coordinates:
/// (ad*_x alpha)(y) = alpha([x, y]).
pub fn coadjoint(alg: &LieAlgebra, x: &DVector<f64>) -> Result<DMatrix<f64>> {
    Ok(alg.ad_matrix(x)?.transpose())
}

/// Fully evaluated Schouten bracket [r,r] on dual basis triples.
#[derive(Debug, Clone)]
pub struct SchoutenTensor {
    dim: usize,
    t: Vec<f64>,
}

impl SchoutenTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.t[(i * self.dim + j) * self.dim + k]
    }

    /// Largest absolute entry; zero exactly when r solves Yang-Baxter.
    pub fn norm(&self) -> f64 {
        self.t.iter().fold(0.0_f64, |a, x| a.max(x.abs()))
    }
}

/// Evaluate [r,r] on all dual basis triples and return the tensor with its
/// max-norm.
pub fn schouten(alg: &LieAlgebra, r: &Bivector) -> Result<(SchoutenTensor, f64)> {
    let n = check_bivector(alg, r)?;
    let cols: Vec<DVector<f64>> = (0..n).map(|m| DVector::from(r.matrix().column(m))).collect();
    let mut brackets = vec![DVector::zeros(n); n * n];
    for j in 0..n {
        for k in 0..n {
            brackets[j * n + k] = alg.bracket(&cols[j], &cols[k])?;
        }
    }
    let mut t = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                t[(i * n + j) * n + k] =
                    brackets[j * n + k][i] + brackets[k * n + i][j] + brackets[i * n + j][k];
            }
        }
    }
    let tensor = SchoutenTensor { dim: n, t };
    let norm = tensor.norm();
    Ok((tensor, norm))
}

/// The dual space with the bracket induced by r, together with how far that
/// bracket is from satisfying the Jacobi identity.
#[derive(Debug, Clone)]
pub struct DualAlgebra {
    pub algebra: LieAlgebra,
    pub jacobi_defect: f64,
}

/// Build ([alpha, beta]_r entries on dual basis pairs.  No Jacobi check is
/// made: the result is a Lie algebra precisely when r solves Yang-Baxter,
/// and the defect is reported instead.
pub fn dual_bracket(alg: &LieAlgebra, r: &Bivector) -> Result<DualAlgebra> {
    let n = check_bivector(alg, r)?;
    let mut entries = Vec::new();
    for i in 0..n {
        let coad_ri = coadjoint(alg, &DVector::from(r.matrix().column(i)))?;
        for j in (i + 1)..n {
            let coad_rj = coadjoint(alg, &DVector::from(r.matrix().column(j)))?;
            let v = DVector::from(coad_rj.column(i)) - DVector::from(coad_ri.column(j));
            let coeffs: Vec<(usize, f64)> = (0..n)
                .filter(|&k| v[k] != 0.0)
                .map(|k| (k, v[k]))
                .collect();
            entries.push((i, j, coeffs));
        }
    }
    let algebra = LieAlgebra::from_brackets_unchecked(n, &entries)?;
    let jacobi_defect = algebra.jacobi_defect();
    Ok(DualAlgebra {
        algebra,
        jacobi_defect,
    })
}

/// The bivector determined by a subspace with a nondegenerate 2-form:
/// r = -B omega^{-1} B^T for B the stored basis, antisymmetrized exactly.
pub fn subspace_form_to_r(alg: &LieAlgebra, sf: &SymplecticSubspace) -> Result<Bivector> {
    if sf.ambient_dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            what: "symplectic subspace vs algebra",
            expected: alg.dim(),
            got: sf.ambient_dim(),
        });
    }
    let b = sf.subspace().basis();
    let omega_inv = sf
        .omega()
        .clone()
        .try_inverse()
        .ok_or(Error::RankDeficient {
            what: "symplectic form",
            sigma: 0.0,
        })?;
    let raw = -(b * omega_inv * b.transpose());
    let r = 0.5 * (&raw - raw.transpose());
    Bivector::new(r)
}

/// Recover the subspace-with-form picture of a nonzero bivector: the image
/// of r with basis the maximal independent column set K, and the form given
/// by the principal submatrix r[K, K].  The round trip through
/// `subspace_form_to_r` must reproduce r and is asserted.
pub fn r_to_subspace_form(alg: &LieAlgebra, r: &Bivector, tol: f64) -> Result<SymplecticSubspace> {
    let n = check_bivector(alg, r)?;
    if r.is_zero() {
        return Err(Error::ZeroBivector);
    }
    let mut picked: Vec<usize> = Vec::new();
    for j in 0..n {
        let mut cols = DMatrix::zeros(n, picked.len() + 1);
        for (c, &k) in picked.iter().enumerate() {
            cols.set_column(c, &r.matrix().column(k));
        }
        cols.set_column(picked.len(), &r.matrix().column(j));
        if linalg::orthonormal_span(&cols, tol).ncols() == picked.len() + 1 {
            picked.push(j);
        }
    }
    let p = picked.len();
    let mut basis = DMatrix::zeros(n, p);
    let mut omega = DMatrix::zeros(p, p);
    for (a, &ka) in picked.iter().enumerate() {
        basis.set_column(a, &r.matrix().column(ka));
        for (c, &kc) in picked.iter().enumerate() {
            omega[(a, c)] = r.entry(ka, kc);
        }
    }
    let sf = SymplecticSubspace::new(Subspace::new(basis, tol)?, omega, tol)?;

    let back = subspace_form_to_r(alg, &sf)?;
    let defect = linalg::max_abs(&(back.matrix() - r.matrix()));
    let omega_inv_max = linalg::max_abs(&sf.omega().clone().try_inverse().unwrap_or_else(|| {
        DMatrix::zeros(p, p)
    }));
    let threshold = tol * (1.0 + r.max_abs() * r.max_abs() * omega_inv_max * p as f64);
    if defect > threshold {
        return Err(Error::Internal {
            check: "subspace form reproduces the bivector",
            defect,
            threshold,
        });
    }
    Ok(sf)
}

/// Evaluates the 2-form of a symplectic subspace on ambient vectors,
/// by solving for their coordinates in the subspace basis.
pub struct OmegaEval<'a> {
    sf: &'a SymplecticSubspace,
    tol: f64,
}

impl<'a> OmegaEval<'a> {
    pub fn new(sf: &'a SymplecticSubspace, tol: f64) -> OmegaEval<'a> {
        OmegaEval { sf, tol }
    }

    fn coords(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        let b = self.sf.subspace().basis();
        let svd = b.clone().svd(true, true);
        let c = svd
            .solve(x, self.tol)
            .map_err(|_| Error::RankDeficient {
                what: "symplectic subspace basis",
                sigma: 0.0,
            })?;
        let residual = (b * &c - x).norm();
        if residual > self.tol * (1.0 + x.norm()) {
            return Err(Error::Shape {
                what: "vector lies outside the symplectic subspace".into(),
            });
        }
        Ok(DVector::from(c))
    }

    pub fn omega(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<f64> {
        let cx = self.coords(x)?;
        let cy = self.coords(y)?;
        Ok((cx.transpose() * self.sf.omega() * cy)[(0, 0)])
    }

    pub fn delta_omega(
        &self,
        alg: &LieAlgebra,
        x: &DVector<f64>,
        y: &DVector<f64>,
        z: &DVector<f64>,
    ) -> Result<f64> {
        Ok(self.omega(x, &alg.bracket(y, z)?)?
            + self.omega(y, &alg.bracket(z, x)?)?
            + self.omega(z, &alg.bracket(x, y)?)?)
    }
}

/// Largest value of
/// delta omega(x,y,z) = omega(x,[y,z]) + omega(y,[z,x]) + omega(z,[x,y])
/// over basis triples of the subspace.  The subspace must be a subalgebra;
/// the first basis pair whose bracket leaves it is reported otherwise.
pub fn delta_omega_defect(alg: &LieAlgebra, sf: &SymplecticSubspace, tol: f64) -> Result<f64> {
    if sf.ambient_dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            what: "symplectic subspace vs algebra",
            expected: alg.dim(),
            got: sf.ambient_dim(),
        });
    }
    let p = sf.dim();
    let basis: Vec<DVector<f64>> = (0..p).map(|k| sf.subspace().basis_vector(k)).collect();
    for a in 0..p {
        for c in (a + 1)..p {
            let br = alg.bracket(&basis[a], &basis[c])?;
            if !sf.subspace().contains(&br, tol) {
                return Err(Error::NotASubalgebra { i: a, j: c });
            }
        }
    }
    let eval = OmegaEval { sf, tol };
    let mut worst = 0.0_f64;
    for a in 0..p {
        for b in (a + 1)..p {
            for c in (b + 1)..p {
                worst = worst.max(eval.delta_omega(alg, &basis[a], &basis[b], &basis[c])?.abs());
            }
        }
    }
    Ok(worst)
}

/// Three equivalent readings of the Yang-Baxter condition evaluated
/// independently: vanishing of [r,r], r being a morphism from the dual
/// bracket, and the image being a subalgebra on which the recovered 2-form
/// is closed.
#[derive(Debug, Clone)]
pub struct SolutionReport {
    pub schouten_norm: f64,
    pub morphism_defect: f64,
    pub image_is_subalgebra: bool,
    pub delta_omega: Option<f64>,
    pub pairing_residual: f64,
    pub form_residual: Option<f64>,
    pub dual_jacobi_defect: f64,
    pub verdict_schouten: bool,
    pub verdict_morphism: bool,
    pub verdict_symplectic: bool,
    pub verdicts_agree: bool,
    pub threshold: f64,
}

fn yb_threshold(alg: &LieAlgebra, r: &Bivector, tol: f64) -> f64 {
    tol * (1.0 + alg.max_structure_constant() * r.max_abs() * r.max_abs())
}

pub fn solution_report(alg: &LieAlgebra, r: &Bivector, tol: f64) -> Result<SolutionReport> {
    let n = check_bivector(alg, r)?;
    let threshold = yb_threshold(alg, r, tol);
    let (tensor, schouten_norm) = schouten(alg, r)?;
    let dual = dual_bracket(alg, r)?;
    let cols: Vec<DVector<f64>> = (0..n).map(|m| DVector::from(r.matrix().column(m))).collect();

    // Morphism defect and the pairing identity
    // gamma(r([a,b]_r) - [ra, rb]) = -[r,r](a,b,c), which ties the two
    // routes together and must hold whether or not r solves Yang-Baxter.
    let mut morphism_defect = 0.0_f64;
    let mut pairing_residual = 0.0_f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let gap = r.apply(&dual.algebra.basis_bracket(i, j))?
                - alg.bracket(&cols[i], &cols[j])?;
            morphism_defect = morphism_defect.max(linalg::vec_max_abs(&gap));
            for k in 0..n {
                pairing_residual = pairing_residual.max((gap[k] + tensor.get(i, j, k)).abs());
            }
        }
    }
    if pairing_residual > threshold {
        return Err(Error::Internal {
            check: "morphism gap pairs to the Schouten tensor",
            defect: pairing_residual,
            threshold,
        });
    }

    // Symplectic-subalgebra reading, only meaningful for nonzero r.
    let image = Subspace::from_orthonormal(n, linalg::orthonormal_span(r.matrix(), tol));
    let image_is_subalgebra = alg.subspace_flags(&image, tol).is_subalgebra;
    let (delta, form_residual, verdict_symplectic) = if r.is_zero() {
        (Some(0.0), None, true)
    } else if image_is_subalgebra {
        let sf = r_to_subspace_form(alg, r, tol)?;
        let delta = delta_omega_defect(alg, &sf, tol)?;
        // With the image a subalgebra, the recovered form inverts r on it:
        // omega(ra, s) = a(s) for s in the image, so every term of
        // [r,r](a,b,c) equals the matching term of
        // delta omega(ra, rb, rc); checked on dual basis triples.
        let eval = OmegaEval { sf: &sf, tol };
        let mut residual = 0.0_f64;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let d = eval.delta_omega(alg, &cols[i], &cols[j], &cols[k])?;
                    residual = residual.max((tensor.get(i, j, k) - d).abs());
                }
            }
        }
        (Some(delta), Some(residual), delta <= threshold)
    } else {
        (None, None, false)
    };

    let verdict_schouten = schouten_norm <= threshold;
    let verdict_morphism = morphism_defect <= threshold;
    let verdicts_agree =
        verdict_schouten == verdict_morphism && verdict_schouten == verdict_symplectic;

    Ok(SolutionReport {
        schouten_norm,
        morphism_defect,
        image_is_subalgebra,
        delta_omega: delta,
        pairing_residual,
        form_residual,
        dual_jacobi_defect: dual.jacobi_defect,
        verdict_schouten,
        verdict_morphism,
        verdict_symplectic,
        verdicts_agree,
        threshold,
    })
}

/// Levi-Civita product of the dual bracket with the dual scalar product.
pub fn dual_levi_civita(
    alg: &LieAlgebra,
    metric: &ScalarProduct,
    r: &Bivector,
    tol: f64,
) -> Result<Connection> {
    let dual = dual_bracket(alg, r)?;
    connection::levi_civita(&dual.algebra, &metric.dual_product(), tol)
}

/// Whether the dual Levi-Civita product coincides with the negative
/// coadjoint action of r, equivalent to the image of r sitting inside the
/// orthogonal subalgebra of the metric.  Both sides of that equivalence are
/// computed and reported.
#[derive(Debug, Clone)]
pub struct DualConnectionReport {
    pub defect: f64,
    pub holds: bool,
    pub image_in_orthogonal: bool,
    pub flags_agree: bool,
    pub dual_jacobi_defect: f64,
    pub dual_curvature: f64,
    pub dual_riemann_lie_defect: f64,
    pub threshold: f64,
}

pub fn dual_connection_check(
    alg: &LieAlgebra,
    metric: &ScalarProduct,
    r: &Bivector,
    tol: f64,
) -> Result<DualConnectionReport> {
    let n = check_bivector(alg, r)?;
    check_metric(alg, metric)?;
    let dual = dual_bracket(alg, r)?;
    let dual_metric = metric.dual_product();
    let conn = connection::levi_civita(&dual.algebra, &dual_metric, tol)?;

    let mut defect = 0.0_f64;
    for i in 0..n {
        let coad = coadjoint(alg, &DVector::from(r.matrix().column(i)))?;
        defect = defect.max(linalg::max_abs(&(conn.basis_matrix(i) + coad)));
    }

    let image = Subspace::from_orthonormal(n, linalg::orthonormal_span(r.matrix(), tol));
    let orthogonal = flatness::orthogonal_subalgebra(alg, metric, tol)?;
    let image_in_orthogonal = image.is_subset_of(&orthogonal, tol);

    let threshold = dual_threshold(alg, metric, r, tol);
    let holds = defect <= threshold;

    Ok(DualConnectionReport {
        defect,
        holds,
        image_in_orthogonal,
        flags_agree: holds == image_in_orthogonal,
        dual_jacobi_defect: dual.jacobi_defect,
        dual_curvature: flatness::curvature_of(&dual.algebra, &conn),
        dual_riemann_lie_defect: dual_riemann_lie(&dual.algebra, &conn),
        threshold,
    })
}

fn dual_riemann_lie(dual: &LieAlgebra, conn: &Connection) -> f64 {
    let n = dual.dim();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let aij = DVector::from(conn.basis_matrix(i).column(j));
            for k in 0..n {
                let term = -(dual.ad_basis(k) * &aij)
                    + dual.ad_basis(i) * DVector::from(conn.basis_matrix(k).column(j));
                worst = worst.max(linalg::vec_max_abs(&term));
            }
        }
    }
    worst
}

fn dual_threshold(alg: &LieAlgebra, metric: &ScalarProduct, r: &Bivector, tol: f64) -> f64 {
    let kappa = linalg::max_abs(metric.gram()) * linalg::max_abs(metric.dual_gram());
    let s = alg.max_structure_constant() * (1.0 + r.max_abs()) * (1.0 + kappa);
    tol * (1.0 + s + s * s)
}

/// Check that a Yang-Baxter bivector whose image sits in the orthogonal
/// subalgebra has an abelian image.  Precondition failures are reported by
/// distinct errors.
pub fn abelian_image_check(
    alg: &LieAlgebra,
    metric: &ScalarProduct,
    r: &Bivector,
    tol: f64,
) -> Result<bool> {
    let n = check_bivector(alg, r)?;
    check_metric(alg, metric)?;
    let threshold = yb_threshold(alg, r, tol);
    let (_, norm) = schouten(alg, r)?;
    if norm > threshold {
        return Err(Error::YangBaxterViolated { norm });
    }
    let image = Subspace::from_orthonormal(n, linalg::orthonormal_span(r.matrix(), tol));
    let basis: Vec<DVector<f64>> = (0..image.dim()).map(|k| image.basis_vector(k)).collect();
    for a in 0..basis.len() {
        for c in (a + 1)..basis.len() {
            if !image.contains(&alg.bracket(&basis[a], &basis[c])?, tol) {
                return Err(Error::NotASubalgebra { i: a, j: c });
            }
        }
    }
    let orthogonal = flatness::orthogonal_subalgebra(alg, metric, tol)?;
    if !image.is_subset_of(&orthogonal, tol) {
        return Err(Error::SubspaceNotContained);
    }
    Ok(alg.subspace_flags(&image, tol).is_abelian)
}

/// Largest residual of
/// [ad*_{r(a)} c, b]_r + [a, ad*_{r(b)} c]_r over dual basis triples; the
/// group-level compatibility of the induced Poisson tensor with the dual
/// metric reduces to the vanishing of this expression.
pub fn rpl_compatibility_defect(
    alg: &LieAlgebra,
    metric: &ScalarProduct,
    r: &Bivector,
) -> Result<f64> {
    let n = check_bivector(alg, r)?;
    check_metric(alg, metric)?;
    let dual = dual_bracket(alg, r)?;
    let coad: Vec<DMatrix<f64>> = (0..n)
        .map(|m| coadjoint(alg, &DVector::from(r.matrix().column(m))))
        .collect::<Result<_>>()?;
    let mut worst = 0.0_f64;
    for a in 0..n {
        let ea = unit(n, a);
        for b in 0..n {
            let eb = unit(n, b);
            for c in 0..n {
                let ec = unit(n, c);
                let term = dual.algebra.bracket(&(&coad[a] * &ec), &eb)?
                    + dual.algebra.bracket(&ea, &(&coad[b] * &ec))?;
                worst = worst.max(linalg::vec_max_abs(&term));
            }
        }
    }
    Ok(worst)
}

/// Full certification pipeline from an abelian symplectic subalgebra of the
/// orthogonal subalgebra to Riemann-Poisson bialgebra data.
#[derive(Debug, Clone)]
pub struct BialgebraReport {
    pub r: Bivector,
    pub schouten_norm: f64,
    pub dual_jacobi_defect: f64,
    pub dual_connection: DualConnectionReport,
    pub image_abelian: bool,
    pub rpl_defect: f64,
    pub dual_classification: Classification,
    pub primal_riemann_lie: bool,
    pub double_riemann_lie: bool,
    pub certified: bool,
    pub threshold: f64,
}

pub fn bialgebra_report(
    alg: &LieAlgebra,
    metric: &ScalarProduct,
    sf: &SymplecticSubspace,
    tol: f64,
) -> Result<BialgebraReport> {
    check_metric(alg, metric)?;
    if sf.ambient_dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            what: "symplectic subspace vs algebra",
            expected: alg.dim(),
            got: sf.ambient_dim(),
        });
    }

    // Hypotheses: the subspace is abelian and sits inside the orthogonal
    // subalgebra of the metric.
    let p = sf.dim();
    let margin = tol * (1.0 + alg.max_structure_constant());
    for a in 0..p {
        for c in (a + 1)..p {
            let br = alg.bracket(&sf.subspace().basis_vector(a), &sf.subspace().basis_vector(c))?;
            if linalg::vec_max_abs(&br) > margin {
                return Err(Error::SubspaceNotAbelian { i: a, j: c });
            }
        }
    }
    let orthogonal = flatness::orthogonal_subalgebra(alg, metric, tol)?;
    if !sf.subspace().is_subset_of(&orthogonal, tol) {
        return Err(Error::SubspaceNotContained);
    }

    let r = subspace_form_to_r(alg, sf)?;
    let threshold = yb_threshold(alg, &r, tol);
    let (_, schouten_norm) = schouten(alg, &r)?;
    let dual = dual_bracket(alg, &r)?;
    let dual_connection = dual_connection_check(alg, metric, &r, tol)?;
    let image_abelian = abelian_image_check(alg, metric, &r, tol)?;
    let rpl_defect = rpl_compatibility_defect(alg, metric, &r)?;
    let dual_classification =
        flatness::classify(&dual.algebra, &metric.dual_product(), tol)?;
    let primal_riemann_lie = flatness::classify(alg, metric, tol)?.is_riemann_lie;
    let double_riemann_lie = primal_riemann_lie && dual_classification.is_riemann_lie;

    let rpl_threshold = dual_threshold(alg, metric, &r, tol);
    let certified = schouten_norm <= threshold
        && dual.jacobi_defect <= threshold
        && dual_connection.holds
        && image_abelian
        && rpl_defect <= rpl_threshold
        && dual_classification.is_riemann_lie;

    Ok(BialgebraReport {
        r,
        schouten_norm,
        dual_jacobi_defect: dual.jacobi_defect,
        dual_connection,
        image_abelian,
        rpl_defect,
        dual_classification,
        primal_riemann_lie,
        double_riemann_lie,
        certified,
        threshold,
    })
}

fn unit(n: usize, k: usize) -> DVector<f64> {
    DVector::from_fn(n, |r, _| if r == k { 1.0 } else { 0.0 })
}

fn check_bivector(alg: &LieAlgebra, r: &Bivector) -> Result<usize> {
    if r.dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            what: "bivector vs algebra",
            expected: alg.dim(),
            got: r.dim(),
        });
    }
    Ok(alg.dim())
}

fn check_metric(alg: &LieAlgebra, metric: &ScalarProduct) -> Result<()> {
    if metric.dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            what: "scalar product vs algebra",
            expected: alg.dim(),
            got: metric.dim(),
        });
    }
    Ok(())
}
