//! Finite-dimensional real Lie algebras given by structure constants on a
//! fixed basis e_0, ..., e_{n-1}.
//!
//! The algebra is stored through the adjoint matrices ad_i of the basis
//! vectors, filled symmetrically from the lower<upper bracket entries so
//! that antisymmetry of the bracket holds exactly, not just within
//! tolerance.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;
use crate::subspace::Subspace;

#[derive(Debug, Clone)]
pub struct LieAlgebra {
    dim: usize,
    ad: Vec<DMatrix<f64>>,
}

/// Sign behaviour of a symmetric bilinear form, decided from its
/// eigenvalues at a relative threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    Zero,
    PositiveDefinite,
    PositiveSemidefinite,
    NegativeDefinite,
    NegativeSemidefinite,
    Indefinite,
}

impl std::fmt::Display for Definiteness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Definiteness::Zero => "zero",
            Definiteness::PositiveDefinite => "positive-definite",
            Definiteness::PositiveSemidefinite => "positive-semidefinite",
            Definiteness::NegativeDefinite => "negative-definite",
            Definiteness::NegativeSemidefinite => "negative-semidefinite",
            Definiteness::Indefinite => "indefinite",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubspaceFlags {
    pub is_subalgebra: bool,
    pub is_ideal: bool,
    pub is_abelian: bool,
}

/// One bracket relation [e_i, e_j] = sum_k c_k e_k with i < j.
pub type BracketEntry = (usize, usize, Vec<(usize, f64)>);

impl LieAlgebra {
    /// Build from bracket entries on pairs i < j and check the Jacobi
    /// identity within `tol`.
    pub fn from_brackets(dim: usize, entries: &[BracketEntry], tol: f64) -> Result<Self> {
        let alg = Self::from_brackets_unchecked(dim, entries)?;
        let defect = alg.jacobi_defect();
        let scale = alg.max_structure_constant();
        if defect > tol * (1.0 + scale * scale) {
            return Err(Error::JacobiViolation { defect, tol });
        }
        Ok(alg)
    }

    /// Same filling as `from_brackets` but without the Jacobi check; used
    /// for brackets that are not expected to satisfy Jacobi, such as dual
    /// brackets induced by a bivector that fails the Yang-Baxter equation.
    pub fn from_brackets_unchecked(dim: usize, entries: &[BracketEntry]) -> Result<Self> {
        let mut ad = vec![DMatrix::zeros(dim, dim); dim];
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, coeffs) in entries {
            let (i, j) = (*i, *j);
            if i >= j || j >= dim {
                return Err(Error::BracketIndex { i, j, dim });
            }
            if !seen.insert((i, j)) {
                return Err(Error::DuplicateBracket { i, j });
            }
            for &(k, c) in coeffs {
                if k >= dim {
                    return Err(Error::BracketIndex { i: k, j, dim });
                }
                ad[i][(k, j)] = c;
                ad[j][(k, i)] = -c;
            }
        }
        Ok(LieAlgebra { dim, ad })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            ad: vec![DMatrix::zeros(dim, dim); dim],
        }
    }

    /// Abelian algebra of dimension p acting on R^q by commuting rotations:
    /// generator a turns plane b at rate `freqs[a][b]`, and `fixed` trailing
    /// directions are annihilated.  Requires q = 2 * (plane count) + fixed.
    pub fn semidirect_flat(p: usize, q: usize, freqs: &[Vec<f64>], fixed: usize) -> Result<Self> {
        if freqs.len() != p {
            return Err(Error::Shape {
                what: format!("frequency table has {} rows, expected p = {}", freqs.len(), p),
            });
        }
        let m = if p > 0 {
            let m = freqs[0].len();
            if freqs.iter().any(|row| row.len() != m) {
                return Err(Error::Shape {
                    what: "frequency table rows have unequal lengths".into(),
                });
            }
            m
        } else {
            if fixed > q || (q - fixed) % 2 != 0 {
                return Err(Error::Shape {
                    what: format!("q - fixed = {} - {} must be even and nonnegative", q, fixed),
                });
            }
            (q - fixed) / 2
        };
        if q != 2 * m + fixed {
            return Err(Error::Shape {
                what: format!("q = {} but 2 * planes + fixed = {}", q, 2 * m + fixed),
            });
        }
        let dim = p + q;
        let mut entries = Vec::new();
        for (a, row) in freqs.iter().enumerate() {
            for (b, &rate) in row.iter().enumerate() {
                if rate != 0.0 {
                    let x = p + 2 * b;
                    let y = p + 2 * b + 1;
                    entries.push((a, x, vec![(y, rate)]));
                    entries.push((a, y, vec![(x, -rate)]));
                }
            }
        }
        Self::from_brackets_unchecked(dim, &entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient of e_k in [e_i, e_j].
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.ad[i][(k, j)]
    }

    pub fn max_structure_constant(&self) -> f64 {
        self.ad.iter().map(linalg::max_abs).fold(0.0, f64::max)
    }

    /// Adjoint matrix of the basis vector e_i.
    pub fn ad_basis(&self, i: usize) -> &DMatrix<f64> {
        &self.ad[i]
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> DVector<f64> {
        DVector::from(self.ad[i].column(j))
    }

    pub fn bracket(&self, u: &DVector<f64>, v: &DVector<f64>) -> Result<DVector<f64>> {
        Ok(self.ad_matrix(u)? * self.check_dim(v)?)
    }

    /// Matrix of ad_u = [u, .].
    pub fn ad_matrix(&self, u: &DVector<f64>) -> Result<DMatrix<f64>> {
        self.check_dim(u)?;
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            if u[i] != 0.0 {
                m += u[i] * &self.ad[i];
            }
        }
        Ok(m)
    }

    fn check_dim<'a>(&self, v: &'a DVector<f64>) -> Result<&'a DVector<f64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                what: "vector in Lie algebra operation",
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(v)
    }

    /// Largest entry of any Jacobi cycle over basis triples i < j < k.
    pub fn jacobi_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let bij = self.basis_bracket(i, j);
                for k in (j + 1)..self.dim {
                    let term = &self.ad[k] * &bij
                        + &self.ad[i] * self.basis_bracket(j, k)
                        + &self.ad[j] * self.basis_bracket(k, i);
                    worst = worst.max(linalg::vec_max_abs(&term));
                }
            }
        }
        worst
    }

    /// Kernel of u -> ad_u, i.e. all u commuting with the whole algebra.
    pub fn center(&self, tol: f64) -> Subspace {
        let n = self.dim;
        let mut m = DMatrix::zeros(n * n, n);
        for i in 0..n {
            for (r, x) in self.ad[i].iter().enumerate() {
                m[(r, i)] = *x;
            }
        }
        Subspace::from_orthonormal(n, linalg::kernel(&m, tol))
    }

    /// Span of all basis brackets [e_i, e_j].
    pub fn derived_algebra(&self, tol: f64) -> Subspace {
        let mut vs = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                vs.push(self.basis_bracket(i, j));
            }
        }
        Subspace::span(self.dim, &vs, tol)
    }

    /// Killing form B(x, y) = tr(ad_x ad_y) on the basis, together with its
    /// definiteness verdict.
    pub fn killing_form(&self, tol: f64) -> (DMatrix<f64>, Definiteness) {
        let n = self.dim;
        let mut b = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = (&self.ad[i] * &self.ad[j]).trace();
                b[(i, j)] = t;
                b[(j, i)] = t;
            }
        }
        let eig = b.clone().symmetric_eigen();
        let lmax = eig.eigenvalues.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
        let verdict = if lmax == 0.0 {
            Definiteness::Zero
        } else {
            let tau = tol * lmax;
            let pos = eig.eigenvalues.iter().filter(|&&l| l > tau).count();
            let neg = eig.eigenvalues.iter().filter(|&&l| l < -tau).count();
            let nil = n - pos - neg;
            match (pos, neg, nil) {
                (_, 0, 0) => Definiteness::PositiveDefinite,
                (0, _, 0) => Definiteness::NegativeDefinite,
                (0, 0, _) => Definiteness::Zero,
                (_, 0, _) => Definiteness::PositiveSemidefinite,
                (0, _, _) => Definiteness::NegativeSemidefinite,
                _ => Definiteness::Indefinite,
            }
        };
        (b, verdict)
    }

    /// Whether the given subspace is a subalgebra, an ideal, and abelian.
    pub fn subspace_flags(&self, s: &Subspace, tol: f64) -> SubspaceFlags {
        let basis = s.orthonormal_basis();
        let p = basis.ncols();
        let margin = tol * (1.0 + self.max_structure_constant());
        let mut is_subalgebra = true;
        let mut is_abelian = true;
        for a in 0..p {
            let va = DVector::from(basis.column(a));
            for b in (a + 1)..p {
                let vb = DVector::from(basis.column(b));
                let br = self.bracket(&va, &vb).expect("basis vectors have ambient dim");
                if linalg::vec_max_abs(&br) > margin {
                    is_abelian = false;
                }
                if !s.contains(&br, tol) {
                    is_subalgebra = false;
                }
            }
        }
        let mut is_ideal = true;
        'outer: for i in 0..self.dim {
            for b in 0..p {
                let vb = DVector::from(basis.column(b));
                let br = &self.ad[i] * &vb;
                if !s.contains(&br, tol) {
                    is_ideal = false;
                    break 'outer;
                }
            }
        }
        SubspaceFlags {
            is_subalgebra: is_subalgebra || is_ideal,
            is_ideal,
            is_abelian,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_brackets(3, &[(0, 1, vec![(2, 1.0)])], 1e-9).unwrap()
    }

    fn so3() -> LieAlgebra {
        LieAlgebra::from_brackets(
            3,
            &[
                (0, 1, vec![(2, 1.0)]),
                (1, 2, vec![(0, 1.0)]),
                (0, 2, vec![(1, -1.0)]),
            ],
            1e-9,
        )
        .unwrap()
    }

    #[test]
    fn bracket_is_exactly_antisymmetric() {
        let alg = so3();
        for i in 0..3 {
            for j in 0..3 {
                let a = alg.basis_bracket(i, j);
                let b = alg.basis_bracket(j, i);
                assert_eq!(a, -b);
            }
        }
    }

    #[test]
    fn heisenberg_center_and_derived() {
        let alg = heisenberg();
        assert_eq!(alg.jacobi_defect(), 0.0);
        let z = alg.center(1e-9);
        let d = alg.derived_algebra(1e-9);
        assert_eq!(z.dim(), 1);
        assert!(z.equals(&d, 1e-9));
        assert!(z.contains(&DVector::from_column_slice(&[0.0, 0.0, 1.0]), 1e-9));
    }

    #[test]
    fn so3_killing_is_minus_two_identity() {
        let alg = so3();
        let (b, verdict) = alg.killing_form(1e-9);
        assert!(crate::linalg::max_abs(&(&b + 2.0 * DMatrix::identity(3, 3))) < 1e-12);
        assert_eq!(verdict, Definiteness::NegativeDefinite);
        assert_eq!(alg.center(1e-9).dim(), 0);
        assert_eq!(alg.derived_algebra(1e-9).dim(), 3);
    }

    #[test]
    fn heisenberg_killing_is_zero() {
        let (b, verdict) = heisenberg().killing_form(1e-9);
        assert_eq!(crate::linalg::max_abs(&b), 0.0);
        assert_eq!(verdict, Definiteness::Zero);
    }

    #[test]
    fn affine_line_killing_is_positive_semidefinite() {
        let alg = LieAlgebra::from_brackets(2, &[(0, 1, vec![(1, 1.0)])], 1e-9).unwrap();
        let (b, verdict) = alg.killing_form(1e-9);
        assert_eq!(b[(0, 0)], 1.0);
        assert_eq!(verdict, Definiteness::PositiveSemidefinite);
    }

    #[test]
    fn abelian_everything_degenerates() {
        let alg = LieAlgebra::abelian(4);
        assert_eq!(alg.center(1e-9).dim(), 4);
        assert_eq!(alg.derived_algebra(1e-9).dim(), 0);
        assert_eq!(alg.killing_form(1e-9).1, Definiteness::Zero);
    }

    #[test]
    fn jacobi_violation_is_rejected() {
        let bad = LieAlgebra::from_brackets(
            3,
            &[(0, 1, vec![(2, 1.0)]), (0, 2, vec![(0, 1.0)])],
            1e-9,
        );
        assert!(matches!(bad, Err(Error::JacobiViolation { .. })));
    }

    #[test]
    fn two_cyclic_relations_without_the_third_still_satisfy_jacobi() {
        // [e0,e1]=e2 and [e1,e2]=e0 alone make e1 act as a rotation on the
        // (e0,e2) plane, so the cyclic sum vanishes; dropping one relation
        // from the cyclic triple does not break the identity.  Feeding e1
        // back instead does: [e0,[e1,e2]] = [e0,e1] = e2.
        let still_lie = LieAlgebra::from_brackets_unchecked(
            3,
            &[(0, 1, vec![(2, 1.0)]), (1, 2, vec![(0, 1.0)])],
        )
        .unwrap();
        assert_eq!(still_lie.jacobi_defect(), 0.0);

        let not_lie = LieAlgebra::from_brackets_unchecked(
            3,
            &[(0, 1, vec![(2, 1.0)]), (1, 2, vec![(1, 1.0)])],
        )
        .unwrap();
        assert_eq!(not_lie.jacobi_defect(), 1.0);
    }

    #[test]
    fn bad_bracket_indices_are_rejected() {
        assert!(matches!(
            LieAlgebra::from_brackets(3, &[(1, 1, vec![(0, 1.0)])], 1e-9),
            Err(Error::BracketIndex { .. })
        ));
        assert!(matches!(
            LieAlgebra::from_brackets(3, &[(0, 1, vec![(2, 1.0)]), (0, 1, vec![])], 1e-9),
            Err(Error::DuplicateBracket { .. })
        ));
    }

    #[test]
    fn subspace_flags_on_heisenberg() {
        let alg = heisenberg();
        let center = alg.center(1e-9);
        let flags = alg.subspace_flags(&center, 1e-9);
        assert!(flags.is_subalgebra && flags.is_ideal && flags.is_abelian);

        let plane = crate::subspace::Subspace::span(
            3,
            &[
                DVector::from_column_slice(&[1.0, 0.0, 0.0]),
                DVector::from_column_slice(&[0.0, 1.0, 0.0]),
            ],
            1e-9,
        );
        let flags = alg.subspace_flags(&plane, 1e-9);
        assert!(!flags.is_subalgebra && !flags.is_ideal && !flags.is_abelian);
    }

    #[test]
    fn semidirect_flat_matches_euclidean_motion_algebra() {
        let alg = LieAlgebra::semidirect_flat(1, 2, &[vec![1.0]], 0).unwrap();
        let e2 = catalog::named("e2").unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(alg.basis_bracket(i, j), e2.algebra.basis_bracket(i, j));
            }
        }
        assert_eq!(alg.jacobi_defect(), 0.0);
    }

    #[test]
    fn semidirect_flat_degenerate_shapes() {
        let abelian = LieAlgebra::semidirect_flat(0, 3, &[], 1).unwrap();
        assert_eq!(abelian.max_structure_constant(), 0.0);
        assert_eq!(abelian.dim(), 3);
        assert!(LieAlgebra::semidirect_flat(2, 3, &[vec![1.0], vec![2.0]], 0).is_err());
        assert!(LieAlgebra::semidirect_flat(1, 2, &[vec![1.0, 2.0]], 0).is_err());
    }
}
