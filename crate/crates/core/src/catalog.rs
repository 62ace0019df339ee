//! Named example algebras and seeded random generators.  These feed every
//! property suite in the crate, so determinism matters: all randomness
//! comes from ChaCha8 seeded with the caller's integer, and equal seeds
//! reproduce results bitwise.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::LieAlgebra;
use crate::bivector::{Bivector, SymplecticSubspace};
use crate::error::{Error, Result};
use crate::linalg;
use crate::metric::ScalarProduct;
use crate::subspace::Subspace;

/// A packaged example: an algebra with optional metric, bivector, and
/// symplectic-subspace data, labeled with how it was produced.
#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub seed: Option<u64>,
    pub algebra: LieAlgebra,
    pub metric: Option<ScalarProduct>,
    pub bivector: Option<Bivector>,
    pub symplectic: Option<SymplecticSubspace>,
}

pub const NAMED: &[&str] = &[
    "abelian:<n>",
    "heisenberg3",
    "so3",
    "aff1",
    "e2",
    "u2",
    "direct_sum:<a>+<b>",
];

/// Look up a named algebra; all names yield an identity scalar product.
pub fn named(name: &str) -> Result<Instance> {
    let algebra = named_algebra(name)?;
    let n = algebra.dim();
    Ok(Instance {
        label: name.to_string(),
        seed: None,
        algebra,
        metric: Some(ScalarProduct::identity(n)),
        bivector: None,
        symplectic: None,
    })
}

pub fn named_algebra(name: &str) -> Result<LieAlgebra> {
    if let Some(rest) = name.strip_prefix("abelian:") {
        let n: usize = rest.parse().map_err(|_| Error::UnknownName {
            name: name.to_string(),
        })?;
        return Ok(LieAlgebra::abelian(n));
    }
    if let Some(rest) = name.strip_prefix("direct_sum:") {
        let parts: Vec<&str> = rest.split('+').collect();
        if parts.len() < 2 {
            return Err(Error::UnknownName {
                name: name.to_string(),
            });
        }
        let blocks: Vec<LieAlgebra> = parts
            .iter()
            .map(|p| named_algebra(p))
            .collect::<Result<_>>()?;
        return Ok(direct_sum(&blocks));
    }
    match name {
        "heisenberg3" => LieAlgebra::from_brackets(3, &[(0, 1, vec![(2, 1.0)])], 1e-12),
        "so3" => LieAlgebra::from_brackets(
            3,
            &[
                (0, 1, vec![(2, 1.0)]),
                (1, 2, vec![(0, 1.0)]),
                (0, 2, vec![(1, -1.0)]),
            ],
            1e-12,
        ),
        "aff1" => LieAlgebra::from_brackets(2, &[(0, 1, vec![(1, 1.0)])], 1e-12),
        "e2" => LieAlgebra::semidirect_flat(1, 2, &[vec![1.0]], 0),
        "u2" => LieAlgebra::from_brackets(
            4,
            &[
                (1, 2, vec![(3, 1.0)]),
                (2, 3, vec![(1, 1.0)]),
                (1, 3, vec![(2, -1.0)]),
            ],
            1e-12,
        ),
        _ => Err(Error::UnknownName {
            name: name.to_string(),
        }),
    }
}

/// Block-diagonal sum of algebras on the concatenation of their bases.
pub fn direct_sum(blocks: &[LieAlgebra]) -> LieAlgebra {
    let dim: usize = blocks.iter().map(|b| b.dim()).sum();
    let mut entries = Vec::new();
    let mut offset = 0;
    for b in blocks {
        for i in 0..b.dim() {
            for j in (i + 1)..b.dim() {
                let v = b.basis_bracket(i, j);
                let coeffs: Vec<(usize, f64)> = (0..b.dim())
                    .filter(|&k| v[k] != 0.0)
                    .map(|k| (offset + k, v[k]))
                    .collect();
                if !coeffs.is_empty() {
                    entries.push((offset + i, offset + j, coeffs));
                }
            }
        }
        offset += b.dim();
    }
    LieAlgebra::from_brackets_unchecked(dim, &entries).expect("block indices are in range")
}

/// A flat instance: p commuting rotation generators acting on q Euclidean
/// directions, with the identity metric.  When p >= 2, the even part of the
/// rotation factor is packaged as a symplectic subspace so the instance can
/// feed the bialgebra pipeline.
pub fn random_flat(p: usize, q: usize, seed: u64) -> Result<Instance> {
    if p < 1 || q < 2 {
        return Err(Error::Generation {
            what: format!("flat family needs p >= 1 and q >= 2, got ({}, {})", p, q),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planes = q / 2;
    let fixed = q % 2;
    let freqs: Vec<Vec<f64>> = (0..p)
        .map(|_| (0..planes).map(|_| rng.random_range(-2.0..2.0)).collect())
        .collect();
    let algebra = LieAlgebra::semidirect_flat(p, q, &freqs, fixed)?;
    let n = p + q;

    let symplectic = if p >= 2 {
        let even = p - p % 2;
        let basis = DMatrix::from_fn(n, even, |r, c| if r == c { 1.0 } else { 0.0 });
        let omega = random_symplectic_form(even, &mut rng)?;
        Some(SymplecticSubspace::new(
            Subspace::new(basis, 1e-12)?,
            omega,
            1e-9,
        )?)
    } else {
        None
    };

    Ok(Instance {
        label: format!("flat({},{})", p, q),
        seed: Some(seed),
        algebra,
        metric: Some(ScalarProduct::identity(n)),
        bivector: None,
        symplectic,
    })
}

fn random_symplectic_form(dim: usize, rng: &mut ChaCha8Rng) -> Result<DMatrix<f64>> {
    let mut j = DMatrix::zeros(dim, dim);
    for b in 0..dim / 2 {
        j[(2 * b, 2 * b + 1)] = 1.0;
        j[(2 * b + 1, 2 * b)] = -1.0;
    }
    for _ in 0..64 {
        let m = DMatrix::from_fn(dim, dim, |_, _| rng.sample(StandardNormal));
        let raw = m.transpose() * &j * &m;
        let omega = 0.5 * (&raw - raw.transpose());
        let (smin, smax) = linalg::singular_extremes(&omega);
        if smax > 0.0 && smin > 1e-3 * smax {
            return Ok(omega);
        }
    }
    Err(Error::Generation {
        what: "could not draw a well-conditioned symplectic form".into(),
    })
}

/// Random scalar product with the requested signature: eigenvalues of
/// magnitude in [1/2, 2] with the given signs, conjugated by a random
/// orthogonal matrix.
pub fn random_metric(n: usize, seed: u64, signature: (usize, usize)) -> Result<ScalarProduct> {
    let (plus, minus) = signature;
    if plus + minus != n {
        return Err(Error::Generation {
            what: format!("signature ({}, {}) does not sum to dimension {}", plus, minus, n),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = random_orthogonal(n, &mut rng);
    let diag = DVector::from_fn(n, |k, _| {
        let mag: f64 = rng.random_range(0.5..2.0);
        if k < plus {
            mag
        } else {
            -mag
        }
    });
    let raw = q.transpose() * DMatrix::from_diagonal(&diag) * &q;
    let gram = 0.5 * (&raw + raw.transpose());
    ScalarProduct::new(gram, 1e-9)
}

/// Random bivector, exactly antisymmetric.  With `support = Some(2k)` the
/// bivector is drawn through the subspace-with-form correspondence on a
/// random 2k-dimensional subspace, so its rank is exactly 2k; otherwise it
/// is dense generic.  Dimension 1 admits only the zero bivector.
pub fn random_bivector(n: usize, seed: u64, support: Option<usize>) -> Result<Bivector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n < 2 {
        return Bivector::new(DMatrix::zeros(n, n));
    }
    match support {
        None => {
            let m = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
            Bivector::new(&m - m.transpose())
        }
        Some(k) => {
            if k == 0 || k % 2 != 0 || k > n {
                return Err(Error::Generation {
                    what: format!("support {} must be even, positive, and at most {}", k, n),
                });
            }
            let q = random_orthogonal(n, &mut rng);
            let mut basis = DMatrix::zeros(n, k);
            for c in 0..k {
                basis.set_column(c, &q.column(c));
            }
            let omega = random_symplectic_form(k, &mut rng)?;
            let sf = SymplecticSubspace::new(Subspace::new(basis, 1e-12)?, omega, 1e-9)?;
            crate::poisson::subspace_form_to_r(&LieAlgebra::abelian(n), &sf)
        }
    }
}

/// Random valid Lie algebra of the given dimension: a direct sum of small
/// named blocks conjugated by a random orthogonal change of basis.  The
/// Jacobi identity survives the conjugation up to roundoff.
pub fn random_algebra(n: usize, seed: u64) -> LieAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks: Vec<LieAlgebra> = Vec::new();
    let mut left = n;
    while left > 0 {
        let choices: &[&str] = match left {
            1 => &["abelian:1"],
            2 => &["abelian:2", "aff1"],
            _ => &["abelian:1", "aff1", "heisenberg3", "so3", "e2"],
        };
        let pick = choices[rng.random_range(0..choices.len())];
        let b = named_algebra(pick).expect("catalog names are valid");
        left -= b.dim();
        blocks.push(b);
    }
    let sum = direct_sum(&blocks);
    let p = random_orthogonal(n, &mut rng);
    let pt = p.transpose();
    let mut entries = Vec::new();
    for i in 0..n {
        let ci = DVector::from(pt.column(i));
        for j in (i + 1)..n {
            let cj = DVector::from(pt.column(j));
            let v = &p * sum.bracket(&ci, &cj).expect("dimensions match");
            let coeffs: Vec<(usize, f64)> = (0..n)
                .filter(|&k| v[k] != 0.0)
                .map(|k| (k, v[k]))
                .collect();
            if !coeffs.is_empty() {
                entries.push((i, j, coeffs));
            }
        }
    }
    LieAlgebra::from_brackets(n, &entries, 1e-9).expect("conjugation preserves Jacobi")
}

fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let m = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = m.qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..n {
        if r[(k, k)] < 0.0 {
            for row in 0..n {
                q[(row, k)] = -q[(row, k)];
            }
        }
    }
    q
}

/// Outcome of a randomized search for a flat metric of prescribed
/// signature: the best defect seen, the Gram matrix achieving it, and how
/// many candidate metrics were evaluated.
#[derive(Debug, Clone)]
pub struct MetricSearch {
    pub best_defect: f64,
    pub best_gram: DMatrix<f64>,
    pub evaluations: usize,
}

/// Hill-climb over Gram matrices L^T diag(signs) L of the requested
/// signature, minimizing the flatness residual of the algebra.  Reports the
/// best point found; never fails on a fruitless search.
pub fn search_flat_metric(
    alg: &LieAlgebra,
    signature: (usize, usize),
    restarts: usize,
    steps: usize,
    seed: u64,
) -> Result<MetricSearch> {
    let n = alg.dim();
    if signature.0 + signature.1 != n {
        return Err(Error::Generation {
            what: format!(
                "signature ({}, {}) does not sum to dimension {}",
                signature.0, signature.1, n
            ),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let signs = DVector::from_fn(n, |k, _| if k < signature.0 { 1.0 } else { -1.0 });
    let sign_mat = DMatrix::from_diagonal(&signs);

    let objective = |l: &DMatrix<f64>| -> Option<(f64, f64, DMatrix<f64>)> {
        let raw = l.transpose() * &sign_mat * l;
        let gram = 0.5 * (&raw + raw.transpose());
        let sp = ScalarProduct::new(gram.clone(), 1e-9).ok()?;
        let conn = crate::connection::levi_civita(alg, &sp, 1e-6).ok()?;
        let mut sum_sq = 0.0;
        let mut max_abs = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let aij = DVector::from(conn.basis_matrix(i).column(j));
                for k in 0..n {
                    let term = -(alg.ad_basis(k) * &aij)
                        + alg.ad_basis(i) * DVector::from(conn.basis_matrix(k).column(j));
                    for x in term.iter() {
                        sum_sq += x * x;
                        max_abs = max_abs.max(x.abs());
                    }
                }
            }
        }
        Some((sum_sq, max_abs, gram))
    };

    let mut best_defect = f64::INFINITY;
    let mut best_gram = DMatrix::identity(n, n);
    let mut evaluations = 0;

    for _ in 0..restarts.max(1) {
        let mut l = DMatrix::identity(n, n)
            + 0.4 * DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
        evaluations += 1;
        let mut current = match objective(&l) {
            Some((s, m, g)) => {
                if m < best_defect {
                    best_defect = m;
                    best_gram = g;
                }
                s
            }
            None => continue,
        };
        let mut step = 0.3;
        for _ in 0..steps {
            let row = rng.random_range(0..n);
            let col = rng.random_range(0..n);
            let delta: f64 = step * rng.sample::<f64, _>(StandardNormal);
            let mut candidate = l.clone();
            candidate[(row, col)] += delta;
            evaluations += 1;
            match objective(&candidate) {
                Some((s, m, g)) if s < current => {
                    current = s;
                    l = candidate;
                    step = (step * 1.5).min(0.5);
                    if m < best_defect {
                        best_defect = m;
                        best_gram = g;
                    }
                }
                _ => {
                    step *= 0.7;
                    if step < 1e-13 {
                        break;
                    }
                }
            }
        }
    }

    Ok(MetricSearch {
        best_defect,
        best_gram,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flatness;

    #[test]
    fn named_catalog_is_valid() {
        for name in ["heisenberg3", "so3", "aff1", "e2", "u2", "abelian:4"] {
            let inst = named(name).unwrap();
            assert!(inst.algebra.jacobi_defect() < 1e-12, "{name}");
            assert!(inst.metric.is_some());
        }
        assert!(matches!(
            named("su5"),
            Err(Error::UnknownName { .. })
        ));
        assert!(matches!(
            named("abelian:x"),
            Err(Error::UnknownName { .. })
        ));
    }

    #[test]
    fn direct_sum_concatenates() {
        let inst = named("direct_sum:so3+abelian:2").unwrap();
        assert_eq!(inst.algebra.dim(), 5);
        assert_eq!(inst.algebra.jacobi_defect(), 0.0);
        assert_eq!(inst.algebra.center(1e-9).dim(), 2);

        let three = named("direct_sum:aff1+abelian:1+heisenberg3").unwrap();
        assert_eq!(three.algebra.dim(), 6);
    }

    #[test]
    fn random_flat_is_deterministic_and_flat() {
        let a = random_flat(2, 5, 7).unwrap();
        let b = random_flat(2, 5, 7).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(a.algebra.basis_bracket(i, j), b.algebra.basis_bracket(i, j));
            }
        }
        let report = flatness::classify(&a.algebra, a.metric.as_ref().unwrap(), 1e-9).unwrap();
        assert!(report.is_riemann_lie);
        assert!(a.symplectic.is_some());
        assert!(random_flat(1, 4, 0).unwrap().symplectic.is_none());
        assert!(random_flat(1, 0, 0).is_err());
    }

    #[test]
    fn random_metric_has_requested_signature() {
        let sp = random_metric(4, 11, (3, 1)).unwrap();
        assert_eq!(sp.signature(), (3, 1));
        let sp2 = random_metric(4, 11, (3, 1)).unwrap();
        assert_eq!(sp.gram(), sp2.gram());
        assert!(random_metric(4, 11, (2, 1)).is_err());
    }

    #[test]
    fn random_bivector_support_controls_rank() {
        let r = random_bivector(5, 3, Some(2)).unwrap();
        assert_eq!(r.matrix(), &-r.matrix().transpose());
        let rank = linalg::orthonormal_span(r.matrix(), 1e-9).ncols();
        assert_eq!(rank, 2);

        let dense = random_bivector(5, 3, None).unwrap();
        let rank = linalg::orthonormal_span(dense.matrix(), 1e-9).ncols();
        assert_eq!(rank, 4);

        assert!(random_bivector(1, 0, None).unwrap().is_zero());
        assert!(random_bivector(5, 0, Some(3)).is_err());
    }

    #[test]
    fn random_algebra_satisfies_jacobi() {
        for seed in 0..5 {
            let alg = random_algebra(6, seed);
            assert!(alg.jacobi_defect() < 1e-12);
        }
        let a = random_algebra(5, 9);
        let b = random_algebra(5, 9);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(a.basis_bracket(i, j), b.basis_bracket(i, j));
            }
        }
    }

    #[test]
    fn metric_search_improves_on_heisenberg() {
        let alg = named_algebra("heisenberg3").unwrap();
        let search = search_flat_metric(&alg, (2, 1), 4, 300, 5).unwrap();
        assert!(search.best_defect < 0.5);
        assert!(search.evaluations > 0);
    }
}
