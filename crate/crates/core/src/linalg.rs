//! Small dense linear-algebra helpers on top of nalgebra.
//!
//! Rank decisions are made relative to the largest singular value:
//! sigma is treated as zero when sigma <= tol * sigma_max.

use nalgebra::{DMatrix, DVector};

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

pub fn vec_max_abs(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

/// Orthonormal basis for the column span of `m`, as columns of the result.
pub fn orthonormal_span(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let n = m.nrows();
    if m.ncols() == 0 || max_abs(m) == 0.0 {
        return DMatrix::zeros(n, 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("svd requested u");
    let smax = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let cols: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > tol * smax)
        .collect();
    let mut out = DMatrix::zeros(n, cols.len());
    for (c, &k) in cols.iter().enumerate() {
        out.set_column(c, &u.column(k));
    }
    out
}

/// Orthonormal basis for the kernel of `m` (viewed as a map from R^ncols).
pub fn kernel(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let n = m.ncols();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    if m.nrows() == 0 || max_abs(m) == 0.0 {
        return DMatrix::identity(n, n);
    }
    // Pad with zero rows so the thin SVD still produces a full n x n V.
    let work = if m.nrows() < n {
        let mut padded = DMatrix::zeros(n, n);
        padded.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
        padded
    } else {
        m.clone()
    };
    let svd = work.svd(false, true);
    let v_t = svd.v_t.expect("svd requested v_t");
    let smax = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let rows: Vec<usize> = (0..n)
        .filter(|&k| svd.singular_values.get(k).copied().unwrap_or(0.0) <= tol * smax)
        .collect();
    let mut out = DMatrix::zeros(n, rows.len());
    for (c, &k) in rows.iter().enumerate() {
        out.set_column(c, &v_t.row(k).transpose());
    }
    out
}

/// Smallest and largest singular values of `m`.
pub fn singular_extremes(m: &DMatrix<f64>) -> (f64, f64) {
    if m.ncols() == 0 || m.nrows() == 0 {
        return (0.0, 0.0);
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0_f64, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    // A wide matrix hides ncols - nrows implicit zero singular values.
    let smin = if m.nrows() < m.ncols() { 0.0 } else { smin };
    (smin, smax)
}

/// Columns of `mats` stacked vertically, one block per matrix.
pub fn vstack(mats: &[DMatrix<f64>]) -> DMatrix<f64> {
    let cols = mats.first().map(|m| m.ncols()).unwrap_or(0);
    let rows: usize = mats.iter().map(|m| m.nrows()).sum();
    let mut out = DMatrix::zeros(rows, cols);
    let mut at = 0;
    for m in mats {
        out.view_mut((at, 0), (m.nrows(), m.ncols())).copy_from(m);
        at += m.nrows();
    }
    out
}
