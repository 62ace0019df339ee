//! Python bindings for the Lie-algebra flatness and bialgebra toolkit.
//!
//! Matrices cross the boundary as lists of rows and vectors as flat
//! lists.  Analysis results come back as JSON strings in the same shape
//! the command-line tool emits, ready for `json.loads`.

use nalgebra::{DMatrix, DVector};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use rlie_core::{io, report, Error, DEFAULT_TOL};

fn perr(e: Error) -> PyErr {
    match e {
        Error::Io(inner) => inner.into(),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn tol_or_default(tol: Option<f64>) -> f64 {
    tol.unwrap_or(DEFAULT_TOL)
}

fn rows_to_matrix(rows: &[Vec<f64>], what: &str) -> PyResult<DMatrix<f64>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return Err(PyValueError::new_err(format!("{what}: empty matrix")));
    }
    if rows.iter().any(|row| row.len() != ncols) {
        return Err(PyValueError::new_err(format!(
            "{what}: rows have unequal lengths"
        )));
    }
    Ok(DMatrix::from_fn(nrows, ncols, |r, c| rows[r][c]))
}

/// Basis vectors given as rows, assembled into the column-per-vector
/// matrix the subspace type stores.
fn rows_to_subspace(rows: &[Vec<f64>], tol: f64) -> PyResult<rlie_core::Subspace> {
    let m = rows_to_matrix(rows, "subspace basis")?;
    rlie_core::Subspace::new(m.transpose(), tol).map_err(perr)
}

fn to_json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string_pretty(value)
        .map_err(|e| PyValueError::new_err(format!("serialization failed: {e}")))
}

/// A finite-dimensional real Lie algebra on a fixed basis.
#[pyclass(frozen, skip_from_py_object, name = "LieAlgebra")]
struct PyLieAlgebra {
    inner: rlie_core::LieAlgebra,
}

#[pymethods]
impl PyLieAlgebra {
    /// Build from bracket entries `(i, j, [(k, c), ...])` with i < j and
    /// check the Jacobi identity within `tol`.
    #[new]
    #[pyo3(signature = (dim, brackets, tol = None))]
    fn new(dim: usize, brackets: Vec<rlie_core::BracketEntry>, tol: Option<f64>) -> PyResult<Self> {
        let inner = rlie_core::LieAlgebra::from_brackets(dim, &brackets, tol_or_default(tol))
            .map_err(perr)?;
        Ok(PyLieAlgebra { inner })
    }

    /// Build without the Jacobi check; pair with `jacobi_defect`.
    #[staticmethod]
    fn unchecked(dim: usize, brackets: Vec<rlie_core::BracketEntry>) -> PyResult<Self> {
        let inner =
            rlie_core::LieAlgebra::from_brackets_unchecked(dim, &brackets).map_err(perr)?;
        Ok(PyLieAlgebra { inner })
    }

    /// Look up a catalog algebra, e.g. "so3", "heisenberg3", "abelian:4".
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        Ok(PyLieAlgebra {
            inner: rlie_core::named_algebra(name).map_err(perr)?,
        })
    }

    #[staticmethod]
    fn abelian(dim: usize) -> Self {
        PyLieAlgebra {
            inner: rlie_core::LieAlgebra::abelian(dim),
        }
    }

    /// Seeded random structure constants; equal seeds reproduce bitwise.
    #[staticmethod]
    fn random(dim: usize, seed: u64) -> Self {
        PyLieAlgebra {
            inner: rlie_core::random_algebra(dim, seed),
        }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn jacobi_defect(&self) -> f64 {
        self.inner.jacobi_defect()
    }

    fn structure_constant(&self, i: usize, j: usize, k: usize) -> PyResult<f64> {
        let n = self.inner.dim();
        if i >= n || j >= n || k >= n {
            return Err(PyValueError::new_err(format!(
                "index out of range for dimension {n}"
            )));
        }
        Ok(self.inner.structure_constant(i, j, k))
    }

    /// Adjoint matrix of the i-th basis vector, as rows.
    fn ad(&self, i: usize) -> PyResult<Vec<Vec<f64>>> {
        if i >= self.inner.dim() {
            return Err(PyValueError::new_err(format!(
                "index {i} out of range for dimension {}",
                self.inner.dim()
            )));
        }
        Ok(io::matrix_to_rows(self.inner.ad_basis(i)))
    }

    fn bracket(&self, u: Vec<f64>, v: Vec<f64>) -> PyResult<Vec<f64>> {
        let w = self
            .inner
            .bracket(&DVector::from_vec(u), &DVector::from_vec(v))
            .map_err(perr)?;
        Ok(w.iter().cloned().collect())
    }

    /// Center, derived algebra, and Killing form as a JSON string.
    #[pyo3(signature = (tol = None))]
    fn structure(&self, tol: Option<f64>) -> PyResult<String> {
        to_json(&report::structure_json(&self.inner, tol_or_default(tol)))
    }

    fn __repr__(&self) -> String {
        format!("LieAlgebra(dim={})", self.inner.dim())
    }
}

/// A symmetric nondegenerate bilinear form on the algebra's basis.
#[pyclass(frozen, skip_from_py_object, name = "ScalarProduct")]
struct PyScalarProduct {
    inner: rlie_core::ScalarProduct,
}

#[pymethods]
impl PyScalarProduct {
    #[new]
    #[pyo3(signature = (gram, tol = None))]
    fn new(gram: Vec<Vec<f64>>, tol: Option<f64>) -> PyResult<Self> {
        let m = rows_to_matrix(&gram, "metric")?;
        Ok(PyScalarProduct {
            inner: rlie_core::ScalarProduct::new(m, tol_or_default(tol)).map_err(perr)?,
        })
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        PyScalarProduct {
            inner: rlie_core::ScalarProduct::identity(n),
        }
    }

    /// Seeded random metric of the given signature (default positive
    /// definite).
    #[staticmethod]
    #[pyo3(signature = (n, seed, signature = None))]
    fn random(n: usize, seed: u64, signature: Option<(usize, usize)>) -> PyResult<Self> {
        let sig = signature.unwrap_or((n, 0));
        Ok(PyScalarProduct {
            inner: rlie_core::random_metric(n, seed, sig).map_err(perr)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn gram(&self) -> Vec<Vec<f64>> {
        io::matrix_to_rows(self.inner.gram())
    }

    /// Counts of positive and negative eigenvalues.
    fn signature(&self) -> (usize, usize) {
        self.inner.signature()
    }

    fn is_riemannian(&self) -> bool {
        self.inner.is_riemannian()
    }

    fn inner_product(&self, u: Vec<f64>, v: Vec<f64>) -> PyResult<f64> {
        let n = self.inner.dim();
        if u.len() != n || v.len() != n {
            return Err(PyValueError::new_err(format!(
                "vectors must have length {n}"
            )));
        }
        Ok(self
            .inner
            .inner(&DVector::from_vec(u), &DVector::from_vec(v)))
    }

    fn __repr__(&self) -> String {
        let (p, q) = self.inner.signature();
        format!("ScalarProduct(dim={}, signature=({p}, {q}))", self.inner.dim())
    }
}

/// An antisymmetric bivector, stored as its matrix of coefficients.
#[pyclass(frozen, skip_from_py_object, name = "Bivector")]
struct PyBivector {
    inner: rlie_core::Bivector,
}

#[pymethods]
impl PyBivector {
    #[new]
    fn new(matrix: Vec<Vec<f64>>) -> PyResult<Self> {
        let m = rows_to_matrix(&matrix, "bivector")?;
        Ok(PyBivector {
            inner: rlie_core::Bivector::new(m).map_err(perr)?,
        })
    }

    /// Build from upper-triangle entries `(i, j, v)` with i < j.
    #[staticmethod]
    fn from_entries(dim: usize, entries: Vec<(usize, usize, f64)>) -> PyResult<Self> {
        Ok(PyBivector {
            inner: rlie_core::Bivector::from_entries(dim, &entries).map_err(perr)?,
        })
    }

    /// Seeded random bivector, optionally of bounded rank.
    #[staticmethod]
    #[pyo3(signature = (dim, seed, support = None))]
    fn random(dim: usize, seed: u64, support: Option<usize>) -> PyResult<Self> {
        Ok(PyBivector {
            inner: rlie_core::random_bivector(dim, seed, support).map_err(perr)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn matrix(&self) -> Vec<Vec<f64>> {
        io::matrix_to_rows(self.inner.matrix())
    }

    fn entry(&self, i: usize, j: usize) -> PyResult<f64> {
        let n = self.inner.dim();
        if i >= n || j >= n {
            return Err(PyValueError::new_err(format!(
                "index out of range for dimension {n}"
            )));
        }
        Ok(self.inner.entry(i, j))
    }

    fn __repr__(&self) -> String {
        format!("Bivector(dim={})", self.inner.dim())
    }
}

/// An even-dimensional subspace carrying a nondegenerate antisymmetric
/// form, given by basis vectors (as rows) and the form's matrix on them.
#[pyclass(frozen, skip_from_py_object, name = "SymplecticSubspace")]
struct PySymplecticSubspace {
    inner: rlie_core::SymplecticSubspace,
}

#[pymethods]
impl PySymplecticSubspace {
    #[new]
    #[pyo3(signature = (basis, omega, tol = None))]
    fn new(basis: Vec<Vec<f64>>, omega: Vec<Vec<f64>>, tol: Option<f64>) -> PyResult<Self> {
        let tol = tol_or_default(tol);
        let subspace = rows_to_subspace(&basis, tol)?;
        let form = rows_to_matrix(&omega, "subspace form")?;
        Ok(PySymplecticSubspace {
            inner: rlie_core::SymplecticSubspace::new(subspace, form, tol).map_err(perr)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    /// Basis vectors as rows.
    fn basis(&self) -> Vec<Vec<f64>> {
        report::basis_rows(self.inner.subspace())
    }

    fn omega(&self) -> Vec<Vec<f64>> {
        io::matrix_to_rows(self.inner.omega())
    }

    fn __repr__(&self) -> String {
        format!(
            "SymplecticSubspace(dim={}, ambient_dim={})",
            self.inner.dim(),
            self.inner.ambient_dim()
        )
    }
}

/// A packaged example in the instance file format: algebra plus optional
/// metric, bivector, and subspace sections.
#[pyclass(frozen, skip_from_py_object, name = "Instance")]
struct PyInstance {
    file: io::InstanceFile,
}

#[pymethods]
impl PyInstance {
    /// Parse the TOML instance format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyInstance {
            file: io::parse_str(text).map_err(perr)?,
        })
    }

    /// A catalog algebra with its identity scalar product.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        let inst = rlie_core::named(name).map_err(perr)?;
        Ok(PyInstance {
            file: io::InstanceFile::from_instance(&inst),
        })
    }

    /// Seeded random flat instance: `p` commuting rotation generators
    /// acting on `q` Euclidean directions, with the identity metric.
    #[staticmethod]
    fn random_flat(p: usize, q: usize, seed: u64) -> PyResult<Self> {
        let inst = rlie_core::random_flat(p, q, seed).map_err(perr)?;
        Ok(PyInstance {
            file: io::InstanceFile::from_instance(&inst),
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.file.name.clone()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.file.dim
    }

    /// Canonical text form; parsing it back reproduces the instance.
    fn text(&self) -> String {
        io::canonical_string(&self.file)
    }

    #[pyo3(signature = (tol = None))]
    fn algebra(&self, tol: Option<f64>) -> PyResult<PyLieAlgebra> {
        Ok(PyLieAlgebra {
            inner: self.file.to_algebra(tol_or_default(tol)).map_err(perr)?,
        })
    }

    #[pyo3(signature = (tol = None))]
    fn metric(&self, tol: Option<f64>) -> PyResult<Option<PyScalarProduct>> {
        Ok(self
            .file
            .to_metric(tol_or_default(tol))
            .map_err(perr)?
            .map(|inner| PyScalarProduct { inner }))
    }

    fn bivector(&self) -> PyResult<Option<PyBivector>> {
        Ok(self
            .file
            .to_bivector()
            .map_err(perr)?
            .map(|inner| PyBivector { inner }))
    }

    #[pyo3(signature = (tol = None))]
    fn subspace(&self, tol: Option<f64>) -> PyResult<Option<PySymplecticSubspace>> {
        Ok(self
            .file
            .to_symplectic(tol_or_default(tol))
            .map_err(perr)?
            .map(|inner| PySymplecticSubspace { inner }))
    }

    fn __repr__(&self) -> String {
        format!("Instance(name={:?}, dim={})", self.file.name, self.file.dim)
    }
}

/// Flatness classification of the metric algebra, as a JSON string.
#[pyfunction]
#[pyo3(signature = (alg, metric, tol = None))]
fn classify(alg: &PyLieAlgebra, metric: &PyScalarProduct, tol: Option<f64>) -> PyResult<String> {
    let rep =
        rlie_core::classify(&alg.inner, &metric.inner, tol_or_default(tol)).map_err(perr)?;
    to_json(&report::ClassificationJson::from_classification(&rep))
}

/// Yang-Baxter analysis of a bivector, as a JSON string.  With a metric,
/// the dual connection identity and the abelian-image check are included.
#[pyfunction]
#[pyo3(signature = (alg, r, metric = None, tol = None))]
fn yang_baxter_check(
    alg: &PyLieAlgebra,
    r: &PyBivector,
    metric: Option<&PyScalarProduct>,
    tol: Option<f64>,
) -> PyResult<String> {
    let tol = tol_or_default(tol);
    let solution = rlie_core::solution_report(&alg.inner, &r.inner, tol).map_err(perr)?;
    let mut yb = report::yang_baxter_json(&r.inner, &solution);
    if let Some(m) = metric {
        let dual_connection = rlie_core::dual_connection_check(&alg.inner, &m.inner, &r.inner, tol).map_err(perr)?;
        yb.connection_check = Some(report::DualConnectionJson::from_report(&dual_connection));
        yb.image_abelian = rlie_core::abelian_image_check(&alg.inner, &m.inner, &r.inner, tol).ok();
    }
    to_json(&yb)
}

/// The Yang-Baxter bivector determined by a symplectic subspace.
#[pyfunction]
fn construct_bivector(alg: &PyLieAlgebra, subspace: &PySymplecticSubspace) -> PyResult<PyBivector> {
    Ok(PyBivector {
        inner: rlie_core::subspace_form_to_r(&alg.inner, &subspace.inner).map_err(perr)?,
    })
}

/// Recover the subspace-with-form presentation of a nonzero bivector.
#[pyfunction]
#[pyo3(signature = (alg, r, tol = None))]
fn recover_subspace(
    alg: &PyLieAlgebra,
    r: &PyBivector,
    tol: Option<f64>,
) -> PyResult<PySymplecticSubspace> {
    Ok(PySymplecticSubspace {
        inner: rlie_core::r_to_subspace_form(&alg.inner, &r.inner, tol_or_default(tol))
            .map_err(perr)?,
    })
}

/// Sup norm of the Schouten bracket [r, r].
#[pyfunction]
fn schouten_norm(alg: &PyLieAlgebra, r: &PyBivector) -> PyResult<f64> {
    let (_, norm) = rlie_core::schouten(&alg.inner, &r.inner).map_err(perr)?;
    Ok(norm)
}

/// Dual-space bracket induced by a bivector, with its Jacobi defect.
#[pyfunction]
fn dual_algebra(alg: &PyLieAlgebra, r: &PyBivector) -> PyResult<(PyLieAlgebra, f64)> {
    let dual = rlie_core::dual_bracket(&alg.inner, &r.inner).map_err(perr)?;
    Ok((PyLieAlgebra { inner: dual.algebra }, dual.jacobi_defect))
}

/// Full bialgebra certificate from an abelian symplectic subspace inside
/// the orthogonal subalgebra, as a JSON string.
#[pyfunction]
#[pyo3(signature = (alg, metric, subspace, tol = None))]
fn bialgebra(
    alg: &PyLieAlgebra,
    metric: &PyScalarProduct,
    subspace: &PySymplecticSubspace,
    tol: Option<f64>,
) -> PyResult<String> {
    let rep = rlie_core::bialgebra_report(
        &alg.inner,
        &metric.inner,
        &subspace.inner,
        tol_or_default(tol),
    )
    .map_err(perr)?;
    to_json(&report::BialgebraJson::from_report(&rep))
}

/// Seeded hill-climb for a flat metric of the given signature, as a JSON
/// string; `flat_tol` decides whether the best defect counts as flat.
#[pyfunction]
#[pyo3(signature = (alg, signature, restarts = 24, steps = 400, seed = 0, flat_tol = 1e-8))]
fn search_flat_metric(
    alg: &PyLieAlgebra,
    signature: (usize, usize),
    restarts: usize,
    steps: usize,
    seed: u64,
    flat_tol: f64,
) -> PyResult<String> {
    let search = rlie_core::search_flat_metric(&alg.inner, signature, restarts, steps, seed)
        .map_err(perr)?;
    to_json(&report::SearchJson {
        signature: [signature.0, signature.1],
        best_defect: search.best_defect,
        best_gram: io::matrix_to_rows(&search.best_gram),
        evaluations: search.evaluations,
        found_flat: search.best_defect <= flat_tol,
    })
}

#[pymodule]
fn rlie_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_TOL", DEFAULT_TOL)?;
    m.add("NAMED", rlie_core::NAMED.to_vec())?;
    m.add_class::<PyLieAlgebra>()?;
    m.add_class::<PyScalarProduct>()?;
    m.add_class::<PyBivector>()?;
    m.add_class::<PySymplecticSubspace>()?;
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(yang_baxter_check, m)?)?;
    m.add_function(wrap_pyfunction!(construct_bivector, m)?)?;
    m.add_function(wrap_pyfunction!(recover_subspace, m)?)?;
    m.add_function(wrap_pyfunction!(schouten_norm, m)?)?;
    m.add_function(wrap_pyfunction!(dual_algebra, m)?)?;
    m.add_function(wrap_pyfunction!(bialgebra, m)?)?;
    m.add_function(wrap_pyfunction!(search_flat_metric, m)?)?;
    Ok(())
}
