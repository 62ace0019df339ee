//! Error type shared by every module in the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("bracket entry ({i},{j}) out of range or not strictly lower<upper for dimension {dim}")]
    BracketIndex { i: usize, j: usize, dim: usize },

    #[error("duplicate bracket entry for pair ({i},{j})")]
    DuplicateBracket { i: usize, j: usize },

    #[error("Jacobi identity violated: defect {defect:.3e} exceeds tolerance {tol:.3e}")]
    JacobiViolation { defect: f64, tol: f64 },

    #[error("{what} must be exactly symmetric")]
    NotSymmetric { what: &'static str },

    #[error("{what} must be exactly antisymmetric")]
    NotAntisymmetric { what: &'static str },

    #[error("scalar product is degenerate: |eigenvalue| ratio {ratio:.3e} at tolerance {tol:.3e}")]
    DegenerateMetric { ratio: f64, tol: f64 },

    #[error("{what} is rank-deficient (smallest singular value {sigma:.3e})")]
    RankDeficient { what: &'static str, sigma: f64 },

    #[error("symplectic subspace must have even dimension >= 2, got {dim}")]
    OddDimension { dim: usize },

    #[error("bivector has empty support; no symplectic subspace to recover")]
    ZeroBivector,

    #[error("subspace is not a subalgebra: bracket of basis vectors {i} and {j} leaves the span")]
    NotASubalgebra { i: usize, j: usize },

    #[error("bivector does not solve the Yang-Baxter equation: Schouten norm {norm:.3e}")]
    YangBaxterViolated { norm: f64 },

    #[error("hypothesis failure: subspace is not abelian (bracket of basis vectors {i} and {j} is nonzero)")]
    SubspaceNotAbelian { i: usize, j: usize },

    #[error("hypothesis failure: subspace is not contained in the orthogonal subalgebra of the metric")]
    SubspaceNotContained,

    #[error("internal consistency check `{check}` failed: defect {defect:.3e} exceeds {threshold:.3e}")]
    Internal {
        check: &'static str,
        defect: f64,
        threshold: f64,
    },

    #[error("bad shape: {what}")]
    Shape { what: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("instance file has no {section} section, required by this operation")]
    MissingSection { section: &'static str },

    #[error("unknown catalog name `{name}`")]
    UnknownName { name: String },

    #[error("generation failed: {what}")]
    Generation { what: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Parse and I/O problems are reported differently from domain
    /// failures by the command-line tool.
    pub fn is_parse_or_io(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Io(_))
    }
}
