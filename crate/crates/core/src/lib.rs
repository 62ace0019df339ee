//! Finite-dimensional Lie algebras with scalar products: flatness of the
//! canonical left-invariant connection, the Milnor-style splitting test,
//! and Poisson structures induced by solutions of the classical
//! Yang-Baxter equation.
//!
//! An algebra is stored as its adjoint matrices on a fixed basis; a
//! scalar product is a symmetric nondegenerate Gram matrix on the same
//! basis. On top of those the crate computes Levi-Civita connections,
//! the defects of the four flatness conditions, dual (coboundary) Lie
//! brackets of bivectors, and full bialgebra certificates.
//!
//! Every analysis takes an explicit tolerance and turns it into a
//! scale-aware threshold; defects are reported as numbers, verdicts as
//! booleans derived from them. All types are immutable after
//! construction and every function is pure, so values can be shared
//! freely across threads.

mod algebra;
mod bivector;
mod catalog;
mod connection;
mod error;
mod flatness;
pub(crate) mod linalg;
mod metric;
mod poisson;
mod subspace;

pub mod io;
pub mod report;

/// Default tolerance used by the command-line tool and the generators.
pub const DEFAULT_TOL: f64 = 1e-9;

pub use algebra::{BracketEntry, Definiteness, LieAlgebra, SubspaceFlags};
pub use bivector::{Bivector, SymplecticSubspace};
pub use catalog::{
    direct_sum, named, named_algebra, random_algebra, random_bivector, random_flat,
    random_metric, search_flat_metric, Instance, MetricSearch, NAMED,
};
pub use connection::{adjoint_ad, connection_scale, d_operator, levi_civita, Connection};
pub use error::{Error, Result};
pub use flatness::{
    classify, curvature_defect, derived_perp, milnor_decomposition, orthogonal_subalgebra,
    parallel_dtheta_defect, riemann_lie_defect, MilnorClause, MilnorOutcome, Classification,
};
pub use metric::ScalarProduct;
pub use poisson::{
    bialgebra_report, coadjoint, delta_omega_defect, dual_bracket, dual_levi_civita,
    dual_connection_check, solution_report, abelian_image_check, r_to_subspace_form, rpl_compatibility_defect,
    schouten, subspace_form_to_r, BialgebraReport, DualAlgebra, DualConnectionReport, OmegaEval,
    SolutionReport, SchoutenTensor,
};
pub use subspace::Subspace;
