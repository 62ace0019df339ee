//! JSON-facing report types. These mirror the analysis structs with
//! plain serializable fields, so the CLI and the Python bindings emit
//! the same documents.

use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::bivector::Bivector;
use crate::flatness::{MilnorOutcome, Classification};
use crate::io::matrix_to_rows;
use crate::metric::ScalarProduct;
use crate::poisson::{BialgebraReport, DualConnectionReport, SolutionReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub input: InputEcho,
    pub tol: f64,
    pub timing_ms: f64,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub yang_baxter: Option<YangBaxterJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bialgebra: Option<BialgebraJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated: Option<GeneratedJson>,
}

#[derive(Debug, Serialize)]
pub struct GeneratedJson {
    pub name: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

impl Report {
    pub fn new(command: &str, input: InputEcho, tol: f64) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input,
            tol,
            timing_ms: 0.0,
            status: "ok".to_string(),
            error: None,
            validation: None,
            classification: None,
            structure: None,
            yang_baxter: None,
            bialgebra: None,
            search: None,
            generated: None,
        }
    }

    pub fn fail(mut self, message: &str) -> Report {
        self.status = "failed".to_string();
        self.error = Some(message.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub name: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ValidationJson {
    pub bracket_pairs: usize,
    pub jacobi_defect: f64,
    pub jacobi_ok: bool,
    pub has_metric: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric_signature: Option<[usize; 2]>,
    pub has_bivector: bool,
    pub has_subspace: bool,
    pub ok: bool,
}

#[derive(Debug, Serialize)]
pub struct ConditionJson {
    pub defect: f64,
    pub holds: bool,
}

#[derive(Debug, Serialize)]
pub struct MilnorJson {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_clause: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotations: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub translations: Option<Vec<Vec<f64>>>,
}

/// The flat-dual condition is equivalent to the curvature conditions and
/// is not computed separately; the report says so instead of inventing a
/// number for it.
#[derive(Debug, Serialize)]
pub struct EquivalentConditionJson {
    pub status: String,
}

#[derive(Debug, Serialize)]
pub struct ConditionsJson {
    pub riemann_lie: ConditionJson,
    pub parallel_dtheta: ConditionJson,
    pub flat_curvature: ConditionJson,
    pub milnor_split: MilnorJson,
    pub flat_dual: EquivalentConditionJson,
}

#[derive(Debug, Serialize)]
pub struct ClassificationJson {
    pub signature: [usize; 2],
    pub riemannian: bool,
    pub threshold: f64,
    pub conditions: ConditionsJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub orthogonal_subalgebra: Vec<Vec<f64>>,
    pub is_riemann_lie: bool,
}

impl ClassificationJson {
    pub fn from_classification(rep: &Classification) -> ClassificationJson {
        let threshold = rep.threshold;
        let milnor = match &rep.milnor {
            MilnorOutcome::Split {
                rotations,
                translations,
            } => MilnorJson {
                holds: true,
                failed_clause: None,
                rotations: Some(basis_rows(rotations)),
                translations: Some(basis_rows(translations)),
            },
            MilnorOutcome::Failed { clause } => MilnorJson {
                holds: false,
                failed_clause: Some(clause.to_string()),
                rotations: None,
                translations: None,
            },
        };
        ClassificationJson {
            signature: [rep.signature.0, rep.signature.1],
            riemannian: rep.riemannian,
            threshold,
            conditions: ConditionsJson {
                riemann_lie: ConditionJson {
                    defect: rep.riemann_lie_defect,
                    holds: rep.condition_riemann_lie,
                },
                parallel_dtheta: ConditionJson {
                    defect: rep.dtheta_defect,
                    holds: rep.condition_dtheta,
                },
                flat_curvature: ConditionJson {
                    defect: rep.curvature_defect,
                    holds: rep.condition_curvature,
                },
                milnor_split: milnor,
                flat_dual: EquivalentConditionJson {
                    status: "equivalent to riemann_lie; not separately computed".to_string(),
                },
            },
            consistent: rep.consistent,
            note: if rep.riemannian {
                None
            } else {
                Some(
                    "indefinite scalar product: the four conditions are not \
                     guaranteed to agree, each is reported on its own"
                        .to_string(),
                )
            },
            orthogonal_subalgebra: basis_rows(&rep.orthogonal),
            is_riemann_lie: rep.is_riemann_lie,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct StructureJson {
    pub center: Vec<Vec<f64>>,
    pub derived_algebra: Vec<Vec<f64>>,
    pub killing_matrix: Vec<Vec<f64>>,
    pub killing_verdict: String,
}

pub fn structure_json(alg: &LieAlgebra, tol: f64) -> StructureJson {
    let (killing, verdict) = alg.killing_form(tol);
    StructureJson {
        center: basis_rows(&alg.center(tol)),
        derived_algebra: basis_rows(&alg.derived_algebra(tol)),
        killing_matrix: matrix_to_rows(&killing),
        killing_verdict: verdict.to_string(),
    }
}

#[derive(Debug, Serialize)]
pub struct SolutionJson {
    pub schouten_norm: f64,
    pub morphism_defect: f64,
    pub image_is_subalgebra: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_omega_defect: Option<f64>,
    pub pairing_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form_residual: Option<f64>,
    pub dual_jacobi_defect: f64,
    pub verdict_schouten: bool,
    pub verdict_morphism: bool,
    pub verdict_symplectic: bool,
    pub verdicts_agree: bool,
    pub threshold: f64,
}

impl SolutionJson {
    pub fn from_report(rep: &SolutionReport) -> SolutionJson {
        SolutionJson {
            schouten_norm: rep.schouten_norm,
            morphism_defect: rep.morphism_defect,
            image_is_subalgebra: rep.image_is_subalgebra,
            delta_omega_defect: rep.delta_omega,
            pairing_residual: rep.pairing_residual,
            form_residual: rep.form_residual,
            dual_jacobi_defect: rep.dual_jacobi_defect,
            verdict_schouten: rep.verdict_schouten,
            verdict_morphism: rep.verdict_morphism,
            verdict_symplectic: rep.verdict_symplectic,
            verdicts_agree: rep.verdicts_agree,
            threshold: rep.threshold,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DualConnectionJson {
    pub defect: f64,
    pub holds: bool,
    pub image_in_orthogonal: bool,
    pub flags_agree: bool,
    pub dual_jacobi_defect: f64,
    pub dual_curvature_defect: f64,
    pub dual_riemann_lie_defect: f64,
    pub threshold: f64,
}

impl DualConnectionJson {
    pub fn from_report(rep: &DualConnectionReport) -> DualConnectionJson {
        DualConnectionJson {
            defect: rep.defect,
            holds: rep.holds,
            image_in_orthogonal: rep.image_in_orthogonal,
            flags_agree: rep.flags_agree,
            dual_jacobi_defect: rep.dual_jacobi_defect,
            dual_curvature_defect: rep.dual_curvature,
            dual_riemann_lie_defect: rep.dual_riemann_lie_defect,
            threshold: rep.threshold,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct YangBaxterJson {
    pub r: Vec<Vec<f64>>,
    pub solution: SolutionJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection_check: Option<DualConnectionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image_abelian: Option<bool>,
}

pub fn yang_baxter_json(r: &Bivector, solution: &SolutionReport) -> YangBaxterJson {
    YangBaxterJson {
        r: matrix_to_rows(r.matrix()),
        solution: SolutionJson::from_report(solution),
        connection_check: None,
        image_abelian: None,
    }
}

#[derive(Debug, Serialize)]
pub struct BialgebraJson {
    pub r: Vec<Vec<f64>>,
    pub schouten_norm: f64,
    pub dual_jacobi_defect: f64,
    pub connection_check: DualConnectionJson,
    pub image_abelian: bool,
    pub compatibility_defect: f64,
    pub dual_classification: ClassificationJson,
    pub primal_riemann_lie: bool,
    pub double_riemann_lie: bool,
    pub certified: bool,
    pub threshold: f64,
}

impl BialgebraJson {
    pub fn from_report(rep: &BialgebraReport) -> BialgebraJson {
        BialgebraJson {
            r: matrix_to_rows(rep.r.matrix()),
            schouten_norm: rep.schouten_norm,
            dual_jacobi_defect: rep.dual_jacobi_defect,
            connection_check: DualConnectionJson::from_report(&rep.dual_connection),
            image_abelian: rep.image_abelian,
            compatibility_defect: rep.rpl_defect,
            dual_classification: ClassificationJson::from_classification(&rep.dual_classification),
            primal_riemann_lie: rep.primal_riemann_lie,
            double_riemann_lie: rep.double_riemann_lie,
            certified: rep.certified,
            threshold: rep.threshold,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SearchJson {
    pub signature: [usize; 2],
    pub best_defect: f64,
    pub best_gram: Vec<Vec<f64>>,
    pub evaluations: usize,
    pub found_flat: bool,
}

/// Basis columns of a subspace as a list of vectors.
pub fn basis_rows(s: &crate::subspace::Subspace) -> Vec<Vec<f64>> {
    (0..s.dim())
        .map(|k| s.basis_vector(k).iter().cloned().collect())
        .collect()
}

pub fn validation_json(
    alg: &LieAlgebra,
    metric: Option<&ScalarProduct>,
    has_bivector: bool,
    has_subspace: bool,
    bracket_pairs: usize,
    tol: f64,
) -> ValidationJson {
    let jacobi = alg.jacobi_defect();
    let c = alg.max_structure_constant();
    let jacobi_ok = jacobi <= tol * (1.0 + c * c);
    ValidationJson {
        bracket_pairs,
        jacobi_defect: jacobi,
        jacobi_ok,
        has_metric: metric.is_some(),
        metric_signature: metric.map(|m| {
            let (p, q) = m.signature();
            [p, q]
        }),
        has_bivector,
        has_subspace,
        ok: jacobi_ok,
    }
}
