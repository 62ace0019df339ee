//! The on-disk instance format: one algebra per TOML file, brackets given
//! on pairs i < j only, with optional metric, bivector, and symplectic
//! subspace sections.
//!
//! Files are written through a canonical serializer with a fixed key
//! order, entries sorted by (i, j), and floats printed in shortest
//! round-trip form, so generate -> parse -> serialize is byte-identical.

use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::bivector::{Bivector, SymplecticSubspace};
use crate::catalog::Instance;
use crate::error::{Error, Result};
use crate::metric::ScalarProduct;
use crate::subspace::Subspace;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub name: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<f64>>>,
    #[serde(default, rename = "bracket", skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, rename = "bivector", skip_serializing_if = "Vec::is_empty")]
    pub bivector: Vec<BivectorEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace: Option<SubspaceSection>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub c: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BivectorEntry {
    pub i: usize,
    pub j: usize,
    pub v: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubspaceSection {
    /// Basis vectors as rows, each of length dim.
    pub basis: Vec<Vec<f64>>,
    /// The 2-form on the subspace in basis coordinates.
    pub omega: Vec<Vec<f64>>,
}

pub fn parse_str(text: &str) -> Result<InstanceFile> {
    toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_file(path: &Path) -> Result<InstanceFile> {
    parse_str(&std::fs::read_to_string(path)?)
}

pub fn write_file(path: &Path, file: &InstanceFile) -> Result<()> {
    Ok(std::fs::write(path, canonical_string(file))?)
}

impl InstanceFile {
    /// Build and Jacobi-check the algebra.
    pub fn to_algebra(&self, tol: f64) -> Result<LieAlgebra> {
        LieAlgebra::from_brackets(self.dim, &self.bracket_entries()?, tol)
    }

    /// Build without the Jacobi check, for defect reporting.
    pub fn to_algebra_unchecked(&self) -> Result<LieAlgebra> {
        LieAlgebra::from_brackets_unchecked(self.dim, &self.bracket_entries()?)
    }

    fn bracket_entries(&self) -> Result<Vec<(usize, usize, Vec<(usize, f64)>)>> {
        if self.dim == 0 {
            return Err(Error::Shape {
                what: "dimension must be at least 1".into(),
            });
        }
        let mut out = Vec::with_capacity(self.brackets.len());
        for entry in &self.brackets {
            let mut coeffs = Vec::with_capacity(entry.c.len());
            for (key, &value) in &entry.c {
                let k: usize = key.parse().map_err(|_| Error::Shape {
                    what: format!("bracket coefficient key `{key}` is not a basis index"),
                })?;
                coeffs.push((k, value));
            }
            out.push((entry.i, entry.j, coeffs));
        }
        Ok(out)
    }

    pub fn to_metric(&self, tol: f64) -> Result<Option<ScalarProduct>> {
        let Some(rows) = &self.metric else {
            return Ok(None);
        };
        let gram = rows_to_matrix(rows, self.dim, self.dim, "metric")?;
        match ScalarProduct::new(gram, tol) {
            Err(Error::NotSymmetric { .. }) => Err(Error::NotSymmetric { what: "metric" }),
            other => Ok(Some(other?)),
        }
    }

    pub fn to_bivector(&self) -> Result<Option<Bivector>> {
        if self.bivector.is_empty() {
            return Ok(None);
        }
        let entries: Vec<(usize, usize, f64)> =
            self.bivector.iter().map(|e| (e.i, e.j, e.v)).collect();
        Ok(Some(Bivector::from_entries(self.dim, &entries)?))
    }

    pub fn to_symplectic(&self, tol: f64) -> Result<Option<SymplecticSubspace>> {
        let Some(section) = &self.subspace else {
            return Ok(None);
        };
        let p = section.basis.len();
        let mut basis = DMatrix::zeros(self.dim, p);
        for (c, row) in section.basis.iter().enumerate() {
            if row.len() != self.dim {
                return Err(Error::Shape {
                    what: format!(
                        "subspace basis vector {} has length {}, expected {}",
                        c,
                        row.len(),
                        self.dim
                    ),
                });
            }
            for (r, &x) in row.iter().enumerate() {
                basis[(r, c)] = x;
            }
        }
        let omega = rows_to_matrix(&section.omega, p, p, "subspace form")?;
        Ok(Some(SymplecticSubspace::new(
            Subspace::new(basis, tol)?,
            omega,
            tol,
        )?))
    }

    pub fn from_instance(inst: &Instance) -> InstanceFile {
        let n = inst.algebra.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let v = inst.algebra.basis_bracket(i, j);
                let mut c = BTreeMap::new();
                for k in 0..n {
                    if v[k] != 0.0 {
                        c.insert(k.to_string(), v[k]);
                    }
                }
                if !c.is_empty() {
                    brackets.push(BracketEntry { i, j, c });
                }
            }
        }
        let metric = inst
            .metric
            .as_ref()
            .map(|m| matrix_to_rows(m.gram()));
        let bivector = inst
            .bivector
            .as_ref()
            .map(|r| {
                let mut entries = Vec::new();
                for i in 0..n {
                    for j in (i + 1)..n {
                        if r.entry(i, j) != 0.0 {
                            entries.push(BivectorEntry {
                                i,
                                j,
                                v: r.entry(i, j),
                            });
                        }
                    }
                }
                entries
            })
            .unwrap_or_default();
        let subspace = inst.symplectic.as_ref().map(|sf| SubspaceSection {
            basis: (0..sf.dim())
                .map(|c| sf.subspace().basis_vector(c).iter().cloned().collect())
                .collect(),
            omega: matrix_to_rows(sf.omega()),
        });
        let name = match inst.seed {
            Some(seed) => format!("{}#{}", inst.label, seed),
            None => inst.label.clone(),
        };
        InstanceFile {
            name,
            dim: n,
            metric,
            brackets,
            bivector,
            subspace,
        }
    }
}

pub fn matrix_to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
        .collect()
}

fn rows_to_matrix(rows: &[Vec<f64>], nr: usize, nc: usize, what: &str) -> Result<DMatrix<f64>> {
    if rows.len() != nr || rows.iter().any(|r| r.len() != nc) {
        return Err(Error::Shape {
            what: format!("{what} must be a {nr} x {nc} array"),
        });
    }
    Ok(DMatrix::from_fn(nr, nc, |r, c| rows[r][c]))
}

/// Deterministic text form: fixed key order, entries sorted by (i, j),
/// coefficient keys in numeric order, floats in shortest round-trip form.
pub fn canonical_string(file: &InstanceFile) -> String {
    let mut out = String::new();
    out.push_str(&format!("name = {:?}\n", file.name));
    out.push_str(&format!("dim = {}\n", file.dim));
    if let Some(metric) = &file.metric {
        out.push_str("metric = [\n");
        for row in metric {
            out.push_str(&format!("  {},\n", float_row(row)));
        }
        out.push_str("]\n");
    }

    let mut brackets = file.brackets.clone();
    brackets.sort_by_key(|e| (e.i, e.j));
    for entry in &brackets {
        if entry.c.is_empty() {
            continue;
        }
        let mut keys: Vec<(usize, f64)> = entry
            .c
            .iter()
            .map(|(k, &v)| (k.parse().unwrap_or(usize::MAX), v))
            .collect();
        keys.sort_by_key(|&(k, _)| k);
        let body = keys
            .iter()
            .map(|(k, v)| format!("{} = {:?}", k, v))
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!(
            "\n[[bracket]]\ni = {}\nj = {}\nc = {{ {} }}\n",
            entry.i, entry.j, body
        ));
    }

    let mut bivector = file.bivector.clone();
    bivector.sort_by_key(|e| (e.i, e.j));
    for entry in &bivector {
        out.push_str(&format!(
            "\n[[bivector]]\ni = {}\nj = {}\nv = {:?}\n",
            entry.i, entry.j, entry.v
        ));
    }

    if let Some(section) = &file.subspace {
        out.push_str("\n[subspace]\nbasis = [\n");
        for row in &section.basis {
            out.push_str(&format!("  {},\n", float_row(row)));
        }
        out.push_str("]\nomega = [\n");
        for row in &section.omega {
            out.push_str(&format!("  {},\n", float_row(row)));
        }
        out.push_str("]\n");
    }
    out
}

fn float_row(row: &[f64]) -> String {
    let body = row
        .iter()
        .map(|x| format!("{:?}", x))
        .collect::<Vec<_>>()
        .join(", ");
    format!("[{}]", body)
}
