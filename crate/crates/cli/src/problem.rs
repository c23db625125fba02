//! Problem files: JSON description of an exhauster, its domain cone and
//! optional auxiliary cones.

use std::path::Path;

use exhauster::{Body, Cone, Exhauster, Halfspace, Kind, Vector};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub dimension: usize,
    pub exhauster: ExhausterSpec,
    #[serde(rename = "cone_T", default, skip_serializing_if = "Option::is_none")]
    pub cone_t: Option<ConeSpec>,
    #[serde(rename = "cone_K", default, skip_serializing_if = "Option::is_none")]
    pub cone_k: Option<ConeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<ConeSpec>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExhausterSpec {
    pub kind: Kind,
    pub members: Vec<BodySpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum BodySpec {
    Ball { center: Vec<f64>, radius: f64 },
    Vpolytope { vertices: Vec<Vec<f64>> },
    Hpolyhedron { halfspaces: Vec<HalfspaceSpec> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfspaceSpec {
    pub normal: Vec<f64>,
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ConeSpec {
    Generators(Vec<Vec<f64>>),
    /// Normals `a` of `⟨a, x⟩ ≤ 0`.
    Halfspaces(Vec<Vec<f64>>),
}

/// A validated problem ready for computation.
#[derive(Debug, Clone)]
pub struct Problem {
    pub file: ProblemFile,
    pub exhauster: Exhauster,
    /// `K`, given explicitly or derived as the negative dual of `T`.
    pub cone_k: Cone,
    pub decomposition: Option<Vec<Cone>>,
}

fn vector(dim: usize, coords: &[f64], what: &str) -> Result<Vector, CliError> {
    if coords.len() != dim {
        return Err(CliError::Dimension(format!(
            "{what} has {} coordinates, expected {dim}",
            coords.len()
        )));
    }
    if coords.iter().any(|c| !c.is_finite()) {
        return Err(CliError::Schema(format!(
            "{what} has a non-finite coordinate"
        )));
    }
    Ok(Vector::from(coords.to_vec()))
}

impl BodySpec {
    pub fn to_body(&self, dim: usize, what: &str) -> Result<Body, CliError> {
        match self {
            BodySpec::Ball { center, radius } => {
                let center = vector(dim, center, &format!("{what} center"))?;
                if !radius.is_finite() || *radius < 0.0 {
                    return Err(CliError::Schema(format!(
                        "{what} has invalid radius {radius}"
                    )));
                }
                Ok(Body::ball(center, *radius)?)
            }
            BodySpec::Vpolytope { vertices } => {
                if vertices.is_empty() {
                    return Err(CliError::Schema(format!("{what} has no vertices")));
                }
                let vertices = vertices
                    .iter()
                    .enumerate()
                    .map(|(k, v)| vector(dim, v, &format!("{what} vertex {k}")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Body::vpolytope(vertices)?)
            }
            BodySpec::Hpolyhedron { halfspaces } => {
                let halfspaces = halfspaces
                    .iter()
                    .enumerate()
                    .map(|(k, h)| {
                        if !h.offset.is_finite() {
                            return Err(CliError::Schema(format!(
                                "{what} halfspace {k} has a non-finite offset"
                            )));
                        }
                        let normal =
                            vector(dim, &h.normal, &format!("{what} halfspace {k} normal"))?;
                        Ok(Halfspace::new(normal, h.offset))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Body::hpolyhedron(dim, halfspaces)?)
            }
        }
    }
}

impl ConeSpec {
    pub fn to_cone(&self, dim: usize, what: &str) -> Result<Cone, CliError> {
        let vectors = |list: &[Vec<f64>]| {
            list.iter()
                .enumerate()
                .map(|(k, v)| vector(dim, v, &format!("{what} vector {k}")))
                .collect::<Result<Vec<_>, _>>()
        };
        Ok(match self {
            ConeSpec::Generators(rays) => Cone::generated(dim, vectors(rays)?)?,
            ConeSpec::Halfspaces(normals) => Cone::from_normals(dim, vectors(normals)?)?,
        })
    }
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Schema(msg) => CliError::Schema(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut text =
            serde_json::to_string_pretty(self).map_err(|e| CliError::General(e.to_string()))?;
        text.push('\n');
        std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
    }

    /// Validates every field and builds the library objects.
    pub fn build(self) -> Result<Problem, CliError> {
        let dim = self.dimension;
        if dim == 0 {
            return Err(CliError::Schema("dimension must be at least 1".into()));
        }
        if self.exhauster.members.is_empty() {
            return Err(CliError::Schema("exhauster has no members".into()));
        }
        let members = self
            .exhauster
            .members
            .iter()
            .enumerate()
            .map(|(i, m)| m.to_body(dim, &format!("member {i}")))
            .collect::<Result<Vec<_>, _>>()?;
        let domain = match &self.cone_t {
            Some(spec) => spec.to_cone(dim, "cone_T")?,
            None => Cone::full(dim),
        };
        let cone_k = match &self.cone_k {
            Some(spec) => spec.to_cone(dim, "cone_K")?,
            None => domain.negative_dual(),
        };
        let decomposition = self
            .decomposition
            .as_ref()
            .map(|list| {
                list.iter()
                    .enumerate()
                    .map(|(k, spec)| spec.to_cone(dim, &format!("decomposition cone {k}")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        let exhauster = Exhauster::new(self.exhauster.kind, members, domain)?;
        Ok(Problem {
            file: self,
            exhauster,
            cone_k,
            decomposition,
        })
    }

    /// The same problem restricted to the given members.
    pub fn with_members(&self, indices: impl IntoIterator<Item = usize>) -> ProblemFile {
        let mut out = self.clone();
        out.exhauster.members = indices
            .into_iter()
            .map(|i| self.exhauster.members[i].clone())
            .collect();
        out
    }
}

pub fn load(path: &Path) -> Result<Problem, CliError> {
    ProblemFile::read(path)?.build()
}
