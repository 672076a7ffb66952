//! Problem files and the JSON documents written by the subcommands.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::divided::{InterpolationData, SchurParameter};
use crate::hyperbolic::Tolerances;
use crate::json;
use crate::variability::{Provenance, RegionKind, VariabilityRegion};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Multipoint,
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceSpec {
    pub boundary: Option<f64>,
    pub separation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z0: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub queries: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceSpec>,
}

/// A validated problem.
#[derive(Debug, Clone)]
pub enum Problem {
    Multipoint(InterpolationData),
    Hyperbolic { param: SchurParameter, tolerances: Tolerances },
}

#[derive(Debug, Clone)]
pub struct LoadedProblem {
    pub problem: Problem,
    pub queries: Vec<Complex64>,
    pub epsilon_samples: Option<usize>,
}

fn complex(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

fn complexes(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().copied().map(complex).collect()
}

fn check_tolerance(name: &str, v: f64) -> Result<f64, String> {
    if v.is_finite() && (0.0..0.5).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{name} tolerance must lie in [0, 0.5), got {v}"))
    }
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("malformed problem file: {e}"))
    }

    /// Validates the file; `overrides` take precedence over the file's tolerances.
    pub fn load(&self, overrides: ToleranceSpec) -> Result<LoadedProblem, String> {
        let spec = self.tolerances.unwrap_or_default();
        let defaults = Tolerances::default();
        let tolerances = Tolerances {
            boundary: check_tolerance("boundary", overrides.boundary.or(spec.boundary).unwrap_or(defaults.boundary))?,
            separation: check_tolerance(
                "separation",
                overrides.separation.or(spec.separation).unwrap_or(defaults.separation),
            )?,
        };
        let queries = complexes(&self.queries);
        if let Some((i, z)) = queries.iter().enumerate().find(|(_, z)| !(z.norm() < 1.0)) {
            return Err(format!("query {} = {z} is not inside the unit disk", i + 1));
        }
        let problem = match self.mode {
            Mode::Multipoint => {
                if self.z0.is_some() || self.gamma.is_some() {
                    return Err("multipoint problems take \"nodes\" and \"values\", not \"z0\"/\"gamma\"".into());
                }
                let (Some(nodes), Some(values)) = (&self.nodes, &self.values) else {
                    return Err("multipoint problems need \"nodes\" and \"values\"".into());
                };
                Problem::Multipoint(
                    InterpolationData::new(complexes(nodes), complexes(values), tolerances).map_err(|e| e.to_string())?,
                )
            }
            Mode::Hyperbolic => {
                if self.nodes.is_some() || self.values.is_some() {
                    return Err("hyperbolic problems take \"z0\" and \"gamma\", not \"nodes\"/\"values\"".into());
                }
                let (Some(z0), Some(gamma)) = (self.z0, &self.gamma) else {
                    return Err("hyperbolic problems need \"z0\" and \"gamma\"".into());
                };
                let param = SchurParameter::new(complex(z0), complexes(gamma)).map_err(|e| e.to_string())?;
                Problem::Hyperbolic { param, tolerances }
            }
        };
        Ok(LoadedProblem { problem, queries, epsilon_samples: self.epsilon_samples })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionType {
    Disk,
    Point,
    Empty,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionJson {
    #[serde(rename = "type")]
    pub kind: RegionType,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "json::opt_pair")]
    pub center: Option<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    pub provenance: String,
}

impl From<&VariabilityRegion> for RegionJson {
    fn from(r: &VariabilityRegion) -> Self {
        let provenance = match r.provenance {
            Provenance::InteriorDisk => "interior".to_string(),
            Provenance::AtNode => "at_node".to_string(),
            Provenance::UniqueBlaschke { degree } => format!("unique_blaschke_degree_{degree}"),
            Provenance::NoSolution => "no_solution".to_string(),
        };
        let (kind, center, radius) = match r.kind {
            RegionKind::Disk(d) => (RegionType::Disk, Some(d.center), Some(d.radius)),
            RegionKind::Point(p) => (RegionType::Point, Some(p), Some(0.0)),
            RegionKind::Empty => (RegionType::Empty, None, None),
        };
        Self { kind, center, radius, provenance }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryResult {
    #[serde(with = "json::pair")]
    pub z: Complex64,
    pub region: RegionJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionOutput {
    pub mode: Mode,
    pub feasible: bool,
    pub results: Vec<QueryResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableCell {
    pub j: usize,
    pub k: usize,
    #[serde(with = "json::opt_pair")]
    pub value: Option<Complex64>,
    /// `interior`, `boundary`, `infinite` or `unset`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableOutput {
    #[serde(with = "json::pairs")]
    pub nodes: Vec<Complex64>,
    pub feasible: bool,
    /// `columns[k]` lists `Δ_j^k` for `j = k+1..=n+1`.
    pub columns: Vec<Vec<TableCell>>,
    pub diagonal: Vec<TableCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolvabilityOutput {
    pub class: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
}
