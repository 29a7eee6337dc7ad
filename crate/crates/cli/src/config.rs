//! Versioned JSON input document. Each command reads the sections it needs.

use std::path::Path;

use serde::{Deserialize, Serialize};
use symqm::discrete::{DihedralLine, OctahedralRotations};
use symqm::GroupAction;

use crate::error::{config, CliError, CliResult};

pub const SUPPORTED_SCHEMA: u32 = 1;

/// Parameter value: integer or text. Integers sort before text.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Text(String),
}

impl Label {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Label::Int(i) => Some(*i as f64),
            Label::Text(s) => s.parse().ok(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionSpec {
    /// Group generated by permutations of `0..points`.
    Permutations { points: usize, generators: Vec<Vec<usize>> },
    /// Translations and reflections of a cyclic line with `n` points.
    Dihedral { n: usize },
    /// Cube rotations on axis vectors; `level` 2 adds a half-length shell.
    Octahedral { level: u8 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterSpec {
    #[serde(default = "default_name")]
    pub name: String,
    #[serde(default)]
    pub values: Option<Vec<Label>>,
    /// For octahedral actions: component along this axis, in half units.
    #[serde(default)]
    pub component_axis: Option<usize>,
}

fn default_name() -> String {
    "theta".into()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub parameters: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
}

pub type ComplexEntry = [f64; 2];

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OperatorSpec {
    /// Spin along the x-z direction at this angle from z.
    SpinDeg(f64),
    Diagonal(Vec<f64>),
    /// Rows of `[re, im]` pairs.
    Matrix(Vec<Vec<ComplexEntry>>),
    /// Multiplication operator of the document's Hilbert construction.
    FromModel(bool),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BornSpec {
    pub a: OperatorSpec,
    pub b: OperatorSpec,
    /// Unitary `D` applied to `b` as `D† T D`.
    #[serde(default)]
    pub transport: Option<Vec<Vec<ComplexEntry>>>,
    /// Prior over the eigenstates of `a`.
    #[serde(default)]
    pub prior: Option<Vec<f64>>,
    /// Measurement model over the eigenvalues of `b`.
    #[serde(default)]
    pub measurement: Option<ModelSpec>,
    #[serde(default)]
    pub outcomes: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveSpec {
    pub hamiltonian: OperatorSpec,
    pub state: Vec<ComplexEntry>,
    pub times: Vec<f64>,
    #[serde(default = "one")]
    pub hbar: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoxSpec {
    pub f1: ModelSpec,
    pub f2: ModelSpec,
    pub coin_bias: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntertwiningSpec {
    pub sample_generators: Vec<Vec<usize>>,
    pub parameter_generators: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema_version: u32,
    #[serde(default)]
    pub action: Option<ActionSpec>,
    #[serde(default)]
    pub parameter: Option<ParameterSpec>,
    /// Subgroup elements; defaults to the maximal natural subgroup.
    #[serde(default)]
    pub subgroup: Option<Vec<usize>>,
    /// Mass per orbit of the basic action; defaults to orbit sizes.
    #[serde(default)]
    pub orbit_weights: Option<Vec<f64>>,
    /// Orbit indices of the induced action kept by the reduction.
    #[serde(default)]
    pub selection: Option<Vec<usize>>,
    #[serde(default)]
    pub model: Option<ModelSpec>,
    /// Statistic value per outcome.
    #[serde(default)]
    pub statistic: Option<Vec<Label>>,
    #[serde(default)]
    pub base_measure: Option<Vec<f64>>,
    #[serde(default)]
    pub parameter_weights: Option<Vec<f64>>,
    #[serde(default)]
    pub intertwining: Option<IntertwiningSpec>,
    #[serde(default)]
    pub born: Option<BornSpec>,
    #[serde(default)]
    pub evolve: Option<EvolveSpec>,
    #[serde(default)]
    pub cox: Option<CoxSpec>,
}

impl Document {
    pub fn load(path: &Path) -> CliResult<Document> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Document> {
        let doc: Document = serde_json::from_str(text)?;
        if doc.schema_version != SUPPORTED_SCHEMA {
            return Err(config(format!(
                "schema_version {} is not supported (expected {SUPPORTED_SCHEMA})",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    pub fn require<'a, T>(section: &'a Option<T>, name: &str) -> CliResult<&'a T> {
        section.as_ref().ok_or_else(|| config(format!("missing section '{name}'")))
    }
}

pub fn config_model(spec: &ModelSpec) -> CliResult<symqm::StatModel64> {
    Ok(symqm::StatModel64::new(spec.parameters.clone(), spec.rows.clone())?)
}

/// A built action, with integer points when it comes from the cube group.
pub struct BuiltAction {
    pub action: GroupAction,
    pub points: Option<Vec<[i64; 3]>>,
}

pub fn build_action(spec: &ActionSpec) -> CliResult<BuiltAction> {
    Ok(match spec {
        ActionSpec::Permutations { points, generators } => {
            BuiltAction { action: GroupAction::from_permutations(*points, generators)?, points: None }
        }
        ActionSpec::Dihedral { n } => BuiltAction { action: DihedralLine::new(*n)?.action().clone(), points: None },
        ActionSpec::Octahedral { level } => {
            let mut pts = OctahedralRotations::axis_points(2);
            match level {
                1 => {}
                2 => pts.extend(OctahedralRotations::axis_points(1)),
                _ => return Err(config(format!("octahedral level {level} is not 1 or 2"))),
            }
            let oct = OctahedralRotations::on_points(pts)?;
            BuiltAction { action: oct.action().clone(), points: Some(oct.points().to_vec()) }
        }
    })
}

/// Parameter labels per point. Octahedral components are written as
/// integers in half units (`2` is component `1`).
pub fn build_parameter(spec: &ParameterSpec, built: &BuiltAction) -> CliResult<Vec<Label>> {
    match (&spec.values, spec.component_axis, &built.points) {
        (Some(values), None, _) => {
            if values.len() != built.action.num_points() {
                return Err(config(format!(
                    "parameter has {} values for {} points",
                    values.len(),
                    built.action.num_points()
                )));
            }
            Ok(values.clone())
        }
        (None, Some(axis), Some(points)) if axis < 3 => Ok(points.iter().map(|p| Label::Int(p[axis])).collect()),
        (None, Some(_), _) => Err(config("component_axis needs an octahedral action and an axis in 0..3")),
        _ => Err(config("parameter needs exactly one of 'values' or 'component_axis'")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_checks_version() {
        let d = Document::parse(r#"{"schema_version": 1, "action": {"kind": "dihedral", "n": 4}}"#).unwrap();
        assert!(matches!(d.action, Some(ActionSpec::Dihedral { n: 4 })));
        assert!(Document::parse(r#"{"schema_version": 2}"#).is_err());
        assert!(Document::parse(r#"{"schema_version": 1, "bogus": 0}"#).is_err());
    }

    #[test]
    fn labels_sort_numerically() {
        let mut v = vec![Label::Int(10), Label::Int(2), Label::Text("a".into())];
        v.sort();
        assert_eq!(v, vec![Label::Int(2), Label::Int(10), Label::Text("a".into())]);
    }
}
