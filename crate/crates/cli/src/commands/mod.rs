pub mod pipeline;
pub mod quantum;
pub mod scenarios;

use nalgebra::{Complex, DMatrix};
use serde_json::{json, Value};
use symqm::linalg::{CMatrix, CVector};
use symqm::stat_model::{StatModel, Statistic};

use crate::config::{config_model, ComplexEntry, Document, Label, ModelSpec};
use crate::error::{config, CliResult};

/// Run-wide settings shared by every command.
pub struct Context {
    pub seed: u64,
    pub match_tol: f64,
    pub check_tol: f64,
    pub z_band: f64,
    pub document: Option<Document>,
}

impl Context {
    pub fn document(&self) -> CliResult<&Document> {
        self.document.as_ref().ok_or_else(|| config("this command needs --config <document.json>"))
    }
}

pub fn complex_json(m: &CMatrix<f64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| json!((0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect::<Vec<_>>()))
            .collect(),
    )
}

pub fn complex_vec_json(v: &CVector<f64>) -> Value {
    json!(v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
}

pub fn real_json(m: &DMatrix<f64>) -> Value {
    json!((0..m.nrows()).map(|i| m.row(i).iter().copied().collect::<Vec<f64>>()).collect::<Vec<_>>())
}

pub fn parse_complex_matrix(rows: &[Vec<ComplexEntry>]) -> CliResult<CMatrix<f64>> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(config("matrix must be square and nonempty"));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| Complex::new(rows[i][j][0], rows[i][j][1])))
}

pub fn parse_complex_vector(entries: &[ComplexEntry]) -> CVector<f64> {
    CVector::from_iterator(entries.len(), entries.iter().map(|e| Complex::new(e[0], e[1])))
}

pub fn model(spec: &ModelSpec) -> CliResult<StatModel<f64>> {
    config_model(spec)
}

pub fn statistic(doc: &Document, outcomes: usize) -> CliResult<Statistic> {
    match &doc.statistic {
        Some(labels) if labels.len() == outcomes => Ok(Statistic::from_labels(labels)),
        Some(labels) => Err(config(format!("statistic has {} values for {outcomes} outcomes", labels.len()))),
        None => Ok(Statistic::identity(outcomes)),
    }
}

pub fn labels_json(labels: &[Label]) -> Value {
    serde_json::to_value(labels).unwrap_or(Value::Null)
}
