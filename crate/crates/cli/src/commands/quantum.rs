//! Born probabilities, measurement families and time evolution.

use serde_json::{json, Value};
use symqm::linalg::{max_abs_diff, CMatrix};
use symqm::quantum::{
    born_matrix, density_from_prior, doubly_stochastic_defect, evolution_operator, measurement_family,
    multiplication_operator, outcome_probability, schrodinger_residual, time_evolve, transport_operator,
    HermitianOperator, StateVector, STATE_TOL,
};
use symqm::scenarios::{spin_operator, Direction};

use super::pipeline::hilbert_spaces;
use super::{complex_json, complex_vec_json, model, parse_complex_matrix, parse_complex_vector, real_json, Context};
use crate::config::{Document, EvolveSpec, OperatorSpec};
use crate::error::{config, CliResult};
use crate::report::Report;

fn operator(spec: &OperatorSpec, doc: Option<&Document>) -> CliResult<HermitianOperator<f64>> {
    Ok(match spec {
        OperatorSpec::SpinDeg(deg) => spin_operator(&Direction::planar(deg.to_radians())),
        OperatorSpec::Diagonal(values) => HermitianOperator::from_real_diagonal(values),
        OperatorSpec::Matrix(rows) => HermitianOperator::new(parse_complex_matrix(rows)?)?,
        OperatorSpec::FromModel(true) => {
            let doc = doc.ok_or_else(|| config("from_model needs a config document"))?;
            multiplication_operator(&hilbert_spaces(doc)?.1.estimable)?
        }
        OperatorSpec::FromModel(false) => return Err(config("from_model must be true")),
    })
}

/// Spin-½ operators at angle `u` (degrees) apart, or the document's `born` section.
pub fn born(ctx: &Context, angle_deg: Option<f64>) -> CliResult<Report> {
    let (spec, doc) = match (angle_deg, &ctx.document) {
        (Some(u), _) => (
            crate::config::BornSpec {
                a: OperatorSpec::SpinDeg(0.0),
                b: OperatorSpec::SpinDeg(u),
                transport: None,
                prior: None,
                measurement: None,
                outcomes: None,
            },
            None,
        ),
        (None, Some(doc)) => (Document::require(&doc.born, "born")?.clone(), Some(doc)),
        (None, None) => return Err(config("born needs --angle-deg or a config document with a 'born' section")),
    };
    let ta = operator(&spec.a, doc)?;
    let mut tb = operator(&spec.b, doc)?;
    if let Some(d) = &spec.transport {
        tb = transport_operator(&tb, &parse_complex_matrix(d)?)?;
    }
    let sys_a = ta.eigensystem()?;
    let sys_b = tb.eigensystem()?;
    let b = born_matrix(&sys_a, &sys_b)?;
    let defect = doubly_stochastic_defect(&b);
    let mut outputs = json!({
        "eigenvalues_a": sys_a.values(),
        "eigenvalues_b": sys_b.values(),
        "operator_b": complex_json(tb.matrix()),
        "born_matrix": real_json(&b),
        "doubly_stochastic_defect": defect,
    });
    let mut report =
        Report::new("born", ctx.seed).tolerance("doubly_stochastic", 1e-10).check("doubly_stochastic", defect <= 1e-10);
    if let Some(u) = angle_deg {
        let half = u.to_radians() / 2.0;
        let oracle = [[half.cos().powi(2), half.sin().powi(2)], [half.sin().powi(2), half.cos().powi(2)]];
        let gap = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| (b[(i, j)] - oracle[i][j]).abs())
            .fold(0.0, f64::max);
        outputs["half_angle_oracle_gap"] = json!(gap);
        report = report.tolerance("spin_oracle", 1e-12).check("matches_half_angle_oracle", gap <= 1e-12);
    }
    if let Some(m) = &spec.measurement {
        let fam = measurement_family(&model(m)?, &sys_b)?;
        let all: Vec<usize> = (0..fam.num_outcomes()).collect();
        let total = fam.operator(&all)?;
        let norm_defect = max_abs_diff(&total, &CMatrix::identity(fam.dim(), fam.dim()));
        outputs["measurement_operators"] = Value::Array(fam.operators().iter().map(complex_json).collect());
        report = report.check("measurement_normalized", norm_defect <= STATE_TOL);
        if let Some(prior) = &spec.prior {
            let sigma = density_from_prior(prior, &sys_a)?;
            let outcomes = spec.outcomes.clone().unwrap_or(all);
            let p = outcome_probability(&sigma, &fam, &outcomes)?;
            outputs["density"] = complex_json(sigma.matrix());
            outputs["outcome_set"] = json!(outcomes);
            outputs["outcome_probability"] = json!(p);
            report = report.check("probability_in_unit_interval", (-STATE_TOL..=1.0 + STATE_TOL).contains(&p));
        }
    }
    let inputs = match doc {
        Some(d) => serde_json::to_value(d)?,
        None => json!({ "angle_deg": angle_deg }),
    };
    Ok(report.inputs(inputs).outputs(outputs))
}

pub fn evolve(ctx: &Context, omega: f64, times: Vec<f64>) -> CliResult<Report> {
    let spec = match &ctx.document {
        Some(doc) if doc.evolve.is_some() => Document::require(&doc.evolve, "evolve")?.clone(),
        _ => EvolveSpec {
            hamiltonian: OperatorSpec::Diagonal(vec![0.0, omega]),
            state: vec![[0.6, 0.0], [0.0, 0.8]],
            times,
            hbar: 1.0,
        },
    };
    if spec.times.is_empty() {
        return Err(config("evolve needs at least one time"));
    }
    let h = operator(&spec.hamiltonian, ctx.document.as_ref())?;
    let v0 = StateVector::new(parse_complex_vector(&spec.state))?;
    let mut states = Vec::new();
    let mut worst_norm: f64 = 0.0;
    for &t in &spec.times {
        let v = time_evolve(&v0, &h, t, spec.hbar)?;
        worst_norm = worst_norm.max((v.norm() - 1.0).abs());
        states.push(json!({ "t": t, "state": complex_vec_json(v.components()) }));
    }
    let t0 = spec.times[0];
    let half = time_evolve(&time_evolve(&v0, &h, t0 / 2.0, spec.hbar)?, &h, t0 / 2.0, spec.hbar)?;
    let whole = time_evolve(&v0, &h, t0, spec.hbar)?;
    let composition = (half.components() - whole.components()).norm();
    let coarse = schrodinger_residual(&v0, &h, t0, 1e-2, spec.hbar)?;
    let fine = schrodinger_residual(&v0, &h, t0, 1e-3, spec.hbar)?;
    let order = (coarse / fine).log10();
    let outputs = json!({
        "states": states,
        "max_norm_defect": worst_norm,
        "composition_defect": composition,
        "schrodinger_residual": { "dt_1e-2": coarse, "dt_1e-3": fine, "observed_order": order },
        "propagator_at_first_time": complex_json(&evolution_operator(&h, t0, spec.hbar)?),
    });
    Ok(Report::new("evolve", ctx.seed)
        .inputs(serde_json::to_value(&spec)?)
        .outputs(outputs)
        .tolerance("norm", 1e-12)
        .tolerance("composition", 1e-10)
        .check("norm_preserved", worst_norm <= 1e-12)
        .check("composition_law", composition <= 1e-10)
        .check("second_order_residual", (1.8..=2.2).contains(&order)))
}
