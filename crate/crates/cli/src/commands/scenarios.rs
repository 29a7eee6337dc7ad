//! Worked scenarios addressable from the command line.

use std::str::FromStr;

use serde_json::json;
use symqm::parameters::sampled::{classify_location_scale, FocusFormula, LocationScaleGroup, SamplingConfig};
use symqm::scenarios::chsh::{chsh_classical_bruteforce, chsh_quantum, ChshConfig};
use symqm::scenarios::cox::cox_conditionality_demo;
use symqm::scenarios::epr::{epr_prior_monte_carlo, EprConfig};
use symqm::scenarios::lorentz::{boost_compose, mat_diff, mat_mul, velocity_addition, Boost};
use symqm::scenarios::naturalness::naturalness_suite;
use symqm::scenarios::translation::{commutator_check, residual_table, translation_generator_check, TestFunction};
use symqm::{Rational, StatModel64};

use super::{model, Context};
use crate::error::{config, CliError, CliResult};
use crate::report::Report;

fn sampling(ctx: &Context, samples: usize) -> SamplingConfig {
    SamplingConfig { n_samples: samples, match_tol: ctx.match_tol, check_tol: ctx.check_tol, seed: ctx.seed }
}

pub fn naturalness(ctx: &Context, formula: Option<&str>, group: &str, samples: usize) -> CliResult<Report> {
    let cfg = sampling(ctx, samples);
    let report =
        Report::new("naturalness", ctx.seed).tolerance("match", cfg.match_tol).tolerance("check", cfg.check_tol);
    match formula {
        Some(f) => {
            let formula = FocusFormula::parse(f)?;
            let group = LocationScaleGroup::parse(group)?;
            let r = classify_location_scale::<f64>(formula, group, &cfg)?;
            let outputs = json!({
                "verdict": r.verdict,
                "counterexample": r.counterexample,
                "samples_used": r.samples_used,
                "pairs_rejected": r.pairs_rejected,
            });
            Ok(report
                .inputs(json!({ "formula": formula.id(), "group": group.id(), "samples": samples }))
                .outputs(outputs))
        }
        None => {
            let rows = naturalness_suite(&cfg)?;
            let all = rows.iter().all(|r| r.agrees);
            let table = rows
                .iter()
                .map(|r| {
                    vec![
                        json!(r.formula),
                        json!(r.group),
                        serde_json::to_value(r.expected).unwrap_or_default(),
                        serde_json::to_value(r.observed).unwrap_or_default(),
                        json!(r.samples_used),
                        json!(r.agrees),
                    ]
                })
                .collect();
            Ok(report
                .inputs(json!({ "suite": "location-scale reference", "samples": samples }))
                .outputs(json!({ "rows": rows, "all_agree": all }))
                .check("reference_classification", all)
                .table(&["formula", "group", "expected", "observed", "samples_used", "agrees"], table))
        }
    }
}

pub fn chsh(ctx: &Context, mode: &str, angles: &[f64]) -> CliResult<Report> {
    match mode {
        "classical" => {
            let c = chsh_classical_bruteforce();
            let table = c
                .rows
                .iter()
                .map(|r| vec![json!(r.lambda_a), json!(r.lambda_a2), json!(r.mu_b), json!(r.mu_b2), json!(r.value)])
                .collect();
            Ok(Report::new("chsh", ctx.seed)
                .inputs(json!({ "mode": mode }))
                .outputs(json!({ "rows": c.rows, "bound": c.bound }))
                .check("all_rows_plus_minus_two", c.all_plus_minus_two)
                .table(&["lambda_a", "lambda_a_prime", "mu_b", "mu_b_prime", "value"], table))
        }
        "quantum" => {
            let [a, a2, b, b2] = <[f64; 4]>::try_from(angles)
                .map_err(|_| CliError::Usage("--angles needs four values: a, a', b, b' in degrees".into()))?;
            let q = chsh_quantum(&ChshConfig::planar_degrees([a, a2, b, b2]));
            Ok(Report::new("chsh", ctx.seed)
                .inputs(json!({ "mode": mode, "angles_deg": angles }))
                .outputs(json!({
                    "correlations": q.correlations,
                    "value": q.expression,
                    "s_abs": q.s_abs,
                    "violated": q.violated,
                    "path_discrepancy": q.path_discrepancy,
                }))
                .tolerance("paths", 1e-12)
                .check("paths_agree", q.path_discrepancy <= 1e-12))
        }
        other => Err(CliError::Usage(format!("unknown mode '{other}' (classical | quantum)"))),
    }
}

pub fn epr(ctx: &Context, angle_deg: f64, samples: usize, epsilon_norm: f64) -> CliResult<Report> {
    let cfg = EprConfig { angle: angle_deg.to_radians(), samples, seed: ctx.seed, epsilon_norm };
    let e = epr_prior_monte_carlo(&cfg)?;
    Ok(Report::new("epr", ctx.seed)
        .inputs(json!({ "angle_deg": angle_deg, "samples": samples, "epsilon_norm": epsilon_norm }))
        .outputs(json!({
            "estimate": e.mean,
            "std_error": e.std_error,
            "expected": e.expected,
            "z_score": e.z_score(),
            "prior_component_mean": e.prior_component_mean,
            "blocks": e.blocks,
        }))
        .tolerance("z_band", ctx.z_band)
        .check("within_band", e.z_score() <= ctx.z_band))
}

fn symmetric_binary(p: f64) -> CliResult<StatModel64> {
    Ok(StatModel64::new(vec![0.0, 1.0], vec![vec![1.0 - p, p], vec![p, 1.0 - p]])?)
}

pub fn cox(ctx: &Context, p1: f64, p2: f64, coin: f64) -> CliResult<Report> {
    let (f1, f2, coin, inputs) = match ctx.document.as_ref().and_then(|d| d.cox.as_ref()) {
        Some(spec) => (model(&spec.f1)?, model(&spec.f2)?, spec.coin_bias, serde_json::to_value(spec)?),
        None => (symmetric_binary(p1)?, symmetric_binary(p2)?, coin, json!({ "p1": p1, "p2": p2, "coin_bias": coin })),
    };
    let r = cox_conditionality_demo(&f1, &f2, coin)?;
    let table = r
        .rows
        .iter()
        .map(|row| {
            vec![json!(row.parameter), json!(row.var_given_z1), json!(row.var_given_z2), json!(row.var_unconditional)]
        })
        .collect();
    Ok(Report::new("cox", ctx.seed)
        .inputs(inputs)
        .outputs(serde_json::to_value(&r)?)
        .table(&["parameter", "var_given_z1", "var_given_z2", "var_unconditional"], table))
}

/// Decimal or `p/q` fraction.
pub fn parse_rational(s: &str) -> Option<Rational> {
    if let Ok(r) = Rational::from_str(s.trim()) {
        return Some(r);
    }
    let (int, frac) = s.trim().split_once('.')?;
    let digits = frac.len() as u32;
    let scale = 10i64.checked_pow(digits)?;
    let whole: i64 = format!("{int}{frac}").parse().ok()?;
    Some(Rational::new(whole, scale))
}

pub fn boost(ctx: &Context, v1: &str, v2: &str, c: &str) -> CliResult<Report> {
    let num = |s: &str| -> CliResult<f64> {
        parse_rational(s)
            .map(|r| *r.numer() as f64 / *r.denom() as f64)
            .or_else(|| s.parse().ok())
            .ok_or_else(|| CliError::Usage(format!("cannot parse '{s}' as a number")))
    };
    let (fv1, fv2, fc) = (num(v1)?, num(v2)?, num(c)?);
    let b1 = Boost::new(fv1, fc)?;
    let b2 = Boost::new(fv2, fc)?;
    let b12 = boost_compose(&b1, &b2)?;
    let product_gap = mat_diff(&b12.matrix(), &mat_mul(&b1.matrix(), &b2.matrix()));
    let exact = match (parse_rational(v1), parse_rational(v2), parse_rational(c)) {
        (Some(a), Some(b), Some(cc)) => Some(velocity_addition(a, b, cc)?.to_string()),
        _ => None,
    };
    let (xi, tau) = (1.0, 1.0 / fc);
    let lorentz = b1.transform(xi, tau);
    let rapidity = b1.transform_rapidity(xi, tau);
    let forms_gap = (lorentz.0 - rapidity.0).abs().max((lorentz.1 - rapidity.1).abs() * fc);
    Ok(Report::new("boost", ctx.seed)
        .inputs(json!({ "v1": v1, "v2": v2, "c": c }))
        .outputs(json!({
            "rapidity_1": b1.rapidity(),
            "rapidity_2": b2.rapidity(),
            "combined_velocity": b12.velocity(),
            "combined_velocity_exact": exact,
            "combined_rapidity": b12.rapidity(),
            "gamma_1": b1.gamma(),
            "matrix_1": b1.matrix(),
            "matrix_combined": b12.matrix(),
            "matrix_product_gap": product_gap,
            "event": [xi, tau],
            "transformed_velocity_form": [lorentz.0, lorentz.1],
            "transformed_rapidity_form": [rapidity.0, rapidity.1],
            "forms_gap": forms_gap,
        }))
        .tolerance("matrix", 1e-12)
        .check("rapidity_additive", product_gap <= 1e-12)
        .check("forms_agree", forms_gap <= 1e-12))
}

pub fn generator(ctx: &Context, function: &str, shift: f64, terms: u32, hbar: f64) -> CliResult<Report> {
    let f = match function {
        "gaussian" => TestFunction::Gaussian { center: 0.0, width: 1.0 },
        "sine" => TestFunction::Sine { frequency: 1.0 },
        other => return Err(config(format!("unknown test function '{other}' (gaussian | sine)"))),
    };
    let grid = f.default_grid();
    let main = translation_generator_check(&f, &grid, shift, terms)?;
    let spacings: Vec<f64> = [8.0, 4.0, 2.0, 1.0].iter().map(|k| grid.spacing * k).collect();
    let table = residual_table(&f, shift, &[1, 2, 4, 8, 12], &spacings)?;
    let commutator = match f {
        TestFunction::Gaussian { .. } => Some(commutator_check(&f, &grid, hbar)?),
        TestFunction::Sine { .. } => None,
    };
    let rows =
        table.iter().map(|r| vec![json!(r.terms), json!(r.spacing), json!(r.points), json!(r.max_residual)]).collect();
    let mut report = Report::new("generator", ctx.seed)
        .inputs(json!({ "function": f, "grid": grid, "shift": shift, "terms": terms, "hbar": hbar }))
        .outputs(json!({ "residual": main, "table": table, "commutator": commutator }))
        .tolerance("translation", 1e-8)
        .check("translation_series", main.max_residual < 1e-8);
    if let Some(c) = commutator {
        report =
            report.tolerance("commutator", 1e-6).check("commutator_on_smooth_functions", c.relative_residual < 1e-6);
    }
    Ok(report.table(&["terms", "spacing", "points", "max_residual"], rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_from_text() {
        assert_eq!(parse_rational("1/2"), Some(Rational::new(1, 2)));
        assert_eq!(parse_rational("0.6"), Some(Rational::new(3, 5)));
        assert_eq!(parse_rational("3"), Some(Rational::from_integer(3)));
        assert_eq!(parse_rational("abc"), None);
    }
}
