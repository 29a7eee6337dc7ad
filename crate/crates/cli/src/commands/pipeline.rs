//! Finite pipelines driven by the config document: orbits, reduction,
//! representation, sufficiency and the Hilbert space construction.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use symqm::group::invariant_measure;
use symqm::parameters::{induced_action, is_natural_exact, maximal_natural_subgroup, reduce_to_orbits, InducedAction};
use symqm::quantum::multiplication_operator;
use symqm::representation::{
    invariance_defect, orbit_split, parametric_invariant_subspace, reduced_invariant_subspace, regular_representation,
    FunctionSpace, INVARIANCE_TOL,
};
use symqm::scenarios::spin::{spin_half_orbit_structure, SpinConfig};
use symqm::stat_model::{
    build_spaces, expectation_map, intertwining_defect, is_complete, is_sufficient, is_unbiasedly_estimable,
    HilbertSpaces, SampleSpace, StatModel, IDENTITY_TOL, RANK_TOL,
};
use symqm::{ElementSet, FocusParameter, GroupAction, ReducedParameter};

use super::{complex_json, labels_json, model, real_json, statistic, Context};
use crate::config::{build_action, build_parameter, BuiltAction, Document, Label};
use crate::error::{config, CliResult};
use crate::report::Report;

struct Stage {
    built: BuiltAction,
    theta: FocusParameter<Label>,
    subgroup: ElementSet,
    induced: InducedAction<Label>,
}

fn group_stage(doc: &Document) -> CliResult<Stage> {
    let built = build_action(Document::require(&doc.action, "action")?)?;
    let spec = Document::require(&doc.parameter, "parameter")?;
    let theta = FocusParameter::new(spec.name.clone(), build_parameter(spec, &built)?);
    let subgroup: ElementSet = match &doc.subgroup {
        Some(elems) => {
            let set: ElementSet = elems.iter().copied().collect();
            if !built.action.group().is_subgroup(&set) {
                return Err(config("'subgroup' is not a subgroup of the acting group"));
            }
            set
        }
        None => maximal_natural_subgroup(&theta, &built.action)?,
    };
    let induced = induced_action(&theta, &subgroup, &built.action)?;
    Ok(Stage { built, theta, subgroup, induced })
}

fn reduce_stage(doc: &Document, stage: &Stage) -> CliResult<Option<ReducedParameter<Label>>> {
    match &doc.selection {
        Some(sel) => Ok(Some(reduce_to_orbits(&stage.theta, &stage.subgroup, &stage.built.action, sel)?)),
        None => Ok(None),
    }
}

fn function_space(doc: &Document, action: &GroupAction) -> CliResult<FunctionSpace<f64>> {
    let orbits = action.orbits();
    let weights = match &doc.orbit_weights {
        Some(w) => w.clone(),
        None => orbits.iter().map(|o| o.members.len() as f64).collect(),
    };
    Ok(FunctionSpace::new(action, &invariant_measure(action, &weights)?)?)
}

fn orbits_json(action: &GroupAction) -> Value {
    json!(action.orbits().iter().map(|o| o.members.clone()).collect::<Vec<_>>())
}

pub fn orbits(ctx: &Context, spin: Option<SpinConfig>) -> CliResult<Report> {
    if let Some(cfg) = spin {
        let r = spin_half_orbit_structure(cfg)?;
        let fmt = |v: &[symqm::Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let outputs = json!({
            "num_points": r.num_points,
            "subgroup_order": r.subgroup_order,
            "component_values": fmt(&r.component_values),
            "orbits": r.orbits.iter().map(|o| fmt(o)).collect::<Vec<_>>(),
            "reduced_values": fmt(&r.reduced_values),
            "invariant_dimension": r.invariant_dimension,
            "invariance_defect": r.invariance_defect,
            "connected_matches": r.connected_matches,
        });
        let inputs = json!({
            "level": cfg.level, "axis": cfg.axis,
            "include_equator": cfg.include_equator, "trivial_subgroup": cfg.trivial_subgroup,
        });
        let pairs_ok = r.orbits.iter().all(|o| o.len() == 1 || (o.len() == 2 && o[0] == -o[1]));
        return Ok(Report::new("orbits", ctx.seed)
            .inputs(inputs)
            .outputs(outputs)
            .tolerance("invariance", INVARIANCE_TOL)
            .check("orbits_are_sign_pairs_or_fixed", pairs_ok)
            .check("reduced_subspace_invariant", r.invariance_defect <= INVARIANCE_TOL));
    }
    let doc = ctx.document()?;
    let built = build_action(Document::require(&doc.action, "action")?)?;
    let mut outputs = json!({
        "group_order": built.action.group().order(),
        "num_points": built.action.num_points(),
        "orbits": orbits_json(&built.action),
        "transitive": built.action.is_transitive(),
    });
    let mut report = Report::new("orbits", ctx.seed);
    if doc.parameter.is_some() {
        let stage = group_stage(doc)?;
        let natural = is_natural_exact(&stage.theta, &stage.subgroup, &stage.built.action)?.is_natural();
        outputs["parameter"] = json!({
            "name": stage.theta.name(),
            "image": labels_json(&stage.theta.image()),
            "subgroup": stage.subgroup,
            "induced_group_order": stage.induced.action.group().order(),
            "induced_orbits": stage.induced.orbit_labels().iter().map(|o| labels_json(o)).collect::<Vec<_>>(),
        });
        report = report.check("natural_under_subgroup", natural);
    }
    Ok(report.inputs(serde_json::to_value(doc)?).outputs(outputs))
}

pub fn reduce(ctx: &Context) -> CliResult<Report> {
    let doc = ctx.document()?;
    let stage = group_stage(doc)?;
    let reduced = reduce_stage(doc, &stage)?.ok_or_else(|| config("missing section 'selection'"))?;
    let outputs = json!({
        "subgroup": stage.subgroup,
        "induced_orbits": stage.induced.orbit_labels().iter().map(|o| labels_json(o)).collect::<Vec<_>>(),
        "selected_orbits": reduced.selected_orbits,
        "values": reduced.values,
        "support": reduced.support(),
        "image": labels_json(&reduced.image()),
    });
    Ok(Report::new("reduce", ctx.seed)
        .inputs(serde_json::to_value(doc)?)
        .outputs(outputs)
        .check("natural_on_support", true))
}

pub fn represent(ctx: &Context) -> CliResult<Report> {
    let doc = ctx.document()?;
    let stage = group_stage(doc)?;
    let action = &stage.built.action;
    let fs = function_space(doc, action)?;
    let rep = regular_representation(&fs);
    let hom = rep.homomorphism_defect(action);
    let unit = rep.unitarity_defect(fs.weights());
    let sub = parametric_invariant_subspace(&stage.theta, &fs)?;
    let defect = invariance_defect(&sub, &rep, &stage.subgroup);
    let split = orbit_split(&stage.theta, &stage.induced, &fs)?;
    let mut outputs = json!({
        "dimension": fs.dimension(),
        "weights": fs.weights(),
        "homomorphism_defect": hom,
        "unitarity_defect": unit,
        "parametric_dimension": sub.dimension(),
        "parametric_invariance_defect": defect,
        "orbit_split_dimensions": split.iter().map(|s| s.dimension()).collect::<Vec<_>>(),
        "generator_matrices": stage.subgroup.iter().take(4).map(|&g| complex_json(rep.matrix(g))).collect::<Vec<_>>(),
    });
    let mut report = Report::new("represent", ctx.seed)
        .tolerance("invariance", INVARIANCE_TOL)
        .check("homomorphism", hom <= INVARIANCE_TOL)
        .check("unitary", unit <= INVARIANCE_TOL)
        .check("parametric_subspace_invariant", defect <= INVARIANCE_TOL)
        .check("split_dimensions_add_up", split.iter().map(|s| s.dimension()).sum::<usize>() == sub.dimension());
    if let Some(reduced) = reduce_stage(doc, &stage)? {
        let rsub = reduced_invariant_subspace(&reduced, &fs)?;
        let rdef = invariance_defect(&rsub, &rep, &stage.subgroup);
        outputs["reduced_dimension"] = json!(rsub.dimension());
        outputs["reduced_invariance_defect"] = json!(rdef);
        report = report.check("reduced_subspace_invariant", rdef <= INVARIANCE_TOL);
    }
    Ok(report.inputs(serde_json::to_value(doc)?).outputs(outputs))
}

pub fn suffstat(ctx: &Context) -> CliResult<Report> {
    let doc = ctx.document()?;
    let m = model(Document::require(&doc.model, "model")?)?;
    let t = statistic(doc, m.num_outcomes())?;
    let sufficient = is_sufficient(&t, &m)?;
    let complete = is_complete(&t, &m)?;
    let a = expectation_map(&m);
    let est = is_unbiasedly_estimable(m.parameters(), &m)?;
    let outputs = json!({
        "sufficient": sufficient,
        "complete": complete,
        "statistic_values": t.num_values(),
        "class_matrix": real_json(&t.class_matrix(&m)),
        "expectation_rank": a.rank(),
        "parameter_estimable": est.estimable,
        "estimator": est.witness.map(|w| w.iter().copied().collect::<Vec<f64>>()),
        "estimability_residual": est.residual,
    });
    Ok(Report::new("suffstat", ctx.seed)
        .inputs(serde_json::to_value(doc)?)
        .outputs(outputs)
        .tolerance("identity", IDENTITY_TOL)
        .tolerance("rank", RANK_TOL))
}

/// Builds the Hilbert spaces from the document's model and statistic.
pub fn hilbert_spaces(doc: &Document) -> CliResult<(StatModel<f64>, HilbertSpaces<f64>)> {
    let m = model(Document::require(&doc.model, "model")?)?;
    let t = statistic(doc, m.num_outcomes())?;
    let sample = match &doc.base_measure {
        Some(w) => SampleSpace::new(w.clone())?,
        None => SampleSpace::uniform(m.num_outcomes())?,
    };
    let spaces = build_spaces(&m, &t, &sample, doc.parameter_weights.as_deref())?;
    Ok((m, spaces))
}

pub fn hilbert(ctx: &Context) -> CliResult<Report> {
    let doc = ctx.document()?;
    let (m, spaces) = hilbert_spaces(doc)?;
    let u = spaces.unitary_between();
    let n = u.nrows();
    let unitary_defect = (u.transpose() * &u - nalgebra::DMatrix::identity(n, n)).amax();
    let estimator = spaces.unique_estimator(m.parameters())?;
    let s = multiplication_operator(&spaces.estimable)?;
    let mut outputs = json!({
        "observable_dimension": spaces.dimension(),
        "estimable_dimension": spaces.estimable.basis.len(),
        "kernel_dimension": spaces.factor.kernel_basis.len(),
        "restricted_map": real_json(&spaces.restricted_map),
        "unitary_defect": unitary_defect,
        "parameter_estimator": estimator.iter().copied().collect::<Vec<f64>>(),
        "multiplication_spectrum": s.spectrum(),
    });
    let mut report = Report::new("hilbert", ctx.seed)
        .tolerance("identity", IDENTITY_TOL)
        .tolerance("rank", RANK_TOL)
        .check("dimensions_match", spaces.dimension() == spaces.estimable.basis.len())
        .check("unitary_between", unitary_defect <= 1e-12);

    // upstream stages, when present, must produce the model's parameter values
    if doc.action.is_some() && doc.parameter.is_some() {
        let stage = group_stage(doc)?;
        let values: Vec<Label> = match reduce_stage(doc, &stage)? {
            Some(r) => r.image(),
            None => stage.theta.image(),
        };
        let numeric: Option<Vec<f64>> = values.iter().map(Label::as_f64).collect();
        let matches = numeric.as_deref() == Some(m.parameters());
        outputs["upstream_values"] = labels_json(&values);
        report = report.check("model_matches_reduction", matches);
    }
    if let Some(spec) = &doc.intertwining {
        let (sample_action, parameter_action) = paired_actions(spec, m.num_outcomes(), m.num_parameters())?;
        let t = statistic(doc, m.num_outcomes())?;
        let sample = match &doc.base_measure {
            Some(w) => SampleSpace::new(w.clone())?,
            None => SampleSpace::uniform(m.num_outcomes())?,
        };
        let pairing: Vec<usize> = (0..sample_action.group().order()).collect();
        let defect = intertwining_defect(&m, &t, &sample, &sample_action, &parameter_action, &pairing)?;
        outputs["intertwining_defect"] = json!(defect);
        outputs["paired_group_order"] = json!(pairing.len());
        report = report.check("intertwining", defect <= IDENTITY_TOL);
    }
    Ok(report.inputs(serde_json::to_value(doc)?).outputs(outputs))
}

/// One group acting on outcomes and parameter values at once; generator `k`
/// moves outcomes by `sample_generators[k]` and values by
/// `parameter_generators[k]`.
fn paired_actions(
    spec: &crate::config::IntertwiningSpec,
    outcomes: usize,
    params: usize,
) -> CliResult<(GroupAction, GroupAction)> {
    if spec.sample_generators.len() != spec.parameter_generators.len() {
        return Err(config("intertwining needs as many sample generators as parameter generators"));
    }
    let joint: Vec<Vec<usize>> = spec
        .sample_generators
        .iter()
        .zip(&spec.parameter_generators)
        .map(|(s, p)| s.iter().copied().chain(p.iter().map(|x| x + outcomes)).collect())
        .collect();
    let action = GroupAction::from_permutations(outcomes + params, &joint)?;
    let (sample, _) = action.restrict_points(&(0..outcomes).collect::<BTreeSet<_>>())?;
    let (param, _) = action.restrict_points(&(outcomes..outcomes + params).collect::<BTreeSet<_>>())?;
    Ok((sample, param))
}
