//! Discretized spin-½: the cube's rotation group acting on axis vectors, with
//! the focus parameter "component along a coordinate axis".
//!
//! Points are integer vectors in doubled units, so `±2e_i` has component
//! `±1` and `±e_i` has component `±½`.

use crate::discrete::{IntVector3, OctahedralRotations};
use crate::error::{Error, Result};
use crate::group::{invariant_measure, ElementSet, GroupAction};
use crate::parameters::{induced_action, maximal_natural_subgroup, reduce_to_orbits, FocusParameter};
use crate::representation::{
    connect_spaces, invariance_defect, reduced_invariant_subspace, regular_representation, FunctionSpace,
};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinConfig {
    /// 1: components `{-1, 0, 1}`; 2: adds a half-length shell.
    pub level: u8,
    /// Coordinate axis `a` (0, 1 or 2).
    pub axis: usize,
    /// Keep points with zero component along `a`.
    pub include_equator: bool,
    /// Use the trivial subgroup instead of the maximal natural one.
    pub trivial_subgroup: bool,
}

impl Default for SpinConfig {
    fn default() -> Self {
        SpinConfig { level: 1, axis: 2, include_equator: true, trivial_subgroup: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinOrbitReport {
    pub config: SpinConfig,
    pub num_points: usize,
    pub subgroup_order: usize,
    /// Distinct component values, ascending.
    pub component_values: Vec<Rational>,
    /// Orbits of the induced group on component values.
    pub orbits: Vec<Vec<Rational>>,
    /// Values of the parameter reduced to the orbit containing `1`.
    pub reduced_values: Vec<Rational>,
    pub invariant_dimension: usize,
    pub invariance_defect: f64,
    /// Whether the reduced subspace for the next axis, moved by a conjugating
    /// rotation, coincides with the one for `a`. Only computed for the full
    /// point set and the maximal subgroup.
    pub connected_matches: Option<bool>,
}

fn shell_points(level: u8) -> Result<Vec<IntVector3>> {
    match level {
        1 => Ok(OctahedralRotations::axis_points(2)),
        2 => {
            let mut p = OctahedralRotations::axis_points(2);
            p.extend(OctahedralRotations::axis_points(1));
            Ok(p)
        }
        _ => Err(Error::input("spin_half_orbit_structure", format!("unsupported level {level}"))),
    }
}

fn component(points: &[IntVector3], axis: usize) -> FocusParameter<Rational> {
    FocusParameter::new("component", points.iter().map(|p| Rational::new(p[axis], 2)).collect())
}

fn counting_space(action: &GroupAction) -> Result<FunctionSpace<f64>> {
    let sizes: Vec<f64> = action.orbits().iter().map(|o| o.members.len() as f64).collect();
    FunctionSpace::new(action, &invariant_measure(action, &sizes)?)
}

pub fn spin_half_orbit_structure(config: SpinConfig) -> Result<SpinOrbitReport> {
    const OP: &str = "spin_half_orbit_structure";
    if config.axis > 2 {
        return Err(Error::input(OP, format!("axis {} out of range", config.axis)));
    }
    let oct = OctahedralRotations::on_points(shell_points(config.level)?)?;
    let theta_full = component(oct.points(), config.axis);
    let sub_full = if config.trivial_subgroup {
        ElementSet::from([oct.action().group().identity()])
    } else {
        maximal_natural_subgroup(&theta_full, oct.action())?
    };

    let (action, theta, subgroup) = if config.include_equator {
        (oct.action().clone(), theta_full.clone(), sub_full.clone())
    } else {
        let (restricted, _) = oct.action().restrict_group(&sub_full)?;
        let keep = (0..oct.points().len()).filter(|&p| oct.points()[p][config.axis] != 0).collect();
        let (on_keep, kept) = restricted.restrict_points(&keep)?;
        let pts: Vec<IntVector3> = kept.iter().map(|&p| oct.points()[p]).collect();
        let all: ElementSet = (0..on_keep.group().order()).collect();
        (on_keep, component(&pts, config.axis), all)
    };

    let induced = induced_action(&theta, &subgroup, &action)?;
    let orbits = induced.orbit_labels();
    let one = Rational::from_integer(1);
    let top = orbits
        .iter()
        .position(|o| o.contains(&one))
        .ok_or_else(|| Error::contract(OP, "no orbit contains the value 1"))?;
    let reduced = reduce_to_orbits(&theta, &subgroup, &action, &[top])?;

    let fs = counting_space(&action)?;
    let rep = regular_representation(&fs);
    let sub_a = reduced_invariant_subspace(&reduced, &fs)?;
    let defect = invariance_defect(&sub_a, &rep, &subgroup);

    let connected_matches = if config.include_equator && !config.trivial_subgroup {
        let other = (config.axis + 1) % 3;
        let theta_b = component(oct.points(), other);
        let sub_b_group = maximal_natural_subgroup(&theta_b, &action)?;
        let g = action
            .group()
            .find_conjugator(&subgroup, &sub_b_group)?
            .ok_or_else(|| Error::contract(OP, "axis subgroups are not conjugate"))?;
        let top_b = induced_action(&theta_b, &sub_b_group, &action)?
            .orbit_labels()
            .iter()
            .position(|o| o.contains(&one))
            .ok_or_else(|| Error::contract(OP, "no orbit contains the value 1"))?;
        let reduced_b = reduce_to_orbits(&theta_b, &sub_b_group, &action, &[top_b])?;
        let moved = connect_spaces(&rep, g, &reduced_invariant_subspace(&reduced_b, &fs)?)?;
        Some(moved.same_span(&sub_a))
    } else {
        None
    };

    Ok(SpinOrbitReport {
        config,
        num_points: action.num_points(),
        subgroup_order: subgroup.len(),
        component_values: theta.image(),
        orbits,
        reduced_values: reduced.image(),
        invariant_dimension: sub_a.dimension(),
        invariance_defect: defect,
        connected_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn level_one_has_a_pair_and_a_fixed_point() {
        let rep = spin_half_orbit_structure(SpinConfig::default()).unwrap();
        assert_eq!(rep.subgroup_order, 8);
        assert_eq!(rep.component_values, vec![r(-1, 1), r(0, 1), r(1, 1)]);
        assert_eq!(rep.orbits, vec![vec![r(-1, 1), r(1, 1)], vec![r(0, 1)]]);
        assert_eq!(rep.reduced_values, vec![r(-1, 1), r(1, 1)]);
        assert_eq!(rep.invariant_dimension, 2);
        assert!(rep.invariance_defect < 1e-12);
        assert_eq!(rep.connected_matches, Some(true));
    }

    #[test]
    fn level_two_without_equator() {
        let cfg = SpinConfig { level: 2, include_equator: false, ..SpinConfig::default() };
        let rep = spin_half_orbit_structure(cfg).unwrap();
        assert_eq!(rep.orbits, vec![vec![r(-1, 1), r(1, 1)], vec![r(-1, 2), r(1, 2)]]);
        let full = spin_half_orbit_structure(SpinConfig { level: 2, ..SpinConfig::default() }).unwrap();
        assert_eq!(full.orbits.len(), 3);
        assert!(full.orbits.contains(&vec![r(0, 1)]));
    }

    #[test]
    fn trivial_subgroup_gives_singletons() {
        let cfg = SpinConfig { trivial_subgroup: true, ..SpinConfig::default() };
        let rep = spin_half_orbit_structure(cfg).unwrap();
        assert!(rep.orbits.iter().all(|o| o.len() == 1));
        assert_eq!(rep.orbits.len(), 3);
    }

    #[test]
    fn subgroup_matches_axis_stabilizer() {
        let oct = OctahedralRotations::on_points(OctahedralRotations::axis_points(2)).unwrap();
        for axis in 0..3 {
            let g = maximal_natural_subgroup(&component(oct.points(), axis), oct.action()).unwrap();
            let expected: ElementSet = oct.axis_stabilizer_up_to_sign(axis).into_iter().collect();
            assert_eq!(g, expected);
        }
        assert!(spin_half_orbit_structure(SpinConfig { level: 3, ..SpinConfig::default() }).is_err());
    }
}
