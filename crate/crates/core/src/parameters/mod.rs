//! Focus parameters on a finite parameter space: naturalness, the maximal
//! subgroup under which a parameter is natural, the group it induces on its
//! image, and reduction to a selection of orbits of that induced group.

pub mod sampled;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, ElementSet, FiniteGroup, GroupAction, Homomorphism, Orbit};

/// Finite parameter space: named coordinates for each point plus the action
/// of the basic group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterSpace<C> {
    coordinate_names: Vec<String>,
    points: Vec<Vec<C>>,
    action: GroupAction,
}

impl<C> ParameterSpace<C> {
    pub fn new(coordinate_names: Vec<String>, points: Vec<Vec<C>>, action: GroupAction) -> Result<Self> {
        const OP: &str = "ParameterSpace::new";
        if points.len() != action.num_points() {
            return Err(Error::input(
                OP,
                format!("{} points but the action covers {}", points.len(), action.num_points()),
            ));
        }
        if let Some(i) = points.iter().position(|p| p.len() != coordinate_names.len()) {
            return Err(Error::input(OP, format!("point {i} has the wrong number of coordinates")));
        }
        Ok(ParameterSpace { coordinate_names, points, action })
    }

    pub fn coordinate_names(&self) -> &[String] {
        &self.coordinate_names
    }

    pub fn points(&self) -> &[Vec<C>] {
        &self.points
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A function from parameter points to a finite label set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FocusParameter<L> {
    name: String,
    values: Vec<L>,
}

impl<L: Ord + Clone> FocusParameter<L> {
    pub fn new(name: impl Into<String>, values: Vec<L>) -> Self {
        FocusParameter { name: name.into(), values }
    }

    pub fn from_fn<C>(name: impl Into<String>, space: &ParameterSpace<C>, f: impl Fn(&[C]) -> L) -> Self {
        FocusParameter::new(name, space.points().iter().map(|p| f(p)).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[L] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Distinct values, ascending.
    pub fn image(&self) -> Vec<L> {
        let set: BTreeSet<&L> = self.values.iter().collect();
        set.into_iter().cloned().collect()
    }

    /// The image together with the index of each point's value in it.
    pub fn blocks(&self) -> (Vec<L>, Vec<usize>) {
        let image = self.image();
        let idx = self.values.iter().map(|v| image.binary_search(v).expect("value present in image")).collect();
        (image, idx)
    }

    pub fn relabel<M: Ord + Clone>(&self, f: impl Fn(&L) -> M) -> FocusParameter<M> {
        FocusParameter::new(self.name.clone(), self.values.iter().map(f).collect())
    }
}

/// Points `φ1`, `φ2` with equal parameter value whose images under `element`
/// have different values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalnessWitness {
    pub phi1: usize,
    pub phi2: usize,
    pub element: Element,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Naturalness {
    Natural,
    Counterexample(NaturalnessWitness),
}

impl Naturalness {
    pub fn is_natural(&self) -> bool {
        matches!(self, Naturalness::Natural)
    }
}

/// Checks whether `g` maps level sets into level sets, via a single pass
/// assigning each block its image block.
fn block_violation(
    blocks: &[usize],
    num_blocks: usize,
    action: &GroupAction,
    g: Element,
) -> Option<NaturalnessWitness> {
    let mut image_block: Vec<Option<(usize, usize)>> = vec![None; num_blocks];
    for (p, &b) in blocks.iter().enumerate() {
        let target = blocks[action.act(p, g)];
        match image_block[b] {
            None => image_block[b] = Some((target, p)),
            Some((t, first)) if t != target => {
                return Some(NaturalnessWitness { phi1: first, phi2: p, element: g });
            }
            _ => {}
        }
    }
    None
}

fn check_theta<L>(op: &'static str, theta: &FocusParameter<L>, action: &GroupAction) -> Result<()> {
    if theta.values.len() != action.num_points() {
        return Err(Error::input(
            op,
            format!("parameter defined on {} points, space has {}", theta.values.len(), action.num_points()),
        ));
    }
    Ok(())
}

fn check_subgroup(op: &'static str, group: &FiniteGroup, subgroup: &ElementSet) -> Result<()> {
    if !group.is_subgroup(subgroup) {
        return Err(Error::contract(op, "element set is not a subgroup of the basic group"));
    }
    Ok(())
}

/// Exact naturalness: `θ(φ1) = θ(φ2)` implies `θ(φ1·g) = θ(φ2·g)` for every
/// `g` in `subgroup`.
pub fn is_natural_exact<L: Ord + Clone>(
    theta: &FocusParameter<L>,
    subgroup: &ElementSet,
    action: &GroupAction,
) -> Result<Naturalness> {
    const OP: &str = "is_natural_exact";
    check_theta(OP, theta, action)?;
    check_subgroup(OP, action.group(), subgroup)?;
    let (image, blocks) = theta.blocks();
    Ok(subgroup
        .iter()
        .find_map(|&g| block_violation(&blocks, image.len(), action, g))
        .map_or(Naturalness::Natural, Naturalness::Counterexample))
}

/// The elements preserving the level-set partition of `theta`. They always
/// form a subgroup; this is verified before returning.
pub fn maximal_natural_subgroup<L: Ord + Clone>(theta: &FocusParameter<L>, action: &GroupAction) -> Result<ElementSet> {
    const OP: &str = "maximal_natural_subgroup";
    check_theta(OP, theta, action)?;
    let (image, blocks) = theta.blocks();
    let h: ElementSet =
        (0..action.group().order()).filter(|&g| block_violation(&blocks, image.len(), action, g).is_none()).collect();
    if !action.group().is_subgroup(&h) {
        return Err(Error::contract(OP, "partition-preserving elements failed to form a subgroup"));
    }
    Ok(h)
}

/// Group induced by a natural parameter on its image `Θ`, with the quotient
/// homomorphism from the (re-indexed) subgroup onto it.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedAction<L> {
    /// Points of the induced action: the image of the parameter, ascending.
    pub labels: Vec<L>,
    /// Subgroup elements, as indices of the basic group.
    pub subgroup: Vec<Element>,
    /// The subgroup's own action on the parameter space.
    pub subgroup_action: GroupAction,
    /// `ḡ` acting on label indices.
    pub action: GroupAction,
    /// Subgroup index ↦ induced element index.
    pub quotient: Homomorphism,
}

impl<L: Ord + Clone> InducedAction<L> {
    /// Orbits of the induced group, as label indices.
    pub fn orbits(&self) -> Vec<Orbit> {
        self.action.orbits()
    }

    /// Orbits written out as label values.
    pub fn orbit_labels(&self) -> Vec<Vec<L>> {
        self.orbits().iter().map(|o| o.members.iter().map(|&i| self.labels[i].clone()).collect()).collect()
    }

    /// Index of `g` (basic-group element) within the re-indexed subgroup.
    pub fn subgroup_index(&self, g: Element) -> Option<usize> {
        self.subgroup.binary_search(&g).ok()
    }
}

/// `(θ ḡ)(φ) = θ(φ g)`: builds the induced action of `subgroup` on the image
/// of `theta`. Fails with the counterexample when `theta` is not natural.
pub fn induced_action<L: Ord + Clone + std::fmt::Debug>(
    theta: &FocusParameter<L>,
    subgroup: &ElementSet,
    action: &GroupAction,
) -> Result<InducedAction<L>> {
    const OP: &str = "induced_action";
    if let Naturalness::Counterexample(w) = is_natural_exact(theta, subgroup, action)? {
        return Err(Error::contract(
            OP,
            format!(
                "parameter '{}' is not natural: points {} and {} share value {:?} but element {} separates them",
                theta.name, w.phi1, w.phi2, theta.values[w.phi1], w.element
            ),
        ));
    }
    let (labels, blocks) = theta.blocks();
    let (subgroup_action, elems) = action.restrict_group(subgroup)?;

    // representative point of each label
    let mut rep = vec![usize::MAX; labels.len()];
    for (p, &b) in blocks.iter().enumerate() {
        if rep[b] == usize::MAX {
            rep[b] = p;
        }
    }
    let label_perm = |g: Element| -> Vec<usize> { rep.iter().map(|&p| blocks[action.act(p, g)]).collect() };

    let identity: Vec<usize> = (0..labels.len()).collect();
    let mut perms = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = [(identity, 0)].into_iter().collect();
    let mut quotient_map = Vec::with_capacity(elems.len());
    for &g in &elems {
        let perm = label_perm(g);
        let k = match index.get(&perm) {
            Some(&k) => k,
            None => {
                index.insert(perm.clone(), perms.len());
                perms.push(perm);
                perms.len() - 1
            }
        };
        quotient_map.push(k);
    }
    let induced = GroupAction::from_closed_permutations(labels.len(), perms)?;
    let quotient = Homomorphism::new(subgroup_action.group().clone(), induced.group().clone(), quotient_map)?;
    Ok(InducedAction { labels, subgroup: elems, subgroup_action, action: induced, quotient })
}

/// A parameter reduced to a selection of orbits of its induced group. It is
/// undefined (`None`) at points whose value lies outside the selection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedParameter<L> {
    pub base: FocusParameter<L>,
    pub selected_orbits: Vec<usize>,
    pub values: Vec<Option<L>>,
}

impl<L: Ord + Clone> ReducedParameter<L> {
    /// Points where the reduced parameter is defined.
    pub fn support(&self) -> BTreeSet<usize> {
        self.values.iter().enumerate().filter_map(|(p, v)| v.as_ref().map(|_| p)).collect()
    }

    /// Distinct reduced values, ascending.
    pub fn image(&self) -> Vec<L> {
        let set: BTreeSet<&L> = self.values.iter().flatten().collect();
        set.into_iter().cloned().collect()
    }

    /// The reduced parameter as a focus parameter on its support, with
    /// points renumbered in ascending order.
    pub fn on_support(&self) -> FocusParameter<L> {
        FocusParameter::new(self.base.name.clone(), self.values.iter().flatten().cloned().collect())
    }
}

/// Reduces `theta` to the union of the selected orbits (indices into the
/// induced action's orbit list) and re-checks that the result is natural
/// with respect to `subgroup` on its support.
pub fn reduce_to_orbits<L: Ord + Clone + std::fmt::Debug>(
    theta: &FocusParameter<L>,
    subgroup: &ElementSet,
    action: &GroupAction,
    orbit_selection: &[usize],
) -> Result<ReducedParameter<L>> {
    const OP: &str = "reduce_to_orbits";
    if orbit_selection.is_empty() {
        return Err(Error::input(OP, "empty orbit selection"));
    }
    let induced = induced_action(theta, subgroup, action)?;
    let orbits = induced.orbits();
    let mut keep = vec![false; induced.labels.len()];
    let mut selected: Vec<usize> = orbit_selection.to_vec();
    selected.sort_unstable();
    selected.dedup();
    for &k in &selected {
        let orbit = orbits
            .get(k)
            .ok_or_else(|| Error::input(OP, format!("orbit index {k} out of range ({} orbits)", orbits.len())))?;
        for &i in &orbit.members {
            keep[i] = true;
        }
    }
    let (_, blocks) = theta.blocks();
    let values = theta.values.iter().zip(&blocks).map(|(v, &b)| keep[b].then(|| v.clone())).collect();
    let reduced = ReducedParameter { base: theta.clone(), selected_orbits: selected, values };

    let (sub_action, _) = induced.subgroup_action.restrict_points(&reduced.support())?;
    let full: ElementSet = (0..sub_action.group().order()).collect();
    if let Naturalness::Counterexample(w) = is_natural_exact(&reduced.on_support(), &full, &sub_action)? {
        return Err(Error::contract(OP, format!("reduced parameter is not natural on its support (witness {w:?})")));
    }
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::OctahedralRotations;

    fn all(g: &FiniteGroup) -> ElementSet {
        (0..g.order()).collect()
    }

    /// Independent oracle: compare every pair of points under every element.
    fn brute_force_natural(theta: &[i64], action: &GroupAction, g: Element) -> bool {
        let n = theta.len();
        (0..n).all(|p| (0..n).all(|q| theta[p] != theta[q] || theta[action.act(p, g)] == theta[action.act(q, g)]))
    }

    fn sign_flip_3() -> GroupAction {
        GroupAction::from_permutations(3, &[vec![2, 1, 0]]).unwrap()
    }

    #[test]
    fn identity_parameter_is_natural() {
        let a = GroupAction::from_permutations(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]]).unwrap();
        let theta = FocusParameter::new("phi", vec![0, 1, 2, 3]);
        assert!(is_natural_exact(&theta, &all(a.group()), &a).unwrap().is_natural());
        assert_eq!(maximal_natural_subgroup(&theta, &a).unwrap(), all(a.group()));
        let constant = FocusParameter::new("c", vec![7; 4]);
        assert_eq!(maximal_natural_subgroup(&constant, &a).unwrap(), all(a.group()));
    }

    #[test]
    fn absolute_value_under_sign_flip() {
        let a = sign_flip_3();
        let theta = FocusParameter::new("abs", vec![1, 0, 1]);
        assert!(is_natural_exact(&theta, &all(a.group()), &a).unwrap().is_natural());
        let induced = induced_action(&theta, &all(a.group()), &a).unwrap();
        assert_eq!(induced.labels, vec![0, 1]);
        assert_eq!(induced.action.group().order(), 1);
        assert_eq!(induced.orbit_labels(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn cyclic_shift_counterexample_matches_brute_force() {
        let a = GroupAction::from_permutations(4, &[vec![1, 2, 3, 0]]).unwrap();
        let theta_vals: Vec<i64> = (0..4).map(|p: i64| p.min(1)).collect();
        let theta = FocusParameter::new("min1", theta_vals.clone());
        let verdict = is_natural_exact(&theta, &all(a.group()), &a).unwrap();
        let Naturalness::Counterexample(w) = verdict else { panic!("expected counterexample") };
        assert_eq!(theta_vals[w.phi1], theta_vals[w.phi2]);
        assert_ne!(theta_vals[a.act(w.phi1, w.element)], theta_vals[a.act(w.phi2, w.element)]);
        assert!(!brute_force_natural(&theta_vals, &a, w.element));
        let h = maximal_natural_subgroup(&theta, &a).unwrap();
        for g in 0..a.group().order() {
            assert_eq!(h.contains(&g), brute_force_natural(&theta_vals, &a, g));
        }
        assert!(induced_action(&theta, &all(a.group()), &a).is_err());
    }

    #[test]
    fn octahedral_axis_component() {
        let o = OctahedralRotations::on_points(OctahedralRotations::axis_points(1)).unwrap();
        let theta = FocusParameter::new("z", o.points().iter().map(|p| p[2]).collect());
        let h = maximal_natural_subgroup(&theta, o.action()).unwrap();
        let expected: ElementSet = o.axis_stabilizer_up_to_sign(2).into_iter().collect();
        assert_eq!(h, expected);
        let induced = induced_action(&theta, &h, o.action()).unwrap();
        assert_eq!(induced.labels, vec![-1, 0, 1]);
        assert_eq!(induced.action.group().order(), 2);
        assert_eq!(induced.orbit_labels(), vec![vec![-1, 1], vec![0]]);
        assert!(induced.quotient.is_surjective());
    }

    #[test]
    fn reduction_selects_orbits() {
        let o = OctahedralRotations::on_points(OctahedralRotations::axis_points(1)).unwrap();
        let theta = FocusParameter::new("z", o.points().iter().map(|p| p[2]).collect());
        let h = maximal_natural_subgroup(&theta, o.action()).unwrap();
        let top = reduce_to_orbits(&theta, &h, o.action(), &[0]).unwrap();
        assert_eq!(top.image(), vec![-1, 1]);
        assert_eq!(top.support().len(), 2);
        let zero = reduce_to_orbits(&theta, &h, o.action(), &[1]).unwrap();
        assert_eq!(zero.image(), vec![0]);
        let both = reduce_to_orbits(&theta, &h, o.action(), &[0, 1]).unwrap();
        assert!(both.values.iter().zip(theta.values()).all(|(r, t)| r.as_ref() == Some(t)));
        assert!(reduce_to_orbits(&theta, &h, o.action(), &[]).is_err());
        assert!(reduce_to_orbits(&theta, &h, o.action(), &[5]).is_err());
    }

    #[test]
    fn relabeling_keeps_maximal_subgroup() {
        let o = OctahedralRotations::on_points(OctahedralRotations::axis_points(1)).unwrap();
        let theta = FocusParameter::new("z", o.points().iter().map(|p| p[2]).collect::<Vec<i64>>());
        let relabeled = theta.relabel(|z| 10 - 3 * z);
        assert_eq!(
            maximal_natural_subgroup(&theta, o.action()).unwrap(),
            maximal_natural_subgroup(&relabeled, o.action()).unwrap()
        );
    }
}
