//! Finite groups given by composition tables, right actions on finite point
//! sets, orbits, invariant measures and homomorphisms.
//!
//! Group elements and points are plain indices. Actions are right actions:
//! `act(p, g)` is written `p·g` and `act(act(p, g), h) = act(p, compose(g, h))`,
//! so `compose(g, h)` means "first `g`, then `h`".

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::{FromPrimitive, Num};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a group element.
pub type Element = usize;

/// A set of group elements, kept sorted.
pub type ElementSet = BTreeSet<Element>;

/// Finite group stored extensionally as its composition table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    compose: Vec<Vec<Element>>,
    identity: Element,
    inverse: Vec<Element>,
}

impl FiniteGroup {
    /// Builds a group from a composition table, checking every axiom
    /// exhaustively (closure, identity, inverses, associativity).
    pub fn from_table(compose: Vec<Vec<Element>>) -> Result<Self> {
        const OP: &str = "FiniteGroup::from_table";
        let n = compose.len();
        if n == 0 {
            return Err(Error::input(OP, "empty composition table"));
        }
        for (g, row) in compose.iter().enumerate() {
            if row.len() != n {
                return Err(Error::input(OP, format!("row {g} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::input(OP, format!("row {g} references element {bad} >= order {n}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| compose[e][g] == g && compose[g][e] == g))
            .ok_or_else(|| Error::input(OP, "no identity element"))?;
        let mut inverse = Vec::with_capacity(n);
        for (g, row) in compose.iter().enumerate() {
            let inv = (0..n)
                .find(|&h| row[h] == identity && compose[h][g] == identity)
                .ok_or_else(|| Error::input(OP, format!("element {g} has no inverse")))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = compose[a][b];
                for c in 0..n {
                    if compose[ab][c] != compose[a][compose[b][c]] {
                        return Err(Error::input(OP, format!("associativity fails for ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { compose, identity, inverse })
    }

    pub fn trivial() -> Self {
        FiniteGroup { compose: vec![vec![0]], identity: 0, inverse: vec![0] }
    }

    /// Cyclic group of order `n`; element `k` is the `k`-th power of the generator.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("FiniteGroup::cyclic", "order must be positive"));
        }
        let compose = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let inverse = (0..n).map(|i| (n - i) % n).collect();
        Ok(FiniteGroup { compose, identity: 0, inverse })
    }

    /// Direct product; element `(a, b)` has index `a * other.order() + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let m = other.order();
        let n = self.order() * m;
        let compose = (0..n)
            .map(|x| (0..n).map(|y| self.compose(x / m, y / m) * m + other.compose(x % m, y % m)).collect())
            .collect();
        let inverse = (0..n).map(|x| self.inverse(x / m) * m + other.inverse(x % m)).collect();
        FiniteGroup { compose, identity: self.identity * m + other.identity, inverse }
    }

    pub fn order(&self) -> usize {
        self.compose.len()
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn compose(&self, g: Element, h: Element) -> Element {
        self.compose[g][h]
    }

    pub fn inverse(&self, g: Element) -> Element {
        self.inverse[g]
    }

    pub fn table(&self) -> &[Vec<Element>] {
        &self.compose
    }

    /// `g·h·g⁻¹`.
    pub fn conjugate(&self, g: Element, h: Element) -> Element {
        self.compose(self.compose(g, h), self.inverse(g))
    }

    fn check_elements<'a>(&self, op: &'static str, elems: impl IntoIterator<Item = &'a Element>) -> Result<()> {
        for &g in elems {
            if g >= self.order() {
                return Err(Error::input(op, format!("element {g} out of range for group of order {}", self.order())));
            }
        }
        Ok(())
    }

    /// True iff `set` is nonempty and closed under composition and inverses.
    pub fn is_subgroup(&self, set: &ElementSet) -> bool {
        !set.is_empty()
            && set.iter().all(|&g| g < self.order())
            && set.contains(&self.identity)
            && set.iter().all(|&g| set.contains(&self.inverse(g)))
            && set.iter().all(|&g| set.iter().all(|&h| set.contains(&self.compose(g, h))))
    }

    /// Smallest subgroup containing `generators`, by breadth-first closure.
    pub fn generate_subgroup(&self, generators: &ElementSet) -> Result<ElementSet> {
        const OP: &str = "generate_subgroup";
        if generators.is_empty() {
            return Err(Error::input(OP, "generator set is empty"));
        }
        self.check_elements(OP, generators)?;
        let mut seen: ElementSet = [self.identity].into_iter().collect();
        let mut queue: VecDeque<Element> = [self.identity].into_iter().collect();
        while let Some(x) = queue.pop_front() {
            for &s in generators {
                let y = self.compose(x, s);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        // Finite: closure under composition already contains inverses.
        Ok(seen)
    }

    /// Restricts the table to a subgroup. Returns the re-indexed group and
    /// the map from new indices to elements of `self`.
    pub fn restrict(&self, subgroup: &ElementSet) -> Result<(FiniteGroup, Vec<Element>)> {
        const OP: &str = "FiniteGroup::restrict";
        self.check_elements(OP, subgroup)?;
        if !self.is_subgroup(subgroup) {
            return Err(Error::contract(OP, "element set is not a subgroup"));
        }
        let elems: Vec<Element> = subgroup.iter().copied().collect();
        let index: HashMap<Element, usize> = elems.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let compose = elems.iter().map(|&g| elems.iter().map(|&h| index[&self.compose(g, h)]).collect()).collect();
        let inverse = elems.iter().map(|&g| index[&self.inverse(g)]).collect();
        let identity = index[&self.identity];
        Ok((FiniteGroup { compose, identity, inverse }, elems))
    }

    /// Every `g` with `sub_a = { g·h·g⁻¹ : h ∈ sub_b }`, ascending.
    pub fn conjugators(&self, sub_a: &ElementSet, sub_b: &ElementSet) -> Result<Vec<Element>> {
        const OP: &str = "find_conjugator";
        self.check_elements(OP, sub_a.iter().chain(sub_b))?;
        if !self.is_subgroup(sub_a) {
            return Err(Error::contract(OP, "first argument is not a subgroup"));
        }
        if !self.is_subgroup(sub_b) {
            return Err(Error::contract(OP, "second argument is not a subgroup"));
        }
        if sub_a.len() != sub_b.len() {
            return Ok(Vec::new());
        }
        Ok((0..self.order()).filter(|&g| sub_b.iter().all(|&h| sub_a.contains(&self.conjugate(g, h)))).collect())
    }

    /// Smallest `g` with `sub_a = g·sub_b·g⁻¹`, or `None` when the subgroups
    /// are not conjugate.
    pub fn find_conjugator(&self, sub_a: &ElementSet, sub_b: &ElementSet) -> Result<Option<Element>> {
        Ok(self.conjugators(sub_a, sub_b)?.first().copied())
    }
}

/// Right action of a finite group on the points `0..num_points`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAction {
    group: FiniteGroup,
    /// `act[p][g] = p·g`.
    act: Vec<Vec<usize>>,
}

impl GroupAction {
    /// Validates identity, the right-action law and bijectivity of every element.
    pub fn new(group: FiniteGroup, act: Vec<Vec<usize>>) -> Result<Self> {
        const OP: &str = "GroupAction::new";
        let n = act.len();
        let order = group.order();
        for (p, row) in act.iter().enumerate() {
            if row.len() != order {
                return Err(Error::input(OP, format!("point {p} has {} images, expected {order}", row.len())));
            }
            if let Some(&q) = row.iter().find(|&&q| q >= n) {
                return Err(Error::input(OP, format!("point {p} maps to {q} >= {n}")));
            }
            if row[group.identity()] != p {
                return Err(Error::input(OP, format!("identity moves point {p}")));
            }
        }
        for g in 0..order {
            let mut hit = vec![false; n];
            for row in &act {
                hit[row[g]] = true;
            }
            if hit.iter().any(|h| !h) {
                return Err(Error::input(OP, format!("element {g} is not a bijection")));
            }
        }
        for row in &act {
            for g in 0..order {
                for h in 0..order {
                    if act[row[g]][h] != row[group.compose(g, h)] {
                        return Err(Error::input(OP, format!("right-action law fails for elements ({g}, {h})")));
                    }
                }
            }
        }
        Ok(GroupAction { group, act })
    }

    /// Builds the permutation group generated by `generators` (each a list of
    /// images `p ↦ perm[p]`) together with its action. Element 0 is the identity;
    /// further elements are numbered in breadth-first order.
    pub fn from_permutations(num_points: usize, generators: &[Vec<usize>]) -> Result<Self> {
        const OP: &str = "GroupAction::from_permutations";
        for (i, perm) in generators.iter().enumerate() {
            if perm.len() != num_points {
                return Err(Error::input(
                    OP,
                    format!("generator {i} has length {}, expected {num_points}", perm.len()),
                ));
            }
            let mut hit = vec![false; num_points];
            for &q in perm {
                if q >= num_points || std::mem::replace(&mut hit[q], true) {
                    return Err(Error::input(OP, format!("generator {i} is not a permutation")));
                }
            }
        }
        let identity: Vec<usize> = (0..num_points).collect();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = [(identity, 0)].into_iter().collect();
        let mut cursor = 0;
        while cursor < elems.len() {
            for s in generators {
                // right action: first elems[cursor], then s
                let next: Vec<usize> = elems[cursor].iter().map(|&q| s[q]).collect();
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elems.len());
                    elems.push(next);
                }
            }
            cursor += 1;
        }
        Self::from_closed_permutations(num_points, elems)
    }

    /// Builds the action from an explicit, already closed list of permutations,
    /// preserving their order as element indices.
    pub fn from_closed_permutations(num_points: usize, elems: Vec<Vec<usize>>) -> Result<Self> {
        const OP: &str = "GroupAction::from_closed_permutations";
        let index: HashMap<&[usize], usize> = elems.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        if index.len() != elems.len() {
            return Err(Error::input(OP, "duplicate permutations"));
        }
        let mut compose = Vec::with_capacity(elems.len());
        for g in &elems {
            if g.len() != num_points {
                return Err(Error::input(OP, "permutation length mismatch"));
            }
            let mut row = Vec::with_capacity(elems.len());
            for h in &elems {
                let gh: Vec<usize> = g.iter().map(|&q| h[q]).collect();
                let k = index
                    .get(gh.as_slice())
                    .ok_or_else(|| Error::input(OP, "permutation list is not closed under composition"))?;
                row.push(*k);
            }
            compose.push(row);
        }
        let group = FiniteGroup::from_table(compose)?;
        let act = (0..num_points).map(|p| elems.iter().map(|perm| perm[p]).collect()).collect();
        GroupAction::new(group, act)
    }

    /// Trivial group acting on `n` points.
    pub fn trivial(num_points: usize) -> Self {
        GroupAction { group: FiniteGroup::trivial(), act: (0..num_points).map(|p| vec![p]).collect() }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn num_points(&self) -> usize {
        self.act.len()
    }

    pub fn act(&self, p: usize, g: Element) -> usize {
        self.act[p][g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.act
    }

    /// The permutation `p ↦ p·g`.
    pub fn permutation(&self, g: Element) -> Vec<usize> {
        self.act.iter().map(|row| row[g]).collect()
    }

    /// Orbits in breadth-first closure, each represented by its smallest
    /// point; the list is sorted by representative.
    pub fn orbits(&self) -> Vec<Orbit> {
        let n = self.num_points();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut members = vec![start];
            let mut queue: VecDeque<usize> = [start].into_iter().collect();
            while let Some(p) = queue.pop_front() {
                for &q in &self.act[p] {
                    if !seen[q] {
                        seen[q] = true;
                        members.push(q);
                        queue.push_back(q);
                    }
                }
            }
            members.sort_unstable();
            out.push(Orbit { representative: start, members });
        }
        out
    }

    /// `orbit_index[p]` for every point, against the ordering of [`Self::orbits`].
    pub fn orbit_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.num_points()];
        for (k, orbit) in self.orbits().iter().enumerate() {
            for &p in &orbit.members {
                idx[p] = k;
            }
        }
        idx
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Action of a subgroup, re-indexed as in [`FiniteGroup::restrict`].
    pub fn restrict_group(&self, subgroup: &ElementSet) -> Result<(GroupAction, Vec<Element>)> {
        let (group, elems) = self.group.restrict(subgroup)?;
        let act = self.act.iter().map(|row| elems.iter().map(|&g| row[g]).collect()).collect();
        Ok((GroupAction { group, act }, elems))
    }

    /// Action on an invariant subset of points. Points are renumbered in
    /// ascending order of `points`.
    pub fn restrict_points(&self, points: &BTreeSet<usize>) -> Result<(GroupAction, Vec<usize>)> {
        const OP: &str = "GroupAction::restrict_points";
        let list: Vec<usize> = points.iter().copied().collect();
        let index: HashMap<usize, usize> = list.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut act = Vec::with_capacity(list.len());
        for &p in &list {
            if p >= self.num_points() {
                return Err(Error::input(OP, format!("point {p} out of range")));
            }
            let row = self.act[p]
                .iter()
                .map(|q| index.get(q).copied())
                .collect::<Option<Vec<usize>>>()
                .ok_or_else(|| Error::contract(OP, format!("subset is not invariant (point {p} leaves it)")))?;
            act.push(row);
        }
        Ok((GroupAction { group: self.group.clone(), act }, list))
    }
}

/// One orbit `{ representative·g : g ∈ G }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Right-invariant measure on a finite action: uniform within each orbit,
/// with orbit `k` carrying total mass `orbit_weights[k]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantMeasure<W> {
    pub weights: Vec<W>,
    pub orbit_weights: Vec<W>,
}

impl<W: Clone + PartialEq> InvariantMeasure<W> {
    /// `weights(p·g) = weights(p)` for every point and element.
    pub fn is_invariant(&self, action: &GroupAction) -> bool {
        self.weights.len() == action.num_points()
            && (0..action.num_points())
                .all(|p| (0..action.group().order()).all(|g| self.weights[action.act(p, g)] == self.weights[p]))
    }
}

/// Builds the invariant measure with the given per-orbit masses. Works over
/// any numeric field, including exact rationals.
pub fn invariant_measure<W>(action: &GroupAction, orbit_weights: &[W]) -> Result<InvariantMeasure<W>>
where
    W: Num + Clone + PartialOrd + FromPrimitive,
{
    const OP: &str = "invariant_measure";
    let orbits = action.orbits();
    if orbit_weights.len() != orbits.len() {
        return Err(Error::input(
            OP,
            format!("{} orbit weights given for {} orbits", orbit_weights.len(), orbits.len()),
        ));
    }
    if let Some(k) = orbit_weights.iter().position(|w| *w <= W::zero()) {
        return Err(Error::input(OP, format!("orbit weight {k} is not positive")));
    }
    let mut weights = vec![W::zero(); action.num_points()];
    for (orbit, w) in orbits.iter().zip(orbit_weights) {
        let size =
            W::from_usize(orbit.members.len()).ok_or_else(|| Error::input(OP, "orbit size not representable"))?;
        let per_point = w.clone() / size;
        for &p in &orbit.members {
            weights[p] = per_point.clone();
        }
    }
    Ok(InvariantMeasure { weights, orbit_weights: orbit_weights.to_vec() })
}

/// Group homomorphism checked exhaustively on construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homomorphism {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<Element>,
}

impl Homomorphism {
    pub fn new(source: FiniteGroup, target: FiniteGroup, map: Vec<Element>) -> Result<Self> {
        const OP: &str = "Homomorphism::new";
        if map.len() != source.order() {
            return Err(Error::input(OP, "map length differs from source order"));
        }
        if map.iter().any(|&x| x >= target.order()) {
            return Err(Error::input(OP, "map image out of range"));
        }
        if map[source.identity()] != target.identity() {
            return Err(Error::contract(OP, "identity not mapped to identity"));
        }
        for g in 0..source.order() {
            for h in 0..source.order() {
                if map[source.compose(g, h)] != target.compose(map[g], map[h]) {
                    return Err(Error::contract(OP, format!("composition not respected at ({g}, {h})")));
                }
            }
        }
        Ok(Homomorphism { source, target, map })
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn apply(&self, g: Element) -> Element {
        self.map[g]
    }

    pub fn is_surjective(&self) -> bool {
        let image: ElementSet = self.map.iter().copied().collect();
        image.len() == self.target.order()
    }

    pub fn kernel(&self) -> ElementSet {
        (0..self.source.order()).filter(|&g| self.map[g] == self.target.identity()).collect()
    }
}
