//! Finite statistical models: sufficiency and completeness of a statistic,
//! the expectation map `(A y)(λ) = Σ_ω y(ω) P^λ(ω)`, the observable space of
//! functions of a complete sufficient statistic and its image, the space of
//! unbiasedly estimable parameter functions.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupAction;
use crate::linalg::{gram_schmidt_real, numerical_rank};
use crate::scalar::Scalar;

/// Tolerance for comparing conditional distributions and identities.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Singular-value threshold for rank decisions.
pub const RANK_TOL: f64 = 1e-10;

/// Finite sample space with a strictly positive base probability measure,
/// optionally acted on by a group.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSpace<T> {
    base_measure: Vec<T>,
    action: Option<GroupAction>,
}

impl<T: Scalar> SampleSpace<T> {
    pub fn new(base_measure: Vec<T>) -> Result<Self> {
        const OP: &str = "SampleSpace::new";
        if base_measure.is_empty() {
            return Err(Error::input(OP, "empty sample space"));
        }
        if let Some(i) = base_measure.iter().position(|p| !(*p > T::zero())) {
            return Err(Error::input(OP, format!("base measure at point {i} is not strictly positive")));
        }
        let total = base_measure.iter().fold(T::zero(), |a, b| a + *b);
        if (total - T::one()).abs() > T::tol(IDENTITY_TOL) * T::count(base_measure.len()) {
            return Err(Error::input(OP, format!("base measure sums to {total}, not 1")));
        }
        Ok(SampleSpace { base_measure, action: None })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("SampleSpace::uniform", "empty sample space"));
        }
        Self::new(vec![T::one() / T::count(n); n])
    }

    pub fn with_action(mut self, action: GroupAction) -> Result<Self> {
        if action.num_points() != self.base_measure.len() {
            return Err(Error::input("SampleSpace::with_action", "action and sample space sizes differ"));
        }
        self.action = Some(action);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.base_measure.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base_measure.is_empty()
    }

    pub fn base_measure(&self) -> &[T] {
        &self.base_measure
    }

    pub fn action(&self) -> Option<&GroupAction> {
        self.action.as_ref()
    }
}

/// Probability table `P^λ(ω)`: one row per parameter value.
#[derive(Debug, Clone, PartialEq)]
pub struct StatModel<T> {
    parameters: Vec<T>,
    rows: DMatrix<T>,
}

impl<T: Scalar> StatModel<T> {
    /// Validates that every row is a probability vector; errors carry the
    /// offending row and column.
    pub fn new(parameters: Vec<T>, rows: Vec<Vec<T>>) -> Result<Self> {
        const OP: &str = "StatModel::new";
        if parameters.is_empty() || parameters.len() != rows.len() {
            return Err(Error::input(OP, format!("{} parameter values but {} rows", parameters.len(), rows.len())));
        }
        let width = rows[0].len();
        if width == 0 {
            return Err(Error::input(OP, "rows are empty"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::input(OP, format!("row {i} has {} entries, expected {width}", row.len())));
            }
            if let Some(j) = row.iter().position(|p| !(*p >= T::zero()) || *p > T::one()) {
                return Err(Error::input(OP, format!("entry ({i}, {j}) is not a probability")));
            }
            let total = row.iter().fold(T::zero(), |a, b| a + *b);
            if (total - T::one()).abs() > T::tol(IDENTITY_TOL) * T::count(width) {
                return Err(Error::input(OP, format!("row {i} sums to {total}, not 1")));
            }
        }
        let rows = DMatrix::from_fn(rows.len(), width, |i, j| rows[i][j]);
        Ok(StatModel { parameters, rows })
    }

    pub fn parameters(&self) -> &[T] {
        &self.parameters
    }

    pub fn num_parameters(&self) -> usize {
        self.parameters.len()
    }

    pub fn num_outcomes(&self) -> usize {
        self.rows.ncols()
    }

    pub fn prob(&self, lambda: usize, omega: usize) -> T {
        self.rows[(lambda, omega)]
    }

    pub fn table(&self) -> &DMatrix<T> {
        &self.rows
    }

    fn check_sample_space(&self, op: &'static str, sample: &SampleSpace<T>) -> Result<()> {
        if sample.len() != self.num_outcomes() {
            return Err(Error::input(op, "sample space and model have different numbers of outcomes"));
        }
        Ok(())
    }
}

/// A statistic, stored as the class index of each sample point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statistic {
    classes: Vec<usize>,
    num_values: usize,
}

impl Statistic {
    /// Classes are numbered by ascending label.
    pub fn from_labels<L: Ord>(labels: &[L]) -> Self {
        let mut distinct: Vec<&L> = labels.iter().collect();
        distinct.sort();
        distinct.dedup();
        let classes = labels.iter().map(|l| distinct.binary_search(&l).expect("label present")).collect();
        Statistic { classes, num_values: distinct.len() }
    }

    pub fn identity(n: usize) -> Self {
        Statistic { classes: (0..n).collect(), num_values: n }
    }

    pub fn constant(n: usize) -> Self {
        Statistic { classes: vec![0; n], num_values: 1 }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn num_values(&self) -> usize {
        self.num_values
    }

    pub fn class(&self, omega: usize) -> usize {
        self.classes[omega]
    }

    /// `ω ↦ t(ω·g)`.
    pub fn compose_action(&self, action: &GroupAction, g: usize) -> Statistic {
        let labels: Vec<usize> = (0..self.len()).map(|w| self.classes[action.act(w, g)]).collect();
        Statistic::from_labels(&labels)
    }

    fn check<T: Scalar>(&self, op: &'static str, model: &StatModel<T>) -> Result<()> {
        if self.len() != model.num_outcomes() {
            return Err(Error::input(
                op,
                format!("statistic defined on {} points, model has {}", self.len(), model.num_outcomes()),
            ));
        }
        Ok(())
    }

    /// `M[λ, c] = P^λ(t = c)`.
    pub fn class_matrix<T: Scalar>(&self, model: &StatModel<T>) -> DMatrix<T> {
        let mut m = DMatrix::zeros(model.num_parameters(), self.num_values);
        for l in 0..model.num_parameters() {
            for (w, &c) in self.classes.iter().enumerate() {
                m[(l, c)] += model.prob(l, w);
            }
        }
        m
    }
}

/// True iff the conditional distribution given `t` does not depend on `λ`.
/// Values of `t` are compared only across parameter values that give them
/// positive probability.
pub fn is_sufficient<T: Scalar>(t: &Statistic, model: &StatModel<T>) -> Result<bool> {
    t.check("is_sufficient", model)?;
    let marginals = t.class_matrix(model);
    let tol = T::tol(IDENTITY_TOL);
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for w in 0..t.len() {
        members.entry(t.class(w)).or_default().push(w);
    }
    for (&c, omegas) in &members {
        let mut reference: Option<Vec<T>> = None;
        for l in 0..model.num_parameters() {
            let mass = marginals[(l, c)];
            if !(mass > T::zero()) {
                continue;
            }
            let cond: Vec<T> = omegas.iter().map(|&w| model.prob(l, w) / mass).collect();
            match &reference {
                None => reference = Some(cond),
                Some(r) => {
                    if r.iter().zip(&cond).any(|(a, b)| (*a - *b).abs() > tol) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// True iff `E^λ h(t) = 0` for all `λ` forces `h = 0`, i.e. the class matrix
/// has full column rank.
pub fn is_complete<T: Scalar>(t: &Statistic, model: &StatModel<T>) -> Result<bool> {
    t.check("is_complete", model)?;
    Ok(numerical_rank(&t.class_matrix(model), T::tol(RANK_TOL)) == t.num_values())
}

/// The linear map `y ↦ (λ ↦ Σ_ω y(ω) P^λ(ω))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationMap<T> {
    matrix: DMatrix<T>,
}

impl<T: Scalar> ExpectationMap<T> {
    pub fn apply(&self, y: &DVector<T>) -> DVector<T> {
        &self.matrix * y
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        numerical_rank(&self.matrix, T::tol(RANK_TOL))
    }
}

pub fn expectation_map<T: Scalar>(model: &StatModel<T>) -> ExpectationMap<T> {
    ExpectationMap { matrix: model.table().clone() }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimability<T> {
    pub estimable: bool,
    /// Minimum-norm solution of `A y = ξ` when one exists.
    pub witness: Option<DVector<T>>,
    pub residual: T,
}

/// `ξ` is unbiasedly estimable iff it lies in the image of the expectation map.
pub fn is_unbiasedly_estimable<T: Scalar>(xi: &[T], model: &StatModel<T>) -> Result<Estimability<T>> {
    const OP: &str = "is_unbiasedly_estimable";
    if xi.len() != model.num_parameters() {
        return Err(Error::input(OP, "function length differs from the number of parameter values"));
    }
    let a = model.table().clone();
    let target = DVector::from_column_slice(xi);
    let svd = a.clone().svd(true, true);
    let y = svd.solve(&target, T::tol(RANK_TOL)).map_err(|e| Error::contract(OP, e.to_string()))?;
    let residual = (&a * &y - &target).amax();
    let estimable = residual <= T::tol(RANK_TOL) * (T::one() + target.amax());
    Ok(Estimability { estimable, witness: estimable.then_some(y), residual })
}

/// Functions of a complete sufficient statistic, orthonormal under the base measure.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSpace<T> {
    pub basis: Vec<DVector<T>>,
    pub weights: Vec<T>,
}

/// Image of the observable space under the expectation map, orthonormal
/// under the chosen parameter weights.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimableSpace<T> {
    pub basis: Vec<DVector<T>>,
    pub weights: Vec<T>,
    pub parameters: Vec<T>,
}

/// Kernel of the expectation map: observables with zero expectation under
/// every parameter value. The observables modulo this kernel form the
/// factor space on which the map is injective.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorSpace<T> {
    pub kernel_basis: Vec<DVector<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HilbertSpaces<T> {
    pub observable: ObservableSpace<T>,
    pub estimable: EstimableSpace<T>,
    pub factor: FactorSpace<T>,
    /// Matrix of the expectation map from the observable basis to the
    /// estimable basis.
    pub restricted_map: DMatrix<T>,
    /// `A k_c` for each observable basis vector, as raw parameter functions.
    images: Vec<DVector<T>>,
}

impl<T: Scalar> HilbertSpaces<T> {
    pub fn dimension(&self) -> usize {
        self.observable.basis.len()
    }

    /// The one unbiased estimator of `ξ` that is a function of the statistic.
    pub fn unique_estimator(&self, xi: &[T]) -> Result<DVector<T>> {
        const OP: &str = "unique_estimator";
        if xi.len() != self.estimable.parameters.len() {
            return Err(Error::input(OP, "function length differs from the number of parameter values"));
        }
        let cols = DMatrix::from_columns(&self.images);
        let target = DVector::from_column_slice(xi);
        let coeffs = cols
            .clone()
            .svd(true, true)
            .solve(&target, T::tol(RANK_TOL))
            .map_err(|e| Error::contract(OP, e.to_string()))?;
        if (&cols * &coeffs - &target).amax() > T::tol(RANK_TOL) * (T::one() + target.amax()) {
            return Err(Error::contract(OP, "function is not in the estimable space"));
        }
        let mut y = DVector::zeros(self.observable.weights.len());
        for (c, k) in coeffs.iter().zip(&self.observable.basis) {
            y += k * *c;
        }
        Ok(y)
    }

    /// Orthogonal polar factor of [`Self::restricted_map`]: an explicit unitary
    /// identification of the observable and estimable spaces.
    pub fn unitary_between(&self) -> DMatrix<T> {
        let svd = self.restricted_map.clone().svd(true, true);
        let u = svd.u.expect("requested");
        let v_t = svd.v_t.expect("requested");
        u * v_t
    }
}

/// Builds the observable space of functions of `t`, its image under the
/// expectation map and the kernel of that map. `t` must be complete and
/// sufficient. `parameter_weights` defaults to uniform.
pub fn build_spaces<T: Scalar>(
    model: &StatModel<T>,
    t: &Statistic,
    sample: &SampleSpace<T>,
    parameter_weights: Option<&[T]>,
) -> Result<HilbertSpaces<T>> {
    const OP: &str = "build_spaces";
    t.check(OP, model)?;
    model.check_sample_space(OP, sample)?;
    if !is_sufficient(t, model)? {
        return Err(Error::contract(OP, "statistic is not sufficient"));
    }
    if !is_complete(t, model)? {
        return Err(Error::contract(OP, "statistic is not complete"));
    }
    let n_params = model.num_parameters();
    let weights: Vec<T> = match parameter_weights {
        Some(w) if w.len() == n_params && w.iter().all(|x| *x > T::zero()) => w.to_vec(),
        Some(_) => return Err(Error::input(OP, "parameter weights must be positive, one per parameter value")),
        None => vec![T::one() / T::count(n_params); n_params],
    };
    let base = sample.base_measure();
    let mut class_mass = vec![T::zero(); t.num_values()];
    for (w, p) in base.iter().enumerate() {
        class_mass[t.class(w)] += *p;
    }
    let observable_basis: Vec<DVector<T>> = (0..t.num_values())
        .map(|c| {
            let norm = class_mass[c].sqrt();
            DVector::from_fn(t.len(), |w, _| if t.class(w) == c { T::one() / norm } else { T::zero() })
        })
        .collect();
    let a = expectation_map(model);
    let images: Vec<DVector<T>> = observable_basis.iter().map(|k| a.apply(k)).collect();
    let estimable_basis = gram_schmidt_real(&images, &weights, T::tol(RANK_TOL));
    if estimable_basis.len() != observable_basis.len() {
        return Err(Error::contract(OP, "expectation map is not injective on the observable space"));
    }
    let inner = |x: &DVector<T>, y: &DVector<T>| {
        x.iter().zip(y.iter()).zip(&weights).fold(T::zero(), |acc, ((p, q), w)| acc + *p * *q * *w)
    };
    let restricted_map =
        DMatrix::from_fn(estimable_basis.len(), images.len(), |i, c| inner(&estimable_basis[i], &images[c]));

    // kernel of A: right singular vectors with zero singular value, then
    // orthonormalized under the base measure
    let full = a.matrix().clone().resize(n_params.max(t.len()), t.len(), T::zero());
    let svd = full.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let null: Vec<DVector<T>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= T::tol(RANK_TOL))
        .map(|(i, _)| v_t.row(i).transpose())
        .collect();
    let kernel_basis = gram_schmidt_real(&null, base, T::tol(RANK_TOL));

    Ok(HilbertSpaces {
        observable: ObservableSpace { basis: observable_basis, weights: base.to_vec() },
        estimable: EstimableSpace { basis: estimable_basis, weights, parameters: model.parameters().to_vec() },
        factor: FactorSpace { kernel_basis },
        restricted_map,
        images,
    })
}

/// Checks `P^{λ·ḡ}(ω) = P^λ(ω·ġ⁻¹)` for the pairing `ġ ↦ ḡ`, failing with the
/// first offending coordinates.
pub fn check_pairing<T: Scalar>(
    model: &StatModel<T>,
    sample_action: &GroupAction,
    parameter_action: &GroupAction,
    pairing: &[usize],
) -> Result<()> {
    const OP: &str = "check_intertwining";
    if sample_action.num_points() != model.num_outcomes() {
        return Err(Error::input(OP, "sample action size differs from the number of outcomes"));
    }
    if parameter_action.num_points() != model.num_parameters() {
        return Err(Error::input(OP, "parameter action size differs from the number of parameter values"));
    }
    if pairing.len() != sample_action.group().order() {
        return Err(Error::input(OP, "pairing must give one parameter element per sample element"));
    }
    if pairing.iter().any(|&g| g >= parameter_action.group().order()) {
        return Err(Error::input(OP, "pairing references an element outside the parameter group"));
    }
    let tol = T::tol(IDENTITY_TOL);
    let sample_group = sample_action.group();
    for (gs, &gp) in pairing.iter().enumerate() {
        let inv = sample_group.inverse(gs);
        for l in 0..model.num_parameters() {
            for w in 0..model.num_outcomes() {
                let lhs = model.prob(parameter_action.act(l, gp), w);
                let rhs = model.prob(l, sample_action.act(w, inv));
                if (lhs - rhs).abs() > tol {
                    return Err(Error::contract(
                        OP,
                        format!(
                            "pairing violates model compatibility at sample element {gs}, parameter {l}, outcome {w}"
                        ),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Largest deviation of `U₁(ḡ) A k - A U̇(ġ) k` over paired elements and
/// basis vectors `k` of the observable space, where `(U̇(ġ)y)(ω) = y(ω·ġ)` and
/// `(U₁(ḡ)f)(λ) = f(λ·ḡ)`.
pub fn intertwining_defect<T: Scalar>(
    model: &StatModel<T>,
    t: &Statistic,
    sample: &SampleSpace<T>,
    sample_action: &GroupAction,
    parameter_action: &GroupAction,
    pairing: &[usize],
) -> Result<T> {
    check_pairing(model, sample_action, parameter_action, pairing)?;
    let spaces = build_spaces(model, t, sample, None)?;
    let a = expectation_map(model);
    let mut worst = T::zero();
    for (gs, &gp) in pairing.iter().enumerate() {
        for k in &spaces.observable.basis {
            let ak = a.apply(k);
            let lhs = DVector::from_fn(model.num_parameters(), |l, _| ak[parameter_action.act(l, gp)]);
            let moved = DVector::from_fn(model.num_outcomes(), |w, _| k[sample_action.act(w, gs)]);
            worst = worst.max((lhs - a.apply(&moved)).amax());
        }
    }
    Ok(worst)
}

/// True iff the intertwining identity holds on the observable space to 1e-12.
pub fn check_intertwining<T: Scalar>(
    model: &StatModel<T>,
    t: &Statistic,
    sample: &SampleSpace<T>,
    sample_action: &GroupAction,
    parameter_action: &GroupAction,
    pairing: &[usize],
) -> Result<bool> {
    Ok(intertwining_defect(model, t, sample, sample_action, parameter_action, pairing)? <= T::tol(IDENTITY_TOL))
}

/// Two iid Bernoulli(p) draws; outcomes ordered `00, 01, 10, 11`.
pub fn bernoulli_pair_model<T: Scalar>(ps: &[T]) -> Result<StatModel<T>> {
    let rows = ps
        .iter()
        .map(|&p| {
            let q = T::one() - p;
            vec![q * q, q * p, p * q, p * p]
        })
        .collect();
    StatModel::new(ps.to_vec(), rows)
}

/// Ideal measurement of `λ ∈ {-1, +1}`: outcome `k` occurs with certainty under `λ_k`.
pub fn ideal_sign_model<T: Scalar>() -> StatModel<T> {
    StatModel::new(vec![-T::one(), T::one()], vec![vec![T::one(), T::zero()], vec![T::zero(), T::one()]])
        .expect("valid table")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bern() -> StatModel<f64> {
        bernoulli_pair_model(&[0.3, 0.5, 0.7]).unwrap()
    }

    fn sum_stat() -> Statistic {
        Statistic::from_labels(&[0, 1, 1, 2])
    }

    fn sign_flip() -> GroupAction {
        GroupAction::from_permutations(2, &[vec![1, 0]]).unwrap()
    }

    #[test]
    fn model_validation_reports_coordinates() {
        let err = StatModel::new(vec![0.0, 1.0], vec![vec![0.5, 0.5], vec![0.7, 0.7]]).unwrap_err();
        assert!(err.to_string().contains("row 1"));
        let err = StatModel::new(vec![0.0], vec![vec![1.5, -0.5]]).unwrap_err();
        assert!(err.to_string().contains("(0, 0)"));
        assert!(SampleSpace::new(vec![0.5, 0.5, 0.0]).is_err());
    }

    #[test]
    fn sufficiency_examples() {
        let m = bern();
        assert!(is_sufficient(&Statistic::identity(4), &m).unwrap());
        assert!(is_sufficient(&sum_stat(), &m).unwrap());
        let first = Statistic::from_labels(&[0, 0, 1, 1]);
        assert!(!is_sufficient(&first, &m).unwrap());
        assert!(is_sufficient(&sum_stat(), &ideal_sign_model::<f64>()).is_err());
    }

    #[test]
    fn completeness_examples() {
        let m = bern();
        assert!(is_complete(&sum_stat(), &m).unwrap());
        assert!(is_complete(&Statistic::constant(4), &m).unwrap());
        let single = StatModel::new(vec![0.5], vec![vec![0.5, 0.5]]).unwrap();
        assert!(!is_complete(&Statistic::identity(2), &single).unwrap());
    }

    #[test]
    fn expectation_map_examples() {
        let m = bern();
        let a = expectation_map(&m);
        let ones = a.apply(&DVector::from_element(4, 1.0));
        assert!(ones.iter().all(|x| (x - 1.0).abs() < 1e-15));
        let ideal = ideal_sign_model::<f64>();
        let lam = expectation_map(&ideal).apply(&DVector::from_vec(vec![-1.0, 1.0]));
        assert_eq!(lam.as_slice(), &[-1.0, 1.0]);
    }

    #[test]
    fn estimability_examples() {
        let m = bern();
        let c = is_unbiasedly_estimable(&[2.0, 2.0, 2.0], &m).unwrap();
        assert!(c.estimable);
        assert!(c.witness.unwrap().iter().all(|y| (y - 2.0).abs() < 1e-12));
        let ideal = ideal_sign_model::<f64>();
        let w = is_unbiasedly_estimable(&[-1.0, 1.0], &ideal).unwrap();
        assert!(w.estimable);
        // rank 2: rows are mixtures of two extreme rows
        let deficient =
            StatModel::new(vec![0.0, 0.5, 1.0], vec![vec![1.0, 0.0], vec![0.5, 0.5], vec![0.0, 1.0]]).unwrap();
        // image = affine functions of λ; λ² is not affine
        let r = is_unbiasedly_estimable(&[0.0, 0.25, 1.0], &deficient).unwrap();
        assert!(!r.estimable);
        assert!(r.witness.is_none());
    }

    #[test]
    fn spaces_for_examples() {
        let ideal = ideal_sign_model::<f64>();
        let s = build_spaces(&ideal, &Statistic::identity(2), &SampleSpace::uniform(2).unwrap(), None).unwrap();
        assert_eq!((s.observable.basis.len(), s.estimable.basis.len()), (2, 2));
        let bern_spaces = build_spaces(&bern(), &sum_stat(), &SampleSpace::uniform(4).unwrap(), None).unwrap();
        assert_eq!(bern_spaces.dimension(), 3);
        assert_eq!(bern_spaces.estimable.basis.len(), 3);
        assert_eq!(bern_spaces.factor.kernel_basis.len(), 1);
        let single = StatModel::new(vec![0.3], vec![vec![0.25; 4]]).unwrap();
        let c = build_spaces(&single, &Statistic::constant(4), &SampleSpace::uniform(4).unwrap(), None).unwrap();
        assert_eq!(c.dimension(), 1);
        let err =
            build_spaces(&bern(), &Statistic::from_labels(&[0, 0, 1, 1]), &SampleSpace::uniform(4).unwrap(), None)
                .unwrap_err();
        assert!(err.to_string().contains("not sufficient"));
    }

    #[test]
    fn intertwining_examples() {
        let trivial = GroupAction::trivial(4);
        let t1 = GroupAction::trivial(3);
        let sample = SampleSpace::uniform(4).unwrap();
        assert!(check_intertwining(&bern(), &sum_stat(), &sample, &trivial, &t1, &[0]).unwrap());

        let ideal = ideal_sign_model::<f64>();
        let two = SampleSpace::uniform(2).unwrap();
        let flip = sign_flip();
        assert!(check_intertwining(&ideal, &Statistic::identity(2), &two, &flip, &flip, &[0, 1]).unwrap());
        let err = check_intertwining(&ideal, &Statistic::identity(2), &two, &flip, &flip, &[0, 0]).unwrap_err();
        assert!(matches!(err, Error::Contract { op: "check_intertwining", .. }));
    }
}
