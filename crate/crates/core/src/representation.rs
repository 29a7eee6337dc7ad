//! The regular representation `(U(g)f)(φ) = f(φ·g)` on functions over a
//! finite parameter space, parametric invariant subspaces spanned by
//! level-set indicators, and their splitting along induced orbits.

use nalgebra::{Complex, ComplexField};

use crate::error::{Error, Result};
use crate::group::{Element, ElementSet, GroupAction, InvariantMeasure};
use crate::linalg::{gram_schmidt, weighted_inner, weighted_norm, CMatrix, CVector};
use crate::parameters::{FocusParameter, InducedAction, ReducedParameter};
use crate::scalar::Scalar;

/// Rank threshold for Gram-Schmidt.
pub const RANK_TOL: f64 = 1e-10;
/// Residual threshold for membership and invariance checks.
pub const INVARIANCE_TOL: f64 = 1e-12;

/// Functions on the points of a group action with the inner product
/// `⟨f, h⟩ = Σ conj(f(φ)) h(φ) w(φ)` for an invariant measure `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpace<T> {
    action: GroupAction,
    weights: Vec<T>,
}

impl<T: Scalar> FunctionSpace<T> {
    pub fn new(action: &GroupAction, measure: &InvariantMeasure<T>) -> Result<Self> {
        const OP: &str = "FunctionSpace::new";
        if measure.weights.len() != action.num_points() {
            return Err(Error::input(OP, "measure length differs from the number of points"));
        }
        if let Some(p) = measure.weights.iter().position(|w| *w <= T::zero()) {
            return Err(Error::input(OP, format!("weight at point {p} is not positive")));
        }
        if !measure.is_invariant(action) {
            return Err(Error::contract(OP, "measure is not invariant under the action"));
        }
        Ok(FunctionSpace { action: action.clone(), weights: measure.weights.clone() })
    }

    pub fn dimension(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn inner(&self, a: &CVector<T>, b: &CVector<T>) -> Complex<T> {
        weighted_inner(a, b, &self.weights)
    }

    /// Indicator function of a set of points.
    pub fn indicator(&self, points: impl IntoIterator<Item = usize>) -> CVector<T> {
        let mut v = CVector::zeros(self.dimension());
        for p in points {
            v[p] = Complex::new(T::one(), T::zero());
        }
        v
    }

    /// Orthonormal span of `vectors`.
    pub fn span(&self, vectors: &[CVector<T>]) -> Subspace<T> {
        Subspace { basis: gram_schmidt(vectors, &self.weights, T::tol(RANK_TOL)), weights: self.weights.clone() }
    }

    pub fn full(&self) -> Subspace<T> {
        let units: Vec<CVector<T>> = (0..self.dimension()).map(|p| self.indicator([p])).collect();
        self.span(&units)
    }
}

/// Group elements ↦ matrices acting on coefficient vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearRep<T> {
    matrices: Vec<CMatrix<T>>,
}

impl<T: Scalar> LinearRep<T> {
    pub fn matrix(&self, g: Element) -> &CMatrix<T> {
        &self.matrices[g]
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn apply(&self, g: Element, v: &CVector<T>) -> CVector<T> {
        &self.matrices[g] * v
    }

    /// Largest entry of `U(g)U(h) - U(gh)` over all pairs.
    pub fn homomorphism_defect(&self, action: &GroupAction) -> T {
        let group = action.group();
        let mut worst = T::zero();
        for g in 0..group.order() {
            for h in 0..group.order() {
                let lhs = &self.matrices[g] * &self.matrices[h];
                worst = worst.max(crate::linalg::max_abs_diff(&lhs, &self.matrices[group.compose(g, h)]));
            }
        }
        worst
    }

    /// Largest entry of `U(g)† W U(g) - W` over all elements, `W = diag(weights)`.
    pub fn unitarity_defect(&self, weights: &[T]) -> T {
        let w = CMatrix::from_diagonal(&CVector::from_iterator(
            weights.len(),
            weights.iter().map(|x| Complex::new(*x, T::zero())),
        ));
        self.matrices
            .iter()
            .map(|u| crate::linalg::max_abs_diff(&(u.adjoint() * &w * u), &w))
            .fold(T::zero(), |a, b| a.max(b))
    }
}

/// `(U(g)f)(φ) = f(φ·g)` as permutation matrices. Unitarity follows from
/// invariance of the measure, which [`FunctionSpace::new`] already enforces.
pub fn regular_representation<T: Scalar>(fs: &FunctionSpace<T>) -> LinearRep<T> {
    let n = fs.dimension();
    let one = Complex::new(T::one(), T::zero());
    let matrices = (0..fs.action.group().order())
        .map(|g| {
            let mut m = CMatrix::zeros(n, n);
            for p in 0..n {
                m[(p, fs.action.act(p, g))] = one;
            }
            m
        })
        .collect();
    LinearRep { matrices }
}

/// Subspace with an orthonormal basis under a weighted inner product.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<T> {
    basis: Vec<CVector<T>>,
    weights: Vec<T>,
}

impl<T: Scalar> Subspace<T> {
    /// Orthonormalizes `vectors` under `weights`.
    pub fn from_spanning(vectors: &[CVector<T>], weights: &[T]) -> Self {
        Subspace { basis: gram_schmidt(vectors, weights, T::tol(RANK_TOL)), weights: weights.to_vec() }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CVector<T>] {
        &self.basis
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn project(&self, v: &CVector<T>) -> CVector<T> {
        let mut out = CVector::zeros(v.len());
        for b in &self.basis {
            out += b * weighted_inner(b, v, &self.weights);
        }
        out
    }

    /// Norm of the component of `v` orthogonal to the subspace.
    pub fn residual(&self, v: &CVector<T>) -> T {
        weighted_norm(&(v - self.project(v)), &self.weights)
    }

    pub fn contains(&self, v: &CVector<T>) -> bool {
        self.residual(v) <= T::tol(INVARIANCE_TOL) * (T::one() + weighted_norm(v, &self.weights))
    }

    /// Largest residual of `other`'s basis vectors against `self`.
    pub fn containment_defect(&self, other: &Subspace<T>) -> T {
        other.basis.iter().map(|b| self.residual(b)).fold(T::zero(), |a, b| a.max(b))
    }

    pub fn contains_subspace(&self, other: &Subspace<T>) -> bool {
        self.containment_defect(other) <= T::tol(INVARIANCE_TOL)
    }

    /// Equal as sets: same dimension and mutual containment.
    pub fn same_span(&self, other: &Subspace<T>) -> bool {
        self.dimension() == other.dimension() && self.contains_subspace(other) && other.contains_subspace(self)
    }

    /// Largest `|⟨a, b⟩|` between the two bases.
    pub fn overlap(&self, other: &Subspace<T>) -> T {
        let mut worst = T::zero();
        for a in &self.basis {
            for b in &other.basis {
                worst = worst.max(weighted_inner(a, b, &self.weights).modulus());
            }
        }
        worst
    }
}

/// Span of the level-set indicators of `theta`, orthonormalized. Its
/// dimension is the number of distinct values.
pub fn parametric_invariant_subspace<T: Scalar, L: Ord + Clone>(
    theta: &FocusParameter<L>,
    fs: &FunctionSpace<T>,
) -> Result<Subspace<T>> {
    const OP: &str = "parametric_invariant_subspace";
    if theta.len() != fs.dimension() {
        return Err(Error::input(OP, "parameter and function space have different point counts"));
    }
    let (image, blocks) = theta.blocks();
    let indicators: Vec<CVector<T>> = (0..image.len())
        .map(|k| fs.indicator(blocks.iter().enumerate().filter(|(_, b)| **b == k).map(|(p, _)| p)))
        .collect();
    Ok(fs.span(&indicators))
}

/// Span of the level-set indicators of a reduced parameter, which vanish
/// off its support.
pub fn reduced_invariant_subspace<T: Scalar, L: Ord + Clone>(
    lambda: &ReducedParameter<L>,
    fs: &FunctionSpace<T>,
) -> Result<Subspace<T>> {
    const OP: &str = "parametric_invariant_subspace";
    if lambda.values.len() != fs.dimension() {
        return Err(Error::input(OP, "parameter and function space have different point counts"));
    }
    let indicators: Vec<CVector<T>> = lambda
        .image()
        .iter()
        .map(|v| fs.indicator(lambda.values.iter().enumerate().filter(|(_, x)| x.as_ref() == Some(v)).map(|(p, _)| p)))
        .collect();
    Ok(fs.span(&indicators))
}

/// Largest residual of `U(g)·b` outside `sub`, over basis vectors `b` and `g ∈ subgroup`.
pub fn invariance_defect<T: Scalar>(sub: &Subspace<T>, rep: &LinearRep<T>, subgroup: &ElementSet) -> T {
    let mut worst = T::zero();
    for &g in subgroup {
        for b in sub.basis() {
            worst = worst.max(sub.residual(&rep.apply(g, b)));
        }
    }
    worst
}

/// `U(g)·sub ⊆ sub` for every `g` in `subgroup`, to 1e-12.
pub fn check_invariance<T: Scalar>(sub: &Subspace<T>, rep: &LinearRep<T>, subgroup: &ElementSet) -> bool {
    subgroup.iter().all(|&g| g < rep.len()) && invariance_defect(sub, rep, subgroup) <= T::tol(INVARIANCE_TOL)
}

/// One summand per orbit of the induced group: indicators of the parameter
/// values in that orbit. Their direct sum is the full parametric subspace.
pub fn orbit_split<T: Scalar, L: Ord + Clone>(
    theta: &FocusParameter<L>,
    induced: &InducedAction<L>,
    fs: &FunctionSpace<T>,
) -> Result<Vec<Subspace<T>>> {
    const OP: &str = "orbit_split";
    let (image, blocks) = theta.blocks();
    if image != induced.labels {
        return Err(Error::input(OP, "induced action was built from a different parameter"));
    }
    if theta.len() != fs.dimension() {
        return Err(Error::input(OP, "parameter and function space have different point counts"));
    }
    Ok(induced
        .orbits()
        .iter()
        .map(|orbit| {
            let indicators: Vec<CVector<T>> = orbit
                .members
                .iter()
                .map(|&k| fs.indicator(blocks.iter().enumerate().filter(|(_, b)| **b == k).map(|(p, _)| p)))
                .collect();
            fs.span(&indicators)
        })
        .collect())
}

/// `U(g_ab)·sub_b`. When `sub_b` is invariant under `U(G^b)` and
/// `G^a = g_ab G^b g_ab⁻¹`, the result is invariant under `U(G^a)`.
pub fn connect_spaces<T: Scalar>(rep: &LinearRep<T>, g_ab: Element, sub_b: &Subspace<T>) -> Result<Subspace<T>> {
    if g_ab >= rep.len() {
        return Err(Error::input("connect_spaces", format!("element {g_ab} out of range")));
    }
    let images: Vec<CVector<T>> = sub_b.basis().iter().map(|b| rep.apply(g_ab, b)).collect();
    Ok(Subspace::from_spanning(&images, sub_b.weights()))
}
