//! Operators and states on a finite-dimensional complex Hilbert space.
//!
//! Eigensystems are sorted by ascending eigenvalue and each eigenvector's
//! phase is fixed so that its first largest-modulus component is real and
//! positive. Operators that label experiments must have distinct eigenvalues.

use nalgebra::{Complex, ComplexField, DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::linalg::{kron_vec, max_abs_diff, CMatrix, CVector};
use crate::scalar::Scalar;
use crate::stat_model::{EstimableSpace, StatModel};

/// Tolerance for unit norms, Hermiticity, unitarity and normalization.
pub const STATE_TOL: f64 = 1e-12;
/// Smallest gap between eigenvalues treated as distinct.
pub const DEGENERACY_GAP: f64 = 1e-8;
/// Tolerance for eigen-equation residuals.
pub const EIGEN_TOL: f64 = 1e-10;

fn c<T: Scalar>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

fn vec_norm<T: Scalar>(v: &CVector<T>) -> T {
    v.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt()
}

fn is_unitary<T: Scalar>(m: &CMatrix<T>) -> bool {
    m.is_square() && max_abs_diff(&(m.adjoint() * m), &CMatrix::identity(m.nrows(), m.ncols())) <= T::tol(STATE_TOL)
}

/// Unit vector in `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Scalar>(CVector<T>);

impl<T: Scalar> StateVector<T> {
    pub fn new(components: CVector<T>) -> Result<Self> {
        const OP: &str = "StateVector::new";
        if components.is_empty() {
            return Err(Error::input(OP, "empty state"));
        }
        let n = vec_norm(&components);
        if (n - T::one()).abs() > T::tol(STATE_TOL) {
            return Err(Error::input(OP, format!("state has norm {n}, expected 1")));
        }
        Ok(StateVector(components))
    }

    /// Scales a nonzero vector to unit norm.
    pub fn normalized(components: CVector<T>) -> Result<Self> {
        let n = vec_norm(&components);
        if !(n > T::zero()) {
            return Err(Error::input("StateVector::normalized", "zero vector"));
        }
        Ok(StateVector(components.unscale(n)))
    }

    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::input("StateVector::basis", format!("index {k} out of range for dimension {dim}")));
        }
        let mut v = CVector::zeros(dim);
        v[k] = c(T::one());
        Ok(StateVector(v))
    }

    pub fn components(&self) -> &CVector<T> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `self† other`.
    pub fn inner(&self, other: &StateVector<T>) -> Complex<T> {
        self.0.dotc(&other.0)
    }

    pub fn norm(&self) -> T {
        vec_norm(&self.0)
    }

    /// `v v†`.
    pub fn projector(&self) -> CMatrix<T> {
        &self.0 * self.0.adjoint()
    }

    pub fn scale_phase(&self, phase: Complex<T>) -> StateVector<T> {
        StateVector(self.0.map(|z| z * phase))
    }

    /// Fixes the global phase: first largest-modulus component real positive.
    fn canonical_phase(v: CVector<T>) -> CVector<T> {
        let max = v.iter().fold(T::zero(), |m, z| m.max(z.modulus()));
        let slack = T::tol(EIGEN_TOL);
        match v.iter().find(|z| z.modulus() >= max - slack) {
            Some(z) if z.modulus() > T::zero() => {
                let phase = z.conj().unscale(z.modulus());
                v.map(|x| x * phase)
            }
            _ => v,
        }
    }
}

/// `n×n` complex matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator<T: Scalar>(CMatrix<T>);

impl<T: Scalar> HermitianOperator<T> {
    pub fn new(matrix: CMatrix<T>) -> Result<Self> {
        const OP: &str = "HermitianOperator::new";
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::input(OP, "operator must be a nonempty square matrix"));
        }
        let defect = max_abs_diff(&matrix, &matrix.adjoint());
        if defect > T::tol(STATE_TOL) * (T::one() + matrix.iter().fold(T::zero(), |m, z| m.max(z.modulus()))) {
            return Err(Error::input(OP, format!("matrix is not Hermitian (defect {defect})")));
        }
        // symmetrize away roundoff
        let sym = (&matrix + matrix.adjoint()).unscale(T::of(2.0));
        Ok(HermitianOperator(sym))
    }

    pub fn from_real_diagonal(values: &[T]) -> Self {
        HermitianOperator(CMatrix::from_diagonal(&CVector::from_iterator(values.len(), values.iter().map(|x| c(*x)))))
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    fn decompose(&self) -> (Vec<T>, Vec<CVector<T>>) {
        let eig = SymmetricEigen::new(self.0.clone());
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).expect("finite eigenvalues"));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors =
            order.iter().map(|&i| StateVector::canonical_phase(eig.eigenvectors.column(i).into_owned())).collect();
        (values, vectors)
    }

    /// Eigenvalues ascending, with multiplicity.
    pub fn spectrum(&self) -> Vec<T> {
        self.decompose().0
    }

    /// Eigensystem with distinct eigenvalues; degenerate spectra are rejected.
    pub fn eigensystem(&self) -> Result<EigenSystem<T>> {
        let (values, vectors) = self.decompose();
        let vectors = vectors.into_iter().map(StateVector).collect();
        EigenSystem::new(values, vectors)
    }

    /// `f(T) = Σ f(λ) P_λ`, valid for degenerate spectra as well.
    pub fn apply_function(&self, f: impl Fn(T) -> T) -> CMatrix<T> {
        let (values, vectors) = self.decompose();
        let mut out = CMatrix::zeros(self.dim(), self.dim());
        for (l, v) in values.iter().zip(&vectors) {
            out += (v * v.adjoint()) * c(f(*l));
        }
        out
    }

    /// `v† T v`.
    pub fn expectation(&self, v: &StateVector<T>) -> T {
        v.0.dotc(&(&self.0 * &v.0)).re
    }
}

/// Distinct real eigenvalues (ascending) with orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem<T: Scalar> {
    values: Vec<T>,
    vectors: Vec<StateVector<T>>,
}

impl<T: Scalar> EigenSystem<T> {
    pub fn new(values: Vec<T>, vectors: Vec<StateVector<T>>) -> Result<Self> {
        const OP: &str = "EigenSystem::new";
        let n = values.len();
        if n == 0 || vectors.len() != n || vectors.iter().any(|v| v.dim() != n) {
            return Err(Error::input(OP, "need n eigenvalues and n eigenvectors of dimension n"));
        }
        if values.windows(2).any(|w| !(w[1] - w[0] >= T::of(DEGENERACY_GAP))) {
            return Err(Error::contract(OP, "eigenvalues must be distinct and ascending"));
        }
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { T::one() } else { T::zero() };
                if (vectors[i].inner(&vectors[j]) - c(expected)).modulus() > T::tol(STATE_TOL) {
                    return Err(Error::contract(OP, format!("eigenvectors {i} and {j} are not orthonormal")));
                }
            }
        }
        Ok(EigenSystem { values, vectors })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn vectors(&self) -> &[StateVector<T>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `Σ f(λ_k) v_k v_k†`.
    pub fn spectral_sum(&self, f: impl Fn(T) -> T) -> CMatrix<T> {
        let mut out = CMatrix::zeros(self.dim(), self.dim());
        for (l, v) in self.values.iter().zip(&self.vectors) {
            out += v.projector() * c(f(*l));
        }
        out
    }

    pub fn operator(&self) -> HermitianOperator<T> {
        HermitianOperator(self.spectral_sum(|x| x))
    }

    /// Largest `‖T v_k - λ_k v_k‖` for the given operator.
    pub fn residual(&self, op: &HermitianOperator<T>) -> T {
        self.values
            .iter()
            .zip(&self.vectors)
            .map(|(l, v)| vec_norm(&(op.matrix() * v.components() - v.components() * c(*l))))
            .fold(T::zero(), |a, b| a.max(b))
    }

    /// Eigenvectors mapped by a unitary `W`.
    pub fn transform(&self, w: &CMatrix<T>) -> Result<EigenSystem<T>> {
        if w.nrows() != self.dim() || !is_unitary(w) {
            return Err(Error::contract("EigenSystem::transform", "transformation is not unitary"));
        }
        let vectors = self.vectors.iter().map(|v| StateVector(w * v.components())).collect();
        Ok(EigenSystem { values: self.values.clone(), vectors })
    }
}

/// Positive semidefinite Hermitian matrix of unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator<T: Scalar>(CMatrix<T>);

impl<T: Scalar> DensityOperator<T> {
    pub fn new(matrix: CMatrix<T>) -> Result<Self> {
        const OP: &str = "DensityOperator::new";
        let h = HermitianOperator::new(matrix).map_err(|e| Error::input(OP, e.to_string()))?;
        let tr = h.0.trace().re;
        if (tr - T::one()).abs() > T::tol(STATE_TOL) {
            return Err(Error::input(OP, format!("trace is {tr}, expected 1")));
        }
        if let Some(min) = h.spectrum().first() {
            if *min < -T::tol(STATE_TOL) {
                return Err(Error::input(OP, format!("negative eigenvalue {min}")));
            }
        }
        Ok(DensityOperator(h.0))
    }

    pub fn pure(v: &StateVector<T>) -> Self {
        DensityOperator(v.projector())
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.0
    }
}

/// Positive operators `M(ω)` per outcome, summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementFamily<T: Scalar> {
    operators: Vec<CMatrix<T>>,
}

impl<T: Scalar> MeasurementFamily<T> {
    pub fn new(operators: Vec<CMatrix<T>>) -> Result<Self> {
        const OP: &str = "MeasurementFamily::new";
        let Some(first) = operators.first() else {
            return Err(Error::input(OP, "no outcomes"));
        };
        let n = first.nrows();
        let mut total = CMatrix::zeros(n, n);
        for (k, m) in operators.iter().enumerate() {
            let h = HermitianOperator::new(m.clone()).map_err(|e| Error::input(OP, format!("outcome {k}: {e}")))?;
            if h.dim() != n {
                return Err(Error::input(OP, format!("outcome {k} has the wrong dimension")));
            }
            if h.spectrum()[0] < -T::tol(STATE_TOL) {
                return Err(Error::input(OP, format!("outcome {k} is not positive semidefinite")));
            }
            total += m;
        }
        if max_abs_diff(&total, &CMatrix::identity(n, n)) > T::tol(STATE_TOL) {
            return Err(Error::input(OP, "operators do not sum to the identity"));
        }
        Ok(MeasurementFamily { operators })
    }

    pub fn num_outcomes(&self) -> usize {
        self.operators.len()
    }

    pub fn dim(&self) -> usize {
        self.operators[0].nrows()
    }

    /// `M(A) = Σ_{ω ∈ A} M(ω)`; repeated outcomes count once.
    pub fn operator(&self, outcomes: &[usize]) -> Result<CMatrix<T>> {
        let mut set: Vec<usize> = outcomes.to_vec();
        set.sort_unstable();
        set.dedup();
        let mut out = CMatrix::zeros(self.dim(), self.dim());
        for w in set {
            let m = self
                .operators
                .get(w)
                .ok_or_else(|| Error::input("MeasurementFamily::operator", format!("outcome {w} out of range")))?;
            out += m;
        }
        Ok(out)
    }

    pub fn operators(&self) -> &[CMatrix<T>] {
        &self.operators
    }
}

/// `(S f)(λ) = λ f(λ)` written in the orthonormal basis of the estimable space.
pub fn multiplication_operator<T: Scalar>(space: &EstimableSpace<T>) -> Result<HermitianOperator<T>> {
    let n = space.basis.len();
    let w = &space.weights;
    let lam = &space.parameters;
    if w.len() != lam.len() || space.basis.iter().any(|b| b.len() != lam.len()) {
        return Err(Error::input("multiplication_operator", "basis, weights and parameter values disagree in length"));
    }
    let m = CMatrix::from_fn(n, n, |i, j| {
        let bi = &space.basis[i];
        let bj = &space.basis[j];
        c((0..lam.len()).fold(T::zero(), |acc, k| acc + w[k] * bi[k] * lam[k] * bj[k]))
    });
    HermitianOperator::new(m)
}

/// The multiplication operator in the indicator basis: `diag(λ)`.
pub fn multiplication_operator_indicator<T: Scalar>(lambda: &[T]) -> HermitianOperator<T> {
    HermitianOperator::from_real_diagonal(lambda)
}

/// `T = D† S D` for a unitary `D` from the common space onto the experiment's space.
pub fn transport_operator<T: Scalar>(s: &HermitianOperator<T>, d: &CMatrix<T>) -> Result<HermitianOperator<T>> {
    const OP: &str = "transport_operator";
    if d.nrows() != s.dim() || !is_unitary(d) {
        return Err(Error::contract(OP, "transport is not unitary of matching dimension"));
    }
    HermitianOperator::new(d.adjoint() * s.matrix() * d)
}

/// `B[k, j] = |v_k^a† v_j^b|²`.
pub fn born_matrix<T: Scalar>(a: &EigenSystem<T>, b: &EigenSystem<T>) -> Result<DMatrix<T>> {
    if a.dim() != b.dim() {
        return Err(Error::input("born_matrix", format!("dimensions {} and {} differ", a.dim(), b.dim())));
    }
    Ok(DMatrix::from_fn(a.dim(), b.dim(), |k, j| a.vectors[k].inner(&b.vectors[j]).norm_sqr()))
}

/// Largest deviation of any row or column sum from 1.
pub fn doubly_stochastic_defect<T: Scalar>(m: &DMatrix<T>) -> T {
    let rows = m.row_iter().map(|r| (r.sum() - T::one()).abs());
    let cols = m.column_iter().map(|col| (col.sum() - T::one()).abs());
    rows.chain(cols).fold(T::zero(), |a, b| a.max(b))
}

/// `v† f(T) v`, with `f` the identity by default.
pub fn conditional_expectation<T: Scalar>(
    state: &StateVector<T>,
    op: &HermitianOperator<T>,
    f: Option<&dyn Fn(T) -> T>,
) -> Result<T> {
    if state.dim() != op.dim() {
        return Err(Error::input("conditional_expectation", "state and operator dimensions differ"));
    }
    let m = match f {
        Some(f) => op.apply_function(f),
        None => op.matrix().clone(),
    };
    Ok(state.0.dotc(&(m * &state.0)).re)
}

/// `M(ω) = Σ_j P^{λ_j}(ω) v_j v_j†`, with model rows matched to the
/// eigensystem's ascending eigenvalues.
pub fn measurement_family<T: Scalar>(model: &StatModel<T>, b: &EigenSystem<T>) -> Result<MeasurementFamily<T>> {
    if model.num_parameters() != b.dim() {
        return Err(Error::input(
            "measurement_family",
            format!("model has {} parameter values, eigensystem {}", model.num_parameters(), b.dim()),
        ));
    }
    let projectors: Vec<CMatrix<T>> = b.vectors.iter().map(|v| v.projector()).collect();
    let ops = (0..model.num_outcomes())
        .map(|w| {
            let mut m = CMatrix::zeros(b.dim(), b.dim());
            for (j, p) in projectors.iter().enumerate() {
                m += p * c(model.prob(j, w));
            }
            m
        })
        .collect();
    MeasurementFamily::new(ops)
}

/// `tr[σ M(A)]`.
pub fn outcome_probability<T: Scalar>(
    sigma: &DensityOperator<T>,
    family: &MeasurementFamily<T>,
    outcomes: &[usize],
) -> Result<T> {
    if sigma.0.nrows() != family.dim() {
        return Err(Error::input("outcome_probability", "density and measurement dimensions differ"));
    }
    Ok((&sigma.0 * family.operator(outcomes)?).trace().re)
}

/// `σ = Σ π_k v_k v_k†`.
pub fn density_from_prior<T: Scalar>(prior: &[T], a: &EigenSystem<T>) -> Result<DensityOperator<T>> {
    const OP: &str = "density_from_prior";
    if prior.len() != a.dim() {
        return Err(Error::input(OP, "prior length differs from dimension"));
    }
    if prior.iter().any(|p| !(*p >= T::zero())) {
        return Err(Error::input(OP, "prior has negative entries"));
    }
    let total = prior.iter().fold(T::zero(), |s, p| s + *p);
    if (total - T::one()).abs() > T::tol(STATE_TOL) {
        return Err(Error::input(OP, format!("prior sums to {total}, not 1")));
    }
    let mut m = CMatrix::zeros(a.dim(), a.dim());
    for (p, v) in prior.iter().zip(&a.vectors) {
        m += v.projector() * c(*p);
    }
    DensityOperator::new(m)
}

/// Kronecker product of unit states.
pub fn tensor_state<T: Scalar>(states: &[StateVector<T>]) -> Result<StateVector<T>> {
    let (first, rest) = states.split_first().ok_or_else(|| Error::input("tensor_state", "no factors"))?;
    let v = rest.iter().fold(first.0.clone(), |acc, s| kron_vec(&acc, &s.0));
    StateVector::new(v)
}

/// Equal up to a global phase: `|v† w| = 1`.
pub fn phase_equivalent<T: Scalar>(v: &StateVector<T>, w: &StateVector<T>) -> bool {
    v.dim() == w.dim() && (v.inner(w).modulus() - T::one()).abs() <= T::tol(STATE_TOL)
}

/// `exp(-i H t / ħ)` via the eigendecomposition of `H`.
pub fn evolution_operator<T: Scalar>(h: &HermitianOperator<T>, t: T, hbar: T) -> Result<CMatrix<T>> {
    if !(hbar > T::zero()) {
        return Err(Error::input("time_evolve", "hbar must be positive"));
    }
    let eig = SymmetricEigen::new(h.0.clone());
    let v = &eig.eigenvectors;
    let phases = CVector::from_iterator(
        h.dim(),
        eig.eigenvalues.iter().map(|l| {
            let angle = -(*l) * t / hbar;
            Complex::new(angle.cos(), angle.sin())
        }),
    );
    Ok(v * CMatrix::from_diagonal(&phases) * v.adjoint())
}

/// `v_t = exp(-i H t / ħ) v_0`.
pub fn time_evolve<T: Scalar>(v0: &StateVector<T>, h: &HermitianOperator<T>, t: T, hbar: T) -> Result<StateVector<T>> {
    if v0.dim() != h.dim() {
        return Err(Error::input("time_evolve", "state and Hamiltonian dimensions differ"));
    }
    let u = evolution_operator(h, t, hbar)?;
    Ok(StateVector(u * &v0.0))
}

/// `‖(v_{t+dt} - v_{t-dt}) / (2dt) + (i/ħ) H v_t‖`, which is `O(dt²)`.
pub fn schrodinger_residual<T: Scalar>(
    v0: &StateVector<T>,
    h: &HermitianOperator<T>,
    t: T,
    dt: T,
    hbar: T,
) -> Result<T> {
    let ahead = time_evolve(v0, h, t + dt, hbar)?;
    let behind = time_evolve(v0, h, t - dt, hbar)?;
    let now = time_evolve(v0, h, t, hbar)?;
    let derivative = (ahead.0 - behind.0).unscale(T::of(2.0) * dt);
    let rhs = (h.matrix() * now.0) * Complex::new(T::zero(), T::one() / hbar);
    Ok(vec_norm(&(derivative + rhs)))
}

/// A Hermitian operator with distinct eigenvalues `0, 1, ..., n-1` having
/// `v` as its top eigenvector.
pub fn operator_with_eigenvector<T: Scalar>(v: &StateVector<T>) -> HermitianOperator<T> {
    let n = v.dim();
    let mut spanning = vec![v.0.clone()];
    spanning.extend((0..n).map(|k| StateVector::<T>::basis(n, k).expect("in range").0));
    let weights = vec![T::one(); n];
    let basis = crate::linalg::gram_schmidt(&spanning, &weights, T::tol(1e-8));
    let mut m = CMatrix::zeros(n, n);
    for (i, b) in basis.iter().enumerate() {
        m += (b * b.adjoint()) * c(T::count(n - 1 - i));
    }
    HermitianOperator(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn cv(xs: &[(f64, f64)]) -> CVector<f64> {
        CVector::from_iterator(xs.len(), xs.iter().map(|(r, i)| Complex::new(*r, *i)))
    }

    /// Spin-½ along the direction at angle `u` from z in the x-z plane.
    fn spin(u: f64) -> HermitianOperator<f64> {
        let m = CMatrix::from_row_slice(2, 2, &[c(u.cos()), c(u.sin()), c(u.sin()), c(-u.cos())]);
        HermitianOperator::new(m).unwrap()
    }

    #[test]
    fn multiplication_operator_examples() {
        let s = multiplication_operator_indicator(&[-1.0, 1.0]);
        assert_eq!(s.spectrum(), vec![-1.0, 1.0]);
        let space = EstimableSpace {
            basis: vec![
                nalgebra::DVector::from_vec(vec![2f64.sqrt(), 0.0]),
                nalgebra::DVector::from_vec(vec![0.0, 2f64.sqrt()]),
            ],
            weights: vec![0.5, 0.5],
            parameters: vec![-1.0, 1.0],
        };
        let s2 = multiplication_operator(&space).unwrap();
        assert!(max_abs_diff(s2.matrix(), s.matrix()) < 1e-15);
        assert_eq!(multiplication_operator_indicator(&[3.5]).matrix()[(0, 0)].re, 3.5);
    }

    #[test]
    fn transport_preserves_spectrum() {
        let s = multiplication_operator_indicator(&[-1.0, 1.0]);
        let id = CMatrix::identity(2, 2);
        assert_eq!(transport_operator(&s, &id).unwrap(), s);
        let h = CMatrix::from_row_slice(2, 2, &[c(1.0), c(1.0), c(1.0), c(-1.0)]).unscale(2f64.sqrt());
        let t = transport_operator(&s, &h).unwrap();
        let spec = t.spectrum();
        assert!((spec[0] + 1.0).abs() < 1e-12 && (spec[1] - 1.0).abs() < 1e-12);
        let sys = t.eigensystem().unwrap();
        assert!(sys.residual(&t) < 1e-10);
        let squared = sys.spectral_sum(|x| x * x);
        assert!(max_abs_diff(&squared, &CMatrix::identity(2, 2)) < 1e-12);
        let not_unitary = CMatrix::identity(2, 2) * c(2.0);
        assert!(transport_operator(&s, &not_unitary).is_err());
    }

    #[test]
    fn born_matrix_spin_half() {
        let z = spin(0.0).eigensystem().unwrap();
        let b = born_matrix(&z, &z).unwrap();
        assert!((b - DMatrix::identity(2, 2)).amax() < 1e-15);
        let x = spin(PI / 2.0).eigensystem().unwrap();
        let b = born_matrix(&z, &x).unwrap();
        assert!(b.iter().all(|p| (p - 0.5).abs() < 1e-12));
        let u = spin(PI / 3.0).eigensystem().unwrap();
        let b = born_matrix(&z, &u).unwrap();
        assert!((b[(0, 0)] - 0.75).abs() < 1e-12 && (b[(0, 1)] - 0.25).abs() < 1e-12);
        let three = multiplication_operator_indicator(&[0.0, 1.0, 2.0]).eigensystem().unwrap();
        assert!(born_matrix(&z, &three).is_err());
    }

    #[test]
    fn conditional_expectation_examples() {
        let up = spin(0.0).eigensystem().unwrap().vectors()[1].clone();
        let id = HermitianOperator::new(CMatrix::identity(2, 2)).unwrap();
        assert!((conditional_expectation(&up, &id, None).unwrap() - 1.0).abs() < 1e-15);
        let u = 1.1;
        assert!((conditional_expectation(&up, &spin(u), None).unwrap() - u.cos()).abs() < 1e-12);
        let sq = |x: f64| x * x;
        assert!((conditional_expectation(&up, &spin(u), Some(&sq)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measurement_family_examples() {
        let sys = spin(0.4).eigensystem().unwrap();
        let ideal = crate::stat_model::ideal_sign_model::<f64>();
        let fam = measurement_family(&ideal, &sys).unwrap();
        assert!(max_abs_diff(&fam.operator(&[0]).unwrap(), &sys.vectors()[0].projector()) < 1e-12);
        let uniform = StatModel::new(vec![-1.0, 1.0], vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        let fam = measurement_family(&uniform, &sys).unwrap();
        assert!(max_abs_diff(&fam.operator(&[1]).unwrap(), &(CMatrix::identity(2, 2) * c(0.5))) < 1e-12);
        let three = StatModel::new(vec![-1.0, 1.0], vec![vec![0.2, 0.3, 0.5], vec![0.6, 0.1, 0.3]]).unwrap();
        let fam = measurement_family(&three, &sys).unwrap();
        let sum = fam.operator(&[0]).unwrap() + fam.operator(&[2]).unwrap();
        assert!(max_abs_diff(&fam.operator(&[0, 2]).unwrap(), &sum) < 1e-15);
    }

    #[test]
    fn density_and_probability() {
        let sys = multiplication_operator_indicator(&[0.0, 1.0]).eigensystem().unwrap();
        let sigma = density_from_prior(&[0.75, 0.25], &sys).unwrap();
        assert!((sigma.matrix()[(0, 0)].re - 0.75).abs() < 1e-15);
        assert!((sigma.matrix()[(1, 1)].re - 0.25).abs() < 1e-15);
        assert!(density_from_prior(&[0.7, 0.7], &sys).is_err());
        let mixed = density_from_prior(&[0.5, 0.5], &sys).unwrap();
        let fam = measurement_family(&crate::stat_model::ideal_sign_model(), &sys).unwrap();
        assert!((outcome_probability(&mixed, &fam, &[0]).unwrap() - 0.5).abs() < 1e-15);
        assert!((outcome_probability(&mixed, &fam, &[0, 1]).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tensor_and_phase() {
        let e1 = StateVector::<f64>::basis(2, 0).unwrap();
        let e2 = StateVector::<f64>::basis(2, 1).unwrap();
        let t = tensor_state(&[e1.clone(), e1.clone()]).unwrap();
        assert_eq!(t, StateVector::basis(4, 0).unwrap());
        let plus = StateVector::new(cv(&[(FRAC_1_SQRT_2, 0.0), (FRAC_1_SQRT_2, 0.0)])).unwrap();
        let t = tensor_state(&[plus, e1.clone()]).unwrap();
        let expected = cv(&[(FRAC_1_SQRT_2, 0.0), (0.0, 0.0), (FRAC_1_SQRT_2, 0.0), (0.0, 0.0)]);
        assert!((t.components() - expected).norm() < 1e-15);
        let e3 = StateVector::<f64>::basis(3, 2).unwrap();
        assert_eq!(tensor_state(&[e1.clone(), e2.clone(), e3]).unwrap().dim(), 12);

        let phased = e1.scale_phase(Complex::from_polar(1.0, PI / 3.0));
        assert!(phase_equivalent(&e1, &phased));
        assert!(phase_equivalent(&e1, &e1));
        assert!(!phase_equivalent(&e1, &e2));
    }

    #[test]
    fn full_period_returns_initial_state() {
        let omega = 1.7;
        let h = HermitianOperator::from_real_diagonal(&[0.0, omega]);
        let v0 = StateVector::new(cv(&[(0.6, 0.0), (0.0, 0.8)])).unwrap();
        let v = time_evolve(&v0, &h, 2.0 * PI / omega, 1.0).unwrap();
        assert!((v.components() - v0.components()).norm() < 1e-12);
        assert_eq!(time_evolve(&v0, &h, 0.0, 1.0).unwrap().components(), v0.components());
        assert!(time_evolve(&v0, &h, 1.0, 0.0).is_err());
        let coarse = schrodinger_residual(&v0, &h, 0.4, 1e-2, 1.0).unwrap();
        let fine = schrodinger_residual(&v0, &h, 0.4, 1e-3, 1.0).unwrap();
        let order = (coarse / fine).log10();
        assert!((1.8..=2.2).contains(&order), "{order}");
    }

    #[test]
    fn degenerate_operators_have_no_eigensystem() {
        let h = HermitianOperator::<f64>::from_real_diagonal(&[1.0, 1.0, 2.0]);
        assert!(matches!(h.eigensystem(), Err(Error::Contract { .. })));
        assert!(HermitianOperator::new(CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)])).is_err());
    }

    #[test]
    fn every_state_is_an_eigenvector() {
        let v = StateVector::normalized(cv(&[(1.0, 0.5), (-0.3, 0.2), (0.0, 1.0)])).unwrap();
        let op = operator_with_eigenvector(&v);
        let sys = op.eigensystem().unwrap();
        assert!(phase_equivalent(&sys.vectors()[2], &v));
        assert!((sys.values()[2] - 2.0).abs() < 1e-12);
    }
}
