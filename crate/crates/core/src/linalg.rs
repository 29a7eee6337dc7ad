//! Small dense helpers: weighted inner products, Gram-Schmidt, numerical
//! rank, Kronecker products.

use nalgebra::{Complex, ComplexField, DMatrix, DVector};

use crate::scalar::Scalar;

pub type CVector<T> = DVector<Complex<T>>;
pub type CMatrix<T> = DMatrix<Complex<T>>;

/// `⟨a, b⟩_w = Σ conj(a_i) b_i w_i`.
pub fn weighted_inner<T: Scalar>(a: &CVector<T>, b: &CVector<T>, weights: &[T]) -> Complex<T> {
    a.iter()
        .zip(b.iter())
        .zip(weights)
        .fold(Complex::new(T::zero(), T::zero()), |acc, ((x, y), w)| acc + x.conj() * y * *w)
}

pub fn weighted_norm<T: Scalar>(a: &CVector<T>, weights: &[T]) -> T {
    weighted_inner(a, a, weights).re.max(T::zero()).sqrt()
}

/// Modified Gram-Schmidt with one reorthogonalization pass. Vectors whose
/// residual norm falls below `rank_tol` are dropped.
pub fn gram_schmidt<T: Scalar>(vectors: &[CVector<T>], weights: &[T], rank_tol: T) -> Vec<CVector<T>> {
    let mut basis: Vec<CVector<T>> = Vec::new();
    for v in vectors {
        let mut r = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = weighted_inner(b, &r, weights);
                r -= b * c;
            }
        }
        let norm = weighted_norm(&r, weights);
        if norm > rank_tol {
            basis.push(r.unscale(norm));
        }
    }
    basis
}

/// Real counterpart of [`gram_schmidt`].
pub fn gram_schmidt_real<T: Scalar>(vectors: &[DVector<T>], weights: &[T], rank_tol: T) -> Vec<DVector<T>> {
    let inner = |a: &DVector<T>, b: &DVector<T>| {
        a.iter().zip(b.iter()).zip(weights).fold(T::zero(), |acc, ((x, y), w)| acc + *x * *y * *w)
    };
    let mut basis: Vec<DVector<T>> = Vec::new();
    for v in vectors {
        let mut r = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = inner(b, &r);
                r -= b * c;
            }
        }
        let norm = inner(&r, &r).max(T::zero()).sqrt();
        if norm > rank_tol {
            basis.push(r.unscale(norm));
        }
    }
    basis
}

/// Number of singular values above `tol`.
pub fn numerical_rank<T: Scalar>(m: &DMatrix<T>, tol: T) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    m.clone().svd(false, false).singular_values.iter().filter(|s| **s > tol).count()
}

pub fn complexify<T: Scalar>(v: &DVector<T>) -> CVector<T> {
    v.map(|x| Complex::new(x, T::zero()))
}

pub fn complexify_matrix<T: Scalar>(m: &DMatrix<T>) -> CMatrix<T> {
    m.map(|x| Complex::new(x, T::zero()))
}

pub fn kron_vec<T: Scalar>(a: &CVector<T>, b: &CVector<T>) -> CVector<T> {
    CVector::from_iterator(a.len() * b.len(), a.iter().flat_map(|x| b.iter().map(move |y| *x * *y)))
}

pub fn kron<T: Scalar>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    CMatrix::from_fn(ar * br, ac * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

/// Largest entry modulus of `a - b`.
pub fn max_abs_diff<T: Scalar>(a: &CMatrix<T>, b: &CMatrix<T>) -> T {
    (a - b).iter().fold(T::zero(), |m, z| m.max(z.modulus()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_schmidt_drops_dependent_vectors() {
        let w = [1.0, 2.0, 1.0];
        let v1 = complexify(&DVector::from_vec(vec![1.0, 0.0, 1.0]));
        let v2 = complexify(&DVector::from_vec(vec![2.0, 0.0, 2.0]));
        let v3 = complexify(&DVector::from_vec(vec![0.0, 1.0, 0.0]));
        let basis = gram_schmidt(&[v1, v2, v3], &w, 1e-10);
        assert_eq!(basis.len(), 2);
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((weighted_inner(a, b, &w).re - expected).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn kron_dimensions() {
        let a = CMatrix::<f64>::identity(2, 2);
        let b = CMatrix::<f64>::identity(3, 3);
        assert_eq!(kron(&a, &b), CMatrix::identity(6, 6));
    }
}
