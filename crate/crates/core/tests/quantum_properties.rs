use nalgebra::{Complex, DMatrix};
use proptest::prelude::*;
use symqm::linalg::{max_abs_diff, CMatrix, CVector};
use symqm::quantum::{
    born_matrix, conditional_expectation, doubly_stochastic_defect, time_evolve, transport_operator, EigenSystem,
    HermitianOperator, StateVector,
};

fn unitary(n: usize, entries: &[(f64, f64)]) -> CMatrix<f64> {
    let m = CMatrix::from_fn(n, n, |i, j| {
        let (re, im) = entries[i * n + j];
        Complex::new(re, im)
    });
    m.qr().q()
}

fn eigensystem(n: usize, gaps: &[f64], entries: &[(f64, f64)]) -> EigenSystem<f64> {
    let u = unitary(n, entries);
    let mut values = Vec::with_capacity(n);
    let mut acc = -1.0;
    for g in &gaps[..n] {
        acc += g;
        values.push(acc);
    }
    let vectors = (0..n).map(|k| StateVector::new(u.column(k).into_owned()).unwrap()).collect();
    EigenSystem::new(values, vectors).unwrap()
}

fn complex_entries(len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len)
}

/// Dimension, then values and entries for two systems and a unitary.
type PairDraw = (usize, Vec<f64>, Vec<(f64, f64)>, Vec<f64>, Vec<(f64, f64)>, Vec<(f64, f64)>);

fn system_pair() -> impl Strategy<Value = PairDraw> {
    (2usize..=6).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(0.1f64..2.0, 6),
            complex_entries(36),
            prop::collection::vec(0.1f64..2.0, 6),
            complex_entries(36),
            complex_entries(36),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn born_matrix_is_doubly_stochastic_and_covariant((n, ga, ea, gb, eb, ew) in system_pair()) {
        let a = eigensystem(n, &ga, &ea);
        let b = eigensystem(n, &gb, &eb);
        let born = born_matrix(&a, &b).unwrap();
        prop_assert!(doubly_stochastic_defect(&born) < 1e-10);
        let w = unitary(n, &ew);
        let moved = born_matrix(&a.transform(&w).unwrap(), &b.transform(&w).unwrap()).unwrap();
        prop_assert!((born - moved).amax() < 1e-10);
    }

    #[test]
    fn function_calculus_matches_born_average((n, ga, ea, gb, eb, _ew) in system_pair()) {
        let a = eigensystem(n, &ga, &ea);
        let b = eigensystem(n, &gb, &eb);
        let born = born_matrix(&a, &b).unwrap();
        let tb = b.operator();
        let f = |x: f64| x * x - 0.5 * x;
        for (k, v) in a.vectors().iter().enumerate() {
            let direct = conditional_expectation(v, &tb, Some(&f)).unwrap();
            let averaged: f64 = b.values().iter().enumerate().map(|(j, l)| f(*l) * born[(k, j)]).sum();
            prop_assert!((direct - averaged).abs() < 1e-12);
        }
    }

    #[test]
    fn recovered_eigensystem_is_consistent((n, ga, ea, _gb, _eb, ew) in system_pair()) {
        let a = eigensystem(n, &ga, &ea);
        let op = a.operator();
        let rec = op.eigensystem().unwrap();
        prop_assert!(rec.residual(&op) < 1e-10);
        for (x, y) in rec.values().iter().zip(a.values()) {
            prop_assert!((x - y).abs() < 1e-10);
        }
        let d = unitary(n, &ew);
        let t = transport_operator(&op, &d).unwrap();
        for (x, y) in t.spectrum().iter().zip(a.values()) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn evolution_preserves_norm_and_composes(
        (n, ga, ea, _gb, _eb, ev) in system_pair(),
        t in -3.0f64..3.0,
        s in -3.0f64..3.0,
        hbar in 0.2f64..2.0,
    ) {
        let h = eigensystem(n, &ga, &ea).operator();
        let v0 = StateVector::normalized(CVector::from_iterator(n, ev[..n].iter().map(|(r, i)| Complex::new(*r + 1.5, *i)))).unwrap();
        let vt = time_evolve(&v0, &h, t, hbar).unwrap();
        prop_assert!((vt.norm() - 1.0).abs() < 1e-12);
        let two_step = time_evolve(&vt, &h, s, hbar).unwrap();
        let one_step = time_evolve(&v0, &h, t + s, hbar).unwrap();
        prop_assert!((two_step.components() - one_step.components()).norm() < 1e-10);
    }
}

#[test]
fn degenerate_hamiltonians_evolve() {
    let h = HermitianOperator::from_real_diagonal(&[1.0, 1.0, 3.0]);
    let v0 = StateVector::<f64>::basis(3, 0).unwrap();
    let v = time_evolve(&v0, &h, 0.7, 1.0).unwrap();
    assert!((v.components()[0] - Complex::new(0.7f64.cos(), -0.7f64.sin())).norm() < 1e-12);
    let ident: DMatrix<f64> = DMatrix::identity(3, 3);
    let m = ident.map(|x| Complex::new(x, 0.0));
    assert!(max_abs_diff(&m, &HermitianOperator::new(m.clone()).unwrap().apply_function(|_| 1.0)) < 1e-12);
}
