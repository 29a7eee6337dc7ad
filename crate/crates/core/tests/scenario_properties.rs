use proptest::prelude::*;
use symqm::scenarios::epr::{correlation_quantum, singlet_correlation};
use symqm::scenarios::lorentz::{boost_compose, mat_diff, mat_mul, velocity_addition, Boost};
use symqm::scenarios::Direction;
use symqm::Rational;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn singlet_paths_agree(u in -10.0f64..10.0) {
        let s = singlet_correlation(u);
        prop_assert!(s.discrepancy() < 1e-12);
        prop_assert!((s.quantum + u.cos()).abs() < 1e-12);
    }

    #[test]
    fn singlet_correlation_is_minus_dot(a in prop::array::uniform3(-1.0f64..1.0), b in prop::array::uniform3(-1.0f64..1.0)) {
        let unit = |v: [f64; 3]| {
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt().max(1e-3);
            Direction::new([v[0] / n, v[1] / n, v[2] / n])
        };
        if let (Ok(a), Ok(b)) = (unit(a), unit(b)) {
            prop_assert!((correlation_quantum(&a, &b) + a.dot(&b)).abs() < 1e-12);
        }
    }

    #[test]
    fn boosts_compose_in_rapidity(v1 in -0.95f64..0.95, v2 in -0.95f64..0.95, v3 in -0.95f64..0.95) {
        let b = |v| Boost::<f64>::new(v, 1.0).unwrap();
        let (b1, b2, b3) = (b(v1), b(v2), b(v3));
        let b12 = boost_compose(&b1, &b2).unwrap();
        prop_assert!(mat_diff(&b12.matrix(), &mat_mul(&b1.matrix(), &b2.matrix())) < 1e-12);
        prop_assert!((b12.rapidity().tanh() - b12.velocity()).abs() < 1e-12);
        let left = boost_compose(&b12, &b3).unwrap();
        let right = boost_compose(&b1, &boost_compose(&b2, &b3).unwrap()).unwrap();
        prop_assert!((left.rapidity() - right.rapidity()).abs() < 1e-12);
        prop_assert!((b12.velocity() - boost_compose(&b2, &b1).unwrap().velocity()).abs() < 1e-15);
    }

    #[test]
    fn rational_velocity_addition_stays_subluminal(p in -99i64..100, q in -99i64..100) {
        let c = Rational::from_integer(1);
        let w = velocity_addition(Rational::new(p, 100), Rational::new(q, 100), c).unwrap();
        prop_assert!(w > -c && w < c);
        prop_assert_eq!(w, velocity_addition(Rational::new(q, 100), Rational::new(p, 100), c).unwrap());
    }
}
