//! φ_λ on H², H⁴ and H⁵ against hypergeometric values computed with mpmath
//! (fixtures/generate.py).

use hyperchaos::space::make_space;
use hyperchaos::spherical::{closed_form_h3, spherical_values, spherical_values_ode};
use num_complex::Complex64;
use serde::Deserialize;

#[derive(Deserialize)]
struct Case {
    n: usize,
    lambda: [f64; 2],
    r: Vec<f64>,
    value: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
struct Oracle {
    cases: Vec<Case>,
}

fn oracle() -> Oracle {
    let text = include_str!("fixtures/phi_oracle.json");
    serde_json::from_str(text).expect("fixture parses")
}

#[test]
fn matches_hypergeometric_oracle() {
    let oracle = oracle();
    assert_eq!(oracle.cases.len(), 18);
    for case in &oracle.cases {
        let space = make_space(case.n).unwrap();
        let lambda = Complex64::new(case.lambda[0], case.lambda[1]);
        let got = spherical_values(&space, lambda, &case.r).unwrap();
        for ((r, want), g) in case.r.iter().zip(&case.value).zip(&got) {
            let want = Complex64::new(want[0], want[1]);
            let err = (g - want).norm();
            // relative, with a floor for values near a zero of φ
            assert!(
                err <= 1e-8 * want.norm() + 1e-14,
                "n={} lambda={lambda} r={r}: got {g}, want {want}, err {err:e}",
                case.n
            );
        }
    }
}

#[test]
fn ode_agrees_with_h3_closed_form() {
    let space = make_space(3).unwrap();
    let radii: Vec<f64> = (0..=400).map(|k| k as f64 * 0.05).collect();
    for lambda in [
        Complex64::new(0.3, 0.0),
        Complex64::new(4.0, 0.0),
        Complex64::new(1.0, 0.4),
    ] {
        let ode = spherical_values_ode(&space, lambda, &radii).unwrap();
        for (r, v) in radii.iter().zip(ode) {
            assert!(
                (v - closed_form_h3(lambda, *r)).norm() < 1e-9,
                "{lambda} {r}"
            );
        }
    }
}
