//! Special functions needed by the spherical analysis: the complex log-gamma
//! function, sphere areas and the Gauss hypergeometric series that seeds the
//! radial ODE near the origin.

use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal-ish logarithm of the gamma function for complex arguments.
///
/// The imaginary part is only determined modulo `2πi`; callers exponentiate
/// differences, so the branch is irrelevant. Poles are the caller's problem.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return ln_gamma(z.conj()).conj();
    }
    if z.re < 0.5 {
        // Reflection: Γ(z)Γ(1-z) = π / sin(πz), with log-sin evaluated without
        // overflow for large imaginary parts (Im z ≥ 0 here).
        let i = Complex64::i();
        let e = (2.0 * i * PI * z).exp();
        let ln_sin = -i * PI * z + (e - 1.0).ln() - (2.0 * i).ln();
        return Complex64::new(PI.ln(), 0.0) - ln_sin - ln_gamma(1.0 - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// Γ(n/2) for a positive integer `n`, by the exact half-integer recursion.
pub fn gamma_half_integer(n: usize) -> f64 {
    assert!(n > 0);
    let (mut value, mut arg) = if n % 2 == 0 {
        (1.0, 1.0)
    } else {
        (PI.sqrt(), 0.5)
    };
    let target = n as f64 / 2.0;
    while arg < target {
        value *= arg;
        arg += 1.0;
    }
    value
}

/// Area of the unit sphere S^{n-1} in R^n: 2π^{n/2} / Γ(n/2).
pub fn sphere_area(n: usize) -> f64 {
    2.0 * PI.powf(n as f64 / 2.0) / gamma_half_integer(n)
}

/// Gauss series ₂F₁(a, b; c; x) and its x-derivative, for |x| < 1.
///
/// Summation stops once a term drops below 1e-17 of the running sum; the
/// caller keeps |x| small enough that no cancellation occurs.
pub fn hyp2f1_with_derivative(
    a: Complex64,
    b: Complex64,
    c: f64,
    x: f64,
) -> (Complex64, Complex64) {
    debug_assert!(x.abs() < 1.0);
    // F'(x) = (ab/c) ₂F₁(a+1, b+1; c+1; x)
    let value = hyp2f1(a, b, c, x);
    let deriv = a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, x);
    (value, deriv)
}

fn hyp2f1(a: Complex64, b: Complex64, c: f64, x: f64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut k = 0.0;
    loop {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
        sum += term;
        k += 1.0;
        if (term.norm() < 1e-17 * sum.norm().max(1e-300) && k > 2.0) || k > 2000.0 {
            return sum;
        }
    }
}
