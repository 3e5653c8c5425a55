//! Spherical functions φ_λ on H^n, the Harish-Chandra c-function, the
//! Plancherel density and L^p membership of φ_λ.
//!
//! φ_λ is the radial solution of Δφ = (λ² + ρ²)φ with φ(0) = 1. On H³ it has
//! the closed form sin(λr)/(λ sinh r). In other dimensions it is seeded at a
//! small radius by the Gauss series ₂F₁((ρ+iλ)/2, (ρ-iλ)/2; n/2; -sinh² r) and
//! then integrated outward as w = e^{ρr}φ, which stays bounded for real λ.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::space::{HyperbolicSpace, RadialFunction, RadialGrid};
use crate::special::{gamma_half_integer, hyp2f1_with_derivative, ln_gamma};

/// Tolerance on |Im λ| - ρ(1 - 2/p) below which membership is "boundary".
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-9;

/// Step control of the outward integration: the phase advanced per step,
/// |λ|·s, the absolute cap on s, and the fraction of r allowed near the origin.
const PHASE_PER_STEP: f64 = 0.12;
const MAX_STEP: f64 = 1.0 / 32.0;
const ORIGIN_FRACTION: f64 = 0.2;

/// The L^p strip {λ : |Im λ| ≤ ρ(1 - 2/p)} for p > 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LpStrip {
    pub p: f64,
    pub half_width: f64,
}

impl LpStrip {
    pub fn new(rho: f64, p: f64) -> Result<Self> {
        if !(p > 2.0) || !p.is_finite() {
            return Err(invalid(format!("L^p strip requires p > 2, got {p}")));
        }
        Ok(Self {
            p,
            half_width: rho * (1.0 - 2.0 / p),
        })
    }

    pub fn classify(&self, lambda: Complex64) -> Membership {
        let gap = lambda.im.abs() - self.half_width;
        if gap.abs() <= MEMBERSHIP_TOLERANCE {
            Membership::Boundary
        } else if gap < 0.0 {
            Membership::Inside
        } else {
            Membership::Outside
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

/// Samples of φ_λ on `grid`.
pub fn spherical_fn(
    space: &HyperbolicSpace,
    lambda: Complex64,
    grid: &RadialGrid,
) -> Result<RadialFunction> {
    let values = spherical_values(space, lambda, grid.points())?;
    RadialFunction::new(grid.clone(), values)
}

/// φ_λ at ascending radii (closed form on H³, ODE otherwise).
pub fn spherical_values(
    space: &HyperbolicSpace,
    lambda: Complex64,
    radii: &[f64],
) -> Result<Vec<Complex64>> {
    check_inputs(lambda, radii)?;
    if space.dimension() == 3 {
        Ok(radii.iter().map(|&r| closed_form_h3(lambda, r)).collect())
    } else {
        Ok(integrate(space, lambda, radii))
    }
}

/// φ_λ at ascending radii, always through the series + ODE path. Used to
/// cross-check the H³ closed form.
pub fn spherical_values_ode(
    space: &HyperbolicSpace,
    lambda: Complex64,
    radii: &[f64],
) -> Result<Vec<Complex64>> {
    check_inputs(lambda, radii)?;
    Ok(integrate(space, lambda, radii))
}

fn check_inputs(lambda: Complex64, radii: &[f64]) -> Result<()> {
    if !(lambda.re.is_finite() && lambda.im.is_finite()) {
        return Err(invalid("spectral parameter must be finite"));
    }
    if radii.iter().any(|r| !(*r >= 0.0) || !r.is_finite()) {
        return Err(invalid("radii must be finite and nonnegative"));
    }
    if radii.windows(2).any(|w| w[1] < w[0]) {
        return Err(invalid("radii must be ascending"));
    }
    Ok(())
}

/// sin(λr) / (λ sinh r) with the removable singularities at λ = 0 and r = 0.
pub fn closed_form_h3(lambda: Complex64, r: f64) -> Complex64 {
    if r == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let z = lambda * r;
    let sinc = if z.norm() < 1e-4 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    };
    sinc * (r / r.sinh())
}

// Gauss-Legendre collocation (3 stages, order 6).
const SQRT15: f64 = 3.872_983_346_207_417;
const GL_C: [f64; 3] = [0.5 - SQRT15 / 10.0, 0.5, 0.5 + SQRT15 / 10.0];
const GL_B: [f64; 3] = [5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0];
const GL_A: [[f64; 3]; 3] = [
    [
        5.0 / 36.0,
        2.0 / 9.0 - SQRT15 / 15.0,
        5.0 / 36.0 - SQRT15 / 30.0,
    ],
    [
        5.0 / 36.0 + SQRT15 / 24.0,
        2.0 / 9.0,
        5.0 / 36.0 - SQRT15 / 24.0,
    ],
    [
        5.0 / 36.0 + SQRT15 / 30.0,
        2.0 / 9.0 + SQRT15 / 15.0,
        5.0 / 36.0,
    ],
];

struct RadialOde {
    rho: f64,
    lambda_sq: Complex64,
    a2: [[f64; 3]; 3],
}

impl RadialOde {
    fn new(rho: f64, lambda: Complex64) -> Self {
        let mut a2 = [[0.0; 3]; 3];
        for (i, row) in a2.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| GL_A[i][k] * GL_A[k][j]).sum();
            }
        }
        Self {
            rho,
            lambda_sq: lambda * lambda,
            a2,
        }
    }

    /// Coefficients of w'' = -q w - a w'.
    fn coefficients(&self, r: f64) -> (Complex64, f64) {
        let g = 2.0 / (2.0 * r).exp_m1(); // coth r - 1
        let a = 2.0 * self.rho * g;
        let q = self.lambda_sq - 2.0 * self.rho * self.rho * g;
        (q, a)
    }

    fn step(&self, r: f64, s: f64, w: Complex64, v: Complex64) -> (Complex64, Complex64) {
        let mut q = [Complex64::new(0.0, 0.0); 3];
        let mut a = [0.0; 3];
        for i in 0..3 {
            let (qi, ai) = self.coefficients(r + GL_C[i] * s);
            q[i] = qi;
            a[i] = ai;
        }
        // (I + diag(q) S² + diag(a) S) u = -q (w + v S1) - a v, with S = sA
        let mut m = [[Complex64::new(0.0, 0.0); 3]; 3];
        let mut rhs = [Complex64::new(0.0, 0.0); 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut e = q[i] * (s * s * self.a2[i][j]) + a[i] * s * GL_A[i][j];
                if i == j {
                    e += 1.0;
                }
                m[i][j] = e;
            }
            rhs[i] = -q[i] * (w + v * (s * GL_C[i])) - a[i] * v;
        }
        let u = solve3(m, rhs);
        let mut w_new = w;
        let mut v_new = v;
        for i in 0..3 {
            let su: Complex64 = (0..3).map(|j| u[j] * (s * GL_A[i][j])).sum();
            let kw = v + su;
            w_new += kw * (s * GL_B[i]);
            v_new += u[i] * (s * GL_B[i]);
        }
        (w_new, v_new)
    }
}

fn solve3(mut m: [[Complex64; 3]; 3], mut b: [Complex64; 3]) -> [Complex64; 3] {
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&x, &y| m[x][col].norm().total_cmp(&m[y][col].norm()))
            .unwrap_or(col);
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                let t = m[col][k];
                m[row][k] -= f * t;
            }
            let t = b[col];
            b[row] -= f * t;
        }
    }
    let mut x = [Complex64::new(0.0, 0.0); 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for k in row + 1..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    x
}

/// φ and φ' from the hypergeometric series (valid for sinh² r < 1).
fn series_seed(space: &HyperbolicSpace, lambda: Complex64, r: f64) -> (Complex64, Complex64) {
    let rho = space.rho();
    let i = Complex64::i();
    let a = (rho + i * lambda) / 2.0;
    let b = (rho - i * lambda) / 2.0;
    let c = space.dimension() as f64 / 2.0;
    let sh = r.sinh();
    let (f, df) = hyp2f1_with_derivative(a, b, c, -sh * sh);
    (f, -df * (2.0 * r).sinh())
}

fn integrate(space: &HyperbolicSpace, lambda: Complex64, radii: &[f64]) -> Vec<Complex64> {
    let rho = space.rho();
    let mag = lambda.norm();
    let r0 = if mag > 2.0 { 1.0 / mag } else { 0.5 };
    let ode = RadialOde::new(rho, lambda);
    let max_step = MAX_STEP.min(PHASE_PER_STEP / (mag + rho).max(1.0));

    let mut out = Vec::with_capacity(radii.len());
    let mut state: Option<(f64, Complex64, Complex64)> = None;
    for &target in radii {
        if target <= r0 {
            out.push(series_seed(space, lambda, target).0);
            continue;
        }
        let (mut r, mut w, mut v) = state.unwrap_or_else(|| {
            let (phi, dphi) = series_seed(space, lambda, r0);
            let e = (rho * r0).exp();
            (r0, phi * e, (dphi + phi * rho) * e)
        });
        while r < target {
            let s = (target - r).min(max_step).min(ORIGIN_FRACTION * r.max(r0));
            let (wn, vn) = ode.step(r, s, w, v);
            w = wn;
            v = vn;
            r = if target - r <= s { target } else { r + s };
        }
        state = Some((r, w, v));
        out.push(w * (-rho * r).exp());
    }
    out
}

fn is_c_pole(lambda: Complex64) -> bool {
    // Γ(iλ) has poles where iλ ∈ {0, -1, -2, …}, i.e. λ = i k, k ≥ 0
    lambda.re.abs() < 1e-14 && lambda.im > -1e-12 && (lambda.im - lambda.im.round()).abs() < 1e-12
}

/// Harish-Chandra c-function, normalized by
/// φ_λ(r) ≈ c(λ) e^{(iλ-ρ)r} + c(-λ) e^{(-iλ-ρ)r} as r → ∞:
/// c(λ) = 2^{2ρ-1} Γ(n/2) Γ(iλ) / (√π Γ(ρ + iλ)). On H³ this is 1/(iλ).
pub fn c_function(space: &HyperbolicSpace, lambda: Complex64) -> Result<Complex64> {
    if is_c_pole(lambda) {
        return Err(Error::Pole(format!("{lambda}")));
    }
    Ok(ln_c_function(space, lambda).exp())
}

fn ln_c_function(space: &HyperbolicSpace, lambda: Complex64) -> Complex64 {
    let rho = space.rho();
    let il = Complex64::i() * lambda;
    (2.0 * rho - 1.0) * 2f64.ln() + gamma_half_integer(space.dimension()).ln() + ln_gamma(il)
        - 0.5 * PI.ln()
        - ln_gamma(il + rho)
}

/// Plancherel density |c(λ)|^{-2} for λ > 0.
pub fn plancherel_density(space: &HyperbolicSpace, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(invalid(format!(
            "Plancherel density needs lambda > 0, got {lambda}"
        )));
    }
    Ok((-2.0 * ln_c_function(space, Complex64::new(lambda, 0.0)).re).exp())
}

/// Predicts whether φ_λ ∈ L^p(X) for p > 2.
pub fn lp_membership(space: &HyperbolicSpace, lambda: Complex64, p: f64) -> Result<Membership> {
    Ok(LpStrip::new(space.rho(), p)?.classify(lambda))
}
