//! Spherical Fourier transform of radial functions,
//! Ff(λ) = ∫_X f φ_{-λ} = ∫_0^R f(r) φ_{-λ}(r) J(r) dr,
//! and the inversion f(r) = κ_n ∫_0^∞ Ff(λ) φ_λ(r) |c(λ)|^{-2} dλ.
//!
//! r-integrals use the uniform-grid rule of [`crate::quadrature`], λ-integrals
//! composite Gauss-Legendre panels. κ_n is pinned by a round trip on a
//! reference bump (see [`calibrate_inversion_constant`]).

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Mutex;

use crate::error::{invalid, Error, Result};
use crate::quadrature::{integrate_parity, uniform_weights, PanelRule, Parity};
use crate::space::{
    cumulative_integral, tail_extrapolation, HyperbolicSpace, RadialFunction, RadialGrid,
};
use crate::spherical::{plancherel_density, spherical_values, LpStrip};

/// Relative density-weighted tail mass below which Λ_max is accepted.
pub const LAMBDA_TAIL_TOLERANCE: f64 = 1e-10;
/// Relative mass allowed in the top quarter of a spectral grid before the
/// inversion integral is declared non-integrable.
pub const INTEGRABILITY_TOLERANCE: f64 = 1e-8;
/// Relative r-tail (beyond the grid) allowed in a forward transform.
pub const TRUNCATION_TOLERANCE: f64 = 1e-10;
/// Gauss-Legendre nodes per λ panel.
pub const PANEL_ORDER: usize = 16;
/// Largest Λ_max tried by [`SpectralGrid::adaptive`].
pub const MAX_LAMBDA: f64 = 256.0;

const CHUNK: usize = 16;

/// Quadrature nodes on (0, Λ_max).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralGrid {
    points: Vec<f64>,
    weights: Vec<f64>,
    lambda_max: f64,
}

impl SpectralGrid {
    /// Composite Gauss-Legendre rule on (0, Λ_max).
    pub fn gauss_legendre(lambda_max: f64, panel_width: f64, order: usize) -> Result<Self> {
        if !(lambda_max > 0.0) || !lambda_max.is_finite() || !(panel_width > 0.0) {
            return Err(Error::Grid(format!(
                "invalid spectral grid: lambda_max {lambda_max}, panel width {panel_width}"
            )));
        }
        let rule = PanelRule::new(0.0, lambda_max, panel_width, order);
        Ok(Self {
            points: rule.nodes,
            weights: rule.weights,
            lambda_max,
        })
    }

    /// Panels narrow enough that φ_λ(r), r ≤ `r_max`, oscillates at most once
    /// per panel.
    pub fn for_radius(lambda_max: f64, r_max: f64) -> Result<Self> {
        let width = (2.0 * std::f64::consts::PI / r_max.max(1.0)).min(1.0);
        Self::gauss_legendre(lambda_max, width, PANEL_ORDER)
    }

    /// Chooses Λ_max for `f` by probing |Ff|·|c|^{-2}: the smallest integer
    /// Λ ≥ 4 with mass on [3Λ/4, 2Λ] below [`LAMBDA_TAIL_TOLERANCE`] of the
    /// mass on [0, Λ].
    pub fn adaptive(space: &HyperbolicSpace, f: &RadialFunction) -> Result<Self> {
        let lambda_max = choose_lambda_max(space, f)?;
        Self::for_radius(lambda_max, f.grid().r_max())
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Transform-side samples Ff(λ + offset) on a spectral grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralFunction {
    pub grid: SpectralGrid,
    pub values: Vec<Complex64>,
    pub offset: Complex64,
    /// Strip in which the transform is known to be analytic, if any.
    pub strip: Option<LpStrip>,
    /// Largest Richardson estimate of the r-quadrature error.
    pub quadrature_error: f64,
}

impl SpectralFunction {
    pub fn new(grid: SpectralGrid, values: Vec<Complex64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(invalid(format!(
                "{} values for a spectral grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self {
            grid,
            values,
            offset: Complex64::new(0.0, 0.0),
            strip: None,
            quadrature_error: 0.0,
        })
    }

    pub fn map<F: Fn(f64, Complex64) -> Complex64>(&self, f: F) -> Self {
        let values = self
            .grid
            .points()
            .iter()
            .zip(&self.values)
            .map(|(&l, &v)| f(l, v))
            .collect();
        Self {
            values,
            ..self.clone()
        }
    }
}

fn check_transformable(space: &HyperbolicSpace, f: &RadialFunction, decay: f64) -> Result<f64> {
    let h = f.grid().require_uniform()?;
    if f.grid().len() < 9 {
        return Err(Error::Grid(
            "transform needs at least 9 radial samples".into(),
        ));
    }
    // |φ_λ(r)| ≤ C (1 + r) e^{(|Im λ| - ρ) r}
    let g: Vec<f64> = f
        .grid()
        .points()
        .iter()
        .zip(f.values())
        .map(|(&r, v)| v.norm() * space.density(r) * (1.0 + r) * ((decay - space.rho()) * r).exp())
        .collect();
    let cumulative = cumulative_integral(&g, h);
    let mass = *cumulative.last().unwrap_or(&0.0);
    let tail = tail_extrapolation(&cumulative, h);
    if mass > 0.0 && !(tail <= TRUNCATION_TOLERANCE * mass) {
        return Err(Error::TruncationDominated {
            what: format!("forward transform on [0, {}]", f.grid().r_max()),
            tail: tail / mass,
            tol: TRUNCATION_TOLERANCE,
        });
    }
    Ok(h)
}

/// Ff(λ + offset) for each λ of `grid`, with φ_{-(λ+offset)} from the
/// spherical module.
pub fn forward_transform(
    space: &HyperbolicSpace,
    f: &RadialFunction,
    grid: &SpectralGrid,
    offset: Complex64,
) -> Result<SpectralFunction> {
    if !(offset.re.is_finite() && offset.im.is_finite()) {
        return Err(invalid("offset must be finite"));
    }
    let h = check_transformable(space, f, offset.im.abs())?;
    let radii = f.grid().points();
    let parity = integrand_parity(space);
    let fj: Vec<Complex64> = radii
        .iter()
        .zip(f.values())
        .map(|(&r, v)| v * space.density(r))
        .collect();
    let results: Vec<Result<(Complex64, f64)>> = grid
        .points()
        .par_iter()
        .map(|&l| {
            let phi = spherical_values(space, -(Complex64::new(l, 0.0) + offset), radii)?;
            let samples: Vec<Complex64> = fj.iter().zip(&phi).map(|(a, b)| a * b).collect();
            Ok(integrate_parity(&samples, h, parity))
        })
        .collect();
    let mut values = Vec::with_capacity(grid.len());
    let mut err: f64 = 0.0;
    for r in results {
        let (v, e) = r?;
        values.push(v);
        if e.is_finite() {
            err = err.max(e);
        }
    }
    Ok(SpectralFunction {
        grid: grid.clone(),
        values,
        offset,
        strip: None,
        quadrature_error: err,
    })
}

/// Forward transform at an offset inside the L^p strip, recording the strip.
pub fn forward_transform_in_strip(
    space: &HyperbolicSpace,
    f: &RadialFunction,
    grid: &SpectralGrid,
    offset: Complex64,
    p: f64,
) -> Result<SpectralFunction> {
    let strip = LpStrip::new(space.rho(), p)?;
    if offset.im.abs() > strip.half_width {
        return Err(invalid(format!(
            "offset {offset} outside the L^{p} strip of half-width {}",
            strip.half_width
        )));
    }
    let mut out = forward_transform(space, f, grid, offset)?;
    out.strip = Some(strip);
    Ok(out)
}

/// f φ J extends evenly through r = 0 when J = sinh^{n-1} does, i.e. for odd n.
fn integrand_parity(space: &HyperbolicSpace) -> Parity {
    if space.dimension() % 2 == 1 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

fn plancherel_weights(space: &HyperbolicSpace, grid: &SpectralGrid) -> Result<Vec<f64>> {
    grid.points()
        .iter()
        .zip(grid.weights())
        .map(|(&l, &w)| Ok(w * plancherel_density(space, l)?))
        .collect()
}

/// Checks that the density-weighted mass of `values` is not concentrated near
/// Λ_max.
fn check_integrable(grid: &SpectralGrid, weights: &[f64], values: &[Complex64]) -> Result<()> {
    let cut = 0.75 * grid.lambda_max();
    let mut total = 0.0;
    let mut top = 0.0;
    for ((&l, &w), v) in grid.points().iter().zip(weights).zip(values) {
        let m = w * v.norm();
        total += m;
        if l > cut {
            top += m;
        }
    }
    if !total.is_finite() {
        return Err(Error::NonIntegrable {
            ratio: f64::INFINITY,
            tol: INTEGRABILITY_TOLERANCE,
        });
    }
    if total > 0.0 && top > INTEGRABILITY_TOLERANCE * total {
        return Err(Error::NonIntegrable {
            ratio: top / total,
            tol: INTEGRABILITY_TOLERANCE,
        });
    }
    Ok(())
}

/// κ_n ∫_0^{Λ_max} g(λ) φ_λ(r) |c(λ)|^{-2} dλ on `grid`.
pub fn inverse_transform(
    space: &HyperbolicSpace,
    g: &SpectralFunction,
    grid: &RadialGrid,
) -> Result<RadialFunction> {
    inverse_with_constant(space, g, grid, inversion_constant(space))
}

fn inverse_with_constant(
    space: &HyperbolicSpace,
    g: &SpectralFunction,
    grid: &RadialGrid,
    kappa: f64,
) -> Result<RadialFunction> {
    if g.offset != Complex64::new(0.0, 0.0) {
        return Err(invalid(
            "inversion integrates over real λ; offset must be zero",
        ));
    }
    let weights = plancherel_weights(space, &g.grid)?;
    check_integrable(&g.grid, &weights, &g.values)?;
    let radii = grid.points();
    let idx: Vec<usize> = (0..g.grid.len()).collect();
    let partials: Vec<Result<Vec<Complex64>>> = idx
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = vec![Complex64::new(0.0, 0.0); radii.len()];
            for &k in chunk {
                let a = g.values[k] * weights[k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let phi = spherical_values(space, Complex64::new(g.grid.points()[k], 0.0), radii)?;
                for (s, p) in acc.iter_mut().zip(&phi) {
                    *s += a * p;
                }
            }
            Ok(acc)
        })
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); radii.len()];
    for part in partials {
        for (s, p) in out.iter_mut().zip(part?) {
            *s += p;
        }
    }
    for v in &mut out {
        *v *= kappa;
    }
    RadialFunction::new(grid.clone(), out)
}

/// Forward transform on real λ, multiplication by `multiplier(λ)` and inversion
/// back onto f's grid, evaluating each φ_λ row once. Returns the result and
/// the (unmultiplied) spectral samples.
pub(crate) fn apply_multiplier<M>(
    space: &HyperbolicSpace,
    f: &RadialFunction,
    grid: &SpectralGrid,
    kappa: f64,
    multiplier: M,
) -> Result<(RadialFunction, SpectralFunction)>
where
    M: Fn(f64) -> Complex64 + Sync,
{
    let h = check_transformable(space, f, 0.0)?;
    let radii = f.grid().points();
    let parity = integrand_parity(space);
    let weights = plancherel_weights(space, grid)?;
    let fj: Vec<Complex64> = radii
        .iter()
        .zip(f.values())
        .map(|(&r, v)| v * space.density(r))
        .collect();
    let idx: Vec<usize> = (0..grid.len()).collect();
    type Partial = (Vec<Complex64>, Vec<(Complex64, f64)>);
    let partials: Vec<Result<Partial>> = idx
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = vec![Complex64::new(0.0, 0.0); radii.len()];
            let mut spec = Vec::with_capacity(chunk.len());
            for &k in chunk {
                let l = grid.points()[k];
                let phi = spherical_values(space, Complex64::new(l, 0.0), radii)?;
                let samples: Vec<Complex64> = fj.iter().zip(&phi).map(|(a, b)| a * b).collect();
                let (ff, err) = integrate_parity(&samples, h, parity);
                spec.push((ff, err));
                let a = ff * multiplier(l) * weights[k];
                for (s, p) in acc.iter_mut().zip(&phi) {
                    *s += a * p;
                }
            }
            Ok((acc, spec))
        })
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); radii.len()];
    let mut values = Vec::with_capacity(grid.len());
    let mut qerr: f64 = 0.0;
    for part in partials {
        let (acc, spec) = part?;
        for (s, p) in out.iter_mut().zip(acc) {
            *s += p;
        }
        for (v, e) in spec {
            values.push(v);
            if e.is_finite() {
                qerr = qerr.max(e);
            }
        }
    }
    let multiplied: Vec<Complex64> = grid
        .points()
        .iter()
        .zip(&values)
        .map(|(&l, v)| v * multiplier(l))
        .collect();
    check_integrable(grid, &weights, &multiplied)?;
    for v in &mut out {
        *v *= kappa;
    }
    let spectral = SpectralFunction {
        grid: grid.clone(),
        values,
        offset: Complex64::new(0.0, 0.0),
        strip: None,
        quadrature_error: qerr,
    };
    Ok((RadialFunction::new(f.grid().clone(), out)?, spectral))
}

fn choose_lambda_max(space: &HyperbolicSpace, f: &RadialFunction) -> Result<f64> {
    const STEP: f64 = 0.125;
    let h = check_transformable(space, f, 0.0)?;
    let radii = f.grid().points();
    let parity = integrand_parity(space);
    let fj: Vec<Complex64> = radii
        .iter()
        .zip(f.values())
        .map(|(&r, v)| v * space.density(r))
        .collect();
    // mass[k] = |Ff| |c|^{-2} STEP at the midpoint of [k STEP, (k+1) STEP],
    // noise[k] the same with the r-quadrature error estimate in place of |Ff|
    let mut mass: Vec<f64> = Vec::new();
    let mut noise: Vec<f64> = Vec::new();
    let extend = |upto: usize, mass: &mut Vec<f64>, noise: &mut Vec<f64>| -> Result<()> {
        let start = mass.len();
        let fresh: Vec<Result<(f64, f64)>> = (start..upto)
            .into_par_iter()
            .map(|k| {
                let l = (k as f64 + 0.5) * STEP;
                let phi = spherical_values(space, Complex64::new(l, 0.0), radii)?;
                let samples: Vec<Complex64> = fj.iter().zip(&phi).map(|(a, b)| a * b).collect();
                let (v, err) = integrate_parity(&samples, h, parity);
                let w = plancherel_density(space, l)? * STEP;
                Ok((v.norm() * w, if err.is_finite() { err * w } else { 0.0 }))
            })
            .collect();
        for m in fresh {
            let (a, b) = m?;
            mass.push(a);
            noise.push(b);
        }
        Ok(())
    };
    // The tail passes when it is below the tolerance or indistinguishable
    // from the r-quadrature error. The second case matters for even n, where
    // the integrand is odd at r = 0 and the rule has an algebraic error floor
    // that grows with λ.
    // The top quarter must also satisfy the inversion's integrability check.
    let passes = |k: usize, mass: &[f64], noise: &[f64]| -> bool {
        let inner: f64 = mass[..k].iter().sum();
        let outer: f64 = mass[3 * k / 4..2 * k].iter().sum();
        let top: f64 = mass[3 * k / 4..k].iter().sum();
        let floor: f64 = noise[3 * k / 4..2 * k].iter().sum();
        outer <= LAMBDA_TAIL_TOLERANCE * inner + floor && top <= INTEGRABILITY_TOLERANCE * inner
    };
    let mut lam = 4.0f64;
    while lam <= MAX_LAMBDA {
        let k_in = (lam / STEP).round() as usize;
        extend(2 * k_in, &mut mass, &mut noise)?;
        let inner: f64 = mass[..k_in].iter().sum();
        let outer: f64 = mass[3 * k_in / 4..2 * k_in].iter().sum();
        if inner == 0.0 && outer == 0.0 {
            return Ok(lam);
        }
        if passes(k_in, &mass, &noise) {
            // shrink to the smallest integer Λ that still passes
            let mut best = lam;
            let mut cand = lam - 1.0;
            while cand >= 4.0 && passes((cand / STEP).round() as usize, &mass, &noise) {
                best = cand;
                cand -= 1.0;
            }
            return Ok(best);
        }
        // the error floor only grows with λ, so once it alone breaks the
        // integrability bound no larger cutoff can pass
        let floor: f64 = noise[3 * k_in / 4..2 * k_in].iter().sum();
        if floor > INTEGRABILITY_TOLERANCE * inner {
            return Err(Error::NonIntegrable {
                ratio: floor / inner,
                tol: INTEGRABILITY_TOLERANCE,
            });
        }
        lam *= 2.0;
    }
    Err(Error::NonIntegrable {
        ratio: f64::INFINITY,
        tol: LAMBDA_TAIL_TOLERANCE,
    })
}

/// L²(X) inner product ⟨u, v⟩ over the grid, with the uniform-grid rule.
pub(crate) fn l2_inner(
    space: &HyperbolicSpace,
    u: &RadialFunction,
    v: &RadialFunction,
) -> Result<Complex64> {
    let h = u.grid().require_uniform()?;
    if u.grid() != v.grid() {
        return Err(invalid("inner product of functions on different grids"));
    }
    let w = uniform_weights(u.grid().len(), h);
    Ok(u.grid()
        .points()
        .iter()
        .zip(u.values().iter().zip(v.values()))
        .zip(&w)
        .map(|((&r, (a, b)), &wk)| a * b.conj() * (wk * space.density(r)))
        .sum())
}

/// Relative L²(X) distance ‖u - v‖ / ‖v‖ on the common grid.
pub fn l2_relative_error(
    space: &HyperbolicSpace,
    u: &RadialFunction,
    v: &RadialFunction,
) -> Result<f64> {
    let d = u.axpy(Complex64::new(-1.0, 0.0), v)?;
    let num = l2_inner(space, &d, &d)?.re.max(0.0).sqrt();
    let den = l2_inner(space, v, v)?.re.max(0.0).sqrt();
    Ok(if den > 0.0 { num / den } else { num })
}

/// e^{-(r/w)²} sampled on a uniform grid.
pub fn gaussian_bump(width: f64, h: f64, r_max: f64) -> Result<RadialFunction> {
    if !(width > 0.0) {
        return Err(invalid(format!("bump width must be positive, got {width}")));
    }
    let grid = RadialGrid::uniform(h, r_max)?;
    Ok(RadialFunction::from_real_fn(&grid, |r| {
        (-(r / width).powi(2)).exp()
    }))
}

/// Radius beyond which e^{-(r/w)²} is below 1e-28.
pub fn bump_radius(width: f64) -> f64 {
    (8.0 * width).max(8.0)
}

/// Least-squares κ for one bump width: κ = Re⟨f, u⟩ / ‖u‖² with u the inverse
/// of Ff computed with κ = 1.
pub fn calibrate_with_width(space: &HyperbolicSpace, width: f64) -> Result<f64> {
    let f = gaussian_bump(width, 1.0 / 256.0, bump_radius(width))?;
    let grid = SpectralGrid::adaptive(space, &f)?;
    let (u, _) = apply_multiplier(space, &f, &grid, 1.0, |_| Complex64::new(1.0, 0.0))?;
    let num = l2_inner(space, &f, &u)?.re;
    let den = l2_inner(space, &u, &u)?.re;
    if !(den > 0.0) {
        return Err(Error::Solve("degenerate calibration round trip".into()));
    }
    Ok(num / den)
}

static KAPPA: Mutex<BTreeMap<usize, f64>> = Mutex::new(BTreeMap::new());

/// Inversion constant κ_n, calibrated once per dimension on the unit-width
/// Gaussian and cached.
pub fn calibrate_inversion_constant(space: &HyperbolicSpace) -> f64 {
    inversion_constant(space)
}

fn inversion_constant(space: &HyperbolicSpace) -> f64 {
    let n = space.dimension();
    if let Some(&k) = KAPPA.lock().expect("kappa cache poisoned").get(&n) {
        return k;
    }
    let k = calibrate_with_width(space, 1.0).expect("reference bump round trip");
    *KAPPA
        .lock()
        .expect("kappa cache poisoned")
        .entry(n)
        .or_insert(k)
}

/// Forward then inverse on real λ with Λ_max chosen adaptively.
pub fn round_trip(space: &HyperbolicSpace, f: &RadialFunction) -> Result<RadialFunction> {
    let grid = SpectralGrid::adaptive(space, f)?;
    let kappa = inversion_constant(space);
    Ok(apply_multiplier(space, f, &grid, kappa, |_| Complex64::new(1.0, 0.0))?.0)
}
