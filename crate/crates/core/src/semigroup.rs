//! The shifted heat semigroup T(t) = e^{-t(Δ - c)} on radial functions,
//! realized as the spectral multiplier e^{-t(λ² + ρ² - c)}. On H³ the explicit
//! heat kernel gives an independent path through radial convolution.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::chaos::{principal_mu, EigenAtom};
use crate::error::{invalid, Result};
use crate::quadrature::uniform_weights;
use crate::space::{lp_norm, HyperbolicSpace, RadialFunction, RadialGrid};
use crate::spherical::spherical_values;
use crate::transform::{apply_multiplier, calibrate_inversion_constant, SpectralGrid};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemigroupConfig {
    pub space: HyperbolicSpace,
    pub p: f64,
    pub c: f64,
    pub t: f64,
}

impl SemigroupConfig {
    pub fn new(space: HyperbolicSpace, p: f64, c: f64, t: f64) -> Result<Self> {
        let cfg = Self { space, p, c, t };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn at_time(&self, t: f64) -> Result<Self> {
        Self::new(self.space, self.p, self.c, t)
    }

    fn validate(&self) -> Result<()> {
        if !(self.p > 1.0) || !self.p.is_finite() {
            return Err(invalid(format!("p must lie in (1, inf), got {}", self.p)));
        }
        if !self.c.is_finite() {
            return Err(invalid("shift c must be finite"));
        }
        if !(self.t >= 0.0) || !self.t.is_finite() {
            return Err(invalid(format!("time must be >= 0, got {}", self.t)));
        }
        Ok(())
    }
}

/// e^{-t(λ² + ρ² - c)}.
pub fn multiplier(config: &SemigroupConfig, lambda: f64) -> f64 {
    let rho = config.space.rho();
    (-config.t * (lambda * lambda + rho * rho - config.c)).exp()
}

/// T(t)f through forward transform, multiplier and inversion, with Λ_max
/// chosen from f.
pub fn evolve(config: &SemigroupConfig, f: &RadialFunction) -> Result<RadialFunction> {
    config.validate()?;
    let grid = SpectralGrid::adaptive(&config.space, f)?;
    evolve_on(config, f, &grid)
}

/// [`evolve`] on a given spectral grid.
pub fn evolve_on(
    config: &SemigroupConfig,
    f: &RadialFunction,
    grid: &SpectralGrid,
) -> Result<RadialFunction> {
    config.validate()?;
    let kappa = calibrate_inversion_constant(&config.space);
    let (out, _) = apply_multiplier(&config.space, f, grid, kappa, |l| {
        Complex64::new(multiplier(config, l), 0.0)
    })?;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Behaviour {
    Decaying,
    Growing,
    Unimodular,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenAction {
    pub factor: Complex64,
    pub behaviour: Behaviour,
}

/// Action of T(t) on F(z) = φ_{-√(z+c-ρ²)}: ΔF = (z + c)F, so T(t)F = e^{-tz}F.
pub fn evolve_eigen(config: &SemigroupConfig, z: Complex64) -> Result<EigenAction> {
    config.validate()?;
    principal_mu(&config.space, config.c, z)?;
    let behaviour = if z.re > 0.0 {
        Behaviour::Decaying
    } else if z.re < 0.0 {
        Behaviour::Growing
    } else {
        Behaviour::Unimodular
    };
    Ok(EigenAction {
        factor: (-config.t * z).exp(),
        behaviour,
    })
}

/// Initial data of an orbit: a transformable function, evolved spectrally,
/// or a finite combination of eigenfunctions, evolved through the exact
/// eigen-factors and sampled on `grid`.
#[derive(Debug, Clone, PartialEq)]
pub enum Orbit {
    Function(RadialFunction),
    Atoms {
        atoms: Vec<EigenAtom>,
        grid: RadialGrid,
    },
}

/// (t, truncated L^p norm of T(t)f) for each time, the norm taken over the
/// whole grid.
pub fn orbit_trace(
    config: &SemigroupConfig,
    orbit: &Orbit,
    times: &[f64],
) -> Result<Vec<(f64, f64)>> {
    config.validate()?;
    if times.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) {
        return Err(invalid("times must be finite and nonnegative"));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(invalid("times must be increasing"));
    }
    let space = &config.space;
    match orbit {
        Orbit::Function(f) => {
            let grid = SpectralGrid::adaptive(space, f)?;
            times
                .iter()
                .map(|&t| {
                    let ft = evolve_on(&config.at_time(t)?, f, &grid)?;
                    Ok((t, lp_norm(space, &ft, config.p, ft.grid().r_max())?))
                })
                .collect()
        }
        Orbit::Atoms { atoms, grid } => {
            let samples = atoms
                .iter()
                .map(|a| spherical_values(space, -a.mu, grid.points()))
                .collect::<Result<Vec<_>>>()?;
            times
                .iter()
                .map(|&t| {
                    let cfg = config.at_time(t)?;
                    let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
                    for (a, s) in atoms.iter().zip(&samples) {
                        let k = a.coefficient * evolve_eigen(&cfg, a.z)?.factor;
                        for (v, x) in values.iter_mut().zip(s) {
                            *v += k * x;
                        }
                    }
                    let ft = RadialFunction::new(grid.clone(), values)?;
                    Ok((t, lp_norm(space, &ft, config.p, grid.r_max())?))
                })
                .collect()
        }
    }
}

/// Heat kernel of H³ for the positive Laplacian:
/// (4πt)^{-3/2} (r / sinh r) e^{-t - r²/(4t)}.
pub fn heat_kernel_h3(t: f64, r: f64) -> Result<f64> {
    if !(t > 0.0) || !(r >= 0.0) {
        return Err(invalid(format!(
            "heat kernel needs t > 0 and r >= 0, got t={t}, r={r}"
        )));
    }
    let ratio = if r == 0.0 { 1.0 } else { r / r.sinh() };
    Ok((4.0 * PI * t).powf(-1.5) * ratio * (-t - r * r / (4.0 * t)).exp())
}

/// T(t)f at `radii` on H³ by radial convolution with the heat kernel:
/// (p_t * f)(r) = (2π / sinh r) ∫ f(s) sinh s ∫_{|r-s|}^{r+s} p_t(u) sinh u du ds,
/// where the inner integral is elementary. f is integrated with the
/// uniform-grid rule over its whole grid, so it must be negligible (or the
/// kernel must be) at the grid's end.
pub fn kernel_evolve_h3(
    config: &SemigroupConfig,
    f: &RadialFunction,
    radii: &[f64],
) -> Result<Vec<Complex64>> {
    config.validate()?;
    if config.space.dimension() != 3 {
        return Err(invalid("the explicit heat kernel is only available on H^3"));
    }
    let t = config.t;
    if !(t > 0.0) {
        return Err(invalid("kernel evolution needs t > 0"));
    }
    if radii.iter().any(|r| !(*r >= 0.0) || !r.is_finite()) {
        return Err(invalid("radii must be finite and nonnegative"));
    }
    let h = f.grid().require_uniform()?;
    let s = f.grid().points();
    let w = uniform_weights(s.len(), h);
    let fs: Vec<Complex64> = f
        .values()
        .iter()
        .zip(s)
        .zip(&w)
        .map(|((v, &si), &wk)| v * (wk * si.sinh()))
        .collect();
    // ∫_{|r-s|}^{r+s} p_t(u) sinh u du = (4πt)^{-3/2} e^{-t} 2t [e^{-(r-s)²/4t} - e^{-(r+s)²/4t}]
    let pref = (t * (config.c - 1.0)).exp() * (4.0 * PI * t).powf(-1.5) * 2.0 * t * 2.0 * PI;
    Ok(radii
        .iter()
        .map(|&r| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (&si, v) in s.iter().zip(&fs) {
                let k = if r == 0.0 {
                    si / t * (-si * si / (4.0 * t)).exp()
                } else {
                    let d = r - si;
                    -(-d * d / (4.0 * t)).exp() * (-r * si / t).exp_m1() / r.sinh()
                };
                acc += v * k;
            }
            acc * pref
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::make_space;
    use crate::transform::gaussian_bump;
    use approx::assert_relative_eq;

    fn h3(c: f64, t: f64) -> SemigroupConfig {
        SemigroupConfig::new(make_space(3).unwrap(), 4.0, c, t).unwrap()
    }

    #[test]
    fn config_validation() {
        let s = make_space(3).unwrap();
        assert!(SemigroupConfig::new(s, 1.0, 0.0, 1.0).is_err());
        assert!(SemigroupConfig::new(s, 2.0, 0.0, -1.0).is_err());
        assert!(SemigroupConfig::new(s, 2.0, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn eigen_factor_examples() {
        let a = evolve_eigen(&h3(2.0, 1.0), Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(a.factor, Complex64::new(1.0, 0.0));
        let y = 0.25;
        let a = evolve_eigen(&h3(1.0, 2.0 * PI / y), Complex64::new(0.0, y)).unwrap();
        assert!((a.factor - 1.0).norm() < 1e-12);
        assert_eq!(a.behaviour, Behaviour::Unimodular);
        let a = evolve_eigen(&h3(1.0, 2f64.ln()), Complex64::new(1.0, 0.0)).unwrap();
        assert_relative_eq!(a.factor.re, 0.5, max_relative = 1e-15);
        assert_eq!(a.behaviour, Behaviour::Decaying);
        let a = evolve_eigen(&h3(1.0, 1.0), Complex64::new(-0.1, 0.2)).unwrap();
        assert_eq!(a.behaviour, Behaviour::Growing);
    }

    #[test]
    fn eigen_factor_rejects_branch_cut() {
        assert!(evolve_eigen(&h3(1.0, 1.0), Complex64::new(-0.5, 0.0)).is_err());
    }

    #[test]
    fn time_zero_is_identity() {
        let f = gaussian_bump(1.0, 1.0 / 128.0, 10.0).unwrap();
        let g = evolve(&h3(0.0, 0.0), &f).unwrap();
        let diff = g.axpy(Complex64::new(-1.0, 0.0), &f).unwrap().max_abs();
        assert!(diff < 1e-10, "{diff}");
    }

    #[test]
    fn kernel_has_unit_mass() {
        // stochastic completeness
        let t = 0.7;
        let h = 1.0 / 256.0;
        let n = (20.0 / h) as usize;
        let g: Vec<f64> = (0..=n)
            .map(|k| {
                let r = k as f64 * h;
                heat_kernel_h3(t, r).unwrap() * 4.0 * PI * r.sinh().powi(2)
            })
            .collect();
        let total: f64 = g
            .iter()
            .zip(uniform_weights(g.len(), h))
            .map(|(a, b)| a * b)
            .sum();
        assert_relative_eq!(total, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn kernel_scales_constant_by_shift() {
        // Δ1 = 0, so T(t)1 = e^{tc}
        let s = make_space(3).unwrap();
        let g = RadialGrid::uniform(1.0 / 64.0, 40.0).unwrap();
        let one = RadialFunction::from_real_fn(&g, |_| 1.0);
        let cfg = SemigroupConfig::new(s, 2.0, 0.3, 1.5).unwrap();
        let v = kernel_evolve_h3(&cfg, &one, &[0.0, 1.0, 3.0]).unwrap();
        for x in v {
            assert_relative_eq!(x.re, (1.5f64 * 0.3).exp(), max_relative = 1e-9);
        }
    }
}
