use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::region::{imaginary_axis_section, AxisSection, ParabolicRegion};
use crate::error::{invalid, Error, Result};
use crate::semigroup::{kernel_evolve_h3, SemigroupConfig};
use crate::space::{HyperbolicSpace, RadialFunction, RadialGrid};
use crate::spherical::{spherical_fn, spherical_values, LpStrip};

/// Principal μ = √(z + c - ρ²), rejecting z on the cut z + c - ρ² ∈ (-∞, 0].
pub fn principal_mu(space: &HyperbolicSpace, c: f64, z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite() && c.is_finite()) {
        return Err(invalid("eigenvalue and shift must be finite"));
    }
    let a = z + c - space.rho() * space.rho();
    if a.im == 0.0 && a.re <= 0.0 {
        return Err(Error::Branch(format!(
            "z = {z} lies on the excluded ray z <= rho^2 - c = {}",
            space.rho() * space.rho() - c
        )));
    }
    Ok(a.sqrt())
}

/// Coefficient times F(z) = φ_{-μ}, with ΔF = (z + c)F.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenAtom {
    pub z: Complex64,
    pub mu: Complex64,
    pub coefficient: Complex64,
}

impl EigenAtom {
    pub fn new(
        space: &HyperbolicSpace,
        c: f64,
        z: Complex64,
        coefficient: Complex64,
    ) -> Result<Self> {
        Ok(Self {
            z,
            mu: principal_mu(space, c, z)?,
            coefficient,
        })
    }
}

/// F(z) = φ_{-√(z + c - ρ²)} sampled on `grid`.
pub fn eigen_map(
    space: &HyperbolicSpace,
    c: f64,
    z: Complex64,
    grid: &RadialGrid,
) -> Result<RadialFunction> {
    let mu = principal_mu(space, c, z)?;
    spherical_fn(space, -mu, grid)
}

/// Σ a_j F(z_j) on `grid`.
pub fn combine_atoms(
    space: &HyperbolicSpace,
    atoms: &[EigenAtom],
    grid: &RadialGrid,
) -> Result<RadialFunction> {
    let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
    for a in atoms {
        let s = spherical_values(space, -a.mu, grid.points())?;
        for (v, x) in values.iter_mut().zip(s) {
            *v += a.coefficient * x;
        }
    }
    RadialFunction::new(grid.clone(), values)
}

/// The L^p strip S_p that √(z + c - ρ²) maps Ω onto.
pub fn strip_image(region: &ParabolicRegion) -> Result<LpStrip> {
    LpStrip::new(region.rho_norm, region.p)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicPoint {
    pub period: f64,
    pub atoms: Vec<EigenAtom>,
    pub function: RadialFunction,
}

/// f = Σ a_k F(2πik/T): every atom returns to itself after time T.
pub fn periodic_point(
    space: &HyperbolicSpace,
    p: f64,
    c: f64,
    t_period: f64,
    harmonics: &[(i64, Complex64)],
    grid: &RadialGrid,
) -> Result<PeriodicPoint> {
    if !(t_period > 0.0) || !t_period.is_finite() {
        return Err(invalid(format!("period must be positive, got {t_period}")));
    }
    if harmonics.is_empty() {
        return Err(invalid("at least one harmonic is required"));
    }
    let region = ParabolicRegion::for_space(space, p, c)?;
    let y_max = match imaginary_axis_section(&region) {
        AxisSection::Interval { half_length } => half_length,
        other => {
            return Err(invalid(format!(
                "imaginary-axis section {other:?} has empty interior; no periodic points"
            )))
        }
    };
    let mut atoms = Vec::with_capacity(harmonics.len());
    for &(k, a) in harmonics {
        if k == 0 {
            return Err(invalid("harmonic index must be nonzero"));
        }
        let y = 2.0 * PI * k as f64 / t_period;
        if !(y.abs() < y_max) {
            return Err(invalid(format!(
                "harmonic {k}: |2 pi k / T| = {} is not below the section bound Y = {y_max}",
                y.abs()
            )));
        }
        atoms.push(EigenAtom::new(space, c, Complex64::new(0.0, y), a)?);
    }
    let function = combine_atoms(space, &atoms, grid)?;
    Ok(PeriodicPoint {
        period: t_period,
        atoms,
        function,
    })
}

/// max_k |e^{-T z_k} - 1|.
pub fn period_factor_error(atoms: &[EigenAtom], t: f64) -> f64 {
    atoms
        .iter()
        .map(|a| ((-t * a.z).exp() - 1.0).norm())
        .fold(0.0, f64::max)
}

/// Relative period error of a periodic point on H³ under numerical evolution:
/// the point is sampled on [0, `window`] with spacing `h`, evolved for one
/// period by heat-kernel convolution, and compared with itself on
/// [0, `interior`] in the sup norm. The window must exceed the interior by
/// several diffusion lengths √(2T) plus the drift 2T·max|Im μ|.
pub fn windowed_period_error(
    space: &HyperbolicSpace,
    c: f64,
    point: &PeriodicPoint,
    window: f64,
    h: f64,
    interior: f64,
) -> Result<f64> {
    if !(interior > 0.0 && interior < window) {
        return Err(invalid("interior radius must lie in (0, window)"));
    }
    let grid = RadialGrid::uniform(h, window)?;
    let f = combine_atoms(space, &point.atoms, &grid)?;
    let cfg = SemigroupConfig::new(*space, 2.0, c, point.period)?;
    let m = grid.last_index_within(interior);
    let radii = &grid.points()[..=m];
    let evolved = kernel_evolve_h3(&cfg, &f, radii)?;
    let scale = f.values()[..=m]
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    let err = evolved
        .iter()
        .zip(&f.values()[..=m])
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(err / scale)
}
