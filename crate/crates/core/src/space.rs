//! Geometry of real hyperbolic space H^n (curvature -1) restricted to radial
//! (K-invariant) functions: the half-sum of roots ρ, the radial volume density
//! and the radial part of the positive Laplacian.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::special::sphere_area;

/// Order of the finite-difference stencil used by [`radial_laplacian`].
pub const STENCIL_ORDER: i32 = 2;

/// Default grid spacing and truncation radius for norm computations.
pub const DEFAULT_SPACING: f64 = 1.0 / 256.0;
pub const DEFAULT_R_MAX: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicSpace {
    dimension: usize,
    rho: f64,
    surface_const: f64,
}

impl HyperbolicSpace {
    pub fn new(dimension: usize) -> Result<Self> {
        if dimension < 2 {
            return Err(invalid(format!("dimension must be >= 2, got {dimension}")));
        }
        Ok(Self {
            dimension,
            rho: (dimension as f64 - 1.0) / 2.0,
            surface_const: sphere_area(dimension),
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// ‖ρ‖ = (n-1)/2.
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Area of the unit (n-1)-sphere.
    pub fn surface_const(&self) -> f64 {
        self.surface_const
    }

    /// J(r) = |S^{n-1}| sinh(r)^{n-1}; callers guarantee r >= 0.
    pub(crate) fn density(&self, r: f64) -> f64 {
        self.surface_const * r.sinh().powi(self.dimension as i32 - 1)
    }
}

/// Builds H^n; rejects n < 2.
pub fn make_space(n: usize) -> Result<HyperbolicSpace> {
    HyperbolicSpace::new(n)
}

/// Radial volume density J(r) = |S^{n-1}| sinh(r)^{n-1}.
pub fn volume_density(space: &HyperbolicSpace, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(invalid(format!("radius must be >= 0, got {r}")));
    }
    Ok(space.density(r))
}

/// A strictly increasing set of radii starting at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    points: Vec<f64>,
    spacing: Option<f64>,
}

impl RadialGrid {
    /// Uniform grid `0, h, 2h, …` up to (and including) the last point ≤ `r_max`
    /// within rounding.
    pub fn uniform(h: f64, r_max: f64) -> Result<Self> {
        if !(h > 0.0) || !(r_max > 0.0) || !h.is_finite() || !r_max.is_finite() {
            return Err(Error::Grid(format!("invalid spacing {h} / radius {r_max}")));
        }
        let n = (r_max / h + 1e-9).floor() as usize;
        if n < 1 {
            return Err(Error::Grid("radius smaller than spacing".into()));
        }
        let points = (0..=n).map(|k| k as f64 * h).collect();
        Ok(Self {
            points,
            spacing: Some(h),
        })
    }

    /// Arbitrary strictly increasing radii; the first must be exactly 0.
    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.first() != Some(&0.0) {
            return Err(Error::Grid("first grid point must be exactly 0".into()));
        }
        if points.windows(2).any(|w| !(w[1] > w[0])) || points.iter().any(|x| !x.is_finite()) {
            return Err(Error::Grid(
                "grid must be strictly increasing and finite".into(),
            ));
        }
        Ok(Self {
            points,
            spacing: None,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn spacing(&self) -> Option<f64> {
        self.spacing
    }

    pub fn r_max(&self) -> f64 {
        *self.points.last().expect("grid is never empty")
    }

    pub(crate) fn require_uniform(&self) -> Result<f64> {
        self.spacing
            .ok_or_else(|| Error::Grid("operation requires a uniform grid".into()))
    }

    /// Index of the last grid point with r <= `radius` (with rounding slack).
    pub(crate) fn last_index_within(&self, radius: f64) -> usize {
        let slack = 1e-9 * self.spacing.unwrap_or(1.0);
        match self.points.iter().rposition(|&r| r <= radius + slack) {
            Some(i) => i,
            None => 0,
        }
    }
}

/// A K-invariant function sampled on a radial grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction {
    grid: RadialGrid,
    values: Vec<Complex64>,
}

impl RadialFunction {
    pub fn new(grid: RadialGrid, values: Vec<Complex64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(invalid(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn<F: FnMut(f64) -> Complex64>(grid: &RadialGrid, f: F) -> Self {
        let values = grid.points().iter().copied().map(f).collect();
        Self {
            grid: grid.clone(),
            values,
        }
    }

    pub fn from_real_fn<F: FnMut(f64) -> f64>(grid: &RadialGrid, mut f: F) -> Self {
        Self::from_fn(grid, |r| Complex64::new(f(r), 0.0))
    }

    pub fn zeros(grid: &RadialGrid) -> Self {
        Self::from_fn(grid, |_| Complex64::new(0.0, 0.0))
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn scale(&self, a: Complex64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * a).collect(),
        }
    }

    /// `self + a * other`; grids must match.
    pub fn axpy(&self, a: Complex64, other: &RadialFunction) -> Result<Self> {
        if self.grid != other.grid {
            return Err(invalid("radial functions live on different grids"));
        }
        Ok(Self {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| x + a * y)
                .collect(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Discrete positive Laplacian Δf = -f'' - (n-1) coth(r) f' with second-order
/// central differences; Δf(0) = -n f''(0) from the even extension, one-sided
/// second-order stencils at the outer end.
pub fn radial_laplacian(space: &HyperbolicSpace, f: &RadialFunction) -> Result<RadialFunction> {
    let h = f.grid().require_uniform()?;
    let n_pts = f.grid().len();
    if n_pts < 5 {
        return Err(Error::Grid(format!(
            "laplacian stencil needs at least 5 points, got {n_pts}"
        )));
    }
    let v = f.values();
    let r = f.grid().points();
    let m = (space.dimension() - 1) as f64;
    let h2 = h * h;
    let mut out = Vec::with_capacity(n_pts);
    out.push(-(space.dimension() as f64) * 2.0 * (v[1] - v[0]) / h2);
    for i in 1..n_pts - 1 {
        let d2 = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
        let d1 = (v[i + 1] - v[i - 1]) / (2.0 * h);
        out.push(-d2 - m / r[i].tanh() * d1);
    }
    let k = n_pts - 1;
    let d2 = (2.0 * v[k] - 5.0 * v[k - 1] + 4.0 * v[k - 2] - v[k - 3]) / h2;
    let d1 = (3.0 * v[k] - 4.0 * v[k - 1] + v[k - 2]) / (2.0 * h);
    out.push(-d2 - m / r[k].tanh() * d1);
    RadialFunction::new(f.grid().clone(), out)
}

/// Truncated L^p(X) norm together with an estimate of what the region beyond
/// the truncation radius would add.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncatedNorm {
    pub value: f64,
    /// Extrapolated ∫_R^∞ |f|^p J dr assuming the last two unit windows decay
    /// geometrically; infinite when they do not decay.
    pub tail_integral: f64,
    pub radius: f64,
}

/// (∫_0^R |f|^p J dr)^{1/p} on the grid points with r ≤ R.
pub fn lp_norm(space: &HyperbolicSpace, f: &RadialFunction, p: f64, radius: f64) -> Result<f64> {
    Ok(lp_norm_with_tail(space, f, p, radius)?.value)
}

pub fn lp_norm_with_tail(
    space: &HyperbolicSpace,
    f: &RadialFunction,
    p: f64,
    radius: f64,
) -> Result<TruncatedNorm> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(invalid(format!("p must be >= 1, got {p}")));
    }
    let h = f.grid().require_uniform()?;
    if radius > f.grid().r_max() + 1e-9 * h {
        return Err(invalid(format!(
            "truncation radius {radius} exceeds grid radius {}",
            f.grid().r_max()
        )));
    }
    let last = f.grid().last_index_within(radius);
    let r = f.grid().points();
    let g: Vec<f64> = (0..=last)
        .map(|i| f.values()[i].norm().powf(p) * space.density(r[i]))
        .collect();
    let cumulative = cumulative_integral(&g, h);
    let total = *cumulative.last().unwrap_or(&0.0);
    let tail = tail_extrapolation(&cumulative, h);
    Ok(TruncatedNorm {
        value: total.powf(1.0 / p),
        tail_integral: tail,
        radius: r[last],
    })
}

/// Running integral of nonnegative samples. Each interval uses the cubic
/// through its four nearest samples (quadratic at the ends), clamped at zero
/// so the running value is nondecreasing.
pub(crate) fn cumulative_integral(g: &[f64], h: f64) -> Vec<f64> {
    let n = g.len();
    let mut out = Vec::with_capacity(n);
    out.push(0.0);
    if n < 2 {
        return out;
    }
    let mut acc = 0.0;
    for i in 0..n - 1 {
        let piece = if n < 3 {
            0.5 * h * (g[i] + g[i + 1])
        } else if i == 0 {
            h * (5.0 * g[0] + 8.0 * g[1] - g[2]) / 12.0
        } else if i == n - 2 {
            h * (-g[i - 1] + 8.0 * g[i] + 5.0 * g[i + 1]) / 12.0
        } else {
            h * (-g[i - 1] + 13.0 * g[i] + 13.0 * g[i + 1] - g[i + 2]) / 24.0
        };
        acc += piece.max(0.0);
        out.push(acc);
    }
    out
}

pub(crate) fn tail_extrapolation(cumulative: &[f64], h: f64) -> f64 {
    let n = cumulative.len();
    let span = (n - 1) as f64 * h;
    let window = 1.0_f64.min(span / 4.0);
    let steps = (window / h).round() as usize;
    if steps == 0 || 2 * steps >= n {
        return f64::INFINITY;
    }
    let c = |k: usize| cumulative[n - 1 - k];
    let last = c(0) - c(steps);
    let prev = c(steps) - c(2 * steps);
    if last <= 0.0 {
        return 0.0;
    }
    if prev <= last {
        return f64::INFINITY;
    }
    let q = last / prev;
    last * q / (1.0 - q)
}
