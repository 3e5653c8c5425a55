//! Assembly of the chaos certificate: gates on (p, c), then the periodic,
//! decaying, small-seed and density experiments, then a verdict.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::eigen::{
    eigen_map, period_factor_error, periodic_point, windowed_period_error, EigenAtom,
};
use super::fit::{
    density_fit, nested_segment_dictionary, rectangle_dictionary, small_seed_recovery,
    SmallSeedTrace,
};
use super::region::{
    imaginary_axis_section, sector_bound, AxisSection, OmegaRegion, ParabolicRegion,
};
use crate::error::{invalid, Result};
use crate::semigroup::{orbit_trace, Orbit, SemigroupConfig};
use crate::space::{radial_laplacian, HyperbolicSpace, RadialFunction, RadialGrid};

pub const GATE_SECTION_EMPTY: &str = "imaginary-axis section empty";
pub const GATE_NO_INTERIOR: &str = "section has empty interior";
pub const GATE_EIGEN: &str = "eigen relation";
pub const GATE_PERIODIC: &str = "periodic point";
pub const GATE_DECAY: &str = "decaying span";
pub const GATE_SMALL_SEED: &str = "small seed";
pub const GATE_DENSITY: &str = "density fit";

/// Knobs of the certificate experiments. Everything that influences the
/// output is here and is echoed into the certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifyOptions {
    pub seed: u64,
    /// Relative L^p fit residual the largest dictionary must reach.
    pub residual_threshold: f64,
    pub fit_spacing: f64,
    pub fit_radius: f64,
    /// Nested dictionary sizes on the real segment of length segment_max
    /// starting where Ω meets (0, ∞).
    pub ladder: Vec<usize>,
    pub segment_max: f64,
    /// Grid for orbit norms.
    pub norm_spacing: f64,
    pub norm_radius: f64,
    pub decay_horizon: f64,
    pub decay_step: f64,
    pub decay_fraction: f64,
    pub period_tolerance: f64,
    pub window_spacing: f64,
    pub window_interior: f64,
    pub seed_ratio: f64,
    pub eigen_samples: usize,
    pub eigen_spacing: f64,
    pub eigen_radius: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            residual_threshold: 5e-2,
            fit_spacing: 1.0 / 64.0,
            fit_radius: 8.0,
            ladder: vec![25, 50, 100],
            segment_max: 30.0,
            norm_spacing: 1.0 / 32.0,
            norm_radius: 40.0,
            decay_horizon: 60.0,
            decay_step: 5.0,
            decay_fraction: 1e-3,
            period_tolerance: 1e-6,
            window_spacing: 1.0 / 64.0,
            window_interior: 5.0,
            seed_ratio: 1e-2,
            eigen_samples: 20,
            eigen_spacing: 1.0 / 256.0,
            eigen_radius: 20.0,
        }
    }
}

impl CertifyOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let positive = [
            ("residual_threshold", self.residual_threshold),
            ("fit_spacing", self.fit_spacing),
            ("fit_radius", self.fit_radius),
            ("segment_max", self.segment_max),
            ("norm_spacing", self.norm_spacing),
            ("norm_radius", self.norm_radius),
            ("decay_horizon", self.decay_horizon),
            ("decay_step", self.decay_step),
            ("decay_fraction", self.decay_fraction),
            ("period_tolerance", self.period_tolerance),
            ("window_spacing", self.window_spacing),
            ("window_interior", self.window_interior),
            ("seed_ratio", self.seed_ratio),
            ("eigen_spacing", self.eigen_spacing),
            ("eigen_radius", self.eigen_radius),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(invalid(format!("option {name} must be positive, got {v}")));
            }
        }
        if self.ladder.is_empty() || self.ladder.contains(&0) {
            return Err(invalid("ladder needs positive dictionary sizes"));
        }
        if self
            .ladder
            .windows(2)
            .any(|w| w[1] % w[0] != 0 || w[1] == w[0])
        {
            return Err(invalid(
                "each ladder size must be a proper multiple of the previous one",
            ));
        }
        Ok(())
    }
}

/// Target profiles for the density fits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    /// e^{-(r/w)²}.
    Gaussian { width: f64 },
    /// e^{-(r-s)²} + e^{-(r+s)²}, a bump on the sphere of radius s that is
    /// smooth at the origin.
    Shifted { center: f64 },
}

impl Target {
    pub fn defaults() -> Vec<Target> {
        vec![
            Target::Gaussian { width: 1.0 },
            Target::Gaussian { width: 1.5 },
            Target::Shifted { center: 1.5 },
        ]
    }

    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            Target::Gaussian { width } => (-(r / width).powi(2)).exp(),
            Target::Shifted { center } => {
                (-(r - center).powi(2)).exp() + (-(r + center).powi(2)).exp()
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Target::Gaussian { width } => width > 0.0 && width.is_finite(),
            Target::Shifted { center } => center >= 0.0 && center.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(format!("bad target {self:?}")))
        }
    }

    pub fn sample(&self, grid: &RadialGrid) -> RadialFunction {
        RadialFunction::from_real_fn(grid, |r| self.eval(r))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ChaoticEvidence,
    SubspaceChaoticEvidence,
    NoEvidence,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Gate {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Gate {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionSummary {
    pub rho: f64,
    pub b_p: f64,
    pub c_p: f64,
    pub section: AxisSection,
    pub sector_half_angle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenCheck {
    pub z: Complex64,
    /// max |Δ_h F - (z + c)F| / max |F| over interior grid points.
    pub relative_residual: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicReport {
    pub period: f64,
    pub atoms: Vec<EigenAtom>,
    /// max |e^{-Tz} - 1| over the atoms.
    pub eigen_factor_error: f64,
    /// Sup-norm error after one period of heat-kernel evolution; H³ only.
    pub windowed_error: Option<f64>,
    pub window: Option<f64>,
    pub norm_trace: Vec<(f64, f64)>,
    /// max |‖T(kT)f‖ / ‖f‖ - 1|.
    pub norm_variation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayReport {
    pub atoms: Vec<EigenAtom>,
    pub trace: Vec<(f64, f64)>,
    pub monotone: bool,
    pub final_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmallSeedReport {
    /// Target F(z₀) with a single growing atom z₀.
    pub exact: SmallSeedTrace,
    /// First target fitted by growing atoms.
    pub fitted: SmallSeedTrace,
    pub fitted_target: Target,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitLadder {
    pub target: Target,
    pub sizes: Vec<usize>,
    pub residual_l2: Vec<f64>,
    pub residual_lp: Vec<f64>,
    pub condition_numbers: Vec<f64>,
    pub ridges: Vec<f64>,
    /// L^p residual with only the midpoint and the end of the segment.
    pub two_atom_residual_lp: f64,
    pub monotone: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChaosCertificate {
    pub library_version: String,
    pub dimension: usize,
    pub p: f64,
    pub c: f64,
    pub options: CertifyOptions,
    pub targets: Vec<Target>,
    pub region: RegionSummary,
    pub gates: Vec<Gate>,
    pub eigen_checks: Vec<EigenCheck>,
    pub periodic_error: Option<f64>,
    pub periodic: Option<PeriodicReport>,
    pub decay_trace: Option<DecayReport>,
    pub smallseed_trace: Option<SmallSeedReport>,
    pub density_residuals: Vec<FitLadder>,
    pub verdict: Verdict,
    pub reasons: Vec<String>,
}

impl ChaosCertificate {
    pub fn gate(&self, name: &str) -> Option<&Gate> {
        self.gates.iter().find(|g| g.name == name)
    }
}

/// [`certify_with`] using default options and the given seed.
pub fn certify(
    space: &HyperbolicSpace,
    p: f64,
    c: f64,
    targets: &[Target],
    seed: u64,
) -> Result<ChaosCertificate> {
    certify_with(space, p, c, targets, &CertifyOptions::with_seed(seed))
}

pub fn certify_with(
    space: &HyperbolicSpace,
    p: f64,
    c: f64,
    targets: &[Target],
    options: &CertifyOptions,
) -> Result<ChaosCertificate> {
    options.validate()?;
    if targets.is_empty() {
        return Err(invalid("at least one target is required"));
    }
    for t in targets {
        t.validate()?;
    }
    let region = ParabolicRegion::for_space(space, p, c)?;
    let section = imaginary_axis_section(&region);
    let mut cert = ChaosCertificate {
        library_version: env!("CARGO_PKG_VERSION").to_string(),
        dimension: space.dimension(),
        p,
        c,
        options: options.clone(),
        targets: targets.to_vec(),
        region: RegionSummary {
            rho: space.rho(),
            b_p: region.b_p,
            c_p: region.apex,
            section,
            sector_half_angle: sector_bound(p)?.half_angle,
        },
        gates: Vec::new(),
        eigen_checks: Vec::new(),
        periodic_error: None,
        periodic: None,
        decay_trace: None,
        smallseed_trace: None,
        density_residuals: Vec::new(),
        verdict: Verdict::NoEvidence,
        reasons: Vec::new(),
    };

    let y = match section {
        AxisSection::Empty => {
            let name = if p <= 2.0 {
                GATE_NO_INTERIOR
            } else {
                GATE_SECTION_EMPTY
            };
            let detail = if p <= 2.0 {
                format!("p = {p} <= 2: no strip of L^p eigenfunctions")
            } else {
                format!("c = {c} < c_p = {}", region.apex)
            };
            return Ok(refuse(cert, name, detail));
        }
        AxisSection::Point => {
            let detail = if p <= 2.0 {
                format!("p = {p}: the region degenerates to a real ray")
            } else {
                format!("c = {c} equals c_p = {}", region.apex)
            };
            return Ok(refuse(cert, GATE_NO_INTERIOR, detail));
        }
        AxisSection::Interval { half_length } if p > 2.0 => half_length,
        AxisSection::Interval { .. } => {
            return Ok(refuse(cert, GATE_NO_INTERIOR, format!("p = {p} <= 2")));
        }
    };
    let d = c - region.apex;
    let omega = OmegaRegion::new(region);

    let ((eigen, periodic), ((decay, small), density)) = rayon::join(
        || {
            rayon::join(
                || eigen_checks(space, c, &region, options),
                || periodic_report(space, p, c, y, options),
            )
        },
        || {
            rayon::join(
                || {
                    rayon::join(
                        || decay_report(space, p, c, &omega, options),
                        || small_seed_report(space, p, c, y, d, &omega, targets[0], options),
                    )
                },
                || {
                    targets
                        .par_iter()
                        .map(|t| fit_ladder(space, p, c, *t, options))
                        .collect::<Result<Vec<_>>>()
                },
            )
        },
    );
    let (eigen, periodic, decay, small, density) = (eigen?, periodic?, decay?, small?, density?);

    let worst = eigen
        .iter()
        .map(|e| e.relative_residual / e.bound)
        .fold(0.0, f64::max);
    cert.gates.push(Gate::new(
        GATE_EIGEN,
        worst <= 1.0,
        format!(
            "{} random z in Omega, worst residual/bound = {worst:.3e}",
            eigen.len()
        ),
    ));
    let period_err = periodic
        .windowed_error
        .unwrap_or(0.0)
        .max(periodic.eigen_factor_error);
    let periodic_ok = period_err <= options.period_tolerance
        && periodic.norm_variation <= options.period_tolerance;
    cert.gates.push(Gate::new(
        GATE_PERIODIC,
        periodic_ok,
        format!(
            "T = {:.6}, eigen-factor error {:.3e}, windowed error {}, norm variation {:.3e}",
            periodic.period,
            periodic.eigen_factor_error,
            periodic
                .windowed_error
                .map_or("not available".to_string(), |e| format!("{e:.3e}")),
            periodic.norm_variation
        ),
    ));
    let decay_ok = decay.monotone && decay.final_ratio < options.decay_fraction;
    cert.gates.push(Gate::new(
        GATE_DECAY,
        decay_ok,
        format!(
            "monotone = {}, ratio at t = {} is {:.3e}",
            decay.monotone, options.decay_horizon, decay.final_ratio
        ),
    ));
    let exact = &small.exact.steps;
    let last = exact.last().expect("small-seed times are nonempty");
    let seed_ok = exact.windows(2).all(|w| w[1].seed_norm < w[0].seed_norm)
        && last.seed_ratio <= options.seed_ratio
        && exact.iter().all(|s| s.recovery_error <= 1e-9)
        && small
            .fitted
            .steps
            .iter()
            .all(|s| s.recovery_error <= 1.5 * small.fitted.fit.residual_lp + 1e-9);
    cert.gates.push(Gate::new(
        GATE_SMALL_SEED,
        seed_ok,
        format!(
            "seed ratio {:.3e} at t = {}, exact recovery error {:.1e}",
            last.seed_ratio, last.t, last.recovery_error
        ),
    ));
    let fit_ok = density.iter().all(|l| {
        l.monotone
            && *l.residual_lp.last().expect("ladder is nonempty") <= options.residual_threshold
    });
    let finest = density
        .iter()
        .map(|l| *l.residual_lp.last().expect("ladder is nonempty"))
        .fold(0.0, f64::max);
    cert.gates.push(Gate::new(
        GATE_DENSITY,
        fit_ok,
        format!(
            "worst finest residual {finest:.3e} against threshold {:.1e}",
            options.residual_threshold
        ),
    ));

    cert.periodic_error = Some(period_err);
    cert.eigen_checks = eigen;
    cert.periodic = Some(periodic);
    cert.decay_trace = Some(decay);
    cert.smallseed_trace = Some(small);
    cert.density_residuals = density;

    let failed: Vec<&Gate> = cert.gates.iter().filter(|g| !g.passed).collect();
    cert.reasons = failed
        .iter()
        .map(|g| format!("{}: {}", g.name, g.detail))
        .collect();
    cert.verdict = if failed.is_empty() {
        Verdict::ChaoticEvidence
    } else if failed.iter().all(|g| g.name == GATE_DENSITY) {
        Verdict::SubspaceChaoticEvidence
    } else {
        Verdict::NoEvidence
    };
    if cert.reasons.is_empty() {
        cert.reasons.push("all gates passed".to_string());
    }
    Ok(cert)
}

fn refuse(mut cert: ChaosCertificate, name: &str, detail: String) -> ChaosCertificate {
    cert.reasons.push(format!("{name}: {detail}"));
    cert.gates.push(Gate::new(name, false, detail));
    cert.verdict = Verdict::NoEvidence;
    cert
}

fn eigen_checks(
    space: &HyperbolicSpace,
    c: f64,
    region: &ParabolicRegion,
    o: &CertifyOptions,
) -> Result<Vec<EigenCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let rho2 = space.rho() * space.rho();
    let zs: Vec<Complex64> = (0..o.eigen_samples)
        .map(|_| {
            let mu = Complex64::new(
                rng.gen_range(0.05..2.0),
                rng.gen_range(-0.95..0.95) * region.b_p,
            );
            mu * mu + rho2 - c
        })
        .collect();
    let grid = RadialGrid::uniform(o.eigen_spacing, o.eigen_radius)?;
    let h = o.eigen_spacing;
    zs.par_iter()
        .map(|&z| {
            let f = eigen_map(space, c, z, &grid)?;
            let lf = radial_laplacian(space, &f)?;
            let ev = z + c;
            let scale = f.max_abs();
            let res = (1..grid.len() - 1)
                .map(|i| (lf.values()[i] - ev * f.values()[i]).norm())
                .fold(0.0, f64::max);
            Ok(EigenCheck {
                z,
                relative_residual: res / scale,
                bound: 10.0 * h * h,
            })
        })
        .collect()
}

fn periodic_report(
    space: &HyperbolicSpace,
    p: f64,
    c: f64,
    y: f64,
    o: &CertifyOptions,
) -> Result<PeriodicReport> {
    // harmonic k = 1 at half the section bound
    let period = 4.0 * PI / y;
    let grid = RadialGrid::uniform(o.norm_spacing, o.norm_radius)?;
    let point = periodic_point(space, p, c, period, &[(1, Complex64::new(1.0, 0.0))], &grid)?;
    let eigen_factor_error = period_factor_error(&point.atoms, period);
    let cfg = SemigroupConfig::new(*space, p, c, 0.0)?;
    let times: Vec<f64> = (0..4).map(|k| k as f64 * period).collect();
    let norm_trace = orbit_trace(
        &cfg,
        &Orbit::Atoms {
            atoms: point.atoms.clone(),
            grid: grid.clone(),
        },
        &times,
    )?;
    let n0 = norm_trace[0].1;
    let norm_variation = norm_trace
        .iter()
        .map(|(_, n)| (n / n0 - 1.0).abs())
        .fold(0.0, f64::max);
    let (windowed_error, window) = if space.dimension() == 3 {
        let drift = point
            .atoms
            .iter()
            .map(|a| a.mu.im.abs())
            .fold(0.0, f64::max);
        let window = (o.window_interior + 10.0 * period.sqrt() + 3.0 * period * drift).max(90.0);
        let err = windowed_period_error(
            space,
            c,
            &point,
            window,
            o.window_spacing,
            o.window_interior,
        )?;
        (Some(err), Some(window))
    } else {
        (None, None)
    };
    Ok(PeriodicReport {
        period,
        atoms: point.atoms,
        eigen_factor_error,
        windowed_error,
        window,
        norm_trace,
        norm_variation,
    })
}

fn atoms_in_omega(
    space: &HyperbolicSpace,
    c: f64,
    omega: &OmegaRegion,
    spec: &[(Complex64, Complex64)],
) -> Result<Vec<EigenAtom>> {
    spec.iter()
        .map(|&(z, a)| {
            if !omega.contains(z) {
                return Err(invalid(format!("atom z = {z} is not inside Omega")));
            }
            EigenAtom::new(space, c, z, a)
        })
        .collect()
}

fn decay_report(
    space: &HyperbolicSpace,
    p: f64,
    c: f64,
    omega: &OmegaRegion,
    o: &CertifyOptions,
) -> Result<DecayReport> {
    // Real atoms only: a conjugate pair contributes 2 Re(a e^{-tz} F(z)),
    // whose norm oscillates in t with frequency Im z.
    // Real z must also clear the excluded ray z <= ρ² - c.
    let start = (space.rho() * space.rho() - c).max(0.0);
    let spec: Vec<_> = [0.2, 0.35, 0.5]
        .iter()
        .map(|&re| (Complex64::new(start + re, 0.0), Complex64::new(1.0, 0.0)))
        .collect();
    let atoms = atoms_in_omega(space, c, omega, &spec)?;
    let grid = RadialGrid::uniform(o.norm_spacing, o.norm_radius)?;
    let steps = (o.decay_horizon / o.decay_step).ceil() as usize;
    let times: Vec<f64> = (0..=steps)
        .map(|k| (k as f64 * o.decay_step).min(o.decay_horizon))
        .collect();
    let cfg = SemigroupConfig::new(*space, p, c, 0.0)?;
    let trace = orbit_trace(
        &cfg,
        &Orbit::Atoms {
            atoms: atoms.clone(),
            grid,
        },
        &times,
    )?;
    let monotone = trace.windows(2).all(|w| w[1].1 < w[0].1);
    let final_ratio = trace.last().map_or(f64::NAN, |x| x.1) / trace[0].1;
    Ok(DecayReport {
        atoms,
        trace,
        monotone,
        final_ratio,
    })
}

#[allow(clippy::too_many_arguments)]
fn small_seed_report(
    space: &HyperbolicSpace,
    p: f64,
    c: f64,
    y: f64,
    d: f64,
    omega: &OmegaRegion,
    target: Target,
    o: &CertifyOptions,
) -> Result<SmallSeedReport> {
    let grid = RadialGrid::uniform(o.norm_spacing, o.norm_radius)?;
    // single growing atom; Re z₀ = -0.4d stays clear of the boundary
    // Re z = -d + (Im z)²/(4b²) for |Im z| = 0.4Y
    let z0 = Complex64::new(-0.4 * d, 0.4 * y);
    atoms_in_omega(space, c, omega, &[(z0, Complex64::new(1.0, 0.0))])?;
    let t_star = 10.0 * ((1.0 / o.seed_ratio).ln() / (0.4 * d) / 10.0).ceil();
    let mut times = vec![10.0, 20.0, t_star];
    times.retain(|&t| t <= t_star);
    times.dedup();
    let exact_target = eigen_map(space, c, z0, &grid)?;
    let exact = small_seed_recovery(space, p, c, &exact_target, &[z0], &times)?;

    // growing rectangle strictly inside Ω, mirrored in the real axis
    let im_hi = 0.8 * 2.0 * omega.parent.b_p * (0.4 * d).sqrt();
    let mut dict = rectangle_dictionary((-0.6 * d, -0.1 * d), (0.2 * im_hi, im_hi), 5, 5);
    dict.extend(rectangle_dictionary(
        (-0.6 * d, -0.1 * d),
        (-im_hi, -0.2 * im_hi),
        5,
        5,
    ));
    atoms_in_omega(
        space,
        c,
        omega,
        &dict
            .iter()
            .map(|&z| (z, Complex64::new(1.0, 0.0)))
            .collect::<Vec<_>>(),
    )?;
    let fit_grid = RadialGrid::uniform(o.fit_spacing, o.fit_radius)?;
    let fitted = small_seed_recovery(space, p, c, &target.sample(&fit_grid), &dict, &[10.0, 20.0])?;
    Ok(SmallSeedReport {
        exact,
        fitted,
        fitted_target: target,
    })
}

fn fit_ladder(
    space: &HyperbolicSpace,
    p: f64,
    c: f64,
    target: Target,
    o: &CertifyOptions,
) -> Result<FitLadder> {
    let grid = RadialGrid::uniform(o.fit_spacing, o.fit_radius)?;
    let f = target.sample(&grid);
    // Ω ∩ (0, ∞) = (max(0, ρ² - c), ∞)
    let start = (space.rho() * space.rho() - c).max(0.0);
    let mut ladder = FitLadder {
        target,
        sizes: o.ladder.clone(),
        residual_l2: Vec::new(),
        residual_lp: Vec::new(),
        condition_numbers: Vec::new(),
        ridges: Vec::new(),
        two_atom_residual_lp: 0.0,
        monotone: true,
    };
    for &n in &o.ladder {
        let fit = density_fit(
            space,
            p,
            c,
            &f,
            &nested_segment_dictionary(start, o.segment_max, n),
        )?;
        ladder.residual_l2.push(fit.residual_l2);
        ladder.residual_lp.push(fit.residual_lp);
        ladder.condition_numbers.push(fit.condition_number);
        ladder.ridges.push(fit.ridge);
    }
    ladder.monotone = ladder.residual_l2.windows(2).all(|w| w[1] <= w[0]);
    let two = [
        Complex64::new(start + 0.5 * o.segment_max, 0.0),
        Complex64::new(start + o.segment_max, 0.0),
    ];
    ladder.two_atom_residual_lp = density_fit(space, p, c, &f, &two)?.residual_lp;
    Ok(ladder)
}
