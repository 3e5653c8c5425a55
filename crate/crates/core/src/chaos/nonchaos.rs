use num_complex::Complex64;
use serde::Serialize;

use super::region::{imaginary_axis_section, AxisSection, ParabolicRegion};
use crate::error::{invalid, Result};
use crate::space::{lp_norm, HyperbolicSpace, RadialGrid};
use crate::spherical::spherical_fn;

/// Minimal growth factor of ‖φ_λ‖_{L^p(B_R)} per doubling of R counted as
/// divergence.
pub const GROWTH_THRESHOLD: f64 = 1.3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthRow {
    pub lambda: Complex64,
    pub radii: Vec<f64>,
    pub norms: Vec<f64>,
    /// norms[k+1] / norms[k].
    pub ratios: Vec<f64>,
    pub min_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionRow {
    pub c: f64,
    pub section: AxisSection,
    pub has_interior: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonchaosReport {
    pub p: f64,
    pub sections: Vec<SectionRow>,
    pub growth: Vec<GrowthRow>,
    pub threshold: f64,
    /// Every sampled φ_λ grows by at least `threshold` per doubling.
    pub diverges: bool,
    /// No tested shift has a section with interior.
    pub sections_degenerate: bool,
}

/// Witnesses for 1 < p ≤ 2: the eigenvalue section of every shift has empty
/// interior, and truncated L^p norms of candidate eigenfunctions keep growing
/// as the radius doubles. `radii` must be increasing; the grid spacing is h.
pub fn nonchaos_diagnostics(
    space: &HyperbolicSpace,
    p: f64,
    lambdas: &[Complex64],
    radii: &[f64],
    shifts: &[f64],
    h: f64,
) -> Result<NonchaosReport> {
    if !(p > 1.0 && p <= 2.0) {
        return Err(invalid(format!(
            "non-chaos diagnostics need 1 < p <= 2, got {p}"
        )));
    }
    if radii.len() < 2 || radii.windows(2).any(|w| !(w[1] > w[0])) || !(radii[0] > 0.0) {
        return Err(invalid("need at least two increasing positive radii"));
    }
    let sections = shifts
        .iter()
        .map(|&c| {
            let section = imaginary_axis_section(&ParabolicRegion::for_space(space, p, c)?);
            Ok(SectionRow {
                c,
                section,
                has_interior: section.has_interior(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let grid = RadialGrid::uniform(h, *radii.last().expect("nonempty"))?;
    let growth = lambdas
        .iter()
        .map(|&lambda| {
            let phi = spherical_fn(space, lambda, &grid)?;
            let norms = radii
                .iter()
                .map(|&r| lp_norm(space, &phi, p, r))
                .collect::<Result<Vec<_>>>()?;
            let ratios: Vec<f64> = norms.windows(2).map(|w| w[1] / w[0]).collect();
            let min_ratio = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
            Ok(GrowthRow {
                lambda,
                radii: radii.to_vec(),
                norms,
                ratios,
                min_ratio,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NonchaosReport {
        p,
        diverges: growth.iter().all(|g| g.min_ratio >= GROWTH_THRESHOLD),
        sections_degenerate: sections.iter().all(|s| !s.has_interior),
        sections,
        growth,
        threshold: GROWTH_THRESHOLD,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::make_space;

    #[test]
    fn l2_norm_of_phi_one_grows_like_sqrt_r() {
        let s = make_space(3).unwrap();
        let rep = nonchaos_diagnostics(
            &s,
            2.0,
            &[Complex64::new(1.0, 0.0)],
            &[10.0, 20.0, 40.0, 80.0],
            &[0.5, 1.0, 2.0, 5.0],
            1.0 / 128.0,
        )
        .unwrap();
        assert!(rep.sections_degenerate);
        // ∫_0^R |sin r / sinh r|² 4π sinh² r dr = 4π (R/2 - sin 2R / 4)
        let exact =
            |r: f64| (4.0 * std::f64::consts::PI * (r / 2.0 - (2.0 * r).sin() / 4.0)).sqrt();
        for (r, x) in [10.0, 20.0, 40.0, 80.0].iter().zip(&rep.growth[0].norms) {
            assert!((x / exact(*r) - 1.0).abs() < 1e-6, "{r}: {x}");
        }
        for r in &rep.growth[0].ratios {
            assert!((r - 2f64.sqrt()).abs() < 0.05, "{r}");
        }
        assert!(rep.growth[0].norms.iter().all(|x| x.is_finite()));
    }

    #[test]
    fn p_below_two_grows_fast() {
        let s = make_space(3).unwrap();
        let rep = nonchaos_diagnostics(
            &s,
            1.5,
            &[Complex64::new(1.0, 0.1)],
            &[10.0, 20.0, 40.0],
            &[1.0],
            1.0 / 128.0,
        )
        .unwrap();
        assert!(rep.diverges);
        assert!(nonchaos_diagnostics(&s, 3.0, &[], &[1.0, 2.0], &[], 0.1).is_err());
    }
}
