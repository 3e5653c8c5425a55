use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::space::HyperbolicSpace;

/// Tie tolerance for region and section classification.
pub const CLASSIFICATION_TOLERANCE: f64 = 1e-9;

fn check_p(p: f64) -> Result<()> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(invalid(format!("p must lie in (1, inf), got {p}")));
    }
    Ok(())
}

/// b_p = ρ |2/p - 1|.
pub fn strip_half_width(rho: f64, p: f64) -> f64 {
    rho * (2.0 / p - 1.0).abs()
}

/// c_p = 4ρ²/p · (1 - 1/p), the apex of P_p.
pub fn apex_threshold(rho: f64, p: f64) -> Result<f64> {
    check_p(p)?;
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(invalid(format!("rho must be positive, got {rho}")));
    }
    Ok(4.0 * rho * rho / p * (1.0 - 1.0 / p))
}

/// P_p - c = {ρ² + z² - c : |Im z| ≤ b_p}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolicRegion {
    pub rho_norm: f64,
    pub p: f64,
    pub c: f64,
    pub b_p: f64,
    pub apex: f64,
}

impl ParabolicRegion {
    pub fn new(rho: f64, p: f64, c: f64) -> Result<Self> {
        let apex = apex_threshold(rho, p)?;
        if !c.is_finite() {
            return Err(invalid("shift c must be finite"));
        }
        Ok(Self {
            rho_norm: rho,
            p,
            c,
            b_p: strip_half_width(rho, p),
            apex,
        })
    }

    pub fn for_space(space: &HyperbolicSpace, p: f64, c: f64) -> Result<Self> {
        Self::new(space.rho(), p, c)
    }

    /// Region for the conjugate exponent p' = p/(p-1).
    pub fn dual(&self) -> Self {
        let q = self.p / (self.p - 1.0);
        Self::new(self.rho_norm, q, self.c).expect("dual exponent is valid")
    }

    /// Principal √(w + c - ρ²); w lies in the region iff |Im| ≤ b_p.
    pub fn preimage(&self, w: Complex64) -> Complex64 {
        (w + self.c - self.rho_norm * self.rho_norm).sqrt()
    }

    /// ρ² - c + (x ± i b_p)², a point of the boundary parabola.
    pub fn boundary_point(&self, x: f64, upper: bool) -> Complex64 {
        let b = if upper { self.b_p } else { -self.b_p };
        let z = Complex64::new(x, b);
        z * z + self.rho_norm * self.rho_norm - self.c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Interior,
    Boundary,
    Exterior,
}

/// Classifies w against P_p - c by the imaginary part of its preimage.
/// For p = 2 the region is the ray [ρ² - c, ∞), every point of which is
/// reported as boundary.
pub fn region_contains(region: &ParabolicRegion, w: Complex64) -> Classification {
    let gap = region.preimage(w).im.abs() - region.b_p;
    if gap.abs() <= CLASSIFICATION_TOLERANCE {
        Classification::Boundary
    } else if gap < 0.0 {
        Classification::Interior
    } else {
        Classification::Exterior
    }
}

/// Intersection of a region with the imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxisSection {
    Empty,
    Point,
    /// The segment i[-Y, Y].
    Interval {
        half_length: f64,
    },
}

impl AxisSection {
    pub fn has_interior(&self) -> bool {
        matches!(self, AxisSection::Interval { .. })
    }

    pub fn half_length(&self) -> Option<f64> {
        match self {
            AxisSection::Empty => None,
            AxisSection::Point => Some(0.0),
            AxisSection::Interval { half_length } => Some(*half_length),
        }
    }
}

/// (P_p - c) ∩ iℝ: Y = 2 b_p √(c - c_p) for c > c_p, {0} at the apex,
/// empty below it. Symmetric under p ↔ p'.
pub fn spectrum_axis_section(region: &ParabolicRegion) -> AxisSection {
    let d = region.c - region.apex;
    if d.abs() <= CLASSIFICATION_TOLERANCE {
        return AxisSection::Point;
    }
    if d < 0.0 {
        return AxisSection::Empty;
    }
    let y = 2.0 * region.b_p * d.sqrt();
    if y <= CLASSIFICATION_TOLERANCE {
        AxisSection::Point
    } else {
        AxisSection::Interval { half_length: y }
    }
}

/// Imaginary-axis section of the set of eigenvalues carried by radial L^p
/// eigenfunctions. For p ≥ 2 this is the section of P_p - c (for p = 2 at
/// most the single point 0). For p < 2 no φ_λ lies in L^p, so it is empty.
pub fn imaginary_axis_section(region: &ParabolicRegion) -> AxisSection {
    if region.p < 2.0 {
        AxisSection::Empty
    } else {
        spectrum_axis_section(region)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorBound {
    /// arctan(|p - 2| / (2√(p - 1))): P_p lies in {|arg w| ≤ half_angle}.
    pub half_angle: f64,
    /// Lower bound π/2 - half_angle on the angle of analyticity.
    pub theta_bound: f64,
}

pub fn sector_bound(p: f64) -> Result<SectorBound> {
    check_p(p)?;
    let half_angle = ((p - 2.0).abs() / (2.0 * (p - 1.0).sqrt())).atan();
    Ok(SectorBound {
        half_angle,
        theta_bound: std::f64::consts::FRAC_PI_2 - half_angle,
    })
}

pub fn sector_contains(bound: &SectorBound, w: Complex64, tol: f64) -> bool {
    w.arg().abs() <= bound.half_angle + tol
}

/// Ω = (P_p - c) minus the ray {z ≤ ρ² - c}: the open set on which
/// z ↦ √(z + c - ρ²) is analytic and lands in the L^p strip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OmegaRegion {
    pub parent: ParabolicRegion,
}

impl OmegaRegion {
    pub fn new(parent: ParabolicRegion) -> Self {
        Self { parent }
    }

    pub fn on_excluded_ray(&self, z: Complex64) -> bool {
        let r = &self.parent;
        z.im == 0.0 && z.re <= r.rho_norm * r.rho_norm - r.c
    }

    pub fn contains(&self, z: Complex64) -> bool {
        !self.on_excluded_ray(z) && region_contains(&self.parent, z) == Classification::Interior
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn apex_examples() {
        assert_eq!(apex_threshold(1.0, 2.0).unwrap(), 1.0);
        assert_eq!(apex_threshold(1.0, 4.0).unwrap(), 0.75);
        assert_eq!(apex_threshold(0.5, 4.0).unwrap(), 0.1875);
        assert!(apex_threshold(1.0, 1.0).is_err());
    }

    #[test]
    fn contains_examples() {
        let r = ParabolicRegion::new(1.0, 4.0, 0.0).unwrap();
        assert_eq!(
            region_contains(&r, Complex64::new(1.0, 0.0)),
            Classification::Interior
        );
        assert_eq!(
            region_contains(&r, Complex64::new(0.75, 0.0)),
            Classification::Boundary
        );
        let ray = ParabolicRegion::new(1.0, 2.0, 0.0).unwrap();
        assert_eq!(
            region_contains(&ray, Complex64::new(0.5, 0.0)),
            Classification::Exterior
        );
        assert_eq!(
            region_contains(&ray, Complex64::new(3.0, 0.0)),
            Classification::Boundary
        );
    }

    #[test]
    fn section_examples() {
        let r = ParabolicRegion::new(1.0, 4.0, 1.0).unwrap();
        assert_eq!(
            imaginary_axis_section(&r),
            AxisSection::Interval { half_length: 0.5 }
        );
        let r = ParabolicRegion::new(1.0, 4.0, 0.75).unwrap();
        assert_eq!(imaginary_axis_section(&r), AxisSection::Point);
        let r = ParabolicRegion::new(1.0, 4.0, 0.5).unwrap();
        assert_eq!(imaginary_axis_section(&r), AxisSection::Empty);
        for c in [0.5, 1.0, 2.0, 5.0] {
            let r = ParabolicRegion::new(1.0, 2.0, c).unwrap();
            assert!(!imaginary_axis_section(&r).has_interior());
            let r = ParabolicRegion::new(1.0, 1.5, c).unwrap();
            assert_eq!(imaginary_axis_section(&r), AxisSection::Empty);
        }
    }

    #[test]
    fn sector_examples() {
        assert_eq!(sector_bound(2.0).unwrap().half_angle, 0.0);
        assert_relative_eq!(sector_bound(2.0).unwrap().theta_bound, PI / 2.0);
        assert_relative_eq!(
            sector_bound(4.0).unwrap().half_angle,
            PI / 6.0,
            max_relative = 1e-15
        );
        assert!(sector_bound(0.5).is_err());
    }

    #[test]
    fn boundary_points_classify_as_boundary() {
        let r = ParabolicRegion::new(1.0, 4.0, 0.3).unwrap();
        for k in -20..=20 {
            let x = k as f64 * 0.25;
            for up in [true, false] {
                let w = r.boundary_point(x, up);
                assert_eq!(region_contains(&r, w), Classification::Boundary, "{w}");
            }
        }
    }

    #[test]
    fn omega_excludes_ray() {
        let om = OmegaRegion::new(ParabolicRegion::new(1.0, 4.0, 1.0).unwrap());
        assert!(!om.contains(Complex64::new(-0.5, 0.0)));
        assert!(!om.contains(Complex64::new(0.0, 0.0)));
        assert!(om.contains(Complex64::new(0.1, 0.0)));
        assert!(om.contains(Complex64::new(0.0, 0.25)));
        assert!(om.contains(Complex64::new(-0.1, 0.2)));
        assert!(!om.contains(Complex64::new(-0.1, 0.5)));
    }
}
