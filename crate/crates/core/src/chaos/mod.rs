//! Spectral regions of the shifted L^p Laplacian and the eigenfunction
//! constructions behind chaos of T(t) = e^{-t(Δ - c)}.
//!
//! Sign convention: z always denotes an eigenvalue of Δ - c, acting through
//! T(t)F(z) = e^{-tz}F(z). So "decaying" means Re z > 0 and "growing" means
//! Re z < 0. Statements phrased for the generator A = -(Δ - c) flip the sign.

mod certificate;
mod eigen;
mod fit;
mod nonchaos;
mod products;
mod region;

pub use certificate::{
    certify, certify_with, CertifyOptions, ChaosCertificate, DecayReport, EigenCheck, FitLadder,
    Gate, PeriodicReport, RegionSummary, SmallSeedReport, Target, Verdict, GATE_DECAY,
    GATE_DENSITY, GATE_EIGEN, GATE_NO_INTERIOR, GATE_PERIODIC, GATE_SECTION_EMPTY, GATE_SMALL_SEED,
};
pub use eigen::{
    combine_atoms, eigen_map, period_factor_error, periodic_point, principal_mu, strip_image,
    windowed_period_error, EigenAtom, PeriodicPoint,
};
pub use fit::{
    density_fit, nested_segment_dictionary, rectangle_dictionary, small_seed_recovery, DensityFit,
    SmallSeedStep, SmallSeedTrace, RIDGE_FACTOR,
};
pub use nonchaos::{nonchaos_diagnostics, GrowthRow, NonchaosReport, SectionRow, GROWTH_THRESHOLD};
pub use products::{product_threshold, SpectralSet};
pub use region::{
    apex_threshold, imaginary_axis_section, region_contains, sector_bound, sector_contains,
    spectrum_axis_section, strip_half_width, AxisSection, Classification, OmegaRegion,
    ParabolicRegion, SectorBound, CLASSIFICATION_TOLERANCE,
};
