use hyperchaos::chaos::{combine_atoms, EigenAtom};
use hyperchaos::semigroup::{
    evolve, evolve_eigen, evolve_on, heat_kernel_h3, kernel_evolve_h3, multiplier, orbit_trace,
    Behaviour, Orbit, SemigroupConfig,
};
use hyperchaos::space::{lp_norm, make_space, RadialFunction, RadialGrid};
use hyperchaos::transform::{gaussian_bump, SpectralGrid};
use num_complex::Complex64;

fn sup_diff(a: &RadialFunction, b: &RadialFunction, upto: f64) -> f64 {
    a.grid()
        .points()
        .iter()
        .zip(a.values().iter().zip(b.values()))
        .filter(|(r, _)| **r <= upto)
        .map(|(_, (x, y))| (x - y).norm())
        .fold(0.0, f64::max)
}

#[test]
fn semigroup_law() {
    for n in [2, 3, 4] {
        let space = make_space(n).unwrap();
        let f = gaussian_bump(1.0, 1.0 / 64.0, 12.0).unwrap();
        let cfg = SemigroupConfig::new(space, 2.0, 0.3, 0.4).unwrap();
        // a fixed spectral grid: the adaptive choice of cutoff would chase
        // the round-off floor of an already evolved function
        let sg = SpectralGrid::for_radius(12.0, 12.0).unwrap();
        let half = evolve_on(&cfg, &f, &sg).unwrap();
        let two_steps = evolve_on(&cfg.at_time(0.3).unwrap(), &half, &sg).unwrap();
        let one_step = evolve_on(&cfg.at_time(0.7).unwrap(), &f, &sg).unwrap();
        let err = sup_diff(&two_steps, &one_step, 6.0);
        assert!(err < 1e-9 * one_step.max_abs(), "n = {n}: {err:e}");
    }
}

#[test]
fn heat_flow_preserves_positivity() {
    let space = make_space(3).unwrap();
    let f = gaussian_bump(0.5, 1.0 / 64.0, 10.0).unwrap();
    for t in [0.05, 0.5, 2.0] {
        let cfg = SemigroupConfig::new(space, 2.0, 0.0, t).unwrap();
        let g = evolve(&cfg, &f).unwrap();
        let top = g.max_abs();
        for (r, v) in g.grid().points().iter().zip(g.values()) {
            if *r > 6.0 {
                break;
            }
            assert!(v.re > -1e-10 * top, "t = {t}, r = {r}: {v}");
            assert!(v.im.abs() < 1e-12 * top);
        }
    }
}

/// T(t) for shift c is e^{tc} times T(t) for shift 0.
#[test]
fn shift_only_rescales() {
    let space = make_space(5).unwrap();
    let f = gaussian_bump(1.0, 1.0 / 64.0, 12.0).unwrap();
    let t = 0.6;
    let base = evolve(&SemigroupConfig::new(space, 2.0, 0.0, t).unwrap(), &f).unwrap();
    for c in [-1.0, 0.5, 4.0] {
        let g = evolve(&SemigroupConfig::new(space, 2.0, c, t).unwrap(), &f).unwrap();
        let scaled = base.scale(Complex64::new((t * c).exp(), 0.0));
        assert!(
            sup_diff(&g, &scaled, 8.0) < 1e-12 * scaled.max_abs(),
            "c = {c}"
        );
    }
    let cfg = SemigroupConfig::new(space, 2.0, 1.5, 2.0).unwrap();
    assert_eq!(multiplier(&cfg, 0.0), (-2.0f64 * (4.0 - 1.5)).exp());
}

#[test]
fn spectral_route_agrees_with_h3_kernel() {
    let space = make_space(3).unwrap();
    let f = gaussian_bump(1.0, 1.0 / 64.0, 14.0).unwrap();
    let radii: Vec<f64> = (0..=24).map(|k| 0.25 * k as f64).collect();
    for (c, t) in [(0.0, 0.25), (0.0, 1.0), (1.0, 2.0)] {
        let cfg = SemigroupConfig::new(space, 2.0, c, t).unwrap();
        let spectral = evolve(&cfg, &f).unwrap();
        let kernel = kernel_evolve_h3(&cfg, &f, &radii).unwrap();
        for (r, k) in radii.iter().zip(&kernel) {
            let i = (r * 64.0).round() as usize;
            let s = spectral.values()[i];
            assert!(
                (s - k).norm() < 1e-10 * spectral.max_abs(),
                "c = {c}, t = {t}, r = {r}: {s} vs {k}"
            );
        }
    }
    assert!(heat_kernel_h3(0.0, 1.0).is_err());
    assert!(heat_kernel_h3(1.0, 0.0).unwrap() > heat_kernel_h3(1.0, 1.0).unwrap());
}

#[test]
fn eigen_actions() {
    let space = make_space(3).unwrap();
    let cfg = SemigroupConfig::new(space, 4.0, 1.0, 2.0).unwrap();
    let grow = evolve_eigen(&cfg, Complex64::new(-0.1, 0.2)).unwrap();
    assert_eq!(grow.behaviour, Behaviour::Growing);
    assert!((grow.factor.norm() - (0.2f64).exp()).abs() < 1e-15);
    let flat = evolve_eigen(&cfg, Complex64::new(0.0, 0.25)).unwrap();
    assert_eq!(flat.behaviour, Behaviour::Unimodular);
    assert!((flat.factor.norm() - 1.0).abs() < 1e-15);
    assert_eq!(
        evolve_eigen(&cfg, Complex64::new(0.3, 0.0))
            .unwrap()
            .behaviour,
        Behaviour::Decaying
    );
    // ρ² - c = 0 starts the excluded ray
    assert!(evolve_eigen(&cfg, Complex64::new(-0.5, 0.0)).is_err());
}

#[test]
fn atom_orbit_norms_follow_the_factors() {
    let space = make_space(3).unwrap();
    let c = 1.0;
    let cfg = SemigroupConfig::new(space, 4.0, c, 0.0).unwrap();
    let grid = RadialGrid::uniform(1.0 / 32.0, 30.0).unwrap();
    let z = Complex64::new(0.2, 0.0);
    let atoms = vec![EigenAtom::new(&space, c, z, Complex64::new(1.0, 0.0)).unwrap()];
    let f0 = combine_atoms(&space, &atoms, &grid).unwrap();
    let n0 = lp_norm(&space, &f0, 4.0, 30.0).unwrap();
    let times = [0.0, 1.0, 5.0];
    let trace = orbit_trace(&cfg, &Orbit::Atoms { atoms, grid }, &times).unwrap();
    for (t, norm) in trace {
        assert!((norm - n0 * (-0.2 * t).exp()).abs() < 1e-12 * n0, "t = {t}");
    }
    assert!(orbit_trace(&cfg, &Orbit::Function(f0), &[1.0, 0.5]).is_err());
}

#[test]
fn invalid_configs_are_rejected() {
    let space = make_space(3).unwrap();
    assert!(SemigroupConfig::new(space, 1.0, 0.0, 1.0).is_err());
    assert!(SemigroupConfig::new(space, 2.0, f64::NAN, 1.0).is_err());
    assert!(SemigroupConfig::new(space, 2.0, 0.0, -1.0).is_err());
    let f = gaussian_bump(1.0, 1.0 / 64.0, 10.0).unwrap();
    let cfg = SemigroupConfig::new(make_space(4).unwrap(), 2.0, 0.0, 1.0).unwrap();
    assert!(kernel_evolve_h3(&cfg, &f, &[0.0]).is_err());
}
