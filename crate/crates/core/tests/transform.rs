use hyperchaos::space::{lp_norm, make_space, RadialFunction};
use hyperchaos::spherical::plancherel_density;
use hyperchaos::transform::{
    calibrate_inversion_constant, forward_transform, forward_transform_in_strip, gaussian_bump,
    inverse_transform, l2_relative_error, round_trip, SpectralGrid,
};
use num_complex::Complex64;

/// Transform of e^{-r²} on H³: (2π^{3/2}/λ) e^{(1-λ²)/4} sin(λ/2), entire in λ.
fn h3_gaussian(l: Complex64) -> Complex64 {
    2.0 * std::f64::consts::PI.powf(1.5) / l * ((1.0 - l * l) / 4.0).exp() * (l / 2.0).sin()
}

#[test]
fn h3_gaussian_closed_form_on_and_off_the_axis() {
    let space = make_space(3).unwrap();
    let f = gaussian_bump(1.0, 1.0 / 64.0, 10.0).unwrap();
    let sg = SpectralGrid::for_radius(8.0, 10.0).unwrap();
    for offset in [0.0, 0.3, -0.45] {
        let off = Complex64::new(0.0, offset);
        let tf = forward_transform_in_strip(&space, &f, &sg, off, 4.0).unwrap();
        for (&l, v) in sg.points().iter().zip(&tf.values) {
            let want = h3_gaussian(Complex64::new(l, 0.0) + off);
            assert!(
                (v - want).norm() < 1e-11 * want.norm().max(1e-3),
                "λ = {l}{offset:+}i"
            );
        }
    }
    // the L^4 strip has half-width 1/2
    let off = Complex64::new(0.0, 0.6);
    assert!(forward_transform_in_strip(&space, &f, &sg, off, 4.0).is_err());
}

/// Central differences along the real and imaginary directions agree, i.e.
/// the Cauchy-Riemann equations hold inside the strip.
#[test]
fn transform_is_analytic_in_the_strip() {
    let eps = 1e-3;
    for n in [2, 4, 5] {
        let space = make_space(n).unwrap();
        let f = RadialFunction::from_real_fn(
            &gaussian_bump(1.0, 1.0 / 64.0, 12.0).unwrap().grid().clone(),
            |r| (-(r - 1.0) * (r - 1.0)).exp() + (-(r + 1.0) * (r + 1.0)).exp(),
        );
        let sg = SpectralGrid::for_radius(6.0, 12.0).unwrap();
        let base = Complex64::new(0.0, 0.2 * space.rho());
        let at = |d: Complex64| {
            forward_transform_in_strip(&space, &f, &sg, base + d, 3.0)
                .unwrap()
                .values
        };
        let (xp, xm) = (at(Complex64::new(eps, 0.0)), at(Complex64::new(-eps, 0.0)));
        let (yp, ym) = (at(Complex64::new(0.0, eps)), at(Complex64::new(0.0, -eps)));
        let scale = at(Complex64::new(0.0, 0.0))
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        for k in 0..sg.len() {
            let dx = (xp[k] - xm[k]) / (2.0 * eps);
            let dy = (yp[k] - ym[k]) / Complex64::new(0.0, 2.0 * eps);
            assert!(
                (dx - dy).norm() < 1e-5 * scale,
                "n = {n}, λ = {}",
                sg.points()[k]
            );
        }
    }
}

/// ‖f‖² = κ ∫ |Ff|² |c|^{-2} dλ: the transform is an isometry up to κ, so it
/// cannot send a nonzero function to zero.
#[test]
fn plancherel_identity() {
    for n in [2, 3, 4, 6] {
        let space = make_space(n).unwrap();
        let kappa = calibrate_inversion_constant(&space);
        for width in [0.7, 1.0, 1.5] {
            let f = gaussian_bump(width, 1.0 / 128.0, 12.0).unwrap();
            let sg = SpectralGrid::adaptive(&space, &f).unwrap();
            let tf = forward_transform(&space, &f, &sg, Complex64::new(0.0, 0.0)).unwrap();
            let spectral: f64 = sg
                .points()
                .iter()
                .zip(sg.weights())
                .zip(&tf.values)
                .map(|((&l, &w), v)| w * v.norm_sqr() * plancherel_density(&space, l).unwrap())
                .sum::<f64>()
                * kappa;
            // the direct norm uses a generic fourth-order rule, so take it on
            // a finer grid
            let fine = gaussian_bump(width, 1.0 / 512.0, 12.0).unwrap();
            let norm_sq = lp_norm(&space, &fine, 2.0, 12.0).unwrap().powi(2);
            assert!(
                (spectral / norm_sq - 1.0).abs() < 1e-8,
                "n = {n}, w = {width}: {spectral} vs {norm_sq}"
            );
        }
    }
}

#[test]
fn round_trips_recover_the_input() {
    for n in [2, 3, 5] {
        let space = make_space(n).unwrap();
        let f = gaussian_bump(1.0, 1.0 / 64.0, 12.0).unwrap();
        let g = round_trip(&space, &f).unwrap();
        assert!(l2_relative_error(&space, &g, &f).unwrap() < 1e-9, "n = {n}");
    }
}

#[test]
fn distinct_inputs_have_distinct_transforms() {
    let space = make_space(4).unwrap();
    let f = gaussian_bump(1.0, 1.0 / 64.0, 12.0).unwrap();
    let g = gaussian_bump(1.01, 1.0 / 64.0, 12.0).unwrap();
    let want = f.axpy(Complex64::new(-1.0, 0.0), &g).unwrap();
    let sg = SpectralGrid::adaptive(&space, &want).unwrap();
    let zero = Complex64::new(0.0, 0.0);
    let tf = forward_transform(&space, &f, &sg, zero).unwrap();
    let tg = forward_transform(&space, &g, &sg, zero).unwrap();
    let gap = tf
        .values
        .iter()
        .zip(&tg.values)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    assert!(gap > 1e-3);
    // and the inverse of the difference is the difference of the inputs
    let diff = tf
        .values
        .iter()
        .zip(&tg.values)
        .map(|(a, b)| a - b)
        .collect();
    let back = inverse_transform(
        &space,
        &hyperchaos::transform::SpectralFunction::new(sg.clone(), diff).unwrap(),
        f.grid(),
    )
    .unwrap();
    assert!(l2_relative_error(&space, &back, &want).unwrap() < 1e-6);
}
