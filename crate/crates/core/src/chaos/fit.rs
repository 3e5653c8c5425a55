use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::eigen::{principal_mu, EigenAtom};
use crate::error::{invalid, Error, Result};
use crate::quadrature::uniform_weights;
use crate::space::{lp_norm, HyperbolicSpace, RadialFunction};
use crate::spherical::spherical_values;

/// Ridge parameter relative to the trace of the Gram matrix.
pub const RIDGE_FACTOR: f64 = 1e-10;

/// Least-squares approximation of a target by eigenfunction atoms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityFit {
    pub atoms: Vec<EigenAtom>,
    /// ‖Σ a_j F_j - target‖ / ‖target‖ in L² of the fit ball.
    pub residual_l2: f64,
    /// Same in L^p.
    pub residual_lp: f64,
    /// Condition number (s_max² + α)/(s_min² + α) of the regularized Gram
    /// matrix. The unregularized one is typically beyond 1e16.
    pub condition_number: f64,
    /// Smallest singular value of the weighted design matrix.
    pub min_singular_value: f64,
    /// Ridge added to the Gram matrix.
    pub ridge: f64,
    pub fit_radius: f64,
}

/// Uniform `n_re` × `n_im` grid over a rectangle of the z-plane, endpoints
/// included, row by row in increasing imaginary part.
pub fn rectangle_dictionary(
    re: (f64, f64),
    im: (f64, f64),
    n_re: usize,
    n_im: usize,
) -> Vec<Complex64> {
    let axis = |lo: f64, hi: f64, n: usize| -> Vec<f64> {
        if n == 1 {
            vec![0.5 * (lo + hi)]
        } else {
            (0..n)
                .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
                .collect()
        }
    };
    let xs = axis(re.0, re.1, n_re);
    let ys = axis(im.0, im.1, n_im);
    ys.iter()
        .flat_map(|&y| xs.iter().map(move |&x| Complex64::new(x, y)))
        .collect()
}

/// The `n` points z_k = start + k·length/n, k = 1..=n, of the segment
/// (start, start + length]. Doubling n gives a superset, so residuals of a
/// ladder n, 2n, 4n are comparable.
pub fn nested_segment_dictionary(start: f64, length: f64, n: usize) -> Vec<Complex64> {
    (1..=n)
        .map(|k| Complex64::new(start + length * k as f64 / n as f64, 0.0))
        .collect()
}

fn check_dictionary(dictionary: &[Complex64]) -> Result<()> {
    if dictionary.is_empty() {
        return Err(invalid("dictionary is empty"));
    }
    for (i, a) in dictionary.iter().enumerate() {
        if dictionary[..i].contains(a) {
            return Err(invalid(format!("dictionary atom {a} repeated")));
        }
    }
    Ok(())
}

/// Fits `target` by Σ a_j F(z_j) in the L² inner product of the ball
/// [0, R], R the target grid's radius (trimmed so the Boole weights apply
/// without a tail correction). The ridge-regularized problem
/// min ‖Ax - b‖² + α‖x‖², α = RIDGE_FACTOR · trace(A*A), is solved through
/// the SVD of A.
pub fn density_fit(
    space: &HyperbolicSpace,
    p: f64,
    c: f64,
    target: &RadialFunction,
    dictionary: &[Complex64],
) -> Result<DensityFit> {
    check_dictionary(dictionary)?;
    let h = target.grid().require_uniform()?;
    let len = target.grid().len();
    let m = 1 + 4 * ((len - 1) / 4);
    if m < 5 {
        return Err(Error::Grid("fit grid needs at least five points".into()));
    }
    let radii = &target.grid().points()[..m];
    let w = uniform_weights(m, h);
    let sw: Vec<f64> = radii
        .iter()
        .zip(&w)
        .map(|(&r, &wk)| (wk * space.density(r)).sqrt())
        .collect();
    let mut atoms = dictionary
        .iter()
        .map(|&z| {
            Ok(EigenAtom {
                z,
                mu: principal_mu(space, c, z)?,
                coefficient: Complex64::new(0.0, 0.0),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let columns = atoms
        .iter()
        .map(|a| spherical_values(space, -a.mu, target.grid().points()))
        .collect::<Result<Vec<_>>>()?;
    let a_mat = DMatrix::from_fn(m, atoms.len(), |i, j| columns[j][i] * sw[i]);
    let b = DVector::from_fn(m, |i, _| target.values()[i] * sw[i]);
    let svd = a_mat.clone().svd(true, true);
    let s = &svd.singular_values;
    let trace: f64 = s.iter().map(|x| x * x).sum();
    if !(trace > 0.0) || !trace.is_finite() {
        return Err(Error::Solve(
            "dictionary has no energy on the fit ball".into(),
        ));
    }
    let alpha = RIDGE_FACTOR * trace;
    let u = svd
        .u
        .as_ref()
        .ok_or_else(|| Error::Solve("SVD without U".into()))?;
    let vt = svd
        .v_t
        .as_ref()
        .ok_or_else(|| Error::Solve("SVD without V".into()))?;
    let ub = u.adjoint() * &b;
    let scaled = DVector::from_fn(s.len(), |k, _| ub[k] * (s[k] / (s[k] * s[k] + alpha)));
    let x = vt.adjoint() * scaled;
    let s_max = s.iter().cloned().fold(0.0, f64::max);
    let s_min = s.iter().cloned().fold(f64::INFINITY, f64::min);
    let s_min = s_min.max(0.0);
    let condition_number = (s_max * s_max + alpha) / (s_min * s_min + alpha);

    let resid = &a_mat * &x - &b;
    let residual_l2 = resid.norm() / b.norm().max(f64::MIN_POSITIVE);
    for (a, xj) in atoms.iter_mut().zip(x.iter()) {
        a.coefficient = *xj;
    }
    let mut values = target.values().to_vec();
    for (a, col) in atoms.iter().zip(&columns) {
        for (v, f) in values.iter_mut().zip(col) {
            *v -= a.coefficient * f;
        }
    }
    let fit_radius = radii[m - 1];
    let diff = RadialFunction::new(target.grid().clone(), values)?;
    let denom = lp_norm(space, target, p, fit_radius)?;
    let residual_lp = lp_norm(space, &diff, p, fit_radius)? / denom.max(f64::MIN_POSITIVE);
    Ok(DensityFit {
        atoms,
        residual_l2,
        residual_lp,
        condition_number,
        min_singular_value: s_min,
        ridge: alpha,
        fit_radius,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmallSeedStep {
    pub t: f64,
    /// ‖g‖ with g = Σ a_j e^{t z_j} F(z_j).
    pub seed_norm: f64,
    /// ‖g‖ / ‖Σ a_j F(z_j)‖.
    pub seed_ratio: f64,
    /// ‖T(t)g - target‖ / ‖target‖, T(t) applied through the eigen-factors.
    pub recovery_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmallSeedTrace {
    pub fit: DensityFit,
    pub steps: Vec<SmallSeedStep>,
}

/// Fits the target with growing atoms (Re z < 0) and, for each t, builds the
/// small seed g = Σ a_j e^{t z_j} F(z_j) whose image T(t)g is the fit. Norms
/// are truncated L^p norms over the target grid.
pub fn small_seed_recovery(
    space: &HyperbolicSpace,
    p: f64,
    c: f64,
    target: &RadialFunction,
    dictionary: &[Complex64],
    t_list: &[f64],
) -> Result<SmallSeedTrace> {
    check_dictionary(dictionary)?;
    if let Some(z) = dictionary.iter().find(|z| !(z.re < 0.0)) {
        return Err(invalid(format!("small-seed atoms need Re z < 0, got {z}")));
    }
    if t_list.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) {
        return Err(invalid("times must be finite and nonnegative"));
    }
    let fit = density_fit(space, p, c, target, dictionary)?;
    let grid = target.grid();
    let radius = grid.r_max();
    let columns = fit
        .atoms
        .iter()
        .map(|a| spherical_values(space, -a.mu, grid.points()))
        .collect::<Result<Vec<_>>>()?;
    let build = |coef: &dyn Fn(&EigenAtom) -> Complex64| -> Result<RadialFunction> {
        let mut v = vec![Complex64::new(0.0, 0.0); grid.len()];
        for (a, col) in fit.atoms.iter().zip(&columns) {
            let k = coef(a);
            for (x, f) in v.iter_mut().zip(col) {
                *x += k * f;
            }
        }
        RadialFunction::new(grid.clone(), v)
    };
    let fitted = build(&|a| a.coefficient)?;
    let fitted_norm = lp_norm(space, &fitted, p, radius)?;
    let target_norm = lp_norm(space, target, p, radius)?;
    let mut steps = Vec::with_capacity(t_list.len());
    for &t in t_list {
        let g = build(&|a| a.coefficient * (t * a.z).exp())?;
        let image = build(&|a| a.coefficient * (t * a.z).exp() * (-t * a.z).exp())?;
        let diff = image.axpy(Complex64::new(-1.0, 0.0), target)?;
        let seed_norm = lp_norm(space, &g, p, radius)?;
        steps.push(SmallSeedStep {
            t,
            seed_norm,
            seed_ratio: seed_norm / fitted_norm.max(f64::MIN_POSITIVE),
            recovery_error: lp_norm(space, &diff, p, radius)? / target_norm.max(f64::MIN_POSITIVE),
        });
    }
    Ok(SmallSeedTrace { fit, steps })
}
