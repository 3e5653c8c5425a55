//! Quadrature rules: composite Gauss-Legendre panels for integrands we can
//! evaluate anywhere, and Richardson-extrapolated Simpson (Boole) weights for
//! integrands only known on a uniform grid.

use gauss_quad::GaussLegendre;

/// Nodes and weights of a composite Gauss-Legendre rule on `[a, b]`.
#[derive(Debug, Clone)]
pub struct PanelRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Reference nodes/weights on [-1, 1], sorted ascending.
pub fn gauss_legendre_reference(order: usize) -> (Vec<f64>, Vec<f64>) {
    let rule = GaussLegendre::new(order.max(2)).expect("order >= 2");
    let mut pairs: Vec<(f64, f64)> = rule.as_node_weight_pairs().to_vec();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    pairs.into_iter().unzip()
}

impl PanelRule {
    /// Splits `[a, b]` into panels of width at most `panel_width`, each with
    /// `order` Gauss-Legendre nodes.
    pub fn new(a: f64, b: f64, panel_width: f64, order: usize) -> Self {
        assert!(b > a && panel_width > 0.0);
        let panels = ((b - a) / panel_width).ceil().max(1.0) as usize;
        let width = (b - a) / panels as f64;
        let (xs, ws) = gauss_legendre_reference(order);
        let mut nodes = Vec::with_capacity(panels * xs.len());
        let mut weights = Vec::with_capacity(panels * xs.len());
        for k in 0..panels {
            let lo = a + k as f64 * width;
            let mid = lo + 0.5 * width;
            for (x, w) in xs.iter().zip(&ws) {
                nodes.push(mid + 0.5 * width * x);
                weights.push(0.5 * width * w);
            }
        }
        Self { nodes, weights }
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Weights for integrating samples `f(0), f(h), …, f((n-1)h)` over `[0, (n-1)h]`.
///
/// Blocks of four intervals use Boole's rule (Simpson with one Richardson
/// step, order 6). A leftover of 1-3 intervals is integrated with the
/// quartic through the last five samples. Requires `n >= 5`.
pub fn uniform_weights(n: usize, h: f64) -> Vec<f64> {
    assert!(n >= 5, "need at least five samples");
    let intervals = n - 1;
    let blocks = intervals / 4;
    let rem = intervals % 4;
    let mut w = vec![0.0; n];
    const BOOLE: [f64; 5] = [7.0, 32.0, 12.0, 32.0, 7.0];
    for b in 0..blocks {
        for (k, c) in BOOLE.iter().enumerate() {
            w[4 * b + k] += c * 2.0 * h / 45.0;
        }
    }
    if rem > 0 {
        let tail = quartic_tail_weights(rem);
        for (k, c) in tail.iter().enumerate() {
            w[n - 5 + k] += c * h;
        }
    }
    w
}

/// Integrals of the five Lagrange basis polynomials on nodes 0..4 over
/// `[4 - rem, 4]` (unit spacing).
fn quartic_tail_weights(rem: usize) -> [f64; 5] {
    let (xs, ws) = gauss_legendre_reference(4);
    let lo = 4.0 - rem as f64;
    let hi = 4.0;
    let mut out = [0.0; 5];
    for (j, slot) in out.iter_mut().enumerate() {
        let basis = |x: f64| {
            (0..5)
                .filter(|&m| m != j)
                .map(|m| (x - m as f64) / (j as f64 - m as f64))
                .product::<f64>()
        };
        *slot = xs
            .iter()
            .zip(&ws)
            .map(|(&x, &w)| 0.5 * (hi - lo) * w * basis(0.5 * (hi - lo) * x + 0.5 * (hi + lo)))
            .sum();
    }
    out
}

/// Integral of uniformly spaced samples with a Richardson error estimate
/// (comparison against the same rule on every other sample).
pub fn integrate_uniform<T>(values: &[T], h: f64) -> (T, f64)
where
    T: Copy + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T> + Default + Norm,
{
    let n = values.len();
    let w = uniform_weights(n, h);
    let fine = values
        .iter()
        .zip(&w)
        .fold(T::default(), |acc, (&v, &wk)| acc + v * wk);
    // coarse rule on even samples covers [0, 2h * (m-1)]
    let coarse_n = (n + 1) / 2;
    let err = if coarse_n >= 5 {
        let evens: Vec<T> = values.iter().step_by(2).copied().collect();
        let wc = uniform_weights(coarse_n, 2.0 * h);
        let coarse = evens
            .iter()
            .zip(&wc)
            .fold(T::default(), |acc, (&v, &wk)| acc + v * wk);
        // samples beyond the coarse range (odd n-1) are excluded from both
        let fine_same = if n % 2 == 1 {
            fine
        } else {
            let wf = uniform_weights(n - 1, h);
            values[..n - 1]
                .iter()
                .zip(&wf)
                .fold(T::default(), |acc, (&v, &wk)| acc + v * wk)
        };
        (fine_same + coarse * -1.0).norm() / 63.0
    } else {
        f64::NAN
    };
    (fine, err)
}

/// Symmetry of an integrand's extension to r < 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Bernoulli numbers B_2, B_4, …, B_12.
const BERNOULLI: [f64; 6] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
];

/// Trapezoid weights on `0, h, …, (n-1)h` with Euler-Maclaurin corrections
/// at r = 0 through h^12. The odd derivatives at 0 are read off from the
/// extension g(-r) = ±g(r). Nothing is corrected at the far end, so the
/// integrand must be negligible there. For even integrands the corrections
/// vanish and the rule is plain trapezoid, which is then spectrally accurate.
pub fn parity_weights(n: usize, h: f64, parity: Parity) -> Vec<f64> {
    const M: usize = BERNOULLI.len();
    assert!(n > M + 1, "need more than {} samples", M + 1);
    let mut w = vec![h; n];
    w[0] = 0.5 * h;
    w[n - 1] = 0.5 * h;
    if parity == Parity::Even {
        return w;
    }
    // c[k][j]: weights of g(jh), j = 1..M, in h^{2k+1} g^{(2k+1)}(0), exact
    // for odd polynomials of degree < 2M under the odd extension
    let v = nalgebra::DMatrix::from_fn(M, M, |i, j| ((j + 1) as f64).powi(2 * i as i32 + 1));
    let lu = v.lu();
    let mut factorial = 1.0;
    let mut k_fact = [0.0; 2 * M + 1];
    for (m, slot) in k_fact.iter_mut().enumerate() {
        if m > 0 {
            factorial *= m as f64;
        }
        *slot = factorial;
    }
    for k in 0..M {
        let mut rhs = nalgebra::DVector::zeros(M);
        rhs[k] = k_fact[2 * k + 1];
        let c = lu.solve(&rhs).expect("odd Vandermonde system is regular");
        let scale = BERNOULLI[k] / k_fact[2 * k + 2];
        for j in 0..M {
            w[j + 1] += h * scale * c[j];
        }
    }
    w
}

/// [`parity_weights`] integral with a Richardson-style error estimate from the
/// same rule on every other sample.
pub fn integrate_parity<T>(values: &[T], h: f64, parity: Parity) -> (T, f64)
where
    T: Copy + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T> + Default + Norm,
{
    let dot = |vals: &mut dyn Iterator<Item = T>, w: &[f64]| {
        vals.zip(w).fold(T::default(), |acc, (v, &wk)| acc + v * wk)
    };
    let n = values.len();
    let fine = dot(&mut values.iter().copied(), &parity_weights(n, h, parity));
    let coarse_n = (n + 1) / 2;
    let err = if coarse_n > BERNOULLI.len() + 1 {
        let coarse = dot(
            &mut values.iter().step_by(2).copied(),
            &parity_weights(coarse_n, 2.0 * h, parity),
        );
        let fine_same = if n % 2 == 1 {
            fine
        } else {
            dot(
                &mut values[..n - 1].iter().copied(),
                &parity_weights(n - 1, h, parity),
            )
        };
        (fine_same + coarse * -1.0).norm()
    } else {
        f64::NAN
    };
    (fine, err)
}

/// Magnitude used for error estimates.
pub trait Norm {
    fn norm(&self) -> f64;
}

impl Norm for f64 {
    fn norm(&self) -> f64 {
        self.abs()
    }
}

impl Norm for num_complex::Complex64 {
    fn norm(&self) -> f64 {
        num_complex::Complex64::norm(*self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn panel_rule_integrates_oscillatory() {
        let rule = PanelRule::new(0.0, 10.0, 0.5, 16);
        let v = rule.integrate(|x| (3.0 * x).cos() * (-x).exp());
        // ∫_0^10 e^{-x} cos 3x dx = [e^{-x}(3 sin 3x - cos 3x)/10]_0^10
        let f = |x: f64| (-x).exp() * (3.0 * (3.0 * x).sin() - (3.0 * x).cos()) / 10.0;
        assert_relative_eq!(v, f(10.0) - f(0.0), max_relative = 1e-13);
    }

    #[test]
    fn uniform_weights_exact_for_quartics_all_remainders() {
        for n in 5..14 {
            let h = 0.1;
            let w = uniform_weights(n, h);
            let len = (n - 1) as f64 * h;
            let s: f64 = (0..n).map(|k| w[k] * (k as f64 * h).powi(4)).sum();
            assert_relative_eq!(s, len.powi(5) / 5.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn richardson_estimate_bounds_error() {
        let h = 1.0 / 64.0;
        let samples: Vec<f64> = (0..=640).map(|k| (k as f64 * h * 2.0).sin()).collect();
        let (v, err) = integrate_uniform(&samples, h);
        let exact = (1.0 - (20.0f64).cos()) / 2.0;
        assert!((v - exact).abs() < 1e-10);
        assert!(err < 1e-8);
    }

    #[test]
    fn parity_rule_odd_oscillatory() {
        // reference values of ∫_0^∞ r e^{-r²} cos(λr) dr from 30-digit quadrature
        let cases = [
            (0.0, 0.5),
            (5.0, -0.057_709_305_418_588_702_8),
            (20.0, -0.002_538_471_875_985_280_33),
            (40.0, -0.000_627_358_528_073_438_94),
        ];
        let h = 1.0 / 256.0;
        for (lam, exact) in cases {
            let g: Vec<f64> = (0..=2560)
                .map(|k| {
                    let r = k as f64 * h;
                    r * (-r * r).exp() * (lam * r).cos()
                })
                .collect();
            let (v, err) = integrate_parity(&g, h, Parity::Odd);
            assert!((v - exact).abs() < 1e-13, "lambda {lam}: {v} vs {exact}");
            assert!(err < 1e-9);
        }
    }

    #[test]
    fn parity_rule_even_is_trapezoid() {
        let w = parity_weights(10, 0.5, Parity::Even);
        assert_eq!(w[0], 0.25);
        assert!(w[1..9].iter().all(|&x| x == 0.5));
    }
}
