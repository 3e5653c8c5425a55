use serde::{Deserialize, Serialize};

use super::region::ParabolicRegion;
use crate::error::{invalid, Result};

/// c_p of a product of rank-one factors: the sum of the factor thresholds.
pub fn product_threshold(thresholds: &[f64]) -> Result<f64> {
    if thresholds.is_empty() {
        return Err(invalid("product of zero factors"));
    }
    if thresholds.iter().any(|c| !c.is_finite()) {
        return Err(invalid("thresholds must be finite"));
    }
    Ok(thresholds.iter().sum())
}

/// Symbolic spectra of factor Laplacians and their Minkowski sums.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectralSet {
    /// [start, ∞), e.g. the L^p spectrum of a euclidean factor.
    Ray {
        start: f64,
    },
    /// Finite list of real eigenvalues of a compact factor.
    Points {
        values: Vec<f64>,
    },
    Parabola {
        region: ParabolicRegion,
    },
    Sum {
        terms: Vec<SpectralSet>,
    },
}

impl SpectralSet {
    pub fn sum(&self, other: &SpectralSet) -> SpectralSet {
        use SpectralSet::*;
        match (self, other) {
            (Ray { start: a }, Ray { start: b }) => Ray { start: a + b },
            (Ray { start }, Points { values }) | (Points { values }, Ray { start }) => {
                match values.iter().cloned().reduce(f64::min) {
                    Some(m) => Ray { start: start + m },
                    None => Points { values: Vec::new() },
                }
            }
            (Points { values: a }, Points { values: b }) => {
                let mut v: Vec<f64> = a
                    .iter()
                    .flat_map(|x| b.iter().map(move |y| x + y))
                    .collect();
                v.sort_by(f64::total_cmp);
                v.dedup();
                Points { values: v }
            }
            (Sum { terms }, x) | (x, Sum { terms }) => {
                let mut t = terms.clone();
                t.push(x.clone());
                Sum { terms: t }
            }
            (a, b) => Sum {
                terms: vec![a.clone(), b.clone()],
            },
        }
    }

    /// True when every element of the set is real.
    pub fn is_real(&self) -> bool {
        match self {
            SpectralSet::Ray { .. } | SpectralSet::Points { .. } => true,
            SpectralSet::Parabola { region } => region.b_p == 0.0,
            SpectralSet::Sum { terms } => terms.iter().all(SpectralSet::is_real),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaos::apex_threshold;

    #[test]
    fn thresholds_add() {
        let c = apex_threshold(1.0, 4.0).unwrap();
        assert_eq!(product_threshold(&[c, c]).unwrap(), 1.5);
        assert_eq!(product_threshold(&[0.3]).unwrap(), 0.3);
        assert!(product_threshold(&[]).is_err());
    }

    #[test]
    fn euclidean_times_compact_stays_real() {
        let ray = SpectralSet::Ray { start: 0.0 };
        let pts = SpectralSet::Points {
            values: vec![0.0, 2.0, 6.0, 12.0],
        };
        let s = ray.sum(&pts);
        assert_eq!(s, SpectralSet::Ray { start: 0.0 });
        assert!(s.is_real());
        assert!(pts.sum(&pts).is_real());
    }

    #[test]
    fn parabola_sum_is_not_real() {
        let region = ParabolicRegion::new(1.0, 4.0, 0.0).unwrap();
        let s = SpectralSet::Parabola { region }.sum(&SpectralSet::Ray { start: 0.0 });
        assert!(!s.is_real());
        let flat = ParabolicRegion::new(1.0, 2.0, 0.0).unwrap();
        assert!(SpectralSet::Parabola { region: flat }
            .sum(&SpectralSet::Ray { start: 0.0 })
            .is_real());
    }
}
