use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use super::potential::G_CONST;
use super::FieldSample;
use crate::error::{invalid, Result};
use crate::lattice::{LatticeBox, Point};

/// Vertices of `B(floor(N/2))` whose value lies in the unit window
/// `(alpha m, alpha m + 1)` with `m = 2 sqrt(g) log N`.
#[derive(Debug, Clone, Serialize)]
pub struct LevelSetReport {
    pub alpha: f64,
    pub threshold: f64,
    pub members: Vec<Point>,
    pub cardinality: usize,
}

/// `2 sqrt(g) log N`.
pub fn level_threshold(n: i32) -> f64 {
    2.0 * G_CONST.sqrt() * (n as f64).ln()
}

pub fn level_set(field: &FieldSample, n: i32, alpha: f64) -> Result<LevelSetReport> {
    if !(0.0..1.0).contains(&alpha) {
        return invalid(format!("alpha = {alpha} is outside [0, 1)"));
    }
    if n < 1 {
        return invalid("N must be positive");
    }
    let region = LatticeBox::ball(n / 2);
    if !field.domain.contains_box(&region) {
        return invalid("field does not cover B(N/2)");
    }
    let threshold = level_threshold(n);
    let lo = alpha * threshold;
    let members: Vec<Point> = region
        .points()
        .filter(|&p| {
            let v = field.get(p).unwrap();
            v > lo && v < lo + 1.0
        })
        .collect();
    Ok(LevelSetReport { alpha, threshold, cardinality: members.len(), members })
}

/// `sum_v P(X_v in window)` for centred Gaussians with the given variances.
pub fn expected_cardinality(n: i32, alpha: f64, variances: &[f64]) -> f64 {
    let lo = alpha * level_threshold(n);
    variances
        .iter()
        .map(|&s2| {
            if s2 <= 0.0 {
                return if lo < 0.0 && lo + 1.0 > 0.0 { 1.0 } else { 0.0 };
            }
            let d = Normal::new(0.0, s2.sqrt()).unwrap();
            d.cdf(lo + 1.0) - d.cdf(lo)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_fields() {
        let d = LatticeBox::ball(10);
        let half = level_set(&FieldSample::constant(d, 0.5), 10, 0.0).unwrap();
        assert_eq!(half.cardinality, 11 * 11);
        let neg = level_set(&FieldSample::constant(d, -1.0), 10, 0.0).unwrap();
        assert_eq!(neg.cardinality, 0);
        assert!(level_set(&FieldSample::constant(d, 0.0), 10, 1.0).is_err());
    }
}
