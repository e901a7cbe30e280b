//! Conditional expectations of the field at the origin given its values on
//! nested concentric box boundaries.

use super::gibbs::harmonic_measure_with;
use super::green::{GreenOracle, KilledDomain};
use super::{DirichletSpec, FieldSample};
use crate::error::{invalid, Error, Result};
use crate::lattice::{LatticeBox, Point};

/// Largest outer radius accepted.
pub const MAX_RADIUS: i64 = 1024;

/// Levels `k = 0..=n` of the trace: `M_k` is the harmonic extension to the
/// origin of the field on the boundary of `B(b^(n-k) N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentricTrace {
    pub base: u32,
    pub depth: u32,
    pub inner: i32,
    /// Radii `b^(n-k) N`, `k = 0..=n`.
    pub radii: Vec<i32>,
    /// `Var(M_k)`, exact.
    pub variances: Vec<f64>,
    /// `M_k` for a given field, if one was supplied.
    pub levels: Option<Vec<f64>>,
}

impl ConcentricTrace {
    /// `Var(M_k) - Var(M_{k-1})` for `k = 1..=n`.
    pub fn increments(&self) -> Vec<f64> {
        self.variances.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// Precomputed harmonic measures for repeated evaluation on many fields.
#[derive(Debug, Clone)]
pub struct ConcentricProbe {
    base: u32,
    depth: u32,
    inner: i32,
    radii: Vec<i32>,
    variances: Vec<f64>,
    measures: Vec<Vec<(Point, f64)>>,
}

impl ConcentricProbe {
    pub fn new(base: u32, depth: u32, inner: i32) -> Result<Self> {
        if base < 2 || depth < 2 || inner < 1 {
            return invalid("need b >= 2, n >= 2 and N >= 1");
        }
        let outer = (base as i64).checked_pow(depth).map(|p| p * inner as i64);
        if outer.map(|o| o > MAX_RADIUS).unwrap_or(true) {
            return Err(Error::ResourceLimit(format!("outer radius exceeds {MAX_RADIUS}")));
        }
        let radii: Vec<i32> = (0..=depth).map(|k| base.pow(depth - k) as i32 * inner).collect();
        let mut g = Vec::new();
        let mut measures = Vec::new();
        for &r in &radii {
            let d = LatticeBox::ball(r + 1);
            let oracle = GreenOracle::new(KilledDomain::new(d, DirichletSpec::Boundary.mask(&d)?)?)?;
            g.push(oracle.value((0, 0), (0, 0))?);
            measures.push(harmonic_measure_with(&oracle, (0, 0))?);
        }
        let variances = g.iter().map(|gk| g[0] - gk).collect();
        Ok(ConcentricProbe { base, depth, inner, radii, variances, measures })
    }

    pub fn trace(&self) -> ConcentricTrace {
        ConcentricTrace {
            base: self.base,
            depth: self.depth,
            inner: self.inner,
            radii: self.radii.clone(),
            variances: self.variances.clone(),
            levels: None,
        }
    }

    /// The levels `M_k` of `field`, which must cover the outer boundary.
    pub fn levels(&self, field: &FieldSample) -> Result<Vec<f64>> {
        self.measures
            .iter()
            .map(|hm| {
                hm.iter().try_fold(0.0, |acc, &(p, w)| {
                    let v = field.get(p).ok_or(Error::OutOfDomain(p))?;
                    Ok(acc + w * v)
                })
            })
            .collect()
    }
}

/// Exact variances of the trace, and its levels when `field` is given.
pub fn concentric_trace(base: u32, depth: u32, inner: i32, field: Option<&FieldSample>) -> Result<ConcentricTrace> {
    let probe = ConcentricProbe::new(base, depth, inner)?;
    let mut t = probe.trace();
    if let Some(f) = field {
        t.levels = Some(probe.levels(f)?);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_field_has_zero_levels() {
        let f = FieldSample::constant(LatticeBox::ball(9), 0.0);
        let t = concentric_trace(2, 3, 1, Some(&f)).unwrap();
        assert!(t.levels.unwrap().iter().all(|&m| m == 0.0));
        assert_eq!(t.radii, vec![8, 4, 2, 1]);
        assert_eq!(t.variances[0], 0.0);
    }

    #[test]
    fn rejects_degenerate_base() {
        assert!(concentric_trace(1, 3, 1, None).is_err());
    }
}
