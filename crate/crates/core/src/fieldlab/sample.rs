//! Exact Gaussian samplers.

use rand_distr::{Distribution, StandardNormal};

use super::green::KilledDomain;
use super::{DirichletSpec, FieldKind, FieldSample};
use crate::error::{invalid, Result};
use crate::lattice::LatticeBox;
use crate::linalg::LdlFactor;
use crate::rng;

/// Stream tag for field draws.
pub const DGFF_TAG: &str = "dgff";

/// Sampler for the DGFF with covariance `G = 4 L^{-1}`, reusable across
/// replicas.
#[derive(Debug, Clone)]
pub struct DgffSampler {
    kd: KilledDomain,
    factor: LdlFactor,
}

impl DgffSampler {
    pub fn new(domain: LatticeBox, dirichlet: Vec<bool>) -> Result<Self> {
        let kd = KilledDomain::new(domain, dirichlet)?;
        let factor = LdlFactor::new(&kd.laplacian(), Some(&kd.coords()))?;
        Ok(DgffSampler { kd, factor })
    }

    pub fn domain(&self) -> &LatticeBox {
        &self.kd.domain
    }

    /// Field values for `(seed, replica)`, on the whole domain.
    pub fn draw(&self, seed: u64, replica: u64) -> Vec<f64> {
        self.draw_tagged(seed, replica, DGFF_TAG)
    }

    /// Like [`DgffSampler::draw`] on a separately tagged stream.
    pub fn draw_tagged(&self, seed: u64, replica: u64, tag: &str) -> Vec<f64> {
        let mut r = rng::stream(seed, replica, tag);
        let z: Vec<f64> = (0..self.kd.n_free()).map(|_| StandardNormal.sample(&mut r)).collect();
        let mut x = self.factor.correlate(&z);
        x.iter_mut().for_each(|v| *v *= 2.0);
        self.kd.scatter(&x)
    }

    pub fn sample(&self, seed: u64, replica: u64) -> FieldSample {
        FieldSample {
            domain: self.kd.domain,
            values: self.draw(seed, replica),
            dirichlet: self.kd.dirichlet.clone(),
            kind: FieldKind::Dgff,
            seed,
        }
    }
}

/// One exact DGFF sample on `domain`, zero on the Dirichlet set.
pub fn sample_dgff(domain: LatticeBox, dirichlet: &DirichletSpec, seed: u64) -> Result<FieldSample> {
    Ok(DgffSampler::new(domain, dirichlet.mask(&domain)?)?.sample(seed, 0))
}

/// DGFF on `B(M)` pinned at the origin, `M = ceil(margin * R)` with `R` the
/// window's extent, restricted to the window. The finite margin leaves an
/// O(1) covariance deficit relative to the field pinned on the whole plane.
#[derive(Debug, Clone)]
pub struct PinnedWindowSampler {
    window: LatticeBox,
    inner: Option<DgffSampler>,
}

impl PinnedWindowSampler {
    pub fn new(window: LatticeBox, margin_factor: f64) -> Result<Self> {
        if !(margin_factor >= 2.0) || !margin_factor.is_finite() {
            return invalid(format!("margin factor {margin_factor} must be at least 2"));
        }
        if !window.contains((0, 0)) {
            return invalid("the window must contain the origin");
        }
        let extent = window.x0.abs().max(window.x1.abs()).max(window.y0.abs()).max(window.y1.abs());
        if extent == 0 {
            return Ok(PinnedWindowSampler { window, inner: None });
        }
        let m = (margin_factor * extent as f64).ceil() as i32;
        let outer = LatticeBox::ball(m + 1);
        let inner = DgffSampler::new(outer, DirichletSpec::Both.mask(&outer)?)?;
        Ok(PinnedWindowSampler { window, inner: Some(inner) })
    }

    /// Radius of the box on which the field is sampled (the field vanishes
    /// on its outer boundary).
    pub fn outer_radius(&self) -> i32 {
        self.inner.as_ref().map(|s| s.domain().x1 - 1).unwrap_or(0)
    }

    pub fn window(&self) -> &LatticeBox {
        &self.window
    }

    pub fn sample(&self, seed: u64, replica: u64) -> FieldSample {
        let mut dirichlet = vec![false; self.window.len()];
        dirichlet[self.window.index((0, 0)).unwrap()] = true;
        let values = match &self.inner {
            None => vec![0.0; self.window.len()],
            Some(s) => {
                let full = s.draw(seed, replica);
                let d = s.domain();
                self.window.points().map(|p| full[d.index(p).unwrap()]).collect()
            }
        };
        FieldSample { domain: self.window, values, dirichlet, kind: FieldKind::PinnedWindow, seed }
    }
}

pub fn sample_pinned_window(window: LatticeBox, margin_factor: f64, seed: u64) -> Result<FieldSample> {
    Ok(PinnedWindowSampler::new(window, margin_factor)?.sample(seed, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_pinned() {
        let w = LatticeBox::ball(3);
        let a = sample_pinned_window(w, 4.0, 11).unwrap();
        let b = sample_pinned_window(w, 4.0, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.at((0, 0)).unwrap(), 0.0);
        assert_ne!(a.values, sample_pinned_window(w, 4.0, 12).unwrap().values);
        a.validate().unwrap();
    }

    #[test]
    fn dirichlet_values_are_zero() {
        let d = LatticeBox::ball(4);
        let f = sample_dgff(d, &DirichletSpec::Both, 3).unwrap();
        f.validate().unwrap();
        assert!(f.values.iter().filter(|v| **v != 0.0).count() > 40);
    }

    #[test]
    fn trivial_window() {
        let f = sample_pinned_window(LatticeBox::ball(0), 4.0, 1).unwrap();
        assert_eq!(f.values, vec![0.0]);
        assert!(sample_pinned_window(LatticeBox::ball(2), 1.5, 1).is_err());
    }
}
