use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lattice::{LatticeBox, Point};

/// Provenance of a field sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Dgff,
    PinnedWindow,
    Synthetic,
}

/// How the Dirichlet-zero set of a domain is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirichletSpec {
    /// The outer ring of the domain box.
    Boundary,
    /// The origin only.
    Origin,
    /// Outer ring and origin.
    Both,
    /// An explicit vertex list.
    Custom(Vec<Point>),
}

impl DirichletSpec {
    /// Membership mask over the domain's vertices.
    pub fn mask(&self, domain: &LatticeBox) -> Result<Vec<bool>> {
        let mut m = vec![false; domain.len()];
        let ring = matches!(self, DirichletSpec::Boundary | DirichletSpec::Both);
        let origin = matches!(self, DirichletSpec::Origin | DirichletSpec::Both);
        if ring {
            for p in domain.ring() {
                m[domain.index(p).unwrap()] = true;
            }
        }
        if origin {
            m[domain.index_of((0, 0))?] = true;
        }
        if let DirichletSpec::Custom(pts) = self {
            for &p in pts {
                m[domain.index_of(p)?] = true;
            }
        }
        Ok(m)
    }
}

/// Real values on a lattice box together with the set where they are pinned
/// to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample {
    pub domain: LatticeBox,
    pub values: Vec<f64>,
    pub dirichlet: Vec<bool>,
    pub kind: FieldKind,
    pub seed: u64,
}

impl FieldSample {
    pub fn new(
        domain: LatticeBox,
        values: Vec<f64>,
        dirichlet: Vec<bool>,
        kind: FieldKind,
        seed: u64,
    ) -> Result<Self> {
        let f = FieldSample { domain, values, dirichlet, kind, seed };
        f.validate()?;
        Ok(f)
    }

    /// Field with no Dirichlet set built from a function of the vertex.
    pub fn synthetic(domain: LatticeBox, f: impl Fn(Point) -> f64) -> Self {
        FieldSample {
            domain,
            values: domain.points().map(f).collect(),
            dirichlet: vec![false; domain.len()],
            kind: FieldKind::Synthetic,
            seed: 0,
        }
    }

    pub fn constant(domain: LatticeBox, c: f64) -> Self {
        Self::synthetic(domain, |_| c)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.domain.len();
        if self.values.len() != n || self.dirichlet.len() != n {
            return invalid("field arrays do not match the domain size");
        }
        for (i, (&v, &d)) in self.values.iter().zip(&self.dirichlet).enumerate() {
            if !v.is_finite() {
                return Err(Error::Invariant(format!("non-finite value at {:?}", self.domain.point(i))));
            }
            if d && v != 0.0 {
                return Err(Error::Invariant(format!(
                    "nonzero value on Dirichlet vertex {:?}",
                    self.domain.point(i)
                )));
            }
        }
        Ok(())
    }

    pub fn get(&self, p: Point) -> Option<f64> {
        self.domain.index(p).map(|i| self.values[i])
    }

    pub fn at(&self, p: Point) -> Result<f64> {
        Ok(self.values[self.domain.index_of(p)?])
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Restriction to a sub-box.
    pub fn restrict(&self, sub: &LatticeBox) -> Result<FieldSample> {
        if !self.domain.contains_box(sub) {
            return invalid("restriction box not contained in the domain");
        }
        let idx: Vec<usize> = sub.points().map(|p| self.domain.index(p).unwrap()).collect();
        Ok(FieldSample {
            domain: *sub,
            values: idx.iter().map(|&i| self.values[i]).collect(),
            dirichlet: idx.iter().map(|&i| self.dirichlet[i]).collect(),
            kind: self.kind,
            seed: self.seed,
        })
    }

    /// Pointwise map; the result is synthetic with no Dirichlet set.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> FieldSample {
        FieldSample {
            domain: self.domain,
            values: self.values.iter().map(|&v| f(v)).collect(),
            dirichlet: vec![false; self.domain.len()],
            kind: FieldKind::Synthetic,
            seed: self.seed,
        }
    }

    /// Pointwise sum with a field on the same domain.
    pub fn add(&self, other: &FieldSample) -> Result<FieldSample> {
        if self.domain != other.domain {
            return invalid("fields live on different domains");
        }
        let mut out = self.map(|v| v);
        for (o, v) in out.values.iter_mut().zip(&other.values) {
            *o += v;
        }
        Ok(out)
    }

    /// Tag used in sidecar metadata.
    pub fn dirichlet_tag(&self) -> &'static str {
        let origin = self.domain.index((0, 0)).map(|i| self.dirichlet[i]).unwrap_or(false);
        let ring: Vec<usize> = self.domain.ring().iter().map(|&p| self.domain.index(p).unwrap()).collect();
        let ring_all = ring.iter().all(|&i| self.dirichlet[i]);
        let count = self.dirichlet.iter().filter(|&&d| d).count();
        let expected_both = ring.len() + usize::from(origin && !self.domain.is_ring((0, 0)));
        match (ring_all, origin) {
            _ if count == 0 => "none",
            (true, true) if count == expected_both && !self.domain.is_ring((0, 0)) => "both",
            (true, _) if count == ring.len() => "boundary",
            (false, true) if count == 1 => "origin",
            _ => "custom",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags() {
        let d = LatticeBox::ball(2);
        let mut f = FieldSample::constant(d, 0.0);
        assert_eq!(f.dirichlet_tag(), "none");
        f.dirichlet = DirichletSpec::Boundary.mask(&d).unwrap();
        assert_eq!(f.dirichlet_tag(), "boundary");
        f.dirichlet = DirichletSpec::Both.mask(&d).unwrap();
        assert_eq!(f.dirichlet_tag(), "both");
        f.dirichlet = DirichletSpec::Origin.mask(&d).unwrap();
        assert_eq!(f.dirichlet_tag(), "origin");
    }

    #[test]
    fn invariant_rejects_nonzero_dirichlet() {
        let d = LatticeBox::ball(1);
        let r = FieldSample::new(d, vec![1.0; 9], DirichletSpec::Origin.mask(&d).unwrap(), FieldKind::Synthetic, 0);
        assert!(r.is_err());
    }
}
