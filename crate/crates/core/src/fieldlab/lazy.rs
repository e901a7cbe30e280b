//! Splitting the box DGFF into a short-range part built from the first
//! `floor(log N)^2` steps of the lazy walk and a smooth remainder.

use std::collections::HashMap;

use rand_distr::{Distribution, StandardNormal};

use super::green::{BoxSpectrum, GreenOracle, KilledDomain};
use super::sample::DgffSampler;
use super::{DirichletSpec, FieldKind, FieldSample};
use crate::error::{invalid, Error, Result};
use crate::lattice::{add, LatticeBox, Point, DIRS};
use crate::rng;

/// Vertex limit for materializing fields on the whole box.
pub const SAMPLE_LIMIT: usize = 1 << 22;

/// Covariance kernels of the two independent summands `Y` and `Z` of the
/// DGFF on `B(N)` (killed on leaving `B(N)`).
#[derive(Debug, Clone)]
pub struct LazyKernelSplit {
    n: i32,
    cutoff: usize,
    green: GreenOracle,
}

impl LazyKernelSplit {
    pub fn new(n: i32) -> Result<Self> {
        if n < 2 {
            return invalid("the lazy split needs N >= 2");
        }
        let d = LatticeBox::ball(n + 1);
        let green = GreenOracle::new(KilledDomain::new(d, DirichletSpec::Boundary.mask(&d)?)?)?;
        Ok(LazyKernelSplit { n, cutoff: cutoff(n), green })
    }

    pub fn n(&self) -> i32 {
        self.n
    }

    /// Number of lazy steps carried by `Y`.
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    fn check(&self, p: Point) -> Result<()> {
        if LatticeBox::ball(self.n).contains(p) {
            Ok(())
        } else {
            Err(Error::OutOfDomain(p))
        }
    }

    /// `1/2 sum_{t <= cutoff} P^v(S_t = u, not yet killed)` for all `u`
    /// near `v`, by iterating the lazy kernel.
    pub fn cov_y_from(&self, v: Point) -> Result<HashMap<Point, f64>> {
        self.check(v)?;
        let k = self.cutoff as i32;
        let ball = LatticeBox::ball(self.n);
        let win = LatticeBox::new(
            (v.0 - k).max(-self.n),
            (v.0 + k).min(self.n),
            (v.1 - k).max(-self.n),
            (v.1 + k).min(self.n),
        )?;
        let mut mu = vec![0.0; win.len()];
        let mut next = vec![0.0; win.len()];
        let mut acc = vec![0.0; win.len()];
        mu[win.index(v).unwrap()] = 1.0;
        for t in 0..=self.cutoff {
            for (a, m) in acc.iter_mut().zip(&mu) {
                *a += 0.5 * m;
            }
            if t == self.cutoff {
                break;
            }
            lazy_step(&win, &ball, &mu, &mut next);
            std::mem::swap(&mut mu, &mut next);
        }
        Ok(win.points().zip(acc).filter(|(_, a)| *a != 0.0).collect())
    }

    pub fn cov_y(&self, u: Point, v: Point) -> Result<f64> {
        self.check(u)?;
        Ok(self.cov_y_from(v)?.get(&u).copied().unwrap_or(0.0))
    }

    pub fn green(&self, u: Point, v: Point) -> Result<f64> {
        self.check(u)?;
        self.check(v)?;
        self.green.value(u, v)
    }

    /// `G(u, v) - covY(u, v)`.
    pub fn cov_z(&self, u: Point, v: Point) -> Result<f64> {
        Ok(self.green(u, v)? - self.cov_y(u, v)?)
    }

    /// Largest `Var(Z_u - Z_v)` over nearest-neighbour pairs inside `B(r)`,
    /// with the pair attaining it. The Green part uses the sine expansion of
    /// the box, the `Y` part the iterated lazy kernel.
    pub fn max_nn_z_variance(&self, r: i32) -> Result<(f64, (Point, Point))> {
        if r < 1 || r > self.n {
            return invalid("radius must lie in [1, N]");
        }
        let spec = BoxSpectrum::new(self.n);
        let horiz = spec.horizontal_pair_variances(r, |l| 4.0 / l);
        let region = LatticeBox::ball(r);
        let mut ydiag = HashMap::new();
        let mut yoff = HashMap::new();
        for p in region.points() {
            let col = self.cov_y_from(p)?;
            ydiag.insert(p, col[&p]);
            for q in [add(p, (1, 0)), add(p, (0, 1))] {
                if region.contains(q) {
                    yoff.insert((p, q), col.get(&q).copied().unwrap_or(0.0));
                }
            }
        }
        let mut best = (f64::NEG_INFINITY, ((0, 0), (0, 0)));
        for ((x, y), gvar) in horiz {
            // Horizontal pair (x, y)-(x+1, y) and, by the box's diagonal
            // symmetry, the vertical pair (y, x)-(y, x+1) share `gvar`.
            for (p, q) in [((x, y), (x + 1, y)), ((y, x), (y, x + 1))] {
                let yvar = ydiag[&p] + ydiag[&q] - 2.0 * yoff[&(p, q)];
                let z = gvar - yvar;
                if z > best.0 {
                    best = (z, (p, q));
                }
            }
        }
        Ok(best)
    }

    /// Independent samples of `Y` and `Z` on `B(N)` (as fields on
    /// `B(N+1)` vanishing on its outer ring).
    pub fn sample(&self, seed: u64, replica: u64) -> Result<(FieldSample, FieldSample)> {
        let d = LatticeBox::ball(self.n + 1);
        if d.len() > SAMPLE_LIMIT {
            return Err(Error::ResourceLimit("box too large for field sampling".into()));
        }
        let ball = LatticeBox::ball(self.n);
        let mask = DirichletSpec::Boundary.mask(&d)?;
        let mut r = rng::stream(seed, replica, "lazy-y");
        let mut normals = |len: usize| -> Vec<f64> { (0..len).map(|_| StandardNormal.sample(&mut r)).collect() };
        let k = self.cutoff;
        // The lazy kernel factors as P = R R^T with one column per interior
        // edge plus a diagonal part, so that
        // sum_t P^t = sum_s P^s (xi_2s + R xi_2s+1) in law.
        let edges = ball.edges();
        let apply_r = |xi: &[f64], out: &mut [f64]| {
            let s = (1.0f64 / 8.0).sqrt();
            for (e, &(a, b)) in edges.iter().enumerate() {
                out[a] += s * xi[e];
                out[b] += s * xi[e];
            }
            for (i, p) in ball.points().enumerate() {
                let deg = DIRS.iter().filter(|&&dd| ball.contains(add(p, dd))).count() as f64;
                out[i] += (0.5 - deg / 8.0).max(0.0).sqrt() * xi[edges.len() + i];
            }
        };
        let n = ball.len();
        let mut acc = vec![0.0; n];
        let mut tmp = vec![0.0; n];
        for s in (0..=k / 2).rev() {
            lazy_step(&ball, &ball, &acc, &mut tmp);
            std::mem::swap(&mut acc, &mut tmp);
            let xi = normals(n);
            for (a, x) in acc.iter_mut().zip(&xi) {
                *a += x;
            }
            if 2 * s + 1 <= k {
                let xi = normals(edges.len() + n);
                apply_r(&xi, &mut acc);
            }
        }
        let y: Vec<f64> = acc.iter().map(|v| v / std::f64::consts::SQRT_2).collect();

        // Z = P^m chi' when k + 1 = 2m, and P^m (R xi / sqrt 2 + P chi')
        // when k + 1 = 2m + 1.
        let chi = DgffSampler::new(d, mask.clone())?.draw_tagged(seed, replica, "lazy-z");
        let mut z: Vec<f64> = ball.points().map(|p| chi[d.index(p).unwrap()]).collect();
        let m = (k + 1) / 2;
        if (k + 1) % 2 == 1 {
            lazy_step(&ball, &ball, &z, &mut tmp);
            std::mem::swap(&mut z, &mut tmp);
            let xi: Vec<f64> = normals(edges.len() + n).iter().map(|v| v / std::f64::consts::SQRT_2).collect();
            apply_r(&xi, &mut z);
        }
        for _ in 0..m {
            lazy_step(&ball, &ball, &z, &mut tmp);
            std::mem::swap(&mut z, &mut tmp);
        }
        let lift = |v: &[f64]| -> FieldSample {
            let mut values = vec![0.0; d.len()];
            for (i, p) in ball.points().enumerate() {
                values[d.index(p).unwrap()] = v[i];
            }
            FieldSample { domain: d, values, dirichlet: mask.clone(), kind: FieldKind::Synthetic, seed }
        };
        Ok((lift(&y), lift(&z)))
    }
}

/// `floor(log N)^2`.
pub fn cutoff(n: i32) -> usize {
    let l = (n as f64).ln().floor();
    (l * l) as usize
}

/// One step of the lazy walk killed on leaving `ball`, for a measure
/// supported on `win` (a sub-box of `ball`, mass leaving `win` is dropped).
/// Since the kernel is symmetric this is also its action on functions.
fn lazy_step(win: &LatticeBox, ball: &LatticeBox, mu: &[f64], out: &mut [f64]) {
    for (i, p) in win.points().enumerate() {
        let mut acc = 0.5 * mu[i];
        for d in DIRS {
            let q = add(p, d);
            if ball.contains(q) {
                if let Some(j) = win.index(q) {
                    acc += 0.125 * mu[j];
                }
            }
        }
        out[i] = acc;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutoff_values() {
        assert_eq!(cutoff(2), 0);
        assert_eq!(cutoff(32), 9);
        assert_eq!(cutoff(64), 16);
        assert_eq!(cutoff(128), 16);
        assert_eq!(cutoff(256), 25);
    }

    #[test]
    fn y_plus_z_is_green() {
        let s = LazyKernelSplit::new(8).unwrap();
        for (u, v) in [((0, 0), (0, 0)), ((1, 0), (0, 0)), ((7, 8), (8, 8))] {
            let sum = s.cov_y(u, v).unwrap() + s.cov_z(u, v).unwrap();
            assert!((sum - s.green(u, v).unwrap()).abs() < 1e-12);
        }
    }
}
