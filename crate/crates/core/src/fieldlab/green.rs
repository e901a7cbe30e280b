//! Green functions of the simple random walk killed on a Dirichlet set.

use crate::error::{invalid, Error, Result};
use crate::lattice::{add, LatticeBox, Point, DIRS};
use crate::linalg::{dense, GroundedLaplacian, LdlFactor};

const NONE: usize = usize::MAX;

/// Simple random walk on a box, killed on a Dirichlet mask and on leaving
/// the box. Free vertices are numbered in domain order.
#[derive(Debug, Clone)]
pub struct KilledDomain {
    pub domain: LatticeBox,
    pub dirichlet: Vec<bool>,
    free: Vec<usize>,
    slot: Vec<usize>,
}

impl KilledDomain {
    pub fn new(domain: LatticeBox, dirichlet: Vec<bool>) -> Result<Self> {
        if dirichlet.len() != domain.len() {
            return invalid("Dirichlet mask does not match the domain");
        }
        if !dirichlet.iter().any(|&d| d) {
            return Err(Error::Unpinned("the Dirichlet set is empty".into()));
        }
        let mut slot = vec![NONE; domain.len()];
        let mut free = Vec::new();
        for (i, &d) in dirichlet.iter().enumerate() {
            if !d {
                slot[i] = free.len();
                free.push(i);
            }
        }
        Ok(KilledDomain { domain, dirichlet, free, slot })
    }

    /// Domain indices of the free vertices.
    pub fn free(&self) -> &[usize] {
        &self.free
    }

    pub fn n_free(&self) -> usize {
        self.free.len()
    }

    /// Position of domain vertex `i` among the free vertices.
    pub fn slot(&self, i: usize) -> Option<usize> {
        (self.slot[i] != NONE).then_some(self.slot[i])
    }

    pub fn is_free(&self, p: Point) -> bool {
        self.domain.index(p).map(|i| !self.dirichlet[i]).unwrap_or(false)
    }

    /// Unit-weight Laplacian on free vertices; each killed neighbour
    /// contributes one unit of grounding.
    pub fn laplacian(&self) -> GroundedLaplacian {
        let mut edges = Vec::new();
        let mut ground = vec![0.0; self.free.len()];
        for (s, &i) in self.free.iter().enumerate() {
            let p = self.domain.point(i);
            for d in DIRS {
                match self.domain.index(add(p, d)).and_then(|j| self.slot(j)) {
                    Some(t) => {
                        if s < t {
                            edges.push((s, t, 1.0));
                        }
                    }
                    None => ground[s] += 1.0,
                }
            }
        }
        GroundedLaplacian::from_edges(self.free.len(), edges, ground).expect("valid unit Laplacian")
    }

    pub fn coords(&self) -> Vec<Option<Point>> {
        self.free.iter().map(|&i| Some(self.domain.point(i))).collect()
    }

    /// Scatters a vector over free vertices to the whole domain (zero on the
    /// Dirichlet set).
    pub fn scatter(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.domain.len()];
        for (s, &i) in self.free.iter().enumerate() {
            out[i] = x[s];
        }
        out
    }
}

/// Reusable factorization answering `G(u, v)` queries, where `G` is the
/// expected number of visits to `v` by the killed walk started at `u`
/// (`G = 4 L^{-1}` with `L` the Dirichlet Laplacian).
#[derive(Debug, Clone)]
pub struct GreenOracle {
    kd: KilledDomain,
    lap: GroundedLaplacian,
    factor: LdlFactor,
}

/// Builds the Green oracle of `domain` with the given Dirichlet mask.
pub fn green_matrix(domain: LatticeBox, dirichlet: Vec<bool>) -> Result<GreenOracle> {
    GreenOracle::new(KilledDomain::new(domain, dirichlet)?)
}

impl GreenOracle {
    pub fn new(kd: KilledDomain) -> Result<Self> {
        let lap = kd.laplacian();
        let factor = LdlFactor::new(&lap, Some(&kd.coords()))?;
        Ok(GreenOracle { kd, lap, factor })
    }

    pub fn killed_domain(&self) -> &KilledDomain {
        &self.kd
    }

    pub fn factor(&self) -> &LdlFactor {
        &self.factor
    }

    pub fn laplacian(&self) -> &GroundedLaplacian {
        &self.lap
    }

    /// `G(., v)` over the whole domain.
    pub fn column(&self, v: Point) -> Result<Vec<f64>> {
        let i = self.kd.domain.index_of(v)?;
        let Some(s) = self.kd.slot(i) else {
            return Ok(vec![0.0; self.kd.domain.len()]);
        };
        let mut b = vec![0.0; self.kd.n_free()];
        b[s] = 4.0;
        Ok(self.kd.scatter(&self.factor.solve(&b)))
    }

    pub fn value(&self, u: Point, v: Point) -> Result<f64> {
        let iu = self.kd.domain.index_of(u)?;
        Ok(self.column(v)?[iu])
    }

    /// Dense Green matrix over the free vertices (row-major), computed by a
    /// dense factorization. Limited to 2500 free vertices.
    pub fn dense(&self) -> Result<Vec<f64>> {
        let n = self.kd.n_free();
        if n > 2500 {
            return Err(Error::ResourceLimit(format!("{n} free vertices exceed the dense limit")));
        }
        let mut g = dense::inverse_spd(&self.lap.to_dense(), n)?;
        g.iter_mut().for_each(|v| *v *= 4.0);
        Ok(g)
    }
}

/// Spectral representation of the Green function of the full box `B(n)`
/// killed on leaving it. The Dirichlet Laplacian separates into sine modes,
/// so every kernel that is a function of it is an explicit double sum.
#[derive(Debug, Clone)]
pub struct BoxSpectrum {
    pub n: i32,
    m: usize,
    /// `sines[j * m + x]`, orthonormal in `x`.
    sines: Vec<f64>,
    /// One-dimensional eigenvalues `2 - 2 cos(pi j / (m + 1))`.
    mu: Vec<f64>,
}

impl BoxSpectrum {
    pub fn new(n: i32) -> Self {
        assert!(n >= 0);
        let m = (2 * n + 1) as usize;
        let h = (m + 1) as f64;
        let scale = (2.0 / h).sqrt();
        let mut sines = vec![0.0; m * m];
        for j in 0..m {
            for x in 0..m {
                sines[j * m + x] = scale * (std::f64::consts::PI * ((j + 1) * (x + 1)) as f64 / h).sin();
            }
        }
        let mu = (0..m).map(|j| 2.0 - 2.0 * (std::f64::consts::PI * (j + 1) as f64 / h).cos()).collect();
        BoxSpectrum { n, m, sines, mu }
    }

    fn coord(&self, c: i32) -> usize {
        (c + self.n) as usize
    }

    /// Eigenvalue of the two-dimensional Laplacian for the mode `(j, k)`.
    pub fn eigenvalue(&self, j: usize, k: usize) -> f64 {
        self.mu[j] + self.mu[k]
    }

    /// `sum_{j,k} w(lambda_jk) phi_jk(u) phi_jk(v)`.
    pub fn kernel(&self, u: Point, v: Point, w: impl Fn(f64) -> f64) -> f64 {
        let (ux, uy, vx, vy) = (self.coord(u.0), self.coord(u.1), self.coord(v.0), self.coord(v.1));
        let m = self.m;
        let mut acc = 0.0;
        for j in 0..m {
            let a = self.sines[j * m + ux] * self.sines[j * m + vx];
            for k in 0..m {
                acc += w(self.eigenvalue(j, k)) * a * self.sines[k * m + uy] * self.sines[k * m + vy];
            }
        }
        acc
    }

    /// Expected visits Green function of `B(n)`.
    pub fn green(&self, u: Point, v: Point) -> f64 {
        self.kernel(u, v, |l| 4.0 / l)
    }

    /// `sum w (phi(u) - phi(u + e1))^2` for every horizontal nearest-neighbour
    /// pair `u, u + e1` inside `B(r)`; returned as `(u, value)` pairs. By the
    /// symmetry of the box the vertical pairs give the transposed values.
    pub fn horizontal_pair_variances(&self, r: i32, w: impl Fn(f64) -> f64) -> Vec<(Point, f64)> {
        let m = self.m;
        let xs: Vec<i32> = (-r..r).collect();
        let ys: Vec<i32> = (-r..=r).collect();
        // weights[j][k]
        let wt: Vec<f64> = (0..m * m).map(|t| w(self.eigenvalue(t / m, t % m))).collect();
        // d2[j][a] = (s_j(a) - s_j(a+1))^2 ; s2[k][b] = s_k(b)^2
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        let s2: Vec<Vec<f64>> =
            (0..m).map(|k| ys.iter().map(|&y| self.sines[k * m + self.coord(y)].powi(2)).collect()).collect();
        for &x in &xs {
            let (a, b) = (self.coord(x), self.coord(x + 1));
            // t[k] = sum_j d2[j] w[j][k]
            let mut t = vec![0.0; m];
            for j in 0..m {
                let d = self.sines[j * m + a] - self.sines[j * m + b];
                let d2 = d * d;
                for k in 0..m {
                    t[k] += d2 * wt[j * m + k];
                }
            }
            for (yi, &y) in ys.iter().enumerate() {
                let v: f64 = (0..m).map(|k| t[k] * s2[k][yi]).sum();
                out.push(((x, y), v));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldlab::DirichletSpec;

    #[test]
    fn single_free_vertex_has_one_visit() {
        let d = LatticeBox::ball(1);
        let g = green_matrix(d, DirichletSpec::Boundary.mask(&d).unwrap()).unwrap();
        assert!((g.value((0, 0), (0, 0)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dirichlet_rows_vanish() {
        let d = LatticeBox::ball(3);
        let g = green_matrix(d, DirichletSpec::Both.mask(&d).unwrap()).unwrap();
        assert!(g.column((0, 0)).unwrap().iter().all(|&v| v == 0.0));
        assert_eq!(g.value((0, 0), (1, 1)).unwrap(), 0.0);
        assert_eq!(g.value((3, 0), (1, 1)).unwrap(), 0.0);
    }

    #[test]
    fn empty_dirichlet_set_is_unpinned() {
        let d = LatticeBox::ball(2);
        assert!(matches!(green_matrix(d, vec![false; d.len()]), Err(Error::Unpinned(_))));
    }

    #[test]
    fn spectral_matches_sparse() {
        let s = BoxSpectrum::new(4);
        let d = LatticeBox::ball(5);
        let g = green_matrix(d, DirichletSpec::Boundary.mask(&d).unwrap()).unwrap();
        for (u, v) in [((0, 0), (0, 0)), ((1, 2), (-3, 0)), ((4, 4), (4, 3))] {
            assert!((s.green(u, v) - g.value(u, v).unwrap()).abs() < 1e-12);
        }
        let pairs = s.horizontal_pair_variances(2, |l| 4.0 / l);
        for ((x, y), v) in pairs {
            let direct = s.green((x, y), (x, y)) + s.green((x + 1, y), (x + 1, y)) - 2.0 * s.green((x, y), (x + 1, y));
            assert!((v - direct).abs() < 1e-12);
        }
    }
}
