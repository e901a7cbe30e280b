//! Subtraction-free sparse `LDL^T` factorization of grounded Laplacians.
//!
//! The factorization never forms the diagonal of the matrix. Each pivot is
//! recomputed as "remaining grounding + sum of remaining off-diagonal
//! magnitudes" of the current Schur complement, which is an M-matrix with
//! nonpositive off-diagonals. Every quantity involved is a sum of positive
//! terms, so pivots keep full relative accuracy regardless of the spread of
//! edge weights (the Grassmann–Taksar–Heyman idea applied to elimination).
//! Solves with nonnegative right-hand sides inherit the same property.

use super::ordering;
use super::GroundedLaplacian;
use crate::error::{Error, Result};
use crate::lattice::Point;

/// Factorization `P L P^T = U D U^T` with `U` unit lower triangular.
#[derive(Debug, Clone)]
pub struct LdlFactor {
    n: usize,
    /// `perm[new] = old`.
    perm: Vec<usize>,
    colptr: Vec<usize>,
    rowidx: Vec<u32>,
    lx: Vec<f64>,
    d: Vec<f64>,
}

const NONE: usize = usize::MAX;

impl LdlFactor {
    /// Factors `lap`, ordering by nested dissection when coordinates are
    /// given and by minimum degree otherwise.
    pub fn new(lap: &GroundedLaplacian, coords: Option<&[Option<Point>]>) -> Result<Self> {
        let perm = match coords {
            Some(c) if c.iter().any(|p| p.is_some()) => ordering::nested_dissection(c),
            _ if lap.n() <= 3000 => ordering::minimum_degree(lap),
            _ => (0..lap.n()).collect(),
        };
        Self::with_ordering(lap, perm)
    }

    pub fn with_ordering(lap: &GroundedLaplacian, perm: Vec<usize>) -> Result<Self> {
        let n = lap.n();
        assert_eq!(perm.len(), n, "ordering length mismatch");
        let mut iperm = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            iperm[old] = new;
        }
        let mut aptr = vec![0usize; n + 1];
        for k in 0..n {
            aptr[k + 1] = aptr[k] + lap.degree(perm[k]);
        }
        let mut aidx = vec![0usize; aptr[n]];
        let mut aw = vec![0.0; aptr[n]];
        for k in 0..n {
            for (p, (j, w)) in lap.neighbors(perm[k]).enumerate() {
                aidx[aptr[k] + p] = iperm[j];
                aw[aptr[k] + p] = w;
            }
        }

        // Elimination tree and column counts.
        let mut parent = vec![NONE; n];
        let mut flag = vec![NONE; n];
        let mut count = vec![0usize; n];
        for k in 0..n {
            flag[k] = k;
            for &i0 in &aidx[aptr[k]..aptr[k + 1]] {
                let mut i = i0;
                while i < k && flag[i] != k {
                    if parent[i] == NONE {
                        parent[i] = k;
                    }
                    count[i] += 1;
                    flag[i] = k;
                    i = parent[i];
                }
            }
        }
        let mut colptr = vec![0usize; n + 1];
        for k in 0..n {
            colptr[k + 1] = colptr[k] + count[k];
        }
        let nnz = colptr[n];
        if nnz >= u32::MAX as usize {
            return Err(Error::ResourceLimit(format!("factor would hold {nnz} entries")));
        }

        // Row patterns of every column (rows arrive in increasing order).
        let mut rowidx = vec![0u32; nnz];
        let mut fill: Vec<usize> = colptr[..n].to_vec();
        flag.iter_mut().for_each(|f| *f = NONE);
        for k in 0..n {
            flag[k] = k;
            for &i0 in &aidx[aptr[k]..aptr[k + 1]] {
                let mut i = i0;
                while i < k && flag[i] != k {
                    rowidx[fill[i]] = k as u32;
                    fill[i] += 1;
                    flag[i] = k;
                    i = parent[i];
                }
            }
        }

        // Numeric phase, left-looking.
        let mut lx = vec![0.0; nnz];
        let mut d = vec![0.0; n];
        let mut geff: Vec<f64> = perm.iter().map(|&o| lap.ground()[o]).collect();
        let mut x = vec![0.0; n];
        let mut next: Vec<usize> = colptr[..n].to_vec();
        let mut reach: Vec<usize> = Vec::new();
        flag.iter_mut().for_each(|f| *f = NONE);
        for k in 0..n {
            reach.clear();
            flag[k] = k;
            for p in aptr[k]..aptr[k + 1] {
                let j = aidx[p];
                if j > k {
                    x[j] = -aw[p];
                } else {
                    let mut i = j;
                    while flag[i] != k {
                        flag[i] = k;
                        reach.push(i);
                        i = parent[i];
                    }
                }
            }
            for &i in &reach {
                let pos = next[i];
                debug_assert_eq!(rowidx[pos] as usize, k);
                let f = d[i] * lx[pos];
                for p in pos + 1..colptr[i + 1] {
                    x[rowidx[p] as usize] -= lx[p] * f;
                }
                next[i] = pos + 1;
            }
            let mut off = 0.0;
            for p in colptr[k]..colptr[k + 1] {
                let j = rowidx[p] as usize;
                lx[p] = x[j];
                x[j] = 0.0;
                off -= lx[p];
            }
            let dk = geff[k] + off;
            if !(dk > 0.0) || !dk.is_finite() {
                return Err(Error::Singular(format!(
                    "zero pivot at vertex {}: a component carries no grounding",
                    perm[k]
                )));
            }
            d[k] = dk;
            let gk = geff[k];
            for p in colptr[k]..colptr[k + 1] {
                lx[p] /= dk;
                if gk > 0.0 {
                    geff[rowidx[p] as usize] -= lx[p] * gk;
                }
            }
        }
        Ok(LdlFactor { n, perm, colptr, rowidx, lx, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.lx.len()
    }

    /// Solves `L x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.n);
        let mut z: Vec<f64> = self.perm.iter().map(|&o| b[o]).collect();
        for k in 0..self.n {
            let zk = z[k];
            if zk != 0.0 {
                for p in self.colptr[k]..self.colptr[k + 1] {
                    z[self.rowidx[p] as usize] -= self.lx[p] * zk;
                }
            }
        }
        for k in 0..self.n {
            z[k] /= self.d[k];
        }
        self.back(&mut z);
        let mut x = vec![0.0; self.n];
        for (k, &o) in self.perm.iter().enumerate() {
            x[o] = z[k];
        }
        x
    }

    fn back(&self, z: &mut [f64]) {
        for k in (0..self.n).rev() {
            let mut acc = z[k];
            for p in self.colptr[k]..self.colptr[k + 1] {
                acc -= self.lx[p] * z[self.rowidx[p] as usize];
            }
            z[k] = acc;
        }
    }

    /// Maps i.i.d. standard normals `z` (in factor order) to a centred
    /// Gaussian vector with covariance `L^{-1}`.
    pub fn correlate(&self, z: &[f64]) -> Vec<f64> {
        assert_eq!(z.len(), self.n);
        let mut u: Vec<f64> = z.iter().zip(&self.d).map(|(z, d)| z / d.sqrt()).collect();
        self.back(&mut u);
        let mut x = vec![0.0; self.n];
        for (k, &o) in self.perm.iter().enumerate() {
            x[o] = u[k];
        }
        x
    }

    /// `log det L`.
    pub fn log_det(&self) -> f64 {
        self.d.iter().map(|d| d.ln()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeBox;
    use crate::linalg::dense;
    use rand::{Rng, SeedableRng};

    fn random_grid(n: i32, spread: f64, seed: u64) -> (GroundedLaplacian, Vec<Option<Point>>) {
        let b = LatticeBox::ball(n);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let edges: Vec<_> = b
            .edges()
            .into_iter()
            .map(|(i, j)| (i, j, (rng.random_range(-spread..spread)).exp()))
            .collect();
        let ground: Vec<f64> = b.points().map(|p| if b.is_ring(p) { 1.0 } else { 0.0 }).collect();
        let coords = b.points().map(Some).collect();
        (GroundedLaplacian::from_edges(b.len(), edges, ground).unwrap(), coords)
    }

    #[test]
    fn matches_dense_solve() {
        let (lap, coords) = random_grid(5, 3.0, 1);
        let f = LdlFactor::new(&lap, Some(&coords)).unwrap();
        let b: Vec<f64> = (0..lap.n()).map(|i| (i as f64 * 0.37).sin()).collect();
        let x = f.solve(&b);
        let y = dense::solve_spd(&lap.to_dense(), lap.n(), &b).unwrap();
        for (a, c) in x.iter().zip(&y) {
            assert!((a - c).abs() <= 1e-10 * (1.0 + c.abs()));
        }
        assert!(lap.relative_residual(&x, &b) < 1e-12);
    }

    #[test]
    fn minimum_degree_path() {
        let (lap, _) = random_grid(3, 1.0, 2);
        let f = LdlFactor::new(&lap, None).unwrap();
        let b = vec![1.0; lap.n()];
        assert!(lap.relative_residual(&f.solve(&b), &b) < 1e-12);
    }

    #[test]
    fn series_chain_is_exact_under_extreme_contrast() {
        // Path 0 - 1 - 2 - 3 grounded at 3 with weights 1e-30, 1, 1e30.
        let w = [1e-30, 1.0, 1e30];
        let lap = GroundedLaplacian::from_edges(4, (0..3).map(|i| (i, i + 1, w[i])), vec![0.0, 0.0, 0.0, 1.0])
            .unwrap();
        for perm in [vec![0, 1, 2, 3], vec![3, 2, 1, 0], vec![1, 3, 0, 2]] {
            let f = LdlFactor::with_ordering(&lap, perm).unwrap();
            let x = f.solve(&[1.0, 0.0, 0.0, 0.0]);
            let exact = 1e30 + 1.0 + 1e-30 + 1.0;
            assert!((x[0] - exact).abs() <= 1e-14 * exact);
        }
    }

    #[test]
    fn floating_component_is_singular() {
        let lap = GroundedLaplacian::from_edges(3, vec![(0, 1, 1.0)], vec![0.0, 0.0, 1.0]).unwrap();
        assert!(matches!(LdlFactor::new(&lap, None), Err(Error::Singular(_))));
    }
}
