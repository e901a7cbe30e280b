use crate::error::{invalid, Result};

/// Weighted graph Laplacian plus a nonnegative grounding diagonal, stored as
/// a symmetric adjacency structure without its diagonal.
///
/// The operator is `(L x)_i = g_i x_i + sum_j w_ij (x_i - x_j)`.
#[derive(Debug, Clone)]
pub struct GroundedLaplacian {
    n: usize,
    ptr: Vec<usize>,
    idx: Vec<u32>,
    w: Vec<f64>,
    ground: Vec<f64>,
}

impl GroundedLaplacian {
    /// Builds the operator from undirected weighted edges (parallel edges are
    /// merged, self loops ignored) and per-vertex grounding conductances.
    pub fn from_edges<I>(n: usize, edges: I, ground: Vec<f64>) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if ground.len() != n {
            return invalid("ground vector length mismatch");
        }
        if ground.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
            return invalid("grounding conductances must be finite and nonnegative");
        }
        let mut list: Vec<(u32, u32, f64)> = Vec::new();
        for (a, b, w) in edges {
            if a >= n || b >= n {
                return invalid("edge endpoint out of range");
            }
            if !(w.is_finite() && w >= 0.0) {
                return invalid(format!("edge weight {w} is not finite and nonnegative"));
            }
            if a == b || w == 0.0 {
                continue;
            }
            list.push((a as u32, b as u32, w));
            list.push((b as u32, a as u32, w));
        }
        list.sort_unstable_by_key(|&(a, b, _)| (a, b));
        let mut ptr = vec![0usize; n + 1];
        let mut idx = Vec::with_capacity(list.len());
        let mut w = Vec::with_capacity(list.len());
        let mut last: Option<(u32, u32)> = None;
        for (a, b, c) in list {
            if last == Some((a, b)) {
                *w.last_mut().unwrap() += c;
                continue;
            }
            last = Some((a, b));
            idx.push(b);
            w.push(c);
            ptr[a as usize + 1] += 1;
        }
        for i in 0..n {
            ptr[i + 1] += ptr[i];
        }
        Ok(GroundedLaplacian { n, ptr, idx, w, ground })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> &[f64] {
        &self.ground
    }

    /// Neighbours of `i` with their weights.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        (self.ptr[i]..self.ptr[i + 1]).map(move |p| (self.idx[p] as usize, self.w[p]))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.ptr[i + 1] - self.ptr[i]
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.ground[i] + self.neighbors(i).map(|(_, w)| w).sum::<f64>())
            .collect()
    }

    /// `y = L x`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        for i in 0..self.n {
            let mut acc = self.ground[i] * x[i];
            for (j, w) in self.neighbors(i) {
                acc += w * (x[i] - x[j]);
            }
            y[i] = acc;
        }
    }

    pub fn relative_residual(&self, x: &[f64], b: &[f64]) -> f64 {
        let mut y = vec![0.0; self.n];
        self.apply(x, &mut y);
        let num = y.iter().zip(b).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let den = b.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if den == 0.0 {
            num
        } else {
            num / den
        }
    }

    /// Dense row-major copy (small systems only).
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        let d = self.diag();
        for i in 0..n {
            a[i * n + i] = d[i];
            for (j, w) in self.neighbors(i) {
                a[i * n + j] -= w;
            }
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_parallel_edges() {
        let l = GroundedLaplacian::from_edges(2, vec![(0, 1, 1.0), (1, 0, 2.0)], vec![1.0, 0.0]).unwrap();
        assert_eq!(l.neighbors(0).collect::<Vec<_>>(), vec![(1, 3.0)]);
        assert_eq!(l.diag(), vec![4.0, 3.0]);
    }
}
