//! Independent oracles and fixture generators shared by the integration
//! tests. Nothing here calls the library's solvers.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use rcmlab::enet::Network;
use rcmlab::fieldlab::FieldSample;
use rcmlab::{rng, LatticeBox};

pub fn stream(seed: u64, tag: &str) -> ChaCha8Rng {
    rng::stream(seed, 0, tag)
}

/// Solves the dense system `a x = b` (row-major `n x n`) by Gaussian
/// elimination with partial pivoting.
pub fn dense_solve(mut a: Vec<f64>, mut b: Vec<f64>, n: usize) -> Vec<f64> {
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs())).unwrap();
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            b.swap(k, p);
        }
        let d = a[k * n + k];
        assert!(d.abs() > 1e-300, "singular system");
        for i in k + 1..n {
            let f = a[i * n + k] / d;
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                a[i * n + j] -= f * a[k * n + j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| a[k * n + j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k * n + k];
    }
    x
}

/// Potential equal to 1 on `high`, 0 on `low` and harmonic elsewhere, for
/// an abstract weighted graph.
pub fn dense_potential(n: usize, edges: &[(usize, usize, f64)], high: &[usize], low: &[usize]) -> Vec<f64> {
    let mut fixed = vec![None; n];
    for &v in high {
        fixed[v] = Some(1.0);
    }
    for &v in low {
        fixed[v] = Some(0.0);
    }
    let free: Vec<usize> = (0..n).filter(|&v| fixed[v].is_none()).collect();
    let mut slot = vec![usize::MAX; n];
    for (i, &v) in free.iter().enumerate() {
        slot[v] = i;
    }
    let m = free.len();
    let mut a = vec![0.0; m * m];
    let mut b = vec![0.0; m];
    for &(u, v, c) in edges {
        for (x, y) in [(u, v), (v, u)] {
            if let Some(i) = (slot[x] != usize::MAX).then_some(slot[x]) {
                a[i * m + i] += c;
                match fixed[y] {
                    Some(val) => b[i] += c * val,
                    None => a[i * m + slot[y]] -= c,
                }
            }
        }
    }
    let x = if m > 0 { dense_solve(a, b, m) } else { vec![] };
    (0..n).map(|v| fixed[v].unwrap_or_else(|| x[slot[v]])).collect()
}

/// Effective conductance between vertex sets: current leaving `high` under
/// unit voltage.
pub fn dense_conductance(n: usize, edges: &[(usize, usize, f64)], high: &[usize], low: &[usize]) -> f64 {
    let f = dense_potential(n, edges, high, low);
    let mut is_high = vec![false; n];
    for &v in high {
        is_high[v] = true;
    }
    edges
        .iter()
        .map(|&(u, v, c)| match (is_high[u], is_high[v]) {
            (true, false) => c * (f[u] - f[v]),
            (false, true) => c * (f[v] - f[u]),
            _ => 0.0,
        })
        .sum()
}

/// Connected random graph on `2..=max_n` vertices: a random spanning tree
/// plus extra edges, conductances `exp(U[-3, 3])`.
pub fn random_graph(r: &mut ChaCha8Rng, max_n: usize) -> (usize, Vec<(usize, usize, f64)>) {
    let n = r.random_range(2..=max_n);
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for v in 1..n {
        let u = r.random_range(0..v);
        seen.insert((u, v));
        edges.push((u, v, r.random_range(-3.0..3.0f64).exp()));
    }
    let extra = r.random_range(0..=n);
    for _ in 0..extra {
        let a = r.random_range(0..n);
        let b = r.random_range(0..n);
        let (a, b) = (a.min(b), a.max(b));
        if a != b && seen.insert((a, b)) {
            edges.push((a, b, r.random_range(-3.0..3.0f64).exp()));
        }
    }
    (n, edges)
}

pub fn network_of(n: usize, edges: &[(usize, usize, f64)]) -> Network {
    Network::from_conductances(n, edges).unwrap()
}

/// Edge list of a lattice network in absolute conductances.
pub fn edges_of(net: &Network) -> Vec<(usize, usize, f64)> {
    let off = net.log_offset();
    net.edges()
        .iter()
        .zip(net.log_conductances())
        .map(|(&(a, b), &l)| (a, b, (l - off).exp()))
        .collect()
}

/// Field with i.i.d. `N(0, s^2)` entries on `dom`.
pub fn white_field(r: &mut ChaCha8Rng, dom: LatticeBox, s: f64) -> FieldSample {
    use rand_distr::{Distribution, StandardNormal};
    let vals: Vec<f64> = dom.points().map(|_| {
        let z: f64 = StandardNormal.sample(&mut *r);
        s * z
    }).collect();
    FieldSample::synthetic(dom, |p| vals[dom.index(p).unwrap()])
}

/// Graph distances from `a` (`usize::MAX` when unreachable).
pub fn bfs_distances(n: usize, edges: &[(usize, usize, f64)], a: usize) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v, _) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut dist = vec![usize::MAX; n];
    dist[a] = 0;
    let mut q = std::collections::VecDeque::from([a]);
    while let Some(u) = q.pop_front() {
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
        }
    }
    dist
}

/// `P(S_2T = 0)` for simple random walk on `Z^2`: `(binom(2T, T) / 4^T)^2`.
pub fn srw_return(t: u64) -> f64 {
    let mut p = 1.0f64;
    for k in 1..=t {
        p *= (t + k) as f64 / (4.0 * k as f64);
    }
    p * p
}
