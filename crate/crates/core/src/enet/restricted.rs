use crate::error::{invalid, Error, Result};

use super::decompose::PathFamily;
use super::network::{LogScaled, Network};

/// Relative Frank-Wolfe gap at which the restricted resistance is accepted.
pub const FW_GAP: f64 = 1e-10;
const FW_MAX_ITER: usize = 1_000_000;

/// Effective resistance restricted to a path family: the minimum over path
/// weights `theta_P >= 0` summing to one of `sum_e r_e (sum_{P ∋ e} theta_P)^2`.
pub fn restricted_resistance(net: &Network, fam: &PathFamily) -> Result<LogScaled> {
    Ok(net.resistance(restricted_program(net, fam)?.0))
}

/// Solves the simplex program by pairwise Frank-Wolfe with exact line
/// search. Returns the relative value and the optimal weights.
pub fn restricted_program(net: &Network, fam: &PathFamily) -> Result<(f64, Vec<f64>)> {
    if fam.paths.is_empty() {
        return invalid("empty path family");
    }
    fam.validate(net)?;
    let c = net.conductances();
    let r: Vec<f64> = c.iter().map(|c| 1.0 / c).collect();
    let k = fam.paths.len();
    let paths: Vec<&[usize]> = fam.paths.iter().map(|p| p.edges.as_slice()).collect();

    // Start from the path of least resistance.
    let plen: Vec<f64> = paths.iter().map(|p| p.iter().map(|&e| r[e]).sum()).collect();
    let start = (0..k).min_by(|&a, &b| plen[a].total_cmp(&plen[b])).unwrap();
    let mut theta = vec![0.0; k];
    theta[start] = 1.0;
    let mut x = vec![0.0; net.n_edges()];
    for &e in paths[start] {
        x[e] += 1.0;
    }
    let mut in_path = vec![0i32; net.n_edges()];
    for it in 0..FW_MAX_ITER {
        let f: f64 = x.iter().zip(&r).map(|(x, r)| r * x * x).sum();
        let grad: Vec<f64> = paths.iter().map(|p| 2.0 * p.iter().map(|&e| r[e] * x[e]).sum::<f64>()).collect();
        let s = (0..k).min_by(|&a, &b| grad[a].total_cmp(&grad[b])).unwrap();
        let gap = 2.0 * f - grad[s];
        if gap <= FW_GAP * f {
            return Ok((f, theta));
        }
        let a = (0..k).filter(|&p| theta[p] > 0.0).max_by(|&a, &b| grad[a].total_cmp(&grad[b])).unwrap();
        if a == s {
            return Err(Error::Numerical(format!("Frank-Wolfe stalled at iteration {it} (gap {gap:e})")));
        }
        for &e in paths[s] {
            in_path[e] += 1;
        }
        for &e in paths[a] {
            in_path[e] -= 1;
        }
        // Entries are cleared on first visit so shared edges count once.
        let mut curv = 0.0;
        for &e in paths[s].iter().chain(paths[a]) {
            let d = in_path[e] as f64;
            curv += r[e] * d * d;
            in_path[e] = 0;
        }
        let step = if curv > 0.0 { (-(grad[s] - grad[a]) / (2.0 * curv)).min(theta[a]) } else { theta[a] };
        if step <= 0.0 {
            return Err(Error::Numerical(format!("Frank-Wolfe made no progress (gap {gap:e})")));
        }
        theta[s] += step;
        theta[a] -= step;
        if theta[a] < 1e-300 {
            theta[a] = 0.0;
        }
        for &e in paths[s] {
            x[e] += step;
        }
        for &e in paths[a] {
            x[e] -= step;
        }
    }
    Err(Error::NoConvergence { iterations: FW_MAX_ITER, residual: f64::NAN })
}
