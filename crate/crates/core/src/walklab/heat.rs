use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lattice::{add, LatticeBox, Point, DIRS};

use super::kernel::WalkKernel;

/// Largest domain the exact heat-kernel iteration will allocate.
pub const HEAT_LIMIT: usize = 1 << 26;

/// Heat-kernel JSON report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatKernelReport {
    #[serde(rename = "T")]
    pub t: u64,
    pub p_return: f64,
    pub field_seed: u64,
    pub gamma: f64,
}

/// Distribution after `steps` kernel applications to the point mass at
/// `start`. In absorbing mode mass stepping onto the ring is removed.
pub fn evolve(kernel: &WalkKernel, start: Point, steps: usize, mut each: impl FnMut(usize, &[f64])) -> Result<Vec<f64>> {
    let dom = kernel.domain();
    if dom.len() > HEAT_LIMIT {
        return Err(Error::ResourceLimit(format!("{} sites exceed the heat-kernel limit", dom.len())));
    }
    let s = dom.index_of(start)?;
    if !kernel.is_live(s) {
        return invalid(format!("start {start:?} is not a state of the walk"));
    }
    let mut mass = vec![0.0; dom.len()];
    let mut next = vec![0.0; dom.len()];
    mass[s] = 1.0;
    // Support stays inside a box growing by one site per step.
    let mut sup = LatticeBox::new(start.0, start.0, start.1, start.1)?;
    each(0, &mass);
    for t in 1..=steps {
        let grown = LatticeBox::new(
            (sup.x0 - 1).max(dom.x0),
            (sup.x1 + 1).min(dom.x1),
            (sup.y0 - 1).max(dom.y0),
            (sup.y1 + 1).min(dom.y1),
        )?;
        for p in grown.points() {
            next[dom.index(p).unwrap()] = 0.0;
        }
        for p in sup.points() {
            let i = dom.index(p).unwrap();
            let m = mass[i];
            if m == 0.0 || !kernel.is_live(i) {
                continue;
            }
            let row = kernel.row(i);
            for (k, &d) in DIRS.iter().enumerate() {
                if row[k] > 0.0 {
                    let j = dom.index(add(p, d)).unwrap();
                    if kernel.is_live(j) {
                        next[j] += m * row[k];
                    }
                }
            }
        }
        std::mem::swap(&mut mass, &mut next);
        for p in sup.points() {
            let i = dom.index(p).unwrap();
            if !grown.contains(p) {
                mass[i] = 0.0;
            }
        }
        sup = grown;
        each(t, &mass);
    }
    Ok(mass)
}

/// `P^0(X_{2T} = 0)` by exact iteration.
pub fn return_probability_exact(kernel: &WalkKernel, t: usize) -> Result<f64> {
    let dom = kernel.domain();
    let o = dom.index_of((0, 0))?;
    Ok(evolve(kernel, (0, 0), 2 * t, |_, _| {})?[o])
}

/// `P^0(X_k = 0)` for `k = 0..=2T`.
pub fn return_curve(kernel: &WalkKernel, t: usize) -> Result<Vec<f64>> {
    let o = kernel.domain().index_of((0, 0))?;
    let mut out = Vec::with_capacity(2 * t + 1);
    evolve(kernel, (0, 0), 2 * t, |_, m| out.push(m[o]))?;
    Ok(out)
}

/// `(C(2T, T) / 4^T)^2`, the simple random walk return probability.
pub fn simple_walk_return(t: u64) -> f64 {
    // Product form avoids overflow: C(2T,T)/4^T = prod_{k=1}^T (2k-1)/(2k).
    let p: f64 = (1..=t).map(|k| (2 * k - 1) as f64 / (2 * k) as f64).product();
    p * p
}
