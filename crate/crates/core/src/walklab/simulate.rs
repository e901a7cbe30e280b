use rand::Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::lattice::{add, LatticeBox, Point, DIRS};
use crate::rng;

use super::ctmc::Generator;
use super::kernel::{Boundary, WalkKernel};

/// Which process produced a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type", content = "theta")]
pub enum WalkType {
    Conductance,
    Lrw,
    Interpolated(f64),
}

/// Sampled path: `(t, position)` per step. Discrete walks use integer times;
/// continuous-time chains record jump times.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord {
    pub seed: u64,
    pub boundary: Boundary,
    pub walk: WalkType,
    pub steps: Vec<(f64, Point)>,
}

impl TrajectoryRecord {
    pub fn positions(&self) -> impl Iterator<Item = Point> + '_ {
        self.steps.iter().map(|s| s.1)
    }

    /// Visit counts over `dom`, row-major; positions outside are ignored.
    pub fn occupation(&self, dom: &LatticeBox) -> Vec<u64> {
        let mut h = vec![0u64; dom.len()];
        for p in self.positions() {
            if let Some(i) = dom.index(p) {
                h[i] += 1;
            }
        }
        h
    }

    /// Whether consecutive positions are lattice neighbours.
    pub fn is_nearest_neighbour(&self) -> bool {
        self.steps.windows(2).all(|w| crate::lattice::l1((w[1].1 .0 - w[0].1 .0, w[1].1 .1 - w[0].1 .1)) == 1)
    }
}

/// Stream tag for walk simulation.
pub const WALK_TAG: &str = "walk";

/// Runs the discrete-time walk for `steps` steps (stopping early when an
/// absorbing walk reaches the ring).
pub fn simulate_walk(kernel: &WalkKernel, start: Point, steps: usize, seed: u64) -> Result<TrajectoryRecord> {
    simulate_walk_replica(kernel, start, steps, seed, 0)
}

pub fn simulate_walk_replica(
    kernel: &WalkKernel,
    start: Point,
    steps: usize,
    seed: u64,
    replica: u64,
) -> Result<TrajectoryRecord> {
    let dom = kernel.domain();
    let mut i = dom.index_of(start)?;
    if !kernel.is_live(i) {
        return invalid(format!("start {start:?} is not a state of the walk"));
    }
    let mut rng = rng::stream(seed, replica, WALK_TAG);
    let mut p = start;
    let mut out = Vec::with_capacity(steps + 1);
    out.push((0.0, p));
    for t in 1..=steps {
        let k = pick(kernel.row(i), rng.random::<f64>());
        p = add(p, DIRS[k]);
        i = dom.index(p).expect("kernel only points into the domain");
        out.push((t as f64, p));
        if !kernel.is_live(i) {
            break;
        }
    }
    Ok(TrajectoryRecord { seed, boundary: kernel.boundary, walk: WalkType::Conductance, steps: out })
}

fn pick(w: &[f64; 4], u: f64) -> usize {
    let total: f64 = w.iter().sum();
    let mut acc = 0.0;
    let mut last = 0;
    for (k, &x) in w.iter().enumerate() {
        if x > 0.0 {
            acc += x;
            last = k;
            if u * total < acc {
                return k;
            }
        }
    }
    last
}

/// Runs a continuous-time chain for `jumps` jumps: exponential holding with
/// the total rate at the current site, then a jump chosen by rate.
pub fn simulate_ctmc(generator: &Generator, start: Point, jumps: usize, seed: u64) -> Result<TrajectoryRecord> {
    let dom = generator.domain;
    let mut i = dom.index_of(start)?;
    let mut rng = rng::stream(seed, 0, "ctmc");
    let mut p = start;
    let mut t = 0.0;
    let mut out = Vec::with_capacity(jumps + 1);
    out.push((0.0, p));
    for _ in 0..jumps {
        let row = generator.rates(i);
        let total: f64 = row.iter().sum();
        if !(total > 0.0) {
            break;
        }
        t += Exp::new(total).expect("positive rate").sample(&mut rng);
        let k = pick(row, rng.random::<f64>());
        p = add(p, DIRS[k]);
        i = dom.index(p).expect("generator only points into the domain");
        out.push((t, p));
    }
    let walk = if generator.theta == 1.0 { WalkType::Lrw } else { WalkType::Interpolated(generator.theta) };
    Ok(TrajectoryRecord { seed, boundary: Boundary::Reflect, walk, steps: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldlab::FieldSample;

    #[test]
    fn zero_steps_and_determinism() {
        let f = FieldSample::synthetic(LatticeBox::ball(5), |p| p.0 as f64 * 0.2);
        let k = WalkKernel::new(&f, 1.0, Boundary::Reflect).unwrap();
        assert_eq!(simulate_walk(&k, (0, 0), 0, 3).unwrap().steps, vec![(0.0, (0, 0))]);
        let a = simulate_walk(&k, (0, 0), 500, 3).unwrap();
        assert_eq!(a, simulate_walk(&k, (0, 0), 500, 3).unwrap());
        assert!(a.is_nearest_neighbour());
        assert!(a.positions().all(|p| LatticeBox::ball(5).contains(p)));
    }

    #[test]
    fn absorbing_walk_stops_on_the_ring() {
        let k = WalkKernel::new(&FieldSample::constant(LatticeBox::ball(2), 0.0), 0.0, Boundary::Absorb).unwrap();
        let t = simulate_walk(&k, (0, 0), 10_000, 1).unwrap();
        let last = t.steps.last().unwrap().1;
        assert!(LatticeBox::ball(2).is_ring(last));
        assert!(t.steps[..t.steps.len() - 1].iter().all(|s| !LatticeBox::ball(2).is_ring(s.1)));
    }
}
