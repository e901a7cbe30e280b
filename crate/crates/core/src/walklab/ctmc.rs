use crate::error::{invalid, Error, Result};
use crate::fieldlab::FieldSample;
use crate::lattice::{add, LatticeBox, DIRS};

use super::kernel::{stationary_measure, Boundary, WalkKernel};

/// Jump rates of a continuous-time chain on a box, per direction.
#[derive(Debug, Clone)]
pub struct Generator {
    pub domain: LatticeBox,
    pub theta: f64,
    rates: Vec<[f64; 4]>,
}

impl Generator {
    pub fn rates(&self, i: usize) -> &[f64; 4] {
        &self.rates[i]
    }

    /// Largest `|(pi Q)(y)| / (pi(y) q(y))` for a vertex measure `pi`
    /// (zero for a stationary measure).
    pub fn stationarity_residual(&self, pi: &[f64]) -> f64 {
        let dom = self.domain;
        let mut flow_in = vec![0.0; dom.len()];
        let mut out = vec![0.0; dom.len()];
        for (i, p) in dom.points().enumerate() {
            for (k, &d) in DIRS.iter().enumerate() {
                let r = self.rates[i][k];
                if r > 0.0 {
                    let j = dom.index(add(p, d)).unwrap();
                    flow_in[j] += pi[i] * r;
                    out[i] += pi[i] * r;
                }
            }
        }
        (0..dom.len()).map(|i| (flow_in[i] - out[i]).abs() / out[i].max(f64::MIN_POSITIVE)).fold(0.0, f64::max)
    }
}

/// Liouville random walk on a reflecting box: rate `1 / (4 pi(x))` to each
/// in-domain neighbour.
pub fn lrw_kernel(field: &FieldSample, gamma: f64) -> Result<Generator> {
    interpolated_generator(field, gamma, 1.0)
}

/// `theta` times the Liouville generator plus `1 - theta` times the jump
/// chain of the conductance walk, both with reflecting boundary.
pub fn interpolated_generator(field: &FieldSample, gamma: f64, theta: f64) -> Result<Generator> {
    if !(0.0..=1.0).contains(&theta) {
        return invalid(format!("theta = {theta} outside [0, 1]"));
    }
    let k = WalkKernel::new(field, gamma, Boundary::Reflect)?;
    let pi = stationary_measure(field, gamma)?;
    let dom = field.domain;
    let scale = (-pi.log_offset).exp();
    let mut rates = vec![[0.0; 4]; dom.len()];
    for (i, p) in dom.points().enumerate() {
        let lrw = scale / (4.0 * pi.weights[i]);
        if theta > 0.0 && !lrw.is_finite() {
            return Err(Error::Numerical("Liouville rate overflows".into()));
        }
        for (kk, &d) in DIRS.iter().enumerate() {
            if dom.contains(add(p, d)) {
                rates[i][kk] = theta * lrw + (1.0 - theta) * k.row(i)[kk];
            }
        }
    }
    Ok(Generator { domain: dom, theta, rates })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_lrw_is_uniform() {
        let g = lrw_kernel(&FieldSample::constant(LatticeBox::ball(3), 0.0), 1.0).unwrap();
        let i = LatticeBox::ball(3).index_of((0, 0)).unwrap();
        assert_eq!(g.rates(i), &[1.0 / 16.0; 4]);
    }

    #[test]
    fn endpoints_and_stationarity() {
        let d = LatticeBox::ball(4);
        let f = FieldSample::synthetic(d, |p| ((p.0 * 2 + p.1 * 5) as f64).sin());
        let k = WalkKernel::new(&f, 1.0, Boundary::Reflect).unwrap();
        let g0 = interpolated_generator(&f, 1.0, 0.0).unwrap();
        for i in 0..d.len() {
            assert_eq!(g0.rates(i), k.row(i));
        }
        let pi = stationary_measure(&f, 1.0).unwrap().weights;
        for theta in [0.0, 0.5, 1.0] {
            let g = interpolated_generator(&f, 1.0, theta).unwrap();
            assert!(g.stationarity_residual(&pi) < 1e-10);
        }
        assert!(interpolated_generator(&f, 1.0, 1.5).is_err());
    }
}
