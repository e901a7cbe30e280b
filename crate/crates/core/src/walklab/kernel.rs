use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::fieldlab::FieldSample;
use crate::lattice::{add, LatticeBox, Point, DIRS};

/// Behaviour at the edge of the field's domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// States are the domain minus its outer ring; stepping onto the ring
    /// ends the walk.
    #[default]
    Absorb,
    /// Steps leaving the domain are removed and the rest renormalized.
    Reflect,
}

/// Nearest-neighbour transition probabilities `p(u, u + DIRS[k])`
/// proportional to `exp(gamma (eta_v - eta_u))`.
#[derive(Debug, Clone)]
pub struct WalkKernel {
    pub field: FieldSample,
    pub gamma: f64,
    pub boundary: Boundary,
    probs: Vec<[f64; 4]>,
    live: Vec<bool>,
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return invalid(format!("gamma = {gamma} must be finite and nonnegative"));
    }
    Ok(())
}

/// Kernel of the walk among the conductances of `field`.
pub fn transition_kernel(field: &FieldSample, gamma: f64, boundary: Boundary) -> Result<WalkKernel> {
    WalkKernel::new(field, gamma, boundary)
}

impl WalkKernel {
    /// Builds the kernel from field gradients.
    pub fn new(field: &FieldSample, gamma: f64, boundary: Boundary) -> Result<Self> {
        check_gamma(gamma)?;
        let dom = field.domain;
        let live = live_states(&dom, boundary)?;
        let eta = &field.values;
        let mut probs = vec![[0.0; 4]; dom.len()];
        for (i, p) in dom.points().enumerate() {
            if !live[i] {
                continue;
            }
            let mut w = [f64::NEG_INFINITY; 4];
            for (k, &d) in DIRS.iter().enumerate() {
                if let Some(j) = dom.index(add(p, d)) {
                    w[k] = gamma * (eta[j] - eta[i]);
                }
            }
            probs[i] = normalize(w);
        }
        Ok(WalkKernel { field: field.clone(), gamma, boundary, probs, live })
    }

    /// Builds the kernel as `c_uv / sum_w c_uw` from the stored network
    /// conductances; agrees with [`WalkKernel::new`] to rounding.
    pub fn via_conductances(field: &FieldSample, gamma: f64, boundary: Boundary) -> Result<Self> {
        check_gamma(gamma)?;
        let dom = field.domain;
        let live = live_states(&dom, boundary)?;
        let eta = &field.values;
        let top = field.max();
        let mut probs = vec![[0.0; 4]; dom.len()];
        for (i, p) in dom.points().enumerate() {
            if !live[i] {
                continue;
            }
            let mut c = [0.0; 4];
            for (k, &d) in DIRS.iter().enumerate() {
                if let Some(j) = dom.index(add(p, d)) {
                    c[k] = (gamma * ((eta[i] - top) + (eta[j] - top))).exp();
                }
            }
            let s: f64 = c.iter().sum();
            probs[i] = c.map(|v| v / s);
        }
        Ok(WalkKernel { field: field.clone(), gamma, boundary, probs, live })
    }

    pub fn domain(&self) -> LatticeBox {
        self.field.domain
    }

    /// Whether the walk can sit at domain index `i`.
    pub fn is_live(&self, i: usize) -> bool {
        self.live[i]
    }

    pub fn row(&self, i: usize) -> &[f64; 4] {
        &self.probs[i]
    }

    pub fn prob(&self, u: Point, v: Point) -> f64 {
        let dom = self.domain();
        let Some(i) = dom.index(u) else { return 0.0 };
        DIRS.iter().position(|&d| add(u, d) == v).map_or(0.0, |k| self.probs[i][k])
    }

    /// Largest `|sum_v p(u,v) - 1|` over live states.
    pub fn row_sum_error(&self) -> f64 {
        (0..self.probs.len())
            .filter(|&i| self.live[i])
            .map(|i| (self.probs[i].iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Largest relative violation of `pi(u) p(u,v) = pi(v) p(v,u)` over
    /// pairs of live states, with `pi` the in-domain conductance sum.
    pub fn detailed_balance_error(&self) -> f64 {
        let dom = self.domain();
        let pi = stationary_measure(&self.field, self.gamma).expect("valid gamma");
        let mut worst = 0.0f64;
        for (i, p) in dom.points().enumerate() {
            if !self.live[i] {
                continue;
            }
            for (k, &d) in DIRS.iter().enumerate() {
                let q = add(p, d);
                let Some(j) = dom.index(q) else { continue };
                if !self.live[j] {
                    continue;
                }
                let back = DIRS.iter().position(|&e| add(q, e) == p).unwrap();
                let a = pi.weights[i] * self.probs[i][k];
                let b = pi.weights[j] * self.probs[j][back];
                worst = worst.max((a - b).abs() / a.max(b));
            }
        }
        worst
    }
}

fn live_states(dom: &LatticeBox, boundary: Boundary) -> Result<Vec<bool>> {
    match boundary {
        Boundary::Reflect => {
            if dom.len() < 2 {
                return invalid("a reflecting walk needs at least two sites");
            }
            Ok(vec![true; dom.len()])
        }
        Boundary::Absorb => {
            if dom.width() < 3 || dom.height() < 3 {
                return invalid("an absorbing walk needs an interior");
            }
            Ok(dom.points().map(|p| !dom.is_ring(p)).collect())
        }
    }
}

/// Softmax of log-weights, `-inf` marking missing neighbours.
fn normalize(w: [f64; 4]) -> [f64; 4] {
    let m = w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let e = w.map(|x| if x == f64::NEG_INFINITY { 0.0 } else { (x - m).exp() });
    let s: f64 = e.iter().sum();
    e.map(|x| x / s)
}

/// Vertex weights `pi(u) = sum_{v ~ u} exp(gamma (eta_u + eta_v))` over
/// in-domain neighbours, stored relative to `exp(log_offset)` with
/// `log_offset = 2 gamma max eta`.
#[derive(Debug, Clone)]
pub struct StationaryMeasure {
    pub domain: LatticeBox,
    pub weights: Vec<f64>,
    pub log_offset: f64,
}

impl StationaryMeasure {
    /// Natural log of the total mass of `set`.
    pub fn log_mass(&self, set: impl IntoIterator<Item = Point>) -> Result<f64> {
        let mut s = 0.0;
        for p in set {
            s += self.weights[self.domain.index_of(p)?];
        }
        Ok(s.ln() + self.log_offset)
    }

    pub fn log_weight(&self, p: Point) -> Result<f64> {
        Ok(self.weights[self.domain.index_of(p)?].ln() + self.log_offset)
    }
}

/// Stationary measure of the walk. Vertices whose neighbours all lie in the
/// domain get the full lattice value; ring vertices get the reflecting-walk
/// value.
pub fn stationary_measure(field: &FieldSample, gamma: f64) -> Result<StationaryMeasure> {
    check_gamma(gamma)?;
    let dom = field.domain;
    let eta = &field.values;
    let top = field.max();
    let weights = dom
        .points()
        .enumerate()
        .map(|(i, p)| {
            DIRS.iter()
                .filter_map(|&d| dom.index(add(p, d)))
                .map(|j| (gamma * ((eta[i] - top) + (eta[j] - top))).exp())
                .sum()
        })
        .collect();
    Ok(StationaryMeasure { domain: dom, weights, log_offset: 2.0 * gamma * top })
}

/// `ln pi(B(n))`; the field must cover `B(n+1)`.
pub fn log_volume(field: &FieldSample, gamma: f64, n: i32) -> Result<f64> {
    let ball = LatticeBox::ball(n);
    if !field.domain.contains_box(&ball.grow(1)?) {
        return invalid(format!("field does not cover B({})", n + 1));
    }
    stationary_measure(field, gamma)?.log_mass(ball.points())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_and_tilted() {
        let d = LatticeBox::ball(2);
        let k = transition_kernel(&FieldSample::constant(d, 0.0), 1.0, Boundary::Absorb).unwrap();
        assert_eq!(k.prob((0, 0), (1, 0)), 0.25);
        let f = FieldSample::synthetic(d, |p| if p == (1, 0) { 1.0 } else if p == (0, 0) { 0.3 } else { 0.0 });
        let k = transition_kernel(&f, 1.0, Boundary::Absorb).unwrap();
        let e = 1f64.exp();
        assert!((k.prob((0, 0), (1, 0)) - e / (e + 3.0)).abs() < 1e-15);
    }

    #[test]
    fn gradient_and_conductance_forms_agree() {
        let d = LatticeBox::ball(4);
        let f = FieldSample::synthetic(d, |p| ((p.0 * 3 + p.1 * 7) as f64).sin() * 2.0);
        for b in [Boundary::Absorb, Boundary::Reflect] {
            let a = WalkKernel::new(&f, 1.2, b).unwrap();
            let c = WalkKernel::via_conductances(&f, 1.2, b).unwrap();
            for i in 0..d.len() {
                for k in 0..4 {
                    assert!((a.row(i)[k] - c.row(i)[k]).abs() < 1e-14);
                }
            }
            assert!(a.row_sum_error() < 1e-12);
            assert!(a.detailed_balance_error() < 1e-12);
        }
    }

    #[test]
    fn dyadic_shift_is_bit_exact() {
        let d = LatticeBox::ball(3);
        let f = FieldSample::synthetic(d, |p| (p.0 * 5 - p.1) as f64 / 16.0);
        let a = WalkKernel::new(&f, 0.9, Boundary::Reflect).unwrap();
        let b = WalkKernel::new(&f.map(|v| v + 2.0), 0.9, Boundary::Reflect).unwrap();
        assert_eq!(a.probs, b.probs);
        let g = f.map(|v| v + 0.1);
        let c = WalkKernel::new(&g, 0.9, Boundary::Reflect).unwrap();
        for i in 0..d.len() {
            for k in 0..4 {
                assert!((a.row(i)[k] - c.row(i)[k]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn flat_measure() {
        let d = LatticeBox::ball(2);
        let m = stationary_measure(&FieldSample::constant(d, 0.0), 1.0).unwrap();
        assert_eq!(m.weights[d.index_of((0, 0)).unwrap()], 4.0);
        assert_eq!(m.weights[d.index_of((2, 2)).unwrap()], 2.0);
        let v = log_volume(&FieldSample::constant(d, 0.0), 1.0, 1).unwrap();
        assert!((v - 36f64.ln()).abs() < 1e-15);
    }
}
