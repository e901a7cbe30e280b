use crate::error::{invalid, Error, Result};

use super::network::{LogScaled, Network};

/// Tolerance on the unit normalization of flows passed to energy functions.
pub const UNIT_TOL: f64 = 1e-9;

/// Edge flow from a source set to a sink set. `values[e]` is the flow along
/// the stored orientation `(a, b)` of edge `e`; the reverse orientation
/// carries exactly its negative.
#[derive(Debug, Clone, PartialEq)]
pub struct Flow {
    pub source: Vec<usize>,
    pub sink: Vec<usize>,
    pub values: Vec<f64>,
}

impl Flow {
    pub fn new(source: Vec<usize>, sink: Vec<usize>, values: Vec<f64>) -> Self {
        Flow { source, sink, values }
    }

    /// Flow on edge `e` in the direction leaving `from`.
    pub fn along(&self, net: &Network, e: usize, from: usize) -> f64 {
        if net.edges()[e].0 == from {
            self.values[e]
        } else {
            -self.values[e]
        }
    }

    /// Net out-flux at every vertex.
    pub fn divergence(&self, net: &Network) -> Vec<f64> {
        let mut div = vec![0.0; net.n_vertices()];
        for (e, &(a, b)) in net.edges().iter().enumerate() {
            div[a] += self.values[e];
            div[b] -= self.values[e];
        }
        div
    }

    /// Net flux out of the source set.
    pub fn value(&self, net: &Network) -> f64 {
        let div = self.divergence(net);
        self.source.iter().map(|&v| div[v]).sum()
    }

    /// Largest divergence at a vertex outside the source and sink sets.
    pub fn max_interior_divergence(&self, net: &Network) -> f64 {
        let div = self.divergence(net);
        let mut end = vec![false; net.n_vertices()];
        for &v in self.source.iter().chain(&self.sink) {
            end[v] = true;
        }
        div.iter().zip(&end).filter(|(_, e)| !**e).map(|(d, _)| d.abs()).fold(0.0, f64::max)
    }

    /// Checks unit value and conservation off the endpoint sets.
    pub fn check_unit(&self, net: &Network) -> Result<()> {
        if self.values.len() != net.n_edges() {
            return invalid("flow length differs from the edge count");
        }
        let value = self.value(net);
        if (value - 1.0).abs() > UNIT_TOL {
            return Err(Error::Invariant(format!("flow value {value} is not 1")));
        }
        let div = self.max_interior_divergence(net);
        if div > UNIT_TOL {
            return Err(Error::Invariant(format!("flow has divergence {div:e} off its endpoints")));
        }
        Ok(())
    }
}

/// Vertex potential equal to 1 on `high` and 0 on `low`.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    pub high: Vec<usize>,
    pub low: Vec<usize>,
    pub values: Vec<f64>,
}

impl Potential {
    pub fn new(net: &Network, high: &[usize], low: &[usize], values: Vec<f64>) -> Result<Self> {
        if values.len() != net.n_vertices() {
            return invalid("potential length differs from the vertex count");
        }
        if high.iter().any(|&v| values[v] != 1.0) || low.iter().any(|&v| values[v] != 0.0) {
            return invalid("potential must be exactly 1 on the high set and 0 on the low set");
        }
        Ok(Potential { high: high.to_vec(), low: low.to_vec(), values })
    }

    /// Largest relative imbalance `|sum_w c (F_v - F_w)| / sum_w c` at a
    /// vertex off the boundary sets.
    pub fn harmonic_residual(&self, net: &Network) -> f64 {
        let n = net.n_vertices();
        let mut flux = vec![0.0; n];
        let mut total = vec![0.0; n];
        let c = net.conductances();
        let f = &self.values;
        for (e, &(a, b)) in net.edges().iter().enumerate() {
            let d = c[e] * (f[a] - f[b]);
            flux[a] += d;
            flux[b] -= d;
            total[a] += c[e];
            total[b] += c[e];
        }
        let mut fixed = vec![false; n];
        for &v in self.high.iter().chain(&self.low) {
            fixed[v] = true;
        }
        (0..n)
            .filter(|&v| !fixed[v] && total[v] > 0.0)
            .map(|v| flux[v].abs() / total[v])
            .fold(0.0, f64::max)
    }
}

/// `sum_e r_e theta_e^2` for a unit flow.
pub fn thomson_energy(net: &Network, flow: &Flow) -> Result<LogScaled> {
    flow.check_unit(net)?;
    let e: f64 = flow.values.iter().zip(net.conductances()).map(|(t, c)| t * t / c).sum();
    Ok(net.resistance(e))
}

/// `sum_e c_e (F(e+) - F(e-))^2`.
pub fn dirichlet_energy(net: &Network, pot: &Potential) -> Result<LogScaled> {
    if pot.values.len() != net.n_vertices() {
        return invalid("potential length differs from the vertex count");
    }
    let f = &pot.values;
    let e: f64 = net.edges().iter().zip(net.conductances()).map(|(&(a, b), c)| c * (f[a] - f[b]).powi(2)).sum();
    Ok(net.conductance(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enet::{harmonic_potential, optimal_flow};

    #[test]
    fn four_cycle_flow() {
        let net = Network::from_conductances(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)]).unwrap();
        let f = optimal_flow(&net, &[0], &[1]).unwrap();
        assert!((f.values[0] - 0.75).abs() < 1e-14);
        assert!((f.along(&net, 3, 0) - 0.25).abs() < 1e-14);
        assert!((thomson_energy(&net, &f).unwrap().value() - 0.75).abs() < 1e-14);
        let p = harmonic_potential(&net, &[0], &[1]).unwrap();
        assert!((dirichlet_energy(&net, &p).unwrap().value() - 4.0 / 3.0).abs() < 1e-14);
        assert!(p.harmonic_residual(&net) < 1e-14);
    }

    #[test]
    fn non_unit_flow_is_rejected() {
        let net = Network::from_conductances(2, &[(0, 1, 1.0)]).unwrap();
        let f = Flow::new(vec![0], vec![1], vec![2.0]);
        assert!(matches!(thomson_energy(&net, &f), Err(Error::Invariant(_))));
    }
}
