use crate::error::{invalid, Error, Result};
use crate::lattice::{linf, LatticeBox, Point};
use crate::linalg::SolverKind;

use super::network::{LogScaled, Network};
use super::solve::{harmonic_potential, GroundedSystem};

/// Voltage at node 1 of a three-node network when node 2 is held at 1 and
/// node 3 at 0, from the pairwise resistances: `(R13 + R23 - R12) / (2 R23)`.
pub fn three_node_voltage(r12: f64, r13: f64, r23: f64) -> Result<f64> {
    if !(r23 > 0.0) {
        return invalid("R23 must be positive");
    }
    Ok((r13 + r23 - r12) / (2.0 * r23))
}

/// Resistances among the origin, a vertex `v` and the glued outer boundary
/// of `B(n)`, in the network induced on `B(n+1)`.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryTriple {
    /// `R(0, ∂B(n))`, relative units.
    pub origin: f64,
    /// `R(v, ∂B(n))`.
    pub vertex: f64,
    /// `R(0, v)` with the boundary glued.
    pub between: f64,
    pub log_scale: f64,
}

impl BoundaryTriple {
    /// `R(0,∂) + R(v,∂) - R(0,v)`.
    pub fn difference(&self) -> LogScaled {
        LogScaled::new(self.origin + self.vertex - self.between, self.log_scale)
    }

    /// Voltage at `v` with the origin at 1 and the boundary at 0.
    pub fn voltage(&self) -> f64 {
        (self.origin + self.vertex - self.between) / (2.0 * self.origin)
    }
}

pub fn boundary_triple(net: &Network, v: Point, n: i32) -> Result<BoundaryTriple> {
    let sys_net = boundary_network(net, n)?;
    triple_in(&sys_net, v, n)
}

fn boundary_network(net: &Network, n: i32) -> Result<Network> {
    if n < 1 {
        return invalid("n must be at least 1");
    }
    let (sub, _) = net.induced_by(|p| linf(p) <= n + 1)?;
    if sub.n_vertices() != LatticeBox::ball(n + 1).len() {
        return invalid(format!("network does not contain B({})", n + 1));
    }
    Ok(sub)
}

fn triple_in(net: &Network, v: Point, n: i32) -> Result<BoundaryTriple> {
    if linf(v) > n {
        return Err(Error::OutOfDomain(v));
    }
    let ground = net.vertices_of(&LatticeBox::ball(n).outer_boundary())?;
    let sys = GroundedSystem::new(net, &ground, &[], SolverKind::Direct)?;
    let o = net.vertex_of((0, 0))?;
    let w = net.vertex_of(v)?;
    let col = |x: usize| -> Result<Vec<f64>> {
        Ok(sys.unit_potential(x)?.map(|p| p.0).ok_or_else(|| Error::Numerical("vertex cut off from the boundary".into()))?)
    };
    let g0 = col(o)?;
    let (origin, vertex, between) = if w == o {
        (g0[o], g0[o], 0.0)
    } else {
        let gv = col(w)?;
        let cross = 0.5 * (g0[w] + gv[o]);
        (g0[o], gv[w], g0[o] + gv[w] - 2.0 * cross)
    };
    Ok(BoundaryTriple { origin, vertex, between, log_scale: -net.log_offset() })
}

/// `D(v) = R(0,∂B(n)) + R(v,∂B(n)) - R(0,v)` in the network induced on
/// `B(n+1)` with `∂B(n)` glued.
pub fn resistance_difference_d(net: &Network, v: Point, n: i32) -> Result<LogScaled> {
    Ok(boundary_triple(net, v, n)?.difference())
}

/// Largest gap over `B(n)` between the voltage from resistances and the
/// voltage from a direct harmonic solve.
pub fn voltage_formula_error(net: &Network, n: i32) -> Result<f64> {
    let sub = boundary_network(net, n)?;
    let ground = sub.vertices_of(&LatticeBox::ball(n).outer_boundary())?;
    let direct = harmonic_potential(&sub, &[sub.vertex_of((0, 0))?], &ground)?;
    let sys = GroundedSystem::new(&sub, &ground, &[], SolverKind::Direct)?;
    let o = sub.vertex_of((0, 0))?;
    let g0 = sys.unit_potential(o)?.ok_or_else(|| Error::Numerical("origin cut off".into()))?.0;
    let mut worst = 0.0f64;
    for p in LatticeBox::ball(n).points() {
        let w = sub.vertex_of(p)?;
        let phi = if w == o {
            1.0
        } else {
            let gv = sys.unit_potential(w)?.ok_or_else(|| Error::Numerical("vertex cut off".into()))?.0;
            let t = BoundaryTriple {
                origin: g0[o],
                vertex: gv[w],
                between: g0[o] + gv[w] - (g0[w] + gv[o]),
                log_scale: 0.0,
            };
            t.voltage()
        };
        worst = worst.max((phi - direct.values[w]).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(three_node_voltage(1.0, 2.0, 2.0).unwrap(), 0.75);
        let t = 2.0 / 3.0;
        assert!((three_node_voltage(t, t, t).unwrap() - 0.5).abs() < 1e-15);
        assert!(three_node_voltage(1.0, 1.0, 0.0).is_err());
        // Chain 0 - v - boundary: R(0,∂) = 2, R(v,∂) = 1, R(0,v) = 1.
        assert_eq!(three_node_voltage(1.0, 1.0, 2.0).unwrap(), 0.5);
    }

    #[test]
    fn voltage_matches_direct_solve() {
        let d = LatticeBox::ball(4);
        let f = crate::fieldlab::FieldSample::synthetic(d, |p| ((p.0 * 7 + p.1 * 2) as f64).sin());
        let net = Network::from_field(&f, 1.5).unwrap();
        assert!(voltage_formula_error(&net, 3).unwrap() < 1e-12);
        let t = boundary_triple(&net, (0, 0), 3).unwrap();
        assert!((t.voltage() - 1.0).abs() < 1e-15);
    }
}
