use serde::Serialize;

use crate::enet::{harmonic_potential, voltage_formula_error, GroundedSystem, Network};
use crate::error::{invalid, Error, Result};
use crate::fieldlab::FieldSample;
use crate::lattice::LatticeBox;
use crate::linalg::SolverKind;

use super::kernel::WalkKernel;

/// Exit-time computation for `B(n)` with all identity checks.
#[derive(Debug, Clone, Serialize)]
pub struct HittingReport {
    pub n: i32,
    pub gamma: f64,
    pub field_seed: u64,
    /// `E^0` of the exit time from `B(n)`.
    pub exit_time: f64,
    /// `ln pi(B(n))`.
    pub log_stationary_mass: f64,
    /// `ln R(0, ∂B(n))` in the network on `B(n+1)`.
    pub log_resistance: f64,
    /// `P^v(hit 0 before ∂B(n))` over `B(n)`, row-major.
    pub voltage: Vec<f64>,
    /// `|E^0 tau - R(0,∂) sum_v pi(v) phi(v)|`, relative.
    pub hitting_residual: f64,
    /// `|E^0 tau_∂ + E^∂ tau_0 - R(0,∂) pi(G)|`, relative, with `∂B(n)` glued.
    pub commute_residual: f64,
    /// Largest gap between the voltage from the resistance triple and the
    /// direct solve.
    pub voltage_residual: f64,
}

/// Network on `B(n+1)` from a field covering it.
pub fn exit_network(field: &FieldSample, gamma: f64, n: i32) -> Result<Network> {
    if n < 0 {
        return invalid("n must be nonnegative");
    }
    let outer = LatticeBox::ball(n + 1);
    if !field.domain.contains_box(&outer) {
        return invalid(format!("field does not cover B({})", n + 1));
    }
    let sub = field.restrict(&outer)?;
    Network::from_field(&sub, gamma)
}

/// Expected exit time from `B(n)` started at the origin: solves
/// `sum_w c_vw (h_v - h_w) = pi(v)` on `B(n)` with `h = 0` on `∂B(n)`.
pub fn exit_time(field: &FieldSample, gamma: f64, n: i32) -> Result<f64> {
    let net = exit_network(field, gamma, n)?;
    let (sys, rhs) = exit_system(&net, n)?;
    let h = sys.solve_unknowns(&rhs)?.x;
    Ok(h[sys.unknown(net.vertex_of((0, 0))?).expect("origin is free")])
}

fn exit_system(net: &Network, n: i32) -> Result<(GroundedSystem<'_>, Vec<f64>)> {
    let ground = net.vertices_of(&LatticeBox::ball(n).outer_boundary())?;
    let sys = GroundedSystem::new(net, &ground, &[], SolverKind::Direct)?;
    let mut rhs = vec![0.0; sys.n_unknowns()];
    for (e, &(a, b)) in net.edges().iter().enumerate() {
        let c = net.conductances()[e];
        for v in [a, b] {
            if let Some(i) = sys.unknown(v) {
                rhs[i] += c;
            }
        }
    }
    Ok((sys, rhs))
}

/// Exit time from `B(n)` for the kernel's field plus every identity check.
/// The kernel must be absorbing.
pub fn expected_exit_time_exact(kernel: &WalkKernel, n: i32) -> Result<HittingReport> {
    if kernel.boundary != super::Boundary::Absorb {
        return invalid("exit times need an absorbing kernel");
    }
    let net = exit_network(&kernel.field, kernel.gamma, n)?;
    let o = net.vertex_of((0, 0))?;
    let ball = LatticeBox::ball(n);
    let bd = net.vertices_of(&ball.outer_boundary())?;

    let (sys, rhs) = exit_system(&net, n)?;
    let h = sys.solve_unknowns(&rhs)?.x;
    let h0 = h[sys.unknown(o).unwrap()];

    let sol = crate::enet::solve_pair(&net, &[o], &bd, SolverKind::Direct)?;
    let r = sol.resistance.relative;
    let phi = harmonic_potential(&net, &[o], &bd)?;
    let mut pi = vec![0.0; net.n_vertices()];
    for (e, &(a, b)) in net.edges().iter().enumerate() {
        pi[a] += net.conductances()[e];
        pi[b] += net.conductances()[e];
    }
    let mut weighted = 0.0;
    let mut mass = 0.0;
    let mut voltage = Vec::with_capacity(ball.len());
    for p in ball.points() {
        let v = net.vertex_of(p)?;
        weighted += pi[v] * phi.values[v];
        mass += pi[v];
        voltage.push(phi.values[v]);
    }
    let hitting_residual = (h0 - r * weighted).abs() / h0;

    // Commute time on the network with ∂B(n) glued.
    let back = GroundedSystem::new(&net, &[o], &[&bd], SolverKind::Direct)?;
    let mut inside = vec![false; net.n_vertices()];
    for &v in &bd {
        inside[v] = true;
    }
    let mut rhs = vec![0.0; back.n_unknowns()];
    let mut total = 0.0;
    for (e, &(a, b)) in net.edges().iter().enumerate() {
        if inside[a] && inside[b] {
            continue;
        }
        let c = net.conductances()[e];
        total += 2.0 * c;
        for v in [a, b] {
            if let Some(i) = back.unknown(v) {
                rhs[i] += c;
            }
        }
    }
    let g = back.solve_unknowns(&rhs)?.x;
    let from_bd = g[back.unknown(bd[0]).ok_or_else(|| Error::Numerical("boundary cut off".into()))?];
    let commute = h0 + from_bd;
    let commute_residual = (commute - r * total).abs() / commute;

    let voltage_residual = voltage_formula_error(&net, n)?;
    Ok(HittingReport {
        n,
        gamma: kernel.gamma,
        field_seed: kernel.field.seed,
        exit_time: h0,
        log_stationary_mass: mass.ln() + net.log_offset(),
        log_resistance: sol.resistance.ln(),
        voltage,
        hitting_residual,
        commute_residual,
        voltage_residual,
    })
}
