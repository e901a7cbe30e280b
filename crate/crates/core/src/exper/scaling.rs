use rayon::prelude::*;

use crate::enet::GroundedSystem;
use crate::error::{invalid, Error, Result};
use crate::fieldlab::{FieldSample, PinnedWindowSampler};
use crate::lattice::LatticeBox;
use crate::walklab::{exit_network, exit_time, log_volume, return_curve, transition_kernel, Boundary};

use super::config::{ExperimentConfig, Quantity};
use super::report::{reports_from_ledger, LedgerRow, ScalingReport};
use super::with_workers;

/// Reports of a scaling sweep (one per gamma) and the raw values behind them.
#[derive(Debug, Clone)]
pub struct ScalingRun {
    pub reports: Vec<ScalingReport>,
    pub ledger: Vec<LedgerRow>,
}

/// Window on which fields are sampled.
fn field_window(cfg: &ExperimentConfig) -> LatticeBox {
    match cfg.quantity {
        Quantity::Return => LatticeBox::ball(cfg.knobs.return_box),
        _ => LatticeBox::ball(cfg.sizes[cfg.sizes.len() - 1] + 1),
    }
}

/// Log of the measured quantity at every size, for one field and gamma.
fn log_values(cfg: &ExperimentConfig, field: &FieldSample, gamma: f64) -> Vec<Result<f64>> {
    match cfg.quantity {
        Quantity::ExitTime => cfg.sizes.iter().map(|&n| exit_time(field, gamma, n).map(f64::ln)).collect(),
        Quantity::Volume => cfg.sizes.iter().map(|&n| log_volume(field, gamma, n)).collect(),
        Quantity::Resistance => cfg.sizes.iter().map(|&n| log_resistance_to_boundary(cfg, field, gamma, n)).collect(),
        Quantity::Return => {
            let t_max = cfg.sizes[cfg.sizes.len() - 1] as usize;
            let curve = transition_kernel(field, gamma, Boundary::Reflect).and_then(|k| return_curve(&k, t_max));
            match curve {
                Ok(c) => cfg.sizes.iter().map(|&t| Ok((t as f64 * c[2 * t as usize]).ln())).collect(),
                Err(e) => {
                    let msg = e.to_string();
                    cfg.sizes.iter().map(|_| Err(Error::Numerical(msg.clone()))).collect()
                }
            }
        }
        q => vec![Err(Error::InvalidArgument(format!("{} is not a scaling quantity", q.name())))],
    }
}

/// `ln R(0, ∂B(n))` in the network on `B(n+1)`.
pub fn log_resistance_to_boundary(cfg: &ExperimentConfig, field: &FieldSample, gamma: f64, n: i32) -> Result<f64> {
    let net = exit_network(field, gamma, n)?;
    let ground = net.vertices_of(&LatticeBox::ball(n).outer_boundary())?;
    let sys = GroundedSystem::new(&net, &ground, &[], cfg.solver)?;
    let rel = sys.resistance_to_ground(net.vertex_of((0, 0))?)?;
    Ok(net.resistance(rel).ln())
}

/// Runs an exit-time, volume, resistance or return-probability sweep.
/// Every replica draws one pinned-window field which is shared by all gammas
/// and sizes; failures are recorded per replica.
pub fn run_scaling(cfg: &ExperimentConfig) -> Result<ScalingRun> {
    cfg.validate()?;
    if !matches!(cfg.quantity, Quantity::ExitTime | Quantity::Volume | Quantity::Resistance | Quantity::Return) {
        return invalid(format!("{} is not a scaling quantity", cfg.quantity.name()));
    }
    let gammas = cfg.gammas_abs();
    let window = field_window(cfg);
    if cfg.quantity == Quantity::Return && cfg.sizes.iter().any(|&t| t < 1) {
        return invalid("return times must be positive");
    }
    // A flat sweep does not need a field.
    let sampler = if gammas.iter().all(|&g| g == 0.0) {
        None
    } else {
        Some(PinnedWindowSampler::new(window, cfg.margin)?)
    };
    let per_replica: Vec<Vec<Vec<Result<f64>>>> = with_workers(cfg.workers, || {
        (0..cfg.replicas)
            .into_par_iter()
            .map(|r| {
                let field = match &sampler {
                    Some(s) => s.sample(cfg.seed, r),
                    None => FieldSample::constant(window, 0.0),
                };
                gammas.iter().map(|&g| log_values(cfg, &field, g)).collect()
            })
            .collect()
    })?;
    let mut ledger = Vec::new();
    let mut failures = Vec::new();
    for (r, by_gamma) in per_replica.into_iter().enumerate() {
        for (&g, by_size) in gammas.iter().zip(by_gamma) {
            for (&n, v) in cfg.sizes.iter().zip(by_size) {
                match v {
                    Ok(value_log) => ledger.push(LedgerRow { gamma: g, n, replica: r as u64, seed: cfg.seed, value_log }),
                    Err(e) => failures.push((g, format!("N={n} replica={r}: {e}"))),
                }
            }
        }
    }
    let reports = reports_from_ledger(cfg, &ledger, &failures)?;
    Ok(ScalingRun { reports, ledger })
}

pub fn run_exit_time_scaling(cfg: &ExperimentConfig) -> Result<ScalingRun> {
    run_as(cfg, Quantity::ExitTime)
}

pub fn run_volume_scaling(cfg: &ExperimentConfig) -> Result<ScalingRun> {
    run_as(cfg, Quantity::Volume)
}

pub fn run_resistance_scaling(cfg: &ExperimentConfig) -> Result<ScalingRun> {
    run_as(cfg, Quantity::Resistance)
}

pub fn run_return_probability(cfg: &ExperimentConfig) -> Result<ScalingRun> {
    run_as(cfg, Quantity::Return)
}

fn run_as(cfg: &ExperimentConfig, q: Quantity) -> Result<ScalingRun> {
    let mut c = cfg.clone();
    c.quantity = q;
    run_scaling(&c)
}
