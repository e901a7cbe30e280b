//! Sweeps over `(gamma, N, replica)`, exponent fits and reports.

pub mod config;
pub mod crossing;
pub mod fit;
pub mod levels;
pub mod report;
pub mod scaling;

pub use config::{ExperimentConfig, GammaUnit, Knobs, Quantity};
pub use crossing::{
    estimate_crossing_quantile, quantile_threshold_log, run_concentration, run_crossing_duality, ConcentrationReport,
    DualityReport, QuantileReport,
};
pub use fit::{exponent_fit, fit_line, median, summarize, Fit, Summary};
pub use levels::{
    level_set_frequencies, lil_walk_count, run_level_set_concentration, run_lil_check, LevelSetConcentration, LilReport,
};
pub use report::{ledger_csv, parse_ledger, reports_from_ledger, LedgerRow, PerSize, ReturnWindow, ScalingReport};
pub use scaling::{
    run_exit_time_scaling, run_resistance_scaling, run_return_probability, run_scaling, run_volume_scaling,
    ScalingRun,
};

use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// `sqrt(pi / 2)`.
pub const GAMMA_C: f64 = 1.253_314_137_315_500_3;

/// `2 + 2 (gamma / gamma_c)^2` up to `gamma_c`, `4 gamma / gamma_c` beyond.
pub fn psi_exponent(gamma: f64) -> Result<f64> {
    if !(gamma >= 0.0) || !gamma.is_finite() {
        return invalid(format!("gamma = {gamma} must be finite and nonnegative"));
    }
    let r = gamma / GAMMA_C;
    Ok(if r <= 1.0 { 2.0 + 2.0 * r * r } else { 4.0 * r })
}

/// Runs `f` on a dedicated pool when a worker count is given.
pub(crate) fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Output of [`run`], serialized untagged.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ExperimentOutput {
    Scaling(Vec<ScalingReport>),
    Duality(Vec<DualityReport>),
    Concentration(Vec<ConcentrationReport>),
    LevelSet(Vec<LevelSetConcentration>),
    Lil(LilReport),
    Quantile(Vec<QuantileReport>),
}

/// Dispatches on the configured quantity. Scaling runs also return their
/// ledger.
pub fn run(cfg: &ExperimentConfig) -> Result<(ExperimentOutput, Option<Vec<LedgerRow>>)> {
    Ok(match cfg.quantity {
        Quantity::ExitTime | Quantity::Volume | Quantity::Resistance | Quantity::Return => {
            let r = run_scaling(cfg)?;
            (ExperimentOutput::Scaling(r.reports), Some(r.ledger))
        }
        Quantity::CrossingDuality => (ExperimentOutput::Duality(run_crossing_duality(cfg)?), None),
        Quantity::Concentration => (ExperimentOutput::Concentration(run_concentration(cfg)?), None),
        Quantity::LevelSet => (ExperimentOutput::LevelSet(run_level_set_concentration(cfg)?), None),
        Quantity::Lil => (ExperimentOutput::Lil(run_lil_check(cfg)?), None),
        Quantity::CrossingQuantile => (ExperimentOutput::Quantile(estimate_crossing_quantile(cfg)?), None),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_values() {
        assert!((GAMMA_C - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-15);
        assert_eq!(psi_exponent(0.0).unwrap(), 2.0);
        assert!((psi_exponent(GAMMA_C).unwrap() - 4.0).abs() < 1e-15);
        assert!((psi_exponent(2.0 * GAMMA_C).unwrap() - 8.0).abs() < 1e-14);
        assert!((psi_exponent(0.5 * GAMMA_C).unwrap() - 2.5).abs() < 1e-15);
        assert!(psi_exponent(-0.1).is_err());
    }
}
