use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::linalg::SolverKind;

use super::GAMMA_C;

/// Measured quantity of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    ExitTime,
    Volume,
    Resistance,
    Return,
    CrossingDuality,
    Concentration,
    LevelSet,
    Lil,
    CrossingQuantile,
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::ExitTime => "exit_time",
            Quantity::Volume => "volume",
            Quantity::Resistance => "resistance",
            Quantity::Return => "return",
            Quantity::CrossingDuality => "crossing_duality",
            Quantity::Concentration => "concentration",
            Quantity::LevelSet => "level_set",
            Quantity::Lil => "lil",
            Quantity::CrossingQuantile => "crossing_quantile",
        }
    }
}

/// Whether `gammas` are absolute or multiples of the critical value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaUnit {
    #[default]
    Absolute,
    Critical,
}

/// Tunable constants of individual experiments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Knobs {
    /// Radius of the reflecting box for return probabilities.
    pub return_box: i32,
    /// Exponent offset in the window `exp(±(log T)^(1/2 + delta))`.
    pub window_delta: f64,
    /// Crossing experiments use the field on `B(outer_factor * N)`.
    pub outer_factor: i32,
    /// Level-set height as a fraction of `2 sqrt(g) log N`.
    pub alpha: f64,
    /// Fractions of the mean cardinality tested by the level-set run.
    pub deltas: Vec<f64>,
    /// Crossing-quantile constants.
    pub c_hat: f64,
    pub c1: f64,
    /// Concentric trace parameters of the LIL run.
    pub lil_base: u32,
    pub lil_depth: u32,
    pub lil_inner: i32,
    pub lil_lower: usize,
}

impl Default for Knobs {
    fn default() -> Self {
        Knobs {
            return_box: 128,
            window_delta: 0.2,
            outer_factor: 2,
            alpha: 0.5,
            deltas: vec![0.05, 0.1, 0.2],
            c_hat: 1.0,
            c1: 10.0,
            lil_base: 2,
            lil_depth: 8,
            lil_inner: 1,
            lil_lower: 1,
        }
    }
}

fn one() -> u64 {
    1
}

fn default_margin() -> f64 {
    4.0
}

/// A sweep over `(gamma, N, replica)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub quantity: Quantity,
    #[serde(default)]
    pub gammas: Vec<f64>,
    #[serde(default)]
    pub gamma_unit: GammaUnit,
    /// Box radii (or times `T` for return probabilities).
    pub sizes: Vec<i32>,
    #[serde(default = "one")]
    pub replicas: u64,
    pub seed: u64,
    /// Pinned-window margin factor.
    #[serde(default = "default_margin")]
    pub margin: f64,
    #[serde(default)]
    pub solver: SolverKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ledger_path: Option<String>,
    #[serde(default)]
    pub knobs: Knobs,
}

impl ExperimentConfig {
    pub fn new(quantity: Quantity, gammas: Vec<f64>, sizes: Vec<i32>, replicas: u64, seed: u64) -> Self {
        ExperimentConfig {
            quantity,
            gammas,
            gamma_unit: GammaUnit::Absolute,
            sizes,
            replicas,
            seed,
            margin: default_margin(),
            solver: SolverKind::Direct,
            workers: None,
            ledger_path: None,
            knobs: Knobs::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.sizes.windows(2).any(|w| w[1] <= w[0]) {
            return invalid("sizes must be nonempty and strictly increasing");
        }
        if self.sizes[0] < 1 {
            return invalid("sizes must be positive");
        }
        if self.replicas < 1 {
            return invalid("replicas must be at least 1");
        }
        let needs_gamma = !matches!(self.quantity, Quantity::LevelSet | Quantity::Lil);
        if needs_gamma && self.gammas.is_empty() {
            return invalid("at least one gamma is required");
        }
        if self.gammas.iter().any(|g| !(*g >= 0.0 && g.is_finite())) {
            return invalid("gammas must be finite and nonnegative");
        }
        if !(self.margin >= 2.0) {
            return invalid("margin must be at least 2");
        }
        if self.workers == Some(0) {
            return invalid("workers must be positive");
        }
        let k = &self.knobs;
        if self.quantity == Quantity::Return && k.return_box < 1 {
            return invalid("return_box must be positive");
        }
        if k.outer_factor < 1 {
            return invalid("outer_factor must be at least 1");
        }
        if !(0.0..1.0).contains(&k.alpha) {
            return invalid("alpha must lie in [0, 1)");
        }
        Ok(())
    }

    /// Gammas in absolute units.
    pub fn gammas_abs(&self) -> Vec<f64> {
        match self.gamma_unit {
            GammaUnit::Absolute => self.gammas.clone(),
            GammaUnit::Critical => self.gammas.iter().map(|g| g * GAMMA_C).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let mut c = ExperimentConfig::new(Quantity::Volume, vec![0.0], vec![8, 16, 32], 1, 1);
        assert!(c.validate().is_ok());
        c.sizes = vec![8, 8];
        assert!(c.validate().is_err());
        c.sizes = vec![8];
        c.replicas = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn json_defaults_and_units() {
        let c: ExperimentConfig = serde_json::from_str(
            r#"{"quantity":"exit_time","gammas":[0.5,1],"gamma_unit":"critical","sizes":[8,16],"seed":3}"#,
        )
        .unwrap();
        assert_eq!(c.replicas, 1);
        assert_eq!(c.knobs, Knobs::default());
        assert!((c.gammas_abs()[1] - GAMMA_C).abs() < 1e-15);
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"quantity":"volume","sizes":[1],"seed":1,"bogus":1}"#).is_err());
    }
}
