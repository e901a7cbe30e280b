use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfmt;

use super::config::{ExperimentConfig, Quantity};
use super::fit::{exponent_fit, summarize};
use super::psi_exponent;

/// Order statistics of the log quantity for each size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerSize {
    #[serde(with = "numfmt::vec")]
    pub median_log: Vec<f64>,
    #[serde(with = "numfmt::vec")]
    pub q25_log: Vec<f64>,
    #[serde(with = "numfmt::vec")]
    pub q75_log: Vec<f64>,
    #[serde(with = "numfmt::vec")]
    pub mean_log: Vec<f64>,
    /// Replicas that produced a value.
    pub count: Vec<usize>,
}

/// Where `T P(X_2T = 0)` falls relative to `exp(±(log T)^(1/2 + delta))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReturnWindow {
    pub delta: f64,
    pub upper_log: Vec<f64>,
    pub fraction_inside: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub quantity: Quantity,
    pub gamma: f64,
    pub psi: f64,
    pub sizes: Vec<i32>,
    /// Abscissa of the fit: box side `2N + 1`, or `T` for return probabilities.
    pub scales: Vec<f64>,
    pub replicas: u64,
    pub per_size: PerSize,
    #[serde(with = "numfmt")]
    pub slope: f64,
    #[serde(with = "numfmt")]
    pub slope_stderr: f64,
    #[serde(with = "numfmt")]
    pub intercept: f64,
    pub seed: u64,
    pub ledger_path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<ReturnWindow>,
    pub failures: Vec<String>,
}

/// One raw per-replica value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LedgerRow {
    pub gamma: f64,
    pub n: i32,
    pub replica: u64,
    pub seed: u64,
    pub value_log: f64,
}

pub const LEDGER_HEADER: &str = "gamma,N,replica,seed,value_log";

pub fn ledger_csv(rows: &[LedgerRow]) -> String {
    let mut s = String::from(LEDGER_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(s, "{},{},{},{},{}", r.gamma, r.n, r.replica, r.seed, numfmt::text(r.value_log));
    }
    s
}

pub fn parse_ledger(text: &str) -> Result<Vec<LedgerRow>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(LEDGER_HEADER) {
        return Err(Error::Parse(format!("ledger must start with `{LEDGER_HEADER}`")));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| {
            let bad = || Error::Parse(format!("ledger line {}: `{l}`", i + 2));
            let f: Vec<&str> = l.split(',').map(str::trim).collect();
            if f.len() != 5 {
                return Err(bad());
            }
            Ok(LedgerRow {
                gamma: f[0].parse().map_err(|_| bad())?,
                n: f[1].parse().map_err(|_| bad())?,
                replica: f[2].parse().map_err(|_| bad())?,
                seed: f[3].parse().map_err(|_| bad())?,
                value_log: numfmt::parse(f[4]).ok_or_else(bad)?,
            })
        })
        .collect()
}

/// Abscissa used when fitting `quantity` at `size`.
pub fn scale_of(quantity: Quantity, size: i32) -> f64 {
    match quantity {
        Quantity::Return => size as f64,
        _ => (2 * size + 1) as f64,
    }
}

/// `(log T)^(1/2 + delta)`.
pub fn window_log(t: i32, delta: f64) -> f64 {
    (t as f64).ln().max(0.0).powf(0.5 + delta)
}

/// Rebuilds the reports of a scaling run from its ledger. Rows of failed
/// replicas are absent; `failures` is copied through.
pub fn reports_from_ledger(cfg: &ExperimentConfig, rows: &[LedgerRow], failures: &[(f64, String)]) -> Result<Vec<ScalingReport>> {
    let gammas = cfg.gammas_abs();
    let mut out = Vec::with_capacity(gammas.len());
    for &g in &gammas {
        let mut cols: Vec<Vec<f64>> = vec![Vec::new(); cfg.sizes.len()];
        for r in rows.iter().filter(|r| r.gamma == g) {
            let k = cfg
                .sizes
                .iter()
                .position(|&s| s == r.n)
                .ok_or_else(|| Error::Parse(format!("ledger size {} is not configured", r.n)))?;
            cols[k].push(r.value_log);
        }
        let stats: Vec<_> = cols.iter().map(|c| summarize(c)).collect();
        let scales: Vec<f64> = cfg.sizes.iter().map(|&s| scale_of(cfg.quantity, s)).collect();
        let usable: Vec<(f64, Vec<f64>)> = scales
            .iter()
            .zip(&cols)
            .filter(|(_, c)| !c.is_empty())
            .map(|(s, c)| (*s, c.clone()))
            .collect();
        let (slope, slope_stderr, intercept) = match exponent_fit(&usable) {
            Ok(f) => (f.slope, f.slope_stderr, f.intercept),
            Err(_) => (f64::NAN, f64::NAN, f64::NAN),
        };
        let window = (cfg.quantity == Quantity::Return).then(|| {
            let delta = cfg.knobs.window_delta;
            let upper_log: Vec<f64> = cfg.sizes.iter().map(|&t| window_log(t, delta)).collect();
            let fraction_inside = cols
                .iter()
                .zip(&upper_log)
                .map(|(c, &w)| {
                    if c.is_empty() {
                        return f64::NAN;
                    }
                    c.iter().filter(|v| v.abs() <= w).count() as f64 / c.len() as f64
                })
                .collect();
            ReturnWindow { delta, upper_log, fraction_inside }
        });
        out.push(ScalingReport {
            quantity: cfg.quantity,
            gamma: g,
            psi: psi_exponent(g)?,
            sizes: cfg.sizes.clone(),
            scales,
            replicas: cfg.replicas,
            per_size: PerSize {
                median_log: stats.iter().map(|s| s.median).collect(),
                q25_log: stats.iter().map(|s| s.q25).collect(),
                q75_log: stats.iter().map(|s| s.q75).collect(),
                mean_log: stats.iter().map(|s| s.mean).collect(),
                count: stats.iter().map(|s| s.count).collect(),
            },
            slope,
            slope_stderr,
            intercept,
            seed: cfg.seed,
            ledger_path: cfg.ledger_path.clone(),
            window,
            failures: failures.iter().filter(|f| f.0 == g).map(|f| f.1.clone()).collect(),
        });
    }
    Ok(out)
}
