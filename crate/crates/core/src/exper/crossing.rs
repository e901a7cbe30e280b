use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enet::{crossing_resistance, restricted_crossing, Network, Orientation};
use crate::error::{invalid, Error, Result};
use crate::fieldlab::{DgffSampler, DirichletSpec, FieldSample};
use crate::lattice::LatticeBox;
use crate::numfmt;

use super::config::ExperimentConfig;
use super::fit::summarize;
use super::with_workers;

/// Joint samples of `ln R_LR` of `B(N)` and `ln R*_UD` of the reciprocal
/// network, fields drawn from the DGFF on `B(M)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub gamma: f64,
    pub n: i32,
    pub m: i32,
    pub replicas: u64,
    pub seed: u64,
    #[serde(with = "numfmt::vec")]
    pub log_lr: Vec<f64>,
    #[serde(with = "numfmt::vec")]
    pub log_star_ud: Vec<f64>,
    #[serde(with = "numfmt")]
    pub median_log_lr: f64,
    #[serde(with = "numfmt")]
    pub median_log_star_ud: f64,
    /// Median of `ln(R_LR R*_UD)`.
    #[serde(with = "numfmt")]
    pub median_log_product: f64,
    /// `|median ln R_LR + median ln R*_UD|`.
    #[serde(with = "numfmt")]
    pub symmetry: f64,
    pub failures: Vec<String>,
}

/// Spread of `ln R_LR` of `B(N)` across sizes for one gamma.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub gamma: f64,
    pub sizes: Vec<i32>,
    pub replicas: u64,
    pub seed: u64,
    #[serde(with = "numfmt::vec")]
    pub mean_log: Vec<f64>,
    #[serde(with = "numfmt::vec")]
    pub sigma: Vec<f64>,
    #[serde(with = "numfmt::vec")]
    pub sigma_over_sqrt_log: Vec<f64>,
    pub failures: Vec<String>,
}

/// Empirical `phi_N(alpha) = P(R_{N,[alpha,N]} > threshold)` for
/// `alpha = 0..=N/2` and the resulting `alpha_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantileReport {
    pub gamma: f64,
    pub n: i32,
    pub m: i32,
    pub replicas: u64,
    pub seed: u64,
    pub c_hat: f64,
    pub c1: f64,
    pub threshold_log: f64,
    pub phi: Vec<f64>,
    pub alpha_n: i32,
    pub failures: Vec<String>,
}

/// `ln((4 + C1) e^{c_hat log log 2N})`.
pub fn quantile_threshold_log(n: i32, c_hat: f64, c1: f64) -> f64 {
    (4.0 + c1).ln() + c_hat * (2.0 * n as f64).ln().ln()
}

/// Samplers for `chi_M`, `M = outer_factor * N`, one per size.
fn outer_samplers(cfg: &ExperimentConfig) -> Result<Vec<(i32, i32, DgffSampler)>> {
    cfg.sizes
        .iter()
        .map(|&n| {
            let m = cfg.knobs.outer_factor * n;
            let d = LatticeBox::ball(m + 1);
            Ok((n, m, DgffSampler::new(d, DirichletSpec::Boundary.mask(&d)?)?))
        })
        .collect()
}

fn flat_needed(gammas: &[f64]) -> bool {
    gammas.iter().all(|&g| g == 0.0)
}

/// Per replica, per gamma: `f(network on B(N))`.
fn sweep<T: Send>(
    cfg: &ExperimentConfig,
    sampler: &DgffSampler,
    n: i32,
    f: impl Fn(&Network) -> Result<T> + Sync,
) -> Result<Vec<Vec<Result<T>>>> {
    let gammas = cfg.gammas_abs();
    let inner = LatticeBox::ball(n);
    let flat = flat_needed(&gammas);
    with_workers(cfg.workers, || {
        (0..cfg.replicas)
            .into_par_iter()
            .map(|r| {
                let field = if flat {
                    FieldSample::constant(inner, 0.0)
                } else {
                    match sampler.sample(cfg.seed, r).restrict(&inner) {
                        Ok(f) => f,
                        Err(e) => return gammas.iter().map(|_| Err(Error::Numerical(e.to_string()))).collect(),
                    }
                };
                gammas.iter().map(|&g| Network::from_field(&field, g).and_then(|net| f(&net))).collect()
            })
            .collect()
    })
}

fn check_sizes(cfg: &ExperimentConfig, min: i32) -> Result<()> {
    cfg.validate()?;
    if cfg.sizes[0] < min {
        return invalid(format!("sizes must be at least {min}"));
    }
    Ok(())
}

fn lr_and_star(net: &Network, n: i32) -> Result<(f64, f64)> {
    let rect = LatticeBox::ball(n);
    let lr = crossing_resistance(net, &rect, Orientation::Lr)?.ln();
    let star = crossing_resistance(&net.reciprocal(), &rect, Orientation::Ud)?.ln();
    Ok((lr, star))
}

pub fn run_crossing_duality(cfg: &ExperimentConfig) -> Result<Vec<DualityReport>> {
    check_sizes(cfg, 1)?;
    let gammas = cfg.gammas_abs();
    let mut out = Vec::new();
    for (n, m, sampler) in outer_samplers(cfg)? {
        let table = sweep(cfg, &sampler, n, |net| lr_and_star(net, n))?;
        for (gi, &g) in gammas.iter().enumerate() {
            let (mut lr, mut star, mut failures) = (Vec::new(), Vec::new(), Vec::new());
            for (r, row) in table.iter().enumerate() {
                match &row[gi] {
                    Ok((a, b)) => {
                        lr.push(*a);
                        star.push(*b);
                    }
                    Err(e) => failures.push(format!("replica={r}: {e}")),
                }
            }
            let prod: Vec<f64> = lr.iter().zip(&star).map(|(a, b)| a + b).collect();
            let (ml, ms) = (summarize(&lr).median, summarize(&star).median);
            out.push(DualityReport {
                gamma: g,
                n,
                m,
                replicas: cfg.replicas,
                seed: cfg.seed,
                median_log_lr: ml,
                median_log_star_ud: ms,
                median_log_product: summarize(&prod).median,
                symmetry: (ml + ms).abs(),
                log_lr: lr,
                log_star_ud: star,
                failures,
            });
        }
    }
    Ok(out)
}

pub fn run_concentration(cfg: &ExperimentConfig) -> Result<Vec<ConcentrationReport>> {
    check_sizes(cfg, 2)?;
    let gammas = cfg.gammas_abs();
    let mut out: Vec<ConcentrationReport> = gammas
        .iter()
        .map(|&g| ConcentrationReport {
            gamma: g,
            sizes: cfg.sizes.clone(),
            replicas: cfg.replicas,
            seed: cfg.seed,
            mean_log: Vec::new(),
            sigma: Vec::new(),
            sigma_over_sqrt_log: Vec::new(),
            failures: Vec::new(),
        })
        .collect();
    for (n, _, sampler) in outer_samplers(cfg)? {
        let rect = LatticeBox::ball(n);
        let table = sweep(cfg, &sampler, n, |net| Ok(crossing_resistance(net, &rect, Orientation::Lr)?.ln()))?;
        for (gi, rep) in out.iter_mut().enumerate() {
            let mut vals = Vec::new();
            for (r, row) in table.iter().enumerate() {
                match &row[gi] {
                    Ok(v) => vals.push(*v),
                    Err(e) => rep.failures.push(format!("N={n} replica={r}: {e}")),
                }
            }
            let s = summarize(&vals);
            rep.mean_log.push(s.mean);
            rep.sigma.push(s.std);
            rep.sigma_over_sqrt_log.push(s.std / (n as f64).ln().sqrt());
        }
    }
    Ok(out)
}

/// `min {alpha : phi(alpha) > 0.99}` when `phi(N/2) > 0.99`, else `N/2`.
pub fn alpha_rule(phi: &[f64]) -> i32 {
    let last = phi.len() as i32 - 1;
    if phi.last().is_some_and(|&p| p > 0.99) {
        phi.iter().position(|&p| p > 0.99).unwrap() as i32
    } else {
        last
    }
}

pub fn estimate_crossing_quantile(cfg: &ExperimentConfig) -> Result<Vec<QuantileReport>> {
    check_sizes(cfg, 2)?;
    let gammas = cfg.gammas_abs();
    let (c_hat, c1) = (cfg.knobs.c_hat, cfg.knobs.c1);
    let mut out = Vec::new();
    for (n, m, sampler) in outer_samplers(cfg)? {
        let half = n / 2;
        let table = sweep(cfg, &sampler, n, |net| {
            (0..=half).map(|a| Ok(restricted_crossing(net, n, a, n)?.ln())).collect::<Result<Vec<f64>>>()
        })?;
        let threshold_log = quantile_threshold_log(n, c_hat, c1);
        for (gi, &g) in gammas.iter().enumerate() {
            let mut above = vec![0usize; half as usize + 1];
            let mut ok = 0usize;
            let mut failures = Vec::new();
            for (r, row) in table.iter().enumerate() {
                match &row[gi] {
                    Ok(vals) => {
                        ok += 1;
                        for (k, v) in vals.iter().enumerate() {
                            if *v > threshold_log {
                                above[k] += 1;
                            }
                        }
                    }
                    Err(e) => failures.push(format!("replica={r}: {e}")),
                }
            }
            let phi: Vec<f64> = above.iter().map(|&c| c as f64 / ok.max(1) as f64).collect();
            out.push(QuantileReport {
                gamma: g,
                n,
                m,
                replicas: cfg.replicas,
                seed: cfg.seed,
                c_hat,
                c1,
                threshold_log,
                alpha_n: alpha_rule(&phi),
                phi,
                failures,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exper::Quantity;

    #[test]
    fn flat_duality_is_deterministic() {
        let cfg = ExperimentConfig::new(Quantity::CrossingDuality, vec![0.0], vec![4], 3, 1);
        let r = &run_crossing_duality(&cfg).unwrap()[0];
        assert!(r.log_lr.iter().all(|&v| v == r.log_lr[0]));
        assert!((r.median_log_product - (r.log_lr[0] + r.log_star_ud[0])).abs() < 1e-15);
        // The flat square is self-dual, so both medians coincide.
        assert!((r.log_lr[0] - r.log_star_ud[0]).abs() < 1e-12);
        assert!((r.symmetry - 2.0 * (8.0f64 / 9.0).ln().abs()).abs() < 1e-12);
    }

    #[test]
    fn flat_concentration_has_no_spread() {
        let cfg = ExperimentConfig::new(Quantity::Concentration, vec![0.0], vec![4, 6], 3, 1);
        assert!(run_concentration(&cfg).unwrap()[0].sigma.iter().all(|&s| s < 1e-12));
    }

    #[test]
    fn alpha_rule_cases() {
        assert_eq!(alpha_rule(&[0.1, 0.995, 1.0]), 1);
        assert_eq!(alpha_rule(&[0.1, 0.5, 0.9]), 2);
    }

    #[test]
    fn flat_quantile_uses_deterministic_threshold() {
        let n = 8;
        let mut cfg = ExperimentConfig::new(Quantity::CrossingQuantile, vec![0.0], vec![n], 2, 1);
        cfg.knobs.c1 = 0.0;
        cfg.knobs.c_hat = 0.0;
        let r = &estimate_crossing_quantile(&cfg).unwrap()[0];
        let net = Network::unit(LatticeBox::ball(n));
        let want = (0..=n / 2)
            .map(|a| restricted_crossing(&net, n, a, n).unwrap().ln())
            .position(|v| v > 4f64.ln())
            .map(|k| k as i32)
            .unwrap_or(n / 2);
        assert_eq!(r.alpha_n, want);
        assert!(r.phi.iter().all(|&p| p == 0.0 || p == 1.0));
    }
}
