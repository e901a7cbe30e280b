use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::fieldlab::lil::window_start;
use crate::fieldlab::levelset::expected_cardinality;
use crate::fieldlab::{level_set, lil_count, BoxSpectrum, ConcentricProbe, ConcentricTrace, DgffSampler, DirichletSpec};
use crate::lattice::LatticeBox;
use crate::rng;

use super::config::ExperimentConfig;
use super::with_workers;

/// Level-set cardinalities of `chi_N` over replicas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelSetConcentration {
    pub n: i32,
    pub alpha: f64,
    pub replicas: u64,
    pub seed: u64,
    pub cardinalities: Vec<usize>,
    pub mean: f64,
    /// `E|A|` from the exact variances.
    pub expected: f64,
    pub deltas: Vec<f64>,
    /// Fraction of replicas with `|A| <= delta * mean`.
    pub frequencies: Vec<f64>,
}

/// Fractions of `cards` at most `delta` times their mean.
pub fn level_set_frequencies(cards: &[usize], deltas: &[f64]) -> Vec<f64> {
    let mean = cards.iter().sum::<usize>() as f64 / cards.len().max(1) as f64;
    deltas
        .iter()
        .map(|&d| cards.iter().filter(|&&c| c as f64 <= d * mean).count() as f64 / cards.len().max(1) as f64)
        .collect()
}

pub fn run_level_set_concentration(cfg: &ExperimentConfig) -> Result<Vec<LevelSetConcentration>> {
    cfg.validate()?;
    if cfg.sizes[0] < 2 {
        return invalid("level sets need N >= 2");
    }
    let alpha = cfg.knobs.alpha;
    let mut out = Vec::new();
    for &n in &cfg.sizes {
        let d = LatticeBox::ball(n + 1);
        let sampler = DgffSampler::new(d, DirichletSpec::Boundary.mask(&d)?)?;
        let cards: Vec<usize> = with_workers(cfg.workers, || {
            (0..cfg.replicas)
                .into_par_iter()
                .map(|r| level_set(&sampler.sample(cfg.seed, r), n, alpha).map(|l| l.cardinality))
                .collect::<Result<Vec<usize>>>()
        })??;
        let spec = BoxSpectrum::new(n);
        let variances: Vec<f64> = LatticeBox::ball(n / 2).points().map(|p| spec.green(p, p)).collect();
        out.push(LevelSetConcentration {
            n,
            alpha,
            replicas: cfg.replicas,
            seed: cfg.seed,
            mean: cards.iter().sum::<usize>() as f64 / cards.len() as f64,
            expected: expected_cardinality(n, alpha, &variances),
            frequencies: level_set_frequencies(&cards, &cfg.knobs.deltas),
            deltas: cfg.knobs.deltas.clone(),
            cardinalities: cards,
        });
    }
    Ok(out)
}

/// Counting statistic over Gaussian walks whose step variances are the
/// concentric increments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LilReport {
    pub base: u32,
    pub depth: u32,
    pub inner: i32,
    pub lower: usize,
    pub replicas: u64,
    pub seed: u64,
    pub variances: Vec<f64>,
    pub window_length: usize,
    pub counts: Vec<usize>,
    /// `histogram[c]` = replicas with count `c`.
    pub histogram: Vec<usize>,
    pub mean_count: f64,
}

/// One Gaussian walk `S_k = sum_{j<=k} sqrt(v_j - v_{j-1}) xi_j` and its count.
pub fn lil_walk_count(trace: &ConcentricTrace, seed: u64, replica: u64, lower: usize) -> Result<usize> {
    let mut r = rng::stream(seed, replica, "lil");
    let mut s = 0.0;
    let walk: Vec<f64> = trace
        .increments()
        .iter()
        .map(|&inc| {
            let z: f64 = StandardNormal.sample(&mut r);
            s += inc.max(0.0).sqrt() * z;
            s
        })
        .collect();
    lil_count(&walk, &trace.variances[1..], lower)
}

pub fn run_lil_check(cfg: &ExperimentConfig) -> Result<LilReport> {
    cfg.validate()?;
    let k = &cfg.knobs;
    let trace = ConcentricProbe::new(k.lil_base, k.lil_depth, k.lil_inner)?.trace();
    let counts: Vec<usize> = (0..cfg.replicas)
        .map(|r| lil_walk_count(&trace, cfg.seed, r, k.lil_lower))
        .collect::<Result<_>>()?;
    let n = k.lil_depth as usize;
    let window_length = (n + 1).saturating_sub(window_start(n, k.lil_lower));
    let mut histogram = vec![0usize; window_length + 1];
    counts.iter().for_each(|&c| histogram[c] += 1);
    Ok(LilReport {
        base: k.lil_base,
        depth: k.lil_depth,
        inner: k.lil_inner,
        lower: k.lil_lower,
        replicas: cfg.replicas,
        seed: cfg.seed,
        variances: trace.variances,
        window_length,
        mean_count: counts.iter().sum::<usize>() as f64 / counts.len() as f64,
        counts,
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exper::Quantity;
    use crate::fieldlab::{lil_phi, FieldSample};

    #[test]
    fn constant_field_never_falls_short() {
        let f = FieldSample::constant(LatticeBox::ball(9), 0.5);
        let c = level_set(&f, 8, 0.0).unwrap().cardinality;
        assert_eq!(c, 81);
        assert_eq!(level_set_frequencies(&[c; 5], &[0.05, 0.1, 0.2, 0.99]), vec![0.0; 4]);
    }

    #[test]
    fn deterministic_walk_fills_window() {
        let k = crate::exper::Knobs::default();
        let t = ConcentricProbe::new(k.lil_base, k.lil_depth, k.lil_inner).unwrap().trace();
        let s2 = &t.variances[1..];
        let s: Vec<f64> = s2.iter().map(|&v| lil_phi(v)).collect();
        let n = s.len();
        assert_eq!(lil_count(&s, s2, 1).unwrap(), n + 1 - window_start(n, 1));
    }

    #[test]
    fn lil_run_is_reproducible() {
        let mut cfg = ExperimentConfig::new(Quantity::Lil, vec![], vec![1], 20, 4);
        cfg.knobs.lil_depth = 4;
        let a = run_lil_check(&cfg).unwrap();
        assert_eq!(a, run_lil_check(&cfg).unwrap());
        assert_eq!(a.histogram.iter().sum::<usize>(), 20);
    }

    #[test]
    fn level_set_run_small() {
        let mut cfg = ExperimentConfig::new(Quantity::LevelSet, vec![], vec![8], 30, 2);
        cfg.knobs.alpha = 0.0;
        let r = &run_level_set_concentration(&cfg).unwrap()[0];
        assert_eq!(r.cardinalities.len(), 30);
        assert!((r.mean - r.expected).abs() < 0.5 * r.expected);
    }
}
