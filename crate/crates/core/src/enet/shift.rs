use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::fieldlab::FieldSample;
use crate::lattice::Point;

use super::network::Network;
use super::solve::resistance_between;

/// Slack allowed in log space.
pub const SHIFT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct ShiftCheck {
    pub passed: bool,
    /// Smallest `log bound - log R2` over the pairs.
    pub worst_margin: f64,
    pub pairs: usize,
}

/// Checks `R2(u,v) <= R1(u,v) max_e exp(-gamma (chi2_u' + chi2_v'))` for the
/// given pairs, where `net2` is built from the field of `net1` plus `shift`.
pub fn field_shift_bound_check(
    net1: &Network,
    net2: &Network,
    shift: &FieldSample,
    pairs: &[(Point, Point)],
) -> Result<ShiftCheck> {
    let (p1, p2) = match (net1.provenance(), net2.provenance()) {
        (Some(a), Some(b)) => (a, b),
        _ => return invalid("both networks must be built from fields"),
    };
    if p1.domain != p2.domain || p1.domain != shift.domain {
        return invalid("networks and shift field live on different domains");
    }
    if p1.gamma != p2.gamma {
        return invalid("networks use different gamma");
    }
    let gamma = p1.gamma;
    let s = &shift.values;
    let log_factor = net1
        .edges()
        .iter()
        .map(|&(a, b)| -gamma * (s[a] + s[b]))
        .fold(f64::NEG_INFINITY, f64::max);
    let scale = 1.0 + log_factor.abs();
    let mut worst = f64::INFINITY;
    for &(u, v) in pairs {
        let r1 = resistance_between(net1, &[u], &[v])?;
        let r2 = resistance_between(net2, &[u], &[v])?;
        if r1.is_infinite() || r2.is_infinite() {
            return Err(Error::Numerical(format!("pair {u:?}-{v:?} is disconnected")));
        }
        worst = worst.min(r1.ln() + log_factor - r2.ln());
    }
    Ok(ShiftCheck { passed: worst >= -SHIFT_TOL * scale, worst_margin: worst, pairs: pairs.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeBox;

    #[test]
    fn zero_and_constant_shifts() {
        let d = LatticeBox::ball(3);
        let f = FieldSample::synthetic(d, |p| ((p.0 + 2 * p.1) as f64).cos());
        let net1 = Network::from_field(&f, 0.8).unwrap();
        let pairs = [((0, 0), (3, 3)), ((-2, 1), (1, -1))];
        let zero = FieldSample::constant(d, 0.0);
        let same = Network::from_field(&f.add(&zero).unwrap(), 0.8).unwrap();
        let c = field_shift_bound_check(&net1, &same, &zero, &pairs).unwrap();
        assert!(c.passed && c.worst_margin == 0.0);
        let s = FieldSample::constant(d, 0.7);
        let up = Network::from_field(&f.add(&s).unwrap(), 0.8).unwrap();
        let c = field_shift_bound_check(&net1, &up, &s, &pairs).unwrap();
        assert!(c.passed && c.worst_margin.abs() < 1e-12);
    }
}
