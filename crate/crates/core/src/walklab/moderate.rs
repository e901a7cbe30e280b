use crate::enet::{GroundedSystem, Network};
use crate::error::{invalid, Error, Result};
use crate::lattice::{linf, LatticeBox, Point};
use crate::linalg::SolverKind;

/// Vertices of the annulus `inner <= |v|_inf <= outer`.
pub fn annulus_points(inner: i32, outer: i32) -> Vec<Point> {
    LatticeBox::ball(outer).points().filter(|&p| linf(p) >= inner).collect()
}

/// `ln R(v, ground)` for each `v` with one factorization.
fn log_resistances_to(net: &Network, ground: &[usize], targets: &[Point]) -> Result<Vec<f64>> {
    let sys = GroundedSystem::new(net, ground, &[], SolverKind::Direct)?;
    let mut out = Vec::with_capacity(targets.len());
    for &p in targets {
        let v = net.vertex_of(p)?;
        let r = sys.resistance_to_ground(v)?;
        out.push(if r.is_finite() { r.ln() - net.log_offset() } else { f64::INFINITY });
    }
    Ok(out)
}

fn check(threshold: f64) -> Result<f64> {
    if !(threshold > 0.0) {
        return invalid("threshold must be positive");
    }
    Ok(threshold.ln())
}

/// `{0}` plus the annulus points `v` with `n <= |v|_inf <= 2n` and
/// `R(0, v) <= threshold` in the network induced on `B(4n)`.
pub fn moderate_set(net: &Network, n: i32, threshold: f64) -> Result<Vec<Point>> {
    let lt = check(threshold)?;
    if n < 1 {
        return invalid("n must be at least 1");
    }
    let (sub, _) = net.induced_by(|p| linf(p) <= 4 * n)?;
    if sub.n_vertices() != LatticeBox::ball(4 * n).len() {
        return invalid(format!("network does not contain B({})", 4 * n));
    }
    let pts = annulus_points(n, 2 * n);
    let r = log_resistances_to(&sub, &[sub.vertex_of((0, 0))?], &pts)?;
    let mut set = vec![(0, 0)];
    set.extend(pts.iter().zip(&r).filter(|(_, &l)| l <= lt).map(|(p, _)| *p));
    Ok(set)
}

/// `{0} ∪ ∂B(n)` plus the points `v` with `inner <= |v|_inf <= 2 inner`
/// whose resistances to the origin and to `∂B(n)`, in the network on
/// `B(n+1)`, are both at most `threshold`.
pub fn moderate_set_star(net: &Network, n: i32, inner: i32, threshold: f64) -> Result<Vec<Point>> {
    let lt = check(threshold)?;
    if inner < 1 || 2 * inner > n {
        return invalid(format!("need 1 <= inner and 2 inner <= n, got inner = {inner}, n = {n}"));
    }
    let (sub, _) = net.induced_by(|p| linf(p) <= n + 1)?;
    if sub.n_vertices() != LatticeBox::ball(n + 1).len() {
        return invalid(format!("network does not contain B({})", n + 1));
    }
    let pts = annulus_points(inner, 2 * inner);
    let bd = LatticeBox::ball(n).outer_boundary();
    let to_origin = log_resistances_to(&sub, &[sub.vertex_of((0, 0))?], &pts)?;
    let to_bd = log_resistances_to(&sub, &sub.vertices_of(&bd)?, &pts)?;
    let mut set = vec![(0, 0)];
    set.extend(bd.iter().copied());
    for (k, &p) in pts.iter().enumerate() {
        if to_origin[k].max(to_bd[k]) <= lt {
            set.push(p);
        }
    }
    if set.iter().any(|p| sub.vertex(*p).is_none()) {
        return Err(Error::Invariant("moderate set left the network".into()));
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enet::resistance_between;

    #[test]
    fn extreme_thresholds() {
        let net = Network::unit(LatticeBox::ball(8));
        let all = moderate_set(&net, 2, f64::INFINITY).unwrap();
        assert_eq!(all.len(), 1 + annulus_points(2, 4).len());
        assert_eq!(moderate_set(&net, 2, 0.1).unwrap(), vec![(0, 0)]);
    }

    #[test]
    fn threshold_partitions() {
        let net = Network::unit(LatticeBox::ball(8));
        let (sub, _) = net.induced_by(|p| linf(p) <= 8).unwrap();
        let near = resistance_between(&sub, &[(0, 0)], &[(2, 0)]).unwrap().value();
        let far = resistance_between(&sub, &[(0, 0)], &[(4, 4)]).unwrap().value();
        let set = moderate_set(&net, 2, 0.5 * (near + far)).unwrap();
        assert!(set.contains(&(2, 0)));
        assert!(!set.contains(&(4, 4)));
        for p in annulus_points(2, 4) {
            let r = resistance_between(&sub, &[(0, 0)], &[p]).unwrap().value();
            assert_eq!(set.contains(&p), r <= 0.5 * (near + far));
        }
    }

    #[test]
    fn star_contains_boundary() {
        let net = Network::unit(LatticeBox::ball(9));
        let s = moderate_set_star(&net, 8, 2, f64::INFINITY).unwrap();
        assert_eq!(s.len(), 1 + LatticeBox::ball(8).outer_boundary().len() + annulus_points(2, 4).len());
    }
}
