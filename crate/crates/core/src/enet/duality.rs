use crate::error::{invalid, Result};
use crate::lattice::{LatticeBox, Point};

use super::network::Network;
use super::solve::effective_resistance;

/// Vertex sets for the two crossing problems of a rectangle.
#[derive(Debug, Clone)]
pub struct CrossingPairs {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub bottom: Vec<usize>,
    pub top: Vec<usize>,
}

/// Opposite sides of `rect` as vertex sets. Rectangles thinner than two
/// vertices in either direction have no crossing structure and are
/// rejected.
pub fn rectangle_pairs(net: &Network, rect: &LatticeBox) -> Result<CrossingPairs> {
    if rect.width() < 2 || rect.height() < 2 {
        return invalid(format!("rectangle {}x{} has no crossing structure", rect.width(), rect.height()));
    }
    let get = |pts: Vec<Point>| net.vertices_of(&pts);
    Ok(CrossingPairs {
        left: get(rect.left_side())?,
        right: get(rect.right_side())?,
        bottom: get(rect.bottom_side())?,
        top: get(rect.top_side())?,
    })
}

/// `R(A,B) * 4 D^2 rho_max * R*(C,D) - 1`, where `R*` is taken in the
/// reciprocal network. Nonnegative whenever every `A`-`B` path meets every
/// `C`-`D` path.
pub fn duality_gap(net: &Network, ab: (&[usize], &[usize]), cd: (&[usize], &[usize])) -> Result<f64> {
    let r = effective_resistance(net, ab.0, ab.1)?;
    let star = net.reciprocal();
    let rs = effective_resistance(&star, cd.0, cd.1)?;
    let (deg, rho) = net.degree_and_rho();
    let ln = r.ln() + 4f64.ln() + 2.0 * (deg as f64).ln() + rho.ln() + rs.ln();
    Ok(ln.exp() - 1.0)
}

/// Duality gap for left-right crossing against the reciprocal top-bottom
/// crossing of `rect`, computed in the sub-network induced on `rect`.
pub fn rectangle_duality_gap(net: &Network, rect: &LatticeBox) -> Result<f64> {
    let (sub, _) = net.induced_by(|p| rect.contains(p))?;
    let s = rectangle_pairs(&sub, rect)?;
    duality_gap(&sub, (&s.left, &s.right), (&s.bottom, &s.top))
}
