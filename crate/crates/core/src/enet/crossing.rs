use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::lattice::{linf, LatticeBox};

use super::network::{LogScaled, Network};
use super::solve::effective_resistance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Left side to right side.
    #[serde(alias = "LR")]
    Lr,
    /// Bottom side to top side.
    #[serde(alias = "UD")]
    Ud,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnnulusDirection {
    Across,
    Around,
}

/// Resistance between opposite sides of `rect` in the induced sub-network.
pub fn crossing_resistance(net: &Network, rect: &LatticeBox, orientation: Orientation) -> Result<LogScaled> {
    let (a, b) = match orientation {
        Orientation::Lr if rect.width() >= 2 => (rect.left_side(), rect.right_side()),
        Orientation::Ud if rect.height() >= 2 => (rect.bottom_side(), rect.top_side()),
        _ => return invalid(format!("rectangle {}x{} has coinciding sides", rect.width(), rect.height())),
    };
    let (sub, _) = net.induced_by(|p| rect.contains(p))?;
    effective_resistance(&sub, &sub.vertices_of(&a)?, &sub.vertices_of(&b)?)
}

/// Resistance restricted to paths in `B(n)` from its left side to the
/// segment `{n} x [lo, hi]` whose other vertices avoid the left and right
/// sides; equal to the set-to-set resistance in the network induced on
/// `(-n, n) x [-n, n]` together with the two end sets.
pub fn restricted_crossing(net: &Network, n: i32, lo: i32, hi: i32) -> Result<LogScaled> {
    if n < 1 || !(-n <= lo && lo <= hi && hi <= n) {
        return invalid(format!("need -{n} <= alpha <= beta <= {n}, got [{lo}, {hi}]"));
    }
    let ball = LatticeBox::ball(n);
    let (sub, _) = net.induced_by(|p| {
        ball.contains(p) && (p.0 < n || (lo..=hi).contains(&p.1))
    })?;
    let a = sub.vertices_of(&ball.left_side())?;
    let b: Vec<usize> = sub.vertices_of(&(lo..=hi).map(|y| (n, y)).collect::<Vec<_>>())?;
    effective_resistance(&sub, &a, &b)
}

/// The four maximal rectangles of the annulus `n_in <= |v|_inf <= n_out`,
/// as (rectangle, orientation joining its shorter sides).
pub fn annulus_rectangles(n_in: i32, n_out: i32) -> Result<[(LatticeBox, Orientation); 4]> {
    if n_in < 1 || n_out <= n_in {
        return invalid(format!("degenerate annulus {n_in}..{n_out}"));
    }
    Ok([
        (LatticeBox::new(n_in, n_out, -n_out, n_out)?, Orientation::Ud),
        (LatticeBox::new(-n_out, -n_in, -n_out, n_out)?, Orientation::Ud),
        (LatticeBox::new(-n_out, n_out, n_in, n_out)?, Orientation::Lr),
        (LatticeBox::new(-n_out, n_out, -n_out, -n_in)?, Orientation::Lr),
    ])
}

/// Annulus resistances. `Across` joins the inner ring `|v|_inf = n_in` to
/// the outer ring `|v|_inf = n_out` inside the annulus; `Around` sums the
/// short-side crossings of the four maximal rectangles.
pub fn annulus_resistance(net: &Network, n_in: i32, n_out: i32, dir: AnnulusDirection) -> Result<LogScaled> {
    let rects = annulus_rectangles(n_in, n_out)?;
    match dir {
        AnnulusDirection::Across => {
            let (sub, _) = net.induced_by(|p| (n_in..=n_out).contains(&linf(p)))?;
            let a = sub.vertices_of(&LatticeBox::ball(n_in).ring())?;
            let b = sub.vertices_of(&LatticeBox::ball(n_out).ring())?;
            effective_resistance(&sub, &a, &b)
        }
        AnnulusDirection::Around => {
            let mut parts = Vec::with_capacity(4);
            for (rect, o) in &rects {
                parts.push(crossing_resistance(net, rect, *o)?);
            }
            Ok(log_sum(&parts))
        }
    }
}

/// Sum of log-scaled values, computed relative to the largest term.
pub fn log_sum(parts: &[LogScaled]) -> LogScaled {
    let top = parts.iter().map(LogScaled::ln).fold(f64::NEG_INFINITY, f64::max);
    if !top.is_finite() {
        return LogScaled::new(if top > 0.0 { f64::INFINITY } else { 0.0 }, 0.0);
    }
    let s: f64 = parts.iter().map(|p| (p.ln() - top).exp()).sum();
    LogScaled::new(s, top)
}
