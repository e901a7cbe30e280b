//! Trajectory CSV (`t,x,y`), occupation PGM and heat-kernel JSON.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lattice::{LatticeBox, Point};

use super::simulate::TrajectoryRecord;

pub fn trajectory_to_csv(rec: &TrajectoryRecord) -> String {
    let mut s = String::from("t,x,y\n");
    for (t, p) in &rec.steps {
        let _ = writeln!(s, "{},{},{}", t, p.0, p.1);
    }
    s
}

pub fn parse_trajectory_csv(text: &str) -> Result<Vec<(f64, Point)>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == "t,x,y" => {}
        other => return Err(Error::Parse(format!("expected header t,x,y, found {other:?}"))),
    }
    let mut out = Vec::new();
    for (k, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bad = || Error::Parse(format!("line {}: {line:?}", k + 2));
        let mut it = line.split(',');
        let t: f64 = it.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let x: i32 = it.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let y: i32 = it.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        if it.next().is_some() {
            return Err(bad());
        }
        out.push((t, (x, y)));
    }
    Ok(out)
}

/// Plain (ASCII) PGM of visit counts scaled to 0..=255 by the maximum; the
/// first row is the top of the box.
pub fn occupation_pgm(dom: &LatticeBox, counts: &[u64]) -> String {
    let max = counts.iter().copied().max().unwrap_or(0).max(1);
    let mut s = format!("P2\n{} {}\n255\n", dom.width(), dom.height());
    for y in (dom.y0..=dom.y1).rev() {
        let row: Vec<String> = (dom.x0..=dom.x1)
            .map(|x| {
                let c = counts[dom.index((x, y)).unwrap()];
                ((c as f64 / max as f64 * 255.0).round() as u64).to_string()
            })
            .collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Parses a plain PGM into (width, height, pixels).
pub fn parse_pgm(text: &str) -> Result<(usize, usize, Vec<u32>)> {
    let mut tok = text.split_whitespace();
    if tok.next() != Some("P2") {
        return Err(Error::Parse("not a plain PGM".into()));
    }
    let mut num = || -> Result<usize> {
        tok.next().and_then(|t| t.parse().ok()).ok_or_else(|| Error::Parse("truncated PGM".into()))
    };
    let (w, h, _max) = (num()?, num()?, num()?);
    let px = (0..w * h).map(|_| num().map(|v| v as u32)).collect::<Result<Vec<_>>>()?;
    Ok((w, h, px))
}
