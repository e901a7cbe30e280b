//! Boxes and vertices of the square lattice.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A lattice vertex `(x, y)`.
pub type Point = (i32, i32);

/// The four lattice directions in the fixed order east, west, north, south.
pub const DIRS: [Point; 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

#[inline]
pub fn add(p: Point, d: Point) -> Point {
    (p.0 + d.0, p.1 + d.1)
}

#[inline]
pub fn linf(p: Point) -> i32 {
    p.0.abs().max(p.1.abs())
}

#[inline]
pub fn l1(p: Point) -> i32 {
    p.0.abs() + p.1.abs()
}

/// Rectangle `[x0, x1] x [y0, y1]` of lattice vertices (inclusive bounds).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeBox {
    pub x0: i32,
    pub x1: i32,
    pub y0: i32,
    pub y1: i32,
}

impl LatticeBox {
    pub fn new(x0: i32, x1: i32, y0: i32, y1: i32) -> Result<Self> {
        if x1 < x0 || y1 < y0 {
            return invalid(format!("empty box [{x0},{x1}]x[{y0},{y1}]"));
        }
        Ok(LatticeBox { x0, x1, y0, y1 })
    }

    /// The box `B(n) = [-n, n]^2`.
    pub fn ball(n: i32) -> Self {
        assert!(n >= 0, "negative box radius");
        LatticeBox { x0: -n, x1: n, y0: -n, y1: n }
    }

    /// Box centred at `(cx, cy)` with half-widths `hx`, `hy`.
    pub fn centered(cx: i32, cy: i32, hx: i32, hy: i32) -> Result<Self> {
        if hx < 0 || hy < 0 {
            return invalid("negative half-width");
        }
        Self::new(cx - hx, cx + hx, cy - hy, cy + hy)
    }

    pub fn width(&self) -> usize {
        (self.x1 - self.x0 + 1) as usize
    }

    pub fn height(&self) -> usize {
        (self.y1 - self.y0 + 1) as usize
    }

    pub fn len(&self) -> usize {
        self.width() * self.height()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: Point) -> bool {
        p.0 >= self.x0 && p.0 <= self.x1 && p.1 >= self.y0 && p.1 <= self.y1
    }

    pub fn contains_box(&self, other: &LatticeBox) -> bool {
        self.contains((other.x0, other.y0)) && self.contains((other.x1, other.y1))
    }

    /// Row-major index (rows of constant `y`, ascending).
    #[inline]
    pub fn index(&self, p: Point) -> Option<usize> {
        if self.contains(p) {
            Some((p.1 - self.y0) as usize * self.width() + (p.0 - self.x0) as usize)
        } else {
            None
        }
    }

    pub fn index_of(&self, p: Point) -> Result<usize> {
        self.index(p).ok_or(Error::OutOfDomain(p))
    }

    #[inline]
    pub fn point(&self, i: usize) -> Point {
        let w = self.width();
        (self.x0 + (i % w) as i32, self.y0 + (i / w) as i32)
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }

    /// Vertices on the outer ring of the box.
    pub fn is_ring(&self, p: Point) -> bool {
        self.contains(p) && (p.0 == self.x0 || p.0 == self.x1 || p.1 == self.y0 || p.1 == self.y1)
    }

    pub fn ring(&self) -> Vec<Point> {
        self.points().filter(|&p| self.is_ring(p)).collect()
    }

    /// Outer vertex boundary: vertices outside the box with a neighbour inside
    /// (the four diagonal corners are not included).
    pub fn outer_boundary(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for x in self.x0..=self.x1 {
            out.push((x, self.y0 - 1));
            out.push((x, self.y1 + 1));
        }
        for y in self.y0..=self.y1 {
            out.push((self.x0 - 1, y));
            out.push((self.x1 + 1, y));
        }
        out.sort_by_key(|p| (p.1, p.0));
        out
    }

    /// Box grown by `k` on every side (shrunk for negative `k`).
    pub fn grow(&self, k: i32) -> Result<Self> {
        Self::new(self.x0 - k, self.x1 + k, self.y0 - k, self.y1 + k)
    }

    pub fn left_side(&self) -> Vec<Point> {
        (self.y0..=self.y1).map(|y| (self.x0, y)).collect()
    }

    pub fn right_side(&self) -> Vec<Point> {
        (self.y0..=self.y1).map(|y| (self.x1, y)).collect()
    }

    pub fn bottom_side(&self) -> Vec<Point> {
        (self.x0..=self.x1).map(|x| (x, self.y0)).collect()
    }

    pub fn top_side(&self) -> Vec<Point> {
        (self.x0..=self.x1).map(|x| (x, self.y1)).collect()
    }

    /// Nearest-neighbour edges with both endpoints in the box, as index pairs
    /// `(i, j)` with `i < j`, horizontal edges first.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let (w, h) = (self.width(), self.height());
        let mut e = Vec::with_capacity(2 * w * h);
        for r in 0..h {
            for c in 0..w.saturating_sub(1) {
                e.push((r * w + c, r * w + c + 1));
            }
        }
        for r in 0..h.saturating_sub(1) {
            for c in 0..w {
                e.push((r * w + c, (r + 1) * w + c));
            }
        }
        e
    }

    /// Largest `n` with `B(n)` centred at the origin inside this box, if any.
    pub fn inscribed_radius(&self) -> Option<i32> {
        let r = (-self.x0).min(self.x1).min(-self.y0).min(self.y1);
        (r >= 0).then_some(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_roundtrip() {
        let b = LatticeBox::new(-2, 3, 1, 4).unwrap();
        for i in 0..b.len() {
            assert_eq!(b.index(b.point(i)), Some(i));
        }
        assert_eq!(b.index((4, 1)), None);
    }

    #[test]
    fn edge_count() {
        let b = LatticeBox::ball(3);
        assert_eq!(b.edges().len(), 2 * 7 * 6);
        assert_eq!(b.outer_boundary().len(), 28);
        assert_eq!(b.ring().len(), 24);
    }
}
