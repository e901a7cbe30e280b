//! Fill-reducing orderings.

use std::collections::BTreeSet;

use super::GroundedLaplacian;
use crate::lattice::Point;

/// Geometric nested dissection on lattice coordinates.
///
/// Returns `perm` with `perm[new] = old`. Vertices without coordinates (for
/// example glued super-vertices) are ordered last.
pub fn nested_dissection(coords: &[Option<Point>]) -> Vec<usize> {
    let mut located: Vec<usize> = (0..coords.len()).filter(|&i| coords[i].is_some()).collect();
    let mut out = Vec::with_capacity(coords.len());
    dissect(&mut located, coords, &mut out);
    out.extend((0..coords.len()).filter(|&i| coords[i].is_none()));
    out
}

const LEAF: usize = 16;

fn dissect(nodes: &mut [usize], coords: &[Option<Point>], out: &mut Vec<usize>) {
    if nodes.len() <= LEAF {
        out.extend_from_slice(nodes);
        return;
    }
    let c = |i: usize| coords[i].unwrap();
    let (mut x0, mut x1, mut y0, mut y1) = (i32::MAX, i32::MIN, i32::MAX, i32::MIN);
    for &i in nodes.iter() {
        let (x, y) = c(i);
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let horizontal = x1 - x0 >= y1 - y0;
    let key = |i: usize| if horizontal { c(i).0 } else { c(i).1 };
    if (horizontal && x1 == x0) || (!horizontal && y1 == y0) {
        // A single line: split at its middle vertex.
        nodes.sort_by_key(|&i| (c(i).0, c(i).1));
        let m = nodes.len() / 2;
        let (left, rest) = nodes.split_at_mut(m);
        let (sep, right) = rest.split_at_mut(1);
        dissect(left, coords, out);
        dissect(right, coords, out);
        out.extend_from_slice(sep);
        return;
    }
    nodes.sort_by_key(|&i| (key(i), c(i).0, c(i).1));
    let m = key(nodes[nodes.len() / 2]);
    let lo = nodes.partition_point(|&i| key(i) < m);
    let hi = nodes.partition_point(|&i| key(i) <= m);
    let (left, rest) = nodes.split_at_mut(lo);
    let (sep, right) = rest.split_at_mut(hi - lo);
    let sep = sep.to_vec();
    dissect(left, coords, out);
    dissect(right, coords, out);
    out.extend_from_slice(&sep);
}

/// Greedy minimum-degree ordering for small graphs without coordinates.
pub fn minimum_degree(lap: &GroundedLaplacian) -> Vec<usize> {
    let n = lap.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|i| lap.neighbors(i).map(|(j, _)| j).collect()).collect();
    let mut alive = vec![true; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&i| alive[i]).min_by_key(|&i| (adj[i].len(), i)).unwrap();
        alive[v] = false;
        out.push(v);
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for &a in &nb {
            adj[a].remove(&v);
            for &b in &nb {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        adj[v].clear();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_dissection_is_a_permutation() {
        let b = crate::lattice::LatticeBox::ball(9);
        let mut coords: Vec<Option<Point>> = b.points().map(Some).collect();
        coords.push(None);
        let p = nested_dissection(&coords);
        let mut s = p.clone();
        s.sort();
        assert_eq!(s, (0..coords.len()).collect::<Vec<_>>());
        assert_eq!(*p.last().unwrap(), coords.len() - 1);
    }
}
