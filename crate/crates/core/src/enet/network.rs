use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fieldlab::FieldSample;
use crate::lattice::{LatticeBox, Point};

/// A positive real stored as `relative * e^{log_scale}`.
///
/// Network quantities are computed in the network's relative units and only
/// combined with the scale in log space, which keeps them finite for large
/// field values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogScaled {
    pub relative: f64,
    pub log_scale: f64,
}

impl LogScaled {
    pub fn new(relative: f64, log_scale: f64) -> Self {
        LogScaled { relative, log_scale }
    }

    pub fn infinite() -> Self {
        LogScaled { relative: f64::INFINITY, log_scale: 0.0 }
    }

    pub fn is_infinite(&self) -> bool {
        self.relative.is_infinite()
    }

    /// Natural logarithm of the value (`+inf` for the infinite sentinel).
    pub fn ln(&self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            self.relative.ln() + self.log_scale
        }
    }

    pub fn value(&self) -> f64 {
        self.ln().exp()
    }

    pub fn recip(&self) -> Self {
        LogScaled { relative: 1.0 / self.relative, log_scale: -self.log_scale }
    }
}

/// Finite weighted graph with positive edge conductances.
///
/// Each edge carries its true log-conductance; the stored conductance is
/// `exp(log_conductance - log_offset)` with `log_offset` chosen so the
/// largest stored value is of order one.
#[derive(Debug, Clone)]
pub struct Network {
    coords: Vec<Option<Point>>,
    edges: Vec<(usize, usize)>,
    log_c: Vec<f64>,
    c: Vec<f64>,
    log_offset: f64,
    provenance: Option<Provenance>,
    lookup: HashMap<Point, usize>,
}

/// Where a field network came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub gamma: f64,
    pub field_seed: u64,
    pub domain: LatticeBox,
    /// Field values per vertex.
    pub field: Vec<f64>,
}

impl Network {
    /// General constructor from log-conductances. Self loops are rejected.
    pub fn from_log_conductances(
        coords: Vec<Option<Point>>,
        edges: Vec<(usize, usize)>,
        log_c: Vec<f64>,
    ) -> Result<Self> {
        if edges.len() != log_c.len() {
            return invalid("edge and conductance counts differ");
        }
        let n = coords.len();
        for &(a, b) in &edges {
            if a >= n || b >= n || a == b {
                return invalid(format!("bad edge ({a}, {b})"));
            }
        }
        if log_c.iter().any(|l| !l.is_finite()) {
            return invalid("log-conductances must be finite");
        }
        let log_offset = log_c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let log_offset = if log_offset.is_finite() { log_offset } else { 0.0 };
        let c = log_c.iter().map(|l| (l - log_offset).exp()).collect();
        Self::assemble(coords, edges, log_c, c, log_offset, None)
    }

    /// Abstract network from conductances.
    pub fn from_conductances(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if edges.iter().any(|e| !(e.2 > 0.0 && e.2.is_finite())) {
            return invalid("conductances must be positive and finite");
        }
        Self::from_log_conductances(
            vec![None; n],
            edges.iter().map(|e| (e.0, e.1)).collect(),
            edges.iter().map(|e| e.2.ln()).collect(),
        )
    }

    /// Nearest-neighbour network of `field` with conductances
    /// `exp(gamma (eta_u + eta_v))`, `log_offset = 2 gamma max eta`.
    pub fn from_field(field: &FieldSample, gamma: f64) -> Result<Self> {
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return invalid(format!("gamma = {gamma} must be finite and nonnegative"));
        }
        let dom = field.domain;
        let eta = &field.values;
        let top = field.max();
        let edges = dom.edges();
        let log_c: Vec<f64> = edges.iter().map(|&(a, b)| gamma * (eta[a] + eta[b])).collect();
        let c: Vec<f64> = edges.iter().map(|&(a, b)| (gamma * ((eta[a] - top) + (eta[b] - top))).exp()).collect();
        let prov = Provenance { gamma, field_seed: field.seed, domain: dom, field: eta.clone() };
        Self::assemble(dom.points().map(Some).collect(), edges, log_c, c, 2.0 * gamma * top, Some(prov))
    }

    /// Unit conductances on a box.
    pub fn unit(dom: LatticeBox) -> Self {
        Self::from_field(&FieldSample::constant(dom, 0.0), 0.0).expect("unit network")
    }

    fn assemble(
        coords: Vec<Option<Point>>,
        edges: Vec<(usize, usize)>,
        log_c: Vec<f64>,
        c: Vec<f64>,
        log_offset: f64,
        provenance: Option<Provenance>,
    ) -> Result<Self> {
        if c.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(Error::Numerical("stored conductance underflowed or overflowed".into()));
        }
        let mut lookup = HashMap::new();
        for (i, p) in coords.iter().enumerate() {
            if let Some(p) = p {
                if lookup.insert(*p, i).is_some() {
                    return invalid(format!("duplicate vertex coordinate {p:?}"));
                }
            }
        }
        Ok(Network { coords, edges, log_c, c, log_offset, provenance, lookup })
    }

    pub fn n_vertices(&self) -> usize {
        self.coords.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Stored (relative) conductances.
    pub fn conductances(&self) -> &[f64] {
        &self.c
    }

    pub fn log_conductances(&self) -> &[f64] {
        &self.log_c
    }

    pub fn log_offset(&self) -> f64 {
        self.log_offset
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn coords(&self) -> &[Option<Point>] {
        &self.coords
    }

    pub fn coord(&self, v: usize) -> Option<Point> {
        self.coords[v]
    }

    pub fn vertex(&self, p: Point) -> Option<usize> {
        self.lookup.get(&p).copied()
    }

    pub fn vertex_of(&self, p: Point) -> Result<usize> {
        self.vertex(p).ok_or(Error::OutOfDomain(p))
    }

    pub fn vertices_of(&self, pts: &[Point]) -> Result<Vec<usize>> {
        pts.iter().map(|&p| self.vertex_of(p)).collect()
    }

    /// Scale of resistances: a relative resistance `r` means `r e^{-offset}`.
    pub fn resistance(&self, relative: f64) -> LogScaled {
        LogScaled::new(relative, -self.log_offset)
    }

    pub fn conductance(&self, relative: f64) -> LogScaled {
        LogScaled::new(relative, self.log_offset)
    }

    /// Incident edges per vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n_vertices()];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            inc[a].push(e);
            inc[b].push(e);
        }
        inc
    }

    /// Connected component labels.
    pub fn components(&self) -> Vec<usize> {
        let inc = self.incidence();
        let mut label = vec![usize::MAX; self.n_vertices()];
        let mut next = 0;
        for s in 0..self.n_vertices() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &e in &inc[v] {
                    let (a, b) = self.edges[e];
                    let w = if a == v { b } else { a };
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Network induced on the vertices with `keep[v]`, with the map from new
    /// to old vertex indices.
    pub fn induced(&self, keep: &[bool]) -> Result<(Network, Vec<usize>)> {
        let mut slot = vec![usize::MAX; self.n_vertices()];
        let mut old = Vec::new();
        for v in 0..self.n_vertices() {
            if keep[v] {
                slot[v] = old.len();
                old.push(v);
            }
        }
        let mut edges = Vec::new();
        let mut log_c = Vec::new();
        let mut c = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if keep[a] && keep[b] {
                edges.push((slot[a], slot[b]));
                log_c.push(self.log_c[e]);
                c.push(self.c[e]);
            }
        }
        let coords = old.iter().map(|&v| self.coords[v]).collect();
        let net = Self::assemble(coords, edges, log_c, c, self.log_offset, None)?;
        Ok((net, old))
    }

    /// Sub-network induced on the lattice points satisfying `pred`.
    pub fn induced_by(&self, pred: impl Fn(Point) -> bool) -> Result<(Network, Vec<usize>)> {
        let keep: Vec<bool> = self.coords.iter().map(|p| p.map(&pred).unwrap_or(false)).collect();
        self.induced(&keep)
    }

    /// Identifies `set` into one new vertex (appended last, without
    /// coordinates); edges inside the set are dropped. Returns the map from
    /// old to new vertex indices.
    pub fn glue(&self, set: &[usize]) -> Result<(Network, Vec<usize>)> {
        if set.is_empty() {
            return invalid("cannot glue an empty set");
        }
        let mut inset = vec![false; self.n_vertices()];
        for &v in set {
            inset[v] = true;
        }
        let mut map = vec![0usize; self.n_vertices()];
        let mut coords = Vec::new();
        for v in 0..self.n_vertices() {
            if !inset[v] {
                map[v] = coords.len();
                coords.push(self.coords[v]);
            }
        }
        let g = coords.len();
        coords.push(None);
        for &v in set {
            map[v] = g;
        }
        let mut edges = Vec::new();
        let mut log_c = Vec::new();
        let mut c = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if inset[a] && inset[b] {
                continue;
            }
            edges.push((map[a], map[b]));
            log_c.push(self.log_c[e]);
            c.push(self.c[e]);
        }
        Ok((Self::assemble(coords, edges, log_c, c, self.log_offset, None)?, map))
    }

    /// Same graph with every conductance replaced by its resistance. Field
    /// networks are rebuilt from the negated field.
    pub fn reciprocal(&self) -> Network {
        if let Some(p) = &self.provenance {
            let f = FieldSample {
                domain: p.domain,
                values: p.field.iter().map(|v| -v).collect(),
                dirichlet: vec![false; p.domain.len()],
                kind: crate::fieldlab::FieldKind::Synthetic,
                seed: p.field_seed,
            };
            if let Ok(net) = Self::from_field(&f, p.gamma) {
                if net.edges == self.edges {
                    return net;
                }
            }
        }
        let log_c: Vec<f64> = self.log_c.iter().map(|l| -l).collect();
        Self::from_log_conductances(self.coords.clone(), self.edges.clone(), log_c).expect("finite reciprocal")
    }

    /// Maximum vertex degree and the largest resistance ratio over pairs of
    /// edges sharing a vertex.
    pub fn degree_and_rho(&self) -> (usize, f64) {
        let inc = self.incidence();
        let deg = inc.iter().map(Vec::len).max().unwrap_or(0);
        let mut log_rho = 0.0f64;
        for es in &inc {
            if es.len() < 2 {
                continue;
            }
            let hi = es.iter().map(|&e| self.log_c[e]).fold(f64::NEG_INFINITY, f64::max);
            let lo = es.iter().map(|&e| self.log_c[e]).fold(f64::INFINITY, f64::min);
            log_rho = log_rho.max(hi - lo);
        }
        (deg, log_rho.exp())
    }

    /// `x1,y1,x2,y2,log_conductance` rows; every vertex needs coordinates.
    pub fn to_csv(&self) -> Result<String> {
        let mut s = String::from("x1,y1,x2,y2,log_conductance\n");
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            let (pa, pb) = match (self.coords[a], self.coords[b]) {
                (Some(pa), Some(pb)) => (pa, pb),
                _ => return invalid("vertices without coordinates cannot be exported"),
            };
            let _ = writeln!(s, "{},{},{},{},{}", pa.0, pa.1, pb.0, pb.1, self.log_c[e]);
        }
        Ok(s)
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty network file".into()))?;
        if header.trim() != "x1,y1,x2,y2,log_conductance" {
            return Err(Error::Parse(format!("unexpected header {header:?}")));
        }
        let mut lookup: HashMap<Point, usize> = HashMap::new();
        let mut coords = Vec::new();
        let mut edges = Vec::new();
        let mut log_c = Vec::new();
        for (ln, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols.len() != 5 {
                return Err(Error::Parse(format!("line {}: expected 5 columns", ln + 2)));
            }
            let bad = |c: &str| Error::Parse(format!("line {}: bad number {c:?}", ln + 2));
            let mut ints = [0i32; 4];
            for k in 0..4 {
                ints[k] = cols[k].parse().map_err(|_| bad(cols[k]))?;
            }
            let l: f64 = cols[4].parse().map_err(|_| bad(cols[4]))?;
            let mut id = |p: Point| {
                *lookup.entry(p).or_insert_with(|| {
                    coords.push(Some(p));
                    coords.len() - 1
                })
            };
            let a = id((ints[0], ints[1]));
            let b = id((ints[2], ints[3]));
            edges.push((a, b));
            log_c.push(l);
        }
        Self::from_log_conductances(coords, edges, log_c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_network_scaling() {
        let d = LatticeBox::new(0, 1, 0, 0).unwrap();
        let f = FieldSample::synthetic(d, |p| if p.0 == 0 { 1.0 } else { 0.0 });
        let net = Network::from_field(&f, 1.0).unwrap();
        assert!((net.conductances()[0] - (-1.0f64).exp()).abs() < 1e-16);
        assert_eq!(net.log_offset(), 2.0);

        let z = Network::from_field(&FieldSample::constant(LatticeBox::ball(2), 0.0), 0.7).unwrap();
        assert!(z.conductances().iter().all(|&c| c == 1.0));
        assert_eq!(z.log_offset(), 0.0);
    }

    #[test]
    fn dyadic_shift_changes_only_the_offset() {
        let d = LatticeBox::ball(3);
        let f = FieldSample::synthetic(d, |p| (p.0 * 3 + p.1) as f64 / 8.0);
        let g = f.map(|v| v + 1.5);
        let (a, b) = (Network::from_field(&f, 0.5).unwrap(), Network::from_field(&g, 0.5).unwrap());
        assert_eq!(a.conductances(), b.conductances());
        assert_eq!(b.log_offset() - a.log_offset(), 2.0 * 0.5 * 1.5);
    }

    #[test]
    fn reciprocal_is_an_involution() {
        let d = LatticeBox::ball(3);
        let f = FieldSample::synthetic(d, |p| ((p.0 * 7 + p.1 * 3) as f64).sin());
        let net = Network::from_field(&f, 1.1).unwrap();
        let back = net.reciprocal().reciprocal();
        assert_eq!(back.conductances(), net.conductances());
        assert_eq!(back.log_conductances(), net.log_conductances());
        assert_eq!(back.log_offset(), net.log_offset());
        for (l, m) in net.log_conductances().iter().zip(net.reciprocal().log_conductances()) {
            assert_eq!(*l, -m);
        }
        let abs = Network::from_conductances(3, &[(0, 1, 2.0), (1, 2, 0.25)]).unwrap();
        let back = abs.reciprocal().reciprocal();
        assert_eq!(back.conductances(), abs.conductances());
        assert_eq!(back.log_offset(), abs.log_offset());
    }

    #[test]
    fn degree_and_rho_on_a_checkerboard() {
        let d = LatticeBox::ball(3);
        let unit = Network::unit(d);
        assert_eq!(unit.degree_and_rho(), (4, 1.0));
        // Resistances alternate 1, 2 by edge parity.
        let edges = d.edges();
        let log_c: Vec<f64> = edges
            .iter()
            .map(|&(a, _)| {
                let p = d.point(a);
                if (p.0 + p.1).rem_euclid(2) == 0 { 0.0 } else { -(2.0f64).ln() }
            })
            .collect();
        let net = Network::from_log_conductances(d.points().map(Some).collect(), edges, log_c).unwrap();
        let (deg, rho) = net.degree_and_rho();
        assert_eq!(deg, 4);
        assert!((rho - 2.0).abs() < 1e-14);
    }

    #[test]
    fn csv_roundtrip() {
        let net = Network::from_field(&FieldSample::synthetic(LatticeBox::ball(1), |p| p.0 as f64 * 0.3), 1.0).unwrap();
        let back = Network::from_csv(&net.to_csv().unwrap()).unwrap();
        assert_eq!(back.n_edges(), net.n_edges());
        for e in 0..net.n_edges() {
            let (a, b) = net.edges()[e];
            let (c, d) = back.edges()[e];
            assert_eq!((net.coord(a), net.coord(b)), (back.coord(c), back.coord(d)));
            assert_eq!(net.log_conductances()[e], back.log_conductances()[e]);
        }
    }
}
