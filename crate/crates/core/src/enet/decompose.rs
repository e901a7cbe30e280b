use std::collections::VecDeque;

use crate::error::{invalid, Error, Result};

use super::flow::{Flow, Potential};
use super::network::{LogScaled, Network};

/// Relative slack allowed in the admissibility of splittings.
pub const SPLIT_TOL: f64 = 1e-12;
/// Flows below this fraction of the largest edge flow are treated as zero.
pub const CANCEL_TOL: f64 = 1e-12;
/// Harmonicity required of potentials passed to the cutset decomposition.
pub const HARMONIC_TOL: f64 = 1e-8;

/// A simple path given by its vertices and the edges joining them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Path {
    /// Builds a path from a vertex sequence, using the first edge found
    /// between consecutive vertices.
    pub fn from_vertices(net: &Network, vertices: Vec<usize>) -> Result<Self> {
        let inc = net.incidence();
        let mut edges = Vec::with_capacity(vertices.len().saturating_sub(1));
        for w in vertices.windows(2) {
            let e = inc[w[0]]
                .iter()
                .copied()
                .find(|&e| {
                    let (a, b) = net.edges()[e];
                    (a, b) == (w[0], w[1]) || (b, a) == (w[0], w[1])
                })
                .ok_or_else(|| Error::InvalidArgument(format!("no edge between {} and {}", w[0], w[1])))?;
            edges.push(e);
        }
        Ok(Path { vertices, edges })
    }
}

/// Multiset of simple paths from `source` to `sink`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathFamily {
    pub source: Vec<usize>,
    pub sink: Vec<usize>,
    pub paths: Vec<Path>,
}

impl PathFamily {
    pub fn new(net: &Network, source: Vec<usize>, sink: Vec<usize>, paths: Vec<Path>) -> Result<Self> {
        let fam = PathFamily { source, sink, paths };
        fam.validate(net)?;
        Ok(fam)
    }

    pub fn validate(&self, net: &Network) -> Result<()> {
        let n = net.n_vertices();
        let mut role = vec![0u8; n];
        for &v in &self.source {
            role[v] |= 1;
        }
        for &v in &self.sink {
            role[v] |= 2;
        }
        for (k, p) in self.paths.iter().enumerate() {
            let bad = |m: &str| Err(Error::InvalidArgument(format!("path {k}: {m}")));
            if p.vertices.len() < 2 || p.edges.len() + 1 != p.vertices.len() {
                return bad("needs at least one edge and matching edge list");
            }
            if role[p.vertices[0]] & 1 == 0 || role[*p.vertices.last().unwrap()] & 2 == 0 {
                return bad("not anchored at the source and sink sets");
            }
            let mut seen = vec![false; n];
            for &v in &p.vertices {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return bad("not simple");
                }
            }
            for (i, &e) in p.edges.iter().enumerate() {
                let (a, b) = net.edges()[e];
                let (x, y) = (p.vertices[i], p.vertices[i + 1]);
                if !((a, b) == (x, y) || (b, a) == (x, y)) {
                    return bad("edge does not join consecutive vertices");
                }
            }
        }
        Ok(())
    }
}

/// Multiset of edge cutsets separating `source` from `sink`.
#[derive(Debug, Clone, PartialEq)]
pub struct CutsetFamily {
    pub source: Vec<usize>,
    pub sink: Vec<usize>,
    pub cutsets: Vec<Vec<usize>>,
}

impl CutsetFamily {
    pub fn new(net: &Network, source: Vec<usize>, sink: Vec<usize>, cutsets: Vec<Vec<usize>>) -> Result<Self> {
        let fam = CutsetFamily { source, sink, cutsets };
        fam.validate(net)?;
        Ok(fam)
    }

    /// Each cutset must disconnect the source from the sink.
    pub fn validate(&self, net: &Network) -> Result<()> {
        for (k, cut) in self.cutsets.iter().enumerate() {
            if connected_avoiding(net, &self.source, &self.sink, cut) {
                return Err(Error::InvalidArgument(format!("cutset {k} does not separate")));
            }
        }
        Ok(())
    }
}

/// Whether `a` reaches `b` without using the edges in `removed`.
pub fn connected_avoiding(net: &Network, a: &[usize], b: &[usize], removed: &[usize]) -> bool {
    let mut gone = vec![false; net.n_edges()];
    for &e in removed {
        gone[e] = true;
    }
    let inc = net.incidence();
    let mut target = vec![false; net.n_vertices()];
    for &v in b {
        target[v] = true;
    }
    let mut seen = vec![false; net.n_vertices()];
    let mut queue: VecDeque<usize> = a.iter().copied().collect();
    for &v in a {
        seen[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        if target[v] {
            return true;
        }
        for &e in &inc[v] {
            if gone[e] {
                continue;
            }
            let (x, y) = net.edges()[e];
            let w = if x == v { y } else { x };
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

/// Per-member split values aligned with the member's edge list: `r_{e,P}`
/// for path families, `c_{e,pi}` for cutset families, in the network's
/// relative units.
#[derive(Debug, Clone, PartialEq)]
pub struct Splitting {
    pub members: Vec<Vec<f64>>,
}

impl Splitting {
    /// The trivial splitting `r_{e,P} = r_e`.
    pub fn identity_paths(net: &Network, fam: &PathFamily) -> Self {
        let c = net.conductances();
        Splitting { members: fam.paths.iter().map(|p| p.edges.iter().map(|&e| 1.0 / c[e]).collect()).collect() }
    }

    /// The trivial splitting `c_{e,pi} = c_e`.
    pub fn identity_cutsets(net: &Network, fam: &CutsetFamily) -> Self {
        let c = net.conductances();
        Splitting { members: fam.cutsets.iter().map(|cut| cut.iter().map(|&e| c[e]).collect()).collect() }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Splitting { members: self.members.iter().map(|m| m.iter().map(|v| v * s).collect()).collect() }
    }

    /// `sum_members 1/split(e) <= 1/r_e` (paths) or `<= 1/c_e` (cutsets);
    /// `per_edge` gives the member edge lists, `bound` maps an edge to the
    /// right-hand side.
    fn check(&self, per_edge: &[&[usize]], n_edges: usize, bound: impl Fn(usize) -> f64) -> Result<()> {
        if self.members.len() != per_edge.len() {
            return invalid("splitting does not match the family");
        }
        let mut load = vec![0.0; n_edges];
        for (m, edges) in self.members.iter().zip(per_edge) {
            if m.len() != edges.len() {
                return invalid("splitting does not match the family");
            }
            for (&v, &e) in m.iter().zip(edges.iter()) {
                if !(v > 0.0) {
                    return invalid("split values must be positive");
                }
                load[e] += 1.0 / v;
            }
        }
        for (e, l) in load.iter().enumerate() {
            let b = bound(e);
            if *l > b * (1.0 + SPLIT_TOL) {
                return invalid(format!("splitting is not admissible on edge {e}: {l} > {b}"));
            }
        }
        Ok(())
    }

    pub fn check_paths(&self, net: &Network, fam: &PathFamily) -> Result<()> {
        let lists: Vec<&[usize]> = fam.paths.iter().map(|p| p.edges.as_slice()).collect();
        let c = net.conductances();
        self.check(&lists, net.n_edges(), |e| c[e])
    }

    pub fn check_cutsets(&self, net: &Network, fam: &CutsetFamily) -> Result<()> {
        let lists: Vec<&[usize]> = fam.cutsets.iter().map(Vec::as_slice).collect();
        let c = net.conductances();
        self.check(&lists, net.n_edges(), |e| 1.0 / c[e])
    }
}

/// Output of the flow-path decomposition.
#[derive(Debug, Clone)]
pub struct PathDecomposition {
    pub family: PathFamily,
    pub weights: Vec<f64>,
    pub splitting: Splitting,
}

/// Output of the potential-cutset decomposition.
#[derive(Debug, Clone)]
pub struct CutsetDecomposition {
    pub family: CutsetFamily,
    pub weights: Vec<f64>,
    pub splitting: Splitting,
}

/// Decomposes a unit flow into weighted source-to-sink paths with the
/// splitting `r_{e,P} = theta_e r_e / alpha_P`.
pub fn flow_path_decomposition(net: &Network, flow: &Flow) -> Result<PathDecomposition> {
    flow.check_unit(net)?;
    let m = net.n_edges();
    let scale = flow.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    // Oriented positive support: (from, to, amount).
    let mut arcs: Vec<(usize, usize, f64)> = net
        .edges()
        .iter()
        .zip(&flow.values)
        .map(|(&(a, b), &t)| {
            if t.abs() <= CANCEL_TOL * scale {
                (a, b, 0.0)
            } else if t > 0.0 {
                (a, b, t)
            } else {
                (b, a, -t)
            }
        })
        .collect();
    cancel_cycles(net.n_vertices(), &mut arcs);
    let theta: Vec<f64> = arcs.iter().map(|a| a.2).collect();

    let n = net.n_vertices();
    let mut is_source = vec![false; n];
    let mut is_sink = vec![false; n];
    for &v in &flow.source {
        is_source[v] = true;
    }
    for &v in &flow.sink {
        is_sink[v] = true;
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(f, _, _)) in arcs.iter().enumerate() {
        out[f].push(e);
    }

    let c = net.conductances();
    let mut paths = Vec::new();
    let mut weights = Vec::new();
    let mut split = Vec::new();
    let mut rest = theta.clone();
    for _ in 0..=m {
        let Some(edges) = positive_path(&arcs, &rest, &out, &is_source, &is_sink) else {
            let total: f64 = weights.iter().sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(Error::Invariant(format!("path weights sum to {total}, not 1")));
            }
            let family = PathFamily { source: flow.source.clone(), sink: flow.sink.clone(), paths };
            return Ok(PathDecomposition { family, weights, splitting: Splitting { members: split } });
        };
        let (k, alpha) = edges
            .iter()
            .enumerate()
            .map(|(k, &e)| (k, rest[e]))
            .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
        for &e in &edges {
            rest[e] -= alpha;
        }
        rest[edges[k]] = 0.0;
        let mut vertices = vec![arcs[edges[0]].0];
        vertices.extend(edges.iter().map(|&e| arcs[e].1));
        split.push(edges.iter().map(|&e| theta[e] / (alpha * c[e])).collect());
        weights.push(alpha);
        paths.push(Path { vertices, edges });
    }
    Err(Error::Invariant("path extraction did not terminate within |E| steps".into()))
}

/// Removes directed cycles from the positive support.
fn cancel_cycles(n: usize, arcs: &mut [(usize, usize, f64)]) {
    loop {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (e, &(f, _, t)) in arcs.iter().enumerate() {
            if t > 0.0 {
                out[f].push(e);
            }
        }
        let Some(cycle) = find_cycle(n, arcs, &out) else { return };
        let m = cycle.iter().map(|&e| arcs[e].2).fold(f64::INFINITY, f64::min);
        for &e in &cycle {
            arcs[e].2 -= m;
        }
        let k = cycle.iter().copied().find(|&e| arcs[e].2 <= 0.0).unwrap_or(cycle[0]);
        for &e in &cycle {
            if arcs[e].2 < 0.0 {
                arcs[e].2 = 0.0;
            }
        }
        arcs[k].2 = 0.0;
    }
}

fn find_cycle(n: usize, arcs: &[(usize, usize, f64)], out: &[Vec<usize>]) -> Option<Vec<usize>> {
    // 0 = new, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut via = vec![usize::MAX; n];
    for s in 0..n {
        if state[s] != 0 {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        state[s] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < out[v].len() {
                let e = out[v][*i];
                *i += 1;
                let w = arcs[e].1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        via[w] = e;
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut cycle = vec![e];
                        let mut x = v;
                        while x != w {
                            cycle.push(via[x]);
                            x = arcs[via[x]].0;
                        }
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// Depth-first search for a source-to-sink path of positive arcs; the path
/// starts at its last source vertex.
fn positive_path(
    arcs: &[(usize, usize, f64)],
    rest: &[f64],
    out: &[Vec<usize>],
    is_source: &[bool],
    is_sink: &[bool],
) -> Option<Vec<usize>> {
    let n = out.len();
    let mut seen = vec![false; n];
    let mut via = vec![usize::MAX; n];
    for s in (0..n).filter(|&v| is_source[v]) {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            if is_sink[v] && !is_source[v] {
                let mut edges = Vec::new();
                let mut x = v;
                while via[x] != usize::MAX && !is_source[x] {
                    edges.push(via[x]);
                    x = arcs[via[x]].0;
                }
                edges.reverse();
                return Some(edges);
            }
            for &e in &out[v] {
                let w = arcs[e].1;
                if rest[e] > 0.0 && !seen[w] {
                    seen[w] = true;
                    via[w] = if is_source[w] { usize::MAX } else { e };
                    stack.push(w);
                }
            }
        }
    }
    None
}

/// `(sum_P 1 / sum_{e in P} r_{e,P})^{-1}`, an upper bound on the effective
/// resistance for admissible splittings.
pub fn parallel_series_value(net: &Network, fam: &PathFamily, split: &Splitting) -> Result<LogScaled> {
    fam.validate(net)?;
    split.check_paths(net, fam)?;
    if fam.paths.is_empty() {
        return Ok(LogScaled::infinite());
    }
    let s: f64 = split.members.iter().map(|m| 1.0 / m.iter().sum::<f64>()).sum();
    Ok(net.resistance(1.0 / s))
}

/// `(sum_pi 1 / sum_{e in pi} c_{e,pi})^{-1}`, an upper bound on the
/// effective conductance for admissible splittings.
pub fn series_parallel_value(net: &Network, fam: &CutsetFamily, split: &Splitting) -> Result<LogScaled> {
    fam.validate(net)?;
    split.check_cutsets(net, fam)?;
    if fam.cutsets.is_empty() {
        return Ok(net.conductance(f64::INFINITY));
    }
    let s: f64 = split.members.iter().map(|m| 1.0 / m.iter().sum::<f64>()).sum();
    Ok(net.conductance(1.0 / s))
}

/// `sum_pi (sum_{e in pi} c_e)^{-1}` for disjoint cutsets, a lower bound on
/// the effective resistance.
pub fn nash_williams_bound(net: &Network, fam: &CutsetFamily) -> Result<LogScaled> {
    fam.validate(net)?;
    let mut used = vec![false; net.n_edges()];
    for cut in &fam.cutsets {
        for &e in cut {
            if std::mem::replace(&mut used[e], true) {
                return invalid("cutsets must be disjoint");
            }
        }
    }
    let c = net.conductances();
    let s: f64 = fam.cutsets.iter().map(|cut| 1.0 / cut.iter().map(|&e| c[e]).sum::<f64>()).sum();
    Ok(net.resistance(s))
}

/// Peels level cutsets of a harmonic potential from the high side:
/// between consecutive distinct values `t_k > t_{k+1}` the cutset is every
/// edge spanning the band, `alpha = t_k - t_{k+1}` and
/// `c_{e,pi} = |dF(e)| c_e / alpha`.
pub fn potential_cutset_decomposition(net: &Network, pot: &Potential) -> Result<CutsetDecomposition> {
    if pot.values.len() != net.n_vertices() {
        return invalid("potential length differs from the vertex count");
    }
    let res = pot.harmonic_residual(net);
    if res > HARMONIC_TOL {
        return Err(Error::Invariant(format!("potential is not harmonic (residual {res:e})")));
    }
    if pot.values.iter().any(|v| !(-CANCEL_TOL..=1.0 + CANCEL_TOL).contains(v)) {
        return Err(Error::Invariant("potential leaves [0, 1]".into()));
    }
    // Solver rounding may leave values a hair outside [0, 1].
    let clamped: Vec<f64> = pot.values.iter().map(|v| v.clamp(0.0, 1.0)).collect();
    let f = &clamped;
    let mut levels: Vec<f64> = f.clone();
    levels.sort_by(|a, b| b.total_cmp(a));
    levels.dedup();
    let c = net.conductances();
    let mut cutsets = Vec::new();
    let mut weights = Vec::new();
    let mut split = Vec::new();
    for w in levels.windows(2) {
        let (hi, lo) = (w[0], w[1]);
        let alpha = hi - lo;
        let cut: Vec<usize> = net
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| f[a].max(f[b]) >= hi && f[a].min(f[b]) <= lo)
            .map(|(e, _)| e)
            .collect();
        if cut.is_empty() {
            continue;
        }
        split.push(cut.iter().map(|&e| (f[net.edges()[e].0] - f[net.edges()[e].1]).abs() * c[e] / alpha).collect());
        cutsets.push(cut);
        weights.push(alpha);
    }
    let family = CutsetFamily::new(net, pot.high.clone(), pot.low.clone(), cutsets)?;
    Ok(CutsetDecomposition { family, weights, splitting: Splitting { members: split } })
}

/// All simple paths from `a` to `b`, each edge choice counted separately;
/// fails once more than `limit` paths are found.
pub fn enumerate_simple_paths(net: &Network, a: usize, b: usize, limit: usize) -> Result<Vec<Path>> {
    let inc = net.incidence();
    let mut found = Vec::new();
    let mut on = vec![false; net.n_vertices()];
    let mut vertices = vec![a];
    let mut edges = Vec::new();
    on[a] = true;
    fn rec(
        net: &Network,
        inc: &[Vec<usize>],
        b: usize,
        limit: usize,
        on: &mut [bool],
        vertices: &mut Vec<usize>,
        edges: &mut Vec<usize>,
        found: &mut Vec<Path>,
    ) -> Result<()> {
        let v = *vertices.last().unwrap();
        if v == b {
            if found.len() >= limit {
                return Err(Error::ResourceLimit(format!("more than {limit} simple paths")));
            }
            found.push(Path { vertices: vertices.clone(), edges: edges.clone() });
            return Ok(());
        }
        for &e in &inc[v] {
            let (x, y) = net.edges()[e];
            let w = if x == v { y } else { x };
            if on[w] {
                continue;
            }
            on[w] = true;
            vertices.push(w);
            edges.push(e);
            rec(net, inc, b, limit, on, vertices, edges, found)?;
            edges.pop();
            vertices.pop();
            on[w] = false;
        }
        Ok(())
    }
    if a != b {
        rec(net, &inc, b, limit, &mut on, &mut vertices, &mut edges, &mut found)?;
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enet::{effective_conductance, effective_resistance, harmonic_potential, optimal_flow};

    fn cycle() -> Network {
        Network::from_conductances(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)]).unwrap()
    }

    #[test]
    fn series_chain() {
        let net = Network::from_conductances(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let d = flow_path_decomposition(&net, &optimal_flow(&net, &[0], &[2]).unwrap()).unwrap();
        assert_eq!(d.weights, vec![1.0]);
        assert_eq!(d.family.paths[0].vertices, vec![0, 1, 2]);
        let c = potential_cutset_decomposition(&net, &harmonic_potential(&net, &[0], &[2]).unwrap()).unwrap();
        assert_eq!(c.weights, vec![0.5, 0.5]);
        assert_eq!(c.family.cutsets, vec![vec![0], vec![1]]);
        let v = series_parallel_value(&net, &c.family, &c.splitting).unwrap().value();
        assert!((v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn parallel_pair() {
        let net = Network::from_conductances(2, &[(0, 1, 1.0), (0, 1, 1.0)]).unwrap();
        let d = flow_path_decomposition(&net, &optimal_flow(&net, &[0], &[1]).unwrap()).unwrap();
        assert_eq!(d.weights, vec![0.5, 0.5]);
        let c = potential_cutset_decomposition(&net, &harmonic_potential(&net, &[0], &[1]).unwrap()).unwrap();
        assert_eq!(c.family.cutsets.len(), 1);
        assert!((series_parallel_value(&net, &c.family, &c.splitting).unwrap().value() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn four_cycle_recomposes() {
        let net = cycle();
        let d = flow_path_decomposition(&net, &optimal_flow(&net, &[0], &[1]).unwrap()).unwrap();
        let mut w = d.weights.clone();
        w.sort_by(f64::total_cmp);
        assert!((w[0] - 0.25).abs() < 1e-14 && (w[1] - 0.75).abs() < 1e-14);
        let v = parallel_series_value(&net, &d.family, &d.splitting).unwrap().value();
        assert!((v - 0.75).abs() < 1e-14);
        let c = potential_cutset_decomposition(&net, &harmonic_potential(&net, &[0], &[1]).unwrap()).unwrap();
        let v = series_parallel_value(&net, &c.family, &c.splitting).unwrap().value();
        assert!((v - 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn homogeneity_and_admissibility() {
        let net = Network::from_conductances(3, &[(0, 1, 2.0), (1, 2, 0.5)]).unwrap();
        let fam = PathFamily::new(&net, vec![0], vec![2], vec![Path::from_vertices(&net, vec![0, 1, 2]).unwrap()]).unwrap();
        let id = Splitting::identity_paths(&net, &fam);
        let v = parallel_series_value(&net, &fam, &id).unwrap().value();
        assert!((v - 2.5).abs() < 1e-15);
        let v2 = parallel_series_value(&net, &fam, &id.scaled(2.0)).unwrap().value();
        assert!((v2 - 5.0).abs() < 1e-15);
        assert!(parallel_series_value(&net, &fam, &id.scaled(0.5)).is_err());
    }

    #[test]
    fn cycles_are_cancelled() {
        let net = cycle();
        // Unit flow 0 -> 1 plus a circulation around the cycle.
        let f = Flow::new(vec![0], vec![1], vec![1.5, 0.5, 0.5, 0.5]);
        let d = flow_path_decomposition(&net, &f).unwrap();
        assert_eq!(d.family.paths.len(), 1);
        assert_eq!(d.family.paths[0].vertices, vec![0, 1]);
    }

    #[test]
    fn grid_sets_recompose() {
        let d = crate::lattice::LatticeBox::new(0, 3, 0, 2).unwrap();
        let f = crate::fieldlab::FieldSample::synthetic(d, |p| ((p.0 * 3 + p.1 * 5) as f64).sin());
        let net = Network::from_field(&f, 1.0).unwrap();
        let a = net.vertices_of(&d.left_side()).unwrap();
        let b = net.vertices_of(&d.right_side()).unwrap();
        let r = effective_resistance(&net, &a, &b).unwrap();
        let dec = flow_path_decomposition(&net, &optimal_flow(&net, &a, &b).unwrap()).unwrap();
        let v = parallel_series_value(&net, &dec.family, &dec.splitting).unwrap();
        assert!((v.ln() - r.ln()).abs() < 1e-10);
        let c = effective_conductance(&net, &a, &b).unwrap();
        let cd = potential_cutset_decomposition(&net, &harmonic_potential(&net, &a, &b).unwrap()).unwrap();
        let v = series_parallel_value(&net, &cd.family, &cd.splitting).unwrap();
        assert!((v.ln() - c.ln()).abs() < 1e-10);
    }

    #[test]
    fn enumerates_paths() {
        let net = cycle();
        assert_eq!(enumerate_simple_paths(&net, 0, 2, 10).unwrap().len(), 2);
        assert!(enumerate_simple_paths(&net, 0, 2, 1).is_err());
    }
}
