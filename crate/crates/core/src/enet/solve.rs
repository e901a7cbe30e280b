use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{self, GroundedLaplacian, LdlFactor, SolveOutput, SolverKind};
use crate::lattice::Point;

use super::flow::{Flow, Potential};
use super::network::{LogScaled, Network};

/// Reduced Laplacian of a network with a grounded vertex set and optional
/// glued sets, restricted to the part connected to the ground.
///
/// Factorizes once (for the direct solver) and serves many right-hand
/// sides.
pub struct GroundedSystem<'a> {
    net: &'a Network,
    unknown: Vec<Option<usize>>,
    grounded: Vec<bool>,
    lap: GroundedLaplacian,
    coords: Vec<Option<Point>>,
    kind: SolverKind,
    factor: Option<LdlFactor>,
}

impl<'a> GroundedSystem<'a> {
    /// `ground` is held at potential zero; each set in `glue` becomes a
    /// single node. Sets must be disjoint from each other and from `ground`.
    pub fn new(net: &'a Network, ground: &[usize], glue: &[&[usize]], kind: SolverKind) -> Result<Self> {
        let n = net.n_vertices();
        if ground.is_empty() {
            return invalid("ground set is empty");
        }
        const FREE: usize = usize::MAX;
        const GROUND: usize = usize::MAX - 1;
        let mut node = vec![FREE; n];
        for &v in ground {
            check_vertex(net, v)?;
            node[v] = GROUND;
        }
        let mut count = 0;
        for set in glue {
            if set.is_empty() {
                return invalid("glued set is empty");
            }
            for &v in *set {
                check_vertex(net, v)?;
                if node[v] != FREE && node[v] != count {
                    return invalid("glued sets and ground must be disjoint");
                }
                node[v] = count;
            }
            count += 1;
        }
        for v in 0..n {
            if node[v] == FREE {
                node[v] = count;
                count += 1;
            }
        }

        // Nodes reachable from the ground through the glued graph.
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); count];
        let mut touches = vec![false; count];
        for &(a, b) in net.edges() {
            let (na, nb) = (node[a], node[b]);
            match (na == GROUND, nb == GROUND) {
                (true, true) => {}
                (true, false) => touches[nb] = true,
                (false, true) => touches[na] = true,
                _ if na != nb => {
                    adj[na].push(nb);
                    adj[nb].push(na);
                }
                _ => {}
            }
        }
        let mut live = touches.clone();
        let mut stack: Vec<usize> = (0..count).filter(|&i| touches[i]).collect();
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !live[j] {
                    live[j] = true;
                    stack.push(j);
                }
            }
        }
        let mut slot = vec![usize::MAX; count];
        let mut m = 0;
        for i in 0..count {
            if live[i] {
                slot[i] = m;
                m += 1;
            }
        }

        let mut coords = vec![None; m];
        let mut glued_node = vec![false; m];
        for k in 0..glue.len() {
            if live[k] {
                glued_node[slot[k]] = true;
            }
        }
        let mut unknown = vec![None; n];
        let mut grounded = vec![false; n];
        for v in 0..n {
            match node[v] {
                GROUND => grounded[v] = true,
                i if live[i] => {
                    unknown[v] = Some(slot[i]);
                    if !glued_node[slot[i]] {
                        coords[slot[i]] = net.coord(v);
                    }
                }
                _ => {}
            }
        }

        let c = net.conductances();
        let mut gvec = vec![0.0; m];
        let mut list = Vec::new();
        for (e, &(a, b)) in net.edges().iter().enumerate() {
            match (unknown[a], unknown[b], grounded[a], grounded[b]) {
                (Some(i), Some(j), _, _) if i != j => list.push((i, j, c[e])),
                (Some(i), None, _, true) | (None, Some(i), true, _) => gvec[i] += c[e],
                _ => {}
            }
        }
        let lap = GroundedLaplacian::from_edges(m, list, gvec)?;
        let factor = match kind {
            SolverKind::Direct if m > 0 => Some(LdlFactor::new(&lap, Some(&coords))?),
            _ => None,
        };
        Ok(GroundedSystem { net, unknown, grounded, lap, coords, kind, factor })
    }

    pub fn network(&self) -> &Network {
        self.net
    }

    /// Index of the unknown carrying vertex `v` (`None` for grounded or
    /// floating vertices).
    pub fn unknown(&self, v: usize) -> Option<usize> {
        self.unknown[v]
    }

    pub fn is_grounded(&self, v: usize) -> bool {
        self.grounded[v]
    }

    pub fn n_unknowns(&self) -> usize {
        self.lap.n()
    }

    pub fn laplacian(&self) -> &GroundedLaplacian {
        &self.lap
    }

    /// Solves the reduced system for a right-hand side indexed by unknowns.
    pub fn solve_unknowns(&self, b: &[f64]) -> Result<SolveOutput> {
        let out = match &self.factor {
            Some(f) => {
                let x = f.solve(b);
                let residual = self.lap.relative_residual(&x, b);
                SolveOutput { x, iterations: 0, residual }
            }
            None => linalg::solve(&self.lap, Some(&self.coords), b, self.kind)?,
        };
        if out.x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical("non-finite solution".into()));
        }
        Ok(out)
    }

    /// Vertex potentials for a unit current injected at `v` and extracted at
    /// the ground; `None` if `v` is grounded or cut off from the ground.
    /// Floating vertices get potential zero.
    pub fn unit_potential(&self, v: usize) -> Result<Option<(Vec<f64>, SolveOutput)>> {
        let Some(i) = self.unknown[v] else { return Ok(None) };
        let mut b = vec![0.0; self.n_unknowns()];
        b[i] = 1.0;
        let out = self.solve_unknowns(&b)?;
        Ok(Some((self.scatter(&out.x), out)))
    }

    pub fn scatter(&self, x: &[f64]) -> Vec<f64> {
        self.unknown.iter().map(|u| u.map_or(0.0, |i| x[i])).collect()
    }

    /// Relative resistance between `v` (or its glued set) and the ground.
    pub fn resistance_to_ground(&self, v: usize) -> Result<f64> {
        Ok(match self.unit_potential(v)? {
            Some((x, _)) => x[v],
            None if self.grounded[v] => 0.0,
            None => f64::INFINITY,
        })
    }
}

fn check_vertex(net: &Network, v: usize) -> Result<()> {
    if v >= net.n_vertices() {
        return invalid(format!("vertex {v} out of range"));
    }
    Ok(())
}

/// Full solution of a two-set resistance problem.
#[derive(Debug, Clone)]
pub struct PairSolution {
    pub resistance: LogScaled,
    pub potential: Potential,
    pub flow: Flow,
    pub residual: f64,
    pub iterations: usize,
}

/// JSON resistance report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResistanceReport {
    #[serde(with = "crate::numfmt")]
    pub value_log: f64,
    #[serde(with = "crate::numfmt")]
    pub value: f64,
    pub source: Vec<Point>,
    pub target: Vec<Point>,
    pub residual: f64,
    pub iterations: usize,
}

impl ResistanceReport {
    pub fn new(net: &Network, a: &[usize], b: &[usize], sol: &PairSolution) -> Self {
        let pts = |s: &[usize]| s.iter().filter_map(|&v| net.coord(v)).collect();
        ResistanceReport {
            value_log: sol.resistance.ln(),
            value: sol.resistance.value(),
            source: pts(a),
            target: pts(b),
            residual: sol.residual,
            iterations: sol.iterations,
        }
    }
}

fn check_sets(net: &Network, a: &[usize], b: &[usize]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return invalid("source and target sets must be nonempty");
    }
    let mut mark = vec![0u8; net.n_vertices()];
    for &v in a {
        check_vertex(net, v)?;
        mark[v] = 1;
    }
    for &v in b {
        check_vertex(net, v)?;
        if mark[v] == 1 {
            return invalid("source and target sets must be disjoint");
        }
    }
    Ok(())
}

/// Glues `a`, grounds `b`, and solves for the unit current flow.
pub fn solve_pair(net: &Network, a: &[usize], b: &[usize], kind: SolverKind) -> Result<PairSolution> {
    check_sets(net, a, b)?;
    let sys = GroundedSystem::new(net, b, &[a], kind)?;
    let Some((x, out)) = sys.unit_potential(a[0])? else {
        return Ok(PairSolution {
            resistance: LogScaled::infinite(),
            potential: Potential::new(net, a, b, pinned(net, a))?,
            flow: Flow::new(a.to_vec(), b.to_vec(), vec![0.0; net.n_edges()]),
            residual: 0.0,
            iterations: 0,
        });
    };
    let r = x[a[0]];
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Numerical(format!("resistance {r} is not positive")));
    }
    let c = net.conductances();
    let theta = net.edges().iter().enumerate().map(|(e, &(u, v))| c[e] * (x[u] - x[v])).collect();
    let mut f: Vec<f64> = x.iter().map(|xi| xi / r).collect();
    for &v in a {
        f[v] = 1.0;
    }
    for &v in b {
        f[v] = 0.0;
    }
    Ok(PairSolution {
        resistance: net.resistance(r),
        potential: Potential::new(net, a, b, f)?,
        flow: Flow::new(a.to_vec(), b.to_vec(), theta),
        residual: out.residual,
        iterations: out.iterations,
    })
}

fn pinned(net: &Network, a: &[usize]) -> Vec<f64> {
    let mut f = vec![0.0; net.n_vertices()];
    for &v in a {
        f[v] = 1.0;
    }
    f
}

/// Effective resistance between vertex sets, infinite when they are not
/// connected.
pub fn effective_resistance(net: &Network, a: &[usize], b: &[usize]) -> Result<LogScaled> {
    Ok(solve_pair(net, a, b, SolverKind::Direct)?.resistance)
}

/// Effective conductance between vertex sets, zero when they are not
/// connected.
pub fn effective_conductance(net: &Network, a: &[usize], b: &[usize]) -> Result<LogScaled> {
    let r = effective_resistance(net, a, b)?;
    Ok(if r.is_infinite() { net.conductance(0.0) } else { r.recip() })
}

/// Effective resistance between lattice point sets.
pub fn resistance_between(net: &Network, a: &[Point], b: &[Point]) -> Result<LogScaled> {
    effective_resistance(net, &net.vertices_of(a)?, &net.vertices_of(b)?)
}

/// Unit current flow from `a` to `b` minimizing the Thomson energy.
pub fn optimal_flow(net: &Network, a: &[usize], b: &[usize]) -> Result<Flow> {
    Ok(solve_pair(net, a, b, SolverKind::Direct)?.flow)
}

/// Potential equal to 1 on `a`, 0 on `b`, harmonic elsewhere.
pub fn harmonic_potential(net: &Network, a: &[usize], b: &[usize]) -> Result<Potential> {
    Ok(solve_pair(net, a, b, SolverKind::Direct)?.potential)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_cycle() -> Network {
        Network::from_conductances(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)]).unwrap()
    }

    #[test]
    fn series_parallel_and_cycle() {
        let path = Network::from_conductances(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert!((effective_resistance(&path, &[0], &[2]).unwrap().value() - 2.0).abs() < 1e-14);
        let par = Network::from_conductances(2, &[(0, 1, 1.0), (0, 1, 1.0)]).unwrap();
        assert!((effective_resistance(&par, &[0], &[1]).unwrap().value() - 0.5).abs() < 1e-14);
        assert!((effective_conductance(&par, &[0], &[1]).unwrap().value() - 2.0).abs() < 1e-14);
        let cyc = four_cycle();
        assert!((effective_resistance(&cyc, &[0], &[1]).unwrap().value() - 0.75).abs() < 1e-14);
        assert!((effective_conductance(&cyc, &[0], &[1]).unwrap().value() - 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn disconnected_is_infinite() {
        let net = Network::from_conductances(4, &[(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert!(effective_resistance(&net, &[0], &[3]).unwrap().is_infinite());
        assert_eq!(effective_conductance(&net, &[0], &[3]).unwrap().relative, 0.0);
        // Gluing across components connects them.
        let r = effective_resistance(&net, &[0, 2], &[1, 3]).unwrap();
        assert!((r.value() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_sets() {
        let net = four_cycle();
        assert!(effective_resistance(&net, &[], &[1]).is_err());
        assert!(effective_resistance(&net, &[0, 1], &[1]).is_err());
    }

    #[test]
    fn solvers_agree() {
        let d = crate::lattice::LatticeBox::ball(4);
        let f = crate::fieldlab::FieldSample::synthetic(d, |p| ((p.0 * 5 - p.1 * 3) as f64).cos());
        let net = Network::from_field(&f, 1.3).unwrap();
        let a = [net.vertex_of((0, 0)).unwrap()];
        let b = net.vertices_of(&d.ring()).unwrap();
        let vals: Vec<f64> = [SolverKind::Direct, SolverKind::Cg, SolverKind::Dense]
            .iter()
            .map(|&k| solve_pair(&net, &a, &b, k).unwrap().resistance.ln())
            .collect();
        assert!((vals[0] - vals[1]).abs() < 1e-8);
        assert!((vals[0] - vals[2]).abs() < 1e-12);
    }
}
