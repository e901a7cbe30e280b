//! Gibbs-Markov decomposition and harmonic measure.

use std::collections::BTreeMap;

use super::green::{GreenOracle, KilledDomain};
use super::{FieldKind, FieldSample};
use crate::error::{invalid, Error, Result};
use crate::lattice::{add, LatticeBox, Point, DIRS};
use crate::linalg::{GroundedLaplacian, LdlFactor};

/// A field written as coarse (harmonic on the subdomain) plus fine (zero
/// off the subdomain) parts.
#[derive(Debug, Clone)]
pub struct GibbsMarkovSplit {
    pub coarse: FieldSample,
    pub fine: FieldSample,
    /// Largest discrete Laplacian of `coarse` over the subdomain.
    pub harmonic_residual: f64,
}

/// Splits `field` on `subdomain` (a set of free vertices of its domain).
/// Neighbours outside the field's domain carry boundary value zero.
pub fn gibbs_markov_split(field: &FieldSample, subdomain: &[Point]) -> Result<GibbsMarkovSplit> {
    let dom = field.domain;
    let mut inside = vec![false; dom.len()];
    for &p in subdomain {
        let i = dom.index_of(p)?;
        if field.dirichlet[i] {
            return invalid(format!("subdomain vertex {p:?} lies in the Dirichlet set"));
        }
        inside[i] = true;
    }
    let sub: Vec<usize> = (0..dom.len()).filter(|&i| inside[i]).collect();
    if sub.is_empty() {
        return invalid("empty subdomain");
    }
    let mut slot = vec![usize::MAX; dom.len()];
    for (s, &i) in sub.iter().enumerate() {
        slot[i] = s;
    }
    let mut edges = Vec::new();
    let mut ground = vec![0.0; sub.len()];
    let mut rhs = vec![0.0; sub.len()];
    let mut has_data = false;
    for (s, &i) in sub.iter().enumerate() {
        let p = dom.point(i);
        for d in DIRS {
            match dom.index(add(p, d)) {
                Some(j) if inside[j] => {
                    if s < slot[j] {
                        edges.push((s, slot[j], 1.0));
                    }
                }
                Some(j) => {
                    has_data = true;
                    ground[s] += 1.0;
                    rhs[s] += field.values[j];
                }
                None => ground[s] += 1.0,
            }
        }
    }
    if !has_data {
        return Err(Error::InvalidArgument("no boundary values: the subdomain fills the domain".into()));
    }
    let lap = GroundedLaplacian::from_edges(sub.len(), edges, ground)?;
    let coords: Vec<Option<Point>> = sub.iter().map(|&i| Some(dom.point(i))).collect();
    let h = LdlFactor::new(&lap, Some(&coords))?.solve(&rhs);

    let mut coarse = field.values.clone();
    for (s, &i) in sub.iter().enumerate() {
        coarse[i] = h[s];
    }
    let fine: Vec<f64> = field.values.iter().zip(&coarse).map(|(f, c)| f - c).collect();
    let scale = field.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut residual = 0.0f64;
    for &i in &sub {
        let p = dom.point(i);
        let mut lap = 4.0 * coarse[i];
        for d in DIRS {
            lap -= dom.index(add(p, d)).map(|j| coarse[j]).unwrap_or(0.0);
        }
        residual = residual.max(lap.abs() / scale);
    }
    let mk = |values: Vec<f64>| FieldSample {
        domain: dom,
        values,
        dirichlet: field.dirichlet.clone(),
        kind: FieldKind::Synthetic,
        seed: field.seed,
    };
    Ok(GibbsMarkovSplit { coarse: mk(coarse), fine: mk(fine), harmonic_residual: residual })
}

/// Exit distribution of the simple random walk from `x`, killed on the
/// Dirichlet mask or on leaving `domain`. Support points are Dirichlet
/// vertices of the domain or vertices just outside it.
pub fn harmonic_measure(domain: LatticeBox, dirichlet: Vec<bool>, x: Point) -> Result<Vec<(Point, f64)>> {
    let i = domain.index_of(x)?;
    if dirichlet.get(i).copied().unwrap_or(false) {
        return Ok(vec![(x, 1.0)]);
    }
    let oracle = GreenOracle::new(KilledDomain::new(domain, dirichlet)?)?;
    harmonic_measure_with(&oracle, x)
}

/// Same as [`harmonic_measure`] reusing a factored oracle.
pub fn harmonic_measure_with(oracle: &GreenOracle, x: Point) -> Result<Vec<(Point, f64)>> {
    let kd = oracle.killed_domain();
    let dom = kd.domain;
    let col = oracle.column(x)?;
    let mut mass: BTreeMap<(i32, i32), f64> = BTreeMap::new();
    for &i in kd.free() {
        let p = dom.point(i);
        for d in DIRS {
            let q = add(p, d);
            if !kd.is_free(q) {
                *mass.entry((q.1, q.0)).or_insert(0.0) += col[i] / 4.0;
            }
        }
    }
    Ok(mass.into_iter().filter(|(_, m)| *m > 0.0).map(|((y, x), m)| ((x, y), m)).collect())
}
