//! Jacobi-preconditioned conjugate gradients.

use super::{GroundedLaplacian, SolveOutput};
use crate::error::{Error, Result};

/// Solves `lap x = b` to relative residual `tol` (2-norm).
pub fn pcg(lap: &GroundedLaplacian, b: &[f64], tol: f64, max_iter: usize) -> Result<SolveOutput> {
    let n = lap.n();
    let dinv: Vec<f64> = lap.diag().iter().map(|d| if *d > 0.0 { 1.0 / d } else { 0.0 }).collect();
    let bnorm = norm(b);
    let mut x = vec![0.0; n];
    if bnorm == 0.0 {
        return Ok(SolveOutput { x, iterations: 0, residual: 0.0 });
    }
    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(&dinv).map(|(r, d)| r * d).collect();
    let mut p = z.clone();
    let mut ap = vec![0.0; n];
    let mut rz = dot(&r, &z);
    for it in 1..=max_iter {
        lap.apply(&p, &mut ap);
        let pap = dot(&p, &ap);
        if !(pap > 0.0) {
            return Err(Error::Singular("conjugate gradients met a nonpositive curvature".into()));
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rel = norm(&r) / bnorm;
        if rel <= tol {
            let residual = lap.relative_residual(&x, b);
            return Ok(SolveOutput { x, iterations: it, residual });
        }
        for i in 0..n {
            z[i] = r[i] * dinv[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(Error::NoConvergence { iterations: max_iter, residual: norm(&r) / bnorm })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
