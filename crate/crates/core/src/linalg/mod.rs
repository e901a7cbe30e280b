//! Sparse symmetric solvers for grounded graph Laplacians.
//!
//! Every linear system in the laboratory has the form `L x = b` where `L` is a
//! weighted graph Laplacian plus a nonnegative diagonal "grounding" (edges to
//! Dirichlet or glued sink vertices). The default solver is a
//! subtraction-free sparse `LDL^T` factorization, which keeps full relative
//! accuracy even when edge weights span many orders of magnitude.

pub mod cg;
pub mod dense;
pub mod laplacian;
pub mod ldl;
pub mod ordering;

pub use laplacian::GroundedLaplacian;
pub use ldl::LdlFactor;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lattice::Point;

/// Which linear solver to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    /// Sparse subtraction-free `LDL^T` with nested-dissection ordering.
    #[default]
    Direct,
    /// Jacobi-preconditioned conjugate gradients.
    Cg,
    /// Dense factorization (small systems, cross-checks).
    Dense,
}

/// Result of a single solve.
#[derive(Debug, Clone)]
pub struct SolveOutput {
    pub x: Vec<f64>,
    /// Iterations used (CG) or zero for direct methods.
    pub iterations: usize,
    /// Relative residual `|Lx - b|_inf / |b|_inf`.
    pub residual: f64,
}

/// Default relative tolerance of the iterative solver.
pub const CG_TOL: f64 = 1e-10;

/// Solves `lap x = b` with the requested method.
pub fn solve(
    lap: &GroundedLaplacian,
    coords: Option<&[Option<Point>]>,
    b: &[f64],
    kind: SolverKind,
) -> Result<SolveOutput> {
    match kind {
        SolverKind::Direct => {
            let f = LdlFactor::new(lap, coords)?;
            let x = f.solve(b);
            let residual = lap.relative_residual(&x, b);
            Ok(SolveOutput { x, iterations: 0, residual })
        }
        SolverKind::Cg => cg::pcg(lap, b, CG_TOL, 20 * lap.n() + 1000),
        SolverKind::Dense => {
            let x = dense::solve_spd(&lap.to_dense(), lap.n(), b)?;
            let residual = lap.relative_residual(&x, b);
            Ok(SolveOutput { x, iterations: 0, residual })
        }
    }
}
