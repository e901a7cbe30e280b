//! The potential kernel of the planar simple random walk.

use std::sync::OnceLock;

use super::green::{GreenOracle, KilledDomain};
use super::DirichletSpec;
use crate::error::Result;
use crate::lattice::{LatticeBox, Point};

/// `2 / pi`, the coefficient of the logarithm.
pub const G_CONST: f64 = std::f64::consts::FRAC_2_PI;

/// Radius from which the asymptotic expansion is used.
pub const ASYMPTOTIC_CUTOFF: f64 = 32.0;

/// Tabulated potential kernel: exact limits on a box around the origin and
/// `g log|x| + c0` beyond the cutoff.
#[derive(Debug, Clone)]
pub struct PotentialKernel {
    table_box: LatticeBox,
    table: Vec<f64>,
    c0: f64,
    cutoff: f64,
}

impl PotentialKernel {
    /// Computes `G_{B(N)}(0,0) - G_{B(N)}(0,x)` for each `N` in
    /// `sizes` (three sizes, each doubling the previous) and extrapolates
    /// the limit in powers of `1/N^2`; `c0` is fitted on the ring
    /// `cutoff - 4 <= |x| < cutoff`.
    pub fn compute(sizes: [i32; 3], cutoff: f64) -> Result<Self> {
        let r = cutoff.ceil() as i32;
        let table_box = LatticeBox::ball(r);
        let mut levels = Vec::new();
        for &n in &sizes {
            let d = LatticeBox::ball(n + 1);
            let oracle = GreenOracle::new(KilledDomain::new(d, DirichletSpec::Boundary.mask(&d)?)?)?;
            let col = oracle.column((0, 0))?;
            let g00 = col[d.index((0, 0)).unwrap()];
            levels.push(table_box.points().map(|p| g00 - col[d.index(p).unwrap()]).collect::<Vec<f64>>());
        }
        let table: Vec<f64> = (0..table_box.len())
            .map(|i| {
                let (f1, f2, f3) = (levels[0][i], levels[1][i], levels[2][i]);
                let r1 = (4.0 * f2 - f1) / 3.0;
                let r2 = (4.0 * f3 - f2) / 3.0;
                (16.0 * r2 - r1) / 15.0
            })
            .collect();
        let mut acc = 0.0;
        let mut cnt = 0usize;
        for (i, p) in table_box.points().enumerate() {
            let norm = euclid(p);
            if norm >= cutoff - 4.0 && norm < cutoff {
                acc += table[i] - G_CONST * norm.ln();
                cnt += 1;
            }
        }
        Ok(PotentialKernel { table_box, table, c0: acc / cnt as f64, cutoff })
    }

    /// The fitted additive constant of the asymptotic expansion.
    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn value(&self, x: Point) -> f64 {
        let norm = euclid(x);
        if norm < self.cutoff {
            if let Some(i) = self.table_box.index(x) {
                return self.table[i];
            }
        }
        if norm == 0.0 {
            return 0.0;
        }
        G_CONST * norm.ln() + self.c0
    }

    /// Covariance of the field pinned at the origin.
    pub fn pinned_covariance(&self, u: Point, v: Point) -> f64 {
        self.value(u) + self.value(v) - self.value((u.0 - v.0, u.1 - v.1))
    }
}

fn euclid(p: Point) -> f64 {
    ((p.0 as f64).powi(2) + (p.1 as f64).powi(2)).sqrt()
}

static DEFAULT: OnceLock<PotentialKernel> = OnceLock::new();

/// Shared kernel built from boxes of radius 64, 128 and 256.
pub fn default_kernel() -> &'static PotentialKernel {
    DEFAULT.get_or_init(|| PotentialKernel::compute([64, 128, 256], ASYMPTOTIC_CUTOFF).expect("unit Green solves"))
}

/// The potential kernel `a(x)`.
pub fn potential_kernel(x: Point) -> f64 {
    default_kernel().value(x)
}

/// `a(u) + a(v) - a(u - v)`, the covariance of the pinned field.
pub fn pinned_covariance(u: Point, v: Point) -> f64 {
    default_kernel().pinned_covariance(u, v)
}
