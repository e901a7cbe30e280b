//! Gaussian free field sampling, Green functions and field decompositions.

pub mod concentric;
mod field;
pub mod gibbs;
pub mod green;
pub mod io;
pub mod lazy;
pub mod levelset;
pub mod lil;
pub mod potential;
pub mod sample;

pub use concentric::{concentric_trace, ConcentricProbe, ConcentricTrace};
pub use field::{DirichletSpec, FieldKind, FieldSample};
pub use gibbs::{gibbs_markov_split, harmonic_measure, GibbsMarkovSplit};
pub use green::{green_matrix, BoxSpectrum, GreenOracle, KilledDomain};
pub use lazy::LazyKernelSplit;
pub use levelset::{level_set, LevelSetReport};
pub use lil::{lil_count, lil_phi};
pub use potential::{pinned_covariance, potential_kernel, G_CONST};
pub use sample::{sample_dgff, sample_pinned_window, DgffSampler, PinnedWindowSampler};
