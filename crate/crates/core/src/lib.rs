//! Numerical laboratory for random walks among conductances
//! `exp(gamma * (eta_u + eta_v))` driven by the two-dimensional discrete
//! Gaussian free field.

pub mod enet;
pub mod error;
pub mod exper;
pub mod fieldlab;
pub mod lattice;
pub mod linalg;
pub mod numfmt;
pub mod rng;
pub mod walklab;

pub use error::{Error, Result};
pub use lattice::{LatticeBox, Point};
