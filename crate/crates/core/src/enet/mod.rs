//! Electrical networks: effective resistance and conductance, flows and
//! potentials, path and cutset decompositions, restricted resistances,
//! reciprocal networks, crossing and annulus resistances.

pub mod crossing;
pub mod decompose;
pub mod duality;
pub mod flow;
pub mod network;
pub mod restricted;
pub mod shift;
pub mod solve;
pub mod threenode;

pub use crossing::{
    annulus_rectangles, annulus_resistance, crossing_resistance, log_sum, restricted_crossing, AnnulusDirection,
    Orientation,
};
pub use decompose::{
    connected_avoiding, enumerate_simple_paths, flow_path_decomposition, nash_williams_bound, parallel_series_value,
    potential_cutset_decomposition, series_parallel_value, CutsetDecomposition, CutsetFamily, Path, PathDecomposition,
    PathFamily, Splitting,
};
pub use duality::{duality_gap, rectangle_duality_gap, rectangle_pairs, CrossingPairs};
pub use flow::{dirichlet_energy, thomson_energy, Flow, Potential};
pub use network::{LogScaled, Network, Provenance};
pub use restricted::{restricted_program, restricted_resistance};
pub use shift::{field_shift_bound_check, ShiftCheck};
pub use solve::{
    effective_conductance, effective_resistance, harmonic_potential, optimal_flow, resistance_between, solve_pair,
    GroundedSystem, PairSolution, ResistanceReport,
};
pub use threenode::{boundary_triple, resistance_difference_d, three_node_voltage, voltage_formula_error, BoundaryTriple};

use crate::error::Result;
use crate::fieldlab::FieldSample;

/// Nearest-neighbour network with conductances `exp(gamma (eta_u + eta_v))`.
pub fn network_from_field(field: &FieldSample, gamma: f64) -> Result<Network> {
    Network::from_field(field, gamma)
}

/// Same graph with resistances and conductances exchanged.
pub fn reciprocal_network(net: &Network) -> Network {
    net.reciprocal()
}

/// Maximum degree and largest ratio of resistances of adjacent edges.
pub fn degree_and_rho(net: &Network) -> (usize, f64) {
    net.degree_and_rho()
}
