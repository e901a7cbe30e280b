//! The random walk among conductances: kernels, stationary measure, exact
//! heat-kernel and exit-time computations, simulation and continuous-time
//! variants.

pub mod ctmc;
pub mod exit;
pub mod heat;
pub mod io;
pub mod kernel;
pub mod moderate;
pub mod simulate;

pub use ctmc::{interpolated_generator, lrw_kernel, Generator};
pub use exit::{exit_network, exit_time, expected_exit_time_exact, HittingReport};
pub use heat::{evolve, return_curve, return_probability_exact, simple_walk_return, HeatKernelReport};
pub use kernel::{log_volume, stationary_measure, transition_kernel, Boundary, StationaryMeasure, WalkKernel};
pub use moderate::{annulus_points, moderate_set, moderate_set_star};
pub use simulate::{simulate_ctmc, simulate_walk, simulate_walk_replica, TrajectoryRecord, WalkType};
