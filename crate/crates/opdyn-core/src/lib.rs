//! Opinion-dynamics quantities of the Friedkin-Johnsen model on weighted graphs.
//!
//! The library computes five scalars for a connected graph `G` with internal
//! opinion vector `s`: internal conflict, disagreement, polarization,
//! controversy, and the disagreement-controversy index. Two computation paths
//! are provided:
//!
//! * [`exact`] — dense factorization of `I + L` (ground truth, guarded by size);
//! * [`approx`] — squared-norm estimation driven by a certified iterative
//!   solver, nearly linear in the number of edges in practice.
//!
//! Validation paths live alongside: a brute-force spanning-rooted-forest
//! census ([`forest`]) for tiny graphs and the iterative Friedkin-Johnsen
//! fixed-point dynamics ([`dynamics`]).

pub mod approx;
pub mod dynamics;
pub mod error;
pub mod exact;
pub mod forest;
pub mod graph;
pub mod io;
pub mod opinions;
pub mod report;
pub mod solver;
pub mod synth;

pub use approx::{approxim, compute_delta, ApproxOptions, ApproxReport};
pub use dynamics::{fj_iterate, TrajectoryStats};
pub use error::Error;
pub use exact::{exact_quantities, forest_matrix_dense, ForestMatrix, DENSE_GUARD};
pub use forest::{enumerate_rooted_forests, ForestCensus};
pub use graph::Graph;
pub use io::{load_edge_list, IndexBase, LoadReport};
pub use opinions::{generate_opinions, DistributionKind, DistributionSpec};
pub use report::QuantityReport;
pub use solver::{
    map_delta_to_stopping_rule, solve_shifted_laplacian, DeltaMode, SolveReport, SolverConfig,
};

pub type Result<T> = std::result::Result<T, Error>;
