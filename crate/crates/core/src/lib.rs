//! Doubling constants of measures on finite connected graphs.
//!
//! For a positive measure `mu` on a graph with path metric, the doubling
//! constant is `C_mu = max mu(B(x, 2k+1)) / mu(B(x, k))` over closed balls,
//! and the least doubling constant `C_G` is the infimum of `C_mu` over all
//! positive measures. This crate provides:
//!
//! * [`graph`]: graphs, named families, edge-list parsing, ball queries;
//! * [`measure`] and [`doubling`]: measures and their constants `C_mu`, `C0_mu`;
//! * [`spectral`]: `C0_G = 1 + lambda_1(A_G)` by power iteration;
//! * [`optimizer`]: `C_G` for any graph by bisection over a linear feasibility oracle;
//! * [`path`]: a dedicated solver for path graphs `L_n`;
//! * [`window`]: bounded-window checks for the infinite paths `Z` and `N`.

pub mod doubling;
pub mod error;
pub mod graph;
pub mod measure;
pub mod optimizer;
pub mod path;
pub mod roots;
pub mod simplex;
pub mod spectral;
pub mod window;

pub use doubling::{doubling_constant, doubling_report, local_constant, DoublingReport, QuotientWitness};
pub use error::{Error, Result};
pub use graph::{ball_mass, build_named, distance_table, parse_edge_list, BallIndex, Family, Graph};
pub use measure::{make_measure, perturb, symmetrize, Measure, MeasureKind};
pub use optimizer::{feasible_at, least_doubling, BisectionResult};
pub use path::{
    decompose, least_doubling_path, m1, m2, poly_residual, refine_minimizer, solve_system,
    PathMinimizerResult, PathQuotients, PathSolverConfig,
};
pub use spectral::{c0_path_closed_form, c0_spectral, chebyshev_u, power_iteration, SpectralResult};
pub use window::{
    counting_z_quotient, lambda_alpha_quotient, n_window_report, z_window_report, Lattice, WindowReport,
};
