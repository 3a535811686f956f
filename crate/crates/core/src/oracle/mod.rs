//! Independent instruments for checking the solver: an exact discrete
//! transportation solver, a seeded Monte Carlo integrator and a brute-force
//! scan of the `g_ij` distribution.

mod lp;
mod mc;
mod scan;

pub use lp::{solve_discrete_lp, DiscreteLPResult, FlowEntry, LP_SIZE_LIMIT, PIVOT_EPSILON};
pub use mc::{mc_integrate, McEstimate, MIN_SAMPLES};
pub use scan::{scan_g_distribution, GDistribution};
