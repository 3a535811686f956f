//! Semi-discrete optimal transport under p-norm costs.
//!
//! A bounded density `μ` on a box is discretized by midpoint quadrature and
//! transported onto finitely many targets `y_i` with masses `ν_i`. The
//! optimal plan is described by shifts `a_i`: cell `A_i` collects the points
//! where `a_i − c(x, y_i)` is maximal. The crate computes the shifts, measures
//! the boundary set where the maximum is attained more than once, scans the
//! cost differences `g_ij` for atoms, and ships exact oracles (a discrete
//! transportation solver and a Monte Carlo integrator) for cross-checking.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cost;
pub mod error;
pub mod instance;
pub mod measure;
mod numeric;
pub mod oracle;
pub mod partition;
pub mod raster;
pub mod solver;
pub mod sweep;

pub use cost::{CostSpec, PNorm, Point};
pub use error::{Error, Result};
pub use measure::{Density, DensityGrid, QuadratureGrid, SourceMeasure};
pub use numeric::CompensatedSum;
pub use partition::{
    assign_cells, boundary_measure, eval_f, flat_value_scan, g_field, level_set_measure, Atom, AtomScan,
    BoundaryReport, CellAssignment, CostTable, Label, ScanOptions, ShiftVector, TargetMeasure,
};
pub use solver::{
    dual_objective, primal_cost, solve_shifts, PrimalCost, ShiftResult, ShiftSolver, SolveOptions, StepRule,
};
