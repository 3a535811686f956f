//! Sweeps of `ν_1` for two-target instances and inference of the set of
//! `ν_1` for which the shift solution is a μ-partition.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::solver::{ShiftResult, ShiftSolver};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub nu1: f64,
    pub converged: bool,
    pub residual: f64,
    pub tie_mass: f64,
    pub boundary_measure: f64,
    pub is_partition: bool,
}

impl SweepRow {
    fn from_result(nu1: f64, r: &ShiftResult) -> Self {
        SweepRow {
            nu1,
            converged: r.converged,
            residual: r.residual,
            tie_mass: r.boundary.tie_mass,
            boundary_measure: r.boundary.boundary_measure,
            is_partition: r.boundary.is_mu_partition,
        }
    }
}

/// Open interval of `ν_1` with the uncertainty of each endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_error: f64,
    pub hi_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    /// Every evaluated point, sorted by `ν_1`.
    pub rows: Vec<SweepRow>,
    /// Inferred partition set, sorted and disjoint.
    pub intervals: Vec<Interval>,
}

pub const CSV_HEADER: &str = "nu1,converged,residual,tie_mass,boundary_measure,is_partition";

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{:e},{:e},{:e},{}\n",
                r.nu1, r.converged, r.residual, r.tie_mass, r.boundary_measure, r.is_partition
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    /// Uniform points `s/(steps+1)` for `s = 1..=steps`.
    pub steps: usize,
    /// Target bracket width when refining a transition.
    pub refine: f64,
}

fn evaluate(solver: &ShiftSolver<'_>, nu1: f64) -> Result<SweepRow> {
    match solver.solve_for(&[nu1, 1.0 - nu1]) {
        Ok(r) => Ok(SweepRow::from_result(nu1, &r)),
        Err(Error::NotConverged(best)) => Ok(SweepRow::from_result(nu1, &best)),
        Err(e) => Err(e),
    }
}

/// Evaluates the uniform sweep, then bisects every change of the partition
/// verdict down to `refine`. Endpoints at a refined transition are bracket
/// midpoints; a set reaching the first or last sample extends to 0 or 1.
pub fn sweep_nu1(solver: &ShiftSolver<'_>, options: SweepOptions) -> Result<SweepReport> {
    if solver.table().targets() != 2 {
        return Err(Error::invalid("a sweep needs exactly two targets"));
    }
    if options.steps == 0 || !(options.refine > 0.0) {
        return Err(Error::invalid("sweep needs steps >= 1 and refine > 0"));
    }
    let h = 1.0 / (options.steps + 1) as f64;
    let coarse: Vec<SweepRow> = (1..=options.steps)
        .into_par_iter()
        .map(|s| evaluate(solver, s as f64 * h))
        .collect::<Result<_>>()?;

    let transitions: Vec<(SweepRow, SweepRow)> = coarse
        .windows(2)
        .filter(|w| w[0].is_partition != w[1].is_partition)
        .map(|w| (w[0], w[1]))
        .collect();
    let refined: Vec<(Vec<SweepRow>, (f64, f64))> = transitions
        .into_par_iter()
        .map(|(mut a, mut b)| {
            let mut extra = Vec::new();
            while b.nu1 - a.nu1 > options.refine {
                let m = evaluate(solver, a.nu1 + 0.5 * (b.nu1 - a.nu1))?;
                extra.push(m);
                if m.is_partition == a.is_partition {
                    a = m;
                } else {
                    b = m;
                }
            }
            Ok((extra, (a.nu1, b.nu1)))
        })
        .collect::<Result<_>>()?;

    let mut rows = coarse.clone();
    let mut brackets = Vec::new();
    for (extra, bracket) in refined {
        rows.extend(extra);
        brackets.push(bracket);
    }
    rows.sort_by(|a, b| a.nu1.total_cmp(&b.nu1));

    let mut intervals = Vec::new();
    let mut open: Option<(f64, f64)> = None;
    let first = coarse[0];
    if first.is_partition {
        open = Some((0.0, first.nu1));
    }
    let mut it = brackets.into_iter();
    for w in coarse.windows(2) {
        if w[0].is_partition == w[1].is_partition {
            continue;
        }
        let (a, b) = it.next().expect("one bracket per transition");
        let (mid, err) = (0.5 * (a + b), 0.5 * (b - a));
        if w[1].is_partition {
            open = Some((mid, err));
        } else if let Some((lo, lo_error)) = open.take() {
            intervals.push(Interval {
                lo,
                hi: mid,
                lo_error,
                hi_error: err,
            });
        }
    }
    if let Some((lo, lo_error)) = open {
        let last = coarse[coarse.len() - 1];
        intervals.push(Interval {
            lo,
            hi: 1.0,
            lo_error,
            hi_error: 1.0 - last.nu1,
        });
    }
    Ok(SweepReport { rows, intervals })
}
