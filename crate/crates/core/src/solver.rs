//! Shift solver for the semi-discrete problem on a quadrature grid.
//!
//! The unknowns are the shifts `a` (with `a_1 = 0`). They maximize the
//! concave dual `Φ(a) = Σ a_i ν_i − ∫ F dμ`, whose supergradient in `a_i` is
//! `ν_i − μ(A_i)`.
//!
//! * `n = 2`: bisection on `t = a_1 − a_2` over the non-decreasing map
//!   `t ↦ μ({g_12 ≤ t})`.
//! * `n ≥ 3`: damped ascent along the supergradient, preconditioned by a
//!   band estimate of the mass Jacobian, followed by exact line searches
//!   along subset directions `χ_S` once the ascent stops making progress.
//!
//! A run is converged when a τ-certificate holds: for every nonempty proper
//! subset `S` of targets, `ν(S)` lies within `mass_tolerance` of the interval
//! `[μ(cells tied only inside S), μ(cells touching S)]`. That is exactly the
//! condition under which the tied mass can be split to match `ν`. With no
//! ties it reduces to `max_i |μ(A_i) − ν_i| ≤ mass_tolerance`.

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::cost::CostSpec;
use crate::error::{Error, Result};
use crate::measure::QuadratureGrid;
use crate::numeric::{block_sum, block_sum_vec, CompensatedSum, BLOCK};
use crate::partition::{
    BoundaryReport, CellAssignment, CostTable, Label, ShiftVector, TargetMeasure, DEFAULT_TIE_TOLERANCE,
};

/// Relative tolerance for "exact" argmax ties inside the ascent.
const EXACT_TIE: f64 = 1e-12;
/// Largest `n` for which subset certificates and subset line searches run.
const MAX_SUBSET_TARGETS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepRule {
    /// Always take `damping` times the ascent direction; a decrease of the
    /// dual objective aborts the run.
    Fixed { damping: f64 },
    /// Halve the step until the dual objective does not decrease.
    Backtracking,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub mass_tolerance: f64,
    pub max_iterations: usize,
    pub step_rule: StepRule,
    pub tie_tolerance: f64,
    /// Starting shifts; zero when absent.
    pub initial_shifts: Option<ShiftVector>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            mass_tolerance: 1e-5,
            max_iterations: 10_000,
            step_rule: StepRule::Backtracking,
            tie_tolerance: DEFAULT_TIE_TOLERANCE,
            initial_shifts: None,
        }
    }
}

impl SolveOptions {
    fn validate(&self) -> Result<()> {
        if !(self.mass_tolerance > 0.0) {
            return Err(Error::invalid("mass tolerance must be positive"));
        }
        if !(self.tie_tolerance > 0.0 && self.tie_tolerance.is_finite()) {
            return Err(Error::invalid("tie tolerance must be positive"));
        }
        if let StepRule::Fixed { damping } = self.step_rule {
            if !(damping > 0.0 && damping <= 1.0) {
                return Err(Error::invalid(format!("damping must lie in (0, 1], got {damping}")));
            }
        }
        Ok(())
    }
}

/// Transport cost of a labeling. Tied cells contribute their cheapest and
/// most expensive admissible target to `lower` and `upper`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimalCost {
    pub lower: f64,
    pub upper: f64,
}

impl PrimalCost {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, value: f64, slack: f64) -> bool {
        value >= self.lower - slack && value <= self.upper + slack
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftResult {
    /// Shifts with `a_1 = 0`.
    pub shifts: ShiftVector,
    /// `μ(A_i)` excluding tied cells.
    pub masses: Vec<f64>,
    /// Interval of mass each target can receive once tied cells are split.
    pub mass_brackets: Vec<(f64, f64)>,
    /// `max_i |μ(A_i) − ν_i|` with tied mass excluded.
    pub residual: f64,
    pub iterations: usize,
    pub boundary: BoundaryReport,
    pub converged: bool,
    pub primal_cost: PrimalCost,
    pub dual_objective: f64,
}

/// Sorted values of `g_12` with cumulative weights.
#[derive(Debug)]
struct PairCdf {
    values: Vec<f64>,
    /// `cumulative[k]` is the weight of the first `k` sorted values.
    cumulative: Vec<f64>,
}

impl PairCdf {
    fn new(table: &CostTable, weights: &[f64]) -> Self {
        let g = table.g_values(0, 1);
        let mut order: Vec<(f64, f64)> = g.into_iter().zip(weights.iter().copied()).collect();
        order.par_sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
        let mut cumulative = Vec::with_capacity(order.len() + 1);
        let mut acc = CompensatedSum::default();
        cumulative.push(0.0);
        for &(_, w) in &order {
            acc.add(w);
            cumulative.push(acc.value());
        }
        PairCdf {
            values: order.into_iter().map(|(v, _)| v).collect(),
            cumulative,
        }
    }

    /// `μ({g ≤ t})`.
    fn at_most(&self, t: f64) -> f64 {
        self.cumulative[self.values.partition_point(|&v| v <= t)]
    }

    /// `μ({g < t})`.
    fn below(&self, t: f64) -> f64 {
        self.cumulative[self.values.partition_point(|&v| v < t)]
    }

    /// Bisection for the set of optimal `t`: `{t : μ(g < t) ≤ ν₁ ≤ μ(g ≤ t)}`.
    /// Returns the midpoint of that interval and the number of halvings.
    fn solve(&self, nu1: f64) -> (f64, usize) {
        const SLACK: f64 = 1e-13;
        let first = self.values[0];
        let last = *self.values.last().expect("grid is never empty");
        let pad = 1.0 + (last - first).abs();
        let mut steps = 0;

        // t_lo = inf { t : μ(g ≤ t) ≥ ν₁ }
        let (mut lo, mut hi) = (first - pad, last);
        loop {
            let mid = lo + 0.5 * (hi - lo);
            if mid <= lo || mid >= hi {
                break;
            }
            steps += 1;
            if self.at_most(mid) >= nu1 - SLACK {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let t_lo = hi;

        // t_hi = sup { t : μ(g < t) ≤ ν₁ }
        let (mut lo, mut hi) = (t_lo, last + pad);
        loop {
            let mid = lo + 0.5 * (hi - lo);
            if mid <= lo || mid >= hi {
                break;
            }
            steps += 1;
            if self.below(mid) <= nu1 + SLACK {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t_hi = lo;
        (t_lo + 0.5 * (t_hi - t_lo), steps)
    }
}

/// Quantities the ascent needs at one shift vector.
struct Evaluation {
    objective: f64,
    /// Masses with exactly tied cells split evenly.
    masses: Vec<f64>,
    /// Band estimate of `∂μ_i/∂a_j` off the diagonal (negated), row-major.
    coupling: Option<Vec<f64>>,
}

/// Reusable solver state for one grid, cost and target geometry. The target
/// masses are supplied per solve, which lets sweeps reuse the cost table.
pub struct ShiftSolver<'g> {
    grid: &'g QuadratureGrid,
    targets: TargetMeasure,
    table: CostTable,
    band: f64,
    pair: OnceLock<PairCdf>,
    options: SolveOptions,
}

impl<'g> ShiftSolver<'g> {
    pub fn new(
        grid: &'g QuadratureGrid,
        spec: &CostSpec,
        targets: &TargetMeasure,
        options: SolveOptions,
    ) -> Result<Self> {
        options.validate()?;
        if let Some(a) = &options.initial_shifts {
            if a.len() != targets.len() {
                return Err(Error::invalid("initial shifts do not match the number of targets"));
            }
        }
        let table = CostTable::new(grid, spec, targets)?;
        let widths: Vec<f64> = (0..grid.dim()).map(|k| grid.cell_width(k)).collect();
        let band = spec.norm.norm(widths.iter().copied());
        Ok(ShiftSolver {
            grid,
            targets: targets.clone(),
            table,
            band,
            pair: OnceLock::new(),
            options,
        })
    }

    pub fn table(&self) -> &CostTable {
        &self.table
    }

    pub fn grid(&self) -> &QuadratureGrid {
        self.grid
    }

    pub fn options(&self) -> &SolveOptions {
        &self.options
    }

    pub fn assignment(&self, shifts: &ShiftVector) -> Result<CellAssignment> {
        CellAssignment::from_table(&self.table, shifts, self.options.tie_tolerance)
    }

    /// Solves for the masses of the targets this solver was built with.
    pub fn solve(&self) -> Result<ShiftResult> {
        self.solve_for(self.targets.masses())
    }

    /// Solves for other target masses on the same geometry.
    pub fn solve_for(&self, masses: &[f64]) -> Result<ShiftResult> {
        let targets = self.targets.with_masses(masses.to_vec())?;
        let nu = targets.masses();
        let (shifts, iterations) = if nu.len() == 2 {
            let cdf = self.pair.get_or_init(|| PairCdf::new(&self.table, self.grid.weights()));
            let (t, steps) = cdf.solve(nu[0]);
            (ShiftVector::new(vec![0.0, -t])?, steps)
        } else {
            self.ascend(nu)?
        };
        self.finish(shifts, nu, iterations)
    }

    fn finish(&self, shifts: ShiftVector, nu: &[f64], iterations: usize) -> Result<ShiftResult> {
        let shifts = shifts.pinned();
        let assignment = self.assignment(&shifts)?;
        let boundary = BoundaryReport::from_assignment(&assignment, self.grid);
        let masses = boundary.cell_masses.clone();
        let touching = touching_tie_mass(&assignment, self.grid);
        let mass_brackets: Vec<(f64, f64)> = masses.iter().zip(&touching).map(|(&m, &t)| (m, m + t)).collect();
        let residual = masses.iter().zip(nu).map(|(m, v)| (m - v).abs()).fold(0.0, f64::max);
        let converged = self.certified(&assignment, nu, &mass_brackets);
        let result = ShiftResult {
            primal_cost: primal_cost_table(self.grid, &self.table, &assignment),
            dual_objective: dual_objective_table(self.grid, &self.table, nu, shifts.as_slice()),
            shifts,
            masses,
            mass_brackets,
            residual,
            iterations,
            converged,
            boundary,
        };
        if result.converged || result.residual <= self.options.mass_tolerance + result.boundary.tie_mass {
            Ok(result)
        } else {
            Err(Error::NotConverged(Box::new(result)))
        }
    }

    fn certified(&self, assignment: &CellAssignment, nu: &[f64], brackets: &[(f64, f64)]) -> bool {
        let tol = self.options.mass_tolerance;
        let n = nu.len();
        let singles_ok = brackets
            .iter()
            .zip(nu)
            .all(|(&(lo, hi), &v)| v >= lo - tol && v <= hi + tol);
        if !singles_ok || n > MAX_SUBSET_TARGETS {
            return singles_ok;
        }
        let masks = assignment_masks(assignment, self.grid);
        subset_certificate(&masks, nu, tol)
    }

    fn evaluate(&self, a: &[f64], nu: &[f64], coupling: bool) -> Evaluation {
        let n = a.len();
        let w = self.grid.weights();
        let width = 1 + n + if coupling { n * n } else { 0 };
        let band = self.band;
        let sums = block_sum_vec(self.table.cells(), width, |c, acc| {
            let row = self.table.row(c);
            let mut top = (f64::NEG_INFINITY, 0usize);
            let mut second = (f64::NEG_INFINITY, 0usize);
            for (i, (cost, s)) in row.iter().zip(a).enumerate() {
                let v = s - cost;
                if v > top.0 {
                    second = top;
                    top = (v, i);
                } else if v > second.0 {
                    second = (v, i);
                }
            }
            acc[0].add(w[c] * top.0);
            let floor = top.0 - EXACT_TIE * (1.0 + top.0.abs());
            if second.0 < floor {
                acc[1 + top.1].add(w[c]);
            } else {
                let tied = row.iter().zip(a).filter(|(cost, s)| *s - *cost >= floor).count();
                let share = w[c] / tied as f64;
                for (i, (cost, s)) in row.iter().zip(a).enumerate() {
                    if s - cost >= floor {
                        acc[1 + i].add(share);
                    }
                }
            }
            if coupling && top.0 - second.0 <= band {
                let v = w[c] / (2.0 * band);
                acc[1 + n + top.1 * n + second.1].add(v);
                acc[1 + n + second.1 * n + top.1].add(v);
            }
        });
        let linear: f64 = a.iter().zip(nu).map(|(x, v)| x * v).sum();
        Evaluation {
            objective: linear - sums[0],
            masses: sums[1..1 + n].to_vec(),
            coupling: coupling.then(|| sums[1 + n..].to_vec()),
        }
    }

    /// Damped ascent followed by subset line searches.
    fn ascend(&self, nu: &[f64]) -> Result<(ShiftVector, usize)> {
        let n = nu.len();
        let tol = self.options.mass_tolerance;
        let mut a = match &self.options.initial_shifts {
            Some(s) => s.pinned(),
            None => ShiftVector::zeros(n),
        };
        let mut iterations = 0;
        let mut current = self.evaluate(a.as_slice(), nu, true);
        while iterations < self.options.max_iterations {
            let grad: Vec<f64> = nu.iter().zip(&current.masses).map(|(v, m)| v - m).collect();
            let residual = grad.iter().fold(0.0f64, |m, g| m.max(g.abs()));
            if residual <= 0.5 * tol {
                break;
            }
            let coupling = current.coupling.as_deref().expect("coupling requested");
            let direction = newton_direction(coupling, &grad);
            iterations += 1;
            let accepted = match self.options.step_rule {
                StepRule::Fixed { damping } => {
                    let trial = step(&a, &direction, damping);
                    let next = self.evaluate(trial.as_slice(), nu, true);
                    let slack = 1e-13 * (1.0 + current.objective.abs());
                    if next.objective < current.objective - slack {
                        return Err(Error::AscentNotMonotone {
                            iteration: iterations,
                            before: current.objective,
                            after: next.objective,
                        });
                    }
                    Some((trial, next))
                }
                StepRule::Backtracking => {
                    let mut s = 1.0;
                    let mut found = None;
                    while s > 1e-12 {
                        let trial = step(&a, &direction, s);
                        let next = self.evaluate(trial.as_slice(), nu, false);
                        let next_res = nu
                            .iter()
                            .zip(&next.masses)
                            .map(|(v, m)| (v - m).abs())
                            .fold(0.0, f64::max);
                        if next.objective > current.objective
                            || (next.objective >= current.objective && next_res < residual)
                        {
                            found = Some(trial);
                            break;
                        }
                        s *= 0.5;
                    }
                    found.map(|t| {
                        let next = self.evaluate(t.as_slice(), nu, true);
                        (t, next)
                    })
                }
            };
            match accepted {
                Some((trial, next)) => {
                    let progress = next.objective - current.objective;
                    a = trial;
                    current = next;
                    if progress <= 1e-15 * (1.0 + current.objective.abs()) {
                        break;
                    }
                }
                None => break,
            }
        }
        if n <= MAX_SUBSET_TARGETS {
            iterations += self.polish(&mut a, nu, iterations);
        }
        Ok((a, iterations))
    }

    /// Exact line searches along subset directions until the τ-certificate
    /// holds or no subset direction ascends.
    fn polish(&self, a: &mut ShiftVector, nu: &[f64], used: usize) -> usize {
        let n = nu.len();
        let tol = self.options.mass_tolerance;
        let tau = self.options.tie_tolerance;
        let mut steps = 0;
        while used + steps < self.options.max_iterations {
            let masks = self.masks(a.as_slice(), tau);
            if subset_certificate(&masks, nu, tol) {
                break;
            }
            let exact = self.masks(a.as_slice(), 0.0);
            // Steepest subset direction by one-sided derivative ν(S) − μ(mask ∩ S ≠ ∅).
            let mut best = (0.0, 0u64);
            for s in 1..(1u64 << n) - 1 {
                let touching: f64 = exact.iter().filter(|(m, _)| *m & s != 0).map(|(_, w)| w).sum();
                let slope = subset_mass(nu, s) - touching;
                if slope > best.0 {
                    best = (slope, s);
                }
            }
            if best.0 <= 1e-14 {
                break;
            }
            let s = self.line_search(a.as_slice(), nu, best.1);
            if !(s > 0.0) {
                break;
            }
            let before = self.evaluate(a.as_slice(), nu, false).objective;
            let mut trial = a.clone();
            for (i, v) in trial.as_mut_slice().iter_mut().enumerate() {
                if best.1 >> i & 1 == 1 {
                    *v += s;
                }
            }
            let trial = trial.pinned();
            let after = self.evaluate(trial.as_slice(), nu, false).objective;
            steps += 1;
            if after < before - 1e-13 * (1.0 + before.abs()) {
                break;
            }
            *a = trial;
        }
        steps
    }

    /// Smallest `s > 0` at which cells moving into the subset `S` reach
    /// `ν(S)`.
    fn line_search(&self, a: &[f64], nu: &[f64], subset: u64) -> f64 {
        let w = self.grid.weights();
        let gaps: Vec<Vec<(f64, f64)>> = (0..self.table.cells().div_ceil(BLOCK))
            .into_par_iter()
            .map(|b| {
                let end = ((b + 1) * BLOCK).min(self.table.cells());
                let mut out = Vec::new();
                for c in b * BLOCK..end {
                    let (mut inside, mut outside) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
                    for (i, (cost, s)) in self.table.row(c).iter().zip(a).enumerate() {
                        let v = s - cost;
                        if subset >> i & 1 == 1 {
                            inside = inside.max(v);
                        } else {
                            outside = outside.max(v);
                        }
                    }
                    out.push((outside - inside, w[c]));
                }
                out
            })
            .collect();
        let mut gaps: Vec<(f64, f64)> = gaps.into_iter().flatten().collect();
        gaps.sort_unstable_by(|x, y| x.0.total_cmp(&y.0));
        let target = subset_mass(nu, subset);
        let mut acc = CompensatedSum::default();
        for &(gap, wc) in &gaps {
            acc.add(wc);
            if acc.value() >= target - 1e-15 && gap > 0.0 {
                return gap;
            }
        }
        0.0
    }

    fn masks(&self, a: &[f64], tau: f64) -> HashMap<u64, f64> {
        let w = self.grid.weights();
        let parts: Vec<HashMap<u64, CompensatedSum>> = (0..self.table.cells().div_ceil(BLOCK))
            .into_par_iter()
            .map(|b| {
                let end = ((b + 1) * BLOCK).min(self.table.cells());
                let mut acc: HashMap<u64, CompensatedSum> = HashMap::new();
                for c in b * BLOCK..end {
                    let row = self.table.row(c);
                    let max = self.table.f_value(c, a);
                    let floor = max - tau.max(EXACT_TIE * (1.0 + max.abs()));
                    let mut mask = 0u64;
                    for (i, (cost, s)) in row.iter().zip(a).enumerate() {
                        if s - cost >= floor {
                            mask |= 1 << i;
                        }
                    }
                    acc.entry(mask).or_default().add(w[c]);
                }
                acc
            })
            .collect();
        let mut total: HashMap<u64, CompensatedSum> = HashMap::new();
        for part in parts {
            for (k, v) in part {
                total.entry(k).or_default().add(v.value());
            }
        }
        total.into_iter().map(|(k, v)| (k, v.value())).collect()
    }
}

fn step(a: &ShiftVector, direction: &[f64], s: f64) -> ShiftVector {
    let v = a.as_slice().iter().zip(direction).map(|(x, d)| x + s * d).collect();
    ShiftVector::new(v).expect("finite step").pinned()
}

fn subset_mass(nu: &[f64], subset: u64) -> f64 {
    nu.iter()
        .enumerate()
        .filter(|(i, _)| subset >> i & 1 == 1)
        .map(|(_, v)| v)
        .sum()
}

/// Hall-type check that tied mass can be split to match `nu`.
fn subset_certificate(masks: &HashMap<u64, f64>, nu: &[f64], tol: f64) -> bool {
    let n = nu.len();
    let full = (1u64 << n) - 1;
    (1..full).all(|s| {
        let (mut inside, mut touching) = (0.0, 0.0);
        for (&m, &w) in masks {
            if m & s != 0 {
                touching += w;
                if m & !s == 0 {
                    inside += w;
                }
            }
        }
        let target = subset_mass(nu, s);
        target >= inside - tol && target <= touching + tol
    })
}

fn assignment_masks(assignment: &CellAssignment, grid: &QuadratureGrid) -> HashMap<u64, f64> {
    let mut out: HashMap<u64, f64> = HashMap::new();
    let masses = assignment.cell_masses(grid);
    for (i, m) in masses.into_iter().enumerate() {
        *out.entry(1 << i).or_default() += m;
    }
    for (set, m) in assignment.tie_groups(grid) {
        let mask = set.iter().fold(0u64, |acc, &i| acc | 1 << i);
        *out.entry(mask).or_default() += m;
    }
    out
}

/// Tied mass whose tie set contains each target.
fn touching_tie_mass(assignment: &CellAssignment, grid: &QuadratureGrid) -> Vec<f64> {
    let mut out = vec![0.0; assignment.targets()];
    for (set, m) in assignment.tie_groups(grid) {
        for i in set {
            out[i as usize] += m;
        }
    }
    out
}

/// Solves `(L + ρI) δ = g` on targets `2..n` (target 1 pinned), where `L` is
/// the weighted Laplacian of the band couplings.
fn newton_direction(coupling: &[f64], grad: &[f64]) -> Vec<f64> {
    let n = grad.len();
    let m = n - 1;
    let mut mat = vec![0.0; m * m];
    let mut diag_total = 0.0;
    for i in 1..n {
        let degree: f64 = (0..n).filter(|&j| j != i).map(|j| coupling[i * n + j]).sum();
        diag_total += degree;
        mat[(i - 1) * m + (i - 1)] = degree;
        for j in 1..n {
            if j != i {
                mat[(i - 1) * m + (j - 1)] = -coupling[i * n + j];
            }
        }
    }
    let ridge = 1e-3 * diag_total / m as f64 + 1e-9;
    for k in 0..m {
        mat[k * m + k] += ridge;
    }
    let mut rhs: Vec<f64> = grad[1..].to_vec();
    gaussian_solve(&mut mat, &mut rhs, m);
    let mut out = vec![0.0];
    out.extend(rhs);
    out
}

/// In-place Gaussian elimination with partial pivoting; `rhs` becomes the
/// solution.
fn gaussian_solve(mat: &mut [f64], rhs: &mut [f64], m: usize) {
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&a, &b| mat[a * m + col].abs().total_cmp(&mat[b * m + col].abs()))
            .expect("nonempty");
        if pivot != col {
            for k in 0..m {
                mat.swap(pivot * m + k, col * m + k);
            }
            rhs.swap(pivot, col);
        }
        let p = mat[col * m + col];
        for row in col + 1..m {
            let f = mat[row * m + col] / p;
            if f != 0.0 {
                for k in col..m {
                    mat[row * m + k] -= f * mat[col * m + k];
                }
                rhs[row] -= f * rhs[col];
            }
        }
    }
    for col in (0..m).rev() {
        let mut v = rhs[col];
        for k in col + 1..m {
            v -= mat[col * m + k] * rhs[k];
        }
        rhs[col] = v / mat[col * m + col];
    }
}

fn primal_cost_table(grid: &QuadratureGrid, table: &CostTable, assignment: &CellAssignment) -> PrimalCost {
    let w = grid.weights();
    let sums = block_sum_vec(assignment.len(), 2, |c, acc| {
        let row = table.row(c);
        match assignment.label(c) {
            Label::Unique(i) => {
                acc[0].add(w[c] * row[i]);
                acc[1].add(w[c] * row[i]);
            }
            Label::Tied(set) => {
                let (lo, hi) = set.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| {
                    (lo.min(row[i as usize]), hi.max(row[i as usize]))
                });
                acc[0].add(w[c] * lo);
                acc[1].add(w[c] * hi);
            }
        }
    });
    PrimalCost {
        lower: sums[0],
        upper: sums[1],
    }
}

fn dual_objective_table(grid: &QuadratureGrid, table: &CostTable, nu: &[f64], shifts: &[f64]) -> f64 {
    let w = grid.weights();
    let integral = block_sum(table.cells(), |c| w[c] * table.f_value(c, shifts));
    let linear: f64 = shifts.iter().zip(nu).map(|(a, v)| a * v).sum();
    linear - integral
}

pub fn solve_shifts(
    grid: &QuadratureGrid,
    spec: &CostSpec,
    targets: &TargetMeasure,
    options: SolveOptions,
) -> Result<ShiftResult> {
    ShiftSolver::new(grid, spec, targets, options)?.solve()
}

/// `Σ a_i ν_i − ∫ F dμ` by quadrature.
pub fn dual_objective(
    grid: &QuadratureGrid,
    spec: &CostSpec,
    targets: &TargetMeasure,
    shifts: &ShiftVector,
) -> Result<f64> {
    if shifts.len() != targets.len() {
        return Err(Error::invalid("shift count does not match targets"));
    }
    let table = CostTable::new(grid, spec, targets)?;
    Ok(dual_objective_table(grid, &table, targets.masses(), shifts.as_slice()))
}

/// `Σ_i ∫_{A_i} c(x, y_i) dμ` for a labeling on this grid.
pub fn primal_cost(
    grid: &QuadratureGrid,
    spec: &CostSpec,
    targets: &TargetMeasure,
    assignment: &CellAssignment,
) -> Result<PrimalCost> {
    if assignment.len() != grid.len() || assignment.targets() != targets.len() {
        return Err(Error::invalid("assignment was not built on this grid and target set"));
    }
    let table = CostTable::new(grid, spec, targets)?;
    Ok(primal_cost_table(grid, &table, assignment))
}
