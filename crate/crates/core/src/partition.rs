//! Cells of the shift characterization and the boundary set between them.
//!
//! Given shifts `a`, cell `A_i` collects the points where `a_i − c(x, y_i)`
//! attains `F(x) = max_j {a_j − c(x, y_j)}`. On the quadrature grid each cell
//! center gets the set of indices within `τ` of that maximum: a singleton is
//! a unique label, anything larger is a tie and contributes to the boundary
//! set `B`. Ties are recorded and never broken.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::cost::{CostSpec, Point};
use crate::error::{Error, Result};
use crate::measure::QuadratureGrid;
use crate::numeric::{block_sum, block_sum_vec, CompensatedSum, BLOCK};

/// Default tie tolerance, in cost units.
pub const DEFAULT_TIE_TOLERANCE: f64 = 1e-4;
/// Default atom threshold for [`flat_value_scan`].
pub const DEFAULT_ATOM_THRESHOLD: f64 = 1e-3;

/// Discrete target measure `ν = Σ ν_i δ_{y_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetMeasure {
    points: Vec<Point>,
    masses: Vec<f64>,
}

impl TargetMeasure {
    pub fn new(points: Vec<Point>, masses: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::invalid(format!("need at least 2 targets, got {}", points.len())));
        }
        if points.len() != masses.len() {
            return Err(Error::invalid(format!(
                "{} target points but {} masses",
                points.len(),
                masses.len()
            )));
        }
        let d = points[0].dim();
        for (i, p) in points.iter().enumerate() {
            if p.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: p.dim(),
                });
            }
            if p.coords().iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid(format!("target {}: non-finite coordinate", i + 1)));
            }
            if let Some(j) = points[..i].iter().position(|q| q == p) {
                return Err(Error::invalid(format!("targets {} and {} coincide", j + 1, i + 1)));
            }
        }
        for (i, &m) in masses.iter().enumerate() {
            if !(m > 0.0 && m.is_finite()) {
                return Err(Error::invalid(format!(
                    "target {}: mass must be positive, got {m}",
                    i + 1
                )));
            }
        }
        let total: f64 = masses.iter().copied().collect::<CompensatedSum>().value();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!("target masses sum to {total}, expected 1")));
        }
        Ok(TargetMeasure { points, masses })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// Same points, new masses.
    pub fn with_masses(&self, masses: Vec<f64>) -> Result<Self> {
        TargetMeasure::new(self.points.clone(), masses)
    }
}

/// Shifts `a_1..a_n`; finite by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftVector(Vec<f64>);

impl ShiftVector {
    pub fn new(shifts: Vec<f64>) -> Result<Self> {
        if let Some(v) = shifts.iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("shifts must be finite, got {v}")));
        }
        Ok(ShiftVector(shifts))
    }

    pub fn zeros(n: usize) -> Self {
        ShiftVector(vec![0.0; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Translates every shift so that `a_1 = 0`.
    pub fn pinned(&self) -> ShiftVector {
        let a0 = self.0[0];
        ShiftVector(self.0.iter().map(|a| a - a0).collect())
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

fn check_problem(spec: &CostSpec, targets: &TargetMeasure, shifts: Option<&ShiftVector>) -> Result<()> {
    if targets.dim() != spec.dim {
        return Err(Error::DimensionMismatch {
            expected: spec.dim,
            found: targets.dim(),
        });
    }
    if let Some(a) = shifts {
        if a.len() != targets.len() {
            return Err(Error::invalid(format!(
                "{} shifts for {} targets",
                a.len(),
                targets.len()
            )));
        }
    }
    Ok(())
}

/// `F(x) = max_i {a_i − c(x, y_i)}` and the indices within `tie_tolerance`
/// of the maximum (exact comparison when the tolerance is zero).
pub fn eval_f(
    spec: &CostSpec,
    targets: &TargetMeasure,
    shifts: &ShiftVector,
    x: &Point,
    tie_tolerance: f64,
) -> Result<(f64, Vec<usize>)> {
    check_problem(spec, targets, Some(shifts))?;
    let values = targets
        .points()
        .iter()
        .zip(shifts.as_slice())
        .map(|(y, a)| Ok(a - spec.eval_cost(x, y)?))
        .collect::<Result<Vec<f64>>>()?;
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let argmax = values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v >= max - tie_tolerance)
        .map(|(i, _)| i)
        .collect();
    Ok((max, argmax))
}

/// Costs `c(x_c, y_i)` for every cell center, cell-major.
#[derive(Debug, Clone)]
pub struct CostTable {
    n: usize,
    costs: Vec<f64>,
}

impl CostTable {
    pub fn new(grid: &QuadratureGrid, spec: &CostSpec, targets: &TargetMeasure) -> Result<Self> {
        check_problem(spec, targets, None)?;
        if grid.dim() != spec.dim {
            return Err(Error::DimensionMismatch {
                expected: spec.dim,
                found: grid.dim(),
            });
        }
        let n = targets.len();
        let d = spec.dim;
        let ys: Vec<&[f64]> = targets.points().iter().map(Point::coords).collect();
        let mut costs = vec![0.0; grid.len() * n];
        costs.par_chunks_mut(n * BLOCK).enumerate().for_each(|(b, chunk)| {
            let mut x = vec![0.0; d];
            for (k, row) in chunk.chunks_mut(n).enumerate() {
                grid.fill_center(b * BLOCK + k, &mut x);
                for (slot, y) in row.iter_mut().zip(&ys) {
                    *slot = spec.distance(&x, y);
                }
            }
        });
        Ok(CostTable { n, costs })
    }

    pub fn targets(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> usize {
        self.costs.len() / self.n
    }

    #[inline]
    pub fn row(&self, cell: usize) -> &[f64] {
        &self.costs[cell * self.n..(cell + 1) * self.n]
    }

    /// `F` at a cell center.
    #[inline]
    pub fn f_value(&self, cell: usize, shifts: &[f64]) -> f64 {
        self.row(cell)
            .iter()
            .zip(shifts)
            .map(|(c, a)| a - c)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `g_ij` at every cell center.
    pub fn g_values(&self, i: usize, j: usize) -> Vec<f64> {
        (0..self.cells())
            .into_par_iter()
            .map(|c| {
                let r = self.row(c);
                r[i] - r[j]
            })
            .collect()
    }
}

/// Per-cell label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label<'a> {
    Unique(usize),
    /// Indices (ascending, at least two) within the tie tolerance of `F`.
    Tied(&'a [u32]),
}

const TIE_FLAG: u32 = 1 << 31;

/// Labels for every quadrature cell.
#[derive(Debug, Clone)]
pub struct CellAssignment {
    n: usize,
    tie_tolerance: f64,
    codes: Vec<u32>,
    tie_offsets: Vec<u32>,
    tie_members: Vec<u32>,
}

impl CellAssignment {
    pub fn from_table(table: &CostTable, shifts: &ShiftVector, tie_tolerance: f64) -> Result<Self> {
        if shifts.len() != table.targets() {
            return Err(Error::invalid(format!(
                "{} shifts for {} targets",
                shifts.len(),
                table.targets()
            )));
        }
        if !(tie_tolerance >= 0.0 && tie_tolerance.is_finite()) {
            return Err(Error::invalid("tie tolerance must be finite and nonnegative"));
        }
        let n = table.targets();
        let a = shifts.as_slice();
        let cells = table.cells();
        let blocks: Vec<(Vec<u32>, Vec<Vec<u32>>)> = (0..cells.div_ceil(BLOCK))
            .into_par_iter()
            .map(|b| {
                let end = ((b + 1) * BLOCK).min(cells);
                let mut codes = Vec::with_capacity(end - b * BLOCK);
                let mut ties = Vec::new();
                let mut vals = vec![0.0; n];
                for c in b * BLOCK..end {
                    let mut max = f64::NEG_INFINITY;
                    let mut best = 0;
                    for (k, ((v, cost), s)) in vals.iter_mut().zip(table.row(c)).zip(a).enumerate() {
                        *v = s - cost;
                        if *v > max {
                            max = *v;
                            best = k;
                        }
                    }
                    let floor = max - tie_tolerance;
                    let count = vals.iter().filter(|v| **v >= floor).count();
                    if count == 1 {
                        codes.push(best as u32);
                    } else {
                        codes.push(TIE_FLAG | ties.len() as u32);
                        ties.push(
                            vals.iter()
                                .enumerate()
                                .filter(|(_, v)| **v >= floor)
                                .map(|(k, _)| k as u32)
                                .collect(),
                        );
                    }
                }
                (codes, ties)
            })
            .collect();
        let mut out = CellAssignment {
            n,
            tie_tolerance,
            codes: Vec::with_capacity(cells),
            tie_offsets: vec![0],
            tie_members: Vec::new(),
        };
        for (codes, ties) in blocks {
            let base = out.tie_offsets.len() as u32 - 1;
            out.codes
                .extend(codes.into_iter().map(|c| if c & TIE_FLAG != 0 { c + base } else { c }));
            for t in ties {
                out.tie_members.extend(t);
                out.tie_offsets.push(out.tie_members.len() as u32);
            }
        }
        Ok(out)
    }

    pub fn targets(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn tie_tolerance(&self) -> f64 {
        self.tie_tolerance
    }

    #[inline]
    pub fn label(&self, cell: usize) -> Label<'_> {
        let code = self.codes[cell];
        if code & TIE_FLAG == 0 {
            Label::Unique(code as usize)
        } else {
            let t = (code & !TIE_FLAG) as usize;
            let (s, e) = (self.tie_offsets[t] as usize, self.tie_offsets[t + 1] as usize);
            Label::Tied(&self.tie_members[s..e])
        }
    }

    pub fn labels(&self) -> impl Iterator<Item = Label<'_>> + '_ {
        (0..self.len()).map(|c| self.label(c))
    }

    pub fn tied_cells(&self) -> usize {
        self.tie_offsets.len() - 1
    }

    /// `μ(A_i)` over uniquely labeled cells; tied mass is not allocated.
    pub fn cell_masses(&self, grid: &QuadratureGrid) -> Vec<f64> {
        let w = grid.weights();
        block_sum_vec(self.len(), self.n, |c, acc| {
            if let Label::Unique(i) = self.label(c) {
                acc[i].add(w[c]);
            }
        })
    }

    pub fn tie_mass(&self, grid: &QuadratureGrid) -> f64 {
        let w = grid.weights();
        block_sum(self.len(), |c| match self.label(c) {
            Label::Tied(_) => w[c],
            Label::Unique(_) => 0.0,
        })
    }

    /// Tied mass grouped by tie set.
    pub fn tie_groups(&self, grid: &QuadratureGrid) -> BTreeMap<Vec<u32>, f64> {
        let w = grid.weights();
        let mut acc: BTreeMap<Vec<u32>, CompensatedSum> = BTreeMap::new();
        for (c, code) in self.codes.iter().enumerate() {
            if code & TIE_FLAG != 0 {
                if let Label::Tied(s) = self.label(c) {
                    acc.entry(s.to_vec()).or_default().add(w[c]);
                }
            }
        }
        acc.into_iter().map(|(k, v)| (k, v.value())).collect()
    }
}

/// Threshold below which a boundary-set estimate counts as `μ(B) = 0`:
/// `max(5·τ·perimeter_scale, 20/r)` with `r` the smallest grid resolution.
pub fn partition_threshold(grid: &QuadratureGrid, tie_tolerance: f64) -> f64 {
    (5.0 * tie_tolerance * grid.perimeter_scale()).max(20.0 / grid.min_resolution() as f64)
}

/// Estimated cell masses and boundary-set measures.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryReport {
    /// `μ(A_ij)` for `i < j` (0-based), only pairs that ever tie.
    pub pair_measures: BTreeMap<(usize, usize), f64>,
    /// `μ(B)`.
    pub boundary_measure: f64,
    /// `μ(A_i)` excluding tied cells.
    pub cell_masses: Vec<f64>,
    pub tie_mass: f64,
    pub threshold: f64,
    pub is_mu_partition: bool,
}

impl BoundaryReport {
    pub fn from_assignment(assignment: &CellAssignment, grid: &QuadratureGrid) -> Self {
        let groups = assignment.tie_groups(grid);
        let mut pairs: BTreeMap<(usize, usize), CompensatedSum> = BTreeMap::new();
        for (set, m) in &groups {
            for (k, &i) in set.iter().enumerate() {
                for &j in &set[k + 1..] {
                    pairs.entry((i as usize, j as usize)).or_default().add(*m);
                }
            }
        }
        let tie_mass = assignment.tie_mass(grid);
        let threshold = partition_threshold(grid, assignment.tie_tolerance());
        BoundaryReport {
            pair_measures: pairs.into_iter().map(|(k, v)| (k, v.value())).collect(),
            boundary_measure: tie_mass,
            cell_masses: assignment.cell_masses(grid),
            tie_mass,
            threshold,
            is_mu_partition: tie_mass <= threshold,
        }
    }

    /// `μ(A_ij)`, symmetric in its arguments.
    pub fn pair_measure(&self, i: usize, j: usize) -> f64 {
        let key = if i < j { (i, j) } else { (j, i) };
        self.pair_measures.get(&key).copied().unwrap_or(0.0)
    }
}

/// Labels every quadrature cell by the argmax set of `F` at its center.
pub fn assign_cells(
    grid: &QuadratureGrid,
    spec: &CostSpec,
    targets: &TargetMeasure,
    shifts: &ShiftVector,
    tie_tolerance: f64,
) -> Result<CellAssignment> {
    check_problem(spec, targets, Some(shifts))?;
    let table = CostTable::new(grid, spec, targets)?;
    CellAssignment::from_table(&table, shifts, tie_tolerance)
}

pub fn boundary_measure(
    grid: &QuadratureGrid,
    spec: &CostSpec,
    targets: &TargetMeasure,
    shifts: &ShiftVector,
    tie_tolerance: f64,
) -> Result<BoundaryReport> {
    if !(tie_tolerance > 0.0) {
        return Err(Error::invalid("boundary estimation needs a positive tie tolerance"));
    }
    let assignment = assign_cells(grid, spec, targets, shifts, tie_tolerance)?;
    Ok(BoundaryReport::from_assignment(&assignment, grid))
}

fn check_pair(targets: &TargetMeasure, i: usize, j: usize) -> Result<()> {
    if i == j {
        return Err(Error::invalid(format!("pair indices must differ, got {i} and {j}")));
    }
    if i >= targets.len() || j >= targets.len() {
        return Err(Error::invalid(format!(
            "pair ({i}, {j}) out of range for {} targets",
            targets.len()
        )));
    }
    Ok(())
}

/// `g_ij` at every cell center (0-based indices).
pub fn g_field(
    grid: &QuadratureGrid,
    spec: &CostSpec,
    targets: &TargetMeasure,
    i: usize,
    j: usize,
) -> Result<Vec<f64>> {
    check_problem(spec, targets, None)?;
    check_pair(targets, i, j)?;
    let (yi, yj) = (targets.point(i).coords(), targets.point(j).coords());
    let d = spec.dim;
    Ok((0..grid.len())
        .into_par_iter()
        .map_init(
            || vec![0.0; d],
            |x, c| {
                grid.fill_center(c, x);
                spec.distance(x, yi) - spec.distance(x, yj)
            },
        )
        .collect())
}

/// `μ({x : |g_ij(x) − k| ≤ band})`.
#[allow(clippy::too_many_arguments)]
pub fn level_set_measure(
    grid: &QuadratureGrid,
    spec: &CostSpec,
    targets: &TargetMeasure,
    i: usize,
    j: usize,
    k: f64,
    band: f64,
) -> Result<f64> {
    if !(band > 0.0) {
        return Err(Error::invalid("band must be positive"));
    }
    let g = g_field(grid, spec, targets, i, j)?;
    let w = grid.weights();
    Ok(block_sum(
        g.len(),
        |c| if (g[c] - k).abs() <= band { w[c] } else { 0.0 },
    ))
}

/// A value `k` where the pushforward of `μ` under `g_ij` has an atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub value: f64,
    pub mass: f64,
    /// `μ({g_ij < k})`.
    pub left_mass: f64,
}

impl Atom {
    /// Values of `ν(y_i)` for which the optimal shift difference lands on this
    /// atom, so that the tie set has positive mass.
    pub fn failing_interval(&self) -> (f64, f64) {
        (self.left_mass, self.left_mass + self.mass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub band: f64,
    pub atom_threshold: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            band: 1e-6,
            atom_threshold: DEFAULT_ATOM_THRESHOLD,
        }
    }
}

/// Result of [`flat_value_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct AtomScan {
    pub atoms: Vec<Atom>,
    pub min: f64,
    pub max: f64,
    pub bin_width: f64,
}

impl AtomScan {
    /// `(0, 1)` minus the closed failing intervals of every atom, as sorted
    /// disjoint open intervals.
    pub fn predicted_partition_set(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        let mut start = 0.0;
        for atom in &self.atoms {
            let (lo, hi) = atom.failing_interval();
            if lo > start {
                out.push((start, lo.min(1.0)));
            }
            start = start.max(hi);
        }
        if start < 1.0 {
            out.push((start, 1.0));
        }
        out
    }
}

/// Locates atoms of `g_ij` under `μ` by histogramming cell-center values.
///
/// Bin width is `max(band, 4·range/N)` for `N` cells. Runs of adjacent bins
/// above `atom_threshold` merge into one candidate, which also absorbs the
/// two flanking bins. A candidate is kept only if at least half of its mass
/// sits within `10^-3` bin widths of its mean value; this rejects the
/// integrable density spikes of `g` near `±c(y_i, y_j)`.
pub fn flat_value_scan(
    grid: &QuadratureGrid,
    spec: &CostSpec,
    targets: &TargetMeasure,
    i: usize,
    j: usize,
    options: ScanOptions,
) -> Result<AtomScan> {
    if !(options.band > 0.0 && options.atom_threshold > 0.0) {
        return Err(Error::invalid("band and atom threshold must be positive"));
    }
    let g = g_field(grid, spec, targets, i, j)?;
    Ok(scan_values(&g, grid.weights(), options))
}

pub(crate) fn scan_values(g: &[f64], w: &[f64], options: ScanOptions) -> AtomScan {
    let (min, max) = g.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
        (lo.min(v), hi.max(v))
    });
    let range = max - min;
    let width = options.band.max(4.0 * range / g.len() as f64);
    let bins = (range / width).floor() as usize + 1;
    let bin_of = |v: f64| (((v - min) / width).floor() as usize).min(bins - 1);
    let mut mass = vec![CompensatedSum::default(); bins];
    let mut moment = vec![CompensatedSum::default(); bins];
    for (&v, &wc) in g.iter().zip(w) {
        let b = bin_of(v);
        mass[b].add(wc);
        moment[b].add(wc * v);
    }
    let mass: Vec<f64> = mass.iter().map(CompensatedSum::value).collect();
    let moment: Vec<f64> = moment.iter().map(CompensatedSum::value).collect();

    let mut candidates = Vec::new();
    let mut b = 0;
    while b < bins {
        if mass[b] <= options.atom_threshold {
            b += 1;
            continue;
        }
        let start = b;
        while b < bins && mass[b] > options.atom_threshold {
            b += 1;
        }
        let lo = start.saturating_sub(1);
        let hi = b.min(bins - 1);
        let m: f64 = mass[lo..=hi].iter().sum();
        let value = moment[lo..=hi].iter().sum::<f64>() / m;
        candidates.push((lo, value, m));
    }

    let mut atoms = Vec::new();
    for (lo, value, m) in candidates {
        let window = (width * 1e-3).max(1e-12 * (1.0 + value.abs()));
        let core: f64 = g
            .iter()
            .zip(w)
            .filter(|(v, _)| (**v - value).abs() <= window)
            .map(|(_, wc)| wc)
            .sum();
        if core >= 0.5 * m && m > options.atom_threshold {
            let left_mass = mass[..lo].iter().copied().collect::<CompensatedSum>().value();
            atoms.push(Atom {
                value,
                mass: m,
                left_mass,
            });
        }
    }
    AtomScan {
        atoms,
        min,
        max,
        bin_width: width,
    }
}
