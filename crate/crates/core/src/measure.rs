//! The source measure on a box and its midpoint quadrature grid.
//!
//! Lattice order: the first coordinate varies fastest, both for quadrature
//! cells and for density-grid samples. A 2×2 grid on `[0,1]²` lists its
//! centers as `(¼,¼), (¾,¼), (¼,¾), (¾,¾)`.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{block_sum, CompensatedSum};

/// Refuse grids with more cells than this.
pub const MAX_CELLS: usize = 1 << 28;

/// Piecewise-constant density samples on a regular lattice over the box.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    shape: Vec<usize>,
    values: Vec<f64>,
}

impl DensityGrid {
    pub fn new(shape: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if shape.is_empty() || shape.contains(&0) {
            return Err(Error::invalid("density grid shape must have positive extents"));
        }
        let count = checked_product(&shape)?;
        if values.len() != count {
            return Err(Error::invalid(format!(
                "density grid expects {count} values, got {}",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::invalid(format!(
                "density values must be finite and nonnegative, got {v}"
            )));
        }
        Ok(DensityGrid { shape, values })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Density {
    Uniform,
    Grid(DensityGrid),
}

/// Absolutely continuous probability measure `μ` supported on a box.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceMeasure {
    bounds: Vec<(f64, f64)>,
    density: Density,
    total_mass: f64,
}

fn checked_product(dims: &[usize]) -> Result<usize> {
    dims.iter()
        .try_fold(1usize, |acc, &m| acc.checked_mul(m))
        .filter(|&n| n <= MAX_CELLS)
        .ok_or_else(|| Error::invalid(format!("grid with extents {dims:?} is too large")))
}

fn check_bounds(bounds: &[(f64, f64)]) -> Result<()> {
    if bounds.is_empty() {
        return Err(Error::invalid("box must have at least one dimension"));
    }
    for (k, &(lo, hi)) in bounds.iter().enumerate() {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::invalid(format!(
                "box axis {k}: need finite lo < hi, got ({lo}, {hi})"
            )));
        }
    }
    Ok(())
}

impl SourceMeasure {
    /// Uniform probability measure on the box.
    pub fn uniform(bounds: Vec<(f64, f64)>) -> Result<Self> {
        check_bounds(&bounds)?;
        Ok(SourceMeasure {
            bounds,
            density: Density::Uniform,
            total_mass: 1.0,
        })
    }

    /// Measure with a gridded density. The density is normalized to a
    /// probability measure; `total_mass` keeps the raw integral.
    pub fn with_density(bounds: Vec<(f64, f64)>, grid: DensityGrid) -> Result<Self> {
        check_bounds(&bounds)?;
        if grid.shape.len() != bounds.len() {
            return Err(Error::DimensionMismatch {
                expected: bounds.len(),
                found: grid.shape.len(),
            });
        }
        let volume: f64 = bounds.iter().map(|(lo, hi)| hi - lo).product();
        let cell_volume = volume / grid.values.len() as f64;
        let total_mass = grid.values.iter().copied().collect::<CompensatedSum>().value() * cell_volume;
        if !(total_mass > 0.0 && total_mass.is_finite()) {
            return Err(Error::invalid("density must have positive finite total mass"));
        }
        Ok(SourceMeasure {
            bounds,
            density: Density::Grid(grid),
            total_mass,
        })
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn density(&self) -> &Density {
        &self.density
    }

    /// Integral of the raw density over the box; 1 for the uniform measure.
    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn volume(&self) -> f64 {
        self.bounds.iter().map(|(lo, hi)| hi - lo).product()
    }

    /// Normalized probability density at `x` (nearest density cell; zero
    /// outside the box).
    pub fn density_at(&self, x: &[f64]) -> f64 {
        let inside = x.iter().zip(&self.bounds).all(|(v, (lo, hi))| *v >= *lo && *v <= *hi);
        if !inside {
            return 0.0;
        }
        match &self.density {
            Density::Uniform => 1.0 / self.volume(),
            Density::Grid(g) => g.values[self.density_index(g, x)] / self.total_mass,
        }
    }

    fn density_index(&self, g: &DensityGrid, x: &[f64]) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for ((v, (lo, hi)), &m) in x.iter().zip(&self.bounds).zip(&g.shape) {
            let t = ((v - lo) / (hi - lo) * m as f64).floor();
            let i = (t.max(0.0) as usize).min(m - 1);
            idx += i * stride;
            stride *= m;
        }
        idx
    }

    /// Parses the density-grid text format:
    ///
    /// ```text
    /// d m_1 … m_d
    /// lo_1 hi_1 … lo_d hi_d
    /// v_1 v_2 …            (m_1·…·m_d values, first axis fastest)
    /// ```
    pub fn parse_density_grid(text: &str) -> Result<Self> {
        let mut tokens = text
            .lines()
            .enumerate()
            .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)));
        let mut next = |what: &str| {
            tokens
                .next()
                .ok_or_else(|| Error::parse(None, format!("unexpected end of input, expected {what}")))
        };
        let (line, tok) = next("dimension")?;
        let d: usize = tok
            .parse()
            .map_err(|_| Error::parse(Some(line), format!("invalid dimension `{tok}`")))?;
        if d == 0 || d > 16 {
            return Err(Error::parse(Some(line), format!("dimension {d} out of range 1..=16")));
        }
        let mut shape = Vec::with_capacity(d);
        for k in 0..d {
            let (line, tok) = next("grid extent")?;
            let m: usize = tok
                .parse()
                .map_err(|_| Error::parse(Some(line), format!("invalid extent m_{} `{tok}`", k + 1)))?;
            if m == 0 {
                return Err(Error::parse(Some(line), format!("extent m_{} must be positive", k + 1)));
            }
            shape.push(m);
        }
        let count = checked_product(&shape).map_err(|e| Error::parse(Some(1), e.to_string()))?;
        let mut bounds = Vec::with_capacity(d);
        for k in 0..d {
            let mut pair = [0.0; 2];
            for (slot, name) in pair.iter_mut().zip(["lo", "hi"]) {
                let (line, tok) = next("box bound")?;
                *slot = parse_real(tok)
                    .ok_or_else(|| Error::parse(Some(line), format!("invalid {name}_{} `{tok}`", k + 1)))?;
            }
            bounds.push((pair[0], pair[1]));
        }
        check_bounds(&bounds).map_err(|e| Error::parse(Some(2), e.to_string()))?;
        let mut values = Vec::with_capacity(count.min(1 << 20));
        for i in 0..count {
            let (line, tok) = next("density value")?;
            let v = parse_real(tok).filter(|v| *v >= 0.0).ok_or_else(|| {
                Error::parse(
                    Some(line),
                    format!("density value #{} `{tok}` is not a nonnegative real", i + 1),
                )
            })?;
            values.push(v);
        }
        if let Ok((line, tok)) = next("") {
            return Err(Error::parse(Some(line), format!("trailing token `{tok}`")));
        }
        let grid = DensityGrid { shape, values };
        SourceMeasure::with_density(bounds, grid).map_err(|e| Error::parse(None, e.to_string()))
    }

    /// Writes the density-grid text format. Uniform measures are written as a
    /// single-cell grid.
    pub fn to_density_text(&self) -> String {
        let (shape, values): (Vec<usize>, Vec<f64>) = match &self.density {
            Density::Uniform => (vec![1; self.dim()], vec![1.0]),
            Density::Grid(g) => (g.shape.clone(), g.values.clone()),
        };
        let mut out = String::new();
        let _ = write!(out, "{}", self.dim());
        for m in &shape {
            let _ = write!(out, " {m}");
        }
        out.push('\n');
        let b: Vec<String> = self
            .bounds
            .iter()
            .flat_map(|(lo, hi)| [format!("{lo:?}"), format!("{hi:?}")])
            .collect();
        out.push_str(&b.join(" "));
        out.push('\n');
        for row in values.chunks(shape[0]) {
            let r: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            out.push_str(&r.join(" "));
            out.push('\n');
        }
        out
    }
}

fn parse_real(tok: &str) -> Option<f64> {
    tok.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Midpoint quadrature for `μ` on a regular lattice of cells.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    resolution: Vec<usize>,
    bounds: Vec<(f64, f64)>,
    axis_centers: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl QuadratureGrid {
    pub fn build(measure: &SourceMeasure, resolution: &[usize]) -> Result<Self> {
        if resolution.len() != measure.dim() {
            return Err(Error::DimensionMismatch {
                expected: measure.dim(),
                found: resolution.len(),
            });
        }
        if measure.dim() > 16 {
            return Err(Error::invalid("quadrature grids support at most 16 dimensions"));
        }
        if let Some(r) = resolution.iter().find(|&&r| r < 2) {
            return Err(Error::invalid(format!(
                "every grid resolution must be at least 2, got {r}"
            )));
        }
        let len = checked_product(resolution)?;
        let bounds = measure.bounds().to_vec();
        let axis_centers: Vec<Vec<f64>> = bounds
            .iter()
            .zip(resolution)
            .map(|(&(lo, hi), &r)| {
                let h = (hi - lo) / r as f64;
                (0..r).map(|i| lo + (i as f64 + 0.5) * h).collect()
            })
            .collect();
        let mut grid = QuadratureGrid {
            resolution: resolution.to_vec(),
            bounds,
            axis_centers,
            weights: Vec::new(),
        };
        grid.weights = match measure.density() {
            Density::Uniform => vec![1.0 / len as f64; len],
            Density::Grid(_) => {
                let raw: Vec<f64> = (0..len)
                    .into_par_iter()
                    .map_init(
                        || vec![0.0; grid.dim()],
                        |buf, i| {
                            grid.fill_center(i, buf);
                            measure.density_at(buf)
                        },
                    )
                    .collect();
                let total = block_sum(len, |i| raw[i]);
                if total <= 0.0 {
                    return Err(Error::invalid(
                        "density vanishes at every quadrature point; refine the grid",
                    ));
                }
                raw.into_iter().map(|w| w / total).collect()
            }
        };
        Ok(grid)
    }

    pub fn dim(&self) -> usize {
        self.resolution.len()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn resolution(&self) -> &[usize] {
        &self.resolution
    }

    pub fn min_resolution(&self) -> usize {
        self.resolution.iter().copied().min().unwrap_or(0)
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn cell_width(&self, axis: usize) -> f64 {
        let (lo, hi) = self.bounds[axis];
        (hi - lo) / self.resolution[axis] as f64
    }

    pub fn mean_weight(&self) -> f64 {
        1.0 / self.len() as f64
    }

    /// Surface area of the box over its volume.
    pub fn perimeter_scale(&self) -> f64 {
        self.bounds.iter().map(|(lo, hi)| 2.0 / (hi - lo)).sum()
    }

    /// Writes the center of cell `index` into `out`.
    #[inline]
    pub fn fill_center(&self, mut index: usize, out: &mut [f64]) {
        for ((o, centers), &r) in out.iter_mut().zip(&self.axis_centers).zip(&self.resolution) {
            *o = centers[index % r];
            index /= r;
        }
    }

    pub fn center(&self, index: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.fill_center(index, &mut out);
        out
    }

    /// `μ`-mass of the cells whose centers satisfy `predicate`.
    pub fn integrate_indicator<P>(&self, predicate: P) -> f64
    where
        P: Fn(&[f64]) -> bool + Sync,
    {
        let d = self.dim();
        block_sum(self.len(), |i| {
            let mut buf = [0.0f64; 16];
            let x = &mut buf[..d];
            self.fill_center(i, x);
            if predicate(x) {
                self.weights[i]
            } else {
                0.0
            }
        })
    }
}
