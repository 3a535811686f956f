//! Empirical distribution of `g_ij` under `μ` at grid centers.

use crate::cost::CostSpec;
use crate::error::{Error, Result};
use crate::measure::{QuadratureGrid, SourceMeasure};
use crate::numeric::CompensatedSum;
use crate::partition::{g_field, TargetMeasure};

/// Distinct values of `g_ij` (merged within `1e-12` relative) with
/// `cumulative[k] = μ({g ≤ values[k]})`.
#[derive(Debug, Clone, PartialEq)]
pub struct GDistribution {
    pub values: Vec<f64>,
    pub cumulative: Vec<f64>,
}

impl GDistribution {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Mass carried by value `k`.
    pub fn mass_at(&self, k: usize) -> f64 {
        self.cumulative[k] - if k == 0 { 0.0 } else { self.cumulative[k - 1] }
    }

    /// `μ({g ≤ t})`.
    pub fn at_most(&self, t: f64) -> f64 {
        match self.values.partition_point(|&v| v <= t) {
            0 => 0.0,
            k => self.cumulative[k - 1],
        }
    }

    /// Values carrying more than `min_mass`, as `(value, mass)`.
    pub fn jumps(&self, min_mass: f64) -> Vec<(f64, f64)> {
        (0..self.len())
            .map(|k| (self.values[k], self.mass_at(k)))
            .filter(|&(_, m)| m > min_mass)
            .collect()
    }

    pub fn max_jump(&self) -> f64 {
        (0..self.len()).map(|k| self.mass_at(k)).fold(0.0, f64::max)
    }
}

pub fn scan_g_distribution(
    measure: &SourceMeasure,
    spec: &CostSpec,
    targets: &TargetMeasure,
    i: usize,
    j: usize,
    resolution: usize,
) -> Result<GDistribution> {
    if i == j {
        return Err(Error::invalid("scan needs two distinct targets"));
    }
    let grid = QuadratureGrid::build(measure, &vec![resolution; measure.dim()])?;
    let g = g_field(&grid, spec, targets, i, j)?;
    let mut pairs: Vec<(f64, f64)> = g.into_iter().zip(grid.weights().iter().copied()).collect();
    pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
    let mut values = Vec::new();
    let mut cumulative = Vec::new();
    let mut acc = CompensatedSum::default();
    let mut start = f64::NAN;
    for (v, w) in pairs {
        let merge = !values.is_empty() && v - start <= 1e-12 * (1.0 + start.abs());
        acc.add(w);
        if merge {
            *cumulative.last_mut().expect("nonempty") = acc.value();
        } else {
            start = v;
            values.push(v);
            cumulative.push(acc.value());
        }
    }
    Ok(GDistribution { values, cumulative })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::Point;

    fn setup(p: f64, y1: [f64; 2], y2: [f64; 2]) -> (SourceMeasure, CostSpec, TargetMeasure) {
        (
            SourceMeasure::uniform(vec![(0.0, 1.0), (0.0, 1.0)]).unwrap(),
            CostSpec::with_exponent(p, 2).unwrap(),
            TargetMeasure::new(vec![Point::from(y1), Point::from(y2)], vec![0.5, 0.5]).unwrap(),
        )
    }

    #[test]
    fn euclidean_is_continuous() {
        let (m, s, t) = setup(2.0, [0.25, 0.5], [0.75, 0.5]);
        let d = scan_g_distribution(&m, &s, &t, 0, 1, 512).unwrap();
        assert!(d.max_jump() <= 10.0 / 512.0);
        assert!((d.cumulative.last().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sup_norm_jumps() {
        let (m, s, t) = setup(f64::INFINITY, [0.25, 0.5], [0.75, 0.5]);
        let d = scan_g_distribution(&m, &s, &t, 0, 1, 512).unwrap();
        // lattice plateaus carry up to ~1/r; atoms stand well above that
        let jumps = d.jumps(10.0 / 512.0);
        assert_eq!(jumps.len(), 3, "{jumps:?}");
        for (k, mass) in [(-0.5, 1.0 / 16.0), (0.0, 1.0 / 8.0), (0.5, 1.0 / 16.0)] {
            assert!(
                jumps
                    .iter()
                    .any(|&(v, m)| (v - k).abs() < 1e-9 && (m - mass).abs() < 3e-3),
                "{jumps:?}"
            );
        }
    }

    #[test]
    fn taxicab_jumps_total_quarter() {
        let (m, s, t) = setup(1.0, [0.25, 0.25], [0.75, 0.75]);
        let d = scan_g_distribution(&m, &s, &t, 0, 1, 512).unwrap();
        let jumps = d.jumps(10.0 / 512.0);
        let total: f64 = jumps.iter().map(|j| j.1).sum();
        assert_eq!(jumps.len(), 3, "{jumps:?}");
        assert!((total - 0.25).abs() < 5e-3, "{total}");
        assert!(d.at_most(-1.0) > 0.05);
    }
}
