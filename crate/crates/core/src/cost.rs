//! p-norm ground costs `c(x, y) = ‖x − y‖_p` for `p ∈ [1, ∞]`.
//!
//! The two endpoints are separate variants of [`PNorm`]. A value like
//! `p = 1.0000001` is an ordinary finite exponent and never falls into the
//! `L1` branch.

use std::fmt;

use crate::error::{Error, Result};

/// Exponent of a p-norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PNorm {
    /// Manhattan norm.
    One,
    /// `1 < p < ∞`.
    Finite(f64),
    /// Uniform (Chebyshev) norm.
    Infinity,
}

impl PNorm {
    /// `p == 1` maps to [`PNorm::One`] and `p == +∞` to [`PNorm::Infinity`];
    /// anything else must be a finite value above one.
    pub fn new(p: f64) -> Result<Self> {
        if p == 1.0 {
            Ok(PNorm::One)
        } else if p == f64::INFINITY {
            Ok(PNorm::Infinity)
        } else if p.is_finite() && p > 1.0 {
            Ok(PNorm::Finite(p))
        } else {
            Err(Error::invalid(format!("p must lie in [1, inf], got {p}")))
        }
    }

    pub fn exponent(self) -> f64 {
        match self {
            PNorm::One => 1.0,
            PNorm::Finite(p) => p,
            PNorm::Infinity => f64::INFINITY,
        }
    }

    /// True for `1 < p < ∞`, where the norm is strictly convex and smooth
    /// away from the origin.
    pub fn is_strictly_convex(self) -> bool {
        matches!(self, PNorm::Finite(_))
    }

    /// Norm of a difference vector.
    #[inline]
    pub fn norm<I>(self, diffs: I) -> f64
    where
        I: IntoIterator<Item = f64> + Clone,
    {
        match self {
            PNorm::One => diffs.into_iter().map(f64::abs).sum(),
            PNorm::Infinity => diffs.into_iter().fold(0.0, |m, d| m.max(d.abs())),
            PNorm::Finite(p) => {
                // Factor out the largest component so that |d|^p stays in range.
                let m = diffs.clone().into_iter().fold(0.0f64, |m, d: f64| m.max(d.abs()));
                if m == 0.0 {
                    return 0.0;
                }
                if p == 2.0 {
                    let s: f64 = diffs.into_iter().map(|d| (d / m) * (d / m)).sum();
                    m * s.sqrt()
                } else {
                    let s: f64 = diffs.into_iter().map(|d| (d.abs() / m).powf(p)).sum();
                    m * s.powf(1.0 / p)
                }
            }
        }
    }
}

impl fmt::Display for PNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PNorm::One => f.write_str("1"),
            PNorm::Finite(p) => write!(f, "{p}"),
            PNorm::Infinity => f.write_str("inf"),
        }
    }
}

/// A point of `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point(v)
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(v: [f64; N]) -> Self {
        Point(v.to_vec())
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Ground cost: a p-norm on `R^d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostSpec {
    pub norm: PNorm,
    pub dim: usize,
}

impl CostSpec {
    pub fn new(norm: PNorm, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        Ok(CostSpec { norm, dim })
    }

    pub fn with_exponent(p: f64, dim: usize) -> Result<Self> {
        CostSpec::new(PNorm::new(p)?, dim)
    }

    fn check(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Unchecked cost evaluation for inner loops. Both slices must have
    /// length `self.dim`.
    #[inline]
    pub fn distance(&self, x: &[f64], y: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), y.len());
        self.norm.norm(x.iter().zip(y).map(|(a, b)| a - b))
    }

    pub fn eval_cost(&self, x: &Point, y: &Point) -> Result<f64> {
        self.check(x.coords())?;
        self.check(y.coords())?;
        Ok(self.distance(x.coords(), y.coords()))
    }

    /// `g_ij(x) = c(x, y_i) − c(x, y_j)`.
    pub fn eval_g(&self, x: &Point, yi: &Point, yj: &Point) -> Result<f64> {
        Ok(self.eval_cost(x, yi)? - self.eval_cost(x, yj)?)
    }

    /// Gradient of `x ↦ c(x, y)` for `1 < p < ∞`.
    ///
    /// Component `k` is `(x_k − y_k)|x_k − y_k|^{p−2} c(x, y)^{1−p}`, evaluated
    /// as `sign(d_k) |d_k / c|^{p−1}`. The result has unit dual norm.
    pub fn grad_cost(&self, x: &Point, y: &Point) -> Result<Vec<f64>> {
        self.check(x.coords())?;
        self.check(y.coords())?;
        let p = match self.norm {
            PNorm::Finite(p) => p,
            other => {
                return Err(Error::UnsupportedCost(format!(
                    "gradient requires 1 < p < inf, got p = {other}"
                )))
            }
        };
        let c = self.distance(x.coords(), y.coords());
        if c == 0.0 {
            return Err(Error::SingularPoint);
        }
        Ok(x.coords()
            .iter()
            .zip(y.coords())
            .map(|(a, b)| {
                let r = (a - b) / c;
                r.signum() * r.abs().powf(p - 1.0)
            })
            .map(|v| if v.is_nan() { 0.0 } else { v })
            .collect())
    }
}
