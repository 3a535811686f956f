//! Instance files: TOML with sections `cost`, `source`, `targets`, `grid`,
//! `solver` and `tolerances`.
//!
//! ```toml
//! [cost]
//! p = "inf"          # a number >= 1, or "inf"
//! d = 2
//!
//! [source]
//! box = [[0.0, 1.0], [0.0, 1.0]]
//! density = "uniform"   # or a density-grid file, relative to this file
//!
//! [[targets]]
//! point = [0.25, 0.5]
//! mass = 0.125
//!
//! [[targets]]
//! point = [0.75, 0.5]
//! mass = 0.875
//!
//! [grid]
//! resolution = 2048     # or one entry per axis
//!
//! [solver]
//! mass_tolerance = 1e-5
//! max_iterations = 10000
//! step_rule = "backtracking"   # or "fixed", with `damping = 0.5`
//!
//! [tolerances]
//! tie_tolerance = 1e-4
//! band = 1e-6
//! atom_threshold = 1e-3
//! ```
//!
//! `grid`, `solver` and `tolerances` are optional. Semantic errors name the
//! offending field, e.g. `targets[1].mass` (array positions are 0-based).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cost::{CostSpec, PNorm, Point};
use crate::error::{Error, Result};
use crate::measure::SourceMeasure;
use crate::partition::{ScanOptions, TargetMeasure, DEFAULT_ATOM_THRESHOLD, DEFAULT_TIE_TOLERANCE};
use crate::solver::{SolveOptions, StepRule};

pub const DEFAULT_RESOLUTION: usize = 512;

#[derive(Debug, Clone, PartialEq)]
pub enum DensitySource {
    Uniform,
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Resolution {
    Uniform(usize),
    PerAxis(Vec<usize>),
}

impl Resolution {
    pub fn per_axis(&self, dim: usize) -> Vec<usize> {
        match self {
            Resolution::Uniform(r) => vec![*r; dim],
            Resolution::PerAxis(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TargetSpec {
    pub point: Vec<f64>,
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    pub tie_tolerance: f64,
    pub band: f64,
    pub atom_threshold: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        let scan = ScanOptions::default();
        Tolerances {
            tie_tolerance: DEFAULT_TIE_TOLERANCE,
            band: scan.band,
            atom_threshold: DEFAULT_ATOM_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub norm: PNorm,
    pub dim: usize,
    pub bounds: Vec<(f64, f64)>,
    pub density: DensitySource,
    pub targets: Vec<TargetSpec>,
    pub resolution: Resolution,
    pub mass_tolerance: f64,
    pub max_iterations: usize,
    pub step_rule: StepRule,
    pub tolerances: Tolerances,
}

/// A parsed instance with its density loaded.
#[derive(Debug, Clone)]
pub struct Instance {
    pub spec: CostSpec,
    pub source: SourceMeasure,
    pub targets: TargetMeasure,
    pub resolution: Vec<usize>,
    pub solve: SolveOptions,
    pub scan: ScanOptions,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    cost: RawCost,
    source: RawSource,
    targets: Vec<RawTarget>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grid: Option<RawGrid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    solver: Option<RawSolver>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tolerances: Option<RawTolerances>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCost {
    p: RawNumber,
    d: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawNumber {
    Int(i64),
    Float(f64),
    Text(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSource {
    #[serde(rename = "box")]
    bounds: Vec<Vec<RawNumber>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    density: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTarget {
    point: Vec<RawNumber>,
    mass: RawNumber,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    resolution: RawResolution,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawResolution {
    One(i64),
    Axes(Vec<i64>),
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSolver {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mass_tolerance: Option<RawNumber>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_iterations: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    step_rule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    damping: Option<RawNumber>,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawTolerances {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tie_tolerance: Option<RawNumber>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    band: Option<RawNumber>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    atom_threshold: Option<RawNumber>,
}

fn field(path: impl Into<String>, msg: impl std::fmt::Display) -> Error {
    Error::parse(None, format!("{}: {msg}", path.into()))
}

fn number(raw: &RawNumber, path: &str) -> Result<f64> {
    let v = match raw {
        RawNumber::Int(i) => *i as f64,
        RawNumber::Float(f) => *f,
        RawNumber::Text(_) => return Err(field(path, "expected a number")),
    };
    if !v.is_finite() {
        return Err(field(path, "expected a finite number"));
    }
    Ok(v)
}

fn positive(raw: &RawNumber, path: &str) -> Result<f64> {
    let v = number(raw, path)?;
    if v <= 0.0 {
        return Err(field(path, format!("must be positive, got {v}")));
    }
    Ok(v)
}

fn count(v: i64, path: &str, min: i64) -> Result<usize> {
    if v < min {
        return Err(field(path, format!("must be at least {min}, got {v}")));
    }
    usize::try_from(v).map_err(|_| field(path, "out of range"))
}

impl InstanceSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawInstance = toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1);
            Error::parse(line, e.message().trim().to_string())
        })?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawInstance) -> Result<Self> {
        let norm = match &raw.cost.p {
            RawNumber::Text(s) if s == "inf" => PNorm::Infinity,
            RawNumber::Text(s) => return Err(field("cost.p", format!("expected a number or \"inf\", got {s:?}"))),
            p => PNorm::new(number(p, "cost.p")?).map_err(|e| field("cost.p", e))?,
        };
        let dim = count(raw.cost.d, "cost.d", 1)?;
        if dim > 16 {
            return Err(field("cost.d", "at most 16 dimensions are supported"));
        }

        if raw.source.bounds.len() != dim {
            return Err(field(
                "source.box",
                format!("expected {dim} intervals, got {}", raw.source.bounds.len()),
            ));
        }
        let mut bounds = Vec::with_capacity(dim);
        for (k, b) in raw.source.bounds.iter().enumerate() {
            let path = format!("source.box[{k}]");
            let [lo, hi] = b.as_slice() else {
                return Err(field(path, "expected [lo, hi]"));
            };
            let (lo, hi) = (number(lo, &path)?, number(hi, &path)?);
            if lo >= hi {
                return Err(field(path, format!("empty interval [{lo}, {hi}]")));
            }
            bounds.push((lo, hi));
        }
        let density = match raw.source.density.as_deref() {
            None | Some("uniform") => DensitySource::Uniform,
            Some("") => return Err(field("source.density", "empty path")),
            Some(p) => DensitySource::File(PathBuf::from(p)),
        };

        if raw.targets.len() < 2 {
            return Err(field(
                "targets",
                format!("at least 2 targets required, got {}", raw.targets.len()),
            ));
        }
        let mut targets: Vec<TargetSpec> = Vec::with_capacity(raw.targets.len());
        for (k, t) in raw.targets.iter().enumerate() {
            if t.point.len() != dim {
                return Err(field(
                    format!("targets[{k}].point"),
                    format!("expected {dim} coordinates, got {}", t.point.len()),
                ));
            }
            let point = t
                .point
                .iter()
                .map(|c| number(c, &format!("targets[{k}].point")))
                .collect::<Result<Vec<_>>>()?;
            if let Some(j) = targets.iter().position(|o| o.point == point) {
                return Err(field(
                    format!("targets[{k}].point"),
                    format!("duplicates targets[{j}].point"),
                ));
            }
            let mass = positive(&t.mass, &format!("targets[{k}].mass"))?;
            targets.push(TargetSpec { point, mass });
        }
        let total: f64 = targets.iter().map(|t| t.mass).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(field("targets[].mass", format!("masses sum to {total}, expected 1")));
        }

        let resolution = match raw.grid.map(|g| g.resolution) {
            None => Resolution::Uniform(DEFAULT_RESOLUTION),
            Some(RawResolution::One(r)) => Resolution::Uniform(count(r, "grid.resolution", 2)?),
            Some(RawResolution::Axes(v)) => {
                if v.len() != dim {
                    return Err(field(
                        "grid.resolution",
                        format!("expected {dim} entries, got {}", v.len()),
                    ));
                }
                Resolution::PerAxis(
                    v.iter()
                        .enumerate()
                        .map(|(k, &r)| count(r, &format!("grid.resolution[{k}]"), 2))
                        .collect::<Result<_>>()?,
                )
            }
        };

        let solver = raw.solver.unwrap_or_default();
        let defaults = SolveOptions::default();
        let mass_tolerance = match &solver.mass_tolerance {
            Some(v) => positive(v, "solver.mass_tolerance")?,
            None => defaults.mass_tolerance,
        };
        let max_iterations = match solver.max_iterations {
            Some(v) => count(v, "solver.max_iterations", 1)?,
            None => defaults.max_iterations,
        };
        let step_rule = match (solver.step_rule.as_deref(), &solver.damping) {
            (None | Some("backtracking"), None) => StepRule::Backtracking,
            (None | Some("backtracking"), Some(_)) => {
                return Err(field("solver.damping", "only valid with step_rule = \"fixed\""))
            }
            (Some("fixed"), Some(d)) => {
                let damping = positive(d, "solver.damping")?;
                if damping > 1.0 {
                    return Err(field("solver.damping", format!("must lie in (0, 1], got {damping}")));
                }
                StepRule::Fixed { damping }
            }
            (Some("fixed"), None) => return Err(field("solver.damping", "required with step_rule = \"fixed\"")),
            (Some(other), _) => {
                return Err(field(
                    "solver.step_rule",
                    format!("expected \"backtracking\" or \"fixed\", got {other:?}"),
                ))
            }
        };

        let tol = raw.tolerances.unwrap_or_default();
        let base = Tolerances::default();
        let tolerances = Tolerances {
            tie_tolerance: match &tol.tie_tolerance {
                Some(v) => positive(v, "tolerances.tie_tolerance")?,
                None => base.tie_tolerance,
            },
            band: match &tol.band {
                Some(v) => positive(v, "tolerances.band")?,
                None => base.band,
            },
            atom_threshold: match &tol.atom_threshold {
                Some(v) => positive(v, "tolerances.atom_threshold")?,
                None => base.atom_threshold,
            },
        };

        Ok(InstanceSpec {
            norm,
            dim,
            bounds,
            density,
            targets,
            resolution,
            mass_tolerance,
            max_iterations,
            step_rule,
            tolerances,
        })
    }

    /// TOML text that parses back to `self`.
    pub fn emit(&self) -> String {
        let float = RawNumber::Float;
        let (step_rule, damping) = match self.step_rule {
            StepRule::Backtracking => ("backtracking", None),
            StepRule::Fixed { damping } => ("fixed", Some(float(damping))),
        };
        let raw = RawInstance {
            cost: RawCost {
                p: match self.norm {
                    PNorm::Infinity => RawNumber::Text("inf".into()),
                    p => float(p.exponent()),
                },
                d: self.dim as i64,
            },
            source: RawSource {
                bounds: self.bounds.iter().map(|&(lo, hi)| vec![float(lo), float(hi)]).collect(),
                density: Some(match &self.density {
                    DensitySource::Uniform => "uniform".into(),
                    DensitySource::File(p) => p.to_string_lossy().into_owned(),
                }),
            },
            targets: self
                .targets
                .iter()
                .map(|t| RawTarget {
                    point: t.point.iter().copied().map(float).collect(),
                    mass: float(t.mass),
                })
                .collect(),
            grid: Some(RawGrid {
                resolution: match &self.resolution {
                    Resolution::Uniform(r) => RawResolution::One(*r as i64),
                    Resolution::PerAxis(v) => RawResolution::Axes(v.iter().map(|&r| r as i64).collect()),
                },
            }),
            solver: Some(RawSolver {
                mass_tolerance: Some(float(self.mass_tolerance)),
                max_iterations: Some(self.max_iterations as i64),
                step_rule: Some(step_rule.into()),
                damping,
            }),
            tolerances: Some(RawTolerances {
                tie_tolerance: Some(float(self.tolerances.tie_tolerance)),
                band: Some(float(self.tolerances.band)),
                atom_threshold: Some(float(self.tolerances.atom_threshold)),
            }),
        };
        toml::to_string(&raw).expect("instance always serializes")
    }

    /// Reads and parses an instance file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Builds the domain objects. A density file is resolved against
    /// `base_dir`, normally the directory of the instance file.
    pub fn build(&self, base_dir: &Path) -> Result<Instance> {
        let spec = CostSpec::new(self.norm, self.dim)?;
        let source = match &self.density {
            DensitySource::Uniform => SourceMeasure::uniform(self.bounds.clone())?,
            DensitySource::File(p) => {
                let path = base_dir.join(p);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| field("source.density", format!("{}: {e}", path.display())))?;
                let grid = SourceMeasure::parse_density_grid(&text).map_err(|e| match e {
                    Error::Parse { line, message } => Error::Parse {
                        line,
                        message: format!("{}: {message}", path.display()),
                    },
                    other => other,
                })?;
                if grid.dim() != self.dim {
                    return Err(field(
                        "source.density",
                        format!("density grid has dimension {}, expected {}", grid.dim(), self.dim),
                    ));
                }
                if grid.bounds() != self.bounds.as_slice() {
                    return Err(field("source.density", "density grid box differs from source.box"));
                }
                grid
            }
        };
        let targets = TargetMeasure::new(
            self.targets.iter().map(|t| Point::new(t.point.clone())).collect(),
            self.targets.iter().map(|t| t.mass).collect(),
        )
        .map_err(|e| field("targets", e))?;
        let solve = SolveOptions {
            mass_tolerance: self.mass_tolerance,
            max_iterations: self.max_iterations,
            step_rule: self.step_rule,
            tie_tolerance: self.tolerances.tie_tolerance,
            initial_shifts: None,
        };
        let scan = ScanOptions {
            band: self.tolerances.band,
            atom_threshold: self.tolerances.atom_threshold,
        };
        Ok(Instance {
            spec,
            source,
            resolution: self.resolution.per_axis(self.dim),
            targets,
            solve,
            scan,
        })
    }

    /// Two targets on the unit square with uniform `μ`.
    pub fn unit_square_pair(norm: PNorm, y1: [f64; 2], y2: [f64; 2], nu1: f64, resolution: usize) -> Self {
        InstanceSpec {
            norm,
            dim: 2,
            bounds: vec![(0.0, 1.0), (0.0, 1.0)],
            density: DensitySource::Uniform,
            targets: vec![
                TargetSpec {
                    point: y1.to_vec(),
                    mass: nu1,
                },
                TargetSpec {
                    point: y2.to_vec(),
                    mass: 1.0 - nu1,
                },
            ],
            resolution: Resolution::Uniform(resolution),
            mass_tolerance: SolveOptions::default().mass_tolerance,
            max_iterations: SolveOptions::default().max_iterations,
            step_rule: StepRule::Backtracking,
            tolerances: Tolerances::default(),
        }
    }

    /// Sup-norm pair `y_1 = (1/4, 1/2)`, `y_2 = (3/4, 1/2)`.
    pub fn sup_norm_example(nu1: f64, resolution: usize) -> Self {
        Self::unit_square_pair(PNorm::Infinity, [0.25, 0.5], [0.75, 0.5], nu1, resolution)
    }

    /// Taxicab pair `y_1 = (1/4, 1/4)`, `y_2 = (3/4, 3/4)`.
    pub fn taxicab_example(nu1: f64, resolution: usize) -> Self {
        Self::unit_square_pair(PNorm::One, [0.25, 0.25], [0.75, 0.75], nu1, resolution)
    }
}
