//! Subcommands of the `shiftpart` binary.
//!
//! Target indices are 1-based on the command line and in JSON reports.
//! `flow.csv` keeps the library's 0-based cell and target indices.
//!
//! Exit codes: 0 success, 2 bad input or arguments, 3 convergence failure
//! (the best iterate is still written), 4 instance too large for the exact
//! oracle, 5 output cannot be written.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use shiftpart::instance::{Instance, InstanceSpec};
use shiftpart::oracle::{mc_integrate, scan_g_distribution, solve_discrete_lp, LP_SIZE_LIMIT};
use shiftpart::raster::{labels_pgm, labels_ppm, tied_fraction};
use shiftpart::sweep::{sweep_nu1, SweepOptions};
use shiftpart::{eval_f, flat_value_scan, Error, PNorm, Point, QuadratureGrid, ShiftResult, ShiftSolver};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;
pub const EXIT_SIZE_GUARD: i32 = 4;
pub const EXIT_OUTPUT: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "shiftpart",
    version,
    about = "Semi-discrete optimal transport under p-norm costs"
)]
pub struct Cli {
    /// Worker threads for data-parallel loops.
    #[arg(long, global = true, env = "SHIFTPART_WORKERS")]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the shifts and report cells, ties and costs.
    Solve(SolveArgs),
    /// Scan the cost difference of a target pair for atoms.
    Analyze(AnalyzeArgs),
    /// Sweep the first target mass of a two-target instance.
    Sweep(SweepArgs),
    /// Render the built-in sup-norm and taxicab examples.
    Figures(FiguresArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Override the grid resolution on every axis.
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Cross-check against the exact transportation solver on the same grid.
    #[arg(long)]
    pub lp_check: bool,
    /// Seed for a Monte Carlo estimate of the tie set.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, num_args = 2, value_names = ["I", "J"], default_values_t = [1, 2])]
    pub pair: Vec<usize>,
    #[arg(long)]
    pub resolution: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 63)]
    pub steps: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub refine: f64,
    #[arg(long)]
    pub resolution: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1024)]
    pub resolution: usize,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn output(path: &Path, e: impl fmt::Display) -> Self {
        Failure {
            code: EXIT_OUTPUT,
            message: format!("cannot write {}: {e}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotConverged(_) | Error::AscentNotMonotone { .. } => EXIT_NOT_CONVERGED,
            Error::SizeGuard { .. } => EXIT_SIZE_GUARD,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

pub fn run(cli: Cli) -> i32 {
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be at least 1");
            return EXIT_USAGE;
        }
        // A second initialization (e.g. in tests) keeps the existing pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Figures(a) => cmd_figures(a),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {f}");
            f.code
        }
    }
}

fn load(path: &Path, resolution: Option<usize>) -> Result<(InstanceSpec, Instance), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let spec = InstanceSpec::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut inst = spec.build(base)?;
    if let Some(r) = resolution {
        if r < 2 {
            return Err(Failure::usage("--resolution must be at least 2"));
        }
        inst.resolution = vec![r; inst.resolution.len()];
    }
    Ok((spec, inst))
}

fn prepare_out(dir: &Path) -> CmdResult {
    fs::create_dir_all(dir).map_err(|e| Failure::output(dir, e))?;
    let probe = dir.join(".shiftpart-write-test");
    fs::write(&probe, b"").map_err(|e| Failure::output(dir, e))?;
    let _ = fs::remove_file(probe);
    Ok(())
}

fn write(dir: &Path, name: &str, contents: impl AsRef<[u8]>) -> CmdResult {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Failure::output(&path, e))
}

fn write_json(dir: &Path, name: &str, value: &Value) -> CmdResult {
    let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
    text.push('\n');
    write(dir, name, text)
}

fn p_json(norm: PNorm) -> Value {
    match norm {
        PNorm::Infinity => json!("inf"),
        p => json!(p.exponent()),
    }
}

pub fn result_json(r: &ShiftResult, nu: &[f64]) -> Value {
    let pairs: Vec<Value> = r
        .boundary
        .pair_measures
        .iter()
        .map(|(&(i, j), &m)| json!({"i": i + 1, "j": j + 1, "measure": m}))
        .collect();
    json!({
        "shifts": r.shifts.as_slice(),
        "masses": r.masses,
        "target_masses": nu,
        "mass_brackets": r.mass_brackets.iter().map(|&(lo, hi)| json!([lo, hi])).collect::<Vec<_>>(),
        "residual": r.residual,
        "iterations": r.iterations,
        "converged": r.converged,
        "boundary": {
            "boundary_measure": r.boundary.boundary_measure,
            "tie_mass": r.boundary.tie_mass,
            "threshold": r.boundary.threshold,
            "is_mu_partition": r.boundary.is_mu_partition,
            "pair_measures": pairs,
        },
        "primal_cost": {"lower": r.primal_cost.lower, "upper": r.primal_cost.upper},
        "dual_objective": r.dual_objective,
    })
}

pub fn cmd_solve(args: &SolveArgs) -> CmdResult {
    let (_, inst) = load(&args.instance, args.resolution)?;
    let cells: usize = inst.resolution.iter().product();
    if args.lp_check && cells.saturating_mul(inst.targets.len()) > LP_SIZE_LIMIT {
        return Err(Error::SizeGuard {
            entries: cells.saturating_mul(inst.targets.len()),
            limit: LP_SIZE_LIMIT,
        }
        .into());
    }
    prepare_out(&args.out)?;
    let grid = QuadratureGrid::build(&inst.source, &inst.resolution)?;
    let solver = ShiftSolver::new(&grid, &inst.spec, &inst.targets, inst.solve.clone())?;
    let (result, failure) = match solver.solve() {
        Ok(r) => (r, None),
        Err(Error::NotConverged(best)) => {
            let msg = format!(
                "solver did not converge: residual {:e} after {} iterations; best iterate written",
                best.residual, best.iterations
            );
            (
                *best,
                Some(Failure {
                    code: EXIT_NOT_CONVERGED,
                    message: msg,
                }),
            )
        }
        Err(e) => return Err(e.into()),
    };

    let mut report = result_json(&result, inst.targets.masses());
    report["instance"] = json!(args.instance.display().to_string());
    report["cost"] = json!({"p": p_json(inst.spec.norm), "d": inst.spec.dim});
    report["resolution"] = json!(inst.resolution);
    report["tie_tolerance"] = json!(inst.solve.tie_tolerance);
    report["lp_check"] = Value::Null;
    report["mc_check"] = Value::Null;

    if args.lp_check {
        let lp = solve_discrete_lp(&grid, &inst.spec, &inst.targets)?;
        let slack = 1e-6 * (1.0 + lp.cost.abs());
        report["lp_check"] = json!({
            "cost": lp.cost,
            "pivots": lp.pivots,
            "within_primal_bracket": result.primal_cost.contains(lp.cost, slack),
            "dual_gap": lp.cost - result.dual_objective,
        });
        let mut csv = Vec::new();
        lp.write_flow_csv(&mut csv).expect("writing to memory");
        write(&args.out, "flow.csv", csv)?;
    }
    if let Some(seed) = args.seed {
        let tau = inst.solve.tie_tolerance;
        let mc = mc_integrate(
            &inst.source,
            |x| {
                eval_f(&inst.spec, &inst.targets, &result.shifts, &Point::new(x.to_vec()), tau)
                    .map(|(_, argmax)| argmax.len() > 1)
                    .unwrap_or(false)
            },
            1_000_000,
            seed,
        )?;
        report["mc_check"] = json!({
            "seed": seed,
            "samples": 1_000_000,
            "tie_mass": mc.estimate,
            "std_error": mc.std_error,
        });
    }

    write_json(&args.out, "result.json", &report)?;
    if inst.spec.dim == 2 {
        let assignment = solver.assignment(&result.shifts)?;
        write(&args.out, "labels.pgm", labels_pgm(&assignment, &inst.resolution)?)?;
    }
    println!(
        "converged={} residual={:e} tie_mass={:e} is_mu_partition={}",
        result.converged, result.residual, result.boundary.tie_mass, result.boundary.is_mu_partition
    );
    match failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

fn pair_indices(pair: &[usize], n: usize) -> Result<(usize, usize), Failure> {
    match pair {
        [i, j] if *i >= 1 && *j >= 1 && *i <= n && *j <= n && i != j => Ok((i - 1, j - 1)),
        _ => Err(Failure::usage(format!(
            "--pair needs two distinct target indices in 1..={n}"
        ))),
    }
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> CmdResult {
    let (_, inst) = load(&args.instance, args.resolution)?;
    let (i, j) = pair_indices(&args.pair, inst.targets.len())?;
    prepare_out(&args.out)?;
    let grid = QuadratureGrid::build(&inst.source, &inst.resolution)?;
    let scan = flat_value_scan(&grid, &inst.spec, &inst.targets, i, j, inst.scan)?;
    // A single grid column of an affine piece of g carries about 1/r of mass.
    if inst.scan.atom_threshold * (grid.min_resolution() as f64) < 2.0 {
        eprintln!(
            "warning: atom threshold {:e} is below the lattice plateau mass at resolution {}; \
             reported atoms may be grid artifacts",
            inst.scan.atom_threshold,
            grid.min_resolution()
        );
    }

    // The CDF table is thinned to steps of at least 1e-4 in cumulative
    // mass; values carrying an atom-sized jump are always kept.
    let r = inst.resolution.iter().copied().min().unwrap_or(2);
    let dist = scan_g_distribution(&inst.source, &inst.spec, &inst.targets, i, j, r)?;
    let mut csv = String::from("value,cumulative_mass\n");
    let mut last = f64::NEG_INFINITY;
    for k in 0..dist.len() {
        let c = dist.cumulative[k];
        if k + 1 == dist.len() || dist.mass_at(k) > inst.scan.atom_threshold || c - last >= 1e-4 {
            csv.push_str(&format!("{:e},{:e}\n", dist.values[k], c));
            last = c;
        }
    }
    write(&args.out, "cdf.csv", csv)?;

    let atoms: Vec<Value> = scan
        .atoms
        .iter()
        .map(|a| {
            let (lo, hi) = a.failing_interval();
            json!({"k": a.value, "mass": a.mass, "left_mass": a.left_mass, "failing_nu": [lo, hi]})
        })
        .collect();
    let predicted: Vec<Value> = scan
        .predicted_partition_set()
        .iter()
        .map(|&(a, b)| json!([a, b]))
        .collect();
    let holds = scan.atoms.is_empty();
    write_json(
        &args.out,
        "analysis.json",
        &json!({
            "instance": args.instance.display().to_string(),
            "pair": [i + 1, j + 1],
            "resolution": inst.resolution,
            "g_range": [scan.min, scan.max],
            "bin_width": scan.bin_width,
            "atom_threshold": inst.scan.atom_threshold,
            "condition_holds": holds,
            "atoms": atoms,
            "predicted_partition_set": predicted,
        }),
    )?;

    if holds {
        println!("condition holds; no atoms detected");
    } else {
        for a in &scan.atoms {
            let (lo, hi) = a.failing_interval();
            println!(
                "condition violated at k={:.6} (mass {:.6}); no partition for nu{} in [{:.6}, {:.6}]",
                a.value,
                a.mass,
                i + 1,
                lo,
                hi
            );
        }
    }
    let set: Vec<String> = scan
        .predicted_partition_set()
        .iter()
        .map(|(a, b)| format!("({a:.6}, {b:.6})"))
        .collect();
    println!("predicted partition set for nu{}: {}", i + 1, set.join(" U "));
    Ok(())
}

pub fn cmd_sweep(args: &SweepArgs) -> CmdResult {
    let (_, inst) = load(&args.instance, args.resolution)?;
    if inst.targets.len() != 2 {
        return Err(Failure::usage(format!(
            "sweep needs exactly 2 targets, instance has {}",
            inst.targets.len()
        )));
    }
    if args.steps == 0 || args.refine.is_nan() || args.refine <= 0.0 {
        return Err(Failure::usage("--steps must be at least 1 and --refine positive"));
    }
    prepare_out(&args.out)?;
    let grid = QuadratureGrid::build(&inst.source, &inst.resolution)?;
    let solver = ShiftSolver::new(&grid, &inst.spec, &inst.targets, inst.solve.clone())?;
    let report = sweep_nu1(
        &solver,
        SweepOptions {
            steps: args.steps,
            refine: args.refine,
        },
    )?;
    let scan = flat_value_scan(&grid, &inst.spec, &inst.targets, 0, 1, inst.scan)?;
    write(&args.out, "sweep.csv", report.to_csv())?;
    let intervals: Vec<Value> = report
        .intervals
        .iter()
        .map(|iv| json!({"lo": iv.lo, "hi": iv.hi, "lo_error": iv.lo_error, "hi_error": iv.hi_error}))
        .collect();
    let predicted: Vec<Value> = scan
        .predicted_partition_set()
        .iter()
        .map(|&(a, b)| json!([a, b]))
        .collect();
    write_json(
        &args.out,
        "sweep.json",
        &json!({
            "instance": args.instance.display().to_string(),
            "resolution": inst.resolution,
            "steps": args.steps,
            "refine": args.refine,
            "points": report.rows.len(),
            "intervals": intervals,
            "predicted_from_atoms": predicted,
        }),
    )?;
    let set: Vec<String> = report
        .intervals
        .iter()
        .map(|iv| {
            format!(
                "({:.6} ± {:.1e}, {:.6} ± {:.1e})",
                iv.lo, iv.lo_error, iv.hi, iv.hi_error
            )
        })
        .collect();
    println!("partition set for nu1: {}", set.join(" U "));
    Ok(())
}

/// The five built-in figure instances: name, instance.
pub fn figure_instances(resolution: usize) -> Vec<(&'static str, InstanceSpec)> {
    vec![
        (
            "sup_norm_nu1_1-32",
            InstanceSpec::sup_norm_example(1.0 / 32.0, resolution),
        ),
        (
            "sup_norm_nu1_1-8",
            InstanceSpec::sup_norm_example(1.0 / 8.0, resolution),
        ),
        ("taxicab_nu1_1-2", InstanceSpec::taxicab_example(0.5, resolution)),
        (
            "taxicab_nu1_1-32",
            InstanceSpec::taxicab_example(1.0 / 32.0, resolution),
        ),
        ("taxicab_nu1_1-4", InstanceSpec::taxicab_example(0.25, resolution)),
    ]
}

pub fn cmd_figures(args: &FiguresArgs) -> CmdResult {
    if args.resolution < 2 {
        return Err(Failure::usage("--resolution must be at least 2"));
    }
    prepare_out(&args.out)?;
    let mut entries = Vec::new();
    for (name, spec) in figure_instances(args.resolution) {
        let inst = spec.build(Path::new("."))?;
        let grid = QuadratureGrid::build(&inst.source, &inst.resolution)?;
        let solver = ShiftSolver::new(&grid, &inst.spec, &inst.targets, inst.solve.clone())?;
        let result = solver.solve()?;
        let assignment = solver.assignment(&result.shifts)?;
        let file = format!("{name}.ppm");
        write(&args.out, &file, labels_ppm(&assignment, &inst.resolution)?)?;
        let frac = tied_fraction(&assignment);
        println!("{file}: tied fraction {frac:.6}");
        entries.push(json!({
            "file": file,
            "p": p_json(inst.spec.norm),
            "targets": inst.targets.points().iter().map(|p| p.coords().to_vec()).collect::<Vec<_>>(),
            "nu1": inst.targets.masses()[0],
            "tied_fraction": frac,
            "boundary_measure": result.boundary.boundary_measure,
            "is_mu_partition": result.boundary.is_mu_partition,
        }));
    }
    write_json(
        &args.out,
        "figures.json",
        &json!({"resolution": args.resolution, "figures": entries}),
    )
}
