//! Command-line front end.
//!
//! Exit codes: 0 when every requested check passes, 1 on a verification failure,
//! 2 on a usage or configuration error.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::LejaError;
use crate::flip2d::{decompose, FlipContext};
use crate::lebesgue::{
    configure_threads_from_env, jackson_study, lebesgue_1d, lebesgue_2d, lebesgue_2d_mapped,
    mapped_nodes, disk_leja_context, EllipseMap, LebesgueReport, TestFunction, DEFAULT_GRID_2D,
};
use crate::leja1d::{
    disk_leja_section, verify_leja_section, CompactDescriptor, DyadicAngle, NodeSequence1D,
    DEFAULT_GRID, DEFAULT_TOL,
};
use crate::numeration::{block_size, enumerate};
use crate::random::{random_disk_point, random_unimodular_nodes, seeded_rng, DEFAULT_SEED};
use crate::report::{emit, fmt_f64, to_json, CplxRepr, Format, Table};
use crate::vdm::{counterexample_section, decompose_intertwining, required_lengths, verify_multidim_leja};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Rotation applied by `--inject-bad-node`, in radians. Not a dyadic multiple of pi.
pub const INJECTED_ROTATION: f64 = 0.1;

#[derive(Debug, Parser)]
#[command(name = "leja-lab", version, about = "Multidimensional Leja sequences, FLIPs and Lebesgue constants")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Boundary samples per axis.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the first N intertwined disk Leja points.
    Points {
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long)]
        count: usize,
        /// `disk` or `ellipse:R`, one per axis or a single spec for all axes.
        #[arg(long, default_value = "disk")]
        compact: String,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Rotate node K (0-based) of the first axis off the Leja sequence.
        #[arg(long, value_name = "K")]
        inject_bad_node: Option<usize>,
        /// Verify the points of a `points --format json` report instead.
        #[arg(long)]
        nodes_file: Option<PathBuf>,
    },
    /// Lebesgue constants of disk Leja nodes.
    Lebesgue {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, conflicts_with = "sweep_degree", required_unless_present = "sweep_degree")]
        count: Option<usize>,
        /// One report per full block N = N_d, d = 1..=D.
        #[arg(long, value_name = "D")]
        sweep_degree: Option<usize>,
        #[arg(long, default_value = "disk")]
        compact: String,
    },
    /// Interpolation error study on the bidisc.
    Interp {
        /// `poly:z2w`, `exp`, `pole:C`, ...
        #[arg(long)]
        function: String,
        #[arg(long)]
        max_degree: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    DiskLeja,
    Multidim,
    Counterexample,
    FlipOracle,
    All,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<LejaError> for CliError {
    fn from(e: LejaError) -> Self {
        match e {
            LejaError::InvalidArgument(_)
            | LejaError::InvalidCompact(_)
            | LejaError::ZeroIndex
            | LejaError::ZeroDimension
            | LejaError::Empty(_)
            | LejaError::Overflow { .. }
            | LejaError::Io(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parse `disk` / `ellipse:R`, comma-separated, expanded to `dim` axes.
pub fn parse_compacts(spec: &str, dim: usize) -> CliResult<Vec<CompactDescriptor>> {
    let parts: Vec<CompactDescriptor> = spec
        .split(',')
        .map(|p| {
            let p = p.trim();
            if p == "disk" {
                Ok(CompactDescriptor::UnitDisk)
            } else if let Some(r) = p.strip_prefix("ellipse:") {
                let r: f64 = r.parse().map_err(|_| usage(format!("bad ellipse parameter {r:?}")))?;
                Ok(CompactDescriptor::ellipse(r)?)
            } else {
                Err(usage(format!("unknown compact {p:?}; expected disk or ellipse:R")))
            }
        })
        .collect::<CliResult<_>>()?;
    match parts.len() {
        1 => Ok(vec![parts[0].clone(); dim]),
        n if n == dim => Ok(parts),
        n => Err(usage(format!("{n} compacts given for dimension {dim}"))),
    }
}

/// The first `len` disk Leja nodes, pushed onto `compact` when it is an ellipse.
fn leja_axis(compact: &CompactDescriptor, len: usize) -> CliResult<NodeSequence1D> {
    let disk = disk_leja_section(len, DyadicAngle::ZERO)?;
    match compact {
        CompactDescriptor::UnitDisk => Ok(disk),
        CompactDescriptor::Ellipse { r } => Ok(mapped_nodes(
            EllipseMap::new(*r)?,
            disk.angles().expect("exact"),
        )?),
        CompactDescriptor::SampledBoundary { .. } => Err(usage("sampled compacts are read from files")),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointRow {
    pub n: usize,
    pub multi_index: Vec<usize>,
    pub coords: Vec<CplxRepr>,
}

/// The `points` report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointsReport {
    pub dim: usize,
    pub count: usize,
    pub compacts: Vec<CompactDescriptor>,
    pub points: Vec<PointRow>,
}

pub fn points_report(dim: usize, count: usize, compacts: &[CompactDescriptor]) -> CliResult<PointsReport> {
    if dim == 0 {
        return Err(usage("--dim must be at least 1"));
    }
    if count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let lens = required_lengths(dim, count)?;
    let axes = compacts
        .iter()
        .zip(&lens)
        .map(|(c, &len)| leja_axis(c, len))
        .collect::<CliResult<Vec<_>>>()?;
    let points = enumerate(dim)?
        .take(count)
        .enumerate()
        .map(|(i, k)| PointRow {
            n: i + 1,
            coords: axes
                .iter()
                .enumerate()
                .map(|(slot, axis)| {
                    let idx = k.get(slot);
                    match axis.angles() {
                        Some(a) => CplxRepr::exact(a[idx]),
                        None => axis.points()[idx].into(),
                    }
                })
                .collect(),
            multi_index: k.components().to_vec(),
        })
        .collect();
    Ok(PointsReport {
        dim,
        count,
        compacts: compacts.to_vec(),
        points,
    })
}

fn points_csv(report: &PointsReport) -> String {
    let mut header = vec!["n".to_string()];
    header.extend((1..=report.dim).map(|j| format!("k{j}")));
    for j in 1..=report.dim {
        header.extend(["re", "im", "angle_num", "angle_level"].map(|c| format!("{c}{j}")));
    }
    let mut table = Table {
        header,
        rows: Vec::new(),
    };
    for row in &report.points {
        let mut cells = vec![row.n.to_string()];
        cells.extend(row.multi_index.iter().map(|k| k.to_string()));
        for c in &row.coords {
            cells.push(fmt_f64(c.re));
            cells.push(fmt_f64(c.im));
            cells.push(c.angle_num.map(|v| v.to_string()).unwrap_or_default());
            cells.push(c.angle_level.map(|v| v.to_string()).unwrap_or_default());
        }
        table.push(cells);
    }
    table.to_csv()
}

/// One suite's verdict.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub passed: bool,
    /// Name of the first failing check.
    pub failure: Option<String>,
    pub report: Value,
}

#[derive(Clone, Debug)]
struct VerifyConfig {
    count: Option<usize>,
    dim: usize,
    grid: Option<usize>,
    tol: f64,
    seed: u64,
    inject: Option<usize>,
}

fn inject(seq: &NodeSequence1D, k: usize) -> CliResult<NodeSequence1D> {
    let z = *seq
        .points()
        .get(k)
        .ok_or_else(|| usage(format!("--inject-bad-node {k} is out of range for {} nodes", seq.len())))?;
    Ok(seq.with_replaced(k, z * Complex64::from_polar(1.0, INJECTED_ROTATION))?)
}

fn check_leja_1d(seq: &NodeSequence1D, cfg: &VerifyConfig) -> CliResult<SuiteOutcome> {
    let seq = match cfg.inject {
        Some(k) => inject(seq, k)?,
        None => seq.clone(),
    };
    let v = verify_leja_section(&seq, cfg.grid.unwrap_or(DEFAULT_GRID), cfg.tol)?;
    Ok(SuiteOutcome {
        suite: Suite::DiskLeja,
        passed: v.accepted,
        failure: v.first_failure.map(|k| format!("Leja condition at node {k}")),
        report: serde_json::to_value(&v).expect("serializable"),
    })
}

fn check_multidim(components: Vec<NodeSequence1D>, n: usize, cfg: &VerifyConfig) -> CliResult<SuiteOutcome> {
    let mut components = components;
    if let Some(k) = cfg.inject {
        components[0] = inject(&components[0], k)?;
    }
    let v = verify_multidim_leja(&components, n, cfg.grid.unwrap_or(4096), cfg.tol)?;
    Ok(SuiteOutcome {
        suite: Suite::Multidim,
        passed: v.accepted,
        failure: v.first_failure.map(|k| format!("Leja condition at point H_{k}")),
        report: serde_json::to_value(&v).expect("serializable"),
    })
}

fn suite_disk_leja(cfg: &VerifyConfig) -> CliResult<SuiteOutcome> {
    let n = cfg.count.unwrap_or(32);
    if n == 0 {
        return Err(usage("--count must be at least 1"));
    }
    check_leja_1d(&disk_leja_section(n, DyadicAngle::ZERO)?, cfg)
}

fn suite_multidim(cfg: &VerifyConfig) -> CliResult<SuiteOutcome> {
    let n = cfg.count.unwrap_or(15);
    if n == 0 || cfg.dim == 0 {
        return Err(usage("--count and --dim must be at least 1"));
    }
    let components = required_lengths(cfg.dim, n)?
        .into_iter()
        .map(|len| disk_leja_section(len, DyadicAngle::ZERO))
        .collect::<Result<Vec<_>, _>>()?;
    check_multidim(components, n, cfg)
}

fn suite_counterexample(cfg: &VerifyConfig) -> CliResult<SuiteOutcome> {
    let r = counterexample_section(cfg.grid.unwrap_or(1024))?;
    let failure = if !r.is_leja_section {
        Some("3-Leja property of the counterexample".to_string())
    } else if !r.not_intertwining {
        Some("non-intertwining contradiction".to_string())
    } else {
        None
    };
    Ok(SuiteOutcome {
        suite: Suite::Counterexample,
        passed: failure.is_none(),
        failure,
        report: serde_json::to_value(&r).expect("serializable"),
    })
}

/// Worst deviation between closed-form and determinant-ratio FLIPs.
#[derive(Clone, Debug, Serialize)]
struct OracleFamily {
    family: &'static str,
    max_n: usize,
    points_per_n: usize,
    max_scaled_error: f64,
    worst: Option<(usize, usize, usize)>,
    passed: bool,
}

const ORACLE_POINTS: usize = 50;

fn oracle_family(family: &'static str, max_n: usize, seed: u64, random_nodes: bool) -> CliResult<OracleFamily> {
    let mut rng = seeded_rng(seed);
    let mut max_scaled_error: f64 = 0.0;
    let mut worst = None;
    for n in 1..=max_n {
        let d = decompose(n)?.d;
        let (etas, thetas) = if random_nodes {
            (
                random_unimodular_nodes(&mut rng, d + 1),
                random_unimodular_nodes(&mut rng, d + 1),
            )
        } else {
            let s = disk_leja_section(d + 1, DyadicAngle::ZERO)?;
            (s.clone(), s)
        };
        let ctx = FlipContext::new(etas.points(), thetas.points(), n)?;
        let oracle = ctx.oracle()?;
        for _ in 0..ORACLE_POINTS {
            let (z, w) = (random_disk_point(&mut rng), random_disk_point(&mut rng));
            for (node, l) in ctx.nodes().iter().zip(ctx.eval_all(z, w)) {
                let o = oracle.eval(node.p, node.q, z, w)?;
                // relative 1e-8, or absolute 1e-9 for small reference values
                let scaled = if o.norm() < 1e-3 {
                    (l - o).norm() / 1e-9
                } else {
                    (l - o).norm() / (1e-8 * o.norm())
                };
                if scaled > max_scaled_error || scaled.is_nan() {
                    max_scaled_error = if scaled.is_nan() { f64::INFINITY } else { scaled };
                    worst = Some((n, node.p, node.q));
                }
            }
        }
    }
    Ok(OracleFamily {
        family,
        max_n,
        points_per_n: ORACLE_POINTS,
        max_scaled_error,
        worst,
        passed: max_scaled_error <= 1.0,
    })
}

fn suite_flip_oracle(cfg: &VerifyConfig) -> CliResult<SuiteOutcome> {
    let max_n = cfg.count.unwrap_or(28);
    if max_n == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let families = vec![
        oracle_family("disk-leja", max_n, cfg.seed, false)?,
        oracle_family("random-unimodular", max_n, cfg.seed, true)?,
    ];
    let failure = families
        .iter()
        .find(|f| !f.passed)
        .map(|f| format!("oracle mismatch for {} nodes at (N, p, q) = {:?}", f.family, f.worst));
    Ok(SuiteOutcome {
        suite: Suite::FlipOracle,
        passed: failure.is_none(),
        failure,
        report: serde_json::to_value(&families).expect("serializable"),
    })
}

/// Read a `points` JSON report and verify it against sampled copies of its compacts.
fn suite_nodes_file(path: &Path, cfg: &VerifyConfig) -> CliResult<SuiteOutcome> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let report: PointsReport =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if report.points.is_empty() || report.compacts.len() != report.dim {
        return Err(usage(format!("{}: malformed points report", path.display())));
    }
    let grid = cfg.grid.unwrap_or(if report.dim == 1 { DEFAULT_GRID } else { 4096 });
    let pts: Vec<Vec<Complex64>> = report
        .points
        .iter()
        .map(|r| r.coords.iter().map(|&c| c.into()).collect())
        .collect();
    let comps = match decompose_intertwining(&pts, 0.0)? {
        Ok(c) => c,
        Err(conflict) => {
            return Ok(SuiteOutcome {
                suite: if report.dim == 1 { Suite::DiskLeja } else { Suite::Multidim },
                passed: false,
                failure: Some("points do not form an intertwining sequence".into()),
                report: serde_json::to_value(&conflict).expect("serializable"),
            })
        }
    };
    let components = comps
        .into_iter()
        .zip(&report.compacts)
        .map(|(c, compact)| {
            let sampled = CompactDescriptor::sampled(compact.boundary_samples(grid))?;
            NodeSequence1D::new(c, sampled)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cfg = VerifyConfig {
        grid: Some(grid),
        ..cfg.clone()
    };
    if report.dim == 1 {
        check_leja_1d(&components[0], &cfg)
    } else {
        check_multidim(components, pts.len(), &cfg)
    }
}

fn run_verify(suite: Suite, nodes_file: Option<&Path>, cfg: &VerifyConfig) -> CliResult<Vec<SuiteOutcome>> {
    if let Some(path) = nodes_file {
        if !matches!(suite, Suite::DiskLeja | Suite::Multidim | Suite::All) {
            return Err(usage("--nodes-file applies to the disk-leja and multidim suites"));
        }
        return Ok(vec![suite_nodes_file(path, cfg)?]);
    }
    match suite {
        Suite::DiskLeja => Ok(vec![suite_disk_leja(cfg)?]),
        Suite::Multidim => Ok(vec![suite_multidim(cfg)?]),
        Suite::Counterexample => Ok(vec![suite_counterexample(cfg)?]),
        Suite::FlipOracle => Ok(vec![suite_flip_oracle(cfg)?]),
        Suite::All => {
            let defaults = VerifyConfig {
                count: None,
                grid: None,
                ..cfg.clone()
            };
            Ok(vec![
                suite_disk_leja(cfg)?,
                suite_multidim(cfg)?,
                suite_counterexample(&defaults)?,
                suite_flip_oracle(&VerifyConfig {
                    inject: None,
                    ..defaults
                })?,
            ])
        }
    }
}

fn verify_csv(outcomes: &[SuiteOutcome]) -> String {
    let mut t = Table::new(&["suite", "passed", "failure"]);
    for o in outcomes {
        let name = serde_json::to_value(o.suite).expect("serializable");
        t.push(vec![
            name.as_str().unwrap_or_default().to_string(),
            o.passed.to_string(),
            o.failure.clone().unwrap_or_default().replace(',', ";"),
        ]);
    }
    t.to_csv()
}

fn lebesgue_reports(dim: usize, count: Option<usize>, sweep: Option<usize>, grid: Option<usize>, compacts: &[CompactDescriptor]) -> CliResult<Vec<LebesgueReport>> {
    let counts: Vec<usize> = match (count, sweep) {
        (Some(0), _) => return Err(usage("--count must be at least 1")),
        (Some(n), None) => vec![n],
        (None, Some(0)) => return Err(usage("--sweep-degree must be at least 1")),
        (None, Some(dmax)) => (1..=dmax)
            .map(|d| block_size(dim, d).map(|b| b as usize))
            .collect::<Result<_, _>>()?,
        _ => return Err(usage("give exactly one of --count and --sweep-degree")),
    };
    match dim {
        1 => {
            let grid = grid.unwrap_or(DEFAULT_GRID);
            counts
                .iter()
                .map(|&n| Ok(lebesgue_1d(&leja_axis(&compacts[0], n)?, grid)?))
                .collect()
        }
        2 => {
            let grid = grid.unwrap_or(DEFAULT_GRID_2D);
            counts
                .iter()
                .map(|&n| match (&compacts[0], &compacts[1]) {
                    (CompactDescriptor::UnitDisk, CompactDescriptor::UnitDisk) => {
                        Ok(lebesgue_2d(&disk_leja_context(n)?, grid)?)
                    }
                    (a, b) => {
                        let r = |c: &CompactDescriptor| match c {
                            CompactDescriptor::Ellipse { r } => Ok(*r),
                            _ => Err(usage("mixed disk/ellipse products are not supported")),
                        };
                        Ok(lebesgue_2d_mapped(r(a)?, r(b)?, n, grid)?)
                    }
                })
                .collect()
        }
        _ => Err(usage("lebesgue supports --dim 1 or 2")),
    }
}

fn lebesgue_csv(reports: &[LebesgueReport]) -> String {
    let mut t = Table::new(&[
        "N",
        "d",
        "m",
        "grid",
        "lambda",
        "lambda/N^1.5",
        "argmax_z_angle",
        "argmax_w_angle",
    ]);
    for r in reports {
        t.push(vec![
            r.n.to_string(),
            r.d.to_string(),
            r.m.to_string(),
            r.grid_per_axis.to_string(),
            fmt_f64(r.lambda),
            fmt_f64(r.lambda_over_n_1_5()),
            r.argmax_angles.first().map(|&a| fmt_f64(a)).unwrap_or_default(),
            r.argmax_angles.get(1).map(|&a| fmt_f64(a)).unwrap_or_default(),
        ]);
    }
    t.to_csv()
}

/// Run a parsed command; returns the report text and whether all checks passed.
pub fn execute(cli: &Cli) -> CliResult<(String, bool)> {
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0 && tol < 1.0) {
        return Err(usage(format!("--tol must be in (0, 1), got {tol}")));
    }
    if cli.grid == Some(0) {
        return Err(usage("--grid must be positive"));
    }
    match &cli.command {
        Command::Points { dim, count, compact } => {
            let compacts = parse_compacts(compact, (*dim).max(1))?;
            let report = points_report(*dim, *count, &compacts)?;
            let text = match cli.format {
                Format::Json => to_json(&report),
                Format::Csv => points_csv(&report),
            };
            Ok((text, true))
        }
        Command::Verify {
            suite,
            count,
            dim,
            inject_bad_node,
            nodes_file,
        } => {
            let cfg = VerifyConfig {
                count: *count,
                dim: *dim,
                grid: cli.grid,
                tol,
                seed: cli.seed.unwrap_or(DEFAULT_SEED),
                inject: *inject_bad_node,
            };
            let outcomes = run_verify(*suite, nodes_file.as_deref(), &cfg)?;
            let passed = outcomes.iter().all(|o| o.passed);
            let text = match cli.format {
                Format::Json => to_json(&json!({ "passed": passed, "suites": outcomes })),
                Format::Csv => verify_csv(&outcomes),
            };
            Ok((text, passed))
        }
        Command::Lebesgue {
            dim,
            count,
            sweep_degree,
            compact,
        } => {
            let compacts = parse_compacts(compact, (*dim).max(1))?;
            let reports = lebesgue_reports(*dim, *count, *sweep_degree, cli.grid, &compacts)?;
            let text = match cli.format {
                Format::Json => to_json(&reports),
                Format::Csv => lebesgue_csv(&reports),
            };
            Ok((text, true))
        }
        Command::Interp {
            function,
            max_degree,
        } => {
            let f: TestFunction = function.parse()?;
            let rows = jackson_study(|z, w| f.eval(z, w), *max_degree, cli.grid.unwrap_or(DEFAULT_GRID_2D))?;
            let text = match cli.format {
                Format::Json => to_json(&json!({ "function": f.to_string(), "rows": rows })),
                Format::Csv => {
                    let mut t = Table::new(&["d", "N", "sup_error", "slope"]);
                    for r in &rows {
                        t.push(vec![
                            r.d.to_string(),
                            r.n.to_string(),
                            fmt_f64(r.sup_error),
                            r.fitted_rate.map(fmt_f64).unwrap_or_default(),
                        ]);
                    }
                    t.to_csv()
                }
            };
            Ok((text, true))
        }
    }
}

/// Parse arguments, run, write the report and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = configure_threads_from_env() {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    match execute(&cli) {
        Ok((text, passed)) => {
            if let Err(e) = emit(&text, cli.out.as_deref()) {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
            if passed {
                EXIT_PASS
            } else {
                eprintln!("verification failed");
                EXIT_FAIL
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            EXIT_FAIL
        }
    }
}
