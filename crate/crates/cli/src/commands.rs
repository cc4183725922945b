use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use netrel::ensemble::{
    bound_curve, epf_exact_with, epf_lower, epf_montecarlo_with, epf_upper, expected_t, format_significant,
    pu_exact_with, pu_lower, pu_upper, rank_distribution_with, round_f64, EnsembleParams, EnumerationOptions,
    GridSpec, McEstimate, DEFAULT_GRID, OUTPUT_DIGITS, RNG_ALGORITHM,
};
use netrel::graphcore::{cut_weight_distribution, f2_rank, incidence_matrix, null_space_size};
use netrel::reliability::{
    eval_failure_polynomial, failure_profile_enum_with, failure_profile_pivotal, DEFAULT_SUBSET_EDGE_CAP,
};
use netrel::{EpsPolynomial, LabeledGraph, Rational};

pub const CSV_HEADER: &str = "eps,lower,exact,mc,mc_stderr,upper";

const EXACT_METHOD: &str = "exhaustive edge-set enumeration with failure-subset counting";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] netrel::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

type Result<T> = std::result::Result<T, CliError>;

/// Exact network failure probabilities and random-graph ensemble bounds.
#[derive(Debug, Parser)]
#[command(name = "netrel", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report connectivity, cut-set weights and the failure polynomial of a graph file.
    Graph {
        /// Graph file: "k n" header, then n lines "i j" (1-based, i < j).
        path: PathBuf,
        /// Evaluate the failure polynomial at this ε (decimal or a/b).
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Print the closed-form bounds for an ensemble.
    Bounds {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Also enumerate the ensemble for exact values.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Write bound curves over an ε grid as CSV plus a key=value sidecar.
    Sweep(SweepArgs),
    /// Monte Carlo estimate of the expected failure probability at one ε.
    Mc {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    /// Comma-separated explicit ε values.
    #[arg(long, conflicts_with = "grid")]
    pub eps: Option<String>,
    /// min:max:points:log|lin (default 1e-6:0.5:60:log).
    #[arg(long)]
    pub grid: Option<String>,
    /// Comma-separated subset of lower,exact,mc,upper.
    #[arg(long, default_value = "lower,exact,upper")]
    pub columns: String,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub workers: Option<usize>,
    /// Report upper-bound values above 1 as 1.
    #[arg(long)]
    pub clamp: bool,
    /// Accept ε = 0 and ε = 1 in the grid.
    #[arg(long)]
    pub allow_boundary: bool,
    #[arg(long)]
    pub out: PathBuf,
}

/// Which CSV columns to fill.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Columns {
    pub lower: bool,
    pub exact: bool,
    pub mc: bool,
    pub upper: bool,
}

impl Columns {
    pub fn parse(s: &str) -> Result<Self> {
        let mut cols = Columns::default();
        for name in s.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match name {
                "lower" => cols.lower = true,
                "exact" => cols.exact = true,
                "mc" => cols.mc = true,
                "upper" => cols.upper = true,
                other => return Err(CliError::Usage(format!("unknown column {other:?}"))),
            }
        }
        if cols == Columns::default() {
            return Err(CliError::Usage("no columns requested".into()));
        }
        Ok(cols)
    }

    fn names(&self) -> String {
        [("lower", self.lower), ("exact", self.exact), ("mc", self.mc), ("upper", self.upper)]
            .iter()
            .filter(|(_, on)| *on)
            .map(|(name, _)| *name)
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GridChoice {
    Explicit(Vec<Rational>),
    Spec(GridSpec),
}

/// Everything a sweep run depends on.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub params: EnsembleParams,
    pub grid: GridChoice,
    pub columns: Columns,
    pub trials: u64,
    pub seed: u64,
    pub clamp: bool,
    pub allow_boundary: bool,
    pub out: PathBuf,
}

pub fn parse_grid(s: &str) -> Result<GridSpec> {
    let bad = || CliError::Usage(format!("grid must be min:max:points:log|lin, got {s:?}"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 4 {
        return Err(bad());
    }
    let min: f64 = parts[0].parse().map_err(|_| bad())?;
    let max: f64 = parts[1].parse().map_err(|_| bad())?;
    let points: usize = parts[2].parse().map_err(|_| bad())?;
    let log = match parts[3] {
        "log" => true,
        "lin" | "linear" => false,
        _ => return Err(bad()),
    };
    if points == 0 {
        return Err(CliError::Usage("grid needs at least one point".into()));
    }
    Ok(GridSpec { min, max, points, log })
}

fn parse_eps(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| CliError::Usage(format!("not a probability: {s:?}")))
}

fn ensemble(k: usize, n: usize) -> Result<EnsembleParams> {
    EnsembleParams::new(k, n).map_err(|e| CliError::Usage(e.to_string()))
}

fn workers(requested: Option<usize>) -> usize {
    requested
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1)
}

fn options(requested: Option<usize>) -> EnumerationOptions {
    EnumerationOptions::with_workers(workers(requested))
}

impl SweepSpec {
    pub fn from_args(args: &SweepArgs) -> Result<Self> {
        let grid = match (&args.eps, &args.grid) {
            (Some(list), _) => GridChoice::Explicit(list.split(',').map(parse_eps).collect::<Result<_>>()?),
            (None, Some(g)) => GridChoice::Spec(parse_grid(g)?),
            (None, None) => GridChoice::Spec(DEFAULT_GRID),
        };
        Ok(SweepSpec {
            params: ensemble(args.k, args.n)?,
            grid,
            columns: Columns::parse(&args.columns)?,
            trials: args.trials,
            seed: args.seed,
            clamp: args.clamp,
            allow_boundary: args.allow_boundary,
            out: args.out.clone(),
        })
    }

    pub fn points(&self) -> Result<Vec<Rational>> {
        match &self.grid {
            GridChoice::Spec(spec) => Ok(spec.points(self.allow_boundary)?),
            GridChoice::Explicit(points) => {
                if points.is_empty() {
                    return Err(CliError::Usage("empty ε list".into()));
                }
                for p in points {
                    let inside = if self.allow_boundary {
                        !p.is_negative() && *p <= 1
                    } else {
                        *p > 0 && *p < 1
                    };
                    if !inside {
                        return Err(CliError::Usage(format!("ε = {p} outside the allowed range")));
                    }
                }
                Ok(points.clone())
            }
        }
    }

    fn grid_description(&self) -> String {
        match &self.grid {
            GridChoice::Spec(g) => {
                format!("{}:{}:{}:{}", g.min, g.max, g.points, if g.log { "log" } else { "lin" })
            }
            GridChoice::Explicit(points) => points
                .iter()
                .map(|p| format_significant(p, OUTPUT_DIGITS))
                .collect::<Vec<_>>()
                .join(","),
        }
    }
}

pub fn run(cli: Cli, out: &mut impl Write) -> Result<()> {
    match cli.command {
        Command::Graph { path, eps, workers } => {
            let eps = eps.as_deref().map(parse_eps).transpose()?;
            let report = cmd_graph(&path, eps.as_ref(), self::workers(workers))?;
            out.write_all(report.as_bytes())?;
        }
        Command::Bounds { k, n, exact, workers } => {
            let report = cmd_bounds(ensemble(k, n)?, exact.then(|| options(workers)))?;
            out.write_all(report.as_bytes())?;
        }
        Command::Sweep(args) => {
            let spec = SweepSpec::from_args(&args)?;
            let (csv, meta) = cmd_sweep(&spec, self::workers(args.workers))?;
            write_file(&spec.out, &csv)?;
            write_file(&sidecar_path(&spec.out), &meta)?;
            writeln!(out, "wrote {} rows to {}", csv.lines().count() - 1, spec.out.display())?;
        }
        Command::Mc {
            k,
            n,
            eps,
            trials,
            seed,
            workers,
        } => {
            let p = ensemble(k, n)?;
            let eps = parse_eps(&eps)?;
            let est = epf_montecarlo_with(p, &eps, trials, seed, self::workers(workers))?;
            write!(out, "{}", mc_report(&est))?;
        }
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| CliError::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

pub fn sidecar_path(csv: &Path) -> PathBuf {
    let mut name = csv.as_os_str().to_owned();
    name.push(".meta");
    PathBuf::from(name)
}

fn list<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    format!("[{}]", items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn coefficient_list(p: &EpsPolynomial) -> String {
    if p.is_zero() {
        return "[0]".into();
    }
    list(p.coeffs())
}

pub fn cmd_graph(path: &Path, eps: Option<&Rational>, workers: usize) -> Result<String> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    let g = LabeledGraph::parse(&text)?;
    graph_report(&g, eps, workers)
}

pub fn graph_report(g: &LabeledGraph, eps: Option<&Rational>, workers: usize) -> Result<String> {
    let mut s = String::new();
    let connected = g.is_connected();
    writeln!(s, "k = {}", g.vertex_count()).unwrap();
    writeln!(s, "n = {}", g.edge_count()).unwrap();
    writeln!(s, "connected = {connected}").unwrap();
    writeln!(s, "f2_rank = {}", f2_rank(&incidence_matrix(g))).unwrap();
    writeln!(s, "null_space_size = {}", null_space_size(g)).unwrap();
    if connected {
        match cut_weight_distribution(g) {
            Ok(b) => writeln!(s, "cut_weights = {}", list(&b.counts)).unwrap(),
            Err(netrel::Error::Capacity { .. }) => writeln!(s, "cut_weights = (k above enumeration cap)").unwrap(),
            Err(e) => return Err(e.into()),
        }
    }
    let poly = if g.edge_count() <= DEFAULT_SUBSET_EDGE_CAP {
        let profile = failure_profile_enum_with(g, DEFAULT_SUBSET_EDGE_CAP, workers)?;
        writeln!(s, "failure_counts = {}", list(&profile.counts)).unwrap();
        profile.polynomial
    } else {
        writeln!(s, "failure_counts = (n above subset cap; pivotal decomposition used)").unwrap();
        failure_profile_pivotal(g)
    };
    writeln!(s, "failure_polynomial = {poly}").unwrap();
    writeln!(s, "failure_coefficients = {}", coefficient_list(&poly)).unwrap();
    if let Some(eps) = eps {
        let eval = eval_failure_polynomial(&poly, eps)?;
        writeln!(
            s,
            "failure_probability({eps}) = {} ≈ {}",
            eval.value,
            format_significant(&eval.value, OUTPUT_DIGITS)
        )
        .unwrap();
        if eval.boundary {
            writeln!(s, "warning: ε = {eps} is a boundary value").unwrap();
        }
    }
    Ok(s)
}

pub fn cmd_bounds(p: EnsembleParams, exact: Option<EnumerationOptions>) -> Result<String> {
    let mut s = String::new();
    let lower = pu_lower(p);
    writeln!(s, "k = {}", p.k()).unwrap();
    writeln!(s, "n = {}", p.n()).unwrap();
    writeln!(s, "edge_sets = {}", p.edge_set_count()).unwrap();
    writeln!(s, "pu_lower_raw = {}", lower.raw).unwrap();
    writeln!(s, "pu_lower = {}", lower.floored).unwrap();
    writeln!(s, "pu_lower_floored = {}", lower.was_floored()).unwrap();
    writeln!(s, "pu_upper = {}", pu_upper(p)).unwrap();
    writeln!(s, "expected_t = {}", expected_t(p)).unwrap();
    let (lo, up) = (epf_lower(p), epf_upper(p));
    writeln!(s, "epf_lower = {lo}").unwrap();
    writeln!(s, "epf_lower_coefficients = {}", coefficient_list(&lo)).unwrap();
    writeln!(s, "epf_upper = {up}").unwrap();
    writeln!(s, "epf_upper_coefficients = {}", coefficient_list(&up)).unwrap();
    if let Some(opts) = exact {
        let pu = pu_exact_with(p, &opts)?;
        let ranks = rank_distribution_with(p, &opts)?;
        writeln!(s, "pu_exact = {pu} ≈ {}", format_significant(&pu, OUTPUT_DIGITS)).unwrap();
        writeln!(s, "rank_distribution = {}", list(&ranks.probs[1..])).unwrap();
        writeln!(s, "expected_t_from_ranks = {}", ranks.expected_null_space_size()).unwrap();
        let ex = epf_exact_with(p, &opts)?;
        writeln!(s, "epf_exact = {ex}").unwrap();
        writeln!(s, "epf_exact_coefficients = {}", coefficient_list(&ex)).unwrap();
    }
    Ok(s)
}

fn mc_report(est: &McEstimate) -> String {
    format!(
        "mean = {}\nstd_error = {}\ntrials = {}\nseed = {}\nrng = {}\n",
        est.mean, est.std_error, est.trials, est.seed, RNG_ALGORITHM
    )
}

fn float_cell(x: f64) -> Result<String> {
    Ok(format_significant(&round_f64(x)?, OUTPUT_DIGITS))
}

/// Returns the CSV body and the sidecar metadata.
pub fn cmd_sweep(spec: &SweepSpec, workers: usize) -> Result<(String, String)> {
    let p = spec.params;
    let points = spec.points()?;
    let opts = EnumerationOptions::with_workers(workers);
    let exact = if spec.columns.exact {
        Some(epf_exact_with(p, &opts)?)
    } else {
        None
    };
    let curve = bound_curve(p, &points, exact.as_ref().map(|e| (e, EXACT_METHOD)), spec.clamp);
    let fmt = |x: &Rational| format_significant(x, OUTPUT_DIGITS);
    let mut csv = String::new();
    csv.push_str(CSV_HEADER);
    csv.push('\n');
    for row in &curve.rows {
        let mut cells = vec![fmt(&row.eps)];
        cells.push(if spec.columns.lower { fmt(&row.lower) } else { String::new() });
        cells.push(row.exact.as_ref().map(fmt).unwrap_or_default());
        if spec.columns.mc {
            if row.eps.is_zero() || row.eps == 1 {
                return Err(CliError::Usage("the mc column needs ε strictly inside (0, 1)".into()));
            }
            let est = epf_montecarlo_with(p, &row.eps, spec.trials, spec.seed, workers)?;
            cells.push(float_cell(est.mean)?);
            cells.push(float_cell(est.std_error)?);
        } else {
            cells.push(String::new());
            cells.push(String::new());
        }
        cells.push(if spec.columns.upper { fmt(&row.upper) } else { String::new() });
        csv.push_str(&cells.join(","));
        csv.push('\n');
    }

    let lower = pu_lower(p);
    let mut meta = String::new();
    let defaults = EnumerationOptions::default();
    let mut kv = |k: &str, v: String| {
        meta.push_str(k);
        meta.push('=');
        meta.push_str(&v);
        meta.push('\n');
    };
    kv("k", p.k().to_string());
    kv("n", p.n().to_string());
    kv("columns", spec.columns.names());
    kv("grid", spec.grid_description());
    kv("points", points.len().to_string());
    kv("allow_boundary", spec.allow_boundary.to_string());
    kv("edge_set_cap", defaults.edge_set_cap.to_string());
    kv("subset_edge_cap", defaults.subset_edge_cap.to_string());
    kv("exact_method", if spec.columns.exact { EXACT_METHOD.into() } else { "none".into() });
    kv("mc_trials", if spec.columns.mc { spec.trials.to_string() } else { "none".into() });
    kv("mc_seed", if spec.columns.mc { spec.seed.to_string() } else { "none".into() });
    kv("rng", RNG_ALGORITHM.into());
    kv("pu_lower_raw", lower.raw.to_string());
    kv("pu_lower_floored_value", lower.floored.to_string());
    kv("pu_lower_floored", lower.was_floored().to_string());
    kv("pu_upper", pu_upper(p).to_string());
    kv("upper_clamped", spec.clamp.to_string());
    kv("float_digits", OUTPUT_DIGITS.to_string());
    Ok((csv, meta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn column_parsing() {
        assert_eq!(
            Columns::parse("lower,upper").unwrap(),
            Columns { lower: true, upper: true, ..Default::default() }
        );
        assert!(matches!(Columns::parse(""), Err(CliError::Usage(_))));
        assert!(matches!(Columns::parse("lower,bogus"), Err(CliError::Usage(_))));
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(
            parse_grid("1e-6:0.5:60:log").unwrap(),
            GridSpec { min: 1e-6, max: 0.5, points: 60, log: true }
        );
        assert!(!parse_grid("0.1:0.2:3:lin").unwrap().log);
        assert!(parse_grid("0.1:0.2:3").is_err());
        assert!(parse_grid("0.1:0.2:0:log").is_err());
        assert!(parse_grid("a:0.2:3:log").is_err());
    }

    #[test]
    fn bounds_report_small_ensembles() {
        let r = cmd_bounds(EnsembleParams::new(3, 3).unwrap(), None).unwrap();
        assert!(r.contains("epf_upper_coefficients = [0, 0, 3]\n"));
        assert!(r.contains("epf_lower_coefficients = [0, 0, 3, -3]\n"));
        let r = cmd_bounds(EnsembleParams::new(4, 3).unwrap(), Some(EnumerationOptions::default())).unwrap();
        assert!(r.contains("pu_lower = 1/5\n"));
        assert!(r.contains("pu_upper = 1/5\n"));
        assert!(r.contains("pu_exact = 1/5"));
        assert!(r.contains("rank_distribution = [4/5, 1/5, 0]\n"));
    }

    #[test]
    fn sweep_single_point() {
        let spec = SweepSpec {
            params: EnsembleParams::new(3, 3).unwrap(),
            grid: GridChoice::Explicit(vec![Rational::ratio(1, 2)]),
            columns: Columns::parse("exact").unwrap(),
            trials: 10,
            seed: 1,
            clamp: false,
            allow_boundary: false,
            out: PathBuf::from("unused.csv"),
        };
        let (csv, meta) = cmd_sweep(&spec, 1).unwrap();
        assert_eq!(csv, "eps,lower,exact,mc,mc_stderr,upper\n0.5,,0.5,,,\n");
        assert!(meta.contains("columns=exact\n"));
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(sidecar_path(Path::new("out/a.csv")), PathBuf::from("out/a.csv.meta"));
    }
}
