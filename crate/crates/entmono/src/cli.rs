//! Command-line front door: state-file ingestion, measure computation,
//! monogamy scans, protocol demos and plot-data emission.
//!
//! Every subcommand maps onto one library call; no numerics live here. Exit
//! codes: 0 success, 1 computation or I/O error, 2 usage error, 3 when a scan
//! of a theorem-backed inequality records a violation beyond tolerance.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measures::{
    entropy_of_entanglement, eof_convex_roof, eof_from_concurrence, eof_two_qubit,
    concurrence_two_qubit, ree_upper_bound, von_neumann_entropy, MeasureMethod, OptimizerConfig,
};
use crate::monogamy::{
    alpha_search_over, bound_eval, def15_probe, region_scan, BoundKind, BoundParams, MeasureId,
    MonogamyTriple, ScanReport,
};
use crate::protocols::{locc_prepare_pure, teleport};
use crate::states::{self, haar_random_pure, induced_mixed, rng_from_seed};

/// Worker-count override honoured by all scans.
pub const THREADS_ENV: &str = "ENTMONO_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(name = "entmono", version, about = "Entanglement measures and monogamy scans")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a measure of a state loaded from a JSON state file.
    Compute {
        /// One of: entropy, entanglement_entropy, concurrence, concurrence_sq,
        /// eof, eof_roof, ree.
        #[arg(long)]
        measure: String,
        /// Path to the state file.
        #[arg(long)]
        state: PathBuf,
        /// Number of leading subsystems on the left side of the cut.
        #[arg(long, default_value_t = 1)]
        cut: usize,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// Monogamy scans over seeded random pure states.
    #[command(subcommand)]
    Scan(ScanCommand),
    /// Run the teleportation protocol once and write its transcript.
    Teleport {
        /// Input qubit state file; a Haar-random qubit is drawn when omitted.
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Transcript JSON output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prepare alpha|00> + beta|11> from a shared pair and write the transcript.
    Prepare {
        /// Real part or "re,im" pair for alpha.
        #[arg(long)]
        alpha: String,
        /// Real part or "re,im" pair for beta.
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a random state and write it as a state file.
    Random {
        /// Comma-separated subsystem dimensions, e.g. 2,2.
        #[arg(long, value_parser = parse_dims, default_value = "2,2")]
        dims: DimList,
        /// Draw an induced mixed state instead of a Haar pure one.
        #[arg(long, default_value_t = false)]
        mixed: bool,
        /// Environment dimension for induced mixed states (default: total dim).
        #[arg(long)]
        env_dim: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit plot tables (fig2, fig3, fig9) as CSV.
    Plotdata {
        /// One of: fig2, fig3, fig9.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "concurrence_sq")]
        measure: String,
        #[arg(long, value_parser = parse_dims, default_value = "2,2,2")]
        dims: DimList,
        /// Universal constant of the dimension-weighted bound columns.
        #[arg(long = "constant-c", default_value_t = 1.0)]
        constant_c: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ScanCommand {
    /// Squared-concurrence CKW scan over pure three-qubit samples.
    Ckw {
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV table output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON report output path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Bisect the smallest alpha making the power-mean inequality hold.
    Alpha {
        #[arg(long)]
        measure: String,
        #[arg(long, value_parser = parse_dims, default_value = "2,2,2")]
        dims: DimList,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Bisection width tolerance.
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// Probe the equality condition: e_ac among samples with e_abc - e_ab < epsilon.
    Def15 {
        #[arg(long)]
        measure: String,
        #[arg(long, value_parser = parse_dims, default_value = "2,2,2")]
        dims: DimList,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-3)]
        epsilon: f64,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// Emit per-sample measure triples for region plots.
    Region {
        #[arg(long)]
        measure: String,
        #[arg(long, value_parser = parse_dims, default_value = "2,2,2")]
        dims: DimList,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
}

/// Optimizer overrides shared by the commands that run one.
#[derive(Debug, Args, Clone, Copy)]
pub struct OptimizerArgs {
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub max_sweeps: Option<usize>,
    /// Seed of the optimizer's own randomized restarts.
    #[arg(long, default_value_t = 0)]
    pub optimizer_seed: u64,
}

impl OptimizerArgs {
    fn to_config(self) -> OptimizerConfig {
        let mut cfg = OptimizerConfig { seed: self.optimizer_seed, ..OptimizerConfig::default() };
        if let Some(r) = self.restarts {
            cfg.restarts = r;
        }
        if let Some(s) = self.max_sweeps {
            cfg.max_sweeps = s;
        }
        cfg
    }
}

pub type DimList = Vec<usize>;

fn parse_dims(text: &str) -> std::result::Result<DimList, String> {
    let dims: std::result::Result<Vec<usize>, _> =
        text.split(',').map(|p| p.trim().parse::<usize>()).collect();
    match dims {
        Ok(d) if !d.is_empty() && !d.contains(&0) => Ok(d),
        _ => Err(format!("invalid dims {text:?}: expected comma-separated positive integers")),
    }
}

fn parse_complex(text: &str) -> Result<Complex64> {
    let parts: Vec<&str> = text.split(',').collect();
    let parse = |p: &str| {
        p.trim()
            .parse::<f64>()
            .map_err(|_| Error::InvalidArgument(format!("invalid number {p:?}")))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(Error::InvalidArgument(format!("invalid complex value {text:?}"))),
    }
}

/// Parses an argument vector into a validated run configuration.
pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    RunConfig::try_parse_from(argv)
}

/// Entry point used by the binary: parse, configure workers, dispatch.
pub fn main_entry() -> i32 {
    let config = match parse_args(std::env::args()) {
        Ok(config) => config,
        Err(err) => {
            // clap exits 0 for --help/--version, 2 for usage errors
            err.exit();
        }
    };
    if let Err(message) = configure_threads() {
        eprintln!("error: {message}");
        return EXIT_USAGE;
    }
    run(config)
}

fn configure_threads() -> std::result::Result<(), String> {
    if let Ok(value) = std::env::var(THREADS_ENV) {
        let n: usize = value
            .parse()
            .map_err(|_| format!("{THREADS_ENV} must be a positive integer, got {value:?}"))?;
        if n == 0 {
            return Err(format!("{THREADS_ENV} must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

/// Executes a parsed configuration and returns the process exit code.
pub fn run(config: RunConfig) -> i32 {
    match dispatch(config) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_ERROR
        }
    }
}

fn dispatch(config: RunConfig) -> Result<i32> {
    match config.command {
        Command::Compute { measure, state, cut, optimizer } => {
            compute(&measure, &state, cut, optimizer.to_config())
        }
        Command::Scan(scan) => run_scan(scan),
        Command::Teleport { state, seed, out } => run_teleport(state.as_deref(), seed, out.as_deref()),
        Command::Prepare { alpha, beta, seed, out } => {
            run_prepare(&alpha, &beta, seed, out.as_deref())
        }
        Command::Random { dims, mixed, env_dim, seed, out } => {
            run_random(&dims, mixed, env_dim, seed, &out)
        }
        Command::Plotdata { kind, out, samples, seed, measure, dims, constant_c } => {
            emit_plot_data(&kind, &out, samples, seed, &measure, &dims, constant_c)
        }
    }
}

fn compute(measure: &str, path: &Path, cut: usize, cfg: OptimizerConfig) -> Result<i32> {
    let state = states::load(path)?;
    let (value, method) = match measure {
        "entropy" => (von_neumann_entropy(&state)?, MeasureMethod::ClosedForm),
        "entanglement_entropy" => {
            (entropy_of_entanglement(&state, cut)?, MeasureMethod::ExactPure)
        }
        "concurrence" => (concurrence_two_qubit(&state)?, MeasureMethod::ClosedForm),
        "concurrence_sq" => {
            let c = concurrence_two_qubit(&state)?;
            (c * c, MeasureMethod::ClosedForm)
        }
        "eof" => {
            let result = eof_two_qubit(&state)?;
            (result.value, result.method)
        }
        "eof_roof" => {
            let result = eof_convex_roof(&state, cut, &cfg)?;
            (result.value, result.method)
        }
        "ree" => {
            let result = ree_upper_bound(&state, cut, &cfg)?;
            (result.value, result.method)
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown measure {other:?} for compute"
            )))
        }
    };
    println!("value={value:.6} method={}", method.as_str());
    Ok(EXIT_OK)
}

fn write_if(path: Option<&Path>, contents: &str) -> Result<()> {
    if let Some(path) = path {
        std::fs::write(path, contents)?;
    }
    Ok(())
}

/// Violations gate the exit code only where the scanned inequality is a
/// theorem (squared concurrence on pure samples); for other measures negative
/// sum-slack is expected physics, not a regression.
fn scan_exit_code(report: &ScanReport) -> i32 {
    if report.measure_id == MeasureId::ConcurrenceSq && !report.heuristic_rhs && report.violations > 0
    {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

fn print_scan_summary(report: &ScanReport) {
    println!(
        "measure={} samples={} violations={} min_slack={:.9}",
        report.measure_id.as_str(),
        report.samples.len(),
        report.violations,
        report.min_slack
    );
}

fn run_scan(scan: ScanCommand) -> Result<i32> {
    match scan {
        ScanCommand::Ckw { samples, seed, out, report } => {
            let result = region_scan(
                MeasureId::ConcurrenceSq,
                &[2, 2, 2],
                samples,
                seed,
                &OptimizerConfig::default(),
            )?;
            write_if(out.as_deref(), &result.to_csv())?;
            write_if(report.as_deref(), &result.to_json())?;
            print_scan_summary(&result);
            Ok(scan_exit_code(&result))
        }
        ScanCommand::Alpha { measure, dims, samples, seed, tol, report, optimizer } => {
            let measure = MeasureId::parse(&measure)?;
            let cfg = optimizer.to_config();
            let mut result = region_scan(measure, &dims, samples, seed, &cfg)?;
            let triples: Vec<MonogamyTriple> = result.samples.iter().map(|s| s.triple).collect();
            let alpha = alpha_search_over(&triples, tol);
            result.alpha_star = Some(alpha);
            write_if(report.as_deref(), &result.to_json())?;
            println!("alpha_star={alpha:.9}");
            Ok(if alpha.is_infinite() { EXIT_VIOLATION } else { EXIT_OK })
        }
        ScanCommand::Def15 { measure, dims, samples, seed, epsilon, report, optimizer } => {
            let measure = MeasureId::parse(&measure)?;
            let probe = def15_probe(measure, &dims, samples, seed, epsilon, &optimizer.to_config())?;
            write_if(
                report.as_deref(),
                &serde_json::to_string_pretty(&probe).expect("serializable"),
            )?;
            println!(
                "measure={} epsilon={:.9} in_slab={} max_in_slab_e_ac={:.9} targeted_in_slab={} targeted_max_e_ac={:.9}",
                probe.measure_id.as_str(),
                probe.epsilon,
                probe.in_slab,
                probe.max_in_slab_e_ac,
                probe.targeted_in_slab,
                probe.targeted_max_e_ac
            );
            Ok(EXIT_OK)
        }
        ScanCommand::Region { measure, dims, samples, seed, out, report, optimizer } => {
            let measure = MeasureId::parse(&measure)?;
            let result = region_scan(measure, &dims, samples, seed, &optimizer.to_config())?;
            write_if(out.as_deref(), &result.to_csv())?;
            write_if(report.as_deref(), &result.to_json())?;
            print_scan_summary(&result);
            Ok(scan_exit_code(&result))
        }
    }
}

fn run_teleport(state: Option<&Path>, seed: u64, out: Option<&Path>) -> Result<i32> {
    let input = match state {
        Some(path) => states::load(path)?,
        None => haar_random_pure(2, seed),
    };
    let mut rng = rng_from_seed(seed);
    let transcript = teleport(&input, &mut rng)?;
    let fidelity = input
        .vector()?
        .inner(transcript.final_state.vector()?)
        .norm_sqr();
    write_if(out, &transcript.to_json())?;
    let outcome = transcript.steps[1].outcome.clone().unwrap_or_default();
    println!("outcome={outcome} fidelity={fidelity:.9}");
    Ok(EXIT_OK)
}

fn run_prepare(alpha: &str, beta: &str, seed: u64, out: Option<&Path>) -> Result<i32> {
    let alpha = parse_complex(alpha)?;
    let beta = parse_complex(beta)?;
    let mut rng = rng_from_seed(seed);
    let transcript = locc_prepare_pure(alpha, beta, &mut rng)?;
    write_if(out, &transcript.to_json())?;
    let outcome = transcript.steps[1].outcome.clone().unwrap_or_default();
    let s = entropy_of_entanglement(&transcript.final_state, 1)?;
    println!("outcome={outcome} entanglement_entropy={s:.9}");
    Ok(EXIT_OK)
}

fn run_random(
    dims: &[usize],
    mixed: bool,
    env_dim: Option<usize>,
    seed: u64,
    out: &Path,
) -> Result<i32> {
    let total: usize = dims.iter().product();
    let state = if mixed {
        let env = env_dim.unwrap_or(total);
        induced_mixed(total, env, seed)?.with_dims(dims.to_vec())?
    } else {
        haar_random_pure(total, seed).with_dims(dims.to_vec())?
    };
    states::save(&state, out)?;
    println!("wrote {} state of dims {:?} to {}", if mixed { "mixed" } else { "pure" }, dims, out.display());
    Ok(EXIT_OK)
}

/// Builds the fig2 table: entanglement of formation against squared concurrence.
pub fn plot_fig2() -> String {
    let mut out = String::from("c_sq,eof\n");
    for n in 0..=1000u32 {
        let c = n as f64 / 1000.0;
        let eof = eof_from_concurrence(c).expect("c in range");
        out.push_str(&format!("{:.9},{:.9}\n", c * c, eof));
    }
    out
}

/// Builds the fig3 table: per-sample triples with normalized coordinates and
/// the dimension-weighted bound columns evaluated with constant `c`.
pub fn plot_fig3(
    measure: MeasureId,
    dims: &[usize],
    samples: u64,
    seed: u64,
    constant_c: f64,
) -> Result<String> {
    let report = region_scan(measure, dims, samples, seed, &OptimizerConfig::default())?;
    let dim3 = [dims[0], dims[1], dims[2]];
    let p45 = BoundParams::eighth_power(constant_c, dim3)?;
    let p46 = BoundParams::fourth_power(constant_c, dim3)?;
    let mut out =
        String::from("sample_index,e_ab,e_ac,e_abc,x_norm,y_norm,bound45,bound46\n");
    let points = report.normalized_points();
    for (record, (x, y)) in report.samples.iter().zip(points) {
        let t = &record.triple;
        let b45 = bound_eval(BoundKind::Bound45, &p45, t.e_ab, t.e_ac, t.e_abc, None)?;
        let b46 = bound_eval(BoundKind::Bound46, &p46, t.e_ab, t.e_ac, t.e_abc, None)?;
        out.push_str(&format!(
            "{},{:.9},{:.9},{:.9},{:.9},{:.9},{:.9},{:.9}\n",
            record.index, t.e_ab, t.e_ac, t.e_abc, x, y, b45, b46
        ));
    }
    Ok(out)
}

/// Builds the fig9 table: power-mean level curves at unit joint value for
/// alpha in {2, 10, 15, 50}.
pub fn plot_fig9() -> String {
    let mut out = String::from("alpha,e_ab,e_ac\n");
    for alpha in [2.0f64, 10.0, 15.0, 50.0] {
        for k in 0..=200u32 {
            let x = k as f64 / 200.0;
            let y = (1.0 - x.powf(alpha)).max(0.0).powf(1.0 / alpha);
            out.push_str(&format!("{alpha},{x:.9},{y:.9}\n"));
        }
    }
    out
}

fn emit_plot_data(
    kind: &str,
    out: &Path,
    samples: u64,
    seed: u64,
    measure: &str,
    dims: &[usize],
    constant_c: f64,
) -> Result<i32> {
    let table = match kind {
        "fig2" => plot_fig2(),
        "fig3" => plot_fig3(MeasureId::parse(measure)?, dims, samples, seed, constant_c)?,
        "fig9" => plot_fig9(),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown plot kind {other:?} (expected fig2, fig3 or fig9)"
            )))
        }
    };
    std::fs::write(out, &table)?;
    println!("wrote {kind} table to {}", out.display());
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_args_examples() {
        let config =
            parse_args(["entmono", "compute", "--measure", "eof", "--state", "s.json"]).unwrap();
        match config.command {
            Command::Compute { measure, state, cut, .. } => {
                assert_eq!(measure, "eof");
                assert_eq!(state, PathBuf::from("s.json"));
                assert_eq!(cut, 1);
            }
            other => panic!("unexpected command {other:?}"),
        }

        let config = parse_args([
            "entmono", "scan", "ckw", "--samples", "10000", "--seed", "7", "--out", "r.csv",
        ])
        .unwrap();
        match config.command {
            Command::Scan(ScanCommand::Ckw { samples, seed, out, .. }) => {
                assert_eq!(samples, 10000);
                assert_eq!(seed, 7);
                assert_eq!(out, Some(PathBuf::from("r.csv")));
            }
            other => panic!("unexpected command {other:?}"),
        }

        let config = parse_args([
            "entmono", "scan", "alpha", "--measure", "concurrence", "--dims", "2,2,2",
        ])
        .unwrap();
        match config.command {
            Command::Scan(ScanCommand::Alpha { measure, dims, .. }) => {
                assert_eq!(measure, "concurrence");
                assert_eq!(dims, vec![2, 2, 2]);
            }
            other => panic!("unexpected command {other:?}"),
        }
    }

    #[test]
    fn parse_args_rejects_garbage() {
        assert!(parse_args(["entmono", "frobnicate"]).is_err());
        assert!(parse_args(["entmono", "scan", "ckw", "--samples", "many"]).is_err());
        assert!(parse_args(["entmono", "random", "--dims", "2,0", "--out", "x.json"]).is_err());
    }

    #[test]
    fn fig2_has_exact_endpoints() {
        let table = plot_fig2();
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines[0], "c_sq,eof");
        assert_eq!(lines.len(), 1002);
        assert_eq!(lines[1], "0.000000000,0.000000000");
        assert_eq!(lines[1001], "1.000000000,1.000000000");
    }

    #[test]
    fn fig9_rows_sit_on_their_level_curves() {
        let table = plot_fig9();
        let mut saw_alpha2_diagonal = false;
        for line in table.lines().skip(1) {
            let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
            let (alpha, x, y) = (fields[0], fields[1], fields[2]);
            if y > 0.0 {
                let level = (x.powf(alpha) + y.powf(alpha)).powf(1.0 / alpha);
                assert!((level - 1.0).abs() < 1e-6, "off-level row {line}");
            }
            // the alpha = 2 curve crosses x = y at 1/sqrt(2)
            if alpha == 2.0 && (x - y).abs() < 0.005 {
                assert!((x - std::f64::consts::FRAC_1_SQRT_2).abs() < 0.005);
                saw_alpha2_diagonal = true;
            }
        }
        assert!(saw_alpha2_diagonal);
    }

    #[test]
    fn fig3_rows_respect_ckw() {
        let table = plot_fig3(MeasureId::ConcurrenceSq, &[2, 2, 2], 100, 5, 1.0).unwrap();
        let mut rows = 0;
        for line in table.lines().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            let e_ab: f64 = fields[1].parse().unwrap();
            let e_ac: f64 = fields[2].parse().unwrap();
            let e_abc: f64 = fields[3].parse().unwrap();
            assert!(e_ab + e_ac <= e_abc + 1e-9);
            rows += 1;
        }
        assert_eq!(rows, 100);
    }

    #[test]
    fn complex_flag_parsing() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("0.5,-0.25").unwrap(), Complex64::new(0.5, -0.25));
        assert!(parse_complex("x").is_err());
        assert!(parse_complex("1,2,3").is_err());
    }
}
