//! Command-line front end for the `qssgeo` binary.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 numerical error, 4 file or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::dynamics::{
    ahle_closed_form, ahle_integrate, diagonal_closed_form, eahle_integrate, time_grid,
    xc_initial_tangent, CouplingSpectrum, SimplexPoint, SphereVector, Trajectory, TrajectoryMeta,
};
use crate::error::QssError;
use crate::geometry::{e_geodesic, GeodesicSpec};
use crate::io::{self, fmt17, MatrixJson, TrajectoryState};
use crate::qss::{make_density, DensityMatrix, TangentVector};
use crate::random::{random_density, random_sld_tangent, rng_for};
use crate::verify::{
    conjecture_probe, run_suite_with, ConjectureProbeResult, SuiteConfig, SuiteSummary,
    MAX_PROBE_DIM,
};

pub const SEED_ENV: &str = "QSSGEO_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),
    #[error("cannot parse {}: {reason}", .path.display())]
    Parse { path: PathBuf, reason: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("numerical error: {0}")]
    Numerical(#[from] QssError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::FileNotFound(_) | CliError::Parse { .. } | CliError::Io(_) => EXIT_IO,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Geodesic,
    Eahle,
    Ahle,
    ClosedForm,
    Verify,
    Probe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Fully validated settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Explicit dimension; otherwise inferred from inputs.
    pub n: Option<usize>,
    pub seed: u64,
    pub dt: f64,
    pub t_end: f64,
    pub tol: f64,
    pub input_path: Option<PathBuf>,
    pub tangent_path: Option<PathBuf>,
    /// `None` writes to standard output.
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub coupling: Option<Vec<f64>>,
    pub w0: Option<Vec<f64>>,
    pub theta0: Option<Vec<f64>>,
    pub t: Option<f64>,
    pub cases: usize,
    pub restarts: usize,
    pub allow_negative_time: bool,
}

#[derive(Parser, Debug)]
#[command(
    name = "qssgeo",
    version,
    about = "e-geodesics and Hebbian flows on density matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Sample an e-geodesic on a time grid
    Geodesic {
        #[command(flatten)]
        common: Common,
        /// Start state (matrix JSON); random when omitted
        #[arg(long)]
        rho0: Option<PathBuf>,
        /// Initial tangent (matrix JSON); defaults to X^(C) when --c is given, random otherwise
        #[arg(long)]
        x0: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long)]
        allow_negative_time: bool,
    },
    /// Integrate the extended Hebbian flow on density matrices
    Eahle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rho0: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
    },
    /// Integrate Oja's flow on the sphere
    Ahle {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        w0: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
    },
    /// Evaluate the closed-form sphere or simplex solution at one time
    ClosedForm {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        w0: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta0: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<f64>,
    },
    /// Run the randomized verification suite
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 25)]
        cases: usize,
    },
    /// Search for a unitary/time-affine match between a geodesic and the flow
    Probe {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rho0: Option<PathBuf>,
        #[arg(long)]
        x0: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
    },
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-3, allow_hyphen_values = true)]
    dt: f64,
    #[arg(long = "t-end", default_value_t = 1.0, allow_hyphen_values = true)]
    t_end: f64,
    #[arg(long, default_value_t = 1e-6, allow_hyphen_values = true)]
    tol: f64,
    #[arg(long = "out")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

fn parse_list(flag: &str, text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Usage(format!("{flag}: cannot parse '{s}' as a number")))
        })
        .collect()
}

fn opt_list(flag: &str, text: Option<String>) -> Result<Option<Vec<f64>>, CliError> {
    text.map(|t| parse_list(flag, &t)).transpose()
}

/// Parses and validates `argv` (including the program name). The seed is
/// taken from `env_seed` when given.
pub fn parse_args_with_env<I, T>(argv: I, env_seed: Option<String>) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))?;
    let blank = |command, common: Common| RunConfig {
        command,
        n: common.n,
        seed: common.seed,
        dt: common.dt,
        t_end: common.t_end,
        tol: common.tol,
        input_path: None,
        tangent_path: None,
        output_path: common.out,
        format: common.format,
        coupling: None,
        w0: None,
        theta0: None,
        t: None,
        cases: 0,
        restarts: 0,
        allow_negative_time: false,
    };
    let mut cfg = match cli.command {
        Sub::Geodesic {
            common,
            rho0,
            x0,
            c,
            allow_negative_time,
        } => RunConfig {
            input_path: rho0,
            tangent_path: x0,
            coupling: opt_list("--c", c)?,
            allow_negative_time,
            ..blank(Command::Geodesic, common)
        },
        Sub::Eahle { common, rho0, c } => RunConfig {
            input_path: rho0,
            coupling: opt_list("--c", c)?,
            ..blank(Command::Eahle, common)
        },
        Sub::Ahle { common, w0, c } => RunConfig {
            w0: opt_list("--w0", w0)?,
            coupling: opt_list("--c", c)?,
            ..blank(Command::Ahle, common)
        },
        Sub::ClosedForm {
            common,
            w0,
            theta0,
            c,
            t,
        } => RunConfig {
            w0: opt_list("--w0", w0)?,
            theta0: opt_list("--theta0", theta0)?,
            coupling: opt_list("--c", c)?,
            t,
            ..blank(Command::ClosedForm, common)
        },
        Sub::Verify { common, cases } => RunConfig {
            cases,
            ..blank(Command::Verify, common)
        },
        Sub::Probe {
            common,
            rho0,
            x0,
            restarts,
        } => RunConfig {
            input_path: rho0,
            tangent_path: x0,
            restarts,
            ..blank(Command::Probe, common)
        },
    };
    if let Some(s) = env_seed {
        cfg.seed = s.trim().parse().map_err(|_| {
            CliError::Usage(format!("{SEED_ENV}: '{s}' is not a non-negative integer"))
        })?;
    }
    validate(&cfg)?;
    Ok(cfg)
}

/// Parses `argv`, honouring the `QSSGEO_SEED` environment variable.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    parse_args_with_env(argv, std::env::var(SEED_ENV).ok())
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn validate(cfg: &RunConfig) -> Result<(), CliError> {
    for (flag, v) in [("--dt", cfg.dt), ("--t-end", cfg.t_end), ("--tol", cfg.tol)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(usage(format!("{flag} must be positive, got {v}")));
        }
    }
    if cfg.dt > cfg.t_end {
        return Err(usage(format!(
            "--dt ({}) must not exceed --t-end ({})",
            cfg.dt, cfg.t_end
        )));
    }
    if let Some(n) = cfg.n {
        if n < 2 {
            return Err(usage(format!("--n must be at least 2, got {n}")));
        }
    }
    let dim_of = |flag: &str, v: &Option<Vec<f64>>| -> Result<(), CliError> {
        match (v, cfg.n) {
            (Some(v), Some(n)) if v.len() != n => Err(usage(format!(
                "{flag} has {} entries but --n is {n}",
                v.len()
            ))),
            (Some(v), _) if v.len() < 2 => Err(usage(format!("{flag} needs at least 2 entries"))),
            _ => Ok(()),
        }
    };
    dim_of("--c", &cfg.coupling)?;
    dim_of("--w0", &cfg.w0)?;
    dim_of("--theta0", &cfg.theta0)?;
    match cfg.command {
        Command::Eahle if cfg.coupling.is_none() => Err(usage("eahle requires --c")),
        Command::Ahle if cfg.coupling.is_none() || cfg.w0.is_none() => {
            Err(usage("ahle requires --w0 and --c"))
        }
        Command::ClosedForm => {
            if cfg.coupling.is_none() || cfg.t.is_none() {
                return Err(usage("closed-form requires --c and --t"));
            }
            if cfg.w0.is_some() == cfg.theta0.is_some() {
                return Err(usage(
                    "closed-form requires exactly one of --w0 and --theta0",
                ));
            }
            Ok(())
        }
        Command::Verify if cfg.cases == 0 => Err(usage("--cases must be positive")),
        Command::Probe => match cfg.n {
            Some(n) if n > MAX_PROBE_DIM => Err(usage(format!(
                "--n must be at most {} for probe",
                MAX_PROBE_DIM
            ))),
            _ if cfg.restarts == 0 => Err(usage("--restarts must be positive")),
            _ => Ok(()),
        },
        _ => Ok(()),
    }
}

fn read_matrix(path: &Path) -> Result<crate::linalg::CMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => CliError::FileNotFound(path.to_path_buf()),
        _ => CliError::Io(e),
    })?;
    io::parse_matrix(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })
}

fn coupling_of(cfg: &RunConfig) -> Result<Option<CouplingSpectrum>, CliError> {
    Ok(cfg
        .coupling
        .clone()
        .map(CouplingSpectrum::new)
        .transpose()?)
}

fn check_dim(flag: &str, expected: usize, found: usize) -> Result<(), CliError> {
    if expected != found {
        return Err(usage(format!(
            "{flag} has dimension {found}, expected {expected}"
        )));
    }
    Ok(())
}

/// Start state from `--rho0`, or a seeded random state of dimension `n`.
fn start_state(cfg: &RunConfig, fallback_n: usize) -> Result<DensityMatrix, CliError> {
    let rho = match &cfg.input_path {
        Some(p) => make_density(read_matrix(p)?)?,
        None => random_density(cfg.n.unwrap_or(fallback_n), cfg.seed)?,
    };
    if let Some(n) = cfg.n {
        check_dim("--rho0", n, rho.dim())?;
    }
    Ok(rho)
}

fn sphere_input(flag: &str, v: &[f64]) -> Result<SphereVector, CliError> {
    let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (r - 1.0).abs() > 1e-6 {
        return Err(usage(format!("{flag} must be a unit vector (norm {r})")));
    }
    Ok(SphereVector::normalized(v.to_vec())?)
}

fn emit(cfg: &RunConfig, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cfg.output_path {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_trajectory<S: TrajectoryState>(
    cfg: &RunConfig,
    traj: &Trajectory<S>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let text = match cfg.format {
        OutputFormat::Csv => io::trajectory_csv(traj),
        OutputFormat::Json => io::trajectory_json(traj),
    };
    emit(cfg, &text, stdout)
}

fn run_geodesic(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let coupling = coupling_of(cfg)?;
    let rho = start_state(cfg, coupling.as_ref().map_or(2, |c| c.dim()))?;
    let tangent = match (&cfg.tangent_path, &coupling) {
        (Some(p), _) => TangentVector::new(&rho, read_matrix(p)?)?,
        (None, Some(c)) => {
            check_dim("--c", rho.dim(), c.dim())?;
            xc_initial_tangent(&rho, c)?
        }
        (None, None) => random_sld_tangent(&rho, 1.0, &mut rng_for(cfg.seed, rho.dim(), 1)),
    };
    let spec = GeodesicSpec::new(&rho, &tangent)?.with_negative_time(cfg.allow_negative_time);
    let times = time_grid(cfg.t_end, cfg.dt)?;
    let states = times
        .iter()
        .map(|&t| e_geodesic(&spec, t))
        .collect::<Result<Vec<_>, _>>()?;
    let meta = TrajectoryMeta {
        integrator: "closed-form".into(),
        dt: cfg.dt,
        coupling: cfg.coupling.clone().unwrap_or_default(),
        seed: Some(cfg.seed),
    };
    emit_trajectory(cfg, &Trajectory::new(times, states, meta), stdout)?;
    Ok(EXIT_OK)
}

fn run_eahle(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let coupling = coupling_of(cfg)?.expect("validated");
    let rho = start_state(cfg, coupling.dim())?;
    check_dim("--c", rho.dim(), coupling.dim())?;
    let traj = eahle_integrate(&rho, &coupling, cfg.t_end, cfg.dt)?.with_seed(cfg.seed);
    emit_trajectory(cfg, &traj, stdout)?;
    Ok(EXIT_OK)
}

fn run_ahle(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let coupling = coupling_of(cfg)?.expect("validated");
    let w0 = sphere_input("--w0", cfg.w0.as_deref().expect("validated"))?;
    check_dim("--c", w0.dim(), coupling.dim())?;
    let traj = ahle_integrate(&w0, &coupling, cfg.t_end, cfg.dt)?.with_seed(cfg.seed);
    emit_trajectory(cfg, &traj, stdout)?;
    Ok(EXIT_OK)
}

fn run_closed_form(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let coupling = coupling_of(cfg)?.expect("validated");
    let t = cfg.t.expect("validated");
    let values = if let Some(w0) = &cfg.w0 {
        let w0 = sphere_input("--w0", w0)?;
        check_dim("--c", w0.dim(), coupling.dim())?;
        ahle_closed_form(&w0, &coupling, t)?.values().to_vec()
    } else {
        let theta0 = SimplexPoint::new(cfg.theta0.clone().expect("validated"))?;
        check_dim("--c", theta0.dim(), coupling.dim())?;
        diagonal_closed_form(&theta0, &coupling, t)?
            .values()
            .to_vec()
    };
    let line = values
        .iter()
        .map(|v| fmt17(*v))
        .collect::<Vec<_>>()
        .join(",");
    let text = match cfg.format {
        OutputFormat::Csv => format!("{line}\n"),
        OutputFormat::Json => format!("{}\n", json!({ "t": t, "values": values })),
    };
    if cfg.output_path.is_some() {
        emit(cfg, &text, stdout)?;
    }
    stdout.write_all(text.as_bytes())?;
    Ok(EXIT_OK)
}

fn run_verify(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let n_values = match cfg.n {
        Some(n) => vec![n],
        None => vec![2, 3, 4, 6],
    };
    let suite = SuiteConfig {
        t_end: cfg.t_end,
        dt: cfg.dt,
        tol: cfg.tol,
        ..Default::default()
    };
    let reports = run_suite_with(&n_values, cfg.cases, cfg.seed, &suite);
    let text = serde_json::to_string_pretty(&reports).expect("plain data serializes") + "\n";
    emit(cfg, &text, stdout)?;
    let summary = SuiteSummary::of(&reports);
    writeln!(stdout, "{summary}")?;
    Ok(if summary.all_passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn probe_json(r: &ConjectureProbeResult, budget_exhausted: bool) -> serde_json::Value {
    json!({
        "n": r.target_spec.start().dim(),
        "residual": r.residual,
        "restart_residuals": r.restart_residuals,
        "evaluations": r.evaluations,
        "budget_exhausted": budget_exhausted,
        "best_coupling": r.best_coupling.values(),
        "best_unitary": MatrixJson::from_matrix(&r.best_unitary),
        "best_time_affine": { "a": r.best_time_affine.0, "b": r.best_time_affine.1 },
        "target": {
            "rho0": MatrixJson::from_matrix(r.target_spec.start().matrix()),
            "x0": MatrixJson::from_matrix(r.target_spec.initial_tangent().matrix()),
        },
    })
}

fn run_probe(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let rho = start_state(cfg, 2)?;
    if rho.dim() > MAX_PROBE_DIM {
        return Err(usage(format!("probe supports n <= {}", MAX_PROBE_DIM)));
    }
    let tangent = match &cfg.tangent_path {
        Some(p) => TangentVector::new(&rho, read_matrix(p)?)?,
        None => random_sld_tangent(&rho, 1.0, &mut rng_for(cfg.seed, rho.dim(), 1)),
    };
    let spec = GeodesicSpec::new(&rho, &tangent)?;
    let (result, exhausted) = match conjecture_probe(&spec, cfg.restarts, cfg.seed) {
        Ok(r) => (r, false),
        Err(QssError::SearchBudgetExhausted { best, .. }) => (*best, true),
        Err(e) => return Err(e.into()),
    };
    let text =
        serde_json::to_string_pretty(&probe_json(&result, exhausted)).expect("plain data") + "\n";
    emit(cfg, &text, stdout)?;
    if cfg.output_path.is_some() {
        writeln!(stdout, "probe residual = {:e}", result.residual)?;
    }
    Ok(EXIT_OK)
}

/// Executes a validated configuration, writing data to the configured sink
/// and diagnostics to `stderr`. Returns the process exit code.
pub fn run_with_io(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let outcome = match cfg.command {
        Command::Geodesic => run_geodesic(cfg, stdout),
        Command::Eahle => run_eahle(cfg, stdout),
        Command::Ahle => run_ahle(cfg, stdout),
        Command::ClosedForm => run_closed_form(cfg, stdout),
        Command::Verify => run_verify(cfg, stdout),
        Command::Probe => run_probe(cfg, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cfg: &RunConfig) -> i32 {
    run_with_io(
        cfg,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(cfg) => run(&cfg),
        Err(CliError::Usage(msg)) => {
            eprintln!("{msg}");
            EXIT_USAGE
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &str) -> Result<RunConfig, CliError> {
        parse_args_with_env(
            std::iter::once("qssgeo").chain(args.split_whitespace()),
            None,
        )
    }

    #[test]
    fn verify_defaults() {
        let cfg = parse("verify --n 3 --cases 10 --seed 42").unwrap();
        assert_eq!(cfg.command, Command::Verify);
        assert_eq!(cfg.n, Some(3));
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.cases, 10);
        assert_eq!((cfg.dt, cfg.t_end, cfg.tol), (1e-3, 1.0, 1e-6));
        assert_eq!(cfg.format, OutputFormat::Csv);
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn eahle_round_trip() {
        let cfg = parse("eahle --rho0 rho.json --c 1,0 --t-end 0.693147 --out traj.csv").unwrap();
        assert_eq!(cfg.command, Command::Eahle);
        assert_eq!(cfg.input_path.as_deref(), Some(Path::new("rho.json")));
        assert_eq!(cfg.coupling, Some(vec![1.0, 0.0]));
        assert_eq!(cfg.t_end, 0.693147);
        assert_eq!(cfg.output_path.as_deref(), Some(Path::new("traj.csv")));
        assert_eq!(cfg.seed, 0);
    }

    #[test]
    fn negative_dt_names_flag() {
        match parse("eahle --c 1,0 --dt -1") {
            Err(CliError::Usage(msg)) => assert!(msg.contains("--dt"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_list_entries_parse() {
        let cfg = parse("eahle --c -1,0.5").unwrap();
        assert_eq!(cfg.coupling, Some(vec![-1.0, 0.5]));
    }

    #[test]
    fn env_seed_overrides_flag() {
        let cfg =
            parse_args_with_env(["qssgeo", "verify", "--seed", "1"], Some("99".into())).unwrap();
        assert_eq!(cfg.seed, 99);
        assert!(matches!(
            parse_args_with_env(["qssgeo", "verify"], Some("x".into())),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn command_specific_requirements() {
        assert!(matches!(parse("eahle"), Err(CliError::Usage(_))));
        assert!(matches!(parse("ahle --c 1,0"), Err(CliError::Usage(_))));
        assert!(matches!(
            parse("closed-form --c 1,0 --w0 1,0"),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(parse("probe --n 5"), Err(CliError::Usage(_))));
        assert!(matches!(parse("verify --n 1"), Err(CliError::Usage(_))));
        assert!(matches!(parse("eahle --c 1,x"), Err(CliError::Usage(_))));
        assert!(matches!(
            parse("eahle --c 1,0 --n 3"),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(parse("bogus"), Err(CliError::Usage(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), 2);
        assert_eq!(CliError::Numerical(QssError::BaseMismatch).exit_code(), 3);
        assert_eq!(CliError::FileNotFound(PathBuf::new()).exit_code(), 4);
    }
}
