//! Command-line front end.
//!
//! ```text
//! pencil-qpe <command> [--problem FILE] [--n N] [--reduction sqrt|cholesky]
//!            [--t-bits T] [--shots S] [--seed SEED] [--evolution exact|trotter]
//!            [--trotter-steps K] [--state eigen:J|basis:I|uniform]
//!            [--k K] [--m M] [--sizes N1,N2,..] [--steps S1,S2,..] [--time T]
//!            [--format json|csv] [--out FILE]
//! ```
//!
//! Exit status is 0 on success, 2 when the configuration or problem file is
//! invalid and 1 when a computation fails.

pub mod output;
pub mod problem;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

pub use output::{Cell, Document, Json, SCHEMA_VERSION};
pub use problem::{load_problem_spec, parse_problem, Problem};

use crate::analysis::{
    oracle_eigensolve_via, scan_commutator_norm, scan_sparsity, scan_trotter_error,
};
use crate::discretize::Coefficient;
use crate::error::{Error, Result};
use crate::linalg::dense::C64;
use crate::linalg::{BandedHermitian, CountNonzeros, HermitianEigen, DEFAULT_NONZERO_TOL};
use crate::qsim::{
    embed_power_of_two, gershgorin_shift_scale, run_qpe, split_tridiagonal, Evolution, Statevector,
    DEFAULT_GUARD,
};
use crate::reduction::{reduce, Route};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Spectrum,
    Reduce,
    Qpe,
    ScanSparsity,
    ScanTrotter,
    ScanCommutator,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Reduce => "reduce",
            Command::Qpe => "qpe",
            Command::ScanSparsity => "scan-sparsity",
            Command::ScanTrotter => "scan-trotter",
            Command::ScanCommutator => "scan-commutator",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvolutionArg {
    Exact,
    Trotter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Sqrt,
    Cholesky,
}

#[derive(Debug, Parser)]
#[command(
    name = "pencil-qpe",
    version,
    about = "Generalized eigenproblems, their reductions and simulated phase estimation"
)]
pub struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Problem-spec file (JSON). Defaults to the Dirichlet Laplacian.
    #[arg(long)]
    problem: Option<PathBuf>,
    /// Number of interior grid points (overrides the problem file).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "cholesky")]
    reduction: RouteArg,
    #[arg(long)]
    t_bits: Option<usize>,
    #[arg(long)]
    shots: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "exact")]
    evolution: EvolutionArg,
    #[arg(long)]
    trotter_steps: Option<usize>,
    /// Initial system state for `qpe`.
    #[arg(long, default_value = "eigen:0")]
    state: String,
    /// Half-bandwidth for `scan-sparsity`.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Mass block size for `scan-sparsity`.
    #[arg(long, default_value_t = 4)]
    m: usize,
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    steps: Option<Vec<usize>>,
    #[arg(long, default_value_t = 1.0)]
    time: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Initial state of the system register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialState {
    /// The `j`-th lowest eigenvector of the reduced Hamiltonian.
    Eigen(usize),
    Basis(usize),
    /// Uniform over the physical (unpadded) entries.
    Uniform,
}

impl std::str::FromStr for InitialState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::ConfigInvalid(format!(
                "unknown state `{s}` (expected eigen:J, basis:I or uniform)"
            ))
        };
        if s == "uniform" {
            return Ok(InitialState::Uniform);
        }
        let (kind, idx) = s.split_once(':').ok_or_else(bad)?;
        let idx: usize = idx.parse().map_err(|_| bad())?;
        match kind {
            "eigen" => Ok(InitialState::Eigen(idx)),
            "basis" => Ok(InitialState::Basis(idx)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QpeOptions {
    pub t_bits: usize,
    pub shots: usize,
    pub seed: u64,
    pub evolution: Evolution,
    pub state: InitialState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanOptions {
    pub k: usize,
    pub m: usize,
    pub sizes: Vec<usize>,
    pub steps: Vec<usize>,
    pub time: f64,
    pub seed: u64,
    pub potential: Coefficient,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputOptions {
    pub format: Format,
    pub path: Option<PathBuf>,
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub problem: Problem,
    pub route: Route,
    pub qpe: Option<QpeOptions>,
    pub scan: ScanOptions,
    pub output: OutputOptions,
}

const DEFAULT_N: usize = 15;

impl RunConfig {
    pub fn from_args(args: Args) -> Result<Self> {
        let problem = match &args.problem {
            Some(path) => load_problem_spec(path)?,
            None => Problem::laplacian(args.n.unwrap_or(DEFAULT_N))?,
        };
        let problem = match args.n {
            Some(n) if n != problem.size() => problem.with_size(n)?,
            _ => problem,
        };
        let route = match args.reduction {
            RouteArg::Sqrt => Route::Sqrt,
            RouteArg::Cholesky => Route::Cholesky,
        };

        let qpe = if args.command == Command::Qpe {
            let t_bits = args
                .t_bits
                .ok_or_else(|| Error::ConfigInvalid("qpe requires --t-bits".into()))?;
            let evolution = match (args.evolution, args.trotter_steps) {
                (EvolutionArg::Exact, _) => Evolution::Exact,
                (EvolutionArg::Trotter, Some(steps)) if steps >= 1 => Evolution::Trotter { steps },
                (EvolutionArg::Trotter, _) => {
                    return Err(Error::ConfigInvalid(
                        "--evolution trotter requires --trotter-steps ≥ 1".into(),
                    ))
                }
            };
            if args.shots == Some(0) {
                return Err(Error::ConfigInvalid("--shots must be at least 1".into()));
            }
            Some(QpeOptions {
                t_bits,
                shots: args.shots.unwrap_or(0),
                seed: args.seed,
                evolution,
                state: args.state.parse()?,
            })
        } else {
            None
        };

        let potential = match (&problem, args.problem.is_some()) {
            (Problem::SturmLiouville { spec, .. }, true) => spec.q.clone(),
            _ => Coefficient::Poly(vec![0.0, 1.0]),
        };
        let sizes = args.sizes.unwrap_or_else(|| match args.command {
            Command::ScanSparsity => vec![64, 128, 256, 512],
            _ => vec![8, 16, 32, 64, 128],
        });
        let steps = args
            .steps
            .unwrap_or_else(|| (0..=10).map(|e| 1usize << e).collect());
        for (name, list) in [("--sizes", &sizes), ("--steps", &steps)] {
            if list.is_empty() || list.windows(2).any(|w| w[0] >= w[1]) || list[0] == 0 {
                return Err(Error::ConfigInvalid(format!(
                    "{name} must be positive and strictly ascending"
                )));
            }
        }
        if !args.time.is_finite() {
            return Err(Error::ConfigInvalid("--time must be finite".into()));
        }

        Ok(RunConfig {
            command: args.command,
            problem,
            route,
            qpe,
            scan: ScanOptions {
                k: args.k,
                m: args.m,
                sizes,
                steps,
                time: args.time,
                seed: args.seed,
                potential,
            },
            output: OutputOptions {
                format: args.format,
                path: args.out,
            },
        })
    }
}

/// Executes one command and returns its output document.
pub fn run(config: &RunConfig) -> Result<Document> {
    let cmd = config.command.name();
    match config.command {
        Command::Spectrum => {
            let (a, b) = config.problem.pencil()?;
            let pairs = oracle_eigensolve_via(&a, &b, config.route)?;
            let mut doc = Document::new(cmd, "eigenvalues", &["index", "eigenvalue"])
                .meta("n", a.size())
                .meta("reduction", config.route.to_string());
            for (j, p) in pairs.iter().enumerate() {
                doc.push_row(vec![j.into(), p.value.into()]);
            }
            Ok(doc)
        }
        Command::Reduce => {
            let (a, b) = config.problem.pencil()?;
            let h = reduce(&a, &b, config.route)?.hamiltonian;
            let mut doc = Document::new(cmd, "entries", &["row", "col", "re", "im"])
                .meta("n", h.size())
                .meta("reduction", config.route.to_string())
                .meta("half_bandwidth", h.half_bandwidth())
                .meta("nnz", h.count_nonzeros(DEFAULT_NONZERO_TOL));
            for i in 0..h.size() {
                for j in i..(i + h.half_bandwidth() + 1).min(h.size()) {
                    let z = h.get(i, j);
                    if z != C64::new(0.0, 0.0) {
                        doc.push_row(vec![i.into(), j.into(), z.re.into(), z.im.into()]);
                    }
                }
            }
            Ok(doc)
        }
        Command::Qpe => run_qpe_command(config),
        Command::ScanSparsity => {
            let s = &config.scan;
            let rows = scan_sparsity(s.k, s.m, &s.sizes, s.seed)?;
            let mut doc = Document::new(
                cmd,
                "rows",
                &[
                    "n",
                    "nnz_cholesky",
                    "nnz_sqrt",
                    "predicted_cholesky",
                    "predicted_sqrt",
                    "ratio",
                    "deviation_cholesky",
                    "deviation_sqrt",
                ],
            )
            .meta("k", s.k)
            .meta("m", s.m)
            .meta("seed", s.seed);
            for r in rows {
                doc.push_row(vec![
                    r.n.into(),
                    r.nnz_cholesky.into(),
                    r.nnz_sqrt.into(),
                    r.predicted_cholesky.into(),
                    r.predicted_sqrt.into(),
                    r.ratio().into(),
                    r.deviation(Route::Cholesky).into(),
                    r.deviation(Route::Sqrt).into(),
                ]);
            }
            Ok(doc)
        }
        Command::ScanTrotter => {
            let (a, b) = config.problem.pencil()?;
            let h = reduce(&a, &b, config.route)?.hamiltonian;
            let (h1, h2) = split_tridiagonal(&h)?;
            let s = &config.scan;
            let records = scan_trotter_error(&h1, &h2, s.time, &s.steps)?;
            let mut doc = Document::new(cmd, "rows", &["steps", "error"])
                .meta("n", h.size())
                .meta("time", s.time);
            for r in records {
                doc.push_row(vec![(r.parameter as usize).into(), r.observable.into()]);
            }
            Ok(doc)
        }
        Command::ScanCommutator => {
            let s = &config.scan;
            let records = scan_commutator_norm(&s.potential, &s.sizes)?;
            let mut doc = Document::new(cmd, "rows", &["n", "norm"]);
            for r in records {
                doc.push_row(vec![(r.parameter as usize).into(), r.observable.into()]);
            }
            Ok(doc)
        }
    }
}

fn initial_state(
    h: &BandedHermitian,
    padded_dim: usize,
    state: InitialState,
) -> Result<Statevector> {
    let n = h.size();
    let mut amps = vec![C64::new(0.0, 0.0); padded_dim];
    match state {
        InitialState::Eigen(j) => {
            let eig = HermitianEigen::new(&h.to_dense())?;
            if j >= n {
                return Err(Error::OutOfRange(format!(
                    "eigenvector {j} of a {n}-dimensional problem"
                )));
            }
            amps[..n].copy_from_slice(&eig.vector(j));
        }
        InitialState::Basis(i) => {
            if i >= n {
                return Err(Error::OutOfRange(format!(
                    "basis state {i} of a {n}-dimensional problem"
                )));
            }
            amps[i] = C64::new(1.0, 0.0);
        }
        InitialState::Uniform => amps[..n].fill(C64::new(1.0, 0.0)),
    }
    Statevector::normalized(amps)
}

fn run_qpe_command(config: &RunConfig) -> Result<Document> {
    let opts = config
        .qpe
        .as_ref()
        .ok_or_else(|| Error::ConfigInvalid("qpe options missing".into()))?;
    let (a, b) = config.problem.pencil()?;
    let h = reduce(&a, &b, config.route)?.hamiltonian;
    let ss = gershgorin_shift_scale(&h, DEFAULT_GUARD)?;
    let hp = embed_power_of_two(&h, &ss)?;
    let psi0 = initial_state(&h, hp.size(), opts.state)?;
    let mut result = run_qpe(&hp, &psi0, opts.t_bits, &ss, opts.evolution)?;
    if opts.shots > 0 {
        result = result.with_samples(opts.shots, opts.seed);
    }
    let dominant = result.dominant_outcome();
    let mut counts = vec![0usize; result.distribution.len()];
    if let Some(samples) = &result.samples {
        for &y in &samples.outcomes {
            counts[y] += 1;
        }
    }

    let (evolution, trotter_steps) = match opts.evolution {
        Evolution::Exact => ("exact", None),
        Evolution::Trotter { steps } => ("trotter", Some(steps)),
    };
    let mut doc = Document::new(
        config.command.name(),
        "distribution",
        &[
            "outcome",
            "phase",
            "eigenvalue_estimate",
            "probability",
            "count",
        ],
    )
    .meta("n", h.size())
    .meta("system_qubits", psi0.n_qubits())
    .meta("t_bits", opts.t_bits)
    .meta("reduction", config.route.to_string())
    .meta("evolution", evolution)
    .meta(
        "trotter_steps",
        trotter_steps.map_or(Json::Null, Json::from),
    )
    .meta("shift", ss.shift)
    .meta("scale", ss.scale)
    .meta("guard", ss.guard)
    .meta("dominant_outcome", dominant)
    .meta("dominant_estimate", result.estimate(dominant)?)
    .meta("seed", opts.seed)
    .meta("shots", opts.shots)
    .meta(
        "samples",
        result
            .samples
            .as_ref()
            .map_or(Json::Null, |s| Json::from(s.outcomes.clone())),
    );
    let m = result.distribution.len() as f64;
    for (y, &p) in result.distribution.iter().enumerate() {
        doc.push_row(vec![
            y.into(),
            (y as f64 / m).into(),
            result.estimate(y)?.into(),
            p.into(),
            counts[y].into(),
        ]);
    }
    Ok(doc)
}

/// Process exit status for an error: configuration problems give 2,
/// computation failures 1.
pub fn exit_code(err: &Error, during_setup: bool) -> i32 {
    match err {
        Error::ConfigInvalid(_) | Error::ParseError(_) => 2,
        _ if during_setup => 2,
        _ => 1,
    }
}

/// Parses `args`, runs the command and writes the document to `--out` or
/// `stdout`. Diagnostics go to `stderr`. Returns the process exit status.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let config = match RunConfig::from_args(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(
                stderr,
                "pencil-qpe: invalid configuration: {}: {e}",
                e.name()
            );
            return exit_code(&e, true);
        }
    };
    let written = run(&config).and_then(|doc| {
        let text = match config.output.format {
            Format::Json => doc.to_json()?,
            Format::Csv => doc.to_csv()?,
        };
        match &config.output.path {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
            None => stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::Io(e.to_string())),
        }
    });
    match written {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "pencil-qpe: computation failed: {}: {e}", e.name());
            exit_code(&e, false)
        }
    }
}
