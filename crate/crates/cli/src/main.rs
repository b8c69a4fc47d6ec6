use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fasthankel::bessel::{bessel_j, bessel_roots_j0};
use fasthankel::dht::{dht_direct, dht_self_inverse_residual, DhtPlan};
use fasthankel::fourier_bessel::{fourier_bessel_direct, FourierBesselPlan};
use fasthankel::schlomilch::{
    schlomilch_direct, schlomilch_fast, schlomilch_single_partition, select_params, PartitionScheme,
    SchlomilchParams,
};
use fasthankel::{l1_norm, max_abs_diff, Error, MIN_EPS};
use fasthankel_cli::io::{self, Format};
use fasthankel_cli::parse_sizes;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

#[derive(Parser)]
#[command(name = "fasthankel", version, about = "Fast Schlömilch, Fourier–Bessel and discrete Hankel transforms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform a coefficient vector read from a file.
    Transform(TransformArgs),
    /// Print the algorithmic parameters chosen for a problem.
    Params(ParamsArgs),
    /// Time fast and direct evaluation on Gaussian coefficients (CSV).
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Schlomilch,
    FourierBessel,
    Dht,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Direct,
    Single,
    Fast,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Binary,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Coefficients {
    /// Independent standard normal entries.
    Gaussian,
    /// `c_n = n^-3`.
    Cubic,
}

#[derive(Args)]
struct Problem {
    /// Bessel order (must be 0 for the DHT).
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    nu: i32,
    /// Working accuracy, in [2^-52, 1).
    #[arg(long, default_value_t = 1e-15)]
    eps: f64,
    /// Frequency shift of a Schlömilch expansion.
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(short, long)]
    input: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    problem: Problem,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    /// Format of both the input and the output file.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Threads for the independent terms of Fourier–Bessel and DHT evaluations.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct ParamsArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// Problem size.
    #[arg(short, long)]
    n: usize,
    #[command(flatten)]
    problem: Problem,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// Sizes, e.g. `128,256` or `2^7..2^14` (doubling).
    #[arg(long)]
    sizes: String,
    #[command(flatten)]
    problem: Problem,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest size for which the direct reference is computed.
    #[arg(long, default_value_t = 8192)]
    direct_cap: usize,
    /// Report the self-inverse residual of the DHT instead of timings
    /// against direct summation.
    #[arg(long)]
    self_inverse: bool,
    #[arg(long, value_enum, default_value_t = Coefficients::Gaussian)]
    coefficients: Coefficients,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

/// A failed command and its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn numeric(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::RootNotConverged { .. } => Failure::numeric(err.to_string()),
            _ => Failure::usage(err.to_string()),
        }
    }
}

/// Sizes below which `auto` uses direct summation.
fn crossover(kind: Kind) -> usize {
    match kind {
        Kind::Schlomilch => 100,
        Kind::FourierBessel => 700,
        Kind::Dht => 6000,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Transform(args) => transform(args),
        Command::Params(args) => params(args),
        Command::Bench(args) => bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn validate(kind: Kind, problem: &Problem) -> Result<(), Failure> {
    if !(problem.eps.is_finite() && (MIN_EPS..1.0).contains(&problem.eps)) {
        return Err(Failure::usage(format!("eps must lie in [2^-52, 1), got {}", problem.eps)));
    }
    match kind {
        Kind::Schlomilch if problem.nu < 0 => Err(Failure::usage("schlomilch needs nu >= 0")),
        Kind::Dht if problem.nu != 0 => Err(Failure::usage("the DHT is implemented for nu = 0 only")),
        Kind::FourierBessel | Kind::Dht if problem.gamma.is_some() => {
            Err(Failure::usage("--gamma applies to schlomilch only"))
        }
        _ => Ok(()),
    }
}

fn format_of(arg: FormatArg) -> Format {
    match arg {
        FormatArg::Text => Format::Text,
        FormatArg::Binary => Format::Binary,
    }
}

fn transform(args: TransformArgs) -> Result<(), Failure> {
    validate(args.kind, &args.problem)?;
    if args.threads == 0 {
        return Err(Failure::usage("--threads must be positive"));
    }
    let format = format_of(args.format);
    let c = io::read_vector(&args.input, format).map_err(|e| Failure::input(e.to_string()))?;
    let f = evaluate(args.kind, args.method, &args.problem, &c, args.threads)?;
    if let Some(i) = f.iter().position(|v| !v.is_finite()) {
        return Err(Failure::numeric(format!("non-finite output at index {}", i + 1)));
    }
    let bytes = io::encode(&f, format);
    let written = match &args.output {
        Some(path) => std::fs::write(path, bytes),
        None => std::io::stdout().lock().write_all(&bytes),
    };
    written.map_err(|e| Failure::input(format!("cannot write output: {e}")))
}

fn evaluate(kind: Kind, method: Method, problem: &Problem, c: &[f64], threads: usize) -> Result<Vec<f64>, Failure> {
    let n = c.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let method = match method {
        Method::Auto if n < crossover(kind) => Method::Direct,
        Method::Auto => Method::Fast,
        m => m,
    };
    let eps = problem.eps;
    let f = match (kind, method) {
        (Kind::Schlomilch, Method::Direct) => {
            schlomilch_direct(problem.nu as u32, problem.gamma.unwrap_or(0.0), c)?
        }
        (Kind::Schlomilch, Method::Single) => schlomilch_single_partition(&schlomilch_params(problem, n)?, c)?,
        (Kind::Schlomilch, _) => schlomilch_fast(&schlomilch_params(problem, n)?, c)?,
        (_, Method::Single) => return Err(Failure::usage("method single applies to schlomilch only")),
        (Kind::FourierBessel, Method::Direct) => fourier_bessel_direct(problem.nu, c)?,
        (Kind::FourierBessel, _) => FourierBesselPlan::new(problem.nu, n, eps)?
            .with_threads(threads)
            .apply(c)?,
        (Kind::Dht, Method::Direct) => dht_direct(c)?,
        (Kind::Dht, _) => DhtPlan::new(n, eps)?.with_threads(threads).apply(c)?,
    };
    Ok(f)
}

fn schlomilch_params(problem: &Problem, n: usize) -> Result<SchlomilchParams, Failure> {
    Ok(select_params(problem.nu as u32, n, problem.eps, problem.gamma.unwrap_or(0.0))?)
}

fn params(args: ParamsArgs) -> Result<(), Failure> {
    validate(args.kind, &args.problem)?;
    let n = args.n;
    if n == 0 {
        return Err(Failure::usage("n must be positive"));
    }
    let p = &args.problem;
    let mut lines: Vec<(String, String)> = Vec::new();
    let mut push = |key: &str, value: String| lines.push((key.to_string(), value));
    push("kind", kind_name(args.kind).to_string());
    push("N", n.to_string());
    push("nu", p.nu.to_string());
    push("eps", format!("{:e}", p.eps));
    let inner = match args.kind {
        Kind::Schlomilch => {
            push("gamma", p.gamma.unwrap_or(0.0).to_string());
            Some(schlomilch_params(p, n)?)
        }
        Kind::FourierBessel => {
            let plan = FourierBesselPlan::new(p.nu, n, p.eps)?;
            let q = plan.neumann();
            push("K", q.k.to_string());
            push("T", q.t.to_string());
            push("p_K", q.p_cut.to_string());
            push("q_T", q.q_cut.to_string());
            push("n_split", q.n_split.min(n).to_string());
            push("schlomilch_evaluations", q.schlomilch_terms().to_string());
            Some(*plan.schlomilch_params())
        }
        Kind::Dht => {
            let plan = DhtPlan::new(n, p.eps)?;
            let q = plan.neumann();
            push("K", q.k.to_string());
            push("T", q.t.to_string());
            push("p_K", q.p_cut.to_string());
            push("q_T", q.q_cut.to_string());
            push("row_split", plan.row_split().to_string());
            push("fourier_bessel_evaluations", q.schlomilch_terms().to_string());
            push("schlomilch_evaluations", (q.schlomilch_terms() * q.schlomilch_terms()).to_string());
            push("inner_N", (4 * n + 3).to_string());
            plan.schlomilch_params().copied()
        }
    };
    if let Some(s) = inner {
        let partition = PartitionScheme::new(&s);
        push("M", s.m.to_string());
        push("s", s.s.to_string());
        push("alpha", s.alpha.to_string());
        push("beta", s.beta.to_string());
        push("P", s.p.to_string());
        push("blocks", partition.blocks().len().to_string());
        push("direct_entries", partition.eval_count().to_string());
    }
    let mut out = std::io::stdout().lock();
    for (key, value) in lines {
        writeln!(out, "{key}={value}").map_err(|e| Failure::input(e.to_string()))?;
    }
    Ok(())
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Schlomilch => "schlomilch",
        Kind::FourierBessel => "fourier-bessel",
        Kind::Dht => "dht",
    }
}

fn coefficients(kind: Coefficients, n: usize, seed: u64) -> Vec<f64> {
    match kind {
        Coefficients::Gaussian => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
        }
        Coefficients::Cubic => (1..=n).map(|i| (i as f64).powi(-3)).collect(),
    }
}

/// Runs `f` once to warm up, then again under the clock.
fn timed<R>(mut f: impl FnMut() -> Result<R, Failure>) -> Result<(R, f64), Failure> {
    f()?;
    let start = Instant::now();
    let out = f()?;
    Ok((out, start.elapsed().as_secs_f64()))
}

fn bench(args: BenchArgs) -> Result<(), Failure> {
    validate(args.kind, &args.problem)?;
    let sizes = parse_sizes(&args.sizes).map_err(Failure::usage)?;
    if args.threads == 0 {
        return Err(Failure::usage("--threads must be positive"));
    }
    if args.self_inverse && args.kind != Kind::Dht {
        return Err(Failure::usage("--self-inverse applies to dht only"));
    }
    let mut writer = csv::Writer::from_writer(std::io::stdout());
    let io_err = |e: csv::Error| Failure::input(e.to_string());
    writer
        .write_record(["kind", "n", "method", "eps", "seconds", "max_abs_error", "l1_norm"])
        .map_err(io_err)?;
    let kind = kind_name(args.kind);
    let eps = format!("{:e}", args.problem.eps);
    for n in sizes {
        let c = coefficients(args.coefficients, n, args.seed);
        let norm = format!("{:e}", l1_norm(&c));
        let mut rows: Vec<(&str, f64, String)> = Vec::new();
        if args.self_inverse {
            let (r, secs) = timed(|| Ok(dht_self_inverse_residual(n, args.problem.eps, &c)?))?;
            rows.push(("self-inverse", secs, format!("{r:e}")));
            if n <= args.direct_cap {
                let (r, secs) = timed(|| self_inverse_direct(&c))?;
                rows.push(("self-inverse-direct", secs, format!("{r:e}")));
            }
        } else {
            let direct = if n <= args.direct_cap {
                let (f, secs) = timed(|| evaluate(args.kind, Method::Direct, &args.problem, &c, 1))?;
                rows.push(("direct", secs, String::new()));
                Some(f)
            } else {
                None
            };
            let mut methods = vec![("fast", Method::Fast)];
            if args.kind == Kind::Schlomilch {
                methods.insert(0, ("single", Method::Single));
            }
            for (name, method) in methods {
                let (f, secs) = timed(|| evaluate(args.kind, method, &args.problem, &c, args.threads))?;
                let err = direct.as_ref().map(|d| format!("{:e}", max_abs_diff(&f, d))).unwrap_or_default();
                rows.push((name, secs, err));
            }
        }
        for (method, secs, err) in rows {
            writer
                .write_record([kind, &n.to_string(), method, &eps, &format!("{secs:e}"), &err, &norm])
                .map_err(io_err)?;
        }
        writer.flush().map_err(|e| Failure::input(e.to_string()))?;
    }
    Ok(())
}

/// The self-inverse residual with both transforms summed directly.
fn self_inverse_direct(c: &[f64]) -> Result<f64, Failure> {
    let n = c.len();
    let roots = bessel_roots_j0(n + 1)?;
    let weights = roots.roots()[..n]
        .iter()
        .map(|&j| bessel_j(1, j).map(|v| 2.0 / (v * v)))
        .collect::<Result<Vec<_>, _>>()?;
    let weigh = |x: &[f64]| -> Vec<f64> { x.iter().zip(&weights).map(|(a, v)| a * v).collect() };
    let once = dht_direct(&weigh(c))?;
    let twice = dht_direct(&weigh(&once))?;
    let last = roots.root(n + 1);
    Ok(twice
        .iter()
        .zip(c)
        .map(|(t, x)| (t / (last * last) - x).abs())
        .fold(0.0, f64::max))
}
