use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cmvwalk::coin::QuantumCoin;
use cmvwalk::limits::{limit_dist_i, limit_dist_ii, tree_coin, tree_limit, TreeCase};
use cmvwalk::output::{distribution_csv, emit, fmt_num, limit_csv, limit_json, measure_json};
use cmvwalk::spectral::SpectralMeasure;
use cmvwalk::verify::{run_suite, seed_from_env, Suite};
use cmvwalk::walk::{evolve, sites_for_steps, WalkState};
use cmvwalk::{Complex64, Error, Result, WalkType};

#[derive(Parser)]
#[command(name = "cmvwalk", version, about = "Half-line quantum walks and their CMV spectral measures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a walk and print P(X_t = x) for every site with nonzero probability.
    Simulate(SimulateArgs),
    /// Print the spectral measure (density samples and point masses) as JSON.
    Spectrum(SpectrumArgs),
    /// Print the closed-form limit distribution.
    Limit(LimitArgs),
    /// Run cross-module check suites.
    Verify(VerifyArgs),
    /// Regular-tree walk: limit distribution, optionally next to a simulation.
    Tree(TreeArgs),
}

#[derive(Args)]
struct WalkArgs {
    /// 1 (self-loop origin) or 2 (reflecting origin).
    #[arg(long, default_value = "1", value_parser = parse_walk_type)]
    walk_type: WalkType,
    /// `hadamard`, `real:<alpha>` or `matrix:<re>,<im>;<re>,<im>;<re>,<im>;<re>,<im>`.
    #[arg(long, default_value = "hadamard")]
    coin: String,
    /// Reflection phase of the Type II origin.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    gamma: f64,
    /// Read angles in degrees.
    #[arg(long)]
    degrees: bool,
}

impl WalkArgs {
    fn angle(&self, v: f64) -> f64 {
        if self.degrees {
            v.to_radians()
        } else {
            v
        }
    }

    fn coin(&self) -> Result<QuantumCoin> {
        self.coin.parse()
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    walk: WalkArgs,
    /// Type I initial amplitudes `alpha,beta` on |0,S>, |0,L> (complex, e.g. `0.6,0.8i`).
    #[arg(long, default_value = "1,0")]
    init: String,
    /// Type II initial phase delta of e^{i delta}|0,L>.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    delta: f64,
    #[arg(long)]
    steps: usize,
    /// Use the tree walk of this degree (overrides --walk-type, --coin, --gamma).
    #[arg(long)]
    tree: Option<u32>,
    #[arg(long, default_value = "B", value_parser = parse_case)]
    case: TreeCase,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    walk: WalkArgs,
    /// Verblunsky parameter (a or b) given directly; overrides --coin.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Quadrature nodes per arc of the band.
    #[arg(long, default_value_t = 64)]
    samples: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LimitArgs {
    #[command(flatten)]
    walk: WalkArgs,
    /// Verblunsky parameter (a or b) given directly; overrides --coin (phi = 0 for Type I).
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, default_value = "1,0")]
    init: String,
    #[arg(long, default_value_t = 10)]
    xmax: usize,
    /// Tree degree; selects the tree walk.
    #[arg(long)]
    tree: Option<u32>,
    #[arg(long, default_value = "B", value_parser = parse_case)]
    case: TreeCase,
    /// Emit JSON instead of CSV.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// conjugation, eigen, moments, normalization, oracle or all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Override the suite tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct TreeArgs {
    #[arg(long)]
    kappa: u32,
    #[arg(long, default_value = "B", value_parser = parse_case)]
    case: TreeCase,
    #[arg(long, default_value_t = 10)]
    xmax: usize,
    /// Also simulate this many steps and add the simulated P(X_t = x) column.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_walk_type(s: &str) -> std::result::Result<WalkType, String> {
    match s.to_ascii_uppercase().as_str() {
        "1" | "I" => Ok(WalkType::I),
        "2" | "II" => Ok(WalkType::II),
        _ => Err(format!("walk type must be 1 or 2, got {s:?}")),
    }
}

fn parse_case(s: &str) -> std::result::Result<TreeCase, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_complex(s: &str) -> Result<Complex64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad complex number {s:?}")))
}

fn parse_init(s: &str) -> Result<(Complex64, Complex64)> {
    match s.split(',').collect::<Vec<_>>().as_slice() {
        [a, b] => Ok((parse_complex(a)?, parse_complex(b)?)),
        _ => Err(Error::Parse(format!("--init expects `alpha,beta`, got {s:?}"))),
    }
}

fn simulate(args: &SimulateArgs) -> Result<()> {
    let (walk_type, coin, gamma) = match args.tree {
        Some(kappa) => {
            let (coin, gamma) = tree_coin(kappa, args.case)?;
            (WalkType::II, coin, gamma)
        }
        None => (args.walk.walk_type, args.walk.coin()?, args.walk.angle(args.walk.gamma)),
    };
    let sites = sites_for_steps(args.steps);
    let start = match walk_type {
        WalkType::I => {
            let (alpha, beta) = parse_init(&args.init)?;
            WalkState::type_i(alpha, beta, sites)?
        }
        WalkType::II => WalkState::type_ii(args.walk.angle(args.delta), sites)?,
    };
    let state = evolve(&start, &coin, gamma, args.steps)?;
    emit(args.output.as_deref(), &distribution_csv(&state.distribution(), true))
}

fn verblunsky(walk: &WalkArgs, alpha: &Option<String>) -> Result<(Complex64, f64)> {
    match alpha {
        Some(s) => Ok((parse_complex(s)?, 0.0)),
        None => {
            let params = walk.coin()?.extract_params(walk.angle(walk.gamma))?;
            Ok(match walk.walk_type {
                WalkType::I => (params.a, params.phi),
                WalkType::II => (params.b, params.psi),
            })
        }
    }
}

fn spectrum(args: &SpectrumArgs) -> Result<()> {
    let (alpha, _) = verblunsky(&args.walk, &args.alpha)?;
    let measure = SpectralMeasure::compute(args.walk.walk_type, alpha, args.samples)?;
    emit(args.output.as_deref(), &measure_json(&measure))
}

fn limit(args: &LimitArgs) -> Result<()> {
    let dist = match (args.tree, args.walk.walk_type) {
        (Some(kappa), _) => tree_limit(kappa, args.case, args.xmax)?,
        (None, WalkType::I) => {
            let (a, phi) = verblunsky(&args.walk, &args.alpha)?;
            let (alpha0, beta0) = parse_init(&args.init)?;
            limit_dist_i(a, phi, alpha0, beta0, args.xmax)?
        }
        (None, WalkType::II) => limit_dist_ii(verblunsky(&args.walk, &args.alpha)?.0, args.xmax)?,
    };
    let text = if args.json { limit_json(&dist) } else { limit_csv(&dist) };
    emit(args.output.as_deref(), &text)
}

/// Returns whether every check passed.
fn verify(args: &VerifyArgs) -> Result<bool> {
    let suites = if args.suite == "all" { Suite::ALL.to_vec() } else { vec![args.suite.parse()?] };
    let seed = seed_from_env()?;
    let mut all_ok = true;
    println!("{:<14} {:<48} {:>12} {:>10}  result", "suite", "check", "error", "tol");
    for suite in suites {
        for check in run_suite(suite, args.tol, seed)? {
            all_ok &= check.passed();
            println!(
                "{:<14} {:<48} {:>12.3e} {:>10.1e}  {}",
                suite.name(),
                check.name,
                check.error,
                check.tol,
                if check.passed() { "PASS" } else { "FAIL" }
            );
        }
    }
    Ok(all_ok)
}

fn tree(args: &TreeArgs) -> Result<()> {
    let dist = tree_limit(args.kappa, args.case, args.xmax)?;
    let simulated = match args.steps {
        Some(steps) => {
            let (coin, gamma) = tree_coin(args.kappa, args.case)?;
            let state = evolve(&WalkState::type_ii(0.0, sites_for_steps(steps))?, &coin, gamma, steps)?;
            Some(state.distribution())
        }
        None => None,
    };
    let mut text = String::from(if simulated.is_some() { "x,probability,cesaro,simulated\n" } else { "x,probability,cesaro\n" });
    for (x, (p, c)) in dist.p.iter().zip(dist.cesaro()).enumerate() {
        text.push_str(&format!("{x},{},{}", fmt_num(*p), fmt_num(c)));
        if let Some(sim) = &simulated {
            text.push_str(&format!(",{}", fmt_num(sim.get(x).copied().unwrap_or(0.0))));
        }
        text.push('\n');
    }
    text.push_str(&format!("# escape_mass={}\n", fmt_num(dist.escape_mass)));
    emit(args.output.as_deref(), &text)
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::TruncationOverflow => 3,
        Error::NonUnitary { .. }
        | Error::DegenerateCoin
        | Error::InvalidVerblunsky { .. }
        | Error::InvalidInitialState(_)
        | Error::InvalidArgument(_)
        | Error::Parse(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Simulate(a) => simulate(a).map(|_| true),
        Command::Spectrum(a) => spectrum(a).map(|_| true),
        Command::Limit(a) => limit(a).map(|_| true),
        Command::Verify(a) => verify(a),
        Command::Tree(a) => tree(a).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
