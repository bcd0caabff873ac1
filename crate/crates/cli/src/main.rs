//! `stochval`: values of finite zero-sum stochastic games from the command line.
//!
//! Every command prints one JSON report on stdout (see [`report`]) and
//! diagnostics on stderr. Exit status: 0 on success, 2 for invalid input,
//! 3 when a computation breaks one of its certified bounds.

mod input;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use stochval::discounted::{approx_value, exact_value, BoundSet};
use stochval::limit::{lambda_threshold, limit_approx_direct, limit_approx_fast, limit_exact, ThresholdParams};
use stochval::matgame::lp_value;
use stochval::oracle::{brute_minimax_solution, value_iteration, BRUTE_MAX_DIM};
use stochval::rational::format_rational;
use stochval::{corpus, normalize, DegreeBound, Execution, MatrixGame, NormalizedGame, Rational, SolveOptions, ThresholdMode};

use input::{load_game, matrix_arg, Matrix, rational_arg, read_matrix, state_index, tolerance_arg, Failure};
use report::Report;

#[derive(Parser)]
#[command(name = "stochval", version, about = "Exact values of finite zero-sum stochastic games")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Leave the timing section out of the report.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Run on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Value of the discounted game at one state.
    SolveDiscounted(DiscountedArgs),
    /// Limit of the discounted values as the discount factor goes to zero.
    SolveLimit(LimitArgs),
    /// The small discount factor used by the limit solvers.
    LambdaThreshold(ThresholdArgs),
    /// Solve a single matrix game.
    Matgame(MatgameArgs),
    /// Reference computations used for cross-checking.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Bundled instance files.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Args)]
struct GameArg {
    /// Game file, or the name of a bundled game (`corpus:NAME`).
    #[arg(long)]
    game: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Degree {
    /// min(|I|, |J|)
    Tight,
    /// |I|
    RowProfiles,
}

#[derive(Clone, Copy, ValueEnum)]
enum Threshold {
    Simple,
    Tight,
}

impl From<Threshold> for ThresholdMode {
    fn from(t: Threshold) -> Self {
        match t {
            Threshold::Simple => ThresholdMode::Simple,
            Threshold::Tight => ThresholdMode::Tight,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Bisection at the threshold for r+1 bits, interval of width 2^(1-r).
    Fast,
    /// Bisection at the threshold for r bits, interval of width 2^-r.
    Direct,
}

#[derive(Args)]
struct DiscountedArgs {
    #[command(flatten)]
    game: GameArg,
    /// State, counted from 1.
    #[arg(long)]
    state: usize,
    /// Discount factor in (0, 1], e.g. 1/2.
    #[arg(long, value_parser = rational_arg)]
    lambda: Rational,
    /// Precision of the dyadic bracket.
    #[arg(long, required_unless_present = "exact")]
    bits: Option<u64>,
    /// Also recover the exact algebraic value.
    #[arg(long)]
    exact: bool,
    #[arg(long, value_enum, default_value = "tight")]
    degree: Degree,
}

#[derive(Args)]
struct LimitArgs {
    #[command(flatten)]
    game: GameArg,
    #[arg(long)]
    state: usize,
    #[arg(long, required_unless_present = "exact")]
    bits: Option<u64>,
    /// Recover the exact algebraic limit; this can take long on larger games.
    #[arg(long)]
    exact: bool,
    #[arg(long, value_enum, default_value = "tight")]
    threshold: Threshold,
    #[arg(long, value_enum, default_value = "fast")]
    method: Method,
    #[arg(long, value_enum, default_value = "tight")]
    degree: Degree,
}

#[derive(Args)]
struct ThresholdArgs {
    #[command(flatten)]
    game: GameArg,
    #[arg(long)]
    bits: u64,
    #[arg(long, value_enum, default_value = "tight")]
    threshold: Threshold,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MatgameArgs {
    /// Rows separated by `;`, entries by `,`: `1,0;0,1`.
    #[arg(long, value_parser = matrix_arg)]
    matrix: Option<Matrix>,
    /// JSON file holding an array of rows.
    #[arg(long)]
    file: Option<String>,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Iterate the Shapley operator to a certified tolerance.
    ValueIteration(IterationArgs),
}

#[derive(Args)]
struct IterationArgs {
    #[command(flatten)]
    game: GameArg,
    #[arg(long, value_parser = rational_arg)]
    lambda: Rational,
    /// Tolerance: `2^-t` or a rational.
    #[arg(long, value_parser = tolerance_arg)]
    eps: Rational,
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Names of the bundled games.
    List,
    /// Shape and normalization of a bundled game.
    Show { name: String },
    /// Print the instance file of a bundled game.
    Export { name: String },
}

fn options(global: &Global, degree: Degree, threshold: Threshold) -> SolveOptions {
    SolveOptions {
        exec: if global.sequential { Execution::Sequential } else { Execution::Parallel },
        degree: match degree {
            Degree::Tight => DegreeBound::Tight,
            Degree::RowProfiles => DegreeBound::RowProfiles,
        },
        threshold: threshold.into(),
        ..SolveOptions::default()
    }
}

/// Exact recovery runs on the normalized game as a fresh input, so the
/// algebraic number it returns is in normalized units.
fn renormalized(game: &NormalizedGame) -> NormalizedGame {
    normalize(game.game())
}

fn solve_discounted(args: &DiscountedArgs, global: &Global) -> Result<Report, Failure> {
    let loaded = load_game(&args.game.game)?;
    let ng = normalize(&loaded.spec);
    let k = state_index(args.state, &loaded.spec)?;
    let opts = options(global, args.degree, Threshold::Tight);
    let map = ng.affine().clone();
    let lifted = ng.admit_discount(&args.lambda);

    let mut input = report::game_summary(&loaded.label, &ng);
    input["state"] = json!(args.state);
    input["lambda"] = report::rat(&args.lambda);
    input["bits"] = json!(args.bits);
    input["exact"] = json!(args.exact);

    let mut result = json!({});
    let mut audit = json!({});
    if let Some(bits) = args.bits {
        let out = approx_value(&ng, &args.lambda, k, bits, &opts)?;
        result["approx"] = report::approx(&out, &map);
        audit["approx"] = report::approx_audit(&out);
    }
    if args.exact {
        log::info!("exact recovery at state {}", args.state);
        let out = exact_value(&renormalized(&ng), &args.lambda, k, &opts)?;
        result["exact"] = report::algebraic(&out.number, &map);
        if let Some(a) = &out.approx {
            audit["exact"] = report::approx_audit(a);
        }
    }
    let bounds = BoundSet::for_game(&lifted, opts.degree);
    let bounds = json!({
        "grid_denominator": lifted.denominator().to_string(),
        "reconstruction": bounds,
    });
    Ok(Report::new("solve-discounted")
        .section("input", input)
        .section("result", result)
        .section("bounds", bounds)
        .section("audit", audit))
}

fn solve_limit(args: &LimitArgs, global: &Global) -> Result<Report, Failure> {
    let loaded = load_game(&args.game.game)?;
    let ng = normalize(&loaded.spec);
    let k = state_index(args.state, &loaded.spec)?;
    let opts = options(global, args.degree, args.threshold);
    let map = ng.affine().clone();
    let params = ThresholdParams::for_game(&ng, opts.threshold);

    let mut input = report::game_summary(&loaded.label, &ng);
    input["state"] = json!(args.state);
    input["bits"] = json!(args.bits);
    input["exact"] = json!(args.exact);
    input["threshold"] = json!(threshold_name(opts.threshold));
    input["method"] = json!(match args.method {
        Method::Fast => "fast",
        Method::Direct => "direct",
    });

    let mut result = json!({});
    let mut audit = json!({});
    let mut bounds = json!({ "reconstruction": BoundSet::for_game(&ng, opts.degree) });
    if let Some(bits) = args.bits {
        let out = match args.method {
            Method::Fast => limit_approx_fast(&ng, k, bits, &opts)?,
            Method::Direct => limit_approx_direct(&ng, k, bits, &opts)?,
        };
        result["approx"] = json!({
            "u": out.approx.u.to_string(),
            "bits": out.approx.bits,
            "interval": report::interval(&out.lo, &out.hi, &map),
        });
        bounds["lambda_exponent"] = json!(out.lambda_exponent);
        audit["approx"] = report::approx_audit(&out.approx);
    }
    if args.exact {
        let b = BoundSet::for_game(&ng, opts.degree);
        log::info!(
            "exact limit: bisection to {} bits at discount 2^-{}",
            b.r + 2,
            params.exponent(b.r + 2)
        );
        let out = limit_exact(&renormalized(&ng), k, &opts)?;
        result["exact"] = report::algebraic(&out.number, &map);
        if let Some(l) = &out.limit {
            bounds["exact_lambda_exponent"] = json!(l.lambda_exponent);
            audit["exact"] = report::approx_audit(&l.approx);
        }
    }
    Ok(Report::new("solve-limit")
        .section("input", input)
        .section("result", result)
        .section("bounds", bounds)
        .section("audit", audit))
}

fn threshold_name(mode: ThresholdMode) -> &'static str {
    match mode {
        ThresholdMode::Simple => "simple",
        ThresholdMode::Tight => "tight",
    }
}

fn threshold_record(params: &ThresholdParams, bits: u64) -> serde_json::Value {
    let (e, _) = lambda_threshold(params, bits);
    json!({
        "n": params.n,
        "rows": params.rows,
        "cols": params.cols,
        "denominator": params.denominator.to_string(),
        "exponent": e,
        "lambda": format!("1/2^{e}"),
    })
}

fn threshold(args: &ThresholdArgs) -> Result<Report, Failure> {
    let loaded = load_game(&args.game.game)?;
    let ng = normalize(&loaded.spec);
    let params = ThresholdParams::for_game(&ng, args.threshold.into());
    let mut input = report::game_summary(&loaded.label, &ng);
    input["bits"] = json!(args.bits);
    input["threshold"] = json!(threshold_name(params.mode));

    let mut result = threshold_record(&params, args.bits);
    if !ng.affine().is_identity() {
        // the same formula with the denominator of the file as written
        let raw = ThresholdParams { denominator: loaded.spec.denominator_lcm(), ..params.clone() };
        result["raw"] = threshold_record(&raw, args.bits);
    }
    Ok(Report::new("lambda-threshold").section("input", input).section("result", result))
}

fn matgame(args: &MatgameArgs) -> Result<Report, Failure> {
    let entries = match (&args.matrix, &args.file) {
        (Some(Matrix(m)), _) => m.clone(),
        (None, Some(path)) => read_matrix(path)?,
        (None, None) => unreachable!("clap requires one source"),
    };
    let m = MatrixGame::new(entries)?;
    let sol = lp_value(&m)?;
    let mut result = json!({
        "value": report::rat(&sol.value),
        "row_strategy": report::rats(&sol.x),
        "col_strategy": report::rats(&sol.y),
        "certified": sol.certifies(&m),
    });
    if m.rows() <= BRUTE_MAX_DIM && m.cols() <= BRUTE_MAX_DIM {
        let brute = brute_minimax_solution(&m)?;
        if brute.value != sol.value {
            return Err(Failure::Internal(format!(
                "simplex value {} differs from enumeration {}",
                format_rational(&sol.value),
                format_rational(&brute.value)
            )));
        }
        result["enumeration_value"] = report::rat(&brute.value);
    }
    let input = json!({ "rows": m.rows(), "cols": m.cols() });
    Ok(Report::new("matgame").section("input", input).section("result", result))
}

fn oracle(cmd: &OracleCommand, global: &Global) -> Result<Report, Failure> {
    let OracleCommand::ValueIteration(args) = cmd;
    let loaded = load_game(&args.game.game)?;
    let ng = normalize(&loaded.spec);
    let exec = if global.sequential { Execution::Sequential } else { Execution::Parallel };
    let out = value_iteration(&loaded.spec, &args.lambda, &args.eps, exec)?;
    let mut input = report::game_summary(&loaded.label, &ng);
    input["lambda"] = report::rat(&args.lambda);
    input["eps"] = report::rat(&args.eps);
    let result = json!({
        "values": report::rats(&out.values),
        "error_bound": report::rat(&out.error_bound),
    });
    Ok(Report::new("oracle value-iteration")
        .section("input", input)
        .section("result", result)
        .section("audit", json!({ "iterations": out.iterations })))
}

enum Output {
    Report(Report),
    Text(String),
}

fn corpus_cmd(cmd: &CorpusCommand) -> Result<Output, Failure> {
    let missing = |name: &str| Failure::Input(format!("no bundled game {name:?}"));
    match cmd {
        CorpusCommand::List => {
            Ok(Output::Report(Report::new("corpus list").section("result", json!({ "games": corpus::list() }))))
        }
        CorpusCommand::Show { name } => {
            let spec = corpus::get(name).ok_or_else(|| missing(name))??;
            let summary = report::game_summary(&format!("corpus:{name}"), &normalize(&spec));
            Ok(Output::Report(Report::new("corpus show").section("result", summary)))
        }
        CorpusCommand::Export { name } => {
            corpus::source(name).map(|s| Output::Text(s.to_string())).ok_or_else(|| missing(name))
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let g = &cli.global;
    let report = match &cli.command {
        Command::SolveDiscounted(a) => solve_discounted(a, g)?,
        Command::SolveLimit(a) => solve_limit(a, g)?,
        Command::LambdaThreshold(a) => threshold(a)?,
        Command::Matgame(a) => matgame(a)?,
        Command::Oracle(c) => oracle(c, g)?,
        Command::Corpus(c) => return corpus_cmd(c),
    };
    Ok(Output::Report(report))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(Output::Report(r)) => {
            let elapsed = (!cli.global.deterministic).then(|| start.elapsed());
            println!("{}", r.render(elapsed));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("stochval: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
