//! `boole`: exact polynomial sequences, Stirling tables, identity
//! verification, and truncated-sum congruence checks.
//!
//! Exit codes: 0 for success (including the expected failures of the one
//! homogeneity-breaking identity form), 1 for an identity or computation
//! failure, 2 for usage errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use boole_core::boole::{
    boole_polys_euler, boole_polys_gf, changhee_poly, BooleKind, BooleParams, BooleSequence,
};
use boole_core::comb::{stirling_table, StirlingKind};
use boole_core::euler::euler_polys;
use boole_core::numeric::{format_rational, parse_rational, Poly, Rational};
use boole_core::padic::{witt_check, PadicContext};
use boole_core::verify::{verify_all, IdentityId, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "boole",
    version,
    about = "Exact Boole, Changhee and Euler polynomial sequences with identity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one polynomial of a sequence, or its value at a point
    Compute(ComputeArgs),
    /// Dump a Stirling triangle as CSV
    Table(TableArgs),
    /// Run the identity verification suite over a parameter grid
    Verify(VerifyArgs),
    /// Compare a truncated alternating sum against the exact value mod p^N
    Witt(WittArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args)]
struct ComputeArgs {
    /// Sequence family: euler | boole | boole2 | changhee
    sequence: String,
    /// Index of the polynomial
    #[arg(long)]
    n: usize,
    /// Order of the family (euler, boole, boole2)
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Parameter lambda as "a/b" or "a" (boole, boole2)
    #[arg(long)]
    lambda: Option<String>,
    /// Evaluate at this point instead of printing the polynomial
    #[arg(long)]
    x: Option<String>,
    /// Construction route: gf (generating function) or euler (Stirling-Euler
    /// expansion; needs lambda != 0)
    #[arg(long, value_enum, default_value_t = Route::Gf)]
    route: Route,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Gf,
    Euler,
}

#[derive(Args)]
struct TableArgs {
    /// Triangle: s1 (signed first kind) | s1u (unsigned) | s2 (second kind)
    #[arg(long)]
    kind: String,
    #[arg(long)]
    max_n: usize,
    /// Largest accepted --max-n
    #[arg(long, default_value_t = 64)]
    cap: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only these identities (repeatable); defaults to the whole suite
    #[arg(long)]
    id: Vec<String>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long)]
    k_max: Option<usize>,
    /// Replace the symbolic lambda grid (repeatable)
    #[arg(long)]
    lambda: Vec<String>,
    /// Replace the x evaluation grid (repeatable)
    #[arg(long)]
    x: Vec<String>,
    /// Replace the prime grid (repeatable)
    #[arg(long)]
    p: Vec<u64>,
    #[arg(long)]
    level_max: Option<u32>,
    /// Replace the lambda grid of the truncated-sum cases (repeatable)
    #[arg(long)]
    padic_lambda: Vec<String>,
    /// Replace the x grid of the truncated-sum cases (repeatable)
    #[arg(long)]
    padic_x: Vec<String>,
    #[arg(long)]
    padic_n_max: Option<usize>,
    #[arg(long)]
    padic_k_max: Option<usize>,
    #[arg(long)]
    eq2_count: Option<usize>,
    #[arg(long)]
    eq2_seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct WittArgs {
    #[arg(long)]
    p: u64,
    /// Truncation level: the sum runs over p^N terms per variable
    #[arg(long = "N")]
    level: u32,
    /// Working precision; residues are carried mod p^M (defaults to N)
    #[arg(long = "M")]
    precision: Option<u32>,
    /// Index of the polynomial
    #[arg(long)]
    n: usize,
    #[arg(long)]
    lambda: String,
    #[arg(long)]
    x: String,
    /// first | second
    #[arg(long, default_value = "first")]
    kind: String,
    /// Order of the family (number of summation variables)
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Require agreement only mod p^(N - slack)
    #[arg(long, default_value_t = 0)]
    slack: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

/// Failure modes that map onto the exit-code contract.
enum CliError {
    /// Exit 2: bad flags or values that fail validation before computing.
    Usage(String),
    /// Exit 1: a computation that started but could not finish, or a
    /// genuine identity failure.
    Failure(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn failure(msg: impl Into<String>) -> Self {
        CliError::Failure(msg.into())
    }
}

fn parse_rational_flag(name: &str, raw: &str) -> Result<Rational, CliError> {
    parse_rational(raw).map_err(|err| CliError::usage(format!("--{name}: {err}")))
}

fn poly_coeff_strings(poly: &Poly) -> Value {
    Value::Array(
        poly.coeff_strings()
            .into_iter()
            .map(Value::String)
            .collect(),
    )
}

fn sequence_json(polys: &[Poly]) -> Value {
    Value::Array(polys.iter().map(poly_coeff_strings).collect())
}

fn run_compute(args: &ComputeArgs) -> Result<(), CliError> {
    if args.k == 0 {
        return Err(CliError::usage("--k must be at least 1"));
    }
    if args.format == Format::Csv {
        return Err(CliError::usage("compute prints plain or json, not csv"));
    }
    let lambda = args
        .lambda
        .as_deref()
        .map(|raw| parse_rational_flag("lambda", raw))
        .transpose()?;
    let x = args
        .x
        .as_deref()
        .map(|raw| parse_rational_flag("x", raw))
        .transpose()?;

    let kind = match args.sequence.as_str() {
        "euler" | "changhee" => {
            if lambda.is_some() {
                return Err(CliError::usage(format!(
                    "{} takes no --lambda",
                    args.sequence
                )));
            }
            None
        }
        "boole" => Some(BooleKind::First),
        "boole2" => Some(BooleKind::Second),
        other => {
            return Err(CliError::usage(format!(
                "unknown sequence '{other}'; expected euler, boole, boole2 or changhee"
            )));
        }
    };

    let polys: Vec<Poly> = match args.sequence.as_str() {
        "euler" => {
            let seq = euler_polys(args.k, args.n);
            seq.polys()[..=args.n].to_vec()
        }
        "changhee" => {
            if args.k != 1 {
                return Err(CliError::usage("changhee is a fixed order-1 sequence"));
            }
            (0..=args.n).map(changhee_poly).collect()
        }
        _ => {
            let lambda = lambda
                .clone()
                .ok_or_else(|| CliError::usage("--lambda is required for boole and boole2"))?;
            let params = BooleParams::new(lambda, kind.expect("boole kinds carry a kind"), args.k);
            let seq: std::sync::Arc<BooleSequence> = match args.route {
                Route::Gf => boole_polys_gf(&params, args.n),
                Route::Euler => {
                    boole_polys_euler(&params, args.n).map_err(|e| CliError::failure(e.to_string()))?
                }
            };
            seq.polys()[..=args.n].to_vec()
        }
    };

    match (&x, args.format) {
        (Some(point), Format::Plain) => {
            println!("{}", format_rational(&polys[args.n].eval(point)));
        }
        (Some(point), Format::Json) => {
            let value = json!({
                "sequence": args.sequence,
                "n": args.n,
                "k": args.k,
                "x": format_rational(point),
                "value": format_rational(&polys[args.n].eval(point)),
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        }
        (None, Format::Plain) => {
            println!("{}", polys[args.n]);
        }
        (None, Format::Json) => {
            let value = match (kind, &lambda) {
                (Some(kind), Some(lambda)) => json!({
                    "kind": kind.as_str(),
                    "lambda": format_rational(lambda),
                    "order_k": args.k,
                    "polys": sequence_json(&polys),
                }),
                _ => sequence_json(&polys),
            };
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        }
        (_, Format::Csv) => unreachable!("rejected above"),
    }
    Ok(())
}

fn run_table(args: &TableArgs) -> Result<(), CliError> {
    let kind = match args.kind.as_str() {
        "s1" => StirlingKind::FirstSigned,
        "s1u" => StirlingKind::FirstUnsigned,
        "s2" => StirlingKind::Second,
        other => {
            return Err(CliError::usage(format!(
                "unknown table kind '{other}'; expected s1, s1u or s2"
            )));
        }
    };
    if args.max_n > args.cap {
        return Err(CliError::usage(format!(
            "--max-n {} exceeds the cap {}",
            args.max_n, args.cap
        )));
    }
    print!("{}", stirling_table(kind, args.max_n).to_csv());
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> Result<(), CliError> {
    if args.format == Format::Csv {
        return Err(CliError::usage("verify prints plain or json, not csv"));
    }
    let mut cfg = VerifyConfig::default();
    if !args.id.is_empty() {
        let mut ids = Vec::new();
        for raw in &args.id {
            let id = IdentityId::parse(raw)
                .ok_or_else(|| CliError::usage(format!("unknown identity '{raw}'")))?;
            ids.push(id);
        }
        cfg.ids = Some(ids);
    }
    if let Some(v) = args.n_max {
        cfg.n_max = v;
    }
    if let Some(v) = args.m_max {
        cfg.m_max = v;
    }
    if let Some(v) = args.k_max {
        cfg.k_max = v;
    }
    if !args.lambda.is_empty() {
        cfg.lambda_grid = args
            .lambda
            .iter()
            .map(|raw| parse_rational_flag("lambda", raw))
            .collect::<Result<_, _>>()?;
    }
    if !args.x.is_empty() {
        cfg.x_grid = args
            .x
            .iter()
            .map(|raw| parse_rational_flag("x", raw))
            .collect::<Result<_, _>>()?;
    }
    if !args.p.is_empty() {
        cfg.primes = args.p.clone();
    }
    if let Some(v) = args.level_max {
        cfg.level_max = v;
    }
    if !args.padic_lambda.is_empty() {
        cfg.padic_lambda_grid = args
            .padic_lambda
            .iter()
            .map(|raw| parse_rational_flag("padic-lambda", raw))
            .collect::<Result<_, _>>()?;
    }
    if !args.padic_x.is_empty() {
        cfg.padic_x_grid = args
            .padic_x
            .iter()
            .map(|raw| parse_rational_flag("padic-x", raw))
            .collect::<Result<_, _>>()?;
    }
    if let Some(v) = args.padic_n_max {
        cfg.padic_n_max = v;
    }
    if let Some(v) = args.padic_k_max {
        cfg.padic_k_max = v;
    }
    if let Some(v) = args.eq2_count {
        cfg.eq2_count = v;
    }
    if let Some(v) = args.eq2_seed {
        cfg.eq2_seed = v;
    }

    let report = verify_all(&cfg);
    match args.format {
        Format::Plain => print!("{}", report.render_table()),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report.to_json()).expect("json")
        ),
        Format::Csv => unreachable!("rejected above"),
    }
    if report.exit_ok() {
        Ok(())
    } else {
        Err(CliError::failure("verification failed".to_string()))
    }
}

fn run_witt(args: &WittArgs) -> Result<(), CliError> {
    if args.format == Format::Csv {
        return Err(CliError::usage("witt prints plain or json, not csv"));
    }
    let kind = match args.kind.as_str() {
        "first" => BooleKind::First,
        "second" => BooleKind::Second,
        other => {
            return Err(CliError::usage(format!(
                "unknown kind '{other}'; expected first or second"
            )));
        }
    };
    if args.k == 0 {
        return Err(CliError::usage("--k must be at least 1"));
    }
    let precision = args.precision.unwrap_or(args.level);
    if precision < args.level {
        return Err(CliError::usage("--M must be at least --N"));
    }
    if args.slack > args.level {
        return Err(CliError::usage("--slack must not exceed --N"));
    }
    let lambda = parse_rational_flag("lambda", &args.lambda)?;
    let x = parse_rational_flag("x", &args.x)?;
    let ctx = PadicContext::new(args.p, precision).map_err(|e| CliError::usage(e.to_string()))?;

    let report = witt_check(
        kind,
        args.k,
        args.n,
        &lambda,
        &x,
        &ctx,
        args.level,
        args.slack,
    )
    .map_err(|e| CliError::failure(e.to_string()))?;

    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("json")
        ),
        Format::Plain => {
            let verdict = if report.agree { "agree" } else { "DISAGREE" };
            println!(
                "{} {} = {} mod {}",
                verdict, report.lhs_residue, report.rhs_residue, report.modulus
            );
        }
        Format::Csv => unreachable!("rejected above"),
    }
    if report.agree {
        Ok(())
    } else {
        Err(CliError::failure(format!(
            "residues differ: {} vs {} mod {}",
            report.lhs_residue, report.rhs_residue, report.modulus
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Compute(args) => run_compute(args),
        Command::Table(args) => run_table(args),
        Command::Verify(args) => run_verify(args),
        Command::Witt(args) => run_witt(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
