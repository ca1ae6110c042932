use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qsum_core::classical::power_sum;
use qsum_core::closed::{
    beta_star_paper, beta_star_poly_paper, beta_star_poly_reference, beta_star_reference, ClosedError,
    RegularizedValue, Source, Status,
};
use qsum_core::field::{rat, RatFunc, Rational};
use qsum_core::numeric::{
    mellin_quadrature, relative_gap, zeta_star_series, NumericError, NumericParams, Which, ZetaVariant,
};
use qsum_core::qobjects::{q_binomial, q_int};
use qsum_core::sums::{garrett_hummel_lhs, kim_sum, schlosser_sum, thm3_lhs, warnaar_lhs, KimVariant};
use qsum_core::verify::{
    compare_golden, emit_report, parse_rational, run_report, Format, Ranges, Report, Verdict, VerifyConfig, SUITES,
};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SINGULAR: u8 = 3;

#[derive(Parser)]
#[command(name = "qsum", version, about = "Exact q-integer power sums, q-Bernoulli closed forms and q-zeta numerics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity suites and emit a report.
    Verify(VerifyArgs),
    /// Evaluate a single object.
    #[command(subcommand)]
    Eval(EvalCommand),
    /// Classical limit q -> 1 of a q-object.
    Limit(LimitArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite id, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = Ranges::default().n_max)]
    n_max: u32,
    #[arg(long, default_value_t = Ranges::default().k_max)]
    k_max: u32,
    #[arg(long, default_value_t = Ranges::default().m_max)]
    m_max: u32,
    /// Spot-check point for symbolic verdicts; must be a rational square.
    #[arg(long, value_parser = parse_q, default_value = "9/4")]
    q: Rational,
    /// Working precision of the numeric suites, in bits.
    #[arg(long, default_value_t = NumericParams::DEFAULT_PRECISION)]
    precision: usize,
    /// Series truncation tolerance of the numeric suites.
    #[arg(long, default_value_t = NumericParams::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_parser = parse_format, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Golden JSON report to diff against.
    #[arg(long)]
    golden: Option<PathBuf>,
    /// Exit with status 3 if any record is singular.
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum EvalCommand {
    /// Closed-form beta*_{n,k,q} (numbers) or beta*_{n,k,q}(k) (polynomials).
    BetaStar {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = parse_source, default_value = "reference")]
        source: Source,
        #[arg(long)]
        polynomial: bool,
        #[arg(long)]
        strict: bool,
    },
    /// S_{m,n}(q) = sum_{k=1..n} [k]_{q^2} [k]_q^{m-1} q^{(n-k)(m+1)/2}.
    Sum {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// The q-zeta series at an integer s >= 3.
    Zeta {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = parse_q)]
        q: Rational,
        #[arg(long, value_parser = parse_which, default_value = "numbers")]
        which: Which,
        #[arg(long, value_parser = parse_variant, default_value = "derived")]
        variant: ZetaVariant,
        #[arg(long, default_value_t = NumericParams::DEFAULT_PRECISION)]
        precision: usize,
        /// Also evaluate the Mellin integral and report the relative gap.
        #[arg(long)]
        mellin: bool,
    },
}

#[derive(Args)]
struct LimitArgs {
    /// One of schlosser-sum, thm3-lhs, warnaar-lhs, garrett-hummel-lhs, kim-sum, q-int, q-binomial, beta-star.
    #[arg(long)]
    op: String,
    /// Parameters as name=value pairs, e.g. `m=2 n=5`.
    #[arg(long, num_args = 0..)]
    params: Vec<String>,
}

fn parse_q(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("'{s}' is not an exact fraction such as 9/4"))
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_source(s: &str) -> Result<Source, String> {
    s.parse()
}

fn parse_which(s: &str) -> Result<Which, String> {
    s.parse()
}

fn parse_variant(s: &str) -> Result<ZetaVariant, String> {
    s.parse()
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    fn eval(message: impl Into<String>) -> Self {
        Self { code: EXIT_MISMATCH, message: message.into() }
    }
}

impl From<NumericError> for Failure {
    fn from(e: NumericError) -> Self {
        match e {
            NumericError::DomainError(_) | NumericError::InvalidParams(_) => Failure::usage(e.to_string()),
            _ => Failure::eval(e.to_string()),
        }
    }
}

impl From<ClosedError> for Failure {
    fn from(e: ClosedError) -> Self {
        match e {
            ClosedError::SingularUnresolved(_) => Failure { code: EXIT_SINGULAR, message: e.to_string() },
            _ => Failure::usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Eval(cmd) => eval(cmd),
        Command::Limit(args) => limit(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn verify(args: VerifyArgs) -> Result<u8, Failure> {
    let names: Vec<&str> = args.suite.split(',').map(str::trim).collect();
    if let Some(bad) = names.iter().find(|n| **n != "all" && !SUITES.contains(n)) {
        return Err(Failure::usage(format!("unknown suite '{bad}' (expected one of: all, {})", SUITES.join(", "))));
    }
    let mut numeric = NumericParams::new(rat(2));
    numeric.precision = args.precision;
    numeric.tol = args.tol;
    numeric.validate().map_err(Failure::from)?;
    let config = VerifyConfig {
        ranges: Ranges { n_max: args.n_max, k_max: args.k_max, m_max: args.m_max },
        numeric,
        ..VerifyConfig::default()
    }
    .with_spot_q(&args.q)
    .map_err(|e| Failure::usage(e.to_string()))?;

    let report = run_report(&names, &config).map_err(|e| Failure::usage(e.to_string()))?;
    emit_report(&report, args.format, args.out.as_deref()).map_err(|e| Failure::usage(e.to_string()))?;

    let singular = report.count(Verdict::Singular);
    let errors = report.count(Verdict::Error);
    eprintln!(
        "{} records: {} pass, {} fail, {} singular, {} skipped, {} error",
        report.records().count(),
        report.count(Verdict::Pass),
        report.count(Verdict::Fail),
        singular,
        report.count(Verdict::Skipped),
        errors
    );

    if args.strict && singular > 0 {
        eprintln!("strict: {singular} singular record(s)");
        return Ok(EXIT_SINGULAR);
    }
    match args.golden {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Failure::usage(format!("cannot read golden {}: {e}", path.display())))?;
            let golden = Report::from_json(&text).map_err(|e| Failure::usage(e.to_string()))?;
            let diff = compare_golden(&report, &golden).map_err(|e| Failure::usage(e.to_string()))?;
            if diff.is_clean() {
                eprintln!("golden: match");
                Ok(0)
            } else {
                eprint!("golden: mismatch\n{}", diff.summary());
                Ok(EXIT_MISMATCH)
            }
        }
        None if errors > 0 => Ok(EXIT_MISMATCH),
        None => Ok(0),
    }
}

fn print_regularized(label: &str, value: &RegularizedValue) {
    println!("status: {}", value.status.as_str());
    if !value.singular_terms.is_empty() {
        let terms: Vec<String> = value.singular_terms.iter().map(i64::to_string).collect();
        println!("singular_terms: {}", terms.join(","));
    }
    match &value.value {
        Some(v) => println!("{label}: {}", v.to_canonical_string()),
        None => println!("{label}: undefined"),
    }
}

fn eval(cmd: EvalCommand) -> Result<u8, Failure> {
    match cmd {
        EvalCommand::BetaStar { n, k, source, polynomial, strict } => {
            let value = match (source, polynomial) {
                (Source::Paper, false) => beta_star_paper(n, k)?,
                (Source::Paper, true) => beta_star_poly_paper(n, k)?,
                (Source::Reference, false) => beta_star_reference(n, k)?,
                (Source::Reference, true) => beta_star_poly_reference(n, k)?,
            };
            print_regularized("value", &value);
            Ok(if strict && value.status == Status::Singular { EXIT_SINGULAR } else { 0 })
        }
        EvalCommand::Sum { m, n } => {
            println!("{}", schlosser_sum(m, n).to_canonical_string());
            Ok(0)
        }
        EvalCommand::Zeta { s, k, q, which, variant, precision, mellin } => {
            let mut params = NumericParams::new(q);
            params.precision = precision;
            let series = zeta_star_series(s, k, &params, which, variant)?;
            println!("series: {}", series.to_sci_string(30));
            if mellin {
                let quad = mellin_quadrature(s, k, &params, which)?;
                println!("mellin: {}", quad.to_sci_string(30));
                println!("relative_gap: {}", relative_gap(&quad, &series).to_sci_string(3));
            }
            Ok(0)
        }
    }
}

fn limit(args: LimitArgs) -> Result<u8, Failure> {
    let mut ps = BTreeMap::new();
    for kv in &args.params {
        let (key, value) = kv
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("parameter '{kv}' is not of the form name=value")))?;
        ps.insert(key.trim().to_string(), value.trim().to_string());
    }
    let int = |name: &str| -> Result<u32, Failure> {
        let raw = ps.get(name).ok_or_else(|| Failure::usage(format!("--op {} needs parameter {name}", args.op)))?;
        raw.parse().map_err(|_| Failure::usage(format!("parameter {name}={raw} is not a non-negative integer")))
    };
    let sum_k_pow = |m: u32, n: u32| -> Rational { (1..=i64::from(n)).map(|j| rat(j).pow(m as i32)).sum() };

    let (f, classical): (RatFunc, Option<Rational>) = match args.op.as_str() {
        "schlosser-sum" => {
            let (m, n) = (int("m")?, int("n")?);
            (schlosser_sum(m, n), Some(sum_k_pow(m, n)))
        }
        "thm3-lhs" => {
            let (n, k) = (int("n")?, int("k")?);
            (thm3_lhs(n, k), Some(power_sum(n, u64::from(k))))
        }
        "warnaar-lhs" | "garrett-hummel-lhs" => {
            let n = int("n")?;
            let f = if args.op == "warnaar-lhs" { warnaar_lhs(n) } else { garrett_hummel_lhs(n) };
            let tri = rat(i64::from(n) * (i64::from(n) + 1) / 2);
            (f, Some(&tri * &tri))
        }
        "kim-sum" => {
            let n = int("n")?;
            let variant: KimVariant = ps
                .get("variant")
                .map_or(Ok(KimVariant::Linear), |v| v.parse())
                .map_err(Failure::usage)?;
            let m = match variant {
                KimVariant::Linear => 1,
                KimVariant::Square => 2,
            };
            (kim_sum(n, variant), Some(power_sum(m, u64::from(n))))
        }
        "q-int" => {
            let k = int("k")?;
            (q_int(i64::from(k)), Some(rat(i64::from(k))))
        }
        "q-binomial" => {
            let (n, k) = (int("n")?, int("k")?);
            (q_binomial(n, i64::from(k)), Some(qsum_core::qobjects::binomial(u64::from(n), i64::from(k))))
        }
        "beta-star" => {
            let (n, k) = (int("n")?, int("k")?);
            let source: Source = ps.get("source").map_or(Ok(Source::Reference), |s| s.parse()).map_err(Failure::usage)?;
            let value = match source {
                Source::Paper => beta_star_paper(n, k)?,
                Source::Reference => beta_star_reference(n, k)?,
            };
            (value.into_value()?, None)
        }
        other => return Err(Failure::usage(format!("unknown op '{other}'"))),
    };

    println!("value: {}", f.to_canonical_string());
    match f.limit_at_v1() {
        Ok(l) => {
            println!("limit: {l}");
            if let Some(c) = classical {
                println!("classical: {c}");
                println!("match: {}", l == c);
                return Ok(if l == c { 0 } else { EXIT_MISMATCH });
            }
            Ok(0)
        }
        Err(e) => {
            println!("limit: {e}");
            Ok(EXIT_MISMATCH)
        }
    }
}
