//! `mult`: command-line front end for the multiplicity library.

use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use multiplicity::algebra::{format_rational, Rational};
use multiplicity::fixture::{default_fixture_dir, load_corpus};
use multiplicity::koszul::{reduce_chain, Regime};
use multiplicity::length::{LengthFunction, Side, Tail};
use multiplicity::multiplicity::{
    limit_estimate, multiplicity_neg, multiplicity_pos, serre_intersection, theta_invariant, Convention,
    MultiplicityReport,
};
use multiplicity::series::parse_series;
use multiplicity::verify::{render_corpus, render_properties, run_corpus, run_properties, DEFAULT_CASES};
use multiplicity::Error;

#[derive(Parser)]
#[command(name = "mult", version, about = "Multiplicities of graded length functions")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Power series coefficients of a rational function.
    Expand {
        #[arg(long)]
        expr: String,
        /// Highest power of t to print.
        #[arg(long)]
        n: usize,
    },
    /// Hilbert quasi-polynomials of both tails.
    Fit(InputArgs),
    /// Complexity on both sides.
    Cx(InputArgs),
    /// Positive multiplicity `e^s`.
    E(ReportArgs),
    /// Negative multiplicity `e_s`.
    ENeg(ReportArgs),
    /// Koszul reduction chain.
    Koszul {
        #[command(flatten)]
        input: InputArgs,
        /// Chain length; defaults to the complexity.
        #[arg(long)]
        s: Option<u32>,
        #[arg(long, value_enum, default_value_t = RegimeArg::Positive)]
        regime: RegimeArg,
    },
    /// Limit estimator for `e^s`.
    Limit {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        s: Option<u32>,
        /// Cut-offs, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<i64>,
        #[arg(long, value_enum, default_value_t = ConventionArg::Both)]
        convention: ConventionArg,
    },
    /// Theta invariant of homologically indexed Tor lengths.
    Theta(TorArgs),
    /// Serre intersection multiplicity of finitely many Tor lengths.
    Serre(TorArgs),
    /// Fixture corpus and property suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CASES)]
        cases: usize,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Generating series in t.
    #[arg(long, group = "source", requires = "d")]
    expr: Option<String>,
    /// Generation degree (even).
    #[arg(long)]
    d: Option<usize>,
    /// Number of series terms used for the fit.
    #[arg(long, requires = "expr")]
    probe: Option<usize>,
    /// Length function JSON file, or `-` for stdin.
    #[arg(long, group = "source")]
    input: Option<PathBuf>,
    /// Fixture name from the corpus.
    #[arg(long, group = "source")]
    fixture: Option<String>,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Defaults to the complexity of the relevant side.
    #[arg(long)]
    s: Option<u32>,
    #[arg(long, value_enum, default_value_t = ConventionArg::Both)]
    convention: ConventionArg,
    /// Also evaluate the limit estimator at this cut-off.
    #[arg(long)]
    limit_n: Option<i64>,
}

#[derive(Args)]
struct TorArgs {
    /// Tor lengths from homological degree 0, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "source")]
    tor: Vec<BigInt>,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Delta,
    Coefficient,
    Both,
}

impl ConventionArg {
    fn conventions(self) -> Vec<Convention> {
        match self {
            ConventionArg::Delta => vec![Convention::Delta],
            ConventionArg::Coefficient => vec![Convention::Coefficient],
            ConventionArg::Both => vec![Convention::Delta, Convention::Coefficient],
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Positive,
    Negative,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    #[value(alias = "paper")]
    Corpus,
    Properties,
    All,
}

const DEFAULT_PROBE: usize = 160;

/// Failure of a command: bad invocation (exit 2) or a computation that
/// could not be carried out or did not verify (exit 1).
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: &Command) -> std::result::Result<Output, Failure> {
    match cmd {
        Command::Expand { expr, n } => expand(expr, *n),
        Command::Fit(input) => fit(&load(input)?),
        Command::Cx(input) => cx(&load(input)?),
        Command::E(args) => report(args, Side::Positive),
        Command::ENeg(args) => report(args, Side::Negative),
        Command::Koszul { input, s, regime } => koszul(&load(input)?, *s, *regime),
        Command::Limit {
            input,
            s,
            n,
            convention,
        } => limit(&load(input)?, *s, n, *convention),
        Command::Theta(args) => theta(args),
        Command::Serre(args) => serre(args),
        Command::Verify { suite, seed, cases } => verify(*suite, *seed, *cases),
    }
}

fn load(args: &InputArgs) -> std::result::Result<LengthFunction, Failure> {
    if let Some(expr) = &args.expr {
        let d = args.d.expect("clap enforces --d");
        let f = parse_series(expr).map_err(Error::from)?;
        return Ok(LengthFunction::from_series(&f, d, args.probe.unwrap_or(DEFAULT_PROBE))?);
    }
    let lf = if let Some(path) = &args.input {
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Compute(format!("stdin: {e}")))?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| Failure::Compute(format!("{}: {e}", path.display())))?
        };
        LengthFunction::from_json_str(&text)?
    } else if let Some(name) = &args.fixture {
        let corpus = load_corpus(&default_fixture_dir())?;
        let fixture = corpus
            .iter()
            .find(|f| &f.name == name)
            .ok_or_else(|| Failure::Compute(format!("no fixture named {name:?}")))?;
        fixture.length_function()?
    } else {
        return Err(Failure::Usage("one of --expr, --input or --fixture is required".into()));
    };
    if let Some(d) = args.d {
        if d != lf.d() {
            return Err(Error::MismatchedDegree(d, lf.d()).into());
        }
    }
    Ok(lf)
}

fn expand(expr: &str, n: usize) -> std::result::Result<Output, Failure> {
    let f = parse_series(expr).map_err(Error::from)?;
    let coeffs: Vec<String> = f.series_coefficients(n).iter().map(format_rational).collect();
    Ok(Output::ok(
        format!("{}\n", coeffs.join(" ")),
        json!({ "expr": expr, "coefficients": coeffs }),
    ))
}

fn tail_lines(out: &mut String, lf: &LengthFunction, side: Side) {
    let label = match side {
        Side::Positive => "g",
        Side::Negative => "g-",
    };
    let rel = if side == Side::Positive { ">=" } else { "<=" };
    match lf.tail(side) {
        Tail::Vanishing => {
            let _ = writeln!(out, "{} tail: zero for n {rel} {}", side.name(), lf.tail_bound(side));
        }
        Tail::QuasiPoly { qp, bound } => {
            let _ = writeln!(out, "{} tail: valid for n {rel} {bound}", side.name());
            for (i, g) in qp.polys().iter().enumerate() {
                let _ = writeln!(out, "  {label}_{i}(t) = {g}");
            }
        }
    }
}

fn fit(lf: &LengthFunction) -> std::result::Result<Output, Failure> {
    let mut text = String::new();
    let _ = writeln!(text, "d = {}", lf.d());
    let values: Vec<String> = lf.core().iter().map(BigInt::to_string).collect();
    let _ = writeln!(text, "core from n = {}: {}", lf.start(), values.join(" "));
    tail_lines(&mut text, lf, Side::Positive);
    tail_lines(&mut text, lf, Side::Negative);
    let _ = writeln!(
        text,
        "cx = {}, cx- = {}",
        lf.complexity(Side::Positive),
        lf.complexity(Side::Negative)
    );
    let json = serde_json::to_value(lf).expect("serializable");
    Ok(Output::ok(text, json))
}

fn cx(lf: &LengthFunction) -> std::result::Result<Output, Failure> {
    let (p, n) = (lf.complexity(Side::Positive), lf.complexity(Side::Negative));
    Ok(Output::ok(format!("cx = {p}\ncx- = {n}\n"), json!({ "cx": p, "cx_neg": n })))
}

fn e_symbol(side: Side, s: u32) -> String {
    match side {
        Side::Positive => format!("e^{s}"),
        Side::Negative => format!("e_{s}"),
    }
}

fn decimal(r: &Rational) -> String {
    format!("{:.10}", r.to_f64().unwrap_or(f64::NAN))
}

fn report(args: &ReportArgs, side: Side) -> std::result::Result<Output, Failure> {
    let lf = load(&args.input)?;
    let s = args.s.unwrap_or_else(|| lf.complexity(side));
    let convs = args.convention.conventions();
    let rep: MultiplicityReport = match side {
        Side::Positive => multiplicity_pos(&lf, s, convs[0])?,
        Side::Negative => multiplicity_neg(&lf, s, convs[0])?,
    };
    let mut text = String::new();
    let _ = writeln!(text, "d = {}", lf.d());
    let _ = writeln!(
        text,
        "cx = {}, cx- = {}",
        lf.complexity(Side::Positive),
        lf.complexity(Side::Negative)
    );
    tail_lines(&mut text, &lf, side);
    if s >= 1 {
        let lead: Vec<String> = rep.leading.iter().map(format_rational).collect();
        let _ = writeln!(text, "coefficients of t^{}: {}", s - 1, lead.join(" "));
    }
    let names: Vec<&str> = convs.iter().map(|c| c.name()).collect();
    let values: Vec<String> = convs.iter().map(|c| rep.value_in(*c).to_string()).collect();
    let _ = writeln!(text, "{} ({}) = {}", e_symbol(side, s), names.join("/"), values.join("/"));
    if let Some(k) = rep.stabilization_index {
        let rel = if side == Side::Positive { "from" } else { "up to" };
        let _ = writeln!(text, "stable {rel} n = {k}");
    }
    let mut json = rep.to_json();
    if let Some(n) = args.limit_n {
        if side == Side::Negative {
            return Err(Failure::Usage("--limit-n applies to e only".into()));
        }
        let mut limits = serde_json::Map::new();
        for c in &convs {
            let est = limit_estimate(&lf, s, n, *c)?;
            let _ = writeln!(text, "limit n = {n} ({}) = {}", c.name(), decimal(&est));
            limits.insert(c.name().into(), json!(format_rational(&est)));
        }
        json["limit"] = json!({ "n": n, "estimates": limits });
    }
    Ok(Output::ok(text, json))
}

fn koszul(lf: &LengthFunction, s: Option<u32>, regime: RegimeArg) -> std::result::Result<Output, Failure> {
    let regime = match regime {
        RegimeArg::Positive => Regime::Positive,
        RegimeArg::Negative => Regime::Negative,
    };
    let s = s.unwrap_or_else(|| lf.complexity(regime.side()));
    let chain = reduce_chain(lf, s, regime)?;
    let mut text = String::new();
    let _ = writeln!(text, "{} chain of length {s}", regime.name());
    let functions = std::iter::once(&chain.base).chain(chain.steps.iter().map(|st| &st.result));
    for (k, (f, m)) in functions.zip(&chain.multiplicities).enumerate() {
        let idx = s - k as u32;
        let shown = m.as_ref().map_or("undefined".into(), BigInt::to_string);
        let _ = writeln!(
            text,
            "step {k}: cx = {}, {} = {shown}",
            f.complexity(regime.side()),
            e_symbol(regime.side(), idx)
        );
    }
    let euler = chain.terminal_euler();
    let _ = writeln!(
        text,
        "terminal Euler sum = {}",
        euler.as_ref().map_or("undefined".into(), BigInt::to_string)
    );
    Ok(Output::ok(text, chain.to_json()))
}

fn limit(lf: &LengthFunction, s: Option<u32>, ns: &[i64], conv: ConventionArg) -> std::result::Result<Output, Failure> {
    let s = s.unwrap_or_else(|| lf.complexity(Side::Positive));
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in conv.conventions() {
        for &n in ns {
            let est = limit_estimate(lf, s, n, c)?;
            let _ = writeln!(text, "{} n = {n}: {}", c.name(), decimal(&est));
            rows.push(json!({ "convention": c.name(), "n": n, "estimate": format_rational(&est) }));
        }
    }
    Ok(Output::ok(text, json!({ "s": s, "estimates": rows })))
}

fn tor_function(args: &TorArgs) -> std::result::Result<LengthFunction, Failure> {
    if args.tor.is_empty() {
        load(&args.input)
    } else {
        Ok(LengthFunction::finite(2, 0, args.tor.clone())?)
    }
}

fn theta(args: &TorArgs) -> std::result::Result<Output, Failure> {
    let v = theta_invariant(&tor_function(args)?)?;
    Ok(Output::ok(format!("theta = {v}\n"), json!({ "theta": v.to_string() })))
}

fn serre(args: &TorArgs) -> std::result::Result<Output, Failure> {
    let lf = tor_function(args)?;
    if !lf.is_finite_support() || lf.values(lf.start(), -1).iter().any(|v| v != &BigInt::from(0)) {
        return Err(Error::InfiniteSupport("Tor lengths must be finitely many, from degree 0").into());
    }
    let tor = lf.values(0, lf.end().max(0));
    let v = serre_intersection(&tor)?;
    Ok(Output::ok(format!("serre = {v}\n"), json!({ "serre": v.to_string() })))
}

fn verify(suite: Suite, seed: u64, cases: usize) -> std::result::Result<Output, Failure> {
    let mut text = String::new();
    let mut json = json!({});
    let mut ok = true;
    if suite != Suite::Properties {
        let results = run_corpus(&default_fixture_dir())?;
        ok &= results.iter().all(|r| r.passed);
        text.push_str(&render_corpus(&results));
        json["corpus"] = results
            .iter()
            .map(|r| {
                json!({
                    "fixture": r.fixture,
                    "check": r.label,
                    "provenance": r.provenance.name(),
                    "passed": r.passed,
                    "detail": r.detail,
                })
            })
            .collect();
    }
    if suite != Suite::Corpus {
        let results = run_properties(seed, cases);
        ok &= results.iter().all(|r| r.passed());
        text.push_str(&render_properties(&results));
        json["properties"] = results
            .iter()
            .map(|r| {
                json!({
                    "property": r.name,
                    "cases": r.cases,
                    "failures": r.failures,
                    "first_failure": r.first_failure,
                })
            })
            .collect();
        json["seed"] = json!(seed);
    }
    json["passed"] = json!(ok);
    Ok(Output { text, json, ok })
}
