//! Fixture files: a length function source plus named expectations.

use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::koszul::{reduce_chain, Regime};
use crate::length::{IntValue, LengthFunction, LengthFunctionJson, Side};
use crate::multiplicity::{
    euler_characteristic, limit_estimate, multiplicity_neg, multiplicity_pos, serre_intersection, theta_invariant,
    vanishing_window_check, Convention, Parity, WindowOutcome,
};
use crate::series::parse_series;

/// Environment variable overriding the corpus directory.
pub const FIXTURE_DIR_VAR: &str = "MULT_FIXTURE_DIR";

pub fn default_fixture_dir() -> PathBuf {
    std::env::var_os(FIXTURE_DIR_VAR)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub d: usize,
    pub source: Source,
    /// Applied to the source before any check: `λ(n) ↦ λ(n + shift)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<i64>,
    pub expected: Vec<Expectation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Source {
    Series { expr: String, probe: usize },
    Explicit(LengthFunctionJson),
    /// `ℓ Tor_0, ℓ Tor_1, ...` (homological degrees, finitely many).
    TorLengths(Vec<IntValue>),
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Stated in the published worked examples.
    Published,
    /// Computed independently (hand calculation or a brute-force oracle).
    Derived,
    /// Immediate from the definitions.
    Trivial,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Published => "published",
            Provenance::Derived => "derived",
            Provenance::Trivial => "trivial",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub provenance: Provenance,
    pub check: Check,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideName {
    Positive,
    Negative,
}

impl From<SideName> for Side {
    fn from(s: SideName) -> Side {
        match s {
            SideName::Positive => Side::Positive,
            SideName::Negative => Side::Negative,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConventionName {
    Delta,
    Coefficient,
}

impl From<ConventionName> for Convention {
    fn from(c: ConventionName) -> Convention {
        match c {
            ConventionName::Delta => Convention::Delta,
            ConventionName::Coefficient => Convention::Coefficient,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityName {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeName {
    Confirmed,
    WindowNotFound,
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "quantity", rename_all = "snake_case", deny_unknown_fields)]
pub enum Check {
    /// `cx` (positive side) or `cx⁻`.
    Complexity { side: SideName, value: u32 },
    /// `e^s` or `e_s` in one convention.
    Multiplicity {
        side: SideName,
        s: u32,
        convention: ConventionName,
        value: IntValue,
    },
    /// Tail polynomials, constant term first.
    Polys { side: SideName, value: Vec<Vec<String>> },
    /// Coefficients of `t^{s-1}` in the tail polynomials.
    Leading { side: SideName, s: u32, value: Vec<String> },
    Euler { value: IntValue },
    Theta { value: IntValue },
    Serre { value: IntValue },
    /// `λ(start + j) = values[j]`.
    Values { start: i64, values: Vec<IntValue> },
    /// `|limit_estimate - target| <= tolerance` at each `n`.
    Limit {
        s: u32,
        n: Vec<i64>,
        convention: ConventionName,
        target: String,
        tolerance: String,
    },
    /// Delta-convention multiplicities along a reduction chain of length
    /// `s`, and the terminal Euler sum. Positive chains are constant; each
    /// negative reduction flips the sign.
    Chain {
        regime: SideName,
        s: u32,
        value: IntValue,
    },
    Window {
        m0: i64,
        parity: ParityName,
        outcome: OutcomeName,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        first: Option<i64>,
    },
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &SideName| match s {
            SideName::Positive => "positive",
            SideName::Negative => "negative",
        };
        match self {
            Check::Complexity { side: sd, .. } => write!(f, "complexity {}", side(sd)),
            Check::Multiplicity {
                side: sd,
                s,
                convention,
                ..
            } => write!(f, "multiplicity {} s={s} {}", side(sd), Convention::from(*convention).name()),
            Check::Polys { side: sd, .. } => write!(f, "polys {}", side(sd)),
            Check::Leading { side: sd, s, .. } => write!(f, "leading {} s={s}", side(sd)),
            Check::Euler { .. } => write!(f, "euler"),
            Check::Theta { .. } => write!(f, "theta"),
            Check::Serre { .. } => write!(f, "serre"),
            Check::Values { start, values } => {
                write!(f, "values [{start}, {}]", start + values.len() as i64 - 1)
            }
            Check::Limit { s, n, convention, .. } => write!(
                f,
                "limit s={s} n={} {}",
                n.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
                Convention::from(*convention).name()
            ),
            Check::Chain { regime, s, .. } => write!(f, "chain {} s={s}", side(regime)),
            Check::Window { m0, parity, .. } => write!(
                f,
                "window m0={m0} {}",
                if *parity == ParityName::Even { "even" } else { "odd" }
            ),
        }
    }
}

/// Outcome of one expectation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub fixture: String,
    pub label: String,
    pub provenance: Provenance,
    pub passed: bool,
    pub detail: String,
}

impl Fixture {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
    }

    /// The length function described by the source (after `shift`).
    /// Tor-length sources are returned in homological indexing.
    pub fn length_function(&self) -> Result<LengthFunction> {
        let lf = match &self.source {
            Source::Series { expr, probe } => LengthFunction::from_series(&parse_series(expr)?, self.d, *probe)?,
            Source::Explicit(j) => LengthFunction::try_from(j)?,
            Source::TorLengths(v) => LengthFunction::finite(self.d, 0, v.iter().map(|x| x.0.clone()).collect())?,
        };
        if lf.d() != self.d {
            return Err(Error::MismatchedDegree(self.d, lf.d()));
        }
        Ok(match self.shift {
            Some(k) => lf.shift(k),
            None => lf,
        })
    }

    /// Evaluates every expectation; a source that fails to load fails all.
    pub fn run(&self) -> Vec<CheckResult> {
        let lf = self.length_function();
        self.expected
            .iter()
            .map(|e| {
                let (passed, detail) = match &lf {
                    Ok(lf) => match self.evaluate(lf, &e.check) {
                        Ok((ok, detail)) => (ok, detail),
                        Err(err) => (false, format!("error: {err}")),
                    },
                    Err(err) => (false, format!("source error: {err}")),
                };
                CheckResult {
                    fixture: self.name.clone(),
                    label: e.check.to_string(),
                    provenance: e.provenance,
                    passed,
                    detail,
                }
            })
            .collect()
    }

    fn evaluate(&self, lf: &LengthFunction, check: &Check) -> Result<(bool, String)> {
        let compare = |got: String, want: String| {
            let ok = got == want;
            (ok, format!("got {got}, expected {want}"))
        };
        Ok(match check {
            Check::Complexity { side, value } => compare(lf.complexity((*side).into()).to_string(), value.to_string()),
            Check::Multiplicity {
                side,
                s,
                convention,
                value,
            } => {
                let conv = Convention::from(*convention);
                let r = match side {
                    SideName::Positive => multiplicity_pos(lf, *s, conv)?,
                    SideName::Negative => multiplicity_neg(lf, *s, conv)?,
                };
                compare(r.value().to_string(), value.0.to_string())
            }
            Check::Polys { side, value } => {
                let got = polys_strings(lf, (*side).into());
                let want = normalize_table(value)?;
                compare(format!("{got:?}"), format!("{want:?}"))
            }
            Check::Leading { side, s, value } => {
                let got: Vec<String> = lf
                    .tail_quasi((*side).into())
                    .polys()
                    .iter()
                    .map(|g| format_rational(&g.coeff(*s as usize - 1)))
                    .collect();
                let want = value
                    .iter()
                    .map(|v| parse(v).map(|r| format_rational(&r)))
                    .collect::<Result<Vec<_>>>()?;
                compare(format!("{got:?}"), format!("{want:?}"))
            }
            Check::Euler { value } => compare(euler_characteristic(lf)?.to_string(), value.0.to_string()),
            Check::Theta { value } => compare(theta_invariant(lf)?.to_string(), value.0.to_string()),
            Check::Serre { value } => {
                let Source::TorLengths(v) = &self.source else {
                    return Err(Error::Input("serre needs a tor_lengths source".into()));
                };
                let tor: Vec<BigInt> = v.iter().map(|x| x.0.clone()).collect();
                compare(serre_intersection(&tor)?.to_string(), value.0.to_string())
            }
            Check::Values { start, values } => {
                let got: Vec<String> = lf
                    .values(*start, start + values.len() as i64 - 1)
                    .iter()
                    .map(BigInt::to_string)
                    .collect();
                let want: Vec<String> = values.iter().map(|v| v.0.to_string()).collect();
                compare(got.join(" "), want.join(" "))
            }
            Check::Limit {
                s,
                n,
                convention,
                target,
                tolerance,
            } => {
                let (target, tol) = (parse(target)?, parse(tolerance)?);
                let mut errors = Vec::new();
                for &k in n {
                    let est = limit_estimate(lf, *s, k, (*convention).into())?;
                    errors.push((est - &target).abs());
                }
                let within = errors.last().is_some_and(|e| *e <= tol);
                let monotone = errors.windows(2).all(|w| w[1] <= w[0]);
                let shown: Vec<String> = errors.iter().map(|e| format!("{:.3e}", to_f64(e))).collect();
                (within && monotone, format!("errors {}", shown.join(", ")))
            }
            Check::Chain { regime, s, value } => {
                let regime = match regime {
                    SideName::Positive => Regime::Positive,
                    SideName::Negative => Regime::Negative,
                };
                let chain = reduce_chain(lf, *s, regime)?;
                let sign = |k: usize| {
                    if regime == Regime::Negative && k % 2 == 1 {
                        -value.0.clone()
                    } else {
                        value.0.clone()
                    }
                };
                let mut ok = chain
                    .multiplicities
                    .iter()
                    .enumerate()
                    .all(|(k, m)| m.as_ref() == Some(&sign(k)));
                let terminal = chain.terminal_euler();
                ok &= terminal.as_ref() == Some(&sign(*s as usize));
                let cx_ok = chain.steps.iter().enumerate().all(|(k, st)| {
                    let before = if k == 0 { &chain.base } else { &chain.steps[k - 1].result };
                    let c = before.complexity(regime.side());
                    st.result.complexity(regime.side()) == c.saturating_sub(1)
                });
                let shown: Vec<String> = chain
                    .multiplicities
                    .iter()
                    .map(|m| m.as_ref().map_or("-".into(), BigInt::to_string))
                    .collect();
                (ok && cx_ok, format!("chain {}", shown.join(" ")))
            }
            Check::Window {
                m0,
                parity,
                outcome,
                first,
            } => {
                let parity = match parity {
                    ParityName::Even => Parity::Even,
                    ParityName::Odd => Parity::Odd,
                };
                let got = vanishing_window_check(lf, *m0, parity)?;
                let ok = match (&got, outcome) {
                    (WindowOutcome::Confirmed { .. }, OutcomeName::Confirmed) => true,
                    (WindowOutcome::WindowNotFound, OutcomeName::WindowNotFound) => true,
                    (WindowOutcome::Violated { first: n, .. }, OutcomeName::Violated) => first.is_none_or(|f| f == *n),
                    _ => false,
                };
                (ok, format!("got {got:?}"))
            }
        })
    }
}

fn parse(text: &str) -> Result<Rational> {
    parse_rational(text).ok_or_else(|| Error::Input(format!("invalid rational {text:?}")))
}

fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn polys_strings(lf: &LengthFunction, side: Side) -> Vec<Vec<String>> {
    lf.tail_quasi(side)
        .polys()
        .iter()
        .map(|g| g.coeffs().iter().map(format_rational).collect())
        .collect()
}

fn normalize_table(table: &[Vec<String>]) -> Result<Vec<Vec<String>>> {
    table
        .iter()
        .map(|cs| {
            let mut v = cs.iter().map(|c| parse(c)).collect::<Result<Vec<_>>>()?;
            while v.last().is_some_and(num_traits::Zero::is_zero) {
                v.pop();
            }
            Ok(v.iter().map(format_rational).collect())
        })
        .collect()
}

/// Loads every `*.json` fixture in `dir`, sorted by fixture name.
pub fn load_corpus(dir: &Path) -> Result<Vec<Fixture>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::Input(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut fixtures = paths.iter().map(|p| Fixture::load(p)).collect::<Result<Vec<_>>>()?;
    fixtures.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(fixtures)
}
