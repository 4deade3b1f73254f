//! Fixture-corpus and randomized property suites.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{pow, Zero};
use rand::Rng;

use crate::algebra::{from_bigint, int, Polynomial};
use crate::difference::{delta, delta_neg, faulhaber_sum, Mode};
use crate::error::Result;
use crate::fixture::{load_corpus, CheckResult};
use crate::koszul::{reduce_chain, Regime};
use crate::length::{fit_quasipoly, LengthFunction, Side};
use crate::multiplicity::{multiplicity_pos, Convention};
use crate::random::{self, SeededRng};

/// Default number of random cases per property.
pub const DEFAULT_CASES: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

type Property = fn(&mut SeededRng) -> std::result::Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fit_round_trip(rng: &mut SeededRng) -> std::result::Result<(), String> {
    let d = random::generation_degree(rng);
    let polys: Vec<Polynomial> = (0..d).map(|_| random::rational_polynomial(rng, 5)).collect();
    let lo = rng.gen_range(-20..=0i64);
    let hi = lo + d as i64 * 16;
    let samples = (lo..=hi)
        .map(|n| {
            let (m, i) = crate::algebra::div_floor(n, d as i64);
            (n, polys[i as usize].eval_i64(m))
        })
        .collect();
    let fit = fit_quasipoly(&samples, d).map_err(|e| e.to_string())?;
    ensure(fit.qp.polys() == polys.as_slice(), || format!("fit {:?} vs {polys:?}", fit.qp.polys()))
}

fn series_remultiply(rng: &mut SeededRng) -> std::result::Result<(), String> {
    let f = random::rational_function(rng);
    let n_max = rng.gen_range(0..=60usize);
    let series = Polynomial::from_coeffs(f.series_coefficients(n_max));
    let back = &series * f.denominator();
    ensure((0..=n_max).all(|k| back.coeff(k) == f.numerator().coeff(k)), || {
        format!("{f} through t^{n_max}")
    })
}

fn e(lf: &LengthFunction, s: u32, conv: Convention) -> std::result::Result<BigInt, String> {
    multiplicity_pos(lf, s, conv).map(|r| r.value().clone()).map_err(|e| e.to_string())
}

fn shift_alternation(rng: &mut SeededRng) -> std::result::Result<(), String> {
    let lf = random::any_length_function(rng);
    let cx = lf.complexity(Side::Positive);
    let s = cx + rng.gen_range(0..=1);
    for conv in [Convention::Delta, Convention::Coefficient] {
        let (a, b) = (e(&lf, s, conv)?, e(&lf.shift(1), s, conv)?);
        ensure(b == -a.clone(), || format!("{conv:?} s={s}: {a} then {b} after shift"))?;
        let c = e(&lf.shift(lf.d() as i64), s, conv)?;
        ensure(c == a, || format!("{conv:?} s={s}: shift by d changed {a} to {c}"))?;
    }
    Ok(())
}

fn vanishing_above_complexity(rng: &mut SeededRng) -> std::result::Result<(), String> {
    let lf = random::any_length_function(rng);
    let cx = lf.complexity(Side::Positive);
    for s in [cx + 1, cx + 2] {
        for conv in [Convention::Delta, Convention::Coefficient] {
            let v = e(&lf, s, conv)?;
            ensure(v.is_zero(), || format!("{conv:?} e^{s} = {v} with cx = {cx}"))?;
        }
    }
    Ok(())
}

fn convention_bridge(rng: &mut SeededRng) -> std::result::Result<(), String> {
    let d = random::generation_degree(rng);
    let cx = rng.gen_range(1..=4);
    let lf = random::length_function(rng, d, cx);
    let s = cx + rng.gen_range(0..=1);
    let r = multiplicity_pos(&lf, s, Convention::Delta).map_err(|e| e.to_string())?;
    let scale = pow(BigInt::from(d), s as usize - 1);
    ensure(r.e_coeff == &r.e_delta * scale, || {
        format!("d={d} s={s}: coefficient {} vs delta {}", r.e_coeff, r.e_delta)
    })
}

fn split_additivity(rng: &mut SeededRng) -> std::result::Result<(), String> {
    let d = random::generation_degree(rng);
    let (ca, cb) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
    let a = random::length_function(rng, d, ca);
    let b = random::length_function(rng, d, cb);
    let sum = a.pointwise_sum(&b).map_err(|e| e.to_string())?;
    let s = a.complexity(Side::Positive).max(b.complexity(Side::Positive));
    for conv in [Convention::Delta, Convention::Coefficient] {
        let (x, y, z) = (e(&a, s, conv)?, e(&b, s, conv)?, e(&sum, s, conv)?);
        ensure(z == &x + &y, || format!("{conv:?} s={s}: {z} != {x} + {y}"))?;
    }
    Ok(())
}

fn chain_constancy(rng: &mut SeededRng) -> std::result::Result<(), String> {
    let d = random::generation_degree(rng);
    let cx = rng.gen_range(0..=3);
    let lf = random::reducible_length_function(rng, d, cx);
    let s = lf.complexity(Side::Positive);
    let chain = reduce_chain(&lf, s, Regime::Positive).map_err(|e| e.to_string())?;
    let first = chain.multiplicities[0].clone();
    ensure(
        chain.multiplicities.iter().all(|m| *m == first) && chain.terminal_euler() == first,
        || format!("chain {:?}", chain.multiplicities),
    )
}

fn difference_closed_forms(rng: &mut SeededRng) -> std::result::Result<(), String> {
    let f = random::rational_polynomial(rng, 6);
    let s = rng.gen_range(0..=6u32);
    let d = 2 * rng.gen_range(1..=3i64);
    let n = rng.gen_range(-20..=20i64);
    let (r, c) = (delta(&f, s, d, n, Mode::Recursive), delta(&f, s, d, n, Mode::Closed));
    ensure(r == c, || format!("Δ^{s} of {f}: {r} vs {c}"))?;
    let (rn, cn) = (delta_neg(&f, s, d, n, Mode::Recursive), delta_neg(&f, s, d, n, Mode::Closed));
    ensure(rn == cn, || format!("Δ^-{s} of {f}: {rn} vs {cn}"))?;
    let sign = if s % 2 == 0 { int(1) } else { int(-1) };
    let mirrored = sign * delta(&f, s, d, n + s as i64, Mode::Closed);
    ensure(cn == mirrored, || format!("Δ^-{s} of {f} at {n}: {cn} vs {mirrored}"))
}

fn faulhaber_brute_force(rng: &mut SeededRng) -> std::result::Result<(), String> {
    let g = random::rational_polynomial(rng, 5);
    let lo = rng.gen_range(0..=10i64);
    let hi = rng.gen_range(lo..=200);
    let brute: crate::algebra::Rational = (lo..=hi).map(|i| g.eval_i64(i)).sum();
    let closed = faulhaber_sum(&g, lo, hi);
    ensure(brute == closed, || format!("Σ {g} over [{lo}, {hi}]: {closed} vs {brute}"))
}

fn evaluate_matches_series(rng: &mut SeededRng) -> std::result::Result<(), String> {
    // products of (1 - t^k)^{-1} with k | d have nonnegative coefficients
    let d = random::generation_degree(rng);
    let divisors: Vec<usize> = (1..=d).filter(|k| d % k == 0).collect();
    let factors: Vec<usize> = (0..rng.gen_range(1..=3))
        .map(|_| divisors[rng.gen_range(0..divisors.len())])
        .collect();
    let den = factors.iter().fold(Polynomial::one(), |acc, &k| {
        let mut c = vec![int(0); k + 1];
        c[0] = int(1);
        c[k] = int(-1);
        &acc * &Polynomial::from_coeffs(c)
    });
    let num = Polynomial::monomial(int(1), rng.gen_range(0..=4));
    let f = crate::algebra::RationalFunction::new(num, den).map_err(|e| e.to_string())?;
    let probe = 16 * d + 40;
    let lf = LengthFunction::from_series(&f, d, probe).map_err(|e| e.to_string())?;
    let coeffs = f.series_coefficients(probe + 50);
    ensure(
        coeffs.iter().enumerate().all(|(n, c)| from_bigint(lf.evaluate(n as i64)) == *c),
        || format!("{f} with d = {d}"),
    )
}

/// All randomized properties, by name.
pub fn properties() -> Vec<(&'static str, Property)> {
    vec![
        ("chain_constancy", chain_constancy),
        ("convention_bridge", convention_bridge),
        ("difference_closed_forms", difference_closed_forms),
        ("evaluate_matches_series", evaluate_matches_series),
        ("faulhaber_brute_force", faulhaber_brute_force),
        ("fit_round_trip", fit_round_trip),
        ("series_remultiply", series_remultiply),
        ("shift_alternation", shift_alternation),
        ("split_additivity", split_additivity),
        ("vanishing_above_complexity", vanishing_above_complexity),
    ]
}

/// Runs every property on `cases` inputs. Each property gets its own
/// generator seeded from `seed` and its position, so results do not depend
/// on which other properties run.
pub fn run_properties(seed: u64, cases: usize) -> Vec<PropertyResult> {
    properties()
        .into_iter()
        .enumerate()
        .map(|(k, (name, prop))| {
            let mut rng = random::seeded(seed.wrapping_mul(1_000_003).wrapping_add(k as u64));
            let mut failures = 0;
            let mut first_failure = None;
            for case in 0..cases {
                if let Err(msg) = prop(&mut rng) {
                    failures += 1;
                    first_failure.get_or_insert_with(|| format!("case {case}: {msg}"));
                }
            }
            PropertyResult {
                name,
                cases,
                failures,
                first_failure,
            }
        })
        .collect()
}

pub fn run_corpus(dir: &Path) -> Result<Vec<CheckResult>> {
    let fixtures = load_corpus(dir)?;
    let mut results: Vec<CheckResult> = fixtures.iter().flat_map(|f| f.run()).collect();
    results.sort_by(|a, b| a.fixture.cmp(&b.fixture));
    Ok(results)
}

/// Plain-text table of corpus results with per-provenance counts.
pub fn render_corpus(results: &[CheckResult]) -> String {
    let mut out = String::new();
    let width = results.iter().map(|r| r.fixture.len()).max().unwrap_or(0);
    for r in results {
        let _ = writeln!(
            out,
            "{}  {:<width$}  {:<9}  {}  ({})",
            if r.passed { "PASS" } else { "FAIL" },
            r.fixture,
            r.provenance.name(),
            r.label,
            r.detail
        );
    }
    let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for r in results {
        let c = counts.entry(r.provenance.name()).or_default();
        c.0 += usize::from(r.passed);
        c.1 += 1;
    }
    for (k, (p, t)) in counts {
        let _ = writeln!(out, "{k}: {p}/{t} passed");
    }
    let passed = results.iter().filter(|r| r.passed).count();
    let _ = writeln!(out, "corpus: {passed}/{} passed", results.len());
    out
}

pub fn render_properties(results: &[PropertyResult]) -> String {
    let mut out = String::new();
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    for r in results {
        let _ = write!(
            out,
            "{}  {:<width$}  {}/{} cases passed",
            if r.passed() { "PASS" } else { "FAIL" },
            r.name,
            r.cases - r.failures,
            r.cases
        );
        if let Some(f) = &r.first_failure {
            let _ = write!(out, "  first failure: {f}");
        }
        out.push('\n');
    }
    let passed = results.iter().filter(|r| r.passed()).count();
    let _ = writeln!(out, "properties: {passed}/{} passed", results.len());
    out
}
