//! Herbrand difference, the multiplicities `e^s`/`e_s`, Euler sums, the
//! limit estimator, theta/Serre specializations and the vanishing-window
//! predicate.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{div_floor, factorial, format_rational, from_bigint, int, parity_sign, Polynomial, Rational};
use crate::difference::{delta, delta_neg, faulhaber_sum, Mode};
use crate::error::{Error, Result};
use crate::length::{LengthFunction, QuasiPolynomial, Side, Tail};

/// How `e^s` is normalized.
///
/// `Delta` is the stabilized value of `Δ^{s-1}h`, which equals
/// `(s-1)! Σ(-1)^i a_i`. `Coefficient` is `(s-1)! d^{s-1} Σ(-1)^i a_i`,
/// `a_i` being the coefficient of `t^{s-1}` in `g_i`. The two differ by the
/// factor `d^{s-1}`; both are always reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Convention {
    Delta,
    Coefficient,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Delta => "delta",
            Convention::Coefficient => "coefficient",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityReport {
    pub side: Side,
    pub s: u32,
    pub convention: Convention,
    pub cx: u32,
    pub cx_neg: Option<u32>,
    pub polys: Vec<Polynomial>,
    pub polys_neg: Vec<Polynomial>,
    /// Coefficients of `t^{s-1}` in the tail polynomials of `side`.
    pub leading: Vec<Rational>,
    pub e_delta: BigInt,
    pub e_coeff: BigInt,
    /// Positive side: smallest `n` from which `Δ^{s-1}h` was verified
    /// constant. Negative side: largest `n` up to which `Δ^{-(s-1)}h` was.
    /// `None` for Euler sums.
    pub stabilization_index: Option<i64>,
}

impl MultiplicityReport {
    pub fn value(&self) -> &BigInt {
        self.value_in(self.convention)
    }

    pub fn value_in(&self, conv: Convention) -> &BigInt {
        match conv {
            Convention::Delta => &self.e_delta,
            Convention::Coefficient => &self.e_coeff,
        }
    }

    pub fn to_json(&self) -> Value {
        let polys = |ps: &[Polynomial]| -> Value {
            ps.iter()
                .map(|g| g.coeffs().iter().map(format_rational).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .into()
        };
        json!({
            "side": self.side.name(),
            "s": self.s,
            "convention": self.convention.name(),
            "cx": self.cx,
            "cx_neg": self.cx_neg,
            "polys": polys(&self.polys),
            "polys_neg": polys(&self.polys_neg),
            "leading": self.leading.iter().map(format_rational).collect::<Vec<_>>(),
            "e_delta": self.e_delta.to_string(),
            "e_coeff": self.e_coeff.to_string(),
            "stabilization_index": self.stabilization_index,
        })
    }
}

/// `h(n) = Σ_{i=0}^{d-1} (-1)^{n+i} λ(n+i)`.
pub fn herbrand(lf: &LengthFunction, n: i64) -> BigInt {
    (0..lf.d() as i64)
        .map(|i| lf.evaluate(n + i) * parity_sign(n + i))
        .sum()
}

/// Per residue class `j`, the polynomial `H_j` with `h(d*m + j) = H_j(m)`
/// wherever the window `[dm+j, dm+j+d)` lies in the region described by `qp`:
/// `H_j(m) = Σ_{k≥j} (-1)^k g_k(m) + Σ_{k<j} (-1)^k g_k(m+1)`.
pub fn herbrand_polynomials(qp: &QuasiPolynomial) -> Vec<Polynomial> {
    let g = qp.polys();
    let d = g.len();
    (0..d)
        .map(|j| {
            (0..d).fold(Polynomial::zero(), |acc, k| {
                let term = if k >= j { g[k].clone() } else { g[k].shift(&int(1)) };
                if k % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                }
            })
        })
        .collect()
}

/// One application of `Δ^{-1}` to a per-class polynomial family:
/// `Δ^{-1}f(dm+j) = f(dm+j+1) - f(dm+j+d+1)`.
fn neg_step(family: &[Polynomial]) -> Vec<Polynomial> {
    let d = family.len();
    (0..d)
        .map(|j| {
            if j + 1 < d {
                &family[j + 1] - &family[j + 1].shift(&int(1))
            } else {
                &family[0].shift(&int(1)) - &family[0].shift(&int(2))
            }
        })
        .collect()
}

fn common_constant(family: &[Polynomial], what: &str) -> Result<BigInt> {
    let first = family[0].coeff(0);
    for (j, p) in family.iter().enumerate() {
        if p.degree() > 0 || p.coeff(0) != first {
            return Err(Error::ModelInconsistency(format!(
                "{what} does not stabilize to a common constant: class {j} gives {p}, class 0 gives {}",
                format_rational(&first)
            )));
        }
    }
    if !first.is_integer() {
        return Err(Error::ModelInconsistency(format!(
            "{what} stabilizes to the non-integer {}",
            format_rational(&first)
        )));
    }
    Ok(first.to_integer())
}

fn coefficient_formula(s: u32, d: usize, leading: &[Rational]) -> Result<BigInt> {
    let alt: Rational = leading
        .iter()
        .enumerate()
        .map(|(i, a)| if i % 2 == 0 { a.clone() } else { -a.clone() })
        .sum();
    let scale = factorial(s as u64 - 1) * num_traits::pow(BigInt::from(d), s as usize - 1);
    let v = alt * from_bigint(scale);
    if !v.is_integer() {
        return Err(Error::ModelInconsistency(format!(
            "coefficient formula gives the non-integer {}",
            format_rational(&v)
        )));
    }
    Ok(v.to_integer())
}

/// Numerical `Δ^{s-1}h(n)`.
pub fn delta_h(lf: &LengthFunction, s: u32, n: i64) -> Rational {
    let h = |m: i64| from_bigint(herbrand(lf, m));
    delta(&h, s.saturating_sub(1), lf.d() as i64, n, Mode::Closed)
}

/// Numerical `Δ^{-(s-1)}h(n)`.
pub fn delta_neg_h(lf: &LengthFunction, s: u32, n: i64) -> Rational {
    let h = |m: i64| from_bigint(herbrand(lf, m));
    delta_neg(&h, s.saturating_sub(1), lf.d() as i64, n, Mode::Closed)
}

fn base_report(lf: &LengthFunction, side: Side, s: u32, conv: Convention) -> MultiplicityReport {
    let polys = lf.tail_quasi(Side::Positive).into_polys();
    let polys_neg = lf.tail_quasi(Side::Negative).into_polys();
    let own = if side == Side::Positive { &polys } else { &polys_neg };
    let leading = if s == 0 {
        Vec::new()
    } else {
        own.iter().map(|g| g.coeff(s as usize - 1)).collect()
    };
    MultiplicityReport {
        side,
        s,
        convention: conv,
        cx: lf.complexity(Side::Positive),
        cx_neg: Some(lf.complexity(Side::Negative)),
        polys,
        polys_neg,
        leading,
        e_delta: BigInt::zero(),
        e_coeff: BigInt::zero(),
        stabilization_index: None,
    }
}

/// `e^s`, both conventions, with the requested one as the report's value.
pub fn multiplicity_pos(lf: &LengthFunction, s: u32, conv: Convention) -> Result<MultiplicityReport> {
    let cx = lf.complexity(Side::Positive);
    if s < cx {
        return Err(Error::BelowComplexity { s, cx });
    }
    let mut report = base_report(lf, Side::Positive, s, conv);
    if s == 0 {
        if !lf.neg_tail().is_vanishing() {
            return Err(Error::InfiniteSupport("e^0 needs λ(n) = 0 for n ≪ 0"));
        }
        let e = euler_characteristic(lf)?;
        report.e_delta = e.clone();
        report.e_coeff = e;
        return Ok(report);
    }
    let d = lf.d() as i64;
    let family: Vec<Polynomial> = herbrand_polynomials(&lf.tail_quasi(Side::Positive))
        .into_iter()
        .map(|p| (1..s).fold(p, |acc, _| acc.forward_difference()))
        .collect();
    let e = common_constant(&family, "Δ^{s-1}h")?;
    let start = lf.tail_bound(Side::Positive);
    let target = from_bigint(e.clone());
    for n in start..start + 3 * d {
        let v = delta_h(lf, s, n);
        if v != target {
            return Err(Error::ModelInconsistency(format!(
                "numerical Δ^{}h({n}) = {} disagrees with the symbolic value {e}",
                s - 1,
                format_rational(&v)
            )));
        }
    }
    let floor = lf.start() - d * (s as i64 + 2);
    let mut index = start;
    while index > floor && delta_h(lf, s, index - 1) == target {
        index -= 1;
    }
    report.stabilization_index = Some(index);
    report.e_coeff = coefficient_formula(s, lf.d(), &report.leading)?;
    report.e_delta = e;
    Ok(report)
}

/// `e_s`, both conventions. The coefficient convention is the formula
/// `(s-1)! d^{s-1} Σ(-1)^i a_i` on the negative polynomials, taken as is.
pub fn multiplicity_neg(lf: &LengthFunction, s: u32, conv: Convention) -> Result<MultiplicityReport> {
    let cx = lf.complexity(Side::Negative);
    if s < cx {
        return Err(Error::BelowComplexity { s, cx });
    }
    let mut report = base_report(lf, Side::Negative, s, conv);
    if s == 0 {
        if !lf.pos_tail().is_vanishing() {
            return Err(Error::InfiniteSupport("e_0 needs λ(n) = 0 for n ≫ 0"));
        }
        let e = euler_characteristic(lf)?;
        report.e_delta = e.clone();
        report.e_coeff = e;
        return Ok(report);
    }
    let d = lf.d() as i64;
    let family = (1..s).fold(herbrand_polynomials(&lf.tail_quasi(Side::Negative)), |acc, _| neg_step(&acc));
    let e = common_constant(&family, "Δ^{-(s-1)}h")?;
    // Δ^{-(s-1)}h(n) reads λ up to n + (s-1)(d+1) + d - 1
    let end = lf.tail_bound(Side::Negative) - (s as i64 - 1) * (d + 1) - d + 1;
    let target = from_bigint(e.clone());
    for n in end - 3 * d + 1..=end {
        let v = delta_neg_h(lf, s, n);
        if v != target {
            return Err(Error::ModelInconsistency(format!(
                "numerical Δ^{{-{}}}h({n}) = {} disagrees with the symbolic value {e}",
                s - 1,
                format_rational(&v)
            )));
        }
    }
    let ceiling = lf.end() + d * (s as i64 + 2);
    let mut index = end;
    while index < ceiling && delta_neg_h(lf, s, index + 1) == target {
        index += 1;
    }
    report.stabilization_index = Some(index);
    report.e_coeff = coefficient_formula(s, lf.d(), &report.leading)?;
    report.e_delta = e;
    Ok(report)
}

/// `Σ_n (-1)^n λ(n)` over a finite support.
pub fn euler_characteristic(lf: &LengthFunction) -> Result<BigInt> {
    if !lf.is_finite_support() {
        return Err(Error::InfiniteSupport("both tails must vanish"));
    }
    Ok(lf
        .core()
        .iter()
        .enumerate()
        .map(|(j, v)| v * parity_sign(lf.start() + j as i64))
        .sum())
}

/// `Σ_{j=lo}^{hi} (-1)^j λ(j)`, summing the positive tail in closed form.
pub fn alternating_partial_sum(lf: &LengthFunction, lo: i64, hi: i64) -> Rational {
    if hi < lo {
        return Rational::zero();
    }
    let bound = lf.tail_bound(Side::Positive);
    let split = hi.min(bound - 1);
    let mut total: Rational = (lo..=split)
        .map(|j| from_bigint(lf.evaluate(j) * parity_sign(j)))
        .sum();
    let from = lo.max(bound);
    if from <= hi {
        let d = lf.d() as i64;
        // d is even, so (-1)^{dm+i} = (-1)^i
        for (i, g) in lf.tail_quasi(Side::Positive).polys().iter().enumerate() {
            let i = i as i64;
            let m_lo = div_floor(from - i + d - 1, d).0;
            let m_hi = div_floor(hi - i, d).0;
            let part = faulhaber_sum(g, m_lo, m_hi);
            total += part * int(parity_sign(i));
        }
    }
    total
}

/// `C · Σ_{j=0}^n (-1)^j λ(j) / n^s`, which tends to `e^s` in the given
/// convention: `C = s! d^{2s-1}` for the coefficient convention and
/// `C = s! d^s` for the delta convention.
pub fn limit_estimate(lf: &LengthFunction, s: u32, n: i64, conv: Convention) -> Result<Rational> {
    if s < 1 || n < 1 {
        return Err(Error::Precondition("limit estimate needs s >= 1 and n >= 1".into()));
    }
    let d = BigInt::from(lf.d());
    let power = match conv {
        Convention::Coefficient => 2 * s - 1,
        Convention::Delta => s,
    };
    let c = factorial(s as u64) * num_traits::pow(d, power as usize);
    let sum = alternating_partial_sum(lf, 0, n);
    let denom = num_traits::pow(BigInt::from(n), s as usize);
    Ok(sum * from_bigint(c) / from_bigint(denom))
}

/// Hochster's theta from homologically indexed Tor lengths (`λ_hom(k) =
/// ℓ Tor_k`), via the reindexing `λ(n) = λ_hom(-n)`.
pub fn theta_invariant(tor_lengths: &LengthFunction) -> Result<BigInt> {
    if tor_lengths.d() != 2 {
        return Err(Error::Precondition("theta needs d = 2".into()));
    }
    let lf = tor_lengths.reflect();
    if !lf.pos_tail().is_vanishing() {
        return Err(Error::Precondition("Tor lengths must vanish in negative homological degrees".into()));
    }
    let theta = match lf.neg_tail() {
        Tail::Vanishing => BigInt::zero(),
        Tail::QuasiPoly { qp, .. } => {
            if qp.max_degree() > 0 {
                return Err(Error::NonStabilizing(format!(
                    "Tor lengths grow like a polynomial of degree {} in each parity",
                    qp.max_degree()
                )));
            }
            let a0 = qp.polys()[0].coeff(0);
            let a1 = qp.polys()[1].coeff(0);
            (a0 - a1).to_integer()
        }
    };
    let e1 = multiplicity_neg(&lf, 1, Convention::Delta)?;
    if e1.e_delta != theta {
        return Err(Error::ModelInconsistency(format!(
            "theta {theta} differs from e_1 = {}",
            e1.e_delta
        )));
    }
    Ok(theta)
}

/// `Σ_n (-1)^n ℓ Tor_n` for `ℓ Tor_0, ℓ Tor_1, ...`.
pub fn serre_intersection(tor_lengths: &[BigInt]) -> Result<BigInt> {
    let chi: BigInt = tor_lengths
        .iter()
        .enumerate()
        .map(|(n, v)| v * parity_sign(n as i64))
        .sum();
    let lf = LengthFunction::finite(2, 0, tor_lengths.to_vec())?.reflect();
    let e0 = euler_characteristic(&lf)?;
    if e0 != chi {
        return Err(Error::ModelInconsistency(format!("Serre sum {chi} differs from e^0 = {e0}")));
    }
    Ok(chi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowOutcome {
    /// A window was found and `λ(n) = 0` for every `n >= m0`.
    Confirmed { window_start: i64 },
    WindowNotFound,
    /// A window was found but `λ(first) != 0` for some `first >= m0`.
    Violated { window_start: i64, first: i64 },
}

/// Checks, for the given `m0`, that a run of `d/2` consecutive even (or odd)
/// zeros of `λ` at or after `m0` forces `λ(n) = 0` for all `n >= m0`.
/// Requires `e^{cx} = 0`.
pub fn vanishing_window_check(lf: &LengthFunction, m0: i64, parity: Parity) -> Result<WindowOutcome> {
    let cx = lf.complexity(Side::Positive);
    let e = multiplicity_pos(lf, cx, Convention::Delta)?;
    if !e.e_delta.is_zero() {
        return Err(Error::Precondition(format!("e^{cx} = {} is not zero", e.e_delta)));
    }
    let d = lf.d() as i64;
    let qp = lf.tail_quasi(Side::Positive);
    let bound = lf.tail_bound(Side::Positive);
    let roots = qp
        .polys()
        .iter()
        .map(|g| i64::try_from(g.root_bound()).unwrap_or(i64::MAX / 8))
        .max()
        .unwrap_or(0);
    let horizon = m0.max(bound) + d * (roots + 2) + 2 * d;
    let want = if parity == Parity::Even { 0 } else { 1 };
    let mut first = m0 + (m0 - want).rem_euclid(2);
    let run = d / 2;
    let window = loop {
        if first > horizon {
            return Ok(WindowOutcome::WindowNotFound);
        }
        if (0..run).all(|k| lf.evaluate(first + 2 * k).is_zero()) {
            break first;
        }
        first += 2;
    };
    for n in m0..bound.max(m0) {
        if !lf.evaluate(n).is_zero() {
            return Ok(WindowOutcome::Violated {
                window_start: window,
                first: n,
            });
        }
    }
    let from = m0.max(bound);
    let mut hits = Vec::new();
    for (i, g) in qp.polys().iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let i = i as i64;
        let mut m = div_floor(from - i + d - 1, d).0;
        while g.eval_i64(m).is_zero() {
            m += 1;
        }
        hits.push(d * m + i);
    }
    Ok(match hits.into_iter().min() {
        Some(n) => WindowOutcome::Violated {
            window_start: window,
            first: n,
        },
        None => WindowOutcome::Confirmed { window_start: window },
    })
}

/// Result of [`multiplicity_numeric`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericEstimate {
    pub value: BigInt,
    /// The window of `n` on which `Δ^{s-1}h(n)` was observed constant.
    pub window: (i64, i64),
}

/// `e^s` from raw samples only: `Δ^{s-1}h` on the highest `3d` degrees the
/// samples reach must be constant. No tail model is assumed.
pub fn multiplicity_numeric(samples: &BTreeMap<i64, BigInt>, d: usize, s: u32) -> Result<NumericEstimate> {
    if s == 0 {
        return Err(Error::Precondition("numeric mode needs s >= 1".into()));
    }
    let (Some(&lo), Some(&hi)) = (samples.keys().next(), samples.keys().next_back()) else {
        return Err(Error::Precondition("no samples".into()));
    };
    if samples.len() as i64 != hi - lo + 1 {
        return Err(Error::Precondition("samples must be consecutive".into()));
    }
    let di = d as i64;
    let lf = LengthFunction::finite(d, lo, samples.values().cloned().collect())?;
    // Δ^{s-1}h(n) reads λ on [n, n + (s-1)d + d - 1]
    let top = hi - (s as i64 - 1) * di - di + 1;
    let bottom = top - 3 * di + 1;
    if bottom < lo {
        return Err(Error::Precondition("too few samples for a 3d window".into()));
    }
    let first = delta_h(&lf, s, top);
    for n in bottom..top {
        if delta_h(&lf, s, n) != first {
            return Err(Error::NonStabilizing(format!(
                "Δ^{}h is not constant on [{bottom}, {top}]",
                s - 1
            )));
        }
    }
    if !first.is_integer() {
        return Err(Error::ModelInconsistency("non-integer difference".into()));
    }
    Ok(NumericEstimate {
        value: first.to_integer(),
        window: (bottom, top),
    })
}
