//! Length functions `λ: ℤ → ℕ` with an explicit core window and declared
//! tails at both infinities.

mod fit;
pub mod json;
mod quasi;

pub use fit::{fit_quasipoly, Fit};
pub use json::{IntValue, LengthFunctionJson};
pub use quasi::QuasiPolynomial;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::{div_floor, from_bigint, to_integer, RationalFunction};
use crate::error::{Error, Result};
use quasi::{as_integer, check_d, first_negative_down, first_negative_up};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Positive,
    Negative,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Positive => "positive",
            Side::Negative => "negative",
        }
    }
}

/// Behaviour of `λ` beyond one end of the core window.
///
/// For a positive tail `bound` is the first degree from which the
/// quasi-polynomial is valid; for a negative tail it is the last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    Vanishing,
    QuasiPoly { qp: QuasiPolynomial, bound: i64 },
}

impl Tail {
    pub fn quasi(&self) -> Option<&QuasiPolynomial> {
        match self {
            Tail::Vanishing => None,
            Tail::QuasiPoly { qp, .. } => Some(qp),
        }
    }

    pub fn is_vanishing(&self) -> bool {
        matches!(self, Tail::Vanishing)
    }

    fn normalized(self) -> Self {
        match self {
            Tail::QuasiPoly { ref qp, .. } if qp.is_zero() => Tail::Vanishing,
            t => t,
        }
    }
}

/// Equality compares the functions on ℤ, not the stored windows.
#[derive(Clone, Debug)]
pub struct LengthFunction {
    d: usize,
    start: i64,
    core: Vec<BigInt>,
    pos: Tail,
    neg: Tail,
}

impl PartialEq for LengthFunction {
    fn eq(&self, other: &Self) -> bool {
        // beyond both windows each side is governed by its tail
        self.d == other.d
            && self.pos.quasi() == other.pos.quasi()
            && self.neg.quasi() == other.neg.quasi()
            && (self.start.min(other.start)..=self.end().max(other.end())).all(|n| self.evaluate(n) == other.evaluate(n))
    }
}

impl Eq for LengthFunction {}

impl LengthFunction {
    /// Strict constructor. The core must cover `[start, start + len)` and
    /// overlap every quasi-polynomial tail on at least `max_degree + 2`
    /// points per residue class, agreeing there exactly.
    pub fn new(d: usize, start: i64, core: Vec<BigInt>, pos: Tail, neg: Tail) -> Result<Self> {
        check_d(d)?;
        if core.is_empty() {
            return Err(Error::InvalidLengthFunction("core window is empty".into()));
        }
        if let Some(j) = core.iter().position(Signed::is_negative) {
            return Err(Error::InvalidLengthFunction(format!(
                "negative length {} at n = {}",
                core[j],
                start + j as i64
            )));
        }
        let lf = Self {
            d,
            start,
            core,
            pos: pos.normalized(),
            neg: neg.normalized(),
        };
        lf.check_tail(Side::Positive)?;
        lf.check_tail(Side::Negative)?;
        Ok(lf)
    }

    fn check_tail(&self, side: Side) -> Result<()> {
        let Tail::QuasiPoly { qp, bound } = self.tail(side) else {
            return Ok(());
        };
        let bound = *bound;
        if qp.d() != self.d {
            return Err(Error::MismatchedDegree(self.d, qp.d()));
        }
        let (a, b) = (self.start, self.end());
        let need = self.d as i64 * (qp.max_degree() + 2);
        let (lo, hi) = match side {
            Side::Positive if bound < a || bound > b - need => {
                return Err(Error::InvalidLengthFunction(format!(
                    "positive tail valid_from {bound} must lie in [{a}, {}] so the core overlaps it on enough points",
                    b - need
                )))
            }
            Side::Negative if bound > b || bound < a + need => {
                return Err(Error::InvalidLengthFunction(format!(
                    "negative tail valid_to {bound} must lie in [{}, {b}] so the core overlaps it on enough points",
                    a + need
                )))
            }
            Side::Positive => (bound, b),
            Side::Negative => (a, bound),
        };
        for n in lo..=hi {
            if qp.eval(n) != from_bigint(self.core_value(n).clone()) {
                return Err(Error::InvalidLengthFunction(format!(
                    "{} tail disagrees with core at n = {n}: {} vs {}",
                    side.name(),
                    qp.eval(n),
                    self.core_value(n)
                )));
            }
        }
        check_integral(self.tail(side), side)?;
        let d = self.d as i64;
        for (i, g) in qp.polys().iter().enumerate() {
            let i = i as i64;
            let bad = match side {
                Side::Positive => first_negative_up(g, div_floor(b - i, d).0 + 1),
                Side::Negative => first_negative_down(g, div_floor(a - 1 - i, d).0),
            };
            if let Some(m) = bad {
                return Err(Error::ModelInconsistency(format!(
                    "{} tail is negative at n = {}",
                    side.name(),
                    d * m + i
                )));
            }
        }
        Ok(())
    }

    /// Builds a length function from any mix of explicit values and tails,
    /// widening the core window with tail values until the strict
    /// constructor's overlap requirement holds. Explicit values take
    /// precedence and are checked against the tails.
    pub fn assemble(d: usize, explicit: &BTreeMap<i64, BigInt>, pos: Tail, neg: Tail) -> Result<Self> {
        check_d(d)?;
        let (pos, neg) = (pos.normalized(), neg.normalized());
        for (side, tail) in [(Side::Positive, &pos), (Side::Negative, &neg)] {
            check_integral(tail, side)?;
        }
        let mut lo = explicit.keys().next().copied();
        let mut hi = explicit.keys().next_back().copied();
        let mut widen = |n: i64| {
            lo = Some(lo.map_or(n, |l| l.min(n)));
            hi = Some(hi.map_or(n, |h| h.max(n)));
        };
        if let Tail::QuasiPoly { qp, bound } = &pos {
            widen(*bound);
            widen(bound + d as i64 * (qp.max_degree() + 2));
        }
        if let Tail::QuasiPoly { qp, bound } = &neg {
            widen(*bound);
            widen(bound - d as i64 * (qp.max_degree() + 2));
        }
        let (lo, hi) = match (lo, hi) {
            (Some(l), Some(h)) => (l, h),
            _ => (0, 0),
        };
        let mut core = Vec::with_capacity((hi - lo + 1) as usize);
        for n in lo..=hi {
            let v = if let Some(v) = explicit.get(&n) {
                v.clone()
            } else if let Some(v) = tail_value(&pos, Side::Positive, n) {
                v
            } else if let Some(v) = tail_value(&neg, Side::Negative, n) {
                v
            } else if pos.is_vanishing() && explicit.keys().next_back().is_none_or(|&h| n > h)
                || neg.is_vanishing() && explicit.keys().next().is_none_or(|&l| n < l)
            {
                BigInt::zero()
            } else {
                return Err(Error::InvalidLengthFunction(format!("no value given for n = {n}")));
            };
            core.push(v);
        }
        Self::new(d, lo, core, pos, neg)
    }

    /// The function vanishing everywhere.
    pub fn zero(d: usize) -> Result<Self> {
        Self::new(d, 0, vec![BigInt::zero()], Tail::Vanishing, Tail::Vanishing)
    }

    /// Finitely supported function with `values[j]` at `start + j`.
    pub fn finite(d: usize, start: i64, values: Vec<BigInt>) -> Result<Self> {
        if values.is_empty() {
            return Self::zero(d);
        }
        Self::new(d, start, values, Tail::Vanishing, Tail::Vanishing)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// First degree of the core window.
    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last degree of the core window.
    pub fn end(&self) -> i64 {
        self.start + self.core.len() as i64 - 1
    }

    pub fn core(&self) -> &[BigInt] {
        &self.core
    }

    pub fn tail(&self, side: Side) -> &Tail {
        match side {
            Side::Positive => &self.pos,
            Side::Negative => &self.neg,
        }
    }

    pub fn pos_tail(&self) -> &Tail {
        &self.pos
    }

    pub fn neg_tail(&self) -> &Tail {
        &self.neg
    }

    /// Tail polynomials on one side; all zero for a vanishing tail.
    pub fn tail_quasi(&self, side: Side) -> QuasiPolynomial {
        self.tail(side).quasi().cloned().unwrap_or_else(|| QuasiPolynomial::zero(self.d))
    }

    /// A degree from which (positive) or up to which (negative) the tail
    /// quasi-polynomial of [`Self::tail_quasi`] describes `λ`.
    pub fn tail_bound(&self, side: Side) -> i64 {
        match (side, self.tail(side)) {
            (_, Tail::QuasiPoly { bound, .. }) => *bound,
            (Side::Positive, Tail::Vanishing) => self.end() + 1,
            (Side::Negative, Tail::Vanishing) => self.start - 1,
        }
    }

    fn core_value(&self, n: i64) -> &BigInt {
        &self.core[(n - self.start) as usize]
    }

    /// `λ(n)`; total on ℤ.
    pub fn evaluate(&self, n: i64) -> BigInt {
        if n < self.start {
            tail_value(&self.neg, Side::Negative, n).unwrap_or_default()
        } else if n > self.end() {
            tail_value(&self.pos, Side::Positive, n).unwrap_or_default()
        } else {
            self.core_value(n).clone()
        }
    }

    pub fn is_finite_support(&self) -> bool {
        self.pos.is_vanishing() && self.neg.is_vanishing()
    }

    pub fn complexity(&self, side: Side) -> u32 {
        self.tail(side).quasi().map_or(0, QuasiPolynomial::complexity)
    }

    /// Expands `f` through `t^probe` and fits the positive tail.
    pub fn from_series(f: &RationalFunction, d: usize, probe: usize) -> Result<Self> {
        check_d(d)?;
        let coeffs = f.series_coefficients(probe);
        let mut samples = BTreeMap::new();
        let mut values = BTreeMap::new();
        for (n, c) in coeffs.into_iter().enumerate() {
            let v = match to_integer(&c) {
                Some(v) if !v.is_negative() => v,
                _ => {
                    return Err(Error::InvalidLengthFunction(format!(
                        "series coefficient of t^{n} is {c}, not a nonnegative integer"
                    )))
                }
            };
            values.insert(n as i64, v);
            samples.insert(n as i64, c);
        }
        let fit = fit_quasipoly(&samples, d)?;
        // the fit already accounts for every later coefficient
        values.retain(|&n, _| n < fit.valid_from);
        let pos = Tail::QuasiPoly {
            qp: fit.qp,
            bound: fit.valid_from,
        };
        Self::assemble(d, &values, pos, Tail::Vanishing)
    }

    /// `n ↦ λ(n + k)`.
    pub fn shift(&self, k: i64) -> Self {
        let move_tail = |t: &Tail| match t {
            Tail::Vanishing => Tail::Vanishing,
            Tail::QuasiPoly { qp, bound } => Tail::QuasiPoly {
                qp: qp.shifted(k),
                bound: bound - k,
            },
        };
        Self {
            d: self.d,
            start: self.start - k,
            core: self.core.clone(),
            pos: move_tail(&self.pos),
            neg: move_tail(&self.neg),
        }
    }

    /// `n ↦ λ(-n)`; swaps the two tails.
    pub fn reflect(&self) -> Self {
        let flip = |t: &Tail| match t {
            Tail::Vanishing => Tail::Vanishing,
            Tail::QuasiPoly { qp, bound } => Tail::QuasiPoly {
                qp: qp.reflected(),
                bound: -bound,
            },
        };
        let mut core = self.core.clone();
        core.reverse();
        Self {
            d: self.d,
            start: -self.end(),
            core,
            pos: flip(&self.neg),
            neg: flip(&self.pos),
        }
    }

    pub fn pointwise_sum(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    /// `λ1 - λ2`, rejected where it would be negative.
    pub fn pointwise_difference(&self, other: &Self) -> Result<Self> {
        if let Some(n) = self.first_below(other) {
            return Err(Error::NegativeReduction {
                regime: "nonnegative",
                n,
            });
        }
        self.combine(other, true)
    }

    /// First `n` with `self(n) < other(n)`, found exactly on the core
    /// windows and symbolically on the tails.
    pub fn first_below(&self, other: &Self) -> Option<i64> {
        let lo = self.start.min(other.start);
        let hi = self.end().max(other.end());
        let d = self.d as i64;
        let pos_from = self.tail_bound(Side::Positive).max(other.tail_bound(Side::Positive)).max(hi + 1);
        let neg_to = self.tail_bound(Side::Negative).min(other.tail_bound(Side::Negative)).min(lo - 1);
        for n in neg_to + 1..pos_from {
            if self.evaluate(n) < other.evaluate(n) {
                return Some(n);
            }
        }
        let up = self.tail_quasi(Side::Positive).sub(&other.tail_quasi(Side::Positive));
        let down = self.tail_quasi(Side::Negative).sub(&other.tail_quasi(Side::Negative));
        let mut hits = Vec::new();
        for i in 0..d {
            let m0 = div_floor(pos_from - i + d - 1, d).0;
            if let Some(m) = first_negative_up(&up.polys()[i as usize], m0) {
                hits.push(d * m + i);
            }
        }
        if let Some(n) = hits.into_iter().min() {
            return Some(n);
        }
        let mut hits = Vec::new();
        for i in 0..d {
            let m0 = div_floor(neg_to - i, d).0;
            if let Some(m) = first_negative_down(&down.polys()[i as usize], m0) {
                hits.push(d * m + i);
            }
        }
        hits.into_iter().max()
    }

    fn combine(&self, other: &Self, subtract: bool) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::MismatchedDegree(self.d, other.d));
        }
        let join = |side: Side| {
            let (a, b) = (self.tail(side), other.tail(side));
            if a.is_vanishing() && b.is_vanishing() {
                return Tail::Vanishing;
            }
            let (qa, qb) = (self.tail_quasi(side), other.tail_quasi(side));
            let qp = if subtract { qa.sub(&qb) } else { qa.add(&qb) };
            let (ba, bb) = (self.tail_bound(side), other.tail_bound(side));
            let bound = match side {
                Side::Positive => ba.max(bb),
                Side::Negative => ba.min(bb),
            };
            Tail::QuasiPoly { qp, bound }
        };
        let (pos, neg) = (join(Side::Positive), join(Side::Negative));
        let lo = self.start.min(other.start).min(self.tail_bound(Side::Negative)).min(other.tail_bound(Side::Negative));
        let hi = self.end().max(other.end()).max(self.tail_bound(Side::Positive)).max(other.tail_bound(Side::Positive));
        let explicit = (lo..=hi)
            .map(|n| {
                let (x, y) = (self.evaluate(n), other.evaluate(n));
                (n, if subtract { x - y } else { x + y })
            })
            .collect();
        Self::assemble(self.d, &explicit, pos, neg)
    }

    /// Values on `[lo, hi]`.
    pub fn values(&self, lo: i64, hi: i64) -> Vec<BigInt> {
        (lo..=hi).map(|n| self.evaluate(n)).collect()
    }
}

fn check_integral(tail: &Tail, side: Side) -> Result<()> {
    for (i, g) in tail.quasi().map(QuasiPolynomial::polys).unwrap_or_default().iter().enumerate() {
        if !g.is_integer_valued() {
            return Err(Error::ModelInconsistency(format!(
                "{} tail polynomial g_{i} = {g} is not integer-valued",
                side.name()
            )));
        }
    }
    Ok(())
}

fn tail_value(tail: &Tail, side: Side, n: i64) -> Option<BigInt> {
    match tail {
        Tail::QuasiPoly { qp, bound } => {
            let inside = match side {
                Side::Positive => n >= *bound,
                Side::Negative => n <= *bound,
            };
            inside.then(|| as_integer(&qp.eval(n)))
        }
        Tail::Vanishing => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Polynomial;
    use crate::series::parse_series;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn xy(r: i64) -> LengthFunction {
        let qp = QuasiPolynomial::new(vec![Polynomial::from_i64(&[r]), Polynomial::zero()]).unwrap();
        let explicit = [(0, BigInt::zero()), (1, BigInt::zero())].into_iter().collect();
        LengthFunction::assemble(2, &explicit, Tail::QuasiPoly { qp, bound: 2 }, Tail::Vanishing).unwrap()
    }

    #[test]
    fn evaluate_on_fixtures() {
        let s4 = LengthFunction::from_series(&parse_series("(1-t^4)/((1-t)*(1-t^2)*(1-t^3))").unwrap(), 6, 120)
            .unwrap();
        assert_eq!(s4.evaluate(7), BigInt::from(5));
        assert_eq!(s4.evaluate(100_003), BigInt::from(4 * 16_667 + 1));
        let z = LengthFunction::zero(2).unwrap();
        assert!([-50, 0, 50].iter().all(|&n| z.evaluate(n).is_zero()));
        let jst = LengthFunction::from_series(&parse_series("t^2/(1-t^2)^2").unwrap(), 2, 40).unwrap();
        assert_eq!(jst.evaluate(10), BigInt::from(5));
        assert_eq!(jst.evaluate(1001), BigInt::zero());
    }

    #[test]
    fn from_series_examples() {
        let lf = LengthFunction::from_series(&parse_series("1/(1-t)^2").unwrap(), 2, 40).unwrap();
        assert_eq!(lf.tail_bound(Side::Positive), 0);
        assert_eq!(
            lf.tail_quasi(Side::Positive).polys(),
            &[Polynomial::from_i64(&[1, 2]), Polynomial::from_i64(&[2, 2])]
        );

        let s4 = LengthFunction::from_series(&parse_series("(1-t^4)/((1-t)*(1-t^2)*(1-t^3))").unwrap(), 6, 120)
            .unwrap();
        let table = [[1, 4], [1, 4], [2, 4], [3, 4], [3, 4], [4, 4]];
        for (g, want) in s4.tail_quasi(Side::Positive).polys().iter().zip(table) {
            assert_eq!(g, &Polynomial::from_i64(&want));
        }
        assert_eq!(s4.complexity(Side::Positive), 2);

        let cube = LengthFunction::from_series(&parse_series("t^3").unwrap(), 2, 10).unwrap();
        assert!(cube.is_finite_support());
        assert_eq!(cube.evaluate(3), BigInt::from(1));
    }

    #[test]
    fn shift_and_reflect() {
        let lf = xy(3);
        assert_eq!(lf.shift(0), lf);
        assert!(lf.shift(1).evaluate(6).is_zero());
        assert_eq!(lf.shift(1).evaluate(7), BigInt::from(3));
        assert_eq!(lf.shift(1).shift(-1), lf);
        let r = lf.reflect();
        for n in -20..20 {
            assert_eq!(r.evaluate(n), lf.evaluate(-n));
        }
        assert_eq!(r.reflect(), lf);
    }

    #[test]
    fn sums_and_differences() {
        let s = xy(1).pointwise_sum(&xy(2)).unwrap();
        for n in -10..40 {
            assert_eq!(s.evaluate(n), xy(3).evaluate(n));
        }
        let z = LengthFunction::zero(2).unwrap();
        let same = xy(3).pointwise_sum(&z).unwrap();
        for n in -10..40 {
            assert_eq!(same.evaluate(n), xy(3).evaluate(n));
        }
        let a = LengthFunction::finite(2, 0, big(&[1, 2])).unwrap();
        let b = LengthFunction::finite(2, 5, big(&[7])).unwrap();
        let u = a.pointwise_sum(&b).unwrap();
        assert_eq!(u.values(-1, 6), big(&[0, 1, 2, 0, 0, 0, 7, 0]));
        assert!(matches!(
            xy(1).pointwise_difference(&xy(2)),
            Err(Error::NegativeReduction { n: 2, .. })
        ));
        assert!(matches!(
            xy(1).pointwise_sum(&LengthFunction::zero(4).unwrap()),
            Err(Error::MismatchedDegree(2, 4))
        ));
    }

    #[test]
    fn constructor_rejections() {
        let qp = QuasiPolynomial::new(vec![Polynomial::from_i64(&[1]), Polynomial::from_i64(&[1])]).unwrap();
        let tail = |bound| Tail::QuasiPoly { qp: qp.clone(), bound };
        // disagreement on the overlap
        let bad = LengthFunction::new(2, 0, big(&[0, 1, 1, 2, 1, 1]), tail(1), Tail::Vanishing);
        assert!(matches!(bad, Err(Error::InvalidLengthFunction(_))));
        // overlap too short
        let short = LengthFunction::new(2, 0, big(&[0, 1, 1]), tail(1), Tail::Vanishing);
        assert!(matches!(short, Err(Error::InvalidLengthFunction(_))));
        assert!(LengthFunction::new(2, 0, big(&[0, 1, 1, 1, 1, 1]), tail(1), Tail::Vanishing).is_ok());
        assert!(LengthFunction::new(3, 0, big(&[0]), Tail::Vanishing, Tail::Vanishing).is_err());
        assert!(LengthFunction::new(2, 0, big(&[-1]), Tail::Vanishing, Tail::Vanishing).is_err());
        // eventually negative tail
        let down = QuasiPolynomial::new(vec![Polynomial::from_i64(&[3, -1]), Polynomial::zero()]).unwrap();
        let explicit = BTreeMap::new();
        let r = LengthFunction::assemble(2, &explicit, Tail::QuasiPoly { qp: down, bound: 0 }, Tail::Vanishing);
        assert!(matches!(r, Err(Error::ModelInconsistency(_))));
        // non-integer tail
        let half = QuasiPolynomial::new(vec![
            Polynomial::from_coeffs(vec![crate::algebra::int(0), crate::algebra::rat(1, 2)]),
            Polynomial::zero(),
        ])
        .unwrap();
        let r = LengthFunction::assemble(2, &explicit, Tail::QuasiPoly { qp: half, bound: 0 }, Tail::Vanishing);
        assert!(matches!(r, Err(Error::ModelInconsistency(_))));
    }

    #[test]
    fn complexity_counts() {
        let ci = LengthFunction::from_series(&parse_series("1/(1-t)^3").unwrap(), 2, 60).unwrap();
        assert_eq!(ci.complexity(Side::Positive), 3);
        assert_eq!(ci.complexity(Side::Negative), 0);
        assert_eq!(LengthFunction::finite(2, 0, big(&[1, 4])).unwrap().complexity(Side::Positive), 0);
        assert_eq!(ci.shift(5).complexity(Side::Positive), 3);
    }
}
