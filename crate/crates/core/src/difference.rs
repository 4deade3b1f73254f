//! Index-`d` difference operators and the summation identities around them.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{binomial, from_bigint, int, Polynomial, Rational};
use crate::length::LengthFunction;

/// Anything that can be evaluated at an integer degree.
pub trait NumericFunction {
    fn at(&self, n: i64) -> Rational;
}

impl NumericFunction for LengthFunction {
    fn at(&self, n: i64) -> Rational {
        from_bigint(self.evaluate(n))
    }
}

/// A polynomial read as a function of the degree `n` itself.
impl NumericFunction for Polynomial {
    fn at(&self, n: i64) -> Rational {
        self.eval_i64(n)
    }
}

impl<F: Fn(i64) -> Rational> NumericFunction for F {
    fn at(&self, n: i64) -> Rational {
        self(n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Recursive,
    Closed,
}

fn signed_binomial(s: u32, i: u32) -> Rational {
    let c = from_bigint(binomial(s as u64, i as u64));
    if i % 2 == 0 {
        c
    } else {
        -c
    }
}

/// `Δ^s f(n)` with `Δf(n) = f(n+d) - f(n)`.
pub fn delta(f: &dyn NumericFunction, s: u32, d: i64, n: i64, mode: Mode) -> Rational {
    match mode {
        Mode::Recursive => {
            if s == 0 {
                f.at(n)
            } else {
                delta(f, s - 1, d, n + d, mode) - delta(f, s - 1, d, n, mode)
            }
        }
        Mode::Closed => (0..=s)
            .map(|i| signed_binomial(s, i) * f.at(n + (s - i) as i64 * d))
            .sum(),
    }
}

/// `Δ^{-s} f(n)` with `Δ^{-1}f(n) = f(n+1) - f(n+d+1)`.
pub fn delta_neg(f: &dyn NumericFunction, s: u32, d: i64, n: i64, mode: Mode) -> Rational {
    match mode {
        Mode::Recursive => {
            if s == 0 {
                f.at(n)
            } else {
                delta_neg(f, s - 1, d, n + 1, mode) - delta_neg(f, s - 1, d, n + d + 1, mode)
            }
        }
        Mode::Closed => (0..=s)
            .map(|i| signed_binomial(s, i) * f.at(n + d * i as i64 + s as i64))
            .sum(),
    }
}

fn pow(base: &BigInt, e: u32) -> BigInt {
    num_traits::pow(base.clone(), e as usize)
}

/// `Σ_{i=0}^s (-1)^i C(s,i) i^n`, with `0^0 = 1`.
pub fn alternating_binomial_moment(s: u32, n: u32) -> BigInt {
    shifted_binomial_moment(s, n, 0, 1)
}

/// `Σ_{i=0}^s (-1)^i C(s,i) (m + d*i)^n`, with `0^0 = 1`.
pub fn shifted_binomial_moment(s: u32, n: u32, m: i64, d: i64) -> BigInt {
    (0..=s)
        .map(|i| {
            let term = binomial(s as u64, i as u64) * pow(&BigInt::from(m + d * i as i64), n);
            if i % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// The polynomial `S` with `S(x) = Σ_{i=0}^{x-1} g(i)`, written in the
/// Newton basis: `S(x) = Σ_k Δ^k g(0) · C(x, k+1)`.
pub fn summation_polynomial(g: &Polynomial) -> Polynomial {
    g.newton_coefficients()
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (k, c)| &acc + &Polynomial::binomial(k + 1).scale(c))
}

/// `Σ_{i=lo}^{hi} g(i)`; zero when `hi < lo`.
pub fn faulhaber_sum(g: &Polynomial, lo: i64, hi: i64) -> Rational {
    if hi < lo {
        return Rational::zero();
    }
    let s = summation_polynomial(g);
    s.eval_i64(hi + 1) - s.eval_i64(lo)
}

/// `Δ^s` of a polynomial in `n` at step `d`, kept symbolic.
pub fn delta_polynomial(f: &Polynomial, s: u32, d: i64) -> Polynomial {
    (0..s).fold(f.clone(), |acc, _| &acc.shift(&int(d)) - &acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn sq() -> Polynomial {
        Polynomial::from_i64(&[0, 0, 1])
    }

    #[test]
    fn delta_examples() {
        for mode in [Mode::Recursive, Mode::Closed] {
            for n in [-4, 0, 7] {
                assert_eq!(delta(&sq(), 2, 3, n, mode), int(18));
                assert_eq!(delta(&sq(), 3, 3, n, mode), int(0));
                assert_eq!(delta(&Polynomial::from_i64(&[5]), 1, 2, n, mode), int(0));
            }
        }
        assert_eq!(delta_polynomial(&sq(), 2, 3), Polynomial::from_i64(&[18]));
    }

    #[test]
    fn delta_neg_examples() {
        let id = Polynomial::t();
        for mode in [Mode::Recursive, Mode::Closed] {
            assert_eq!(delta_neg(&id, 1, 2, 0, mode), int(-2));
            assert_eq!(delta_neg(&sq(), 2, 2, 0, mode), int(8));
            assert_eq!(delta_neg(&sq(), 0, 2, 5, mode), int(25));
        }
        assert_eq!(delta(&sq(), 2, 2, 2, Mode::Closed), int(8));
    }

    #[test]
    fn moments() {
        assert_eq!(alternating_binomial_moment(3, 1), BigInt::zero());
        assert_eq!(alternating_binomial_moment(1, 0), BigInt::zero());
        assert_eq!(alternating_binomial_moment(2, 2), BigInt::from(2));
        assert_eq!(shifted_binomial_moment(3, 2, 5, 2), BigInt::zero());
        assert_eq!(shifted_binomial_moment(1, 0, -4, 7), BigInt::zero());
        assert_eq!(shifted_binomial_moment(2, 2, 0, 3), BigInt::from(18));
    }

    #[test]
    fn faulhaber_examples() {
        assert_eq!(faulhaber_sum(&sq(), 0, 10), int(385));
        assert_eq!(faulhaber_sum(&Polynomial::one(), 3, 7), int(5));
        assert_eq!(faulhaber_sum(&sq(), 4, 3), int(0));
        // Σ_{i=0}^n i^2 - n^3/3 is of degree at most 2: third differences vanish
        let r: Vec<Rational> = (1..=6)
            .map(|n| faulhaber_sum(&sq(), 0, n) - int(n * n * n) * rat(1, 3))
            .collect();
        let third: Vec<Rational> = (0..3)
            .map(|j| &r[j + 3] - int(3) * &r[j + 2] + int(3) * &r[j + 1] - &r[j])
            .collect();
        assert!(third.iter().all(Zero::is_zero));
    }
}
