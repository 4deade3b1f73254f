use std::fmt;

use num_traits::{One, Zero};

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// A quotient `p/q` of polynomials that expands as a power series at `t = 0`.
///
/// Canonical form: common powers of `t` are cancelled and the denominator's
/// constant term is scaled to 1. No polynomial gcd is taken, so two equal
/// functions may differ syntactically; use [`RationalFunction::equivalent`]
/// for value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

fn t_order(p: &Polynomial) -> usize {
    p.coeffs().iter().take_while(|c| c.is_zero()).count()
}

fn drop_low(p: &Polynomial, k: usize) -> Polynomial {
    Polynomial::from_coeffs(p.coeffs()[k.min(p.coeffs().len())..].to_vec())
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (num, den) = if num.is_zero() {
            (num, Polynomial::one())
        } else {
            let k = t_order(&num).min(t_order(&den));
            (drop_low(&num, k), drop_low(&den, k))
        };
        let c0 = den.coeff(0);
        if c0.is_zero() {
            return Err(Error::NotExpandable);
        }
        let inv = Rational::one() / c0;
        Ok(Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::new(num, &self.den * &other.den).expect("product of expandable denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den)
            .expect("product of expandable denominators")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::polynomial(Polynomial::one()), |acc, _| acc.mul(self))
    }

    /// Value equality by cross-multiplication.
    pub fn equivalent(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Coefficients `c_0..=c_{n_max}` of the expansion at `t = 0`.
    pub fn series_coefficients(&self, n_max: usize) -> Vec<Rational> {
        // den(0) = 1, so c_n = p_n - Σ_{k≥1} q_k c_{n-k}
        let q = self.den.coeffs();
        let mut out: Vec<Rational> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut c = self.num.coeff(n);
            for (k, qk) in q.iter().enumerate().skip(1).take(n) {
                if !qk.is_zero() {
                    c -= qk * &out[n - k];
                }
            }
            out.push(c);
        }
        out
    }
}

/// Power-series coefficients of `f` up to and including `t^n_max`.
pub fn series_coefficients(f: &RationalFunction, n_max: usize) -> Vec<Rational> {
    f.series_coefficients(n_max)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
