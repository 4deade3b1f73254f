use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{abs_ceil, format_rational, int, Rational};

/// Dense univariate polynomial over the rationals.
///
/// `coeffs[k]` is the coefficient of `t^k`. The vector never ends in a zero,
/// so the empty vector is the zero polynomial, whose degree is reported as -1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    fn normalize(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self { coeffs: vec![c] }.normalize()
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }.normalize()
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }.normalize()
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Coefficients, constant term first, no trailing zeros.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// `(degree, leading coefficient)`; `(-1, 0)` for the zero polynomial.
    pub fn leading_term(&self) -> (i64, Rational) {
        match self.coeffs.last() {
            Some(c) => (self.degree(), c.clone()),
            None => (-1, Rational::zero()),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> Rational {
        self.eval(&int(x))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `g(a*t + c)`.
    pub fn compose_affine(&self, a: &Rational, c: &Rational) -> Self {
        let inner = Self::from_coeffs(vec![c.clone(), a.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, coeff| &(&acc * &inner) + &Self::constant(coeff.clone()))
    }

    /// `g(t + c)`, expanded.
    pub fn shift(&self, c: &Rational) -> Self {
        self.compose_affine(&Rational::one(), c)
    }

    /// Unit forward difference `g(t+1) - g(t)`.
    pub fn forward_difference(&self) -> Self {
        &self.shift(&Rational::one()) - self
    }

    /// Forward-difference coefficients `Δ^k g(0)`, so that
    /// `g(t) = Σ_k Δ^k g(0) · C(t, k)`.
    pub fn newton_coefficients(&self) -> Vec<Rational> {
        let n = self.coeffs.len();
        let mut values: Vec<Rational> = (0..n as i64).map(|x| self.eval_i64(x)).collect();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push(values[0].clone());
            values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        out
    }

    /// Whether `g(m)` is an integer for every integer `m`.
    pub fn is_integer_valued(&self) -> bool {
        self.newton_coefficients().iter().all(|c| c.is_integer())
    }

    /// The binomial polynomial `C(t, k) = t(t-1)...(t-k+1)/k!`.
    pub fn binomial(k: usize) -> Self {
        let mut p = Self::one();
        for j in 0..k {
            p = &p * &Self::from_coeffs(vec![int(-(j as i64)), Rational::one()]);
        }
        p.scale(&Rational::new(BigInt::one(), super::factorial(k as u64)))
    }

    /// Interpolates the unique polynomial of degree `< values.len()` with
    /// `p(start + j) = values[j]`, using Newton forward differences.
    pub fn interpolate_forward(start: i64, values: &[Rational]) -> Self {
        let mut diffs = values.to_vec();
        let mut acc = Self::zero();
        for k in 0..values.len() {
            acc = &acc + &Self::binomial(k).scale(&diffs[0]);
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        acc.shift(&int(-start))
    }

    /// An integer `B` with every real root of a nonzero polynomial in `(-B, B)`
    /// (Cauchy's bound). Zero for constants.
    pub fn root_bound(&self) -> BigInt {
        let (deg, lead) = self.leading_term();
        if deg <= 0 {
            return BigInt::zero();
        }
        let max_ratio = self.coeffs[..deg as usize]
            .iter()
            .map(|c| abs_ceil(&(c / &lead)))
            .max()
            .unwrap_or_else(BigInt::zero);
        max_ratio + 2
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Highest degree first, in a form the series parser accepts back,
/// e.g. `1/2*t^3 - t + 4`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let coeff = format_rational(&mag);
            match k {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    write!(f, "t")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
