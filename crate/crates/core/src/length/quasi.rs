use num_bigint::BigInt;
use num_traits::Signed;

use crate::algebra::{div_floor, int, Polynomial, Rational};
use crate::error::{Error, Result};

/// Period-`d` quasi-polynomial: `n = d*m + i` (floor division, `0 <= i < d`)
/// evaluates to `g_i(m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiPolynomial {
    polys: Vec<Polynomial>,
}

pub(crate) fn check_d(d: usize) -> Result<()> {
    if d < 2 || d % 2 != 0 {
        return Err(Error::InvalidLengthFunction(format!(
            "generation degree must be even and at least 2, got {d}"
        )));
    }
    Ok(())
}

impl QuasiPolynomial {
    pub fn new(polys: Vec<Polynomial>) -> Result<Self> {
        check_d(polys.len())?;
        Ok(Self { polys })
    }

    pub fn zero(d: usize) -> Self {
        Self {
            polys: vec![Polynomial::zero(); d],
        }
    }

    pub fn d(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn into_polys(self) -> Vec<Polynomial> {
        self.polys
    }

    pub fn is_zero(&self) -> bool {
        self.polys.iter().all(Polynomial::is_zero)
    }

    /// Largest degree among the `g_i`; -1 when all vanish.
    pub fn max_degree(&self) -> i64 {
        self.polys.iter().map(Polynomial::degree).max().unwrap_or(-1)
    }

    /// `1 + max deg g_i`, so 0 for the zero quasi-polynomial.
    pub fn complexity(&self) -> u32 {
        (self.max_degree() + 1) as u32
    }

    pub fn eval(&self, n: i64) -> Rational {
        let (m, i) = div_floor(n, self.d() as i64);
        self.polys[i as usize].eval_i64(m)
    }

    /// Quasi-polynomial of `n ↦ self(n + k)`.
    pub fn shifted(&self, k: i64) -> Self {
        let d = self.d() as i64;
        let polys = (0..d)
            .map(|i| {
                let (q, r) = div_floor(i + k, d);
                self.polys[r as usize].shift(&int(q))
            })
            .collect();
        Self { polys }
    }

    /// Quasi-polynomial of `n ↦ self(-n)`.
    pub fn reflected(&self) -> Self {
        let d = self.d();
        let polys = (0..d)
            .map(|i| {
                if i == 0 {
                    self.polys[0].compose_affine(&int(-1), &int(0))
                } else {
                    self.polys[d - i].compose_affine(&int(-1), &int(-1))
                }
            })
            .collect();
        Self { polys }
    }

    pub fn add(&self, other: &Self) -> Self {
        let polys = self.polys.iter().zip(&other.polys).map(|(a, b)| a + b).collect();
        Self { polys }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let polys = self.polys.iter().zip(&other.polys).map(|(a, b)| a - b).collect();
        Self { polys }
    }
}

/// First `m` (going up from `from`) with `g(m) < 0`, if any. Past the Cauchy
/// bound the sign is that of the leading coefficient.
pub(crate) fn first_negative_up(g: &Polynomial, from: i64) -> Option<i64> {
    let bound = i64::try_from(g.root_bound()).unwrap_or(i64::MAX / 4);
    let end = from.max(bound);
    for m in from..=end {
        if g.eval_i64(m).is_negative() {
            return Some(m);
        }
    }
    let (_, lead) = g.leading_term();
    lead.is_negative().then_some(end + 1)
}

/// Mirror of [`first_negative_up`] scanning downwards from `from`.
pub(crate) fn first_negative_down(g: &Polynomial, from: i64) -> Option<i64> {
    let reflected = g.compose_affine(&int(-1), &int(0));
    first_negative_up(&reflected, -from).map(|m| -m)
}

pub(crate) fn as_integer(r: &Rational) -> BigInt {
    debug_assert!(r.is_integer());
    r.to_integer()
}
