//! Ready-made length functions for the standard examples.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::algebra::Polynomial;
use crate::error::Result;
use crate::length::{LengthFunction, QuasiPolynomial, Tail};
use crate::series::parse_series;

fn constants(values: &[i64]) -> QuasiPolynomial {
    QuasiPolynomial::new(values.iter().map(|&v| Polynomial::from_i64(&[v])).collect()).expect("even period")
}

fn explicit(values: &[(i64, i64)]) -> BTreeMap<i64, BigInt> {
    values.iter().map(|&(n, v)| (n, BigInt::from(v))).collect()
}

/// `k[x]/(x^2)`, `X = k`: `λ(n) = 1` for `n >= 1`, zero otherwise; `d = 2`.
pub fn hypersurface() -> LengthFunction {
    LengthFunction::assemble(
        2,
        &explicit(&[(0, 0)]),
        Tail::QuasiPoly {
            qp: constants(&[1, 1]),
            bound: 1,
        },
        Tail::Vanishing,
    )
    .expect("valid")
}

/// `k[x,y]/(xy^r)`, `X = A/(x)`: `λ(n) = r` for even `n >= 2`, zero
/// otherwise; `d = 2`.
pub fn xy(r: i64) -> LengthFunction {
    LengthFunction::assemble(
        2,
        &explicit(&[(0, 0), (1, 0)]),
        Tail::QuasiPoly {
            qp: constants(&[r, 0]),
            bound: 2,
        },
        Tail::Vanishing,
    )
    .expect("valid")
}

pub fn jst_series(c: u32) -> String {
    format!("t^{c}/(1-t^2)^{c}")
}

/// Series `t^c/(1-t^2)^c`, `d = 2`.
pub fn jst(c: u32) -> Result<LengthFunction> {
    LengthFunction::from_series(&parse_series(&jst_series(c))?, 2, 8 * c as usize + 40)
}

pub const S4_SERIES: &str = "(1-t^4)/((1-t)*(1-t^2)*(1-t^3))";

/// Cohomology of the symmetric group on four letters over `F_2`, `d = 6`.
pub fn s4() -> Result<LengthFunction> {
    LengthFunction::from_series(&parse_series(S4_SERIES)?, 6, 120)
}

pub fn quantum_ci_series(c: u32) -> String {
    format!("1/(1-t)^{c}")
}

/// Series `1/(1-t)^c`, `d = 2`.
pub fn quantum_ci(c: u32) -> Result<LengthFunction> {
    LengthFunction::from_series(&parse_series(&quantum_ci_series(c))?, 2, 8 * c as usize + 40)
}

/// Homologically indexed Tor lengths: `a` in even degrees `k >= 0`, `b` in
/// odd degrees `k >= 1`, zero in negative degrees.
pub fn tor_periodic(a: i64, b: i64) -> LengthFunction {
    LengthFunction::assemble(
        2,
        &explicit(&[(-1, 0), (0, a)]),
        Tail::QuasiPoly {
            qp: constants(&[a, b]),
            bound: 0,
        },
        Tail::Vanishing,
    )
    .expect("valid")
}

/// `λ(n) = r` for every even `n` and zero for odd `n`, on all of ℤ.
pub fn two_sided(r: i64) -> LengthFunction {
    LengthFunction::assemble(
        2,
        &BTreeMap::new(),
        Tail::QuasiPoly {
            qp: constants(&[r, 0]),
            bound: 0,
        },
        Tail::QuasiPoly {
            qp: constants(&[r, 0]),
            bound: -1,
        },
    )
    .expect("valid")
}

/// Finite support: `values[j]` at `start + j`.
pub fn finite(start: i64, values: &[i64]) -> LengthFunction {
    LengthFunction::finite(2, start, values.iter().map(|&v| BigInt::from(v)).collect()).expect("valid")
}
