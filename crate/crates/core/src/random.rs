//! Seeded generators for randomized checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;

use crate::algebra::{int, rat, Polynomial, RationalFunction};
use crate::length::{LengthFunction, QuasiPolynomial, Tail};

pub use rand_chacha::ChaCha8Rng as SeededRng;

pub fn seeded(seed: u64) -> SeededRng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Random polynomial of degree at most `max_deg` with small rational
/// coefficients.
pub fn rational_polynomial(rng: &mut impl Rng, max_deg: usize) -> Polynomial {
    let deg = rng.gen_range(0..=max_deg);
    Polynomial::from_coeffs(
        (0..=deg)
            .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=6)))
            .collect(),
    )
}

/// Random polynomial with small integer coefficients.
pub fn integer_polynomial(rng: &mut impl Rng, max_deg: usize) -> Polynomial {
    let deg = rng.gen_range(0..=max_deg);
    Polynomial::from_coeffs((0..=deg).map(|_| int(rng.gen_range(-9..=9))).collect())
}

/// Integer-valued polynomial `Σ c_k C(m, k)` with `c_k >= 0`, hence
/// nonnegative for `m >= 0`, of degree exactly `deg` (or zero for -1).
fn newton_nonnegative(rng: &mut impl Rng, deg: i64) -> Polynomial {
    (0..=deg).fold(Polynomial::zero(), |acc, k| {
        let c = if k == deg { rng.gen_range(1..=4) } else { rng.gen_range(0..=4) };
        &acc + &Polynomial::binomial(k as usize).scale(&int(c))
    })
}

/// Random even generation degree in `{2, 4, 6}`.
pub fn generation_degree(rng: &mut impl Rng) -> usize {
    2 * rng.gen_range(1..=3)
}

/// Random length function with a positive quasi-polynomial tail of
/// complexity `cx` valid from degree 0, a random core on `[-len, -1]` and
/// a vanishing negative tail.
pub fn length_function(rng: &mut impl Rng, d: usize, cx: u32) -> LengthFunction {
    let top = cx as i64 - 1;
    let leader = rng.gen_range(0..d);
    let polys: Vec<Polynomial> = (0..d)
        .map(|i| {
            let deg = if i == leader { top } else { rng.gen_range(-1..=top) };
            newton_nonnegative(rng, deg)
        })
        .collect();
    let len = rng.gen_range(0..=2 * d as i64);
    let explicit: BTreeMap<i64, BigInt> = (-len..0).map(|n| (n, BigInt::from(rng.gen_range(0..=6)))).collect();
    let pos = Tail::QuasiPoly {
        qp: QuasiPolynomial::new(polys).expect("even d"),
        bound: 0,
    };
    LengthFunction::assemble(d, &explicit, pos, Tail::Vanishing).expect("generated data is valid")
}

/// Random length function for a random `d` and complexity in `0..=3`.
pub fn any_length_function(rng: &mut impl Rng) -> LengthFunction {
    let d = generation_degree(rng);
    let cx = rng.gen_range(0..=3);
    length_function(rng, d, cx)
}

/// Random length function that can be Koszul-reduced `cx` times in the
/// positive regime: the series `M(t)/(1-t^d)^cx` for a random polynomial
/// `M` with nonnegative coefficients.
pub fn reducible_length_function(rng: &mut impl Rng, d: usize, cx: u32) -> LengthFunction {
    let deg = rng.gen_range(0..=2 * d);
    let num = Polynomial::from_coeffs((0..=deg).map(|_| int(rng.gen_range(0..=4))).collect());
    let mut step = vec![int(0); d + 1];
    step[0] = int(1);
    step[d] = int(-1);
    let den = (0..cx).fold(Polynomial::one(), |acc, _| &acc * &Polynomial::from_coeffs(step.clone()));
    let f = RationalFunction::new(num, den).expect("denominator is monic at 0");
    let probe = d * (2 * cx as usize + 6) + deg;
    LengthFunction::from_series(&f, d, probe).expect("probe covers the fit")
}

/// Random `p/q` with `q(0) != 0`.
pub fn rational_function(rng: &mut impl Rng) -> RationalFunction {
    let p = integer_polynomial(rng, 6);
    let mut q = integer_polynomial(rng, 4);
    if q.coeff(0) == int(0) {
        q = &q + &Polynomial::one();
    }
    RationalFunction::new(p, q).expect("constant term is nonzero")
}
