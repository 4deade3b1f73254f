//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's multiplicity, difference or series code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Coefficients through `t^n` of `num / Π (1 - t^k)` for `k` in `factors`,
/// by multiplying truncated geometric series.
pub fn expand_products(num: &[(usize, i64)], factors: &[usize], n: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); n + 1];
    for &(e, c) in num {
        if e <= n {
            acc[e] += c;
        }
    }
    for &k in factors {
        // multiply by 1/(1 - t^k): running sum with stride k
        for j in k..=n {
            let prev = acc[j - k].clone();
            acc[j] += prev;
        }
    }
    acc
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `h(n) = Σ_{i<d} (-1)^{n+i} λ(n+i)`.
pub fn herbrand(lambda: &dyn Fn(i64) -> BigInt, d: i64, n: i64) -> BigInt {
    (0..d)
        .map(|i| {
            let v = lambda(n + i);
            if (n + i).rem_euclid(2) == 0 {
                v
            } else {
                -v
            }
        })
        .sum()
}

/// `Δ^k f(n)` with step `d`, straight from the binomial expansion.
pub fn iterated_difference(f: &dyn Fn(i64) -> BigInt, k: u32, d: i64, n: i64) -> BigInt {
    (0..=k as u64)
        .map(|j| {
            let term = binomial(k as u64, j) * f(n + d * j as i64);
            if (k as u64 - j) % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Stabilized value of `Δ^{s-1} h` near `n`: requires the value to be the
/// same at every point of `[n, n + 3d)`.
pub fn stabilized_delta(lambda: &dyn Fn(i64) -> BigInt, d: i64, s: u32, n: i64) -> Option<BigInt> {
    let h = |m: i64| herbrand(lambda, d, m);
    let vals: Vec<BigInt> = (n..n + 3 * d)
        .map(|m| iterated_difference(&h, s - 1, d, m))
        .collect();
    vals.iter().all(|v| *v == vals[0]).then(|| vals[0].clone())
}

/// `d^{s-1} Σ_i (-1)^i Δ^{s-1}_1 (m ↦ λ(dm+i))` at block `m`, the coefficient
/// convention read off from raw values.
pub fn coefficient_value(lambda: &dyn Fn(i64) -> BigInt, d: i64, s: u32, m: i64) -> BigInt {
    let total: BigInt = (0..d)
        .map(|i| {
            let class = |k: i64| lambda(d * k + i);
            let v = iterated_difference(&class, s - 1, 1, m);
            if i % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .sum();
    total * BigInt::from(d).pow(s - 1)
}

/// `Σ_{j=0}^{n} (-1)^j λ(j)` by direct summation.
pub fn alternating_sum(lambda: &dyn Fn(i64) -> BigInt, n: i64) -> BigInt {
    (0..=n)
        .map(|j| if j % 2 == 0 { lambda(j) } else { -lambda(j) })
        .sum()
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}
