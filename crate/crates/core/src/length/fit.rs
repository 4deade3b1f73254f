use std::collections::BTreeMap;

use crate::algebra::{div_floor, Polynomial, Rational};
use crate::error::{Error, Result};

use super::quasi::{check_d, QuasiPolynomial};

/// A fitted quasi-polynomial and the first degree from which every residue
/// class matches the samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fit {
    pub qp: QuasiPolynomial,
    pub valid_from: i64,
}

/// Fits `λ(d*m + i) = g_i(m)` to the high end of `samples`.
///
/// For each class the candidate degree `k` runs upwards from -1 (the zero
/// polynomial). A candidate is interpolated from the top `k + 1` blocks and
/// accepted once it matches a run of at least `2(k + 2)` consecutive blocks,
/// i.e. at least `k + 2` points beyond those used to interpolate it.
pub fn fit_quasipoly(samples: &BTreeMap<i64, Rational>, d: usize) -> Result<Fit> {
    check_d(d)?;
    let di = d as i64;
    let mut polys = Vec::with_capacity(d);
    let mut valid_from = i64::MIN;
    for i in 0..di {
        let Some(&top) = samples.keys().rev().find(|&&n| n.rem_euclid(di) == i) else {
            return Err(Error::FitFailure {
                class: i as usize,
                best_degree: -1,
            });
        };
        let top_m = div_floor(top, di).0;
        // consecutive blocks ending at the top one, newest first
        let run: Vec<&Rational> = (0..)
            .map_while(|j| samples.get(&(di * (top_m - j) + i)))
            .collect();
        let mut best = (-1i64, 0usize);
        let mut found = None;
        let mut k: i64 = -1;
        while 2 * (k + 2) <= run.len() as i64 {
            let g = if k < 0 {
                Polynomial::zero()
            } else {
                let pts: Vec<Rational> = run[..=k as usize].iter().rev().map(|r| (*r).clone()).collect();
                Polynomial::interpolate_forward(top_m - k, &pts)
            };
            let matched = run
                .iter()
                .enumerate()
                .take_while(|(j, v)| g.eval_i64(top_m - *j as i64) == ***v)
                .count();
            if matched > best.1 {
                best = (k, matched);
            }
            if matched as i64 >= 2 * (k + 2) {
                found = Some((g, top_m - matched as i64 + 1));
                break;
            }
            k += 1;
        }
        let Some((g, m_low)) = found else {
            return Err(Error::FitFailure {
                class: i as usize,
                best_degree: best.0,
            });
        };
        valid_from = valid_from.max(di * (m_low - 1) + i + 1);
        polys.push(g);
    }
    Ok(Fit {
        qp: QuasiPolynomial::new(polys)?,
        valid_from,
    })
}
