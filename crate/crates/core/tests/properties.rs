use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use multiplicity::algebra::{div_floor, from_bigint, int, rat, Polynomial, Rational, RationalFunction};
use multiplicity::catalog;
use multiplicity::difference::{delta, delta_neg, faulhaber_sum, Mode};
use multiplicity::length::{fit_quasipoly, LengthFunction, Side};
use multiplicity::multiplicity::{
    euler_characteristic, limit_estimate, multiplicity_neg, multiplicity_pos, theta_invariant, Convention,
};
use multiplicity::random;
use multiplicity::series::{parse_expression, parse_series};

const CASES: u32 = 200;
const CONVENTIONS: [Convention; 2] = [Convention::Delta, Convention::Coefficient];

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

fn polynomial(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(rational(), 0..=max_deg + 1).prop_map(Polynomial::from_coeffs)
}

fn int_polynomial(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-5i64..=5, 1..=max_deg + 1).prop_map(|c| Polynomial::from_i64(&c))
}

fn rational_function() -> impl Strategy<Value = RationalFunction> {
    let q = prop::collection::vec(-5i64..=5, 0..=4);
    (int_polynomial(6), q, prop_oneof![-3i64..=-1, 1i64..=3]).prop_map(|(p, mut q, q0)| {
        q.insert(0, q0);
        RationalFunction::new(p, Polynomial::from_i64(&q)).unwrap()
    })
}

fn even_d() -> impl Strategy<Value = usize> {
    prop_oneof![Just(2usize), Just(4), Just(6)]
}

/// Random length function drawn through the library's seeded generator.
fn length_function() -> impl Strategy<Value = LengthFunction> {
    any::<u64>().prop_map(|seed| random::any_length_function(&mut random::seeded(seed)))
}

fn e(lf: &LengthFunction, s: u32, conv: Convention) -> BigInt {
    multiplicity_pos(lf, s, conv).unwrap().value().clone()
}

/// Tiny expression language used to generate inputs for the parser.
#[derive(Clone, Debug)]
enum Expr {
    Int(u32),
    T,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn render(&self) -> String {
        match self {
            Expr::Int(v) => v.to_string(),
            Expr::T => "t".into(),
            Expr::Neg(a) => format!("-({})", a.render()),
            Expr::Add(a, b) => format!("({} + {})", a.render(), b.render()),
            Expr::Sub(a, b) => format!("({}-{})", a.render(), b.render()),
            Expr::Mul(a, b) => format!("{}*{}", a.render(), b.render()),
            Expr::Pow(a, k) => format!("({})^{k}", a.render()),
        }
    }

    fn value(&self, x: &Rational) -> Rational {
        match self {
            Expr::Int(v) => int(*v as i64),
            Expr::T => x.clone(),
            Expr::Neg(a) => -a.value(x),
            Expr::Add(a, b) => a.value(x) + b.value(x),
            Expr::Sub(a, b) => a.value(x) - b.value(x),
            Expr::Mul(a, b) => a.value(x) * b.value(x),
            Expr::Pow(a, k) => (0..*k).fold(Rational::one(), |acc, _| acc * a.value(x)),
        }
    }
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![(0u32..20).prop_map(Expr::Int), Just(Expr::T)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..4).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
        ]
    })
}

fn eval_rf(f: &RationalFunction, x: &Rational) -> Rational {
    f.numerator().eval(x) / f.denominator().eval(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn series_times_denominator_is_numerator(f in rational_function(), n_max in 0usize..=200) {
        let series = Polynomial::from_coeffs(f.series_coefficients(n_max));
        let back = &series * f.denominator();
        for k in 0..=n_max {
            prop_assert_eq!(back.coeff(k), f.numerator().coeff(k));
        }
    }

    #[test]
    fn polynomial_shifts_compose(g in polynomial(6), a in rational(), b in rational()) {
        prop_assert_eq!(g.shift(&int(0)), g.clone());
        prop_assert_eq!(g.shift(&a).shift(&b), g.shift(&(a + b)));
    }

    #[test]
    fn printed_expressions_reparse(e in expr()) {
        let text = e.render();
        let ast = parse_expression(&text).unwrap();
        let reparsed = parse_series(&ast.to_string()).unwrap();
        let direct = parse_series(&text).unwrap();
        prop_assert!(reparsed.equivalent(&direct));
        for x in [rat(0, 1), rat(1, 2), rat(-2, 3), rat(3, 1), rat(-5, 7)] {
            prop_assert_eq!(eval_rf(&direct, &x), e.value(&x));
        }
    }

    #[test]
    fn fit_recovers_blockwise_samples(
        d in even_d(),
        polys in prop::collection::vec(polynomial(5), 6),
        lo in -20i64..=0,
    ) {
        let polys = polys[..d].to_vec();
        let hi = lo + d as i64 * 16;
        let samples: BTreeMap<i64, Rational> = (lo..=hi)
            .map(|n| {
                let (m, i) = div_floor(n, d as i64);
                (n, polys[i as usize].eval_i64(m))
            })
            .collect();
        let fit = fit_quasipoly(&samples, d).unwrap();
        prop_assert_eq!(fit.qp.polys(), polys.as_slice());
    }

    #[test]
    fn evaluate_agrees_with_series(
        num in prop::collection::vec(0i64..=4, 1..=9),
        d in even_d(),
        cx in 0u32..=3,
    ) {
        let mut step = vec![0i64; d + 1];
        step[0] = 1;
        step[d] = -1;
        let step = Polynomial::from_i64(&step);
        let den = (0..cx).fold(Polynomial::from_i64(&[1]), |acc, _| &acc * &step);
        let f = RationalFunction::new(Polynomial::from_i64(&num), den).unwrap();
        let probe = d * (2 * cx as usize + 6) + num.len();
        let lf = LengthFunction::from_series(&f, d, probe).unwrap();
        prop_assert!(lf.complexity(Side::Positive) <= cx);
        let coeffs = f.series_coefficients(probe + 60);
        for (n, c) in coeffs.iter().enumerate() {
            prop_assert_eq!(from_bigint(lf.evaluate(n as i64)), c.clone());
        }
        for n in -10..0 {
            prop_assert!(lf.evaluate(n).is_zero());
        }
    }

    #[test]
    fn complexity_is_shift_invariant(lf in length_function(), k in -13i64..=13) {
        let shifted = lf.shift(k);
        prop_assert_eq!(shifted.complexity(Side::Positive), lf.complexity(Side::Positive));
        prop_assert_eq!(shifted.complexity(Side::Negative), lf.complexity(Side::Negative));
        prop_assert_eq!(shifted.shift(-k), lf);
    }

    #[test]
    fn json_round_trip(lf in length_function(), k in -5i64..=5) {
        let lf = lf.shift(k);
        let back = LengthFunction::from_json_str(&lf.to_json_string()).unwrap();
        prop_assert_eq!(back, lf);
    }

    #[test]
    fn shift_alternates_sign(lf in length_function(), extra in 0u32..=1) {
        let s = lf.complexity(Side::Positive) + extra;
        for conv in CONVENTIONS {
            let base = e(&lf, s, conv);
            prop_assert_eq!(e(&lf.shift(1), s, conv), -base.clone());
            prop_assert_eq!(e(&lf.shift(lf.d() as i64), s, conv), base);
        }
    }

    #[test]
    fn vanishes_above_complexity(lf in length_function()) {
        let cx = lf.complexity(Side::Positive);
        for s in [cx + 1, cx + 2] {
            for conv in CONVENTIONS {
                prop_assert!(e(&lf, s, conv).is_zero());
            }
        }
    }

    #[test]
    fn conventions_differ_by_power_of_d(lf in length_function(), extra in 0u32..=1) {
        let s = lf.complexity(Side::Positive).max(1) + extra;
        let rep = multiplicity_pos(&lf, s, Convention::Delta).unwrap();
        prop_assert_eq!(&rep.e_coeff, &(&rep.e_delta * BigInt::from(lf.d()).pow(s - 1)));
    }

    #[test]
    fn split_sums_are_additive(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let d = random::generation_degree(&mut rng);
        let (ca, cb) = ((seed % 4) as u32, ((seed >> 8) % 4) as u32);
        let a = random::length_function(&mut rng, d, ca);
        let b = random::length_function(&mut rng, d, cb);
        let sum = a.pointwise_sum(&b).unwrap();
        let s = ca.max(cb);
        for conv in CONVENTIONS {
            prop_assert_eq!(e(&sum, s, conv), e(&a, s, conv) + e(&b, s, conv));
        }
    }

    #[test]
    fn difference_closed_forms(f in polynomial(6), s in 0u32..=6, d in even_d(), n in -20i64..=20) {
        let d = d as i64;
        let closed = delta(&f, s, d, n, Mode::Closed);
        prop_assert_eq!(delta(&f, s, d, n, Mode::Recursive), closed);
        let neg = delta_neg(&f, s, d, n, Mode::Closed);
        prop_assert_eq!(delta_neg(&f, s, d, n, Mode::Recursive), neg.clone());
        let sign = if s % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(neg, sign * delta(&f, s, d, n + s as i64, Mode::Closed));
    }

    #[test]
    fn top_difference_of_monomial(a in rational(), r in 0usize..=5, lower in polynomial(4), d in even_d(), n in -20i64..=20) {
        prop_assume!(!a.is_zero());
        let lower = Polynomial::from_coeffs(lower.coeffs().iter().take(r).cloned().collect());
        let f = &lower + &Polynomial::monomial(a.clone(), r);
        let d = d as i64;
        let fact: i64 = (1..=r as i64).product();
        let want = a * int(fact) * int(d.pow(r as u32));
        prop_assert_eq!(delta(&f, r as u32, d, n, Mode::Closed), want);
        prop_assert!(delta(&f, r as u32 + 1, d, n, Mode::Closed).is_zero());
    }

    #[test]
    fn faulhaber_matches_brute_force(g in polynomial(5), lo in 0i64..=10, len in 0i64..=190) {
        let hi = lo + len;
        let brute: Rational = (lo..=hi).map(|k| g.eval_i64(k)).sum();
        prop_assert_eq!(faulhaber_sum(&g, lo, hi), brute);
    }

    #[test]
    fn finite_support_sides_agree(start in -10i64..=10, values in prop::collection::vec(0i64..=6, 1..12)) {
        let lf = catalog::finite(start, &values);
        let euler = euler_characteristic(&lf).unwrap();
        prop_assert_eq!(&multiplicity_pos(&lf, 0, Convention::Delta).unwrap().e_delta, &euler);
        prop_assert_eq!(&multiplicity_neg(&lf, 0, Convention::Delta).unwrap().e_delta, &euler);
        let brute: i64 = values.iter().enumerate()
            .map(|(j, v)| if (start + j as i64).rem_euclid(2) == 0 { *v } else { -v })
            .sum();
        prop_assert_eq!(euler, BigInt::from(brute));
    }

    #[test]
    fn theta_is_negative_multiplicity(a in 0i64..=20, b in 0i64..=20) {
        let tor = catalog::tor_periodic(a, b);
        let theta = theta_invariant(&tor).unwrap();
        prop_assert_eq!(&theta, &BigInt::from(a - b));
        let neg = multiplicity_neg(&tor.reflect(), 1, Convention::Delta).unwrap();
        prop_assert_eq!(neg.e_delta, theta);
    }

    #[test]
    fn limit_constants_agree_at_s_one(seed in any::<u64>(), n in 200i64..=5000) {
        let mut rng = random::seeded(seed);
        let d = random::generation_degree(&mut rng);
        let lf = random::length_function(&mut rng, d, 1);
        let target = from_bigint(e(&lf, 1, Convention::Delta));
        let a = limit_estimate(&lf, 1, n, Convention::Delta).unwrap();
        let b = limit_estimate(&lf, 1, n, Convention::Coefficient).unwrap();
        prop_assert_eq!(&a, &b);
        // n * error = d * (core remainder + partial block) - e * (n mod d)
        let gap = if a > target { a - target } else { target - a };
        let mass: i64 = lf.values(lf.start(), lf.end() + d as i64).iter()
            .map(|v| i64::try_from(v).unwrap()).sum();
        let bound = 2 * d as i64 * (mass + 1);
        prop_assert!(gap * int(n) <= int(bound));
    }
}
