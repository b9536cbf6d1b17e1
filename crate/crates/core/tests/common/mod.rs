#![allow(dead_code)]

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::Rng;

use splitcut::corner::CornerRelaxation;
use splitcut::exact::{is_integral, rat, IntVector, Rational, RationalVector};

pub fn rational(rng: &mut StdRng, max_den: i64, span: i64) -> Rational {
    let d = rng.random_range(1..=max_den);
    let p = rng.random_range(-span * d..=span * d);
    rat(p, d)
}

pub fn vector(rng: &mut StdRng, n: usize, max_den: i64, span: i64) -> RationalVector {
    RationalVector::new((0..n).map(|_| rational(rng, max_den, span)).collect())
}

pub fn int_vector(rng: &mut StdRng, n: usize, span: i64) -> IntVector {
    IntVector::new((0..n).map(|_| BigInt::from(rng.random_range(-span..=span))).collect())
}

/// Non-integral anchor in `[0, 1]^n`.
pub fn anchor(rng: &mut StdRng, n: usize) -> RationalVector {
    loop {
        let f = RationalVector::new(
            (0..n)
                .map(|_| {
                    let d = rng.random_range(2..=9);
                    rat(rng.random_range(0..=d), d)
                })
                .collect(),
        );
        if !f.is_integral() {
            return f;
        }
    }
}

/// Integer `alpha` with `alpha f` non-integral.
pub fn alpha_for(rng: &mut StdRng, f: &RationalVector, span: i64) -> IntVector {
    loop {
        let a = int_vector(rng, f.dim(), span);
        if !a.is_zero() && !is_integral(&a.dot(f).unwrap()) {
            return a;
        }
    }
}

fn distinct_columns(rng: &mut StdRng, n: usize, count: usize) -> Vec<RationalVector> {
    let mut out: Vec<RationalVector> = Vec::new();
    while out.len() < count {
        let c = vector(rng, n, 6, 2);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Random relaxation with `n <= max_n` rows and at most `max_cols` columns.
pub fn relaxation(rng: &mut StdRng, max_n: usize, max_cols: usize) -> CornerRelaxation {
    let n = rng.random_range(1..=max_n);
    let total = rng.random_range(1..=max_cols);
    let k_r = rng.random_range(0..=total);
    let f = anchor(rng, n);
    let r = distinct_columns(rng, n, k_r);
    let q = distinct_columns(rng, n, total - k_r);
    CornerRelaxation::new(f, r, q).unwrap()
}

pub fn nonneg(rng: &mut StdRng, len: usize, zero_prob: f64) -> Vec<Rational> {
    (0..len)
        .map(|_| {
            if rng.random_bool(zero_prob) {
                rat(0, 1)
            } else {
                let d = rng.random_range(1..=6);
                rat(rng.random_range(0..=4 * d), d)
            }
        })
        .collect()
}

pub fn frac(a: &Rational) -> Rational {
    a - a.floor()
}

/// Textbook one-row interval gauge.
pub fn interval_gauge(f: &Rational, r: &Rational) -> Rational {
    let t = frac(f);
    let up = r / (rat(1, 1) - &t);
    let down = -r / t;
    if up > down {
        up
    } else {
        down
    }
}
