#![allow(dead_code)]

use num_bigint::BigInt;
use posipoly::{Monomial, Rat, ScalarPoly, Vector, VectorPoly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rand_rat(rng: &mut impl Rng, num: i64, den: i64) -> Rat {
    q(rng.random_range(-num..=num), rng.random_range(1..=den))
}

pub fn rand_point(rng: &mut impl Rng, n: usize) -> Vector {
    (0..n).map(|_| rand_rat(rng, 12, 6)).collect()
}

pub fn rand_cone_point(rng: &mut impl Rng, n: usize) -> Vector {
    (0..n).map(|_| q(rng.random_range(0..=12), rng.random_range(1..=6))).collect()
}

/// Exponent vector of total degree `k` in `n` variables.
pub fn rand_exps(rng: &mut impl Rng, n: usize, k: usize) -> Vec<u32> {
    let mut e = vec![0u32; n];
    if n == 0 {
        return e;
    }
    for _ in 0..k {
        e[rng.random_range(0..n)] += 1;
    }
    e
}

/// Nonzero coefficient with numerator in `[-num, num]` (or `[1, num]`).
pub fn rand_coeff(rng: &mut impl Rng, num: i64, den: i64, nonneg: bool) -> Rat {
    loop {
        let low = if nonneg { 1 } else { -num };
        let c = q(rng.random_range(low..=num), rng.random_range(1..=den));
        if c != q(0, 1) {
            return c;
        }
    }
}

/// Homogeneous scalar polynomial of degree `k`, never zero.
pub fn rand_homogeneous(rng: &mut impl Rng, n: usize, k: usize, num: i64) -> ScalarPoly {
    loop {
        let terms = (0..rng.random_range(1..=4))
            .map(|_| (Monomial::new(rand_exps(rng, n, k)), rand_coeff(rng, num, 4, false)))
            .collect::<Vec<_>>();
        let p = ScalarPoly::from_terms(n, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Scalar polynomial of degree exactly `deg`.
pub fn rand_scalar(rng: &mut impl Rng, n: usize, deg: usize, nonneg: bool) -> ScalarPoly {
    loop {
        let mut p = ScalarPoly::zero(n);
        for _ in 0..rng.random_range(1..=5) {
            let k = rng.random_range(0..=deg);
            p.add_term(Monomial::new(rand_exps(rng, n, k)), rand_coeff(rng, 9, 4, nonneg));
        }
        p.add_term(Monomial::new(rand_exps(rng, n, deg)), rand_coeff(rng, 9, 4, nonneg));
        if p.degree() == Some(deg) {
            return p;
        }
    }
}

pub fn rand_poly(rng: &mut impl Rng, n: usize, deg: usize, codim: usize, nonneg: bool) -> VectorPoly {
    let mut coords = Vec::with_capacity(codim);
    for _ in 0..codim {
        let d = rng.random_range(0..=deg);
        coords.push(rand_scalar(rng, n, d, nonneg));
    }
    coords[0] = rand_scalar(rng, n, deg, nonneg);
    VectorPoly::new(coords).unwrap()
}

/// `sum c x^e` from explicit data.
pub fn poly_from(n: usize, terms: &[(Vec<u32>, i64, i64)]) -> ScalarPoly {
    ScalarPoly::from_terms(n, terms.iter().map(|(e, a, b)| (Monomial::new(e.clone()), q(*a, *b))))
}

pub fn arb_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_map(|(a, b)| q(a, b))
}

pub fn arb_cone_rat() -> impl Strategy<Value = Rat> {
    (0i64..=12, 1i64..=6).prop_map(|(a, b)| q(a, b))
}

pub fn arb_point(n: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(arb_rat(), n)
}

pub fn arb_cone_point(n: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(arb_cone_rat(), n)
}

pub fn arb_scalar(n: usize, max_deg: u32) -> impl Strategy<Value = ScalarPoly> {
    let term = (proptest::collection::vec(0..=max_deg, n), -9i64..=9, 1i64..=4);
    proptest::collection::vec(term, 0..6).prop_map(move |terms| {
        let mut p = ScalarPoly::zero(n);
        for (mut e, a, b) in terms {
            // Trim exponents until the total degree fits.
            while e.iter().sum::<u32>() > max_deg {
                let i = e.iter().position(|&v| v > 0).unwrap();
                e[i] -= 1;
            }
            p.add_term(Monomial::new(e), q(a, b));
        }
        p
    })
}

pub fn arb_poly(n: usize, max_deg: u32, codim: usize) -> impl Strategy<Value = VectorPoly> {
    proptest::collection::vec(arb_scalar(n, max_deg), codim).prop_map(|c| VectorPoly::new(c).unwrap())
}

/// Polynomial together with its dimensions, `n` in `1..=3`.
pub fn arb_sized_poly(max_deg: u32) -> impl Strategy<Value = VectorPoly> {
    (1usize..=3, 1usize..=2).prop_flat_map(move |(n, m)| arb_poly(n, max_deg, m))
}
