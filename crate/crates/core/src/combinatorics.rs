//! Exact combinatorial coefficients shared by the difference and extraction
//! formulas.
//!
//! Results are returned as [`BigInt`] (never negative for the unsigned
//! quantities) so they compose directly with [`Rat`] arithmetic.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Rat, Result};

/// Default size of the memoized Stirling tables.
pub const DEFAULT_STIRLING_CAP: usize = 32;

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    // Each partial product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `k! / (parts_0! parts_1! ...)`; the parts must sum to `k`.
pub fn multinomial(k: usize, parts: &[usize]) -> Result<BigInt> {
    let sum: usize = parts.iter().sum();
    if sum != k {
        return Err(Error::MultinomialParts { k, sum });
    }
    let mut remaining = k;
    let mut acc = BigInt::one();
    for &p in parts {
        acc *= binomial(remaining, p);
        remaining -= p;
    }
    Ok(acc)
}

/// Falling factorial `n (n-1) ... (n-j+1)`, equal to one for `j = 0`.
pub fn falling_factorial(n: &Rat, j: usize) -> Rat {
    (0..j).fold(Rat::one(), |acc, i| acc * (n - Rat::from_integer(BigInt::from(i))))
}

/// Memoized triangles of Stirling numbers `S(j, n)` and `c(j, k)` for indices
/// up to `cap`.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    cap: usize,
    second: Vec<Vec<BigInt>>,
    first: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(cap: usize) -> Self {
        Self {
            cap,
            second: triangle(cap, |_, col| BigInt::from(col)),
            first: triangle(cap, |row, _| BigInt::from(row)),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn second_kind(&self, j: usize, n: usize) -> BigInt {
        lookup(&self.second, self.cap, j, n, |_, col| BigInt::from(col))
    }

    pub fn first_kind_unsigned(&self, j: usize, k: usize) -> BigInt {
        lookup(&self.first, self.cap, j, k, |row, _| BigInt::from(row))
    }
}

// Both kinds follow T(j, n) = T(j-1, n-1) + w(j-1, n) * T(j-1, n) with T(0, 0) = 1;
// `weight(prev_row, col)` supplies w as a function of (j-1, n).
fn triangle(cap: usize, weight: impl Fn(usize, usize) -> BigInt) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(cap + 1);
    rows.push(vec![BigInt::one()]);
    for j in 1..=cap {
        let prev = &rows[j - 1];
        let row = (0..=j)
            .map(|n| {
                let diag = if n >= 1 { prev[n - 1].clone() } else { BigInt::zero() };
                let same = prev.get(n).map_or_else(BigInt::zero, |v| weight(j - 1, n) * v);
                diag + same
            })
            .collect();
        rows.push(row);
    }
    rows
}

fn lookup(
    table: &[Vec<BigInt>],
    cap: usize,
    row: usize,
    col: usize,
    weight: impl Fn(usize, usize) -> BigInt,
) -> BigInt {
    if col > row {
        return BigInt::zero();
    }
    if row <= cap {
        return table[row][col].clone();
    }
    triangle(row, weight)[row][col].clone()
}

fn default_table() -> &'static StirlingTable {
    static TABLE: OnceLock<StirlingTable> = OnceLock::new();
    TABLE.get_or_init(|| StirlingTable::new(DEFAULT_STIRLING_CAP))
}

/// Stirling number of the second kind `S(j, n)`: partitions of a `j`-set into
/// `n` nonempty blocks.
pub fn stirling2(j: usize, n: usize) -> BigInt {
    default_table().second_kind(j, n)
}

/// Unsigned Stirling number of the first kind `c(j, k)`, the coefficients in
/// `n(n-1)...(n-j+1) = sum_k (-1)^(j-k) c(j, k) n^k`.
pub fn stirling1_unsigned(j: usize, k: usize) -> BigInt {
    default_table().first_kind_unsigned(j, k)
}

/// `S(j, n)` through its defining alternating sum
/// `(1/n!) sum_i (-1)^(n-i) C(n, i) i^j`, with `0^0 = 1`.
///
/// Independent of the recurrence used by [`stirling2`].
pub fn stirling2_alternating_sum(j: usize, n: usize) -> BigInt {
    let sum = (0..=n).fold(BigInt::zero(), |acc, i| {
        let term = binomial(n, i) * BigInt::from(i).pow(j as u32);
        if (n - i).is_multiple_of(2) {
            acc + term
        } else {
            acc - term
        }
    });
    sum / factorial(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn pascal(n: usize, k: usize) -> BigInt {
        let mut row = vec![int(1)];
        for _ in 0..n {
            let mut next = vec![int(1); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row.get(k).cloned().unwrap_or_default()
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(3, 1), int(3));
        assert_eq!(binomial(4, 2), pascal(4, 2));
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(2, 5), int(0));
        assert_eq!(binomial(0, 0), int(1));
        for n in 0..=20 {
            for k in 0..=22 {
                assert_eq!(binomial(n, k), pascal(n, k), "C({n},{k})");
            }
        }
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(3, &[3]).unwrap(), int(1));
        assert_eq!(multinomial(3, &[1, 1, 1]).unwrap(), factorial(3));
        assert_eq!(
            multinomial(4, &[2, 1, 1]).unwrap(),
            factorial(4) / (factorial(2) * factorial(1) * factorial(1))
        );
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), int(12));
        assert_eq!(multinomial(0, &[]).unwrap(), int(1));
    }

    #[test]
    fn multinomial_rejects_bad_parts() {
        assert!(matches!(
            multinomial(4, &[2, 1]),
            Err(Error::MultinomialParts { k: 4, sum: 3 })
        ));
    }

    #[test]
    fn stirling2_values() {
        assert_eq!(stirling2(3, 2), int(3));
        assert_eq!(stirling2_alternating_sum(3, 2), int(3));
        for k in 0..=6 {
            assert_eq!(stirling2(k, k), int(1));
        }
        assert_eq!(stirling2(2, 3), int(0));
        assert_eq!(stirling2(0, 0), int(1));
        assert_eq!(stirling2(5, 0), int(0));
    }

    #[test]
    fn stirling2_sum_matches_recurrence() {
        for j in 0..=8 {
            for n in 0..=8 {
                assert_eq!(stirling2(j, n), stirling2_alternating_sum(j, n), "S({j},{n})");
            }
        }
    }

    fn stirling1_oracle(j: usize, k: usize) -> BigInt {
        match (j, k) {
            (0, 0) => int(1),
            (0, _) | (_, 0) => int(0),
            _ => stirling1_oracle(j - 1, k - 1) + int(j as i64 - 1) * stirling1_oracle(j - 1, k),
        }
    }

    #[test]
    fn stirling1_values() {
        assert_eq!(stirling1_unsigned(3, 2), stirling1_oracle(3, 2));
        assert_eq!(stirling1_unsigned(3, 2), int(3));
        assert_eq!(stirling1_unsigned(4, 2), stirling1_oracle(4, 2));
        assert_eq!(stirling1_unsigned(4, 2), int(11));
        for j in 0..=6 {
            assert_eq!(stirling1_unsigned(j, j), int(1));
        }
        assert_eq!(stirling1_unsigned(2, 3), int(0));
    }

    #[test]
    fn falling_factorial_values() {
        let r = |n: i64, d: i64| Rat::new(int(n), int(d));
        assert_eq!(falling_factorial(&r(5, 1), 2), r(20, 1));
        assert_eq!(falling_factorial(&r(7, 3), 0), r(1, 1));
        assert_eq!(falling_factorial(&r(1, 2), 2), r(-1, 4));
    }

    #[test]
    fn falling_factorial_expands_in_stirling_first_kind() {
        for j in 0..=8usize {
            for n in -2..=(j as i64 + 2) {
                let n_rat = Rat::from_integer(int(n));
                let expansion = (0..=j).fold(BigInt::zero(), |acc, k| {
                    let term = stirling1_unsigned(j, k) * int(n).pow(k as u32);
                    if (j - k) % 2 == 0 {
                        acc + term
                    } else {
                        acc - term
                    }
                });
                assert_eq!(falling_factorial(&n_rat, j), Rat::from_integer(expansion));
            }
        }
    }

    #[test]
    fn binomial_is_falling_factorial_over_factorial() {
        for n in 0..=12 {
            for j in 0..=12 {
                let ff = falling_factorial(&Rat::from_integer(int(n as i64)), j);
                assert_eq!(Rat::from_integer(binomial(n, j)), ff / Rat::from_integer(factorial(j)));
            }
        }
    }

    #[test]
    fn values_beyond_cap_use_recurrence() {
        let small = StirlingTable::new(4);
        assert_eq!(small.cap(), 4);
        for j in 0..=10 {
            for n in 0..=10 {
                assert_eq!(small.second_kind(j, n), stirling2(j, n));
                assert_eq!(small.first_kind_unsigned(j, n), stirling1_unsigned(j, n));
            }
        }
    }
}
