//! Points of `Q^n` and the componentwise order on them.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::Rat;

/// A point, increment, or value in `Q^n`.
pub type Vector = Vec<Rat>;

pub fn zeros(n: usize) -> Vector {
    vec![Rat::zero(); n]
}

/// The `i`-th standard basis vector of `Q^n`.
pub fn basis(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Rat::from_integer(BigInt::from(1));
    v
}

pub fn from_ints(values: &[i64]) -> Vector {
    values.iter().map(|&v| Rat::from_integer(BigInt::from(v))).collect()
}

pub fn add(a: &[Rat], b: &[Rat]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Rat, a: &[Rat]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn add_scaled(acc: &mut [Rat], c: &Rat, a: &[Rat]) {
    assert_eq!(acc.len(), a.len(), "vector length mismatch");
    for (x, y) in acc.iter_mut().zip(a) {
        *x += c * y;
    }
}

pub fn is_zero(a: &[Rat]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Membership in the positive cone: every coordinate `>= 0`.
pub fn is_nonneg(a: &[Rat]) -> bool {
    !a.iter().any(Signed::is_negative)
}

/// Componentwise `a <= b`.
pub fn le(a: &[Rat], b: &[Rat]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Componentwise positive and negative parts, `a = pos - neg`.
pub fn jordan_parts(a: &[Rat]) -> (Vector, Vector) {
    a.iter()
        .map(|x| {
            if x.is_negative() {
                (Rat::zero(), -x)
            } else {
                (x.clone(), Rat::zero())
            }
        })
        .unzip()
}

/// `(a, b, ...)` with exact rational entries.
pub fn format(a: &[Rat]) -> String {
    let parts: Vec<String> = a.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Entries as exact strings, the JSON representation of a vector.
pub fn to_strings(a: &[Rat]) -> Vec<String> {
    a.iter().map(ToString::to_string).collect()
}

/// Parses a comma-separated list of rationals such as `1/2,-3,0`.
pub fn parse_list(text: &str) -> Result<Vector, String> {
    let text = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<Rat>().map_err(|_| format!("invalid rational `{part}`"))
        })
        .collect()
}
