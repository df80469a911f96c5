//! Homogeneous components of a polynomial mapping, recovered from values of
//! the mapping alone, and the finite-difference degree criterion.
//!
//! Three extraction routes are provided and are expected to agree exactly
//! with [`VectorPoly::homogeneous_split`]:
//!
//! - interpolation at the nodes `0, x, 2x, ..., mx` through the inverse
//!   Vandermonde matrix,
//! - pure differences at the origin weighted by Stirling numbers of the first
//!   kind,
//! - formal scaling: the lowest `t`-coefficient of a difference taken with
//!   increments `t x`, which is the exact form of the limit as `t -> 0`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{factorial, stirling1_unsigned};
use crate::diff::{pure_diff_at, symbolic_pure_diff};
use crate::poly::{Monomial, ScalarPoly};
use crate::report::{DiffReport, SamplerConfig, Verdict, Witness, WitnessSet};
use crate::tensor::sorted_tuples;
use crate::vector::{self, Vector};
use crate::{Error, Mapping, Rat, Result, SymTensor, VectorPoly};

fn int(v: usize) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Inverse of the `(m+1) x (m+1)` Vandermonde matrix `V[j][k] = j^k` (with
/// `0^0 = 1`), indexed as `alpha[k][j]` so that a polynomial
/// `q(t) = sum c_k t^k` of degree at most `m` has `c_k = sum_j alpha[k][j] q(j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaMatrix {
    m: usize,
    entries: Vec<Vec<Rat>>,
}

impl AlphaMatrix {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, k: usize, j: usize) -> &Rat {
        &self.entries[k][j]
    }

    pub fn row(&self, k: usize) -> &[Rat] {
        &self.entries[k]
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.entries
    }
}

/// `V[j][k] = j^k`.
pub fn vandermonde(m: usize) -> Vec<Vec<Rat>> {
    (0..=m)
        .map(|j| (0..=m).map(|k| num_traits::pow(int(j), k)).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).fold(Rat::zero(), |acc, i| acc + &row[i] * &b[i][c]))
                .collect()
        })
        .collect()
}

/// Exact Gauss-Jordan inverse; `None` when the matrix is singular.
pub fn invert(matrix: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<Rat>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = Rat::one() / &aug[col][col];
        for v in aug[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (v, p) in aug[r].iter_mut().zip(&pivot_row) {
                    *v -= &factor * p;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn vandermonde_inverse(m: usize) -> AlphaMatrix {
    let v = vandermonde(m);
    let entries = invert(&v).expect("Vandermonde matrix on distinct nodes is invertible");
    debug_assert!(is_identity(&mat_mul(&entries, &v)));
    AlphaMatrix { m, entries }
}

pub fn is_identity(a: &[Vec<Rat>]) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.len() == a.len()
            && row
                .iter()
                .enumerate()
                .all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
    })
}

/// `P_k(x) = sum_j alpha[k][j] f(j x)` for `k = 0..=m`.
pub fn components_by_interpolation<M: Mapping + ?Sized>(f: &M, m: usize, x: &[Rat]) -> Result<Vec<Vector>> {
    Error::check_dim(f.nvars(), x.len())?;
    let alpha = vandermonde_inverse(m);
    let samples = (0..=m)
        .map(|j| f.eval(&vector::scale(&int(j), x)))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..=m)
        .map(|k| {
            let mut acc = vector::zeros(f.codim());
            for (a, value) in alpha.row(k).iter().zip(&samples) {
                vector::add_scaled(&mut acc, a, value);
            }
            acc
        })
        .collect())
}

/// `P_k(x) = sum_{j=k}^m (1/j!) c(j, k) (-1)^(j-k) diff^j f(0; x^j)`.
pub fn components_by_stirling<M: Mapping + ?Sized>(f: &M, m: usize, x: &[Rat]) -> Result<Vec<Vector>> {
    Error::check_dim(f.nvars(), x.len())?;
    let origin = vector::zeros(f.nvars());
    let diffs = (0..=m)
        .map(|j| pure_diff_at(f, &origin, x, j))
        .collect::<Result<Vec<_>>>()?;
    Ok(stirling_combination(&diffs, f.codim()))
}

/// Rearranges differences `d_j = diff^j f(0; x^j)`, `j = 0..=m`, into the
/// coefficients of the powers of `n` in `f(n x) = sum_j C(n, j) d_j`.
pub(crate) fn stirling_combination(diffs: &[Vector], codim: usize) -> Vec<Vector> {
    let m = diffs.len().saturating_sub(1);
    (0..diffs.len())
        .map(|k| {
            let mut acc = vector::zeros(codim);
            for (j, d) in diffs.iter().enumerate().skip(k).take(m + 1 - k) {
                let mut w = Rat::new(stirling1_unsigned(j, k), factorial(j));
                if (j - k) % 2 == 1 {
                    w = -w;
                }
                vector::add_scaled(&mut acc, &w, d);
            }
            acc
        })
        .collect()
}

/// Component `k` of `p` from the `t^k` coefficient of `diff^k P(0; (t x)^k)`
/// divided by `k!`, computed in the ring `[t | x]`.
pub fn component_by_scaling(p: &VectorPoly, k: usize) -> Result<VectorPoly> {
    let n = p.nvars();
    let total = n + 1;
    let mut diff = VectorPoly::zero(total, p.codim());
    for i in 0..=k {
        let args: Vec<ScalarPoly> = (0..n)
            .map(|v| (&ScalarPoly::var(total, 0) * &ScalarPoly::var(total, v + 1)).scale(&int(i)))
            .collect();
        let mut weight = Rat::from_integer(crate::combinatorics::binomial(k, i));
        if (k - i) % 2 == 1 {
            weight = -weight;
        }
        diff = &diff + &p.compose(&args)?.scale(&weight);
    }
    let norm = Rat::one() / Rat::from_integer(factorial(k));
    let coords = diff
        .coords()
        .iter()
        .map(|c| {
            let terms = c
                .terms()
                .filter(|(m, _)| m.exps()[0] as usize == k)
                .map(|(m, v)| (Monomial::new(m.exps()[1..].to_vec()), v * &norm));
            ScalarPoly::from_terms(n, terms)
        })
        .collect();
    VectorPoly::new(coords)
}

/// The symmetric form of component `k` from the `t^k` coefficient of
/// `diff^k P(0; t x_1, ..., t x_k)` divided by `k!`, computed in the ring
/// `[t | x_1 | ... | x_k]` and read off on basis tuples.
pub fn tensor_by_scaling(p: &VectorPoly, k: usize) -> Result<SymTensor> {
    if k == 0 {
        return Err(Error::InvalidArgument("tensor_by_scaling needs k >= 1".into()));
    }
    if k >= 64 {
        return Err(Error::InvalidArgument(format!("order {k} is too large")));
    }
    let n = p.nvars();
    let total = 1 + n * k;
    let t = ScalarPoly::var(total, 0);
    let mut diff = VectorPoly::zero(total, p.codim());
    for mask in 0u64..(1u64 << k) {
        let args: Vec<ScalarPoly> = (0..n)
            .map(|i| {
                let mut arg = ScalarPoly::zero(total);
                for s in 0..k {
                    if mask >> s & 1 == 1 {
                        arg = &arg + &(&t * &ScalarPoly::var(total, 1 + s * n + i));
                    }
                }
                arg
            })
            .collect();
        let ones = mask.count_ones() as usize;
        let weight = if (k - ones).is_multiple_of(2) { Rat::one() } else { -Rat::one() };
        diff = &diff + &p.compose(&args)?.scale(&weight);
    }
    let norm = Rat::one() / Rat::from_integer(factorial(k));
    let mut out = SymTensor::zero(k, n, p.codim());
    for tuple in sorted_tuples(n, k) {
        let mut exps = vec![0u32; total];
        exps[0] = k as u32;
        for (s, &i) in tuple.iter().enumerate() {
            exps[1 + s * n + i] += 1;
        }
        let monomial = Monomial::new(exps);
        let value: Vector = diff.coords().iter().map(|c| c.coeff(&monomial) * &norm).collect();
        out.set(&tuple, value)?;
    }
    Ok(out)
}

/// Mazur-Orlicz degree test: `f` is a polynomial of degree at most `m` iff
/// `diff^(m+1) f(x; h^(m+1)) = 0` for all `x, h`.
///
/// Polynomial-backed mappings are decided exactly by expanding the
/// difference symbolically; a failure is illustrated by a concrete witness.
/// Opaque mappings are sampled at `cfg.samples` seeded pairs `(x, h)`, so a
/// pass is only probabilistic while a failure is certain.
pub fn degree_test<M: Mapping + ?Sized>(f: &M, m: usize, cfg: &SamplerConfig) -> Result<DiffReport> {
    cfg.validate()?;
    let order = m + 1;
    if let Some(p) = f.as_polynomial() {
        let symbolic = symbolic_pure_diff(p, order)?;
        if symbolic.is_zero() {
            return Ok(DiffReport::new(Verdict::Pass, cfg.seed));
        }
        let mut report = DiffReport::new(Verdict::Fail, cfg.seed);
        let (point, tries) = nonzero_point(&symbolic, cfg)?;
        let n = p.nvars();
        let (x, h) = (point[..n].to_vec(), point[n..].to_vec());
        let value = pure_diff_at(f, &x, &h, order)?;
        report.samples_used = tries;
        report.witnesses.push(Witness::new(format!("pure difference of order {order}"), vec![x, h], value));
        return Ok(report);
    }

    let n = f.nvars();
    let mut sampler = cfg.sampler(0);
    let mut found = WitnessSet::default();
    for _ in 0..cfg.samples {
        let x = sampler.point(n);
        let h = sampler.point(n);
        let value = pure_diff_at(f, &x, &h, order)?;
        if !vector::is_zero(&value) {
            found.push(Witness::new(format!("pure difference of order {order}"), vec![x, h], value));
        }
    }
    let verdict = if found.is_empty() { Verdict::Probabilistic } else { Verdict::Fail };
    let mut report = DiffReport::new(verdict, cfg.seed);
    report.samples_used = cfg.samples;
    report.witnesses = found.into_sorted();
    Ok(report)
}

/// A point where the nonzero polynomial `p` does not vanish. Tries seeded
/// random points first, then the integer box `{0..=d}^N`, on which a nonzero
/// polynomial of degree `d` cannot vanish identically.
fn nonzero_point(p: &VectorPoly, cfg: &SamplerConfig) -> Result<(Vector, usize)> {
    let total = p.nvars();
    let mut sampler = cfg.sampler(1);
    for tries in 1..=256 {
        let point = sampler.point(total);
        if !vector::is_zero(&p.evaluate(&point)?) {
            return Ok((point, tries));
        }
    }
    let d = p.degree().unwrap_or(0);
    let mut digits = vec![0usize; total];
    let mut tries = 256;
    loop {
        tries += 1;
        let point: Vector = digits.iter().map(|&v| int(v)).collect();
        if !vector::is_zero(&p.evaluate(&point)?) {
            return Ok((point, tries));
        }
        let mut slot = 0;
        loop {
            if slot == total {
                return Err(Error::InvalidArgument("polynomial vanishes on the whole test box".into()));
            }
            digits[slot] += 1;
            if digits[slot] <= d {
                break;
            }
            digits[slot] = 0;
            slot += 1;
        }
    }
}

/// Outcome of the least-degree search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSearch {
    /// Least `m <= cap` whose test passes, if any.
    pub degree: Option<usize>,
    /// Report for that `m`, or for `cap` when every test failed.
    pub report: DiffReport,
}

/// Tries `m = 0, 1, ..., cap` and stops at the first passing degree test.
pub fn least_degree<M: Mapping + ?Sized>(f: &M, cap: usize, cfg: &SamplerConfig) -> Result<DegreeSearch> {
    let mut last = None;
    for m in 0..=cap {
        let report = degree_test(f, m, cfg)?;
        if report.passed() {
            return Ok(DegreeSearch { degree: Some(m), report });
        }
        last = Some(report);
    }
    Ok(DegreeSearch { degree: None, report: last.expect("at least one degree tried") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::positivity::counterexample_cubic;
    use crate::vector::from_ints;
    use crate::FnMapping;
    use num_traits::Signed;

    fn x(n: usize, i: usize) -> ScalarPoly {
        ScalarPoly::var(n, i)
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn square_plus_linear() -> VectorPoly {
        VectorPoly::scalar(&x(1, 0).pow(2) + &x(1, 0))
    }

    #[test]
    fn vandermonde_inverse_small() {
        let a1 = vandermonde_inverse(1);
        assert_eq!(a1.rows(), &[from_ints(&[1, 0]), from_ints(&[-1, 1])]);
        let a2 = vandermonde_inverse(2);
        assert_eq!(a2.row(1), &[q(-3, 2), rat(2), q(-1, 2)]);
        for m in 0..=8 {
            let a = vandermonde_inverse(m);
            assert_eq!(a.m(), m);
            assert!(is_identity(&mat_mul(a.rows(), &vandermonde(m))));
        }
    }

    #[test]
    fn invert_detects_singular() {
        let singular = vec![from_ints(&[1, 2]), from_ints(&[2, 4])];
        assert!(invert(&singular).is_none());
    }

    #[test]
    fn interpolation_examples() {
        let sq = VectorPoly::scalar(x(1, 0).pow(2));
        assert_eq!(
            components_by_interpolation(&sq, 2, &[rat(1)]).unwrap(),
            vec![from_ints(&[0]), from_ints(&[0]), from_ints(&[1])]
        );
        let c = VectorPoly::scalar(ScalarPoly::constant(2, rat(7)));
        assert_eq!(
            components_by_interpolation(&c, 3, &from_ints(&[2, 5])).unwrap(),
            vec![from_ints(&[7]), from_ints(&[0]), from_ints(&[0]), from_ints(&[0])]
        );
        assert_eq!(
            components_by_interpolation(&counterexample_cubic(), 3, &from_ints(&[1, 1, 1])).unwrap(),
            vec![from_ints(&[0]), from_ints(&[0]), from_ints(&[0]), from_ints(&[15])]
        );
    }

    #[test]
    fn stirling_examples() {
        let sq = VectorPoly::scalar(x(1, 0).pow(2));
        let v = q(5, 3);
        let comps = components_by_stirling(&sq, 2, std::slice::from_ref(&v)).unwrap();
        assert_eq!(comps[1], vec![rat(0)]);
        assert_eq!(comps[2], vec![&v * &v]);

        let cubic = counterexample_cubic();
        let comps = components_by_stirling(&cubic, 4, &[q(1, 2), rat(2), rat(-1)]).unwrap();
        for (k, c) in comps.iter().enumerate() {
            assert_eq!(vector::is_zero(c), k != 3);
        }
    }

    #[test]
    fn extraction_methods_agree_with_split() {
        let p = VectorPoly::new(vec![
            &(&x(2, 0).pow(3) + &(&x(2, 0) * &x(2, 1)).scale(&q(-2, 3))) + &ScalarPoly::constant(2, rat(4)),
            &x(2, 1).pow(2) - &x(2, 0),
        ])
        .unwrap();
        let pt = vec![q(3, 4), rat(-2)];
        let split = p.homogeneous_split();
        let interp = components_by_interpolation(&p, 3, &pt).unwrap();
        let stir = components_by_stirling(&p, 3, &pt).unwrap();
        for k in 0..=3 {
            let expected = split[k].evaluate(&pt).unwrap();
            assert_eq!(interp[k], expected);
            assert_eq!(stir[k], expected);
            assert_eq!(component_by_scaling(&p, k).unwrap(), split[k]);
        }
    }

    #[test]
    fn scaling_examples() {
        let p = square_plus_linear();
        assert_eq!(component_by_scaling(&p, 1).unwrap(), VectorPoly::scalar(x(1, 0)));
        assert_eq!(component_by_scaling(&p, 2).unwrap(), VectorPoly::scalar(x(1, 0).pow(2)));
        assert!(component_by_scaling(&p, 4).unwrap().is_zero());
    }

    #[test]
    fn tensor_scaling_examples() {
        let prod = &x(2, 0) * &x(2, 1);
        let p = VectorPoly::scalar(&prod + &x(2, 0));
        let expected = SymTensor::polarize_signs(&VectorPoly::scalar(prod), 2).unwrap();
        assert_eq!(tensor_by_scaling(&p, 2).unwrap(), expected);
        assert!(tensor_by_scaling(&p, 3).unwrap().is_zero());

        let cubic_tensor = tensor_by_scaling(&counterexample_cubic(), 3).unwrap();
        assert_eq!(cubic_tensor.get(&[0, 1, 2]).unwrap(), from_ints(&[-1]));
        assert!(tensor_by_scaling(&p, 0).is_err());
    }

    #[test]
    fn degree_test_symbolic() {
        let cube = VectorPoly::scalar(x(1, 0).pow(3));
        let cfg = SamplerConfig::default();
        let fail = degree_test(&cube, 2, &cfg).unwrap();
        assert_eq!(fail.verdict, Verdict::Fail);
        let w = &fail.witnesses[0];
        let h = &w.points[1][0];
        assert_eq!(w.value, vec![rat(6) * h * h * h]);
        assert!(!vector::is_zero(&w.value));

        assert_eq!(degree_test(&cube, 3, &cfg).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn degree_test_opaque_absolute_value() {
        let abs = FnMapping::new(1, 1, |t: &[Rat]| vec![t[0].abs()]);
        let direct = pure_diff_at(&abs, &[rat(-1)], &[rat(1)], 2).unwrap();
        assert_eq!(direct, from_ints(&[2]));
        let report = degree_test(&abs, 1, &SamplerConfig::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        let w = &report.witnesses[0];
        // |t| is affine on each half-line, so the nodes x, x+h, x+2h straddle zero
        let (x0, h) = (&w.points[0][0], &w.points[1][0]);
        let nodes = [x0.clone(), x0 + h, x0 + h * rat(2)];
        assert!(nodes.iter().any(Signed::is_negative) && nodes.iter().any(Signed::is_positive));
    }

    #[test]
    fn degree_test_opaque_polynomial_passes_probabilistically() {
        let f = FnMapping::new(2, 1, |v: &[Rat]| vec![&v[0] * &v[1] - &v[1]]);
        let report = degree_test(&f, 2, &SamplerConfig::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Probabilistic);
        assert_eq!(report.samples_used, 64);
    }

    #[test]
    fn least_degree_search() {
        let cfg = SamplerConfig::default();
        let found = least_degree(&counterexample_cubic(), 8, &cfg).unwrap();
        assert_eq!(found.degree, Some(3));
        let c = VectorPoly::scalar(ScalarPoly::constant(1, rat(2)));
        assert_eq!(least_degree(&c, 8, &cfg).unwrap().degree, Some(0));
        let big = VectorPoly::scalar(x(1, 0).pow(5));
        let none = least_degree(&big, 3, &cfg).unwrap();
        assert_eq!(none.degree, None);
        assert_eq!(none.report.verdict, Verdict::Fail);
    }
}
