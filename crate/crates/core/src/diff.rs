//! Forward differences of mappings `Q^n -> Q^m`.
//!
//! `diff^r f(x; h_1, ..., h_r)` is defined recursively by
//! `diff f(x; h) = f(x + h) - f(x)`; the zeroth difference is `f(x)`.
//! Numeric operators work on any [`Mapping`]. Symbolic operators expand the
//! difference of a [`VectorPoly`] into a polynomial in the enlarged variable
//! set `[x | h_1 | ... | h_r]`, each block holding `n` variables.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{binomial, factorial, multinomial, stirling2};
use crate::poly::ScalarPoly;
use crate::vector::{self, Vector};
use crate::{Error, Mapping, Rat, Result, SymTensor, VectorPoly};

fn check_points<M: Mapping + ?Sized>(f: &M, x: &[Rat], hs: &[Vector]) -> Result<()> {
    Error::check_dim(f.nvars(), x.len())?;
    hs.iter().try_for_each(|h| Error::check_dim(f.nvars(), h.len()))
}

fn int(v: usize) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

fn signed(negative: bool) -> Rat {
    if negative {
        -Rat::one()
    } else {
        Rat::one()
    }
}

/// Mixed difference as the vertex sum
/// `sum_{delta in {0,1}^r} (-1)^(r - |delta|) f(x + sum delta_s h_s)`.
pub fn mixed_diff_at<M: Mapping + ?Sized>(f: &M, x: &[Rat], hs: &[Vector]) -> Result<Vector> {
    check_points(f, x, hs)?;
    let r = hs.len();
    if r >= 64 {
        return Err(Error::InvalidArgument(format!("difference order {r} is too large")));
    }
    let mut acc = vector::zeros(f.codim());
    for mask in 0u64..(1u64 << r) {
        let mut point = x.to_vec();
        let mut ones = 0;
        for (s, h) in hs.iter().enumerate() {
            if mask >> s & 1 == 1 {
                point = vector::add(&point, h);
                ones += 1;
            }
        }
        vector::add_scaled(&mut acc, &signed((r - ones) % 2 == 1), &f.eval(&point)?);
    }
    Ok(acc)
}

/// Mixed difference through the recursive definition, peeling off the last
/// increment: `diff^r f(x; h..) = diff^(r-1) f(x + h_r; ..) - diff^(r-1) f(x; ..)`.
pub fn mixed_diff_recursive<M: Mapping + ?Sized>(f: &M, x: &[Rat], hs: &[Vector]) -> Result<Vector> {
    check_points(f, x, hs)?;
    fn rec<M: Mapping + ?Sized>(f: &M, x: &[Rat], hs: &[Vector]) -> Result<Vector> {
        match hs.split_last() {
            None => f.eval(x),
            Some((last, rest)) => {
                let shifted = rec(f, &vector::add(x, last), rest)?;
                Ok(vector::sub(&shifted, &rec(f, x, rest)?))
            }
        }
    }
    rec(f, x, hs)
}

/// Pure difference `sum_{k=0}^r (-1)^(r-k) C(r, k) f(x + k h)`.
pub fn pure_diff_at<M: Mapping + ?Sized>(f: &M, x: &[Rat], h: &[Rat], r: usize) -> Result<Vector> {
    Error::check_dim(f.nvars(), x.len())?;
    Error::check_dim(f.nvars(), h.len())?;
    let mut acc = vector::zeros(f.codim());
    for k in 0..=r {
        let point = vector::add(x, &vector::scale(&int(k), h));
        let weight = Rat::from_integer(binomial(r, k)) * signed((r - k) % 2 == 1);
        vector::add_scaled(&mut acc, &weight, &f.eval(&point)?);
    }
    Ok(acc)
}

/// Newton expansion `sum_{k=0}^r C(r, k) diff^k f(x; h^k)`, which equals
/// `f(x + r h)` for every mapping.
pub fn newton_expand<M: Mapping + ?Sized>(f: &M, x: &[Rat], h: &[Rat], r: usize) -> Result<Vector> {
    let mut acc = vector::zeros(f.codim());
    for k in 0..=r {
        let d = pure_diff_at(f, x, h, k)?;
        vector::add_scaled(&mut acc, &Rat::from_integer(binomial(r, k)), &d);
    }
    Ok(acc)
}

/// A mixed difference written as a combination of pure differences:
/// `sum_delta (-1)^|delta| diff^r f(x + sum delta_j h_j; (-sum_j delta_j h_j / j)^r)`,
/// with `j` counted from one. The increments `h_j / j` are exact rationals.
pub fn mixed_from_pure<M: Mapping + ?Sized>(f: &M, x: &[Rat], hs: &[Vector]) -> Result<Vector> {
    check_points(f, x, hs)?;
    let r = hs.len();
    if r == 0 {
        return Err(Error::InvalidArgument("mixed_from_pure needs at least one increment".into()));
    }
    if r >= 64 {
        return Err(Error::InvalidArgument(format!("difference order {r} is too large")));
    }
    let n = f.nvars();
    let mut acc = vector::zeros(f.codim());
    for mask in 0u64..(1u64 << r) {
        let mut base = x.to_vec();
        let mut increment = vector::zeros(n);
        let mut ones = 0;
        for (j, h) in hs.iter().enumerate() {
            if mask >> j & 1 == 1 {
                base = vector::add(&base, h);
                vector::add_scaled(&mut increment, &(-Rat::one() / int(j + 1)), h);
                ones += 1;
            }
        }
        let d = pure_diff_at(f, &base, &increment, r)?;
        vector::add_scaled(&mut acc, &signed(ones % 2 == 1), &d);
    }
    Ok(acc)
}

/// Substitution arguments embedding `P`'s variables as the `x` block of a
/// ring with `blocks` blocks of `n` variables, shifted by `sum_{s in shift} h_s`.
fn shifted_args(n: usize, blocks: usize, shift: &[(usize, Rat)]) -> Vec<ScalarPoly> {
    let total = n * blocks;
    (0..n)
        .map(|i| {
            let mut arg = ScalarPoly::var(total, i);
            for (block, c) in shift {
                arg = &arg + &ScalarPoly::var(total, block * n + i).scale(c);
            }
            arg
        })
        .collect()
}

/// The mixed difference `diff^r P(x; h_1, ..., h_r)` as a polynomial in the
/// `n (1 + r)` variables `[x | h_1 | ... | h_r]`.
pub fn symbolic_mixed_diff(p: &VectorPoly, r: usize) -> Result<VectorPoly> {
    let n = p.nvars();
    let blocks = 1 + r;
    let mut current = p.compose(&shifted_args(n, blocks, &[]))?;
    for s in 1..=r {
        if current.is_zero() {
            break;
        }
        // x -> x + h_s on the x block, every other variable fixed.
        let total = n * blocks;
        let mut args: Vec<ScalarPoly> = (0..total).map(|v| ScalarPoly::var(total, v)).collect();
        for (i, arg) in args.iter_mut().enumerate().take(n) {
            *arg = &*arg + &ScalarPoly::var(total, s * n + i);
        }
        let shifted = current.compose(&args)?;
        current = &shifted - &current;
    }
    Ok(current)
}

/// The pure difference `diff^r P(x; h^r)` as a polynomial in the `2n`
/// variables `[x | h]`.
pub fn symbolic_pure_diff(p: &VectorPoly, r: usize) -> Result<VectorPoly> {
    let n = p.nvars();
    let mut acc = VectorPoly::zero(2 * n, p.codim());
    for k in 0..=r {
        let term = p.compose(&shifted_args(n, 2, &[(1, int(k))]))?;
        let weight = Rat::from_integer(binomial(r, k)) * signed((r - k) % 2 == 1);
        acc = &acc + &term.scale(&weight);
    }
    Ok(acc)
}

/// Variable names for the blocks of a symbolic difference: the base names,
/// then `h{s}_{i}` for increment block `s` and coordinate `i`, both from one.
pub fn difference_var_names(names: &[String], r: usize) -> Vec<String> {
    let mut out = names.to_vec();
    for s in 1..=r {
        out.extend((1..=names.len()).map(|i| format!("h{s}_{i}")));
    }
    out
}

/// Closed form for a mixed difference of the homogeneous polynomial
/// generated by `a`:
/// `sum_{j_0 >= 0, j_1..j_r >= 1, sum j = k} C(k; j_0..j_r) A(x^j_0, h_1^j_1, ..., h_r^j_r)`.
/// Vanishes for `r > k`; for `r = k` it is `k! A(h_1, ..., h_r)`.
pub fn homog_mixed_diff_closed(a: &SymTensor, x: &[Rat], hs: &[Vector]) -> Result<Vector> {
    Error::check_dim(a.nvars(), x.len())?;
    for h in hs {
        Error::check_dim(a.nvars(), h.len())?;
    }
    let k = a.order();
    let r = hs.len();
    let mut acc = vector::zeros(a.codim());
    if r > k {
        return Ok(acc);
    }
    let mut parts = vec![0usize; r + 1];
    let mut visit = |parts: &[usize]| -> Result<()> {
        let mut pairs = vec![(x.to_vec(), parts[0])];
        pairs.extend(hs.iter().cloned().zip(parts[1..].iter().copied()));
        let value = a.apply_powers(&pairs)?;
        vector::add_scaled(&mut acc, &Rat::from_integer(multinomial(k, parts)?), &value);
        Ok(())
    };
    compositions(k, r, &mut parts, 1, &mut visit)?;
    Ok(acc)
}

/// Enumerates `parts[0] >= 0`, `parts[1..=r] >= 1` summing to `k`.
fn compositions(
    k: usize,
    r: usize,
    parts: &mut [usize],
    slot: usize,
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    let used: usize = parts[1..slot].iter().sum();
    if slot > r {
        parts[0] = k - used;
        return visit(parts);
    }
    let remaining_slots = r - slot;
    let mut j = 1;
    while used + j + remaining_slots <= k {
        parts[slot] = j;
        compositions(k, r, parts, slot + 1, visit)?;
        j += 1;
    }
    parts[slot] = 0;
    Ok(())
}

/// Closed form for a pure difference of the homogeneous polynomial generated
/// by `a`: `r! sum_{j=r}^k C(k, j) S(j, r) A(x^(k-j), h^j)`. At `x = 0` this is
/// `r! S(k, r) P_k(h)`.
pub fn homog_pure_diff_closed(a: &SymTensor, x: &[Rat], h: &[Rat], r: usize) -> Result<Vector> {
    Error::check_dim(a.nvars(), x.len())?;
    Error::check_dim(a.nvars(), h.len())?;
    let k = a.order();
    let mut acc = vector::zeros(a.codim());
    for j in r..=k {
        let s = stirling2(j, r);
        if s.is_zero() {
            continue;
        }
        let value = a.apply_powers(&[(x.to_vec(), k - j), (h.to_vec(), j)])?;
        let weight = Rat::from_integer(binomial(k, j) * s);
        vector::add_scaled(&mut acc, &weight, &value);
    }
    Ok(vector::scale(&Rat::from_integer(factorial(r)), &acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Monomial};
    use crate::positivity::counterexample_cubic;
    use crate::vector::{basis, from_ints};
    use crate::FnMapping;

    fn x(n: usize, i: usize) -> ScalarPoly {
        ScalarPoly::var(n, i)
    }

    fn power(e: u32) -> VectorPoly {
        VectorPoly::scalar(x(1, 0).pow(e))
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn mixed_difference_of_square() {
        let f = power(2);
        let (h1, h2) = (vec![q(3, 2)], vec![q(-5, 7)]);
        let expected = vec![rat(2) * &h1[0] * &h2[0]];
        let hs = [h1, h2];
        assert_eq!(mixed_diff_at(&f, &[rat(0)], &hs).unwrap(), expected);
        assert_eq!(mixed_diff_recursive(&f, &[rat(0)], &hs).unwrap(), expected);
    }

    #[test]
    fn constant_has_zero_differences() {
        let f = VectorPoly::scalar(ScalarPoly::constant(2, rat(4)));
        for r in 1..4 {
            let hs: Vec<_> = (0..r).map(|s| from_ints(&[s as i64 + 1, -2])).collect();
            assert!(vector::is_zero(&mixed_diff_at(&f, &from_ints(&[3, 1]), &hs).unwrap()));
        }
    }

    #[test]
    fn cubic_basis_difference() {
        let hs: Vec<_> = (0..3).map(|i| basis(3, i)).collect();
        let d = mixed_diff_at(&counterexample_cubic(), &vector::zeros(3), &hs).unwrap();
        assert_eq!(d, from_ints(&[-6]));
    }

    #[test]
    fn zero_order_is_evaluation() {
        let f = counterexample_cubic();
        let p = from_ints(&[1, 1, 1]);
        assert_eq!(mixed_diff_at(&f, &p, &[]).unwrap(), from_ints(&[15]));
        assert_eq!(pure_diff_at(&f, &p, &from_ints(&[4, 4, 4]), 0).unwrap(), from_ints(&[15]));
        assert_eq!(newton_expand(&f, &p, &from_ints(&[4, 4, 4]), 0).unwrap(), from_ints(&[15]));
    }

    #[test]
    fn pure_difference_values() {
        assert_eq!(pure_diff_at(&power(3), &[rat(0)], &[rat(1)], 2).unwrap(), from_ints(&[6]));
        assert_eq!(pure_diff_at(&power(2), &[rat(0)], &[rat(1)], 3).unwrap(), from_ints(&[0]));
        let h = vec![q(2, 3)];
        let pure = pure_diff_at(&power(4), &[q(1, 5)], &h, 3).unwrap();
        let mixed = mixed_diff_at(&power(4), &[q(1, 5)], &[h.clone(), h.clone(), h]).unwrap();
        assert_eq!(pure, mixed);
    }

    #[test]
    fn newton_expansion_of_square() {
        let (x0, h) = (q(1, 3), q(5, 2));
        let expected = &x0 * &x0 + rat(6) * &x0 * &h + rat(9) * &h * &h;
        assert_eq!(newton_expand(&power(2), &[x0], &[h], 3).unwrap(), vec![expected]);
    }

    #[test]
    fn newton_expansion_of_table_map() {
        // An arbitrary map, not a polynomial of low degree.
        let table = [3, -1, 4, 1, -5, 9, 2, 6];
        let f = FnMapping::new(1, 1, move |t: &[Rat]| {
            let i = t[0].to_integer();
            let i: usize = i.try_into().expect("table index");
            vec![rat(table[i])]
        });
        for start in 0..3 {
            let direct = f.eval(&[rat(start + 4)]).unwrap();
            assert_eq!(newton_expand(&f, &[rat(start)], &[rat(1)], 4).unwrap(), direct);
        }
    }

    #[test]
    fn mixed_from_pure_on_square() {
        let f = power(2);
        let hs = [vec![q(3, 4)], vec![q(-2, 3)]];
        let expected = vec![rat(2) * &hs[0][0] * &hs[1][0]];
        assert_eq!(mixed_from_pure(&f, &[q(7, 5)], &hs).unwrap(), expected);
    }

    #[test]
    fn mixed_from_pure_first_order() {
        let f = counterexample_cubic();
        let (p, h) = (from_ints(&[1, 2, 0]), from_ints(&[0, -1, 3]));
        assert_eq!(
            mixed_from_pure(&f, &p, std::slice::from_ref(&h)).unwrap(),
            vector::sub(&f.evaluate(&vector::add(&p, &h)).unwrap(), &f.evaluate(&p).unwrap())
        );
        assert!(mixed_from_pure(&f, &p, &[]).is_err());
    }

    #[test]
    fn symbolic_mixed_of_square() {
        // vars [x, h1, h2]
        let d = symbolic_mixed_diff(&power(2), 2).unwrap();
        assert_eq!(d, VectorPoly::scalar((&x(3, 1) * &x(3, 2)).scale(&rat(2))));
    }

    #[test]
    fn symbolic_mixed_of_product() {
        // vars [x1, x2, h1, h2]
        let p = VectorPoly::scalar(&x(2, 0) * &x(2, 1));
        let d = symbolic_mixed_diff(&p, 1).unwrap();
        let expected = &(&(&x(4, 0) * &x(4, 3)) + &(&x(4, 1) * &x(4, 2))) + &(&x(4, 2) * &x(4, 3));
        assert_eq!(d, VectorPoly::scalar(expected));
    }

    #[test]
    fn symbolic_mixed_annihilates_above_degree() {
        assert!(symbolic_mixed_diff(&counterexample_cubic(), 4).unwrap().is_zero());
        assert!(!symbolic_mixed_diff(&counterexample_cubic(), 3).unwrap().is_zero());
    }

    #[test]
    fn symbolic_pure_values() {
        // vars [x, h]; oracle: P(x + 2h) - 2 P(x + h) + P(x), expanded by hand for x^3.
        let d = symbolic_pure_diff(&power(3), 2).unwrap();
        let expected = &(&x(2, 0) * &x(2, 1).pow(2)).scale(&rat(6)) + &x(2, 1).pow(3).scale(&rat(6));
        assert_eq!(d, VectorPoly::scalar(expected));

        let c = VectorPoly::scalar(ScalarPoly::constant(1, rat(3)));
        assert!(symbolic_pure_diff(&c, 1).unwrap().is_zero());

        let sq = symbolic_pure_diff(&power(2), 2).unwrap();
        assert_eq!(sq, VectorPoly::scalar(x(2, 1).pow(2).scale(&rat(2))));
    }

    #[test]
    fn symbolic_matches_numeric() {
        let p = counterexample_cubic();
        let d = symbolic_mixed_diff(&p, 2).unwrap();
        let (p0, h1, h2) = (from_ints(&[1, -2, 3]), vec![q(1, 2), rat(0), rat(2)], from_ints(&[-1, 1, 4]));
        let mut all = p0.clone();
        all.extend(h1.clone());
        all.extend(h2.clone());
        assert_eq!(d.evaluate(&all).unwrap(), mixed_diff_at(&p, &p0, &[h1, h2]).unwrap());
    }

    #[test]
    fn top_order_difference_has_no_x_block() {
        let d = symbolic_mixed_diff(&counterexample_cubic(), 3).unwrap();
        for (m, _) in d.coords()[0].terms() {
            assert!(m.exps()[..3].iter().all(|&e| e == 0), "x-block variable in {m:?}");
        }
        let coeff = d.coords()[0].coeff(&Monomial::new(vec![0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1]));
        assert_eq!(coeff, rat(-6));
    }

    #[test]
    fn closed_mixed_forms() {
        let a = SymTensor::polarize_signs(&VectorPoly::scalar(&x(2, 0) * &x(2, 1)), 2).unwrap();
        let hs = [from_ints(&[1, 3]), vec![q(-1, 2), rat(5)]];
        let top = homog_mixed_diff_closed(&a, &from_ints(&[9, -4]), &hs).unwrap();
        assert_eq!(top, vector::scale(&rat(2), &a.eval(&hs).unwrap()));
        let three = [from_ints(&[1, 0]), from_ints(&[0, 1]), from_ints(&[1, 1])];
        assert!(vector::is_zero(&homog_mixed_diff_closed(&a, &from_ints(&[1, 1]), &three).unwrap()));

        let p = VectorPoly::scalar(&x(2, 0).pow(2) * &x(2, 1));
        let b = SymTensor::polarize_signs(&p, 3).unwrap();
        let (x0, h) = (vec![q(2, 3), rat(-1)], from_ints(&[4, 1]));
        assert_eq!(
            homog_mixed_diff_closed(&b, &x0, std::slice::from_ref(&h)).unwrap(),
            mixed_diff_at(&p, &x0, &[h]).unwrap()
        );
    }

    #[test]
    fn closed_pure_forms() {
        let a = SymTensor::polarize_signs(&power(3), 3).unwrap();
        let h = vec![q(3, 2)];
        let d = homog_pure_diff_closed(&a, &[rat(0)], &h, 2).unwrap();
        assert_eq!(d, vec![rat(6) * &h[0] * &h[0] * &h[0]]);
        assert_eq!(d, pure_diff_at(&power(3), &[rat(0)], &h, 2).unwrap());
        let top = homog_pure_diff_closed(&a, &[rat(0)], &h, 3).unwrap();
        assert_eq!(top, vector::scale(&rat(6), &a.apply_powers(&[(h.clone(), 3)]).unwrap()));
        assert!(vector::is_zero(&homog_pure_diff_closed(&a, &[rat(5)], &h, 4).unwrap()));
        let x0 = vec![q(-7, 3)];
        assert_eq!(
            homog_pure_diff_closed(&a, &x0, &h, 1).unwrap(),
            pure_diff_at(&power(3), &x0, &h, 1).unwrap()
        );
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let f = counterexample_cubic();
        assert!(mixed_diff_at(&f, &from_ints(&[1, 1]), &[]).is_err());
        assert!(pure_diff_at(&f, &from_ints(&[1, 1, 1]), &from_ints(&[1]), 2).is_err());
    }

    #[test]
    fn block_names() {
        let names = vec!["x1".to_string(), "x2".to_string()];
        assert_eq!(difference_var_names(&names, 2), ["x1", "x2", "h1_1", "h1_2", "h2_1", "h2_2"]);
    }
}
