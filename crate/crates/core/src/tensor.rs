//! Symmetric multilinear forms `A: (Q^n)^k -> Q^m`.
//!
//! A form is stored by its values on sorted basis index tuples
//! `i_1 <= ... <= i_k`; every other argument is handled by multilinear
//! expansion, so symmetry holds by construction. Only nonzero values are kept.
//! Order-zero forms have a single entry under the empty tuple: the constant.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{factorial, multinomial};
use crate::poly::{Monomial, ScalarPoly};
use crate::vector::{self, Vector};
use crate::{Error, Rat, Result, VectorPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymTensor {
    order: usize,
    nvars: usize,
    codim: usize,
    values: BTreeMap<Vec<usize>, Vector>,
}

impl SymTensor {
    pub fn zero(order: usize, nvars: usize, codim: usize) -> Self {
        SymTensor { order, nvars, codim, values: BTreeMap::new() }
    }

    /// The order-zero form with value `c`.
    pub fn constant(nvars: usize, c: Vector) -> Self {
        let mut t = Self::zero(0, nvars, c.len());
        t.set(&[], c).expect("empty tuple is valid for order zero");
        t
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Sets the value on the basis tuple `indices` (in any order).
    pub fn set(&mut self, indices: &[usize], value: Vector) -> Result<()> {
        let key = self.key(indices)?;
        Error::check_dim(self.codim, value.len())?;
        if vector::is_zero(&value) {
            self.values.remove(&key);
        } else {
            self.values.insert(key, value);
        }
        Ok(())
    }

    /// `A(e_{i_1}, ..., e_{i_k})`.
    pub fn get(&self, indices: &[usize]) -> Result<Vector> {
        let key = self.key(indices)?;
        Ok(self.values.get(&key).cloned().unwrap_or_else(|| vector::zeros(self.codim)))
    }

    /// Nonzero values keyed by sorted index tuple.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.values.iter()
    }

    fn key(&self, indices: &[usize]) -> Result<Vec<usize>> {
        Error::check_dim(self.order, indices.len())?;
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.nvars) {
            return Err(Error::InvalidArgument(format!(
                "basis index {bad} out of range for {} variables",
                self.nvars
            )));
        }
        let mut key = indices.to_vec();
        key.sort_unstable();
        Ok(key)
    }

    /// `A(x_1, ..., x_k)` by multilinear expansion in the standard basis.
    pub fn eval(&self, args: &[Vector]) -> Result<Vector> {
        Error::check_dim(self.order, args.len())?;
        for a in args {
            Error::check_dim(self.nvars, a.len())?;
        }
        let mut out = vector::zeros(self.codim);
        for (tuple, value) in &self.values {
            let weight = permutation_sum(tuple, args);
            if !weight.is_zero() {
                vector::add_scaled(&mut out, &weight, value);
            }
        }
        Ok(out)
    }

    /// `A(v_1^{j_1}, ..., v_r^{j_r})`: each vector repeated per its multiplicity.
    pub fn apply_powers(&self, pairs: &[(Vector, usize)]) -> Result<Vector> {
        let sum: usize = pairs.iter().map(|(_, j)| j).sum();
        if sum != self.order {
            return Err(Error::MultiplicityMismatch { order: self.order, sum });
        }
        let args: Vec<Vector> = pairs
            .iter()
            .flat_map(|(v, j)| std::iter::repeat_n(v.clone(), *j))
            .collect();
        self.eval(&args)
    }

    /// The generated homogeneous polynomial `x -> A(x, ..., x)`.
    pub fn to_poly(&self) -> VectorPoly {
        let mut coords = vec![ScalarPoly::zero(self.nvars); self.codim];
        for (tuple, value) in &self.values {
            let mut exps = vec![0u32; self.nvars];
            for &i in tuple {
                exps[i] += 1;
            }
            let parts: Vec<usize> = exps.iter().map(|&e| e as usize).collect();
            let count = Rat::from_integer(multinomial(self.order, &parts).expect("parts sum to order"));
            for (coord, v) in coords.iter_mut().zip(value) {
                coord.add_term(Monomial::new(exps.clone()), &count * v);
            }
        }
        VectorPoly::new(coords).expect("codim is at least one")
    }

    /// First basis tuple with a negative coordinate, if any.
    pub fn negative_entry(&self) -> Option<(Vec<usize>, Vector)> {
        self.values
            .iter()
            .find(|(_, v)| v.iter().any(Signed::is_negative))
            .map(|(k, v)| (k.clone(), v.clone()))
    }

    /// Positivity on the cone: since the cone is generated by the basis, this
    /// holds iff every basis value is componentwise nonnegative.
    pub fn is_nonneg(&self) -> bool {
        self.negative_entry().is_none()
    }

    /// Recovers the symmetric form of a `k`-homogeneous polynomial from
    /// `(1 / (2^k k!)) sum_{eps = +-1} eps_1...eps_k P(eps_1 x_1 + ... + eps_k x_k)`.
    pub fn polarize_signs(pk: &VectorPoly, k: usize) -> Result<SymTensor> {
        require_homogeneous(pk, k)?;
        let n = pk.nvars();
        let norm = Rat::from_integer(BigInt::from(2).pow(k as u32) * factorial(k));
        let mut out = SymTensor::zero(k, n, pk.codim());
        for tuple in sorted_tuples(n, k) {
            let mut acc = vector::zeros(pk.codim());
            for mask in 0u64..(1u64 << k) {
                let mut point = vector::zeros(n);
                let mut sign = Rat::one();
                for (slot, &i) in tuple.iter().enumerate() {
                    if mask >> slot & 1 == 1 {
                        point[i] -= Rat::one();
                        sign = -sign;
                    } else {
                        point[i] += Rat::one();
                    }
                }
                vector::add_scaled(&mut acc, &sign, &pk.evaluate(&point)?);
            }
            out.set(&tuple, vector::scale(&(Rat::one() / &norm), &acc))?;
        }
        Ok(out)
    }

    /// Recovers the symmetric form from vertex sums around an arbitrary base point:
    /// `(1 / k!) sum_{delta in {0,1}^k} (-1)^(k - |delta|) P(base + sum delta_i x_i)`.
    pub fn polarize_mo(pk: &VectorPoly, k: usize, base: &[Rat]) -> Result<SymTensor> {
        require_homogeneous(pk, k)?;
        let n = pk.nvars();
        Error::check_dim(n, base.len())?;
        let norm = Rat::from_integer(factorial(k));
        let mut out = SymTensor::zero(k, n, pk.codim());
        for tuple in sorted_tuples(n, k) {
            let mut acc = vector::zeros(pk.codim());
            for mask in 0u64..(1u64 << k) {
                let mut point = base.to_vec();
                let mut ones = 0;
                for (slot, &i) in tuple.iter().enumerate() {
                    if mask >> slot & 1 == 1 {
                        point[i] += Rat::one();
                        ones += 1;
                    }
                }
                let sign = if (k - ones).is_multiple_of(2) { Rat::one() } else { -Rat::one() };
                vector::add_scaled(&mut acc, &sign, &pk.evaluate(&point)?);
            }
            out.set(&tuple, vector::scale(&(Rat::one() / &norm), &acc))?;
        }
        Ok(out)
    }
}

fn require_homogeneous(pk: &VectorPoly, k: usize) -> Result<()> {
    if pk.is_homogeneous(k) {
        Ok(())
    } else {
        Err(Error::NotHomogeneous { degree: k })
    }
}

/// `sum over distinct orderings pi of tuple: prod_s args[s][pi_s]`.
fn permutation_sum(tuple: &[usize], args: &[Vector]) -> Rat {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &i in tuple {
        *counts.entry(i).or_default() += 1;
    }
    let mut counts: Vec<(usize, usize)> = counts.into_iter().collect();
    permutation_sum_rec(&mut counts, args, 0)
}

fn permutation_sum_rec(counts: &mut [(usize, usize)], args: &[Vector], slot: usize) -> Rat {
    if slot == args.len() {
        return Rat::one();
    }
    let mut acc = Rat::zero();
    for c in 0..counts.len() {
        let (index, left) = counts[c];
        if left == 0 || args[slot][index].is_zero() {
            continue;
        }
        counts[c].1 -= 1;
        acc += &args[slot][index] * permutation_sum_rec(counts, args, slot + 1);
        counts[c].1 += 1;
    }
    acc
}

/// All nondecreasing index tuples of length `k` over `0..n`, in lexicographic order.
pub fn sorted_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(n, k, i, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::positivity::counterexample_cubic;
    use crate::vector::{basis, from_ints};

    fn x(n: usize, i: usize) -> ScalarPoly {
        ScalarPoly::var(n, i)
    }

    fn half() -> Rat {
        Rat::new(1.into(), 2.into())
    }

    fn product_x1_x2() -> VectorPoly {
        VectorPoly::scalar(&x(2, 0) * &x(2, 1))
    }

    // Brute-force oracle: the four-term sign sum for a bilinear form, written out.
    fn four_term_oracle(p: &VectorPoly, a: &[Rat], b: &[Rat]) -> Rat {
        let f = |v: Vector| p.evaluate(&v).unwrap()[0].clone();
        let sum = f(vector::add(a, b)) - f(vector::sub(a, b)) - f(vector::sub(b, a))
            + f(vector::scale(&rat(-1), &vector::add(a, b)));
        sum / rat(8)
    }

    #[test]
    fn polarize_product() {
        let p = product_x1_x2();
        let a = SymTensor::polarize_signs(&p, 2).unwrap();
        assert_eq!(a.get(&[0, 1]).unwrap(), vec![half()]);
        assert_eq!(four_term_oracle(&p, &basis(2, 0), &basis(2, 1)), half());
        assert!(vector::is_zero(&a.get(&[0, 0]).unwrap()));
        assert!(vector::is_zero(&a.get(&[1, 1]).unwrap()));
        assert_eq!(a.eval(&[basis(2, 0), basis(2, 1)]).unwrap(), vec![half()]);
    }

    #[test]
    fn polarize_square_and_mixed_cubic() {
        let sq = SymTensor::polarize_signs(&VectorPoly::scalar(x(1, 0).pow(2)), 2).unwrap();
        assert_eq!(sq.get(&[0, 0]).unwrap(), from_ints(&[1]));

        let p = VectorPoly::scalar(&x(2, 0).pow(2) * &x(2, 1));
        let a = SymTensor::polarize_signs(&p, 3).unwrap();
        assert_eq!(a.get(&[0, 0, 1]).unwrap(), vec![Rat::new(1.into(), 3.into())]);
        assert_eq!(
            a.apply_powers(&[(basis(2, 0), 2), (basis(2, 1), 1)]).unwrap(),
            vec![Rat::new(1.into(), 3.into())]
        );
    }

    #[test]
    fn cubic_tensor_entry() {
        let a = SymTensor::polarize_signs(&counterexample_cubic(), 3).unwrap();
        assert_eq!(a.eval(&[basis(3, 0), basis(3, 1), basis(3, 2)]).unwrap(), from_ints(&[-1]));
        let (tuple, value) = a.negative_entry().unwrap();
        assert_eq!(tuple, vec![0, 1, 2]);
        assert_eq!(value, from_ints(&[-1]));
        assert!(!a.is_nonneg());
    }

    #[test]
    fn zero_argument_annihilates() {
        let a = SymTensor::polarize_signs(&counterexample_cubic(), 3).unwrap();
        let args = [from_ints(&[1, 2, 3]), vector::zeros(3), from_ints(&[4, -1, 2])];
        assert!(vector::is_zero(&a.eval(&args).unwrap()));
    }

    #[test]
    fn nonneg_cases() {
        assert!(SymTensor::polarize_signs(&product_x1_x2(), 2).unwrap().is_nonneg());
        assert!(SymTensor::zero(3, 2, 1).is_nonneg());
    }

    #[test]
    fn to_poly_round_trip() {
        let mut a = SymTensor::zero(2, 2, 1);
        a.set(&[1, 0], vec![half()]).unwrap();
        assert_eq!(a.to_poly(), product_x1_x2());
        assert!(SymTensor::zero(2, 2, 1).to_poly().is_zero());
        let mut d = SymTensor::zero(2, 1, 1);
        d.set(&[0, 0], from_ints(&[1])).unwrap();
        assert_eq!(d.to_poly(), VectorPoly::scalar(x(1, 0).pow(2)));

        let cubic = counterexample_cubic();
        assert_eq!(SymTensor::polarize_signs(&cubic, 3).unwrap().to_poly(), cubic);
    }

    #[test]
    fn to_poly_matches_diagonal_eval() {
        let a = SymTensor::polarize_signs(&counterexample_cubic(), 3).unwrap();
        let p = a.to_poly();
        let v = vec![half(), rat(-2), rat(3)];
        assert_eq!(p.evaluate(&v).unwrap(), a.eval(&[v.clone(), v.clone(), v.clone()]).unwrap());
        assert_eq!(p.evaluate(&v).unwrap(), a.apply_powers(&[(v, 3)]).unwrap());
    }

    #[test]
    fn mazur_orlicz_polarization_is_base_independent() {
        let p = product_x1_x2();
        let signs = SymTensor::polarize_signs(&p, 2).unwrap();
        assert_eq!(SymTensor::polarize_mo(&p, 2, &from_ints(&[0, 0])).unwrap(), signs);
        assert_eq!(SymTensor::polarize_mo(&p, 2, &from_ints(&[7, -3])).unwrap(), signs);

        let sq = VectorPoly::scalar(x(1, 0).pow(2));
        let a = SymTensor::polarize_mo(&sq, 2, &from_ints(&[1])).unwrap();
        assert_eq!(a.get(&[0, 0]).unwrap(), from_ints(&[1]));

        let cubic = counterexample_cubic();
        assert_eq!(
            SymTensor::polarize_mo(&cubic, 3, &[half(), rat(5), rat(-4)]).unwrap(),
            SymTensor::polarize_signs(&cubic, 3).unwrap()
        );
    }

    #[test]
    fn polarize_rejects_inhomogeneous() {
        let p = VectorPoly::scalar(&x(1, 0).pow(2) + &x(1, 0));
        assert!(matches!(SymTensor::polarize_signs(&p, 2), Err(Error::NotHomogeneous { degree: 2 })));
        assert!(SymTensor::polarize_mo(&p, 2, &from_ints(&[0])).is_err());
    }

    #[test]
    fn order_zero_is_a_constant() {
        let c = SymTensor::constant(2, from_ints(&[5]));
        assert_eq!(c.eval(&[]).unwrap(), from_ints(&[5]));
        assert_eq!(c.to_poly(), VectorPoly::scalar(ScalarPoly::constant(2, rat(5))));
        let p = VectorPoly::scalar(ScalarPoly::constant(2, rat(5)));
        assert_eq!(SymTensor::polarize_signs(&p, 0).unwrap(), c);
    }

    #[test]
    fn apply_powers_checks_multiplicities() {
        let a = SymTensor::zero(2, 1, 1);
        assert!(matches!(
            a.apply_powers(&[(from_ints(&[1]), 1)]),
            Err(Error::MultiplicityMismatch { order: 2, sum: 1 })
        ));
    }

    #[test]
    fn eval_checks_arity() {
        let a = SymTensor::zero(2, 2, 1);
        assert!(a.eval(&[from_ints(&[1, 1])]).is_err());
        assert!(a.eval(&[from_ints(&[1]), from_ints(&[1])]).is_err());
    }

    #[test]
    fn sorted_tuple_count() {
        assert_eq!(sorted_tuples(3, 2).len(), 6);
        assert_eq!(sorted_tuples(3, 0), vec![Vec::<usize>::new()]);
        assert!(sorted_tuples(0, 2).is_empty());
    }
}
