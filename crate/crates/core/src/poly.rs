//! Sparse multivariate polynomials over the rationals.
//!
//! A [`ScalarPoly`] maps exponent vectors to nonzero coefficients; a
//! [`VectorPoly`] is a tuple of scalar polynomials in the same variables and
//! represents a polynomial mapping `Q^n -> Q^m`. Terms are kept in graded
//! lexicographic order and zero coefficients are never stored, so two
//! polynomials are equal exactly when their term maps are equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Rat, Result, Vector};

/// Exponent vector of a monomial, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Graded lexicographic: total degree first, then the larger exponent of the
/// earliest variable wins.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl ScalarPoly {
    pub fn zero(nvars: usize) -> Self {
        ScalarPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Rat::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        assert_eq!(m.nvars(), self.nvars, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        ScalarPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, Rat::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, x: &[Rat]) -> Result<Rat> {
        Error::check_dim(self.nvars, x.len())?;
        let Some(top) = self.degree() else {
            return Ok(Rat::zero());
        };
        // With x_i = a_i / l and coefficients c = b / q, every term becomes an
        // integer over q l^top, so only the final quotient needs a gcd.
        let l = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let q = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let a: Vec<BigInt> = x.iter().map(|v| v.numer() * (&l / v.denom())).collect();
        let mut lpow = vec![BigInt::one()];
        for _ in 0..top {
            let next = lpow.last().unwrap() * &l;
            lpow.push(next);
        }
        let mut powers = PowerCache::new(a, BigInt::one());
        let mut num = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.numer() * (&q / c.denom()) * &lpow[top - m.degree()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term *= powers.get(i, e);
                }
            }
            num += term;
        }
        Ok(Rat::new(num, q * &lpow[top]))
    }

    /// Substitutes `args[i]` for `x_i`; every argument must share one variable set.
    pub fn compose(&self, args: &[ScalarPoly]) -> Result<ScalarPoly> {
        Error::check_dim(self.nvars, args.len())?;
        let target = match args.first() {
            Some(a) => a.nvars,
            None => 0,
        };
        for a in args {
            Error::check_dim(target, a.nvars)?;
        }
        let mut powers = PowerCache::new(args.to_vec(), ScalarPoly::constant(target, Rat::one()));
        Ok(compose_with(self, target, &mut powers))
    }

    /// `x -> p(c x)`: the degree-k part is scaled by `c^k`.
    pub fn dilate(&self, c: &Rat) -> Self {
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * num_traits::pow(c.clone(), m.degree())));
        Self::from_terms(self.nvars, terms)
    }

    /// The terms of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: usize) -> Self {
        ScalarPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
        }
    }

    /// True for the zero polynomial and for polynomials whose terms all have degree `k`.
    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    /// Moves variable `i` to position `map[i]` of a ring with `nvars` variables.
    pub fn relabel(&self, nvars: usize, map: &[usize]) -> Result<Self> {
        Error::check_dim(self.nvars, map.len())?;
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0; nvars];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[map[i]] += e;
            }
            (Monomial(exps), c.clone())
        });
        Ok(Self::from_terms(nvars, terms))
    }
}

fn compose_with(p: &ScalarPoly, target: usize, powers: &mut PowerCache<ScalarPoly>) -> ScalarPoly {
    let mut acc = ScalarPoly::zero(target);
    for (m, c) in &p.terms {
        let mut term = ScalarPoly::constant(target, c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                term = &term * powers.get(i, e);
            }
        }
        acc = &acc + &term;
    }
    acc
}

/// Lazily computed powers `base_i^e`.
struct PowerCache<T> {
    bases: Vec<T>,
    one: T,
    table: Vec<Vec<T>>,
}

impl<T: Clone> PowerCache<T>
where
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    fn new(bases: Vec<T>, one: T) -> Self {
        let table = bases.iter().map(|_| Vec::new()).collect();
        PowerCache { bases, one, table }
    }

    fn get(&mut self, i: usize, e: u32) -> &T {
        let row = &mut self.table[i];
        if row.is_empty() {
            row.push(self.one.clone());
        }
        while row.len() <= e as usize {
            let next = row.last().unwrap() * &self.bases[i];
            row.push(next);
        }
        &row[e as usize]
    }
}

impl Add for &ScalarPoly {
    type Output = ScalarPoly;

    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ScalarPoly {
    type Output = ScalarPoly;

    fn sub(self, rhs: &ScalarPoly) -> ScalarPoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;

    fn neg(self) -> ScalarPoly {
        ScalarPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &ScalarPoly {
    type Output = ScalarPoly;

    fn mul(self, rhs: &ScalarPoly) -> ScalarPoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = ScalarPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

/// A polynomial mapping `Q^n -> Q^m`, one scalar polynomial per output coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorPoly {
    nvars: usize,
    coords: Vec<ScalarPoly>,
}

impl VectorPoly {
    pub fn new(coords: Vec<ScalarPoly>) -> Result<Self> {
        let first = coords
            .first()
            .ok_or_else(|| Error::InvalidArgument("a polynomial mapping needs at least one coordinate".into()))?;
        let nvars = first.nvars;
        for c in &coords {
            Error::check_dim(nvars, c.nvars)?;
        }
        Ok(VectorPoly { nvars, coords })
    }

    pub fn scalar(p: ScalarPoly) -> Self {
        VectorPoly { nvars: p.nvars, coords: vec![p] }
    }

    pub fn zero(nvars: usize, codim: usize) -> Self {
        assert!(codim >= 1, "codomain dimension must be at least one");
        VectorPoly { nvars, coords: vec![ScalarPoly::zero(nvars); codim] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn codim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[ScalarPoly] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(ScalarPoly::is_zero)
    }

    /// Maximal total degree of a nonzero term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coords.iter().filter_map(ScalarPoly::degree).max()
    }

    pub fn evaluate(&self, x: &[Rat]) -> Result<Vector> {
        self.coords.iter().map(|p| p.evaluate(x)).collect()
    }

    pub fn compose(&self, args: &[ScalarPoly]) -> Result<VectorPoly> {
        Error::check_dim(self.nvars, args.len())?;
        let target = args.first().map_or(0, ScalarPoly::nvars);
        for a in args {
            Error::check_dim(target, a.nvars)?;
        }
        let mut powers = PowerCache::new(args.to_vec(), ScalarPoly::constant(target, Rat::one()));
        let coords = self.coords.iter().map(|p| compose_with(p, target, &mut powers)).collect();
        Ok(VectorPoly { nvars: target, coords })
    }

    pub fn dilate(&self, c: &Rat) -> Self {
        self.map(|p| p.dilate(c))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn homogeneous_part(&self, k: usize) -> Self {
        self.map(|p| p.homogeneous_part(k))
    }

    /// Components `P_0, ..., P_deg` with `P_k` holding exactly the degree-k
    /// terms. Empty for the zero polynomial.
    pub fn homogeneous_split(&self) -> Vec<VectorPoly> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.homogeneous_part(k)).collect(),
        }
    }

    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.coords.iter().all(|p| p.is_homogeneous(k))
    }

    pub fn relabel(&self, nvars: usize, map: &[usize]) -> Result<Self> {
        let coords = self.coords.iter().map(|p| p.relabel(nvars, map)).collect::<Result<_>>()?;
        Ok(VectorPoly { nvars, coords })
    }

    /// The smallest coefficient over all coordinates, if any term exists.
    pub fn min_coefficient(&self) -> Option<&Rat> {
        self.coords.iter().flat_map(|p| p.terms.values()).min()
    }

    fn map(&self, f: impl Fn(&ScalarPoly) -> ScalarPoly) -> Self {
        VectorPoly { nvars: self.nvars, coords: self.coords.iter().map(f).collect() }
    }

    fn zip(&self, rhs: &VectorPoly, f: impl Fn(&ScalarPoly, &ScalarPoly) -> ScalarPoly) -> Self {
        assert_eq!(self.codim(), rhs.codim(), "codomain dimension mismatch");
        VectorPoly {
            nvars: self.nvars,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl Add for &VectorPoly {
    type Output = VectorPoly;

    fn add(self, rhs: &VectorPoly) -> VectorPoly {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &VectorPoly {
    type Output = VectorPoly;

    fn sub(self, rhs: &VectorPoly) -> VectorPoly {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &VectorPoly {
    type Output = VectorPoly;

    fn neg(self) -> VectorPoly {
        self.map(|p| -p)
    }
}

impl fmt::Display for VectorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format(self))
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_scalar(self, &crate::parse::default_names(self.nvars)))
    }
}

/// `c` as a rational.
pub fn rat(c: i64) -> Rat {
    Rat::from_integer(BigInt::from(c))
}
