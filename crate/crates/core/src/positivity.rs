//! Positivity of polynomial mappings with respect to the positive cone.
//!
//! A homogeneous polynomial is positive when its symmetric form is
//! nonnegative on cone arguments; a general polynomial is positive when every
//! homogeneous component is. On `Q^n` this is decided exactly by the sign of
//! the tensor values on basis tuples. Positivity is equivalent to
//! nonnegativity of all mixed differences on the cone, but not to
//! nonnegativity of pure differences: [`counterexample_cubic`] has all pure
//! differences nonnegative on the cone and is not positive.

use serde::Serialize;

use crate::diff::{mixed_diff_at, pure_diff_at, symbolic_pure_diff};
use crate::poly::{rat, Monomial, ScalarPoly};
use crate::report::{cone_grid, DiffReport, SamplerConfig, Verdict, Witness, WitnessSet};
use crate::tensor::sorted_tuples;
use crate::vector::{self, Vector};
use crate::{Mapping, Rat, Result, SymTensor, VectorPoly};

/// Per-component outcome of [`is_positive`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPositivity {
    pub degree: usize,
    /// First basis tuple (0-based indices) with a negative value, if any.
    pub witness: Option<(Vec<usize>, Vector)>,
}

impl ComponentPositivity {
    pub fn is_nonneg(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityCertificate {
    pub positive: bool,
    pub components: Vec<ComponentPositivity>,
}

impl PositivityCertificate {
    /// The first failing component's witness.
    pub fn witness(&self) -> Option<(usize, &Vec<usize>, &Vector)> {
        self.components
            .iter()
            .find_map(|c| c.witness.as_ref().map(|(t, v)| (c.degree, t, v)))
    }
}

/// Exact positivity test: polarize every homogeneous component and check the
/// sign of each basis value.
pub fn is_positive(p: &VectorPoly) -> Result<PositivityCertificate> {
    let mut components = Vec::new();
    for (k, pk) in p.homogeneous_split().iter().enumerate() {
        let tensor = SymTensor::polarize_signs(pk, k)?;
        components.push(ComponentPositivity { degree: k, witness: tensor.negative_entry() });
    }
    let positive = components.iter().all(ComponentPositivity::is_nonneg);
    Ok(PositivityCertificate { positive, components })
}

fn mixed_label(r: usize) -> String {
    format!("mixed difference of order {r}")
}

fn pure_label(r: usize) -> String {
    format!("pure difference of order {r}")
}

/// Samples `diff^r f(x; h_1, ..., h_r) >= 0` on the cone for `r = 0..=r_max`.
///
/// A structured stage first evaluates every difference at the origin with
/// basis-vector increments; a random stage then draws `cfg.samples` seeded
/// cone points per order. Any negative value fails the check with a witness
/// (points listed as `x, h_1, ..., h_r`); otherwise the verdict is probabilistic.
pub fn mixed_diff_nonneg_sample<M: Mapping + ?Sized>(f: &M, r_max: usize, cfg: &SamplerConfig) -> Result<DiffReport> {
    cfg.validate()?;
    let n = f.nvars();
    let origin = vector::zeros(n);
    let mut structured = WitnessSet::default();
    let mut used = 0;
    for r in 0..=r_max {
        for tuple in sorted_tuples(n, r) {
            let hs: Vec<Vector> = tuple.iter().map(|&i| vector::basis(n, i)).collect();
            let value = mixed_diff_at(f, &origin, &hs)?;
            used += 1;
            if !vector::is_nonneg(&value) {
                let mut points = vec![origin.clone()];
                points.extend(hs);
                structured.push(Witness::new(mixed_label(r), points, value));
            }
        }
    }

    let mut random = WitnessSet::default();
    let mut sampler = cfg.sampler(2).cone();
    for _ in 0..cfg.samples {
        for r in 0..=r_max {
            let x = sampler.point(n);
            let hs: Vec<Vector> = (0..r).map(|_| sampler.point(n)).collect();
            let value = mixed_diff_at(f, &x, &hs)?;
            used += 1;
            if !vector::is_nonneg(&value) {
                let mut points = vec![x];
                points.extend(hs);
                random.push(Witness::new(mixed_label(r), points, value));
            }
        }
    }

    let failed = !structured.is_empty() || !random.is_empty();
    let mut report = DiffReport::new(if failed { Verdict::Fail } else { Verdict::Probabilistic }, cfg.seed);
    report.samples_used = used;
    report.witnesses = structured.into_sorted();
    report.witnesses.extend(random.into_sorted());
    Ok(report)
}

/// Outcome for one difference order of [`pure_diff_nonneg_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderVerdict {
    pub order: usize,
    pub verdict: Verdict,
    pub grid_points: usize,
    pub random_samples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureDiffCheck {
    pub report: DiffReport,
    pub orders: Vec<OrderVerdict>,
}

/// Checks `diff^r P(x; h^r) >= 0` for `x, h` in the cone and `r = 0..=r_max`.
///
/// For each order the symbolic difference in `[x | h]` is expanded first; if
/// every coefficient is nonnegative the order is certified. Otherwise the
/// order is sampled on the grid `{0, 1/2, 1, 3/2, 2}^(2n)` (strided down to
/// `cfg.grid_cap` points) and at `cfg.samples` seeded random cone pairs.
pub fn pure_diff_nonneg_check(p: &VectorPoly, r_max: usize, cfg: &SamplerConfig) -> Result<PureDiffCheck> {
    cfg.validate()?;
    let n = p.nvars();
    let mut verdict = Verdict::Certified;
    let mut orders = Vec::new();
    let mut witnesses = Vec::new();
    let mut used = 0;
    for r in 0..=r_max {
        let symbolic = symbolic_pure_diff(p, r)?;
        if symbolic.min_coefficient().is_none_or(|c| *c >= rat(0)) {
            orders.push(OrderVerdict { order: r, verdict: Verdict::Certified, grid_points: 0, random_samples: 0 });
            continue;
        }

        let mut found = WitnessSet::default();
        let mut check = |x: Vector, h: Vector| -> Result<()> {
            let value = pure_diff_at(p, &x, &h, r)?;
            if !vector::is_nonneg(&value) {
                found.push(Witness::new(pure_label(r), vec![x, h], value));
            }
            Ok(())
        };
        // h does not enter the zeroth difference, so grid only over x there.
        let grid = if r == 0 { cone_grid(n, cfg.grid_cap) } else { cone_grid(2 * n, cfg.grid_cap) };
        let grid_points = grid.len();
        for point in grid {
            let (x, h) = if r == 0 { (point, vector::zeros(n)) } else { (point[..n].to_vec(), point[n..].to_vec()) };
            check(x, h)?;
        }
        let mut sampler = cfg.sampler(3 + r as u64).cone();
        for _ in 0..cfg.samples {
            let x = sampler.point(n);
            let h = sampler.point(n);
            check(x, h)?;
        }
        used += grid_points + cfg.samples;
        let order_verdict = if found.is_empty() { Verdict::Probabilistic } else { Verdict::Fail };
        verdict = verdict.and(order_verdict);
        witnesses.extend(found.into_sorted());
        orders.push(OrderVerdict { order: r, verdict: order_verdict, grid_points, random_samples: cfg.samples });
    }
    let mut report = DiffReport::new(verdict, cfg.seed);
    report.samples_used = used;
    report.witnesses = witnesses;
    Ok(PureDiffCheck { report, orders })
}

/// The cubic on `Q^3`
/// `x1^3 + x2^3 + x3^3 + 3 x1^2 (x2 + x3) + 3 x2^2 (x1 + x3) + 3 x3^2 (x1 + x2) - 6 x1 x2 x3`,
/// whose pure differences are nonnegative on the cone although its
/// symmetric form takes the value `-1` at `(e1, e2, e3)`.
pub fn counterexample_cubic() -> VectorPoly {
    let mut terms = Vec::new();
    for i in 0..3 {
        let mut cube = [0u32; 3];
        cube[i] = 3;
        terms.push((Monomial::new(cube.to_vec()), rat(1)));
        for j in 0..3 {
            if j != i {
                let mut e = [0u32; 3];
                e[i] = 2;
                e[j] = 1;
                terms.push((Monomial::new(e.to_vec()), rat(3)));
            }
        }
    }
    terms.push((Monomial::new(vec![1, 1, 1]), rat(-6)));
    VectorPoly::scalar(ScalarPoly::from_terms(3, terms))
}

/// Every fact about [`counterexample_cubic`] that separates positivity from
/// pure-difference nonnegativity, computed rather than asserted.
#[derive(Clone, Debug)]
pub struct CounterexampleSuite {
    pub polynomial: VectorPoly,
    pub mixed_monomial_coefficient: Rat,
    pub positivity: PositivityCertificate,
    /// `diff^3 P(0; e1, e2, e3)`.
    pub basis_mixed_difference: Vector,
    pub value_at_111: Vector,
    pub value_at_110: Vector,
    pub mixed_check: DiffReport,
    pub pure_check: PureDiffCheck,
}

impl CounterexampleSuite {
    /// True when every computed fact matches the expected separation:
    /// not positive, a negative mixed difference, nonnegative pure differences.
    pub fn separates(&self) -> bool {
        !self.positivity.positive
            && !self.mixed_check.passed()
            && self.pure_check.report.passed()
            && self.basis_mixed_difference.iter().all(|v| *v < rat(0))
    }
}

pub fn counterexample_suite(r_max: usize, cfg: &SamplerConfig) -> Result<CounterexampleSuite> {
    let p = counterexample_cubic();
    let basis: Vec<Vector> = (0..3).map(|i| vector::basis(3, i)).collect();
    Ok(CounterexampleSuite {
        mixed_monomial_coefficient: p.coords()[0].coeff(&Monomial::new(vec![1, 1, 1])),
        positivity: is_positive(&p)?,
        basis_mixed_difference: mixed_diff_at(&p, &vector::zeros(3), &basis)?,
        value_at_111: p.evaluate(&vector::from_ints(&[1, 1, 1]))?,
        value_at_110: p.evaluate(&vector::from_ints(&[1, 1, 0]))?,
        mixed_check: mixed_diff_nonneg_sample(&p, r_max, cfg)?,
        pure_check: pure_diff_nonneg_check(&p, r_max, cfg)?,
        polynomial: p,
    })
}
