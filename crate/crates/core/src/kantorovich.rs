//! Extension of cone data to a positive polynomial on the whole space.
//!
//! Given `f` defined on the positive cone of `Q^n` whose pure differences of
//! order `m + 1` vanish and whose mixed differences are nonnegative, `f` is
//! the restriction of a unique positive polynomial `P` of degree at most `m`.
//! The construction only ever evaluates `f` on the cone:
//!
//! 1. the Newton expansion along a ray, `f(n x) = sum_k f_k(x) n^k`, defines
//!    the would-be homogeneous components `f_k` from differences at the origin;
//! 2. each `f_k` yields a symmetric form through
//!    `A(e_i1, ..., e_ik) = diff^k f_k(0; e_i1, ..., e_ik) / k!`, which only needs
//!    the cone points `sum delta_s e_is`;
//! 3. multilinear expansion extends each form to arbitrary arguments. This is
//!    the same as splitting every argument into positive and negative parts
//!    one variable at a time (see [`tensor_eval_by_jordan`]).
//!
//! Because the hypotheses quantify over the whole cone, they are checked at
//! seeded sample points; the resulting reports say so.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{binomial, factorial};
use crate::components::{least_degree, stirling_combination, DegreeSearch};
use crate::diff::{mixed_diff_at, pure_diff_at};
use crate::positivity::mixed_diff_nonneg_sample;
use crate::report::{DiffReport, SamplerConfig, Verdict, Witness, WitnessSet};
use crate::tensor::sorted_tuples;
use crate::vector::{self, Vector};
use crate::{Error, Mapping, Rat, Result, SymTensor, VectorPoly};

pub use crate::vector::jordan_parts;

fn int(v: usize) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

fn violation(condition: impl Into<String>, report: DiffReport) -> Error {
    Error::HypothesisViolation { condition: condition.into(), report: Box::new(report) }
}

#[derive(Clone, Debug)]
pub struct ExtensionResult {
    pub polynomial: VectorPoly,
    /// Symmetric form of component `k` at index `k`.
    pub components: Vec<SymTensor>,
    pub hypothesis_report: DiffReport,
    pub agreement_report: DiffReport,
}

/// Samples both extension hypotheses on the cone:
/// `diff^(m+1) f(x; h^(m+1)) = 0` exactly, and
/// `diff^k f(x; h_1, ..., h_k) >= 0` for `0 <= k <= m`, where `k = 0` is the
/// requirement that `f` maps the cone into the cone.
pub fn check_extension_hypotheses<M: Mapping + ?Sized>(f: &M, m: usize, cfg: &SamplerConfig) -> Result<DiffReport> {
    cfg.validate()?;
    let n = f.nvars();
    let order = m + 1;
    let label = format!("vanishing pure difference of order {order}");
    let origin = vector::zeros(n);
    let mut structured = WitnessSet::default();
    for i in 0..n {
        let h = vector::basis(n, i);
        let value = pure_diff_at(f, &origin, &h, order)?;
        if !vector::is_zero(&value) {
            structured.push(Witness::new(label.clone(), vec![origin.clone(), h], value));
        }
    }
    let mut random = WitnessSet::default();
    let mut sampler = cfg.sampler(4).cone();
    for _ in 0..cfg.samples {
        let x = sampler.point(n);
        let h = sampler.point(n);
        let value = pure_diff_at(f, &x, &h, order)?;
        if !vector::is_zero(&value) {
            random.push(Witness::new(label.clone(), vec![x, h], value));
        }
    }
    let vanishing_failed = !structured.is_empty() || !random.is_empty();
    let mut report = DiffReport::new(
        if vanishing_failed { Verdict::Fail } else { Verdict::Probabilistic },
        cfg.seed,
    );
    report.samples_used = n + cfg.samples;
    report.witnesses = structured.into_sorted();
    report.witnesses.extend(random.into_sorted());

    report.merge(mixed_diff_nonneg_sample(f, m, cfg)?);
    Ok(report)
}

/// Values `f(0), f(x), ..., f(m x)` rearranged into `f_0(x), ..., f_m(x)`
/// with `f(n x) = sum_k f_k(x) n^k`.
fn ray_components<M: Mapping + ?Sized>(f: &M, m: usize, x: &[Rat]) -> Result<Vec<Vector>> {
    let values = (0..=m)
        .map(|i| f.eval(&vector::scale(&int(i), x)))
        .collect::<Result<Vec<_>>>()?;
    let diffs: Vec<Vector> = (0..=m)
        .map(|j| {
            let mut acc = vector::zeros(f.codim());
            for (i, v) in values.iter().enumerate().take(j + 1) {
                let mut w = Rat::from_integer(binomial(j, i));
                if (j - i) % 2 == 1 {
                    w = -w;
                }
                vector::add_scaled(&mut acc, &w, v);
            }
            acc
        })
        .collect();
    Ok(stirling_combination(&diffs, f.codim()))
}

/// The components `f_0(x), ..., f_m(x)` of the Newton expansion of `f` along
/// the ray through `x`, with the expansion checked against `f(n x)` for
/// `n = 0..=m+1`.
pub fn cone_components<M: Mapping + ?Sized>(f: &M, m: usize, x: &[Rat]) -> Result<Vec<Vector>> {
    Error::check_dim(f.nvars(), x.len())?;
    if !vector::is_nonneg(x) {
        return Err(Error::OffCone(vector::format(x)));
    }
    let comps = ray_components(f, m, x)?;
    for n in 0..=m + 1 {
        let mut expansion = vector::zeros(f.codim());
        for (k, c) in comps.iter().enumerate() {
            vector::add_scaled(&mut expansion, &num_traits::pow(int(n), k), c);
        }
        let direct = f.eval(&vector::scale(&int(n), x))?;
        if expansion != direct {
            let mut report = DiffReport::new(Verdict::Fail, 0);
            report.witnesses.push(Witness::new(
                format!("ray expansion mismatch at multiple {n}"),
                vec![x.to_vec()],
                vector::sub(&direct, &expansion),
            ));
            return Err(violation(format!("f is not a polynomial of degree at most {m} along the ray"), report));
        }
    }
    Ok(comps)
}

/// The cone mapping `x -> f_k(x)`.
pub struct ConeComponent<'a, M: ?Sized> {
    f: &'a M,
    m: usize,
    k: usize,
}

impl<'a, M: Mapping + ?Sized> ConeComponent<'a, M> {
    pub fn new(f: &'a M, m: usize, k: usize) -> Self {
        assert!(k <= m, "component index {k} exceeds degree bound {m}");
        ConeComponent { f, m, k }
    }
}

impl<M: Mapping + ?Sized> Mapping for ConeComponent<'_, M> {
    fn nvars(&self) -> usize {
        self.f.nvars()
    }

    fn codim(&self) -> usize {
        self.f.codim()
    }

    fn eval(&self, x: &[Rat]) -> Result<Vector> {
        Error::check_dim(self.f.nvars(), x.len())?;
        if !vector::is_nonneg(x) {
            return Err(Error::OffCone(vector::format(x)));
        }
        Ok(ray_components(self.f, self.m, x)?.swap_remove(self.k))
    }
}

/// Builds the symmetric form of a `k`-homogeneous cone function from
/// `A(e_i1, ..., e_ik) = diff^k f(0; e_i1, ..., e_ik) / k!`.
///
/// The hypotheses `diff^(k+1) f(0; h^(k+1)) = 0` and `f(p x) = p^k f(x)` for
/// `p = 1, 2, 3` are sampled first, and afterwards the generated polynomial is
/// compared with `f`, and with `diff^k f(0; x^k) / k!`, at sampled cone points.
pub fn homogeneous_extend<M: Mapping + ?Sized>(f: &M, k: usize, cfg: &SamplerConfig) -> Result<SymTensor> {
    cfg.validate()?;
    let n = f.nvars();
    let origin = vector::zeros(n);
    let norm = Rat::one() / Rat::from_integer(factorial(k));
    let mut sampler = cfg.sampler(5 + k as u64).cone();

    let mut found = WitnessSet::default();
    let mut samples = 0;
    let points: Vec<Vector> = (0..n)
        .map(|i| vector::basis(n, i))
        .chain((0..cfg.samples).map(|_| sampler.point(n)))
        .collect();
    for h in &points {
        samples += 1;
        let value = pure_diff_at(f, &origin, h, k + 1)?;
        if !vector::is_zero(&value) {
            found.push(Witness::new(
                format!("vanishing pure difference of order {}", k + 1),
                vec![origin.clone(), h.clone()],
                value,
            ));
        }
        let base = f.eval(h)?;
        for p in 1..=3usize {
            let scaled = f.eval(&vector::scale(&int(p), h))?;
            let expected = vector::scale(&num_traits::pow(int(p), k), &base);
            if scaled != expected {
                found.push(Witness::new(
                    format!("homogeneity of degree {k} at multiple {p}"),
                    vec![h.clone()],
                    vector::sub(&scaled, &expected),
                ));
            }
        }
    }
    if !found.is_empty() {
        let mut report = DiffReport::new(Verdict::Fail, cfg.seed);
        report.samples_used = samples;
        report.witnesses = found.into_sorted();
        return Err(violation(format!("component {k} is not {k}-homogeneous"), report));
    }

    let mut tensor = SymTensor::zero(k, n, f.codim());
    for tuple in sorted_tuples(n, k) {
        let hs: Vec<Vector> = tuple.iter().map(|&i| vector::basis(n, i)).collect();
        let value = mixed_diff_at(f, &origin, &hs)?;
        tensor.set(&tuple, vector::scale(&norm, &value))?;
    }

    let generated = tensor.to_poly();
    let mut mismatches = WitnessSet::default();
    for x in &points {
        let direct = f.eval(x)?;
        let via_difference = vector::scale(&norm, &pure_diff_at(f, &origin, x, k)?);
        let via_tensor = generated.evaluate(x)?;
        if via_difference != direct || via_tensor != direct {
            mismatches.push(Witness::new(
                format!("extension of component {k} disagrees"),
                vec![x.clone()],
                vector::sub(&via_tensor, &direct),
            ));
        }
    }
    if !mismatches.is_empty() {
        let mut report = DiffReport::new(Verdict::Fail, cfg.seed);
        report.samples_used = points.len();
        report.witnesses = mismatches.into_sorted();
        return Err(violation(format!("component {k} does not extend"), report));
    }
    Ok(tensor)
}

/// Extends `f`, known on the cone, to the unique positive polynomial of
/// degree at most `m` agreeing with it there.
pub fn kantorovich_extend<M: Mapping + ?Sized>(f: &M, m: usize, cfg: &SamplerConfig) -> Result<ExtensionResult> {
    let hypothesis_report = check_extension_hypotheses(f, m, cfg)?;
    if !hypothesis_report.passed() {
        let condition = match hypothesis_report.witnesses.first() {
            Some(w) if w.label.starts_with("vanishing") => {
                format!("pure differences of order {} must vanish on the cone", m + 1)
            }
            _ => "mixed differences must be nonnegative on the cone".to_string(),
        };
        return Err(violation(condition, hypothesis_report));
    }

    let mut components = Vec::with_capacity(m + 1);
    let mut polynomial = VectorPoly::zero(f.nvars(), f.codim());
    for k in 0..=m {
        let fk = ConeComponent::new(f, m, k);
        let tensor = homogeneous_extend(&fk, k, cfg)?;
        polynomial = &polynomial + &tensor.to_poly();
        components.push(tensor);
    }

    let mut sampler = cfg.sampler(99).cone();
    let mut mismatches = WitnessSet::default();
    for _ in 0..cfg.samples {
        let x = sampler.point(f.nvars());
        let direct = f.eval(&x)?;
        let extended = polynomial.evaluate(&x)?;
        if direct != extended {
            mismatches.push(Witness::new("extension disagrees with f", vec![x], vector::sub(&extended, &direct)));
        }
    }
    let mut agreement_report = DiffReport::new(
        if mismatches.is_empty() { Verdict::Probabilistic } else { Verdict::Fail },
        cfg.seed,
    );
    agreement_report.samples_used = cfg.samples;
    agreement_report.witnesses = mismatches.into_sorted();
    if !agreement_report.passed() {
        return Err(violation("the extension does not reproduce f on the cone", agreement_report));
    }

    Ok(ExtensionResult { polynomial, components, hypothesis_report, agreement_report })
}

/// Least `m <= cap` passing the cone-sampled degree test, followed by the
/// extension at that degree.
pub fn kantorovich_extend_search<M: Mapping + ?Sized>(
    f: &M,
    cap: usize,
    cfg: &SamplerConfig,
) -> Result<(DegreeSearch, ExtensionResult)> {
    let search = least_degree(f, cap, &cfg.clone().cone())?;
    let m = search.degree.ok_or_else(|| {
        violation(format!("no degree up to {cap} makes the differences vanish"), search.report.clone())
    })?;
    let result = kantorovich_extend(f, m, cfg)?;
    Ok((search, result))
}

/// Evaluates a symmetric form at arbitrary arguments using only cone
/// arguments: `A(x, ...) = A(x+, ...) - A(x-, ...)`, one slot at a time.
pub fn tensor_eval_by_jordan(a: &SymTensor, args: &[Vector]) -> Result<Vector> {
    Error::check_dim(a.order(), args.len())?;
    fn rec(a: &SymTensor, args: &mut Vec<Vector>, slot: usize) -> Result<Vector> {
        if slot == args.len() {
            debug_assert!(args.iter().all(|v| vector::is_nonneg(v)));
            return a.eval(args);
        }
        let original = args[slot].clone();
        let (pos, neg) = jordan_parts(&original);
        args[slot] = pos;
        let plus = rec(a, args, slot + 1)?;
        let minus = if neg.iter().all(Zero::is_zero) {
            vector::zeros(a.codim())
        } else {
            args[slot] = neg;
            rec(a, args, slot + 1)?
        };
        args[slot] = original;
        Ok(vector::sub(&plus, &minus))
    }
    rec(a, &mut args.to_vec(), 0)
}
