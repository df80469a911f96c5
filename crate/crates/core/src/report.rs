//! Verdicts, witnesses and seeded sampling shared by every check.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::vector::{self, Vector};
use crate::Rat;

/// Witnesses kept per sampling stage; further failures only bump the count.
pub const MAX_WITNESSES: usize = 16;

/// Outcome of a check.
///
/// `Pass` is an exact verdict reached by finite reasoning, `Certified` an
/// exact verdict backed by a coefficient certificate, and `Probabilistic`
/// means sampling found no counterexample. `Fail` always carries a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Certified,
    Probabilistic,
    Fail,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self != Verdict::Fail
    }

    /// Combines two verdicts over the same claim: any failure wins, otherwise
    /// the weaker form of evidence.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Probabilistic, _) | (_, Probabilistic) => Probabilistic,
            (Certified, _) | (_, Certified) => Certified,
            (Pass, Pass) => Pass,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Certified => "certified",
            Verdict::Probabilistic => "probabilistic",
            Verdict::Fail => "fail",
        }
    }
}

/// A concrete evaluation supporting a verdict: the points involved (base
/// point first, then increments) and the resulting value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    pub label: String,
    pub points: Vec<Vector>,
    pub value: Vector,
}

impl Witness {
    pub fn new(label: impl Into<String>, points: Vec<Vector>, value: Vector) -> Self {
        Witness { label: label.into(), points, value }
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let points: Vec<Vec<String>> = self.points.iter().map(|p| vector::to_strings(p)).collect();
        let mut s = serializer.serialize_struct("Witness", 3)?;
        s.serialize_field("label", &self.label)?;
        s.serialize_field("points", &points)?;
        s.serialize_field("value", &vector::to_strings(&self.value))?;
        s.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffReport {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    #[serde(rename = "samples")]
    pub samples_used: usize,
    pub seed: u64,
}

impl DiffReport {
    pub fn new(verdict: Verdict, seed: u64) -> Self {
        DiffReport { verdict, witnesses: Vec::new(), samples_used: 0, seed }
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    /// Folds another report over the same seed into this one.
    pub fn merge(&mut self, other: DiffReport) {
        self.verdict = self.verdict.and(other.verdict);
        self.witnesses.extend(other.witnesses);
        self.samples_used += other.samples_used;
    }
}

/// Collects failing evaluations for one sampling stage in canonical order.
#[derive(Debug, Default)]
pub(crate) struct WitnessSet {
    found: Vec<Witness>,
    failures: usize,
}

impl WitnessSet {
    pub(crate) fn push(&mut self, w: Witness) {
        self.failures += 1;
        self.found.push(w);
        if self.found.len() > 4 * MAX_WITNESSES {
            self.trim();
        }
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.failures == 0
    }

    fn trim(&mut self) {
        self.found.sort();
        self.found.dedup();
        self.found.truncate(MAX_WITNESSES);
    }

    pub(crate) fn into_sorted(mut self) -> Vec<Witness> {
        self.trim();
        self.found
    }
}

/// Parameters of seeded rational sampling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub samples: usize,
    /// Numerators are drawn from `[-numerator_bound, numerator_bound]`, or
    /// `[0, numerator_bound]` when sampling the cone.
    pub numerator_bound: u64,
    /// Denominators are drawn from `[1, denominator_bound]`.
    pub denominator_bound: u64,
    pub cone_only: bool,
    /// Largest number of points taken from a deterministic grid.
    pub grid_cap: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 0,
            samples: 64,
            numerator_bound: 20,
            denominator_bound: 8,
            cone_only: false,
            grid_cap: 15_625,
        }
    }
}

impl SamplerConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn cone(mut self) -> Self {
        self.cone_only = true;
        self
    }

    pub fn validate(&self) -> crate::Result<()> {
        if self.samples == 0 || self.numerator_bound == 0 || self.denominator_bound == 0 {
            return Err(crate::Error::InvalidArgument(
                "sample count and rational bounds must be at least one".into(),
            ));
        }
        Ok(())
    }

    /// Sampler for this configuration, with the seed offset by `stream` so
    /// independent stages draw independent points reproducibly.
    pub fn sampler(&self, stream: u64) -> RatSampler {
        RatSampler {
            rng: ChaCha8Rng::seed_from_u64(self.seed.wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))),
            numerator_bound: self.numerator_bound.min(i64::MAX as u64) as i64,
            denominator_bound: self.denominator_bound.min(i64::MAX as u64) as i64,
            cone: self.cone_only,
        }
    }
}

/// Deterministic source of random rationals.
#[derive(Clone, Debug)]
pub struct RatSampler {
    rng: ChaCha8Rng,
    numerator_bound: i64,
    denominator_bound: i64,
    cone: bool,
}

impl RatSampler {
    pub fn cone(mut self) -> Self {
        self.cone = true;
        self
    }

    pub fn rat(&mut self) -> Rat {
        let low = if self.cone { 0 } else { -self.numerator_bound };
        let num = self.rng.random_range(low..=self.numerator_bound);
        let den = self.rng.random_range(1..=self.denominator_bound);
        Rat::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn point(&mut self, n: usize) -> Vector {
        (0..n).map(|_| self.rat()).collect()
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }
}

/// Step and size of the default cone grid `{0, 1/2, 1, 3/2, 2}`.
pub const GRID_LEVELS: usize = 5;

/// Points of `{0, 1/2, 1, 3/2, 2}^dim` in lexicographic order. When the grid
/// has more than `cap` points an evenly strided subset of `cap` points is used.
pub fn cone_grid(dim: usize, cap: usize) -> Vec<Vector> {
    let total = (GRID_LEVELS as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    let take = total.min(cap as u128);
    if take == 0 {
        return Vec::new();
    }
    let levels: Vec<Rat> = (0..GRID_LEVELS).map(|i| Rat::new(BigInt::from(i), BigInt::from(2))).collect();
    (0..take)
        .map(|t| {
            let mut index = t * total / take;
            let mut point = vec![levels[0].clone(); dim];
            for slot in (0..dim).rev() {
                point[slot] = levels[(index % GRID_LEVELS as u128) as usize].clone();
                index /= GRID_LEVELS as u128;
            }
            point
        })
        .collect()
}
