//! Evaluable mappings `Q^n -> Q^m`.
//!
//! The difference operators only need point evaluation, so they accept any
//! [`Mapping`]. Polynomials implement it directly and also expose themselves
//! through [`Mapping::as_polynomial`], which lets checks switch to exact
//! symbolic reasoning when the structure is available.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;

use crate::vector::{self, Vector};
use crate::{Error, Rat, Result, VectorPoly};

pub trait Mapping {
    fn nvars(&self) -> usize;

    fn codim(&self) -> usize;

    /// Evaluates at `x`; callers guarantee `x.len() == self.nvars()`.
    fn eval(&self, x: &[Rat]) -> Result<Vector>;

    /// The underlying polynomial, when the mapping is known to be one.
    fn as_polynomial(&self) -> Option<&VectorPoly> {
        None
    }
}

impl Mapping for VectorPoly {
    fn nvars(&self) -> usize {
        VectorPoly::nvars(self)
    }

    fn codim(&self) -> usize {
        VectorPoly::codim(self)
    }

    fn eval(&self, x: &[Rat]) -> Result<Vector> {
        self.evaluate(x)
    }

    fn as_polynomial(&self) -> Option<&VectorPoly> {
        Some(self)
    }
}

impl<M: Mapping + ?Sized> Mapping for &M {
    fn nvars(&self) -> usize {
        (**self).nvars()
    }

    fn codim(&self) -> usize {
        (**self).codim()
    }

    fn eval(&self, x: &[Rat]) -> Result<Vector> {
        (**self).eval(x)
    }

    fn as_polynomial(&self) -> Option<&VectorPoly> {
        (**self).as_polynomial()
    }
}

/// An opaque mapping backed by a closure.
pub struct FnMapping<F> {
    nvars: usize,
    codim: usize,
    f: F,
}

impl<F> FnMapping<F>
where
    F: Fn(&[Rat]) -> Vector,
{
    pub fn new(nvars: usize, codim: usize, f: F) -> Self {
        FnMapping { nvars, codim, f }
    }
}

impl<F> Mapping for FnMapping<F>
where
    F: Fn(&[Rat]) -> Vector,
{
    fn nvars(&self) -> usize {
        self.nvars
    }

    fn codim(&self) -> usize {
        self.codim
    }

    fn eval(&self, x: &[Rat]) -> Result<Vector> {
        Error::check_dim(self.nvars, x.len())?;
        let y = (self.f)(x);
        Error::check_dim(self.codim, y.len())?;
        Ok(y)
    }
}

impl<F> fmt::Debug for FnMapping<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnMapping").field("nvars", &self.nvars).field("codim", &self.codim).finish()
    }
}

/// Restriction of a mapping to the positive cone. Evaluating off the cone is
/// an error, and the inner mapping is hidden so that consumers treat it as
/// opaque cone data.
#[derive(Clone, Debug)]
pub struct ConeRestriction<M> {
    inner: M,
}

impl<M: Mapping> ConeRestriction<M> {
    pub fn new(inner: M) -> Self {
        ConeRestriction { inner }
    }

    pub fn into_inner(self) -> M {
        self.inner
    }
}

impl<M: Mapping> Mapping for ConeRestriction<M> {
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    fn codim(&self) -> usize {
        self.inner.codim()
    }

    fn eval(&self, x: &[Rat]) -> Result<Vector> {
        if !vector::is_nonneg(x) {
            return Err(Error::OffCone(vector::format(x)));
        }
        self.inner.eval(x)
    }
}

/// A mapping known only through a finite table of exact samples.
#[derive(Clone, Debug, PartialEq)]
pub struct TableFunction {
    nvars: usize,
    codim: usize,
    values: BTreeMap<Vector, Vector>,
}

#[derive(Deserialize)]
struct TableFile {
    nvars: usize,
    codim: usize,
    samples: Vec<TableEntry>,
}

#[derive(Deserialize)]
struct TableEntry {
    point: Vec<String>,
    value: Vec<String>,
}

impl TableFunction {
    pub fn new(nvars: usize, codim: usize, samples: impl IntoIterator<Item = (Vector, Vector)>) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (point, value) in samples {
            Error::check_dim(nvars, point.len())?;
            Error::check_dim(codim, value.len())?;
            if let Some(previous) = values.insert(point.clone(), value.clone()) {
                if previous != value {
                    return Err(Error::InvalidArgument(format!(
                        "conflicting values at {}",
                        vector::format(&point)
                    )));
                }
            }
        }
        Ok(TableFunction { nvars, codim, values })
    }

    /// Reads `{"nvars": n, "codim": m, "samples": [{"point": [..], "value": [..]}]}`
    /// with every entry written as an exact rational string such as `"3/4"`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("invalid table: {e}")))?;
        let parse = |entries: &[String]| -> Result<Vector> {
            entries
                .iter()
                .map(|s| {
                    s.trim()
                        .parse::<Rat>()
                        .map_err(|_| Error::InvalidArgument(format!("invalid rational `{s}` in table")))
                })
                .collect()
        };
        let samples = file
            .samples
            .iter()
            .map(|e| Ok((parse(&e.point)?, parse(&e.value)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.nvars, file.codim, samples)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn samples(&self) -> impl Iterator<Item = (&Vector, &Vector)> {
        self.values.iter()
    }
}

impl Mapping for TableFunction {
    fn nvars(&self) -> usize {
        self.nvars
    }

    fn codim(&self) -> usize {
        self.codim
    }

    fn eval(&self, x: &[Rat]) -> Result<Vector> {
        Error::check_dim(self.nvars, x.len())?;
        self.values
            .get(x)
            .cloned()
            .ok_or_else(|| Error::MissingSample(vector::format(x)))
    }
}
