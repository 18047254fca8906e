//! Jacobi coefficient sequences `(a_n, b_n)`, `n ≥ 1`, described by rules.
//!
//! Sequences are evaluated lazily, one index at a time, so constructions
//! reaching millions of sites never materialize an array. The JSON form
//! `{"kind": ..., "params": {...}}` is the interchange format of the CLI:
//!
//! | kind                 | params                                              |
//! |----------------------|-----------------------------------------------------|
//! | `Constant`           | `{"a": f64, "b": f64}`                              |
//! | `Periodic`           | `{"a": [f64; q], "b": [f64; q]}`                    |
//! | `EventuallyPeriodic` | `{"base": spec, "q": usize, "blocks": usize}`       |
//! | `CosinePower`        | `{"lambda": f64, "gamma": f64}` (a ≡ 1, b = λ cos nᵞ) |
//! | `Theorem15Schedule`  | a serialized [`Schedule`]                           |
//! | `Explicit`           | `{"a": [f64], "b": [f64]}` (finite)                 |

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::constructions::Schedule;
use crate::error::{Error, Result};

/// Anything that yields Jacobi coefficients by index.
pub trait JacobiCoefficients {
    /// `(a_n, b_n)` for `n ≥ 1`.
    fn coefficients(&self, n: usize) -> Result<(f64, f64)>;

    /// Largest valid index for finite sequences.
    fn horizon(&self) -> Option<usize> {
        None
    }
}

impl<T: JacobiCoefficients + ?Sized> JacobiCoefficients for &T {
    fn coefficients(&self, n: usize) -> Result<(f64, f64)> {
        (**self).coefficients(n)
    }

    fn horizon(&self) -> Option<usize> {
        (**self).horizon()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params")]
pub enum CoefficientSpec {
    Constant { a: f64, b: f64 },
    Periodic { a: Vec<f64>, b: Vec<f64> },
    /// The first `(blocks + 1) q` coefficients of `base`, continued q-periodically.
    EventuallyPeriodic { base: Box<CoefficientSpec>, q: usize, blocks: usize },
    CosinePower { lambda: f64, gamma: f64 },
    Theorem15Schedule(Schedule),
    /// Finite list; intended for tests.
    Explicit { a: Vec<f64>, b: Vec<f64> },
}

fn check_pair(a: &[f64], b: &[f64]) -> Result<()> {
    if a.is_empty() || a.len() != b.len() {
        return Err(Error::spec(format!(
            "need equal nonempty a/b lists, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if let Some(bad) = a.iter().find(|&&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::spec(format!("off-diagonal entries must be positive and finite, got {bad}")));
    }
    if b.iter().any(|x| !x.is_finite()) {
        return Err(Error::spec("diagonal entries must be finite"));
    }
    Ok(())
}

impl CoefficientSpec {
    pub fn free() -> Self {
        CoefficientSpec::Constant { a: 1.0, b: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CoefficientSpec::Constant { a, b } => check_pair(&[*a], &[*b]),
            CoefficientSpec::Periodic { a, b } | CoefficientSpec::Explicit { a, b } => check_pair(a, b),
            CoefficientSpec::EventuallyPeriodic { base, q, .. } => {
                if *q == 0 {
                    return Err(Error::spec("period q must be at least 1"));
                }
                base.validate()
            }
            CoefficientSpec::CosinePower { lambda, gamma } => {
                if !(lambda.is_finite() && gamma.is_finite() && *gamma >= 0.0) {
                    return Err(Error::spec("CosinePower needs finite lambda and gamma >= 0"));
                }
                Ok(())
            }
            CoefficientSpec::Theorem15Schedule(s) => s.validate(),
        }
    }

    /// Parses and validates a JSON document.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: CoefficientSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        CoefficientSpec::from_json(&std::fs::read_to_string(path)?)
    }

    /// Declared period for exactly periodic kinds.
    pub fn period(&self) -> Option<usize> {
        match self {
            CoefficientSpec::Constant { .. } => Some(1),
            CoefficientSpec::Periodic { a, .. } => Some(a.len()),
            _ => None,
        }
    }
}

impl JacobiCoefficients for CoefficientSpec {
    fn coefficients(&self, n: usize) -> Result<(f64, f64)> {
        if n == 0 {
            return Err(Error::domain("coefficient indices start at 1"));
        }
        match self {
            CoefficientSpec::Constant { a, b } => Ok((*a, *b)),
            CoefficientSpec::Periodic { a, b } => {
                let i = (n - 1) % a.len();
                Ok((a[i], b[i]))
            }
            CoefficientSpec::EventuallyPeriodic { base, q, blocks } => {
                base.coefficients(eventually_periodic_index(n, *q, *blocks))
            }
            CoefficientSpec::CosinePower { lambda, gamma } => {
                Ok((1.0, lambda * (n as f64).powf(*gamma).cos()))
            }
            CoefficientSpec::Theorem15Schedule(s) => Ok((1.0, s.b(n)?)),
            CoefficientSpec::Explicit { a, b } => {
                if n > a.len() {
                    return Err(Error::Horizon { n, horizon: a.len() });
                }
                Ok((a[n - 1], b[n - 1]))
            }
        }
    }

    fn horizon(&self) -> Option<usize> {
        match self {
            CoefficientSpec::Explicit { a, .. } => Some(a.len()),
            CoefficientSpec::Theorem15Schedule(s) => Some(s.horizon()),
            CoefficientSpec::EventuallyPeriodic { base, q, blocks } => match base.horizon() {
                Some(h) if h < (blocks + 1) * q => Some(h),
                _ => None,
            },
            _ => None,
        }
    }
}

/// Index into the base sequence: `mq + r ↦ min(m, blocks) q + r`.
pub(crate) fn eventually_periodic_index(n: usize, q: usize, blocks: usize) -> usize {
    let m = (n - 1) / q;
    let r = (n - 1) % q + 1;
    m.min(blocks) * q + r
}

/// Evaluates `spec` at `n`.
pub fn eval_coefficients(spec: &CoefficientSpec, n: usize) -> Result<(f64, f64)> {
    spec.coefficients(n)
}

/// One period of a two-sided q-periodic Jacobi matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPeriodic")]
pub struct PeriodicJacobi {
    a: Vec<f64>,
    b: Vec<f64>,
}

#[derive(Deserialize)]
struct RawPeriodic {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl TryFrom<RawPeriodic> for PeriodicJacobi {
    type Error = Error;

    fn try_from(raw: RawPeriodic) -> Result<Self> {
        PeriodicJacobi::new(raw.a, raw.b)
    }
}

impl PeriodicJacobi {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        check_pair(&a, &b)?;
        Ok(PeriodicJacobi { a, b })
    }

    /// `a ≡ 1`, `b ≡ 0` with period `q`.
    pub fn free(q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::domain("period q must be at least 1"));
        }
        PeriodicJacobi::new(vec![1.0; q], vec![0.0; q])
    }

    pub fn q(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// `b + c` on every site.
    pub fn shifted(&self, c: f64) -> Self {
        PeriodicJacobi { a: self.a.clone(), b: self.b.iter().map(|x| x + c).collect() }
    }

    /// Cyclic rotation of the period by `k` sites.
    pub fn rotated(&self, k: usize) -> Self {
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        a.rotate_left(k % self.q());
        b.rotate_left(k % self.q());
        PeriodicJacobi { a, b }
    }

    /// The same operator viewed with period `k q`.
    pub fn repeated(&self, k: usize) -> Self {
        PeriodicJacobi { a: self.a.repeat(k.max(1)), b: self.b.repeat(k.max(1)) }
    }

    pub fn to_spec(&self) -> CoefficientSpec {
        CoefficientSpec::Periodic { a: self.a.clone(), b: self.b.clone() }
    }
}

impl JacobiCoefficients for PeriodicJacobi {
    fn coefficients(&self, n: usize) -> Result<(f64, f64)> {
        if n == 0 {
            return Err(Error::domain("coefficient indices start at 1"));
        }
        let i = (n - 1) % self.q();
        Ok((self.a[i], self.b[i]))
    }
}
