//! Truncated expansion of `∏(1−t^{eᵢ}) / ∏(1−t^{aⱼ})` with big-integer coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::wps::Weights;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("exponents must be at least 1, got {0}")]
    ZeroExponent(String),
    #[error("coefficient {requested} is beyond the truncation order {order}; re-expand with a larger order")]
    OutOfRange { requested: usize, order: usize },
    #[error("weight a_{index} = {weight} exceeds the degree {degree}, so ∂f/∂z_{index} cannot be nonzero")]
    DegeneratePartial { index: usize, weight: u64, degree: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeriesSpec {
    pub numerator: Vec<u64>,
    pub denominator: Vec<u64>,
    pub order: usize,
}

impl RationalSeriesSpec {
    pub fn new(numerator: Vec<u64>, denominator: Vec<u64>, order: usize) -> Result<Self, SeriesError> {
        if numerator.contains(&0) {
            return Err(SeriesError::ZeroExponent(format!("numerator {numerator:?}")));
        }
        if denominator.contains(&0) {
            return Err(SeriesError::ZeroExponent(format!("denominator {denominator:?}")));
        }
        Ok(RationalSeriesSpec { numerator, denominator, order })
    }

    /// Truncation order defaults to `max(m, Σ numerator)` so the socle degree is never cut off.
    pub fn with_default_order(numerator: Vec<u64>, denominator: Vec<u64>, m: usize) -> Result<Self, SeriesError> {
        let top = numerator.iter().sum::<u64>() as usize;
        Self::new(numerator, denominator, m.max(top))
    }

    pub fn with_order(&self, order: usize) -> Self {
        RationalSeriesSpec { order, ..self.clone() }
    }

    /// Remove factors `(1−t^e)` occurring in both numerator and denominator, as multisets.
    pub fn cancelled(&self) -> Self {
        let mut num = self.numerator.clone();
        let mut den = Vec::with_capacity(self.denominator.len());
        for &a in &self.denominator {
            if let Some(pos) = num.iter().position(|&e| e == a) {
                num.remove(pos);
            } else {
                den.push(a);
            }
        }
        RationalSeriesSpec { numerator: num, denominator: den, order: self.order }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    pub coeffs: Vec<BigInt>,
    pub spec: RationalSeriesSpec,
}

impl PowerSeries {
    pub fn coefficient(&self, m: usize) -> Result<&BigInt, SeriesError> {
        self.coeffs
            .get(m)
            .ok_or(SeriesError::OutOfRange { requested: m, order: self.spec.order })
    }

    pub fn order(&self) -> usize {
        self.spec.order
    }
}

pub fn expand(spec: &RationalSeriesSpec) -> PowerSeries {
    let len = spec.order + 1;
    let mut c = vec![BigInt::zero(); len];
    c[0] = BigInt::one();
    for &e in &spec.numerator {
        let e = e as usize;
        for i in (e..len).rev() {
            let shifted = c[i - e].clone();
            c[i] -= shifted;
        }
    }
    for &a in &spec.denominator {
        let a = a as usize;
        for i in a..len {
            let prev = c[i - a].clone();
            c[i] += prev;
        }
    }
    PowerSeries { coeffs: c, spec: spec.clone() }
}

pub fn coefficient(spec: &RationalSeriesSpec, m: usize) -> Result<BigInt, SeriesError> {
    expand(spec).coefficient(m).cloned()
}

/// Hilbert series of the Jacobian ring of a degree-`d` quasismooth hypersurface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum JacobianRing {
    /// Some `aᵢ = d`, so `∂f/∂zᵢ` is a nonzero constant and the ring is zero.
    Vanishing { index: usize },
    Series { spec: RationalSeriesSpec },
}

impl JacobianRing {
    pub fn dimension(&self, m: i64) -> Result<BigInt, SeriesError> {
        match self {
            JacobianRing::Vanishing { .. } => Ok(BigInt::zero()),
            JacobianRing::Series { spec } => {
                if m < 0 {
                    return Ok(BigInt::zero());
                }
                let m = m as usize;
                coefficient(&spec.with_order(spec.order.max(m)), m)
            }
        }
    }
}

/// `(d−a₀,…,d−aₙ)/(a₀,…,aₙ)` after cancellation, assuming the partials form a regular sequence.
pub fn jacobian_spec(w: &Weights, d: u64) -> Result<JacobianRing, SeriesError> {
    let a = w.as_slice();
    if let Some((index, &weight)) = a.iter().enumerate().find(|&(_, &x)| x > d) {
        return Err(SeriesError::DegeneratePartial { index, weight, degree: d });
    }
    if let Some(index) = a.iter().position(|&x| x == d) {
        return Ok(JacobianRing::Vanishing { index });
    }
    let numerator = a.iter().map(|&x| d - x).collect();
    let spec = RationalSeriesSpec::with_default_order(numerator, a.to_vec(), 0)?;
    Ok(JacobianRing::Series { spec: spec.cancelled() })
}
