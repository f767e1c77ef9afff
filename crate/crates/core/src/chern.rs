//! Euler characteristics from total Chern classes and branched covers.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::wps::Weights;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChernError {
    #[error("{k} equations in ℂP^{n} leave nothing to intersect (need k ≤ n)")]
    TooManyEquations { n: usize, k: usize },
    #[error("degrees must be at least 1, got {0:?}")]
    ZeroDegree(Vec<u64>),
    #[error("a branched cover needs at least two sheets, got {0}")]
    TooFewSheets(i64),
    #[error("({cover} + {sheets_minus_one}·{branch}) / {sheets} is not an integer; branch data is inconsistent")]
    NonIntegral { cover: i64, branch: i64, sheets: i64, sheets_minus_one: i64 },
    #[error("Euler characteristic {0} does not fit in 64 bits")]
    Overflow(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiEulerQuery {
    pub n: usize,
    pub degrees: Vec<u64>,
}

/// `(∏dᵢ) · [h^{n−k}] (1+h)^{n+1} / ∏(1+dᵢh)` for a smooth complete intersection in `ℂPⁿ`.
pub fn euler_ci(n: usize, degrees: &[u64]) -> Result<i64, ChernError> {
    let k = degrees.len();
    if k > n {
        return Err(ChernError::TooManyEquations { n, k });
    }
    if degrees.contains(&0) {
        return Err(ChernError::ZeroDegree(degrees.to_vec()));
    }
    let top = n - k;
    // (1+h)^{n+1} truncated at h^top
    let mut c: Vec<BigInt> = vec![BigInt::zero(); top + 1];
    c[0] = BigInt::one();
    for _ in 0..=n {
        for i in (1..=top).rev() {
            let prev = c[i - 1].clone();
            c[i] += prev;
        }
    }
    // divide by (1 + d h): c_i ← c_i − d·c_{i−1}
    for &d in degrees {
        let d = BigInt::from(d);
        for i in 1..=top {
            let prev = &c[i - 1] * &d;
            c[i] -= prev;
        }
    }
    let product: BigInt = degrees.iter().map(|&d| BigInt::from(d)).product();
    let chi = product * &c[top];
    chi.to_i64().ok_or(ChernError::Overflow(chi))
}

pub fn euler_ci_query(q: &CiEulerQuery) -> Result<i64, ChernError> {
    euler_ci(q.n, &q.degrees)
}

/// `χ(F) = (χ(F̃) + (m−1)·χ(F̃ ∩ Σ̃)) / m` for an `m`-sheeted cover branched along `Σ̃`.
pub fn branched_euler(cover: i64, branch: i64, sheets: i64) -> Result<i64, ChernError> {
    if sheets < 2 {
        return Err(ChernError::TooFewSheets(sheets));
    }
    let total = i128::from(cover) + i128::from(sheets - 1) * i128::from(branch);
    let m = i128::from(sheets);
    if total % m != 0 {
        return Err(ChernError::NonIntegral { cover, branch, sheets, sheets_minus_one: sheets - 1 });
    }
    let q = total / m;
    i64::try_from(q).map_err(|_| ChernError::Overflow(BigInt::from(q)))
}

/// `ℂPⁿ(a₀,…,aₙ)` has the rational cohomology of `ℂPⁿ`.
pub fn euler_wps(w: &Weights) -> i64 {
    w.as_slice().len() as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_from_the_octic_construction() {
        assert_eq!(euler_ci(4, &[8]), Ok(-2096));
        assert_eq!(euler_ci(4, &[8, 8]), Ok(7808));
        assert_eq!(euler_ci(3, &[8, 8]), Ok(-768));
        assert_eq!(euler_ci(3, &[8]), Ok(304));
    }

    #[test]
    fn projective_space_and_points() {
        for n in 0..8 {
            assert_eq!(euler_ci(n, &[]), Ok(n as i64 + 1));
        }
        assert_eq!(euler_ci(2, &[3, 5]), Ok(15));
        assert_eq!(euler_ci(1, &[2, 2]), Err(ChernError::TooManyEquations { n: 1, k: 2 }));
        assert!(matches!(euler_ci(3, &[0]), Err(ChernError::ZeroDegree(_))));
    }

    #[test]
    fn plane_curves_genus_formula() {
        for d in 1..12i64 {
            assert_eq!(euler_ci(2, &[d as u64]), Ok(-d * (d - 3)));
        }
    }

    #[test]
    fn k3_and_quintic() {
        assert_eq!(euler_ci(3, &[4]), Ok(24));
        assert_eq!(euler_ci(4, &[5]), Ok(-200));
        assert_eq!(euler_ci(5, &[3, 3]), Ok(-144));
    }

    #[test]
    fn branched_covers() {
        assert_eq!(branched_euler(-2096, 304, 4), Ok(-296));
        assert_eq!(branched_euler(7808, -768, 4), Ok(1376));
        assert_eq!(branched_euler(17, 17, 5), Ok(17));
        assert_eq!(branched_euler(12, 0, 4), Ok(3));
        assert_eq!(branched_euler(-2096, 7808, 4), Ok(5332));
        assert!(matches!(branched_euler(1, 0, 4), Err(ChernError::NonIntegral { .. })));
        assert_eq!(branched_euler(1, 1, 1), Err(ChernError::TooFewSheets(1)));
    }

    #[test]
    fn weighted_projective_spaces() {
        assert_eq!(euler_wps(&Weights::new(vec![1, 1, 1, 1, 4]).unwrap()), 5);
        assert_eq!(euler_wps(&Weights::new(vec![1, 1, 1, 1, 4, 4]).unwrap()), 6);
        assert_eq!(euler_wps(&Weights::new(vec![1, 1]).unwrap()), 2);
    }
}
