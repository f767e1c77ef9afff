//! Hodge diamonds, Betti numbers and signatures of the building blocks.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{self, JacobianRing, RationalSeriesSpec, SeriesError};
use crate::wps::Weights;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("diamond of dimension {n} needs {expected} rows, got {actual}")]
    RowCount { n: usize, expected: usize, actual: usize },
    #[error("row {row} of a dimension-{n} diamond needs {expected} entries, got {actual}")]
    RowLength { n: usize, row: usize, expected: usize, actual: usize },
    #[error("Hodge number h^{{{p},{q}}} = {value} is negative")]
    Negative { p: usize, q: usize, value: i64 },
    #[error("signature is only defined in even complex dimension, got {0}")]
    OddDimension(usize),
    #[error("q = {q} exceeds dim X = {dim}")]
    DegreeAboveDimension { q: usize, dim: usize },
    #[error("{k} equations do not cut a subvariety of ℂP^{n}")]
    TooManyEquations { n: usize, k: usize },
    #[error("h^{{1,1}} = χ − 2 − 2h^{{0,2}} = {chi} − 2 − 2·{h02} = {value} is negative")]
    NegativeH11 { chi: i64, h02: i64, value: i64 },
    #[error("χ = {0} of a Calabi-Yau threefold must be even")]
    OddEuler(i64),
    #[error("h^{{2,1}} = h^{{1,1}} − χ/2 = {h11} − {half} = {value} is negative")]
    NegativeH21 { h11: i64, half: i64, value: i64 },
    #[error("graded dimension {0} does not fit in 64 bits")]
    Overflow(BigInt),
}

fn small(v: BigInt) -> Result<i64, CohomologyError> {
    v.to_i64().ok_or(CohomologyError::Overflow(v))
}

/// `h[p][q]` for `0 ≤ p, q ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeDiamond {
    pub n: usize,
    pub h: Vec<Vec<i64>>,
}

impl HodgeDiamond {
    pub fn zero(n: usize) -> Self {
        HodgeDiamond { n, h: vec![vec![0; n + 1]; n + 1] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Result<Self, CohomologyError> {
        let mut d = Self::zero(n);
        for p in 0..=n {
            for q in 0..=n {
                let value = f(p, q);
                if value < 0 {
                    return Err(CohomologyError::Negative { p, q, value });
                }
                d.h[p][q] = value;
            }
        }
        Ok(d)
    }

    /// Rows of the diamond as printed, top to bottom: row `k` lists `h^{p,q}`
    /// with `p + q = k`, `p` decreasing.
    pub fn from_rows(n: usize, rows: &[Vec<i64>]) -> Result<Self, CohomologyError> {
        if rows.len() != 2 * n + 1 {
            return Err(CohomologyError::RowCount { n, expected: 2 * n + 1, actual: rows.len() });
        }
        let mut d = Self::zero(n);
        for (k, row) in rows.iter().enumerate() {
            let cells = Self::row_cells(n, k);
            if row.len() != cells.len() {
                return Err(CohomologyError::RowLength { n, row: k, expected: cells.len(), actual: row.len() });
            }
            for (&(p, q), &value) in cells.iter().zip(row) {
                if value < 0 {
                    return Err(CohomologyError::Negative { p, q, value });
                }
                d.h[p][q] = value;
            }
        }
        Ok(d)
    }

    fn row_cells(n: usize, k: usize) -> Vec<(usize, usize)> {
        let p_max = k.min(n);
        let p_min = k.saturating_sub(n);
        (p_min..=p_max).rev().map(|p| (p, k - p)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..=2 * self.n)
            .map(|k| Self::row_cells(self.n, k).into_iter().map(|(p, q)| self.h[p][q]).collect())
            .collect()
    }

    pub fn get(&self, p: usize, q: usize) -> i64 {
        self.h[p][q]
    }

    pub fn middle_row(&self) -> Vec<i64> {
        self.rows().swap_remove(self.n)
    }

    pub fn betti(&self) -> Vec<i64> {
        self.rows().iter().map(|r| r.iter().sum()).collect()
    }

    pub fn euler(&self) -> i64 {
        self.betti().iter().enumerate().map(|(k, b)| if k % 2 == 0 { *b } else { -b }).sum()
    }

    pub fn conjugation_symmetric(&self) -> bool {
        (0..=self.n).all(|p| (0..=self.n).all(|q| self.h[p][q] == self.h[q][p]))
    }

    pub fn serre_symmetric(&self) -> bool {
        let n = self.n;
        (0..=n).all(|p| (0..=n).all(|q| self.h[p][q] == self.h[n - p][n - q]))
    }

    pub fn is_symmetric(&self) -> bool {
        self.conjugation_symmetric() && self.serre_symmetric()
    }
}

impl fmt::Display for HodgeDiamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows();
        let cell = rows.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1).max(1);
        let width = (2 * self.n + 1) * (cell + 1);
        for row in rows {
            let text = row.iter().map(|v| format!("{v:^cell$}")).collect::<Vec<_>>().join(&" ".repeat(cell + 1));
            writeln!(f, "{}", format!("{text:^width$}").trim_end())?;
        }
        Ok(())
    }
}

/// `Σ (−1)^q h^{p,q}` over the diamond (Hodge index theorem).
pub fn hodge_signature(d: &HodgeDiamond) -> Result<i64, CohomologyError> {
    if d.n % 2 == 1 {
        return Err(CohomologyError::OddDimension(d.n));
    }
    Ok((0..=d.n)
        .flat_map(|p| (0..=d.n).map(move |q| (p, q)))
        .map(|(p, q)| if q % 2 == 0 { d.h[p][q] } else { -d.h[p][q] })
        .sum())
}

/// Diamond of a quasismooth hypersurface `X_d ⊂ ℂPⁿ(a₀,…,aₙ)`:
/// `h^{p,q} = δ_{pq}` off the middle row and
/// `h^{p,n−1−p} = dim R(f)_{qd+d−Σa} + δ_{pq}` on it.
pub fn hypersurface_hodge(w: &Weights, d: u64) -> Result<HodgeDiamond, CohomologyError> {
    let ring = series::jacobian_spec(w, d)?;
    hodge_from_jacobian(w, d, &ring)
}

pub fn hodge_from_jacobian(w: &Weights, d: u64, ring: &JacobianRing) -> Result<HodgeDiamond, CohomologyError> {
    let n = w.dimension() - 1;
    let alpha = d as i64 - w.sum() as i64;
    let mut out = HodgeDiamond::zero(n);
    for p in 0..=n {
        for q in 0..=n {
            let diagonal = i64::from(p == q);
            out.h[p][q] = if p + q == n {
                small(ring.dimension(q as i64 * d as i64 + alpha)?)? + diagonal
            } else {
                diagonal
            };
        }
    }
    Ok(out)
}

/// `h^q(X, O_X(m))` of a well-formed quasismooth weighted complete intersection.
pub fn ci_h0q(w: &Weights, degrees: &[u64], m: i64, q: usize) -> Result<i64, CohomologyError> {
    let n = w.dimension();
    if degrees.len() > n {
        return Err(CohomologyError::TooManyEquations { n, k: degrees.len() });
    }
    let dim = n - degrees.len();
    if q > dim {
        return Err(CohomologyError::DegreeAboveDimension { q, dim });
    }
    let alpha = degrees.iter().sum::<u64>() as i64 - w.sum() as i64;
    let graded = |k: i64| -> Result<i64, CohomologyError> {
        if k < 0 {
            return Ok(0);
        }
        let spec = RationalSeriesSpec::with_default_order(degrees.to_vec(), w.as_slice().to_vec(), k as usize)?;
        small(series::coefficient(&spec, k as usize)?)
    };
    if q == 0 {
        graded(m)
    } else if q < dim {
        Ok(0)
    } else {
        graded(alpha - m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub chi: i64,
    pub tau: i64,
    pub betti: Vec<i64>,
    pub diamond: HodgeDiamond,
}

impl SurfaceInvariants {
    pub fn from_diamond(diamond: HodgeDiamond) -> Result<Self, CohomologyError> {
        if diamond.n != 2 {
            return Err(CohomologyError::RowCount { n: 2, expected: 5, actual: 2 * diamond.n + 1 });
        }
        Ok(SurfaceInvariants {
            chi: diamond.euler(),
            tau: hodge_signature(&diamond)?,
            betti: diamond.betti(),
            diamond,
        })
    }
}

/// Close the diamond of a surface with `b¹ = 0` from `χ` and `h^{0,2}`.
pub fn surface_from_chi_h02(chi: i64, h02: i64) -> Result<SurfaceInvariants, CohomologyError> {
    let h11 = chi - 2 - 2 * h02;
    if h11 < 0 {
        return Err(CohomologyError::NegativeH11 { chi, h02, value: h11 });
    }
    let diamond = HodgeDiamond::from_rows(2, &[vec![1], vec![0, 0], vec![h02, h11, h02], vec![0, 0], vec![1]])?;
    SurfaceInvariants::from_diamond(diamond)
}

/// Betti numbers `b⁰…b⁶` of a Calabi-Yau threefold with the given `χ` and `h^{1,1}`.
pub fn cy3_betti(chi: i64, h11: i64) -> Result<[i64; 7], CohomologyError> {
    if chi % 2 != 0 {
        return Err(CohomologyError::OddEuler(chi));
    }
    let h21 = h11 - chi / 2;
    if h21 < 0 {
        return Err(CohomologyError::NegativeH21 { h11, half: chi / 2, value: h21 });
    }
    Ok([1, 0, h11, 2 + 2 * h21, h11, 0, 1])
}
