//! Weighted projective space combinatorics.
//!
//! Covers well-formedness and normalization of weight vectors, the cyclic
//! quotient strata of `ℂPⁿ(a₀,…,aₙ)`, point counts on one-dimensional strata
//! and the arithmetic conditions a construction config has to satisfy.

use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WpsError {
    #[error("a weighted projective space needs at least two weights, got {0}")]
    TooFewWeights(usize),
    #[error("weights must be positive, got {0:?}")]
    NonPositiveWeight(Vec<u64>),
    #[error("weights {weights:?} have common divisor {gcd}")]
    CommonDivisor { weights: Vec<u64>, gcd: u64 },
    #[error("weights {0:?} are not well-formed")]
    NotWellFormed(Vec<u64>),
    #[error("strata with {0} homogeneous variables are not supported (at most 2)")]
    UnsupportedStratum(usize),
    #[error("the form vanishes identically on the stratum, so every stratum point lies on it")]
    StratumContained,
    #[error("construction needs at least two degrees (D-cutting and S-cutting), got {0}")]
    TooFewDegrees(usize),
    #[error("degrees must be positive, got {0:?}")]
    NonPositiveDegree(Vec<u64>),
}

fn gcd_all(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(0, |g, v| g.gcd(&v))
}

/// Weight vector `(a₀,…,aₙ)` with `n ≥ 1`, positive entries and overall gcd 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Weights(Vec<u64>);

impl Weights {
    pub fn new(a: Vec<u64>) -> Result<Self, WpsError> {
        if a.len() < 2 {
            return Err(WpsError::TooFewWeights(a.len()));
        }
        if a.contains(&0) {
            return Err(WpsError::NonPositiveWeight(a));
        }
        let g = gcd_all(a.iter().copied());
        if g != 1 {
            return Err(WpsError::CommonDivisor { weights: a, gcd: g });
        }
        Ok(Weights(a))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// `n` for `ℂPⁿ(a₀,…,aₙ)`.
    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl TryFrom<Vec<u64>> for Weights {
    type Error = WpsError;

    fn try_from(a: Vec<u64>) -> Result<Self, Self::Error> {
        Weights::new(a)
    }
}

impl From<Weights> for Vec<u64> {
    fn from(w: Weights) -> Self {
        w.0
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "ℂP{}({})", self.dimension(), parts.join(","))
    }
}

fn gcd_omitting(a: &[u64], i: usize) -> u64 {
    gcd_all(a.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v))
}

/// Every `n` of the `n+1` weights are coprime.
pub fn is_well_formed(w: &Weights) -> bool {
    (0..w.0.len()).all(|i| gcd_omitting(&w.0, i) == 1)
}

/// Divide out common factors of all-but-one weights until the result is well-formed.
pub fn normalize(w: &Weights) -> Weights {
    let mut a = w.0.clone();
    loop {
        let mut changed = false;
        for i in 0..a.len() {
            let q = gcd_omitting(&a, i);
            if q > 1 {
                for (j, v) in a.iter_mut().enumerate() {
                    if j != i {
                        *v /= q;
                    }
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Weights(a)
}

/// Locus where the homogeneous coordinates outside `support` vanish, carrying
/// the cyclic quotient singularity `ℂ^{n−|I|+1}/ℤ_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularStratum {
    /// Indices `i` (0-based) of the coordinates that may be nonzero on the stratum.
    pub support: Vec<usize>,
    pub group_order: u64,
    /// `a_j mod m` for every `j` outside the support, in index order.
    pub action_weights: Vec<u64>,
}

/// Maximal index sets with a nontrivial common divisor, with their local actions.
pub fn singular_strata(w: &Weights) -> Result<Vec<SingularStratum>, WpsError> {
    if !is_well_formed(w) {
        return Err(WpsError::NotWellFormed(w.0.clone()));
    }
    let a = &w.0;
    // every index set with gcd > 1 sits inside {i : p | aᵢ} for a prime p
    let mut primes: Vec<u64> = Vec::new();
    for &v in a {
        let mut n = v;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                primes.push(p);
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            primes.push(n);
        }
    }
    primes.sort_unstable();
    primes.dedup();

    let mut candidates: Vec<Vec<usize>> = primes
        .iter()
        .map(|&p| (0..a.len()).filter(|&i| a[i].is_multiple_of(p)).collect())
        .collect();
    candidates.sort();
    candidates.dedup();
    let maximal: Vec<Vec<usize>> = candidates
        .iter()
        .filter(|c| {
            !candidates
                .iter()
                .any(|d| d.len() > c.len() && c.iter().all(|i| d.contains(i)))
        })
        .cloned()
        .collect();

    Ok(maximal
        .into_iter()
        .map(|support| {
            let m = gcd_all(support.iter().map(|&i| a[i]));
            let action_weights = (0..a.len())
                .filter(|j| !support.contains(j))
                .map(|j| a[j] % m)
                .collect();
            SingularStratum { support, group_order: m, action_weights }
        })
        .collect())
}

/// The locally scalar `ℂ⁴/ℤ₄` model: `m = 4` and all four weights equal one unit mod 4.
pub fn is_scalar_z4_action(s: &SingularStratum) -> bool {
    if s.group_order != 4 || s.action_weights.len() != 4 {
        return false;
    }
    let c = s.action_weights[0] % 4;
    c.gcd(&4) == 1 && s.action_weights.iter().all(|&x| x % 4 == c)
}

/// A homogeneous form restricted to a singular stratum.
///
/// For a two-variable stratum `(x, y)` the coefficient list is
/// `[c₀, c₁, …, c_d]` for `Σ cᵢ x^{d−i} yⁱ`. For a point stratum the list holds
/// the coefficient(s) of the restricted equations; an empty list means no
/// equation at all.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumForm {
    pub variables: usize,
    pub coefficients: Vec<i64>,
}

impl StratumForm {
    pub fn binary(coefficients: Vec<i64>) -> Self {
        StratumForm { variables: 2, coefficients }
    }

    pub fn point(coefficients: Vec<i64>) -> Self {
        StratumForm { variables: 1, coefficients }
    }
}

/// Dense univariate polynomial over ℚ, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    fn rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = &r[top] / &lead;
            for (k, c) in d.0.iter().enumerate() {
                let delta = &q * c;
                r[top - dd + k] -= delta;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while b.degree().is_some() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

/// Number of distinct points of a stratum on which the restricted form vanishes.
pub fn count_stratum_points(form: &StratumForm) -> Result<usize, WpsError> {
    match form.variables {
        1 => Ok(usize::from(form.coefficients.iter().all(|&c| c == 0))),
        2 => {
            let c: Vec<BigRational> = form.coefficients.iter().map(|&v| rational(v)).collect();
            if c.iter().all(Zero::is_zero) {
                return Err(WpsError::StratumContained);
            }
            // F(x, y) = Σ cᵢ x^{d−i} yⁱ; affine chart y = 1 gives f(t) = Σ cᵢ t^{d−i}
            let f = Poly::new(c.iter().rev().cloned().collect());
            let at_infinity = usize::from(c[0].is_zero());
            let affine = match f.degree() {
                None | Some(0) => 0,
                Some(_) => {
                    let g = f.gcd(&f.derivative());
                    f.degree().unwrap() - g.degree().unwrap_or(0)
                }
            };
            Ok(affine + at_infinity)
        }
        n => Err(WpsError::UnsupportedStratum(n)),
    }
}

/// Named geometric assertions that are carried through reports, never computed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assertions {
    pub quasismooth: Option<String>,
    pub d_smooth: Option<String>,
    pub s_smooth: Option<String>,
    pub involution_free_on_d_and_s: Option<String>,
    pub fixed_locus_is_singular_locus: Option<String>,
}

/// Weights plus multidegree `(d₁,…,d_{k+1})`: the first `k−1` cut out `V`,
/// `d_k` cuts `D` from `V` and `d_{k+1}` cuts `S` from `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionConfig {
    pub weights: Weights,
    pub degrees: Vec<u64>,
    #[serde(default)]
    pub assertions: Assertions,
}

impl ConstructionConfig {
    pub fn new(weights: Weights, degrees: Vec<u64>, assertions: Assertions) -> Result<Self, WpsError> {
        if degrees.len() < 2 {
            return Err(WpsError::TooFewDegrees(degrees.len()));
        }
        if degrees.contains(&0) {
            return Err(WpsError::NonPositiveDegree(degrees));
        }
        Ok(ConstructionConfig { weights, degrees, assertions })
    }

    /// `k`, the number of equations cutting out `D`.
    pub fn k(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn v_degrees(&self) -> &[u64] {
        &self.degrees[..self.k() - 1]
    }

    pub fn d_degrees(&self) -> &[u64] {
        &self.degrees[..self.k()]
    }

    pub fn s_degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn d_degree(&self) -> u64 {
        self.degrees[self.k() - 1]
    }

    pub fn s_degree(&self) -> u64 {
        self.degrees[self.k()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum ConditionStatus {
    Pass,
    Fail { lhs: String, rhs: String },
    Asserted { provenance: String },
    Unasserted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionLine {
    pub id: String,
    pub statement: String,
    pub detail: String,
    #[serde(flatten)]
    pub status: ConditionStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub lines: Vec<ConditionLine>,
}

impl ConditionReport {
    pub fn failures(&self) -> impl Iterator<Item = &ConditionLine> {
        self.lines.iter().filter(|l| matches!(l.status, ConditionStatus::Fail { .. }))
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn line(&self, id: &str) -> Option<&ConditionLine> {
        self.lines.iter().find(|l| l.id == id)
    }
}

fn join_sum(values: &[u64]) -> String {
    if values.is_empty() {
        return "0".to_string();
    }
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(" + ")
}

fn equation_line(id: &str, statement: &str, lhs: String, rhs: String, ok: bool) -> ConditionLine {
    let detail = format!("{lhs} {} {rhs}", if ok { "=" } else { "≠" });
    let status = if ok { ConditionStatus::Pass } else { ConditionStatus::Fail { lhs, rhs } };
    ConditionLine { id: id.into(), statement: statement.into(), detail, status }
}

fn assertion_line(id: &str, statement: &str, flag: &Option<String>) -> ConditionLine {
    let (status, detail) = match flag {
        Some(p) => (ConditionStatus::Asserted { provenance: p.clone() }, format!("asserted: {p}")),
        None => (ConditionStatus::Unasserted, "not asserted".to_string()),
    };
    ConditionLine { id: id.into(), statement: statement.into(), detail, status }
}

/// Evaluate the arithmetic conditions and echo the geometric assertions.
pub fn check_conditions(c: &ConstructionConfig) -> ConditionReport {
    let k = c.k();
    let weights = c.weights.as_slice();
    let d_sum: u64 = c.d_degrees().iter().sum();
    let lines = vec![
        equation_line(
            "dim",
            "ambient is ℂP^{k+3}, so V is a fourfold",
            format!("n = {}", c.weights.dimension()),
            format!("k + 3 = {}", k + 3),
            c.weights.dimension() == k + 3,
        ),
        equation_line(
            "1",
            "Σ_{λ≤k} d_λ = Σ aᵢ (D is anticanonical in V)",
            format!("{} = {d_sum}", join_sum(c.d_degrees())),
            format!("{} = {}", join_sum(weights), c.weights.sum()),
            d_sum == c.weights.sum(),
        ),
        assertion_line("2", "V has isolated singular points modelled on ℂ⁴/ℤ₄", &c.assertions.quasismooth),
        assertion_line("3", "D is a smooth complete intersection", &c.assertions.d_smooth),
        equation_line(
            "4",
            "deg f_{k+1} = deg f_k",
            format!("d_{} = {}", k + 1, c.s_degree()),
            format!("d_{k} = {}", c.d_degree()),
            c.s_degree() == c.d_degree(),
        ),
        assertion_line("4s", "S is a smooth complete intersection", &c.assertions.s_smooth),
        assertion_line("5", "σ*fᵢ = f̄ᵢ and σ acts freely on D and S", &c.assertions.involution_free_on_d_and_s),
        assertion_line("6", "V^σ = Sing V", &c.assertions.fixed_locus_is_singular_locus),
    ];
    ConditionReport { lines }
}

/// Fermat hypersurface `Σ zᵢ^{d/aᵢ}` is quasismooth exactly when every weight divides `d`.
pub fn fermat_quasismooth(w: &Weights, d: u64) -> bool {
    w.as_slice().iter().all(|&a| d.is_multiple_of(a))
}

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: &[u64]) -> Weights {
        Weights::new(a.to_vec()).unwrap()
    }

    fn binary(c: &[i64]) -> StratumForm {
        StratumForm::binary(c.to_vec())
    }

    #[test]
    fn weights_validation() {
        assert_eq!(Weights::new(vec![2, 4]), Err(WpsError::CommonDivisor { weights: vec![2, 4], gcd: 2 }));
        assert_eq!(Weights::new(vec![1]), Err(WpsError::TooFewWeights(1)));
        assert!(matches!(Weights::new(vec![0, 1]), Err(WpsError::NonPositiveWeight(_))));
    }

    #[test]
    fn well_formedness() {
        assert!(is_well_formed(&w(&[1, 1, 1, 1, 4])));
        assert!(!is_well_formed(&w(&[1, 2, 2])));
        assert!(is_well_formed(&w(&[1, 1])));
        assert!(is_well_formed(&w(&[1, 1, 1, 1, 4, 4])));
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize(&w(&[1, 2, 2])), w(&[1, 1, 1]));
        assert_eq!(normalize(&w(&[1, 1, 1, 1, 4])), w(&[1, 1, 1, 1, 4]));
        // omitting the first weight: q = gcd(3, 3) = 3
        assert_eq!(normalize(&w(&[2, 3, 3])), w(&[2, 1, 1]));
        // divide by 5, then 3, then 2
        assert_eq!(normalize(&w(&[6, 10, 15])), w(&[1, 1, 1]));
    }

    #[test]
    fn strata_of_octic_ambients() {
        assert_eq!(
            singular_strata(&w(&[1, 1, 1, 1, 4])).unwrap(),
            vec![SingularStratum { support: vec![4], group_order: 4, action_weights: vec![1, 1, 1, 1] }]
        );
        assert_eq!(
            singular_strata(&w(&[1, 1, 1, 1, 4, 4])).unwrap(),
            vec![SingularStratum { support: vec![4, 5], group_order: 4, action_weights: vec![1, 1, 1, 1] }]
        );
        assert!(singular_strata(&w(&[1, 1, 1, 1])).unwrap().is_empty());
        assert_eq!(singular_strata(&w(&[1, 2, 2])), Err(WpsError::NotWellFormed(vec![1, 2, 2])));
    }

    #[test]
    fn strata_with_two_primes() {
        let strata = singular_strata(&w(&[1, 2, 3, 6])).unwrap();
        let supports: Vec<_> = strata.iter().map(|s| (s.support.clone(), s.group_order)).collect();
        assert_eq!(supports, vec![(vec![1, 3], 2), (vec![2, 3], 3)]);
    }

    #[test]
    fn stratum_point_counts() {
        assert_eq!(count_stratum_points(&binary(&[1, 0, -1])), Ok(2));
        assert_eq!(count_stratum_points(&binary(&[2, 1])), Ok(1));
        assert_eq!(count_stratum_points(&binary(&[1, 0, 0])), Ok(1));
        // y² vanishes only at [1:0]
        assert_eq!(count_stratum_points(&binary(&[0, 0, 1])), Ok(1));
        // x y (x − y): three points including both coordinate points
        assert_eq!(count_stratum_points(&binary(&[0, 1, -1, 0])), Ok(3));
        assert_eq!(count_stratum_points(&binary(&[0, 0])), Err(WpsError::StratumContained));
        assert_eq!(count_stratum_points(&StratumForm::point(vec![])), Ok(1));
        assert_eq!(count_stratum_points(&StratumForm::point(vec![3])), Ok(0));
        assert_eq!(
            count_stratum_points(&StratumForm { variables: 3, coefficients: vec![] }),
            Err(WpsError::UnsupportedStratum(3))
        );
    }

    #[test]
    fn scalar_z4() {
        let s = |m, a: &[u64]| SingularStratum { support: vec![4], group_order: m, action_weights: a.to_vec() };
        assert!(is_scalar_z4_action(&s(4, &[1, 1, 1, 1])));
        assert!(is_scalar_z4_action(&s(4, &[3, 3, 3, 3])));
        assert!(!is_scalar_z4_action(&s(4, &[1, 1, 3, 3])));
        assert!(!is_scalar_z4_action(&s(2, &[1, 1, 1, 1])));
        assert!(!is_scalar_z4_action(&s(4, &[2, 2, 2, 2])));
    }

    #[test]
    fn conditions_for_octic_configs() {
        let c = ConstructionConfig::new(w(&[1, 1, 1, 1, 4]), vec![8, 8], Assertions::default()).unwrap();
        let r = check_conditions(&c);
        assert!(r.passed());
        assert_eq!(r.line("1").unwrap().detail, "8 = 8 = 1 + 1 + 1 + 1 + 4 = 8");
        assert_eq!(r.line("4").unwrap().status, ConditionStatus::Pass);

        let c = ConstructionConfig::new(w(&[1, 1, 1, 1, 4, 4]), vec![8, 4, 4], Assertions::default()).unwrap();
        let r = check_conditions(&c);
        assert!(r.passed());
        assert_eq!(r.line("1").unwrap().detail, "8 + 4 = 12 = 1 + 1 + 1 + 1 + 4 + 4 = 12");
        assert_eq!(r.line("4").unwrap().detail, "d_3 = 4 = d_2 = 4");
    }

    #[test]
    fn violated_condition_reports_both_sides() {
        let c = ConstructionConfig::new(w(&[1, 1, 1, 1, 4]), vec![7, 8], Assertions::default()).unwrap();
        let r = check_conditions(&c);
        let line = r.line("1").unwrap();
        assert_eq!(
            line.status,
            ConditionStatus::Fail { lhs: "7 = 7".into(), rhs: "1 + 1 + 1 + 1 + 4 = 8".into() }
        );
        assert!(!r.passed());
        // condition (4) fails too, since 8 ≠ 7
        assert_eq!(r.failures().count(), 2);
    }

    #[test]
    fn assertions_are_echoed() {
        let a = Assertions { d_smooth: Some("Fermat octic".into()), ..Default::default() };
        let c = ConstructionConfig::new(w(&[1, 1, 1, 1, 4]), vec![8, 8], a).unwrap();
        let r = check_conditions(&c);
        assert_eq!(r.line("3").unwrap().status, ConditionStatus::Asserted { provenance: "Fermat octic".into() });
        assert_eq!(r.line("6").unwrap().status, ConditionStatus::Unasserted);
    }

    #[test]
    fn fermat_checker() {
        assert!(fermat_quasismooth(&w(&[1, 1, 1, 1, 4]), 8));
        assert!(!fermat_quasismooth(&w(&[1, 1, 1, 1, 3]), 8));
    }
}
