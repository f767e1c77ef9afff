//! Golden values for the builtin scenarios and the comparison against a run.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::report::Report;
use crate::scenario::load_scenario;
use crate::{run, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Printed alongside the construction.
    Tabulated,
    /// Follows from tabulated inputs by the chain's own formulas.
    Derived,
}

struct Expected {
    quantity: &'static str,
    value: &'static str,
    source: Source,
    citation: &'static str,
}

const fn t(quantity: &'static str, value: &'static str, citation: &'static str) -> Expected {
    Expected { quantity, value, source: Source::Tabulated, citation }
}

const fn d(quantity: &'static str, value: &'static str, citation: &'static str) -> Expected {
    Expected { quantity, value, source: Source::Derived, citation }
}

const SECTION4: &[Expected] = &[
    t("h21(D)", "149", "dim R(f)₈ of the octic Jacobian ring"),
    t("χ(D̃)", "-2096", "Chern computation for the octic in ℂP⁴"),
    d("χ(D̃∩Σ̃₄)", "304", "Chern computation for the octic surface in ℂP³"),
    t("χ(D)", "-296", "branched-cover formula for the octic divisor"),
    t("χ(S̃)", "7808", "Chern computation for the (8,8) surface in ℂP⁴"),
    t("χ(S̃∩Σ̃₄)", "-768", "Chern computation for the (8,8) curve in ℂP³"),
    t("χ(S)", "1376", "branched-cover formula for the surface S"),
    t("h02(S)", "199", "dim A₈ of the (8,8) coordinate ring"),
    t("h11(S)", "976", "closed diamond of S"),
    t("τ(S)", "-576", "Hodge index theorem for S"),
    t("χ(X̄)", "1381", "blow-up Euler formula"),
    t("τ(X̄)", "577", "blow-up signature formula"),
    t("b2(X̄)", "2", "blow-up Betti formula"),
    t("b3(X̄)", "0", "blow-up Betti formula"),
    t("χ(X)", "1677", "removing the divisor D"),
    t("χ(Z)", "839", "quotient with one fixed point"),
    d("τ(Z)", "289", "half of τ(M▽) = 578"),
    t("χ(M▽)", "1678", "Mayer–Vietoris for the doubled block"),
    t("τ(M▽)", "578", "signature of the doubled block"),
    t("b4(M▽)", "1676", "Mayer–Vietoris for the doubled block"),
    t("χ(M)", "1680", "resolution of two ℝ⁸/ℤ₄ points"),
    t("τ(M)", "576", "resolution of two ℝ⁸/ℤ₄ points"),
    t("b2(M)", "0", "Betti numbers of the compact Spin(7)-manifold"),
    t("b3(M)", "0", "Betti numbers of the compact Spin(7)-manifold"),
    t("b4(M)", "1678", "Betti numbers of the compact Spin(7)-manifold"),
    t("Â", "1", "Â-genus of the compact Spin(7)-manifold"),
    t("holonomy", "Spin(7)", "holonomy classification by Â"),
];

const M11: &[Expected] = &[
    d("χ(V₁)", "306", "signed sum over the tabulated diamond of V₁"),
    d("χ(S₁)", "304", "signed sum over the tabulated diamond of S₁"),
    d("τ(S₁)", "-160", "Hodge index sum over the tabulated diamond of S₁"),
    d("χ(X̄₁)", "610", "blow-up Euler formula"),
    d("τ(X̄₁)", "322", "blow-up signature formula"),
    d("b2(X̄₁)", "2", "blow-up Betti formula"),
    d("χ(X₁)", "906", "removing the divisor D₁"),
    d("χ(Z₁)", "454", "quotient with two fixed points"),
    d("τ(Z₁)", "162", "quotient with two fixed points"),
    d("χ(M▽₁₁)", "908", "Mayer–Vietoris for the doubled block"),
    d("τ(M▽₁₁)", "324", "signature of the doubled block"),
    t("τ(M₁₁)", "320", "table of resulting Spin(7)-manifolds"),
    t("χ(M₁₁)", "912", "table of resulting Spin(7)-manifolds"),
    t("b4(M₁₁)", "910", "table of resulting Spin(7)-manifolds"),
    t("Â", "1", "Â(M_ij) = 1 for all three gluings"),
    t("holonomy", "Spin(7)", "holonomy classification by Â"),
];

const M12: &[Expected] = &[
    d("χ(Z₁)", "454", "quotient with two fixed points"),
    d("χ(Z₂)", "839", "quotient with one fixed point"),
    d("χ(M▽₁₂)", "1293", "Mayer–Vietoris for the mixed gluing"),
    d("τ(M▽₁₂)", "451", "signature of the mixed gluing"),
    t("τ(M₁₂)", "448", "table of resulting Spin(7)-manifolds"),
    t("χ(M₁₂)", "1296", "table of resulting Spin(7)-manifolds"),
    t("b4(M₁₂)", "1294", "table of resulting Spin(7)-manifolds"),
    t("Â", "1", "Â(M_ij) = 1 for all three gluings"),
    t("holonomy", "Spin(7)", "holonomy classification by Â"),
];

const M22: &[Expected] = &[
    d("χ(X̄₂)", "1381", "blow-up Euler formula"),
    d("χ(Z₂)", "839", "quotient with one fixed point"),
    t("τ(M₂₂)", "576", "table of resulting Spin(7)-manifolds"),
    t("χ(M₂₂)", "1680", "table of resulting Spin(7)-manifolds"),
    t("b4(M₂₂)", "1678", "table of resulting Spin(7)-manifolds"),
    t("Â", "1", "Â(M_ij) = 1 for all three gluings"),
    t("holonomy", "Spin(7)", "holonomy classification by Â"),
];

const CY_DOUBLE: &[Expected] = &[
    t("χ(X̄)", "1381", "blow-up Euler formula"),
    t("χ(X̂)", "1384", "crepant resolution, χ(E) = 4"),
    t("τ(X̂)", "576", "crepant resolution lowers τ by one"),
    t("χ(M)", "3360", "doubling the crepant block"),
    t("τ(M)", "1152", "doubling the crepant block"),
    t("Â", "2", "Â-genus of the Calabi-Yau fourfold"),
    t("holonomy", "SU(4)", "holonomy classification by Â"),
];

fn table(name: &str) -> Option<&'static [Expected]> {
    match name {
        "section4" => Some(SECTION4),
        "m11" => Some(M11),
        "m12" => Some(M12),
        "m22" => Some(M22),
        "cy-double" => Some(CY_DOUBLE),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub quantity: String,
    pub expected: String,
    pub observed: Option<String>,
    pub source: Source,
    pub citation: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reproduction {
    pub scenario: String,
    pub comparisons: Vec<Comparison>,
    pub report: Report,
}

impl Reproduction {
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(|c| c.passed)
    }
}

fn observe(report: &Report, quantity: &str) -> Option<String> {
    let result = report.result.as_ref();
    match quantity {
        "Â" => result.map(|r| r.a_hat.to_string()),
        "holonomy" => result.map(|r| r.holonomy.to_string()),
        q => report.value(q).map(|v| v.to_string()),
    }
}

pub fn reproduce(name: &str) -> Result<Reproduction, CliError> {
    let expected = table(name).ok_or_else(|| {
        CliError::Usage(format!("no expected values for {name}; choose one of section4, m11, m12, m22, cy-double, all"))
    })?;
    let report = run(&load_scenario(name)?)?;
    let comparisons = expected
        .iter()
        .map(|e| {
            let observed = observe(&report, e.quantity);
            Comparison {
                quantity: e.quantity.to_string(),
                expected: e.value.to_string(),
                passed: observed.as_deref() == Some(e.value),
                observed,
                source: e.source,
                citation: e.citation.to_string(),
            }
        })
        .collect();
    Ok(Reproduction { scenario: name.to_string(), comparisons, report })
}

pub fn render_text(r: &Reproduction) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "reproduce {}", r.scenario);
    let width = r.comparisons.iter().map(|c| c.quantity.chars().count()).max().unwrap_or(0);
    for c in &r.comparisons {
        let pad = " ".repeat(width - c.quantity.chars().count());
        let observed = c.observed.as_deref().unwrap_or("missing");
        let status = if c.passed { "ok  " } else { "FAIL" };
        let source = match c.source {
            Source::Tabulated => "tabulated",
            Source::Derived => "derived",
        };
        let _ = writeln!(
            out,
            "  {status} {}{pad}  expected {:>8}  observed {:>8}  {source:<9}  {}",
            c.quantity, c.expected, observed, c.citation
        );
    }
    for w in &r.report.warnings {
        let _ = writeln!(out, "  warning: {w}");
    }
    let _ = writeln!(out, "  {}", if r.passed() { "all values reproduced" } else { "DEVIATION from expected values" });
    out
}
