//! Run reports and their text / JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use spin7_core::pipeline::{GluingReport, TraceLine};
use spin7_core::wps::{ConditionReport, ConditionStatus};

use crate::scenario::{ScenarioKind, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockConditions {
    pub label: String,
    pub report: ConditionReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub scenario: String,
    pub kind: Option<ScenarioKind>,
    pub conditions: Vec<BlockConditions>,
    pub trace: Vec<TraceLine>,
    pub result: Option<GluingReport>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn empty(scenario: impl Into<String>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            scenario: scenario.into(),
            kind: None,
            conditions: Vec::new(),
            trace: Vec::new(),
            result: None,
            warnings: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Latest traced value of a quantity such as `χ(X̄)`, falling back to the
    /// final block for `χ`, `τ` and Betti numbers.
    pub fn value(&self, quantity: &str) -> Option<i64> {
        if let Some(line) = self.trace.iter().rev().find(|l| l.quantity == quantity) {
            return Some(line.value);
        }
        let r = self.result.as_ref()?;
        let label = &r.final_block.label;
        if quantity == format!("χ({label})") {
            return Some(r.final_block.chi);
        }
        if quantity == format!("τ({label})") {
            return Some(r.final_block.tau);
        }
        (0..9).find_map(|i| if quantity == format!("b{i}({label})") { r.final_block.betti[i] } else { None })
    }
}

fn status_tag(status: &ConditionStatus) -> &'static str {
    match status {
        ConditionStatus::Pass => "pass",
        ConditionStatus::Fail { .. } => "FAIL",
        ConditionStatus::Asserted { .. } => "asserted",
        ConditionStatus::Unasserted => "open",
    }
}

fn betti_text(b: &[Option<i64>]) -> String {
    let parts: Vec<String> = b.iter().map(|v| v.map_or("?".to_string(), |v| v.to_string())).collect();
    format!("({})", parts.join(", "))
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let kind = r.kind.map(|k| format!(" ({})", serde_json::to_value(k).unwrap().as_str().unwrap_or(""))).unwrap_or_default();
    let _ = writeln!(out, "scenario {}{kind}", r.scenario);

    for block in &r.conditions {
        let _ = writeln!(out, "\nconditions for {}", block.label);
        for line in &block.report.lines {
            let _ = writeln!(out, "  {:<9} {:<3} {}  [{}]", status_tag(&line.status), line.id, line.statement, line.detail);
        }
    }

    if !r.trace.is_empty() {
        let _ = writeln!(out, "\ntrace");
        let rendered: Vec<String> = r.trace.iter().map(|l| l.to_string()).collect();
        let width = rendered.iter().map(|s| s.chars().count()).max().unwrap_or(0);
        for (text, line) in rendered.iter().zip(&r.trace) {
            let pad = width - text.chars().count();
            let _ = writeln!(out, "  {text}{}   | {}", " ".repeat(pad), line.citation);
        }
    }

    if let Some(res) = &r.result {
        let m = &res.final_block;
        let _ = writeln!(out, "\nresult {}", m.label);
        let _ = writeln!(out, "  χ = {}", m.chi);
        let _ = writeln!(out, "  τ = {}", m.tau);
        let _ = writeln!(out, "  b = {}", betti_text(&m.betti));
        let _ = writeln!(out, "  Â = {}", res.a_hat);
        let _ = writeln!(out, "  holonomy = {}", res.holonomy);
        if !res.assumption_log.is_empty() {
            let _ = writeln!(out, "\nassumptions");
            for a in &res.assumption_log {
                let _ = writeln!(out, "  - {} ({})", a.statement, a.citation);
            }
        }
    }

    for (title, items) in [("warnings", &r.warnings), ("notes", &r.notes)] {
        if !items.is_empty() {
            let _ = writeln!(out, "\n{title}");
            for w in items {
                let _ = writeln!(out, "  - {w}");
            }
        }
    }
    out
}

pub fn render_json(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("report serializes")
}

pub fn emit(r: &Report, format: Format) -> String {
    match format {
        Format::Text => render_text(r),
        Format::Json => render_json(r) + "\n",
    }
}
