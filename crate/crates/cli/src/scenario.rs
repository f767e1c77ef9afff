//! Scenario files: which blocks to build, where every input number comes from,
//! and how the blocks are assembled.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use spin7_core::wps::{Assertions, Weights};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

const BUILTINS: [(&str, &str); 5] = [
    ("section4", include_str!("../scenarios/section4.toml")),
    ("m11", include_str!("../scenarios/m11.toml")),
    ("m12", include_str!("../scenarios/m12.toml")),
    ("m22", include_str!("../scenarios/m22.toml")),
    ("cy-double", include_str!("../scenarios/cy-double.toml")),
];

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTINS.iter().map(|(n, _)| *n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    /// One block glued to a copy of itself.
    Spin7Double,
    /// Two different blocks glued together.
    Spin7Glue,
    /// One block crepantly resolved and doubled into a Calabi-Yau fourfold.
    CyDouble,
}

/// A number that is not computed here, with a note on where it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sourced<T> {
    pub value: T,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub kind: ScenarioKind,
    pub simply_connected: Sourced<bool>,
    pub blocks: Vec<BlockSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    /// Appended to every stage symbol, e.g. `₁` gives `V₁`, `X̄₁`, `Z₁`.
    #[serde(default)]
    pub suffix: String,
    pub weights: Weights,
    /// `(d₁,…,d_{k+1})`: equations of `V`, then `D`, then `S`.
    pub degrees: Vec<u64>,
    #[serde(default)]
    pub assertions: Assertions,
    /// Restriction of the equations of `V` to its singular stratum; omitted
    /// when `V` is the whole ambient space.
    #[serde(default)]
    pub stratum_form: Option<Vec<i64>>,
    pub v: VSource,
    pub d: DivisorSource,
    pub s: SurfaceSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VSource {
    /// `None` means `V` is the ambient weighted projective space.
    #[serde(default)]
    pub diamond: Option<Sourced<Vec<Vec<i64>>>>,
    pub tau: Sourced<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorSource {
    /// `None` means `D` is a hypersurface of the ambient space and its
    /// diamond is computed from the Jacobian ring.
    #[serde(default)]
    pub diamond: Option<Sourced<Vec<Vec<i64>>>>,
    #[serde(default)]
    pub chern: Option<ChernRoute>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSource {
    /// `None` means the diamond is closed from the Chern route and `h^{0,2}`.
    #[serde(default)]
    pub diamond: Option<Sourced<Vec<Vec<i64>>>>,
    #[serde(default)]
    pub chern: Option<ChernRoute>,
}

/// Euler characteristic via the `m`-sheeted cover `ℂPⁿ → ℂPⁿ(1,…,1,m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChernRoute {
    pub cover_ambient: usize,
    pub cover_degrees: Vec<u64>,
    pub branch_ambient: usize,
    pub branch_degrees: Vec<u64>,
    pub sheets: i64,
    /// A published value for the branch locus, compared against the computation.
    #[serde(default)]
    pub printed_branch: Option<Sourced<i64>>,
}

impl Scenario {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let s: Scenario = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Parse(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let expected = match self.kind {
            ScenarioKind::Spin7Double | ScenarioKind::CyDouble => 1,
            ScenarioKind::Spin7Glue => 2,
        };
        if self.blocks.len() != expected {
            return Err(CliError::Parse(format!(
                "scenario kind {:?} takes {expected} block(s), found {}",
                self.kind,
                self.blocks.len()
            )));
        }
        let mut sourced: Vec<(&str, &str)> = vec![("simply_connected", &self.simply_connected.provenance)];
        for b in &self.blocks {
            if b.degrees.len() < 2 {
                return Err(CliError::Parse(format!("blocks.degrees needs at least two entries, got {:?}", b.degrees)));
            }
            sourced.push(("blocks.v.tau", &b.v.tau.provenance));
            for (field, d) in [("blocks.v.diamond", &b.v.diamond), ("blocks.d.diamond", &b.d.diamond), ("blocks.s.diamond", &b.s.diamond)] {
                if let Some(d) = d {
                    sourced.push((field, &d.provenance));
                }
            }
            for (field, c) in [("blocks.d.chern", &b.d.chern), ("blocks.s.chern", &b.s.chern)] {
                if let Some(p) = c.as_ref().and_then(|c| c.printed_branch.as_ref()) {
                    sourced.push((field, &p.provenance));
                }
            }
            if b.s.diamond.is_none() && b.s.chern.is_none() {
                return Err(CliError::Parse("blocks.s needs a diamond or a chern route".into()));
            }
        }
        if let Some((field, _)) = sourced.iter().find(|(_, p)| p.trim().is_empty()) {
            return Err(CliError::Parse(format!("{field}: provenance must not be empty")));
        }
        Ok(())
    }
}

/// A builtin name, or a path to a scenario file.
pub fn load_scenario(name_or_path: &str) -> Result<Scenario, CliError> {
    if let Some((_, text)) = BUILTINS.iter().find(|(n, _)| *n == name_or_path) {
        return Scenario::from_toml(text);
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        let names: Vec<_> = builtin_names().collect();
        return Err(CliError::Usage(format!(
            "{name_or_path} is neither a file nor a builtin scenario ({})",
            names.join(", ")
        )));
    }
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Scenario::from_toml(&text)
}
