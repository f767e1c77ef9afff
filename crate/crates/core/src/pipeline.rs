//! Invariant bookkeeping for the gluing construction.
//!
//! Each operation takes blocks at a fixed stage and returns the next stage,
//! appending every instantiated equation to a [`Trace`]. Halvings and the
//! division by 48 are exact or fail.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::SurfaceInvariants;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stage {
    V,
    Xbar,
    X,
    Z,
    Mtriangle,
    M,
    Xhat,
}

impl Stage {
    pub fn symbol(self) -> &'static str {
        match self {
            Stage::V => "V",
            Stage::Xbar => "X̄",
            Stage::X => "X",
            Stage::Z => "Z",
            Stage::Mtriangle => "M▽",
            Stage::M => "M",
            Stage::Xhat => "X̂",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("{operation} expects a block at stage {expected}, got {label} at stage {actual}")]
    StageMismatch { operation: &'static str, expected: Stage, actual: Stage, label: String },
    #[error("{label} is missing b{index}, needed by {operation}")]
    MissingBetti { label: String, index: usize, operation: &'static str },
    #[error("{quantity} = {equation} is not an integer (wrong fixed-point count?)")]
    Parity { quantity: String, equation: String },
    #[error("Â = (3τ − χ)/48 = (3·{tau} − {chi})/48 = {numerator}/48 is not an integer")]
    NotDivisibleBy48 { chi: i64, tau: i64, numerator: i64 },
    #[error("Â = {0} is outside 1..=4, so the holonomy table does not apply to a simply-connected torsion-free Spin(7)-manifold")]
    Unclassified(i64),
    #[error("{label}: χ = {chi} but Σ(−1)ⁱbⁱ = {alternating}")]
    EulerMismatch { label: String, chi: i64, alternating: i64 },
}

pub type Betti = [Option<i64>; 9];

pub const UNKNOWN_BETTI: Betti = [None; 9];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockInvariants {
    pub label: String,
    pub chi: i64,
    pub tau: i64,
    pub betti: Betti,
    pub sing_points: u64,
    pub stage: Stage,
}

impl BlockInvariants {
    pub fn new(label: impl Into<String>, stage: Stage, chi: i64, tau: i64, betti: Betti, sing_points: u64) -> Self {
        BlockInvariants { label: label.into(), chi, tau, betti, sing_points, stage }
    }

    /// Suffix distinguishing blocks of the same stage, e.g. `₁` in `V₁`.
    pub fn suffix(&self) -> &str {
        self.label.strip_prefix(self.stage.symbol()).unwrap_or("")
    }

    fn relabel(&self, stage: Stage) -> String {
        format!("{}{}", stage.symbol(), self.suffix())
    }

    pub fn b(&self, i: usize) -> Option<i64> {
        self.betti[i]
    }

    fn require_b(&self, i: usize, operation: &'static str) -> Result<i64, PipelineError> {
        self.betti[i].ok_or_else(|| PipelineError::MissingBetti { label: self.label.clone(), index: i, operation })
    }

    fn require_stage(&self, stage: Stage, operation: &'static str) -> Result<(), PipelineError> {
        if self.stage == stage {
            Ok(())
        } else {
            Err(PipelineError::StageMismatch { operation, expected: stage, actual: self.stage, label: self.label.clone() })
        }
    }

    /// `χ = Σ(−1)ⁱbⁱ` whenever every Betti number is known.
    pub fn check_consistency(&self) -> Result<(), PipelineError> {
        if self.betti.iter().all(Option::is_some) {
            let alternating: i64 = self
                .betti
                .iter()
                .enumerate()
                .map(|(i, b)| if i % 2 == 0 { b.unwrap() } else { -b.unwrap() })
                .sum();
            if alternating != self.chi {
                return Err(PipelineError::EulerMismatch { label: self.label.clone(), chi: self.chi, alternating });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceLine {
    pub quantity: String,
    pub formula: String,
    pub substituted: String,
    pub value: i64,
    pub citation: String,
}

impl fmt::Display for TraceLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.quantity, self.formula)?;
        if self.substituted != self.value.to_string() {
            write!(f, " = {}", self.substituted)?;
        }
        write!(f, " = {}", self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumption {
    pub statement: String,
    pub citation: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub lines: Vec<TraceLine>,
    pub assumptions: Vec<Assumption>,
}

impl Trace {
    pub fn record(&mut self, quantity: String, formula: &str, substituted: String, value: i64, citation: &str) -> i64 {
        self.lines.push(TraceLine { quantity, formula: formula.into(), substituted, value, citation: citation.into() });
        value
    }

    pub fn assume(&mut self, statement: impl Into<String>, citation: impl Into<String>) {
        let statement = statement.into();
        if !self.assumptions.iter().any(|a| a.statement == statement) {
            self.assumptions.push(Assumption { statement, citation: citation.into() });
        }
    }

    pub fn value(&self, quantity: &str) -> Option<i64> {
        self.lines.iter().rev().find(|l| l.quantity == quantity).map(|l| l.value)
    }
}

const BLOW_UP: &str = "blow-up of V along S, exceptional divisor E ≅ S × ℂP¹";
const OPEN_PART: &str = "removal of the anticanonical divisor D, normal bundle trivial";
const QUOTIENT: &str = "quotient by the antiholomorphic involution σ with isolated fixed points";
const MAYER_VIETORIS: &str = "Mayer–Vietoris for M▽ = Z₁ ∪ Z₂ along Y with b¹(Y) = b²(Y) = 0";
const RESOLUTION: &str = "resolution of ℝ⁸/ℤ₄ points by ALE Spin(7) pieces with χ = 2, b⁴ = 1";
const A_HAT: &str = "48Â = 3τ − χ for compact Spin(7)-manifolds";
const CREPANT: &str = "crepant resolution of ℂ⁴/ℤ₄ by K_{ℂP³}, χ(E) = 4";
const CY_DOUBLE: &str = "doubling X̂ along D̂ × S¹";

fn half(trace: &mut Trace, quantity: String, formula: &str, a: i64, k: u64) -> Result<i64, PipelineError> {
    let k = k as i64;
    let substituted = format!("({a} + {k})/2");
    if (a + k) % 2 != 0 {
        return Err(PipelineError::Parity { quantity, equation: substituted });
    }
    Ok(trace.record(quantity, formula, substituted, (a + k) / 2, QUOTIENT))
}

/// `X̄ = Bl_S V`.
pub fn blow_up(v: &BlockInvariants, s: &SurfaceInvariants, trace: &mut Trace) -> Result<BlockInvariants, PipelineError> {
    v.require_stage(Stage::V, "blow_up")?;
    v.require_b(2, "blow_up")?;
    v.require_b(3, "blow_up")?;
    let label = v.relabel(Stage::Xbar);
    let sx = format!("S{}", v.suffix());
    let chi = trace.record(
        format!("χ({label})"),
        &format!("χ({}) + χ({sx})", v.label),
        format!("{} + {}", v.chi, s.chi),
        v.chi + s.chi,
        BLOW_UP,
    );
    let tau = trace.record(
        format!("τ({label})"),
        &format!("τ({}) − τ({sx})", v.label),
        format!("{} − ({})", v.tau, s.tau),
        v.tau - s.tau,
        BLOW_UP,
    );
    let mut betti = UNKNOWN_BETTI;
    for (i, slot) in betti.iter_mut().enumerate() {
        let from_s = if (2..=6).contains(&i) { Some(s.betti[i - 2]) } else { Some(0) };
        *slot = v.betti[i].zip(from_s).map(|(a, b)| a + b);
    }
    for i in [2, 3] {
        trace.record(
            format!("b{i}({label})"),
            &format!("b{i}({}) + b{}({sx})", v.label, i - 2),
            format!("{} + {}", v.betti[i].unwrap(), s.betti[i - 2]),
            betti[i].unwrap(),
            BLOW_UP,
        );
    }
    let out = BlockInvariants::new(label, Stage::Xbar, chi, tau, betti, v.sing_points);
    out.check_consistency()?;
    Ok(out)
}

/// Euler characteristic and `b²` of the anticanonical divisor `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorData {
    pub chi: i64,
    pub b2: i64,
}

/// `X = X̄ ∖ D`.
pub fn open_part(xbar: &BlockInvariants, d: &DivisorData, trace: &mut Trace) -> Result<BlockInvariants, PipelineError> {
    xbar.require_stage(Stage::Xbar, "open_part")?;
    let b2_bar = xbar.require_b(2, "open_part")?;
    let b3_bar = xbar.require_b(3, "open_part")?;
    let label = xbar.relabel(Stage::X);
    let dx = format!("D{}", xbar.suffix());
    let chi = trace.record(
        format!("χ({label})"),
        &format!("χ({}) − χ({dx})", xbar.label),
        format!("{} − ({})", xbar.chi, d.chi),
        xbar.chi - d.chi,
        OPEN_PART,
    );
    let tau = trace.record(
        format!("τ({label})"),
        &format!("τ({})", xbar.label),
        xbar.tau.to_string(),
        xbar.tau,
        OPEN_PART,
    );
    let b2 = trace.record(
        format!("b2({label})"),
        &format!("b2({}) − 1", xbar.label),
        format!("{b2_bar} − 1"),
        b2_bar - 1,
        OPEN_PART,
    );
    let b3 = trace.record(
        format!("b3({label})"),
        &format!("b3({}) + b2({dx}) − b2({label})", xbar.label),
        format!("{b3_bar} + {} − {b2}", d.b2),
        b3_bar + d.b2 - b2,
        OPEN_PART,
    );
    let mut betti = UNKNOWN_BETTI;
    betti[0] = xbar.betti[0];
    betti[2] = Some(b2);
    betti[3] = Some(b3);
    Ok(BlockInvariants::new(label, Stage::X, chi, tau, betti, xbar.sing_points))
}

/// `Z = X/⟨σ⟩` with `k` isolated fixed points.
pub fn quotient(x: &BlockInvariants, fixed_points: u64, trace: &mut Trace) -> Result<BlockInvariants, PipelineError> {
    x.require_stage(Stage::X, "quotient")?;
    let label = x.relabel(Stage::Z);
    let k = fixed_points;
    let chi = half(trace, format!("χ({label})"), &format!("(χ({}) + k)/2", x.label), x.chi, k)?;
    let tau = half(trace, format!("τ({label})"), &format!("(τ({}) + k)/2", x.label), x.tau, k)?;
    trace.assume(
        format!("b²({label}) = b³({label}) = 0: the classes surviving in X are not σ-invariant"),
        "cohomology of the cross-section Y and σ acting by −1 on the Kähler class",
    );
    let mut betti = UNKNOWN_BETTI;
    betti[0] = Some(1);
    betti[1] = Some(0);
    betti[2] = Some(0);
    betti[3] = Some(0);
    Ok(BlockInvariants::new(label, Stage::Z, chi, tau, betti, k))
}

/// `M▽ = Z₁ ∪_Y Z₂`.
pub fn glue(z1: &BlockInvariants, z2: &BlockInvariants, trace: &mut Trace) -> Result<BlockInvariants, PipelineError> {
    z1.require_stage(Stage::Z, "glue")?;
    z2.require_stage(Stage::Z, "glue")?;
    let label = format!("{}{}{}", Stage::Mtriangle.symbol(), z1.suffix(), z2.suffix());
    let chi = trace.record(
        format!("χ({label})"),
        &format!("χ({}) + χ({})", z1.label, z2.label),
        format!("{} + {}", z1.chi, z2.chi),
        z1.chi + z2.chi,
        MAYER_VIETORIS,
    );
    let tau = trace.record(
        format!("τ({label})"),
        &format!("τ({}) + τ({})", z1.label, z2.label),
        format!("{} + {}", z1.tau, z2.tau),
        z1.tau + z2.tau,
        "Novikov additivity of the signature",
    );
    let b4 = trace.record(
        format!("b4({label})"),
        &format!("χ({label}) − 2"),
        format!("{chi} − 2"),
        chi - 2,
        MAYER_VIETORIS,
    );
    trace.assume(
        "the two halves satisfy the gluing condition and M▽ is simply-connected",
        "gluing theorem for orbifold admissible pairs",
    );
    let betti = [Some(1), Some(0), Some(0), Some(0), Some(b4), Some(0), Some(0), Some(0), Some(1)];
    let out = BlockInvariants::new(label, Stage::Mtriangle, chi, tau, betti, z1.sing_points + z2.sing_points);
    out.check_consistency()?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Holonomy {
    #[serde(rename = "Spin(7)")]
    Spin7,
    #[serde(rename = "SU(4)")]
    SU4,
    #[serde(rename = "Sp(2)")]
    Sp2,
    #[serde(rename = "Sp(1)×Sp(1)")]
    Sp1xSp1,
    #[serde(rename = "indeterminate")]
    Indeterminate,
}

impl fmt::Display for Holonomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Holonomy::Spin7 => "Spin(7)",
            Holonomy::SU4 => "SU(4)",
            Holonomy::Sp2 => "Sp(2)",
            Holonomy::Sp1xSp1 => "Sp(1)×Sp(1)",
            Holonomy::Indeterminate => "indeterminate",
        })
    }
}

pub fn classify_holonomy(a_hat: i64, simply_connected: bool) -> Holonomy {
    if !simply_connected {
        return Holonomy::Indeterminate;
    }
    match a_hat {
        1 => Holonomy::Spin7,
        2 => Holonomy::SU4,
        3 => Holonomy::Sp2,
        4 => Holonomy::Sp1xSp1,
        _ => Holonomy::Indeterminate,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingReport {
    #[serde(rename = "final")]
    pub final_block: BlockInvariants,
    #[serde(rename = "A_hat")]
    pub a_hat: i64,
    pub holonomy: Holonomy,
    pub assumption_log: Vec<Assumption>,
}

fn a_hat(label: &str, chi: i64, tau: i64, trace: &mut Trace) -> Result<i64, PipelineError> {
    let numerator = 3 * tau - chi;
    if numerator % 48 != 0 {
        return Err(PipelineError::NotDivisibleBy48 { chi, tau, numerator });
    }
    Ok(trace.record(
        format!("Â({label})"),
        &format!("(3τ({label}) − χ({label}))/48"),
        format!("(3·{tau} − {chi})/48"),
        numerator / 48,
        A_HAT,
    ))
}

fn holonomy(a: i64, simply_connected: bool, trace: &mut Trace) -> Holonomy {
    if simply_connected {
        trace.assume("M is simply-connected", "simple connectivity of the glued manifold");
    }
    classify_holonomy(a, simply_connected)
}

/// Replace each of the `k` singular points of `M▽` by an ALE piece.
pub fn resolve(mt: &BlockInvariants, simply_connected: bool, trace: &mut Trace) -> Result<GluingReport, PipelineError> {
    mt.require_stage(Stage::Mtriangle, "resolve")?;
    let b4_t = mt.require_b(4, "resolve")?;
    let k = mt.sing_points as i64;
    let label = format!("M{}", mt.suffix());
    let chi = trace.record(
        format!("χ({label})"),
        &format!("χ({}) + k", mt.label),
        format!("{} + {k}", mt.chi),
        mt.chi + k,
        RESOLUTION,
    );
    let tau = trace.record(
        format!("τ({label})"),
        &format!("τ({}) − k", mt.label),
        format!("{} − {k}", mt.tau),
        mt.tau - k,
        RESOLUTION,
    );
    let b4 = trace.record(
        format!("b4({label})"),
        &format!("b4({}) + k", mt.label),
        format!("{b4_t} + {k}"),
        b4_t + k,
        RESOLUTION,
    );
    let a = a_hat(&label, chi, tau, trace)?;
    let hol = holonomy(a, simply_connected, trace);
    if simply_connected && hol == Holonomy::Indeterminate {
        return Err(PipelineError::Unclassified(a));
    }
    let mut betti = mt.betti;
    betti[4] = Some(b4);
    let final_block = BlockInvariants::new(label, Stage::M, chi, tau, betti, 0);
    final_block.check_consistency()?;
    Ok(GluingReport { final_block, a_hat: a, holonomy: hol, assumption_log: trace.assumptions.clone() })
}

/// Crepant resolution of the `k` points `ℂ⁴/ℤ₄` of `X̄`.
pub fn crepant_block(xbar: &BlockInvariants, trace: &mut Trace) -> Result<BlockInvariants, PipelineError> {
    xbar.require_stage(Stage::Xbar, "crepant_block")?;
    let k = xbar.sing_points as i64;
    let label = xbar.relabel(Stage::Xhat);
    let chi = trace.record(
        format!("χ({label})"),
        &format!("χ({}) − k + k·χ(E)", xbar.label),
        format!("{} − {k} + {k}·4", xbar.chi),
        xbar.chi + 3 * k,
        CREPANT,
    );
    let tau = trace.record(
        format!("τ({label})"),
        &format!("τ({}) − k", xbar.label),
        format!("{} − {k}", xbar.tau),
        xbar.tau - k,
        CREPANT,
    );
    Ok(BlockInvariants::new(label, Stage::Xhat, chi, tau, UNKNOWN_BETTI, 0))
}

/// Double a crepant block along its divisor, giving a Calabi-Yau fourfold.
pub fn cy_double(
    xhat: &BlockInvariants,
    d_chi: i64,
    simply_connected: bool,
    trace: &mut Trace,
) -> Result<GluingReport, PipelineError> {
    xhat.require_stage(Stage::Xhat, "cy_double")?;
    let label = format!("M{}", xhat.suffix());
    let dx = format!("D̂{}", xhat.suffix());
    let chi = trace.record(
        format!("χ({label})"),
        &format!("2(χ({}) − χ({dx}))", xhat.label),
        format!("2({} − ({d_chi}))", xhat.chi),
        2 * (xhat.chi - d_chi),
        CY_DOUBLE,
    );
    let tau = trace.record(
        format!("τ({label})"),
        &format!("2τ({}) − τ({dx} × ℂP¹)", xhat.label),
        format!("2·{} − 0", xhat.tau),
        2 * xhat.tau,
        CY_DOUBLE,
    );
    let a = a_hat(&label, chi, tau, trace)?;
    let hol = holonomy(a, simply_connected, trace);
    let final_block = BlockInvariants::new(label, Stage::M, chi, tau, UNKNOWN_BETTI, 0);
    Ok(GluingReport { final_block, a_hat: a, holonomy: hol, assumption_log: trace.assumptions.clone() })
}

/// `V → X̄ → X → Z` for one cylindrical-end block.
pub fn cylindrical_block(
    v: &BlockInvariants,
    s: &SurfaceInvariants,
    d: &DivisorData,
    trace: &mut Trace,
) -> Result<BlockInvariants, PipelineError> {
    let xbar = blow_up(v, s, trace)?;
    let x = open_part(&xbar, d, trace)?;
    quotient(&x, v.sing_points, trace)
}
