//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;

use spin7_cli::reproduce::{reproduce, Reproduction};
use spin7_cli::{load_scenario, run};
use spin7_core::cayley;
use spin7_core::chern::{branched_euler, euler_ci};
use spin7_core::cohomology::{hypersurface_hodge, surface_from_chi_h02, HodgeDiamond};
use spin7_core::pipeline::{self, BlockInvariants, PipelineError, Stage, Trace, UNKNOWN_BETTI};
use spin7_core::series::{self, RationalSeriesSpec};
use spin7_core::wps::Weights;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    ensure(got == want, || format!("{what}: got {got:?}, want {want:?}"))
}

fn w(a: &[u64]) -> Weights {
    Weights::new(a.to_vec()).unwrap()
}

fn hodge(a: &[u64], d: u64) -> Result<HodgeDiamond, String> {
    hypersurface_hodge(&w(a), d).map_err(|e| e.to_string())
}

fn hilbert() -> Outcome {
    let spec = RationalSeriesSpec::new(vec![7, 7, 7, 7], vec![1, 1, 1, 1], 8).map_err(|e| e.to_string())?;
    let coeffs: Vec<String> = series::expand(&spec).coeffs.iter().map(ToString::to_string).collect();
    let want: Vec<String> = [1, 4, 10, 20, 35, 56, 84, 116, 149].iter().map(ToString::to_string).collect();
    eq("(7,7,7,7)/(1,1,1,1)", coeffs, want)?;
    let spec = RationalSeriesSpec::with_default_order(vec![8, 8], vec![1, 1, 1, 1, 4], 8).map_err(|e| e.to_string())?;
    let c8 = series::coefficient(&spec, 8).map_err(|e| e.to_string())?;
    eq("[t⁸] (8,8)/(1,1,1,1,4)", c8.to_string(), "199".to_string())
}

fn hodge_numbers() -> Outcome {
    let d = hodge(&[1, 1, 1, 1, 4], 8)?;
    eq("h21(D)", d.get(2, 1), 149)?;
    eq("h11(D)", d.get(1, 1), 1)?;
    eq("χ(D)", d.euler(), -296)?;
    eq("middle row of V₁", hodge(&[1, 1, 1, 1, 4, 4], 8)?.middle_row(), vec![0, 35, 232, 35, 0])?;
    eq("middle row of V₂", hodge(&[1, 1, 1, 1, 4, 4], 4)?.middle_row(), vec![0, 0, 1, 0, 0])
}

fn chern_euler() -> Outcome {
    let ci = |n: usize, d: &[u64]| euler_ci(n, d).map_err(|e| e.to_string());
    eq("χ(octic in ℂP⁴)", ci(4, &[8])?, -2096)?;
    eq("χ((8,8) in ℂP⁴)", ci(4, &[8, 8])?, 7808)?;
    eq("χ((8,8) in ℂP³)", ci(3, &[8, 8])?, -768)?;
    eq("χ(octic in ℂP³)", ci(3, &[8])?, 304)?;
    eq("χ(D)", branched_euler(-2096, 304, 4).map_err(|e| e.to_string())?, -296)?;
    eq("χ(S)", branched_euler(7808, -768, 4).map_err(|e| e.to_string())?, 1376)?;
    let report = run(&load_scenario("section4").map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(report.warnings.iter().any(|m| m.starts_with("typo") && m.contains("7808") && m.contains("304")), || {
        format!("typo warning missing from {:?}", report.warnings)
    })
}

fn surface_assembly() -> Outcome {
    let s = surface_from_chi_h02(1376, 199).map_err(|e| e.to_string())?;
    eq("h11(S)", s.diamond.get(1, 1), 976)?;
    eq("τ(S)", s.tau, -576)?;
    eq("b2(S)", s.betti[2], 1374)
}

fn reproduced(name: &str) -> Result<Reproduction, String> {
    let r = reproduce(name).map_err(|e| e.to_string())?;
    let failed: Vec<String> = r
        .comparisons
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} = {:?}, want {}", c.quantity, c.observed, c.expected))
        .collect();
    ensure(failed.is_empty(), || format!("{name}: {}", failed.join("; ")))?;
    Ok(r)
}

fn value(r: &Reproduction, q: &str) -> Option<i64> {
    r.report.value(q)
}

fn section4() -> Outcome {
    let r = reproduced("section4")?;
    let chain = [
        ("χ(X̄)", 1381),
        ("τ(X̄)", 577),
        ("χ(X)", 1677),
        ("χ(Z)", 839),
        ("χ(M▽)", 1678),
        ("τ(M▽)", 578),
        ("b4(M▽)", 1676),
        ("χ(M)", 1680),
        ("τ(M)", 576),
        ("b2(M)", 0),
        ("b3(M)", 0),
        ("b4(M)", 1678),
    ];
    for (q, v) in chain {
        eq(q, value(&r, q), Some(v))?;
    }
    let res = r.report.result.as_ref().ok_or("no result")?;
    eq("Â", res.a_hat, 1)?;
    eq("holonomy", res.holonomy.to_string(), "Spin(7)".to_string())
}

fn table2() -> Outcome {
    for (name, label, want) in [("m11", "M₁₁", (320, 912, 910)), ("m12", "M₁₂", (448, 1296, 1294)), ("m22", "M₂₂", (576, 1680, 1678))] {
        let r = reproduced(name)?;
        let got = (
            value(&r, &format!("τ({label})")),
            value(&r, &format!("χ({label})")),
            value(&r, &format!("b4({label})")),
        );
        eq(name, got, (Some(want.0), Some(want.1), Some(want.2)))?;
        eq("Â", r.report.result.as_ref().map(|x| x.a_hat), Some(1))?;
    }
    Ok(())
}

fn cy_double() -> Outcome {
    let r = reproduced("cy-double")?;
    eq("χ(M)", value(&r, "χ(M)"), Some(3360))?;
    eq("τ(M)", value(&r, "τ(M)"), Some(1152))?;
    let res = r.report.result.as_ref().ok_or("no result")?;
    eq("Â", res.a_hat, 2)?;
    eq("holonomy", res.holonomy.to_string(), "SU(4)".to_string())
}

fn cayley_suite() -> Outcome {
    let r = cayley::verify();
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.identity.as_str()).collect();
    ensure(failed.is_empty(), || format!("failed identities: {failed:?}"))?;
    for needle in ["α⁴ = id", "β⁴ = id", "αβ = βα³", "α*Φ₀ = Φ₀", "β*Φ₀ = Φ₀", "Λ⁴₋ ⊂ T_Φ₀ A"] {
        ensure(r.checks.iter().any(|c| c.identity == needle), || format!("missing check {needle}"))?;
    }
    let presentations = r.checks.iter().filter(|c| c.identity.contains("Re Ω")).count();
    eq("Calabi-Yau presentations", presentations, 2)?;
    eq("rank + stabilizer", r.tangent_rank + r.stabilizer_dimension, 64)?;
    eq("dim Λ⁴₋", r.anti_self_dual_dimension, 35)
}

fn properties() -> Outcome {
    let mut diamonds = vec![
        hodge(&[1, 1, 1, 1, 4], 8)?,
        hodge(&[1, 1, 1, 1, 4, 4], 8)?,
        hodge(&[1, 1, 1, 1, 4, 4], 4)?,
        surface_from_chi_h02(1376, 199).map_err(|e| e.to_string())?.diamond,
    ];
    for n in 2..=5usize {
        for d in 1..=8u64 {
            diamonds.push(hodge(&vec![1; n + 1], d)?);
        }
    }
    for (i, d) in diamonds.iter().enumerate() {
        ensure(d.is_symmetric(), || format!("diamond #{i} is not symmetric:\n{d}"))?;
    }

    let specs = [
        (vec![8, 8], vec![1, 1, 1, 1, 4]),
        (vec![7, 7, 7, 7], vec![1, 1, 1, 1]),
        (vec![6], vec![1, 2, 3]),
        (vec![], vec![2, 3, 5, 7]),
    ];
    for (num, den) in specs {
        let spec = RationalSeriesSpec::new(num.clone(), den.clone(), 40).map_err(|e| e.to_string())?;
        let s = series::expand(&spec);
        ensure(s.coeffs.iter().all(|c| !c.to_string().starts_with('-')), || format!("negative coefficient in {num:?}/{den:?}"))?;
    }

    let mut t = Trace::default();
    let odd = BlockInvariants::new("X", Stage::X, 1677, 576, UNKNOWN_BETTI, 0);
    ensure(matches!(pipeline::quotient(&odd, 0, &mut t), Err(PipelineError::Parity { .. })), || {
        "halving guard accepted an odd total".into()
    })?;
    let b = [Some(1), Some(0), Some(0), Some(0), Some(1677), Some(0), Some(0), Some(0), Some(1)];
    let corrupt = BlockInvariants::new("M▽", Stage::Mtriangle, 1679, 578, b, 2);
    ensure(
        matches!(pipeline::resolve(&corrupt, true, &mut Trace::default()), Err(PipelineError::NotDivisibleBy48 { .. })),
        || "Â guard accepted 3τ − χ not divisible by 48".into(),
    )?;

    for d in 1..=10i64 {
        eq(&format!("χ(degree {d} surface)"), euler_ci(3, &[d as u64]).map_err(|e| e.to_string())?, d * d * d - 4 * d * d + 6 * d)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Hilbert series", hilbert),
        ("Hodge numbers", hodge_numbers),
        ("Chern–Euler", chern_euler),
        ("surface assembly", surface_assembly),
        ("section4 pipeline", section4),
        ("Spin(7) gluing table", table2),
        ("Calabi-Yau doubling", cy_double),
        ("Cayley suite", cayley_suite),
        ("property suites", properties),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {}: PASS  {name}", i + 1),
            Err(e) => {
                all = false;
                println!("criterion {}: FAIL  {name}: {e}", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
