//! Turn a scenario into a report: check the construction, derive every block
//! input, then run the invariant chain for the scenario kind.

use spin7_core::chern::{branched_euler, euler_ci, euler_wps};
use spin7_core::cohomology::{self, ci_h0q, cy3_betti, hodge_signature, HodgeDiamond, SurfaceInvariants};
use spin7_core::pipeline::{self, BlockInvariants, DivisorData, Stage, Trace};
use spin7_core::wps::{self, ConstructionConfig, StratumForm};

use crate::report::{BlockConditions, Report};
use crate::scenario::{BlockSpec, ChernRoute, Scenario, ScenarioKind};
use crate::CliError;

const JACOBIAN: &str = "Fletcher Jacobian ring formula for quasismooth hypersurfaces";
const COORDINATE_RING: &str = "h^q(O_X) of weighted complete intersections from graded pieces of the coordinate ring";
const CHERN: &str = "total Chern class of a smooth complete intersection in ℂPⁿ";
const BRANCHED: &str = "Euler characteristic of the branched cover ℂPⁿ → ℂPⁿ(1,…,1,m)";
const HODGE_INDEX: &str = "Hodge index theorem";
const LEFSCHETZ: &str = "Lefschetz hyperplane theorem (b¹ = 0) closing the surface diamond";
const AMBIENT: &str = "rational cohomology of ℂPⁿ(a₀,…,aₙ) equals that of ℂPⁿ";
const STRATA: &str = "singular strata of a well-formed weighted projective space";

struct Ctx {
    trace: Trace,
    warnings: Vec<String>,
    notes: Vec<String>,
}

struct Block {
    v: BlockInvariants,
    d: DivisorData,
    s: SurfaceInvariants,
}

fn diamond(n: usize, rows: &[Vec<i64>], what: &str) -> Result<HodgeDiamond, CliError> {
    let d = HodgeDiamond::from_rows(n, rows)?;
    if !d.is_symmetric() {
        return Err(CliError::Inconsistency(format!("the diamond given for {what} violates Hodge symmetry")));
    }
    Ok(d)
}

fn chern_route(ctx: &mut Ctx, route: &ChernRoute, cover: &str, branch: &str, target: &str) -> Result<i64, CliError> {
    let chi_cover = euler_ci(route.cover_ambient, &route.cover_degrees)?;
    ctx.trace.record(
        format!("χ({cover})"),
        &format!("Chern number of degrees {:?} in ℂP{}", route.cover_degrees, route.cover_ambient),
        chi_cover.to_string(),
        chi_cover,
        CHERN,
    );
    let chi_branch = euler_ci(route.branch_ambient, &route.branch_degrees)?;
    ctx.trace.record(
        format!("χ({branch})"),
        &format!("Chern number of degrees {:?} in ℂP{}", route.branch_degrees, route.branch_ambient),
        chi_branch.to_string(),
        chi_branch,
        CHERN,
    );
    let m = route.sheets;
    let chi = branched_euler(chi_cover, chi_branch, m)?;
    ctx.trace.record(
        format!("χ({target})"),
        &format!("(χ({cover}) + {}·χ({branch}))/{m}", m - 1),
        format!("({chi_cover} + {}·({chi_branch}))/{m}", m - 1),
        chi,
        BRANCHED,
    );
    if let Some(printed) = &route.printed_branch {
        if printed.value != chi_branch {
            let alternative = branched_euler(chi_cover, printed.value, m)
                .map(|v| v.to_string())
                .unwrap_or_else(|_| "a non-integer".to_string());
            ctx.warnings.push(format!(
                "typo: χ({branch}) is printed as {} ({}), but the Chern computation gives {chi_branch}; \
                 the printed value would make χ({target}) = {alternative} instead of {chi}, so {chi_branch} is used",
                printed.value, printed.provenance
            ));
        }
    }
    Ok(chi)
}

fn singular_points(ctx: &mut Ctx, spec: &BlockSpec, v_label: &str) -> Result<u64, CliError> {
    let w = &spec.weights;
    if !wps::is_well_formed(w) {
        return Err(CliError::Inconsistency(format!("{w} is not well-formed; normalize it to {}", wps::normalize(w))));
    }
    let strata = wps::singular_strata(w)?;
    let v_is_ambient = spec.degrees.len() == 2;
    let mut total = 0u64;
    for s in &strata {
        let support: Vec<String> = s.support.iter().map(|i| format!("z{i}")).collect();
        if !wps::is_scalar_z4_action(s) {
            ctx.warnings.push(format!(
                "stratum {{{}}} carries ℤ{} acting with weights {:?}, not the scalar ℂ⁴/ℤ₄ model",
                support.join(", "),
                s.group_order,
                s.action_weights
            ));
        }
        if v_is_ambient && s.support.len() > 1 {
            return Err(CliError::Inconsistency(format!(
                "{v_label} contains the positive-dimensional stratum {{{}}}",
                support.join(", ")
            )));
        }
        let form = match &spec.stratum_form {
            Some(c) => StratumForm { variables: s.support.len(), coefficients: c.clone() },
            None if v_is_ambient => StratumForm::point(Vec::new()),
            None => {
                return Err(CliError::Usage(format!("{v_label} is cut out by equations, so blocks.stratum_form is required")))
            }
        };
        let n = wps::count_stratum_points(&form)?;
        ctx.trace.record(
            format!("k({v_label})"),
            &format!("#zeros of the restricted equations on {{{}}}", support.join(", ")),
            n.to_string(),
            n as i64,
            STRATA,
        );
        total += n as u64;
    }
    Ok(total)
}

fn build_v(ctx: &mut Ctx, spec: &BlockSpec, label: &str, k: u64) -> Result<BlockInvariants, CliError> {
    let tau = spec.v.tau.value;
    let (chi, betti) = match &spec.v.diamond {
        Some(given) => {
            let d = diamond(4, &given.value, label)?;
            if spec.degrees.len() == 3 {
                let computed = cohomology::hypersurface_hodge(&spec.weights, spec.degrees[0])?;
                if computed == d {
                    ctx.notes.push(format!(
                        "the tabulated diamond of {label} agrees with the Jacobian ring computation (middle row {:?})",
                        computed.middle_row()
                    ));
                } else {
                    ctx.warnings.push(format!(
                        "the tabulated diamond of {label} has middle row {:?}, the Jacobian ring gives {:?}",
                        d.middle_row(),
                        computed.middle_row()
                    ));
                }
            }
            let chi = ctx.trace.record(
                format!("χ({label})"),
                "Σ(−1)^{p+q} h^{p,q}",
                format!("{:?}", d.betti()),
                d.euler(),
                &given.provenance,
            );
            let sum = hodge_signature(&d)?;
            let relation = if sum == tau { "agrees with" } else { "differs from" };
            ctx.notes.push(format!(
                "τ({label}) = {tau} is an input ({}); the Hodge-index sum over its diamond is {sum}, which {relation} it",
                spec.v.tau.provenance
            ));
            let b: Vec<Option<i64>> = d.betti().into_iter().map(Some).collect();
            (chi, <[Option<i64>; 9]>::try_from(b).expect("fourfold diamond has 9 Betti numbers"))
        }
        None => {
            if spec.degrees.len() != 2 {
                return Err(CliError::Usage(format!("{label} is cut out by equations, so blocks.v.diamond is required")));
            }
            let n = spec.weights.dimension();
            if n != 4 {
                return Err(CliError::Inconsistency(format!("ambient {} is not fourfold", spec.weights)));
            }
            let chi = ctx.trace.record(
                format!("χ({label})"),
                &format!("χ({})", spec.weights),
                format!("{n} + 1"),
                euler_wps(&spec.weights),
                AMBIENT,
            );
            ctx.notes.push(format!("τ({label}) = {tau} is an input ({})", spec.v.tau.provenance));
            let b = std::array::from_fn(|i| Some(i64::from(i % 2 == 0)));
            (chi, b)
        }
    };
    ctx.trace.record(format!("τ({label})"), "input", tau.to_string(), tau, &spec.v.tau.provenance);
    Ok(BlockInvariants::new(label, Stage::V, chi, tau, betti, k))
}

fn build_d(ctx: &mut Ctx, spec: &BlockSpec, suffix: &str) -> Result<DivisorData, CliError> {
    let label = format!("D{suffix}");
    let (d, source) = match &spec.d.diamond {
        Some(given) => (diamond(3, &given.value, &label)?, given.provenance.clone()),
        None => {
            if spec.degrees.len() != 2 {
                return Err(CliError::Usage(format!("{label} is a complete intersection, so blocks.d.diamond is required")));
            }
            (cohomology::hypersurface_hodge(&spec.weights, spec.degrees[0])?, JACOBIAN.to_string())
        }
    };
    let h21 = ctx.trace.record(format!("h21({label})"), "h^{2,1}", d.get(2, 1).to_string(), d.get(2, 1), &source);
    let h11 = ctx.trace.record(format!("h11({label})"), "h^{1,1}", d.get(1, 1).to_string(), d.get(1, 1), &source);
    let chi = ctx.trace.record(
        format!("χ({label})"),
        "2(h^{1,1} − h^{2,1})",
        format!("2({h11} − {h21})"),
        d.euler(),
        &source,
    );
    if let Some(route) = &spec.d.chern {
        let via_chern = chern_route(ctx, route, &format!("D̃{suffix}"), &format!("D̃{suffix}∩Σ̃₄"), &format!("{label} via cover"))?;
        if via_chern != chi {
            return Err(CliError::Inconsistency(format!(
                "χ({label}) = {chi} from its diamond but {via_chern} from the branched cover"
            )));
        }
        ctx.notes.push(format!("χ({label}) = {chi} both from its Hodge numbers and from the branched cover"));
    }
    let b = cy3_betti(chi, h11)?;
    ctx.trace.record(format!("b3({label})"), "2 + 2h^{2,1}", format!("2 + 2·{h21}"), b[3], "Calabi-Yau threefold Betti numbers");
    Ok(DivisorData { chi, b2: b[2] })
}

fn build_s(ctx: &mut Ctx, spec: &BlockSpec, suffix: &str) -> Result<SurfaceInvariants, CliError> {
    let label = format!("S{suffix}");
    let h02 = ci_h0q(&spec.weights, &spec.degrees, 0, 2)?;
    let alpha = spec.degrees.iter().sum::<u64>() as i64 - spec.weights.sum() as i64;
    ctx.trace.record(
        format!("h02({label})"),
        &format!("dim A_α, α = Σd − Σa = {alpha}"),
        format!("coefficient of t^{alpha} in Π(1−t^d)/Π(1−t^a)"),
        h02,
        COORDINATE_RING,
    );
    let via_chern = match &spec.s.chern {
        Some(route) => Some(chern_route(ctx, route, &format!("S̃{suffix}"), &format!("S̃{suffix}∩Σ̃₄"), &label)?),
        None => None,
    };
    let s = match &spec.s.diamond {
        Some(given) => {
            let s = SurfaceInvariants::from_diamond(diamond(2, &given.value, &label)?)?;
            if s.diamond.get(0, 2) != h02 {
                return Err(CliError::Inconsistency(format!(
                    "h^{{0,2}}({label}) = {} in the given diamond but {h02} from the coordinate ring",
                    s.diamond.get(0, 2)
                )));
            }
            if let Some(c) = via_chern {
                if c != s.chi {
                    return Err(CliError::Inconsistency(format!(
                        "χ({label}) = {} from its diamond but {c} from the branched cover",
                        s.chi
                    )));
                }
                ctx.notes.push(format!("χ({label}) = {c} both from its diamond and from the branched cover"));
            }
            ctx.trace.record(format!("χ({label})"), "Σ(−1)^{p+q} h^{p,q}", format!("{:?}", s.betti), s.chi, &given.provenance);
            s
        }
        None => cohomology::surface_from_chi_h02(via_chern.expect("validated: chern route present"), h02)?,
    };
    ctx.trace.record(
        format!("h11({label})"),
        "χ − 2 − 2h^{0,2}",
        format!("{} − 2 − 2·{h02}", s.chi),
        s.diamond.get(1, 1),
        LEFSCHETZ,
    );
    ctx.trace.record(
        format!("τ({label})"),
        "Σ(−1)^q h^{p,q}",
        format!("2 + 2·{h02} − {}", s.diamond.get(1, 1)),
        s.tau,
        HODGE_INDEX,
    );
    Ok(s)
}

fn build_block(ctx: &mut Ctx, spec: &BlockSpec, report: &mut Report) -> Result<Block, CliError> {
    let suffix = spec.suffix.as_str();
    let v_label = format!("V{suffix}");
    let config = ConstructionConfig::new(spec.weights.clone(), spec.degrees.clone(), spec.assertions.clone())?;
    let conditions = wps::check_conditions(&config);
    report.conditions.push(BlockConditions { label: v_label.clone(), report: conditions.clone() });
    if let Some(f) = conditions.failures().next() {
        return Err(CliError::Inconsistency(format!("{v_label}: condition ({}) {}: {}", f.id, f.statement, f.detail)));
    }
    let k = singular_points(ctx, spec, &v_label)?;
    let v = build_v(ctx, spec, &v_label, k)?;
    let d = build_d(ctx, spec, suffix)?;
    let s = build_s(ctx, spec, suffix)?;
    Ok(Block { v, d, s })
}

pub fn run(scenario: &Scenario) -> Result<Report, CliError> {
    let mut report = Report::empty(&scenario.name);
    report.kind = Some(scenario.kind);
    let mut ctx = Ctx { trace: Trace::default(), warnings: Vec::new(), notes: Vec::new() };
    let simply_connected = scenario.simply_connected.value;
    if simply_connected {
        ctx.trace.assume("M is simply-connected", scenario.simply_connected.provenance.clone());
    }

    let result = match scenario.kind {
        ScenarioKind::Spin7Double => {
            let b = build_block(&mut ctx, &scenario.blocks[0], &mut report)?;
            let z = pipeline::cylindrical_block(&b.v, &b.s, &b.d, &mut ctx.trace)?;
            let mt = pipeline::glue(&z, &z, &mut ctx.trace)?;
            pipeline::resolve(&mt, simply_connected, &mut ctx.trace)?
        }
        ScenarioKind::Spin7Glue => {
            let b1 = build_block(&mut ctx, &scenario.blocks[0], &mut report)?;
            let b2 = build_block(&mut ctx, &scenario.blocks[1], &mut report)?;
            if b1.d.chi != b2.d.chi || b1.d.b2 != b2.d.b2 {
                return Err(CliError::Inconsistency(format!(
                    "the divisors differ (χ = {} vs {}), so the cylindrical ends cannot match",
                    b1.d.chi, b2.d.chi
                )));
            }
            let z1 = pipeline::cylindrical_block(&b1.v, &b1.s, &b1.d, &mut ctx.trace)?;
            let z2 = pipeline::cylindrical_block(&b2.v, &b2.s, &b2.d, &mut ctx.trace)?;
            let mt = pipeline::glue(&z1, &z2, &mut ctx.trace)?;
            pipeline::resolve(&mt, simply_connected, &mut ctx.trace)?
        }
        ScenarioKind::CyDouble => {
            let b = build_block(&mut ctx, &scenario.blocks[0], &mut report)?;
            let xbar = pipeline::blow_up(&b.v, &b.s, &mut ctx.trace)?;
            let xhat = pipeline::crepant_block(&xbar, &mut ctx.trace)?;
            pipeline::cy_double(&xhat, b.d.chi, simply_connected, &mut ctx.trace)?
        }
    };

    report.trace = ctx.trace.lines;
    report.result = Some(result);
    report.warnings = ctx.warnings;
    report.notes = ctx.notes;
    Ok(report)
}
