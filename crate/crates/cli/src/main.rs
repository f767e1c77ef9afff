use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use spin7_cli::report::{self, Format};
use spin7_cli::reproduce::{self, Reproduction};
use spin7_cli::scenario::{builtin_names, load_scenario};
use spin7_cli::{run, CliError};
use spin7_core::cayley;
use spin7_core::chern::{branched_euler, euler_ci};
use spin7_core::cohomology::{hypersurface_hodge, surface_from_chi_h02};
use spin7_core::series::{self, RationalSeriesSpec};
use spin7_core::wps::{self, ConditionStatus, ConstructionConfig, Weights};

#[derive(Parser)]
#[command(name = "spin7", version, about = "Exact invariants of glued Spin(7) and Calabi-Yau 8-manifolds")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Treat warnings as inconsistencies.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the arithmetic conditions of a scenario's blocks.
    Check { scenario: String },
    /// Expand Π(1−t^e)/Π(1−t^a), or the Jacobian ring series of a hypersurface.
    Hilbert {
        #[arg(long, value_delimiter = ',')]
        num: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        den: Vec<u64>,
        /// Use the Jacobian ring of a degree-`jacobian` hypersurface in ℂP(den).
        #[arg(long)]
        jacobian: Option<u64>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Hodge diamonds.
    #[command(subcommand)]
    Hodge(HodgeCommand),
    /// Euler characteristics.
    #[command(subcommand)]
    Euler(EulerCommand),
    /// Run a scenario file or builtin through the invariant chain.
    Pipeline { scenario: String },
    /// Run builtin scenarios and compare against their expected values.
    Reproduce { name: String },
    /// Exact checks on the Cayley form.
    #[command(subcommand)]
    Cayley(CayleyCommand),
}

#[derive(Subcommand)]
enum HodgeCommand {
    /// Quasismooth hypersurface of degree `d` in ℂP(weights).
    Hypersurface {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u64>,
        #[arg(long)]
        degree: u64,
    },
    /// Surface with b¹ = 0 from χ and h^{0,2}.
    Surface {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long)]
        h02: i64,
    },
}

#[derive(Subcommand)]
enum EulerCommand {
    /// Smooth complete intersection in ℂPⁿ.
    Ci {
        #[arg(long)]
        ambient: usize,
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<u64>,
    },
    /// Branched cover formula (χ(cover) + (m−1)χ(branch))/m.
    Branched {
        #[arg(long, allow_hyphen_values = true)]
        cover: i64,
        #[arg(long, allow_hyphen_values = true)]
        branch: i64,
        #[arg(long, default_value_t = 4)]
        sheets: i64,
    },
}

#[derive(Subcommand)]
enum CayleyCommand {
    Verify,
}

struct Output {
    text: String,
    json: serde_json::Value,
    warnings: Vec<String>,
    failed: Option<String>,
}

impl Output {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Output { text, json, warnings: Vec::new(), failed: None }
    }
}

fn weights(a: Vec<u64>) -> Result<Weights, CliError> {
    Weights::new(a).map_err(|e| CliError::Usage(e.to_string()))
}

fn reproduction_output(runs: Vec<Reproduction>) -> Output {
    let text = runs.iter().map(reproduce::render_text).collect::<Vec<_>>().join("\n");
    let failed: Vec<&str> = runs.iter().filter(|r| !r.passed()).map(|r| r.scenario.as_str()).collect();
    let warnings = runs.iter().flat_map(|r| r.report.warnings.clone()).collect();
    Output {
        text,
        json: serde_json::to_value(&runs).expect("reproductions serialize"),
        warnings,
        failed: (!failed.is_empty()).then(|| format!("deviation from expected values in {}", failed.join(", "))),
    }
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Check { scenario } => {
            let s = load_scenario(scenario)?;
            let mut text = String::new();
            let mut blocks = Vec::new();
            let mut failed = None;
            for b in &s.blocks {
                let config = ConstructionConfig::new(b.weights.clone(), b.degrees.clone(), b.assertions.clone())?;
                let r = wps::check_conditions(&config);
                let strata = wps::singular_strata(&b.weights).unwrap_or_default();
                text += &format!("V{} in {} with degrees {:?}\n", b.suffix, b.weights, b.degrees);
                for line in &r.lines {
                    let tag = match &line.status {
                        ConditionStatus::Pass => "pass",
                        ConditionStatus::Fail { .. } => "FAIL",
                        ConditionStatus::Asserted { .. } => "asserted",
                        ConditionStatus::Unasserted => "open",
                    };
                    text += &format!("  {tag:<9} {:<3} {}  [{}]\n", line.id, line.statement, line.detail);
                }
                for st in &strata {
                    text += &format!(
                        "  stratum {:?}: ℤ{} acting with weights {:?}{}\n",
                        st.support,
                        st.group_order,
                        st.action_weights,
                        if wps::is_scalar_z4_action(st) { " (scalar ℂ⁴/ℤ₄)" } else { "" }
                    );
                }
                if let Some(f) = r.failures().next() {
                    failed.get_or_insert(format!("V{}: condition ({}) fails: {}", b.suffix, f.id, f.detail));
                }
                blocks.push(json!({ "suffix": b.suffix, "conditions": r, "strata": strata }));
            }
            Ok(Output { text, json: json!({ "scenario": s.name, "blocks": blocks }), warnings: Vec::new(), failed })
        }
        Command::Hilbert { num, den, jacobian, order } => {
            let spec = match jacobian {
                Some(d) => match series::jacobian_spec(&weights(den.clone())?, *d)? {
                    series::JacobianRing::Vanishing { index } => {
                        let text = format!("R(f) = 0: ∂f/∂z{index} is a nonzero constant\n");
                        return Ok(Output::ok(text, json!({ "vanishing": true, "coefficients": [] })));
                    }
                    series::JacobianRing::Series { spec } => spec,
                },
                None => RationalSeriesSpec::with_default_order(num.clone(), den.clone(), 0)?,
            };
            let spec = spec.with_order(order.unwrap_or(spec.order));
            let s = series::expand(&spec);
            let mut text = format!("Π(1−t^e)/Π(1−t^a) with e = {:?}, a = {:?}\n", spec.numerator, spec.denominator);
            for (m, c) in s.coeffs.iter().enumerate() {
                text += &format!("  {m:>4}  {c}\n");
            }
            let coeffs: Vec<String> = s.coeffs.iter().map(ToString::to_string).collect();
            let numbers: Vec<serde_json::Value> = coeffs
                .iter()
                .map(|c| c.parse::<i64>().map(serde_json::Value::from).unwrap_or_else(|_| c.clone().into()))
                .collect();
            Ok(Output::ok(text, json!({ "spec": spec, "coefficients": numbers })))
        }
        Command::Hodge(HodgeCommand::Hypersurface { weights: w, degree }) => {
            let d = hypersurface_hodge(&weights(w.clone())?, *degree)?;
            let text = format!("{d}χ = {}\nb = {:?}\n", d.euler(), d.betti());
            Ok(Output::ok(text, json!({ "diamond": d, "rows": d.rows(), "euler": d.euler(), "betti": d.betti() })))
        }
        Command::Hodge(HodgeCommand::Surface { chi, h02 }) => {
            let s = surface_from_chi_h02(*chi, *h02)?;
            let text = format!("{}χ = {}\nτ = {}\nb = {:?}\n", s.diamond, s.chi, s.tau, s.betti);
            Ok(Output::ok(text, serde_json::to_value(&s).expect("surface serializes")))
        }
        Command::Euler(EulerCommand::Ci { ambient, degrees }) => {
            let chi = euler_ci(*ambient, degrees)?;
            Ok(Output::ok(format!("χ = {chi}\n"), json!({ "ambient": ambient, "degrees": degrees, "chi": chi })))
        }
        Command::Euler(EulerCommand::Branched { cover, branch, sheets }) => {
            let chi = branched_euler(*cover, *branch, *sheets)?;
            Ok(Output::ok(format!("χ = {chi}\n"), json!({ "cover": cover, "branch": branch, "sheets": sheets, "chi": chi })))
        }
        Command::Pipeline { scenario } => {
            let r = run(&load_scenario(scenario)?)?;
            Ok(Output {
                text: report::render_text(&r),
                json: serde_json::to_value(&r).expect("report serializes"),
                warnings: r.warnings.clone(),
                failed: None,
            })
        }
        Command::Reproduce { name } => {
            let names: Vec<String> = if name == "all" {
                builtin_names().map(String::from).collect()
            } else {
                vec![name.clone()]
            };
            let runs = std::thread::scope(|scope| {
                let handles: Vec<_> = names.iter().map(|n| scope.spawn(move || reproduce::reproduce(n))).collect();
                handles.into_iter().map(|h| h.join().expect("reproduction thread panicked")).collect::<Result<Vec<_>, _>>()
            })?;
            Ok(reproduction_output(runs))
        }
        Command::Cayley(CayleyCommand::Verify) => {
            let r = cayley::verify();
            let mut text = String::new();
            for c in &r.checks {
                text += &format!("  {}  {}\n", if c.passed { "ok  " } else { "FAIL" }, c.identity);
            }
            text += &format!(
                "  orbit tangent rank {} = 64 − dim stabilizer {}\n  anti-self-dual forms: {}, normal space: {}\n",
                r.tangent_rank, r.stabilizer_dimension, r.anti_self_dual_dimension, r.normal_dimension
            );
            let failed = (!r.passed()).then(|| "a Cayley form identity failed".to_string());
            Ok(Output { text, json: serde_json::to_value(&r).expect("report serializes"), warnings: Vec::new(), failed })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json renders")),
            }
            if let Some(msg) = out.failed {
                eprintln!("spin7: {msg}");
                return ExitCode::from(2);
            }
            if cli.strict && !out.warnings.is_empty() {
                eprintln!("spin7: {} warning(s) under --strict", out.warnings.len());
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("spin7: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
