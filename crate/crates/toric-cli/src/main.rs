//! `toric`: scenario runner and fan inspector.
//!
//! Exit codes: 0 all checks passed, 1 some check failed, 2 input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use toric::report::Report;
use toric::scenario::{parse_scenario, run_operation, run_scenario, BuilderSpec, Source,
    OPERATIONS};
use toric::suite::paper_suite;

#[derive(Parser)]
#[command(name = "toric", version, about = "Exact-arithmetic toric geometry engine")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Suppress run-dependent fields (timestamps) for byte-stable output.
    #[arg(long, global = true)]
    deterministic: bool,

    /// Show expected/computed values for passing checks too.
    #[arg(long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of a scenario file.
    Analyze {
        /// Path to a toric-scenario/1 JSON file.
        path: PathBuf,
    },
    /// Run the built-in verification suite.
    #[command(name = "paper-suite")]
    PaperSuite {
        /// Only run scenarios with this tag (or exact name).
        #[arg(long)]
        filter: Option<String>,
    },
    /// Build a fan from a builder spec and print invariants.
    ///
    /// Builder specs: projective_space=4, product=3x2,
    /// weighted_projective=1,1,2, blowup_linear_subspace=4,1,
    /// split_bundle_projectivization=3:0,3, cyclic_quotient_cone=2:1,1
    Fan {
        spec: String,
        /// Comma-separated list of operations (or "summary").
        #[arg(long, default_value = "summary")]
        show: String,
    },
}

fn print_report(report: &Report, json: bool, deterministic: bool, verbose: bool) {
    if json {
        let report = if deterministic {
            report.clone()
        } else {
            report.clone().with_timestamp()
        };
        print!("{}", report.to_json());
        return;
    }
    for c in &report.checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        let anchor = c
            .anchor
            .as_deref()
            .map(|a| format!(" -- {a}"))
            .unwrap_or_default();
        println!("{status} {}/{} [{}]{anchor}", c.scenario, c.id, c.op);
        if !c.pass || verbose {
            println!("     expected: {}", c.expected);
            println!("     computed: {}", c.computed);
        }
    }
    println!(
        "checks: {} total, {} passed, {} failed",
        report.summary.total, report.summary.passed, report.summary.failed
    );
}

fn parse_u64_list(s: &str, what: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| format!("bad {what}: `{p}`")))
        .collect()
}

fn parse_fan_spec(spec: &str) -> Result<BuilderSpec, String> {
    let (name, args) = spec
        .split_once('=')
        .ok_or_else(|| "builder spec must look like name=args".to_string())?;
    match name {
        "projective_space" => {
            let n = args.trim().parse().map_err(|_| format!("bad dimension `{args}`"))?;
            Ok(BuilderSpec::ProjectiveSpace { n })
        }
        "product" => {
            let dims: Vec<usize> = args
                .split('x')
                .map(|p| p.trim().parse().map_err(|_| format!("bad factor `{p}`")))
                .collect::<Result<_, String>>()?;
            if dims.len() < 2 {
                return Err("product needs at least two factors, e.g. product=3x2".into());
            }
            Ok(BuilderSpec::Product {
                factors: dims
                    .into_iter()
                    .map(|n| BuilderSpec::ProjectiveSpace { n })
                    .collect(),
            })
        }
        "weighted_projective" => Ok(BuilderSpec::WeightedProjective {
            weights: parse_u64_list(args, "weight")?,
        }),
        "blowup_linear_subspace" => {
            let parts: Vec<&str> = args.split(',').collect();
            if parts.len() != 2 {
                return Err("expected blowup_linear_subspace=n,k".into());
            }
            let n = parts[0].trim().parse().map_err(|_| "bad n".to_string())?;
            let k = parts[1].trim().parse().map_err(|_| "bad k".to_string())?;
            Ok(BuilderSpec::BlowupLinearSubspace { n, k })
        }
        "split_bundle_projectivization" => {
            let (base, twists) = args
                .split_once(':')
                .ok_or_else(|| "expected split_bundle_projectivization=base:a1,a2,..".to_string())?;
            let base_dim = base.trim().parse().map_err(|_| "bad base dimension".to_string())?;
            let twists = twists
                .split(',')
                .map(|p| p.trim().parse::<i64>().map_err(|_| format!("bad twist `{p}`")))
                .collect::<Result<Vec<_>, String>>()?;
            Ok(BuilderSpec::SplitBundleProjectivization { base_dim, twists })
        }
        "cyclic_quotient_cone" => {
            let (order, weights) = args
                .split_once(':')
                .ok_or_else(|| "expected cyclic_quotient_cone=order:a1,a2,..".to_string())?;
            let order = order.trim().parse().map_err(|_| "bad order".to_string())?;
            Ok(BuilderSpec::CyclicQuotientCone {
                order,
                weights: parse_u64_list(weights, "weight")?,
            })
        }
        other => Err(format!("unknown builder `{other}`")),
    }
}

fn run_fan(spec: &str, show: &str, json: bool) -> Result<(), String> {
    let builder = parse_fan_spec(spec)?;
    let source = Source::Builder(builder);
    let ops: Vec<&str> = match show {
        "summary" => vec!["fan_info", "classify", "class_group"],
        list => list.split(',').map(str::trim).collect(),
    };
    for op in &ops {
        if !OPERATIONS.contains(op) {
            return Err(format!(
                "unknown operation `{op}`; available: {}",
                OPERATIONS.join(", ")
            ));
        }
    }
    let mut results = serde_json::Map::new();
    for op in &ops {
        let value = match run_operation(&source, op, &Value::Null) {
            Ok(v) => v,
            Err(e) => serde_json::json!({ "error": e.to_string() }),
        };
        results.insert(op.to_string(), value);
    }
    if json {
        let doc = serde_json::json!({ "builder": spec, "results": results });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        println!("builder: {spec}");
        for op in &ops {
            println!("{op}:");
            let pretty =
                serde_json::to_string_pretty(&results[*op]).expect("serializable");
            for line in pretty.lines() {
                println!("  {line}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { path } => {
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            };
            let scenario = match parse_scenario(&text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let report = run_scenario(&scenario);
            print_report(&report, cli.json, cli.deterministic, cli.verbose);
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::PaperSuite { filter } => {
            let report = paper_suite(filter.as_deref());
            print_report(&report, cli.json, cli.deterministic, cli.verbose);
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Fan { spec, show } => match run_fan(&spec, &show, cli.json) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
