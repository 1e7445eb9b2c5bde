//! Command line for building and verifying the dynamical Yang-Baxter and
//! reflection tables described by JSON documents.
//!
//! Exit codes are a stable contract: 0 when everything requested passed,
//! 1 when some check found a counterexample or a published value failed
//! to reproduce, 2 when the input could not be parsed or validated.

mod dump;
mod instance;
mod reproduce;
mod sweep;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dybax_core::Result;

#[derive(Parser)]
#[command(name = "dybax", version, about = "Dynamical Yang-Baxter and reflection workbench")]
struct Cli {
    /// Worker threads for the parallel sweeps. Defaults to all cores, or
    /// to the DYBAX_WORKERS environment variable when set. Results do not
    /// depend on the worker count.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Seed for randomized sweeps. Reserved: every built-in check is
    /// exhaustive, so nothing currently consumes it.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Machine-readable JSON instead of the human summary.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a document and run every structural validation.
    Validate { file: PathBuf },
    /// Build a derived table and print it, or write it with --out.
    Build {
        file: PathBuf,
        #[arg(long, value_enum)]
        what: dump::What,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run check groups against a document.
    Verify {
        file: PathBuf,
        /// Comma-separated groups (braid, monoid, module, boundary,
        /// reflection, brace, quiver) or `all`. Defaults to the
        /// document's `checks` list, else `all`.
        #[arg(long, value_delimiter = ',')]
        check: Vec<String>,
    },
    /// Sweep families of group endomorphisms over the module carrier.
    Enumerate {
        file: PathBuf,
        /// Sweep the full Cartesian product of End(G) over the carrier.
        #[arg(long)]
        families: bool,
        /// Stop after this many families (default one million).
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
    },
    /// Recompute the published values of a built-in example
    /// (example-5.3, example-8.9, or zn-flip).
    Reproduce { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_workers(cli.workers);
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            println!(
                "{}",
                serde_json::json!({ "error": e.to_string(), "exit": 2 })
            );
            if !cli.json {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}

/// Worker precedence: the flag wins, then the environment variable, then
/// rayon's default (all cores).
fn init_workers(flag: Option<usize>) {
    let n = flag.or_else(|| {
        std::env::var("DYBAX_WORKERS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = n {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.cmd {
        Cmd::Validate { file } => {
            let inst = instance::load(file)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({ "name": inst.name, "valid": true })
                );
            } else {
                println!("ok: {} is a valid document", inst.name);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Build { file, what, out } => {
            let inst = instance::load(file)?;
            let d = dump::build(&inst, *what)?;
            let text = if cli.json {
                serde_json::to_string_pretty(&d).expect("dumps always serialize")
            } else {
                dump::render_text(&d)
            };
            match out {
                Some(path) => {
                    let io_err = |e: std::io::Error| {
                        dybax_core::Error::Invalid(format!(
                            "cannot write {}: {e}",
                            path.display()
                        ))
                    };
                    std::fs::write(path, text + "\n").map_err(io_err)?;
                    // Read the file back and confirm it parses to the same
                    // dump, so a written table is always re-loadable.
                    let back = std::fs::read_to_string(path).map_err(io_err)?;
                    let reparsed = if cli.json {
                        serde_json::from_str(&back).map_err(|e| {
                            dybax_core::Error::Invalid(format!(
                                "written dump does not parse back: {e}"
                            ))
                        })?
                    } else {
                        dump::parse_text(&back)?
                    };
                    if reparsed != d {
                        return Err(dybax_core::Error::Invalid(
                            "written dump does not round-trip".into(),
                        ));
                    }
                }
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { file, check } => {
            let inst = instance::load(file)?;
            let reports = verify::run_checks(&inst, check)?;
            let passed = !reports.iter().any(|r| r.is_failure());
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "name": inst.name,
                        "passed": passed,
                        "checks": reports,
                    }))
                    .expect("reports always serialize")
                );
            } else {
                for r in &reports {
                    println!("{}", r.render());
                }
                let fails = reports.iter().filter(|r| r.is_failure()).count();
                let skips = reports.iter().filter(|r| r.skipped.is_some()).count();
                let notes = reports.iter().filter(|r| r.advisory).count();
                println!(
                    "{}: {} checks, {} failed, {} skipped, {} informational",
                    inst.name,
                    reports.len(),
                    fails,
                    skips,
                    notes
                );
            }
            Ok(exit_pass_fail(passed))
        }
        Cmd::Enumerate {
            file,
            families,
            limit,
        } => {
            if !*families {
                return Err(dybax_core::Error::Invalid(
                    "nothing to enumerate: pass --families".into(),
                ));
            }
            let inst = instance::load(file)?;
            let summary = sweep::families(&inst, *limit)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "name": inst.name,
                        "sweep": summary,
                    }))
                    .expect("summaries always serialize")
                );
            } else {
                println!(
                    "{}: checked {} of {} families (limit {})",
                    inst.name, summary.checked, summary.total, summary.limit
                );
                if summary.capped {
                    println!(
                        "cap exceeded: results cover the first {} families only",
                        summary.checked
                    );
                }
                println!(
                    "reflection equation: {} passed, {} failed",
                    summary.passed, summary.failed
                );
                println!(
                    "parameter-independent boundary maps: {}",
                    summary.lambda_constant
                );
                for f in &summary.failures {
                    println!(
                        "family {} fails: lambda={} inputs=[{}] lhs={} rhs={}",
                        f.index,
                        f.witness.lambda,
                        f.witness.inputs.join(", "),
                        f.witness.lhs,
                        f.witness.rhs
                    );
                }
            }
            Ok(exit_pass_fail(summary.failed == 0))
        }
        Cmd::Reproduce { name } => {
            let comparisons = reproduce::run(name)?;
            let passed = comparisons.iter().all(|c| c.ok);
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "name": name,
                        "passed": passed,
                        "comparisons": comparisons,
                    }))
                    .expect("comparisons always serialize")
                );
            } else {
                for c in &comparisons {
                    if c.ok {
                        println!("ok: {} = {}", c.what, c.got);
                    } else {
                        println!("mismatch: {} got {}, want {}", c.what, c.got, c.want);
                    }
                }
                println!(
                    "{}: {} of {} published values reproduced",
                    name,
                    comparisons.iter().filter(|c| c.ok).count(),
                    comparisons.len()
                );
            }
            Ok(exit_pass_fail(passed))
        }
    }
}

fn exit_pass_fail(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
