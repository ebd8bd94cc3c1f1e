use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use condkit::cli::dsl::eval_source;
use condkit::cli::fuzz::run_fuzz;
use condkit::cli::json::{lp_report, Instance, InstanceJson, LpJson};
use condkit::cli::suites::{run_suite, Config, Mutant, Report};
use condkit::condlin::lp_solve;
use condkit::{Error, Result};

#[derive(Parser)]
#[command(
    name = "condkit",
    version,
    about = "Exact conditional set theory on finite atomic Boolean algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cases per suite; each suite has its own default.
    #[arg(long, global = true)]
    cases: Option<usize>,
    #[arg(long, global = true, default_value_t = 3)]
    atoms_max: usize,
    #[arg(long, global = true, default_value_t = 4)]
    carrier_max: usize,
    /// Decimal digits for irrational outputs.
    #[arg(long, global = true, default_value_t = 12)]
    digits: u32,
    /// Print machine-readable JSON only.
    #[arg(long, global = true)]
    json: bool,
    /// Inject a known defect, e.g. `complement-no-support-fix`.
    #[arg(long, global = true)]
    mutant: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a law suite: powerset, functions, filters, topology, numbers, linear or all.
    Check { suite: String },
    /// Evaluate the expressions in a file against an instance.
    Eval {
        file: PathBuf,
        /// Instance JSON; defaults to the expression file with a `.json` extension.
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// Solve a linear program given as JSON and check its certificate.
    Lp { file: PathBuf },
    /// Compare the per-atom, formula and expression routes on random expressions.
    Fuzz,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn summary(r: &Report) {
    if r.suites.is_empty() {
        let status = if r.passed() { "ok" } else { "FAILED" };
        println!(
            "{:<10} {status:<6} cases={} checks={} failures={}",
            r.suite,
            r.cases,
            r.checks,
            r.failures.len()
        );
        for f in &r.failures {
            println!("  case {}: {}: {}", f.case, f.property, f.detail);
            println!(
                "    instance: {}",
                serde_json::to_string(&f.instance).expect("samples serialize")
            );
        }
    } else {
        r.suites.iter().for_each(summary);
    }
}

/// `Ok(true)` when everything passed.
fn run(cli: &Cli) -> Result<bool> {
    let cfg = Config {
        seed: cli.seed,
        cases: cli.cases,
        atoms_max: cli.atoms_max,
        carrier_max: cli.carrier_max,
        digits: cli.digits,
        mutant: cli.mutant.as_deref().map(Mutant::parse).transpose()?,
        ..Config::default()
    };
    match &cli.cmd {
        Cmd::Check { suite } => {
            let r = run_suite(suite, &cfg)?;
            if cli.json {
                println!("{}", r.to_json());
            } else {
                summary(&r);
            }
            Ok(r.passed())
        }
        Cmd::Eval { file, instance } => {
            let inst_path = instance
                .clone()
                .unwrap_or_else(|| file.with_extension("json"));
            let inst: InstanceJson = serde_json::from_str(&read(&inst_path)?)?;
            let inst = Instance::load(&inst)?;
            for v in eval_source(&inst, &read(file)?, cli.digits)? {
                let text = if cli.json {
                    serde_json::to_string(&v)
                } else {
                    serde_json::to_string_pretty(&v)
                };
                println!("{}", text.expect("values serialize"));
            }
            Ok(true)
        }
        Cmd::Lp { file } => {
            let lp: LpJson = serde_json::from_str(&read(file)?)?;
            let p = lp.problem()?;
            let out = lp_solve(&p)?;
            let j = lp_report(&p, &out);
            println!(
                "{}",
                serde_json::to_string_pretty(&j).expect("values serialize")
            );
            Ok(j["certificate_valid"] == true)
        }
        Cmd::Fuzz => {
            let r = run_fuzz(&cfg);
            if cli.json {
                println!("{}", r.to_json());
            } else {
                println!(
                    "fuzz {} cases={} failures={}",
                    if r.passed() { "ok" } else { "FAILED" },
                    r.cases,
                    r.failures.len()
                );
                for f in &r.failures {
                    println!("  case {}: {}\n    expr: {}", f.case, f.detail, f.expr);
                    println!(
                        "    instance: {}",
                        serde_json::to_string(&f.instance).expect("instances serialize")
                    );
                }
            }
            Ok(r.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    eprintln!("wall time: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
