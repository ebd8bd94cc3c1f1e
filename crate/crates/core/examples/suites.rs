//! Running the randomized law suites and the expression fuzzer.

use condkit::cli::fuzz::run_fuzz;
use condkit::cli::suites::{run_suite, Config, Mutant};

fn main() -> condkit::Result<()> {
    let cfg = Config {
        seed: 42,
        cases: Some(50),
        ..Config::default()
    };
    for name in [
        "powerset",
        "functions",
        "filters",
        "topology",
        "numbers",
        "linear",
    ] {
        let r = run_suite(name, &cfg)?;
        println!(
            "{name:<10} passed={} cases={} checks={}",
            r.passed(),
            r.cases,
            r.checks
        );
    }

    let broken = Config {
        mutant: Some(Mutant::parse("complement-no-support-fix")?),
        ..cfg
    };
    let r = run_suite("powerset", &broken)?;
    if let Some(f) = r.failures.first() {
        println!(
            "mutant caught at case {}: {} ({})",
            f.case, f.property, f.detail
        );
    }
    let fz = run_fuzz(&broken);
    if let Some(f) = fz.failures.first() {
        println!("fuzzer shrank a failure to {}", f.expr);
    }
    Ok(())
}
