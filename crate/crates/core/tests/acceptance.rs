use std::process::Command;
use std::time::{Duration, Instant};

use condkit::boolalg::Algebra;
use condkit::cli::fuzz::run_fuzz;
use condkit::cli::suites::{run_suite, Config, Report};
use condkit::condmap::CondOrder;
use condkit::condnum::CondReal;
use condkit::condset::{CondSet, Value};
use condkit::condtop::{Compactness, NatDiscrete};
use condkit::{Error, Rational};

struct Outcome {
    pass: bool,
    detail: String,
}

fn suite(name: &str, min_cases: usize, limit_secs: u64) -> (Outcome, Report) {
    let start = Instant::now();
    let r = run_suite(name, &Config::default()).expect("known suite");
    let took = start.elapsed();
    let pass = r.passed() && r.cases >= min_cases && took < Duration::from_secs(limit_secs);
    let mut detail = format!(
        "{} cases, {} checks, {} failures, {:.1}s",
        r.cases,
        r.checks,
        r.failures.len(),
        took.as_secs_f64()
    );
    if let Some(f) = r.failures.first() {
        detail += &format!("; first: case {} {}: {}", f.case, f.property, f.detail);
    }
    (Outcome { pass, detail }, r)
}

fn negatives() -> Outcome {
    let mut notes = Vec::new();

    let two = Algebra::numbered(2).unwrap();
    let x = CondSet::generate(&[Value::Int(0), Value::Int(1)], &two).unwrap();
    let ord = CondOrder::natural(&x).unwrap();
    let pair = ord.primal_incomparable_pair();
    let order_ok = !ord.primal_is_total() && pair.is_some();
    notes.push(format!("primal order total: {}", ord.primal_is_total()));

    let nat = NatDiscrete::new(&two);
    let w = nat.find_finite_subcover(10);
    let nat_ok = [
        Compactness::Cover,
        Compactness::Fip,
        Compactness::Ultrafilter,
    ]
    .into_iter()
    .all(|c| !nat.is_compact(c))
        && w.uncovered > w.bound;
    notes.push(format!(
        "N: first {} singletons miss {}",
        w.bound, w.uncovered
    ));

    let three = Algebra::numbered(3).unwrap();
    let r = CondReal::new(
        &three,
        vec![
            Some(Rational::from_integer(2.into())),
            Some(Rational::from_integer(0.into())),
            Some(Rational::from_integer(0.into())),
        ],
    )
    .unwrap();
    let expected = three.condition([1, 2]);
    let inv_ok = match r.inv() {
        Err(Error::NotInvertible(c)) => {
            notes.push(format!("not invertible on {c}"));
            c == expected
        }
        other => {
            notes.push(format!("unexpected {other:?}"));
            false
        }
    };
    Outcome {
        pass: order_ok && nat_ok && inv_ok,
        detail: notes.join("; "),
    }
}

fn determinism(first: &[Report]) -> Outcome {
    let cfg = Config::default();
    let again: Vec<Report> = first
        .iter()
        .map(|r| run_suite(&r.suite, &cfg).unwrap())
        .collect();
    let suites_same = first
        .iter()
        .zip(&again)
        .all(|(a, b)| a.to_json() == b.to_json());
    let fuzz_same = run_fuzz(&cfg).to_json() == run_fuzz(&cfg).to_json();
    let bin = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_condkit"))
            .args(args)
            .output()
            .expect("binary runs")
            .stdout
    };
    let args = ["check", "powerset", "--json", "--seed", "7"];
    let bin_same = bin(&args) == bin(&args);
    let fuzz_args = ["fuzz", "--json", "--seed", "7"];
    let bin_fuzz_same = bin(&fuzz_args) == bin(&fuzz_args);
    Outcome {
        pass: suites_same && fuzz_same && bin_same && bin_fuzz_same,
        detail: format!("suites {suites_same}, fuzz {fuzz_same}, binary check {bin_same}, binary fuzz {bin_fuzz_same}"),
    }
}

fn main() {
    let plan = [
        ("powerset", 500, 30),
        ("functions", 500, 30),
        ("filters", 100, 60),
        ("topology", 100, 120),
        ("numbers", 1000, 60),
        ("linear", 1, 120),
    ];
    let mut outcomes = Vec::new();
    let mut reports = Vec::new();
    for (name, min, secs) in plan {
        let (o, r) = suite(name, min, secs);
        outcomes.push(o);
        reports.push(r);
    }
    outcomes.push(negatives());
    outcomes.push(determinism(&reports));

    for (i, o) in outcomes.iter().enumerate() {
        println!(
            "criterion {}: {} ({})",
            i + 1,
            if o.pass { "pass" } else { "fail" },
            o.detail
        );
    }
    let failed: Vec<usize> = (0..outcomes.len())
        .filter(|&i| !outcomes[i].pass)
        .map(|i| i + 1)
        .collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
