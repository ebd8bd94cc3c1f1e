//! Exact linear programming with checkable certificates.

use condkit::condlin::{lp_solve, verify_certificate, LpOutcome, LpProblem, Sense};
use condkit::Rational;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn show(name: &str, p: &LpProblem) -> condkit::Result<()> {
    let out = lp_solve(p)?;
    match &out {
        LpOutcome::Optimal {
            x, value, duals, ..
        } => {
            let x: Vec<String> = x.iter().map(|v| v.to_string()).collect();
            let d: Vec<String> = duals.iter().map(|v| v.to_string()).collect();
            println!("{name}: optimum {value} at {x:?}, duals {d:?}");
        }
        LpOutcome::Infeasible { farkas } => {
            println!(
                "{name}: infeasible, Farkas multipliers {:?}",
                farkas.iter().map(|v| v.to_string()).collect::<Vec<_>>()
            );
        }
        LpOutcome::Unbounded { ray, .. } => {
            println!(
                "{name}: unbounded along {:?}",
                ray.iter().map(|v| v.to_string()).collect::<Vec<_>>()
            );
        }
    }
    println!("  certificate valid: {}", verify_certificate(p, &out));
    Ok(())
}

fn main() -> condkit::Result<()> {
    let mut p = LpProblem::new(true, vec![q(3), q(2)]);
    p.push(vec![q(1), q(1)], Sense::Le, q(4));
    p.push(vec![q(1), q(3)], Sense::Le, q(6));
    p.push(
        vec![q(2), q(-1)],
        Sense::Le,
        Rational::new(7.into(), 2.into()),
    );
    show("bounded", &p)?;

    let mut p = LpProblem::new(true, vec![q(1), q(0)]);
    p.push(vec![q(1), q(1)], Sense::Ge, q(3));
    p.push(vec![q(1), q(1)], Sense::Le, q(2));
    show("infeasible", &p)?;

    let mut p = LpProblem::new(true, vec![q(1), q(1)]);
    p.push(vec![q(1), q(-1)], Sense::Le, q(1));
    show("unbounded", &p)?;
    Ok(())
}
