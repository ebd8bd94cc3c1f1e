//! Conditional functions, images, preimages and orders.

use condkit::boolalg::Algebra;
use condkit::condmap::{cond_card, CondFunction, CondOrder};
use condkit::condset::{CondElement, CondSet, CondSubset, Value};

fn main() -> condkit::Result<()> {
    let alg = Algebra::numbered(2)?;
    let x = CondSet::generate(&[0, 1, 2, 3].map(Value::Int), &alg)?;
    let y = CondSet::generate(&[0, 1].map(Value::Int), &alg)?;
    let parity = CondFunction::generated(&x, &y, |v| match v {
        Value::Int(n) => Value::Int(n % 2),
        other => other.clone(),
    })?;

    let u = CondSubset::from_values(
        &x,
        &[
            Some(vec![Value::Int(0), Value::Int(2)]),
            Some(vec![Value::Int(3)]),
        ],
    )?;
    println!("U = {u}");
    println!("f(U) = {}", parity.image(&u)?);
    println!("f⁻¹(f(U)) = {}", parity.preimage(&parity.image(&u)?)?);
    println!(
        "injective: {}, surjective: {}",
        parity.is_injective(),
        parity.is_surjective()
    );
    println!("|U| = {:?}", cond_card(&u)?.values());

    let ord = CondOrder::natural(&x)?;
    let a = CondElement::from_values(&x, &[Some(Value::Int(0)), Some(Value::Int(3))])?;
    let b = CondElement::from_values(&x, &[Some(Value::Int(2)), Some(Value::Int(1))])?;
    let t = ord.compare_total(&a, &b)?;
    println!(
        "{a} vs {b}: less on {}, greater on {}, equal on {}",
        t.less, t.greater, t.equal
    );
    println!("primal order total: {}", ord.primal_is_total());
    println!("sup U = {}", ord.cond_sup(&u)?);
    Ok(())
}
