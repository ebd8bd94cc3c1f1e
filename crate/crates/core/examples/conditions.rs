//! Conditions, conditional subsets and their Boolean algebra.

use condkit::boolalg::{Algebra, Partition};
use condkit::condset::{
    amalgamate, cond_complement, cond_intersection, cond_union, subset_leq, AmalgamationExpr,
    CondSet, CondSubset, Value,
};

fn main() -> condkit::Result<()> {
    let alg = Algebra::new(["rain", "sun"])?;
    let rain = alg.condition_named(&["rain"])?;
    println!(
        "conditions: {:?}",
        alg.conditions().map(|c| c.to_string()).collect::<Vec<_>>()
    );
    println!("complement of {rain} is {}", rain.complement());

    let x = CondSet::generate(&[1, 2, 3].map(Value::Int), &alg)?;
    let y = CondSubset::from_values(
        &x,
        &[
            Some(vec![Value::Int(1)]),
            Some(vec![Value::Int(2), Value::Int(3)]),
        ],
    )?;
    let z = CondSubset::from_values(&x, &[Some(vec![Value::Int(1), Value::Int(2)]), None])?;

    println!("Y = {y}");
    println!("Z = {z} lives on {}", z.support());
    println!("Y ⊔ Z = {}", cond_union(&x, &[y.clone(), z.clone()])?);
    println!(
        "Y ⊓ Z = {}",
        cond_intersection(&x, &[y.clone(), z.clone()])?
    );
    println!("Y^c = {}", cond_complement(&y));
    println!("Z^c = {}", cond_complement(&z));
    println!(
        "Y ⊓ Z ⊑ Y: {}",
        subset_leq(&cond_intersection(&x, &[y.clone(), z.clone()])?, &y)?
    );

    // Glue Y on rain with Z^c on sun.
    let p = Partition::new(alg.one(), vec![rain.clone(), rain.complement()])?;
    let glued = amalgamate(&AmalgamationExpr::flat(
        p,
        vec![
            y.restrict(&rain),
            cond_complement(&z).restrict(&rain.complement()),
        ],
    ))?;
    println!("rain·Y + sun·Z^c = {glued}");
    Ok(())
}
