//! Conditional topologies, convergence and compactness.

use condkit::boolalg::Algebra;
use condkit::condfilter::CondFilter;
use condkit::condset::{CondElement, CondSet, CondSubset, PointSet, Value};
use condkit::condtop::{find_finite_subcover, is_compact, Compactness, CondTopology, NatDiscrete};

fn main() -> condkit::Result<()> {
    let alg = Algebra::numbered(2)?;
    let x = CondSet::generate(&[1, 2, 3].map(Value::Int), &alg)?;
    // Sierpinski-like chain on the first atom, discrete on the second.
    let t = CondTopology::generated(
        &x,
        &[
            vec![PointSet::from_indices([0]), PointSet::from_indices([0, 1])],
            (0..3).map(PointSet::singleton).collect(),
        ],
    )?;
    let y = CondSubset::from_values(&x, &[Some(vec![Value::Int(2)]), Some(vec![Value::Int(2)])])?;
    println!("Y = {y}");
    println!("int Y = {}", t.interior(&y)?);
    println!("cl Y = {}", t.closure(&y)?);
    println!("Hausdorff: {}", t.is_hausdorff());

    let p = CondElement::from_values(&x, &[Some(Value::Int(3)), Some(Value::Int(1))])?;
    let f = CondFilter::principal_at(&p)?;
    println!("limits of the filter at {p}: {}", t.limit_set(&f)?);

    for c in [
        Compactness::Cover,
        Compactness::Fip,
        Compactness::Ultrafilter,
    ] {
        println!("compact by {c:?}: {}", is_compact(&t, c)?);
    }
    let cover = t.atomwise_opens();
    let sub = find_finite_subcover(&t, &cover)?;
    println!(
        "subcover of {} opens: sizes {:?} on parts {:?}",
        cover.len(),
        sub.count.values(),
        sub.partition
            .parts()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
    );

    let n = NatDiscrete::new(&alg);
    let w = n.find_finite_subcover(5);
    println!(
        "discrete N: compact {}, the first {} singletons miss {} at {}",
        n.is_compact(Compactness::Cover),
        w.bound,
        w.uncovered,
        w.atom
    );
    Ok(())
}
