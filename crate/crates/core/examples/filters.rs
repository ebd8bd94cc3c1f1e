//! Conditional filters and the ultrafilter extension.

use condkit::boolalg::Algebra;
use condkit::condfilter::{is_ultrafilter, ultrafilter_extend, CondFilter, ULTRA_CLAUSES};
use condkit::condset::{CondSet, CondSubset, Value};

fn main() -> condkit::Result<()> {
    let alg = Algebra::numbered(2)?;
    let x = CondSet::generate(&[1, 2, 3].map(Value::Int), &alg)?;
    let y = CondSubset::from_values(
        &x,
        &[
            Some(vec![Value::Int(1), Value::Int(2)]),
            Some(vec![Value::Int(2), Value::Int(3)]),
        ],
    )?;

    let f = CondFilter::principal(&y)?;
    println!("principal filter at {y}: {} members", f.members()?.len());
    for c in ULTRA_CLAUSES {
        println!("  {c:?}: {}", is_ultrafilter(&f, c)?);
    }

    let u = ultrafilter_extend(&f);
    println!("extension has kernel {}", u.kernel());
    println!("extension is finer: {}", f.is_coarser(&u));
    for c in ULTRA_CLAUSES {
        println!("  {c:?}: {}", is_ultrafilter(&u, c)?);
    }
    println!(
        "ultrafilters on X: {}",
        CondFilter::all_ultrafilters(&x).len()
    );
    Ok(())
}
