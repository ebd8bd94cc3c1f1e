//! Conditional reals, suprema, the ℓ² metric and ε-nets.

use condkit::boolalg::Algebra;
use condkit::condnum::{cond_sup, eps_net, metric_compare, CondBox, CondReal, CondRealVec};
use condkit::Rational;

fn main() -> condkit::Result<()> {
    let alg = Algebra::numbered(3)?;
    let x = CondReal::from_ints(&alg, &[3, 0, -2])?;
    let y = CondReal::from_ints(&alg, &[1, 0, 5])?;
    println!("x = {x}, y = {y}");
    println!("x + y = {}", x.add(&y)?);
    println!("x · y = {}", x.mul(&y)?);
    let t = x.compare(&y)?;
    println!(
        "x < y on {}, x > y on {}, x = y on {}",
        t.less, t.greater, t.equal
    );
    match x.inv() {
        Ok(r) => println!("1/x = {r}"),
        Err(e) => println!("1/x: {e}"),
    }
    println!("sup {{x, y}} = {}", cond_sup(&[x.clone(), y.clone()])?);
    println!(
        "archimedean bound of x: {:?}",
        x.archimedean_bound().values()
    );

    let p = CondRealVec::from_ints(&alg, &[&[0, 0], &[1, 1], &[3]])?;
    let q = CondRealVec::from_ints(&alg, &[&[3, 4], &[1, 1], &[-1]])?;
    println!("|p - q| = {:?}", p.distance_decimal(&q, 6)?.values());
    let r = CondReal::from_ints(&alg, &[5, 1, 4])?;
    let c = metric_compare(&p, &q, &r)?;
    println!("|p - q| < r on {}, = r on {}", c.less, c.equal);

    let one = Algebra::numbered(1)?;
    let q = |n: i64| Rational::from_integer(n.into());
    let bx = CondBox::new(&one, vec![(vec![q(0), q(0)], vec![q(2), q(1)])])?;
    let net = eps_net(&bx, &CondReal::from_ints(&one, &[1])?)?;
    println!(
        "1-net of [0,2]×[0,1]: {} centers",
        net.centers.values()[0].as_ref().map_or(0, |c| c.len())
    );
    Ok(())
}
