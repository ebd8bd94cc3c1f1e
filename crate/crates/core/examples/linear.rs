//! Functional duality, Hahn-Banach extension, separation and polars.

use condkit::boolalg::Algebra;
use condkit::condlin::{
    bipolar_check, duality_coeffs, hb_extend, polar, separate, separation_holds, CondLinFunctional,
    PolyhedralSublinear, VPolytope,
};
use condkit::condnum::{Cond, CondReal, CondRealVec};

fn show(c: &Cond<Vec<condkit::Rational>>) -> Vec<Vec<String>> {
    c.values()
        .iter()
        .map(|v| v.iter().flatten().map(|q| q.to_string()).collect())
        .collect()
}

fn main() -> condkit::Result<()> {
    let alg = Algebra::numbered(2)?;

    let f1 = CondLinFunctional::from_ints(&alg, &[&[1, 0, 0], &[1, 1]])?;
    let f2 = CondLinFunctional::from_ints(&alg, &[&[0, 1, 0], &[2, 2]])?;
    let f = CondLinFunctional::from_ints(&alg, &[&[2, -3, 0], &[3, 3]])?;
    let d = duality_coeffs(&f, &[f1.clone(), f2.clone()])?;
    println!(
        "kernels nested: {}, coefficients {:?}",
        d.kernel_inclusion,
        d.coeffs.as_ref().map(show)
    );
    let g = CondLinFunctional::from_ints(&alg, &[&[0, 0, 1], &[1, 0]])?;
    let d = duality_coeffs(&g, &[f1, f2])?;
    let w = d
        .kernel_witness
        .map(|(i, v)| (i, v.iter().map(|q| q.to_string()).collect::<Vec<_>>()));
    println!(
        "kernels nested: {}, witness at atom {:?}",
        d.kernel_inclusion, w
    );

    // Extend x₁ ↦ 1/2 from span{e₁} under the ℓ∞ norm.
    let e1 = CondRealVec::from_ints(&alg, &[&[1, 0], &[1, 0]])?;
    let k = PolyhedralSublinear::linf(&e1.dims())?;
    let half = CondReal::from_rat(&condkit::condnum::CondRat::constant(
        &alg,
        condkit::Rational::new(1.into(), 2.into()),
    ));
    let ext = hb_extend(&[e1], &[half], &k)?;
    println!("extension: {:?}", show(&ext.0));

    let c1 = VPolytope::from_ints(&alg, &[&[&[0, 0], &[1, 0], &[0, 1]], &[&[0], &[1]]])?;
    let c2 = VPolytope::from_ints(&alg, &[&[&[2, 2], &[3, 2]], &[&[3], &[4]]])?;
    let s = separate(&c1, &c2, true)?;
    println!(
        "separator gap {}, verified {}",
        s.eps,
        separation_holds(&c1, &c2, &s)
    );
    let touching = VPolytope::from_ints(&alg, &[&[&[1, 0], &[2, 0]], &[&[5]]])?;
    println!(
        "touching hulls: {}",
        separate(&c1, &touching, true).unwrap_err()
    );

    let sq = c1.circled_hull();
    let p = polar(&sq, false);
    println!(
        "polar of the circled triangle at atom 0: {} half-spaces",
        p.h_description(0).len()
    );
    let samples: Vec<CondRealVec> = (-2..=2)
        .flat_map(|a| (-2..=2).map(move |b| (a, b)))
        .map(|(a, b)| CondRealVec::from_ints(&alg, &[&[a, b], &[a]]))
        .collect::<condkit::Result<_>>()?;
    println!(
        "bipolar equals closed circled hull on {} samples: {}",
        samples.len(),
        bipolar_check(&sq, &samples, false)?
    );
    Ok(())
}
