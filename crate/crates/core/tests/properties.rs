use proptest::prelude::*;

use condkit::boolalg::Algebra;
use condkit::condlin::{lp_solve, verify_certificate, Constraint, LpOutcome, LpProblem, Sense};
use condkit::condnum::CondReal;
use condkit::condset::{
    cond_complement, cond_intersection, cond_union, subset_leq, CondSet, CondSubset, PointSet,
    Value,
};
use condkit::Rational;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Carrier sizes per atom plus three subsets given as optional slice masks.
fn space() -> impl Strategy<Value = (Vec<usize>, Vec<Vec<Option<u8>>>)> {
    prop::collection::vec(1usize..=4, 1..=3).prop_flat_map(|sizes| {
        let n = sizes.len();
        let one = prop::collection::vec(prop::option::of(any::<u8>()), n);
        (Just(sizes), prop::collection::vec(one, 3))
    })
}

fn build(sizes: &[usize], masks: &[Vec<Option<u8>>]) -> (CondSet, Vec<CondSubset>) {
    let alg = Algebra::numbered(sizes.len()).unwrap();
    let carriers = sizes
        .iter()
        .map(|&k| (0..k as i64).map(Value::Int).collect())
        .collect();
    let x = CondSet::from_carriers(&alg, carriers).unwrap();
    let ys = masks
        .iter()
        .map(|m| {
            let slices = m
                .iter()
                .zip(sizes)
                .map(|(b, &k)| {
                    b.map(|b| PointSet::from_bits(b as u128 & ((1 << k) - 1)))
                        .filter(|s| !s.is_empty())
                })
                .collect();
            CondSubset::new(&x, slices).unwrap()
        })
        .collect();
    (x, ys)
}

proptest! {
    #[test]
    fn complement_laws((sizes, masks) in space()) {
        let (x, ys) = build(&sizes, &masks);
        let y = &ys[0];
        let c = cond_complement(y);
        prop_assert!(cond_intersection(&x, &[y.clone(), c.clone()]).unwrap().is_empty());
        prop_assert!(cond_union(&x, &[y.clone(), c.clone()]).unwrap() == x.whole());
        prop_assert!(cond_complement(&c) == *y);
    }

    #[test]
    fn lattice_laws((sizes, masks) in space()) {
        let (x, ys) = build(&sizes, &masks);
        let (a, b, c) = (&ys[0], &ys[1], &ys[2]);
        let u = |p: &CondSubset, q: &CondSubset| cond_union(&x, &[p.clone(), q.clone()]).unwrap();
        let i = |p: &CondSubset, q: &CondSubset| cond_intersection(&x, &[p.clone(), q.clone()]).unwrap();
        prop_assert!(cond_complement(&u(a, b)) == i(&cond_complement(a), &cond_complement(b)));
        prop_assert!(cond_complement(&i(a, b)) == u(&cond_complement(a), &cond_complement(b)));
        prop_assert!(i(a, &u(b, c)) == u(&i(a, b), &i(a, c)));
        prop_assert!(u(a, &i(b, c)) == i(&u(a, b), &u(a, c)));
        prop_assert!(u(&u(a, b), c) == u(a, &u(b, c)));
        prop_assert!(subset_leq(&i(a, b), a).unwrap());
        prop_assert!(subset_leq(a, &u(a, b)).unwrap());
    }

    #[test]
    fn restriction_is_consistent((sizes, masks) in space(), p in any::<u64>(), q in any::<u64>()) {
        let (x, ys) = build(&sizes, &masks);
        let alg = x.algebra();
        let (p, q) = (alg.from_bits(p), alg.from_bits(q));
        let pq = p.meet(&q).unwrap();
        prop_assert!(ys[0].restrict(&p).restrict(&q) == ys[0].restrict(&pq));
        prop_assert!(ys[0].restrict(&p).support().le(&p));
    }

    #[test]
    fn real_field_and_trichotomy(v in prop::collection::vec((-20i64..=20, 1i64..=5, -20i64..=20, 1i64..=5), 1..=4)) {
        let alg = Algebra::numbered(v.len()).unwrap();
        let x = CondReal::total(&alg, v.iter().map(|t| rat(t.0, t.1)).collect()).unwrap();
        let y = CondReal::total(&alg, v.iter().map(|t| rat(t.2, t.3)).collect()).unwrap();
        prop_assert_eq!(x.add(&y).unwrap().sub(&y).unwrap(), x.clone());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        let t = x.compare(&y).unwrap();
        let zero_atoms: Vec<usize> = v.iter().enumerate().filter(|(_, t)| t.0 == 0).map(|(i, _)| i).collect();
        match x.inv() {
            Ok(r) => {
                prop_assert!(zero_atoms.is_empty());
                prop_assert_eq!(x.mul(&r).unwrap(), CondReal::one(&alg));
            }
            Err(condkit::Error::NotInvertible(c)) => prop_assert_eq!(c, alg.condition(zero_atoms)),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
        for (i, t4) in v.iter().enumerate() {
            let (a, b) = (rat(t4.0, t4.1), rat(t4.2, t4.3));
            prop_assert_eq!(t.less.contains_atom(i), a < b);
            prop_assert_eq!(t.greater.contains_atom(i), a > b);
            prop_assert_eq!(t.equal.contains_atom(i), a == b);
        }
    }

    #[test]
    fn lp_matches_vertex_enumeration(
        c in (-4i64..=4, -4i64..=4),
        rows in prop::collection::vec((-3i64..=3, -3i64..=3, 0i64..=8), 0..=3),
    ) {
        // max c·x over x ≥ 0, rows, and the box x ≤ 5; the origin is feasible.
        let mut lines: Vec<(i64, i64, i64)> = rows.clone();
        lines.extend([(1, 0, 5), (0, 1, 5)]);
        let mut p = LpProblem::new(true, vec![rat(c.0, 1), rat(c.1, 1)]);
        for &(a, b, r) in &lines {
            p.constraints.push(Constraint::new(vec![rat(a, 1), rat(b, 1)], Sense::Le, rat(r, 1)));
        }
        let out = lp_solve(&p).unwrap();
        prop_assert!(verify_certificate(&p, &out));

        let mut all = lines.clone();
        all.extend([(-1, 0, 0), (0, -1, 0)]);
        let feasible = |x: &Rational, y: &Rational| all.iter().all(|&(a, b, r)| rat(a, 1) * x + rat(b, 1) * y <= rat(r, 1));
        let mut best: Option<Rational> = None;
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let (a1, b1, r1) = all[i];
                let (a2, b2, r2) = all[j];
                let det = a1 * b2 - a2 * b1;
                if det == 0 {
                    continue;
                }
                let x = rat(r1 * b2 - r2 * b1, det);
                let y = rat(a1 * r2 - a2 * r1, det);
                if feasible(&x, &y) {
                    let v = rat(c.0, 1) * &x + rat(c.1, 1) * &y;
                    if best.as_ref().is_none_or(|b| v > *b) {
                        best = Some(v);
                    }
                }
            }
        }
        match out {
            LpOutcome::Optimal { value, .. } => prop_assert_eq!(Some(value), best),
            other => prop_assert!(false, "bounded feasible problem gave {other:?}"),
        }
    }
}
