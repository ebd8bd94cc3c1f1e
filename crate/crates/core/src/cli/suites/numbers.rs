//! Ordered-field laws of conditional reals, Dedekind and Archimedean
//! properties, the ℓ² metric, ε-nets and finite metric compactness.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{atoms, derived_rng, rats, Ck, Config};
use crate::boolalg::is_partition;
use crate::cli::sample::{random_point, Sample};
use crate::condnum::metric::{heine_borel_finite, FiniteMetricSpace};
use crate::condnum::vector::{eps_net, metric_compare, triangle_holds, CondBox, CondRealVec};
use crate::condnum::{cond_inf, cond_sup, CondReal};
use crate::condset::{CondSet, Value};
use crate::error::{Error, Result};
use crate::Rational;

pub fn generate(rng: &mut ChaCha8Rng, cfg: &Config, case: usize) -> Sample {
    let n = atoms(rng, cfg);
    let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let mut points: Vec<Vec<Vec<Vec<i64>>>> = (0..3)
        .map(|_| {
            dims.iter()
                .map(|&d| vec![random_point(rng, d, 3)])
                .collect()
        })
        .collect();
    if case.is_multiple_of(10) {
        points.push(
            (0..n)
                .map(|_| {
                    let d = rng.gen_range(1..=2);
                    (0..rng.gen_range(1..=cfg.carrier_max.max(1)))
                        .map(|_| random_point(rng, d, 4))
                        .collect()
                })
                .collect(),
        );
    }
    Sample {
        atoms: n,
        rats: (0..5).map(|_| rats(rng, n)).collect(),
        points,
        cond: rng.gen(),
        ..Sample::default()
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn vector(s: &Sample, k: usize) -> Result<CondRealVec> {
    let alg = s.algebra();
    CondRealVec::total(
        &alg,
        s.points[k]
            .iter()
            .map(|pts| pts[0].iter().map(|&v| q(v)).collect())
            .collect(),
    )
}

pub fn check(s: &Sample, _cfg: &Config, ck: &mut Ck) -> Result<()> {
    let alg = s.algebra();
    let real = |k: usize| CondReal::total(&alg, (0..alg.len()).map(|i| s.rat(k, i)).collect());
    let (x, y, z, w) = (real(0)?, real(1)?, real(2)?, real(3)?);
    let (zero, one) = (CondReal::zero(&alg), CondReal::one(&alg));

    ck.eq(
        "add_associative",
        &x.add(&y)?.add(&z)?,
        &x.add(&y.add(&z)?)?,
    );
    ck.eq("add_commutative", &x.add(&y)?, &y.add(&x)?);
    ck.eq(
        "mul_associative",
        &x.mul(&y)?.mul(&z)?,
        &x.mul(&y.mul(&z)?)?,
    );
    ck.eq("mul_commutative", &x.mul(&y)?, &y.mul(&x)?);
    ck.eq(
        "distributive",
        &x.mul(&y.add(&z)?)?,
        &x.mul(&y)?.add(&x.mul(&z)?)?,
    );
    ck.eq("additive_identity", &x.add(&zero)?, &x);
    ck.eq("multiplicative_identity", &x.mul(&one)?, &x);
    ck.eq("additive_inverse", &x.add(&x.neg())?, &zero);
    let zeros = x.condition_where(|_, v| v.is_zero());
    match x.inv() {
        Ok(inv) => {
            ck.holds("inverse_exists_iff_nonzero", zeros.is_zero());
            ck.eq("multiplicative_inverse", &x.mul(&inv)?, &one);
        }
        Err(Error::NotInvertible(c)) => ck.eq("not_invertible_on_zero_condition", &c, &zeros),
        Err(e) => return Err(e),
    }

    let t = x.compare(&y)?;
    ck.holds("trichotomy_is_partition", is_partition(&t.partition()));
    for i in 0..alg.len() {
        let (a, b) = (x.at(i), y.at(i));
        let want = (a < b, a > b, a == b);
        ck.eq(
            "trichotomy_per_atom",
            &(
                t.less.contains_atom(i),
                t.greater.contains_atom(i),
                t.equal.contains_atom(i),
            ),
            &want,
        );
    }
    ck.eq(
        "order_translation_invariant",
        &x.add(&z)?.compare(&y.add(&z)?)?,
        &t,
    );
    let pos = |v: &CondReal| v.condition_where(|_, r| r.is_positive());
    let both = &pos(&x) & &pos(&y);
    ck.holds("positive_times_positive", both.le(&pos(&x.mul(&y)?)));
    // z > 0 and x < y give xz < yz.
    let scaled = x.mul(&z)?.compare(&y.mul(&z)?)?;
    ck.holds(
        "order_scaled_by_positive",
        (&t.less & &pos(&z)).le(&scaled.less),
    );

    let abs = |v: &CondReal| v.abs();
    ck.holds("abs_nonnegative", abs(&x).is_nonnegative());
    ck.eq(
        "abs_multiplicative",
        &abs(&x.mul(&y)?),
        &abs(&x).mul(&abs(&y))?,
    );
    ck.holds(
        "abs_triangle",
        abs(&x.add(&y)?).le(&abs(&x).add(&abs(&y))?)?,
    );

    // Dedekind: the sup bounds the generators and lies below an upper bound.
    let gens = [x.clone(), y.clone(), z.clone()];
    let sup = cond_sup(&gens)?;
    let inf = cond_inf(&gens)?;
    ck.holds(
        "sup_is_upper_bound",
        gens.iter().all(|g| g.le(&sup).unwrap_or(false)),
    );
    ck.holds(
        "inf_is_lower_bound",
        gens.iter().all(|g| inf.le(g).unwrap_or(false)),
    );
    let upper = x.abs().add(&y.abs())?.add(&z.abs())?.add(&w.abs())?;
    ck.holds("sup_below_upper_bounds", sup.le(&upper)?);
    ck.holds("inf_above_lower_bounds", upper.neg().le(&inf)?);
    let attained = (0..alg.len()).all(|i| gens.iter().any(|g| g.at(i) == sup.at(i)));
    ck.holds("sup_attained_atomwise", attained);

    let n = x.archimedean_bound();
    let nr = CondReal::from_nat(&n);
    ck.holds("archimedean_bound_exceeds", x.lt(&nr)?);
    ck.holds(
        "archimedean_bound_least",
        (0..alg.len()).all(|i| *n.at(i) == 1 || &q(*n.at(i) as i64 - 1) <= x.at(i)),
    );

    let (a, b, c) = (vector(s, 0)?, vector(s, 1)?, vector(s, 2)?);
    ck.holds("l2_triangle", triangle_holds(&a, &b, &c)?);
    ck.eq("l2_symmetric", &a.sq_distance(&b)?, &b.sq_distance(&a)?);
    ck.eq("l2_zero_on_diagonal", &a.sq_distance(&a)?, &zero);
    let d = a.sq_distance(&b)?;
    ck.holds(
        "l2_identity_of_indiscernibles",
        (0..alg.len()).all(|i| d.at(i).is_zero() == (a.0.at(i) == b.0.at(i))),
    );
    let r = w.abs();
    let mc = metric_compare(&a, &b, &r)?;
    ck.holds("metric_compare_is_partition", is_partition(&mc.partition()));
    ck.holds(
        "metric_compare_per_atom",
        (0..alg.len()).all(|i| mc.less.contains_atom(i) == (d.at(i) < &(r.at(i) * r.at(i)))),
    );

    check_net(s, &a, &b, ck)?;
    if s.points.len() > 3 {
        check_metric_space(s, ck)?;
    }
    Ok(())
}

/// An ε-net of the bounding box of two points, checked on a grid and on
/// random rational points of the box.
fn check_net(s: &Sample, a: &CondRealVec, b: &CondRealVec, ck: &mut Ck) -> Result<()> {
    let alg = s.algebra();
    let bounds: Vec<(Vec<Rational>, Vec<Rational>)> = (0..alg.len())
        .map(|i| {
            let (p, r) = (a.0.at(i), b.0.at(i));
            let lo = p.iter().zip(r).map(|(u, v)| u.min(v).clone()).collect();
            let hi = p.iter().zip(r).map(|(u, v)| u.max(v).clone()).collect();
            (lo, hi)
        })
        .collect();
    let bx = CondBox::new(&alg, bounds.clone())?;
    let eps = CondReal::total(
        &alg,
        (0..alg.len()).map(|i| s.rat(4, i).abs() + q(1)).collect(),
    )?;
    let net = eps_net(&bx, &eps)?;
    let mut rng = derived_rng(s);
    for (i, (lo, hi)) in bounds.iter().enumerate() {
        let e2 = eps.at(i) * eps.at(i);
        let mut samples: Vec<Vec<Rational>> = vec![lo.clone(), hi.clone()];
        for _ in 0..8 {
            samples.push(
                lo.iter()
                    .zip(hi)
                    .map(|(l, h)| {
                        let t = Rational::new(rng.gen_range(0..=12).into(), 12.into());
                        l + t * (h - l)
                    })
                    .collect(),
            );
        }
        for p in &samples {
            let near = net.centers.at(i).iter().any(|c| {
                let d2: Rational = c.iter().zip(p).map(|(u, v)| (u - v) * (u - v)).sum();
                d2 < e2
            });
            ck.that("eps_net_covers", near && net.covers(i, p), || {
                format!("{p:?} at atom {i}")
            });
        }
        ck.holds(
            "eps_net_centers_in_box",
            net.centers.at(i).iter().all(|c| bx.contains(i, c)),
        );
    }
    Ok(())
}

/// The ℓ¹ metric on distinct integer points, one point list per atom.
fn check_metric_space(s: &Sample, ck: &mut Ck) -> Result<()> {
    let alg = s.algebra();
    let pts: Vec<Vec<Vec<i64>>> = s.points[3]
        .iter()
        .map(|p| {
            p.iter()
                .cloned()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        })
        .collect();
    let carriers = pts
        .iter()
        .map(|p| (1..=p.len() as i64).map(Value::Int).collect())
        .collect();
    let space = CondSet::from_carriers(&alg, carriers)?;
    let dist = pts
        .iter()
        .map(|p| {
            p.iter()
                .map(|u| {
                    p.iter()
                        .map(|v| q(u.iter().zip(v).map(|(a, b)| (a - b).abs()).sum()))
                        .collect()
                })
                .collect()
        })
        .collect();
    let m = FiniteMetricSpace::new(&space, dist)?;
    let r = heine_borel_finite(&m)?;
    ck.that(
        "heine_borel_clauses_agree",
        r.agree && r.cover_compact && r.complete && r.totally_bounded && r.sequentially_compact,
        || format!("{r:?}"),
    );
    ck.holds(
        "net_sizes_within_carrier",
        r.nets
            .iter()
            .all(|(_, _, n)| (0..alg.len()).all(|i| *n.at(i) as usize <= space.carrier_len(i))),
    );
    Ok(())
}
