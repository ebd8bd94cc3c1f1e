//! Boolean-algebra laws of the conditional power set, with the primal-set
//! formulas as an independent oracle.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{atoms, atoms_below, on_one, subset, Ck, Config, Mutant};
use crate::cli::sample::{random_carriers, random_slices, Sample};
use crate::condfilter::stable_family_hull;
use crate::condset::formula::{self, PrimalSet};
use crate::condset::{
    cond_complement, cond_intersection, cond_union, from_atoms, stable_hull, subset_leq, to_atoms,
    CondElement, CondSet, CondSubset,
};
use crate::error::Result;

pub fn generate(rng: &mut ChaCha8Rng, cfg: &Config, _case: usize) -> Sample {
    let n = atoms(rng, cfg);
    let carriers = random_carriers(rng, n, cfg.carrier_max);
    Sample {
        atoms: n,
        subsets: (0..4)
            .map(|_| random_slices(rng, &carriers, 0.25))
            .collect(),
        carriers,
        cond: rng.gen(),
        ..Sample::default()
    }
}

fn complement(y: &CondSubset, mutant: Option<Mutant>) -> CondSubset {
    match mutant {
        Some(Mutant::ComplementNoSupportFix) => {
            let x = y.set();
            CondSubset::from_fn(x, |i| {
                y.slice(i)
                    .map(|s| x.full(i).difference(s))
                    .filter(|d| !d.is_empty())
            })
        }
        None => cond_complement(y),
    }
}

fn primal_set(y: &CondSubset) -> BTreeSet<CondElement> {
    y.primal().into_iter().collect()
}

pub fn check(s: &Sample, cfg: &Config, ck: &mut Ck) -> Result<()> {
    let x = s.space()?;
    let alg = x.algebra().clone();
    let ys: Vec<CondSubset> = s.subsets.iter().map(|sl| subset(&x, sl)).collect();
    let compl = |y: &CondSubset| complement(y, cfg.mutant);
    let un = |a: &CondSubset, b: &CondSubset| cond_union(&x, &[a.clone(), b.clone()]);
    let int = |a: &CondSubset, b: &CondSubset| cond_intersection(&x, &[a.clone(), b.clone()]);
    let (zero, whole) = (x.empty(), x.whole());

    for y in &ys {
        ck.eq("complement_meet_is_zero", &int(y, &compl(y))?, &zero);
        ck.eq("complement_join_is_one", &un(y, &compl(y))?, &whole);
        ck.eq("double_complement", &compl(&compl(y)), y);
    }
    let (y0, y1, y2, y3) = (&ys[0], &ys[1], &ys[2], &ys[3]);

    let all_union = cond_union(&x, &ys)?;
    let all_inter = cond_intersection(&x, &ys)?;
    let compls: Vec<CondSubset> = ys.iter().map(compl).collect();
    ck.eq(
        "de_morgan_union",
        &compl(&all_union),
        &cond_intersection(&x, &compls)?,
    );
    ck.eq(
        "de_morgan_intersection",
        &compl(&all_inter),
        &cond_union(&x, &compls)?,
    );

    ck.eq(
        "union_associative",
        &un(&un(y0, y1)?, y2)?,
        &un(y0, &un(y1, y2)?)?,
    );
    ck.eq(
        "intersection_associative",
        &int(&int(y0, y1)?, y2)?,
        &int(y0, &int(y1, y2)?)?,
    );
    ck.eq("union_commutative", &un(y0, y1)?, &un(y1, y0)?);
    ck.eq("intersection_commutative", &int(y0, y1)?, &int(y1, y0)?);
    ck.eq("absorption_union", &un(y0, &int(y0, y1)?)?, y0);
    ck.eq("absorption_intersection", &int(y0, &un(y0, y1)?)?, y0);
    ck.eq("empty_union_is_zero", &cond_union(&x, &[])?, &zero);
    ck.eq(
        "empty_intersection_is_one",
        &cond_intersection(&x, &[])?,
        &whole,
    );

    // ⊓_i ⊔_j Y^{ij} = ⊔_f ⊓_i Y^{i f(i)} with rows (Y0, Y1) and (Y2, Y3).
    let rows = [[y0, y1], [y2, y3]];
    let lhs = int(&un(rows[0][0], rows[0][1])?, &un(rows[1][0], rows[1][1])?)?;
    let choices: Vec<CondSubset> = (0..4)
        .map(|f| int(rows[0][f & 1], rows[1][f >> 1]))
        .collect::<Result<_>>()?;
    ck.eq(
        "distributive_meet_of_joins",
        &lhs,
        &cond_union(&x, &choices)?,
    );
    let lhs = un(&int(rows[0][0], rows[0][1])?, &int(rows[1][0], rows[1][1])?)?;
    let choices: Vec<CondSubset> = (0..4)
        .map(|f| un(rows[0][f & 1], rows[1][f >> 1]))
        .collect::<Result<_>>()?;
    ck.eq(
        "distributive_join_of_meets",
        &lhs,
        &cond_intersection(&x, &choices)?,
    );

    let leq = subset_leq(y0, y1)?;
    ck.eq("order_is_meet", &leq, &(int(y0, y1)? == *y0));
    ck.holds("join_is_upper_bound", subset_leq(y0, &un(y0, y1)?)?);
    ck.holds("meet_is_lower_bound", subset_leq(&int(y0, y1)?, y0)?);

    // a ⊔ Y^i = ⊔ aY^i and a ⊓ Y^i = ⊓ aY^i.
    let a = alg.from_bits(s.cond);
    let restricted: Vec<CondSubset> = ys.iter().map(|y| y.restrict(&a)).collect();
    ck.eq(
        "restrict_union",
        &all_union.restrict(&a),
        &cond_union(&x, &restricted)?,
    );
    ck.eq(
        "restrict_intersection",
        &all_inter.restrict(&a),
        &cond_intersection(&x, &restricted)?.restrict(&a),
    );

    formula_oracle(&x, &ys, cfg, ck)?;

    for y in &ys {
        ck.eq("amalgamation_round_trip", &to_atoms(&from_atoms(y))?, y);
        ck.eq("join_of_atoms_below", &cond_union(&x, &atoms_below(y))?, y);
        for b in atoms_below(y) {
            let i = b.support().atoms().next().expect("atoms live on one atom");
            let p = b.slice(i).and_then(|s| s.min()).expect("singleton slice");
            let idx = (0..alg.len()).map(|j| (j == i).then_some(p)).collect();
            ck.eq(
                "atom_is_restricted_element",
                &CondElement::new(&x, idx)?.as_subset(),
                &b,
            );
        }
    }

    // Families living on 1.
    let (z0, z1) = (on_one(&x, &s.subsets[0]), on_one(&x, &s.subsets[1]));
    let m = int(&z0, &z1)?;
    if m.lives_on_one() {
        let both: BTreeSet<CondElement> = primal_set(&z0)
            .intersection(&primal_set(&z1))
            .cloned()
            .collect();
        ck.eq("primal_of_meet", &primal_set(&m), &both);
    }
    let union_primals: Vec<CondElement> =
        primal_set(&z0).union(&primal_set(&z1)).cloned().collect();
    ck.eq(
        "join_is_hull_of_primals",
        &un(&z0, &z1)?,
        &stable_hull(&alg.one(), &union_primals)?,
    );
    let fam = stable_family_hull(&x, &[z0, z1]);
    let mut primals = BTreeSet::new();
    for f in &fam {
        primals.extend(primal_set(f));
    }
    ck.eq(
        "primal_of_stable_join",
        &primal_set(&cond_union(&x, &fam)?),
        &primals,
    );
    Ok(())
}

/// Union, intersection and complement from the primal-set formulas against
/// the per-atom operations.
fn formula_oracle(x: &CondSet, ys: &[CondSubset], cfg: &Config, ck: &mut Ck) -> Result<()> {
    let ps: Vec<PrimalSet> = ys.iter().map(PrimalSet::from_subset).collect();
    for (y, p) in ys.iter().zip(&ps) {
        ck.eq("formula_round_trip", &p.to_subset(), y);
        ck.eq(
            "formula_complement",
            &formula::complement(p)?.to_subset(),
            &complement(y, cfg.mutant),
        );
    }
    ck.eq(
        "formula_union",
        &formula::union(x, &ps[..3])?.to_subset(),
        &cond_union(x, &ys[..3])?,
    );
    ck.eq(
        "formula_intersection",
        &formula::intersection(x, &ps[..3])?.to_subset(),
        &cond_intersection(x, &ys[..3])?,
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use crate::cli::suites::{run_suite, Config, Mutant};

    #[test]
    fn small_run_passes() {
        let cfg = Config {
            seed: 3,
            cases: Some(25),
            ..Config::default()
        };
        let r = run_suite("powerset", &cfg).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn mutant_is_caught_and_shrunk() {
        let cfg = Config {
            seed: 1,
            cases: Some(20),
            mutant: Some(Mutant::ComplementNoSupportFix),
            ..Config::default()
        };
        let r = run_suite("powerset", &cfg).unwrap();
        let f = r.failures.first().expect("the mutant fails");
        assert_eq!(f.instance.atoms, 1);
        assert_eq!(f.instance.carriers, vec![1]);
    }
}
