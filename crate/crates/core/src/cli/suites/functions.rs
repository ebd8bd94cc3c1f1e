//! Image and preimage identities of conditional functions, total-order
//! trichotomy and stitched finite unions.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{atoms, on_one, subset, Ck, Config};
use crate::boolalg::is_partition;
use crate::cli::sample::{random_carriers, random_slices, Sample};
use crate::condmap::{cond_card, stitched_finite_union, CondFunction, CondOrder, SubsetFamily};
use crate::condnum::CondNat;
use crate::condset::{
    cond_complement, cond_intersection, cond_union, subset_leq, CondElement, CondSubset,
};
use crate::error::Result;

pub fn generate(rng: &mut ChaCha8Rng, cfg: &Config, _case: usize) -> Sample {
    let n = atoms(rng, cfg);
    let carriers = random_carriers(rng, n, cfg.carrier_max);
    let cod_carriers = random_carriers(rng, n, cfg.carrier_max);
    let table = carriers
        .iter()
        .zip(&cod_carriers)
        .map(|(&a, &b)| (0..a).map(|_| rng.gen_range(0..b as u32)).collect())
        .collect();
    let mut subsets: Vec<Vec<Option<u128>>> = (0..2)
        .map(|_| random_slices(rng, &carriers, 0.25))
        .collect();
    subsets.extend((0..3).map(|_| random_slices(rng, &carriers, 0.0)));
    Sample {
        atoms: n,
        cod_subsets: (0..2)
            .map(|_| random_slices(rng, &cod_carriers, 0.25))
            .collect(),
        subsets,
        carriers,
        cod_carriers,
        table,
        rats: vec![(0..n).map(|_| (rng.gen_range(1..=3), 1)).collect()],
        ..Sample::default()
    }
}

pub fn check(s: &Sample, _cfg: &Config, ck: &mut Ck) -> Result<()> {
    let (x, y) = (s.space()?, s.cod_space()?);
    let f = s.function(&x, &y)?;
    let (u1, u2) = (subset(&x, &s.subsets[0]), subset(&x, &s.subsets[1]));
    let (v1, v2) = (subset(&y, &s.cod_subsets[0]), subset(&y, &s.cod_subsets[1]));
    let pair = |a: &CondSubset, b: &CondSubset| [a.clone(), b.clone()];
    let un_x = cond_union(&x, &pair(&u1, &u2))?;
    let int_x = cond_intersection(&x, &pair(&u1, &u2))?;
    let un_y = |a: &CondSubset, b: &CondSubset| cond_union(&y, &pair(a, b));
    let int_y = |a: &CondSubset, b: &CondSubset| cond_intersection(&y, &pair(a, b));
    let (fu1, fu2) = (f.image(&u1)?, f.image(&u2)?);
    let (pv1, pv2) = (f.preimage(&v1)?, f.preimage(&v2)?);
    let fx = f.image(&x.whole())?;

    ck.eq("image_of_union", &f.image(&un_x)?, &un_y(&fu1, &fu2)?);
    ck.eq(
        "preimage_of_union",
        &f.preimage(&un_y(&v1, &v2)?)?,
        &cond_union(&x, &pair(&pv1, &pv2))?,
    );
    let meet_of_images = int_y(&fu1, &fu2)?;
    ck.holds(
        "image_of_intersection",
        subset_leq(&f.image(&int_x)?, &meet_of_images)?,
    );
    if f.is_injective() {
        ck.eq(
            "image_of_intersection_injective",
            &f.image(&int_x)?,
            &meet_of_images,
        );
    }
    ck.eq(
        "preimage_of_intersection",
        &f.preimage(&int_y(&v1, &v2)?)?,
        &cond_intersection(&x, &pair(&pv1, &pv2))?,
    );
    ck.holds(
        "image_of_complement",
        subset_leq(
            &int_y(&cond_complement(&fu1), &fx)?,
            &f.image(&cond_complement(&u1))?,
        )?,
    );
    ck.eq(
        "preimage_of_complement",
        &f.preimage(&cond_complement(&v1))?,
        &cond_complement(&pv1),
    );
    ck.holds("image_monotone", subset_leq(&fu1, &f.image(&un_x)?)?);
    ck.holds(
        "preimage_monotone",
        subset_leq(&f.preimage(&int_y(&v1, &v2)?)?, &pv1)?,
    );

    let back = f.preimage(&fu1)?;
    ck.holds("preimage_of_image_contains", subset_leq(&u1, &back)?);
    if f.is_injective() {
        ck.eq("preimage_of_image_injective", &back, &u1);
    }
    let forth = f.image(&pv1)?;
    ck.holds("image_of_preimage_inside", subset_leq(&forth, &v1)?);
    if subset_leq(&v1, &fx)? {
        ck.eq("image_of_preimage_in_range", &forth, &v1);
    }
    ck.eq(
        "injective_iff_no_bad_atoms",
        &f.is_injective(),
        &f.non_injective_atoms().is_zero(),
    );
    if let Some(g) = f.inverse() {
        ck.eq(
            "inverse_composes_to_identity",
            &f.then(&g)?,
            &CondFunction::identity(&x),
        );
    } else {
        ck.holds("inverse_exists_iff_bijective", !f.is_bijective());
    }

    // Trichotomy of the natural order on the codomain.
    let ord = CondOrder::natural(&y)?;
    let alg = x.algebra();
    let first = CondElement::new(&y, (0..alg.len()).map(|i| Some(f.table(i)[0])).collect())?;
    let last = CondElement::new(
        &y,
        (0..alg.len()).map(|i| f.table(i).last().copied()).collect(),
    )?;
    let t = ord.compare_total(&first, &last)?;
    ck.holds("trichotomy_is_partition", is_partition(&t.partition()));
    for i in 0..alg.len() {
        let (a, b) = (
            f.table(i)[0],
            *f.table(i).last().expect("carriers are non-empty"),
        );
        let want = (
            a != b && ord.le_at(i, a, b),
            a != b && ord.le_at(i, b, a),
            a == b,
        );
        let got = (
            t.less.contains_atom(i),
            t.greater.contains_atom(i),
            t.equal.contains_atom(i),
        );
        ck.eq("trichotomy_per_atom", &got, &want);
    }

    // ⊔_{k ≤ n} Y^k stitched over n = ∑ a_i n_i.
    let n = CondNat::nat(
        alg,
        s.rats[0].iter().map(|r| r.0.clamp(1, 3) as u64).collect(),
    )?;
    let members = (0..alg.len())
        .map(|i| {
            (0..*n.at(i) as usize)
                .map(|k| on_one(&x, &s.subsets[2 + k]).slice(i).expect("lives on 1"))
                .collect()
        })
        .collect();
    let fam = SubsetFamily::new(&n.interval_set()?, &x, members)?;
    let stitched = stitched_finite_union(&fam, &n)?;
    ck.eq("stitched_finite_union", &stitched, &fam.union());
    let card = cond_card(&stitched)?;
    let bound = (0..alg.len()).all(|i| {
        let sum: u64 = (0..*n.at(i) as usize)
            .map(|k| {
                on_one(&x, &s.subsets[2 + k])
                    .slice(i)
                    .map_or(0, |p| p.len() as u64)
            })
            .sum();
        *card.at(i) <= sum
    });
    ck.holds("finite_union_is_finite", bound);
    Ok(())
}
