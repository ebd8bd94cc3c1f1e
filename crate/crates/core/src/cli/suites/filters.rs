//! Filters, the ultrafilter lemma and the four ultrafilter characterizations.
//!
//! Members are materialized, so the suite stays within the materialization
//! bounds. Checks that enumerate every filter or every pair of subsets run on
//! the sample clipped to [`SMALL`] carrier points in total.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{on_one, Ck, Config};
use crate::cli::sample::{random_carriers, random_slices, Sample};
use crate::condfilter::{
    is_classical_filter_base, is_filter_base_conditional, is_filter_system, is_ultrafilter,
    pushforward, stable_family_hull, ultrafilter_extend, CondFilter, CondFilterBase, UltraClause,
    MATERIALIZE_ATOMS, MATERIALIZE_CARRIER, ULTRA_CLAUSES,
};
use crate::condset::{cond_intersection, CondElement, CondSet, CondSubset};
use crate::error::Result;

pub const SMALL: usize = 7;

pub fn generate(rng: &mut ChaCha8Rng, cfg: &Config, _case: usize) -> Sample {
    let n = rng.gen_range(1..=cfg.atoms_max.clamp(1, MATERIALIZE_ATOMS));
    let cap = cfg.carrier_max.clamp(1, MATERIALIZE_CARRIER);
    let carriers = random_carriers(rng, n, cap);
    let cod_carriers = random_carriers(rng, n, cap);
    let table = carriers
        .iter()
        .zip(&cod_carriers)
        .map(|(&a, &b)| (0..a).map(|_| rng.gen_range(0..b as u32)).collect())
        .collect();
    Sample {
        atoms: n,
        subsets: (0..3).map(|_| random_slices(rng, &carriers, 0.0)).collect(),
        carriers,
        cod_carriers,
        table,
        cond: rng.gen(),
        ..Sample::default()
    }
}

/// The filter generated by `Z0` and, when it lives on 1, `Z0 ⊓ Z1`.
fn sample_filter(s: &Sample, x: &CondSet) -> Result<(CondFilterBase, CondFilter)> {
    let (z0, z1) = (on_one(x, &s.subsets[0]), on_one(x, &s.subsets[1]));
    let mut gens = vec![z0.clone()];
    let m = cond_intersection(x, &[z0, z1])?;
    if m.lives_on_one() {
        gens.push(m);
    }
    let base = CondFilterBase::new(x, gens)?;
    let f = CondFilter::generate(&base);
    Ok((base, f))
}

fn clauses(u: &CondFilter) -> Result<Vec<bool>> {
    ULTRA_CLAUSES
        .iter()
        .map(|&c| is_ultrafilter(u, c))
        .collect()
}

pub fn check(s: &Sample, _cfg: &Config, ck: &mut Ck) -> Result<()> {
    let x = s.space()?;
    let (base, f) = sample_filter(s, &x)?;
    ck.eq(
        "generated_matches_brute_force",
        f.members()?,
        &CondFilter::generate_brute_force(&base),
    );
    let u = ultrafilter_extend(&f);
    ck.holds(
        "extension_contains_filter",
        f.members()?.is_subset(u.members()?),
    );
    ck.holds("extension_is_finer", f.is_coarser(&u));
    ck.holds(
        "extension_complement_split",
        is_ultrafilter(&u, UltraClause::ComplementSplit)?,
    );

    // B is a conditional filter base iff its primal family is a classical one.
    let fam: Vec<CondSubset> = s.subsets.iter().map(|sl| on_one(&x, sl)).collect();
    let hull = stable_family_hull(&x, &fam);
    let primal: Vec<BTreeSet<CondElement>> = hull
        .iter()
        .map(|y| y.primal().into_iter().collect())
        .collect();
    ck.eq(
        "filter_base_representations",
        &is_filter_base_conditional(&x, &fam),
        &is_classical_filter_base(&primal),
    );

    let small = s.clipped(SMALL);
    let xs = small.space()?;
    for g in CondFilter::all_filters(&xs) {
        let c = clauses(&g)?;
        ck.that("clauses_agree", c.iter().all(|&b| b == c[0]), || {
            format!("kernel {}: {c:?}", g.kernel())
        });
    }
    let (_, fs) = sample_filter(&small, &xs)?;
    let us = ultrafilter_extend(&fs);
    ck.holds(
        "small_extension_contains_filter",
        fs.members()?.is_subset(us.members()?),
    );
    let c = clauses(&us)?;
    ck.that("extension_passes_all_clauses", c.iter().all(|&b| b), || {
        format!("{c:?}")
    });

    let a = xs.algebra().from_bits(small.cond);
    if !a.is_zero() {
        ck.holds(
            "restricted_filter_is_filter",
            is_filter_system(&xs, &fs.restricted_members(&a)?, &a),
        );
    }

    let ys = small.cod_space()?;
    let h = small.function(&xs, &ys)?;
    let pushed = CondFilter::generate(&pushforward(&h, &us)?);
    let c = clauses(&pushed)?;
    ck.that("pushforward_of_ultrafilter", c.iter().all(|&b| b), || {
        format!("{c:?}")
    });
    Ok(())
}
