//! Closure/interior duality, bases, convergence, continuity, compactness and
//! separation on finite conditional topologies.
//!
//! Brute-force routes that enumerate `S(X)` or every filter run on the
//! sample clipped to [`SMALL`] points. Products for the Tychonoff checks use
//! at most two atoms and two points per factor carrier.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{atoms, on_one, subset, Ck, Config};
use crate::boolalg::{Condition, Partition};
use crate::cli::sample::{bits_for, random_carriers, random_slices, Sample};
use crate::condfilter::CondFilter;
use crate::condmap::CondFunction;
use crate::condset::{
    cond_complement, cond_intersection, cond_union, subset_leq, CondElement, CondSet, CondSubset,
};
use crate::condtop::{
    basis_opens_brute_force, find_finite_subcover, initial_topology, is_base_conditional,
    is_compact, is_continuous, is_continuous_by_preimages, product_space, relative_topology,
    topology_from_base, CondTopoBase, CondTopology, NatDiscrete, Space, COMPACTNESS_ROUTES,
};
use crate::error::Result;

pub const SMALL: usize = 12;
/// Topologies with more open sets skip the enumeration oracles.
const ENUM_OPENS: usize = 2048;

fn subbase(rng: &mut ChaCha8Rng, carriers: &[usize]) -> Vec<Vec<u128>> {
    carriers
        .iter()
        .map(|&n| {
            (0..rng.gen_range(0..=3))
                .map(|_| bits_for(rng, n))
                .collect()
        })
        .collect()
}

pub fn generate(rng: &mut ChaCha8Rng, cfg: &Config, _case: usize) -> Sample {
    let n = atoms(rng, cfg);
    let carriers = random_carriers(rng, n, cfg.carrier_max);
    let cod_carriers = random_carriers(rng, n, cfg.carrier_max);
    let table = carriers
        .iter()
        .zip(&cod_carriers)
        .map(|(&a, &b)| (0..a).map(|_| rng.gen_range(0..b as u32)).collect())
        .collect();
    Sample {
        atoms: n,
        subsets: (0..5)
            .map(|k| random_slices(rng, &carriers, if k < 2 { 0.25 } else { 0.0 }))
            .collect(),
        subbase: subbase(rng, &carriers),
        cod_subbase: subbase(rng, &cod_carriers),
        carriers,
        cod_carriers,
        table,
        cond: rng.gen(),
        ..Sample::default()
    }
}

fn leq(a: &CondSubset, b: &CondSubset) -> Result<bool> {
    subset_leq(a, b)
}

pub fn check(s: &Sample, _cfg: &Config, ck: &mut Ck) -> Result<()> {
    let x = s.space()?;
    let alg = x.algebra().clone();
    let t = Sample::topology(&x, &s.subbase)?;
    let ys: Vec<CondSubset> = s.subsets.iter().map(|sl| subset(&x, sl)).collect();
    let a = alg.from_bits(s.cond);

    for y in &ys[..2] {
        let yc = cond_complement(y);
        ck.eq(
            "complement_of_closure",
            &cond_complement(&t.closure(y)?),
            &t.interior(&yc)?,
        );
        ck.eq(
            "complement_of_interior",
            &cond_complement(&t.interior(y)?),
            &t.closure(&yc)?,
        );
        ck.eq(
            "closure_commutes_with_restriction",
            &t.closure(&y.restrict(&a))?,
            &t.closure(y)?.restrict(&a),
        );
        ck.eq(
            "interior_commutes_with_restriction",
            &t.interior(&y.restrict(&a))?,
            &t.interior(y)?.restrict(&a),
        );
        ck.holds("closure_contains", leq(y, &t.closure(y)?)?);
        ck.holds("interior_inside", leq(&t.interior(y)?, y)?);
        ck.holds("closure_is_closed", t.is_closed(&t.closure(y)?));
        ck.holds("interior_is_open", t.is_open(&t.interior(y)?));
        if t.open_set_count() <= ENUM_OPENS {
            ck.eq(
                "interior_by_union_of_opens",
                &t.interior_by_union(y)?,
                &t.interior(y)?,
            );
            ck.eq(
                "closure_by_meet_of_closed",
                &t.closure_by_meet(y)?,
                &t.closure(y)?,
            );
        }
    }

    check_bases(&x, &t, ck)?;
    check_continuity(s, &x, &t, ck)?;
    check_compactness(s, &x, &t, ck)?;
    check_subcover(&x, &t, ck)?;
    check_tychonoff(s, ck)?;
    check_small(&s.clipped(SMALL), ck)?;
    Ok(())
}

/// Generators read off a topology: one glued set per index, cycling through
/// the non-empty opens of each atom.
fn generators_of(t: &CondTopology) -> Vec<CondSubset> {
    let x = t.space();
    let opens: Vec<Vec<_>> = (0..x.algebra().len())
        .map(|i| {
            t.opens_at(i)
                .iter()
                .filter(|o| !o.is_empty())
                .copied()
                .collect()
        })
        .collect();
    let k = opens.iter().map(Vec::len).max().unwrap_or(0);
    (0..k)
        .map(|j| CondSubset::from_fn(x, |i| Some(opens[i][j % opens[i].len()])))
        .collect()
}

fn check_bases(x: &CondSet, t: &CondTopology, ck: &mut Ck) -> Result<()> {
    let b = CondTopoBase::new(x, generators_of(t))?;
    ck.eq("base_round_trip", &topology_from_base(&b), t);
    Ok(())
}

/// Conditional base axioms against per-atom classical bases.
fn check_base_axioms(s: &Sample, x: &CondSet, t: &CondTopology, ck: &mut Ck) -> Result<()> {
    ck.holds(
        "topology_generators_form_base",
        is_base_conditional(x, &generators_of(t)),
    );
    let random: Vec<CondSubset> = s.subsets[2..].iter().map(|sl| on_one(x, sl)).collect();
    ck.eq(
        "base_iff_traces_are_bases",
        &is_base_conditional(x, &random),
        &CondTopoBase::new(x, random.clone()).is_ok(),
    );
    Ok(())
}

fn check_continuity(s: &Sample, x: &CondSet, t: &CondTopology, ck: &mut Ck) -> Result<()> {
    let y = s.cod_space()?;
    let tc = Sample::topology(&y, &s.cod_subbase)?;
    let f = s.function(x, &y)?;
    if tc.open_set_count() <= ENUM_OPENS {
        ck.eq(
            "continuity_per_atom_vs_preimages",
            &is_continuous(&f, t, &tc)?,
            &is_continuous_by_preimages(&f, t, &tc)?,
        );
    }
    ck.holds(
        "discrete_domain_is_continuous",
        is_continuous(&f, &CondTopology::discrete(x)?, &tc)?,
    );
    let init = initial_topology(x, std::slice::from_ref(&f), std::slice::from_ref(&tc))?;
    ck.holds(
        "initial_topology_makes_map_continuous",
        is_continuous(&f, &init, &tc)?,
    );
    if is_continuous(&f, t, &tc)? {
        let coarser = (0..x.algebra().len()).all(|i| init.opens_at(i).is_subset(t.opens_at(i)));
        ck.holds("initial_topology_is_coarsest", coarser);
    }
    Ok(())
}

fn compact_all_routes(t: &CondTopology) -> Result<Vec<bool>> {
    COMPACTNESS_ROUTES
        .iter()
        .map(|&r| is_compact(t, r))
        .collect()
}

fn check_compactness(s: &Sample, x: &CondSet, t: &CondTopology, ck: &mut Ck) -> Result<()> {
    let routes = compact_all_routes(t)?;
    ck.that(
        "compactness_routes_agree",
        routes.iter().all(|&b| b),
        || format!("{routes:?}"),
    );

    let mut compact = |name: &str, top: &CondTopology| -> Result<()> {
        let r = compact_all_routes(top)?;
        ck.that(name, r.iter().all(|&b| b), || format!("{r:?}"));
        Ok(())
    };
    let (k1, k2) = (on_one(x, &s.subsets[2]), on_one(x, &s.subsets[3]));
    compact("finite_subset_is_compact", &relative_topology(t, &k1)?)?;
    let joined = cond_union(x, &[k1.clone(), k2.clone()])?;
    compact("finite_union_of_compacts", &relative_topology(t, &joined)?)?;
    let closed = t.closure(&on_one(x, &s.subsets[4]))?;
    let inside = cond_intersection(x, &[k1.clone(), closed])?;
    if inside.lives_on_one() {
        compact("closed_subset_of_compact", &relative_topology(t, &inside)?)?;
    }
    let y = s.cod_space()?;
    let tc = Sample::topology(&y, &s.cod_subbase)?;
    let f = s.function(x, &y)?;
    compact(
        "continuous_image_of_compact",
        &relative_topology(&tc, &f.image(&k1)?)?,
    )?;

    if t.is_hausdorff() {
        ck.holds("hausdorff_compact_is_closed", t.is_closed(&k1));
    }
    ck.holds(
        "discrete_compact_is_closed",
        CondTopology::discrete(x)?.is_closed(&k1),
    );
    Ok(())
}

/// The diagonal cover `{x_k}` with `x_k(ω) = min(k, n_ω − 1)` needs `n_ω`
/// members at `ω` in the discrete topology, so the stitched subcover
/// partitions the atoms by carrier size.
fn check_subcover(x: &CondSet, t: &CondTopology, ck: &mut Ck) -> Result<()> {
    let alg = x.algebra();
    let d = CondTopology::discrete(x)?;
    let max = (0..alg.len()).map(|i| x.carrier_len(i)).max().unwrap_or(1);
    let cover: Vec<CondSubset> = (0..max)
        .map(|k| {
            let idx = (0..alg.len())
                .map(|i| Some(k.min(x.carrier_len(i) - 1) as u32))
                .collect();
            CondElement::new(x, idx).map(|e| e.as_subset())
        })
        .collect::<Result<_>>()?;
    let sc = find_finite_subcover(&d, &cover)?;
    ck.holds("subcover_covers", leq(&x.whole(), &sc.covered(x, &cover)?)?);
    ck.holds(
        "subcover_partition_valid",
        sc.partition.validate().is_ok() && sc.partition.base().is_one(),
    );
    let sizes: BTreeSet<usize> = (0..alg.len()).map(|i| x.carrier_len(i)).collect();
    ck.eq(
        "subcover_parts_by_carrier_size",
        &sc.partition.without_zeros().len(),
        &sizes.len(),
    );
    ck.holds(
        "subcover_count_matches",
        count_matches(&sc.partition, &sc.index_sets, &sc.count),
    );

    let mut general: Vec<CondSubset> = x.elements().iter().map(|e| t.neighborhood(e)).collect();
    general.extend(t.atomwise_opens());
    let sc = find_finite_subcover(t, &general)?;
    ck.holds(
        "open_subcover_covers",
        leq(&x.whole(), &sc.covered(x, &general)?)?,
    );
    ck.holds(
        "open_subcover_count_matches",
        count_matches(&sc.partition, &sc.index_sets, &sc.count),
    );
    Ok(())
}

fn count_matches(p: &Partition, sets: &[Vec<usize>], count: &crate::condnum::CondNat) -> bool {
    p.parts()
        .iter()
        .zip(sets)
        .all(|(a, js): (&Condition, _)| a.atoms().all(|i| *count.at(i) == js.len().max(1) as u64))
}

/// Products of up to three factors: finite factors from the sample, and
/// the symbolic discrete `𝐍` when a flag bit of the condition is set.
fn check_tychonoff(s: &Sample, ck: &mut Ck) -> Result<()> {
    let small = s.first_atoms(2).capped(2);
    let x = small.space()?;
    let y = small.cod_space()?;
    let f1 = Sample::topology(&x, &small.subbase)?;
    let f2 = Sample::topology(&y, &small.cod_subbase)?;
    let mut factors = vec![Space::Finite(f1.clone()), Space::Finite(f2.clone())];
    let flags = s.cond >> 8;
    if flags & 1 == 1 {
        factors.push(Space::Finite(CondTopology::indiscrete(&x)?));
    }
    if flags & 2 == 2 {
        factors.push(Space::Nat(NatDiscrete::new(x.algebra())));
    }
    factors.truncate(3);
    let prod = product_space(&factors)?;
    for r in COMPACTNESS_ROUTES {
        let each = factors
            .iter()
            .map(|f| f.is_compact(r))
            .collect::<Result<Vec<bool>>>()?;
        let whole = prod.is_compact(r)?;
        ck.that("tychonoff", whole == each.iter().all(|&b| b), || {
            format!("{r:?}: product {whole}, factors {each:?}")
        });
    }
    if let Space::Finite(pt) = &prod {
        let sets = [x.clone(), y.clone()];
        let tops = [f1, f2];
        let prod_set = pt.space();
        let finite = factors
            .iter()
            .filter(|f| matches!(f, Space::Finite(_)))
            .count();
        if finite == 2 {
            for (j, tj) in tops.iter().enumerate().take(2) {
                let pj = CondFunction::projection(prod_set, &sets, j)?;
                ck.holds("projection_is_continuous", is_continuous(&pj, pt, tj)?);
            }
        }
    }
    Ok(())
}

fn check_small(s: &Sample, ck: &mut Ck) -> Result<()> {
    let x = s.space()?;
    let t = Sample::topology(&x, &s.subbase)?;
    ck.eq(
        "hausdorff_routes_agree",
        &t.is_hausdorff(),
        &t.is_hausdorff_by_separation(),
    );
    ck.holds(
        "hausdorff_on_one_follows",
        !t.is_hausdorff() || t.is_hausdorff_on_one(),
    );
    let d = CondTopology::discrete(&x)?;
    ck.holds(
        "discrete_is_hausdorff",
        d.is_hausdorff() && d.is_hausdorff_by_separation(),
    );

    check_base_axioms(s, &x, &t, ck)?;
    let b = CondTopoBase::new(&x, generators_of(&t))?;
    let opens: BTreeSet<CondSubset> = t.open_sets().into_iter().collect();
    ck.eq("base_opens_by_unions", &basis_opens_brute_force(&b), &opens);

    let f = CondFilter::principal(&on_one(&x, &s.subsets[2]))?;
    let filters = CondFilter::all_filters(&x);
    ck.eq(
        "limit_set_is_cluster_set",
        &t.limit_set(&f)?,
        &t.cluster_points(&f),
    );
    let cluster = t.cluster_points(&f);
    for e in x.elements() {
        ck.eq(
            "convergence_routes_agree",
            &t.converges(&f, &e),
            &t.converges_brute_force(&f, &e),
        );
        let inside = cluster.contains(&e);
        let finer = t
            .finer_converging_filter(&f, &e)?
            .is_some_and(|g| f.is_coarser(&g) && t.converges(&g, &e));
        ck.eq("cluster_iff_finer_filter_converges", &inside, &finer);
        let brute = filters
            .iter()
            .any(|g| f.is_coarser(g) && t.converges_brute_force(g, &e));
        ck.eq("cluster_iff_some_finer_filter_brute_force", &inside, &brute);
    }
    Ok(())
}
