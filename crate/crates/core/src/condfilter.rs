//! Conditional filters and ultrafilters on finite conditional sets.
//!
//! A filter is stored through its generators. When the space is small it is
//! also materialized as the full list of members, which the ultrafilter
//! characterizations enumerate. On a finite space every conditional filter is
//! generated by the meet of its members, so the filters on `X` are in
//! bijection with `S(X)`.

use std::collections::{BTreeSet, HashSet};

use crate::boolalg::{Condition, Partition};
use crate::condmap::CondFunction;
use crate::condset::{
    cond_intersection, cond_union, subset_leq, CondElement, CondSet, CondSubset, Local, PointSet,
};
use crate::error::{Error, Result};

/// Filters are materialized when every carrier has at most this many values.
pub const MATERIALIZE_CARRIER: usize = 4;
/// ... and the algebra has at most this many atoms.
pub const MATERIALIZE_ATOMS: usize = 3;

fn traces(space: &CondSet, family: &[CondSubset]) -> Vec<Vec<PointSet>> {
    (0..space.algebra().len())
        .map(|i| {
            let set: BTreeSet<PointSet> = family.iter().filter_map(|y| y.slice(i)).collect();
            set.into_iter().collect()
        })
        .collect()
}

fn check_on_one(space: &CondSet, family: &[CondSubset]) -> Result<()> {
    for y in family {
        if y.set() != space {
            return Err(Error::ParentMismatch);
        }
        if !y.lives_on_one() {
            return Err(Error::InvalidBase(format!("{y} does not live on 1")));
        }
    }
    Ok(())
}

/// Per-atom product of choices: every gluing of one entry per atom.
fn glue_choices(space: &CondSet, per_atom: &[Vec<PointSet>]) -> Vec<CondSubset> {
    let mut out: Vec<Vec<PointSet>> = vec![Vec::new()];
    for choices in per_atom {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for c in choices {
                let mut p = prefix.clone();
                p.push(*c);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|slices| CondSubset::from_fn(space, |i| Some(slices[i])))
        .collect()
}

/// A conditional filter base, stabilized on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondFilterBase {
    space: CondSet,
    generators: Vec<CondSubset>,
    traces: Vec<Vec<PointSet>>,
}

impl CondFilterBase {
    /// Checks `Y³ ⊑ Y¹ ⊓ Y²` on the stable hull of the generators.
    pub fn new(space: &CondSet, generators: Vec<CondSubset>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidBase("a filter base is non-empty".into()));
        }
        check_on_one(space, &generators)?;
        let traces = traces(space, &generators);
        for (i, t) in traces.iter().enumerate() {
            for a in t {
                for b in t {
                    let m = a.intersection(*b);
                    if !t.iter().any(|c| c.is_subset(m)) {
                        return Err(Error::InvalidBase(format!(
                            "no member below a meet at `{}`",
                            space.algebra().atom_name(i)
                        )));
                    }
                }
            }
        }
        Ok(CondFilterBase {
            space: space.clone(),
            generators,
            traces,
        })
    }

    pub fn space(&self) -> &CondSet {
        &self.space
    }

    pub fn generators(&self) -> &[CondSubset] {
        &self.generators
    }

    /// All members of the stable hull of the generators.
    pub fn stable_members(&self) -> Vec<CondSubset> {
        glue_choices(&self.space, &self.traces)
    }
}

/// The closure of a family under binary gluings `cY + cᶜZ`.
pub fn stable_family_hull(space: &CondSet, family: &[CondSubset]) -> Vec<CondSubset> {
    let one = space.algebra().one();
    let mut members: BTreeSet<CondSubset> = family.iter().cloned().collect();
    loop {
        let current: Vec<CondSubset> = members.iter().cloned().collect();
        let mut grown = false;
        for c in one.below() {
            if c.is_zero() || c.is_one() {
                continue;
            }
            let cc = !&c;
            let part = Partition::from_parts(one.clone(), vec![c.clone(), cc.clone()]);
            for y in &current {
                for z in &current {
                    let g = CondSubset::glue(&part, &[y.restrict(&c), z.restrict(&cc)])
                        .expect("binary partition of 1");
                    grown |= members.insert(g);
                }
            }
        }
        if !grown {
            return members.into_iter().collect();
        }
    }
}

/// Whether `B` is a conditional filter base, checked with conditional
/// operations on its stable hull.
pub fn is_filter_base_conditional(space: &CondSet, family: &[CondSubset]) -> bool {
    if family.is_empty() || check_on_one(space, family).is_err() {
        return false;
    }
    let hull = stable_family_hull(space, family);
    hull.iter().all(|y1| {
        hull.iter().all(|y2| {
            let m = cond_intersection(space, &[y1.clone(), y2.clone()]).expect("same space");
            hull.iter()
                .any(|y3| subset_leq(y3, &m).expect("same space"))
        })
    })
}

/// Classical filter base test on a family of subsets of `X_1`.
pub fn is_classical_filter_base(family: &[BTreeSet<CondElement>]) -> bool {
    !family.is_empty()
        && family.iter().all(|s| !s.is_empty())
        && family.iter().all(|a| {
            family.iter().all(|b| {
                family
                    .iter()
                    .any(|c| c.iter().all(|x| a.contains(x) && b.contains(x)))
            })
        })
}

/// A conditional filter on a finite conditional set.
#[derive(Clone, Debug)]
pub struct CondFilter {
    space: CondSet,
    traces: Vec<Vec<PointSet>>,
    members: Option<BTreeSet<CondSubset>>,
}

impl PartialEq for CondFilter {
    fn eq(&self, o: &Self) -> bool {
        self.space == o.space && self.kernel() == o.kernel()
    }
}

impl Eq for CondFilter {}

impl CondFilter {
    /// `F^B`, materialized within the size bounds.
    pub fn generate(base: &CondFilterBase) -> CondFilter {
        let space = &base.space;
        let alg = space.algebra();
        let traces = base.traces.clone();
        let small = alg.len() <= MATERIALIZE_ATOMS
            && (0..alg.len()).all(|i| space.carrier_len(i) <= MATERIALIZE_CARRIER);
        let members = small.then(|| {
            let ups: Vec<Vec<PointSet>> = (0..alg.len())
                .map(|i| {
                    space
                        .full(i)
                        .nonempty_subsets()
                        .filter(|z| traces[i].iter().any(|y| y.is_subset(*z)))
                        .collect()
                })
                .collect();
            glue_choices(space, &ups).into_iter().collect()
        });
        CondFilter {
            space: space.clone(),
            traces,
            members,
        }
    }

    /// The filter generated by a single set living on 1.
    pub fn principal(y: &CondSubset) -> Result<CondFilter> {
        Ok(Self::generate(&CondFilterBase::new(
            y.set(),
            vec![y.clone()],
        )?))
    }

    /// `{Z : x ∈ Z}` for `x` living on 1.
    pub fn principal_at(x: &CondElement) -> Result<CondFilter> {
        Self::principal(&x.as_subset())
    }

    /// `{X}`.
    pub fn trivial(space: &CondSet) -> CondFilter {
        Self::principal(&space.whole()).expect("X lives on 1")
    }

    /// `F^B` by enumerating `S(X)` against the gluing hull of the generators.
    pub fn generate_brute_force(base: &CondFilterBase) -> BTreeSet<CondSubset> {
        let hull = stable_family_hull(&base.space, &base.generators);
        base.space
            .stable_subsets()
            .into_iter()
            .filter(|z| hull.iter().any(|y| subset_leq(y, z).expect("same space")))
            .collect()
    }

    /// Every conditional filter on the space, one per element of `S(X)`.
    pub fn all_filters(space: &CondSet) -> Vec<CondFilter> {
        space
            .stable_subsets()
            .iter()
            .map(|k| Self::principal(k).expect("lives on 1"))
            .collect()
    }

    /// Every conditional ultrafilter: principal at an element of `X_1`.
    pub fn all_ultrafilters(space: &CondSet) -> Vec<CondFilter> {
        space
            .elements()
            .iter()
            .map(|x| Self::principal_at(x).expect("lives on 1"))
            .collect()
    }

    pub fn space(&self) -> &CondSet {
        &self.space
    }

    /// The generator slices at one atom.
    pub fn trace(&self, atom: usize) -> &[PointSet] {
        &self.traces[atom]
    }

    pub fn is_materialized(&self) -> bool {
        self.members.is_some()
    }

    pub fn members(&self) -> Result<&BTreeSet<CondSubset>> {
        self.members.as_ref().ok_or(Error::NotMaterialized)
    }

    /// Membership from the generators: some generator slice lies below `Z_ω` at every atom.
    pub fn contains(&self, z: &CondSubset) -> bool {
        if z.set() != &self.space || !z.lives_on_one() {
            return false;
        }
        match &self.members {
            Some(m) => m.contains(z),
            None => self
                .traces
                .iter()
                .enumerate()
                .all(|(i, t)| t.iter().any(|y| y.is_subset(z.slice(i).unwrap()))),
        }
    }

    /// `⊓F`, itself a member.
    pub fn kernel(&self) -> CondSubset {
        CondSubset::from_fn(&self.space, |i| {
            Some(
                self.traces[i]
                    .iter()
                    .fold(self.space.full(i), |a, s| a.intersection(*s)),
            )
        })
    }

    /// `F ⊑ G`.
    pub fn is_coarser(&self, g: &CondFilter) -> bool {
        subset_leq(&g.kernel(), &self.kernel()).unwrap_or(false)
    }

    /// Restricted members `aF`, as a system on `a`.
    pub fn restricted_members(&self, a: &Condition) -> Result<BTreeSet<CondSubset>> {
        Ok(self.members()?.iter().map(|y| y.restrict(a)).collect())
    }
}

/// Brute-force filter axioms for a system of subsets living on `on`:
/// non-empty, `𝟎` excluded, closed under `⊓`, upward closed inside `S(onX)`,
/// and stable under binary gluings.
pub fn is_filter_system(space: &CondSet, system: &BTreeSet<CondSubset>, on: &Condition) -> bool {
    if system.is_empty() || on.is_zero() {
        return false;
    }
    if system.iter().any(|y| y.support() != *on) {
        return false;
    }
    for y in system {
        for z in system {
            let m = cond_intersection(space, &[y.clone(), z.clone()]).expect("same space");
            if !system.contains(&m) {
                return false;
            }
        }
    }
    for z in space.subsets_on(on) {
        if !system.contains(&z) && system.iter().any(|y| subset_leq(y, &z).unwrap_or(false)) {
            return false;
        }
    }
    for c in on.below() {
        let rest = on & &!&c;
        if c.is_zero() || rest.is_zero() {
            continue;
        }
        let part = Partition::from_parts(on.clone(), vec![c.clone(), rest.clone()]);
        for y in system {
            for z in system {
                let g = CondSubset::glue(&part, &[y.restrict(&c), z.restrict(&rest)])
                    .expect("partition");
                if !system.contains(&g) {
                    return false;
                }
            }
        }
    }
    true
}

/// `m_F`, the meet of the conditions the members live on.
pub fn min_condition(system: &[CondSubset]) -> Result<Condition> {
    let first = system.first().ok_or(Error::EmptyFamily)?;
    let alg = first.set().algebra();
    let m = Condition::meet_all(
        alg,
        system
            .iter()
            .map(|y| y.support())
            .collect::<Vec<_>>()
            .iter(),
    )?;
    if m.is_zero() {
        return Err(Error::DegenerateSystem);
    }
    Ok(m)
}

/// A conditional ultrafilter containing `F`: principal at the element that
/// takes the least kernel point at every atom.
pub fn ultrafilter_extend(f: &CondFilter) -> CondFilter {
    let k = f.kernel();
    let idx = (0..f.space.algebra().len())
        .map(|i| k.slice(i).and_then(PointSet::min))
        .collect();
    let x = CondElement::new(&f.space, idx).expect("kernel lives on 1");
    CondFilter::principal_at(&x).expect("x lives on 1")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UltraClause {
    /// No conditional filter is strictly finer.
    Maximal,
    /// `Y¹ ⊔ Y² ∈ U` implies `aY¹_a + aᶜY²_{aᶜ} ∈ U` for some `a₂ᶜ ≤ a ≤ a₁`.
    UnionSplit,
    /// `aY_a + aᶜY^⊏_{aᶜ} ∈ U` for some `a₂ᶜ ≤ a ≤ a₁`, every `Y`.
    ComplementSplit,
    /// `Y ⊓ U ∈ S(X)` for all `U ∈ U` implies `Y ∈ U`.
    MeetAll,
}

pub const ULTRA_CLAUSES: [UltraClause; 4] = [
    UltraClause::Maximal,
    UltraClause::UnionSplit,
    UltraClause::ComplementSplit,
    UltraClause::MeetAll,
];

fn split(y1: &CondSubset, y2: &CondSubset, a: &Condition) -> Result<CondSubset> {
    let ac = !a;
    let part = Partition::from_parts(a.algebra().one(), vec![a.clone(), ac.clone()]);
    CondSubset::glue(&part, &[y1.restrict(a), y2.restrict(&ac)])
}

/// Some `a` with `a₂ᶜ ≤ a ≤ a₁` has `aY¹_a + aᶜY²_{aᶜ} ∈ U`.
fn split_in(u: &CondFilter, y1: &CondSubset, y2: &CondSubset) -> Result<bool> {
    let (a1, a2) = (y1.support(), y2.support());
    let low = !&a2;
    for c in (&a1 & &a2).below() {
        let g = split(y1, y2, &(&low | &c))?;
        if g.lives_on_one() && u.contains(&g) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The splitting test restricted to the two endpoints `a = a₁` and `a = a₂ᶜ`.
pub fn split_at_endpoints(u: &CondFilter, y1: &CondSubset, y2: &CondSubset) -> Result<bool> {
    let (a1, a2) = (y1.support(), y2.support());
    for a in [a1, !&a2] {
        let g = split(y1, y2, &a)?;
        if g.lives_on_one() && u.contains(&g) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Evaluates one characterization of ultrafilters by enumeration.
pub fn is_ultrafilter(u: &CondFilter, clause: UltraClause) -> Result<bool> {
    let members = u.members()?;
    let space = &u.space;
    match clause {
        UltraClause::Maximal => Ok(!CondFilter::all_filters(space).iter().any(|g| {
            let gm = g.members().expect("same bounds");
            gm.len() > members.len() && members.is_subset(gm)
        })),
        UltraClause::UnionSplit => {
            let all = space.all_subsets();
            for y1 in &all {
                for y2 in &all {
                    let un = cond_union(space, &[y1.clone(), y2.clone()])?;
                    if u.contains(&un) && !split_in(u, y1, y2)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        UltraClause::ComplementSplit => {
            for y in space.all_subsets() {
                let yc = crate::condset::cond_complement(&y);
                if !split_in(u, &y, &yc)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        UltraClause::MeetAll => {
            for y in space.stable_subsets() {
                let meets = members.iter().all(|m| {
                    cond_intersection(space, &[y.clone(), m.clone()])
                        .map(|z| z.lives_on_one())
                        .unwrap_or(false)
                });
                if meets && !members.contains(&y) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// `f(F) = {f(U) : U ∈ F}`, from the members when materialized.
pub fn pushforward(f: &CondFunction, filter: &CondFilter) -> Result<CondFilterBase> {
    if f.domain() != &filter.space {
        return Err(Error::CarrierMismatch(
            "filter lives on another space".into(),
        ));
    }
    let sources: Vec<CondSubset> = match &filter.members {
        Some(m) => m.iter().cloned().collect(),
        None => glue_choices(&filter.space, &filter.traces),
    };
    let mut seen = HashSet::new();
    let mut images = Vec::new();
    for u in &sources {
        let v = f.image(u)?;
        if seen.insert(v.clone()) {
            images.push(v);
        }
    }
    CondFilterBase::new(f.codomain(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::Algebra;
    use crate::condset::Value;

    fn space(n_atoms: usize, vals: &[i64]) -> CondSet {
        let alg = Algebra::numbered(n_atoms).unwrap();
        CondSet::generate(
            &vals.iter().map(|&v| Value::Int(v)).collect::<Vec<_>>(),
            &alg,
        )
        .unwrap()
    }

    fn el(x: &CondSet, vals: &[i64]) -> CondElement {
        CondElement::from_values(
            x,
            &vals
                .iter()
                .map(|&v| Some(Value::Int(v)))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn trivial_and_principal() {
        let x = space(2, &[1, 2]);
        let t = CondFilter::trivial(&x);
        assert_eq!(t.members().unwrap().len(), 1);
        let p = CondFilter::principal_at(&el(&x, &[1, 2])).unwrap();
        for z in x.stable_subsets() {
            assert_eq!(
                p.contains(&z),
                subset_leq(&el(&x, &[1, 2]).as_subset(), &z).unwrap()
            );
        }
    }

    #[test]
    fn generated_filter_matches_brute_force() {
        let x = space(2, &[1, 2, 3]);
        let y1 = CondSubset::from_values(
            &x,
            &[
                Some(vec![1.into(), 2.into()]),
                Some(vec![2.into(), 3.into()]),
            ],
        )
        .unwrap();
        let y2 =
            CondSubset::from_values(&x, &[Some(vec![1.into()]), Some(vec![2.into()])]).unwrap();
        let base = CondFilterBase::new(&x, vec![y1, y2]).unwrap();
        let f = CondFilter::generate(&base);
        assert_eq!(
            f.members().unwrap(),
            &CondFilter::generate_brute_force(&base)
        );
        assert!(is_filter_system(
            &x,
            f.members().unwrap(),
            &x.algebra().one()
        ));
    }

    #[test]
    fn invalid_base_rejected() {
        let x = space(1, &[1, 2]);
        let a = CondSubset::from_values(&x, &[Some(vec![1.into()])]).unwrap();
        let b = CondSubset::from_values(&x, &[Some(vec![2.into()])]).unwrap();
        assert!(matches!(
            CondFilterBase::new(&x, vec![a, b]),
            Err(Error::InvalidBase(_))
        ));
    }

    #[test]
    fn min_condition_examples() {
        let x = space(3, &[1, 2]);
        let alg = x.algebra();
        assert!(min_condition(&[x.whole()]).unwrap().is_one());
        let y1 = x.whole().restrict(&alg.condition([0, 1]));
        let y2 = x.whole().restrict(&alg.atom(0));
        assert_eq!(min_condition(&[y1, y2]).unwrap(), alg.atom(0));
        let z = x.whole().restrict(&alg.atom(2));
        assert!(matches!(
            min_condition(&[x.whole().restrict(&alg.atom(0)), z]),
            Err(Error::DegenerateSystem)
        ));
    }

    #[test]
    fn extension_of_trivial_filter() {
        let x = space(1, &[1, 2]);
        let u = ultrafilter_extend(&CondFilter::trivial(&x));
        assert_eq!(u, CondFilter::principal_at(&el(&x, &[1])).unwrap());
        let p = CondFilter::principal_at(&el(&x, &[2])).unwrap();
        assert_eq!(ultrafilter_extend(&p), p);
    }

    #[test]
    fn clauses_agree_on_all_filters() {
        let x = space(2, &[1, 2]);
        for f in CondFilter::all_filters(&x) {
            let vals: Vec<bool> = ULTRA_CLAUSES
                .iter()
                .map(|c| is_ultrafilter(&f, *c).unwrap())
                .collect();
            assert!(vals.iter().all(|v| *v == vals[0]), "{vals:?}");
            let is_point = (0..2).all(|i| f.kernel().slice(i).unwrap().len() == 1);
            assert_eq!(vals[0], is_point);
            let u = ultrafilter_extend(&f);
            assert!(f.is_coarser(&u));
            assert!(f.members().unwrap().is_subset(u.members().unwrap()));
            assert!(ULTRA_CLAUSES
                .iter()
                .all(|c| is_ultrafilter(&u, *c).unwrap()));
        }
    }

    #[test]
    fn stitched_ultrafilter() {
        let x = space(2, &[1, 2, 3]);
        let u = CondFilter::principal_at(&el(&x, &[3, 1])).unwrap();
        assert!(ULTRA_CLAUSES
            .iter()
            .all(|c| is_ultrafilter(&u, *c).unwrap()));
        // Neither endpoint works when the overlap of supports has two atoms.
        let y = CondSubset::from_values(&x, &[Some(vec![3.into()]), Some(vec![2.into()])]).unwrap();
        let yc = crate::condset::cond_complement(&y);
        assert!(!split_at_endpoints(&u, &y, &yc).unwrap());
        assert!(split_in(&u, &y, &yc).unwrap());
    }

    #[test]
    fn pushforward_examples() {
        let x = space(2, &[1, 2, 3]);
        let id = CondFunction::identity(&x);
        let f = CondFilter::trivial(&x);
        let b = pushforward(&id, &f).unwrap();
        assert_eq!(CondFilter::generate(&b), f);
        let c = el(&x, &[2, 3]);
        let k = CondFunction::constant(&x, &c).unwrap();
        let img = CondFilter::generate(&pushforward(&k, &f).unwrap());
        assert_eq!(img, CondFilter::principal_at(&c).unwrap());
        let fold = CondFunction::new(&x, &x, vec![vec![0, 1, 1], vec![0, 0, 1]]).unwrap();
        let u = CondFilter::principal_at(&el(&x, &[3, 2])).unwrap();
        let v = CondFilter::generate(&pushforward(&fold, &u).unwrap());
        assert!(ULTRA_CLAUSES
            .iter()
            .all(|c| is_ultrafilter(&v, *c).unwrap()));
    }

    #[test]
    fn restricted_filter_is_filter() {
        let x = space(2, &[1, 2]);
        let a = x.algebra().atom(1);
        for f in CondFilter::all_filters(&x) {
            assert!(is_filter_system(&x, &f.restricted_members(&a).unwrap(), &a));
        }
    }
}
