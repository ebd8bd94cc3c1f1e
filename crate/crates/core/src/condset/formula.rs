//! Power-set operations computed on primal sets.
//!
//! A [`PrimalSet`] is a set `Y_b` of conditional elements living on a common
//! condition `b`. Union, intersection and complement here are evaluated from
//! the amalgamation formulas: they enumerate conditions of relative algebras,
//! restrict and glue elements, and combine supports with lattice operations.
//! Slices are never inspected, which makes these routines an independent
//! check on the per-atom operations of the parent module.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::{CondElement, CondSet, CondSubset, Local};
use crate::boolalg::{disjointify, Condition, Partition};
use crate::error::{Error, Result};

/// A primal set `Y_b`; empty exactly when `b = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimalSet {
    set: CondSet,
    support: Condition,
    members: BTreeSet<CondElement>,
}

impl PrimalSet {
    pub fn empty(set: &CondSet) -> Self {
        PrimalSet {
            set: set.clone(),
            support: set.algebra().zero(),
            members: BTreeSet::new(),
        }
    }

    pub fn whole(set: &CondSet) -> Self {
        Self::from_subset(&set.whole())
    }

    /// Members must share one support; an empty member list gives `𝟎`.
    pub fn new(set: &CondSet, members: impl IntoIterator<Item = CondElement>) -> Result<Self> {
        let members: BTreeSet<CondElement> = members.into_iter().collect();
        let Some(first) = members.iter().next() else {
            return Ok(Self::empty(set));
        };
        let support = first.support();
        for m in &members {
            if m.set() != set {
                return Err(Error::ParentMismatch);
            }
            if m.support() != support {
                return Err(Error::SupportMismatch(format!(
                    "{m} does not live on {support}"
                )));
            }
        }
        if support.is_zero() {
            return Ok(Self::empty(set));
        }
        Ok(PrimalSet {
            set: set.clone(),
            support,
            members,
        })
    }

    pub fn from_subset(y: &CondSubset) -> Self {
        PrimalSet {
            set: y.set().clone(),
            support: y.support(),
            members: y.primal().into_iter().collect(),
        }
    }

    /// Projects back to per-atom form; exact for stable primal sets.
    pub fn to_subset(&self) -> CondSubset {
        if self.is_empty() {
            return self.set.empty();
        }
        let ys: Vec<CondElement> = self.members.iter().cloned().collect();
        super::stable_hull(&self.support, &ys).expect("members share the support")
    }

    pub fn support(&self) -> &Condition {
        &self.support
    }

    pub fn members(&self) -> &BTreeSet<CondElement> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &CondElement) -> bool {
        self.members.contains(x)
    }

    /// `aY = {ax : x ∈ Y_b}`, living on `a ∧ b`.
    pub fn restrict(&self, a: &Condition) -> PrimalSet {
        let c = a & &self.support;
        if c.is_zero() {
            return Self::empty(&self.set);
        }
        PrimalSet {
            set: self.set.clone(),
            support: c.clone(),
            members: self.members.iter().map(|x| x.restrict(&c)).collect(),
        }
    }

    /// `Y ⊑ Z`: `b_Y ≤ b_Z` and `Y_{b_Y} ⊆ (b_Y Z)`.
    pub fn leq(&self, other: &PrimalSet) -> bool {
        if self.is_empty() {
            return true;
        }
        if !self.support.le(&other.support) {
            return false;
        }
        let r = other.restrict(&self.support);
        self.members.is_subset(&r.members)
    }

    /// Closure under binary gluings `c x + (b ∧ cᶜ) y`.
    pub fn hull(&self) -> PrimalSet {
        let b = self.support.clone();
        let mut members = self.members.clone();
        loop {
            let current: Vec<CondElement> = members.iter().cloned().collect();
            let mut grown = false;
            for c in b.below() {
                let rest = &b & &!&c;
                if c.is_zero() || rest.is_zero() {
                    continue;
                }
                let part = Partition::from_parts(b.clone(), vec![c.clone(), rest.clone()]);
                for x in &current {
                    for y in &current {
                        let z = CondElement::glue(&part, &[x.restrict(&c), y.restrict(&rest)])
                            .expect("binary partition of the support");
                        grown |= members.insert(z);
                    }
                }
            }
            if !grown {
                break;
            }
        }
        PrimalSet {
            set: self.set.clone(),
            support: b,
            members,
        }
    }

    pub fn is_stable(&self) -> bool {
        self.hull() == *self
    }
}

/// Lazily computed restrictions `Y_c` keyed by the condition.
struct Restrictions<'a> {
    base: &'a PrimalSet,
    cache: HashMap<u64, HashSet<CondElement>>,
}

impl<'a> Restrictions<'a> {
    fn new(base: &'a PrimalSet) -> Self {
        Restrictions {
            base,
            cache: HashMap::new(),
        }
    }

    fn contains(&mut self, c: &Condition, x: &CondElement) -> bool {
        let base = self.base;
        self.cache
            .entry(c.bits())
            .or_insert_with(|| base.restrict(c).members.into_iter().collect())
            .contains(x)
    }
}

fn check(space: &CondSet, family: &[PrimalSet]) -> Result<()> {
    if family.iter().any(|y| y.set != *space) {
        Err(Error::ParentMismatch)
    } else {
        Ok(())
    }
}

/// `⊔ Y^i = {∑ b_i y_i : (b_i) ∈ p(∨a_i), b_i ≤ a_i, y_i ∈ Y^i_{b_i}}`.
///
/// A candidate `z ∈ X_s` is produced by such a sum exactly when the conditions
/// `b ≤ a_i` with `bz ∈ Y^i_b` join to `s`; the witnessing partition comes
/// from [`disjointify`] and the glued sum is checked to reproduce `z`.
pub fn union(space: &CondSet, family: &[PrimalSet]) -> Result<PrimalSet> {
    check(space, family)?;
    let alg = space.algebra();
    let supports: Vec<Condition> = family.iter().map(|y| y.support.clone()).collect();
    let s = Condition::join_all(alg, &supports)?;
    if s.is_zero() {
        return Ok(PrimalSet::empty(space));
    }
    let mut caches: Vec<Restrictions> = family.iter().map(Restrictions::new).collect();
    let mut members = BTreeSet::new();
    for z in space.elements_on(&s) {
        let mut good = Vec::with_capacity(family.len());
        for (cache, a) in caches.iter_mut().zip(&supports) {
            let mut acc = alg.zero();
            for b in a.below() {
                if !b.is_zero() && !b.le(&acc) && cache.contains(&b, &z.restrict(&b)) {
                    acc = &acc | &b;
                }
            }
            good.push(acc);
        }
        if Condition::join_all(alg, &good)? != s {
            continue;
        }
        let part = disjointify(&good)?;
        let mut picks = Vec::with_capacity(part.len());
        let mut ok = true;
        for (cache, b) in caches.iter_mut().zip(part.parts()) {
            let y = z.restrict(b);
            ok &= b.is_zero() || cache.contains(b, &y);
            picks.push(y);
        }
        if ok {
            let glued = CondElement::glue(&part, &picks)?;
            debug_assert_eq!(glued, z);
            members.insert(glued);
        }
    }
    PrimalSet::new(space, members)
}

/// `⊓ Y^i = ∩ Y^i_{a★}` with `a★ = ∨{a ≤ ∧a_i : ∩ Y^i_a ≠ ∅}`; `X` for the empty family.
pub fn intersection(space: &CondSet, family: &[PrimalSet]) -> Result<PrimalSet> {
    check(space, family)?;
    if family.is_empty() {
        return Ok(PrimalSet::whole(space));
    }
    let alg = space.algebra();
    let m = Condition::meet_all(alg, family.iter().map(|y| &y.support))?;
    let mut a_star = alg.zero();
    for a in m.below() {
        if a.is_zero() || a.le(&a_star) {
            continue;
        }
        if !meet_members(family, &a).is_empty() {
            a_star = &a_star | &a;
        }
    }
    if a_star.is_zero() {
        return Ok(PrimalSet::empty(space));
    }
    PrimalSet::new(space, meet_members(family, &a_star))
}

fn meet_members(family: &[PrimalSet], a: &Condition) -> BTreeSet<CondElement> {
    let mut it = family.iter().map(|y| y.restrict(a).members);
    let first = it.next().unwrap_or_default();
    it.fold(first, |acc, s| acc.intersection(&s).cloned().collect())
}

/// `Y^⊏ = ⊔{Z : Y ⊓ Z = 𝟎}`.
///
/// Every `Z` is the join of the restricted elements `bx` below it, so the
/// join may range over those. For each `x ∈ X_1` the admissible `b` are
/// closed under joins; their join `b_x` is collected and the family
/// `{b_x x}` is united with [`union`].
pub fn complement(y: &PrimalSet) -> Result<PrimalSet> {
    let space = &y.set;
    let alg = space.algebra();
    let mut cache = Restrictions::new(y);
    let mut pieces: BTreeSet<CondElement> = BTreeSet::new();
    for x in space.elements() {
        let mut bx = alg.zero();
        for b in alg.conditions() {
            if b.is_zero() || b.le(&bx) {
                continue;
            }
            // bx ⊓ Y = 𝟎 iff no c ≤ b ∧ supp(Y) has cx ∈ Y_c.
            let meets = (&b & &y.support)
                .below()
                .any(|c| !c.is_zero() && cache.contains(&c, &x.restrict(&c)));
            if !meets {
                bx = &bx | &b;
            }
        }
        if !bx.is_zero() {
            pieces.insert(x.restrict(&bx));
        }
    }
    let family: Vec<PrimalSet> = pieces
        .into_iter()
        .map(|p| PrimalSet::new(space, [p]))
        .collect::<Result<_>>()?;
    union(space, &family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::Algebra;
    use crate::condset::{cond_complement, cond_intersection, cond_union, Value};

    fn space() -> CondSet {
        let alg = Algebra::numbered(2).unwrap();
        CondSet::from_carriers(
            &alg,
            vec![
                vec!["p".into(), "q".into()],
                vec![Value::Int(1), Value::Int(2), Value::Int(3)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn agrees_with_pointwise_on_all_pairs() {
        let x = space();
        let all = x.all_subsets();
        for y in &all {
            let py = PrimalSet::from_subset(y);
            assert_eq!(
                complement(&py).unwrap().to_subset(),
                cond_complement(y),
                "{y}"
            );
            for z in all.iter().step_by(3) {
                let pz = PrimalSet::from_subset(z);
                let fam = [py.clone(), pz.clone()];
                let pair = [y.clone(), z.clone()];
                assert_eq!(
                    union(&x, &fam).unwrap().to_subset(),
                    cond_union(&x, &pair).unwrap()
                );
                assert_eq!(
                    intersection(&x, &fam).unwrap().to_subset(),
                    cond_intersection(&x, &pair).unwrap()
                );
                assert_eq!(py.leq(&pz), crate::condset::subset_leq(y, z).unwrap());
            }
        }
    }

    #[test]
    fn hull_matches_pointwise_hull() {
        let x = space();
        let one = x.algebra().one();
        let a = CondElement::from_values(&x, &[Some("p".into()), Some(Value::Int(1))]).unwrap();
        let b = CondElement::from_values(&x, &[Some("q".into()), Some(Value::Int(3))]).unwrap();
        let p = PrimalSet::new(&x, [a.clone(), b.clone()]).unwrap();
        assert!(!p.is_stable());
        let h = p.hull();
        assert_eq!(h.len(), 4);
        assert_eq!(
            h.to_subset(),
            crate::condset::stable_hull(&one, &[a, b]).unwrap()
        );
    }

    #[test]
    fn empty_family_conventions() {
        let x = space();
        assert!(union(&x, &[]).unwrap().is_empty());
        assert_eq!(intersection(&x, &[]).unwrap(), PrimalSet::whole(&x));
    }
}
