//! Conditional topologies on finite conditional sets.
//!
//! A topology is a classical topology per atom, stored as the full list of
//! open slices. A conditional subset is open when every slice on its support
//! is open at its atom. Brute-force routines built on conditional unions,
//! intersections and preimages are provided next to the per-atom ones so
//! each can check the other.

use std::collections::{BTreeSet, HashSet};

use crate::boolalg::{stitch_by_key, Algebra, Condition, Partition};
use crate::condfilter::{CondFilter, CondFilterBase};
use crate::condmap::CondFunction;
use crate::condnum::CondNat;
use crate::condset::{
    cond_complement, cond_intersection, cond_union, subset_leq, CondElement, CondSet, CondSubset,
    Local, PointSet, Value,
};
use crate::error::{Error, Result};

/// Largest per-atom carrier a topology may live on.
pub const MAX_TOPOLOGY_CARRIER: usize = 12;

fn union_closure(family: impl IntoIterator<Item = PointSet>) -> BTreeSet<PointSet> {
    let mut opens = BTreeSet::from([PointSet::EMPTY]);
    for b in family {
        let grown: Vec<PointSet> = opens.iter().map(|o| o.union(b)).collect();
        opens.extend(grown);
    }
    opens
}

/// The classical topology on `n` points generated by a subbase.
pub fn generate_classical(n: usize, subbase: &[PointSet]) -> BTreeSet<PointSet> {
    let full = PointSet::full(n);
    let mut inters = BTreeSet::from([full]);
    for s in subbase {
        let grown: Vec<PointSet> = inters.iter().map(|i| i.intersection(*s)).collect();
        inters.extend(grown);
    }
    union_closure(inters)
}

fn is_classical_topology(n: usize, opens: &BTreeSet<PointSet>) -> bool {
    opens.contains(&PointSet::EMPTY)
        && opens.contains(&PointSet::full(n))
        && opens.iter().all(|a| {
            opens
                .iter()
                .all(|b| opens.contains(&a.union(*b)) && opens.contains(&a.intersection(*b)))
        })
}

/// Every choice of one slice (or absence) per atom.
fn glue_options(space: &CondSet, per_atom: &[Vec<Option<PointSet>>]) -> Vec<CondSubset> {
    let mut out: Vec<Vec<Option<PointSet>>> = vec![Vec::new()];
    for opts in per_atom {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for prefix in &out {
            for o in opts {
                let mut p = prefix.clone();
                p.push(*o);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|s| CondSubset::from_fn(space, |i| s[i]))
        .collect()
}

fn check_carriers(space: &CondSet) -> Result<()> {
    for i in 0..space.algebra().len() {
        if space.carrier_len(i) > MAX_TOPOLOGY_CARRIER {
            return Err(Error::CarrierTooLarge {
                atom: space.algebra().atom_name(i).to_string(),
                size: space.carrier_len(i),
                max: MAX_TOPOLOGY_CARRIER,
            });
        }
    }
    Ok(())
}

/// A conditional topology: one classical topology per atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondTopology {
    space: CondSet,
    opens: Vec<BTreeSet<PointSet>>,
}

impl CondTopology {
    pub fn new(space: &CondSet, opens: Vec<Vec<PointSet>>) -> Result<Self> {
        check_carriers(space)?;
        if opens.len() != space.algebra().len() {
            return Err(Error::CarrierMismatch(
                "one topology per atom required".into(),
            ));
        }
        let opens: Vec<BTreeSet<PointSet>> =
            opens.into_iter().map(|o| o.into_iter().collect()).collect();
        for (i, o) in opens.iter().enumerate() {
            if !is_classical_topology(space.carrier_len(i), o) {
                return Err(Error::Invalid(format!(
                    "not a topology at `{}`",
                    space.algebra().atom_name(i)
                )));
            }
        }
        Ok(CondTopology {
            space: space.clone(),
            opens,
        })
    }

    /// Per-atom open sets given by their values.
    pub fn from_values(space: &CondSet, opens: &[Vec<Vec<Value>>]) -> Result<Self> {
        let mut per_atom = Vec::with_capacity(opens.len());
        for (i, fam) in opens.iter().enumerate() {
            let mut sets = Vec::with_capacity(fam.len());
            for vals in fam {
                let mut s = PointSet::EMPTY;
                for v in vals {
                    s.insert(space.index_of(i, v).ok_or_else(|| {
                        Error::CarrierMismatch(format!("{v} is not in the carrier"))
                    })?);
                }
                sets.push(s);
            }
            per_atom.push(sets);
        }
        Self::new(space, per_atom)
    }

    /// The topology generated by per-atom subbases.
    pub fn generated(space: &CondSet, subbase: &[Vec<PointSet>]) -> Result<Self> {
        check_carriers(space)?;
        let opens = subbase
            .iter()
            .enumerate()
            .map(|(i, s)| generate_classical(space.carrier_len(i), s))
            .collect();
        Ok(CondTopology {
            space: space.clone(),
            opens,
        })
    }

    pub fn discrete(space: &CondSet) -> Result<Self> {
        let singletons: Vec<Vec<PointSet>> = (0..space.algebra().len())
            .map(|i| {
                (0..space.carrier_len(i) as u32)
                    .map(PointSet::singleton)
                    .collect()
            })
            .collect();
        Self::generated(space, &singletons)
    }

    pub fn indiscrete(space: &CondSet) -> Result<Self> {
        Self::generated(space, &vec![Vec::new(); space.algebra().len()])
    }

    pub fn space(&self) -> &CondSet {
        &self.space
    }

    pub fn opens_at(&self, atom: usize) -> &BTreeSet<PointSet> {
        &self.opens[atom]
    }

    pub fn is_open_at(&self, atom: usize, s: PointSet) -> bool {
        self.opens[atom].contains(&s)
    }

    pub fn is_closed_at(&self, atom: usize, s: PointSet) -> bool {
        self.is_open_at(atom, self.space.full(atom).difference(s))
    }

    pub fn is_open(&self, o: &CondSubset) -> bool {
        o.set() == &self.space
            && o.slices()
                .iter()
                .enumerate()
                .all(|(i, s)| s.is_none_or(|s| self.is_open_at(i, s)))
    }

    /// `Y` is closed when `Y^⊏` is open.
    pub fn is_closed(&self, y: &CondSubset) -> bool {
        self.is_open(&cond_complement(y))
    }

    /// All conditionally open sets, `𝟎` included.
    pub fn open_sets(&self) -> Vec<CondSubset> {
        let opts: Vec<Vec<Option<PointSet>>> = self
            .opens
            .iter()
            .map(|o| {
                std::iter::once(None)
                    .chain(o.iter().filter(|s| !s.is_empty()).map(|s| Some(*s)))
                    .collect()
            })
            .collect();
        glue_options(&self.space, &opts)
    }

    /// `|open_sets()|` without enumerating, saturating.
    pub fn open_set_count(&self) -> usize {
        self.opens
            .iter()
            .map(|o| o.iter().filter(|s| !s.is_empty()).count() + 1)
            .fold(1usize, |a, k| a.saturating_mul(k))
    }

    /// Each non-empty open slice as a conditional set living on its atom.
    pub fn atomwise_opens(&self) -> Vec<CondSubset> {
        let mut out = Vec::new();
        for (i, o) in self.opens.iter().enumerate() {
            for s in o.iter().filter(|s| !s.is_empty()) {
                out.push(CondSubset::from_fn(&self.space, |j| (j == i).then_some(*s)));
            }
        }
        out
    }

    /// All conditionally closed sets, as complements of open sets.
    pub fn closed_sets(&self) -> Vec<CondSubset> {
        self.open_sets().iter().map(cond_complement).collect()
    }

    pub fn interior_at(&self, atom: usize, s: PointSet) -> PointSet {
        self.opens[atom]
            .iter()
            .filter(|o| o.is_subset(s))
            .fold(PointSet::EMPTY, |a, o| a.union(*o))
    }

    pub fn closure_at(&self, atom: usize, s: PointSet) -> PointSet {
        let full = self.space.full(atom);
        full.difference(self.interior_at(atom, full.difference(s)))
    }

    /// The smallest open set containing a point.
    pub fn min_open_at(&self, atom: usize, point: u32) -> PointSet {
        self.opens[atom]
            .iter()
            .filter(|o| o.contains(point))
            .fold(self.space.full(atom), |a, o| a.intersection(*o))
    }

    /// `int(Y)`, living on `a_*`.
    pub fn interior(&self, y: &CondSubset) -> Result<CondSubset> {
        if y.set() != &self.space {
            return Err(Error::ParentMismatch);
        }
        Ok(CondSubset::from_fn(&self.space, |i| {
            y.slice(i)
                .map(|s| self.interior_at(i, s))
                .filter(|s| !s.is_empty())
        }))
    }

    /// `cl(Y)`, living on the support of `Y`.
    pub fn closure(&self, y: &CondSubset) -> Result<CondSubset> {
        if y.set() != &self.space {
            return Err(Error::ParentMismatch);
        }
        Ok(CondSubset::from_fn(&self.space, |i| {
            y.slice(i).map(|s| self.closure_at(i, s))
        }))
    }

    /// `⊔{O open : O ⊑ Y}` over the enumerated open sets.
    pub fn interior_by_union(&self, y: &CondSubset) -> Result<CondSubset> {
        let inside: Vec<CondSubset> = self
            .open_sets()
            .into_iter()
            .filter(|o| subset_leq(o, y).unwrap_or(false))
            .collect();
        cond_union(&self.space, &inside)
    }

    /// `⊓{F closed : Y ⊑ F}` over the enumerated closed sets.
    pub fn closure_by_meet(&self, y: &CondSubset) -> Result<CondSubset> {
        let above: Vec<CondSubset> = self
            .closed_sets()
            .into_iter()
            .filter(|f| subset_leq(y, f).unwrap_or(false))
            .collect();
        cond_intersection(&self.space, &above)
    }

    /// The smallest neighborhood of `x`, living on the support of `x`.
    pub fn neighborhood(&self, x: &CondElement) -> CondSubset {
        CondSubset::from_fn(&self.space, |i| x.index(i).map(|k| self.min_open_at(i, k)))
    }

    /// `x ∈ O ⊑ U` for some open `O`, atom by atom on the support of `x`.
    pub fn is_neighborhood(&self, u: &CondSubset, x: &CondElement) -> bool {
        x.indices().iter().enumerate().all(|(i, k)| match k {
            Some(k) => u
                .slice(i)
                .is_some_and(|s| self.interior_at(i, s).contains(*k)),
            None => true,
        })
    }

    /// `U(x)` for `x` living on 1, by enumeration of `S(X)`.
    pub fn neighborhoods(&self, x: &CondElement) -> Vec<CondSubset> {
        self.space
            .stable_subsets()
            .into_iter()
            .filter(|u| self.is_neighborhood(u, x))
            .collect()
    }

    /// The smallest neighborhood from conditional operations:
    /// `⊓{O open : x ∈ O}`, restricted to the support of `x`.
    fn neighborhood_by_meet(&self, x: &CondElement, opens: &[CondSubset]) -> CondSubset {
        let xs = x.as_subset();
        let around: Vec<CondSubset> = opens
            .iter()
            .filter(|o| subset_leq(&xs, o).unwrap_or(false))
            .cloned()
            .collect();
        cond_intersection(&self.space, &around)
            .expect("same space")
            .restrict(&x.support())
    }

    /// Classical Hausdorff at every atom.
    pub fn is_hausdorff(&self) -> bool {
        (0..self.space.algebra().len()).all(|i| {
            let n = self.space.carrier_len(i) as u32;
            (0..n).all(|p| {
                (0..n).all(|q| {
                    p == q
                        || self
                            .min_open_at(i, p)
                            .intersection(self.min_open_at(i, q))
                            .is_empty()
                })
            })
        })
    }

    /// Neighborhood separation for every `a > 0` and every pair
    /// `x, y ∈ X_a` with `x ⊓ y = 𝟎`, using conditional operations only.
    pub fn is_hausdorff_by_separation(&self) -> bool {
        self.separation_holds(true)
    }

    /// The same test for pairs living on 1 only.
    pub fn is_hausdorff_on_one(&self) -> bool {
        self.separation_holds(false)
    }

    fn separation_holds(&self, localized: bool) -> bool {
        let alg = self.space.algebra();
        let opens = self.open_sets();
        let conditions: Vec<Condition> = if localized {
            alg.conditions().filter(|a| !a.is_zero()).collect()
        } else {
            vec![alg.one()]
        };
        for a in conditions {
            let xs = self.space.elements_on(&a);
            let nbhds: Vec<CondSubset> = xs
                .iter()
                .map(|x| self.neighborhood_by_meet(x, &opens))
                .collect();
            for (x, nx) in xs.iter().zip(&nbhds) {
                for (y, ny) in xs.iter().zip(&nbhds) {
                    let apart = cond_intersection(&self.space, &[x.as_subset(), y.as_subset()])
                        .expect("same space")
                        .is_empty();
                    if apart
                        && !cond_intersection(&self.space, &[nx.clone(), ny.clone()])
                            .expect("same space")
                            .is_empty()
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `Lim F = ⊓{cl(Y) : Y ∈ F}`.
    pub fn limit_set(&self, f: &CondFilter) -> Result<CondSubset> {
        let closures: Vec<CondSubset> = f
            .members()?
            .iter()
            .map(|y| self.closure(y))
            .collect::<Result<_>>()?;
        cond_intersection(&self.space, &closures)
    }

    /// Classical cluster points of the per-atom trace filters, stitched.
    pub fn cluster_points(&self, f: &CondFilter) -> CondSubset {
        CondSubset::from_fn(&self.space, |i| {
            let full = self.space.full(i);
            let pts = full
                .nonempty_subsets()
                .filter(|z| f.trace(i).iter().any(|t| t.is_subset(*z)))
                .fold(full, |acc, z| acc.intersection(self.closure_at(i, z)));
            (!pts.is_empty()).then_some(pts)
        })
    }

    /// `U(x) ⊑ F`, through the smallest neighborhood.
    pub fn converges(&self, f: &CondFilter, x: &CondElement) -> bool {
        f.contains(&self.neighborhood(x))
    }

    /// `U(x) ⊑ F`, checked on every neighborhood.
    pub fn converges_brute_force(&self, f: &CondFilter, x: &CondElement) -> bool {
        self.neighborhoods(x).iter().all(|u| f.contains(u))
    }

    /// The filter generated by `{V ⊓ U : V ∈ U(x), U ∈ F}`, when those meets
    /// all live on 1.
    pub fn finer_converging_filter(
        &self,
        f: &CondFilter,
        x: &CondElement,
    ) -> Result<Option<CondFilter>> {
        let v = self.neighborhood(x);
        let mut gens = Vec::new();
        for u in f.members()? {
            let m = cond_intersection(&self.space, &[v.clone(), u.clone()])?;
            if !m.lives_on_one() {
                return Ok(None);
            }
            gens.push(m);
        }
        Ok(Some(CondFilter::generate(&CondFilterBase::new(
            &self.space,
            gens,
        )?)))
    }
}

/// A conditional topological base, stabilized on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondTopoBase {
    space: CondSet,
    generators: Vec<CondSubset>,
    traces: Vec<Vec<PointSet>>,
}

fn is_classical_base(n: usize, trace: &[PointSet]) -> bool {
    let covers = trace.iter().fold(PointSet::EMPTY, |a, s| a.union(*s)) == PointSet::full(n);
    covers
        && trace.iter().all(|a| {
            trace.iter().all(|b| {
                let m = a.intersection(*b);
                m.iter()
                    .all(|p| trace.iter().any(|c| c.contains(p) && c.is_subset(m)))
            })
        })
}

impl CondTopoBase {
    /// Generators live on 1; the per-atom traces must be classical bases.
    pub fn new(space: &CondSet, generators: Vec<CondSubset>) -> Result<Self> {
        check_carriers(space)?;
        for g in &generators {
            if g.set() != space {
                return Err(Error::ParentMismatch);
            }
            if !g.lives_on_one() {
                return Err(Error::InvalidBase(format!("{g} does not live on 1")));
            }
        }
        let traces: Vec<Vec<PointSet>> = (0..space.algebra().len())
            .map(|i| {
                let t: BTreeSet<PointSet> = generators.iter().filter_map(|g| g.slice(i)).collect();
                t.into_iter().collect()
            })
            .collect();
        for (i, t) in traces.iter().enumerate() {
            if !is_classical_base(space.carrier_len(i), t) {
                return Err(Error::InvalidBase(format!(
                    "trace at `{}` is not a base",
                    space.algebra().atom_name(i)
                )));
            }
        }
        Ok(CondTopoBase {
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

    pub fn trace(&self, atom: usize) -> &[PointSet] {
        &self.traces[atom]
    }

    /// Every gluing of trace slices: the stable hull of the generators.
    pub fn stable_members(&self) -> Vec<CondSubset> {
        let opts: Vec<Vec<Option<PointSet>>> = self
            .traces
            .iter()
            .map(|t| t.iter().map(|s| Some(*s)).collect())
            .collect();
        glue_options(&self.space, &opts)
    }
}

/// `T^B`: per atom, all unions of trace sets.
pub fn topology_from_base(b: &CondTopoBase) -> CondTopology {
    CondTopology {
        space: b.space.clone(),
        opens: b
            .traces
            .iter()
            .map(|t| union_closure(t.iter().copied()))
            .collect(),
    }
}

/// `{a ⊔ O^i}`: restrictions of base members closed under conditional union.
pub fn basis_opens_brute_force(b: &CondTopoBase) -> BTreeSet<CondSubset> {
    let alg = b.space.algebra();
    let mut seen: HashSet<CondSubset> = HashSet::new();
    let mut work = Vec::new();
    for o in b.stable_members() {
        for a in alg.conditions() {
            let r = o.restrict(&a);
            if seen.insert(r.clone()) {
                work.push(r);
            }
        }
    }
    let mut all: Vec<CondSubset> = work.clone();
    while let Some(y) = work.pop() {
        let snapshot = all.clone();
        for z in &snapshot {
            let u = cond_union(&b.space, &[y.clone(), z.clone()]).expect("same space");
            if seen.insert(u.clone()) {
                all.push(u.clone());
                work.push(u);
            }
        }
    }
    all.into_iter().collect()
}

/// The base axioms checked with conditional operations on the stable hull:
/// `⊔B = X`, and `x ∈ O¹ ⊓ O²` living on `a` has some `O³` with
/// `x ∈ aO³ ⊑ O¹ ⊓ O²`.
pub fn is_base_conditional(space: &CondSet, generators: &[CondSubset]) -> bool {
    if generators
        .iter()
        .any(|g| g.set() != space || !g.lives_on_one())
    {
        return false;
    }
    let hull = crate::condfilter::stable_family_hull(space, generators);
    if cond_union(space, &hull)
        .map(|u| u != space.whole())
        .unwrap_or(true)
    {
        return false;
    }
    for o1 in &hull {
        for o2 in &hull {
            let m = cond_intersection(space, &[o1.clone(), o2.clone()]).expect("same space");
            if m.is_empty() {
                continue;
            }
            let a = m.support();
            for x in space.elements_on(&a) {
                if !subset_leq(&x.as_subset(), &m).unwrap_or(false) {
                    continue;
                }
                let found = hull.iter().any(|o3| {
                    let r = o3.restrict(&a);
                    subset_leq(&x.as_subset(), &r).unwrap_or(false)
                        && subset_leq(&r, &m).unwrap_or(false)
                });
                if !found {
                    return false;
                }
            }
        }
    }
    true
}

fn check_function(f: &CondFunction, dom: &CondTopology, cod: &CondTopology) -> Result<()> {
    if f.domain() != &dom.space || f.codomain() != &cod.space {
        return Err(Error::CarrierMismatch(
            "topologies do not match the function".into(),
        ));
    }
    Ok(())
}

fn preimage_at(f: &CondFunction, atom: usize, s: PointSet) -> PointSet {
    PointSet::from_indices(
        f.table(atom)
            .iter()
            .enumerate()
            .filter(|(_, v)| s.contains(**v))
            .map(|(k, _)| k as u32),
    )
}

/// The first atom where `f` is not classically continuous.
pub fn continuity_witness(
    f: &CondFunction,
    dom: &CondTopology,
    cod: &CondTopology,
) -> Result<Option<usize>> {
    check_function(f, dom, cod)?;
    Ok((0..dom.space.algebra().len()).find(|&i| {
        cod.opens[i]
            .iter()
            .any(|o| !dom.is_open_at(i, preimage_at(f, i, *o)))
    }))
}

pub fn is_continuous(f: &CondFunction, dom: &CondTopology, cod: &CondTopology) -> Result<bool> {
    Ok(continuity_witness(f, dom, cod)?.is_none())
}

/// `f⁻¹(O)` is open for every conditionally open `O`.
pub fn is_continuous_by_preimages(
    f: &CondFunction,
    dom: &CondTopology,
    cod: &CondTopology,
) -> Result<bool> {
    check_function(f, dom, cod)?;
    for o in cod.open_sets() {
        if !dom.is_open(&f.preimage(&o)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The weakest topology on `space` making every map continuous.
pub fn initial_topology(
    space: &CondSet,
    maps: &[CondFunction],
    tops: &[CondTopology],
) -> Result<CondTopology> {
    if maps.len() != tops.len() {
        return Err(Error::CarrierMismatch(
            "one topology per map required".into(),
        ));
    }
    let mut subbase = vec![Vec::new(); space.algebra().len()];
    for (f, t) in maps.iter().zip(tops) {
        if f.domain() != space || f.codomain() != &t.space {
            return Err(Error::CarrierMismatch(
                "map does not match its topology".into(),
            ));
        }
        for (i, sb) in subbase.iter_mut().enumerate() {
            sb.extend(t.opens[i].iter().map(|o| preimage_at(f, i, *o)));
        }
    }
    CondTopology::generated(space, &subbase)
}

/// The product topology on a product built by [`CondSet::product`], from
/// open rectangles.
pub fn product_topology(product: &CondSet, factors: &[CondTopology]) -> Result<CondTopology> {
    let alg = product.algebra();
    let mut base = Vec::with_capacity(alg.len());
    for i in 0..alg.len() {
        let mut coords: Vec<Vec<u32>> = Vec::with_capacity(product.carrier_len(i));
        for v in product.carrier(i) {
            let Value::Tuple(vs) = v else {
                return Err(Error::CarrierMismatch("not a product carrier".into()));
            };
            if vs.len() != factors.len() {
                return Err(Error::CarrierMismatch("factor count differs".into()));
            }
            let c = vs
                .iter()
                .zip(factors)
                .map(|(w, t)| t.space.index_of(i, w))
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| Error::CarrierMismatch("component outside its factor".into()))?;
            coords.push(c);
        }
        let mut rects: Vec<Vec<PointSet>> = vec![Vec::new()];
        for t in factors {
            let mut next = Vec::new();
            for prefix in &rects {
                for o in &t.opens[i] {
                    let mut p = prefix.clone();
                    p.push(*o);
                    next.push(p);
                }
            }
            rects = next;
        }
        let sets: Vec<PointSet> = rects
            .iter()
            .map(|r| {
                PointSet::from_indices(
                    coords
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| c.iter().zip(r).all(|(k, o)| o.contains(*k)))
                        .map(|(p, _)| p as u32),
                )
            })
            .collect();
        base.push(sets);
    }
    CondTopology::generated(product, &base)
}

/// The relative topology on `Y ∈ S(X)`: initial for the embedding.
pub fn relative_topology(t: &CondTopology, y: &CondSubset) -> Result<CondTopology> {
    let emb = CondFunction::embedding(y)?;
    initial_topology(
        emb.domain(),
        std::slice::from_ref(&emb),
        std::slice::from_ref(t),
    )
}

/// A stitched finite subcover `X ⊑ ∑ a_i ⊔_{j ∈ J^i} O^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StitchedSubcover {
    pub partition: Partition,
    pub index_sets: Vec<Vec<usize>>,
    /// `n = ∑ a_i |J^i|`.
    pub count: CondNat,
}

impl StitchedSubcover {
    /// `∑ a_i ⊔_{j ∈ J^i} O^j`.
    pub fn covered(&self, space: &CondSet, cover: &[CondSubset]) -> Result<CondSubset> {
        let mut picks = Vec::with_capacity(self.partition.len());
        for (a, js) in self.partition.parts().iter().zip(&self.index_sets) {
            let fam: Vec<CondSubset> = js.iter().map(|&j| cover[j].clone()).collect();
            picks.push(cond_union(space, &fam)?.restrict(a));
        }
        CondSubset::glue(&self.partition, &picks)
    }
}

/// Greedy first-fit subcover per atom, stitched over atoms with equal choices.
pub fn find_finite_subcover(t: &CondTopology, cover: &[CondSubset]) -> Result<StitchedSubcover> {
    let space = &t.space;
    let alg = space.algebra();
    if let Some(o) = cover.iter().find(|o| !t.is_open(o)) {
        return Err(Error::Invalid(format!("{o} is not open")));
    }
    let mut chosen = Vec::with_capacity(alg.len());
    let mut missing = Vec::new();
    for i in 0..alg.len() {
        let full = space.full(i);
        let mut got = PointSet::EMPTY;
        let mut js = Vec::new();
        for (j, o) in cover.iter().enumerate() {
            if let Some(s) = o.slice(i) {
                if !s.is_subset(got) {
                    got = got.union(s);
                    js.push(j);
                }
            }
            if got == full {
                break;
            }
        }
        if got != full {
            missing.push(i);
        }
        chosen.push(js);
    }
    if !missing.is_empty() {
        return Err(Error::NotACover(alg.condition(missing)));
    }
    let (partition, index_sets) = stitch_by_key(&alg.one(), |i| chosen[i].clone());
    let count = CondNat::nat(
        alg,
        chosen.iter().map(|js| js.len().max(1) as u64).collect(),
    )?;
    Ok(StitchedSubcover {
        partition,
        index_sets,
        count,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Compactness {
    /// Open covers have stitched finite subcovers.
    Cover,
    /// Closed families with the finite intersection property meet.
    Fip,
    /// Every conditional ultrafilter converges.
    Ultrafilter,
}

pub const COMPACTNESS_ROUTES: [Compactness; 3] = [
    Compactness::Cover,
    Compactness::Fip,
    Compactness::Ultrafilter,
];

/// Larger topologies use a pool of point closures and neighborhood
/// complements of this size for the FIP route.
const FIP_TRIPLES_MAX: usize = 40;

/// Larger topologies skip the cover by all open sets.
const ALL_OPENS_MAX: usize = 2048;

/// Decides compactness of a finite space along one route.
///
/// Covers: the covers by smallest neighborhoods, by open sets living on one
/// atom, and (when small enough) by all open sets must have subcovers that
/// reproduce `X`. FIP: every family of at most three closed sets living on 1
/// whose subfamily meets all live on 1 has a meet living on 1. Ultrafilters:
/// each enumerated ultrafilter converges to some element of `X_1`.
pub fn is_compact(t: &CondTopology, which: Compactness) -> Result<bool> {
    let space = &t.space;
    match which {
        Compactness::Cover => {
            let nbhds: Vec<CondSubset> =
                space.elements().iter().map(|x| t.neighborhood(x)).collect();
            let mut covers = vec![nbhds, t.atomwise_opens()];
            if t.open_set_count() <= ALL_OPENS_MAX {
                covers.push(t.open_sets());
            }
            for cover in covers {
                match find_finite_subcover(t, &cover) {
                    Ok(sc) => {
                        if !subset_leq(&space.whole(), &sc.covered(space, &cover)?)? {
                            return Ok(false);
                        }
                    }
                    Err(Error::NotACover(_)) => return Ok(false),
                    Err(e) => return Err(e),
                }
            }
            Ok(true)
        }
        Compactness::Fip => {
            let closed: Vec<CondSubset> = if t.open_set_count() <= FIP_TRIPLES_MAX {
                t.closed_sets()
                    .into_iter()
                    .filter(|c| c.lives_on_one())
                    .collect()
            } else {
                let mut pool = BTreeSet::new();
                for x in space.elements() {
                    pool.insert(t.closure(&x.as_subset())?);
                    let n = cond_complement(&t.neighborhood(&x));
                    if n.lives_on_one() {
                        pool.insert(n);
                    }
                }
                pool.into_iter().take(FIP_TRIPLES_MAX).collect()
            };
            let meet = |fam: &[&CondSubset]| -> CondSubset {
                let v: Vec<CondSubset> = fam.iter().map(|c| (*c).clone()).collect();
                cond_intersection(space, &v).expect("same space")
            };
            // A family has the finite intersection property when the meet of
            // every non-empty subfamily lives on 1.
            let fip = |fam: &[&CondSubset]| -> bool {
                (1..1usize << fam.len()).all(|m| {
                    let sub: Vec<&CondSubset> = (0..fam.len())
                        .filter(|j| m >> j & 1 == 1)
                        .map(|j| fam[j])
                        .collect();
                    meet(&sub).lives_on_one()
                })
            };
            for (a, ca) in closed.iter().enumerate() {
                for (b, cb) in closed.iter().enumerate().skip(a) {
                    for cc in closed.iter().skip(b) {
                        let fam = [ca, cb, cc];
                        if fip(&fam) && !meet(&fam).lives_on_one() {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        }
        Compactness::Ultrafilter => {
            let xs = space.elements();
            Ok(CondFilter::all_ultrafilters(space)
                .iter()
                .all(|u| xs.iter().any(|x| t.converges(u, x))))
        }
    }
}

/// A point of the symbolic space left uncovered by a finite subfamily.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoSubcoverWitness {
    pub atom: String,
    /// Members `{1}, …, {bound}` of the singleton cover were tried.
    pub bound: u64,
    /// The natural number none of them covers.
    pub uncovered: u64,
}

/// Conditional `𝐍` with the discrete topology, optionally times a finite
/// factor. Compactness is decided by the fact that a discrete space is
/// compact iff it is conditionally finite.
#[derive(Clone, Debug)]
pub struct NatDiscrete {
    alg: Algebra,
    factor: Option<CondTopology>,
}

impl NatDiscrete {
    pub fn new(alg: &Algebra) -> Self {
        NatDiscrete {
            alg: alg.clone(),
            factor: None,
        }
    }

    pub fn with_factor(factor: &CondTopology) -> Self {
        NatDiscrete {
            alg: factor.space.algebra().clone(),
            factor: Some(factor.clone()),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    /// Whether `{1..bound} × F` contains `(n, ·)`.
    fn covered_by_prefix(bound: u64, n: u64) -> bool {
        (1..=bound).any(|m| m == n)
    }

    /// Runs first-fit through the cover `{{n} × F : n ∈ 𝐍}` for `budget`
    /// members and reports the first natural number still uncovered.
    pub fn find_finite_subcover(&self, budget: u64) -> NoSubcoverWitness {
        let uncovered = (1..=budget + 1)
            .find(|&n| !Self::covered_by_prefix(budget, n))
            .expect("budget + 1 is never covered");
        NoSubcoverWitness {
            atom: self.alg.atom_name(0).to_string(),
            bound: budget,
            uncovered,
        }
    }

    /// The closed tails `F^n = {m ≥ n}` have the finite intersection
    /// property: the tails in `tried` all contain `max(tried)`. The tail
    /// starting one later excludes that point, so no point lies in every tail.
    pub fn tail_family_witness(&self, tried: &[u64]) -> (u64, u64) {
        let common = tried.iter().copied().max().unwrap_or(1);
        (common, common + 1)
    }

    pub fn is_compact(&self, _which: Compactness) -> bool {
        false
    }

    pub fn factor(&self) -> Option<&CondTopology> {
        self.factor.as_ref()
    }
}

/// A space accepted by the Tychonoff harness.
#[derive(Clone, Debug)]
pub enum Space {
    Finite(CondTopology),
    Nat(NatDiscrete),
}

impl Space {
    pub fn is_compact(&self, which: Compactness) -> Result<bool> {
        match self {
            Space::Finite(t) => is_compact(t, which),
            Space::Nat(n) => Ok(n.is_compact(which)),
        }
    }
}

/// Builds the product space: the product topology of finite factors, or the
/// symbolic discrete `𝐍` times the finite part when some factor is `𝐍`.
pub fn product_space(factors: &[Space]) -> Result<Space> {
    let finite: Vec<&CondTopology> = factors
        .iter()
        .filter_map(|f| match f {
            Space::Finite(t) => Some(t),
            Space::Nat(_) => None,
        })
        .collect();
    let finite_product = if finite.is_empty() {
        None
    } else {
        let sets: Vec<CondSet> = finite.iter().map(|t| t.space.clone()).collect();
        let prod = CondSet::product(&sets)?;
        let tops: Vec<CondTopology> = finite.iter().map(|t| (*t).clone()).collect();
        Some(product_topology(&prod, &tops)?)
    };
    let has_nat = factors.iter().any(|f| matches!(f, Space::Nat(_)));
    match (has_nat, finite_product) {
        (false, Some(t)) => Ok(Space::Finite(t)),
        (true, Some(t)) => Ok(Space::Nat(NatDiscrete::with_factor(&t))),
        (true, None) => {
            let alg = factors
                .iter()
                .find_map(|f| match f {
                    Space::Nat(n) => Some(n.alg.clone()),
                    Space::Finite(_) => None,
                })
                .expect("some factor is 𝐍");
            Ok(Space::Nat(NatDiscrete::new(&alg)))
        }
        (false, None) => Err(Error::EmptyFamily),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn sub(x: &CondSet, vals: &[Option<&[i64]>]) -> CondSubset {
        CondSubset::from_values(
            x,
            &vals
                .iter()
                .map(|vs| vs.map(|vs| vs.iter().map(|&v| Value::Int(v)).collect()))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn sierpinski(x: &CondSet) -> CondTopology {
        // Atom 0: {∅, {1}, X}; atom 1: discrete.
        let mut sub0 = vec![vec![PointSet::singleton(0)]];
        sub0.push(
            (0..x.carrier_len(1) as u32)
                .map(PointSet::singleton)
                .collect(),
        );
        CondTopology::generated(x, &sub0).unwrap()
    }

    #[test]
    fn base_examples() {
        let x = space(2, &[1, 2, 3]);
        let singles: Vec<CondSubset> = x.elements().iter().map(|e| e.as_subset()).collect();
        let b = CondTopoBase::new(&x, singles).unwrap();
        assert_eq!(topology_from_base(&b), CondTopology::discrete(&x).unwrap());
        let b = CondTopoBase::new(&x, vec![x.whole()]).unwrap();
        assert_eq!(
            topology_from_base(&b),
            CondTopology::indiscrete(&x).unwrap()
        );
        let bad = CondTopoBase::new(&x, vec![sub(&x, &[Some(&[1, 2]), Some(&[1])])]);
        assert!(matches!(bad, Err(Error::InvalidBase(_))));
    }

    #[test]
    fn mixed_base_matches_union_closure() {
        let x = space(2, &[1, 2]);
        let gens = vec![
            sub(&x, &[Some(&[1]), Some(&[1, 2])]),
            sub(&x, &[Some(&[1, 2]), Some(&[2])]),
            x.whole(),
            sub(&x, &[Some(&[1, 2]), Some(&[1])]),
        ];
        assert!(is_base_conditional(&x, &gens));
        let b = CondTopoBase::new(&x, gens).unwrap();
        let t = topology_from_base(&b);
        let opens: BTreeSet<CondSubset> = t.open_sets().into_iter().collect();
        assert_eq!(opens, basis_opens_brute_force(&b));
    }

    #[test]
    fn interior_closure_examples() {
        let x = space(2, &[1, 2, 3]);
        let d = CondTopology::discrete(&x).unwrap();
        let i = CondTopology::indiscrete(&x).unwrap();
        assert_eq!(d.interior(&x.whole()).unwrap(), x.whole());
        assert_eq!(d.closure(&x.empty()).unwrap(), x.empty());
        let y = sub(&x, &[Some(&[1]), Some(&[2, 3])]);
        assert_eq!(d.interior(&y).unwrap(), y);
        assert_eq!(d.closure(&y).unwrap(), y);
        assert!(i.interior(&y).unwrap().is_empty());
        assert_eq!(i.closure(&y).unwrap(), x.whole());
        let s = sierpinski(&x);
        assert_eq!(s.interior(&y).unwrap(), y);
        assert!(s
            .interior(&sub(&x, &[Some(&[2]), Some(&[2])]))
            .unwrap()
            .slice(0)
            .is_none());
        for y in x.all_subsets() {
            assert_eq!(s.interior(&y).unwrap(), s.interior_by_union(&y).unwrap());
            assert_eq!(s.closure(&y).unwrap(), s.closure_by_meet(&y).unwrap());
        }
    }

    #[test]
    fn continuity_examples() {
        let x = space(2, &[1, 2, 3]);
        let s = sierpinski(&x);
        let id = CondFunction::identity(&x);
        assert!(is_continuous(&id, &s, &s).unwrap());
        let i = CondTopology::indiscrete(&x).unwrap();
        let swap = CondFunction::new(&x, &x, vec![vec![1, 0, 2], vec![0, 1, 2]]).unwrap();
        assert!(is_continuous(&swap, &s, &i).unwrap());
        assert_eq!(continuity_witness(&swap, &s, &s).unwrap(), Some(0));
        assert!(!is_continuous_by_preimages(&swap, &s, &s).unwrap());
    }

    #[test]
    fn product_examples() {
        let x = space(2, &[1, 2]);
        let d = CondTopology::discrete(&x).unwrap();
        let prod = CondSet::product(&[x.clone(), x.clone()]).unwrap();
        assert_eq!(
            product_topology(&prod, &[d.clone(), d.clone()]).unwrap(),
            CondTopology::discrete(&prod).unwrap()
        );
        let s = sierpinski(&x);
        let pi0 = CondFunction::projection(&prod, &[x.clone(), x.clone()], 0).unwrap();
        let pi1 = CondFunction::projection(&prod, &[x.clone(), x.clone()], 1).unwrap();
        let init = initial_topology(&prod, &[pi0, pi1], &[s.clone(), d.clone()]).unwrap();
        assert_eq!(product_topology(&prod, &[s.clone(), d]).unwrap(), init);
        let single =
            initial_topology(&x, &[CondFunction::identity(&x)], std::slice::from_ref(&s)).unwrap();
        assert_eq!(single, s);
    }

    #[test]
    fn limits_examples() {
        let x = space(2, &[1, 2, 3]);
        let d = CondTopology::discrete(&x).unwrap();
        let e = el(&x, &[2, 3]);
        let u = CondFilter::principal_at(&e).unwrap();
        assert_eq!(d.limit_set(&u).unwrap(), e.as_subset());
        assert!(d.converges(&u, &e));
        let i = CondTopology::indiscrete(&x).unwrap();
        assert_eq!(i.limit_set(&u).unwrap(), x.whole());
        let s = sierpinski(&x);
        for f in CondFilter::all_filters(&x).iter().step_by(7) {
            assert_eq!(s.limit_set(f).unwrap(), s.cluster_points(f));
            for y in x.elements() {
                assert_eq!(s.converges(f, &y), s.converges_brute_force(f, &y));
            }
        }
    }

    #[test]
    fn subcover_examples() {
        let x = space(2, &[1, 2, 3]);
        let d = CondTopology::discrete(&x).unwrap();
        let sc = find_finite_subcover(&d, &[x.whole()]).unwrap();
        assert_eq!(sc.partition.len(), 1);
        let singles: Vec<CondSubset> = (1..=3)
            .map(|v| sub(&x, &[Some(&[v]), Some(&[v])]))
            .collect();
        let sc = find_finite_subcover(&d, &singles).unwrap();
        assert_eq!(sc.count, CondNat::constant(x.algebra(), 3));
        let cover = vec![
            sub(&x, &[Some(&[1, 2, 3]), Some(&[1])]),
            sub(&x, &[Some(&[1]), Some(&[2, 3])]),
        ];
        let sc = find_finite_subcover(&d, &cover).unwrap();
        assert_eq!(sc.partition.len(), 2);
        assert_eq!(sc.index_sets, vec![vec![0], vec![0, 1]]);
        assert_eq!(sc.covered(&x, &cover).unwrap(), x.whole());
        assert!(matches!(
            find_finite_subcover(&d, &cover[1..]),
            Err(Error::NotACover(c)) if c.is_one()
        ));
    }

    #[test]
    fn compactness_and_nat() {
        let x = space(2, &[1, 2]);
        let s = sierpinski(&x);
        for w in COMPACTNESS_ROUTES {
            assert!(is_compact(&s, w).unwrap());
        }
        let n = NatDiscrete::new(x.algebra());
        let w = n.find_finite_subcover(10);
        assert_eq!(w.uncovered, 11);
        assert_eq!(n.tail_family_witness(&[3, 7]), (7, 8));
        let prod = product_space(&[Space::Finite(s.clone()), Space::Nat(n)]).unwrap();
        assert!(!prod.is_compact(Compactness::Cover).unwrap());
        let fin = product_space(&[Space::Finite(s.clone()), Space::Finite(s)]).unwrap();
        assert!(fin.is_compact(Compactness::Ultrafilter).unwrap());
    }

    #[test]
    fn hausdorff_localized() {
        let alg = Algebra::numbered(2).unwrap();
        let x = CondSet::from_carriers(
            &alg,
            vec![vec![Value::Int(1)], vec![Value::Int(1), Value::Int(2)]],
        )
        .unwrap();
        let i = CondTopology::indiscrete(&x).unwrap();
        assert!(!i.is_hausdorff());
        assert!(!i.is_hausdorff_by_separation());
        // With a singleton carrier no pair living on 1 is apart.
        assert!(i.is_hausdorff_on_one());
        let d = CondTopology::discrete(&x).unwrap();
        assert!(d.is_hausdorff() && d.is_hausdorff_by_separation());
    }
}
