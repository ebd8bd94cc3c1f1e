//! Conditional functions, relations and orders.
//!
//! A [`CondFunction`] is a total classical map per atom; gluing is automatic
//! because application works atom by atom on the argument's support.

use std::collections::BTreeSet;
use std::fmt;

use crate::boolalg::{stitch_by_key, Condition, Partition, Trichotomy};
use crate::condnum::CondNat;
use crate::condset::{cond_union, CondElement, CondSet, CondSubset, Local, PointSet, Value};
use crate::error::{Error, Result};

/// A conditional function `X → Y`.
#[derive(Clone, PartialEq, Eq)]
pub struct CondFunction {
    domain: CondSet,
    codomain: CondSet,
    table: Vec<Vec<u32>>,
}

impl fmt::Debug for CondFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alg = self.domain.algebra();
        let mut m = f.debug_map();
        for (i, t) in self.table.iter().enumerate() {
            let pairs: Vec<String> = t
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    format!(
                        "{}→{}",
                        self.domain.carrier(i)[k],
                        self.codomain.carrier(i)[*v as usize]
                    )
                })
                .collect();
            m.entry(&alg.atom_name(i), &pairs);
        }
        m.finish()
    }
}

impl CondFunction {
    /// Per-atom tables of codomain indices, one entry per domain index.
    pub fn new(domain: &CondSet, codomain: &CondSet, table: Vec<Vec<u32>>) -> Result<Self> {
        if domain.algebra() != codomain.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        if table.len() != domain.algebra().len() {
            return Err(Error::CarrierMismatch("one table per atom required".into()));
        }
        for (i, t) in table.iter().enumerate() {
            if t.len() != domain.carrier_len(i) {
                return Err(Error::CarrierMismatch(format!(
                    "table at `{}` is not total",
                    domain.algebra().atom_name(i)
                )));
            }
            if t.iter().any(|&v| v as usize >= codomain.carrier_len(i)) {
                return Err(Error::CarrierMismatch(format!(
                    "table at `{}` leaves the codomain",
                    domain.algebra().atom_name(i)
                )));
            }
        }
        Ok(CondFunction {
            domain: domain.clone(),
            codomain: codomain.clone(),
            table,
        })
    }

    /// Per-atom maps given on values.
    pub fn from_fn(
        domain: &CondSet,
        codomain: &CondSet,
        f: impl Fn(usize, &Value) -> Value,
    ) -> Result<Self> {
        let mut table = Vec::with_capacity(domain.algebra().len());
        for i in 0..domain.algebra().len() {
            let mut t = Vec::with_capacity(domain.carrier_len(i));
            for v in domain.carrier(i) {
                let w = f(i, v);
                t.push(codomain.index_of(i, &w).ok_or_else(|| {
                    Error::CarrierMismatch(format!("{w} is not in the codomain"))
                })?);
            }
            table.push(t);
        }
        Self::new(domain, codomain, table)
    }

    /// The function generated by one classical map applied at every atom.
    pub fn generated(
        domain: &CondSet,
        codomain: &CondSet,
        f: impl Fn(&Value) -> Value,
    ) -> Result<Self> {
        Self::from_fn(domain, codomain, |_, v| f(v))
    }

    pub fn identity(set: &CondSet) -> Self {
        let table = (0..set.algebra().len())
            .map(|i| (0..set.carrier_len(i) as u32).collect())
            .collect();
        CondFunction {
            domain: set.clone(),
            codomain: set.clone(),
            table,
        }
    }

    /// The constant map with value `c`, which must live on 1.
    pub fn constant(domain: &CondSet, c: &CondElement) -> Result<Self> {
        if !c.lives_on_one() {
            return Err(Error::SupportMismatch("constant must live on 1".into()));
        }
        let table = (0..domain.algebra().len())
            .map(|i| vec![c.index(i).unwrap(); domain.carrier_len(i)])
            .collect();
        Self::new(domain, c.set(), table)
    }

    /// The `j`-th projection of a product built by [`CondSet::product`].
    pub fn projection(product: &CondSet, factors: &[CondSet], j: usize) -> Result<Self> {
        let target = factors
            .get(j)
            .ok_or_else(|| Error::CarrierMismatch(format!("no factor {j}")))?;
        Self::from_fn(product, target, |_, v| match v {
            Value::Tuple(vs) => vs.get(j).cloned().unwrap_or(Value::Int(i64::MIN)),
            other => other.clone(),
        })
    }

    /// The inclusion of `Y ∈ S(X)` into `X`, with `Y` seen as a conditional set.
    pub fn embedding(y: &CondSubset) -> Result<Self> {
        let dom = y.as_condset()?;
        Self::from_fn(&dom, y.set(), |_, v| v.clone())
    }

    /// `f^Z`: the restriction of `f` to `Z ∈ S(X)`.
    pub fn restriction(&self, z: &CondSubset) -> Result<Self> {
        if *z.set() != self.domain {
            return Err(Error::ParentMismatch);
        }
        Self::embedding(z)?.then(self)
    }

    pub fn domain(&self) -> &CondSet {
        &self.domain
    }

    pub fn codomain(&self) -> &CondSet {
        &self.codomain
    }

    pub fn table(&self, atom: usize) -> &[u32] {
        &self.table[atom]
    }

    /// `f(x)`, computed on the support of `x`.
    pub fn apply(&self, x: &CondElement) -> Result<CondElement> {
        if *x.set() != self.domain {
            return Err(Error::ParentMismatch);
        }
        let idx = x
            .indices()
            .iter()
            .enumerate()
            .map(|(i, k)| k.map(|k| self.table[i][k as usize]))
            .collect();
        CondElement::new(&self.codomain, idx)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &CondFunction) -> Result<CondFunction> {
        if self.codomain != g.domain {
            return Err(Error::CarrierMismatch("codomain and domain differ".into()));
        }
        let table = self
            .table
            .iter()
            .zip(&g.table)
            .map(|(f, g)| f.iter().map(|&v| g[v as usize]).collect())
            .collect();
        Ok(CondFunction {
            domain: self.domain.clone(),
            codomain: g.codomain.clone(),
            table,
        })
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &CondFunction) -> Result<CondFunction> {
        g.then(self)
    }

    fn image_at(&self, i: usize, s: PointSet) -> PointSet {
        PointSet::from_indices(s.iter().map(|k| self.table[i][k as usize]))
    }

    fn preimage_at(&self, i: usize, s: PointSet) -> PointSet {
        PointSet::from_indices(
            self.table[i]
                .iter()
                .enumerate()
                .filter(|(_, v)| s.contains(**v))
                .map(|(k, _)| k as u32),
        )
    }

    /// `f(U)`, living on the support of `U`.
    pub fn image(&self, u: &CondSubset) -> Result<CondSubset> {
        if *u.set() != self.domain {
            return Err(Error::ParentMismatch);
        }
        Ok(CondSubset::from_fn(&self.codomain, |i| {
            u.slice(i).map(|s| self.image_at(i, s))
        }))
    }

    /// `f⁻¹(V)`, living on `b★`.
    pub fn preimage(&self, v: &CondSubset) -> Result<CondSubset> {
        if *v.set() != self.codomain {
            return Err(Error::ParentMismatch);
        }
        Ok(CondSubset::from_fn(&self.domain, |i| {
            v.slice(i).map(|s| self.preimage_at(i, s))
        }))
    }

    pub fn is_injective(&self) -> bool {
        self.table.iter().enumerate().all(|(i, t)| {
            PointSet::from_indices(t.iter().copied()).len() == self.domain.carrier_len(i)
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.table
            .iter()
            .enumerate()
            .all(|(i, t)| PointSet::from_indices(t.iter().copied()) == self.codomain.full(i))
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Surjectivity of the primal map `f_1: X_1 → Y_1`, by enumeration.
    pub fn is_primal_surjective(&self) -> bool {
        let hit: BTreeSet<CondElement> = self
            .domain
            .elements()
            .iter()
            .map(|x| self.apply(x).expect("same domain"))
            .collect();
        hit.len() == self.codomain.count_on(&self.codomain.algebra().one())
    }

    /// Atoms where the per-atom map is not injective.
    pub fn non_injective_atoms(&self) -> Condition {
        let alg = self.domain.algebra();
        alg.condition((0..alg.len()).filter(|&i| {
            PointSet::from_indices(self.table[i].iter().copied()).len()
                != self.domain.carrier_len(i)
        }))
    }

    pub fn inverse(&self) -> Option<CondFunction> {
        if !self.is_bijective() {
            return None;
        }
        let table = self
            .table
            .iter()
            .map(|t| {
                let mut inv = vec![0u32; t.len()];
                for (k, &v) in t.iter().enumerate() {
                    inv[v as usize] = k as u32;
                }
                inv
            })
            .collect();
        Some(CondFunction {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            table,
        })
    }
}

/// A conditional binary relation `R ⊑ X × Y` as per-atom pair sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondRelation {
    left: CondSet,
    right: CondSet,
    slices: Vec<Option<BTreeSet<(u32, u32)>>>,
}

impl CondRelation {
    pub fn new(
        left: &CondSet,
        right: &CondSet,
        slices: Vec<Option<BTreeSet<(u32, u32)>>>,
    ) -> Result<Self> {
        if left.algebra() != right.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        if slices.len() != left.algebra().len() {
            return Err(Error::CarrierMismatch(
                "one relation per atom required".into(),
            ));
        }
        for (i, s) in slices.iter().enumerate() {
            if let Some(s) = s {
                if s.is_empty() {
                    return Err(Error::Invalid(
                        "relations are non-empty on the support".into(),
                    ));
                }
                if s.iter().any(|&(a, b)| {
                    a as usize >= left.carrier_len(i) || b as usize >= right.carrier_len(i)
                }) {
                    return Err(Error::CarrierMismatch("pair outside the carriers".into()));
                }
            }
        }
        Ok(CondRelation {
            left: left.clone(),
            right: right.clone(),
            slices,
        })
    }

    pub fn support(&self) -> Condition {
        self.left.algebra().condition(
            self.slices
                .iter()
                .enumerate()
                .filter_map(|(i, s)| s.as_ref().map(|_| i)),
        )
    }

    pub fn holds_at(&self, atom: usize, a: u32, b: u32) -> bool {
        self.slices[atom]
            .as_ref()
            .is_some_and(|s| s.contains(&(a, b)))
    }

    /// The graph of a function.
    pub fn graph(f: &CondFunction) -> Self {
        CondRelation {
            left: f.domain.clone(),
            right: f.codomain.clone(),
            slices: f
                .table
                .iter()
                .map(|t| Some(t.iter().enumerate().map(|(k, &v)| (k as u32, v)).collect()))
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Partial,
    Total,
}

/// A conditional partial or total order on `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondOrder {
    relation: CondRelation,
    kind: OrderKind,
}

impl CondOrder {
    /// Validates reflexivity, antisymmetry and transitivity per atom, and
    /// totality for [`OrderKind::Total`].
    pub fn new(relation: CondRelation, kind: OrderKind) -> Result<Self> {
        let x = &relation.left;
        if relation.left != relation.right {
            return Err(Error::NotAnOrder("an order relates X with itself".into()));
        }
        if !relation.support().is_one() {
            return Err(Error::NotAnOrder("an order lives on 1".into()));
        }
        for i in 0..x.algebra().len() {
            let name = x.algebra().atom_name(i);
            let n = x.carrier_len(i) as u32;
            let r = |a, b| relation.holds_at(i, a, b);
            for a in 0..n {
                if !r(a, a) {
                    return Err(Error::NotAnOrder(format!("not reflexive at `{name}`")));
                }
                for b in 0..n {
                    if a != b && r(a, b) && r(b, a) {
                        return Err(Error::NotAnOrder(format!("not antisymmetric at `{name}`")));
                    }
                    if kind == OrderKind::Total && !r(a, b) && !r(b, a) {
                        return Err(Error::NotTotal(name.to_string()));
                    }
                    for c in 0..n {
                        if r(a, b) && r(b, c) && !r(a, c) {
                            return Err(Error::NotAnOrder(format!("not transitive at `{name}`")));
                        }
                    }
                }
            }
        }
        Ok(CondOrder { relation, kind })
    }

    /// The order generated by a classical order on values.
    pub fn generated(
        set: &CondSet,
        le: impl Fn(&Value, &Value) -> bool,
        kind: OrderKind,
    ) -> Result<Self> {
        let slices = (0..set.algebra().len())
            .map(|i| {
                let c = set.carrier(i);
                let mut s = BTreeSet::new();
                for (a, va) in c.iter().enumerate() {
                    for (b, vb) in c.iter().enumerate() {
                        if le(va, vb) {
                            s.insert((a as u32, b as u32));
                        }
                    }
                }
                Some(s)
            })
            .collect();
        Self::new(CondRelation::new(set, set, slices)?, kind)
    }

    /// The total order generated by the natural order of values.
    pub fn natural(set: &CondSet) -> Result<Self> {
        Self::generated(set, |a, b| a <= b, OrderKind::Total)
    }

    pub fn set(&self) -> &CondSet {
        &self.relation.left
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn le_at(&self, atom: usize, a: u32, b: u32) -> bool {
        self.relation.holds_at(atom, a, b)
    }

    /// `x ≤ y` at every atom of the common support.
    pub fn leq(&self, x: &CondElement, y: &CondElement) -> bool {
        x.indices()
            .iter()
            .zip(y.indices())
            .enumerate()
            .all(|(i, (a, b))| match (a, b) {
                (Some(a), Some(b)) => self.le_at(i, *a, *b),
                _ => true,
            })
    }

    /// Whether the primal order on `X_1` is total, by enumeration.
    pub fn primal_is_total(&self) -> bool {
        let xs = self.set().elements();
        xs.iter()
            .all(|x| xs.iter().all(|y| self.leq(x, y) || self.leq(y, x)))
    }

    /// A pair of elements of `X_1` incomparable under the primal order.
    pub fn primal_incomparable_pair(&self) -> Option<(CondElement, CondElement)> {
        let xs = self.set().elements();
        for x in &xs {
            for y in &xs {
                if !self.leq(x, y) && !self.leq(y, x) {
                    return Some((x.clone(), y.clone()));
                }
            }
        }
        None
    }

    /// The partition of 1 on which `x < y`, `y < x` and `x = y`.
    pub fn compare_total(&self, x: &CondElement, y: &CondElement) -> Result<Trichotomy> {
        if self.kind != OrderKind::Total {
            let alg = self.set().algebra();
            return Err(Error::NotTotal(alg.atom_name(0).to_string()));
        }
        if x.set() != self.set() || y.set() != self.set() {
            return Err(Error::ParentMismatch);
        }
        if !x.lives_on_one() || !y.lives_on_one() {
            return Err(Error::SupportMismatch("compared elements live on 1".into()));
        }
        let alg = self.set().algebra();
        let mut less = Vec::new();
        let mut greater = Vec::new();
        let mut equal = Vec::new();
        for i in 0..alg.len() {
            let (a, b) = (x.index(i).unwrap(), y.index(i).unwrap());
            if a == b {
                equal.push(i);
            } else if self.le_at(i, a, b) {
                less.push(i);
            } else {
                greater.push(i);
            }
        }
        Ok(Trichotomy {
            less: alg.condition(less),
            greater: alg.condition(greater),
            equal: alg.condition(equal),
        })
    }

    fn extreme_at(&self, i: usize, s: PointSet, upper: bool) -> Option<u32> {
        let n = self.set().carrier_len(i) as u32;
        let bounds: Vec<u32> = (0..n)
            .filter(|&b| {
                s.iter().all(|y| {
                    if upper {
                        self.le_at(i, y, b)
                    } else {
                        self.le_at(i, b, y)
                    }
                })
            })
            .collect();
        bounds.iter().copied().find(|&b| {
            bounds.iter().all(|&c| {
                if upper {
                    self.le_at(i, b, c)
                } else {
                    self.le_at(i, c, b)
                }
            })
        })
    }

    fn extreme(&self, y: &CondSubset, upper: bool) -> Result<CondElement> {
        if y.set() != self.set() {
            return Err(Error::ParentMismatch);
        }
        if !y.lives_on_one() {
            return Err(Error::SupportMismatch("subset must live on 1".into()));
        }
        let alg = self.set().algebra();
        let mut idx = Vec::with_capacity(alg.len());
        for i in 0..alg.len() {
            let e = self
                .extreme_at(i, y.slice(i).unwrap(), upper)
                .ok_or_else(|| Error::NoBound(alg.atom_name(i).to_string()))?;
            idx.push(Some(e));
        }
        CondElement::new(self.set(), idx)
    }

    /// Least upper bound, atom by atom.
    pub fn cond_sup(&self, y: &CondSubset) -> Result<CondElement> {
        self.extreme(y, true)
    }

    /// Greatest lower bound, atom by atom.
    pub fn cond_inf(&self, y: &CondSubset) -> Result<CondElement> {
        self.extreme(y, false)
    }

    /// Some upper and some lower bound, when both exist at every atom.
    pub fn cond_bounds(&self, y: &CondSubset) -> Option<(CondElement, CondElement)> {
        let alg = self.set().algebra();
        let pick = |upper: bool| -> Option<CondElement> {
            let mut idx = Vec::with_capacity(alg.len());
            for i in 0..alg.len() {
                let s = y.slice(i)?;
                let n = self.set().carrier_len(i) as u32;
                let b = (0..n).find(|&b| {
                    s.iter().all(|v| {
                        if upper {
                            self.le_at(i, v, b)
                        } else {
                            self.le_at(i, b, v)
                        }
                    })
                })?;
                idx.push(Some(b));
            }
            CondElement::new(self.set(), idx).ok()
        };
        Some((pick(true)?, pick(false)?))
    }
}

/// `n` with `n_ω = |Y_ω|`.
pub fn cond_card(y: &CondSubset) -> Result<CondNat> {
    if !y.lives_on_one() {
        return Err(Error::SupportMismatch("subset must live on 1".into()));
    }
    let alg = y.set().algebra();
    CondNat::nat(
        alg,
        (0..alg.len())
            .map(|i| y.slice(i).unwrap().len() as u64)
            .collect(),
    )
}

/// A conditional bijection from `Y` onto `{1 ≤ l ≤ n}`, `n = cond_card(Y)`,
/// numbering each slice in carrier order.
pub fn cond_finite_bijection(y: &CondSubset) -> Result<CondFunction> {
    let n = cond_card(y)?;
    let dom = y.as_condset()?;
    let cod = n.interval_set()?;
    let table = (0..dom.algebra().len())
        .map(|i| (0..dom.carrier_len(i) as u32).collect())
        .collect();
    CondFunction::new(&dom, &cod, table)
}

/// A conditional family `(Y^i)_{i ∈ I}` of subsets of `X` living on 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamily {
    index: CondSet,
    space: CondSet,
    members: Vec<Vec<PointSet>>,
}

impl SubsetFamily {
    /// `members[ω][i]` is the non-empty slice of `Y^i` at atom `ω`.
    pub fn new(index: &CondSet, space: &CondSet, members: Vec<Vec<PointSet>>) -> Result<Self> {
        if index.algebra() != space.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        if members.len() != index.algebra().len() {
            return Err(Error::CarrierMismatch("one row per atom required".into()));
        }
        for (w, row) in members.iter().enumerate() {
            if row.len() != index.carrier_len(w) {
                return Err(Error::CarrierMismatch(
                    "one member per index value required".into(),
                ));
            }
            if row
                .iter()
                .any(|s| s.is_empty() || !s.is_subset(space.full(w)))
            {
                return Err(Error::Invalid("members must be non-empty subsets".into()));
            }
        }
        Ok(SubsetFamily {
            index: index.clone(),
            space: space.clone(),
            members,
        })
    }

    pub fn index(&self) -> &CondSet {
        &self.index
    }

    pub fn space(&self) -> &CondSet {
        &self.space
    }

    /// `Y^i` for an index element, living on the support of `i`.
    pub fn member(&self, i: &CondElement) -> Result<CondSubset> {
        if *i.set() != self.index {
            return Err(Error::ParentMismatch);
        }
        Ok(CondSubset::from_fn(&self.space, |w| {
            i.index(w).map(|k| self.members[w][k as usize])
        }))
    }

    /// `⊔_{i ∈ I} Y^i`.
    pub fn union(&self) -> CondSubset {
        CondSubset::from_fn(&self.space, |w| {
            Some(
                self.members[w]
                    .iter()
                    .fold(PointSet::EMPTY, |a, s| a.union(*s)),
            )
        })
    }

    /// `⊓_{i ∈ I} Y^i`.
    pub fn intersection(&self) -> CondSubset {
        CondSubset::from_fn(&self.space, |w| {
            Some(
                self.members[w]
                    .iter()
                    .fold(self.space.full(w), |a, s| a.intersection(*s)),
            )
        })
    }
}

/// A conditional choice `(y^i)` with `y^i ∈ Y^i`, taking the least carrier
/// index at every atom.
pub fn choice(family: &SubsetFamily) -> CondFunction {
    let table = family
        .members
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| (*s).min().expect("non-empty member"))
                .collect()
        })
        .collect();
    CondFunction {
        domain: family.index.clone(),
        codomain: family.space.clone(),
        table,
    }
}

/// `⊔_{1 ≤ k ≤ n} Y^k` over a family indexed by `{1 ≤ k ≤ n}`, evaluated as
/// `∑ a_i ⊔_{k=1}^{n_i} Y^k` with `n = ∑ a_i n_i`.
pub fn stitched_finite_union(family: &SubsetFamily, n: &CondNat) -> Result<CondSubset> {
    if family.index != n.interval_set()? {
        return Err(Error::CarrierMismatch(
            "family is not indexed by {1..n}".into(),
        ));
    }
    let (partition, sizes) = n.stitched();
    let mut picks = Vec::with_capacity(partition.len());
    for (a, &ni) in partition.parts().iter().zip(&sizes) {
        let mut members = Vec::with_capacity(ni as usize);
        for k in 1..=ni as i64 {
            let idx = CondElement::from_values(
                &family.index,
                &(0..a.algebra().len())
                    .map(|w| a.contains_atom(w).then_some(Value::Int(k)))
                    .collect::<Vec<_>>(),
            )?;
            members.push(family.member(&idx)?);
        }
        picks.push(cond_union(&family.space, &members)?);
    }
    CondSubset::glue(&partition, &picks)
}

/// Groups atoms by per-atom cardinality, reproducing `n = ∑ a_i n_i`.
pub fn card_partition(y: &CondSubset) -> Result<(Partition, Vec<u64>)> {
    let n = cond_card(y)?;
    Ok(stitch_by_key(&n.support(), |i| *n.at(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::Algebra;

    fn ints(alg: &Algebra, vals: &[i64]) -> CondSet {
        CondSet::generate(
            &vals.iter().map(|&v| Value::Int(v)).collect::<Vec<_>>(),
            alg,
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

    fn sub(x: &CondSet, vals: &[&[i64]]) -> CondSubset {
        CondSubset::from_values(
            x,
            &vals
                .iter()
                .map(|vs| Some(vs.iter().map(|&v| Value::Int(v)).collect()))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn apply_and_projection() {
        let alg = Algebra::numbered(2).unwrap();
        let x = ints(&alg, &[1, 2]);
        let id = CondFunction::identity(&x);
        let e = el(&x, &[1, 2]);
        assert_eq!(id.apply(&e).unwrap(), e);
        let y = CondSet::generate(&["p".into(), "q".into()], &alg).unwrap();
        let prod = CondSet::product(&[x.clone(), y.clone()]).unwrap();
        let pi = CondFunction::projection(&prod, &[x.clone(), y], 0).unwrap();
        let pair = CondElement::from_values(
            &prod,
            &[
                Some(Value::Tuple(vec![1.into(), "q".into()])),
                Some(Value::Tuple(vec![2.into(), "p".into()])),
            ],
        )
        .unwrap();
        assert_eq!(pi.apply(&pair).unwrap(), el(&x, &[1, 2]));
    }

    #[test]
    fn image_preimage_examples() {
        let alg = Algebra::numbered(2).unwrap();
        let x = ints(&alg, &[1, 2, 3]);
        let f = CondFunction::from_fn(&x, &x, |i, v| match (i, v) {
            (0, Value::Int(n)) => Value::Int((n % 3) + 1),
            (_, _) => Value::Int(1),
        })
        .unwrap();
        let u = sub(&x, &[&[1, 2], &[2, 3]]);
        assert_eq!(f.image(&u).unwrap(), sub(&x, &[&[2, 3], &[1]]));
        let v = sub(&x, &[&[1], &[2]]);
        let pre = f.preimage(&v).unwrap();
        assert_eq!(pre.support(), alg.atom(0));
        assert_eq!(f.preimage(&x.whole()).unwrap(), x.whole());
        assert_eq!(CondFunction::identity(&x).image(&u).unwrap(), u);
    }

    #[test]
    fn injectivity_examples() {
        let alg = Algebra::numbered(2).unwrap();
        let x = ints(&alg, &[1, 2]);
        assert!(CondFunction::identity(&x).is_bijective());
        let mixed = CondFunction::new(&x, &x, vec![vec![1, 0], vec![0, 0]]).unwrap();
        assert!(!mixed.is_injective());
        assert_eq!(mixed.non_injective_atoms(), alg.atom(1));
        let wide = ints(&alg, &[1, 2, 3]);
        let inj = CondFunction::generated(&x, &wide, |v| match v {
            Value::Int(n) => Value::Int(n + 1),
            v => v.clone(),
        })
        .unwrap();
        assert!(inj.is_injective() && !inj.is_surjective());
        assert!(!inj.is_primal_surjective());
    }

    #[test]
    fn compare_examples() {
        let alg = Algebra::numbered(2).unwrap();
        let x = ints(&alg, &[1, 2, 3]);
        let ord = CondOrder::natural(&x).unwrap();
        let a = el(&x, &[1, 3]);
        let t = ord.compare_total(&a, &a).unwrap();
        assert_eq!(
            (t.less.is_zero(), t.greater.is_zero(), t.equal.is_one()),
            (true, true, true)
        );
        let t = ord
            .compare_total(&el(&x, &[1, 1]), &el(&x, &[2, 2]))
            .unwrap();
        assert!(t.less.is_one());
        let t = ord
            .compare_total(&el(&x, &[1, 3]), &el(&x, &[2, 2]))
            .unwrap();
        assert_eq!(
            (t.less, t.greater, t.equal.is_zero()),
            (alg.atom(0), alg.atom(1), true)
        );
    }

    #[test]
    fn primal_order_is_not_total_on_two_atoms() {
        let alg = Algebra::numbered(2).unwrap();
        let x = ints(&alg, &[0, 1]);
        let ord = CondOrder::natural(&x).unwrap();
        assert!(!ord.primal_is_total());
        let (u, v) = ord.primal_incomparable_pair().unwrap();
        let t = ord.compare_total(&u, &v).unwrap();
        assert!(!t.less.is_zero() && !t.greater.is_zero());
        let one = Algebra::numbered(1).unwrap();
        assert!(CondOrder::natural(&ints(&one, &[0, 1, 2]))
            .unwrap()
            .primal_is_total());
    }

    #[test]
    fn sup_inf_examples() {
        let alg = Algebra::numbered(2).unwrap();
        let x = ints(&alg, &[1, 2, 3]);
        let ord = CondOrder::natural(&x).unwrap();
        let y = sub(&x, &[&[1, 3], &[2]]);
        assert_eq!(ord.cond_sup(&y).unwrap(), el(&x, &[3, 2]));
        assert_eq!(ord.cond_inf(&y).unwrap(), el(&x, &[1, 2]));
        let single = el(&x, &[2, 3]).as_subset();
        assert_eq!(ord.cond_sup(&single).unwrap(), el(&x, &[2, 3]));
        // Two incomparable maximal points: no supremum.
        let pq = CondSet::generate(&["p".into(), "q".into()], &alg).unwrap();
        let discrete = CondOrder::generated(&pq, |a, b| a == b, OrderKind::Partial).unwrap();
        assert!(matches!(
            discrete.cond_sup(&pq.whole()),
            Err(Error::NoBound(_))
        ));
        assert!(discrete.cond_bounds(&pq.whole()).is_none());
    }

    #[test]
    fn invalid_orders() {
        let alg = Algebra::numbered(1).unwrap();
        let x = ints(&alg, &[1, 2]);
        assert!(matches!(
            CondOrder::generated(&x, |a, b| a == b, OrderKind::Total),
            Err(Error::NotTotal(_))
        ));
        assert!(CondOrder::generated(&x, |_, _| true, OrderKind::Partial).is_err());
    }

    #[test]
    fn cardinality_examples() {
        let alg = Algebra::numbered(2).unwrap();
        let x = ints(&alg, &[1, 2, 3]);
        let y = sub(&x, &[&[1, 2], &[1, 2, 3]]);
        assert_eq!(
            cond_card(&y).unwrap(),
            CondNat::nat(&alg, vec![2, 3]).unwrap()
        );
        assert_eq!(
            cond_card(&el(&x, &[2, 2]).as_subset()).unwrap(),
            CondNat::constant(&alg, 1)
        );
        let b = cond_finite_bijection(&y).unwrap();
        assert!(b.is_bijective());
        let id = b.then(&b.inverse().unwrap()).unwrap();
        assert_eq!(id, CondFunction::identity(b.domain()));
    }

    #[test]
    fn choice_examples() {
        let alg = Algebra::numbered(2).unwrap();
        let pq = CondSet::generate(&["p".into(), "q".into()], &alg).unwrap();
        let idx = ints(&alg, &[1, 2]);
        let all = pq.full(0);
        let fam = SubsetFamily::new(&idx, &pq, vec![vec![all, all], vec![all, all]]).unwrap();
        let c = choice(&fam);
        let p = CondElement::constant(&pq, &"p".into()).unwrap();
        for i in idx.elements() {
            assert_eq!(c.apply(&i).unwrap(), p);
            assert!(fam.member(&i).unwrap().contains(&c.apply(&i).unwrap()));
        }
        let singles = SubsetFamily::new(
            &idx,
            &pq,
            vec![
                vec![PointSet::singleton(1), PointSet::singleton(0)],
                vec![PointSet::singleton(0), PointSet::singleton(1)],
            ],
        )
        .unwrap();
        let c = choice(&singles);
        let i = el(&idx, &[1, 2]);
        assert_eq!(
            c.apply(&i).unwrap().as_subset(),
            singles.member(&i).unwrap()
        );
        let a = alg.atom(0);
        assert_eq!(
            c.apply(&i.restrict(&a)).unwrap(),
            c.apply(&i).unwrap().restrict(&a)
        );
    }
}
