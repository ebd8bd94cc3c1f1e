//! Conditional sets with finite per-atom carriers.
//!
//! The canonical data is per atom: a [`CondElement`] assigns a carrier index
//! to each atom of its support, a [`CondSubset`] a non-empty [`PointSet`].
//! [`AmalgamationExpr`] is the partition-indexed input form; the
//! [`formula`] submodule recomputes the power-set operations from primal sets
//! using lattice operations only.

pub mod formula;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::boolalg::{stitch_by_key, Algebra, Condition, Partition};
use crate::error::{Error, Result};

pub const MAX_CARRIER: usize = 128;

/// A carrier value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Sym(String),
    Tuple(Vec<Value>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Sym(s) => write!(f, "{s}"),
            Value::Tuple(vs) => {
                write!(f, "(")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Sym(s.to_string())
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::Int(n)
    }
}

/// A subset of one per-atom carrier, as a bitmask over carrier indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointSet(u128);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> PointSet {
        debug_assert!(n <= MAX_CARRIER);
        if n == 128 {
            PointSet(u128::MAX)
        } else {
            PointSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: u32) -> PointSet {
        PointSet(1u128 << i)
    }

    pub fn from_bits(bits: u128) -> PointSet {
        PointSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn from_indices<I: IntoIterator<Item = u32>>(it: I) -> PointSet {
        PointSet(it.into_iter().fold(0, |acc, i| acc | 1u128 << i))
    }

    pub fn contains(self, i: u32) -> bool {
        i < 128 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: u32) {
        self.0 |= 1u128 << i;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, o: PointSet) -> PointSet {
        PointSet(self.0 | o.0)
    }

    pub fn intersection(self, o: PointSet) -> PointSet {
        PointSet(self.0 & o.0)
    }

    pub fn difference(self, o: PointSet) -> PointSet {
        PointSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: PointSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn min(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros())
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        let bits = self.0;
        (0..128u32).filter(move |i| bits >> i & 1 == 1)
    }

    /// All non-empty subsets of `self`.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = PointSet> {
        let mask = self.0;
        let mut next = Some(mask);
        std::iter::from_fn(move || loop {
            let cur = next?;
            next = if cur == 0 {
                None
            } else {
                Some((cur - 1) & mask)
            };
            if cur != 0 {
                return Some(PointSet(cur));
            }
        })
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

struct CondSetInner {
    algebra: Algebra,
    carriers: Vec<Vec<Value>>,
    lookup: Vec<HashMap<Value, u32>>,
}

/// A conditional set: one non-empty finite carrier per atom.
#[derive(Clone)]
pub struct CondSet(Arc<CondSetInner>);

impl PartialEq for CondSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.algebra == other.0.algebra && self.0.carriers == other.0.carriers)
    }
}

impl Eq for CondSet {}

impl fmt::Debug for CondSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, c) in self.0.carriers.iter().enumerate() {
            m.entry(&self.0.algebra.atom_name(i), c);
        }
        m.finish()
    }
}

impl CondSet {
    /// The conditional set generated by `ground`: a copy of it at every atom.
    pub fn generate(ground: &[Value], alg: &Algebra) -> Result<Self> {
        if ground.is_empty() {
            return Err(Error::EmptyGround);
        }
        Self::from_carriers(alg, vec![ground.to_vec(); alg.len()])
    }

    pub fn from_carriers(alg: &Algebra, carriers: Vec<Vec<Value>>) -> Result<Self> {
        if carriers.len() != alg.len() {
            return Err(Error::CarrierMismatch(format!(
                "{} carriers for {} atoms",
                carriers.len(),
                alg.len()
            )));
        }
        let mut lookup = Vec::with_capacity(carriers.len());
        for (i, c) in carriers.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::EmptyGround);
            }
            if c.len() > MAX_CARRIER {
                return Err(Error::CarrierTooLarge {
                    atom: alg.atom_name(i).to_string(),
                    size: c.len(),
                    max: MAX_CARRIER,
                });
            }
            let mut m = HashMap::with_capacity(c.len());
            for (k, v) in c.iter().enumerate() {
                if m.insert(v.clone(), k as u32).is_some() {
                    return Err(Error::Invalid(format!("duplicate carrier value {v}")));
                }
            }
            lookup.push(m);
        }
        Ok(CondSet(Arc::new(CondSetInner {
            algebra: alg.clone(),
            carriers,
            lookup,
        })))
    }

    /// Per-atom cartesian product; values are tuples.
    pub fn product(family: &[CondSet]) -> Result<Self> {
        let first = family.first().ok_or(Error::EmptyFamily)?;
        let alg = first.algebra().clone();
        if family.iter().any(|s| *s.algebra() != alg) {
            return Err(Error::AlgebraMismatch);
        }
        let mut carriers = Vec::with_capacity(alg.len());
        for i in 0..alg.len() {
            let mut acc: Vec<Vec<Value>> = vec![Vec::new()];
            for s in family {
                let mut next = Vec::with_capacity(acc.len() * s.carrier_len(i));
                for prefix in &acc {
                    for v in s.carrier(i) {
                        let mut t = prefix.clone();
                        t.push(v.clone());
                        next.push(t);
                    }
                }
                acc = next;
            }
            carriers.push(acc.into_iter().map(Value::Tuple).collect());
        }
        Self::from_carriers(&alg, carriers)
    }

    /// The algebra as a conditional set, `X_a = A_a` with `γ_a(b) = a ∧ b`.
    ///
    /// At each atom the carrier is `{0, 1}`: a condition `b` becomes the
    /// element that takes 1 exactly at the atoms below `b`.
    pub fn alg_as_condset(alg: &Algebra) -> Self {
        Self::from_carriers(alg, vec![vec![Value::Int(0), Value::Int(1)]; alg.len()])
            .expect("two-point carriers are valid")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.0.algebra
    }

    pub fn carrier(&self, atom: usize) -> &[Value] {
        &self.0.carriers[atom]
    }

    pub fn carriers(&self) -> &[Vec<Value>] {
        &self.0.carriers
    }

    pub fn carrier_len(&self, atom: usize) -> usize {
        self.0.carriers[atom].len()
    }

    pub fn full(&self, atom: usize) -> PointSet {
        PointSet::full(self.carrier_len(atom))
    }

    pub fn index_of(&self, atom: usize, v: &Value) -> Option<u32> {
        self.0.lookup[atom].get(v).copied()
    }

    /// The whole space `X`, living on 1.
    pub fn whole(&self) -> CondSubset {
        CondSubset {
            set: self.clone(),
            slices: (0..self.algebra().len())
                .map(|i| Some(self.full(i)))
                .collect(),
        }
    }

    /// The empty conditional set `𝟎`.
    pub fn empty(&self) -> CondSubset {
        CondSubset {
            set: self.clone(),
            slices: vec![None; self.algebra().len()],
        }
    }

    /// Number of elements of `X_a`.
    pub fn count_on(&self, a: &Condition) -> usize {
        a.atoms().map(|i| self.carrier_len(i)).product()
    }

    /// Every element of `X_a`.
    pub fn elements_on(&self, a: &Condition) -> Vec<CondElement> {
        let n = self.algebra().len();
        let mut out = vec![CondElement {
            set: self.clone(),
            idx: vec![None; n],
        }];
        for i in a.atoms() {
            let mut next = Vec::with_capacity(out.len() * self.carrier_len(i));
            for e in &out {
                for k in 0..self.carrier_len(i) as u32 {
                    let mut e2 = e.clone();
                    e2.idx[i] = Some(k);
                    next.push(e2);
                }
            }
            out = next;
        }
        out
    }

    /// The primal set `X_1`.
    pub fn elements(&self) -> Vec<CondElement> {
        self.elements_on(&self.algebra().one())
    }

    /// Every conditional subset living exactly on `a`.
    pub fn subsets_on(&self, a: &Condition) -> Vec<CondSubset> {
        let n = self.algebra().len();
        let mut out = vec![CondSubset {
            set: self.clone(),
            slices: vec![None; n],
        }];
        for i in a.atoms() {
            let mut next = Vec::new();
            for y in &out {
                for s in self.full(i).nonempty_subsets() {
                    let mut y2 = y.clone();
                    y2.slices[i] = Some(s);
                    next.push(y2);
                }
            }
            out = next;
        }
        out
    }

    /// `S(X)`: every conditional subset living on 1.
    pub fn stable_subsets(&self) -> Vec<CondSubset> {
        self.subsets_on(&self.algebra().one())
    }

    /// `P(X)`: every conditional subset, including `𝟎`.
    pub fn all_subsets(&self) -> Vec<CondSubset> {
        self.algebra()
            .conditions()
            .flat_map(|a| self.subsets_on(&a))
            .collect()
    }

    fn check_same(&self, other: &CondSet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// The element of [`CondSet::alg_as_condset`] corresponding to `b`.
    pub fn condition_to_element(&self, b: &Condition) -> CondElement {
        CondElement {
            set: self.clone(),
            idx: (0..self.algebra().len())
                .map(|i| Some(b.contains_atom(i) as u32))
                .collect(),
        }
    }

    pub fn element_to_condition(&self, x: &CondElement) -> Condition {
        self.algebra()
            .condition(x.support().atoms().filter(|&i| x.idx[i] == Some(1)))
    }
}

/// A conditional element living on its support.
#[derive(Clone)]
pub struct CondElement {
    set: CondSet,
    idx: Vec<Option<u32>>,
}

impl PartialEq for CondElement {
    fn eq(&self, other: &Self) -> bool {
        self.idx == other.idx && self.set == other.set
    }
}

impl Eq for CondElement {}

impl Hash for CondElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.idx.hash(state);
    }
}

impl PartialOrd for CondElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CondElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.idx.cmp(&other.idx)
    }
}

impl fmt::Debug for CondElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CondElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for (i, v) in self.idx.iter().enumerate() {
            if let Some(k) = v {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(
                    f,
                    "{}↦{}",
                    self.set.algebra().atom_name(i),
                    self.set.carrier(i)[*k as usize]
                )?;
            }
        }
        write!(f, ")")
    }
}

impl CondElement {
    pub fn new(set: &CondSet, idx: Vec<Option<u32>>) -> Result<Self> {
        if idx.len() != set.algebra().len() {
            return Err(Error::CarrierMismatch("one entry per atom required".into()));
        }
        for (i, k) in idx.iter().enumerate() {
            if let Some(k) = k {
                if *k as usize >= set.carrier_len(i) {
                    return Err(Error::CarrierMismatch(format!(
                        "index {k} outside carrier at `{}`",
                        set.algebra().atom_name(i)
                    )));
                }
            }
        }
        Ok(CondElement {
            set: set.clone(),
            idx,
        })
    }

    pub fn from_values(set: &CondSet, values: &[Option<Value>]) -> Result<Self> {
        if values.len() != set.algebra().len() {
            return Err(Error::CarrierMismatch("one entry per atom required".into()));
        }
        let mut idx = Vec::with_capacity(values.len());
        for (i, v) in values.iter().enumerate() {
            idx.push(match v {
                None => None,
                Some(v) => Some(set.index_of(i, v).ok_or_else(|| {
                    Error::CarrierMismatch(format!(
                        "{v} not in carrier at `{}`",
                        set.algebra().atom_name(i)
                    ))
                })?),
            });
        }
        Ok(CondElement {
            set: set.clone(),
            idx,
        })
    }

    /// The element taking value `v` at every atom.
    pub fn constant(set: &CondSet, v: &Value) -> Result<Self> {
        Self::from_values(set, &vec![Some(v.clone()); set.algebra().len()])
    }

    pub fn set(&self) -> &CondSet {
        &self.set
    }

    pub fn indices(&self) -> &[Option<u32>] {
        &self.idx
    }

    pub fn index(&self, atom: usize) -> Option<u32> {
        self.idx[atom]
    }

    pub fn value(&self, atom: usize) -> Option<&Value> {
        self.idx[atom].map(|k| &self.set.carrier(atom)[k as usize])
    }

    pub fn support(&self) -> Condition {
        self.set.algebra().condition(
            self.idx
                .iter()
                .enumerate()
                .filter_map(|(i, k)| k.map(|_| i)),
        )
    }

    pub fn lives_on_one(&self) -> bool {
        self.idx.iter().all(Option::is_some)
    }

    /// `ax`.
    pub fn restrict(&self, a: &Condition) -> CondElement {
        CondElement {
            set: self.set.clone(),
            idx: self
                .idx
                .iter()
                .enumerate()
                .map(|(i, k)| if a.contains_atom(i) { *k } else { None })
                .collect(),
        }
    }

    /// The singleton `{x}` as a conditional subset.
    pub fn as_subset(&self) -> CondSubset {
        CondSubset {
            set: self.set.clone(),
            slices: self
                .idx
                .iter()
                .map(|k| k.map(PointSet::singleton))
                .collect(),
        }
    }
}

/// A conditional subset: non-empty per-atom slices on its support.
#[derive(Clone)]
pub struct CondSubset {
    set: CondSet,
    slices: Vec<Option<PointSet>>,
}

impl PartialEq for CondSubset {
    fn eq(&self, other: &Self) -> bool {
        self.slices == other.slices && self.set == other.set
    }
}

impl Eq for CondSubset {}

impl Hash for CondSubset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.slices.hash(state);
    }
}

impl PartialOrd for CondSubset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CondSubset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.slices.cmp(&other.slices)
    }
}

impl fmt::Debug for CondSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CondSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut first = true;
        for (i, s) in self.slices.iter().enumerate() {
            if let Some(s) = s {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "{}↦{{", self.set.algebra().atom_name(i))?;
                for (k, v) in s.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", self.set.carrier(i)[v as usize])?;
                }
                write!(f, "}}")?;
            }
        }
        write!(f, "]")
    }
}

impl CondSubset {
    pub fn new(set: &CondSet, slices: Vec<Option<PointSet>>) -> Result<Self> {
        if slices.len() != set.algebra().len() {
            return Err(Error::CarrierMismatch("one slice per atom required".into()));
        }
        for (i, s) in slices.iter().enumerate() {
            if let Some(s) = s {
                if s.is_empty() {
                    return Err(Error::Invalid(format!(
                        "empty slice at `{}`; leave the atom out of the support instead",
                        set.algebra().atom_name(i)
                    )));
                }
                if !s.is_subset(set.full(i)) {
                    return Err(Error::CarrierMismatch(format!(
                        "slice exceeds carrier at `{}`",
                        set.algebra().atom_name(i)
                    )));
                }
            }
        }
        Ok(CondSubset {
            set: set.clone(),
            slices,
        })
    }

    pub fn from_values(set: &CondSet, values: &[Option<Vec<Value>>]) -> Result<Self> {
        if values.len() != set.algebra().len() {
            return Err(Error::CarrierMismatch("one slice per atom required".into()));
        }
        let mut slices = Vec::with_capacity(values.len());
        for (i, vs) in values.iter().enumerate() {
            slices.push(match vs {
                None => None,
                Some(vs) => {
                    let mut s = PointSet::EMPTY;
                    for v in vs {
                        s.insert(set.index_of(i, v).ok_or_else(|| {
                            Error::CarrierMismatch(format!(
                                "{v} not in carrier at `{}`",
                                set.algebra().atom_name(i)
                            ))
                        })?);
                    }
                    Some(s)
                }
            });
        }
        Self::new(set, slices)
    }

    /// Slices built by a per-atom closure; atoms where it returns an empty
    /// set are left out of the support.
    pub fn from_fn(set: &CondSet, f: impl Fn(usize) -> Option<PointSet>) -> CondSubset {
        CondSubset {
            set: set.clone(),
            slices: (0..set.algebra().len())
                .map(|i| f(i).filter(|s| !s.is_empty()))
                .collect(),
        }
    }

    pub fn set(&self) -> &CondSet {
        &self.set
    }

    pub fn slices(&self) -> &[Option<PointSet>] {
        &self.slices
    }

    pub fn slice(&self, atom: usize) -> Option<PointSet> {
        self.slices[atom]
    }

    pub fn values(&self, atom: usize) -> Vec<&Value> {
        self.slices[atom]
            .map(|s| {
                s.iter()
                    .map(|k| &self.set.carrier(atom)[k as usize])
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn support(&self) -> Condition {
        self.set.algebra().condition(
            self.slices
                .iter()
                .enumerate()
                .filter_map(|(i, s)| s.map(|_| i)),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.slices.iter().all(Option::is_none)
    }

    pub fn lives_on_one(&self) -> bool {
        self.slices.iter().all(Option::is_some)
    }

    pub fn restrict(&self, a: &Condition) -> CondSubset {
        CondSubset {
            set: self.set.clone(),
            slices: self
                .slices
                .iter()
                .enumerate()
                .map(|(i, s)| if a.contains_atom(i) { *s } else { None })
                .collect(),
        }
    }

    /// `x ∈ Y`: `x` lives on the support of `Y` and lies in every slice.
    pub fn contains(&self, x: &CondElement) -> bool {
        self.slices.iter().zip(&x.idx).all(|(s, k)| match (s, k) {
            (None, None) => true,
            (Some(s), Some(k)) => s.contains(*k),
            _ => false,
        })
    }

    /// Number of elements of the primal set `Y_b`.
    pub fn primal_len(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        self.slices.iter().flatten().map(|s| s.len()).product()
    }

    /// The primal set `Y_b`, `b` the support.
    pub fn primal(&self) -> Vec<CondElement> {
        if self.is_empty() {
            return Vec::new();
        }
        let mut out = vec![CondElement {
            set: self.set.clone(),
            idx: vec![None; self.slices.len()],
        }];
        for (i, s) in self.slices.iter().enumerate() {
            if let Some(s) = s {
                let mut next = Vec::with_capacity(out.len() * s.len());
                for e in &out {
                    for k in s.iter() {
                        let mut e2 = e.clone();
                        e2.idx[i] = Some(k);
                        next.push(e2);
                    }
                }
                out = next;
            }
        }
        out
    }

    /// The subset as a conditional set in its own right; it must live on 1.
    pub fn as_condset(&self) -> Result<CondSet> {
        if !self.lives_on_one() {
            return Err(Error::SupportMismatch("subset must live on 1".into()));
        }
        let carriers = (0..self.slices.len())
            .map(|i| self.values(i).into_iter().cloned().collect())
            .collect();
        CondSet::from_carriers(self.set.algebra(), carriers)
    }
}

/// Values that live on a condition and glue along partitions.
pub trait Local: Clone + Sized {
    fn support(&self) -> Condition;
    fn restrict(&self, a: &Condition) -> Self;
    /// `∑ a_i x_i`: each pick must live exactly on its part.
    fn glue(partition: &Partition, picks: &[Self]) -> Result<Self>;
}

fn check_picks<T: Local>(partition: &Partition, picks: &[T]) -> Result<()> {
    partition.validate()?;
    if picks.len() != partition.len() {
        return Err(Error::PartitionInvalid(format!(
            "{} picks for {} parts",
            picks.len(),
            partition.len()
        )));
    }
    if picks.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for (i, (part, pick)) in partition.parts().iter().zip(picks).enumerate() {
        let s = pick.support();
        if s != *part {
            return Err(Error::PickSupportMismatch {
                index: i,
                expected: part.clone(),
                found: s,
            });
        }
    }
    Ok(())
}

impl Local for CondElement {
    fn support(&self) -> Condition {
        CondElement::support(self)
    }

    fn restrict(&self, a: &Condition) -> Self {
        CondElement::restrict(self, a)
    }

    fn glue(partition: &Partition, picks: &[Self]) -> Result<Self> {
        check_picks(partition, picks)?;
        let set = picks[0].set.clone();
        let mut idx = vec![None; set.algebra().len()];
        for p in picks {
            set.check_same(&p.set)?;
            for (i, k) in p.idx.iter().enumerate() {
                if k.is_some() {
                    idx[i] = *k;
                }
            }
        }
        Ok(CondElement { set, idx })
    }
}

impl Local for CondSubset {
    fn support(&self) -> Condition {
        CondSubset::support(self)
    }

    fn restrict(&self, a: &Condition) -> Self {
        CondSubset::restrict(self, a)
    }

    fn glue(partition: &Partition, picks: &[Self]) -> Result<Self> {
        check_picks(partition, picks)?;
        let set = picks[0].set.clone();
        let mut slices = vec![None; set.algebra().len()];
        for p in picks {
            set.check_same(&p.set)?;
            for (i, s) in p.slices.iter().enumerate() {
                if s.is_some() {
                    slices[i] = *s;
                }
            }
        }
        Ok(CondSubset { set, slices })
    }
}

/// One pick of an amalgamation: a value or a nested amalgamation.
#[derive(Clone, Debug)]
pub enum Pick<T> {
    Leaf(T),
    Nested(AmalgamationExpr<T>),
}

/// `∑ a_i x_i` over a partition, possibly nested.
#[derive(Clone, Debug)]
pub struct AmalgamationExpr<T> {
    pub partition: Partition,
    pub picks: Vec<Pick<T>>,
}

impl<T: Local> AmalgamationExpr<T> {
    pub fn flat(partition: Partition, picks: Vec<T>) -> Self {
        AmalgamationExpr {
            partition,
            picks: picks.into_iter().map(Pick::Leaf).collect(),
        }
    }

    /// `[a_i, x_i]`: picks living on larger conditions are restricted to their parts.
    pub fn from_global(partition: Partition, picks: &[T]) -> Self {
        let picks = partition
            .parts()
            .iter()
            .zip(picks)
            .map(|(a, x)| Pick::Leaf(x.restrict(a)))
            .collect();
        AmalgamationExpr { partition, picks }
    }

    /// Rewrites `∑_i a_i ∑_j b_ij x_ij` as `∑_ij (a_i ∧ b_ij) x_ij`.
    pub fn flatten(&self) -> AmalgamationExpr<T> {
        let mut parts = Vec::new();
        let mut picks = Vec::new();
        self.collect_flat(
            &self.partition.base().algebra().one(),
            &mut parts,
            &mut picks,
        );
        AmalgamationExpr {
            partition: Partition::from_parts(self.partition.base().clone(), parts),
            picks: picks.into_iter().map(Pick::Leaf).collect(),
        }
    }

    fn collect_flat(&self, outer: &Condition, parts: &mut Vec<Condition>, picks: &mut Vec<T>) {
        for (a, p) in self.partition.parts().iter().zip(&self.picks) {
            let c = a & outer;
            match p {
                Pick::Leaf(x) => {
                    parts.push(c.clone());
                    picks.push(x.restrict(&c));
                }
                Pick::Nested(e) => e.collect_flat(&c, parts, picks),
            }
        }
    }
}

/// Evaluates an amalgamation to its unique glued value.
pub fn amalgamate<T: Local>(expr: &AmalgamationExpr<T>) -> Result<T> {
    let mut leaves = Vec::with_capacity(expr.picks.len());
    for p in &expr.picks {
        leaves.push(match p {
            Pick::Leaf(x) => x.clone(),
            Pick::Nested(e) => amalgamate(e)?,
        });
    }
    T::glue(&expr.partition, &leaves)
}

/// Normal form of a subset: atoms grouped by identical slice values.
pub fn from_atoms(y: &CondSubset) -> AmalgamationExpr<CondSubset> {
    let support = y.support();
    if support.is_zero() {
        return AmalgamationExpr::flat(Partition::trivial(support), vec![y.clone()]);
    }
    let (partition, _) = stitch_by_key(&support, |i| y.values(i));
    let picks = partition.parts().iter().map(|a| y.restrict(a)).collect();
    AmalgamationExpr::flat(partition, picks)
}

/// Normal form of an element: atoms grouped by identical values.
pub fn element_normal_form(x: &CondElement) -> AmalgamationExpr<CondElement> {
    let support = x.support();
    if support.is_zero() {
        return AmalgamationExpr::flat(Partition::trivial(support), vec![x.clone()]);
    }
    let (partition, _) = stitch_by_key(&support, |i| x.value(i).cloned());
    let picks = partition.parts().iter().map(|a| x.restrict(a)).collect();
    AmalgamationExpr::flat(partition, picks)
}

/// Per-atom form of an amalgamation.
pub fn to_atoms<T: Local>(expr: &AmalgamationExpr<T>) -> Result<T> {
    amalgamate(expr)
}

/// `cond(Y)` for elements all living on `b`.
pub fn stable_hull(b: &Condition, ys: &[CondElement]) -> Result<CondSubset> {
    let first = ys.first().ok_or(Error::EmptyInput)?;
    let set = first.set.clone();
    let mut slices = vec![None::<PointSet>; set.algebra().len()];
    for y in ys {
        set.check_same(&y.set)?;
        if y.support() != *b {
            return Err(Error::SupportMismatch(format!("{y} does not live on {b}")));
        }
        for (i, k) in y.idx.iter().enumerate() {
            if let Some(k) = k {
                slices[i].get_or_insert(PointSet::EMPTY).insert(*k);
            }
        }
    }
    Ok(CondSubset { set, slices })
}

fn check_family(space: &CondSet, family: &[CondSubset]) -> Result<()> {
    family.iter().try_for_each(|y| space.check_same(&y.set))
}

/// `⊔ Y^i`; `𝟎` for the empty family.
pub fn cond_union(space: &CondSet, family: &[CondSubset]) -> Result<CondSubset> {
    check_family(space, family)?;
    let mut slices = vec![None::<PointSet>; space.algebra().len()];
    for y in family {
        for (i, s) in y.slices.iter().enumerate() {
            if let Some(s) = s {
                let e = slices[i].get_or_insert(PointSet::EMPTY);
                *e = e.union(*s);
            }
        }
    }
    Ok(CondSubset {
        set: space.clone(),
        slices,
    })
}

/// `⊓ Y^i`, living on `a★`; `X` for the empty family.
pub fn cond_intersection(space: &CondSet, family: &[CondSubset]) -> Result<CondSubset> {
    check_family(space, family)?;
    let mut out = space.whole();
    for y in family {
        for (o, s) in out.slices.iter_mut().zip(&y.slices) {
            *o = match (*o, s) {
                (Some(a), Some(b)) => Some(a.intersection(*b)).filter(|x| !x.is_empty()),
                _ => None,
            };
        }
    }
    Ok(out)
}

/// `Y^⊏`: relative complements where non-empty, the full carrier off the support.
pub fn cond_complement(y: &CondSubset) -> CondSubset {
    let set = &y.set;
    CondSubset {
        set: set.clone(),
        slices: y
            .slices
            .iter()
            .enumerate()
            .map(|(i, s)| match s {
                None => Some(set.full(i)),
                Some(s) => Some(set.full(i).difference(*s)).filter(|d| !d.is_empty()),
            })
            .collect(),
    }
}

/// `Y ⊑ Z`.
pub fn subset_leq(y: &CondSubset, z: &CondSubset) -> Result<bool> {
    y.set.check_same(&z.set)?;
    Ok(y.slices.iter().zip(&z.slices).all(|(a, b)| match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(a), Some(b)) => a.is_subset(*b),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq(n: usize) -> CondSet {
        let alg = Algebra::numbered(n).unwrap();
        CondSet::generate(&["p".into(), "q".into()], &alg).unwrap()
    }

    fn sub(x: &CondSet, slices: &[Option<&[&str]>]) -> CondSubset {
        let vals: Vec<Option<Vec<Value>>> = slices
            .iter()
            .map(|s| s.map(|vs| vs.iter().map(|v| Value::from(*v)).collect()))
            .collect();
        CondSubset::from_values(x, &vals).unwrap()
    }

    fn el(x: &CondSet, slices: &[Option<&str>]) -> CondElement {
        let vals: Vec<Option<Value>> = slices.iter().map(|s| s.map(Value::from)).collect();
        CondElement::from_values(x, &vals).unwrap()
    }

    #[test]
    fn gluing_two_atoms() {
        let x = pq(2);
        let alg = x.algebra().clone();
        let part = Partition::new(alg.one(), vec![alg.atom(0), alg.atom(1)]).unwrap();
        let p = CondElement::constant(&x, &"p".into()).unwrap();
        let q = CondElement::constant(&x, &"q".into()).unwrap();
        let e = amalgamate(&AmalgamationExpr::from_global(part, &[p.clone(), q])).unwrap();
        assert_eq!(e, el(&x, &[Some("p"), Some("q")]));
        let same = amalgamate(&AmalgamationExpr::flat(
            Partition::trivial(alg.one()),
            vec![p.clone()],
        ));
        assert_eq!(same.unwrap(), p);
    }

    #[test]
    fn gluing_rejects_bad_input() {
        let x = pq(2);
        let alg = x.algebra().clone();
        let p = CondElement::constant(&x, &"p".into()).unwrap();
        let part = Partition::new(alg.one(), vec![alg.atom(0), alg.atom(1)]).unwrap();
        let err = amalgamate(&AmalgamationExpr::flat(part, vec![p.clone(), p.clone()]));
        assert!(matches!(
            err,
            Err(Error::PickSupportMismatch { index: 0, .. })
        ));
        let bad = Partition::from_parts(alg.one(), vec![alg.one(), alg.atom(0)]);
        let err = amalgamate(&AmalgamationExpr::from_global(bad, &[p.clone(), p]));
        assert!(matches!(err, Err(Error::PartitionInvalid(_))));
    }

    #[test]
    fn restriction_examples() {
        let x = pq(2);
        let alg = x.algebra().clone();
        let e = el(&x, &[Some("p"), Some("q")]);
        assert_eq!(e.restrict(&alg.one()), e);
        assert!(e.restrict(&alg.zero()).support().is_zero());
        assert_eq!(e.restrict(&alg.atom(0)), el(&x, &[Some("p"), None]));
    }

    #[test]
    fn generated_counts() {
        let alg = Algebra::numbered(2).unwrap();
        let single = CondSet::generate(&["p".into()], &alg).unwrap();
        assert_eq!(single.elements().len(), 1);
        assert_eq!(pq(2).elements().len(), 4);
        assert!(matches!(
            CondSet::generate(&[], &alg),
            Err(Error::EmptyGround)
        ));
    }

    #[test]
    fn algebra_as_conditional_set() {
        for n in 1..=3 {
            let alg = Algebra::numbered(n).unwrap();
            let x = CondSet::alg_as_condset(&alg);
            assert_eq!(x.elements().len(), 1 << n);
            for b in alg.conditions() {
                assert_eq!(x.element_to_condition(&x.condition_to_element(&b)), b);
            }
            let ground: Vec<Value> = alg
                .conditions()
                .map(|c| Value::Int(c.bits() as i64))
                .collect();
            let generated = CondSet::generate(&ground, &alg).unwrap();
            assert_eq!(generated.elements().len() == x.elements().len(), n == 1);
        }
    }

    #[test]
    fn hull_examples() {
        let x = pq(2);
        let one = x.algebra().one();
        let a = el(&x, &[Some("p"), Some("q")]);
        let b = el(&x, &[Some("q"), Some("p")]);
        assert_eq!(
            stable_hull(&one, std::slice::from_ref(&a)).unwrap(),
            a.as_subset()
        );
        let h = stable_hull(&one, &[a.clone(), b]).unwrap();
        assert_eq!(h, x.whole());
        assert!(h.contains(&el(&x, &[Some("p"), Some("p")])));
        assert!(matches!(stable_hull(&one, &[]), Err(Error::EmptyInput)));
        let short = a.restrict(&x.algebra().atom(0));
        assert!(matches!(
            stable_hull(&one, &[short]),
            Err(Error::SupportMismatch(_))
        ));
    }

    #[test]
    fn union_examples() {
        let x = pq(2);
        let y1 = sub(&x, &[Some(&["p"]), None]);
        let y2 = sub(&x, &[None, Some(&["q"])]);
        assert_eq!(cond_union(&x, &[y1.clone(), x.empty()]).unwrap(), y1);
        assert_eq!(
            cond_union(&x, &[y1.clone(), y2]).unwrap(),
            sub(&x, &[Some(&["p"]), Some(&["q"])])
        );
        assert_eq!(
            cond_union(&x, &[y1.clone(), cond_complement(&y1)]).unwrap(),
            x.whole()
        );
        assert!(cond_union(&x, &[]).unwrap().is_empty());
    }

    #[test]
    fn intersection_examples() {
        let x = pq(2);
        let y1 = sub(&x, &[Some(&["p"]), Some(&["p", "q"])]);
        let y2 = sub(&x, &[Some(&["q"]), Some(&["q"])]);
        assert_eq!(
            cond_intersection(&x, &[y1.clone(), y2]).unwrap(),
            sub(&x, &[None, Some(&["q"])])
        );
        assert_eq!(cond_intersection(&x, &[y1.clone(), x.whole()]).unwrap(), y1);
        assert!(cond_intersection(&x, &[y1.clone(), cond_complement(&y1)])
            .unwrap()
            .is_empty());
        assert_eq!(cond_intersection(&x, &[]).unwrap(), x.whole());
    }

    #[test]
    fn complement_examples() {
        let x = pq(2);
        assert!(cond_complement(&x.whole()).is_empty());
        assert_eq!(cond_complement(&x.empty()), x.whole());
        let y = sub(&x, &[Some(&["p", "q"]), Some(&["p"])]);
        assert_eq!(cond_complement(&y), sub(&x, &[None, Some(&["q"])]));
        let proper = sub(&x, &[Some(&["q"]), Some(&["p"])]);
        assert_eq!(cond_complement(&cond_complement(&proper)), proper);
    }

    #[test]
    fn order_and_products() {
        let x = pq(2);
        let y = sub(&x, &[Some(&["q"]), None]);
        assert!(subset_leq(&x.empty(), &y).unwrap());
        assert!(subset_leq(&y, &x.whole()).unwrap());
        assert!(!subset_leq(&x.whole(), &y).unwrap());
        let alg = x.algebra().clone();
        let z = CondSet::generate(&[1.into(), 2.into(), 3.into()], &alg).unwrap();
        let prod = CondSet::product(&[x.clone(), z]).unwrap();
        let mut ground = Vec::new();
        for a in ["p", "q"] {
            for b in 1..=3 {
                ground.push(Value::Tuple(vec![a.into(), Value::Int(b)]));
            }
        }
        assert_eq!(prod, CondSet::generate(&ground, &alg).unwrap());
        let other = pq(3);
        assert!(matches!(
            subset_leq(&y, &other.whole()),
            Err(Error::ParentMismatch)
        ));
    }

    #[test]
    fn normal_form_round_trip() {
        let x = pq(3);
        for y in x.all_subsets() {
            let nf = from_atoms(&y);
            assert!(crate::boolalg::is_partition(&nf.partition));
            assert_eq!(to_atoms(&nf).unwrap(), y);
            assert_eq!(from_atoms(&to_atoms(&nf).unwrap()).partition, nf.partition);
        }
        for e in x.elements() {
            assert_eq!(to_atoms(&element_normal_form(&e)).unwrap(), e);
        }
    }

    #[test]
    fn nested_amalgamation_flattens() {
        let x = pq(3);
        let alg = x.algebra().clone();
        let a = alg.condition([0, 1]);
        let inner = Partition::new(a.clone(), vec![alg.atom(0), alg.atom(1)]).unwrap();
        let p = CondElement::constant(&x, &"p".into()).unwrap();
        let q = CondElement::constant(&x, &"q".into()).unwrap();
        let nested = AmalgamationExpr {
            partition: Partition::new(alg.one(), vec![a, alg.atom(2)]).unwrap(),
            picks: vec![
                Pick::Nested(AmalgamationExpr::from_global(
                    inner,
                    &[q.clone(), p.clone()],
                )),
                Pick::Leaf(q.restrict(&alg.atom(2))),
            ],
        };
        let flat = nested.flatten();
        assert_eq!(flat.partition.len(), 3);
        assert_eq!(amalgamate(&nested).unwrap(), amalgamate(&flat).unwrap());
        assert_eq!(
            amalgamate(&flat).unwrap(),
            el(&x, &[Some("q"), Some("p"), Some("q")])
        );
    }

    #[test]
    fn atoms_of_power_set_are_restricted_elements() {
        let x = pq(2);
        let alg = x.algebra().clone();
        let all = x.all_subsets();
        let minimal: Vec<&CondSubset> = all
            .iter()
            .filter(|y| !y.is_empty())
            .filter(|y| {
                all.iter()
                    .all(|z| z.is_empty() || z == *y || !subset_leq(z, y).unwrap())
            })
            .collect();
        let mut expected = Vec::new();
        for e in x.elements() {
            for i in 0..alg.len() {
                let s = e.restrict(&alg.atom(i)).as_subset();
                if !expected.contains(&s) {
                    expected.push(s);
                }
            }
        }
        assert_eq!(minimal.len(), expected.len());
        assert!(expected.iter().all(|s| minimal.contains(&s)));
    }
}
