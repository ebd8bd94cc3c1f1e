//! Finite atomic Boolean algebras.
//!
//! A [`Condition`] is stored as the set of atoms below it, packed into a
//! `u64`, so an [`Algebra`] has between 1 and 64 atoms. Lattice operators
//! (`&`, `|`, `!`) panic when the operands come from different algebras;
//! the named methods return [`Error::AlgebraMismatch`] instead.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{BitAnd, BitOr, Not};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

pub const MAX_ATOMS: usize = 64;

#[derive(Debug)]
struct AlgebraInner {
    atoms: Vec<String>,
    weights: Option<Vec<Rational>>,
}

/// A finite atomic Boolean algebra, cheap to clone.
#[derive(Clone)]
pub struct Algebra(Arc<AlgebraInner>);

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.atoms == other.0.atoms
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra{:?}", self.0.atoms)
    }
}

impl Algebra {
    pub fn new<I, S>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        Self::build(atoms, None)
    }

    /// Atoms `w1..wn`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("w{i}")))
    }

    /// Atoms with positive weights, kept as metadata only.
    pub fn with_weights<S: Into<String>>(atoms: Vec<S>, weights: Vec<Rational>) -> Result<Self> {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if weights.len() != atoms.len() {
            return Err(Error::Invalid("one weight per atom required".into()));
        }
        if weights
            .iter()
            .any(|w| *w <= Rational::from_integer(0.into()))
        {
            return Err(Error::Invalid("atom weights must be positive".into()));
        }
        Self::build(atoms, Some(weights))
    }

    fn build(atoms: Vec<String>, weights: Option<Vec<Rational>>) -> Result<Self> {
        if atoms.is_empty() || atoms.len() > MAX_ATOMS {
            return Err(Error::AtomCount { max: MAX_ATOMS });
        }
        let mut seen = HashSet::new();
        for a in &atoms {
            if !seen.insert(a.as_str()) {
                return Err(Error::DuplicateAtom(a.clone()));
            }
        }
        Ok(Algebra(Arc::new(AlgebraInner { atoms, weights })))
    }

    pub fn len(&self) -> usize {
        self.0.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn atom_names(&self) -> &[String] {
        &self.0.atoms
    }

    pub fn atom_name(&self, i: usize) -> &str {
        &self.0.atoms[i]
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.0.atoms.iter().position(|a| a == name)
    }

    pub fn weights(&self) -> Option<&[Rational]> {
        self.0.weights.as_deref()
    }

    fn mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn zero(&self) -> Condition {
        Condition {
            alg: self.clone(),
            bits: 0,
        }
    }

    pub fn one(&self) -> Condition {
        Condition {
            alg: self.clone(),
            bits: self.mask(),
        }
    }

    pub fn atom(&self, i: usize) -> Condition {
        assert!(i < self.len(), "atom index out of range");
        Condition {
            alg: self.clone(),
            bits: 1 << i,
        }
    }

    pub fn condition<I: IntoIterator<Item = usize>>(&self, atoms: I) -> Condition {
        let mut bits = 0u64;
        for i in atoms {
            assert!(i < self.len(), "atom index out of range");
            bits |= 1 << i;
        }
        Condition {
            alg: self.clone(),
            bits,
        }
    }

    pub fn from_bits(&self, bits: u64) -> Condition {
        Condition {
            alg: self.clone(),
            bits: bits & self.mask(),
        }
    }

    pub fn condition_named<S: AsRef<str>>(&self, names: &[S]) -> Result<Condition> {
        let mut bits = 0u64;
        for n in names {
            let i = self
                .atom_index(n.as_ref())
                .ok_or_else(|| Error::UnknownAtom(n.as_ref().to_string()))?;
            bits |= 1 << i;
        }
        Ok(self.from_bits(bits))
    }

    /// Every condition of the algebra, ordered by bit pattern.
    pub fn conditions(&self) -> impl Iterator<Item = Condition> + '_ {
        assert!(self.len() <= 24, "too many atoms to enumerate");
        (0..=self.mask()).map(move |b| self.from_bits(b))
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        AlgebraDescriptor {
            atoms: self.0.atoms.clone(),
            weights: self.0.weights.as_ref().map(|ws| {
                self.0
                    .atoms
                    .iter()
                    .zip(ws)
                    .map(|(a, w)| (a.clone(), w.to_string()))
                    .collect()
            }),
        }
    }

    pub fn from_descriptor(d: &AlgebraDescriptor) -> Result<Self> {
        match &d.weights {
            None => Self::new(d.atoms.clone()),
            Some(map) => {
                let mut ws = Vec::with_capacity(d.atoms.len());
                for a in &d.atoms {
                    let w = map
                        .get(a)
                        .ok_or_else(|| Error::Invalid(format!("missing weight for `{a}`")))?;
                    ws.push(crate::parse_rational(w)?);
                }
                Self::with_weights(d.atoms.clone(), ws)
            }
        }
    }
}

/// JSON form: `{"atoms": [...], "weights": {"w1": "1/2", ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDescriptor {
    pub atoms: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, String>>,
}

/// An element of a finite atomic Boolean algebra.
#[derive(Clone)]
pub struct Condition {
    alg: Algebra,
    bits: u64,
}

impl PartialEq for Condition {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && self.alg == other.alg
    }
}

impl Eq for Condition {}

impl Hash for Condition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl PartialOrd for Condition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order on bit patterns, for use in ordered collections.
impl Ord for Condition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits.cmp(&other.bits)
    }
}

impl fmt::Debug for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.atoms().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.alg.atom_name(i))?;
        }
        write!(f, "}}")
    }
}

impl Condition {
    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    fn check(&self, other: &Condition) -> Result<()> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn meet(&self, other: &Condition) -> Result<Condition> {
        self.check(other)?;
        Ok(self.alg.from_bits(self.bits & other.bits))
    }

    pub fn join(&self, other: &Condition) -> Result<Condition> {
        self.check(other)?;
        Ok(self.alg.from_bits(self.bits | other.bits))
    }

    pub fn complement(&self) -> Condition {
        self.alg.from_bits(!self.bits)
    }

    pub fn leq(&self, other: &Condition) -> Result<bool> {
        self.check(other)?;
        Ok(self.bits & !other.bits == 0)
    }

    /// `self ≤ other`, panicking on mismatched algebras.
    pub fn le(&self, other: &Condition) -> bool {
        self.leq(other).expect("conditions from different algebras")
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == self.alg.mask()
    }

    pub fn disjoint(&self, other: &Condition) -> bool {
        self.bits & other.bits == 0
    }

    pub fn contains_atom(&self, i: usize) -> bool {
        i < 64 && self.bits >> i & 1 == 1
    }

    pub fn atom_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Indices of the atoms below this condition, ascending.
    pub fn atoms(&self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..64usize).filter(move |i| bits >> i & 1 == 1)
    }

    pub fn atom_names(&self) -> Vec<String> {
        self.atoms()
            .map(|i| self.alg.atom_name(i).to_string())
            .collect()
    }

    /// The relative algebra `A_a = {b : b ≤ a}`, starting from `a` and ending at 0.
    pub fn below(&self) -> impl Iterator<Item = Condition> + '_ {
        let mask = self.bits;
        let mut next = Some(mask);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 {
                None
            } else {
                Some((cur - 1) & mask)
            };
            Some(self.alg.from_bits(cur))
        })
    }

    /// Join of a family; `zero` when the family is empty.
    pub fn join_all<'a, I>(alg: &Algebra, family: I) -> Result<Condition>
    where
        I: IntoIterator<Item = &'a Condition>,
    {
        let mut acc = alg.zero();
        for c in family {
            acc = acc.join(c)?;
        }
        Ok(acc)
    }

    /// Meet of a family; `one` when the family is empty.
    pub fn meet_all<'a, I>(alg: &Algebra, family: I) -> Result<Condition>
    where
        I: IntoIterator<Item = &'a Condition>,
    {
        let mut acc = alg.one();
        for c in family {
            acc = acc.meet(c)?;
        }
        Ok(acc)
    }
}

impl BitAnd for &Condition {
    type Output = Condition;
    fn bitand(self, rhs: &Condition) -> Condition {
        self.meet(rhs).expect("conditions from different algebras")
    }
}

impl BitOr for &Condition {
    type Output = Condition;
    fn bitor(self, rhs: &Condition) -> Condition {
        self.join(rhs).expect("conditions from different algebras")
    }
}

impl Not for &Condition {
    type Output = Condition;
    fn not(self) -> Condition {
        self.complement()
    }
}

/// A family of conditions `(a_i)` meant to lie in `p(base)`.
///
/// Construction through [`Partition::new`] validates; [`Partition::from_parts`]
/// does not, so that [`is_partition`] can be asked about arbitrary families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    base: Condition,
    parts: Vec<Condition>,
}

impl Partition {
    pub fn new(base: Condition, parts: Vec<Condition>) -> Result<Self> {
        let p = Self::from_parts(base, parts);
        p.validate()?;
        Ok(p)
    }

    pub fn from_parts(base: Condition, parts: Vec<Condition>) -> Self {
        Partition { base, parts }
    }

    /// The one-part partition `(a)` of `a`.
    pub fn trivial(base: Condition) -> Self {
        Partition {
            parts: vec![base.clone()],
            base,
        }
    }

    pub fn base(&self) -> &Condition {
        &self.base
    }

    pub fn parts(&self) -> &[Condition] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let alg = self.base.algebra();
        let mut acc = 0u64;
        for (i, p) in self.parts.iter().enumerate() {
            if p.algebra() != alg {
                return Err(Error::AlgebraMismatch);
            }
            if acc & p.bits != 0 {
                return Err(Error::PartitionInvalid(format!(
                    "part {i} overlaps an earlier part"
                )));
            }
            acc |= p.bits;
        }
        if acc != self.base.bits {
            return Err(Error::PartitionInvalid(format!(
                "parts join to {} instead of {}",
                alg.from_bits(acc),
                self.base
            )));
        }
        Ok(())
    }

    /// Index of the part containing atom `i`, if any.
    pub fn part_of_atom(&self, i: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains_atom(i))
    }

    /// Drops zero parts.
    pub fn without_zeros(&self) -> Partition {
        Partition {
            base: self.base.clone(),
            parts: self
                .parts
                .iter()
                .filter(|p| !p.is_zero())
                .cloned()
                .collect(),
        }
    }
}

/// The `(a, b, c)` partition of 1 produced by comparing under a total order:
/// `less` where `x < y`, `greater` where `y < x`, `equal` where they agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trichotomy {
    pub less: Condition,
    pub greater: Condition,
    pub equal: Condition,
}

impl Trichotomy {
    pub fn partition(&self) -> Partition {
        Partition::from_parts(
            &(&self.less | &self.greater) | &self.equal,
            vec![self.less.clone(), self.greater.clone(), self.equal.clone()],
        )
    }
}

pub fn is_partition(p: &Partition) -> bool {
    p.validate().is_ok()
}

/// `b_i = a_i ∧ (∨_{j<i} b_j)ᶜ`, with the list order as the well-order.
pub fn disjointify(family: &[Condition]) -> Result<Partition> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    let alg = first.algebra();
    let mut covered = alg.zero();
    let mut parts = Vec::with_capacity(family.len());
    for a in family {
        let b = a.meet(&covered.complement())?;
        covered = covered.join(&b)?;
        parts.push(b);
    }
    Ok(Partition {
        base: covered,
        parts,
    })
}

/// All pairwise meets `p_i ∧ q_j`, in row-major order, zeros kept.
pub fn refine(p: &Partition, q: &Partition) -> Result<Partition> {
    if p.base != q.base {
        if p.base.algebra() != q.base.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        return Err(Error::DifferentBase);
    }
    let mut parts = Vec::with_capacity(p.len() * q.len());
    for a in &p.parts {
        for b in &q.parts {
            parts.push(a.meet(b)?);
        }
    }
    Ok(Partition {
        base: p.base.clone(),
        parts,
    })
}

/// Groups atoms of `base` by a key, producing one part per distinct key in
/// first-appearance order.
pub fn stitch_by_key<K: PartialEq>(
    base: &Condition,
    key: impl Fn(usize) -> K,
) -> (Partition, Vec<K>) {
    let alg = base.algebra();
    let mut keys: Vec<K> = Vec::new();
    let mut bits: Vec<u64> = Vec::new();
    for i in base.atoms() {
        let k = key(i);
        match keys.iter().position(|x| *x == k) {
            Some(j) => bits[j] |= 1 << i,
            None => {
                keys.push(k);
                bits.push(1 << i);
            }
        }
    }
    let parts = bits.into_iter().map(|b| alg.from_bits(b)).collect();
    (Partition::from_parts(base.clone(), parts), keys)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg3() -> Algebra {
        Algebra::numbered(3).unwrap()
    }

    fn c(alg: &Algebra, names: &[&str]) -> Condition {
        alg.condition_named(names).unwrap()
    }

    #[test]
    fn lattice_examples() {
        let a = alg3();
        assert_eq!(
            c(&a, &["w1", "w2"]).meet(&c(&a, &["w2", "w3"])).unwrap(),
            c(&a, &["w2"])
        );
        let x = c(&a, &["w1", "w3"]);
        assert_eq!(&x & &a.one(), x);
        assert!((&x & &!&x).is_zero());
        assert_eq!(&c(&a, &["w1"]) | &c(&a, &["w2"]), c(&a, &["w1", "w2"]));
        assert_eq!(c(&a, &["w1"]).complement(), c(&a, &["w2", "w3"]));
        assert!(c(&a, &["w1"]).leq(&c(&a, &["w1", "w2"])).unwrap());
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = alg3();
        let b = Algebra::new(["u", "v"]).unwrap();
        assert!(matches!(
            a.one().meet(&b.one()),
            Err(Error::AlgebraMismatch)
        ));
        assert!(matches!(
            a.one().leq(&b.zero()),
            Err(Error::AlgebraMismatch)
        ));
    }

    #[test]
    fn algebra_invariants() {
        assert!(Algebra::new(Vec::<String>::new()).is_err());
        assert!(matches!(
            Algebra::new(["a", "a"]),
            Err(Error::DuplicateAtom(_))
        ));
        let d = AlgebraDescriptor {
            atoms: vec!["w1".into(), "w2".into()],
            weights: Some([("w1".into(), "1/3".into()), ("w2".into(), "2/3".into())].into()),
        };
        let alg = Algebra::from_descriptor(&d).unwrap();
        assert_eq!(alg.descriptor(), d);
        let bad = AlgebraDescriptor {
            atoms: vec!["w1".into()],
            weights: Some([("w1".into(), "-1".into())].into()),
        };
        assert!(Algebra::from_descriptor(&bad).is_err());
    }

    #[test]
    fn disjointify_examples() {
        let a = alg3();
        let p = disjointify(&[c(&a, &["w1", "w2"]), c(&a, &["w2", "w3"])]).unwrap();
        assert_eq!(p.parts(), &[c(&a, &["w1", "w2"]), c(&a, &["w3"])]);
        let single = disjointify(&[c(&a, &["w2"])]).unwrap();
        assert_eq!(single.parts(), &[c(&a, &["w2"])]);
        let forced = disjointify(&[c(&a, &["w1"]), c(&a, &["w1"])]).unwrap();
        assert_eq!(forced.parts(), &[c(&a, &["w1"]), a.zero()]);
        assert!(matches!(disjointify(&[]), Err(Error::EmptyFamily)));
    }

    #[test]
    fn refine_and_validate() {
        let a = alg3();
        let p = Partition::new(a.one(), vec![c(&a, &["w1"]), c(&a, &["w2", "w3"])]).unwrap();
        let q = Partition::new(a.one(), vec![c(&a, &["w1", "w2"]), c(&a, &["w3"])]).unwrap();
        let r = refine(&p, &q).unwrap();
        assert!(is_partition(&r));
        assert_eq!(
            r.without_zeros().parts(),
            &[c(&a, &["w1"]), c(&a, &["w2"]), c(&a, &["w3"])]
        );
        assert_eq!(refine(&p, &Partition::trivial(a.one())).unwrap(), p);
        let overlapping =
            Partition::from_parts(c(&a, &["w1"]), vec![c(&a, &["w1"]), c(&a, &["w1"])]);
        assert!(!is_partition(&overlapping));
        let other = Partition::trivial(c(&a, &["w1"]));
        assert!(matches!(refine(&p, &other), Err(Error::DifferentBase)));
    }

    #[test]
    fn relative_algebra_enumeration() {
        let a = alg3();
        let x = c(&a, &["w1", "w3"]);
        let below: Vec<_> = x.below().collect();
        assert_eq!(below.len(), 4);
        assert!(below.iter().all(|b| b.le(&x)));
        assert_eq!(a.zero().below().count(), 1);
        assert_eq!(a.conditions().count(), 8);
    }
}
