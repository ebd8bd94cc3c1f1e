//! Conditional numbers in per-atom form.
//!
//! On a finite atomic algebra a conditional real is one exact rational per
//! atom. Comparisons return [`Trichotomy`] partitions rather than booleans;
//! `𝐍` starts at 1.

pub mod cauchy;
pub mod metric;
pub mod vector;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::boolalg::{Algebra, Condition, Partition, Trichotomy};
use crate::condset::{CondSet, Local, Value};
use crate::error::{Error, Result};
use crate::Rational;

pub use cauchy::{cauchy_check, cauchy_equiv, cauchy_limit, CauchySeqQ, Term};
pub use metric::{heine_borel_finite, FiniteMetricSpace, HeineBorelReport};
pub use vector::{eps_net, metric_compare, CondBox, CondRealVec, EpsNet};

/// Per-atom data living on a support.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cond<T> {
    alg: Algebra,
    values: Vec<Option<T>>,
}

impl<T: Clone> Cond<T> {
    pub fn new(alg: &Algebra, values: Vec<Option<T>>) -> Result<Self> {
        if values.len() != alg.len() {
            return Err(Error::Invalid(format!(
                "{} values for {} atoms",
                values.len(),
                alg.len()
            )));
        }
        Ok(Cond {
            alg: alg.clone(),
            values,
        })
    }

    pub fn total(alg: &Algebra, values: Vec<T>) -> Result<Self> {
        Self::new(alg, values.into_iter().map(Some).collect())
    }

    pub fn constant(alg: &Algebra, v: T) -> Self {
        Cond {
            alg: alg.clone(),
            values: vec![Some(v); alg.len()],
        }
    }

    pub fn from_fn(alg: &Algebra, mut f: impl FnMut(usize) -> T) -> Self {
        Cond {
            alg: alg.clone(),
            values: (0..alg.len()).map(|i| Some(f(i))).collect(),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn values(&self) -> &[Option<T>] {
        &self.values
    }

    pub fn get(&self, atom: usize) -> Option<&T> {
        self.values[atom].as_ref()
    }

    /// Value at an atom of the support; panics elsewhere.
    pub fn at(&self, atom: usize) -> &T {
        self.values[atom]
            .as_ref()
            .expect("atom outside the support")
    }

    pub fn support(&self) -> Condition {
        self.alg.condition(
            self.values
                .iter()
                .enumerate()
                .filter_map(|(i, v)| v.as_ref().map(|_| i)),
        )
    }

    pub fn lives_on_one(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    pub fn restrict(&self, a: &Condition) -> Self {
        Cond {
            alg: self.alg.clone(),
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| if a.contains_atom(i) { v.clone() } else { None })
                .collect(),
        }
    }

    pub fn map<U>(&self, mut f: impl FnMut(usize, &T) -> U) -> Cond<U> {
        Cond {
            alg: self.alg.clone(),
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| v.as_ref().map(|v| f(i, v)))
                .collect(),
        }
    }

    /// Combines two values with equal supports atom by atom.
    pub fn zip_with<U: Clone, V>(
        &self,
        other: &Cond<U>,
        mut f: impl FnMut(usize, &T, &U) -> V,
    ) -> Result<Cond<V>> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch);
        }
        let mut values = Vec::with_capacity(self.values.len());
        for (i, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            values.push(match (a, b) {
                (Some(a), Some(b)) => Some(f(i, a, b)),
                (None, None) => None,
                _ => {
                    return Err(Error::SupportMismatch(format!(
                        "operands differ in support at `{}`",
                        self.alg.atom_name(i)
                    )))
                }
            });
        }
        Ok(Cond {
            alg: self.alg.clone(),
            values,
        })
    }

    /// Join of the atoms of the support where `pred` holds.
    pub fn condition_where(&self, mut pred: impl FnMut(usize, &T) -> bool) -> Condition {
        self.alg.condition(
            self.values
                .iter()
                .enumerate()
                .filter_map(|(i, v)| v.as_ref().filter(|v| pred(i, v)).map(|_| i)),
        )
    }
}

impl<T: Clone> Local for Cond<T> {
    fn support(&self) -> Condition {
        Cond::support(self)
    }

    fn restrict(&self, a: &Condition) -> Self {
        Cond::restrict(self, a)
    }

    fn glue(partition: &Partition, picks: &[Self]) -> Result<Self> {
        partition.validate()?;
        if picks.len() != partition.len() || picks.is_empty() {
            return Err(Error::PartitionInvalid("one pick per part required".into()));
        }
        let alg = picks[0].alg.clone();
        let mut values = vec![None; alg.len()];
        for (k, (part, p)) in partition.parts().iter().zip(picks).enumerate() {
            let s = p.support();
            if s != *part {
                return Err(Error::PickSupportMismatch {
                    index: k,
                    expected: part.clone(),
                    found: s,
                });
            }
            for (i, v) in p.values.iter().enumerate() {
                if v.is_some() {
                    values[i] = v.clone();
                }
            }
        }
        Ok(Cond { alg, values })
    }
}

impl<T: fmt::Display> fmt::Display for Cond<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for (i, v) in self.values.iter().enumerate() {
            if let Some(v) = v {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "{}↦{}", self.alg.atom_name(i), v)?;
            }
        }
        write!(f, ")")
    }
}

/// A conditional natural number; every value is at least 1.
pub type CondNat = Cond<u64>;
/// A conditional integer.
pub type CondInt = Cond<BigInt>;
/// A conditional rational.
pub type CondRat = Cond<Rational>;

impl Cond<u64> {
    pub fn nat(alg: &Algebra, values: Vec<u64>) -> Result<Self> {
        if values.contains(&0) {
            return Err(Error::Invalid("natural numbers start at 1".into()));
        }
        Self::total(alg, values)
    }

    /// `{1 ≤ l ≤ n}` as a conditional set with carrier `1..=n_ω` at each atom.
    pub fn interval_set(&self) -> Result<CondSet> {
        if !self.lives_on_one() {
            return Err(Error::SupportMismatch("n must live on 1".into()));
        }
        let carriers = self
            .values
            .iter()
            .map(|n| (1..=n.unwrap() as i64).map(Value::Int).collect())
            .collect();
        CondSet::from_carriers(&self.alg, carriers)
    }

    /// The partition `(a_i)` and distinct values `n_i` with `n = ∑ a_i n_i`.
    pub fn stitched(&self) -> (Partition, Vec<u64>) {
        crate::boolalg::stitch_by_key(&self.support(), |i| *self.at(i))
    }
}

/// A conditional real: one exact rational per atom of its support.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CondReal(pub Cond<Rational>);

impl fmt::Display for CondReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl std::ops::Deref for CondReal {
    type Target = Cond<Rational>;
    fn deref(&self) -> &Cond<Rational> {
        &self.0
    }
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

impl CondReal {
    pub fn new(alg: &Algebra, values: Vec<Option<Rational>>) -> Result<Self> {
        Cond::new(alg, values).map(CondReal)
    }

    pub fn total(alg: &Algebra, values: Vec<Rational>) -> Result<Self> {
        Cond::total(alg, values).map(CondReal)
    }

    pub fn from_ints(alg: &Algebra, values: &[i64]) -> Result<Self> {
        Self::total(alg, values.iter().map(|&v| rat(v)).collect())
    }

    pub fn constant(alg: &Algebra, v: Rational) -> Self {
        CondReal(Cond::constant(alg, v))
    }

    pub fn zero(alg: &Algebra) -> Self {
        Self::constant(alg, Rational::zero())
    }

    pub fn one(alg: &Algebra) -> Self {
        Self::constant(alg, Rational::one())
    }

    /// The embedding `𝐐 ↪ 𝐑`.
    pub fn from_rat(q: &CondRat) -> Self {
        CondReal(q.clone())
    }

    pub fn from_nat(n: &CondNat) -> Self {
        CondReal(n.map(|_, v| rat(*v as i64)))
    }

    pub fn restrict(&self, a: &Condition) -> Self {
        CondReal(self.0.restrict(a))
    }

    pub fn add(&self, o: &CondReal) -> Result<CondReal> {
        self.0.zip_with(&o.0, |_, a, b| a + b).map(CondReal)
    }

    pub fn sub(&self, o: &CondReal) -> Result<CondReal> {
        self.0.zip_with(&o.0, |_, a, b| a - b).map(CondReal)
    }

    pub fn mul(&self, o: &CondReal) -> Result<CondReal> {
        self.0.zip_with(&o.0, |_, a, b| a * b).map(CondReal)
    }

    pub fn neg(&self) -> CondReal {
        CondReal(self.0.map(|_, v| -v))
    }

    /// Reciprocal; fails with the condition on which the value is 0.
    pub fn inv(&self) -> Result<CondReal> {
        let zero = self.0.condition_where(|_, v| v.is_zero());
        if !zero.is_zero() {
            return Err(Error::NotInvertible(zero));
        }
        Ok(CondReal(self.0.map(|_, v| v.recip())))
    }

    pub fn abs(&self) -> CondReal {
        CondReal(self.0.map(|_, v| v.abs()))
    }

    pub fn max(&self, o: &CondReal) -> Result<CondReal> {
        self.0
            .zip_with(&o.0, |_, a, b| if a >= b { a.clone() } else { b.clone() })
            .map(CondReal)
    }

    pub fn min(&self, o: &CondReal) -> Result<CondReal> {
        self.0
            .zip_with(&o.0, |_, a, b| if a <= b { a.clone() } else { b.clone() })
            .map(CondReal)
    }

    /// Trichotomy partition of the common support.
    pub fn compare(&self, o: &CondReal) -> Result<Trichotomy> {
        let ord = self.0.zip_with(&o.0, |_, a, b| a.cmp(b))?;
        Ok(Trichotomy {
            less: ord.condition_where(|_, c| c.is_lt()),
            greater: ord.condition_where(|_, c| c.is_gt()),
            equal: ord.condition_where(|_, c| c.is_eq()),
        })
    }

    /// `x < y` on the whole support.
    pub fn lt(&self, o: &CondReal) -> Result<bool> {
        Ok(self.compare(o)?.less == self.support())
    }

    /// `x ≤ y` on the whole support.
    pub fn le(&self, o: &CondReal) -> Result<bool> {
        let t = self.compare(o)?;
        Ok(t.greater.is_zero())
    }

    /// Membership in `𝐑₊₊`.
    pub fn is_strictly_positive(&self) -> bool {
        self.0.values().iter().flatten().all(|v| v.is_positive())
    }

    /// Membership in `𝐑₊`.
    pub fn is_nonnegative(&self) -> bool {
        self.0.values().iter().flatten().all(|v| !v.is_negative())
    }

    /// Least `n ∈ 𝐍 = {1, 2, ...}` with `n > x`, atom by atom.
    pub fn archimedean_bound(&self) -> CondNat {
        self.0.map(|_, v| {
            let next = v.floor().to_integer() + BigInt::one();
            next.to_u64()
                .filter(|&n| n >= 1)
                .unwrap_or(if next.is_positive() { u64::MAX } else { 1 })
        })
    }
}

/// Supremum of the stable hull of finitely many reals with a common support.
pub fn cond_sup(generators: &[CondReal]) -> Result<CondReal> {
    fold_extreme(generators, |a, b| a.max(b))
}

/// Infimum of the stable hull of finitely many reals with a common support.
pub fn cond_inf(generators: &[CondReal]) -> Result<CondReal> {
    fold_extreme(generators, |a, b| a.min(b))
}

fn fold_extreme(
    generators: &[CondReal],
    f: impl Fn(&CondReal, &CondReal) -> Result<CondReal>,
) -> Result<CondReal> {
    let (first, rest) = generators.split_first().ok_or(Error::EmptyInput)?;
    rest.iter().try_fold(first.clone(), |acc, g| f(&acc, g))
}

/// Outcome of a ball membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallReport {
    pub inside: bool,
    /// `|q − y|` compared with `eps`.
    pub comparison: Trichotomy,
}

/// `y ∈ B_ε(q)`, i.e. `|q − y| < ε` on the whole support.
pub fn ball_contains(q: &CondReal, eps: &CondReal, y: &CondReal) -> Result<BallReport> {
    if !eps.is_strictly_positive() {
        return Err(Error::EpsNotPositive);
    }
    let d = q.sub(y)?.abs();
    let comparison = d.compare(eps)?;
    Ok(BallReport {
        inside: comparison.less == d.support(),
        comparison,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        crate::parse_rational(s).unwrap()
    }

    fn alg2() -> Algebra {
        Algebra::numbered(2).unwrap()
    }

    #[test]
    fn reciprocal_examples() {
        let a = alg2();
        let x = CondReal::total(&a, vec![r("2"), r("1/3")]).unwrap();
        assert_eq!(
            x.inv().unwrap(),
            CondReal::total(&a, vec![r("1/2"), r("3")]).unwrap()
        );
        assert_eq!(x.add(&x.neg()).unwrap(), CondReal::zero(&a));
        let z = CondReal::from_ints(&a, &[0, 1]).unwrap();
        match z.inv() {
            Err(Error::NotInvertible(c)) => assert_eq!(c, a.atom(0)),
            other => panic!("expected NotInvertible, got {other:?}"),
        }
    }

    #[test]
    fn compare_examples() {
        let a = alg2();
        let x = CondReal::from_ints(&a, &[1, 3]).unwrap();
        let y = CondReal::from_ints(&a, &[2, 3]).unwrap();
        let t = x.compare(&y).unwrap();
        assert_eq!(
            (t.less.clone(), t.greater.clone(), t.equal.clone()),
            (a.atom(0), a.zero(), a.atom(1))
        );
        assert!(crate::boolalg::is_partition(&t.partition()));
        assert_eq!(x.neg().abs(), x.abs());
    }

    #[test]
    fn sup_inf_examples() {
        let a = alg2();
        let g1 = CondReal::from_ints(&a, &[1, 5]).unwrap();
        let g2 = CondReal::from_ints(&a, &[3, 2]).unwrap();
        let gs = [g1.clone(), g2];
        assert_eq!(
            cond_sup(&gs).unwrap(),
            CondReal::from_ints(&a, &[3, 5]).unwrap()
        );
        assert_eq!(
            cond_inf(&gs).unwrap(),
            CondReal::from_ints(&a, &[1, 2]).unwrap()
        );
        assert_eq!(cond_sup(std::slice::from_ref(&g1)).unwrap(), g1);
        assert!(matches!(cond_sup(&[]), Err(Error::EmptyInput)));
        let w1 = a.atom(0);
        let restricted: Vec<CondReal> = gs.iter().map(|g| g.restrict(&w1)).collect();
        assert_eq!(
            cond_sup(&restricted).unwrap(),
            cond_sup(&gs).unwrap().restrict(&w1)
        );
    }

    #[test]
    fn archimedean_examples() {
        let a = alg2();
        let x = CondReal::total(&a, vec![r("7/2"), r("-1")]).unwrap();
        assert_eq!(x.archimedean_bound(), CondNat::nat(&a, vec![4, 1]).unwrap());
        let neg = CondReal::total(&a, vec![r("-5/2"), r("-1/7")]).unwrap();
        assert_eq!(neg.archimedean_bound(), CondNat::constant(&a, 1));
        let n = CondReal::from_nat(&x.archimedean_bound());
        assert!(x.lt(&n).unwrap());
        let int = CondReal::from_ints(&a, &[3, 0]).unwrap();
        assert_eq!(
            int.archimedean_bound(),
            CondNat::nat(&a, vec![4, 1]).unwrap()
        );
    }

    #[test]
    fn ball_examples() {
        let a = alg2();
        let q = CondReal::from_ints(&a, &[0, 0]).unwrap();
        let eps = CondReal::from_ints(&a, &[1, 2]).unwrap();
        assert!(ball_contains(&q, &eps, &q).unwrap().inside);
        let edge = CondReal::from_ints(&a, &[1, 0]).unwrap();
        let rep = ball_contains(&q, &eps, &edge).unwrap();
        assert!(!rep.inside);
        assert_eq!(rep.comparison.equal, a.atom(0));
        assert_eq!(rep.comparison.less, a.atom(1));
        let bad = CondReal::from_ints(&a, &[1, 0]).unwrap();
        assert!(matches!(
            ball_contains(&q, &bad, &q),
            Err(Error::EpsNotPositive)
        ));
    }

    #[test]
    fn interval_sets() {
        let a = alg2();
        let n = CondNat::nat(&a, vec![2, 3]).unwrap();
        let s = n.interval_set().unwrap();
        assert_eq!(s.carrier_len(0), 2);
        assert_eq!(s.carrier_len(1), 3);
        let (p, vals) = n.stitched();
        assert_eq!(p.len(), 2);
        assert_eq!(vals, vec![2, 3]);
        assert!(CondNat::nat(&a, vec![0, 1]).is_err());
    }
}
