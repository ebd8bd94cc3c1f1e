//! Rational Cauchy sequences from a finitely describable class.
//!
//! At each atom a sequence is a finite sum of terms, each either eventually
//! constant or geometric `c + r·sⁿ` with `|s| < 1`. Sums of such sequences
//! stay in the class, which gives the quotient addition. Indices start at 1.

use num_traits::{One, Signed, Zero};

use super::{Cond, CondNat, CondReal};
use crate::boolalg::Algebra;
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    /// `head` for `n < switch`, `tail` from `switch` on.
    EventuallyConstant {
        head: Rational,
        tail: Rational,
        switch: u64,
    },
    /// `c + r·sⁿ`.
    Geometric {
        c: Rational,
        r: Rational,
        s: Rational,
    },
}

impl Term {
    fn validate(&self) -> Result<()> {
        match self {
            Term::EventuallyConstant { switch, .. } if *switch == 0 => Err(
                Error::MalformedDescriptor("switch index starts at 1".into()),
            ),
            Term::Geometric { s, .. } if s.abs() >= Rational::one() => Err(
                Error::MalformedDescriptor(format!("|s| = |{s}| is not below 1")),
            ),
            _ => Ok(()),
        }
    }

    pub fn value(&self, n: u64) -> Rational {
        match self {
            Term::EventuallyConstant { head, tail, switch } => {
                if n < *switch {
                    head.clone()
                } else {
                    tail.clone()
                }
            }
            Term::Geometric { c, r, s } => c + r * pow(s, n),
        }
    }

    pub fn limit(&self) -> Rational {
        match self {
            Term::EventuallyConstant { tail, .. } => tail.clone(),
            Term::Geometric { c, .. } => c.clone(),
        }
    }

    /// Least `n₀ ≥ 1` with `|q_n − q_m| < ε` for all `n, m ≥ n₀`.
    ///
    /// For the geometric term `|q_n − q_m| ≤ 2|r||s|^{min(n,m)}`.
    pub fn modulus(&self, eps: &Rational) -> u64 {
        match self {
            Term::EventuallyConstant { switch, .. } => (*switch).max(1),
            Term::Geometric { r, s, .. } => {
                let two_r = Rational::from_integer(2.into()) * r.abs();
                if two_r.is_zero() || s.is_zero() {
                    return 1;
                }
                let s = s.abs();
                let mut n = 1;
                let mut bound = &two_r * &s;
                while &bound >= eps {
                    bound *= &s;
                    n += 1;
                }
                n
            }
        }
    }
}

fn pow(s: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut base = s.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// A conditional rational sequence, one term list per atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchySeqQ(pub Cond<Vec<Term>>);

impl CauchySeqQ {
    pub fn new(alg: &Algebra, per_atom: Vec<Vec<Term>>) -> Result<Self> {
        for terms in &per_atom {
            if terms.is_empty() {
                return Err(Error::MalformedDescriptor("empty term list".into()));
            }
            terms.iter().try_for_each(Term::validate)?;
        }
        Cond::total(alg, per_atom).map(CauchySeqQ)
    }

    pub fn eventually_constant(
        alg: &Algebra,
        head: Rational,
        tail: Rational,
        switch: u64,
    ) -> Result<Self> {
        Self::new(
            alg,
            vec![vec![Term::EventuallyConstant { head, tail, switch }]; alg.len()],
        )
    }

    pub fn geometric(alg: &Algebra, c: Rational, r: Rational, s: Rational) -> Result<Self> {
        Self::new(alg, vec![vec![Term::Geometric { c, r, s }]; alg.len()])
    }

    /// `q_n` at every atom.
    pub fn term(&self, n: u64) -> CondReal {
        CondReal(self.0.map(|_, ts| ts.iter().map(|t| t.value(n)).sum()))
    }

    /// The conditional `n₀(ε)`.
    pub fn modulus(&self, eps: &CondReal) -> Result<CondNat> {
        if !eps.is_strictly_positive() {
            return Err(Error::EpsNotPositive);
        }
        self.0.zip_with(&eps.0, |_, ts, e| {
            let share = e / Rational::from_integer((ts.len() as i64).into());
            ts.iter().map(|t| t.modulus(&share)).max().unwrap_or(1)
        })
    }

    /// `[(q_n)] + [(p_n)] = [(q_n + p_n)]`.
    pub fn add(&self, o: &CauchySeqQ) -> Result<CauchySeqQ> {
        self.0
            .zip_with(&o.0, |_, a, b| a.iter().chain(b).cloned().collect())
            .map(CauchySeqQ)
    }

    pub fn neg(&self) -> CauchySeqQ {
        CauchySeqQ(self.0.map(|_, ts| {
            ts.iter()
                .map(|t| match t {
                    Term::EventuallyConstant { head, tail, switch } => Term::EventuallyConstant {
                        head: -head,
                        tail: -tail,
                        switch: *switch,
                    },
                    Term::Geometric { c, r, s } => Term::Geometric {
                        c: -c,
                        r: -r,
                        s: s.clone(),
                    },
                })
                .collect()
        }))
    }
}

const CHECK_EPS: [(i64, i64); 4] = [(1, 1), (1, 10), (1, 1000), (1, 1_000_000)];
const WINDOW: u64 = 24;

/// Confirms the Cauchy property: for several `ε`, every pair of indices in a
/// window past the closed-form modulus differs by less than `ε`.
pub fn cauchy_check(s: &CauchySeqQ) -> Result<bool> {
    for ts in s.0.values().iter().flatten() {
        ts.iter().try_for_each(Term::validate)?;
    }
    let alg = s.0.algebra();
    for (p, q) in CHECK_EPS {
        let eps = CondReal::constant(alg, Rational::new(p.into(), q.into()));
        let n0 = s.modulus(&eps)?;
        for i in 0..alg.len() {
            let start = *n0.at(i);
            let vals: Vec<Rational> = (start..start + WINDOW)
                .map(|n| s.0.at(i).iter().map(|t| t.value(n)).sum())
                .collect();
            let (lo, hi) = (vals.iter().min().unwrap(), vals.iter().max().unwrap());
            if hi - lo >= *eps.at(i) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn cauchy_limit(s: &CauchySeqQ) -> CondReal {
    CondReal(s.0.map(|_, ts| ts.iter().map(Term::limit).sum()))
}

/// `(q_n) ∼ (p_n)`: the difference tends to 0, i.e. the limits agree at every atom.
pub fn cauchy_equiv(s: &CauchySeqQ, t: &CauchySeqQ) -> Result<bool> {
    let d = cauchy_limit(&s.add(&t.neg())?);
    Ok(d.0.values().iter().flatten().all(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        crate::parse_rational(s).unwrap()
    }

    #[test]
    fn equivalence_examples() {
        let alg = Algebra::numbered(2).unwrap();
        let ec = CauchySeqQ::eventually_constant(&alg, r("0"), r("3"), 5).unwrap();
        let geo = CauchySeqQ::geometric(&alg, r("3"), r("1"), r("1/2")).unwrap();
        assert!(cauchy_check(&ec).unwrap());
        assert!(cauchy_check(&geo).unwrap());
        assert!(cauchy_equiv(&ec, &geo).unwrap());
        assert_eq!(
            cauchy_limit(&geo),
            CondReal::from_ints(&alg, &[3, 3]).unwrap()
        );
        let other = CauchySeqQ::eventually_constant(&alg, r("0"), r("4"), 1).unwrap();
        assert!(!cauchy_equiv(&ec, &other).unwrap());
        let sum = ec.add(&geo).unwrap();
        assert!(cauchy_check(&sum).unwrap());
        assert_eq!(
            cauchy_limit(&sum),
            cauchy_limit(&ec).add(&cauchy_limit(&geo)).unwrap()
        );
    }

    #[test]
    fn malformed_descriptors() {
        let alg = Algebra::numbered(1).unwrap();
        assert!(matches!(
            CauchySeqQ::geometric(&alg, r("0"), r("1"), r("-1")),
            Err(Error::MalformedDescriptor(_))
        ));
        assert!(matches!(
            CauchySeqQ::eventually_constant(&alg, r("0"), r("1"), 0),
            Err(Error::MalformedDescriptor(_))
        ));
    }

    #[test]
    fn geometric_modulus_is_tight() {
        let t = Term::Geometric {
            c: r("0"),
            r: r("1"),
            s: r("1/2"),
        };
        // 2·(1/2)^n < 1/100 first holds at n = 8.
        assert_eq!(t.modulus(&r("1/100")), 8);
        assert_eq!(t.value(3), r("1/8"));
    }
}
