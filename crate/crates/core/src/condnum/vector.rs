//! `𝐑ⁿ` with a per-atom dimension, the ℓ² metric and ε-nets.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Cond, CondNat, CondReal};
use crate::boolalg::{Algebra, Trichotomy};
use crate::error::{Error, Result};
use crate::Rational;

/// A conditional vector: one rational vector per atom of the support.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CondRealVec(pub Cond<Vec<Rational>>);

impl std::ops::Deref for CondRealVec {
    type Target = Cond<Vec<Rational>>;
    fn deref(&self) -> &Cond<Vec<Rational>> {
        &self.0
    }
}

impl fmt::Display for CondRealVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for (i, v) in self.0.values().iter().enumerate() {
            if let Some(v) = v {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "{}↦[{}]", self.0.algebra().atom_name(i), parts.join(","))?;
            }
        }
        write!(f, ")")
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn sq_dist(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            &d * &d
        })
        .sum()
}

impl CondRealVec {
    pub fn total(alg: &Algebra, values: Vec<Vec<Rational>>) -> Result<Self> {
        if values.iter().any(Vec::is_empty) {
            return Err(Error::DimMismatch("dimension must be at least 1".into()));
        }
        Cond::total(alg, values).map(CondRealVec)
    }

    pub fn from_ints(alg: &Algebra, values: &[&[i64]]) -> Result<Self> {
        Self::total(
            alg,
            values
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    /// The zero vector of dimension `dims`.
    pub fn zeros(dims: &CondNat) -> Self {
        CondRealVec(dims.map(|_, &n| vec![Rational::zero(); n as usize]))
    }

    /// The `k`-th conditional unit vector (0-based), where it exists.
    pub fn unit(dims: &CondNat, k: usize) -> Self {
        CondRealVec(dims.map(|_, &n| {
            let mut v = vec![Rational::zero(); n as usize];
            if k < v.len() {
                v[k] = Rational::from_integer(1.into());
            }
            v
        }))
    }

    pub fn dims(&self) -> CondNat {
        self.0.map(|_, v| v.len() as u64)
    }

    fn zip(
        &self,
        o: &CondRealVec,
        f: impl Fn(&[Rational], &[Rational]) -> Vec<Rational>,
    ) -> Result<CondRealVec> {
        let mut bad = None;
        let out = self.0.zip_with(&o.0, |i, a, b| {
            if a.len() != b.len() {
                bad = Some(i);
            }
            f(a, b)
        })?;
        match bad {
            Some(i) => Err(Error::DimMismatch(format!(
                "lengths differ at `{}`",
                self.0.algebra().atom_name(i)
            ))),
            None => Ok(CondRealVec(out)),
        }
    }

    pub fn add(&self, o: &CondRealVec) -> Result<CondRealVec> {
        self.zip(o, |a, b| a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, o: &CondRealVec) -> Result<CondRealVec> {
        self.zip(o, |a, b| a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, l: &CondReal) -> Result<CondRealVec> {
        self.0
            .zip_with(&l.0, |_, v, s| v.iter().map(|x| x * s).collect())
            .map(CondRealVec)
    }

    pub fn dot(&self, o: &CondRealVec) -> Result<CondReal> {
        self.check_dims(o)?;
        self.0.zip_with(&o.0, |_, a, b| dot(a, b)).map(CondReal)
    }

    fn check_dims(&self, o: &CondRealVec) -> Result<()> {
        self.zip(o, |_, _| Vec::new()).map(|_| ())
    }

    /// `d(x, y)²`.
    pub fn sq_distance(&self, o: &CondRealVec) -> Result<CondReal> {
        self.check_dims(o)?;
        self.0.zip_with(&o.0, |_, a, b| sq_dist(a, b)).map(CondReal)
    }

    /// `d(x, y)` truncated to `digits` decimals, per atom.
    pub fn distance_decimal(&self, o: &CondRealVec, digits: u32) -> Result<Cond<String>> {
        let sq = self.sq_distance(o)?;
        Ok(sq.0.map(|_, v| sqrt_decimal(v, digits)))
    }
}

/// `√v` truncated to `digits` decimals.
pub fn sqrt_decimal(v: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(2 * digits);
    let scaled = (v * Rational::from_integer(scale)).floor().to_integer();
    let root = scaled.sqrt().to_string();
    if digits == 0 {
        return root;
    }
    let d = digits as usize;
    let padded = format!("{root:0>width$}", width = d + 1);
    let (int, frac) = padded.split_at(padded.len() - d);
    format!("{int}.{frac}")
}

/// `√a ≤ √b + √c` for non-negative rationals, decided exactly.
pub fn sqrt_le_sum(a: &Rational, b: &Rational, c: &Rational) -> bool {
    let t = a - b - c;
    if !t.is_positive() {
        return true;
    }
    &t * &t <= Rational::from_integer(4.into()) * b * c
}

/// Trichotomy of `d(x, y)` against `r`, via `d² ` against `r²`.
pub fn metric_compare(x: &CondRealVec, y: &CondRealVec, r: &CondReal) -> Result<Trichotomy> {
    if !r.is_nonnegative() {
        return Err(Error::Invalid("radius must be non-negative".into()));
    }
    let sq = x.sq_distance(y)?;
    sq.compare(&r.mul(r)?)
}

/// `d(x, z) ≤ d(x, y) + d(y, z)` on every atom.
pub fn triangle_holds(x: &CondRealVec, y: &CondRealVec, z: &CondRealVec) -> Result<bool> {
    let xz = x.sq_distance(z)?;
    let xy = x.sq_distance(y)?;
    let yz = y.sq_distance(z)?;
    Ok(xz
        .0
        .values()
        .iter()
        .zip(xy.0.values())
        .zip(yz.0.values())
        .all(|((a, b), c)| match (a, b, c) {
            (Some(a), Some(b), Some(c)) => sqrt_le_sum(a, b, c),
            _ => true,
        }))
}

/// A per-atom axis-parallel box `[lo, hi]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CondBox(pub Cond<(Vec<Rational>, Vec<Rational>)>);

impl CondBox {
    pub fn new(alg: &Algebra, bounds: Vec<(Vec<Rational>, Vec<Rational>)>) -> Result<Self> {
        for (i, (lo, hi)) in bounds.iter().enumerate() {
            if lo.len() != hi.len() || lo.is_empty() {
                return Err(Error::DimMismatch(format!(
                    "box corners differ at `{}`",
                    alg.atom_name(i)
                )));
            }
            if lo.iter().zip(hi).any(|(l, h)| l > h) {
                return Err(Error::Invalid(format!(
                    "empty box at `{}`",
                    alg.atom_name(i)
                )));
            }
        }
        Cond::total(alg, bounds).map(CondBox)
    }

    pub fn contains(&self, atom: usize, p: &[Rational]) -> bool {
        let (lo, hi) = self.0.at(atom);
        p.len() == lo.len() && p.iter().zip(lo).zip(hi).all(|((x, l), h)| l <= x && x <= h)
    }
}

/// Centers of an ε-net with its conditional cardinality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsNet {
    pub eps: CondReal,
    pub centers: Cond<Vec<Vec<Rational>>>,
    /// Grid cells per coordinate.
    pub steps: Cond<Vec<u64>>,
    pub count: CondNat,
}

impl EpsNet {
    /// Whether `p` lies strictly within `eps` of some center at `atom`.
    pub fn covers(&self, atom: usize, p: &[Rational]) -> bool {
        let e = self.eps.at(atom);
        let e2 = e * e;
        self.centers.at(atom).iter().any(|c| sq_dist(c, p) < e2)
    }
}

const MAX_NET: u64 = 1 << 20;

/// A grid of cell centers: with `m` cells on a side of width `w` in dimension
/// `d`, every point is within `√(∑ (w_k / 2m_k)²)` of its cell center, so `m_k`
/// is the least integer with `d·(w_k / 2m_k)² < ε²`.
pub fn eps_net(bx: &CondBox, eps: &CondReal) -> Result<EpsNet> {
    if !eps.is_strictly_positive() || !eps.lives_on_one() {
        return Err(Error::EpsNotPositive);
    }
    let alg = bx.0.algebra();
    let mut steps = Vec::with_capacity(alg.len());
    let mut centers = Vec::with_capacity(alg.len());
    for i in 0..alg.len() {
        let (lo, hi) = bx.0.at(i);
        let d = Rational::from_integer((lo.len() as i64).into());
        let e = eps.at(i);
        let mut ms = Vec::with_capacity(lo.len());
        for (l, h) in lo.iter().zip(hi) {
            let w = h - l;
            let t = &w * &w * &d / (Rational::from_integer(4.into()) * e * e);
            let m: BigInt = Roots::sqrt(&t.floor().to_integer()) + 1;
            ms.push(
                m.to_u64()
                    .filter(|&m| m <= MAX_NET)
                    .ok_or_else(|| Error::Invalid("net too large for the requested eps".into()))?,
            );
        }
        let total: u64 = ms
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .unwrap_or(u64::MAX);
        if total > MAX_NET {
            return Err(Error::Invalid("net too large for the requested eps".into()));
        }
        let mut pts: Vec<Vec<Rational>> = vec![Vec::new()];
        for ((l, h), &m) in lo.iter().zip(hi).zip(&ms) {
            let mr = Rational::from_integer((m as i64).into());
            let w = (h - l) / &mr;
            let half = Rational::new(1.into(), 2.into());
            let mut next = Vec::with_capacity(pts.len() * m as usize);
            for p in &pts {
                for j in 0..m {
                    let jr = Rational::from_integer((j as i64).into());
                    let mut q = p.clone();
                    q.push(l + (&jr + &half) * &w);
                    next.push(q);
                }
            }
            pts = next;
        }
        steps.push(ms);
        centers.push(pts);
    }
    let count = Cond::total(alg, centers.iter().map(|c| c.len() as u64).collect())?;
    Ok(EpsNet {
        eps: eps.clone(),
        centers: Cond::total(alg, centers)?,
        steps: Cond::total(alg, steps)?,
        count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        crate::parse_rational(s).unwrap()
    }

    #[test]
    fn squared_comparison_example() {
        let alg = Algebra::numbered(2).unwrap();
        let x = CondRealVec::from_ints(&alg, &[&[3, 4], &[5]]).unwrap();
        let y = CondRealVec::from_ints(&alg, &[&[0, 0], &[0]]).unwrap();
        let five = CondReal::from_ints(&alg, &[5, 5]).unwrap();
        let t = metric_compare(&x, &y, &five).unwrap();
        assert_eq!(t.equal, alg.one());
        let t0 = metric_compare(&x, &x, &CondReal::zero(&alg)).unwrap();
        assert_eq!(
            (t0.less.is_zero(), t0.greater.is_zero(), t0.equal.is_one()),
            (true, true, true)
        );
        let z = CondRealVec::from_ints(&alg, &[&[1], &[1]]).unwrap();
        assert!(matches!(x.sq_distance(&z), Err(Error::DimMismatch(_))));
    }

    #[test]
    fn decimal_distances() {
        assert_eq!(sqrt_decimal(&r("2"), 4), "1.4142");
        assert_eq!(sqrt_decimal(&r("25"), 2), "5.00");
        assert_eq!(sqrt_decimal(&r("1/100"), 3), "0.100");
        assert_eq!(sqrt_decimal(&r("1/10000"), 1), "0.0");
    }

    #[test]
    fn exact_triangle_decision() {
        assert!(sqrt_le_sum(&r("4"), &r("1"), &r("1")));
        assert!(!sqrt_le_sum(&r("5"), &r("1"), &r("1")));
        assert!(sqrt_le_sum(&r("2"), &r("1"), &r("1")));
    }

    #[test]
    fn net_examples() {
        let alg = Algebra::numbered(2).unwrap();
        let point = CondBox::new(&alg, vec![(vec![r("1")], vec![r("1")]); 2]).unwrap();
        let net = eps_net(&point, &CondReal::constant(&alg, r("1/10"))).unwrap();
        assert_eq!(net.count, CondNat::constant(&alg, 1));
        assert_eq!(net.centers.at(0), &vec![vec![r("1")]]);
        let unit = CondBox::new(&alg, vec![(vec![r("0")], vec![r("1")]); 2]).unwrap();
        let one = eps_net(&unit, &CondReal::constant(&alg, r("1"))).unwrap();
        assert_eq!(one.count, CondNat::constant(&alg, 1));
        let mixed = eps_net(
            &unit,
            &CondReal::total(&alg, vec![r("1"), r("1/10")]).unwrap(),
        )
        .unwrap();
        assert_eq!(mixed.count.at(0), &1);
        assert_eq!(mixed.count.at(1), &6);
        for k in 0..=20 {
            let p = vec![Rational::new(k.into(), 20.into())];
            assert!(mixed.covers(0, &p) && mixed.covers(1, &p));
        }
        assert!(matches!(
            eps_net(&unit, &CondReal::zero(&alg)),
            Err(Error::EpsNotPositive)
        ));
    }
}
