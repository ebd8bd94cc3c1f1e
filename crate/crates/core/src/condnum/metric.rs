//! Finite conditional metric spaces and the three compactness clauses.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::{Cond, CondNat, CondReal};
use crate::condset::{CondSet, PointSet};
use crate::condtop::{is_compact, Compactness, CondTopology};
use crate::error::{Error, Result};
use crate::Rational;

/// A conditional set with one exact distance matrix per atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    space: CondSet,
    dist: Vec<Vec<Vec<Rational>>>,
}

impl FiniteMetricSpace {
    pub fn new(space: &CondSet, dist: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let alg = space.algebra();
        if dist.len() != alg.len() {
            return Err(Error::DimMismatch("one distance matrix per atom".into()));
        }
        for (i, d) in dist.iter().enumerate() {
            let n = space.carrier_len(i);
            if d.len() != n || d.iter().any(|row| row.len() != n) {
                return Err(Error::DimMismatch(format!(
                    "matrix at `{}` is not {n}×{n}",
                    alg.atom_name(i)
                )));
            }
            let fail = |axiom: &str| Error::MetricAxiomViolation {
                atom: alg.atom_name(i).to_string(),
                axiom: axiom.to_string(),
            };
            for p in 0..n {
                for q in 0..n {
                    if d[p][q].is_negative() {
                        return Err(fail("non-negativity"));
                    }
                    if (p == q) != d[p][q].is_zero() {
                        return Err(fail("identity of indiscernibles"));
                    }
                    if d[p][q] != d[q][p] {
                        return Err(fail("symmetry"));
                    }
                    if (0..n).any(|r| d[p][r] > &d[p][q] + &d[q][r]) {
                        return Err(fail("triangle inequality"));
                    }
                }
            }
        }
        Ok(FiniteMetricSpace {
            space: space.clone(),
            dist,
        })
    }

    pub fn space(&self) -> &CondSet {
        &self.space
    }

    pub fn distance(&self, atom: usize, p: u32, q: u32) -> &Rational {
        &self.dist[atom][p as usize][q as usize]
    }

    /// `B_r(p) = {q : d(p, q) < r}`.
    pub fn ball(&self, atom: usize, p: u32, r: &Rational) -> PointSet {
        PointSet::from_indices(
            (0..self.space.carrier_len(atom) as u32).filter(|&q| self.distance(atom, p, q) < r),
        )
    }

    /// The distinct positive distances at an atom, ascending.
    fn radii(&self, atom: usize) -> Vec<Rational> {
        let set: BTreeSet<&Rational> = self.dist[atom]
            .iter()
            .flatten()
            .filter(|d| d.is_positive())
            .collect();
        set.into_iter().cloned().collect()
    }

    /// The topology generated by all open balls. Radii just above each
    /// distance realize every distinct ball.
    pub fn ball_topology(&self) -> Result<CondTopology> {
        let alg = self.space.algebra();
        let subbase: Vec<Vec<PointSet>> = (0..alg.len())
            .map(|i| {
                let mut rs = self.radii(i);
                let top = rs.last().cloned().unwrap_or_default() + Rational::from_integer(1.into());
                rs.push(top);
                let mut balls = Vec::new();
                for p in 0..self.space.carrier_len(i) as u32 {
                    balls.extend(rs.iter().map(|r| self.ball(i, p, r)));
                }
                balls
            })
            .collect();
        CondTopology::generated(&self.space, &subbase)
    }

    /// Greedy centers with every point strictly within `eps` of one of them.
    pub fn net(&self, eps: &CondReal) -> Result<(Cond<Vec<u32>>, CondNat)> {
        if !eps.is_strictly_positive() || !eps.lives_on_one() {
            return Err(Error::EpsNotPositive);
        }
        let alg = self.space.algebra();
        let centers: Vec<Vec<u32>> = (0..alg.len())
            .map(|i| {
                let mut covered = PointSet::EMPTY;
                let mut cs = Vec::new();
                for p in 0..self.space.carrier_len(i) as u32 {
                    if !covered.contains(p) {
                        cs.push(p);
                        covered = covered.union(self.ball(i, p, eps.at(i)));
                    }
                }
                cs
            })
            .collect();
        let count = CondNat::nat(alg, centers.iter().map(|c| c.len() as u64).collect())?;
        Ok((Cond::total(alg, centers)?, count))
    }

    /// Half the least positive distance at each atom (1 when there is none):
    /// points closer than this coincide.
    pub fn separation(&self) -> CondReal {
        let alg = self.space.algebra();
        CondReal(Cond::from_fn(alg, |i| {
            self.radii(i)
                .first()
                .map(|d| d / Rational::from_integer(2.into()))
                .unwrap_or_else(|| Rational::from_integer(1.into()))
        }))
    }
}

/// The outcome of checking each clause of the metric compactness theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeineBorelReport {
    pub cover_compact: bool,
    pub complete: bool,
    pub totally_bounded: bool,
    pub sequentially_compact: bool,
    /// `(ε, centers, count)` for each radius tried.
    pub nets: Vec<(CondReal, Cond<Vec<u32>>, CondNat)>,
    pub agree: bool,
}

/// Indices of a value repeated at least `k + 1` times among the first
/// `n·k + 1` terms of a sequence in an `n`-point set.
fn pigeonhole(seq: &[u32], n: usize, k: usize) -> Option<Vec<usize>> {
    let prefix = &seq[..seq.len().min(n * k + 1)];
    (0..n as u32).find_map(|v| {
        let hits: Vec<usize> = prefix
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == v)
            .map(|(j, _)| j)
            .collect();
        (hits.len() > k).then_some(hits)
    })
}

pub fn heine_borel_finite(m: &FiniteMetricSpace) -> Result<HeineBorelReport> {
    let alg = m.space.algebra();
    let cover_compact = is_compact(&m.ball_topology()?, Compactness::Cover)?;

    // A Cauchy sequence eventually stays within the separation radius of
    // itself, so from then on it is constant and converges.
    let sep = m.separation();
    let complete = (0..alg.len()).all(|i| {
        let s = sep.at(i);
        (0..m.space.carrier_len(i) as u32).all(|p| m.ball(i, p, s) == PointSet::singleton(p))
    });

    let mut eps_list: Vec<CondReal> = vec![sep.clone()];
    let mut all_radii: BTreeSet<Rational> = BTreeSet::new();
    for i in 0..alg.len() {
        all_radii.extend(m.radii(i));
    }
    eps_list.extend(all_radii.into_iter().map(|r| CondReal::constant(alg, r)));
    let mut nets = Vec::with_capacity(eps_list.len());
    let mut totally_bounded = true;
    for eps in eps_list {
        let (centers, count) = m.net(&eps)?;
        for i in 0..alg.len() {
            let covered = centers.at(i).iter().fold(PointSet::EMPTY, |acc, &c| {
                acc.union(m.ball(i, c, eps.at(i)))
            });
            totally_bounded &= covered == m.space.full(i);
        }
        nets.push((eps, centers, count));
    }

    // A round-robin sequence through each carrier has a constant subsequence
    // of every requested length.
    const REPEATS: usize = 4;
    let sequentially_compact = (0..alg.len()).all(|i| {
        let n = m.space.carrier_len(i);
        let seq: Vec<u32> = (0..n * REPEATS + 1).map(|j| (j % n) as u32).collect();
        pigeonhole(&seq, n, REPEATS).is_some_and(|hits| hits.len() > REPEATS)
    });

    let clauses = [
        cover_compact,
        complete && totally_bounded,
        sequentially_compact,
    ];
    Ok(HeineBorelReport {
        cover_compact,
        complete,
        totally_bounded,
        sequentially_compact,
        nets,
        agree: clauses.iter().all(|&c| c == clauses[0]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::Algebra;
    use crate::condset::Value;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn one_point_space() {
        let alg = Algebra::numbered(1).unwrap();
        let x = CondSet::generate(&[Value::Int(0)], &alg).unwrap();
        let m = FiniteMetricSpace::new(&x, vec![vec![vec![q(0)]]]).unwrap();
        let r = heine_borel_finite(&m).unwrap();
        assert!(
            r.cover_compact && r.complete && r.totally_bounded && r.sequentially_compact && r.agree
        );
    }

    #[test]
    fn stitched_three_points() {
        let alg = Algebra::numbered(2).unwrap();
        let x = CondSet::generate(&[Value::Int(1), Value::Int(2), Value::Int(3)], &alg).unwrap();
        let line = vec![
            vec![q(0), q(1), q(2)],
            vec![q(1), q(0), q(1)],
            vec![q(2), q(1), q(0)],
        ];
        let discrete = vec![
            vec![q(0), q(5), q(5)],
            vec![q(5), q(0), q(5)],
            vec![q(5), q(5), q(0)],
        ];
        let m = FiniteMetricSpace::new(&x, vec![line, discrete]).unwrap();
        let r = heine_borel_finite(&m).unwrap();
        assert!(
            r.cover_compact && r.complete && r.totally_bounded && r.sequentially_compact && r.agree
        );
        // ε = 2: the line needs centers 1 and 3, the discrete atom needs all three.
        let (centers, count) = m.net(&CondReal::constant(&alg, q(2))).unwrap();
        assert_eq!(centers.at(0), &vec![0, 2]);
        assert_eq!(count, CondNat::nat(&alg, vec![2, 3]).unwrap());
        assert_eq!(
            m.ball_topology().unwrap(),
            CondTopology::discrete(&x).unwrap()
        );
    }

    #[test]
    fn axiom_violations() {
        let alg = Algebra::numbered(1).unwrap();
        let x = CondSet::generate(&[Value::Int(1), Value::Int(2), Value::Int(3)], &alg).unwrap();
        let asym = vec![
            vec![q(0), q(1), q(1)],
            vec![q(2), q(0), q(1)],
            vec![q(1), q(1), q(0)],
        ];
        assert!(matches!(
            FiniteMetricSpace::new(&x, vec![asym]),
            Err(Error::MetricAxiomViolation { axiom, .. }) if axiom == "symmetry"
        ));
        let long = vec![
            vec![q(0), q(1), q(5)],
            vec![q(1), q(0), q(1)],
            vec![q(5), q(1), q(0)],
        ];
        assert!(matches!(
            FiniteMetricSpace::new(&x, vec![long]),
            Err(Error::MetricAxiomViolation { axiom, .. }) if axiom == "triangle inequality"
        ));
    }

    #[test]
    fn pigeonhole_finds_repeats() {
        assert_eq!(pigeonhole(&[0, 1, 0, 1, 0], 2, 2), Some(vec![0, 2, 4]));
    }
}
