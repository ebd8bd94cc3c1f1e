//! Random instances for the law suites and their shrinking.
//!
//! A [`Sample`] is plain data indexed by atom. Suites build library objects
//! from it, so a failing sample can be shrunk structurally (fewer atoms,
//! smaller carriers, smaller slices, simpler numbers) and printed as JSON.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boolalg::Algebra;
use crate::condmap::CondFunction;
use crate::condset::{CondSet, CondSubset, PointSet, Value};
use crate::condtop::CondTopology;
use crate::error::Result;
use crate::Rational;

/// Outer vectors are per object, inner ones per atom unless noted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub atoms: usize,
    /// Carrier size of `X` per atom.
    pub carriers: Vec<usize>,
    /// Subsets of `X`: `[subset][atom]`, `None` where absent.
    pub subsets: Vec<Vec<Option<u128>>>,
    /// Carrier size of the codomain `Y` per atom.
    pub cod_carriers: Vec<usize>,
    pub cod_subsets: Vec<Vec<Option<u128>>>,
    /// `f: X → Y`, `[atom][point]`.
    pub table: Vec<Vec<u32>>,
    /// Topology subbases on `X` and `Y`, `[atom][set]`.
    pub subbase: Vec<Vec<u128>>,
    pub cod_subbase: Vec<Vec<u128>>,
    /// A condition as an atom mask.
    pub cond: u64,
    /// Rationals `(numerator, denominator)`, `[value][atom]`.
    pub rats: Vec<Vec<(i64, i64)>>,
    /// Integer point lists, `[object][atom][point][coordinate]`.
    pub points: Vec<Vec<Vec<Vec<i64>>>>,
}

pub fn bits_for(rng: &mut ChaCha8Rng, n: usize) -> u128 {
    loop {
        let b = rng.gen::<u128>() & PointSet::full(n).bits();
        if b != 0 {
            return b;
        }
    }
}

pub fn random_slices(rng: &mut ChaCha8Rng, carriers: &[usize], absent: f64) -> Vec<Option<u128>> {
    carriers
        .iter()
        .map(|&n| (!rng.gen_bool(absent)).then(|| bits_for(rng, n)))
        .collect()
}

pub fn random_carriers(rng: &mut ChaCha8Rng, atoms: usize, max: usize) -> Vec<usize> {
    (0..atoms).map(|_| rng.gen_range(1..=max.max(1))).collect()
}

/// Carriers with `∑ n_i ≤ budget`, each at least 1.
pub fn small_carriers(rng: &mut ChaCha8Rng, atoms: usize, max: usize, budget: usize) -> Vec<usize> {
    let mut c = vec![1; atoms];
    let mut left = budget.saturating_sub(atoms);
    for n in c.iter_mut() {
        let extra = rng.gen_range(0..=left.min(max.saturating_sub(1)));
        *n += extra;
        left -= extra;
    }
    c
}

pub fn random_rat(rng: &mut ChaCha8Rng) -> (i64, i64) {
    let den = [1, 1, 2, 3, 4, 5, 7][rng.gen_range(0..7)];
    (rng.gen_range(-12..=12), den)
}

pub fn random_point(rng: &mut ChaCha8Rng, d: usize, range: i64) -> Vec<i64> {
    (0..d).map(|_| rng.gen_range(-range..=range)).collect()
}

fn mask(bits: u128, n: usize) -> u128 {
    bits & PointSet::full(n).bits()
}

fn shrink_slices(slices: &[Vec<Option<u128>>]) -> Vec<Vec<Vec<Option<u128>>>> {
    let mut out = Vec::new();
    for (k, s) in slices.iter().enumerate() {
        for (i, v) in s.iter().enumerate() {
            if let Some(b) = v {
                let mut c = slices.to_vec();
                c[k][i] = None;
                out.push(c);
                if b.count_ones() > 1 {
                    let mut c = slices.to_vec();
                    c[k][i] = Some(b & (b - 1));
                    out.push(c);
                }
            }
        }
    }
    out
}

impl Sample {
    pub fn algebra(&self) -> Algebra {
        Algebra::numbered(self.atoms).expect("atom count within bounds")
    }

    fn space_of(alg: &Algebra, carriers: &[usize]) -> Result<CondSet> {
        CondSet::from_carriers(
            alg,
            carriers
                .iter()
                .map(|&n| (1..=n as i64).map(Value::Int).collect())
                .collect(),
        )
    }

    pub fn space(&self) -> Result<CondSet> {
        Self::space_of(&self.algebra(), &self.carriers)
    }

    pub fn cod_space(&self) -> Result<CondSet> {
        Self::space_of(&self.algebra(), &self.cod_carriers)
    }

    pub fn subset_of(space: &CondSet, slices: &[Option<u128>]) -> CondSubset {
        CondSubset::from_fn(space, |i| slices[i].map(PointSet::from_bits))
    }

    /// The subset with absent slices filled by the whole carrier.
    pub fn subset_on_one(space: &CondSet, slices: &[Option<u128>]) -> CondSubset {
        CondSubset::from_fn(space, |i| {
            Some(
                slices[i]
                    .map(PointSet::from_bits)
                    .unwrap_or_else(|| space.full(i)),
            )
        })
    }

    pub fn function(&self, dom: &CondSet, cod: &CondSet) -> Result<CondFunction> {
        CondFunction::new(dom, cod, self.table.clone())
    }

    pub fn topology(space: &CondSet, subbase: &[Vec<u128>]) -> Result<CondTopology> {
        let sb: Vec<Vec<PointSet>> = subbase
            .iter()
            .map(|s| s.iter().map(|&b| PointSet::from_bits(b)).collect())
            .collect();
        CondTopology::generated(space, &sb)
    }

    pub fn rat(&self, k: usize, atom: usize) -> Rational {
        let (n, d) = self.rats[k][atom];
        Rational::new(n.into(), d.into())
    }

    /// Structurally smaller candidates, most aggressive first.
    pub fn shrink(&self) -> Vec<Sample> {
        let mut out = Vec::new();
        if self.atoms > 1 {
            for i in 0..self.atoms {
                out.push(self.without_atom(i));
            }
        }
        for i in 0..self.carriers.len() {
            if self.carriers[i] > 1 {
                out.push(self.drop_point(i, false));
            }
        }
        for i in 0..self.cod_carriers.len() {
            if self.cod_carriers[i] > 1 {
                out.push(self.drop_point(i, true));
            }
        }
        for s in shrink_slices(&self.subsets) {
            out.push(Sample {
                subsets: s,
                ..self.clone()
            });
        }
        for s in shrink_slices(&self.cod_subsets) {
            out.push(Sample {
                cod_subsets: s,
                ..self.clone()
            });
        }
        for (i, row) in self.table.iter().enumerate() {
            for (p, &v) in row.iter().enumerate() {
                if v > 0 {
                    let mut c = self.clone();
                    c.table[i][p] = 0;
                    out.push(c);
                }
            }
        }
        for (i, sb) in self.subbase.iter().enumerate() {
            for k in 0..sb.len() {
                let mut c = self.clone();
                c.subbase[i].remove(k);
                out.push(c);
            }
        }
        for (k, vals) in self.rats.iter().enumerate() {
            for (i, &(n, d)) in vals.iter().enumerate() {
                for simpler in [(0, 1), (n / 2, d), (n, 1)] {
                    if simpler != (n, d) && (simpler.0 != n || simpler.1 < d) {
                        let mut c = self.clone();
                        c.rats[k][i] = simpler;
                        out.push(c);
                    }
                }
            }
        }
        for (k, obj) in self.points.iter().enumerate() {
            for (i, pts) in obj.iter().enumerate() {
                if pts.len() > 1 {
                    for p in 0..pts.len() {
                        let mut c = self.clone();
                        c.points[k][i].remove(p);
                        out.push(c);
                    }
                }
                for (p, pt) in pts.iter().enumerate() {
                    for (j, &v) in pt.iter().enumerate() {
                        if v != 0 {
                            for simpler in [0, v / 2] {
                                if simpler != v {
                                    let mut c = self.clone();
                                    c.points[k][i][p][j] = simpler;
                                    out.push(c);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Drops trailing carrier points, largest carrier first, until the
    /// domain and the codomain carriers each sum to at most `budget`.
    pub fn clipped(&self, budget: usize) -> Sample {
        let mut c = self.clone();
        for cod in [false, true] {
            loop {
                let cs = if cod { &c.cod_carriers } else { &c.carriers };
                if cs.iter().sum::<usize>() <= budget {
                    break;
                }
                let Some(i) = (0..cs.len())
                    .filter(|&i| cs[i] > 1)
                    .max_by_key(|&i| (cs[i], usize::MAX - i))
                else {
                    break;
                };
                c = c.drop_point(i, cod);
            }
        }
        c
    }

    /// Keeps the first `k` atoms.
    pub fn first_atoms(&self, k: usize) -> Sample {
        let mut c = self.clone();
        while c.atoms > k.max(1) {
            c = c.without_atom(c.atoms - 1);
        }
        c
    }

    /// Caps every carrier at `n` points.
    pub fn capped(&self, n: usize) -> Sample {
        let mut c = self.clone();
        for cod in [false, true] {
            for i in 0..c.atoms {
                while (if cod {
                    c.cod_carriers.get(i)
                } else {
                    c.carriers.get(i)
                })
                .is_some_and(|&m| m > n.max(1))
                {
                    c = c.drop_point(i, cod);
                }
            }
        }
        c
    }

    fn without_atom(&self, i: usize) -> Sample {
        fn drop<T: Clone>(v: &[T], i: usize) -> Vec<T> {
            if v.is_empty() {
                return Vec::new();
            }
            v.iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, x)| x.clone())
                .collect()
        }
        let low = self.cond & ((1u64 << i) - 1);
        let high = (self.cond >> (i + 1)) << i;
        Sample {
            atoms: self.atoms - 1,
            carriers: drop(&self.carriers, i),
            subsets: self.subsets.iter().map(|s| drop(s, i)).collect(),
            cod_carriers: drop(&self.cod_carriers, i),
            cod_subsets: self.cod_subsets.iter().map(|s| drop(s, i)).collect(),
            table: drop(&self.table, i),
            subbase: drop(&self.subbase, i),
            cod_subbase: drop(&self.cod_subbase, i),
            cond: low | high,
            rats: self.rats.iter().map(|r| drop(r, i)).collect(),
            points: self.points.iter().map(|p| drop(p, i)).collect(),
        }
    }

    /// Removes the last point of a carrier, masking everything that used it.
    fn drop_point(&self, i: usize, cod: bool) -> Sample {
        let mut c = self.clone();
        let fix = |slices: &mut Vec<Vec<Option<u128>>>, n: usize| {
            for s in slices.iter_mut() {
                s[i] = s[i].map(|b| mask(b, n)).filter(|&b| b != 0);
            }
        };
        let fix_sub = |sub: &mut Vec<Vec<u128>>, n: usize| {
            if let Some(sb) = sub.get_mut(i) {
                *sb = sb.iter().map(|&b| mask(b, n)).collect();
            }
        };
        if cod {
            let n = c.cod_carriers[i] - 1;
            c.cod_carriers[i] = n;
            fix(&mut c.cod_subsets, n);
            fix_sub(&mut c.cod_subbase, n);
            if let Some(row) = c.table.get_mut(i) {
                for v in row.iter_mut() {
                    if *v as usize >= n {
                        *v = 0;
                    }
                }
            }
        } else {
            let n = c.carriers[i] - 1;
            c.carriers[i] = n;
            fix(&mut c.subsets, n);
            fix_sub(&mut c.subbase, n);
            if let Some(row) = c.table.get_mut(i) {
                row.truncate(n);
            }
        }
        c
    }
}

/// Greedy shrinking: repeatedly takes the first smaller candidate that still
/// fails, up to `budget` evaluations.
pub fn minimize(start: &Sample, still_fails: impl Fn(&Sample) -> bool, budget: usize) -> Sample {
    let mut best = start.clone();
    let mut spent = 0;
    'outer: loop {
        for cand in best.shrink() {
            spent += 1;
            if spent > budget {
                break 'outer;
            }
            if still_fails(&cand) {
                best = cand;
                continue 'outer;
            }
        }
        break;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn shrinking_reaches_a_small_failure() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let carriers = random_carriers(&mut rng, 3, 4);
        let s = Sample {
            atoms: 3,
            subsets: vec![random_slices(&mut rng, &carriers, 0.0)],
            carriers,
            ..Sample::default()
        };
        // Fails while some slice has two or more points.
        let fails = |s: &Sample| s.subsets[0].iter().flatten().any(|b| b.count_ones() >= 2);
        if fails(&s) {
            let m = minimize(&s, fails, 10_000);
            assert!(fails(&m));
            assert_eq!(m.atoms, 1);
            assert_eq!(m.carriers, vec![2]);
        }
    }

    #[test]
    fn dropping_an_atom_keeps_the_condition_aligned() {
        let s = Sample {
            atoms: 3,
            carriers: vec![1, 1, 1],
            cond: 0b101,
            ..Sample::default()
        };
        assert_eq!(s.without_atom(1).cond, 0b11);
        assert_eq!(s.without_atom(0).cond, 0b10);
    }
}
