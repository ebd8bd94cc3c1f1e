//! Exact two-phase simplex over rationals.
//!
//! Pivoting follows Bland's rule, so degenerate problems terminate. Every
//! outcome carries a certificate that [`verify_certificate`] checks against
//! the original data alone: an optimal primal/dual pair, a Farkas vector, or
//! a feasible point with an improving ray.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub sense: Sense,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, sense: Sense, rhs: Rational) -> Self {
        Constraint { coeffs, sense, rhs }
    }
}

/// Variables are non-negative unless flagged free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub maximize: bool,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub free: Vec<bool>,
}

impl LpProblem {
    pub fn new(maximize: bool, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LpProblem {
            maximize,
            objective,
            constraints: Vec::new(),
            free: vec![false; n],
        }
    }

    pub fn vars(&self) -> usize {
        self.objective.len()
    }

    pub fn with_free(mut self, free: Vec<bool>) -> Self {
        self.free = free;
        self
    }

    pub fn all_free(mut self) -> Self {
        self.free = vec![true; self.vars()];
        self
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, sense: Sense, rhs: Rational) {
        self.constraints.push(Constraint::new(coeffs, sense, rhs));
    }

    fn validate(&self) -> Result<()> {
        let n = self.vars();
        if self.free.len() != n {
            return Err(Error::MalformedProblem(format!(
                "{} free flags for {n} variables",
                self.free.len()
            )));
        }
        if let Some((i, _)) = self
            .constraints
            .iter()
            .enumerate()
            .find(|(_, c)| c.coeffs.len() != n)
        {
            return Err(Error::MalformedProblem(format!(
                "constraint {i} has the wrong length"
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// `duals` holds one multiplier per constraint with `objective = ∑ duals_i rhs_i`.
    Optimal {
        x: Vec<Rational>,
        value: Rational,
        duals: Vec<Rational>,
        basis: Vec<usize>,
    },
    /// `farkas · A` is `≤ 0` on non-negative variables and `0` on free ones,
    /// `farkas · b > 0`, with `farkas_i ≤ 0` on `≤` rows and `≥ 0` on `≥` rows.
    Infeasible { farkas: Vec<Rational> },
    /// `x` is feasible and `x + t·ray` stays feasible while the objective
    /// improves without bound.
    Unbounded {
        x: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    cost: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pr = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, w) in row.iter_mut().zip(&pr) {
                    *v -= &f * w;
                }
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (v, w) in self.cost.iter_mut().zip(&pr) {
                *v -= &f * w;
            }
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule over the columns `allowed` accepts. Returns the
    /// entering column when the problem is unbounded in its direction.
    fn run(&mut self, allowed: impl Fn(usize) -> bool) -> Option<usize> {
        let rhs = self.width;
        loop {
            let c = (0..self.width).find(|&j| allowed(j) && self.cost[j].is_negative())?;
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((b, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*b])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return Some(c),
            }
        }
    }
}

/// Solves the problem exactly.
pub fn lp_solve(p: &LpProblem) -> Result<LpOutcome> {
    p.validate()?;
    let n = p.vars();
    let m = p.constraints.len();

    // Columns: one per variable, a second (negated) one per free variable,
    // one slack per inequality, one artificial per row.
    let mut col_of_var: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    let mut ncols = 0;
    for &f in &p.free {
        let pos = ncols;
        ncols += 1;
        let neg = f.then(|| {
            ncols += 1;
            ncols - 1
        });
        col_of_var.push((pos, neg));
    }
    let mut slack_of_row = vec![None; m];
    for (i, c) in p.constraints.iter().enumerate() {
        if c.sense != Sense::Eq {
            slack_of_row[i] = Some(ncols);
            ncols += 1;
        }
    }
    let art0 = ncols;
    let width = ncols + m;

    let mut signs = Vec::with_capacity(m);
    let mut rows = Vec::with_capacity(m);
    for (i, c) in p.constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); width + 1];
        for (k, a) in c.coeffs.iter().enumerate() {
            let (pos, neg) = col_of_var[k];
            row[pos] = a.clone();
            if let Some(neg) = neg {
                row[neg] = -a;
            }
        }
        if let Some(s) = slack_of_row[i] {
            row[s] = if c.sense == Sense::Le {
                Rational::one()
            } else {
                -Rational::one()
            };
        }
        row[width] = c.rhs.clone();
        let sign = if c.rhs.is_negative() { -1 } else { 1 };
        if sign < 0 {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[art0 + i] = Rational::one();
        signs.push(sign);
        rows.push(row);
    }

    // Phase 1: minimize the sum of artificials.
    let mut cost = vec![Rational::zero(); width + 1];
    for j in 0..width {
        cost[j] = if j >= art0 {
            Rational::zero()
        } else {
            -rows.iter().map(|r| r[j].clone()).sum::<Rational>()
        };
    }
    cost[width] = -rows.iter().map(|r| r[width].clone()).sum::<Rational>();
    let mut t = Tableau {
        rows,
        cost,
        basis: (art0..width).collect(),
        width,
    };
    t.run(|j| j < art0);
    let phase1 = -t.cost[width].clone();
    let row_sign = |i: usize| {
        if signs[i] < 0 {
            -Rational::one()
        } else {
            Rational::one()
        }
    };
    if phase1.is_positive() {
        // Phase-1 duals: reduced cost of artificial i is 1 − y_i.
        let farkas = (0..m)
            .map(|i| (Rational::one() - &t.cost[art0 + i]) * row_sign(i))
            .collect();
        return Ok(LpOutcome::Infeasible { farkas });
    }

    // Drive zero-level artificials out where a structural pivot exists.
    for r in 0..m {
        if t.basis[r] >= art0 {
            if let Some(c) = (0..art0).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, c);
            }
        }
    }

    // Phase 2 on min c·x.
    let mut c2 = vec![Rational::zero(); width + 1];
    for (k, &(pos, neg)) in col_of_var.iter().enumerate() {
        let ck = if p.maximize {
            -p.objective[k].clone()
        } else {
            p.objective[k].clone()
        };
        if let Some(neg) = neg {
            c2[neg] = -ck.clone();
        }
        c2[pos] = ck;
    }
    let mut cost = c2.clone();
    for (r, &b) in t.basis.iter().enumerate() {
        if !c2[b].is_zero() {
            let f = c2[b].clone();
            for (v, w) in cost.iter_mut().zip(&t.rows[r]) {
                *v -= &f * w;
            }
        }
    }
    t.cost = cost;
    let unbounded = t.run(|j| j < art0);

    let mut xs = vec![Rational::zero(); width];
    for (r, &b) in t.basis.iter().enumerate() {
        xs[b] = t.rows[r][width].clone();
    }
    let to_original = |v: &[Rational]| -> Vec<Rational> {
        col_of_var
            .iter()
            .map(|&(pos, neg)| match neg {
                Some(neg) => &v[pos] - &v[neg],
                None => v[pos].clone(),
            })
            .collect()
    };
    let x = to_original(&xs);
    if let Some(c) = unbounded {
        let mut dir = vec![Rational::zero(); width];
        dir[c] = Rational::one();
        for (r, &b) in t.basis.iter().enumerate() {
            dir[b] = -t.rows[r][c].clone();
        }
        return Ok(LpOutcome::Unbounded {
            x,
            ray: to_original(&dir),
        });
    }
    let value: Rational = x.iter().zip(&p.objective).map(|(a, b)| a * b).sum();
    // Reduced cost of artificial i is −y_i for the min problem.
    let duals = (0..m)
        .map(|i| {
            let y = -t.cost[art0 + i].clone() * row_sign(i);
            if p.maximize {
                -y
            } else {
                y
            }
        })
        .collect();
    Ok(LpOutcome::Optimal {
        x,
        value,
        duals,
        basis: t.basis.clone(),
    })
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn feasible(p: &LpProblem, x: &[Rational]) -> bool {
    x.len() == p.vars()
        && x.iter().zip(&p.free).all(|(v, &f)| f || !v.is_negative())
        && p.constraints.iter().all(|c| {
            let lhs = dot(&c.coeffs, x);
            match c.sense {
                Sense::Le => lhs <= c.rhs,
                Sense::Ge => lhs >= c.rhs,
                Sense::Eq => lhs == c.rhs,
            }
        })
}

/// `∑ y_i A_i` column by column.
fn combine(p: &LpProblem, y: &[Rational]) -> Vec<Rational> {
    (0..p.vars())
        .map(|k| {
            p.constraints
                .iter()
                .zip(y)
                .map(|(c, yi)| &c.coeffs[k] * yi)
                .sum()
        })
        .collect()
}

/// Checks an outcome against the problem data alone.
pub fn verify_certificate(p: &LpProblem, out: &LpOutcome) -> bool {
    if p.validate().is_err() {
        return false;
    }
    match out {
        LpOutcome::Optimal {
            x, value, duals, ..
        } => {
            if !feasible(p, x)
                || dot(&p.objective, x) != *value
                || duals.len() != p.constraints.len()
            {
                return false;
            }
            // Dual feasibility, written for the max form; min flips signs.
            let s = if p.maximize {
                Rational::one()
            } else {
                -Rational::one()
            };
            let signs_ok = p.constraints.iter().zip(duals).all(|(c, y)| {
                let y = y * &s;
                match c.sense {
                    Sense::Le => !y.is_negative(),
                    Sense::Ge => !y.is_positive(),
                    Sense::Eq => true,
                }
            });
            let at = combine(p, duals);
            let cols_ok = at
                .iter()
                .zip(&p.objective)
                .zip(&p.free)
                .all(|((a, c), &f)| {
                    if f {
                        a == c
                    } else {
                        (a - c) * &s >= Rational::zero()
                    }
                });
            let rhs: Vec<Rational> = p.constraints.iter().map(|c| c.rhs.clone()).collect();
            signs_ok && cols_ok && dot(&rhs, duals) == *value
        }
        LpOutcome::Infeasible { farkas } => {
            if farkas.len() != p.constraints.len() {
                return false;
            }
            let signs_ok = p
                .constraints
                .iter()
                .zip(farkas)
                .all(|(c, y)| match c.sense {
                    Sense::Le => !y.is_positive(),
                    Sense::Ge => !y.is_negative(),
                    Sense::Eq => true,
                });
            let ya = combine(p, farkas);
            let cols_ok =
                ya.iter()
                    .zip(&p.free)
                    .all(|(a, &f)| if f { a.is_zero() } else { !a.is_positive() });
            let rhs: Vec<Rational> = p.constraints.iter().map(|c| c.rhs.clone()).collect();
            signs_ok && cols_ok && dot(&rhs, farkas).is_positive()
        }
        LpOutcome::Unbounded { x, ray } => {
            if !feasible(p, x) || ray.len() != p.vars() {
                return false;
            }
            let ray_ok = ray.iter().zip(&p.free).all(|(v, &f)| f || !v.is_negative())
                && p.constraints.iter().all(|c| {
                    let d = dot(&c.coeffs, ray);
                    match c.sense {
                        Sense::Le => !d.is_positive(),
                        Sense::Ge => !d.is_negative(),
                        Sense::Eq => d.is_zero(),
                    }
                });
            let gain = dot(&p.objective, ray);
            ray_ok
                && if p.maximize {
                    gain.is_positive()
                } else {
                    gain.is_negative()
                }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn max_x_below_one() {
        let mut p = LpProblem::new(true, vec![q(1)]);
        p.push(vec![q(1)], Sense::Le, q(1));
        let out = lp_solve(&p).unwrap();
        assert_eq!(out.value(), Some(&q(1)));
        assert!(verify_certificate(&p, &out));
    }

    #[test]
    fn infeasible_pair() {
        let mut p = LpProblem::new(true, vec![q(1)]);
        p.push(vec![q(1)], Sense::Le, q(0));
        p.push(vec![q(1)], Sense::Ge, q(1));
        let out = lp_solve(&p).unwrap();
        assert!(matches!(out, LpOutcome::Infeasible { .. }));
        assert!(verify_certificate(&p, &out));
    }

    #[test]
    fn unbounded_with_free_variable() {
        let mut p = LpProblem::new(false, vec![q(1), q(1)]).with_free(vec![true, false]);
        p.push(vec![q(1), q(-1)], Sense::Le, q(3));
        let out = lp_solve(&p).unwrap();
        assert!(matches!(out, LpOutcome::Unbounded { .. }));
        assert!(verify_certificate(&p, &out));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the largest-coefficient rule.
        let r = |a: i64, b: i64| Rational::new(a.into(), b.into());
        let mut p = LpProblem::new(true, vec![r(3, 4), q(-150), r(1, 50), q(-6)]);
        p.push(vec![r(1, 4), q(-60), r(-1, 25), q(9)], Sense::Le, q(0));
        p.push(vec![r(1, 2), q(-90), r(-1, 50), q(3)], Sense::Le, q(0));
        p.push(vec![q(0), q(0), q(1), q(0)], Sense::Le, q(1));
        let out = lp_solve(&p).unwrap();
        assert_eq!(out.value(), Some(&r(1, 20)));
        assert!(verify_certificate(&p, &out));
    }

    #[test]
    fn equality_and_negative_rhs() {
        let mut p = LpProblem::new(false, vec![q(2), q(3)]);
        p.push(vec![q(1), q(1)], Sense::Eq, q(4));
        p.push(vec![q(-1), q(0)], Sense::Le, q(-1));
        let out = lp_solve(&p).unwrap();
        assert_eq!(out.value(), Some(&q(8)));
        assert_eq!(out.point(), Some(&[q(4), q(0)][..]));
        assert!(verify_certificate(&p, &out));
    }

    #[test]
    fn redundant_rows() {
        let mut p = LpProblem::new(true, vec![q(1), q(1)]);
        p.push(vec![q(1), q(1)], Sense::Eq, q(2));
        p.push(vec![q(2), q(2)], Sense::Eq, q(4));
        p.push(vec![q(1), q(0)], Sense::Le, q(5));
        let out = lp_solve(&p).unwrap();
        assert_eq!(out.value(), Some(&q(2)));
        assert!(verify_certificate(&p, &out));
    }

    #[test]
    fn malformed() {
        let mut p = LpProblem::new(true, vec![q(1)]);
        p.push(vec![q(1), q(2)], Sense::Le, q(1));
        assert!(matches!(lp_solve(&p), Err(Error::MalformedProblem(_))));
    }
}
