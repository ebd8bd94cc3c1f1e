//! Conditional linear algebra over per-atom rational vector spaces.
//!
//! Convex sets are per-atom V-polytopes, sublinear functions are maxima of
//! finitely many functionals, and every geometric question reduces to exact
//! linear programs solved by [`lp`]. Dimensions may differ between atoms.

pub mod lp;

use num_traits::{One, Signed, Zero};

use crate::boolalg::{Algebra, Condition};
use crate::condnum::{eps_net, Cond, CondBox, CondNat, CondReal, CondRealVec, EpsNet};
use crate::error::{Error, Result};
use crate::Rational;

pub use lp::{lp_solve, verify_certificate, Constraint, LpOutcome, LpProblem, Sense};

type Vector = Vec<Rational>;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn neg(v: &[Rational]) -> Vector {
    v.iter().map(|x| -x).collect()
}

fn atom_err(alg: &Algebra, i: usize, what: &str) -> Error {
    Error::DimMismatch(format!("{what} at `{}`", alg.atom_name(i)))
}

/// Reduced row echelon form and the pivot columns.
fn rref(mut m: Vec<Vector>, ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pv = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v /= &pv;
        }
        let pr = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, w) in row.iter_mut().zip(&pr) {
                    *v -= &f * w;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// A solution of `A z = b` with free variables set to zero.
fn solve(a: &[Vector], ncols: usize, b: &[Rational]) -> Option<Vector> {
    let aug: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            row.iter()
                .cloned()
                .chain(std::iter::once(bi.clone()))
                .collect()
        })
        .collect();
    let (red, pivots) = rref(aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut z = vec![Rational::zero(); ncols];
    for (row, &c) in red.iter().zip(&pivots) {
        z[c] = row[ncols].clone();
    }
    Some(z)
}

/// A basis of `{z : A z = 0}`.
fn null_space(a: &[Vector], ncols: usize) -> Vec<Vector> {
    let (red, pivots) = rref(a.to_vec(), ncols);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut z = vec![Rational::zero(); ncols];
            z[f] = Rational::one();
            for (row, &p) in red.iter().zip(&pivots) {
                z[p] = -row[f].clone();
            }
            z
        })
        .collect()
}

fn transpose(a: &[Vector], ncols: usize) -> Vec<Vector> {
    (0..ncols)
        .map(|c| a.iter().map(|r| r[c].clone()).collect())
        .collect()
}

/// `x ∈ conv(points)`, decided by a feasibility LP in the weights.
fn hull_contains(points: &[Vector], x: &[Rational]) -> bool {
    if points.is_empty() || points.iter().any(|p| p.len() != x.len()) {
        return false;
    }
    let mut p = LpProblem::new(true, vec![Rational::zero(); points.len()]);
    for k in 0..x.len() {
        p.push(
            points.iter().map(|g| g[k].clone()).collect(),
            Sense::Eq,
            x[k].clone(),
        );
    }
    p.push(
        vec![Rational::one(); points.len()],
        Sense::Eq,
        Rational::one(),
    );
    matches!(lp_solve(&p), Ok(LpOutcome::Optimal { .. }))
}

/// A conditionally linear functional `x ↦ ⟨w, x⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondLinFunctional(pub Cond<Vector>);

impl CondLinFunctional {
    pub fn new(alg: &Algebra, coeffs: Vec<Vector>) -> Result<Self> {
        Cond::total(alg, coeffs).map(CondLinFunctional)
    }

    pub fn from_ints(alg: &Algebra, coeffs: &[&[i64]]) -> Result<Self> {
        Self::new(
            alg,
            coeffs
                .iter()
                .map(|c| c.iter().map(|&v| q(v)).collect())
                .collect(),
        )
    }

    pub fn zero(dims: &CondNat) -> Self {
        CondLinFunctional(dims.map(|_, &n| vec![Rational::zero(); n as usize]))
    }

    pub fn algebra(&self) -> &Algebra {
        self.0.algebra()
    }

    pub fn dims(&self) -> CondNat {
        self.0.map(|_, v| v.len() as u64)
    }

    pub fn coeffs_at(&self, atom: usize) -> &[Rational] {
        self.0.at(atom)
    }

    pub fn eval(&self, x: &CondRealVec) -> Result<CondReal> {
        let alg = self.algebra().clone();
        let mut bad = None;
        let out = self.0.zip_with(&x.0, |i, w, v| {
            if w.len() != v.len() {
                bad = Some(i);
            }
            dot(w, v)
        })?;
        match bad {
            Some(i) => Err(atom_err(&alg, i, "functional and vector differ in length")),
            None => Ok(CondReal(out)),
        }
    }

    /// `∑ λ_k f_k` with per-atom coefficients.
    pub fn combination(
        fs: &[CondLinFunctional],
        coeffs: &Cond<Vector>,
    ) -> Result<CondLinFunctional> {
        let alg = coeffs.algebra();
        let mut out = Vec::with_capacity(alg.len());
        for i in 0..alg.len() {
            let lam = coeffs.at(i);
            if lam.len() != fs.len() {
                return Err(atom_err(alg, i, "one coefficient per functional required"));
            }
            let d = fs.first().map(|f| f.coeffs_at(i).len()).unwrap_or(0);
            let mut w = vec![Rational::zero(); d];
            for (f, l) in fs.iter().zip(lam) {
                let c = f.coeffs_at(i);
                if c.len() != d {
                    return Err(atom_err(alg, i, "functionals differ in dimension"));
                }
                for (a, b) in w.iter_mut().zip(c) {
                    *a += l * b;
                }
            }
            out.push(w);
        }
        CondLinFunctional::new(alg, out)
    }
}

/// Per-atom convex hull of finitely many generator points. A circled polytope
/// is the hull of the generators and their negatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    gens: Cond<Vec<Vector>>,
    circled: bool,
}

impl VPolytope {
    pub fn new(alg: &Algebra, gens: Vec<Vec<Vector>>) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            let Some(first) = g.first() else {
                return Err(Error::Invalid(format!(
                    "no generators at `{}`",
                    alg.atom_name(i)
                )));
            };
            if first.is_empty() || g.iter().any(|p| p.len() != first.len()) {
                return Err(atom_err(alg, i, "generators differ in dimension"));
            }
        }
        Ok(VPolytope {
            gens: Cond::total(alg, gens)?,
            circled: false,
        })
    }

    pub fn from_ints(alg: &Algebra, gens: &[&[&[i64]]]) -> Result<Self> {
        Self::new(
            alg,
            gens.iter()
                .map(|g| {
                    g.iter()
                        .map(|p| p.iter().map(|&v| q(v)).collect())
                        .collect()
                })
                .collect(),
        )
    }

    /// The hull of `±` the generators.
    pub fn circled_hull(mut self) -> Self {
        self.circled = true;
        self
    }

    /// A single point per atom.
    pub fn point(x: &CondRealVec) -> Result<Self> {
        Self::new(
            x.0.algebra(),
            (0..x.0.algebra().len())
                .map(|i| vec![x.0.at(i).clone()])
                .collect(),
        )
    }

    /// `[−1, 1]^d` per atom.
    pub fn unit_box(dims: &CondNat) -> Result<Self> {
        let alg = dims.algebra();
        let gens = (0..alg.len())
            .map(|i| {
                let d = *dims.at(i) as usize;
                (0..1usize << d)
                    .map(|m| {
                        (0..d)
                            .map(|k| if m >> k & 1 == 1 { q(1) } else { q(-1) })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::new(alg, gens)
    }

    /// The ℓ¹ unit ball: the circled hull of the unit vectors.
    pub fn cross_polytope(dims: &CondNat) -> Result<Self> {
        let alg = dims.algebra();
        let gens = (0..alg.len())
            .map(|i| {
                let d = *dims.at(i) as usize;
                (0..d)
                    .map(|k| (0..d).map(|j| if j == k { q(1) } else { q(0) }).collect())
                    .collect()
            })
            .collect();
        Ok(Self::new(alg, gens)?.circled_hull())
    }

    pub fn algebra(&self) -> &Algebra {
        self.gens.algebra()
    }

    pub fn is_circled_hull(&self) -> bool {
        self.circled
    }

    pub fn dims(&self) -> CondNat {
        self.gens.map(|_, g| g[0].len() as u64)
    }

    pub fn dim_at(&self, atom: usize) -> usize {
        self.gens.at(atom)[0].len()
    }

    /// The stored generators, without negatives.
    pub fn raw_generators(&self, atom: usize) -> &[Vector] {
        self.gens.at(atom)
    }

    /// Points whose hull is the polytope.
    pub fn generators(&self, atom: usize) -> Vec<Vector> {
        let g = self.gens.at(atom);
        if self.circled {
            g.iter().cloned().chain(g.iter().map(|p| neg(p))).collect()
        } else {
            g.clone()
        }
    }

    fn check_dims(&self, o: &VPolytope) -> Result<()> {
        if self.algebra() != o.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        match (0..self.algebra().len()).find(|&i| self.dim_at(i) != o.dim_at(i)) {
            Some(i) => Err(atom_err(self.algebra(), i, "dimensions differ")),
            None => Ok(()),
        }
    }

    /// `Y + Z` by pairwise generator sums.
    pub fn minkowski_add(&self, o: &VPolytope) -> Result<VPolytope> {
        self.check_dims(o)?;
        let gens = (0..self.algebra().len())
            .map(|i| {
                let (a, b) = (self.generators(i), o.generators(i));
                a.iter()
                    .flat_map(|x| {
                        b.iter()
                            .map(move |y| x.iter().zip(y).map(|(s, t)| s + t).collect())
                    })
                    .collect()
            })
            .collect();
        VPolytope::new(self.algebra(), gens)
    }

    /// `λY`.
    pub fn scale(&self, l: &CondReal) -> Result<VPolytope> {
        if l.0.algebra() != self.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        if !l.lives_on_one() {
            return Err(Error::SupportMismatch("scalar must live on 1".into()));
        }
        let gens = self.gens.map(|i, g| {
            let s = l.at(i);
            g.iter()
                .map(|p| p.iter().map(|x| x * s).collect())
                .collect()
        });
        Ok(VPolytope {
            gens,
            circled: self.circled,
        })
    }

    pub fn contains_at(&self, atom: usize, x: &[Rational]) -> bool {
        hull_contains(&self.generators(atom), x)
    }

    /// `x ∈ Y` at every atom.
    pub fn contains(&self, x: &CondRealVec) -> Result<bool> {
        if x.0.algebra() != self.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        for i in 0..self.algebra().len() {
            let p =
                x.0.get(i)
                    .ok_or_else(|| Error::SupportMismatch("x must live on 1".into()))?;
            if p.len() != self.dim_at(i) {
                return Err(atom_err(
                    self.algebra(),
                    i,
                    "point and polytope differ in dimension",
                ));
            }
            if !self.contains_at(i, p) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One round of `{λx + (1−λ)y : x, y ∈ Y}` over the generators, for the
    /// given weights.
    pub fn conv_step(&self, lambdas: &[Rational]) -> Cond<Vec<Vector>> {
        self.gens.map(|i, _| {
            let g = self.generators(i);
            let mut out: Vec<Vector> = Vec::new();
            for x in &g {
                for y in &g {
                    for l in lambdas {
                        let p: Vector = x
                            .iter()
                            .zip(y)
                            .map(|(a, b)| l * a + (Rational::one() - l) * b)
                            .collect();
                        if !out.contains(&p) {
                            out.push(p);
                        }
                    }
                }
            }
            out
        })
    }

    /// The same polytope generated by its vertices only.
    pub fn conv_hull(&self) -> VPolytope {
        let gens = self.gens.map(|i, _| {
            let mut g = self.generators(i);
            g.dedup();
            let mut keep: Vec<Vector> = Vec::new();
            for (k, p) in g.iter().enumerate() {
                if keep.contains(p) {
                    continue;
                }
                let others: Vec<Vector> = g
                    .iter()
                    .enumerate()
                    .filter(|(j, o)| *j != k && *o != p)
                    .map(|(_, o)| o.clone())
                    .collect();
                if !hull_contains(&others, p) {
                    keep.push(p.clone());
                }
            }
            if keep.is_empty() {
                keep.push(g[0].clone());
            }
            keep
        });
        VPolytope {
            gens,
            circled: false,
        }
    }

    /// Midpoints of generator pairs lie in the hull.
    pub fn is_convex(&self) -> bool {
        let half = Rational::new(1.into(), 2.into());
        let step = self.conv_step(&[half]);
        (0..self.algebra().len()).all(|i| step.at(i).iter().all(|p| self.contains_at(i, p)))
    }

    /// `−g` lies in the hull for every generator `g`.
    pub fn is_circled(&self) -> bool {
        (0..self.algebra().len())
            .all(|i| self.gens.at(i).iter().all(|g| self.contains_at(i, &neg(g))))
    }

    /// 0 is interior: some positive multiple of each `±e_k` lies in the hull.
    pub fn absorbing_at(&self, atom: usize) -> bool {
        let g = self.generators(atom);
        let d = self.dim_at(atom);
        (0..d).all(|k| {
            [q(1), q(-1)].iter().all(|s| {
                // max t with t·s·e_k = ∑ μ_j g_j, ∑ μ_j = 1, μ ≥ 0.
                let mut obj = vec![Rational::zero(); g.len()];
                obj.push(q(1));
                let mut p = LpProblem::new(true, obj);
                for c in 0..d {
                    let mut row: Vector = g.iter().map(|x| x[c].clone()).collect();
                    row.push(if c == k { -s.clone() } else { q(0) });
                    p.push(row, Sense::Eq, q(0));
                }
                let mut sum = vec![q(1); g.len()];
                sum.push(q(0));
                p.push(sum, Sense::Eq, q(1));
                match lp_solve(&p) {
                    Ok(LpOutcome::Optimal { value, .. }) => value.is_positive(),
                    Ok(LpOutcome::Unbounded { .. }) => true,
                    _ => false,
                }
            })
        })
    }

    pub fn is_absorbing(&self) -> bool {
        (0..self.algebra().len()).all(|i| self.absorbing_at(i))
    }
}

/// Checks every midpoint of a finite point set is in the set.
pub fn is_convex_points(points: &[Vector]) -> bool {
    let half = Rational::new(1.into(), 2.into());
    points.iter().all(|x| {
        points.iter().all(|y| {
            let m: Vector = x.iter().zip(y).map(|(a, b)| (a + b) * &half).collect();
            points.contains(&m)
        })
    })
}

/// Coefficients of `x` in the span of a family, where they exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanMembership {
    /// Atoms where `x` is a combination of the family.
    pub inside: Condition,
    /// `λ_k` per atom, living on `inside`.
    pub coeffs: Cond<Vector>,
}

impl SpanMembership {
    pub fn is_member(&self) -> bool {
        self.inside.is_one()
    }

    /// The first atom outside the span.
    pub fn witness(&self) -> Option<usize> {
        (!&self.inside).atoms().next()
    }
}

fn columns_at(family: &[CondRealVec], i: usize, d: usize) -> Result<Vec<Vector>> {
    family
        .iter()
        .map(|v| {
            let c =
                v.0.get(i)
                    .ok_or_else(|| Error::SupportMismatch("family must live on 1".into()))?;
            if c.len() != d {
                return Err(atom_err(
                    v.0.algebra(),
                    i,
                    "family and vector differ in dimension",
                ));
            }
            Ok(c.clone())
        })
        .collect()
}

/// `x ∈ Span(Y)` per atom by an exact linear solve.
pub fn span_membership(family: &[CondRealVec], x: &CondRealVec) -> Result<SpanMembership> {
    let alg = x.0.algebra();
    let mut coeffs = Vec::with_capacity(alg.len());
    for i in 0..alg.len() {
        let xi =
            x.0.get(i)
                .ok_or_else(|| Error::SupportMismatch("x must live on 1".into()))?;
        let cols = columns_at(family, i, xi.len())?;
        let rows = transpose(&cols, xi.len());
        let rows = if family.is_empty() {
            vec![Vec::new(); xi.len()]
        } else {
            rows
        };
        coeffs.push(solve(&rows, family.len(), xi));
    }
    let inside = alg.condition(
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_some())
            .map(|(i, _)| i),
    );
    Ok(SpanMembership {
        inside,
        coeffs: Cond::new(alg, coeffs)?,
    })
}

/// The two routes of the kernel/combination duality, reported side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityCoeffs {
    /// `⊓ ker(f_k) ⊑ ker(f)`, from null-space vectors of the family.
    pub kernel_inclusion: bool,
    /// An atom and a vector in every `ker(f_k)` but not in `ker(f)`.
    pub kernel_witness: Option<(usize, Vector)>,
    /// Least-norm solution of `f = ∑ λ_k f_k`, when one exists everywhere.
    pub coeffs: Option<Cond<Vector>>,
    /// `coeffs` moved along dependencies of the family so that every `λ_k`
    /// is non-zero where that is possible.
    pub normalized: Option<Cond<Vector>>,
    /// Whether `normalized` has no zero coefficient at any atom.
    pub all_nonzero: bool,
}

/// Moves `lam` by combinations of `dirs` until no movable entry is zero.
fn avoid_zeros(lam: &[Rational], dirs: &[Vector]) -> Vector {
    let m = lam.len();
    if dirs.is_empty() {
        return lam.to_vec();
    }
    let movable: Vec<bool> = (0..m)
        .map(|k| dirs.iter().any(|d| !d[k].is_zero()))
        .collect();
    // d(s) = ∑ s^j n_j has a zero entry for finitely many s only.
    let dir = (1i64..)
        .map(|s| {
            let mut d = vec![Rational::zero(); m];
            let mut w = q(1);
            for n in dirs {
                for (a, b) in d.iter_mut().zip(n) {
                    *a += &w * b;
                }
                w *= q(s);
            }
            d
        })
        .find(|d| (0..m).all(|k| !movable[k] || !d[k].is_zero()))
        .expect("a generic direction exists");
    (0i64..=m as i64)
        .map(|t| {
            lam.iter()
                .zip(&dir)
                .map(|(l, d)| l + q(t) * d)
                .collect::<Vector>()
        })
        .find(|v| (0..m).all(|k| !movable[k] || !v[k].is_zero()))
        .expect("each entry vanishes for at most one shift")
}

/// Decides `f = ∑ λ_k f_k` from kernels and from coefficients independently.
pub fn duality_coeffs(f: &CondLinFunctional, fs: &[CondLinFunctional]) -> Result<DualityCoeffs> {
    let alg = f.algebra();
    let mut witness = None;
    let mut coeffs = Vec::with_capacity(alg.len());
    let mut normalized = Vec::with_capacity(alg.len());
    let mut all_nonzero = true;
    for i in 0..alg.len() {
        let w = f.coeffs_at(i);
        let d = w.len();
        let rows: Vec<Vector> = fs
            .iter()
            .map(|g| {
                let c = g.coeffs_at(i);
                if c.len() != d {
                    Err(atom_err(alg, i, "functionals differ in dimension"))
                } else {
                    Ok(c.to_vec())
                }
            })
            .collect::<Result<_>>()?;
        if witness.is_none() {
            witness = null_space(&rows, d)
                .into_iter()
                .find(|v| !dot(v, w).is_zero())
                .map(|v| (i, v));
        }
        // Least norm: λ = F z with Fᵀ F z… written as (F Fᵀ) z = F w.
        let m = rows.len();
        let gram: Vec<Vector> = rows
            .iter()
            .map(|a| rows.iter().map(|b| dot(a, b)).collect())
            .collect();
        let lam = if m == 0 {
            w.iter().all(Zero::is_zero).then(Vec::new)
        } else {
            solve(
                &gram,
                m,
                &rows.iter().map(|a| dot(a, w)).collect::<Vector>(),
            )
            .and_then(|z| {
                let lam: Vector = z.clone();
                let back: Vector = (0..d)
                    .map(|c| rows.iter().zip(&lam).map(|(r, l)| &r[c] * l).sum())
                    .collect();
                (back == w).then_some(lam)
            })
        };
        if let Some(l) = &lam {
            let deps = null_space(&transpose(&rows, d), m);
            let n = avoid_zeros(l, &deps);
            all_nonzero &= n.iter().all(|v| !v.is_zero());
            normalized.push(Some(n));
        } else {
            normalized.push(None);
        }
        coeffs.push(lam);
    }
    let complete = coeffs.iter().all(Option::is_some);
    Ok(DualityCoeffs {
        kernel_inclusion: witness.is_none(),
        kernel_witness: witness,
        coeffs: complete.then(|| Cond::new(alg, coeffs).expect("sized by the algebra")),
        normalized: complete.then(|| Cond::new(alg, normalized).expect("sized by the algebra")),
        all_nonzero: complete && all_nonzero,
    })
}

/// `f` and `ε` with `f(x) + ε < f(y)` for `x ∈ C¹`, `y ∈ C²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub f: CondLinFunctional,
    pub eps: CondReal,
}

/// Max `ε` with `⟨w, x⟩ + ε ≤ α ≤ ⟨w, y⟩ − ε`, `|w_k| ≤ 1`, `ε ≤ 1`.
fn separate_at(a: &[Vector], b: &[Vector], d: usize) -> (Rational, Vector) {
    // Variables: w (free), α (free), ε (free).
    let n = d + 2;
    let mut obj = vec![q(0); n];
    obj[d + 1] = q(1);
    let mut free = vec![true; n];
    free[d + 1] = true;
    let mut p = LpProblem::new(true, obj).with_free(free);
    for x in a {
        let mut row: Vector = x.clone();
        row.push(q(-1));
        row.push(q(1));
        p.push(row, Sense::Le, q(0));
    }
    for y in b {
        let mut row: Vector = neg(y);
        row.push(q(1));
        row.push(q(1));
        p.push(row, Sense::Le, q(0));
    }
    for k in 0..d {
        let mut row = vec![q(0); n];
        row[k] = q(1);
        p.push(row.clone(), Sense::Le, q(1));
        p.push(row, Sense::Ge, q(-1));
    }
    let mut cap = vec![q(0); n];
    cap[d + 1] = q(1);
    p.push(cap, Sense::Le, q(1));
    match lp_solve(&p) {
        Ok(LpOutcome::Optimal { x, value, .. }) => (value, x[..d].to_vec()),
        _ => (q(0), vec![q(0); d]),
    }
}

/// Separates two polytopes atom by atom. With `strict` the gap must be
/// positive everywhere; otherwise touching hulls get a weak separator.
pub fn separate(c1: &VPolytope, c2: &VPolytope, strict: bool) -> Result<Separation> {
    c1.check_dims(c2)?;
    let alg = c1.algebra();
    let mut fs = Vec::with_capacity(alg.len());
    let mut eps = Vec::with_capacity(alg.len());
    let mut overlap = Vec::new();
    for i in 0..alg.len() {
        let (a, b) = (c1.generators(i), c2.generators(i));
        let d = c1.dim_at(i);
        let (e, w) = separate_at(&a, &b, d);
        if e.is_positive() {
            fs.push(w);
            eps.push(e);
            continue;
        }
        if !strict {
            if let Some(w) = weak_separator(&a, &b, d) {
                fs.push(w);
                eps.push(q(0));
                continue;
            }
        }
        overlap.push(i);
    }
    if !overlap.is_empty() {
        return Err(Error::NotDisjoint(alg.condition(overlap)));
    }
    let sep = Separation {
        f: CondLinFunctional::new(alg, fs)?,
        eps: CondReal::total(alg, eps)?,
    };
    debug_assert!(separation_holds(c1, c2, &sep));
    Ok(sep)
}

/// `w ≠ 0` with `⟨w, x⟩ ≤ ⟨w, y⟩` on all generators, trying `w_k = ±1`.
fn weak_separator(a: &[Vector], b: &[Vector], d: usize) -> Option<Vector> {
    for k in 0..d {
        for s in [q(1), q(-1)] {
            let mut p = LpProblem::new(true, vec![q(0); d + 1]).all_free();
            for x in a {
                let mut row = x.clone();
                row.push(q(-1));
                p.push(row, Sense::Le, q(0));
            }
            for y in b {
                let mut row = neg(y);
                row.push(q(1));
                p.push(row, Sense::Le, q(0));
            }
            let mut fix = vec![q(0); d + 1];
            fix[k] = q(1);
            p.push(fix, Sense::Eq, s.clone());
            if let Ok(LpOutcome::Optimal { x, .. }) = lp_solve(&p) {
                return Some(x[..d].to_vec());
            }
        }
    }
    None
}

/// `f(x) + ε < f(y)` (or `≤` when `ε = 0`) on every pair of generators.
pub fn separation_holds(c1: &VPolytope, c2: &VPolytope, s: &Separation) -> bool {
    (0..c1.algebra().len()).all(|i| {
        let w = s.f.coeffs_at(i);
        let e = s.eps.at(i);
        c1.generators(i).iter().all(|x| {
            c2.generators(i).iter().all(|y| {
                let (fx, fy) = (dot(w, x) + e, dot(w, y));
                if e.is_zero() {
                    fx <= fy
                } else {
                    fx < fy
                }
            })
        })
    })
}

/// `k(x) = max_i ⟨φ_i, x⟩` per atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralSublinear(pub Cond<Vec<Vector>>);

impl PolyhedralSublinear {
    pub fn new(alg: &Algebra, pieces: Vec<Vec<Vector>>) -> Result<Self> {
        for (i, p) in pieces.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::Invalid(format!(
                    "no pieces at `{}`",
                    alg.atom_name(i)
                )));
            }
            if p.iter().any(|v| v.len() != p[0].len()) {
                return Err(atom_err(alg, i, "pieces differ in dimension"));
            }
        }
        Cond::total(alg, pieces).map(PolyhedralSublinear)
    }

    /// `max_k |x_k|`, written as the maximum of `±e_k`.
    pub fn linf(dims: &CondNat) -> Result<Self> {
        let alg = dims.algebra();
        let pieces = (0..alg.len())
            .map(|i| {
                let d = *dims.at(i) as usize;
                (0..2 * d)
                    .map(|j| {
                        let mut v = vec![q(0); d];
                        v[j / 2] = if j % 2 == 0 { q(1) } else { q(-1) };
                        v
                    })
                    .collect()
            })
            .collect();
        Self::new(alg, pieces)
    }

    pub fn eval_at(&self, atom: usize, x: &[Rational]) -> Rational {
        self.0
            .at(atom)
            .iter()
            .map(|p| dot(p, x))
            .max()
            .expect("pieces are non-empty")
    }

    pub fn eval(&self, x: &CondRealVec) -> Result<CondReal> {
        self.0
            .zip_with(&x.0, |i, _, v| self.eval_at(i, v))
            .map(CondReal)
    }

    /// `⟨w, x⟩ ≤ k(x)` for all `x`, i.e. `w ∈ conv{φ_i}`.
    pub fn dominates_at(&self, atom: usize, w: &[Rational]) -> bool {
        hull_contains(self.0.at(atom), w)
    }
}

/// `sup_{μ} ∑ μ_j f_j − k(∑ μ_j b_j − v)` (`sign = −1`), or
/// `inf_{μ} k(∑ μ_j b_j + v) − ∑ μ_j f_j` (`sign = 1`), as an LP.
fn hb_bound(
    pieces: &[Vector],
    basis: &[Vector],
    vals: &[Rational],
    v: &[Rational],
    sign: i64,
) -> Option<Rational> {
    let m = basis.len();
    // Variables μ (free) and t (free) with t ≥ ⟨φ, ∑ μ_j b_j + sign·v⟩.
    let mut obj: Vector = vals.to_vec();
    obj.push(q(-1));
    let mut p = LpProblem::new(true, obj).all_free();
    for phi in pieces {
        let mut row: Vector = basis.iter().map(|b| dot(phi, b)).collect();
        row.push(q(-1));
        p.push(row, Sense::Le, -q(sign) * dot(phi, v));
    }
    debug_assert_eq!(p.vars(), m + 1);
    match lp_solve(&p) {
        // The LP maximizes ∑ μ f − t; the upper bound is its negation.
        Ok(LpOutcome::Optimal { value, .. }) => Some(if sign < 0 { value } else { -value }),
        _ => None,
    }
}

/// The feasible interval for `r = f̂(v)` at one extension step.
pub fn hb_interval(
    k: &PolyhedralSublinear,
    atom: usize,
    basis: &[Vector],
    vals: &[Rational],
    v: &[Rational],
) -> Result<(Rational, Rational)> {
    let pieces = k.0.at(atom);
    let violated = || Error::DominationViolated(k.0.algebra().atom_name(atom).to_string());
    let lo = hb_bound(pieces, basis, vals, v, -1).ok_or_else(violated)?;
    let hi = hb_bound(pieces, basis, vals, v, 1).ok_or_else(violated)?;
    if lo > hi {
        return Err(violated());
    }
    Ok((lo, hi))
}

/// Extends `f` from `span(basis)` to the whole space under `k`, one unit
/// vector at a time, taking the midpoint of each feasible interval.
pub fn hb_extend(
    basis: &[CondRealVec],
    values: &[CondReal],
    k: &PolyhedralSublinear,
) -> Result<CondLinFunctional> {
    if basis.len() != values.len() {
        return Err(Error::DimMismatch("one value per basis vector".into()));
    }
    let alg = k.0.algebra();
    let mut out = Vec::with_capacity(alg.len());
    for i in 0..alg.len() {
        let d = k.0.at(i)[0].len();
        let name = || alg.atom_name(i).to_string();
        let mut b: Vec<Vector> = Vec::new();
        let mut vals: Vector = Vec::new();
        for (bv, fv) in basis.iter().zip(values) {
            let x =
                bv.0.get(i)
                    .ok_or_else(|| Error::SupportMismatch("basis must live on 1".into()))?;
            if x.len() != d {
                return Err(atom_err(alg, i, "basis and k differ in dimension"));
            }
            let y =
                fv.0.get(i)
                    .ok_or_else(|| Error::SupportMismatch("values must live on 1".into()))?;
            match solve(&transpose(&b, d), b.len(), x) {
                Some(c) if !b.is_empty() => {
                    if dot(&c, &vals) != *y {
                        return Err(Error::Invalid(format!(
                            "f is not linear on the subspace at `{}`",
                            name()
                        )));
                    }
                }
                _ if x.iter().all(Zero::is_zero) => {
                    if !y.is_zero() {
                        return Err(Error::Invalid(format!("f(0) ≠ 0 at `{}`", name())));
                    }
                }
                _ => {
                    b.push(x.clone());
                    vals.push(y.clone());
                }
            }
        }
        // f ≤ k on the subspace: the sup of f − k there is 0, not +∞.
        if hb_bound(k.0.at(i), &b, &vals, &vec![q(0); d], -1).is_none_or(|v| v.is_positive()) {
            return Err(Error::DominationViolated(name()));
        }
        for e in 0..d {
            let mut v = vec![q(0); d];
            v[e] = q(1);
            let in_span = !b.is_empty() && solve(&transpose(&b, d), b.len(), &v).is_some();
            if in_span {
                continue;
            }
            let (lo, hi) = hb_interval(k, i, &b, &vals, &v)?;
            b.push(v);
            vals.push((lo + hi) / q(2));
        }
        let w = solve(&b, d, &vals)
            .ok_or_else(|| Error::Invalid("extension basis is singular".into()))?;
        if !k.dominates_at(i, &w) {
            return Err(Error::DominationViolated(name()));
        }
        out.push(w);
    }
    CondLinFunctional::new(alg, out)
}

/// `Y^•` (two-sided) or `Y^∘` (one-sided) as inequalities `⟨g, x′⟩ ≤ 1`,
/// with `−1 ≤ ⟨g, x′⟩` added in the two-sided case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polar {
    pub one_sided: bool,
    pub rows: Cond<Vec<Vector>>,
}

impl Polar {
    pub fn contains_at(&self, atom: usize, x: &[Rational]) -> bool {
        self.rows.at(atom).iter().all(|g| {
            let v = dot(g, x);
            v <= q(1) && (self.one_sided || v >= q(-1))
        })
    }

    pub fn contains(&self, x: &CondRealVec) -> Result<bool> {
        let mut ok = true;
        self.rows
            .zip_with(&x.0, |i, _, v| ok &= self.contains_at(i, v))?;
        Ok(ok)
    }

    /// The inequality list as `(a, b)` meaning `⟨a, x′⟩ ≤ b`.
    pub fn h_description(&self, atom: usize) -> Vec<(Vector, Rational)> {
        let mut out = Vec::new();
        for g in self.rows.at(atom) {
            out.push((g.clone(), q(1)));
            if !self.one_sided {
                out.push((neg(g), q(1)));
            }
        }
        out
    }

    /// `max ⟨x, x′⟩` over the polar, `None` when unbounded.
    pub fn support_at(&self, atom: usize, x: &[Rational]) -> Option<Rational> {
        let mut p = LpProblem::new(true, x.to_vec()).all_free();
        for (a, b) in self.h_description(atom) {
            p.push(a, Sense::Le, b);
        }
        match lp_solve(&p) {
            Ok(LpOutcome::Optimal { value, .. }) => Some(value),
            _ => None,
        }
    }
}

pub fn polar(y: &VPolytope, one_sided: bool) -> Polar {
    Polar {
        one_sided,
        rows: y.gens.map(|i, _| y.generators(i)),
    }
}

/// `x ∈ Y^{••}` (or `Y^{∘∘}`): no `x′` in the polar has `⟨x, x′⟩ > 1`.
pub fn bipolar_contains_at(y: &VPolytope, atom: usize, x: &[Rational], one_sided: bool) -> bool {
    polar(y, one_sided)
        .support_at(atom, x)
        .is_some_and(|v| v <= q(1))
}

/// The hull the bipolar should equal: `conv(±Y)` or `conv(Y ∪ {0})`.
pub fn bipolar_hull_contains_at(
    y: &VPolytope,
    atom: usize,
    x: &[Rational],
    one_sided: bool,
) -> bool {
    let g = y.generators(atom);
    let mut pts: Vec<Vector> = g.clone();
    if one_sided {
        pts.push(vec![q(0); y.dim_at(atom)]);
    } else {
        pts.extend(g.iter().map(|p| neg(p)));
    }
    hull_contains(&pts, x)
}

/// Compares both memberships on the generators, their negatives and samples.
pub fn bipolar_check(y: &VPolytope, samples: &[CondRealVec], one_sided: bool) -> Result<bool> {
    let alg = y.algebra();
    for i in 0..alg.len() {
        let d = y.dim_at(i);
        let mut pts: Vec<Vector> = y.generators(i);
        pts.extend(y.generators(i).iter().map(|p| neg(p)));
        for s in samples {
            let p =
                s.0.get(i)
                    .ok_or_else(|| Error::SupportMismatch("samples must live on 1".into()))?;
            if p.len() != d {
                return Err(atom_err(alg, i, "sample and polytope differ in dimension"));
            }
            pts.push(p.clone());
        }
        for p in &pts {
            if bipolar_contains_at(y, i, p, one_sided)
                != bipolar_hull_contains_at(y, i, p, one_sided)
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The gauge of a circled absorbing polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralNorm {
    ball: VPolytope,
}

impl PolyhedralNorm {
    pub fn new(ball: VPolytope) -> Result<Self> {
        for i in 0..ball.algebra().len() {
            let name = ball.algebra().atom_name(i);
            if !ball.absorbing_at(i) {
                return Err(Error::BallNotAbsorbing(name.to_string()));
            }
            if !ball.gens.at(i).iter().all(|g| ball.contains_at(i, &neg(g))) {
                return Err(Error::BallNotAbsorbing(format!(
                    "{name}: ball is not circled"
                )));
            }
        }
        Ok(PolyhedralNorm { ball })
    }

    pub fn linf(dims: &CondNat) -> Result<Self> {
        Self::new(VPolytope::unit_box(dims)?)
    }

    pub fn l1(dims: &CondNat) -> Result<Self> {
        Self::new(VPolytope::cross_polytope(dims)?)
    }

    pub fn ball(&self) -> &VPolytope {
        &self.ball
    }

    /// `min t` with `x = ∑ μ_j g_j`, `∑ μ_j = t`, `μ ≥ 0`.
    pub fn norm_at(&self, atom: usize, x: &[Rational]) -> Rational {
        let g = self.ball.generators(atom);
        let mut p = LpProblem::new(false, vec![q(1); g.len()]);
        for (c, xc) in x.iter().enumerate() {
            p.push(
                g.iter().map(|v| v[c].clone()).collect(),
                Sense::Eq,
                xc.clone(),
            );
        }
        match lp_solve(&p) {
            Ok(LpOutcome::Optimal { value, .. }) => value,
            other => unreachable!("an absorbing ball reaches every point: {other:?}"),
        }
    }

    pub fn norm_eval(&self, x: &CondRealVec) -> Result<CondReal> {
        if x.0.algebra() != self.ball.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        let mut bad = None;
        let out = x.0.map(|i, v| {
            if v.len() != self.ball.dim_at(i) {
                bad = Some(i);
                return q(0);
            }
            self.norm_at(i, v)
        });
        match bad {
            Some(i) => Err(atom_err(
                x.0.algebra(),
                i,
                "vector and norm differ in dimension",
            )),
            None => Ok(CondReal(out)),
        }
    }
}

/// `‖T‖ = sup{‖T x‖ : ‖x‖ ≤ 1}`, attained at a generator of the unit ball.
/// `t` holds one matrix per atom with rows in the codomain.
pub fn operator_norm(
    t: &Cond<Vec<Vector>>,
    dom: &PolyhedralNorm,
    cod: &PolyhedralNorm,
) -> Result<CondReal> {
    let alg = dom.ball.algebra();
    if t.algebra() != alg || cod.ball.algebra() != alg {
        return Err(Error::AlgebraMismatch);
    }
    let mut out = Vec::with_capacity(alg.len());
    for i in 0..alg.len() {
        let m = t.at(i);
        if m.len() != cod.ball.dim_at(i) || m.iter().any(|r| r.len() != dom.ball.dim_at(i)) {
            return Err(atom_err(alg, i, "matrix does not match the norms"));
        }
        let best = dom
            .ball
            .generators(i)
            .iter()
            .map(|v| cod.norm_at(i, &m.iter().map(|r| dot(r, v)).collect::<Vector>()))
            .max()
            .expect("balls have generators");
        out.push(best);
    }
    CondReal::total(alg, out)
}

/// Closed and totally bounded certificate for the polar of a unit ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlaogluCertificate {
    pub polar: Polar,
    /// Number of inequalities per atom: the polar is closed.
    pub h_rows: CondNat,
    pub bounding_box: CondBox,
    pub net: EpsNet,
    /// The net covers the extreme points found by the box LPs.
    pub covered: bool,
}

/// Certifies `U^•` closed (finite H-description) and totally bounded
/// (bounded by LP, then an ε-net of its bounding box).
pub fn banach_alaoglu(u: &VPolytope, eps: &CondReal) -> Result<AlaogluCertificate> {
    let alg = u.algebra();
    let pol = polar(u, false);
    let mut bounds = Vec::with_capacity(alg.len());
    let mut extremes: Vec<Vec<Vector>> = Vec::with_capacity(alg.len());
    for i in 0..alg.len() {
        let d = u.dim_at(i);
        let (mut lo, mut hi) = (Vec::with_capacity(d), Vec::with_capacity(d));
        let mut ext = Vec::new();
        for k in 0..d {
            for s in [q(1), q(-1)] {
                let mut obj = vec![q(0); d];
                obj[k] = s.clone();
                let mut p = LpProblem::new(true, obj).all_free();
                for (a, b) in pol.h_description(i) {
                    p.push(a, Sense::Le, b);
                }
                match lp_solve(&p)? {
                    LpOutcome::Optimal { x, value, .. } => {
                        if s.is_positive() {
                            hi.push(value);
                        } else {
                            lo.push(-value);
                        }
                        ext.push(x);
                    }
                    _ => return Err(Error::BallNotAbsorbing(alg.atom_name(i).to_string())),
                }
            }
        }
        bounds.push((lo, hi));
        extremes.push(ext);
    }
    let bounding_box = CondBox::new(alg, bounds)?;
    let net = eps_net(&bounding_box, eps)?;
    let covered = extremes.iter().enumerate().all(|(i, ext)| {
        ext.iter()
            .all(|x| bounding_box.contains(i, x) && net.covers(i, x))
    });
    Ok(AlaogluCertificate {
        h_rows: pol.rows.map(|i, _| pol.h_description(i).len() as u64),
        polar: pol,
        bounding_box,
        net,
        covered,
    })
}

/// The coefficient vector of a conditionally linear map `𝐑ⁿ → 𝐑`, read off
/// the conditional unit vectors.
pub fn represent_functional(
    dims: &CondNat,
    f: impl Fn(&CondRealVec) -> Result<CondReal>,
) -> Result<CondLinFunctional> {
    let max = dims.values().iter().flatten().copied().max().unwrap_or(0) as usize;
    let mut coeffs: Vec<Vector> = dims.values().iter().map(|_| Vec::new()).collect();
    for k in 0..max {
        let v = f(&CondRealVec::unit(dims, k))?;
        for (i, c) in coeffs.iter_mut().enumerate() {
            if k < *dims.at(i) as usize {
                c.push(v.at(i).clone());
            }
        }
    }
    CondLinFunctional::new(dims.algebra(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: usize) -> Algebra {
        Algebra::numbered(n).unwrap()
    }

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn v(x: &[i64]) -> Vector {
        x.iter().map(|&a| q(a)).collect()
    }

    #[test]
    fn minkowski_and_scale() {
        let a = alg(1);
        let y = VPolytope::from_ints(&a, &[&[&[0, 0], &[1, 1]]]).unwrap();
        let zero = VPolytope::from_ints(&a, &[&[&[0, 0]]]).unwrap();
        assert_eq!(y.minkowski_add(&zero).unwrap(), y);
        let s = y.scale(&CondReal::zero(&a)).unwrap();
        assert_eq!(s.conv_hull().raw_generators(0), &[v(&[0, 0])]);
        let e1 = VPolytope::from_ints(&a, &[&[&[0, 0], &[1, 0]]]).unwrap();
        let e2 = VPolytope::from_ints(&a, &[&[&[0, 0], &[0, 1]]]).unwrap();
        let par = e1.minkowski_add(&e2).unwrap();
        assert_eq!(
            par.raw_generators(0),
            &[v(&[0, 0]), v(&[0, 1]), v(&[1, 0]), v(&[1, 1])]
        );
    }

    #[test]
    fn hull_and_shape_predicates() {
        let a = alg(1);
        let tri =
            VPolytope::from_ints(&a, &[&[&[0, 0], &[2, 0], &[0, 2], &[1, 1], &[0, 1]]]).unwrap();
        let hull = tri.conv_hull();
        assert_eq!(hull.raw_generators(0).len(), 3);
        assert!(tri.is_convex());
        let step = VPolytope::new(&a, vec![tri.conv_step(&[r(1, 2)]).at(0).clone()]).unwrap();
        assert_eq!(step.conv_hull(), hull);
        let seg = VPolytope::from_ints(&a, &[&[&[-1, 0], &[1, 0]]]).unwrap();
        assert!(seg.is_circled());
        assert!(!seg.is_absorbing());
        let bx = VPolytope::unit_box(&CondNat::constant(&a, 2)).unwrap();
        assert!(bx.is_circled() && bx.is_absorbing());
        assert!(is_convex_points(&[v(&[1, 2])]));
        assert!(!is_convex_points(&[v(&[0]), v(&[2])]));
    }

    #[test]
    fn span_examples() {
        let a = alg(2);
        let g1 = CondRealVec::from_ints(&a, &[&[1, 0], &[1, 1]]).unwrap();
        let g2 = CondRealVec::from_ints(&a, &[&[0, 1], &[2, 2]]).unwrap();
        let s = span_membership(&[g1.clone(), g2.clone()], &g1).unwrap();
        assert!(s.is_member());
        let x = CondRealVec::from_ints(&a, &[&[3, 5], &[1, 2]]).unwrap();
        let s = span_membership(&[g1.clone(), g2.clone()], &x).unwrap();
        assert_eq!(s.witness(), Some(1));
        assert_eq!(s.coeffs.get(0), Some(&v(&[3, 5])));
        let y = CondRealVec::from_ints(&a, &[&[3, 5], &[3, 3]]).unwrap();
        let s = span_membership(&[g1, g2], &y).unwrap();
        assert!(s.is_member());
        assert_eq!(s.coeffs.at(1), &v(&[3, 0]));
    }

    #[test]
    fn duality_examples() {
        let a = alg(2);
        let f1 = CondLinFunctional::from_ints(&a, &[&[1, 0], &[1, 1]]).unwrap();
        let f2 = CondLinFunctional::from_ints(&a, &[&[0, 1], &[2, 2]]).unwrap();
        let d = duality_coeffs(&f1, &[f1.clone(), f2.clone()]).unwrap();
        assert!(d.kernel_inclusion);
        let c = d.coeffs.clone().unwrap();
        assert_eq!(
            CondLinFunctional::combination(&[f1.clone(), f2.clone()], &c).unwrap(),
            f1
        );
        // Independent at atom 0 forces λ₂ = 0 there; dependent at atom 1 lets it move.
        assert_eq!(c.at(0), &v(&[1, 0]));
        assert!(!d.all_nonzero);
        let n = d.normalized.unwrap();
        assert!(n.at(1).iter().all(|x| !x.is_zero()));
        assert_eq!(
            CondLinFunctional::combination(&[f1.clone(), f2.clone()], &n).unwrap(),
            f1
        );
        let g = CondLinFunctional::from_ints(&a, &[&[1, 0], &[1, 0]]).unwrap();
        let d = duality_coeffs(&g, &[f1, f2]).unwrap();
        assert!(!d.kernel_inclusion && d.coeffs.is_none());
        assert_eq!(d.kernel_witness.map(|w| w.0), Some(1));
    }

    #[test]
    fn separation_examples() {
        let a = alg(2);
        let p0 = VPolytope::from_ints(&a, &[&[&[0, 0]], &[&[0, 0]]]).unwrap();
        let p1 = VPolytope::from_ints(&a, &[&[&[1, 0]], &[&[0, 3]]]).unwrap();
        let s = separate(&p0, &p1, true).unwrap();
        assert_eq!(s.eps.at(0), &r(1, 2));
        assert_eq!(s.f.coeffs_at(0)[0], q(1));
        assert_ne!(s.f.coeffs_at(1)[1], q(0));
        assert!(separation_holds(&p0, &p1, &s));
        let seg = VPolytope::from_ints(&a, &[&[&[-1, 0], &[1, 0]], &[&[-1, 0], &[1, 0]]]).unwrap();
        let err = separate(
            &seg,
            &p1.minkowski_add(&VPolytope::from_ints(&a, &[&[&[-1, 0]], &[&[0, 0]]]).unwrap())
                .unwrap(),
            true,
        );
        assert!(matches!(err, Err(Error::NotDisjoint(c)) if c == a.atom(0)));
        let touch = VPolytope::from_ints(&a, &[&[&[1, 0], &[2, 0]], &[&[1, 0], &[2, 0]]]).unwrap();
        let weak = separate(&seg, &touch, false).unwrap();
        assert!(weak.eps.at(0).is_zero() && separation_holds(&seg, &touch, &weak));
    }

    #[test]
    fn hahn_banach_examples() {
        let a = alg(2);
        let dims = CondNat::constant(&a, 2);
        let k = PolyhedralSublinear::linf(&dims).unwrap();
        let e1 = CondRealVec::unit(&dims, 0);
        let one = CondReal::one(&a);
        // The feasible interval for f̂(e₂) is [0, 0].
        let (lo, hi) = hb_interval(&k, 0, &[v(&[1, 0])], &[q(1)], &v(&[0, 1])).unwrap();
        assert_eq!((lo, hi), (q(0), q(0)));
        let f = hb_extend(std::slice::from_ref(&e1), std::slice::from_ref(&one), &k).unwrap();
        assert_eq!(f.coeffs_at(0), &v(&[1, 0])[..]);
        let full = hb_extend(
            &[e1.clone(), CondRealVec::unit(&dims, 1)],
            &[one.clone(), CondReal::zero(&a)],
            &k,
        )
        .unwrap();
        assert_eq!(full, f);
        // Different k per atom: ℓ∞ at atom 0, 2·ℓ∞ at atom 1.
        let k2 = PolyhedralSublinear::new(
            &a,
            vec![
                k.0.at(0).clone(),
                k.0.at(1)
                    .iter()
                    .map(|p| p.iter().map(|x| x * q(2)).collect())
                    .collect(),
            ],
        )
        .unwrap();
        let g = hb_extend(std::slice::from_ref(&e1), std::slice::from_ref(&one), &k2).unwrap();
        assert_eq!(g.coeffs_at(1), &v(&[1, 0])[..]);
        let (lo, hi) = hb_interval(&k2, 1, &[v(&[1, 0])], &[q(1)], &v(&[0, 1])).unwrap();
        assert_eq!((lo, hi), (q(-1), q(1)));
        let too_big = CondReal::from_ints(&a, &[2, 1]).unwrap();
        assert!(
            matches!(hb_extend(&[e1], &[too_big], &k), Err(Error::DominationViolated(s)) if s == a.atom_name(0))
        );
    }

    #[test]
    fn polar_examples() {
        let a = alg(1);
        let zero = VPolytope::from_ints(&a, &[&[&[0, 0]]]).unwrap();
        let pz = polar(&zero, false);
        assert!(pz.contains_at(0, &v(&[100, -7])));
        let seg = VPolytope::from_ints(&a, &[&[&[-1, 0], &[1, 0]]]).unwrap();
        let ps = polar(&seg, false);
        assert!(ps.contains_at(0, &v(&[1, 50])) && !ps.contains_at(0, &v(&[2, 0])));
        let point = VPolytope::from_ints(&a, &[&[&[1, 1]]]).unwrap();
        assert!(bipolar_contains_at(&point, 0, &v(&[-1, -1]), false));
        assert!(!point.contains_at(0, &v(&[-1, -1])));
        let samples: Vec<CondRealVec> = [[-1, -1], [0, 0], [1, 0], [2, 2]]
            .iter()
            .map(|p| CondRealVec::from_ints(&a, &[p]).unwrap())
            .collect();
        assert!(bipolar_check(&point, &samples, false).unwrap());
        assert!(bipolar_check(&point, &samples, true).unwrap());
        assert!(bipolar_contains_at(&point, 0, &v(&[0, 0]), true));
    }

    #[test]
    fn norm_examples() {
        let a = alg(2);
        let dims = CondNat::constant(&a, 2);
        let linf = PolyhedralNorm::linf(&dims).unwrap();
        let x = CondRealVec::from_ints(&a, &[&[3, -4], &[3, -4]]).unwrap();
        assert_eq!(
            linf.norm_eval(&x).unwrap(),
            CondReal::from_ints(&a, &[4, 4]).unwrap()
        );
        let l1 = PolyhedralNorm::l1(&dims).unwrap();
        assert_eq!(
            l1.norm_eval(&x).unwrap(),
            CondReal::from_ints(&a, &[7, 7]).unwrap()
        );
        let id = Cond::constant(&a, vec![v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(operator_norm(&id, &linf, &linf).unwrap(), CondReal::one(&a));
        assert_eq!(
            operator_norm(&id, &linf, &l1).unwrap(),
            CondReal::from_ints(&a, &[2, 2]).unwrap()
        );
        let seg = VPolytope::from_ints(&a, &[&[&[-1, 0], &[1, 0]], &[&[-1, 0], &[1, 0]]]).unwrap();
        assert!(matches!(
            PolyhedralNorm::new(seg),
            Err(Error::BallNotAbsorbing(_))
        ));
    }

    #[test]
    fn alaoglu_and_representation() {
        let a = alg(2);
        let dims = CondNat::nat(&a, vec![2, 3]).unwrap();
        let u = VPolytope::unit_box(&dims).unwrap();
        let cert = banach_alaoglu(&u, &CondReal::constant(&a, r(1, 2))).unwrap();
        assert!(cert.covered);
        assert_eq!(
            cert.bounding_box.0.at(1),
            &(v(&[-1, -1, -1]), v(&[1, 1, 1]))
        );
        let w =
            CondLinFunctional::from_ints(&a, &[&[2, -1][..], &[0, 5, 7][..]].map(|s| s)).unwrap();
        let rep = represent_functional(&dims, |x| w.eval(x)).unwrap();
        assert_eq!(rep, w);
    }
}
