//! Duality of functionals, polyhedral Hahn-Banach, strict separation, polars,
//! the bipolar theorem and Banach-Alaoglu certificates.

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{atoms, derived_rng, Ck, Config};
use crate::boolalg::Algebra;
use crate::cli::sample::{random_point, Sample};
use crate::condlin::{
    banach_alaoglu, bipolar_check, duality_coeffs, hb_extend, lp_solve, polar,
    represent_functional, separate, separation_holds, CondLinFunctional, LpOutcome, LpProblem,
    PolyhedralNorm, PolyhedralSublinear, Sense, VPolytope,
};
use crate::condnum::{CondNat, CondReal, CondRealVec};
use crate::error::{Error, Result};
use crate::Rational;

/// Sampled dual points per instance for the polar and bipolar checks.
pub const SAMPLES: usize = 200;

// Layout of `Sample::points`.
const FAMILY: usize = 0;
const TARGET: usize = 1;
const C1: usize = 2;
const C2: usize = 3;
const POLY: usize = 4;
const BASIS: usize = 5;
const DOMINATED: usize = 6;

pub fn generate(rng: &mut ChaCha8Rng, cfg: &Config, _case: usize) -> Sample {
    let n = atoms(rng, cfg);
    let fdims: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
    let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let k = rng.gen_range(0..=3);
    let combine = rng.gen_bool(0.5);
    let mut family = Vec::new();
    let mut target = Vec::new();
    for &d in &fdims {
        let fs: Vec<Vec<i64>> = (0..k).map(|_| random_point(rng, d, 2)).collect();
        let f = if combine {
            let c = random_point(rng, k, 2);
            (0..d)
                .map(|j| fs.iter().zip(&c).map(|(v, l)| v[j] * l).sum())
                .collect()
        } else {
            random_point(rng, d, 2)
        };
        family.push(fs);
        target.push(vec![f]);
    }
    let gens = |rng: &mut ChaCha8Rng, lo: usize| -> Vec<Vec<Vec<i64>>> {
        dims.iter()
            .map(|&d| {
                (0..rng.gen_range(lo..=3))
                    .map(|_| random_point(rng, d, 3))
                    .collect()
            })
            .collect()
    };
    let c1 = gens(rng, 1);
    let c2 = gens(rng, 1);
    let poly = gens(rng, 1);
    let m = rng.gen_range(0..=2);
    let basis = dims
        .iter()
        .map(|&d| (0..m).map(|_| random_point(rng, d, 3)).collect())
        .collect();
    let dominated = dims
        .iter()
        .map(|&d| vec![random_point(rng, d, 3)])
        .collect();
    Sample {
        atoms: n,
        points: vec![family, target, c1, c2, poly, basis, dominated],
        cond: rng.gen(),
        ..Sample::default()
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn rv(p: &[i64]) -> Vec<Rational> {
    p.iter().map(|&v| q(v)).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The `j`-th object of every atom, for `j` below the shortest list.
fn aligned(s: &Sample, k: usize) -> Vec<Vec<Vec<Rational>>> {
    let m = s.points[k].iter().map(Vec::len).min().unwrap_or(0);
    (0..m)
        .map(|j| s.points[k].iter().map(|pts| rv(&pts[j])).collect())
        .collect()
}

fn polytope(alg: &Algebra, s: &Sample, k: usize) -> Result<VPolytope> {
    VPolytope::new(
        alg,
        s.points[k]
            .iter()
            .map(|pts| pts.iter().map(|p| rv(p)).collect())
            .collect(),
    )
}

fn dims_of(alg: &Algebra, s: &Sample, k: usize) -> Result<CondNat> {
    CondNat::nat(
        alg,
        s.points[k].iter().map(|pts| pts[0].len() as u64).collect(),
    )
}

pub fn check(s: &Sample, _cfg: &Config, ck: &mut Ck) -> Result<()> {
    let alg = s.algebra();
    check_duality(&alg, s, ck)?;
    check_hahn_banach(&alg, s, ck)?;
    check_separation(&alg, s, ck)?;
    check_polars(&alg, s, ck)?;
    check_norms(&alg, s, ck)
}

fn check_duality(alg: &Algebra, s: &Sample, ck: &mut Ck) -> Result<()> {
    let fs: Vec<CondLinFunctional> = aligned(s, FAMILY)
        .into_iter()
        .map(|c| CondLinFunctional::new(alg, c))
        .collect::<Result<_>>()?;
    let f = CondLinFunctional::new(alg, aligned(s, TARGET).remove(0))?;
    let d = duality_coeffs(&f, &fs)?;
    ck.eq(
        "kernel_inclusion_iff_representable",
        &d.kernel_inclusion,
        &d.coeffs.is_some(),
    );
    let rebuilt = |lam: &crate::condnum::Cond<Vec<Rational>>| {
        (0..alg.len()).all(|i| {
            let w = f.coeffs_at(i);
            (0..w.len()).all(|c| {
                let sum: Rational = fs
                    .iter()
                    .zip(lam.at(i))
                    .map(|(g, l)| &g.coeffs_at(i)[c] * l)
                    .sum();
                sum == w[c]
            })
        })
    };
    if let Some(lam) = &d.coeffs {
        ck.holds("combination_reconstructs", rebuilt(lam));
    }
    if let Some(lam) = &d.normalized {
        ck.holds("normalized_combination_reconstructs", rebuilt(lam));
        let nonzero = (0..alg.len()).all(|i| lam.at(i).iter().all(|l| !l.is_zero()));
        ck.eq("all_nonzero_flag", &d.all_nonzero, &nonzero);
    }
    match &d.kernel_witness {
        Some((i, v)) => {
            let in_kernels = fs.iter().all(|g| dot(g.coeffs_at(*i), v).is_zero());
            ck.holds(
                "kernel_witness_valid",
                in_kernels && !dot(f.coeffs_at(*i), v).is_zero(),
            );
        }
        None => ck.holds("witness_iff_not_included", d.kernel_inclusion),
    }
    let g = represent_functional(&f.dims(), |x| f.eval(x))?;
    ck.eq("represent_functional_round_trip", &g, &f);
    Ok(())
}

fn check_hahn_banach(alg: &Algebra, s: &Sample, ck: &mut Ck) -> Result<()> {
    let dims = dims_of(alg, s, DOMINATED)?;
    let k = PolyhedralSublinear::linf(&dims)?;
    // A functional with ∑|w| ≤ 1 lies below max|x_j|.
    let w: Vec<Vec<Rational>> = s.points[DOMINATED]
        .iter()
        .map(|pts| {
            let l1: i64 = pts[0].iter().map(|v| v.abs()).sum();
            pts[0]
                .iter()
                .map(|&v| Rational::new(v.into(), (l1.max(1)).into()))
                .collect()
        })
        .collect();
    let basis: Vec<CondRealVec> = aligned(s, BASIS)
        .into_iter()
        .map(|b| CondRealVec::total(alg, b))
        .collect::<Result<_>>()?;
    let values: Vec<CondReal> = basis
        .iter()
        .map(|b| CondReal::total(alg, (0..alg.len()).map(|i| dot(&w[i], b.0.at(i))).collect()))
        .collect::<Result<_>>()?;
    let ext = hb_extend(&basis, &values, &k)?;
    for (b, v) in basis.iter().zip(&values) {
        ck.eq("extension_agrees_on_subspace", &ext.eval(b)?, v);
    }
    let mut rng = derived_rng(s);
    for i in 0..alg.len() {
        let we = ext.coeffs_at(i);
        let d = we.len();
        ck.holds("extension_dominated", k.dominates_at(i, we));
        for m in 0..(1usize << d) {
            let v: Vec<Rational> = (0..d)
                .map(|j| q(if m >> j & 1 == 1 { 1 } else { -1 }))
                .collect();
            ck.that("below_k_on_cube_vertices", dot(we, &v) <= q(1), || {
                format!("{v:?} at atom {i}")
            });
        }
        for _ in 0..16 {
            let x = random_rational(&mut rng, d);
            let kx = x.iter().map(|c| c.abs()).max().unwrap_or_default();
            ck.that("below_k_on_random_points", dot(we, &x) <= kx, || {
                format!("{x:?} at atom {i}")
            });
        }
    }
    Ok(())
}

fn random_rational(rng: &mut ChaCha8Rng, d: usize) -> Vec<Rational> {
    (0..d)
        .map(|_| Rational::new(rng.gen_range(-8..=8).into(), rng.gen_range(1..=4).into()))
        .collect()
}

/// Whether the convex hulls of `a` and `b` meet: weights `λ`, `μ` on the
/// simplices with `∑ λ a = ∑ μ b`.
fn hulls_meet(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let (na, nb) = (a.len(), b.len());
    let mut p = LpProblem::new(true, vec![q(0); na + nb]);
    for c in 0..a[0].len() {
        let row = a
            .iter()
            .map(|x| x[c].clone())
            .chain(b.iter().map(|y| -y[c].clone()))
            .collect();
        p.push(row, Sense::Eq, q(0));
    }
    p.push(
        (0..na + nb).map(|j| q((j < na) as i64)).collect(),
        Sense::Eq,
        q(1),
    );
    p.push(
        (0..na + nb).map(|j| q((j >= na) as i64)).collect(),
        Sense::Eq,
        q(1),
    );
    matches!(lp_solve(&p), Ok(LpOutcome::Optimal { .. }))
}

fn check_separation(alg: &Algebra, s: &Sample, ck: &mut Ck) -> Result<()> {
    let c1 = polytope(alg, s, C1)?;
    let c2 = polytope(alg, s, C2)?;
    let meet: Vec<usize> = (0..alg.len())
        .filter(|&i| hulls_meet(&c1.generators(i), &c2.generators(i)))
        .collect();
    match separate(&c1, &c2, true) {
        Ok(sep) => {
            ck.that("separable_iff_disjoint", meet.is_empty(), || {
                format!("hulls meet at {meet:?}")
            });
            ck.holds("separation_holds", separation_holds(&c1, &c2, &sep));
            strict_gap(&c1, &c2, &sep.f, &sep.eps, ck);
        }
        Err(Error::NotDisjoint(c)) => ck.eq("overlap_condition", &c, &alg.condition(meet)),
        Err(e) => return Err(e),
    }
    // Far apart copies are always strictly separated.
    let shifted = VPolytope::new(
        alg,
        (0..alg.len())
            .map(|i| {
                c2.raw_generators(i)
                    .iter()
                    .map(|p| p.iter().map(|v| v + q(10)).collect())
                    .collect()
            })
            .collect(),
    )?;
    let sep = separate(&c1, &shifted, true)?;
    strict_gap(&c1, &shifted, &sep.f, &sep.eps, ck);
    Ok(())
}

fn strict_gap(c1: &VPolytope, c2: &VPolytope, f: &CondLinFunctional, eps: &CondReal, ck: &mut Ck) {
    for i in 0..c1.algebra().len() {
        let (w, e) = (f.coeffs_at(i), eps.at(i));
        ck.holds("gap_positive", e.is_positive());
        for x in c1.generators(i) {
            for y in c2.generators(i) {
                ck.that(
                    "strict_gap_on_generators",
                    dot(w, &x) + e < dot(w, &y),
                    || format!("{x:?} vs {y:?} at atom {i}"),
                );
            }
        }
    }
}

fn check_polars(alg: &Algebra, s: &Sample, ck: &mut Ck) -> Result<()> {
    let y = polytope(alg, s, POLY)?;
    let z = polytope(alg, s, C1)?;
    let both = VPolytope::new(
        alg,
        (0..alg.len())
            .map(|i| {
                y.raw_generators(i)
                    .iter()
                    .chain(z.raw_generators(i))
                    .cloned()
                    .collect()
            })
            .collect(),
    )?;
    let (py, pz, pboth) = (polar(&y, false), polar(&z, false), polar(&both, false));
    let py2 = polar(&y.scale(&CondReal::constant(alg, q(2)))?, false);
    let oy = polar(&y, true);
    let mut rng = derived_rng(s);
    let samples: Vec<CondRealVec> = (0..SAMPLES)
        .map(|_| {
            CondRealVec::total(
                alg,
                (0..alg.len())
                    .map(|i| random_rational(&mut rng, y.dim_at(i)))
                    .collect(),
            )
        })
        .collect::<Result<_>>()?;
    for i in 0..alg.len() {
        let d = y.dim_at(i);
        ck.holds("polar_contains_zero", py.contains_at(i, &vec![q(0); d]));
        let inside: Vec<&Vec<Rational>> = samples
            .iter()
            .map(|x| x.0.at(i))
            .filter(|x| py.contains_at(i, x))
            .collect();
        for x in samples.iter().map(|x| x.0.at(i)) {
            let (a, b, u) = (
                py.contains_at(i, x),
                pz.contains_at(i, x),
                pboth.contains_at(i, x),
            );
            ck.holds("polar_antitone", !u || a);
            ck.eq("polar_of_union_is_intersection", &u, &(a && b));
            let twice: Vec<Rational> = x.iter().map(|v| v * q(2)).collect();
            ck.eq(
                "polar_of_scaled_set",
                &py2.contains_at(i, x),
                &py.contains_at(i, &twice),
            );
            ck.holds("two_sided_inside_one_sided", !a || oy.contains_at(i, x));
            if a {
                let neg: Vec<Rational> = x.iter().map(|v| -v).collect();
                ck.holds("polar_circled", py.contains_at(i, &neg));
            }
        }
        for pair in inside.windows(2) {
            let mid: Vec<Rational> = pair[0]
                .iter()
                .zip(pair[1])
                .map(|(u, v)| (u + v) / q(2))
                .collect();
            ck.holds("polar_convex", py.contains_at(i, &mid));
        }
    }
    ck.holds("bipolar_two_sided", bipolar_check(&y, &samples, false)?);
    ck.holds("bipolar_one_sided", bipolar_check(&y, &samples, true)?);

    // The circled hull of Y and the unit vectors is a unit ball.
    let ball = VPolytope::new(
        alg,
        (0..alg.len())
            .map(|i| {
                let d = y.dim_at(i);
                let mut g = y.raw_generators(i).to_vec();
                g.extend((0..d).map(|j| (0..d).map(|c| q((c == j) as i64)).collect()));
                g
            })
            .collect(),
    )?
    .circled_hull();
    let eps = CondReal::constant(alg, Rational::new(1.into(), 2.into()));
    let cert = banach_alaoglu(&ball, &eps)?;
    ck.holds("alaoglu_net_covers", cert.covered);
    let pb = polar(&ball, false);
    for i in 0..alg.len() {
        ck.eq(
            "alaoglu_h_description",
            &(*cert.h_rows.at(i) as usize),
            &(2 * ball.generators(i).len()),
        );
        for x in samples
            .iter()
            .map(|x| x.0.at(i))
            .filter(|x| pb.contains_at(i, x))
        {
            ck.that(
                "alaoglu_polar_in_box_and_net",
                cert.bounding_box.contains(i, x) && cert.net.covers(i, x),
                || format!("{x:?} at atom {i}"),
            );
        }
    }
    Ok(())
}

fn check_norms(alg: &Algebra, s: &Sample, ck: &mut Ck) -> Result<()> {
    let dims = dims_of(alg, s, C1)?;
    let (linf, l1) = (PolyhedralNorm::linf(&dims)?, PolyhedralNorm::l1(&dims)?);
    let x = CondRealVec::total(alg, s.points[C1].iter().map(|p| rv(&p[0])).collect())?;
    let y = CondRealVec::total(alg, s.points[POLY].iter().map(|p| rv(&p[0])).collect())?;
    let three = CondReal::constant(alg, q(-3));
    for (name, norm, direct) in [
        (
            "linf",
            &linf,
            (|v: &[Rational]| v.iter().map(|c| c.abs()).max().unwrap_or_default())
                as fn(&[Rational]) -> Rational,
        ),
        ("l1", &l1, |v: &[Rational]| v.iter().map(|c| c.abs()).sum()),
    ] {
        let nx = norm.norm_eval(&x)?;
        ck.holds(
            &format!("{name}_norm_matches_formula"),
            (0..alg.len()).all(|i| *nx.at(i) == direct(x.0.at(i))),
        );
        ck.eq(
            &format!("{name}_norm_homogeneous"),
            &norm.norm_eval(&x.scale(&three)?)?,
            &nx.mul(&three.abs())?,
        );
        let sum = norm.norm_eval(&x.add(&y)?)?;
        ck.holds(
            &format!("{name}_norm_triangle"),
            sum.le(&nx.add(&norm.norm_eval(&y)?)?)?,
        );
    }
    Ok(())
}
