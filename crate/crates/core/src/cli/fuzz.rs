//! Random power-set expressions evaluated three ways: by the per-atom
//! operations, by the primal-set formulas, and through the expression
//! language. Disagreements are shrunk and reported with an instance file and
//! an expression that reproduce them under `eval`.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::dsl::{condition_literal, Evaluator, Sexp};
use super::json::{to_json, Instance, InstanceJson, Obj, SubsetJson};
use super::sample::{random_carriers, random_slices, Sample};
use super::suites::{case_rng, Config, Mutant};
use crate::boolalg::AlgebraDescriptor;
use crate::condset::formula::{self, PrimalSet};
use crate::condset::{cond_complement, cond_intersection, cond_union, CondSet, CondSubset, Value};
use crate::error::Result;

/// Leaves are the sample subsets `Y0..Y3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Leaf(usize),
    Union(Box<Expr>, Box<Expr>),
    Inter(Box<Expr>, Box<Expr>),
    Compl(Box<Expr>),
    Restrict(Box<Expr>, u64),
}

const LEAVES: usize = 4;
const DEPTH: usize = 4;
pub const DEFAULT_CASES: usize = 300;

fn random_expr(rng: &mut ChaCha8Rng, depth: usize) -> Expr {
    if depth == 0 || rng.gen_bool(0.2) {
        return Expr::Leaf(rng.gen_range(0..LEAVES));
    }
    let op = rng.gen_range(0..4);
    let a = Box::new(random_expr(rng, depth - 1));
    match op {
        0 => Expr::Union(a, Box::new(random_expr(rng, depth - 1))),
        1 => Expr::Inter(a, Box::new(random_expr(rng, depth - 1))),
        2 => Expr::Compl(a),
        _ => Expr::Restrict(a, rng.gen()),
    }
}

impl Expr {
    fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Leaf(_) => Vec::new(),
            Expr::Union(a, b) | Expr::Inter(a, b) => vec![a, b],
            Expr::Compl(a) | Expr::Restrict(a, _) => vec![a],
        }
    }

    /// Each child in place of its parent, anywhere in the tree.
    fn shrink(&self) -> Vec<Expr> {
        let mut out: Vec<Expr> = self.children().into_iter().cloned().collect();
        let wrap =
            |f: &dyn Fn(Expr) -> Expr, e: &Expr| e.shrink().into_iter().map(f).collect::<Vec<_>>();
        match self {
            Expr::Leaf(i) if *i > 0 => out.push(Expr::Leaf(0)),
            Expr::Leaf(_) => {}
            Expr::Union(a, b) | Expr::Inter(a, b) => {
                let union = matches!(self, Expr::Union(..));
                let make = |x: Expr, y: Expr| {
                    if union {
                        Expr::Union(Box::new(x), Box::new(y))
                    } else {
                        Expr::Inter(Box::new(x), Box::new(y))
                    }
                };
                out.extend(wrap(&|x| make(x, (**b).clone()), a));
                out.extend(wrap(&|y| make((**a).clone(), y), b));
            }
            Expr::Compl(a) => out.extend(wrap(&|x| Expr::Compl(Box::new(x)), a)),
            Expr::Restrict(a, bits) => out.extend(wrap(&|x| Expr::Restrict(Box::new(x), *bits), a)),
        }
        out
    }

    fn to_sexp(&self, s: &Sample) -> Sexp {
        let alg = s.algebra();
        let op = |name: &str, args: Vec<Sexp>| {
            let mut items = vec![Sexp::atom(name)];
            items.extend(args);
            Sexp::list(items)
        };
        match self {
            Expr::Leaf(i) => Sexp::atom(&format!("Y{i}")),
            Expr::Union(a, b) => op("union", vec![a.to_sexp(s), b.to_sexp(s)]),
            Expr::Inter(a, b) => op("inter", vec![a.to_sexp(s), b.to_sexp(s)]),
            Expr::Compl(a) => op("compl", vec![a.to_sexp(s)]),
            Expr::Restrict(a, bits) => op(
                "restrict",
                vec![a.to_sexp(s), condition_literal(&alg.from_bits(*bits))],
            ),
        }
    }
}

/// Evaluation with the per-atom operations.
fn per_atom(
    e: &Expr,
    x: &CondSet,
    leaves: &[CondSubset],
    mutant: Option<Mutant>,
) -> Result<CondSubset> {
    Ok(match e {
        Expr::Leaf(i) => leaves[*i].clone(),
        Expr::Union(a, b) => cond_union(
            x,
            &[
                per_atom(a, x, leaves, mutant)?,
                per_atom(b, x, leaves, mutant)?,
            ],
        )?,
        Expr::Inter(a, b) => cond_intersection(
            x,
            &[
                per_atom(a, x, leaves, mutant)?,
                per_atom(b, x, leaves, mutant)?,
            ],
        )?,
        Expr::Compl(a) => {
            let y = per_atom(a, x, leaves, mutant)?;
            match mutant {
                Some(Mutant::ComplementNoSupportFix) => CondSubset::from_fn(x, |i| {
                    y.slice(i)
                        .map(|s| x.full(i).difference(s))
                        .filter(|d| !d.is_empty())
                }),
                None => cond_complement(&y),
            }
        }
        Expr::Restrict(a, bits) => {
            per_atom(a, x, leaves, mutant)?.restrict(&x.algebra().from_bits(*bits))
        }
    })
}

/// Evaluation with the primal-set formulas.
fn by_formula(e: &Expr, x: &CondSet, leaves: &[PrimalSet]) -> Result<PrimalSet> {
    Ok(match e {
        Expr::Leaf(i) => leaves[*i].clone(),
        Expr::Union(a, b) => {
            formula::union(x, &[by_formula(a, x, leaves)?, by_formula(b, x, leaves)?])?
        }
        Expr::Inter(a, b) => {
            formula::intersection(x, &[by_formula(a, x, leaves)?, by_formula(b, x, leaves)?])?
        }
        Expr::Compl(a) => formula::complement(&by_formula(a, x, leaves)?)?,
        Expr::Restrict(a, bits) => {
            by_formula(a, x, leaves)?.restrict(&x.algebra().from_bits(*bits))
        }
    })
}

/// The instance file holding the sample space `X` and leaves `Y0..Y3`.
pub fn instance_of(s: &Sample) -> InstanceJson {
    let alg = s.algebra();
    let names = alg.atom_names().to_vec();
    let carrier = |n: usize| (1..=n as i64).map(Value::Int).collect::<Vec<_>>();
    let sets = BTreeMap::from([(
        "X".to_string(),
        names
            .iter()
            .cloned()
            .zip(s.carriers.iter().map(|&n| carrier(n)))
            .collect(),
    )]);
    let subsets = s
        .subsets
        .iter()
        .enumerate()
        .map(|(k, slices)| {
            let per: BTreeMap<String, Vec<Value>> = slices
                .iter()
                .enumerate()
                .filter_map(|(i, b)| {
                    b.map(|b| {
                        let vals = (0..s.carriers[i])
                            .filter(|p| b >> p & 1 == 1)
                            .map(|p| Value::Int(p as i64 + 1));
                        (names[i].clone(), vals.collect())
                    })
                })
                .collect();
            (
                format!("Y{k}"),
                SubsetJson {
                    set: "X".into(),
                    slices: per,
                },
            )
        })
        .collect();
    InstanceJson {
        algebra: AlgebraDescriptor {
            atoms: names,
            weights: None,
        },
        conditions: BTreeMap::new(),
        sets,
        subsets,
        elements: BTreeMap::new(),
        functions: BTreeMap::new(),
        topologies: BTreeMap::new(),
        filters: BTreeMap::new(),
        reals: BTreeMap::new(),
        vectors: BTreeMap::new(),
        functionals: BTreeMap::new(),
        polytopes: BTreeMap::new(),
        lps: BTreeMap::new(),
    }
}

/// The first disagreement between the three routes, if any.
fn disagreement(e: &Expr, s: &Sample, mutant: Option<Mutant>) -> Result<Option<String>> {
    let x = s.space()?;
    let leaves: Vec<CondSubset> = s
        .subsets
        .iter()
        .map(|sl| Sample::subset_of(&x, sl))
        .collect();
    let a = per_atom(e, &x, &leaves, mutant)?;
    let primal: Vec<PrimalSet> = leaves.iter().map(PrimalSet::from_subset).collect();
    let b = by_formula(e, &x, &primal)?.to_subset();
    if a != b {
        return Ok(Some(format!("per-atom {a} vs formula {b}")));
    }
    let inst = Instance::load(&instance_of(s))?;
    let c = match Evaluator::new(&inst, 0).eval(&e.to_sexp(s))? {
        Obj::Subset(y) => y,
        o => return Ok(Some(format!("expression evaluated to a {}", o.kind()))),
    };
    // The instance space is rebuilt from JSON, so compare the printed forms.
    if to_json(&Obj::Subset(c.clone())) != to_json(&Obj::Subset(a.clone())) {
        return Ok(Some(format!("per-atom {a} vs expression {c}")));
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzFailure {
    pub case: usize,
    /// Reproduces the failure with `eval` against `instance`.
    pub expr: String,
    pub detail: String,
    pub instance: InstanceJson,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn fails(e: &Expr, s: &Sample, mutant: Option<Mutant>) -> bool {
    !matches!(disagreement(e, s, mutant), Ok(None))
}

/// Greedy shrinking over the expression first, then the sample.
fn minimize(e: &Expr, s: &Sample, mutant: Option<Mutant>, budget: usize) -> (Expr, Sample) {
    let (mut e, mut s) = (e.clone(), s.clone());
    let mut spent = 0;
    'outer: while spent < budget {
        for c in e.shrink() {
            spent += 1;
            if fails(&c, &s, mutant) {
                e = c;
                continue 'outer;
            }
        }
        for c in s.shrink() {
            spent += 1;
            if spent >= budget {
                break 'outer;
            }
            if fails(&e, &c, mutant) {
                s = c;
                continue 'outer;
            }
        }
        break;
    }
    (e, s)
}

fn run_case(cfg: &Config, case: usize) -> Option<FuzzFailure> {
    let mut rng = case_rng(cfg.seed, "fuzz", case);
    let n = rng.gen_range(1..=cfg.atoms_max.max(1));
    let carriers = random_carriers(&mut rng, n, cfg.carrier_max);
    let s = Sample {
        atoms: n,
        subsets: (0..LEAVES)
            .map(|_| random_slices(&mut rng, &carriers, 0.25))
            .collect(),
        carriers,
        ..Sample::default()
    };
    let e = random_expr(&mut rng, DEPTH);
    if !fails(&e, &s, cfg.mutant) {
        return None;
    }
    let (e, s) = minimize(&e, &s, cfg.mutant, cfg.shrink_budget);
    let detail = match disagreement(&e, &s, cfg.mutant) {
        Ok(d) => d.unwrap_or_default(),
        Err(err) => err.to_string(),
    };
    Some(FuzzFailure {
        case,
        expr: e.to_sexp(&s).to_string(),
        detail,
        instance: instance_of(&s),
    })
}

pub fn run_fuzz(cfg: &Config) -> FuzzReport {
    let cases = cfg.cases.unwrap_or(DEFAULT_CASES);
    let failures: Vec<Option<FuzzFailure>> = (0..cases)
        .into_par_iter()
        .map(|k| run_case(cfg, k))
        .collect();
    FuzzReport {
        seed: cfg.seed,
        cases,
        failures: failures.into_iter().flatten().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn routes_agree() {
        let cfg = Config {
            seed: 5,
            cases: Some(60),
            ..Config::default()
        };
        let r = run_fuzz(&cfg);
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn mutant_failure_reproduces_from_the_report() {
        let cfg = Config {
            seed: 2,
            cases: Some(60),
            mutant: Some(Mutant::ComplementNoSupportFix),
            ..Config::default()
        };
        let r = run_fuzz(&cfg);
        let f = r.failures.first().expect("the mutant is caught");
        assert!(f.expr.starts_with("(compl"), "{}", f.expr);
        let inst = Instance::load(&f.instance).unwrap();
        let out = super::super::dsl::eval_source(&inst, &f.expr, 0).unwrap();
        assert_eq!(out[0]["type"], "subset");
    }
}
