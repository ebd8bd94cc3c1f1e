//! A small s-expression language over the named objects of an instance.
//!
//! ```text
//! (inter Y1 Y2)              ; conditional intersection
//! (compare x y)              ; trichotomy partition of two reals
//! (define U (union Y1 Y2))   ; binds U for later expressions
//! (restrict U (cond a))      ; U restricted to the condition {a}
//! ```
//!
//! Numbers such as `3` or `-1/2` are constant reals. `;` starts a comment.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::Value as Json;

use super::json::{to_json, CompactnessReport, Instance, Obj};
use crate::boolalg::{Algebra, Condition};
use crate::condlin::{hb_extend, lp_solve, polar, separate, PolyhedralSublinear};
use crate::condmap::{cond_card, CondOrder};
use crate::condnum::{cond_inf, cond_sup, CondReal, CondRealVec};
use crate::condset::{cond_complement, cond_intersection, cond_union, stable_hull, subset_leq};
use crate::condtop::{is_compact, Compactness};
use crate::error::{Error, Result};
use crate::parse_rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom {
        text: String,
        line: usize,
        column: usize,
    },
    List {
        items: Vec<Sexp>,
        line: usize,
        column: usize,
    },
}

impl Sexp {
    fn pos(&self) -> (usize, usize) {
        match self {
            Sexp::Atom { line, column, .. } | Sexp::List { line, column, .. } => (*line, *column),
        }
    }

    pub fn atom(text: &str) -> Sexp {
        Sexp::Atom {
            text: text.to_string(),
            line: 0,
            column: 0,
        }
    }

    pub fn list(items: Vec<Sexp>) -> Sexp {
        Sexp::List {
            items,
            line: 0,
            column: 0,
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom { text, .. } => write!(f, "{text}"),
            Sexp::List { items, .. } => {
                write!(f, "(")?;
                for (k, it) in items.iter().enumerate() {
                    if k > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{it}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses every top-level expression of `src`. Lines and columns count from 1.
pub fn parse(src: &str) -> Result<Vec<Sexp>> {
    let mut stack: Vec<(Vec<Sexp>, usize, usize)> = Vec::new();
    let mut top = Vec::new();
    let mut tok = String::new();
    let mut tok_pos = (0, 0);
    let (mut line, mut column) = (1, 0);
    let mut comment = false;

    fn flush(
        tok: &mut String,
        pos: (usize, usize),
        stack: &mut [(Vec<Sexp>, usize, usize)],
        top: &mut Vec<Sexp>,
    ) {
        if tok.is_empty() {
            return;
        }
        let a = Sexp::Atom {
            text: std::mem::take(tok),
            line: pos.0,
            column: pos.1,
        };
        match stack.last_mut() {
            Some((items, _, _)) => items.push(a),
            None => top.push(a),
        }
    }

    for ch in src.chars() {
        if ch == '\n' {
            flush(&mut tok, tok_pos, &mut stack, &mut top);
            line += 1;
            column = 0;
            comment = false;
            continue;
        }
        column += 1;
        if comment {
            continue;
        }
        match ch {
            ';' => {
                flush(&mut tok, tok_pos, &mut stack, &mut top);
                comment = true;
            }
            '(' => {
                flush(&mut tok, tok_pos, &mut stack, &mut top);
                stack.push((Vec::new(), line, column));
            }
            ')' => {
                flush(&mut tok, tok_pos, &mut stack, &mut top);
                let (items, l, c) = stack
                    .pop()
                    .ok_or_else(|| parse_error(line, column, "unexpected `)`"))?;
                let e = Sexp::List {
                    items,
                    line: l,
                    column: c,
                };
                match stack.last_mut() {
                    Some((items, _, _)) => items.push(e),
                    None => top.push(e),
                }
            }
            c if c.is_whitespace() => flush(&mut tok, tok_pos, &mut stack, &mut top),
            c => {
                if tok.is_empty() {
                    tok_pos = (line, column);
                }
                tok.push(c);
            }
        }
    }
    flush(&mut tok, tok_pos, &mut stack, &mut top);
    if let Some((_, l, c)) = stack.pop() {
        return Err(parse_error(l, c, "unclosed `(`"));
    }
    Ok(top)
}

fn eval_error(e: &Sexp, message: impl fmt::Display) -> Error {
    let (l, c) = e.pos();
    Error::Eval(format!("{l}:{c}: {message}"))
}

/// Evaluation state: the instance plus `define`d names.
pub struct Evaluator<'a> {
    inst: &'a Instance,
    defs: BTreeMap<String, Obj>,
    digits: u32,
}

impl<'a> Evaluator<'a> {
    pub fn new(inst: &'a Instance, digits: u32) -> Self {
        Evaluator {
            inst,
            defs: BTreeMap::new(),
            digits,
        }
    }

    fn alg(&self) -> &Algebra {
        &self.inst.algebra
    }

    /// Evaluates a top-level expression; `define` yields `None`.
    pub fn run(&mut self, e: &Sexp) -> Result<Option<Obj>> {
        if let Sexp::List { items, .. } = e {
            if matches!(items.first(), Some(Sexp::Atom { text, .. }) if text == "define") {
                let [_, Sexp::Atom { text: name, .. }, body] = items.as_slice() else {
                    return Err(eval_error(e, "expected (define name expr)"));
                };
                let v = self.eval(body)?;
                self.defs.insert(name.clone(), v);
                return Ok(None);
            }
        }
        self.eval(e).map(Some)
    }

    pub fn eval(&self, e: &Sexp) -> Result<Obj> {
        match e {
            Sexp::Atom { text, .. } => self.lookup(e, text),
            Sexp::List { items, .. } => {
                let Some((Sexp::Atom { text: op, .. }, args)) = items.split_first() else {
                    return Err(eval_error(e, "expected an operator"));
                };
                self.apply(e, op, args).map_err(|err| match err {
                    Error::Eval(_) | Error::Parse { .. } => err,
                    other => eval_error(e, format!("`{op}`: {other}")),
                })
            }
        }
    }

    fn lookup(&self, e: &Sexp, name: &str) -> Result<Obj> {
        if let Some(v) = self.defs.get(name) {
            return Ok(v.clone());
        }
        if let Ok(v) = self.inst.get(name) {
            return Ok(v.clone());
        }
        if name.starts_with(|c: char| c.is_ascii_digit() || c == '-') {
            if let Ok(q) = parse_rational(name) {
                return Ok(Obj::Real(CondReal::constant(self.alg(), q)));
            }
        }
        Err(eval_error(e, format!("unknown name `{name}`")))
    }

    fn args(&self, args: &[Sexp]) -> Result<Vec<Obj>> {
        args.iter().map(|a| self.eval(a)).collect()
    }

    fn apply(&self, e: &Sexp, op: &str, args: &[Sexp]) -> Result<Obj> {
        let arity = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(eval_error(
                    e,
                    format!("`{op}` takes {n} arguments, got {}", args.len()),
                ))
            }
        };
        let wrong = |o: &Obj| eval_error(e, format!("`{op}` does not accept a {}", o.kind()));
        match op {
            "cond" => {
                let names = args
                    .iter()
                    .map(|a| match a {
                        Sexp::Atom { text, .. } => Ok(text.clone()),
                        _ => Err(eval_error(a, "expected an atom name")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Obj::Condition(self.alg().condition_named(&names)?))
            }
            "list" => Ok(Obj::List(self.args(args)?)),
            "union" | "inter" => {
                let vs = self.args(args)?;
                let ys = vs
                    .iter()
                    .map(|v| match v {
                        Obj::Subset(y) => Ok(y.clone()),
                        o => Err(wrong(o)),
                    })
                    .collect::<Result<Vec<_>>>()?;
                let Some(first) = ys.first() else {
                    return Err(eval_error(e, format!("`{op}` needs at least one subset")));
                };
                let set = first.set().clone();
                Ok(Obj::Subset(if op == "union" {
                    cond_union(&set, &ys)?
                } else {
                    cond_intersection(&set, &ys)?
                }))
            }
            "compl" => {
                arity(1)?;
                match self.eval(&args[0])? {
                    Obj::Subset(y) => Ok(Obj::Subset(cond_complement(&y))),
                    Obj::Condition(c) => Ok(Obj::Condition(c.complement())),
                    o => Err(wrong(&o)),
                }
            }
            "leq" => {
                arity(2)?;
                match (self.eval(&args[0])?, self.eval(&args[1])?) {
                    (Obj::Subset(a), Obj::Subset(b)) => Ok(Obj::Bool(subset_leq(&a, &b)?)),
                    (Obj::Real(a), Obj::Real(b)) => Ok(Obj::Bool(a.le(&b)?)),
                    (Obj::Condition(a), Obj::Condition(b)) => Ok(Obj::Bool(a.leq(&b)?)),
                    (o, _) => Err(wrong(&o)),
                }
            }
            "restrict" => {
                arity(2)?;
                let Obj::Condition(c) = self.eval(&args[1])? else {
                    return Err(eval_error(&args[1], "expected a condition"));
                };
                match self.eval(&args[0])? {
                    Obj::Subset(y) => Ok(Obj::Subset(y.restrict(&c))),
                    Obj::Element(x) => Ok(Obj::Element(x.restrict(&c))),
                    Obj::Real(r) => Ok(Obj::Real(r.restrict(&c))),
                    Obj::Vector(v) => Ok(Obj::Vector(CondRealVec(v.0.restrict(&c)))),
                    o => Err(wrong(&o)),
                }
            }
            "image" | "preimage" => {
                arity(2)?;
                match (self.eval(&args[0])?, self.eval(&args[1])?) {
                    (Obj::Function(f), Obj::Subset(y)) => Ok(Obj::Subset(if op == "image" {
                        f.image(&y)?
                    } else {
                        f.preimage(&y)?
                    })),
                    (o, _) => Err(wrong(&o)),
                }
            }
            "apply" => {
                arity(2)?;
                match (self.eval(&args[0])?, self.eval(&args[1])?) {
                    (Obj::Function(f), Obj::Element(x)) => Ok(Obj::Element(f.apply(&x)?)),
                    (Obj::Functional(f), Obj::Vector(x)) => Ok(Obj::Real(f.eval(&x)?)),
                    (o, _) => Err(wrong(&o)),
                }
            }
            "interior" | "closure" => {
                arity(2)?;
                match (self.eval(&args[0])?, self.eval(&args[1])?) {
                    (Obj::Topology(t), Obj::Subset(y)) => Ok(Obj::Subset(if op == "interior" {
                        t.interior(&y)?
                    } else {
                        t.closure(&y)?
                    })),
                    (o, _) => Err(wrong(&o)),
                }
            }
            "compare" => {
                arity(2)?;
                match (self.eval(&args[0])?, self.eval(&args[1])?) {
                    (Obj::Real(a), Obj::Real(b)) => Ok(Obj::Trichotomy(a.compare(&b)?)),
                    (Obj::Element(a), Obj::Element(b)) => Ok(Obj::Trichotomy(
                        CondOrder::natural(a.set())?.compare_total(&a, &b)?,
                    )),
                    (o, _) => Err(wrong(&o)),
                }
            }
            "add" | "sub" | "mul" => {
                arity(2)?;
                match (self.eval(&args[0])?, self.eval(&args[1])?) {
                    (Obj::Real(a), Obj::Real(b)) => Ok(Obj::Real(match op {
                        "add" => a.add(&b)?,
                        "sub" => a.sub(&b)?,
                        _ => a.mul(&b)?,
                    })),
                    (Obj::Vector(a), Obj::Vector(b)) if op != "mul" => {
                        Ok(Obj::Vector(if op == "add" {
                            a.add(&b)?
                        } else {
                            a.sub(&b)?
                        }))
                    }
                    (Obj::Real(l), Obj::Vector(v)) if op == "mul" => Ok(Obj::Vector(v.scale(&l)?)),
                    (o, _) => Err(wrong(&o)),
                }
            }
            "neg" | "inv" | "abs" => {
                arity(1)?;
                match self.eval(&args[0])? {
                    Obj::Real(a) => Ok(Obj::Real(match op {
                        "neg" => a.neg(),
                        "inv" => a.inv()?,
                        _ => a.abs(),
                    })),
                    o => Err(wrong(&o)),
                }
            }
            "sup" | "inf" => {
                let vs = self.args(args)?;
                if let [Obj::Subset(y)] = vs.as_slice() {
                    let ord = CondOrder::natural(y.set())?;
                    return Ok(Obj::Element(if op == "sup" {
                        ord.cond_sup(y)?
                    } else {
                        ord.cond_inf(y)?
                    }));
                }
                let rs = vs
                    .iter()
                    .map(|v| match v {
                        Obj::Real(r) => Ok(r.clone()),
                        o => Err(wrong(o)),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Obj::Real(if op == "sup" {
                    cond_sup(&rs)?
                } else {
                    cond_inf(&rs)?
                }))
            }
            "card" => {
                arity(1)?;
                match self.eval(&args[0])? {
                    Obj::Subset(y) => Ok(Obj::Nat(cond_card(&y)?)),
                    o => Err(wrong(&o)),
                }
            }
            "dist" => {
                arity(2)?;
                match (self.eval(&args[0])?, self.eval(&args[1])?) {
                    (Obj::Vector(a), Obj::Vector(b)) => {
                        Ok(Obj::Decimals(a.distance_decimal(&b, self.digits)?))
                    }
                    (o, _) => Err(wrong(&o)),
                }
            }
            "polar" => {
                if args.is_empty() || args.len() > 2 {
                    return Err(eval_error(e, "expected (polar C) or (polar C one-sided)"));
                }
                let one_sided = match args.get(1) {
                    None => false,
                    Some(Sexp::Atom { text, .. }) if text == "one-sided" => true,
                    Some(a) => return Err(eval_error(a, "expected `one-sided`")),
                };
                match self.eval(&args[0])? {
                    Obj::Polytope(c) => Ok(Obj::Polar(polar(&c, one_sided))),
                    o => Err(wrong(&o)),
                }
            }
            "hull" => {
                arity(1)?;
                match self.eval(&args[0])? {
                    Obj::Polytope(c) => Ok(Obj::Polytope(c.conv_hull())),
                    Obj::List(xs) => {
                        let es = xs
                            .iter()
                            .map(|x| match x {
                                Obj::Element(x) => Ok(x.clone()),
                                o => Err(wrong(o)),
                            })
                            .collect::<Result<Vec<_>>>()?;
                        let b = es
                            .first()
                            .map(|x| x.support())
                            .unwrap_or_else(|| self.alg().zero());
                        Ok(Obj::Subset(stable_hull(&b, &es)?))
                    }
                    o => Err(wrong(&o)),
                }
            }
            "separate" => {
                arity(2)?;
                match (self.eval(&args[0])?, self.eval(&args[1])?) {
                    (Obj::Polytope(a), Obj::Polytope(b)) => {
                        Ok(Obj::Separation(separate(&a, &b, true)?))
                    }
                    (o, _) => Err(wrong(&o)),
                }
            }
            "extend" => {
                arity(2)?;
                let (Obj::List(bs), Obj::List(vs)) = (self.eval(&args[0])?, self.eval(&args[1])?)
                else {
                    return Err(eval_error(e, "expected (extend (list v ...) (list r ...))"));
                };
                let basis = bs
                    .iter()
                    .map(|b| match b {
                        Obj::Vector(v) => Ok(v.clone()),
                        o => Err(wrong(o)),
                    })
                    .collect::<Result<Vec<_>>>()?;
                let values = vs
                    .iter()
                    .map(|v| match v {
                        Obj::Real(r) => Ok(r.clone()),
                        o => Err(wrong(o)),
                    })
                    .collect::<Result<Vec<_>>>()?;
                let Some(first) = basis.first() else {
                    return Err(eval_error(
                        e,
                        "the basis fixes the dimension and cannot be empty",
                    ));
                };
                let k = PolyhedralSublinear::linf(&first.dims())?;
                Ok(Obj::Functional(hb_extend(&basis, &values, &k)?))
            }
            "lp" => {
                arity(1)?;
                match self.eval(&args[0])? {
                    Obj::Lp(p) => Ok(Obj::LpOutcome(lp_solve(&p)?)),
                    o => Err(wrong(&o)),
                }
            }
            "limit" => {
                arity(2)?;
                match (self.eval(&args[0])?, self.eval(&args[1])?) {
                    (Obj::Topology(t), Obj::Filter(f)) => Ok(Obj::Subset(t.limit_set(&f)?)),
                    (o, _) => Err(wrong(&o)),
                }
            }
            "converges" => {
                arity(3)?;
                match (
                    self.eval(&args[0])?,
                    self.eval(&args[1])?,
                    self.eval(&args[2])?,
                ) {
                    (Obj::Topology(t), Obj::Filter(f), Obj::Element(x)) => {
                        Ok(Obj::Bool(t.converges(&f, &x)))
                    }
                    (o, _, _) => Err(wrong(&o)),
                }
            }
            "compact" => {
                arity(1)?;
                match self.eval(&args[0])? {
                    Obj::Topology(t) => Ok(Obj::Compactness(CompactnessReport {
                        cover: is_compact(&t, Compactness::Cover)?,
                        fip: is_compact(&t, Compactness::Fip)?,
                        ultrafilter: is_compact(&t, Compactness::Ultrafilter)?,
                    })),
                    o => Err(wrong(&o)),
                }
            }
            _ => Err(eval_error(e, format!("unknown operator `{op}`"))),
        }
    }
}

/// Parses and evaluates `src` against `inst`, one JSON value per printed
/// expression.
pub fn eval_source(inst: &Instance, src: &str, digits: u32) -> Result<Vec<Json>> {
    let mut ev = Evaluator::new(inst, digits);
    let mut out = Vec::new();
    for e in parse(src)? {
        if let Some(v) = ev.run(&e)? {
            let mut j = to_json(&v);
            j["expr"] = Json::String(e.to_string());
            out.push(j);
        }
    }
    Ok(out)
}

/// `(cond a b ...)` naming the atoms of `c`.
pub fn condition_literal(c: &Condition) -> Sexp {
    let mut items = vec![Sexp::atom("cond")];
    items.extend(c.atom_names().iter().map(|n| Sexp::atom(n)));
    Sexp::list(items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    const INSTANCE: &str = r#"{
        "algebra": {"atoms": ["a", "b"]},
        "sets": {"X": {"a": [1, 2, 3], "b": [1, 2]}},
        "subsets": {
            "Y1": {"set": "X", "slices": {"a": [1, 2], "b": [1]}},
            "Y2": {"set": "X", "slices": {"a": [2, 3]}}
        },
        "reals": {"x": {"a": "1/2", "b": 2}, "y": {"a": 1, "b": 2}, "z": {"a": 0, "b": 1}},
        "polytopes": {
            "C1": {"a": [["0"], ["1"]], "b": [["0", "0"], ["1", "0"]]},
            "C2": {"a": [["2"], ["3"]], "b": [["0", "2"], ["1", "3"]]}
        }
    }"#;

    fn run(src: &str) -> Result<Vec<Json>> {
        eval_source(&Instance::from_json(INSTANCE).unwrap(), src, 6)
    }

    #[test]
    fn intersection_lives_where_both_meet() {
        let out = run("(inter Y1 Y2)").unwrap();
        assert_eq!(out[0]["type"], json!("subset"));
        assert_eq!(out[0]["lives_on"], json!(["a"]));
        assert_eq!(out[0]["slices"], json!({"a": [2]}));
    }

    #[test]
    fn compare_gives_a_partition() {
        let out = run("(compare x y)").unwrap();
        assert_eq!(out[0]["less"], json!(["a"]));
        assert_eq!(out[0]["equal"], json!(["b"]));
        assert_eq!(out[0]["greater"], json!([]));
    }

    #[test]
    fn define_and_restrict() {
        let out = run("(define U (union Y1 Y2))\n(restrict U (cond b))\n(compl Y2)").unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0]["slices"], json!({"b": [1]}));
        assert_eq!(out[1]["slices"], json!({"a": [1], "b": [1, 2]}));
    }

    #[test]
    fn inverse_of_zero_names_the_condition() {
        let err = run("(inv z)").unwrap_err().to_string();
        assert!(err.contains("{a}"), "{err}");
    }

    #[test]
    fn geometry_operators() {
        let out = run("(separate C1 C2)\n(polar C1)\n(add 1/2 x)").unwrap();
        assert_eq!(out[0]["type"], json!("separation"));
        assert_eq!(out[1]["type"], json!("polar"));
        assert_eq!(out[2]["values"], json!({"a": "1", "b": "5/2"}));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse("(inter Y1\n  Y2))") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 6)),
            other => panic!("{other:?}"),
        }
        match parse("\n  (union Y1") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_names_are_evaluation_errors() {
        assert!(matches!(run("(inter Y1 Q)"), Err(Error::Eval(_))));
        assert!(matches!(run("(frob Y1)"), Err(Error::Eval(_))));
    }
}
