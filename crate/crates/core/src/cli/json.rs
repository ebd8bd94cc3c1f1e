//! JSON instances and the JSON form of every value the tool prints.
//!
//! Per-atom data is keyed by atom name. An atom missing from a subset,
//! element, real or vector means the object does not live on that atom.
//! Rationals are written as strings such as `"-3/4"`; integers are accepted
//! as plain numbers too.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use crate::boolalg::{Algebra, AlgebraDescriptor, Condition, Trichotomy};
use crate::condfilter::{CondFilter, CondFilterBase};
use crate::condlin::{
    CondLinFunctional, LpOutcome, LpProblem, Polar, Sense, Separation, VPolytope,
};
use crate::condmap::CondFunction;
use crate::condnum::{Cond, CondNat, CondReal, CondRealVec};
use crate::condset::{CondElement, CondSet, CondSubset, PointSet, Value};
use crate::condtop::CondTopology;
use crate::error::{Error, Result};
use crate::{parse_rational, Rational};

/// A rational written as a JSON string or integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rat {
    Int(i64),
    Str(String),
}

impl Rat {
    pub fn value(&self) -> Result<Rational> {
        match self {
            Rat::Int(n) => Ok(Rational::from_integer((*n).into())),
            Rat::Str(s) => parse_rational(s),
        }
    }
}

impl From<&Rational> for Rat {
    fn from(q: &Rational) -> Self {
        Rat::Str(q.to_string())
    }
}

type PerAtom<T> = BTreeMap<String, T>;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubsetJson {
    pub set: String,
    pub slices: PerAtom<Vec<Value>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub set: String,
    pub values: PerAtom<Value>,
}

/// `map` lists `[x, f(x)]` pairs per atom, one for every domain value.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionJson {
    pub dom: String,
    pub cod: String,
    pub map: PerAtom<Vec<(Value, Value)>>,
}

/// The topology generated by a per-atom subbase.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyJson {
    pub set: String,
    #[serde(default)]
    pub subbase: PerAtom<Vec<Vec<Value>>>,
}

/// The filter generated by named subsets living on 1.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterJson {
    pub set: String,
    pub base: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintJson {
    pub coeffs: Vec<Rat>,
    /// `"<="`, `">="` or `"="`.
    pub sense: String,
    pub rhs: Rat,
}

/// Variables are non-negative unless listed in `free`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LpJson {
    #[serde(default)]
    pub maximize: bool,
    pub objective: Vec<Rat>,
    #[serde(default)]
    pub constraints: Vec<ConstraintJson>,
    #[serde(default)]
    pub free: Vec<usize>,
}

impl LpJson {
    pub fn problem(&self) -> Result<LpProblem> {
        let rats = |v: &[Rat]| v.iter().map(Rat::value).collect::<Result<Vec<_>>>();
        let mut p = LpProblem::new(self.maximize, rats(&self.objective)?);
        for c in &self.constraints {
            let sense = match c.sense.as_str() {
                "<=" => Sense::Le,
                ">=" => Sense::Ge,
                "=" | "==" => Sense::Eq,
                s => return Err(Error::MalformedProblem(format!("unknown sense `{s}`"))),
            };
            p.push(rats(&c.coeffs)?, sense, c.rhs.value()?);
        }
        let mut free = vec![false; p.vars()];
        for &j in &self.free {
            *free.get_mut(j).ok_or_else(|| {
                Error::MalformedProblem(format!("free variable {j} out of range"))
            })? = true;
        }
        Ok(p.with_free(free))
    }
}

/// The file form of an [`Instance`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceJson {
    pub algebra: AlgebraDescriptor,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub conditions: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sets: BTreeMap<String, PerAtom<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subsets: BTreeMap<String, SubsetJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub elements: BTreeMap<String, ElementJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functions: BTreeMap<String, FunctionJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub topologies: BTreeMap<String, TopologyJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub filters: BTreeMap<String, FilterJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub reals: BTreeMap<String, PerAtom<Rat>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vectors: BTreeMap<String, PerAtom<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functionals: BTreeMap<String, PerAtom<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub polytopes: BTreeMap<String, PerAtom<Vec<Vec<Rat>>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lps: BTreeMap<String, LpJson>,
}

/// Which route decided each compactness verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactnessReport {
    pub cover: bool,
    pub fip: bool,
    pub ultrafilter: bool,
}

/// Every kind of object an instance holds or an expression produces.
#[derive(Clone, Debug)]
pub enum Obj {
    Bool(bool),
    Condition(Condition),
    Set(CondSet),
    Subset(CondSubset),
    Element(CondElement),
    Function(CondFunction),
    Topology(CondTopology),
    Filter(CondFilter),
    Real(CondReal),
    Nat(CondNat),
    Vector(CondRealVec),
    Functional(CondLinFunctional),
    Polytope(VPolytope),
    Polar(Polar),
    Separation(Separation),
    Trichotomy(Trichotomy),
    Lp(LpProblem),
    LpOutcome(LpOutcome),
    Compactness(CompactnessReport),
    Decimals(Cond<String>),
    List(Vec<Obj>),
}

impl Obj {
    pub fn kind(&self) -> &'static str {
        match self {
            Obj::Bool(_) => "bool",
            Obj::Condition(_) => "condition",
            Obj::Set(_) => "set",
            Obj::Subset(_) => "subset",
            Obj::Element(_) => "element",
            Obj::Function(_) => "function",
            Obj::Topology(_) => "topology",
            Obj::Filter(_) => "filter",
            Obj::Real(_) => "real",
            Obj::Nat(_) => "nat",
            Obj::Vector(_) => "vector",
            Obj::Functional(_) => "functional",
            Obj::Polytope(_) => "polytope",
            Obj::Polar(_) => "polar",
            Obj::Separation(_) => "separation",
            Obj::Trichotomy(_) => "partition",
            Obj::Lp(_) => "lp",
            Obj::LpOutcome(_) => "lp_outcome",
            Obj::Compactness(_) => "compactness",
            Obj::Decimals(_) => "decimals",
            Obj::List(_) => "list",
        }
    }
}

/// A loaded instance: one algebra and named, validated objects.
#[derive(Clone, Debug)]
pub struct Instance {
    pub algebra: Algebra,
    pub objects: BTreeMap<String, Obj>,
}

fn atom_index(alg: &Algebra, name: &str) -> Result<usize> {
    alg.atom_index(name)
        .ok_or_else(|| Error::UnknownAtom(name.to_string()))
}

/// Per-atom optional data from a map keyed by atom name.
fn per_atom<T, U>(
    alg: &Algebra,
    m: &PerAtom<T>,
    mut f: impl FnMut(usize, &T) -> Result<U>,
) -> Result<Vec<Option<U>>> {
    let mut out: Vec<Option<U>> = (0..alg.len()).map(|_| None).collect();
    for (name, v) in m {
        let i = atom_index(alg, name)?;
        out[i] = Some(f(i, v)?);
    }
    Ok(out)
}

fn total<T>(alg: &Algebra, what: &str, v: Vec<Option<T>>) -> Result<Vec<T>> {
    v.into_iter()
        .enumerate()
        .map(|(i, x)| {
            x.ok_or_else(|| {
                Error::Invalid(format!(
                    "{what} has no entry for atom `{}`",
                    alg.atom_name(i)
                ))
            })
        })
        .collect()
}

fn rats(v: &[Rat]) -> Result<Vec<Rational>> {
    v.iter().map(Rat::value).collect()
}

fn point_set(set: &CondSet, i: usize, values: &[Value]) -> Result<PointSet> {
    values
        .iter()
        .map(|v| {
            set.index_of(i, v).ok_or_else(|| {
                Error::CarrierMismatch(format!(
                    "{v} is not in the carrier at `{}`",
                    set.algebra().atom_name(i)
                ))
            })
        })
        .collect::<Result<Vec<u32>>>()
        .map(PointSet::from_indices)
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Instance> {
        let file: InstanceJson = serde_json::from_str(text)?;
        Self::load(&file)
    }

    pub fn load(file: &InstanceJson) -> Result<Instance> {
        let alg = Algebra::from_descriptor(&file.algebra)?;
        let mut inst = Instance {
            algebra: alg.clone(),
            objects: BTreeMap::new(),
        };
        for (name, atoms) in &file.conditions {
            inst.insert(name, Obj::Condition(alg.condition_named(atoms)?))?;
        }
        for (name, carriers) in &file.sets {
            let cs = total(&alg, name, per_atom(&alg, carriers, |_, v| Ok(v.clone()))?)?;
            inst.insert(name, Obj::Set(CondSet::from_carriers(&alg, cs)?))?;
        }
        for (name, s) in &file.subsets {
            let set = inst.set(&s.set)?;
            let slices = per_atom(&alg, &s.slices, |i, v| point_set(&set, i, v))?;
            let slices = slices
                .into_iter()
                .map(|s| s.filter(|p| !p.is_empty()))
                .collect();
            inst.insert(name, Obj::Subset(CondSubset::new(&set, slices)?))?;
        }
        for (name, e) in &file.elements {
            let set = inst.set(&e.set)?;
            let values = per_atom(&alg, &e.values, |_, v| Ok(v.clone()))?;
            inst.insert(name, Obj::Element(CondElement::from_values(&set, &values)?))?;
        }
        for (name, f) in &file.functions {
            let (dom, cod) = (inst.set(&f.dom)?, inst.set(&f.cod)?);
            let rows = per_atom(&alg, &f.map, |i, pairs| {
                let mut row: Vec<Option<u32>> = vec![None; dom.carrier_len(i)];
                for (x, y) in pairs {
                    let p = point_set(&dom, i, std::slice::from_ref(x))?
                        .min()
                        .expect("one point");
                    let q = point_set(&cod, i, std::slice::from_ref(y))?
                        .min()
                        .expect("one point");
                    if row[p as usize].replace(q).is_some() {
                        return Err(Error::Invalid(format!("`{name}` maps {x} twice")));
                    }
                }
                row.into_iter()
                    .map(|v| {
                        v.ok_or_else(|| {
                            Error::Invalid(format!(
                                "`{name}` is not total at `{}`",
                                alg.atom_name(i)
                            ))
                        })
                    })
                    .collect()
            })?;
            let table = total(&alg, name, rows)?;
            inst.insert(name, Obj::Function(CondFunction::new(&dom, &cod, table)?))?;
        }
        for (name, t) in &file.topologies {
            let set = inst.set(&t.set)?;
            let sb = per_atom(&alg, &t.subbase, |i, opens| {
                opens
                    .iter()
                    .map(|o| point_set(&set, i, o))
                    .collect::<Result<Vec<_>>>()
            })?;
            let sb: Vec<Vec<PointSet>> = sb.into_iter().map(Option::unwrap_or_default).collect();
            inst.insert(name, Obj::Topology(CondTopology::generated(&set, &sb)?))?;
        }
        for (name, f) in &file.filters {
            let set = inst.set(&f.set)?;
            let gens = f
                .base
                .iter()
                .map(|g| match inst.get(g)? {
                    Obj::Subset(y) => Ok(y.clone()),
                    o => Err(Error::Invalid(format!(
                        "`{g}` is a {}, not a subset",
                        o.kind()
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            let base = CondFilterBase::new(&set, gens)?;
            inst.insert(name, Obj::Filter(CondFilter::generate(&base)))?;
        }
        for (name, r) in &file.reals {
            let v = per_atom(&alg, r, |_, q| q.value())?;
            inst.insert(name, Obj::Real(CondReal::new(&alg, v)?))?;
        }
        for (name, r) in &file.vectors {
            let v = per_atom(&alg, r, |_, q| rats(q))?;
            inst.insert(name, Obj::Vector(CondRealVec(Cond::new(&alg, v)?)))?;
        }
        for (name, r) in &file.functionals {
            let v = total(&alg, name, per_atom(&alg, r, |_, q| rats(q))?)?;
            inst.insert(name, Obj::Functional(CondLinFunctional::new(&alg, v)?))?;
        }
        for (name, p) in &file.polytopes {
            let v = per_atom(&alg, p, |_, gens| {
                gens.iter().map(|g| rats(g)).collect::<Result<Vec<_>>>()
            })?;
            inst.insert(
                name,
                Obj::Polytope(VPolytope::new(&alg, total(&alg, name, v)?)?),
            )?;
        }
        for (name, lp) in &file.lps {
            inst.insert(name, Obj::Lp(lp.problem()?))?;
        }
        Ok(inst)
    }

    fn insert(&mut self, name: &str, o: Obj) -> Result<()> {
        if self.objects.insert(name.to_string(), o).is_some() {
            return Err(Error::Invalid(format!("`{name}` is defined twice")));
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&Obj> {
        self.objects
            .get(name)
            .ok_or_else(|| Error::Invalid(format!("unknown object `{name}`")))
    }

    fn set(&self, name: &str) -> Result<CondSet> {
        match self.get(name)? {
            Obj::Set(s) => Ok(s.clone()),
            o => Err(Error::Invalid(format!(
                "`{name}` is a {}, not a set",
                o.kind()
            ))),
        }
    }
}

fn atoms_json(c: &Condition) -> Json {
    json!(c.atom_names())
}

fn rat_json(q: &Rational) -> Json {
    Json::String(q.to_string())
}

fn cond_json<T: Clone>(c: &Cond<T>, f: impl Fn(&T) -> Json) -> Json {
    let alg = c.algebra();
    let mut m = serde_json::Map::new();
    for i in 0..alg.len() {
        if let Some(v) = c.get(i) {
            m.insert(alg.atom_name(i).to_string(), f(v));
        }
    }
    Json::Object(m)
}

fn subset_slices(y: &CondSubset) -> Json {
    let alg = y.set().algebra();
    let mut m = serde_json::Map::new();
    for i in 0..alg.len() {
        if y.slice(i).is_some() {
            m.insert(alg.atom_name(i).to_string(), json!(y.values(i)));
        }
    }
    Json::Object(m)
}

fn vectors_json(vs: &[Vec<Rational>]) -> Json {
    Json::Array(
        vs.iter()
            .map(|v| Json::Array(v.iter().map(rat_json).collect()))
            .collect(),
    )
}

fn lp_json(out: &LpOutcome) -> Json {
    let vec = |v: &[Rational]| Json::Array(v.iter().map(rat_json).collect());
    match out {
        LpOutcome::Optimal {
            x, value, duals, ..
        } => json!({
            "status": "optimal",
            "value": rat_json(value),
            "x": vec(x),
            "duals": vec(duals),
        }),
        LpOutcome::Infeasible { farkas } => json!({"status": "infeasible", "farkas": vec(farkas)}),
        LpOutcome::Unbounded { x, ray } => {
            json!({"status": "unbounded", "x": vec(x), "ray": vec(ray)})
        }
    }
}

/// The printed form of a value: a `type` tag, `lives_on` where the value
/// has a support, and the data.
pub fn to_json(o: &Obj) -> Json {
    match o {
        Obj::Bool(b) => json!({"type": "bool", "value": b}),
        Obj::Condition(c) => json!({"type": "condition", "atoms": atoms_json(c)}),
        Obj::Set(s) => {
            let alg = s.algebra();
            let m: serde_json::Map<String, Json> = (0..alg.len())
                .map(|i| (alg.atom_name(i).to_string(), json!(s.carrier(i))))
                .collect();
            json!({"type": "set", "carriers": m})
        }
        Obj::Subset(y) => {
            json!({"type": "subset", "lives_on": atoms_json(&y.support()), "slices": subset_slices(y)})
        }
        Obj::Element(x) => {
            let alg = x.set().algebra();
            let m: serde_json::Map<String, Json> = (0..alg.len())
                .filter_map(|i| x.value(i).map(|v| (alg.atom_name(i).to_string(), json!(v))))
                .collect();
            json!({"type": "element", "lives_on": atoms_json(&x.support()), "values": m})
        }
        Obj::Function(f) => {
            let alg = f.domain().algebra();
            let m: serde_json::Map<String, Json> = (0..alg.len())
                .map(|i| {
                    let pairs: Vec<Json> = f
                        .table(i)
                        .iter()
                        .enumerate()
                        .map(|(p, &q)| {
                            json!([
                                f.domain().carrier(i)[p],
                                f.codomain().carrier(i)[q as usize]
                            ])
                        })
                        .collect();
                    (alg.atom_name(i).to_string(), Json::Array(pairs))
                })
                .collect();
            json!({"type": "function", "map": m, "injective": f.is_injective(), "surjective": f.is_surjective()})
        }
        Obj::Topology(t) => {
            let opens: Vec<Json> = t.open_sets().iter().map(subset_slices).collect();
            json!({"type": "topology", "open_sets": opens})
        }
        Obj::Filter(f) => {
            let mut j = json!({"type": "filter", "kernel": subset_slices(&f.kernel())});
            if let Ok(ms) = f.members() {
                j["members"] = Json::Array(ms.iter().map(subset_slices).collect());
            }
            j
        }
        Obj::Real(r) => {
            json!({"type": "real", "lives_on": atoms_json(&r.0.support()), "values": cond_json(&r.0, rat_json)})
        }
        Obj::Nat(n) => {
            json!({"type": "nat", "lives_on": atoms_json(&n.support()), "values": cond_json(n, |v| json!(v))})
        }
        Obj::Vector(v) => json!({
            "type": "vector",
            "lives_on": atoms_json(&v.0.support()),
            "values": cond_json(&v.0, |x| Json::Array(x.iter().map(rat_json).collect())),
        }),
        Obj::Functional(f) => json!({
            "type": "functional",
            "coeffs": cond_json(&f.0, |x| Json::Array(x.iter().map(rat_json).collect())),
        }),
        Obj::Polytope(p) => {
            let alg = p.algebra();
            let m: serde_json::Map<String, Json> = (0..alg.len())
                .map(|i| (alg.atom_name(i).to_string(), vectors_json(&p.generators(i))))
                .collect();
            json!({"type": "polytope", "generators": m})
        }
        Obj::Polar(p) => {
            let alg = p.rows.algebra();
            let m: serde_json::Map<String, Json> = (0..alg.len())
                .map(|i| {
                    let rows: Vec<Json> = p
                        .h_description(i)
                        .iter()
                        .map(|(a, b)| json!({"a": a.iter().map(rat_json).collect::<Vec<_>>(), "b": rat_json(b)}))
                        .collect();
                    (alg.atom_name(i).to_string(), Json::Array(rows))
                })
                .collect();
            json!({"type": "polar", "one_sided": p.one_sided, "inequalities": m})
        }
        Obj::Separation(s) => json!({
            "type": "separation",
            "functional": cond_json(&s.f.0, |x| Json::Array(x.iter().map(rat_json).collect())),
            "eps": cond_json(&s.eps.0, rat_json),
        }),
        Obj::Trichotomy(t) => json!({
            "type": "partition",
            "less": atoms_json(&t.less),
            "greater": atoms_json(&t.greater),
            "equal": atoms_json(&t.equal),
        }),
        Obj::Lp(p) => json!({"type": "lp", "vars": p.vars(), "constraints": p.constraints.len()}),
        Obj::LpOutcome(out) => {
            let mut j = lp_json(out);
            j["type"] = json!("lp_outcome");
            j
        }
        Obj::Compactness(c) => json!({
            "type": "compactness",
            "cover": c.cover,
            "fip": c.fip,
            "ultrafilter": c.ultrafilter,
            "compact": c.cover && c.fip && c.ultrafilter,
        }),
        Obj::Decimals(d) => {
            json!({"type": "decimals", "lives_on": atoms_json(&d.support()), "values": cond_json(d, |s| json!(s))})
        }
        Obj::List(items) => {
            json!({"type": "list", "items": items.iter().map(to_json).collect::<Vec<_>>()})
        }
    }
}

/// The JSON form of an LP outcome with its certificate check.
pub fn lp_report(p: &LpProblem, out: &LpOutcome) -> Json {
    let mut j = lp_json(out);
    j["certificate_valid"] = json!(crate::condlin::verify_certificate(p, out));
    j
}

#[cfg(test)]
mod tests {
    use super::*;

    const INSTANCE: &str = r#"{
        "algebra": {"atoms": ["a", "b"]},
        "conditions": {"c": ["a"]},
        "sets": {"X": {"a": [1, 2, 3], "b": [1, 2]}},
        "subsets": {"Y": {"set": "X", "slices": {"a": [1, 2]}}},
        "elements": {"x": {"set": "X", "values": {"a": 3, "b": 1}}},
        "functions": {"f": {"dom": "X", "cod": "X", "map": {"a": [[1, 1], [2, 1], [3, 2]], "b": [[1, 2], [2, 1]]}}},
        "topologies": {"T": {"set": "X", "subbase": {"a": [[1]]}}},
        "reals": {"r": {"a": "1/2", "b": -3}},
        "polytopes": {"C": {"a": [["0"], ["1"]], "b": [["0", "0"]]}}
    }"#;

    #[test]
    fn loads_every_section() {
        let inst = Instance::from_json(INSTANCE).unwrap();
        assert_eq!(inst.objects.len(), 8);
        let Obj::Subset(y) = inst.get("Y").unwrap() else {
            panic!()
        };
        let j = to_json(&Obj::Subset(y.clone()));
        assert_eq!(j["lives_on"], json!(["a"]));
        assert_eq!(j["slices"]["a"], json!([1, 2]));
        let Obj::Real(r) = inst.get("r").unwrap() else {
            panic!()
        };
        assert_eq!(
            to_json(&Obj::Real(r.clone()))["values"],
            json!({"a": "1/2", "b": "-3"})
        );
    }

    #[test]
    fn rejects_bad_references() {
        let bad = INSTANCE.replace(r#""slices": {"a": [1, 2]}"#, r#""slices": {"a": [7]}"#);
        assert!(matches!(
            Instance::from_json(&bad),
            Err(Error::CarrierMismatch(_))
        ));
        let bad = INSTANCE.replace(r#""set": "X", "values""#, r#""set": "Z", "values""#);
        assert!(Instance::from_json(&bad).is_err());
        let bad = INSTANCE.replace(r#"[3, 2]]"#, r#"[3, 2], [3, 1]]"#);
        assert!(Instance::from_json(&bad).is_err());
    }

    #[test]
    fn lp_senses() {
        let lp: LpJson = serde_json::from_str(
            r#"{"maximize": true, "objective": [1, 1], "constraints": [
                {"coeffs": [1, 2], "sense": "<=", "rhs": 4},
                {"coeffs": ["3", 1], "sense": "<=", "rhs": "6"}]}"#,
        )
        .unwrap();
        let p = lp.problem().unwrap();
        let out = crate::condlin::lp_solve(&p).unwrap();
        let j = lp_report(&p, &out);
        assert_eq!(j["value"], json!("14/5"));
        assert_eq!(j["certificate_valid"], json!(true));
        let bad: LpJson = serde_json::from_str(
            r#"{"objective": [1], "constraints": [{"coeffs": [1], "sense": "<", "rhs": 1}]}"#,
        )
        .unwrap();
        assert!(bad.problem().is_err());
    }
}
