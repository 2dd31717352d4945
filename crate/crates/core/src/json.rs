//! JSON schemas for monoids, graphs, homomorphisms, cocycles, groups and
//! group-scheme descriptors.
//!
//! Integers are exact: they may be written as JSON numbers of any size or as
//! decimal strings. Emitted objects have sorted keys.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Map, Number, Value};
use thiserror::Error;

use crate::abgroup::{FgAbelianGroup, IntMatrix};
use crate::error::Error;
use crate::monoid::{LatticeVector, MonoidHom, SharpFsMonoid};
use crate::plfun::PLFunction;
use crate::torsors::{Atom, GroupDescriptor, LocalLocal, Verdict};
use crate::tropcurve::{Cycle, MetricGraph};
use crate::tropjac::{TroJacGroup, TropCocycle};

pub const DEFAULT_MAX_RANK: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Syntax(String),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("monoid rank {rank} exceeds the limit {limit} (TROPJAC_MAX_RANK)")]
    RankLimit { rank: usize, limit: usize },
}

fn schema(path: &str, message: impl Into<String>) -> ParseError {
    ParseError::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

/// Caps applied while loading untrusted input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_rank: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rank: DEFAULT_MAX_RANK,
        }
    }
}

pub fn parse(text: &str) -> Result<Value, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError::Syntax(e.to_string()))
}

/// Pretty-printed with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

// ---- primitives ----

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, ParseError> {
    v.as_object().ok_or_else(|| schema(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, ParseError> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, ParseError> {
    obj.get(key)
        .ok_or_else(|| schema(path, format!("missing field {key:?}")))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str, ParseError> {
    v.as_str().ok_or_else(|| schema(path, "expected a string"))
}

fn is_integer_text(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

pub fn int(v: &Value, path: &str) -> Result<BigInt, ParseError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(schema(path, "expected an integer")),
    };
    if !is_integer_text(&text) {
        return Err(schema(path, format!("expected an integer, got {text}")));
    }
    BigInt::from_str(&text).map_err(|_| schema(path, format!("expected an integer, got {text}")))
}

fn u64_field(v: &Value, path: &str) -> Result<u64, ParseError> {
    let n = int(v, path)?;
    u64::try_from(&n).map_err(|_| schema(path, format!("expected a non-negative 64-bit integer, got {n}")))
}

fn usize_field(v: &Value, path: &str) -> Result<usize, ParseError> {
    let n = int(v, path)?;
    usize::try_from(&n).map_err(|_| schema(path, format!("expected a non-negative integer, got {n}")))
}

fn int_list(v: &Value, path: &str) -> Result<Vec<BigInt>, ParseError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| int(x, &format!("{path}[{i}]")))
        .collect()
}

/// A vector of length `rank`; a bare integer is accepted when `rank == 1`.
pub fn lattice_vector(v: &Value, rank: usize, path: &str) -> Result<LatticeVector, ParseError> {
    if rank == 1 && !v.is_array() {
        return Ok(LatticeVector::new(vec![int(v, path)?]));
    }
    let coords = int_list(v, path)?;
    if coords.len() != rank {
        return Err(schema(path, format!("expected {rank} coordinates, got {}", coords.len())));
    }
    Ok(LatticeVector::new(coords))
}

/// Rows of integers, each of length `cols`.
pub fn matrix(v: &Value, cols: usize, path: &str) -> Result<IntMatrix, ParseError> {
    let mut m = IntMatrix::zeros(0, cols);
    for (i, row) in array(v, path)?.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let r = int_list(row, &p)?;
        if r.len() != cols {
            return Err(schema(&p, format!("expected {cols} entries, got {}", r.len())));
        }
        m.push_row(r);
    }
    Ok(m)
}

pub fn int_to_json(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integers are valid JSON numbers"))
}

pub fn ints_to_json(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int_to_json).collect())
}

pub fn lattice_to_json(x: &LatticeVector) -> Value {
    ints_to_json(x.coords())
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| ints_to_json(r)).collect())
}

// ---- monoids and homomorphisms ----

pub fn monoid_from_json(v: &Value, limits: &Limits, path: &str) -> Result<SharpFsMonoid, Error> {
    let obj = object(v, path)?;
    let check = |rank: usize| -> Result<(), ParseError> {
        if rank > limits.max_rank {
            Err(ParseError::RankLimit {
                rank,
                limit: limits.max_rank,
            })
        } else {
            Ok(())
        }
    };
    if let Some(k) = obj.get("free") {
        let k = usize_field(k, &format!("{path}.free"))?;
        check(k)?;
        if k == 0 {
            return Err(schema(&format!("{path}.free"), "rank must be at least 1").into());
        }
        return Ok(SharpFsMonoid::free(k));
    }
    let k = usize_field(field(obj, "rank", path)?, &format!("{path}.rank"))?;
    check(k)?;
    let a = matrix(field(obj, "inequalities", path)?, k, &format!("{path}.inequalities"))?;
    let rays_path = format!("{path}.rays");
    let rays = array(field(obj, "rays", path)?, &rays_path)?
        .iter()
        .enumerate()
        .map(|(i, r)| lattice_vector(r, k, &format!("{rays_path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SharpFsMonoid::new(k, a, rays)?)
}

pub fn monoid_to_json(m: &SharpFsMonoid) -> Value {
    let mut obj = Map::new();
    if m.is_standard_free() {
        obj.insert("free".into(), Value::from(m.rank() as u64));
        return Value::Object(obj);
    }
    obj.insert("rank".into(), Value::from(m.rank() as u64));
    obj.insert("inequalities".into(), matrix_to_json(m.inequalities()));
    obj.insert("rays".into(), Value::Array(m.rays().iter().map(lattice_to_json).collect()));
    Value::Object(obj)
}

/// `{"source"?, "target", "matrix"}`; `source` defaults to `default_source`.
pub fn hom_from_json(v: &Value, default_source: Option<&SharpFsMonoid>, limits: &Limits) -> Result<MonoidHom, Error> {
    let obj = object(v, "hom")?;
    let source = match (obj.get("source"), default_source) {
        (Some(s), _) => monoid_from_json(s, limits, "hom.source")?,
        (None, Some(d)) => d.clone(),
        (None, None) => return Err(schema("hom", "missing field \"source\"").into()),
    };
    let target = monoid_from_json(field(obj, "target", "hom")?, limits, "hom.target")?;
    let m = matrix(field(obj, "matrix", "hom")?, source.rank(), "hom.matrix")?;
    Ok(MonoidHom::new(source, target, m)?)
}

pub fn hom_to_json(h: &MonoidHom) -> Value {
    let mut obj = Map::new();
    obj.insert("source".into(), monoid_to_json(h.source()));
    obj.insert("target".into(), monoid_to_json(h.target()));
    obj.insert("matrix".into(), matrix_to_json(h.matrix()));
    Value::Object(obj)
}

// ---- graphs ----

pub fn graph_from_json(v: &Value, limits: &Limits) -> Result<MetricGraph, Error> {
    let obj = object(v, "graph")?;
    let monoid = monoid_from_json(field(obj, "monoid", "graph")?, limits, "graph.monoid")?;
    let k = monoid.rank();
    let vertices = array(field(obj, "vertices", "graph")?, "graph.vertices")?
        .iter()
        .enumerate()
        .map(|(i, x)| string(x, &format!("graph.vertices[{i}]")).map(str::to_string))
        .collect::<Result<Vec<_>, _>>()?;
    let mut edges = Vec::new();
    for (i, e) in array(field(obj, "edges", "graph")?, "graph.edges")?.iter().enumerate() {
        let p = format!("graph.edges[{i}]");
        let eo = object(e, &p)?;
        let text = |key: &str| -> Result<String, ParseError> {
            string(field(eo, key, &p)?, &format!("{p}.{key}")).map(str::to_string)
        };
        let length = lattice_vector(field(eo, "length", &p)?, k, &format!("{p}.length"))?;
        edges.push((text("id")?, text("tail")?, text("head")?, length));
    }
    Ok(MetricGraph::new(monoid, vertices, edges)?)
}

pub fn graph_from_str(text: &str, limits: &Limits) -> Result<MetricGraph, Error> {
    graph_from_json(&parse(text)?, limits)
}

pub fn graph_to_json(g: &MetricGraph) -> Value {
    let bare = g.monoid().rank() == 1 && g.monoid().is_standard_free();
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            let mut eo = Map::new();
            eo.insert("id".into(), Value::from(e.id.clone()));
            eo.insert("tail".into(), Value::from(g.vertices()[e.tail].clone()));
            eo.insert("head".into(), Value::from(g.vertices()[e.head].clone()));
            let length = if bare {
                int_to_json(&e.length.coords()[0])
            } else {
                lattice_to_json(&e.length)
            };
            eo.insert("length".into(), length);
            Value::Object(eo)
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("monoid".into(), monoid_to_json(g.monoid()));
    obj.insert("vertices".into(), Value::Array(g.vertices().iter().cloned().map(Value::from).collect()));
    obj.insert("edges".into(), Value::Array(edges));
    Value::Object(obj)
}

// ---- cycles, cocycles, PL functions ----

/// `{"edgeId": coefficient, ...}`; unlisted edges get 0.
pub fn cycle_from_json(g: &MetricGraph, v: &Value) -> Result<Cycle, Error> {
    let obj = object(v, "cycle")?;
    let mut coeffs = vec![BigInt::from(0); g.edges().len()];
    for (id, c) in obj {
        let i = g
            .edge_index(id)
            .ok_or_else(|| schema("cycle", format!("unknown edge {id:?}")))?;
        coeffs[i] = int(c, &format!("cycle.{id}"))?;
    }
    let c = Cycle::new(coeffs);
    g.check_cycle(&c)?;
    Ok(c)
}

/// Nonzero coefficients keyed by edge id.
pub fn cycle_to_json(g: &MetricGraph, c: &Cycle) -> Value {
    let obj: Map<String, Value> = g
        .edges()
        .iter()
        .zip(c.coefficients())
        .filter(|(_, x)| x.sign() != num_bigint::Sign::NoSign)
        .map(|(e, x)| (e.id.clone(), int_to_json(x)))
        .collect();
    Value::Object(obj)
}

/// `{"values": [f(γ_1), ...]}` in the order of the graph's cycle basis.
pub fn cocycle_from_json(g: &MetricGraph, v: &Value) -> Result<TropCocycle, Error> {
    let obj = object(v, "cocycle")?;
    let k = g.monoid().rank();
    let values = array(field(obj, "values", "cocycle")?, "cocycle.values")?
        .iter()
        .enumerate()
        .map(|(i, x)| lattice_vector(x, k, &format!("cocycle.values[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TropCocycle::new(g, values)?)
}

pub fn cocycle_to_json(f: &TropCocycle) -> Value {
    let g = f.graph();
    let mut obj = Map::new();
    obj.insert("graph".into(), graph_to_json(g));
    obj.insert(
        "basis".into(),
        Value::Array(f.homology().basis().iter().map(|c| cycle_to_json(g, c)).collect()),
    );
    obj.insert("values".into(), Value::Array(f.values().iter().map(lattice_to_json).collect()));
    Value::Object(obj)
}

/// `{"values": {"vertexId": value, ...}}` covering every vertex.
pub fn vertex_values_from_json(g: &MetricGraph, v: &Value) -> Result<Vec<LatticeVector>, Error> {
    let obj = object(v, "function")?;
    let vals = object(field(obj, "values", "function")?, "function.values")?;
    let k = g.monoid().rank();
    for id in vals.keys() {
        if g.vertex_index(id).is_none() {
            return Err(schema("function.values", format!("unknown vertex {id:?}")).into());
        }
    }
    g.vertices()
        .iter()
        .map(|id| {
            let x = field(vals, id, "function.values")?;
            Ok(lattice_vector(x, k, &format!("function.values.{id}"))?)
        })
        .collect()
}

pub fn pl_to_json(f: &PLFunction) -> Value {
    let g = f.graph();
    let values: Map<String, Value> = g
        .vertices()
        .iter()
        .zip(f.values())
        .map(|(v, x)| (v.clone(), lattice_to_json(x)))
        .collect();
    let slopes: Map<String, Value> = g
        .edges()
        .iter()
        .zip(f.slopes())
        .map(|(e, s)| (e.id.clone(), int_to_json(s)))
        .collect();
    let mut obj = Map::new();
    obj.insert("values".into(), Value::Object(values));
    obj.insert("slopes".into(), Value::Object(slopes));
    Value::Object(obj)
}

pub fn multidegree_to_json(g: &MetricGraph, deg: &[BigInt]) -> Value {
    let obj: Map<String, Value> = g.vertices().iter().cloned().zip(deg.iter().map(int_to_json)).collect();
    Value::Object(obj)
}

// ---- groups ----

pub fn group_to_json(g: &FgAbelianGroup) -> Value {
    let mut obj = Map::new();
    obj.insert("freeRank".into(), Value::from(g.free_rank() as u64));
    obj.insert("invariantFactors".into(), ints_to_json(g.invariant_factors()));
    Value::Object(obj)
}

/// Accepts any cyclic orders (≥ 1) and normalizes them.
pub fn group_from_json(v: &Value) -> Result<FgAbelianGroup, Error> {
    let obj = object(v, "group")?;
    let r = usize_field(field(obj, "freeRank", "group")?, "group.freeRank")?;
    let factors = int_list(field(obj, "invariantFactors", "group")?, "group.invariantFactors")?;
    if let Some(bad) = factors.iter().find(|d| **d < BigInt::from(1)) {
        return Err(schema("group.invariantFactors", format!("cyclic order must be at least 1, got {bad}")).into());
    }
    Ok(FgAbelianGroup::from_cyclic_factors(r, &factors))
}

pub fn trojac_to_json(t: &TroJacGroup) -> Value {
    let mut obj = Map::new();
    obj.insert("group".into(), group_to_json(&t.group));
    obj.insert("normalForm".into(), Value::from(t.group.to_string()));
    obj.insert("boundedBasis".into(), matrix_to_json(&t.bounded_basis));
    obj.insert("relationMatrix".into(), matrix_to_json(&t.relation_matrix));
    Value::Object(obj)
}

// ---- descriptors and verdicts ----

pub fn descriptor_from_json(v: &Value) -> Result<GroupDescriptor, Error> {
    let obj = object(v, "descriptor")?;
    let mut atoms = Vec::new();
    for (i, f) in array(field(obj, "factors", "descriptor")?, "descriptor.factors")?
        .iter()
        .enumerate()
    {
        let p = format!("descriptor.factors[{i}]");
        let fo = object(f, &p)?;
        if fo.len() != 1 {
            return Err(schema(&p, "expected exactly one of mu, z, alphaP, localLocal").into());
        }
        let (key, val) = fo.iter().next().expect("one entry");
        let vp = format!("{p}.{key}");
        let atom = match key.as_str() {
            "mu" => Atom::Mu(u64_field(val, &vp)?),
            "z" => Atom::Zmod(u64_field(val, &vp)?),
            "alphaP" => Atom::AlphaP(u64_field(val, &vp)?),
            "localLocal" => {
                let lo = object(val, &vp)?;
                let prime = u64_field(field(lo, "p", &vp)?, &format!("{vp}.p"))?;
                let hom_dim = u64_field(field(lo, "homDim", &vp)?, &format!("{vp}.homDim"))?;
                let alpha_power = match lo.get("alphaPower") {
                    None | Some(Value::Null) => None,
                    Some(a) => Some(u64_field(a, &format!("{vp}.alphaPower"))?),
                };
                Atom::LocalLocal(LocalLocal::new(prime, hom_dim, alpha_power)?)
            }
            other => return Err(schema(&p, format!("unknown factor kind {other:?}")).into()),
        };
        atoms.push(atom);
    }
    Ok(GroupDescriptor::new(atoms)?)
}

pub fn atom_to_json(a: &Atom) -> Value {
    let mut obj = Map::new();
    match a {
        Atom::Mu(n) => obj.insert("mu".into(), Value::from(*n)),
        Atom::Zmod(m) => obj.insert("z".into(), Value::from(*m)),
        Atom::AlphaP(p) => obj.insert("alphaP".into(), Value::from(*p)),
        Atom::LocalLocal(ll) => {
            let mut lo = Map::new();
            lo.insert("p".into(), Value::from(ll.p));
            lo.insert("homDim".into(), Value::from(ll.hom_dim));
            lo.insert("alphaPower".into(), ll.alpha_power.map_or(Value::Null, Value::from));
            obj.insert("localLocal".into(), Value::Object(lo))
        }
    };
    Value::Object(obj)
}

pub fn descriptor_to_json(g: &GroupDescriptor) -> Value {
    let mut obj = Map::new();
    obj.insert("factors".into(), Value::Array(g.factors().iter().map(atom_to_json).collect()));
    Value::Object(obj)
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    let witness = match v.witness() {
        None => Value::Null,
        Some(w) => {
            let mut wo = Map::new();
            wo.insert("factor".into(), atom_to_json(&w.factor));
            wo.insert("obstruction".into(), Value::from(w.obstruction.as_str()));
            Value::Object(wo)
        }
    };
    let mut obj = Map::new();
    obj.insert("verdict".into(), Value::from(v.name()));
    obj.insert("witness".into(), witness);
    Value::Object(obj)
}

/// Convenience for building sorted objects from string keys.
pub fn object_of<I: IntoIterator<Item = (&'static str, Value)>>(entries: I) -> Value {
    let sorted: BTreeMap<&str, Value> = entries.into_iter().collect();
    Value::Object(sorted.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}
