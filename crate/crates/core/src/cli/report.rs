//! JSON rendering of computed data. Rationals are written as `"p/q"` in
//! lowest terms; integers that fit in `i64` are written as numbers.

use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::cone::{
    Chamber, ConeDescription, MovableDecomposition, NefCone, RationalCone, WallKind,
};
use crate::enumeration::{K3Cone, TheoremClass};
use crate::linalg::{Int, Rat};
use crate::markman::{CurveClass, ExtendedAlgebraicLattice};

pub const SCHEMA: &str = "morikit/1";

pub fn int(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => Value::String(x.to_string()),
    }
}

pub fn rat(x: &Rat) -> Value {
    Value::String(format!("{}/{}", x.numer(), x.denom()))
}

pub fn ints(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn rats(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn int_rows(m: &[Vec<Int>]) -> Value {
    Value::Array(m.iter().map(|r| ints(r)).collect())
}

/// The model as a raw configuration block.
pub fn model(m: &ExtendedAlgebraicLattice) -> Value {
    let (gram, v, h) = m.to_raw();
    json!({ "raw": { "gram": int_rows(&gram), "v": ints(&v), "ample": ints(&h) } })
}

/// `n`, `v²` and `δ̃² = −2(n−1)`, plus `δ̃` itself for Hilbert scheme models.
pub fn constants(m: &ExtendedAlgebraicLattice, out: &mut Map<String, Value>) {
    out.insert("n".into(), int(m.n()));
    out.insert("v_sq".into(), int(m.v_sq()));
    let delta_sq = match m.delta() {
        Some(d) => m.pair(d, d).expect("delta has model rank"),
        None => -m.v_sq().clone(),
    };
    out.insert("delta_sq".into(), int(&delta_sq));
    if let Some(d) = m.delta() {
        out.insert("delta".into(), ints(d.coords()));
    }
}

pub fn h2(m: &ExtendedAlgebraicLattice) -> Value {
    let basis: Vec<Vec<Int>> = m
        .h2_basis_vectors()
        .iter()
        .map(|b| b.coords().to_vec())
        .collect();
    json!({ "basis": int_rows(&basis), "gram": int_rows(m.h2_gram()) })
}

pub fn cone(c: &RationalCone) -> Value {
    json!({
        "rays": int_rows(&c.rays),
        "lineality": int_rows(&c.lineality),
        "facets": int_rows(&c.facets),
        "equations": int_rows(&c.equations),
    })
}

pub fn curve(m: &ExtendedAlgebraicLattice, c: &CurveClass) -> Value {
    json!({
        "coords": rats(&c.coords),
        "h2": rats(&m.to_h2(c)),
        "q": rat(&c.q),
        "denominator": int(&c.denominator),
    })
}

pub fn theorem_class(m: &ExtendedAlgebraicLattice, t: &TheoremClass) -> Value {
    let mut v = curve(m, &t.r);
    let o = v.as_object_mut().expect("object");
    o.insert("height".into(), rat(&t.height));
    o.insert(
        "lift".into(),
        json!({ "a": ints(t.a.coords()), "a_sq": int(&t.a_sq), "av": int(&t.av) }),
    );
    v
}

pub fn mori(m: &ExtendedAlgebraicLattice, d: &ConeDescription) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert(
        "rays".into(),
        Value::Array(d.rays.iter().map(|t| theorem_class(m, t)).collect()),
    );
    o.insert("polyhedral".into(), cone(&d.polyhedral));
    o.insert("quadric_boundary".into(), json!(d.quadric_boundary));
    o.insert("searched_height_bound".into(), rat(&d.height_bound));
    o.insert("complete".into(), json!(d.complete));
    o
}

pub fn nef(m: &ExtendedAlgebraicLattice, n: &NefCone) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("cone".into(), cone(&n.cone));
    o.insert("quadric_boundary".into(), json!(n.quadric_boundary));
    o.insert(
        "walls".into(),
        Value::Array(n.walls.iter().map(|c| curve(m, c)).collect()),
    );
    o.insert("complete".into(), json!(n.complete));
    o
}

pub fn chamber(m: &ExtendedAlgebraicLattice, c: &Chamber) -> Value {
    let walls: Vec<Value> = c
        .walls
        .iter()
        .map(|w| {
            json!({
                "kind": match w.kind {
                    WallKind::Exceptional => "exceptional",
                    WallKind::Flop => "flop",
                },
                "divisor": ints(w.divisor.coords.coords()),
                "h2": ints(&w.h2),
                "class": curve(m, &w.class),
            })
        })
        .collect();
    json!({
        "cone": cone(&c.cone),
        "quadric_boundary": c.quadric_boundary,
        "walls": walls,
        "interior_point": ints(&c.interior_point),
        "contains_h": c.contains_h,
        "depth": c.depth,
        "complete": c.complete,
    })
}

pub fn movable(m: &ExtendedAlgebraicLattice, d: &MovableDecomposition) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert(
        "chambers".into(),
        Value::Array(d.chambers.iter().map(|c| chamber(m, c)).collect()),
    );
    let exc: Vec<Value> = d
        .exceptional
        .iter()
        .zip(&d.exceptional_h2)
        .map(|(r, k)| {
            json!({
                "divisor": ints(r.e.coords.coords()),
                "h2": ints(k),
                "v_sign": r.v_sign,
                "reflection_h2": int_rows(&r.h2_matrix),
            })
        })
        .collect();
    o.insert("exceptional".into(), Value::Array(exc));
    o.insert("region".into(), cone(&d.region));
    o.insert("region_quadric_boundary".into(), json!(d.region_quadric));
    o.insert("word_bound".into(), json!(d.word_bound));
    o.insert("complete".into(), json!(d.complete));
    o
}

pub fn k3(c: &K3Cone) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("rays".into(), int_rows(&c.rays));
    o.insert("negative_rays".into(), int_rows(&c.negative_rays));
    o.insert("quadric_boundary".into(), json!(c.quadric_boundary));
    o.insert("complete".into(), json!(c.complete));
    o
}

/// Flattens a JSON document into `path<TAB>value` lines.
pub fn to_tsv(v: &Value) -> String {
    fn walk(v: &Value, path: &str, out: &mut String) {
        match v {
            Value::Object(o) => {
                for (k, x) in o {
                    let p = if path.is_empty() {
                        k.clone()
                    } else {
                        format!("{path}.{k}")
                    };
                    walk(x, &p, out);
                }
            }
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let cells: Vec<String> = a.iter().map(scalar).collect();
                out.push_str(&format!("{path}\t{}\n", cells.join(",")));
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    walk(x, &format!("{path}.{i}"), out);
                }
            }
            _ => out.push_str(&format!("{path}\t{}\n", scalar(v))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    walk(v, "", &mut out);
    out
}
