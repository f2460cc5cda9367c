//! JSON encodings of computed objects. Exact rationals are strings `p/q`.

use dmod::groebner::{FreeVector, Side};
use dmod::lattice::{KunnethTerm, ReductionReport};
use dmod::module_theory::{CharCycle, Grade, PresentedModule};
use dmod::scalars::Rational;
use dmod::weyl::RingTag;
use serde_json::{json, Value};

pub fn rational(q: &Rational) -> Value {
    Value::String(format!("{}/{}", q.numer(), q.denom()))
}

pub fn ring(r: RingTag) -> Value {
    Value::String(r.name().to_string())
}

pub fn side(s: Side) -> Value {
    Value::String(match s {
        Side::Left => "left",
        Side::Right => "right",
    }
    .to_string())
}

pub fn vector(v: &FreeVector) -> Value {
    Value::Array(v.entries.iter().map(|e| Value::String(e.to_string())).collect())
}

pub fn presentation(m: &PresentedModule) -> Value {
    json!({
        "ring": ring(m.ring),
        "side": side(m.side),
        "n": m.n,
        "gens": m.gens,
        "relations": m.relations.iter().map(vector).collect::<Vec<_>>(),
    })
}

pub fn cycle(c: &CharCycle) -> Value {
    let components: Vec<Value> = c
        .render()
        .into_iter()
        .map(|(prime, m)| json!({ "prime": prime, "multiplicity": m }))
        .collect();
    json!({ "components": components, "multiplicity_sum": c.multiplicity_sum() })
}

pub fn grade(g: Grade) -> Value {
    match g {
        Grade::Finite(k) => json!(k),
        Grade::Infinite => json!("infinite"),
    }
}

pub fn reduction(r: &ReductionReport) -> Value {
    json!({
        "reduced": presentation(&r.reduced),
        "is_zero": r.is_zero,
        "char_cycle": r.char_cycle.as_ref().map(cycle),
        "minimal_dimension": r.minimal_dimension,
    })
}

pub fn kunneth_term(t: &KunnethTerm) -> Value {
    json!({ "is_zero": t.is_zero, "char_cycle": t.char_cycle.as_ref().map(cycle) })
}
