//! Text, JSON and CSV rendering. JSON keys come out in insertion order and
//! rationals as decimal strings, so output is byte-stable.

use clap::ValueEnum;
use jetdiff::poly::{render_monomial, Monomial, Poly, Rational, Var};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn rational_json(r: &Rational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

fn exponents_json(m: &Monomial) -> Value {
    let mut obj = Map::new();
    for v in Var::ALL {
        let e = m[v.index()];
        if e > 0 {
            obj.insert(v.name().to_string(), json!(e));
        }
    }
    Value::Object(obj)
}

pub fn poly_json(p: &Poly) -> Value {
    Value::Array(
        p.sorted_terms()
            .iter()
            .map(|(m, c)| {
                json!({
                    "exponents": exponents_json(m),
                    "num": c.numer().to_string(),
                    "den": c.denom().to_string(),
                })
            })
            .collect(),
    )
}

pub fn poly_from_json(v: &Value) -> Option<Poly> {
    let mut p = Poly::zero();
    for t in v.as_array()? {
        let mut m: Monomial = Default::default();
        for (name, e) in t.get("exponents")?.as_object()? {
            m[Var::from_name(name)?.index()] = u8::try_from(e.as_u64()?).ok()?;
        }
        let num: BigInt = t.get("num")?.as_str()?.parse().ok()?;
        let den: BigInt = t.get("den")?.as_str()?.parse().ok()?;
        p.add_term(m, Rational::new(num, den));
    }
    Some(p)
}

/// CSV rows `monomial,num,den`.
pub fn poly_csv(p: &Poly) -> String {
    let mut out = String::from("monomial,num,den\n");
    for (m, c) in p.sorted_terms() {
        let mono = render_monomial(&m);
        out.push_str(&format!(
            "{},{},{}\n",
            if mono.is_empty() { "1" } else { &mono },
            c.numer(),
            c.denom()
        ));
    }
    out
}

/// Quotes a CSV field when needed.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn to_json_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}
