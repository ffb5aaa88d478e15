//! JSON files for set functions, functionals, union maps, arrangements and
//! certificate reports.
//!
//! Readers reject unknown and repeated keys and name the offending key in the
//! error. Subsets are written as comma-separated keys (`"1,3,4"`); integers as
//! JSON numbers, other rationals as `"p/q"` strings.

use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use polymat::certificates::CertificateReport;
use polymat::rational;
use polymat::subset::{self, check_ground};
use polymat::{Arrangement, ExactMatrix, Field, Functional, Rational, SetFunction, Subset, UnionMap};
use serde::de::{DeserializeOwned, Deserializer, MapAccess, Visitor};
use serde::Deserialize;
use serde_json::value::RawValue;
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("key {key}: {message}")]
    Key { key: String, message: String },
}

pub type Result<T> = std::result::Result<T, FormatError>;

fn at(key: impl Into<String>, message: impl ToString) -> FormatError {
    FormatError::Key {
        key: key.into(),
        message: message.to_string(),
    }
}

/// A JSON object with its keys in file order, repeats kept.
struct Entries<V>(Vec<(String, V)>);

impl<'de, V: Deserialize<'de>> Deserialize<'de> for Entries<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct Collect<V>(PhantomData<V>);

        impl<'de, V: Deserialize<'de>> Visitor<'de> for Collect<V> {
            type Value = Entries<V>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a JSON object")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Entries<V>, A::Error> {
                let mut out = Vec::new();
                while let Some(entry) = map.next_entry::<String, V>()? {
                    out.push(entry);
                }
                Ok(Entries(out))
            }
        }

        d.deserialize_map(Collect(PhantomData))
    }
}

struct Fields(Vec<(String, Box<RawValue>)>);

impl Fields {
    fn parse(text: &str, allowed: &[&str]) -> Result<Self> {
        let Entries(entries) = serde_json::from_str::<Entries<Box<RawValue>>>(text)
            .map_err(|e| FormatError::Syntax(e.to_string()))?;
        for (i, (key, _)) in entries.iter().enumerate() {
            if !allowed.contains(&key.as_str()) {
                return Err(at(
                    quote(key),
                    format!("unexpected key (expected {})", allowed.join(", ")),
                ));
            }
            if entries[..i].iter().any(|(k, _)| k == key) {
                return Err(at(quote(key), "repeated key"));
            }
        }
        Ok(Fields(entries))
    }

    fn get<T: DeserializeOwned>(&self, key: &str) -> Result<T> {
        let raw = self
            .0
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v)
            .ok_or_else(|| at(quote(key), "missing"))?;
        serde_json::from_str(raw.get()).map_err(|e| at(quote(key), e))
    }

    fn ground(&self, key: &str) -> Result<usize> {
        let n: usize = self.get(key)?;
        check_ground(n).map_err(|e| at(quote(key), e))?;
        Ok(n)
    }
}

fn quote(key: &str) -> String {
    format!("{key:?}")
}

/// Reads an integer or a `"p/q"` string.
pub fn parse_rational(value: &Value) -> std::result::Result<Rational, String> {
    let text = match value {
        Value::Number(x) if x.is_i64() || x.is_u64() => x.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(format!("expected an integer or a \"p/q\" string, found {other}")),
    };
    Rational::from_str(&text).map_err(|_| format!("{text:?} is not a rational number"))
}

pub fn rational_to_json(x: &Rational) -> Value {
    match rational::to_i64(x) {
        Some(i) => json!(i),
        None => Value::String(x.to_string()),
    }
}

/// Parses a subset key of an object nested under `parent`.
fn subset_key(n: usize, parent: &str, key: &str) -> Result<(Subset, String)> {
    let path = format!("{parent}[{key:?}]");
    let s = Subset::parse_key(n, key).map_err(|e| at(&path, e))?;
    if s.is_empty() {
        return Err(at(path, "the empty set has no coordinate"));
    }
    Ok((s, path))
}

pub fn set_function_to_json(f: &SetFunction) -> Value {
    let values: Map<String, Value> = f
        .entries()
        .map(|(a, v)| (a.to_key(), rational_to_json(v)))
        .collect();
    json!({ "n": f.n(), "values": values })
}

/// `{"n": 4, "values": {"1": 1, "1,2": 2, ...}}` with every nonempty subset
/// listed exactly once.
pub fn parse_set_function(text: &str) -> Result<SetFunction> {
    let fields = Fields::parse(text, &["n", "values"])?;
    let n = fields.ground("n")?;
    let Entries(values) = fields.get::<Entries<Value>>("values")?;
    let mut table: Vec<Option<Rational>> = vec![None; subset::lattice_size(n)];
    for (key, value) in values {
        let (s, path) = subset_key(n, "values", &key)?;
        if table[s.index()].is_some() {
            return Err(at(path, "subset listed twice"));
        }
        table[s.index()] = Some(parse_rational(&value).map_err(|e| at(&path, e))?);
    }
    let mut ordered = Vec::with_capacity(table.len() - 1);
    for s in subset::nonempty_subsets(n) {
        match table[s.index()].take() {
            Some(v) => ordered.push(v),
            None => return Err(at(format!("values[{:?}]", s.to_key()), "missing")),
        }
    }
    SetFunction::from_values(n, ordered).map_err(|e| at("\"values\"", e))
}

pub fn functional_to_json(f: &Functional) -> Value {
    let coeffs: Map<String, Value> = f
        .terms()
        .map(|(a, c)| (a.to_key(), Value::String(c.to_string())))
        .collect();
    json!({ "n": f.n(), "coeffs": coeffs })
}

/// `{"n": 4, "coeffs": {"1,2": "-1", ...}}`; sparse, no zero coefficients.
pub fn parse_functional(text: &str) -> Result<Functional> {
    let fields = Fields::parse(text, &["n", "coeffs"])?;
    let n = fields.ground("n")?;
    let Entries(coeffs) = fields.get::<Entries<Value>>("coeffs")?;
    let mut terms: Vec<(Subset, Rational)> = Vec::with_capacity(coeffs.len());
    for (key, value) in coeffs {
        let (s, path) = subset_key(n, "coeffs", &key)?;
        if terms.iter().any(|(t, _)| *t == s) {
            return Err(at(path, "subset listed twice"));
        }
        let c = parse_rational(&value).map_err(|e| at(&path, e))?;
        if c == rational::zero() {
            return Err(at(path, "zero coefficients are not allowed"));
        }
        terms.push((s, c));
    }
    Functional::from_terms(n, terms).map_err(|e| at("\"coeffs\"", e))
}

pub fn union_map_to_json(phi: &UnionMap) -> Value {
    let images: Vec<Vec<usize>> = phi.images().iter().map(Subset::to_vec).collect();
    json!({ "k": phi.source(), "n": phi.target(), "images": images })
}

/// `{"k": 2, "n": 3, "images": [[1], [2, 3]]}`: the image of each `i` in
/// `1..=k`, `[]` for the empty set.
pub fn parse_union_map(text: &str) -> Result<UnionMap> {
    let fields = Fields::parse(text, &["k", "n", "images"])?;
    let k = fields.ground("k")?;
    let n = fields.ground("n")?;
    let images: Vec<Vec<usize>> = fields.get("images")?;
    if images.len() != k {
        return Err(at(
            "\"images\"",
            format!("expected {k} images, found {}", images.len()),
        ));
    }
    let images = images
        .iter()
        .enumerate()
        .map(|(i, elements)| Subset::new(n, elements).map_err(|e| at(format!("images[{i}]"), e)))
        .collect::<Result<Vec<_>>>()?;
    UnionMap::new(k, n, images).map_err(|e| at("\"images\"", e))
}

pub fn arrangement_to_json(v: &Arrangement) -> Value {
    let subspaces: Vec<Vec<Vec<Value>>> = v
        .subspaces()
        .iter()
        .map(|m| {
            (0..m.rows())
                .map(|i| m.row(i).iter().map(rational_to_json).collect())
                .collect()
        })
        .collect();
    json!({
        "field": v.field().code(),
        "ambient_dim": v.ambient_dim(),
        "subspaces": subspaces,
    })
}

/// `{"field": 101, "ambient_dim": 5, "subspaces": [[[1,0,0,0,0], ...], [], ...]}`.
/// Field `0` is the rationals. Each subspace is given by spanning rows.
pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let fields = Fields::parse(text, &["field", "ambient_dim", "subspaces"])?;
    let code: u64 = fields.get("field")?;
    let field = Field::from_code(code).map_err(|e| at("\"field\"", e))?;
    let dim: usize = fields.get("ambient_dim")?;
    if dim == 0 {
        return Err(at("\"ambient_dim\"", "must be at least 1"));
    }
    let subspaces: Vec<Vec<Vec<Value>>> = fields.get("subspaces")?;
    check_ground(subspaces.len()).map_err(|e| at("\"subspaces\"", e))?;
    let mut spans = Vec::with_capacity(subspaces.len());
    for (i, rows) in subspaces.iter().enumerate() {
        let mut entries = Vec::with_capacity(rows.len() * dim);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(at(
                    format!("subspaces[{i}][{r}]"),
                    format!("expected {dim} entries, found {}", row.len()),
                ));
            }
            for (c, x) in row.iter().enumerate() {
                let value = parse_rational(x).map_err(|e| at(format!("subspaces[{i}][{r}][{c}]"), e))?;
                entries.push(value);
            }
        }
        let m = ExactMatrix::new(field, rows.len(), dim, entries)
            .map_err(|e| at(format!("subspaces[{i}]"), e))?;
        spans.push(m);
    }
    Arrangement::new(field, dim, spans).map_err(|e| at("\"subspaces\"", e))
}

pub fn report_to_json(r: &CertificateReport) -> Value {
    let params: Map<String, Value> = r
        .params
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    json!({
        "check": r.check,
        "n": r.n,
        "outcome": r.outcome().as_str(),
        "params": params,
        "checks_run": r.checks_run,
        "failures": r.failures,
        "details": r.details,
    })
}

pub fn parse_report(text: &str) -> Result<CertificateReport> {
    let fields = Fields::parse(
        text,
        &[
            "check",
            "n",
            "outcome",
            "params",
            "checks_run",
            "failures",
            "details",
        ],
    )?;
    let mut report = CertificateReport::new(&fields.get::<String>("check")?, fields.get("n")?);
    let Entries(params) = fields.get::<Entries<String>>("params")?;
    report.params = params;
    report.checks_run = fields.get("checks_run")?;
    report.failures = fields.get("failures")?;
    report.details = fields.get("details")?;
    let outcome: String = fields.get("outcome")?;
    if outcome != report.outcome().as_str() {
        return Err(at(
            "\"outcome\"",
            format!("{outcome:?} disagrees with {} failures", report.failures),
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use polymat::certificates::witness_t;
    use polymat::{kinser, random_arrangement};
    use proptest::prelude::*;

    fn message(e: FormatError) -> String {
        e.to_string()
    }

    #[test]
    fn set_function_example() {
        let text = r#"{"n": 2, "values": {"1": 1, "2": "3/2", "1,2": 2}}"#;
        let f = parse_set_function(text).unwrap();
        assert_eq!(
            f.value(&Subset::new(2, &[2]).unwrap()).unwrap(),
            &Rational::new(3.into(), 2.into())
        );
        let back = set_function_to_json(&f);
        assert_eq!(back, json!({"n": 2, "values": {"1": 1, "2": "3/2", "1,2": 2}}));
    }

    #[test]
    fn set_function_errors_name_the_key() {
        let missing = r#"{"n": 2, "values": {"1": 1, "2": 1}}"#;
        assert!(message(parse_set_function(missing).unwrap_err()).contains("values[\"1,2\"]"));
        let extra = r#"{"n": 2, "values": {"1": 1, "2": 1, "1,2": 2, "3": 1}}"#;
        assert!(message(parse_set_function(extra).unwrap_err()).contains("values[\"3\"]"));
        let twice = r#"{"n": 2, "values": {"1": 1, "2": 1, "1,2": 2, "1, 2": 2}}"#;
        assert!(message(parse_set_function(twice).unwrap_err()).contains("listed twice"));
        let float = r#"{"n": 1, "values": {"1": 0.5}}"#;
        assert!(message(parse_set_function(float).unwrap_err()).contains("values[\"1\"]"));
        let stray = r#"{"n": 1, "values": {"1": 1}, "m": 3}"#;
        assert!(message(parse_set_function(stray).unwrap_err()).contains("\"m\""));
        let repeated = r#"{"n": 1, "n": 1, "values": {"1": 1}}"#;
        assert!(message(parse_set_function(repeated).unwrap_err()).contains("repeated"));
        assert!(matches!(parse_set_function("{"), Err(FormatError::Syntax(_))));
    }

    #[test]
    fn functional_rejects_zero_and_empty_keys() {
        let zero = r#"{"n": 4, "coeffs": {"1,2": "0"}}"#;
        assert!(message(parse_functional(zero).unwrap_err()).contains("zero"));
        let empty = r#"{"n": 4, "coeffs": {"": "1"}}"#;
        assert!(message(parse_functional(empty).unwrap_err()).contains("empty set"));
        let f = parse_functional(r#"{"n": 4, "coeffs": {"1,2": "-1", "3": "1/2"}}"#).unwrap();
        assert_eq!(f.support_len(), 2);
    }

    #[test]
    fn map_example() {
        let phi = parse_union_map(r#"{"k": 2, "n": 3, "images": [[1], [2, 3]]}"#).unwrap();
        assert_eq!(phi.images()[1], Subset::new(3, &[2, 3]).unwrap());
        assert_eq!(
            parse_union_map(&union_map_to_json(&phi).to_string()).unwrap(),
            phi
        );
        let short = r#"{"k": 3, "n": 3, "images": [[1], [2]]}"#;
        assert!(message(parse_union_map(short).unwrap_err()).contains("\"images\""));
        let range = r#"{"k": 2, "n": 3, "images": [[1], [4]]}"#;
        assert!(message(parse_union_map(range).unwrap_err()).contains("images[1]"));
    }

    #[test]
    fn arrangement_example() {
        let text =
            r#"{"field": 101, "ambient_dim": 3, "subspaces": [[[1, 0, 0], [0, 1, 0]], [], [[2, 2, 0]]]}"#;
        let v = parse_arrangement(text).unwrap();
        assert_eq!(v.rank_of(&Subset::new(3, &[1, 3]).unwrap()).unwrap(), 2);
        assert_eq!(
            parse_arrangement(&arrangement_to_json(&v).to_string()).unwrap(),
            v
        );
        let q = r#"{"field": 0, "ambient_dim": 2, "subspaces": [[["1/2", 1]]]}"#;
        assert_eq!(parse_arrangement(q).unwrap().field(), Field::Rational);
        let ragged = r#"{"field": 0, "ambient_dim": 2, "subspaces": [[[1, 1]], [[1]]]}"#;
        assert!(message(parse_arrangement(ragged).unwrap_err()).contains("subspaces[1][0]"));
        let bad_prime = r#"{"field": 4, "ambient_dim": 2, "subspaces": [[]]}"#;
        assert!(message(parse_arrangement(bad_prime).unwrap_err()).contains("\"field\""));
        let pole = r#"{"field": 3, "ambient_dim": 1, "subspaces": [[["1/3"]]]}"#;
        assert!(message(parse_arrangement(pole).unwrap_err()).contains("subspaces[0]"));
    }

    #[test]
    fn report_round_trip() {
        let r = polymat::certificates::verify_hierarchy(5).unwrap();
        let text = report_to_json(&r).to_string();
        assert!(text.starts_with(r#"{"check":"hierarchy","n":5,"outcome":"pass""#));
        assert_eq!(parse_report(&text).unwrap(), r);
    }

    #[test]
    fn kinser_and_witness_round_trip() {
        for n in 4..=7 {
            let k = kinser(n).unwrap();
            assert_eq!(parse_functional(&functional_to_json(&k).to_string()).unwrap(), k);
            let t = witness_t(n).unwrap();
            assert_eq!(
                parse_set_function(&set_function_to_json(&t).to_string()).unwrap(),
                t
            );
        }
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..7).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
    }

    proptest! {
        #[test]
        fn set_functions_round_trip(n in 1usize..=5, values in proptest::collection::vec(small_rational(), 31)) {
            let f = SetFunction::from_values(n, values[..(1 << n) - 1].to_vec()).unwrap();
            let text = serde_json::to_string_pretty(&set_function_to_json(&f)).unwrap();
            prop_assert_eq!(parse_set_function(&text).unwrap(), f);
        }

        #[test]
        fn functionals_round_trip(
            n in 1usize..=5,
            terms in proptest::collection::vec((1u32..32, small_rational()), 0..12),
        ) {
            let terms = terms.into_iter().map(|(bits, c)| {
                let bits = (bits % ((1 << n) - 1)) + 1;
                (Subset::from_bits(n, bits).unwrap(), c)
            });
            let f = Functional::from_terms(n, terms).unwrap();
            let text = functional_to_json(&f).to_string();
            prop_assert_eq!(parse_functional(&text).unwrap(), f);
        }

        #[test]
        fn maps_round_trip(k in 1usize..=6, n in 1usize..=6, raw in proptest::collection::vec(0u32..64, 6)) {
            let images = raw[..k].iter().map(|b| Subset::from_bits(n, b & ((1 << n) - 1)).unwrap()).collect();
            let phi = UnionMap::new(k, n, images).unwrap();
            prop_assert_eq!(parse_union_map(&union_map_to_json(&phi).to_string()).unwrap(), phi);
        }

        #[test]
        fn arrangements_round_trip(n in 1usize..=6, d in 1usize..=5, p in prop::sample::select(vec![2u64, 3, 101]), seed in any::<u64>()) {
            let v = random_arrangement(n, d, p, seed).unwrap();
            let text = arrangement_to_json(&v).to_string();
            prop_assert_eq!(parse_arrangement(&text).unwrap(), v);
        }
    }
}
