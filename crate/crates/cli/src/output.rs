//! Deterministic text and JSON rendering of results.

use matchfields::linalg::Rat;
use matchfields::matching_field::MatchingField;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Canonical hash of a matching field: n, grades, and the tuples in
/// canonical order. Weight matrices do not participate, so any two sources
/// inducing the same field agree.
pub fn fingerprint(mf: &MatchingField) -> String {
    let mut canonical = format!("n={};grades=", mf.n());
    canonical.push_str(&join(mf.grades().iter(), ","));
    for g in 0..mf.grades().len() {
        canonical.push('|');
        let tuples: Vec<String> = mf
            .tuples_of_grade(g)
            .iter()
            .map(|t| join(t.iter(), ","))
            .collect();
        canonical.push_str(&tuples.join(";"));
    }
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    format!("{:x}", hasher.finalize())
}

/// Full result document around a command payload.
pub fn document(command: &str, mf: &MatchingField, payload: Value) -> Value {
    let mut doc = Map::new();
    doc.insert("command".into(), json!(command));
    doc.insert("fingerprint".into(), json!(fingerprint(mf)));
    doc.insert("n".into(), json!(mf.n()));
    doc.insert("grades".into(), json!(mf.grades()));
    let tuples: Vec<Value> = (0..mf.grades().len())
        .map(|g| json!(mf.tuples_of_grade(g)))
        .collect();
    doc.insert("tuples".into(), Value::Array(tuples));
    if let Some(weight) = mf.stored_weight() {
        doc.insert("weight".into(), weight_value(weight));
    }
    doc.insert("payload".into(), payload);
    doc.insert("status".into(), json!("ok"));
    Value::Object(doc)
}

pub fn error_document(command: &str, message: &str) -> Value {
    let mut doc = Map::new();
    doc.insert("command".into(), json!(command));
    doc.insert("error".into(), json!(message));
    doc.insert("status".into(), json!("error"));
    Value::Object(doc)
}

/// Integers render as JSON numbers when they fit, else as decimal strings.
pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn weight_value(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| Value::Array(row.iter().map(int_value).collect()))
            .collect(),
    )
}

/// Exact rational as text: "38", "-5", or "3/2".
pub fn rat_text(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A rational that ought to be an integer, as a JSON number if possible.
pub fn rat_value(r: &Rat) -> Value {
    if r.denom().is_one() {
        int_value(r.numer())
    } else {
        json!(rat_text(r))
    }
}

/// Tuple/subset entries: concatenated digits when n <= 9, else
/// space-separated.
pub fn entries_text(entries: &[usize], n: usize) -> String {
    if n <= 9 {
        join(entries.iter(), "")
    } else {
        join(entries.iter(), " ")
    }
}

pub fn weight_text(rows: &[Vec<BigInt>]) -> String {
    let rows: Vec<String> = rows.iter().map(|r| join(r.iter(), ",")).collect();
    rows.join(";")
}

pub fn join<T: std::fmt::Display>(items: impl Iterator<Item = T>, sep: &str) -> String {
    items
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use matchfields::linalg::rat;

    #[test]
    fn rational_rendering() {
        assert_eq!(rat_text(&rat(38)), "38");
        assert_eq!(rat_text(&(rat(3) / rat(2))), "3/2");
        assert_eq!(rat_value(&rat(7)), json!(7));
        assert_eq!(rat_value(&(rat(3) / rat(2))), json!("3/2"));
    }

    #[test]
    fn fingerprints_track_the_field_not_the_source() {
        let diag = MatchingField::diagonal(&[2], 4).unwrap();
        let same = MatchingField::from_tuples(
            &[2],
            4,
            &[diag.tuples_of_grade(0).to_vec()],
        )
        .unwrap();
        assert_eq!(fingerprint(&diag), fingerprint(&same));
        let other = MatchingField::diagonal(&[2], 5).unwrap();
        assert_ne!(fingerprint(&diag), fingerprint(&other));
    }

    #[test]
    fn document_includes_weight_only_when_stored() {
        let diag = MatchingField::diagonal(&[2], 4).unwrap();
        let doc = document("coherent", &diag, json!(true));
        assert!(doc.get("weight").is_some());
        let bare = MatchingField::from_tuples(
            &[2],
            4,
            &[diag.tuples_of_grade(0).to_vec()],
        )
        .unwrap();
        let doc = document("coherent", &bare, json!(true));
        assert!(doc.get("weight").is_none());
        assert_eq!(doc.get("status"), Some(&json!("ok")));
    }
}
