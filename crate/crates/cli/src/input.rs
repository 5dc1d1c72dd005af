//! Parsing of matching-field sources: weight matrices, tuple lists, and the
//! JSON documents emitted by `tuples --json`.

use matchfields::Error;
use num_bigint::BigInt;

/// Weight matrix text: rows separated by ";" (or newlines), entries by ",".
pub fn parse_weight_matrix(text: &str) -> Result<Vec<Vec<BigInt>>, Error> {
    let body = text.trim();
    if body.is_empty() {
        return Err(Error::Parse("empty weight matrix".into()));
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (r, row_text) in body.split([';', '\n']).enumerate() {
        let mut row = Vec::new();
        for (c, entry) in row_text.split(',').enumerate() {
            let entry = entry.trim();
            row.push(entry.parse::<BigInt>().map_err(|_| {
                Error::Parse(format!(
                    "weight matrix row {}, entry {}: invalid integer {:?}",
                    r + 1,
                    c + 1,
                    entry
                ))
            })?);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse(format!(
                    "weight matrix row {} has {} entries, expected {}",
                    r + 1,
                    row.len(),
                    first.len()
                )));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Tuple list text: grade sections separated by ";" (or newlines), tuples by
/// ",", entries concatenated digits when n <= 9, else space-separated.
pub fn parse_tuple_text(text: &str, n: usize) -> Result<Vec<Vec<Vec<usize>>>, Error> {
    let body = text.trim();
    if body.is_empty() {
        return Err(Error::Parse("empty tuple list".into()));
    }
    let mut grades = Vec::new();
    for section in body.split([';', '\n']) {
        let mut tuples = Vec::new();
        for tuple_text in section.split(',') {
            tuples.push(parse_tuple(tuple_text.trim(), n)?);
        }
        grades.push(tuples);
    }
    Ok(grades)
}

fn parse_tuple(text: &str, n: usize) -> Result<Vec<usize>, Error> {
    if text.is_empty() {
        return Err(Error::Parse("empty tuple".into()));
    }
    if n <= 9 {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d >= 1)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Parse(format!("invalid tuple entry {:?}", c)))
            })
            .collect()
    } else {
        text.split_whitespace()
            .map(|w| {
                w.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("invalid tuple entry {:?}", w)))
            })
            .collect()
    }
}

/// Comma-separated positive integers (grades or a permutation).
pub fn parse_usize_list(text: &str, what: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|w| {
            w.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("invalid {what} entry {:?}", w.trim())))
        })
        .collect()
}

/// Pull n, grades, and tuples back out of a `tuples --json` document.
pub fn parse_tuples_document(
    text: &str,
) -> Result<(Vec<usize>, usize, Vec<Vec<Vec<usize>>>), Error> {
    let doc: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("invalid JSON document: {e}")))?;
    let n = doc
        .get("n")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Error::Parse("document is missing \"n\"".into()))? as usize;
    let grades: Vec<usize> = doc
        .get("grades")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Parse("document is missing \"grades\"".into()))?
        .iter()
        .map(|g| {
            g.as_u64()
                .map(|g| g as usize)
                .ok_or_else(|| Error::Parse("non-integer grade".into()))
        })
        .collect::<Result<_, _>>()?;
    let tuples_value = doc
        .get("tuples")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Parse("document is missing \"tuples\"".into()))?;
    let mut tuples = Vec::new();
    for grade in tuples_value {
        let grade = grade
            .as_array()
            .ok_or_else(|| Error::Parse("\"tuples\" must be an array per grade".into()))?;
        let mut out = Vec::new();
        for tuple in grade {
            let tuple = tuple
                .as_array()
                .ok_or_else(|| Error::Parse("tuple must be an array".into()))?;
            out.push(
                tuple
                    .iter()
                    .map(|e| {
                        e.as_u64()
                            .map(|e| e as usize)
                            .ok_or_else(|| Error::Parse("non-integer tuple entry".into()))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        tuples.push(out);
    }
    Ok((grades, n, tuples))
}
