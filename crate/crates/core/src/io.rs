//! JSON encoding of game specifications.
//!
//! ```json
//! { "T": 3, "P": [["1", "0"], ["1/2", 0.25]], "U": "UM" }
//! ```
//!
//! `P` holds `m` rows of `n` entries, each a rational string or a number
//! literal. `U` is `"UE"`, `"UM"`, or an explicit array of `T + 1` values.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::model::{GameSpec, StrengthMatrix, UtilityKind, UtilityTable};
use crate::rational::{self, Rational};

pub fn parse_spec(text: &str) -> Result<GameSpec> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::parse("document", e.to_string()))?;
    spec_from_value(&doc)
}

pub fn spec_from_value(doc: &Value) -> Result<GameSpec> {
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::parse("document", "expected a JSON object"))?;
    let rounds = obj
        .get("T")
        .ok_or_else(|| Error::parse("T", "missing"))?
        .as_u64()
        .ok_or_else(|| Error::parse("T", "expected a nonnegative integer"))? as usize;
    let rows = obj
        .get("P")
        .ok_or_else(|| Error::parse("P", "missing"))?
        .as_array()
        .ok_or_else(|| Error::parse("P", "expected an array of rows"))?;
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::parse(format!("P[{i}]"), "expected an array"))?;
        let mut out = Vec::with_capacity(row.len());
        for (j, cell) in row.iter().enumerate() {
            out.push(rational::from_json(cell).map_err(|e| Error::parse(format!("P[{i}][{j}]"), e.to_string()))?);
        }
        parsed.push(out);
    }
    let strength = StrengthMatrix::new(parsed).map_err(|e| Error::parse("P", e.to_string()))?;
    let utility = match obj.get("U").ok_or_else(|| Error::parse("U", "missing"))? {
        Value::String(s) => {
            let kind: UtilityKind = s.parse().map_err(|_| Error::parse("U", format!("unknown utility {s:?}")))?;
            kind.table(rounds).map_err(|e| Error::parse("T", e.to_string()))?
        }
        Value::Array(values) => {
            let table = values
                .iter()
                .enumerate()
                .map(|(t, v)| rational::from_json(v).map_err(|e| Error::parse(format!("U[{t}]"), e.to_string())))
                .collect::<Result<Vec<Rational>>>()?;
            UtilityTable::new(table).map_err(|e| Error::parse("U", e.to_string()))?
        }
        _ => return Err(Error::parse("U", "expected \"UE\", \"UM\", or an array")),
    };
    GameSpec::new(rounds, strength, utility).map_err(|e| {
        let field = match e {
            Error::Range(_) => "P",
            Error::Shape(_) => "U",
            _ => "T",
        };
        Error::parse(field, e.to_string())
    })
}

/// Canonical JSON for a spec: rationals as strings, the utility by name when
/// it is one of the standard tables.
pub fn spec_to_value(spec: &GameSpec) -> Value {
    let p: Vec<Vec<String>> = spec
        .strength()
        .to_rows()
        .iter()
        .map(|r| r.iter().map(rational::format_rational).collect())
        .collect();
    let u = match spec.utility().standard_name() {
        Some(kind) => Value::String(kind.label().into()),
        None => Value::Array(spec.utility().values().iter().map(rational::to_json).collect()),
    };
    json!({ "T": spec.rounds(), "P": p, "U": u })
}

pub fn spec_to_string(spec: &GameSpec) -> String {
    serde_json::to_string_pretty(&spec_to_value(spec)).expect("spec serializes")
}
