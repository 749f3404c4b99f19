//! JSON input formats and serialization helpers.
//!
//! * matrix: `{"rows": [[1, 2], [3, 4]]}`; entries may be JSON numbers of any
//!   size or decimal strings.
//! * group: `{"abelian_invariants": [3, 5]}` or `{"cayley_table": [[0, 1], [1, 0]]}`.
//! * presentation: `{"generators": 2, "relators": [[1, 1, -2, -2, -2]]}`.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactla::IntMatrix;
use crate::fpgroup::GroupPresentation;
use crate::groupring::FiniteGroup;

/// Serialize a `BigInt` as a JSON number when it fits in `i64`, otherwise as
/// a decimal string.
pub mod bigint {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        match value.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&value.to_string()),
        }
    }
}

/// JSON value for an integer: exact number (arbitrary precision).
pub fn bigint_value(x: &BigInt) -> Value {
    serde_json::Number::from_str(&x.to_string())
        .map(Value::Number)
        .unwrap_or_else(|_| Value::String(x.to_string()))
}

pub fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(bigint_value).collect()))
            .collect(),
    )
}

pub fn integers_value(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(bigint_value).collect())
}

fn parse_bigint(v: &Value) -> Result<BigInt> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(Error::Parse(format!("expected an integer, got {other}"))),
    };
    BigInt::from_str(&text).map_err(|_| Error::Parse(format!("not an integer: {text}")))
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

/// Parses the `{"rows": [[...], ...]}` matrix format.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let value = parse_json(text)?;
    let rows = value
        .get("rows")
        .ok_or_else(|| Error::Parse("missing field \"rows\"".into()))?
        .as_array()
        .ok_or_else(|| Error::Parse("\"rows\" must be an array".into()))?;
    let parsed = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("each row must be an array".into()))?
                .iter()
                .map(parse_bigint)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(parsed)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    abelian_invariants: Option<Vec<u64>>,
    cayley_table: Option<Vec<Vec<usize>>>,
}

/// Parses the group format; exactly one of the two fields must be present.
pub fn parse_group(text: &str) -> Result<Arc<FiniteGroup>> {
    let spec: GroupSpec =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid group JSON: {e}")))?;
    match (spec.abelian_invariants, spec.cayley_table) {
        (Some(inv), None) => FiniteGroup::abelian(&inv),
        (None, Some(table)) => FiniteGroup::from_cayley_table(table),
        _ => Err(Error::Parse(
            "group needs exactly one of \"abelian_invariants\" or \"cayley_table\"".into(),
        )),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationSpec {
    generators: usize,
    #[serde(default)]
    relators: Vec<Vec<i64>>,
}

pub fn parse_presentation(text: &str) -> Result<GroupPresentation> {
    let spec: PresentationSpec = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("invalid presentation JSON: {e}")))?;
    GroupPresentation::new(spec.generators, spec.relators)
}
