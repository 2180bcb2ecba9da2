//! Pair files: a JSON exchange format for reductive pairs.
//!
//! The canonical layout (field order as emitted, lowest-term rationals,
//! two-space indent) is
//!
//! ```json
//! {
//!   "dim_a": 1,
//!   "g_weights": { "dim_zero": 1, "weights": [ {"coeffs": ["2"], "mult": 1}, ... ] },
//!   "h_weights": { ... },
//!   "q_weights": { ... },
//!   "ambient": { "dim_ag": 2, "embed": [["1"], ["-1"]], "group_type": "A1",
//!                "a_membership": [["1", "1"]] },
//!   "label": "rank one"
//! }
//! ```
//!
//! `q_weights` and `ambient` are optional on input; q is derived by
//! subtraction when absent and cross-checked against the file when
//! present.  Loading then re-serializing any file is byte-identical,
//! which is what makes the format safe to diff and archive.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};
use tempered::criterion::{AmbientWeyl, WeylComponent};
use tempered::linalg::{self, LinearForm, Matrix, Rational};
use tempered::weights::{HomogeneousPair, WeightMultiset};
use tempered::{Error, Result};

fn schema(pointer: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        pointer: pointer.to_string(),
        message: message.into(),
    }
}

fn as_object<'v>(v: &'v Value, ptr: &str) -> Result<&'v Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(ptr, "expected an object"))
}

fn as_array<'v>(v: &'v Value, ptr: &str) -> Result<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| schema(ptr, "expected an array"))
}

fn as_usize(v: &Value, ptr: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| schema(ptr, "expected a non-negative integer"))
}

fn as_str<'v>(v: &'v Value, ptr: &str) -> Result<&'v str> {
    v.as_str().ok_or_else(|| schema(ptr, "expected a string"))
}

fn field<'v>(obj: &'v Map<String, Value>, key: &str, ptr: &str) -> Result<&'v Value> {
    obj.get(key)
        .ok_or_else(|| schema(ptr, format!("missing required field {key:?}")))
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str], base: &str) -> Result<()> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(schema(&format!("{base}/{key}"), "unknown field"));
        }
    }
    Ok(())
}

/// One row of rational literals, e.g. a weight, an embedding row, or a
/// membership form.
fn rational_row(v: &Value, ptr: &str, arity: usize) -> Result<Vec<Rational>> {
    let items = as_array(v, ptr)?;
    if items.len() != arity {
        return Err(schema(
            ptr,
            format!("expected {arity} rational entries, got {}", items.len()),
        ));
    }
    let mut out = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let p = format!("{ptr}/{i}");
        let s = as_str(item, &p)?;
        out.push(linalg::parse_rational(s).map_err(|e| schema(&p, e.to_string()))?);
    }
    Ok(out)
}

fn multiset(v: &Value, ptr: &str, dim_a: usize) -> Result<WeightMultiset> {
    let obj = as_object(v, ptr)?;
    reject_unknown(obj, &["dim_zero", "weights"], ptr)?;
    let dim_zero = as_usize(field(obj, "dim_zero", ptr)?, &format!("{ptr}/dim_zero"))?;
    let rows = as_array(field(obj, "weights", ptr)?, &format!("{ptr}/weights"))?;
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let p = format!("{ptr}/weights/{i}");
        let entry = as_object(row, &p)?;
        reject_unknown(entry, &["coeffs", "mult"], &p)?;
        let coeffs = as_array(field(entry, "coeffs", &p)?, &format!("{p}/coeffs"))?;
        if coeffs.len() != dim_a {
            return Err(schema(
                &format!("{p}/coeffs"),
                format!("weight has {} coordinates, chart rank is {dim_a}", coeffs.len()),
            ));
        }
        let mut lits = Vec::with_capacity(coeffs.len());
        for (j, c) in coeffs.iter().enumerate() {
            lits.push(as_str(c, &format!("{p}/coeffs/{j}"))?.to_string());
        }
        let mult = as_usize(field(entry, "mult", &p)?, &format!("{p}/mult"))?;
        parsed.push((lits, mult));
    }
    WeightMultiset::from_raw_parts(dim_zero, parsed, Some(dim_a))
        .map_err(|e| schema(ptr, e.to_string()))
}

fn ambient(v: &Value, ptr: &str, dim_a: usize) -> Result<AmbientWeyl> {
    let obj = as_object(v, ptr)?;
    reject_unknown(obj, &["dim_ag", "embed", "group_type", "a_membership"], ptr)?;
    let dim_ag = as_usize(field(obj, "dim_ag", ptr)?, &format!("{ptr}/dim_ag"))?;

    let embed_ptr = format!("{ptr}/embed");
    let embed_rows = as_array(field(obj, "embed", ptr)?, &embed_ptr)?;
    if embed_rows.len() != dim_ag {
        return Err(schema(
            &embed_ptr,
            format!("expected {dim_ag} rows, got {}", embed_rows.len()),
        ));
    }
    let mut rows = Vec::with_capacity(dim_ag);
    for (i, r) in embed_rows.iter().enumerate() {
        rows.push(rational_row(r, &format!("{embed_ptr}/{i}"), dim_a)?);
    }
    let embed = Matrix::from_rows(rows).map_err(|e| schema(&embed_ptr, e.to_string()))?;

    let type_ptr = format!("{ptr}/group_type");
    let type_str = as_str(field(obj, "group_type", ptr)?, &type_ptr)?;
    let mut components = Vec::new();
    for token in type_str.split('x') {
        components.push(WeylComponent::parse(token)?);
    }

    let memb_ptr = format!("{ptr}/a_membership");
    let memb_rows = as_array(field(obj, "a_membership", ptr)?, &memb_ptr)?;
    let mut membership = Vec::with_capacity(memb_rows.len());
    for (i, r) in memb_rows.iter().enumerate() {
        membership.push(LinearForm(rational_row(
            r,
            &format!("{memb_ptr}/{i}"),
            dim_ag,
        )?));
    }

    AmbientWeyl::new(dim_ag, embed, components, membership)
        .map_err(|e| schema(ptr, e.to_string()))
}

const TOP_FIELDS: [&str; 6] = [
    "dim_a",
    "g_weights",
    "h_weights",
    "q_weights",
    "ambient",
    "label",
];

/// Parses and validates a pair document.  Every failure carries the
/// JSON pointer of the offending value.
pub fn parse(text: &str) -> Result<HomogeneousPair> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| schema("", format!("invalid JSON: {e}")))?;
    let obj = as_object(&doc, "")?;
    reject_unknown(obj, &TOP_FIELDS, "")?;

    let dim_a = as_usize(field(obj, "dim_a", "")?, "/dim_a")?;
    let label = as_str(field(obj, "label", "")?, "/label")?.to_string();
    let g = multiset(field(obj, "g_weights", "")?, "/g_weights", dim_a)?;
    let h = multiset(field(obj, "h_weights", "")?, "/h_weights", dim_a)?;
    let amb = match obj.get("ambient") {
        Some(Value::Null) | None => None,
        Some(v) => Some(ambient(v, "/ambient", dim_a)?),
    };

    let pair = HomogeneousPair::new(label, g, h, amb)?;

    // q is always derived; a q_weights field is a cross-check, not an input.
    if let Some(v) = obj.get("q_weights") {
        if !v.is_null() {
            let stated = multiset(v, "/q_weights", dim_a)?;
            if &stated != pair.q() {
                return Err(schema(
                    "/q_weights",
                    "stated q_weights differ from g minus h",
                ));
            }
        }
    }
    Ok(pair)
}

pub fn load(path: &Path) -> Result<HomogeneousPair> {
    let text = fs::read_to_string(path)
        .map_err(|e| schema("", format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

/// A bare multiset file (the `g_weights` sub-format).  Rank is inferred
/// from the first weight; an all-zero multiset gets rank 0.
pub fn load_multiset(path: &Path) -> Result<WeightMultiset> {
    let text = fs::read_to_string(path)
        .map_err(|e| schema("", format!("cannot read {}: {e}", path.display())))?;
    let doc: Value =
        serde_json::from_str(&text).map_err(|e| schema("", format!("invalid JSON: {e}")))?;
    let dim = doc
        .pointer("/weights/0/coeffs")
        .and_then(Value::as_array)
        .map_or(0, Vec::len);
    multiset(&doc, "", dim)
}

#[derive(Serialize)]
struct AmbientOut {
    dim_ag: usize,
    embed: Vec<Vec<String>>,
    group_type: String,
    a_membership: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct PairOut<'a> {
    dim_a: usize,
    g_weights: &'a WeightMultiset,
    h_weights: &'a WeightMultiset,
    q_weights: &'a WeightMultiset,
    #[serde(skip_serializing_if = "Option::is_none")]
    ambient: Option<AmbientOut>,
    label: &'a str,
}

fn row_strings(row: &[Rational]) -> Vec<String> {
    row.iter().map(linalg::format_rational).collect()
}

/// Canonical serialization: fixed field order, derived q included,
/// rationals in lowest terms, trailing newline.
pub fn canonical_json(pair: &HomogeneousPair) -> Result<String> {
    let ambient = pair.ambient().map(|a| AmbientOut {
        dim_ag: a.dim_ag(),
        embed: (0..a.embed().nrows())
            .map(|r| row_strings(a.embed().row(r)))
            .collect(),
        group_type: a.group_type(),
        a_membership: a.membership().iter().map(|f| row_strings(&f.0)).collect(),
    });
    let out = PairOut {
        dim_a: pair.dim_a(),
        g_weights: pair.g(),
        h_weights: pair.h(),
        q_weights: pair.q(),
        ambient,
        label: pair.label(),
    };
    let mut text = serde_json::to_string_pretty(&out)
        .map_err(|e| Error::Internal(format!("pair serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}
