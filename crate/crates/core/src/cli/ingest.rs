//! Reading parameter, sequence and operator files.
//!
//! Numbers are parsed from their literal text, so `0.1` becomes `1/10`
//! exactly. Strings of the form `"p/q"` are accepted wherever a number is.

use std::path::Path;

use num_traits::One;
use serde_json::{Map, Value};

use crate::compact::OperatorSpec;
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational};
use crate::sequence::{ExponentSequence, Preset, SequenceFamily, SpaceParams};

/// What a sequence file describes.
#[derive(Clone, Debug, PartialEq)]
pub enum SequenceSource {
    Family(SequenceFamily),
    /// A named triple `(r, s, t)`.
    Preset(Preset),
}

fn parse_error(what: impl Into<String>) -> Error {
    Error::Parse { what: what.into(), line: None, offset: None }
}

pub fn read_text(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

pub fn parse_json(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}

/// A number, or a string holding a rational literal.
pub fn rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => Err(parse_error(format!("expected a number, found `{other}`"))),
    }
}

pub fn rational_array(v: &Value) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| parse_error(format!("expected an array of numbers, found `{v}`")))?
        .iter()
        .enumerate()
        .map(|(i, x)| rational_value(x).map_err(|e| parse_error(format!("entry {i}: {e}"))))
        .collect()
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| parse_error(format!("missing field `{key}`")))
}

/// Single-column CSV: one number per nonblank line, `#` starts a comment.
pub fn parse_csv_column(text: &str) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (i, line) in text.split_inclusive('\n').enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if !body.is_empty() {
            if body.contains(',') {
                return Err(Error::Parse {
                    what: "expected a single column".into(),
                    line: Some(i + 1),
                    offset: Some(offset),
                });
            }
            let q = parse_rational(body).map_err(|e| Error::Parse {
                what: match e {
                    Error::Parse { what, .. } => what,
                    other => other.to_string(),
                },
                line: Some(i + 1),
                offset: Some(offset),
            })?;
            out.push(q);
        }
        offset += line.len();
    }
    Ok(out)
}

fn looks_like_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('{') | Some('['))
}

/// A sequence description from inline JSON.
pub fn sequence_from_value(v: &Value) -> Result<SequenceFamily> {
    match v {
        Value::Number(_) | Value::String(_) => Ok(SequenceFamily::Constant(rational_value(v)?)),
        Value::Array(_) => Ok(SequenceFamily::explicit(rational_array(v)?)),
        Value::Object(obj) => {
            if let Some(values) = obj.get("values") {
                let prefix = rational_array(values)?;
                let tail = obj.get("tail").map(sequence_from_value).transpose()?.map(Box::new);
                return Ok(SequenceFamily::Explicit { prefix, tail });
            }
            if let Some(c) = obj.get("constant") {
                return Ok(SequenceFamily::Constant(rational_value(c)?));
            }
            if let Some(Value::Object(a)) = obj.get("arithmetic") {
                return Ok(SequenceFamily::Arithmetic {
                    start: rational_value(field(a, "start")?)?,
                    step: rational_value(field(a, "step")?)?,
                });
            }
            if let Some(Value::Object(g)) = obj.get("geometric") {
                return Ok(SequenceFamily::Geometric {
                    start: rational_value(field(g, "start")?)?,
                    ratio: rational_value(field(g, "ratio")?)?,
                });
            }
            if let Some(inner) = obj.get("reciprocal") {
                return Ok(SequenceFamily::Reciprocal(Box::new(sequence_from_value(inner)?)));
            }
            if let Some(inner) = obj.get("difference") {
                return Ok(SequenceFamily::BackwardDifference(Box::new(sequence_from_value(inner)?)));
            }
            if let Some(Value::Array(parts)) = obj.get("sum") {
                let mut it = parts.iter().map(sequence_from_value);
                let first = it.next().ok_or_else(|| parse_error("empty `sum`"))??;
                return it.try_fold(first, |acc, next| Ok(SequenceFamily::Sum(Box::new(acc), Box::new(next?))));
            }
            Err(parse_error(format!(
                "unrecognised sequence object with keys {:?}",
                obj.keys().collect::<Vec<_>>()
            )))
        }
        other => Err(parse_error(format!("cannot read a sequence from `{other}`"))),
    }
}

/// Resolves a preset name with optional arguments.
pub fn preset_from_name(name: &str, args: Option<&Value>) -> Result<Preset> {
    let empty = Map::new();
    let args = match args {
        Some(Value::Object(a)) => a,
        Some(Value::Null) | None => &empty,
        Some(other) => return Err(parse_error(format!("preset arguments must be an object, found `{other}`"))),
    };
    let counting = || SequenceFamily::Arithmetic { start: Rational::one(), step: Rational::one() };
    let seq = |key: &str, default: SequenceFamily| -> Result<SequenceFamily> {
        args.get(key).map(sequence_from_value).transpose().map(|s| s.unwrap_or(default))
    };
    match name {
        "weighted-mean" => Ok(Preset::WeightedMean {
            u: seq("u", SequenceFamily::Reciprocal(Box::new(counting())))?,
            v: seq("v", SequenceFamily::ones())?,
        }),
        "cesaro-alpha" => Ok(Preset::CesaroAlpha {
            alpha: args.get("alpha").map(rational_value).transpose()?.unwrap_or_else(Preset::default_alpha),
        }),
        "lambda" => Ok(Preset::Lambda { lambda: seq("lambda", counting())? }),
        other => Err(Error::Validation(format!("unknown preset `{other}` (known: {})", Preset::NAMES.join(", ")))),
    }
}

pub fn sequence_source_from_value(v: &Value) -> Result<SequenceSource> {
    if let Some(name) = v.get("preset").and_then(Value::as_str) {
        return Ok(SequenceSource::Preset(preset_from_name(name, v.get("args"))?));
    }
    Ok(SequenceSource::Family(sequence_from_value(v)?))
}

/// Reads a sequence file: JSON (`{"values":[..]}`, `{"preset":..}`, other
/// family forms) or a single-column CSV.
pub fn ingest_sequence(path: &Path) -> Result<SequenceSource> {
    let text = read_text(path)?;
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) || !looks_like_json(&text);
    if is_csv {
        Ok(SequenceSource::Family(SequenceFamily::explicit(parse_csv_column(&text)?)))
    } else {
        sequence_source_from_value(&parse_json(&text)?)
    }
}

/// A plain vector from a JSON array, a `{"values":[..]}` object or CSV.
pub fn ingest_vector(path: &Path) -> Result<Vec<Rational>> {
    let text = read_text(path)?;
    if !looks_like_json(&text) || path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        return parse_csv_column(&text);
    }
    vector_from_value(&parse_json(&text)?)
}

pub fn vector_from_value(v: &Value) -> Result<Vec<Rational>> {
    match v {
        Value::Array(_) => rational_array(v),
        Value::Object(obj) => rational_array(field(obj, "values")?),
        other => Err(parse_error(format!("expected a vector, found `{other}`"))),
    }
}

pub fn exponent_from_value(v: &Value) -> Result<ExponentSequence> {
    match v {
        Value::Array(items) => ExponentSequence::list(
            items.iter().map(|x| rational_value(x).map(|q| crate::scalar::Scalar::to_f64(&q))).collect::<Result<_>>()?,
        ),
        _ => ExponentSequence::constant(crate::scalar::Scalar::to_f64(&rational_value(v)?)),
    }
}

/// `{"preset": name, "args": {..}, "m": .., "p": ..}` or
/// `{"r": .., "s": .., "t": .., "m": .., "p": ..}`. `m` and `p` fall back
/// to the given defaults.
pub fn params_from_value(v: &Value, default_m: usize, default_p: Option<f64>) -> Result<SpaceParams> {
    let obj = v.as_object().ok_or_else(|| parse_error("parameters must be a JSON object"))?;
    let obj = match obj.get("params") {
        Some(Value::Object(inner)) => inner,
        _ => obj,
    };
    let m = match obj.get("m") {
        Some(m) => m.as_u64().ok_or_else(|| parse_error("`m` must be a nonnegative integer"))? as usize,
        None => default_m,
    };
    if m == 0 {
        return Err(Error::Validation("difference order m must be at least 1".into()));
    }
    let p = match (obj.get("p"), default_p) {
        (Some(p), _) => exponent_from_value(p)?,
        (None, Some(p)) => ExponentSequence::constant(p)?,
        (None, None) => return Err(Error::Validation("no exponent p given".into())),
    };
    if let Some(name) = obj.get("preset") {
        let name = name.as_str().ok_or_else(|| parse_error("`preset` must be a string"))?;
        return SpaceParams::from_preset(&preset_from_name(name, obj.get("args"))?, m, p);
    }
    SpaceParams::new(
        sequence_from_value(field(obj, "r")?)?,
        sequence_from_value(field(obj, "s")?)?,
        sequence_from_value(field(obj, "t")?)?,
        m,
        p,
    )
}

pub fn ingest_params(path: &Path, default_m: usize, default_p: Option<f64>) -> Result<SpaceParams> {
    params_from_value(&parse_json(&read_text(path)?)?, default_m, default_p)
}

/// Operator descriptors: a dense `[[..]]` matrix, or one of the objects
/// `{"dense"}`, `{"sparse": [[[k, v], ..], ..]}`, `{"banded": [[offset, v], ..]}`,
/// `{"geometric": {"scale", "rowRatio", "colRatio"}}`,
/// `{"column": {"k", "values"}}`, `"identity"`, `"zero"`.
pub fn operator_from_value(v: &Value) -> Result<OperatorSpec> {
    let op = match v {
        Value::String(s) if s == "identity" => OperatorSpec::identity(),
        Value::String(s) if s == "zero" => OperatorSpec::zero(),
        Value::Array(rows) => OperatorSpec::from_dense(rows.iter().map(rational_array).collect::<Result<_>>()?),
        Value::Object(obj) => {
            let obj = match obj.get("A").or_else(|| obj.get("operator")) {
                Some(inner) => return operator_from_value(inner),
                None => obj,
            };
            if let Some(d) = obj.get("dense") {
                operator_from_value(d)?
            } else if let Some(Value::Array(rows)) = obj.get("sparse") {
                let rows = rows
                    .iter()
                    .map(|row| {
                        row.as_array()
                            .ok_or_else(|| parse_error("sparse rows must be arrays of [k, value] pairs"))?
                            .iter()
                            .map(|pair| pair_of(pair, "sparse entry"))
                            .map(|r| r.and_then(|(k, v)| Ok((index_of(&k)?, v))))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<_>>()?;
                OperatorSpec::Sparse(rows)
            } else if let Some(Value::Array(diags)) = obj.get("banded") {
                OperatorSpec::Banded(
                    diags
                        .iter()
                        .map(|d| {
                            let (o, v) = pair_of(d, "banded diagonal")?;
                            let o = o.as_i64().ok_or_else(|| parse_error("diagonal offset must be an integer"))?;
                            Ok((o, v))
                        })
                        .collect::<Result<_>>()?,
                )
            } else if let Some(Value::Object(g)) = obj.get("geometric") {
                OperatorSpec::Geometric {
                    scale: g.get("scale").map(rational_value).transpose()?.unwrap_or_else(Rational::one),
                    row_ratio: rational_value(field(g, "rowRatio")?)?,
                    col_ratio: rational_value(field(g, "colRatio")?)?,
                }
            } else if let Some(Value::Object(c)) = obj.get("column") {
                OperatorSpec::Column { column: index_of(field(c, "k")?)?, values: sequence_from_value(field(c, "values")?)? }
            } else {
                return Err(parse_error(format!(
                    "unrecognised operator object with keys {:?}",
                    obj.keys().collect::<Vec<_>>()
                )));
            }
        }
        other => return Err(parse_error(format!("cannot read an operator from `{other}`"))),
    };
    op.validate()?;
    Ok(op)
}

fn index_of(v: &Value) -> Result<usize> {
    v.as_u64().map(|k| k as usize).ok_or_else(|| parse_error(format!("expected a column index, found `{v}`")))
}

fn pair_of(v: &Value, what: &str) -> Result<(Value, Rational)> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok((a.clone(), rational_value(b)?)),
        _ => Err(parse_error(format!("{what} must be a two-element array, found `{v}`"))),
    }
}

pub fn ingest_operator(path: &Path) -> Result<OperatorSpec> {
    operator_from_value(&parse_json(&read_text(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational_from_ratio;
    use serde_json::json;

    #[test]
    fn values_object_is_an_explicit_prefix() {
        let s = sequence_from_value(&json!({"values": [1, 2, 3]})).unwrap();
        assert_eq!(s.terms(3).unwrap(), vec![rational_from_ratio(1, 1), rational_from_ratio(2, 1), rational_from_ratio(3, 1)]);
        assert!(matches!(s.term(3), Err(Error::Range { index: 3, len: 3 })));
    }

    #[test]
    fn decimals_are_exact() {
        let v: Value = serde_json::from_str("[0.1, 1e-3, \"2/3\"]").unwrap();
        let q = rational_array(&v).unwrap();
        assert_eq!(q, vec![rational_from_ratio(1, 10), rational_from_ratio(1, 1000), rational_from_ratio(2, 3)]);
    }

    #[test]
    fn csv_column() {
        assert_eq!(parse_csv_column("1.5\n-2\n").unwrap(), vec![rational_from_ratio(3, 2), rational_from_ratio(-2, 1)]);
        match parse_csv_column("1\n\nabc\n") {
            Err(Error::Parse { line: Some(3), offset: Some(3), .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cesaro_alpha_preset() {
        let src = sequence_source_from_value(&json!({"preset": "cesaro-alpha", "args": {"alpha": 0.5}})).unwrap();
        let SequenceSource::Preset(p) = src else { panic!() };
        let (r, s, t) = p.sequences();
        assert_eq!(r.term(4).unwrap(), rational_from_ratio(5, 1));
        assert_eq!(s.term(4).unwrap(), rational_from_ratio(1, 1));
        assert_eq!(t.term(3).unwrap(), rational_from_ratio(9, 8));
    }

    #[test]
    fn operator_forms() {
        let g = operator_from_value(&json!({"geometric": {"rowRatio": 0.5, "colRatio": 0.5}})).unwrap();
        assert_eq!(g.entry(1, 2).unwrap(), rational_from_ratio(1, 8));
        let d = operator_from_value(&json!([[1, 2], [3, 4]])).unwrap();
        assert_eq!(d.entry(1, 0).unwrap(), rational_from_ratio(3, 1));
        let s = operator_from_value(&json!({"sparse": [[[2, "1/3"]]]})).unwrap();
        assert_eq!(s.entry(0, 2).unwrap(), rational_from_ratio(1, 3));
        let b = operator_from_value(&json!({"banded": [[0, 1], [-1, -1]]})).unwrap();
        assert_eq!(b.entry(3, 2).unwrap(), rational_from_ratio(-1, 1));
        assert!(operator_from_value(&json!({"geometric": {"rowRatio": 1, "colRatio": 2}})).is_err());
    }

    #[test]
    fn params_inline_and_preset() {
        let p = params_from_value(&json!({"r": 1, "s": 1, "t": 1, "m": 2, "p": 2}), 1, None).unwrap();
        assert_eq!(p.m, 2);
        let p = params_from_value(&json!({"preset": "weighted-mean"}), 1, Some(1.5)).unwrap();
        assert_eq!(p.p.as_constant(), Some(1.5));
        assert!(params_from_value(&json!({"preset": "nope"}), 1, Some(2.0)).is_err());
    }
}
