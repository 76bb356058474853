// Copyright 2026 The gqam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! JSON function-spec documents.
//!
//! ```json
//! {
//!   "interval": {"left": "0", "right": "2"},
//!   "segments": [
//!     {"from": "0", "to": "1", "value_from": "0", "value_to": "1"},
//!     {"from": "1", "to": "2", "value_from": "2", "value_to": "3"}
//!   ],
//!   "nodes": [{"x": "1", "value": "1"}]
//! }
//! ```
//!
//! Rationals are strings `"p/q"` / `"n"` or JSON integers; interval ends may
//! be `"-inf"` / `"inf"`. At an infinite segment end the value is replaced by
//! `{"anchor_x": .., "anchor_value": .., "slope": ..}`. The same layout,
//! minus `nodes`, serializes continuous functions.

use serde_json::{json, Map, Value};

use crate::continuous::ContinuousPwl;
use crate::error::{Error, Result};
use crate::monotone::MonotonePwl;
use crate::scalar::{parse_scalar, Extended, OpenInterval, Scalar};
use crate::segment::Segment;

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedSpec(msg.into())
}

pub fn scalar_from_json<T: Scalar>(v: &Value, what: &str) -> Result<T> {
    match v {
        Value::String(s) => {
            parse_scalar(s).ok_or_else(|| malformed(format!("{what}: cannot parse rational {s:?}")))
        }
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_scalar(&n.to_string())
            .ok_or_else(|| malformed(format!("{what}: integer {n} out of range"))),
        other => Err(malformed(format!(
            "{what}: expected a rational string or integer, got {other}"
        ))),
    }
}

fn extended_from_json<T: Scalar>(v: &Value, what: &str) -> Result<Extended<T>> {
    match v {
        Value::String(s) => Extended::parse(s)
            .ok_or_else(|| malformed(format!("{what}: cannot parse endpoint {s:?}"))),
        other => scalar_from_json(other, what).map(Extended::Finite),
    }
}

pub fn scalar_to_json<T: Scalar>(v: &T) -> Value {
    Value::String(v.to_string())
}

fn extended_to_json<T: Scalar>(v: &Extended<T>) -> Value {
    Value::String(v.to_string())
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| malformed(format!("{what}: missing key {key:?}")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| malformed(format!("{what}: expected an object")))
}

enum EndValue<T> {
    Value(T),
    Anchor { x: T, value: T, slope: T },
}

fn end_value<T: Scalar>(v: &Value, what: &str) -> Result<EndValue<T>> {
    match v {
        Value::Object(o) => Ok(EndValue::Anchor {
            x: scalar_from_json(field(o, "anchor_x", what)?, what)?,
            value: scalar_from_json(field(o, "anchor_value", what)?, what)?,
            slope: scalar_from_json(field(o, "slope", what)?, what)?,
        }),
        other => scalar_from_json(other, what).map(EndValue::Value),
    }
}

fn segment_from_json<T: Scalar>(v: &Value, index: usize) -> Result<Segment<T>> {
    let what = format!("segments[{index}]");
    let o = as_object(v, &what)?;
    let from: Extended<T> = extended_from_json(field(o, "from", &what)?, &what)?;
    let to: Extended<T> = extended_from_json(field(o, "to", &what)?, &what)?;
    let vf = end_value::<T>(field(o, "value_from", &what)?, &what)?;
    let vt = end_value::<T>(field(o, "value_to", &what)?, &what)?;

    let anchored = |a: &EndValue<T>| -> Option<Result<Segment<T>>> {
        match a {
            EndValue::Anchor { x, value, slope } => Some(Segment::anchored(
                from.clone(),
                to.clone(),
                x.clone(),
                value.clone(),
                slope.clone(),
            )),
            EndValue::Value(_) => None,
        }
    };
    let seg = match (&vf, &vt) {
        (EndValue::Value(a), EndValue::Value(b)) => match (&from, &to) {
            (Extended::Finite(x0), Extended::Finite(x1)) => {
                Segment::through(x0.clone(), x1.clone(), a.clone(), b.clone())?
            }
            _ => {
                return Err(malformed(format!(
                    "{what}: an infinite endpoint needs an anchor object"
                )))
            }
        },
        _ => anchored(&vf)
            .or_else(|| anchored(&vt))
            .expect("one side anchored")?,
    };
    // Every finite end value, and every anchor, must lie on the same line.
    for (end, val) in [(&from, &vf), (&to, &vt)] {
        match (end, val) {
            (Extended::Finite(x), EndValue::Value(v)) => {
                if seg.at(x) != *v {
                    return Err(Error::InvariantViolation(format!(
                        "{what}: value {v} at {x} is off the anchored line"
                    )));
                }
            }
            (_, EndValue::Anchor { x, value, slope }) => {
                if seg.slope() != slope || seg.at(x) != *value {
                    return Err(Error::InvariantViolation(format!(
                        "{what}: the two anchors describe different lines"
                    )));
                }
            }
            (_, EndValue::Value(_)) => {
                return Err(malformed(format!(
                    "{what}: an infinite endpoint needs an anchor object"
                )))
            }
        }
    }
    Ok(seg)
}

fn interval_from_json<T: Scalar>(doc: &Map<String, Value>) -> Result<OpenInterval<T>> {
    let o = as_object(field(doc, "interval", "document")?, "interval")?;
    let left = extended_from_json(field(o, "left", "interval")?, "interval.left")?;
    let right = extended_from_json(field(o, "right", "interval")?, "interval.right")?;
    OpenInterval::new(left, right)
        .ok_or_else(|| Error::InvariantViolation("interval is empty".into()))
}

fn segments_from_json<T: Scalar>(doc: &Map<String, Value>) -> Result<Vec<Segment<T>>> {
    field(doc, "segments", "document")?
        .as_array()
        .ok_or_else(|| malformed("segments: expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, s)| segment_from_json(s, i))
        .collect()
}

fn check_span<T: Scalar>(declared: &OpenInterval<T>, actual: &OpenInterval<T>) -> Result<()> {
    if declared != actual {
        return Err(Error::InvariantViolation(format!(
            "segments cover {actual} but the interval is {declared}"
        )));
    }
    Ok(())
}

fn parse_document(text: &str) -> Result<Map<String, Value>> {
    let v: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    match v {
        Value::Object(o) => Ok(o),
        _ => Err(malformed("document: expected an object")),
    }
}

/// Parses and validates a generator from a function-spec document.
pub fn parse_function<T: Scalar>(text: &str) -> Result<MonotonePwl<T>> {
    function_from_value(&Value::Object(parse_document(text)?))
}

pub fn function_from_value<T: Scalar>(v: &Value) -> Result<MonotonePwl<T>> {
    let doc = as_object(v, "document")?;
    let interval = interval_from_json(doc)?;
    let segments = segments_from_json(doc)?;
    let nodes = match doc.get("nodes") {
        None => Vec::new(),
        Some(n) => n
            .as_array()
            .ok_or_else(|| malformed("nodes: expected an array"))?
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let what = format!("nodes[{i}]");
                let o = as_object(n, &what)?;
                Ok((
                    scalar_from_json(field(o, "x", &what)?, &what)?,
                    scalar_from_json(field(o, "value", &what)?, &what)?,
                ))
            })
            .collect::<Result<Vec<(T, T)>>>()?,
    };
    let f = MonotonePwl::new(segments, &nodes)?;
    check_span(&interval, f.interval())?;
    Ok(f)
}

/// Parses a continuous increasing function (same layout, no nodes).
pub fn parse_continuous<T: Scalar>(text: &str) -> Result<ContinuousPwl<T>> {
    continuous_from_value(&Value::Object(parse_document(text)?))
}

pub fn continuous_from_value<T: Scalar>(v: &Value) -> Result<ContinuousPwl<T>> {
    let doc = as_object(v, "document")?;
    let interval = interval_from_json(doc)?;
    let f = ContinuousPwl::new(segments_from_json(doc)?)?;
    check_span(&interval, f.domain())?;
    Ok(f)
}

fn end_to_json<T: Scalar>(seg: &Segment<T>, end: &Extended<T>) -> Value {
    match end {
        Extended::Finite(x) => scalar_to_json(&seg.at(x)),
        _ => {
            let anchor = [seg.from(), seg.to()]
                .into_iter()
                .find_map(|e| e.finite().cloned())
                .unwrap_or_else(T::zero);
            json!({
                "anchor_x": scalar_to_json(&anchor),
                "anchor_value": scalar_to_json(&seg.at(&anchor)),
                "slope": scalar_to_json(seg.slope()),
            })
        }
    }
}

fn segments_to_json<T: Scalar>(segments: &[Segment<T>]) -> Value {
    Value::Array(
        segments
            .iter()
            .map(|s| {
                json!({
                    "from": extended_to_json(s.from()),
                    "to": extended_to_json(s.to()),
                    "value_from": end_to_json(s, s.from()),
                    "value_to": end_to_json(s, s.to()),
                })
            })
            .collect(),
    )
}

pub fn interval_to_json<T: Scalar>(i: &OpenInterval<T>) -> Value {
    json!({"left": extended_to_json(i.left()), "right": extended_to_json(i.right())})
}

pub fn function_to_value<T: Scalar>(f: &MonotonePwl<T>) -> Value {
    let nodes: Vec<Value> = f
        .jumps()
        .iter()
        .map(|j| json!({"x": scalar_to_json(j.x()), "value": scalar_to_json(j.value())}))
        .collect();
    json!({
        "interval": interval_to_json(f.interval()),
        "segments": segments_to_json(f.segments()),
        "nodes": nodes,
    })
}

pub fn continuous_to_value<T: Scalar>(f: &ContinuousPwl<T>) -> Value {
    json!({
        "interval": interval_to_json(f.domain()),
        "segments": segments_to_json(f.pieces()),
    })
}

/// Pretty-printed function-spec document with a trailing newline.
pub fn function_to_string<T: Scalar>(f: &MonotonePwl<T>) -> String {
    pretty(&function_to_value(f))
}

pub fn continuous_to_string<T: Scalar>(f: &ContinuousPwl<T>) -> String {
    pretty(&continuous_to_value(f))
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{j_function, q};
    use crate::Rational;

    const J: &str = r#"{
        "interval": {"left": "0", "right": 2},
        "segments": [
            {"from": 0, "to": "1", "value_from": "0", "value_to": "1"},
            {"from": "1", "to": "2", "value_from": "2", "value_to": "3"}
        ],
        "nodes": [{"x": "1", "value": "1"}]
    }"#;

    #[test]
    fn parses_j() {
        let f: MonotonePwl<Rational> = parse_function(J).unwrap();
        assert_eq!(f, j_function());
        let j = &f.jumps()[0];
        assert_eq!((j.left_limit(), j.right_limit()), (&q("1"), &q("2")));
    }

    #[test]
    fn identity_has_one_segment() {
        let text = r#"{"interval": {"left": "0", "right": "2"},
            "segments": [{"from": "0", "to": "2", "value_from": "0", "value_to": "2"}]}"#;
        let f: MonotonePwl<Rational> = parse_function(text).unwrap();
        assert_eq!(f.segments().len(), 1);
        assert!(f.jumps().is_empty());
    }

    #[test]
    fn node_value_outside_gap() {
        let bad = J.replace(r#""value": "1""#, r#""value": "5""#);
        assert!(matches!(
            parse_function::<Rational>(&bad),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn syntax_errors_are_malformed() {
        for text in [
            "not json",
            "[]",
            r#"{"interval": {"left": "0", "right": "2"}}"#,
            r#"{"interval": {"left": "0", "right": "2"}, "segments": [{"from": "0", "to": "2", "value_from": 0.5, "value_to": "2"}]}"#,
            r#"{"interval": {"left": "0", "right": "inf"}, "segments": [{"from": "0", "to": "inf", "value_from": "0", "value_to": "2"}]}"#,
        ] {
            assert!(
                matches!(
                    parse_function::<Rational>(text),
                    Err(Error::MalformedSpec(_))
                ),
                "{text}"
            );
        }
    }

    #[test]
    fn interval_must_match_segments() {
        let text = r#"{"interval": {"left": "0", "right": "3"},
            "segments": [{"from": "0", "to": "2", "value_from": "0", "value_to": "2"}]}"#;
        assert!(matches!(
            parse_function::<Rational>(text),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn anchored_rays() {
        let text = r#"{"interval": {"left": "-inf", "right": "inf"},
            "segments": [
              {"from": "-inf", "to": "0", "value_from": {"anchor_x": "0", "anchor_value": "0", "slope": "1"}, "value_to": "0"},
              {"from": "0", "to": "inf", "value_from": "1", "value_to": {"anchor_x": "1", "anchor_value": "3", "slope": "2"}}
            ],
            "nodes": [{"x": "0", "value": "1/2"}]}"#;
        let f: MonotonePwl<Rational> = parse_function(text).unwrap();
        assert_eq!(f.eval(&q("-3")).unwrap(), q("-3"));
        assert_eq!(f.eval(&q("0")).unwrap(), q("1/2"));
        let back: MonotonePwl<Rational> = parse_function(&function_to_string(&f)).unwrap();
        assert_eq!(back, f);

        let inconsistent = text.replace(r#""value_to": "0""#, r#""value_to": "1""#);
        assert!(matches!(
            parse_function::<Rational>(&inconsistent),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let inv = j_function().generalized_inverse();
        let text = continuous_to_string(&inv);
        assert_eq!(parse_continuous::<Rational>(&text).unwrap(), inv);
    }
}
