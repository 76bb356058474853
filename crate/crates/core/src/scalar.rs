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

//! Exact ordered-field scalars, the extended line and open intervals.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// An exact ordered field element.
///
/// Every algorithm in this crate asserts equalities and strict inequalities
/// verbatim, so only exact types implement this trait. `Display` must produce
/// the canonical `p/q` (or `n`) form and `FromStr` must accept it back.
pub trait Scalar:
    Clone + Ord + fmt::Debug + fmt::Display + FromStr + Num + Signed + FromPrimitive + Send + Sync
{
    /// Largest integer not exceeding `self`.
    fn floor_int(&self) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits the scalar type")
    }

    fn ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    fn two() -> Self {
        Self::from_int(2)
    }

    fn midpoint(a: &Self, b: &Self) -> Self {
        (a.clone() + b.clone()) / Self::two()
    }
}

impl<I> Scalar for Ratio<I>
where
    I: Integer + Signed + Clone + fmt::Debug + fmt::Display + FromPrimitive + Send + Sync,
    Ratio<I>: FromStr + FromPrimitive,
{
    fn floor_int(&self) -> Self {
        self.floor()
    }
}

/// Parses a rational written as `p/q` or `n`, surrounding whitespace allowed.
pub fn parse_scalar<T: Scalar>(text: &str) -> Option<T> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    // `Ratio::from_str` accepts "p/0" only to panic later; reject it here.
    if let Some((_, d)) = text.split_once('/') {
        if d.trim().trim_start_matches('+').chars().all(|c| c == '0') {
            return None;
        }
    }
    text.parse::<T>().ok()
}

/// A point of the extended real line restricted to exact scalars.
///
/// The derived order puts `NegInf` below every finite value and `PosInf`
/// above every finite value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended<T> {
    NegInf,
    Finite(T),
    PosInf,
}

impl<T> Extended<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Extended::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn into_finite(self) -> Option<T> {
        match self {
            Extended::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }
}

impl<T: Scalar> Extended<T> {
    pub fn parse(text: &str) -> Option<Self> {
        match text.trim() {
            "inf" | "+inf" => Some(Extended::PosInf),
            "-inf" => Some(Extended::NegInf),
            other => parse_scalar(other).map(Extended::Finite),
        }
    }

    pub fn lt_finite(&self, v: &T) -> bool {
        match self {
            Extended::NegInf => true,
            Extended::Finite(x) => x < v,
            Extended::PosInf => false,
        }
    }

    pub fn gt_finite(&self, v: &T) -> bool {
        match self {
            Extended::NegInf => false,
            Extended::Finite(x) => x > v,
            Extended::PosInf => true,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Extended<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => f.write_str("-inf"),
            Extended::Finite(v) => v.fmt(f),
            Extended::PosInf => f.write_str("inf"),
        }
    }
}

impl<T> From<T> for Extended<T> {
    fn from(v: T) -> Self {
        Extended::Finite(v)
    }
}

/// A nonempty open interval `(left, right)` of the extended line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpenInterval<T> {
    left: Extended<T>,
    right: Extended<T>,
}

impl<T: Scalar> OpenInterval<T> {
    /// Returns `None` unless `left < right` and neither end is an infinity
    /// on the wrong side.
    pub fn new(left: Extended<T>, right: Extended<T>) -> Option<Self> {
        if left >= right || left == Extended::PosInf || right == Extended::NegInf {
            return None;
        }
        Some(OpenInterval { left, right })
    }

    pub fn bounded(left: T, right: T) -> Option<Self> {
        Self::new(Extended::Finite(left), Extended::Finite(right))
    }

    pub fn left(&self) -> &Extended<T> {
        &self.left
    }

    pub fn right(&self) -> &Extended<T> {
        &self.right
    }

    pub fn contains(&self, x: &T) -> bool {
        self.left.lt_finite(x) && self.right.gt_finite(x)
    }

    pub fn is_bounded(&self) -> bool {
        self.left.is_finite() && self.right.is_finite()
    }
}

impl<T: fmt::Display> fmt::Display for OpenInterval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(s: &str) -> Rational {
        parse_scalar(s).unwrap()
    }

    #[test]
    fn extended_order() {
        let a: Extended<Rational> = Extended::NegInf;
        let b = Extended::Finite(q("-1000000"));
        let c = Extended::Finite(q("7/3"));
        assert!(a < b && b < c && c < Extended::PosInf);
    }

    #[test]
    fn parse_canonical_forms() {
        assert_eq!(q("6/4").to_string(), "3/2");
        assert_eq!(q("-4/2").to_string(), "-2");
        assert_eq!(q(" 5 ").to_string(), "5");
        assert!(parse_scalar::<Rational>("1/0").is_none());
        assert!(parse_scalar::<Rational>("1.5").is_none());
        assert!(parse_scalar::<Rational>("").is_none());
        assert_eq!(Extended::<Rational>::parse("-inf"), Some(Extended::NegInf));
        assert_eq!(Extended::<Rational>::parse("inf"), Some(Extended::PosInf));
    }

    #[test]
    fn open_interval_membership() {
        let i = OpenInterval::bounded(q("0"), q("2")).unwrap();
        assert!(i.contains(&q("1")));
        assert!(!i.contains(&q("0")));
        assert!(!i.contains(&q("2")));
        assert!(OpenInterval::bounded(q("2"), q("2")).is_none());
        let r = OpenInterval::<Rational>::new(Extended::NegInf, Extended::PosInf).unwrap();
        assert!(r.contains(&q("-99999999999999999999")));
        assert!(OpenInterval::<Rational>::new(Extended::PosInf, Extended::PosInf).is_none());
    }

    #[test]
    fn floor_of_negative_fraction() {
        assert_eq!(q("-1/2").floor_int(), q("-1"));
        assert_eq!(q("4/3").floor_int(), q("1"));
    }
}
