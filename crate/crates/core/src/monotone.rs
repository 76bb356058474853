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

//! Strictly increasing piecewise-linear functions with finitely many jumps.
//!
//! A [`MonotonePwl`] is stored as an ordered partition of its open interval
//! into affine segments. Interior boundaries where the adjacent one-sided
//! limits differ are [`JumpNode`]s and carry an explicit value anywhere in
//! the closed gap; the remaining boundaries are knots where the function is
//! continuous and only the slope may change.

use std::fmt;

use crate::continuous::ContinuousPwl;
use crate::error::{out_of_domain, Error, Result};
use crate::scalar::{Extended, OpenInterval, Scalar};
use crate::segment::Segment;
use crate::Rational;

/// Discontinuity of a monotone generator: `left_limit <= value <= right_limit`
/// with `left_limit < right_limit`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JumpNode<T> {
    x: T,
    left_limit: T,
    value: T,
    right_limit: T,
}

impl<T: Scalar> JumpNode<T> {
    pub fn x(&self) -> &T {
        &self.x
    }

    pub fn left_limit(&self) -> &T {
        &self.left_limit
    }

    pub fn value(&self) -> &T {
        &self.value
    }

    pub fn right_limit(&self) -> &T {
        &self.right_limit
    }

    pub fn is_lower_semicontinuous(&self) -> bool {
        self.value == self.left_limit
    }

    pub fn is_upper_semicontinuous(&self) -> bool {
        self.value == self.right_limit
    }
}

/// Outcome of locating `f^(-1)(u)` relative to a point `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InverseRelation {
    /// `f^(-1)(u) = x`
    Eq,
    /// `f^(-1)(u) < x`
    Lt,
    /// `f^(-1)(u) <= x`
    Le,
    /// `f^(-1)(u) > x`
    Gt,
    /// `f^(-1)(u) >= x`
    Ge,
}

impl fmt::Display for InverseRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InverseRelation::Eq => "INVERSE_EQ",
            InverseRelation::Lt => "INVERSE_LT",
            InverseRelation::Le => "INVERSE_LE",
            InverseRelation::Gt => "INVERSE_GT",
            InverseRelation::Ge => "INVERSE_GE",
        })
    }
}

/// A strictly increasing piecewise-linear function on an open interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotonePwl<T: Scalar = Rational> {
    interval: OpenInterval<T>,
    segments: Vec<Segment<T>>,
    jumps: Vec<JumpNode<T>>,
    knots: Vec<T>,
}

impl<T: Scalar> MonotonePwl<T> {
    /// Builds and validates a generator from its segments and the values at
    /// interior boundaries.
    ///
    /// `nodes` must name every boundary where the adjacent limits differ; at
    /// a knot a node is optional and must equal the common limit.
    pub fn new(segments: Vec<Segment<T>>, nodes: &[(T, T)]) -> Result<Self> {
        let (first, last) = match (segments.first(), segments.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(Error::InvariantViolation("no segments".into())),
        };
        let interval = OpenInterval::new(first.from().clone(), last.to().clone())
            .ok_or_else(|| Error::InvariantViolation("segments do not span an interval".into()))?;
        for (i, seg) in segments.iter().enumerate() {
            if !seg.slope().is_positive() {
                return Err(Error::InvariantViolation(format!(
                    "segment {i} on ({}, {}) has non-positive slope {}",
                    seg.from(),
                    seg.to(),
                    seg.slope()
                )));
            }
        }

        let mut sorted_nodes: Vec<&(T, T)> = nodes.iter().collect();
        sorted_nodes.sort_by(|a, b| a.0.cmp(&b.0));
        for w in sorted_nodes.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvariantViolation(format!(
                    "duplicate node at x = {}",
                    w[0].0
                )));
            }
        }
        let mut node_iter = sorted_nodes.into_iter().peekable();

        let mut jumps = Vec::new();
        let mut knots = Vec::new();
        for (i, pair) in segments.windows(2).enumerate() {
            let (left, right) = (&pair[0], &pair[1]);
            if left.to() != right.from() {
                return Err(Error::InvariantViolation(format!(
                    "segments {i} and {} do not share a boundary ({} vs {})",
                    i + 1,
                    left.to(),
                    right.from()
                )));
            }
            let b = left.to().finite().cloned().ok_or_else(|| {
                Error::InvariantViolation(format!("infinite interior boundary after segment {i}"))
            })?;
            if let Some((x, _)) = node_iter.peek() {
                if *x < b {
                    return Err(Error::InvariantViolation(format!(
                        "node at x = {x} is not a segment boundary"
                    )));
                }
            }
            let given = match node_iter.peek() {
                Some((x, v)) if *x == b => {
                    let v = v.clone();
                    node_iter.next();
                    Some(v)
                }
                _ => None,
            };
            let lo = left.at(&b);
            let hi = right.at(&b);
            match lo.cmp(&hi) {
                std::cmp::Ordering::Greater => {
                    return Err(Error::InvariantViolation(format!(
                        "decreasing across x = {b}: left limit {lo} > right limit {hi}"
                    )));
                }
                std::cmp::Ordering::Equal => {
                    if let Some(v) = given {
                        if v != lo {
                            return Err(Error::InvariantViolation(format!(
                                "node value {v} at continuity knot x = {b} differs from the limit {lo}"
                            )));
                        }
                    }
                    knots.push(b);
                }
                std::cmp::Ordering::Less => {
                    let v = given.ok_or_else(|| {
                        Error::InvariantViolation(format!(
                            "missing node value at jump x = {b} (limits {lo}, {hi})"
                        ))
                    })?;
                    if v < lo || v > hi {
                        return Err(Error::InvariantViolation(format!(
                            "node value {v} at x = {b} outside [{lo}, {hi}]"
                        )));
                    }
                    jumps.push(JumpNode {
                        x: b,
                        left_limit: lo,
                        value: v,
                        right_limit: hi,
                    });
                }
            }
        }
        if let Some((x, _)) = node_iter.next() {
            return Err(Error::InvariantViolation(format!(
                "node at x = {x} is not a segment boundary"
            )));
        }
        Ok(MonotonePwl {
            interval,
            segments,
            jumps,
            knots,
        })
    }

    /// The affine function `slope * x + intercept` on `interval`.
    pub fn affine(interval: OpenInterval<T>, slope: T, intercept: T) -> Result<Self> {
        let seg = Segment::affine(
            interval.left().clone(),
            interval.right().clone(),
            slope,
            intercept,
        )?;
        Self::new(vec![seg], &[])
    }

    pub fn identity(interval: OpenInterval<T>) -> Self {
        Self::affine(interval, T::one(), T::zero()).expect("identity is strictly increasing")
    }

    pub fn interval(&self) -> &OpenInterval<T> {
        &self.interval
    }

    pub fn segments(&self) -> &[Segment<T>] {
        &self.segments
    }

    pub fn jumps(&self) -> &[JumpNode<T>] {
        &self.jumps
    }

    pub fn knots(&self) -> &[T] {
        &self.knots
    }

    /// Interior segment boundaries in increasing order.
    pub fn boundaries(&self) -> impl Iterator<Item = &T> + '_ {
        self.segments[..self.segments.len() - 1]
            .iter()
            .map(|s| s.to().finite().expect("interior boundaries are finite"))
    }

    pub fn jump_at(&self, x: &T) -> Option<&JumpNode<T>> {
        self.jumps
            .binary_search_by(|j| j.x.cmp(x))
            .ok()
            .map(|i| &self.jumps[i])
    }

    /// Jump abscissas: the complement of the continuity set.
    pub fn jump_set(&self) -> Vec<T> {
        self.jumps.iter().map(|j| j.x.clone()).collect()
    }

    pub fn is_continuous(&self) -> bool {
        self.jumps.is_empty()
    }

    pub fn is_continuous_at(&self, x: &T) -> bool {
        self.jump_at(x).is_none()
    }

    fn check_domain(&self, x: &T) -> Result<()> {
        if self.interval.contains(x) {
            Ok(())
        } else {
            Err(out_of_domain(x, &self.interval))
        }
    }

    /// Index of the segment whose closure contains `x` from the left side.
    pub(crate) fn segment_left_of(&self, x: &T) -> &Segment<T> {
        let fx = Extended::Finite(x.clone());
        let i = self.segments.partition_point(|s| *s.to() < fx);
        &self.segments[i]
    }

    /// Index of the segment whose closure contains `x` from the right side.
    pub(crate) fn segment_right_of(&self, x: &T) -> &Segment<T> {
        let fx = Extended::Finite(x.clone());
        let i = self.segments.partition_point(|s| *s.to() <= fx);
        &self.segments[i]
    }

    pub fn eval(&self, x: &T) -> Result<T> {
        self.check_domain(x)?;
        if let Some(j) = self.jump_at(x) {
            return Ok(j.value.clone());
        }
        Ok(self.segment_right_of(x).at(x))
    }

    /// `f_-(x)`, the limit from the left.
    pub fn left_limit(&self, x: &T) -> Result<T> {
        self.check_domain(x)?;
        Ok(self.segment_left_of(x).at(x))
    }

    /// `f_+(x)`, the limit from the right.
    pub fn right_limit(&self, x: &T) -> Result<T> {
        self.check_domain(x)?;
        Ok(self.segment_right_of(x).at(x))
    }

    /// `(f_-(x), f(x), f_+(x))`.
    pub fn limits(&self, x: &T) -> Result<(T, T, T)> {
        Ok((self.left_limit(x)?, self.eval(x)?, self.right_limit(x)?))
    }

    fn with_jump_values(&self, pick: impl Fn(&JumpNode<T>) -> T) -> Self {
        let mut out = self.clone();
        for j in &mut out.jumps {
            j.value = pick(j);
        }
        out
    }

    /// `f_-`: every jump takes its left limit.
    pub fn lower_envelope(&self) -> Self {
        self.with_jump_values(|j| j.left_limit.clone())
    }

    /// `f_+`: every jump takes its right limit.
    pub fn upper_envelope(&self) -> Self {
        self.with_jump_values(|j| j.right_limit.clone())
    }

    /// Smallest interval containing the range, `(f(left+), f(right-))`.
    pub fn conv_range(&self) -> OpenInterval<T> {
        let lo = self.segments[0].value_from_right();
        let hi = self.segments[self.segments.len() - 1].value_to_left();
        OpenInterval::new(lo, hi).expect("strictly increasing range is a nonempty interval")
    }

    /// Evaluates the generalized inverse at `u` without building it.
    pub fn inverse_at(&self, u: &T) -> Result<T> {
        let range = self.conv_range();
        if !range.contains(u) {
            return Err(out_of_domain(u, range));
        }
        let fu = Extended::Finite(u.clone());
        let i = self.segments.partition_point(|s| s.value_to_left() <= fu);
        let seg = &self.segments[i];
        if seg.value_from_right() < fu {
            Ok(seg.solve(u))
        } else {
            // u sits in the closed gap [f_-(b), f_+(b)] in front of segment i.
            Ok(seg
                .from()
                .finite()
                .cloned()
                .expect("gap lies at an interior boundary"))
        }
    }

    /// The unique continuous increasing left inverse on `conv_range()`.
    pub fn generalized_inverse(&self) -> ContinuousPwl<T> {
        let mut pieces = Vec::with_capacity(self.segments.len() + self.jumps.len());
        for (i, seg) in self.segments.iter().enumerate() {
            if i > 0 {
                let b = seg.from().finite().expect("interior boundary").clone();
                if let Some(j) = self.jump_at(&b) {
                    pieces.push(
                        Segment::affine(
                            Extended::Finite(j.left_limit.clone()),
                            Extended::Finite(j.right_limit.clone()),
                            T::zero(),
                            b,
                        )
                        .expect("jump gap is nonempty"),
                    );
                }
            }
            let slope = T::one() / seg.slope().clone();
            let intercept = -(seg.intercept().clone()) / seg.slope().clone();
            pieces.push(
                Segment::affine(
                    seg.value_from_right(),
                    seg.value_to_left(),
                    slope,
                    intercept,
                )
                .expect("image of a segment is nonempty"),
            );
        }
        ContinuousPwl::new(pieces).expect("generalized inverse is continuous and increasing")
    }

    /// Decides whether `f^(-1)(u)` is below, at, or above `x` from the
    /// one-sided limits at `x` alone.
    pub fn classify_position(&self, x: &T, u: &T) -> Result<InverseRelation> {
        let range = self.conv_range();
        if !range.contains(u) {
            return Err(out_of_domain(u, range));
        }
        let lo = self.left_limit(x)?;
        let hi = self.right_limit(x)?;
        Ok(if *u < lo {
            InverseRelation::Lt
        } else if *u > hi {
            InverseRelation::Gt
        } else {
            InverseRelation::Eq
        })
    }

    /// Tests a single relation between `f^(-1)(u)` and `x` via the limit
    /// characterization.
    pub fn inverse_relation_holds(&self, x: &T, u: &T, rel: InverseRelation) -> Result<bool> {
        let range = self.conv_range();
        if !range.contains(u) {
            return Err(out_of_domain(u, range));
        }
        let lo = self.left_limit(x)?;
        let hi = self.right_limit(x)?;
        Ok(match rel {
            InverseRelation::Eq => lo <= *u && *u <= hi,
            InverseRelation::Lt => *u < lo,
            InverseRelation::Le => *u <= hi,
            InverseRelation::Gt => hi < *u,
            InverseRelation::Ge => lo <= *u,
        })
    }

    /// `alpha * f + beta` for `alpha > 0`.
    pub fn affine_image(&self, alpha: &T, beta: &T) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::BadParameters(format!(
                "scale {alpha} is not positive"
            )));
        }
        let segments = self
            .segments
            .iter()
            .map(|s| {
                Segment::affine(
                    s.from().clone(),
                    s.to().clone(),
                    alpha.clone() * s.slope().clone(),
                    alpha.clone() * s.intercept().clone() + beta.clone(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let nodes: Vec<(T, T)> = self
            .jumps
            .iter()
            .map(|j| (j.x.clone(), alpha.clone() * j.value.clone() + beta.clone()))
            .collect();
        Self::new(segments, &nodes)
    }

    /// Replaces the value at an interior boundary.
    ///
    /// At a jump only the node value changes. At a knot the breakpoint
    /// itself moves, so both neighbouring segments are re-fitted and the
    /// function stays continuous there.
    pub fn with_boundary_value(&self, x: &T, value: T) -> Result<Self> {
        if let Some(pos) = self.jumps.iter().position(|j| j.x == *x) {
            let nodes: Vec<(T, T)> = self
                .jumps
                .iter()
                .enumerate()
                .map(|(i, j)| {
                    let v = if i == pos {
                        value.clone()
                    } else {
                        j.value.clone()
                    };
                    (j.x.clone(), v)
                })
                .collect();
            return Self::new(self.segments.clone(), &nodes);
        }
        let idx = self
            .segments
            .iter()
            .position(|s| s.to().finite() == Some(x))
            .filter(|&i| i + 1 < self.segments.len())
            .ok_or_else(|| Error::BadParameters(format!("{x} is not an interior boundary")))?;
        let mut segments = self.segments.clone();
        for (i, pin_left) in [(idx, false), (idx + 1, true)] {
            let seg = &self.segments[i];
            // Keep the far end fixed; re-anchor the near end at (x, value).
            let far = if pin_left { seg.to() } else { seg.from() };
            segments[i] = match far {
                Extended::Finite(e) => {
                    let fe = seg.at(e);
                    if pin_left {
                        Segment::through(x.clone(), e.clone(), value.clone(), fe)?
                    } else {
                        Segment::through(e.clone(), x.clone(), fe, value.clone())?
                    }
                }
                _ => Segment::anchored(
                    seg.from().clone(),
                    seg.to().clone(),
                    x.clone(),
                    value.clone(),
                    seg.slope().clone(),
                )?,
            };
        }
        let nodes: Vec<(T, T)> = self
            .jumps
            .iter()
            .map(|j| (j.x.clone(), j.value.clone()))
            .collect();
        Self::new(segments, &nodes)
    }
}

impl<T: Scalar> fmt::Display for MonotonePwl<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                let b = s.from();
                match b.finite().and_then(|x| self.jump_at(x)) {
                    Some(j) => write!(
                        f,
                        " | jump@{}[{},{},{}] | ",
                        j.x, j.left_limit, j.value, j.right_limit
                    )?,
                    None => write!(f, " | ")?,
                }
            }
            write!(
                f,
                "{}x{:+} on ({}, {})",
                s.slope(),
                s.intercept(),
                s.from(),
                s.to()
            )?;
        }
        Ok(())
    }
}
