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

//! Comparison, equality and continuity diagnostics for generalized
//! quasiarithmetic means.

mod compare;
mod floor;
mod probe;

use std::fmt;

use serde_json::{json, Value};

use crate::continuous::ContinuousPwl;
use crate::error::{Error, Result};
use crate::format::{continuous_to_value, scalar_to_json};
use crate::means::Weights;
use crate::monotone::MonotonePwl;
use crate::scalar::{Extended, OpenInterval, Scalar};
use crate::segment::Segment;

pub use compare::{affine_relation, compare, witness_to_counterexample};
pub use floor::{critical_triples, floor_condition, FloorFailure, FloorOutcome};
pub use probe::{
    kolmogorov_probe, semicontinuity_probe, ContinuityDiagnosis, EnvelopeGap, KolmogorovDiagnosis,
    MeanWitness,
};

/// Outcome of comparing `A_f` with `A_g` over all arities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `A_f <= A_g`
    LessEq,
    /// `A_f >= A_g`
    GreaterEq,
    Equal,
    Incomparable,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::LessEq => "LESS_EQ",
            Relation::GreaterEq => "GREATER_EQ",
            Relation::Equal => "EQUAL",
            Relation::Incomparable => "INCOMPARABLE",
        })
    }
}

/// The inequality a witness refutes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// refutes `A_f <= A_g`: `r_f > r_g`
    LessEq,
    /// refutes `A_f >= A_g`: `r_f < r_g`
    GreaterEq,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::LessEq => "LESS_EQ",
            Direction::GreaterEq => "GREATER_EQ",
        })
    }
}

/// Points `x < t < y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triple<T> {
    pub x: T,
    pub t: T,
    pub y: T,
}

impl<T: Scalar> Triple<T> {
    pub fn new(x: T, t: T, y: T) -> Self {
        Triple { x, t, y }
    }

    /// `(h(y) - h(t)) / (h(y) - h(x))`
    pub fn ratio(&self, h: &MonotonePwl<T>) -> Result<T> {
        let hy = h.eval(&self.y)?;
        Ok((hy.clone() - h.eval(&self.t)?) / (hy - h.eval(&self.x)?))
    }

    pub fn is_ordered(&self) -> bool {
        self.x < self.t && self.t < self.y
    }
}

impl<T: Scalar> fmt::Display for Triple<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.t, self.y)
    }
}

/// A triple with `t` in both continuity sets on which the ratio test fails.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness<T> {
    pub triple: Triple<T>,
    pub direction: Direction,
    pub r_f: T,
    pub r_g: T,
}

/// A two-point weighted vector separating the means around `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample<T> {
    pub points: Vec<T>,
    pub weights: Weights<T>,
    pub lambda: T,
    pub t: T,
    pub mean_f: T,
    pub mean_g: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate<T: Scalar> {
    /// Increasing convex `phi` from the range of the smaller side's
    /// generator onto the other's, with its concave inverse `psi`.
    Bridge {
        phi: ContinuousPwl<T>,
        psi: ContinuousPwl<T>,
    },
    /// `f = alpha * g + beta`.
    Affine { alpha: T, beta: T },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareVerdict<T: Scalar> {
    pub relation: Relation,
    pub certificate: Option<Certificate<T>>,
    /// At most one per direction.
    pub witnesses: Vec<Witness<T>>,
    /// First point where exactly one of the generators jumps.
    pub jump_mismatch: Option<T>,
}

impl<T: Scalar> CompareVerdict<T> {
    pub fn witness(&self, direction: Direction) -> Option<&Witness<T>> {
        self.witnesses.iter().find(|w| w.direction == direction)
    }

    /// Structured report with counterexample evaluations re-derived from
    /// `f` and `g`.
    pub fn to_json(&self, f: &MonotonePwl<T>, g: &MonotonePwl<T>) -> Result<Value> {
        let certificate = match &self.certificate {
            None => Value::Null,
            Some(Certificate::Affine { alpha, beta }) => json!({
                "kind": "affine",
                "alpha": scalar_to_json(alpha),
                "beta": scalar_to_json(beta),
            }),
            Some(Certificate::Bridge { phi, psi }) => json!({
                "kind": "bridge",
                "phi": continuous_to_value(phi),
                "psi": continuous_to_value(psi),
            }),
        };
        let mut witnesses = Vec::new();
        for w in &self.witnesses {
            let ce = witness_to_counterexample(f, g, &w.triple, w.direction)?;
            witnesses.push(json!({
                "direction": w.direction.to_string(),
                "x": scalar_to_json(&w.triple.x),
                "t": scalar_to_json(&w.triple.t),
                "y": scalar_to_json(&w.triple.y),
                "r_f": scalar_to_json(&w.r_f),
                "r_g": scalar_to_json(&w.r_g),
                "counterexample": counterexample_to_json(&ce),
            }));
        }
        Ok(json!({
            "relation": self.relation.to_string(),
            "certificate": certificate,
            "witnesses": witnesses,
            "jump_mismatch": self.jump_mismatch.as_ref().map(scalar_to_json),
        }))
    }
}

pub fn counterexample_to_json<T: Scalar>(ce: &Counterexample<T>) -> Value {
    json!({
        "points": ce.points.iter().map(scalar_to_json).collect::<Vec<_>>(),
        "weights": ce.weights.as_slice().iter().map(scalar_to_json).collect::<Vec<_>>(),
        "lambda": scalar_to_json(&ce.lambda),
        "t": scalar_to_json(&ce.t),
        "mean_f": scalar_to_json(&ce.mean_f),
        "mean_g": scalar_to_json(&ce.mean_g),
    })
}

/// The common refinement of the boundaries of one or two generators.
#[derive(Clone, Debug)]
pub(crate) struct Refinement<T> {
    interval: OpenInterval<T>,
    cuts: Vec<T>,
}

impl<T: Scalar> Refinement<T> {
    pub(crate) fn new(f: &MonotonePwl<T>, g: &MonotonePwl<T>) -> Result<Self> {
        if f.interval() != g.interval() {
            return Err(Error::DomainMismatch);
        }
        let mut cuts: Vec<T> = f.boundaries().chain(g.boundaries()).cloned().collect();
        cuts.sort();
        cuts.dedup();
        Ok(Refinement {
            interval: f.interval().clone(),
            cuts,
        })
    }

    pub(crate) fn single(f: &MonotonePwl<T>) -> Self {
        Refinement {
            interval: f.interval().clone(),
            cuts: f.boundaries().cloned().collect(),
        }
    }

    pub(crate) fn cuts(&self) -> &[T] {
        &self.cuts
    }

    pub(crate) fn pieces(&self) -> usize {
        self.cuts.len() + 1
    }

    fn piece(&self, k: usize) -> Segment<T> {
        let lo = match k {
            0 => self.interval.left().clone(),
            _ => Extended::Finite(self.cuts[k - 1].clone()),
        };
        let hi = match self.cuts.get(k) {
            Some(c) => Extended::Finite(c.clone()),
            None => self.interval.right().clone(),
        };
        Segment::affine(lo, hi, T::one(), T::zero()).expect("refined pieces are nonempty")
    }

    /// A point of piece `k` at depth `1/2^depth` from one of its ends.
    pub(crate) fn near(&self, k: usize, at_left: bool, depth: u32) -> T {
        self.piece(k).point_near(at_left, depth)
    }

    pub(crate) fn interior(&self, k: usize) -> T {
        self.piece(k).interior_point()
    }
}

/// A point strictly between `lo` and `hi`; an unbounded side steps
/// one unit away from the finite one.
pub(crate) fn between<T: Scalar>(lo: &Extended<T>, hi: &Extended<T>) -> T {
    match (lo, hi) {
        (Extended::Finite(a), Extended::Finite(b)) => T::midpoint(a, b),
        (Extended::Finite(a), _) => a.clone() + T::one(),
        (_, Extended::Finite(b)) => b.clone() - T::one(),
        _ => T::zero(),
    }
}
