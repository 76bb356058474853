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

//! Continuous increasing piecewise-linear functions.
//!
//! These carry generalized inverses (which have flat plateaus over jump
//! gaps) and the convex bridges certifying mean comparisons.

use std::fmt;

use crate::error::{out_of_domain, Error, Result};
use crate::monotone::MonotonePwl;
use crate::scalar::{Extended, OpenInterval, Scalar};
use crate::segment::Segment;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuousPwl<T: Scalar = Rational> {
    domain: OpenInterval<T>,
    pieces: Vec<Segment<T>>,
}

impl<T: Scalar> ContinuousPwl<T> {
    pub fn new(pieces: Vec<Segment<T>>) -> Result<Self> {
        let (first, last) = match (pieces.first(), pieces.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(Error::InvariantViolation("no pieces".into())),
        };
        let domain = OpenInterval::new(first.from().clone(), last.to().clone())
            .ok_or_else(|| Error::InvariantViolation("pieces do not span an interval".into()))?;
        for (i, p) in pieces.iter().enumerate() {
            if p.slope().is_negative() {
                return Err(Error::InvariantViolation(format!(
                    "piece {i} has negative slope {}",
                    p.slope()
                )));
            }
        }
        for (i, w) in pieces.windows(2).enumerate() {
            if w[0].to() != w[1].from() {
                return Err(Error::InvariantViolation(format!(
                    "pieces {i} and {} do not share a breakpoint",
                    i + 1
                )));
            }
            let b = w[0].to().finite().ok_or_else(|| {
                Error::InvariantViolation(format!("infinite breakpoint after piece {i}"))
            })?;
            if w[0].at(b) != w[1].at(b) {
                return Err(Error::InvariantViolation(format!(
                    "discontinuous at {b}: {} vs {}",
                    w[0].at(b),
                    w[1].at(b)
                )));
            }
        }
        Ok(ContinuousPwl { domain, pieces })
    }

    pub fn domain(&self) -> &OpenInterval<T> {
        &self.domain
    }

    pub fn pieces(&self) -> &[Segment<T>] {
        &self.pieces
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = &T> + '_ {
        self.pieces[..self.pieces.len() - 1]
            .iter()
            .map(|p| p.to().finite().expect("interior breakpoints are finite"))
    }

    pub fn eval(&self, u: &T) -> Result<T> {
        if !self.domain.contains(u) {
            return Err(out_of_domain(u, &self.domain));
        }
        let fu = Extended::Finite(u.clone());
        let i = self.pieces.partition_point(|p| *p.to() <= fu);
        Ok(self.pieces[i].at(u))
    }

    /// Limits at the two ends of the domain.
    pub fn image(&self) -> OpenInterval<T> {
        let lo = self.pieces[0].value_from_right();
        let hi = self.pieces[self.pieces.len() - 1].value_to_left();
        OpenInterval::new(lo, hi).unwrap_or_else(|| self.domain.clone())
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.pieces.iter().all(|p| p.slope().is_positive())
    }

    /// Slopes never decrease from left to right.
    pub fn is_convex(&self) -> bool {
        self.pieces.windows(2).all(|w| w[0].slope() <= w[1].slope())
    }

    pub fn is_concave(&self) -> bool {
        self.pieces.windows(2).all(|w| w[0].slope() >= w[1].slope())
    }

    /// Merges neighbouring pieces carrying the same affine map.
    pub fn normalized(&self) -> Self {
        let mut out: Vec<Segment<T>> = Vec::with_capacity(self.pieces.len());
        for p in &self.pieces {
            if let Some(last) = out.last_mut() {
                if last.slope() == p.slope() && last.intercept() == p.intercept() {
                    *last = last
                        .with_bounds(last.from().clone(), p.to().clone())
                        .expect("merged piece is nonempty");
                    continue;
                }
            }
            out.push(p.clone());
        }
        ContinuousPwl {
            domain: self.domain.clone(),
            pieces: out,
        }
    }

    /// Equality as functions, ignoring redundant breakpoints.
    pub fn same_function(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// Inverse of a strictly increasing function, defined on its image.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_strictly_increasing() {
            return Err(Error::InvariantViolation(
                "only strictly increasing functions are invertible".into(),
            ));
        }
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                Segment::affine(
                    p.value_from_right(),
                    p.value_to_left(),
                    T::one() / p.slope().clone(),
                    -(p.intercept().clone()) / p.slope().clone(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(pieces)
    }

    /// `self ∘ inner` for a strictly increasing `self` whose domain contains
    /// the range of `inner`.
    pub fn compose_after(&self, inner: &MonotonePwl<T>) -> Result<MonotonePwl<T>> {
        if !self.is_strictly_increasing() {
            return Err(Error::InvariantViolation(
                "outer function must be strictly increasing".into(),
            ));
        }
        let range = inner.conv_range();
        if range.left() < self.domain.left() || range.right() > self.domain.right() {
            return Err(Error::DomainMismatch);
        }
        let mut segments = Vec::new();
        for seg in inner.segments() {
            let (lo, hi) = (seg.value_from_right(), seg.value_to_left());
            for p in &self.pieces {
                let a = std::cmp::max(lo.clone(), p.from().clone());
                let b = std::cmp::min(hi.clone(), p.to().clone());
                if a >= b {
                    continue;
                }
                let from = seg.solve_extended(&a);
                let to = seg.solve_extended(&b);
                let slope = p.slope().clone() * seg.slope().clone();
                let intercept = p.slope().clone() * seg.intercept().clone() + p.intercept().clone();
                segments.push(Segment::affine(from, to, slope, intercept)?);
            }
        }
        let nodes = inner
            .jumps()
            .iter()
            .map(|j| Ok((j.x().clone(), self.eval(j.value())?)))
            .collect::<Result<Vec<_>>>()?;
        MonotonePwl::new(segments, &nodes)
    }
}

impl<T: Scalar> fmt::Display for ContinuousPwl<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(
                f,
                "{}u{:+} on ({}, {})",
                p.slope(),
                p.intercept(),
                p.from(),
                p.to()
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{j_function, q};

    fn convex_g() -> ContinuousPwl {
        ContinuousPwl::new(vec![
            Segment::through(q("0"), q("1"), q("0"), q("1")).unwrap(),
            Segment::through(q("1"), q("2"), q("1"), q("3")).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn rejects_discontinuity() {
        let err = ContinuousPwl::new(vec![
            Segment::through(q("0"), q("1"), q("0"), q("1")).unwrap(),
            Segment::through(q("1"), q("2"), q("2"), q("3")).unwrap(),
        ]);
        assert!(err.is_err());
    }

    #[test]
    fn shape_predicates() {
        let g = convex_g();
        assert!(g.is_convex());
        assert!(!g.is_concave());
        assert!(g.is_strictly_increasing());
        assert!(g.inverse().unwrap().is_concave());
        let inv = j_function().generalized_inverse();
        assert!(!inv.is_strictly_increasing());
        assert!(inv.inverse().is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let g = convex_g();
        let h = g.inverse().unwrap();
        for u in ["1/7", "1/2", "1", "3/2", "19/10"] {
            assert_eq!(h.eval(&g.eval(&q(u)).unwrap()).unwrap(), q(u));
        }
        assert_eq!(h.domain(), &OpenInterval::bounded(q("0"), q("3")).unwrap());
    }

    #[test]
    fn composition_with_a_jump() {
        let phi = ContinuousPwl::new(vec![
            Segment::through(q("0"), q("3/2"), q("0"), q("3/2")).unwrap(),
            Segment::through(q("3/2"), q("3"), q("3/2"), q("6")).unwrap(),
        ])
        .unwrap();
        let j = j_function();
        let g = phi.compose_after(&j).unwrap();
        assert_eq!(g.jump_set(), vec![q("1")]);
        assert_eq!(g.eval(&q("1")).unwrap(), q("1"));
        assert_eq!(
            g.right_limit(&q("1")).unwrap(),
            q("3/2") + q("3") * q("1/2")
        );
        assert_eq!(g.eval(&q("3/2")).unwrap(), q("3/2") + q("3"));
    }

    #[test]
    fn normalization_merges_collinear_pieces() {
        let f = ContinuousPwl::new(vec![
            Segment::through(q("0"), q("1"), q("0"), q("1")).unwrap(),
            Segment::through(q("1"), q("2"), q("1"), q("2")).unwrap(),
        ])
        .unwrap();
        assert_eq!(f.normalized().pieces().len(), 1);
        let id = ContinuousPwl::new(vec![
            Segment::through(q("0"), q("2"), q("0"), q("2")).unwrap()
        ])
        .unwrap();
        assert!(f.same_function(&id));
        assert_ne!(f, id);
    }
}
