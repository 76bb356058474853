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

//! Affine pieces shared by the monotone and continuous representations.

use crate::error::{Error, Result};
use crate::scalar::{Extended, Scalar};

/// The affine map `x -> slope * x + intercept` restricted to the open
/// interval `(from, to)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment<T> {
    from: Extended<T>,
    to: Extended<T>,
    slope: T,
    intercept: T,
}

impl<T: Scalar> Segment<T> {
    pub fn affine(from: Extended<T>, to: Extended<T>, slope: T, intercept: T) -> Result<Self> {
        if from >= to || from == Extended::PosInf || to == Extended::NegInf {
            return Err(Error::InvariantViolation(format!(
                "segment ({from}, {to}) is empty"
            )));
        }
        Ok(Segment {
            from,
            to,
            slope,
            intercept,
        })
    }

    /// The segment through `(from, value_from)` and `(to, value_to)`.
    pub fn through(from: T, to: T, value_from: T, value_to: T) -> Result<Self> {
        if from >= to {
            return Err(Error::InvariantViolation(format!(
                "segment ({from}, {to}) is empty"
            )));
        }
        let slope = (value_to - value_from.clone()) / (to.clone() - from.clone());
        let intercept = value_from - slope.clone() * from.clone();
        Self::affine(
            Extended::Finite(from),
            Extended::Finite(to),
            slope,
            intercept,
        )
    }

    /// The segment on `(from, to)` of the line with the given slope through
    /// `(anchor_x, anchor_value)`.
    pub fn anchored(
        from: Extended<T>,
        to: Extended<T>,
        anchor_x: T,
        anchor_value: T,
        slope: T,
    ) -> Result<Self> {
        let intercept = anchor_value - slope.clone() * anchor_x;
        Self::affine(from, to, slope, intercept)
    }

    pub fn from(&self) -> &Extended<T> {
        &self.from
    }

    pub fn to(&self) -> &Extended<T> {
        &self.to
    }

    pub fn slope(&self) -> &T {
        &self.slope
    }

    pub fn intercept(&self) -> &T {
        &self.intercept
    }

    pub fn at(&self, x: &T) -> T {
        self.slope.clone() * x.clone() + self.intercept.clone()
    }

    /// Open-interval membership.
    pub fn contains(&self, x: &T) -> bool {
        self.from.lt_finite(x) && self.to.gt_finite(x)
    }

    fn value_at_end(&self, end: &Extended<T>) -> Extended<T> {
        match end {
            Extended::Finite(x) => Extended::Finite(self.at(x)),
            _ if self.slope.is_zero() => Extended::Finite(self.intercept.clone()),
            Extended::NegInf if self.slope.is_positive() => Extended::NegInf,
            Extended::NegInf => Extended::PosInf,
            Extended::PosInf if self.slope.is_positive() => Extended::PosInf,
            Extended::PosInf => Extended::NegInf,
        }
    }

    /// Limit of the affine map as `x -> from+`.
    pub fn value_from_right(&self) -> Extended<T> {
        self.value_at_end(&self.from)
    }

    /// Limit of the affine map as `x -> to-`.
    pub fn value_to_left(&self) -> Extended<T> {
        self.value_at_end(&self.to)
    }

    /// Solves `at(x) = u` for a non-constant segment.
    pub fn solve(&self, u: &T) -> T {
        (u.clone() - self.intercept.clone()) / self.slope.clone()
    }

    /// Maps an extended ordinate back to an extended abscissa; slope must be positive.
    pub(crate) fn solve_extended(&self, u: &Extended<T>) -> Extended<T> {
        match u {
            Extended::Finite(v) => Extended::Finite(self.solve(v)),
            other => other.clone(),
        }
    }

    pub(crate) fn with_bounds(&self, from: Extended<T>, to: Extended<T>) -> Result<Self> {
        Self::affine(from, to, self.slope.clone(), self.intercept.clone())
    }

    /// A representative point strictly inside the segment.
    pub fn interior_point(&self) -> T {
        match (&self.from, &self.to) {
            (Extended::Finite(a), Extended::Finite(b)) => T::midpoint(a, b),
            (Extended::Finite(a), _) => a.clone() + T::one(),
            (_, Extended::Finite(b)) => b.clone() - T::one(),
            _ => T::zero(),
        }
    }

    /// A point at relative depth `1 / 2^k` from the chosen end, measured on
    /// the segment width (or on unit length for an unbounded side).
    pub(crate) fn point_near(&self, at_left: bool, k: u32) -> T {
        let scale = pow2::<T>(k);
        match (&self.from, &self.to) {
            (Extended::Finite(a), Extended::Finite(b)) => {
                let step = (b.clone() - a.clone()) / scale;
                if at_left {
                    a.clone() + step
                } else {
                    b.clone() - step
                }
            }
            (Extended::Finite(a), _) => {
                if at_left {
                    a.clone() + T::one() / scale
                } else {
                    a.clone() + scale
                }
            }
            (_, Extended::Finite(b)) => {
                if at_left {
                    b.clone() - scale
                } else {
                    b.clone() - T::one() / scale
                }
            }
            _ => {
                if at_left {
                    -scale
                } else {
                    scale
                }
            }
        }
    }
}

pub(crate) fn pow2<T: Scalar>(k: u32) -> T {
    let mut v = T::one();
    for _ in 0..k {
        v = v * T::two();
    }
    v
}
