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

//! The floor-ratio necessary condition for fixed-arity comparison.

use super::{Refinement, Triple};
use crate::error::{Error, Result};
use crate::monotone::MonotonePwl;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorFailure<T> {
    pub triple: Triple<T>,
    pub m: usize,
    pub floor_f: T,
    pub floor_g: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorOutcome<T> {
    pub checked: usize,
    pub failure: Option<FloorFailure<T>>,
}

impl<T> FloorOutcome<T> {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `floor(m r_f) <= floor(m r_g)` for `m = 1..=n` on every triple.
///
/// Each triple must satisfy `x < t < y` with `t` a continuity point of both
/// generators.
pub fn floor_condition<T: Scalar>(
    f: &MonotonePwl<T>,
    g: &MonotonePwl<T>,
    n: usize,
    triples: &[Triple<T>],
) -> Result<FloorOutcome<T>> {
    if f.interval() != g.interval() {
        return Err(Error::DomainMismatch);
    }
    if n < 2 {
        return Err(Error::BadParameters(format!("arity {n} is below 2")));
    }
    for tr in triples {
        if !tr.is_ordered() {
            return Err(Error::BadParameters(format!("{tr} is not increasing")));
        }
        if !f.is_continuous_at(&tr.t) || !g.is_continuous_at(&tr.t) {
            return Err(Error::BadParameters(format!("{} is a jump point", tr.t)));
        }
        let r_f = tr.ratio(f)?;
        let r_g = tr.ratio(g)?;
        for m in 1..=n {
            let k = T::from_usize(m).expect("arity fits");
            let floor_f = (k.clone() * r_f.clone()).floor_int();
            let floor_g = (k * r_g.clone()).floor_int();
            if floor_f > floor_g {
                return Ok(FloorOutcome {
                    checked: triples.len(),
                    failure: Some(FloorFailure {
                        triple: tr.clone(),
                        m,
                        floor_f,
                        floor_g,
                    }),
                });
            }
        }
    }
    Ok(FloorOutcome {
        checked: triples.len(),
        failure: None,
    })
}

/// Triples over the cuts of the common refinement and one interior point
/// per piece, with `t` restricted to common continuity points.
pub fn critical_triples<T: Scalar>(
    f: &MonotonePwl<T>,
    g: &MonotonePwl<T>,
) -> Result<Vec<Triple<T>>> {
    let r = Refinement::new(f, g)?;
    let mut pts: Vec<T> = (0..r.pieces()).map(|k| r.interior(k)).collect();
    pts.extend(r.cuts().iter().cloned());
    pts.sort();
    let mut out = Vec::new();
    for (j, t) in pts.iter().enumerate() {
        if !f.is_continuous_at(t) || !g.is_continuous_at(t) {
            continue;
        }
        for x in &pts[..j] {
            for y in &pts[j + 1..] {
                out.push(Triple::new(x.clone(), t.clone(), y.clone()));
            }
        }
    }
    Ok(out)
}
