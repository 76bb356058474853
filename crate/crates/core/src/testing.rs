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

//! Shared fixtures for unit tests.

use crate::monotone::MonotonePwl;
use crate::scalar::{parse_scalar, OpenInterval};
use crate::segment::Segment;
use crate::Rational;

pub fn q(s: &str) -> Rational {
    parse_scalar(s).unwrap_or_else(|| panic!("bad rational {s:?}"))
}

pub fn qs(list: &[&str]) -> Vec<Rational> {
    list.iter().map(|s| q(s)).collect()
}

/// `x` on (0,1), `x + 1` on (1,2), value 1 at the jump.
pub fn j_function() -> MonotonePwl {
    MonotonePwl::new(
        vec![
            Segment::through(q("0"), q("1"), q("0"), q("1")).unwrap(),
            Segment::through(q("1"), q("2"), q("2"), q("3")).unwrap(),
        ],
        &[(q("1"), q("1"))],
    )
    .unwrap()
}

pub fn identity_02() -> MonotonePwl {
    MonotonePwl::identity(OpenInterval::bounded(q("0"), q("2")).unwrap())
}

/// `x` on (0,1], `2x - 1` on [1,2).
pub fn convex_02() -> MonotonePwl {
    MonotonePwl::new(
        vec![
            Segment::through(q("0"), q("1"), q("0"), q("1")).unwrap(),
            Segment::through(q("1"), q("2"), q("1"), q("3")).unwrap(),
        ],
        &[],
    )
    .unwrap()
}
