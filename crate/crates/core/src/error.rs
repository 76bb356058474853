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

use thiserror::Error;

/// Errors raised by the library. Offending values are carried in their
/// canonical textual form so the type stays independent of the scalar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed function spec: {0}")]
    MalformedSpec(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("{value} is outside the domain {domain}")]
    OutOfDomain { value: String, domain: String },
    #[error("empty point vector")]
    EmptyVector,
    #[error("invalid weights: {0}")]
    WeightViolation(String),
    #[error("{points} points but {weights} weights")]
    LengthMismatch { points: usize, weights: usize },
    #[error("reduction needs m < n, got m = {m}, n = {n}")]
    BadArity { m: usize, n: usize },
    #[error("the two generators live on different intervals")]
    DomainMismatch,
    #[error("not a witness: {0}")]
    NotAWitness(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("internal consistency check failed: {0}")]
    Soundness(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn out_of_domain(value: impl ToString, domain: impl ToString) -> Error {
    Error::OutOfDomain {
        value: value.to_string(),
        domain: domain.to_string(),
    }
}
