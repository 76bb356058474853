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

//! Exact generalized quasiarithmetic means.
//!
//! A strictly increasing generator `f: I -> R` that may jump still has a
//! unique continuous increasing left inverse `f^(-1)` on the convex hull of
//! its range, and
//!
//! ```text
//! A_f(x_1, ..., x_n) = f^(-1)((f(x_1) + ... + f(x_n)) / n)
//! ```
//!
//! is a mean. This crate represents generators as piecewise-linear functions
//! with finitely many jumps over an exact ordered field, evaluates the plain,
//! weighted and envelope means, and decides all-arity comparability and
//! equality of two such means with checkable certificates or concrete
//! counterexamples.
//!
//! All types are generic over [`Scalar`]; the aliases below fix the
//! arbitrary-precision rational field used by the CLI and the test suites.

pub mod analysis;
pub mod continuous;
pub mod error;
pub mod example_m;
pub mod format;
pub mod means;
pub mod monotone;
pub mod random;
pub mod scalar;
pub mod segment;
pub mod verify;

#[cfg(test)]
pub(crate) mod testing;

pub use analysis::{
    affine_relation, compare, critical_triples, floor_condition, kolmogorov_probe,
    semicontinuity_probe, witness_to_counterexample, Certificate, CompareVerdict,
    ContinuityDiagnosis, Counterexample, Direction, EnvelopeGap, FloorFailure, FloorOutcome,
    KolmogorovDiagnosis, MeanWitness, Relation, Triple, Witness,
};
pub use continuous::ContinuousPwl;
pub use error::{Error, Result};
pub use example_m::{
    escape_witness, frak_generator, frak_m, prop_m_experiment, Escape, PropMReport,
};
pub use format::{parse_continuous, parse_function};
pub use means::{
    envelope_means, quasi_mean, reduce_from_n, weighted_envelope_means, weighted_quasi_mean,
    Weights,
};
pub use monotone::{InverseRelation, JumpNode, MonotonePwl};
pub use scalar::{Extended, OpenInterval, Scalar};
pub use segment::Segment;

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
/// Machine-word rationals; fine for small hand-built inputs, may overflow.
pub type Rational64 = num_rational::Ratio<i64>;
/// Extended rationals: `-inf`, a rational, or `+inf`.
pub type ExtendedRational = Extended<Rational>;
pub type RationalInterval = OpenInterval<Rational>;
/// Generator type used throughout the CLI.
pub type Generator = MonotonePwl<Rational>;
/// Continuous increasing function over [`Rational`].
pub type Bridge = ContinuousPwl<Rational>;
