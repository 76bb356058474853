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

//! Plain, weighted and envelope generalized quasiarithmetic means.

use crate::error::{Error, Result};
use crate::monotone::MonotonePwl;
use crate::scalar::{Extended, Scalar};

/// Nonnegative weights with a positive sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weights<T>(Vec<T>);

impl<T: Scalar> Weights<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::WeightViolation(format!("negative weight {w}")));
        }
        if !weights.iter().any(|w| w.is_positive()) {
            return Err(Error::WeightViolation("weights sum to zero".into()));
        }
        Ok(Weights(weights))
    }

    pub fn uniform(n: usize) -> Self {
        Weights(vec![T::one(); n])
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, w| acc + w.clone())
    }
}

fn values<T: Scalar>(f: &MonotonePwl<T>, x: &[T]) -> Result<Vec<T>> {
    if x.is_empty() {
        return Err(Error::EmptyVector);
    }
    x.iter().map(|xi| f.eval(xi)).collect()
}

/// `(f(x_1) + ... + f(x_n)) / n`.
pub fn f_average<T: Scalar>(f: &MonotonePwl<T>, x: &[T]) -> Result<T> {
    let vals = values(f, x)?;
    let n = T::from_usize(vals.len()).expect("length fits the scalar");
    Ok(vals.into_iter().fold(T::zero(), |a, v| a + v) / n)
}

/// `sum(w_i f(x_i)) / sum(w_i)`; zero-weight coordinates are still
/// evaluated and must lie in the domain.
pub fn weighted_f_average<T: Scalar>(f: &MonotonePwl<T>, x: &[T], w: &Weights<T>) -> Result<T> {
    if x.len() != w.len() {
        return Err(Error::LengthMismatch {
            points: x.len(),
            weights: w.len(),
        });
    }
    let vals = values(f, x)?;
    let num = vals
        .into_iter()
        .zip(w.as_slice())
        .fold(T::zero(), |a, (v, wi)| a + v * wi.clone());
    Ok(num / w.total())
}

pub fn quasi_mean<T: Scalar>(f: &MonotonePwl<T>, x: &[T]) -> Result<T> {
    f.inverse_at(&f_average(f, x)?)
}

pub fn weighted_quasi_mean<T: Scalar>(f: &MonotonePwl<T>, x: &[T], w: &Weights<T>) -> Result<T> {
    f.inverse_at(&weighted_f_average(f, x, w)?)
}

/// `(A_{f_-}(x), A_{f_+}(x))`, the one-sided limits of the mean at `x`.
pub fn envelope_means<T: Scalar>(f: &MonotonePwl<T>, x: &[T]) -> Result<(T, T)> {
    Ok((
        quasi_mean(&f.lower_envelope(), x)?,
        quasi_mean(&f.upper_envelope(), x)?,
    ))
}

pub fn weighted_envelope_means<T: Scalar>(
    f: &MonotonePwl<T>,
    x: &[T],
    w: &Weights<T>,
) -> Result<(T, T)> {
    Ok((
        weighted_quasi_mean(&f.lower_envelope(), x, w)?,
        weighted_quasi_mean(&f.upper_envelope(), x, w)?,
    ))
}

/// Recovers the `m`-variable mean of `x` from the `n`-variable one:
///
/// ```text
/// inf { z : A^[n](x, z, ..., z) < z }  and  sup { z : A^[n](x, z, ..., z) > z }
/// ```
///
/// Both sets are found exactly. `A^[n](x, z.., z) < z` holds iff
/// `S + (n - m) f(z) < n f_-(z)` with `S = sum f(x_i)`, which on an open
/// segment reduces to `z > (S/m - c)/s` and at a boundary is a direct test.
pub fn reduce_from_n<T: Scalar>(f: &MonotonePwl<T>, x: &[T], n: usize) -> Result<(T, T)> {
    let m = x.len();
    if m == 0 {
        return Err(Error::EmptyVector);
    }
    if m >= n {
        return Err(Error::BadArity { m, n });
    }
    let s = values(f, x)?.into_iter().fold(T::zero(), |a, v| a + v);
    let m_s = T::from_usize(m).expect("arity fits");
    let n_s = T::from_usize(n).expect("arity fits");
    let rest = n_s.clone() - m_s.clone();
    let target = s.clone() / m_s;

    let mut inf: Extended<T> = Extended::PosInf;
    let mut sup: Extended<T> = Extended::NegInf;
    for seg in f.segments() {
        let z_star = Extended::Finite(seg.solve(&target));
        // lower set on this segment: z in (max(from, z*), to)
        if z_star < *seg.to() {
            inf = inf.min(std::cmp::max(seg.from().clone(), z_star.clone()));
        }
        // upper set: z in (from, min(to, z*))
        if z_star > *seg.from() {
            sup = sup.max(std::cmp::min(seg.to().clone(), z_star));
        }
    }
    for b in f.boundaries() {
        let (lo, v, hi) = f.limits(b)?;
        let lhs = s.clone() + rest.clone() * v;
        if lhs < n_s.clone() * lo {
            inf = inf.min(Extended::Finite(b.clone()));
        }
        if lhs > n_s.clone() * hi {
            sup = sup.max(Extended::Finite(b.clone()));
        }
    }
    match (inf, sup) {
        (Extended::Finite(a), Extended::Finite(b)) => Ok((a, b)),
        (a, b) => Err(Error::Soundness(format!(
            "reduction produced unbounded extremes ({a}, {b})"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::example_m::frak_generator;
    use crate::testing::{j_function, q, qs};

    #[test]
    fn j_mean_falls_in_gap() {
        assert_eq!(
            quasi_mean(&j_function(), &qs(&["1/2", "3/2"])).unwrap(),
            q("1")
        );
    }

    #[test]
    fn reflexive() {
        let j = j_function();
        for c in ["1/3", "1", "7/4"] {
            assert_eq!(quasi_mean(&j, &qs(&[c, c, c])).unwrap(), q(c));
            let w = Weights::new(qs(&["1", "5", "1/2"])).unwrap();
            assert_eq!(weighted_quasi_mean(&j, &qs(&[c, c, c]), &w).unwrap(), q(c));
        }
        assert_eq!(quasi_mean(&j, &qs(&["1/7"])).unwrap(), q("1/7"));
    }

    #[test]
    fn frak_generator_mean() {
        let f = frak_generator(&q("-1"), &q("1"), 2).unwrap();
        assert_eq!(quasi_mean(&f, &qs(&["-1/2", "1/2"])).unwrap(), q("0"));
    }

    #[test]
    fn weighted_examples() {
        let j = j_function();
        let w = Weights::new(qs(&["3", "1"])).unwrap();
        assert_eq!(
            weighted_quasi_mean(&j, &qs(&["1/2", "3/2"]), &w).unwrap(),
            q("1")
        );
        let w = Weights::new(qs(&["1", "0"])).unwrap();
        assert_eq!(
            weighted_quasi_mean(&j, &qs(&["1/3", "3/2"]), &w).unwrap(),
            q("1/3")
        );
    }

    #[test]
    fn weight_errors() {
        let j = j_function();
        assert!(matches!(
            Weights::<crate::Rational>::new(qs(&["1", "-1"])),
            Err(Error::WeightViolation(_))
        ));
        assert!(matches!(
            Weights::<crate::Rational>::new(qs(&["0", "0"])),
            Err(Error::WeightViolation(_))
        ));
        let w = Weights::new(qs(&["1", "1"])).unwrap();
        assert!(matches!(
            weighted_quasi_mean(&j, &qs(&["1"]), &w),
            Err(Error::LengthMismatch { .. })
        ));
        // zero weight does not excuse an out-of-domain coordinate
        let w = Weights::new(qs(&["1", "0"])).unwrap();
        assert!(matches!(
            weighted_quasi_mean(&j, &qs(&["1", "5"]), &w),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(matches!(quasi_mean(&j, &[]), Err(Error::EmptyVector)));
    }

    #[test]
    fn envelope_means_of_j() {
        let j = j_function();
        assert_eq!(
            envelope_means(&j, &qs(&["1", "5/4"])).unwrap(),
            (q("1"), q("9/8"))
        );
        assert_eq!(quasi_mean(&j, &qs(&["1", "5/4"])).unwrap(), q("1"));
        assert_eq!(
            envelope_means(&j.upper_envelope(), &qs(&["1", "1"])).unwrap(),
            (q("1"), q("1"))
        );
    }

    #[test]
    fn reduction_examples() {
        let j = j_function();
        assert_eq!(
            reduce_from_n(&j, &qs(&["3/2"]), 2).unwrap(),
            (q("3/2"), q("3/2"))
        );
        assert_eq!(
            reduce_from_n(&j, &qs(&["1/2", "3/2"]), 4).unwrap(),
            (q("1"), q("1"))
        );
        assert_eq!(
            reduce_from_n(&j, &qs(&["1", "1"]), 5).unwrap(),
            (q("1"), q("1"))
        );
        assert!(matches!(
            reduce_from_n(&j, &qs(&["1", "1"]), 2),
            Err(Error::BadArity { m: 2, n: 2 })
        ));
    }
}
