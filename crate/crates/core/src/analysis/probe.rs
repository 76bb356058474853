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

//! Semicontinuity and Kolmogorov-type diagnostics of a single generator.

use super::{between, Refinement};
use crate::error::{Error, Result};
use crate::means::quasi_mean;
use crate::monotone::MonotonePwl;
use crate::scalar::{Extended, Scalar};

/// A vector together with its mean under the probed generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeanWitness<T> {
    pub x: Vec<T>,
    pub mean: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuityDiagnosis<T> {
    pub point: T,
    pub n: usize,
    pub lower_semicontinuous: bool,
    pub upper_semicontinuous: bool,
    /// `(x, ..., x, y)` with `y < x` and mean `>= x`.
    pub lower_witness: Option<MeanWitness<T>>,
    /// `(x, ..., x, y)` with `y > x` and mean `<= x`.
    pub upper_witness: Option<MeanWitness<T>>,
}

impl<T> ContinuityDiagnosis<T> {
    pub fn is_continuous(&self) -> bool {
        self.lower_semicontinuous && self.upper_semicontinuous
    }
}

fn check_arity(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::BadParameters(format!("arity {n} is below 2")));
    }
    Ok(())
}

fn arity<T: Scalar>(n: usize) -> T {
    T::from_usize(n).expect("arity fits")
}

/// Some `y < x` with `f(y) >= threshold`, when one exists.
fn reach_from_left<T: Scalar>(f: &MonotonePwl<T>, x: &T, threshold: &T) -> Result<Option<T>> {
    if f.left_limit(x)? <= *threshold {
        return Ok(None);
    }
    let seg = f.segment_left_of(x);
    let lo = std::cmp::max(seg.from().clone(), Extended::Finite(seg.solve(threshold)));
    Ok(Some(between(&lo, &Extended::Finite(x.clone()))))
}

/// Some `y > x` with `f(y) <= threshold`, when one exists.
fn reach_from_right<T: Scalar>(f: &MonotonePwl<T>, x: &T, threshold: &T) -> Result<Option<T>> {
    if f.right_limit(x)? >= *threshold {
        return Ok(None);
    }
    let seg = f.segment_right_of(x);
    let hi = std::cmp::min(seg.to().clone(), Extended::Finite(seg.solve(threshold)));
    Ok(Some(between(&Extended::Finite(x.clone()), &hi)))
}

fn tail_vector<T: Scalar>(x: &T, n: usize, y: T) -> Vec<T> {
    let mut v = vec![x.clone(); n - 1];
    v.push(y);
    v
}

/// Decides semicontinuity of `f` at `x` through the mean of
/// `(x, ..., x, y)`: `f` is lower semicontinuous at `x` iff that mean stays
/// below `x` for every `y < x`, and upper semicontinuous iff it stays above
/// `x` for every `y > x`.
pub fn semicontinuity_probe<T: Scalar>(
    f: &MonotonePwl<T>,
    x: &T,
    n: usize,
) -> Result<ContinuityDiagnosis<T>> {
    check_arity(n)?;
    let (lo, v, hi) = f.limits(x)?;
    let k = arity::<T>(n);
    let rest = k.clone() - T::one();

    // mean >= x  iff  f(y) >= n f_-(x) - (n-1) f(x)
    let lower_witness =
        match reach_from_left(f, x, &(k.clone() * lo.clone() - rest.clone() * v.clone()))? {
            Some(y) => {
                let xs = tail_vector(x, n, y);
                let mean = quasi_mean(f, &xs)?;
                Some(MeanWitness { x: xs, mean })
            }
            None => None,
        };
    // mean <= x  iff  f(y) <= n f_+(x) - (n-1) f(x)
    let upper_witness = match reach_from_right(f, x, &(k * hi.clone() - rest * v.clone()))? {
        Some(y) => {
            let xs = tail_vector(x, n, y);
            let mean = quasi_mean(f, &xs)?;
            Some(MeanWitness { x: xs, mean })
        }
        None => None,
    };
    let out = ContinuityDiagnosis {
        point: x.clone(),
        n,
        lower_semicontinuous: lower_witness.is_none(),
        upper_semicontinuous: upper_witness.is_none(),
        lower_witness,
        upper_witness,
    };
    if out.lower_semicontinuous != (lo == v) || out.upper_semicontinuous != (v == hi) {
        return Err(Error::Soundness(format!(
            "semicontinuity probe at {x} disagrees with the one-sided limits"
        )));
    }
    if let Some(w) = &out.lower_witness {
        if w.mean < *x {
            return Err(Error::Soundness(format!(
                "lower witness at {x} does not reach it"
            )));
        }
    }
    if let Some(w) = &out.upper_witness {
        if w.mean > *x {
            return Err(Error::Soundness(format!(
                "upper witness at {x} does not reach it"
            )));
        }
    }
    Ok(out)
}

/// A vector on which the upper-envelope mean exceeds the lower one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeGap<T> {
    pub x: Vec<T>,
    pub lower: T,
    pub upper: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KolmogorovDiagnosis<T> {
    pub n: usize,
    /// `A_{f+} <= A_{f-}` on every probed vector.
    pub envelope_order: bool,
    pub envelope_gap: Option<EnvelopeGap<T>>,
    /// `min(x) < A_f(x) < max(x)` on every probed non-diagonal vector.
    pub strict: bool,
    /// Non-diagonal vector whose mean is its minimum or maximum.
    pub strictness_witness: Option<MeanWitness<T>>,
    pub strictly_increasing: bool,
    /// Two different comparable vectors with the same mean.
    pub plateau: Option<(MeanWitness<T>, MeanWitness<T>)>,
    pub continuous: bool,
}

impl<T> KolmogorovDiagnosis<T> {
    pub fn all_pass(&self) -> bool {
        self.envelope_order && self.strict && self.strictly_increasing
    }
}

/// Probes envelope order, strictness and strict monotonicity of the
/// `n`-variable mean. Each fails exactly when `f` has a jump, and a failing
/// check carries an exact witness built at the first jump.
pub fn kolmogorov_probe<T: Scalar>(f: &MonotonePwl<T>, n: usize) -> Result<KolmogorovDiagnosis<T>> {
    check_arity(n)?;
    let k = arity::<T>(n);
    let rest = k.clone() - T::one();
    let (lower_env, upper_env) = (f.lower_envelope(), f.upper_envelope());

    let Some(jump) = f.jumps().first() else {
        let r = Refinement::single(f);
        let mut pts: Vec<T> = (0..r.pieces()).map(|i| r.interior(i)).collect();
        pts.extend(r.cuts().iter().cloned());
        pts.sort();
        let mut strict = true;
        let mut ordered = true;
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                for xs in [tail_vector(a, n, b.clone()), tail_vector(b, n, a.clone())] {
                    let m = quasi_mean(f, &xs)?;
                    strict &= *a < m && m < *b;
                    ordered &= quasi_mean(&upper_env, &xs)? <= quasi_mean(&lower_env, &xs)?;
                }
            }
        }
        return Ok(KolmogorovDiagnosis {
            n,
            envelope_order: ordered,
            envelope_gap: None,
            strict,
            strictness_witness: None,
            strictly_increasing: strict,
            plateau: None,
            continuous: true,
        });
    };

    let b = jump.x().clone();
    let (l, v, r) = (
        jump.left_limit().clone(),
        jump.value().clone(),
        jump.right_limit().clone(),
    );

    // (b, ..., b, y) with y < b: the upper envelope stays in the gap at b,
    // the lower one falls below it.
    let y = reach_from_left(f, &b, &(k.clone() * l.clone() - rest.clone() * r.clone()))?
        .ok_or_else(|| Error::Soundness(format!("no envelope gap below the jump at {b}")))?;
    let xs = tail_vector(&b, n, y);
    let gap = EnvelopeGap {
        lower: quasi_mean(&lower_env, &xs)?,
        upper: quasi_mean(&upper_env, &xs)?,
        x: xs,
    };
    if gap.upper <= gap.lower {
        return Err(Error::Soundness(format!(
            "envelope means are ordered at {b}"
        )));
    }

    // Capture the average in the gap with a single coordinate off the jump.
    let y = if v < r {
        reach_from_right(f, &b, &(k * r - rest * v))?
    } else {
        reach_from_left(f, &b, &(k * l - rest * v))?
    }
    .ok_or_else(|| Error::Soundness(format!("no strictness witness at {b}")))?;
    let xs = tail_vector(&b, n, y.clone());
    let flat = MeanWitness {
        mean: quasi_mean(f, &xs)?,
        x: xs,
    };
    if flat.mean != b {
        return Err(Error::Soundness(format!(
            "strictness witness at {b} is not flat"
        )));
    }
    let nearer = tail_vector(&b, n, T::midpoint(&b, &y));
    let twin = MeanWitness {
        mean: quasi_mean(f, &nearer)?,
        x: nearer,
    };
    if twin.mean != flat.mean {
        return Err(Error::Soundness(format!(
            "plateau witness at {b} is not flat"
        )));
    }
    Ok(KolmogorovDiagnosis {
        n,
        envelope_order: false,
        envelope_gap: Some(gap),
        strict: false,
        strictness_witness: Some(flat.clone()),
        strictly_increasing: false,
        plateau: Some((flat, twin)),
        continuous: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::example_m::frak_generator;
    use crate::testing::{convex_02, identity_02, j_function, q, qs};

    #[test]
    fn j_is_lower_semicontinuous_at_its_jump() {
        let d = semicontinuity_probe(&j_function(), &q("1"), 2).unwrap();
        assert!(d.lower_semicontinuous);
        assert!(!d.upper_semicontinuous);
        let w = d.upper_witness.unwrap();
        assert_eq!(w.x, qs(&["1", "3/2"]));
        assert_eq!(w.mean, q("1"));
    }

    #[test]
    fn upper_envelope_mirrors() {
        let d = semicontinuity_probe(&j_function().upper_envelope(), &q("1"), 2).unwrap();
        assert!(!d.lower_semicontinuous);
        assert!(d.upper_semicontinuous);
        assert!(d.lower_witness.unwrap().mean >= q("1"));
    }

    #[test]
    fn identity_is_continuous() {
        for n in [2, 3, 5] {
            for x in ["1/9", "1", "19/10"] {
                assert!(semicontinuity_probe(&identity_02(), &q(x), n)
                    .unwrap()
                    .is_continuous());
            }
        }
    }

    #[test]
    fn kolmogorov_on_j() {
        let d = kolmogorov_probe(&j_function(), 2).unwrap();
        assert!(!d.continuous && !d.strict && !d.envelope_order && !d.strictly_increasing);
        let w = d.strictness_witness.unwrap();
        assert_eq!(w.mean, q("1"));
        assert_eq!(w.mean, w.x.iter().min().unwrap().clone());
    }

    #[test]
    fn kolmogorov_on_continuous() {
        let d = kolmogorov_probe(&convex_02(), 3).unwrap();
        assert!(d.continuous && d.all_pass());
    }

    #[test]
    fn kolmogorov_on_frak_generator() {
        let f = frak_generator(&q("-1"), &q("1"), 2).unwrap();
        let d = kolmogorov_probe(&f, 2).unwrap();
        let w = d.strictness_witness.unwrap();
        assert_eq!(w.mean, q("0"));
        assert_eq!(quasi_mean(&f, &qs(&["0", "1/2"])).unwrap(), q("0"));
    }
}
