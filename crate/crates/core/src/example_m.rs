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

//! The mean that is zero on sign-spanning vectors and arithmetic otherwise,
//! and its representation by a jump generator on bounded intervals.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::format::scalar_to_json;
use crate::means::quasi_mean;
use crate::monotone::MonotonePwl;
use crate::random::rational_between;
use crate::scalar::{Extended, Scalar};
use crate::segment::Segment;

/// `0` if `min(x) <= 0 <= max(x)`, the arithmetic mean otherwise.
pub fn frak_m<T: Scalar>(x: &[T]) -> Result<T> {
    let (Some(lo), Some(hi)) = (x.iter().min(), x.iter().max()) else {
        return Err(Error::EmptyVector);
    };
    if !lo.is_positive() && !hi.is_negative() {
        return Ok(T::zero());
    }
    let n = T::from_usize(x.len()).expect("length fits");
    Ok(x.iter().fold(T::zero(), |a, v| a + v.clone()) / n)
}

fn check_parameters<T: Scalar>(a: &T, b: &T, n: usize) -> Result<()> {
    if !a.is_negative() || !b.is_positive() {
        return Err(Error::BadParameters(format!(
            "need a < 0 < b, got a = {a}, b = {b}"
        )));
    }
    if n < 2 {
        return Err(Error::BadParameters(format!("arity {n} is below 2")));
    }
    Ok(())
}

/// On `(a, b)`: `-x/(an) - 1` left of zero, `x/(bn) + 1` right of it, and
/// `0` at zero. Its `n`-variable mean is [`frak_m`].
pub fn frak_generator<T: Scalar>(a: &T, b: &T, n: usize) -> Result<MonotonePwl<T>> {
    check_parameters(a, b, n)?;
    let k = T::from_usize(n).expect("arity fits");
    let zero = Extended::Finite(T::zero());
    let left = Segment::affine(
        Extended::Finite(a.clone()),
        zero.clone(),
        -T::one() / (a.clone() * k.clone()),
        -T::one(),
    )?;
    let right = Segment::affine(
        zero,
        Extended::Finite(b.clone()),
        T::one() / (b.clone() * k),
        T::one(),
    )?;
    MonotonePwl::new(vec![left, right], &[(T::zero(), T::zero())])
}

/// A vector whose mean under the arity-`n` generator leaves the plateau at
/// a larger arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Escape<T> {
    pub m: usize,
    pub x: Vec<T>,
    pub mean: T,
    pub frak: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropMReport<T> {
    pub a: T,
    pub b: T,
    pub n: usize,
    pub seed: u64,
    pub grid_checked: usize,
    pub grid_equal: usize,
    pub trials: usize,
    pub trials_equal: usize,
    /// First vector on which the two means differ.
    pub first_mismatch: Option<Vec<T>>,
    /// `(f(0) + (n-1) f(b-)) / n = (n^2 - 1) / n^2`.
    pub plateau_bound: T,
    pub plateau_bound_holds: bool,
    /// Non-diagonal vector mapped to its minimum.
    pub flat: Vec<T>,
    pub flat_mean: T,
    pub escape: Escape<T>,
}

impl<T: Scalar> PropMReport<T> {
    pub fn flat_is_min(&self) -> bool {
        Some(&self.flat_mean) == self.flat.iter().min()
            && self.flat.iter().any(|v| *v != self.flat[0])
    }

    pub fn passed(&self) -> bool {
        self.grid_equal == self.grid_checked
            && self.trials_equal == self.trials
            && self.plateau_bound_holds
            && self.flat_is_min()
            && self.escape.mean != self.escape.frak
    }

    pub fn to_json(&self) -> Value {
        let list = |v: &[T]| v.iter().map(scalar_to_json).collect::<Vec<_>>();
        json!({
            "a": scalar_to_json(&self.a),
            "b": scalar_to_json(&self.b),
            "n": self.n,
            "seed": self.seed,
            "grid": {"checked": self.grid_checked, "equal": self.grid_equal},
            "random": {"trials": self.trials, "equal": self.trials_equal},
            "first_mismatch": self.first_mismatch.as_deref().map(list),
            "plateau_bound": {"value": scalar_to_json(&self.plateau_bound), "below_one": self.plateau_bound_holds},
            "non_strict": {"x": list(&self.flat), "mean": scalar_to_json(&self.flat_mean), "is_min": self.flat_is_min()},
            "escape": {
                "m": self.escape.m,
                "x": list(&self.escape.x),
                "mean": scalar_to_json(&self.escape.mean),
                "frak_m": scalar_to_json(&self.escape.frak),
            },
            "passed": self.passed(),
        })
    }
}

fn compact<T: Scalar>(x: &[T]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < x.len() {
        let mut j = i;
        while j < x.len() && x[j] == x[i] {
            j += 1;
        }
        if j - i > 2 {
            parts.push(format!("{} x{}", x[i], j - i));
        } else {
            parts.extend(x[i..j].iter().map(|v| v.to_string()));
        }
        i = j;
    }
    format!("({})", parts.join(", "))
}

impl<T: Scalar> fmt::Display for PropMReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = |b: bool| if b { "ok" } else { "FAIL" };
        writeln!(
            f,
            "example-m a={} b={} n={} seed={}",
            self.a, self.b, self.n, self.seed
        )?;
        writeln!(
            f,
            "grid:     {}/{} equal",
            self.grid_equal, self.grid_checked
        )?;
        writeln!(f, "random:   {}/{} equal", self.trials_equal, self.trials)?;
        if let Some(x) = &self.first_mismatch {
            writeln!(f, "mismatch: {}", compact(x))?;
        }
        writeln!(
            f,
            "bound:    (n^2-1)/n^2 = {} < 1: {}",
            self.plateau_bound,
            ok(self.plateau_bound_holds)
        )?;
        writeln!(
            f,
            "flat:     A{} = {} = min: {}",
            compact(&self.flat),
            self.flat_mean,
            ok(self.flat_is_min())
        )?;
        writeln!(
            f,
            "escape:   m={} A{} = {} vs {}: {}",
            self.escape.m,
            compact(&self.escape.x),
            self.escape.mean,
            self.escape.frak,
            ok(self.escape.mean != self.escape.frak)
        )?;
        write!(
            f,
            "result:   {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Smallest `m` for which `(a/2, b/2, ..., b/2)` of length `m` escapes the
/// plateau of the arity-`n` generator, found from the closed form
/// `(m - 2) f(b/2) > m`.
pub fn escape_witness<T: Scalar>(f: &MonotonePwl<T>, a: &T, b: &T) -> Result<Escape<T>> {
    let half_b = b.clone() / T::two();
    let c = f.eval(&half_b)?;
    let m_bound = (T::two() * c.clone() / (c - T::one())).floor_int() + T::one();
    let m = m_bound
        .to_string()
        .parse::<usize>()
        .map_err(|_| Error::BadParameters(format!("escape arity {m_bound} is too large")))?;
    let mut x = vec![a.clone() / T::two()];
    x.extend(std::iter::repeat_n(half_b, m - 1));
    let mean = quasi_mean(f, &x)?;
    let frak = frak_m(&x)?;
    Ok(Escape { m, x, mean, frak })
}

fn grid<T: Scalar>(a: &T, b: &T, n: usize) -> Vec<Vec<T>> {
    let mut side = 2;
    while (side + 1usize).pow(n as u32) <= 1000 {
        side += 1;
    }
    let den = T::from_usize(side + 1).expect("grid size fits");
    let pts: Vec<T> = (1..=side)
        .map(|k| a.clone() + (b.clone() - a.clone()) * T::from_usize(k).unwrap() / den.clone())
        .chain(std::iter::once(T::zero()))
        .collect();
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                pts.iter().map(move |p| {
                    let mut w = v.clone();
                    w.push(p.clone());
                    w
                })
            })
            .collect();
    }
    out
}

/// Checks on grid and seeded random vectors that the generator reproduces
/// [`frak_m`] exactly, re-derives the plateau bound, and produces the
/// non-strictness and escape witnesses.
pub fn prop_m_experiment<T: Scalar>(
    a: &T,
    b: &T,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<PropMReport<T>> {
    let f = frak_generator(a, b, n)?;
    let mut first_mismatch = None;
    let mut agree = |x: Vec<T>| -> Result<bool> {
        let same = quasi_mean(&f, &x)? == frak_m(&x)?;
        if !same && first_mismatch.is_none() {
            first_mismatch = Some(x);
        }
        Ok(same)
    };

    let cases = grid(a, b, n);
    let grid_checked = cases.len();
    let mut grid_equal = 0;
    for x in cases {
        grid_equal += usize::from(agree(x)?);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trials_equal = 0;
    for _ in 0..trials {
        let x: Vec<T> = (0..n).map(|_| rational_between(&mut rng, a, b)).collect();
        trials_equal += usize::from(agree(x)?);
    }

    let k = T::from_usize(n).expect("arity fits");
    let rest = k.clone() - T::one();
    let top = f.segments()[1]
        .value_to_left()
        .into_finite()
        .expect("bounded generator");
    let plateau_bound = (f.eval(&T::zero())? + rest * top) / k.clone();
    let plateau_bound_holds = plateau_bound == (k.clone() * k.clone() - T::one()) / (k.clone() * k)
        && plateau_bound < T::one();

    let mut flat = vec![T::zero()];
    flat.extend(std::iter::repeat_n(b.clone() / T::two(), n - 1));
    let flat_mean = quasi_mean(&f, &flat)?;

    let escape = escape_witness(&f, a, b)?;
    Ok(PropMReport {
        a: a.clone(),
        b: b.clone(),
        n,
        seed,
        grid_checked,
        grid_equal,
        trials,
        trials_equal,
        first_mismatch,
        plateau_bound,
        plateau_bound_holds,
        flat,
        flat_mean,
        escape,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{q, qs};

    #[test]
    fn frak_m_branches() {
        assert_eq!(frak_m(&qs(&["-1/2", "1/2"])).unwrap(), q("0"));
        assert_eq!(frak_m(&qs(&["1", "2", "3"])).unwrap(), q("2"));
        assert_eq!(frak_m(&qs(&["-3", "-1"])).unwrap(), q("-2"));
        assert_eq!(frak_m::<crate::Rational>(&[]), Err(Error::EmptyVector));
    }

    #[test]
    fn generator_values() {
        let f = frak_generator(&q("-1"), &q("1"), 2).unwrap();
        assert_eq!(f.eval(&q("-1/2")).unwrap(), q("-5/4"));
        assert_eq!(f.eval(&q("1/2")).unwrap(), q("5/4"));
        assert_eq!(f.limits(&q("0")).unwrap(), (q("-1"), q("0"), q("1")));
        let r = f.conv_range();
        assert_eq!(
            (r.left(), r.right()),
            (&Extended::Finite(q("-3/2")), &Extended::Finite(q("3/2")))
        );
        let inv = f.generalized_inverse();
        for (u, v) in [
            ("-1", "0"),
            ("0", "0"),
            ("1", "0"),
            ("-5/4", "-1/2"),
            ("5/4", "1/2"),
        ] {
            assert_eq!(inv.eval(&q(u)).unwrap(), q(v));
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(
            frak_generator(&q("1"), &q("2"), 2),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(
            frak_generator(&q("-1"), &q("1"), 1),
            Err(Error::BadParameters(_))
        ));
    }

    #[test]
    fn escape_datum() {
        let f = frak_generator(&q("-1"), &q("1"), 2).unwrap();
        let e = escape_witness(&f, &q("-1"), &q("1")).unwrap();
        assert_eq!(e.m, 11);
        assert_eq!(e.mean, q("1/22"));
        assert_eq!(e.frak, q("0"));
    }

    #[test]
    fn experiment_passes() {
        for n in 2..=4 {
            let r = prop_m_experiment(&q("-2"), &q("3/2"), n, 200, 3).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
