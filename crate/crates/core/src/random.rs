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

//! Seeded random generators, points, weights and generator pairs for the
//! verification suites.

use rand::Rng;

use crate::continuous::ContinuousPwl;
use crate::error::Result;
use crate::means::Weights;
use crate::monotone::MonotonePwl;
use crate::scalar::{Extended, OpenInterval, Scalar};
use crate::segment::Segment;

/// A rational `p/q` with `p` in `num` and `q` in `1..=max_den`.
fn small_ratio<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    num: std::ops::RangeInclusive<i64>,
    max_den: i64,
) -> T {
    T::ratio(rng.random_range(num), rng.random_range(1..=max_den))
}

/// A positive rational of moderate size.
pub fn positive<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    small_ratio(rng, 1..=12, 4)
}

/// A rational strictly inside `(lo, hi)`.
pub fn rational_between<T: Scalar, R: Rng + ?Sized>(rng: &mut R, lo: &T, hi: &T) -> T {
    let den = rng.random_range(2..=24);
    let k = rng.random_range(1..den);
    lo.clone() + (hi.clone() - lo.clone()) * T::ratio(k, den)
}

/// A rational inside an interval that may be unbounded on either side.
pub fn point_in<T: Scalar, R: Rng + ?Sized>(rng: &mut R, interval: &OpenInterval<T>) -> T {
    match (interval.left(), interval.right()) {
        (Extended::Finite(a), Extended::Finite(b)) => rational_between(rng, a, b),
        (Extended::Finite(a), _) => a.clone() + small_ratio::<T, _>(rng, 1..=40, 4),
        (_, Extended::Finite(b)) => b.clone() - small_ratio::<T, _>(rng, 1..=40, 4),
        _ => small_ratio(rng, -40..=40, 4),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GeneratorShape {
    pub max_segments: usize,
    pub max_jumps: usize,
    /// Probability of an unbounded end, per side.
    pub unbounded: f64,
}

impl Default for GeneratorShape {
    fn default() -> Self {
        GeneratorShape {
            max_segments: 6,
            max_jumps: 3,
            unbounded: 0.15,
        }
    }
}

pub fn interval<T: Scalar, R: Rng + ?Sized>(rng: &mut R, unbounded: f64) -> OpenInterval<T> {
    let a = T::from_int(rng.random_range(-5..=2));
    let b = a.clone() + small_ratio::<T, _>(rng, 2..=12, 2);
    let left = if rng.random_bool(unbounded) {
        Extended::NegInf
    } else {
        Extended::Finite(a)
    };
    let right = if rng.random_bool(unbounded) {
        Extended::PosInf
    } else {
        Extended::Finite(b)
    };
    OpenInterval::new(left, right).expect("left end below right end")
}

/// Builds a generator on `interval` cut at `cuts`, jumping at the cuts whose
/// index is flagged.
fn assemble<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    interval: &OpenInterval<T>,
    cuts: &[T],
    jumps: &[bool],
) -> MonotonePwl<T> {
    let mut ends: Vec<Extended<T>> = vec![interval.left().clone()];
    ends.extend(cuts.iter().cloned().map(Extended::Finite));
    ends.push(interval.right().clone());

    let mut segments = Vec::with_capacity(ends.len() - 1);
    let mut nodes = Vec::new();
    let mut start: T = T::from_int(rng.random_range(-3..=3));
    for (i, w) in ends.windows(2).enumerate() {
        let slope: T = positive(rng);
        let seg = match (&w[0], &w[1]) {
            (Extended::Finite(a), to) => Segment::anchored(
                Extended::Finite(a.clone()),
                to.clone(),
                a.clone(),
                start.clone(),
                slope,
            ),
            (from, Extended::Finite(b)) => Segment::anchored(
                from.clone(),
                Extended::Finite(b.clone()),
                b.clone(),
                start.clone(),
                slope,
            ),
            (from, to) => {
                Segment::anchored(from.clone(), to.clone(), T::zero(), start.clone(), slope)
            }
        }
        .expect("random segment is nonempty");
        if let Some(b) = cuts.get(i) {
            let left = seg.at(b);
            start = left.clone();
            if jumps[i] {
                let right = left.clone() + small_ratio::<T, _>(rng, 1..=8, 4);
                let value = match rng.random_range(0..3) {
                    0 => left.clone(),
                    1 => right.clone(),
                    _ => rational_between(rng, &left, &right),
                };
                nodes.push((b.clone(), value));
                start = right;
            }
        }
        segments.push(seg);
    }
    MonotonePwl::new(segments, &nodes).expect("random generator is valid")
}

fn distinct_points<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    interval: &OpenInterval<T>,
    k: usize,
) -> Vec<T> {
    let mut pts: Vec<T> = Vec::with_capacity(k);
    while pts.len() < k {
        let p = point_in(rng, interval);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts.sort();
    pts
}

pub fn generator<T: Scalar, R: Rng + ?Sized>(rng: &mut R, shape: GeneratorShape) -> MonotonePwl<T> {
    let iv = interval(rng, shape.unbounded);
    generator_on(rng, &iv, shape)
}

pub fn generator_on<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    interval: &OpenInterval<T>,
    shape: GeneratorShape,
) -> MonotonePwl<T> {
    let segments = rng.random_range(1..=shape.max_segments.max(1));
    let cuts = distinct_points(rng, interval, segments - 1);
    let mut jumps = vec![false; cuts.len()];
    let wanted = rng.random_range(0..=shape.max_jumps.min(cuts.len()));
    let mut placed = 0;
    while placed < wanted {
        let i = rng.random_range(0..cuts.len());
        if !jumps[i] {
            jumps[i] = true;
            placed += 1;
        }
    }
    assemble(rng, interval, &cuts, &jumps)
}

/// A generator with no jumps.
pub fn continuous_generator<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    interval: &OpenInterval<T>,
    max_segments: usize,
) -> MonotonePwl<T> {
    generator_on(
        rng,
        interval,
        GeneratorShape {
            max_segments,
            max_jumps: 0,
            unbounded: 0.0,
        },
    )
}

/// `n` points of the domain; cuts are drawn with some probability so jump
/// values are exercised.
pub fn points<T: Scalar, R: Rng + ?Sized>(rng: &mut R, f: &MonotonePwl<T>, n: usize) -> Vec<T> {
    let cuts: Vec<T> = f.boundaries().cloned().collect();
    (0..n)
        .map(|_| {
            if !cuts.is_empty() && rng.random_bool(0.25) {
                cuts[rng.random_range(0..cuts.len())].clone()
            } else {
                point_in(rng, f.interval())
            }
        })
        .collect()
}

/// Weights with occasional zeros and a positive sum.
pub fn weights<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Weights<T> {
    loop {
        let w: Vec<T> = (0..n)
            .map(|_| {
                if rng.random_bool(0.15) {
                    T::zero()
                } else {
                    positive(rng)
                }
            })
            .collect();
        if let Ok(w) = Weights::new(w) {
            return w;
        }
    }
}

/// Kink abscissas inside the images of the segments of `f`.
fn kink_sites<T: Scalar, R: Rng + ?Sized>(rng: &mut R, f: &MonotonePwl<T>, k: usize) -> Vec<T> {
    let mut sites: Vec<T> = Vec::with_capacity(k);
    while sites.len() < k {
        let seg = &f.segments()[rng.random_range(0..f.segments().len())];
        let iv = OpenInterval::new(seg.from().clone(), seg.to().clone()).expect("segment interval");
        let u = seg.at(&point_in(rng, &iv));
        if !sites.contains(&u) {
            sites.push(u);
        }
    }
    sites.sort();
    sites
}

/// Continuous increasing function on `domain` with the given kinks and
/// piece slopes (`slopes.len() == kinks.len() + 1`).
pub fn bent_line<T: Scalar>(
    domain: &OpenInterval<T>,
    kinks: &[T],
    slopes: &[T],
) -> Result<ContinuousPwl<T>> {
    let mut ends: Vec<Extended<T>> = vec![domain.left().clone()];
    ends.extend(kinks.iter().cloned().map(Extended::Finite));
    ends.push(domain.right().clone());
    let mut pieces = Vec::with_capacity(slopes.len());
    let mut anchor = (kinks.first().cloned().unwrap_or_else(T::zero), T::zero());
    for (i, w) in ends.windows(2).enumerate() {
        let seg = Segment::anchored(
            w[0].clone(),
            w[1].clone(),
            anchor.0.clone(),
            anchor.1.clone(),
            slopes[i].clone(),
        )?;
        if let Some(k) = kinks.get(i) {
            anchor = (k.clone(), seg.at(k));
        }
        pieces.push(seg);
    }
    ContinuousPwl::new(pieces)
}

/// `(f, g)` with `A_f <= A_g` strictly: `g` is a strictly convex bend of
/// `f`, then `f`'s jump values are lowered and `g`'s raised inside their gaps.
pub fn comparable_pair<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
) -> (MonotonePwl<T>, MonotonePwl<T>) {
    let mut f: MonotonePwl<T> = generator(rng, GeneratorShape::default());
    let count = rng.random_range(1..=3);
    let kinks = kink_sites(rng, &f, count);
    let mut slope: T = positive(rng);
    let mut slopes = vec![slope.clone()];
    for _ in &kinks {
        slope = slope + positive::<T, _>(rng);
        slopes.push(slope.clone());
    }
    let phi = bent_line(&f.conv_range(), &kinks, &slopes).expect("bend is valid");
    let mut g = phi.compose_after(&f).expect("bend covers the range");
    for j in f.jumps().to_vec() {
        if rng.random_bool(0.5) && j.value() > j.left_limit() {
            let v = rational_between(rng, j.left_limit(), j.value());
            f = f.with_boundary_value(j.x(), v).expect("value stays in gap");
        }
    }
    for j in g.jumps().to_vec() {
        if rng.random_bool(0.5) && j.value() < j.right_limit() {
            let v = rational_between(rng, j.value(), j.right_limit());
            g = g.with_boundary_value(j.x(), v).expect("value stays in gap");
        }
    }
    (f, g)
}

/// `(f, g)` whose means are incomparable: either a bend that is convex at one
/// kink and concave at another, or generators with different jump sets.
pub fn incomparable_pair<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
) -> (MonotonePwl<T>, MonotonePwl<T>) {
    if rng.random_bool(0.5) {
        let f: MonotonePwl<T> = generator(rng, GeneratorShape::default());
        let kinks = kink_sites(rng, &f, 2);
        let s1: T = positive(rng);
        let s2 = s1.clone() + positive::<T, _>(rng);
        let s3 = s2.clone() / (T::one() + positive::<T, _>(rng));
        let phi = bent_line(&f.conv_range(), &kinks, &[s1, s2, s3]).expect("bend is valid");
        let g = phi.compose_after(&f).expect("bend covers the range");
        (f, g)
    } else {
        let shape = GeneratorShape {
            max_segments: 6,
            max_jumps: 3,
            unbounded: 0.15,
        };
        let iv = interval(rng, shape.unbounded);
        loop {
            let f = generator_on(rng, &iv, shape);
            let g = generator_on(rng, &iv, shape);
            if f.jump_set() != g.jump_set() {
                return (f, g);
            }
        }
    }
}

/// `(f, alpha * f + beta)` with at least one interior boundary.
pub fn affine_pair<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
) -> (MonotonePwl<T>, MonotonePwl<T>, T, T) {
    loop {
        let f: MonotonePwl<T> = generator(rng, GeneratorShape::default());
        if f.boundaries().next().is_none() {
            continue;
        }
        let alpha: T = positive(rng);
        let beta: T = small_ratio(rng, -12..=12, 4);
        let g = f.affine_image(&alpha, &beta).expect("positive scale");
        return (f, g, alpha, beta);
    }
}
