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

//! All-arity comparison of two generators over the same interval.
//!
//! Write `P(s) = (f(s), g(s))` in homogeneous coordinates. For `x < t < y`
//! the ratio test `r_f <= r_g` is exactly `det[P(x); P(t); P(y)] >= 0`. The
//! determinant is affine in each point along a piece of the common
//! refinement, so its sign over all real triples is decided by the limit
//! points at piece ends, the values at the cuts, and the directions of
//! unbounded ends.

use super::{
    Certificate, CompareVerdict, Counterexample, Direction, Refinement, Relation, Triple, Witness,
};
use crate::continuous::ContinuousPwl;
use crate::error::{Error, Result};
use crate::means::{weighted_quasi_mean, Weights};
use crate::monotone::MonotonePwl;
use crate::scalar::{Extended, Scalar};
use crate::segment::Segment;

const MAX_DEPTH: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pos {
    LeftEnd,
    Below(usize),
    At(usize),
    Above(usize),
    RightEnd,
}

impl Pos {
    /// Limits taken inside an open piece, hence in both continuity sets.
    fn is_continuity_limit(self) -> bool {
        matches!(self, Pos::Below(_) | Pos::Above(_))
    }
}

type Homogeneous<T> = [T; 3];

fn end_point<T: Scalar>(fs: &Segment<T>, gs: &Segment<T>, left: bool) -> Homogeneous<T> {
    let (fv, gv) = if left {
        (fs.value_from_right(), gs.value_from_right())
    } else {
        (fs.value_to_left(), gs.value_to_left())
    };
    match (fv, gv) {
        (Extended::Finite(a), Extended::Finite(b)) => [a, b, T::one()],
        _ if left => [-fs.slope().clone(), -gs.slope().clone(), T::zero()],
        _ => [fs.slope().clone(), gs.slope().clone(), T::zero()],
    }
}

fn plane<T: Scalar>(
    f: &MonotonePwl<T>,
    g: &MonotonePwl<T>,
    r: &Refinement<T>,
) -> Result<Vec<(Pos, Homogeneous<T>)>> {
    let mut out = Vec::with_capacity(3 * r.cuts().len() + 2);
    out.push((
        Pos::LeftEnd,
        end_point(&f.segments()[0], &g.segments()[0], true),
    ));
    for (i, c) in r.cuts().iter().enumerate() {
        let (fl, fv, fr) = f.limits(c)?;
        let (gl, gv, gr) = g.limits(c)?;
        out.push((Pos::Below(i), [fl, gl, T::one()]));
        out.push((Pos::At(i), [fv, gv, T::one()]));
        out.push((Pos::Above(i), [fr, gr, T::one()]));
    }
    out.push((
        Pos::RightEnd,
        end_point(
            f.segments().last().unwrap(),
            g.segments().last().unwrap(),
            false,
        ),
    ));
    Ok(out)
}

fn det3<T: Scalar>(a: &Homogeneous<T>, b: &Homogeneous<T>, c: &Homogeneous<T>) -> T {
    let minor = |p: &T, q: &T, r: &T, s: &T| p.clone() * s.clone() - q.clone() * r.clone();
    a[0].clone() * minor(&b[1], &b[2], &c[1], &c[2])
        - a[1].clone() * minor(&b[0], &b[2], &c[0], &c[2])
        + a[2].clone() * minor(&b[0], &b[1], &c[0], &c[1])
}

fn concrete<T: Scalar>(r: &Refinement<T>, pos: Pos, depth: u32) -> T {
    match pos {
        Pos::LeftEnd => r.near(0, true, depth),
        Pos::Below(i) => r.near(i, false, depth),
        Pos::At(i) => r.cuts()[i].clone(),
        Pos::Above(i) => r.near(i + 1, true, depth),
        Pos::RightEnd => r.near(r.pieces() - 1, false, depth),
    }
}

/// Moves a violating position triple onto real points close enough to the
/// limits for the strict violation to survive.
fn realize<T: Scalar>(
    f: &MonotonePwl<T>,
    g: &MonotonePwl<T>,
    r: &Refinement<T>,
    pos: [Pos; 3],
    direction: Direction,
) -> Result<Option<Witness<T>>> {
    // Depth 1 puts x and y at piece midpoints.
    for depth in 1..=MAX_DEPTH {
        let triple = Triple::new(
            concrete(r, pos[0], depth),
            concrete(r, pos[1], depth.max(2)),
            concrete(r, pos[2], depth),
        );
        if !triple.is_ordered() {
            continue;
        }
        let r_f = triple.ratio(f)?;
        let r_g = triple.ratio(g)?;
        let violated = match direction {
            Direction::LessEq => r_f > r_g,
            Direction::GreaterEq => r_f < r_g,
        };
        if violated {
            return Ok(Some(Witness {
                triple,
                direction,
                r_f,
                r_g,
            }));
        }
    }
    Ok(None)
}

struct Scan<T> {
    violated_le: bool,
    violated_ge: bool,
    witnesses: Vec<Witness<T>>,
}

fn scan<T: Scalar>(f: &MonotonePwl<T>, g: &MonotonePwl<T>, r: &Refinement<T>) -> Result<Scan<T>> {
    let pts = plane(f, g, r)?;
    let mut out = Scan {
        violated_le: false,
        violated_ge: false,
        witnesses: Vec::new(),
    };
    let (mut have_le, mut have_ge) = (false, false);
    for j in 1..pts.len().saturating_sub(1) {
        if !pts[j].0.is_continuity_limit() {
            continue;
        }
        for i in 0..j {
            for k in j + 1..pts.len() {
                let d = det3(&pts[i].1, &pts[j].1, &pts[k].1);
                let direction = if d.is_negative() {
                    out.violated_le = true;
                    if have_le {
                        continue;
                    }
                    Direction::LessEq
                } else if d.is_positive() {
                    out.violated_ge = true;
                    if have_ge {
                        continue;
                    }
                    Direction::GreaterEq
                } else {
                    continue;
                };
                if let Some(w) = realize(f, g, r, [pts[i].0, pts[j].0, pts[k].0], direction)? {
                    match direction {
                        Direction::LessEq => have_le = true,
                        Direction::GreaterEq => have_ge = true,
                    }
                    out.witnesses.push(w);
                }
                if have_le && have_ge {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// `(alpha, beta)` with `f = alpha * g + beta` on the whole interval, if any.
pub fn affine_relation<T: Scalar>(
    f: &MonotonePwl<T>,
    g: &MonotonePwl<T>,
) -> Result<Option<(T, T)>> {
    let r = Refinement::new(f, g)?;
    let p = r.near(0, true, 2);
    let q = r.near(0, false, 2);
    let alpha = (f.eval(&q)? - f.eval(&p)?) / (g.eval(&q)? - g.eval(&p)?);
    let beta = f.eval(&p)? - alpha.clone() * g.eval(&p)?;
    for k in 0..r.pieces() {
        let x = r.interior(k);
        let (sf, sg) = (f.segment_right_of(&x), g.segment_right_of(&x));
        if *sf.slope() != alpha.clone() * sg.slope().clone()
            || *sf.intercept() != alpha.clone() * sg.intercept().clone() + beta.clone()
        {
            return Ok(None);
        }
    }
    for c in r.cuts() {
        if f.eval(c)? != alpha.clone() * g.eval(c)? + beta.clone() {
            return Ok(None);
        }
    }
    Ok(Some((alpha, beta)))
}

fn lower_hull<T: Scalar>(pts: Vec<(T, T)>) -> Vec<(T, T)> {
    let cross = |o: &(T, T), a: &(T, T), b: &(T, T)| {
        (a.0.clone() - o.0.clone()) * (b.1.clone() - o.1.clone())
            - (a.1.clone() - o.1.clone()) * (b.0.clone() - o.0.clone())
    };
    let mut hull: Vec<(T, T)> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2
            && !cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p).is_positive()
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

/// Lower convex hull of the plane points `(f, g)` at every cut value and
/// limit, extended by the end rays of unbounded pieces.
fn bridge<T: Scalar>(
    f: &MonotonePwl<T>,
    g: &MonotonePwl<T>,
    r: &Refinement<T>,
) -> Result<ContinuousPwl<T>> {
    let mut pts: Vec<(T, T)> = plane(f, g, r)?
        .into_iter()
        .filter(|(_, p)| !p[2].is_zero())
        .map(|(_, [a, b, _])| (a, b))
        .collect();
    if pts.is_empty() {
        let x0 = r.interior(0);
        pts.push((f.eval(&x0)?, g.eval(&x0)?));
    }
    pts.sort();
    pts.dedup_by(|next, prev| next.0 == prev.0);

    let ray = |fs: &Segment<T>, gs: &Segment<T>| gs.slope().clone() / fs.slope().clone();
    let key = |s: &T, p: &(T, T)| p.1.clone() - s.clone() * p.0.clone();
    let left_ray =
        (!f.interval().left().is_finite()).then(|| ray(&f.segments()[0], &g.segments()[0]));
    let right_ray = (!f.interval().right().is_finite())
        .then(|| ray(f.segments().last().unwrap(), g.segments().last().unwrap()));
    if let Some(s) = &left_ray {
        let mut best = 0;
        for i in 1..pts.len() {
            if key(s, &pts[i]) <= key(s, &pts[best]) {
                best = i;
            }
        }
        pts.drain(..best);
    }
    if let Some(s) = &right_ray {
        let mut best = 0;
        for i in 1..pts.len() {
            if key(s, &pts[i]) < key(s, &pts[best]) {
                best = i;
            }
        }
        pts.truncate(best + 1);
    }
    let hull = lower_hull(pts);

    let mut pieces = Vec::with_capacity(hull.len() + 1);
    let first = &hull[0];
    let last = &hull[hull.len() - 1];
    if let Some(s) = left_ray {
        pieces.push(Segment::anchored(
            Extended::NegInf,
            Extended::Finite(first.0.clone()),
            first.0.clone(),
            first.1.clone(),
            s,
        )?);
    }
    for w in hull.windows(2) {
        pieces.push(Segment::through(
            w[0].0.clone(),
            w[1].0.clone(),
            w[0].1.clone(),
            w[1].1.clone(),
        )?);
    }
    if let Some(s) = right_ray {
        pieces.push(Segment::anchored(
            Extended::Finite(last.0.clone()),
            Extended::PosInf,
            last.0.clone(),
            last.1.clone(),
            s,
        )?);
    }
    ContinuousPwl::new(pieces)
}

/// Checks `phi` against every requirement on a comparison certificate.
fn validate_bridge<T: Scalar>(
    phi: &ContinuousPwl<T>,
    f: &MonotonePwl<T>,
    g: &MonotonePwl<T>,
    r: &Refinement<T>,
) -> Result<()> {
    let fail = |what: String| Err(Error::Soundness(format!("certificate {phi}: {what}")));
    if *phi.domain() != f.conv_range() || phi.image() != g.conv_range() {
        return fail("wrong domain or image".into());
    }
    if !phi.is_strictly_increasing() || !phi.is_convex() {
        return fail("not a convex increasing bijection".into());
    }
    for c in r.cuts() {
        let (fl, fv, fr) = f.limits(c)?;
        let (gl, gv, gr) = g.limits(c)?;
        if phi.eval(&fl)? != gl || phi.eval(&fr)? != gr {
            return fail(format!("misses a continuity limit at {c}"));
        }
        if phi.eval(&fv)? > gv {
            return fail(format!("exceeds g at {c}"));
        }
    }
    for k in 0..r.pieces() {
        let x = r.interior(k);
        if phi.eval(&f.eval(&x)?)? != g.eval(&x)? {
            return fail(format!("misses g at {x}"));
        }
    }
    Ok(())
}

fn certified_bridge<T: Scalar>(
    f: &MonotonePwl<T>,
    g: &MonotonePwl<T>,
    r: &Refinement<T>,
) -> Result<Certificate<T>> {
    let phi = bridge(f, g, r)?;
    validate_bridge(&phi, f, g, r)?;
    let psi = phi.inverse()?;
    if !psi.is_concave() {
        return Err(Error::Soundness(
            "inverse certificate is not concave".into(),
        ));
    }
    Ok(Certificate::Bridge { phi, psi })
}

fn first_jump_mismatch<T: Scalar>(f: &MonotonePwl<T>, g: &MonotonePwl<T>) -> Option<T> {
    let (a, b) = (f.jump_set(), g.jump_set());
    a.iter()
        .filter(|x| b.binary_search(x).is_err())
        .chain(b.iter().filter(|x| a.binary_search(x).is_err()))
        .min()
        .cloned()
}

/// Decides whether `A_f <= A_g`, `A_f >= A_g`, both, or neither holds for
/// every arity, and attaches a certificate or witnesses.
///
/// A `LESS_EQ` certificate is an increasing convex `phi` on the range of `f`
/// with `phi(f) <= g` and equality on the continuity set; `GREATER_EQ`
/// carries the same object with the roles of `f` and `g` swapped.
pub fn compare<T: Scalar>(f: &MonotonePwl<T>, g: &MonotonePwl<T>) -> Result<CompareVerdict<T>> {
    let r = Refinement::new(f, g)?;
    let jump_mismatch = first_jump_mismatch(f, g);
    let scan = scan(f, g, &r)?;
    let le_ok = !scan.violated_le;
    let ge_ok = !scan.violated_ge;
    let found = |d: Direction| scan.witnesses.iter().any(|w| w.direction == d);
    if scan.violated_le != found(Direction::LessEq)
        || scan.violated_ge != found(Direction::GreaterEq)
    {
        return Err(Error::Soundness(
            "a violated ratio test could not be realized by real points".into(),
        ));
    }
    if jump_mismatch.is_some() && (le_ok || ge_ok) {
        return Err(Error::Soundness(
            "generators with different jump sets passed the ratio test".into(),
        ));
    }
    let (relation, certificate) = match (le_ok, ge_ok) {
        (true, true) => {
            let (alpha, beta) = affine_relation(f, g)?
                .ok_or_else(|| Error::Soundness("equal means without an affine relation".into()))?;
            (Relation::Equal, Some(Certificate::Affine { alpha, beta }))
        }
        (true, false) => (Relation::LessEq, Some(certified_bridge(f, g, &r)?)),
        (false, true) => (Relation::GreaterEq, Some(certified_bridge(g, f, &r)?)),
        (false, false) => (Relation::Incomparable, None),
    };
    Ok(CompareVerdict {
        relation,
        certificate,
        witnesses: scan.witnesses,
        jump_mismatch,
    })
}

/// Turns a ratio-test violation into a two-point weighted vector whose
/// means sit on opposite sides of `t`; `lambda` is the midpoint of the
/// open ratio gap.
pub fn witness_to_counterexample<T: Scalar>(
    f: &MonotonePwl<T>,
    g: &MonotonePwl<T>,
    triple: &Triple<T>,
    direction: Direction,
) -> Result<Counterexample<T>> {
    if f.interval() != g.interval() {
        return Err(Error::DomainMismatch);
    }
    if !triple.is_ordered() {
        return Err(Error::NotAWitness(format!("{triple} is not increasing")));
    }
    let t = triple.t.clone();
    if !f.is_continuous_at(&t) || !g.is_continuous_at(&t) {
        return Err(Error::NotAWitness(format!("{t} is a jump point")));
    }
    let r_f = triple.ratio(f)?;
    let r_g = triple.ratio(g)?;
    let (lo, hi) = match direction {
        Direction::LessEq => (r_g, r_f),
        Direction::GreaterEq => (r_f, r_g),
    };
    if lo >= hi {
        return Err(Error::NotAWitness(format!(
            "the ratio test for {direction} holds at {triple}"
        )));
    }
    let lambda = T::midpoint(&lo, &hi);
    let weights = Weights::new(vec![lambda.clone(), T::one() - lambda.clone()])?;
    let points = vec![triple.x.clone(), triple.y.clone()];
    let mean_f = weighted_quasi_mean(f, &points, &weights)?;
    let mean_g = weighted_quasi_mean(g, &points, &weights)?;
    let separated = match direction {
        Direction::LessEq => mean_g < t && t < mean_f,
        Direction::GreaterEq => mean_f < t && t < mean_g,
    };
    if !separated {
        return Err(Error::NotAWitness(format!(
            "means {mean_f} and {mean_g} do not straddle {t}"
        )));
    }
    Ok(Counterexample {
        points,
        weights,
        lambda,
        t,
        mean_f,
        mean_g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{convex_02, identity_02, j_function, q};

    #[test]
    fn identity_below_convex() {
        let v = compare(&identity_02(), &convex_02()).unwrap();
        assert_eq!(v.relation, Relation::LessEq);
        let Some(Certificate::Bridge { phi, psi }) = &v.certificate else {
            panic!("missing certificate");
        };
        assert_eq!(phi.eval(&q("3/2")).unwrap(), q("2"));
        assert_eq!(psi.eval(&q("2")).unwrap(), q("3/2"));
        let back = compare(&convex_02(), &identity_02()).unwrap();
        assert_eq!(back.relation, Relation::GreaterEq);
    }

    #[test]
    fn j_against_identity() {
        let (j, id) = (j_function(), identity_02());
        let v = compare(&j, &id).unwrap();
        assert_eq!(v.relation, Relation::Incomparable);
        let le = v.witness(Direction::LessEq).unwrap();
        assert_eq!(le.triple, Triple::new(q("1/2"), q("3/4"), q("3/2")));
        assert_eq!((le.r_f.clone(), le.r_g.clone()), (q("7/8"), q("3/4")));
        let ge = v.witness(Direction::GreaterEq).unwrap();
        assert_eq!(ge.triple, Triple::new(q("1/2"), q("5/4"), q("3/2")));
        assert_eq!((ge.r_f.clone(), ge.r_g.clone()), (q("1/8"), q("1/4")));
        assert_eq!(v.jump_mismatch, Some(q("1")));
        for w in &v.witnesses {
            witness_to_counterexample(&j, &id, &w.triple, w.direction).unwrap();
        }
    }

    #[test]
    fn documented_witnesses() {
        let (j, id) = (j_function(), identity_02());
        let le = Triple::new(q("1/2"), q("3/4"), q("3/2"));
        assert_eq!(le.ratio(&j).unwrap(), q("7/8"));
        assert_eq!(le.ratio(&id).unwrap(), q("3/4"));
        let ce = witness_to_counterexample(&j, &id, &le, Direction::LessEq).unwrap();
        assert_eq!(ce.lambda, q("13/16"));
        let ge = Triple::new(q("1/2"), q("5/4"), q("3/2"));
        assert_eq!(ge.ratio(&j).unwrap(), q("1/8"));
        assert_eq!(ge.ratio(&id).unwrap(), q("1/4"));
        let ce = witness_to_counterexample(&j, &id, &ge, Direction::GreaterEq).unwrap();
        assert_eq!(ce.lambda, q("3/16"));
    }

    #[test]
    fn no_witness_in_comparable_pair() {
        let t = Triple::new(q("1/2"), q("1"), q("3/2"));
        assert!(matches!(
            witness_to_counterexample(&identity_02(), &convex_02(), &t, Direction::LessEq),
            Err(Error::NotAWitness(_))
        ));
    }

    #[test]
    fn affine_pairs() {
        let j = j_function();
        let g = j.affine_image(&q("2"), &q("3")).unwrap();
        assert_eq!(
            affine_relation(&j, &g).unwrap(),
            Some((q("1/2"), q("-3/2")))
        );
        assert_eq!(affine_relation(&j, &j).unwrap(), Some((q("1"), q("0"))));
        assert_eq!(affine_relation(&identity_02(), &j).unwrap(), None);
        let v = compare(&j, &g).unwrap();
        assert_eq!(v.relation, Relation::Equal);
        assert_eq!(
            v.certificate,
            Some(Certificate::Affine {
                alpha: q("1/2"),
                beta: q("-3/2")
            })
        );
    }

    #[test]
    fn node_value_matters() {
        let j = j_function();
        let raised = j.with_boundary_value(&q("1"), q("3/2")).unwrap();
        let v = compare(&j, &raised).unwrap();
        assert_eq!(v.relation, Relation::LessEq);
        assert_eq!(compare(&raised, &j).unwrap().relation, Relation::GreaterEq);
    }

    #[test]
    fn unbounded_affine_pair() {
        use crate::scalar::OpenInterval;
        let line = OpenInterval::new(Extended::NegInf, Extended::PosInf).unwrap();
        let f = MonotonePwl::identity(line.clone());
        let g = MonotonePwl::affine(line, q("3"), q("1")).unwrap();
        assert_eq!(compare(&f, &g).unwrap().relation, Relation::Equal);
    }
}
