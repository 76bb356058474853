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

//! Seeded property suites over random generators.
//!
//! Every suite draws from its own ChaCha stream derived from the run seed,
//! so a suite's outcome does not depend on which other suites ran.

use std::fmt;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{
    affine_relation, compare, critical_triples, floor_condition, kolmogorov_probe,
    semicontinuity_probe, witness_to_counterexample, Certificate, Direction, Relation,
};
use crate::error::{Error, Result};
use crate::example_m::{frak_generator, frak_m, prop_m_experiment};
use crate::format::{continuous_to_string, function_to_string, parse_continuous, parse_function};
use crate::means::{envelope_means, quasi_mean, reduce_from_n, weighted_quasi_mean, Weights};
use crate::monotone::{InverseRelation, MonotonePwl};
use crate::random::{self, GeneratorShape};
use crate::scalar::{OpenInterval, Scalar};
use crate::segment::pow2;
use crate::Rational;

type Q = Rational;
type Gen = MonotonePwl<Q>;

pub const SUITES: &[&str] = &[
    "smf",
    "mean-value",
    "qam3",
    "emn",
    "compare",
    "equality",
    "nv",
    "sc",
    "example-m",
    "roundtrip",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failed: usize,
    /// The first few failure descriptions.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            checks: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.failed += 1;
        if self.failures.len() < 8 {
            self.failures.push(what);
        }
    }

    /// Records a library error as a failed check instead of aborting.
    fn guard<V>(&mut self, r: Result<V>, ctx: impl FnOnce() -> String) -> Option<V> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.fail(format!("{}: {e}", ctx()));
                None
            }
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<11} {:>8} {:>8}  {}",
            self.name,
            self.checks,
            self.failed,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

pub fn suite_rng(seed: u64, name: &str) -> ChaCha8Rng {
    let salt = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3)
    });
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

/// Runs one suite with sizes scaled from `trials`.
pub fn run_suite(name: &str, seed: u64, trials: usize) -> Result<SuiteReport> {
    let t = trials.max(1);
    let part = |d: usize| (t / d).max(1);
    Ok(match name {
        "smf" => smf(seed, part(5), 100),
        "mean-value" => mean_value(seed, 10 * t, t),
        "qam3" => qam3(seed, t),
        "emn" => emn(seed, part(10)),
        "compare" => comparison(seed, part(20), 10 * t),
        "equality" => equality(seed, part(20), 10 * t),
        "nv" => nv(seed, part(20), 8),
        "sc" => sc(seed, part(5), part(10)),
        "example-m" => example_m(seed, 10 * t, t),
        "roundtrip" => roundtrip(seed, part(10)),
        other => {
            return Err(Error::BadParameters(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    })
}

pub fn run_all(seed: u64, trials: usize) -> Vec<SuiteReport> {
    SUITES
        .iter()
        .map(|s| run_suite(s, seed, trials).expect("known suite"))
        .collect()
}

/// The generators shared by the inverse and semicontinuity suites.
pub fn suite_generators(seed: u64, count: usize) -> Vec<Gen> {
    let mut rng = suite_rng(seed, "generators");
    (0..count)
        .map(|_| random::generator(&mut rng, GeneratorShape::default()))
        .collect()
}

/// The comparable pairs shared by the comparison and floor suites.
pub fn comparable_pairs(seed: u64, count: usize) -> Vec<(Gen, Gen)> {
    let mut rng = suite_rng(seed, "comparable");
    (0..count)
        .map(|_| random::comparable_pair(&mut rng))
        .collect()
}

pub fn incomparable_pairs(seed: u64, count: usize) -> Vec<(Gen, Gen)> {
    let mut rng = suite_rng(seed, "incomparable");
    (0..count)
        .map(|_| random::incomparable_pair(&mut rng))
        .collect()
}

fn min_max(x: &[Q]) -> (Q, Q) {
    (
        x.iter().min().unwrap().clone(),
        x.iter().max().unwrap().clone(),
    )
}

fn positive_min_max(x: &[Q], w: &Weights<Q>) -> (Q, Q) {
    let kept: Vec<Q> = x
        .iter()
        .zip(w.as_slice())
        .filter(|(_, l)| l.is_positive())
        .map(|(v, _)| v.clone())
        .collect();
    min_max(&kept)
}

fn show(x: &[Q]) -> String {
    let parts: Vec<String> = x.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Inverse identities, order of limits and position classification.
pub fn smf(seed: u64, generators: usize, points: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("smf");
    let mut rng = suite_rng(seed, "smf");
    for f in suite_generators(seed, generators) {
        let inv = f.generalized_inverse();
        let (lo, hi) = (f.lower_envelope(), f.upper_envelope());
        rep.check(
            lo.generalized_inverse().same_function(&inv)
                && hi.generalized_inverse().same_function(&inv),
            || format!("envelope inverses differ for {f}"),
        );
        let range = f.conv_range();
        let node_values: Vec<Q> = f.jumps().iter().map(|j| j.value().clone()).collect();
        for _ in 0..points {
            let x = random::points(&mut rng, &f, 1).pop().unwrap();
            let Some((l, v, r)) = rep.guard(f.limits(&x), || format!("limits at {x}")) else {
                continue;
            };
            rep.check(inv.eval(&v) == Ok(x.clone()), || {
                format!("left inverse fails at {x} for {f}")
            });
            rep.check(
                lo.eval(&x) == Ok(l.clone()) && hi.eval(&x) == Ok(r.clone()),
                || format!("envelopes at {x}"),
            );
            rep.check(l <= v && v <= r, || format!("envelope order at {x}"));

            let u = random::point_in(&mut rng, &range);
            let Some(p) = rep.guard(inv.eval(&u), || format!("inverse at {u}")) else {
                continue;
            };
            let Some((pl, _, pr)) = rep.guard(f.limits(&p), || format!("limits at {p}")) else {
                continue;
            };
            rep.check(pl <= u && u <= pr, || format!("sandwich fails at u = {u}"));
            rep.check(f.inverse_at(&u) == Ok(p.clone()), || {
                format!("inverse_at disagrees at {u}")
            });
            if pl == pr {
                rep.check(f.eval(&p) == Ok(u.clone()), || {
                    format!("right inverse fails at {u}")
                });
            }
            let class = f.classify_position(&x, &u);
            let direct = if p < x {
                InverseRelation::Lt
            } else if p > x {
                InverseRelation::Gt
            } else {
                InverseRelation::Eq
            };
            rep.check(class == Ok(direct), || {
                format!("classify({x}, {u}) = {class:?}, want {direct}")
            });
            let holds = |rel| f.inverse_relation_holds(&x, &u, rel) == Ok(true);
            rep.check(
                holds(InverseRelation::Le) == (p <= x) && holds(InverseRelation::Ge) == (p >= x),
                || format!("non-strict relations at ({x}, {u})"),
            );

            let y = random::points(&mut rng, &f, 1).pop().unwrap();
            if x < y {
                let ok = f.right_limit(&x).unwrap() < f.left_limit(&y).unwrap();
                rep.check(ok, || format!("f_+({x}) >= f_-({y})"));
            }
        }
        for v in node_values {
            let p = inv.eval(&v);
            rep.check(
                p.as_ref().map(|p| f.eval(p) == Ok(v.clone())) == Ok(true),
                || format!("right inverse fails at node value {v}"),
            );
        }
    }
    rep
}

/// Mean-value bounds, symmetry, monotonicity and weight regularity.
pub fn mean_value(seed: u64, trials: usize, paired: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("mean-value");
    let mut rng = suite_rng(seed, "mean-value");
    for i in 0..trials {
        let f: Gen = random::generator(&mut rng, GeneratorShape::default());
        let n = rng.random_range(1..=8);
        let x = random::points(&mut rng, &f, n);
        let w = random::weights(&mut rng, n);
        let (a, b) = min_max(&x);
        if let Some(m) = rep.guard(quasi_mean(&f, &x), || format!("mean of {}", show(&x))) {
            rep.check(a <= m && m <= b, || {
                format!("{m} outside [{a}, {b}] for {}", show(&x))
            });
        }
        let (a, b) = positive_min_max(&x, &w);
        if let Some(m) = rep.guard(weighted_quasi_mean(&f, &x, &w), || "weighted mean".into()) {
            rep.check(a <= m && m <= b, || {
                format!("weighted {m} outside [{a}, {b}]")
            });
        }
        if i >= paired {
            continue;
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let px: Vec<Q> = order.iter().map(|&k| x[k].clone()).collect();
        let pw = Weights::new(order.iter().map(|&k| w.as_slice()[k].clone()).collect()).unwrap();
        rep.check(quasi_mean(&f, &px) == quasi_mean(&f, &x), || {
            "symmetry".into()
        });
        rep.check(
            weighted_quasi_mean(&f, &px, &pw) == weighted_quasi_mean(&f, &x, &w),
            || "weighted symmetry".into(),
        );

        let k = rng.random_range(0..n);
        let mut up = x.clone();
        let right = OpenInterval::new(
            crate::scalar::Extended::Finite(x[k].clone()),
            f.interval().right().clone(),
        )
        .expect("point lies inside");
        up[k] = random::point_in(&mut rng, &right);
        rep.check(
            quasi_mean(&f, &up).unwrap() >= quasi_mean(&f, &x).unwrap(),
            || format!("raising coordinate {k} of {} lowered the mean", show(&x)),
        );
        rep.check(
            weighted_quasi_mean(&f, &up, &w).unwrap() >= weighted_quasi_mean(&f, &x, &w).unwrap(),
            || "weighted monotonicity".into(),
        );

        weight_regularity(&mut rep, &mut rng, &f, &x);
    }
    rep
}

/// Along `lambda(s) = (1-s) l0 + s l1` the denominator stays positive and the
/// mean converges as `s` approaches a point of the segment.
fn weight_regularity(rep: &mut SuiteReport, rng: &mut ChaCha8Rng, f: &Gen, x: &[Q]) {
    let n = x.len();
    let l0 = random::weights::<Q, _>(rng, n);
    let l1 = random::weights::<Q, _>(rng, n);
    let at = |s: &Q| -> Vec<Q> {
        l0.as_slice()
            .iter()
            .zip(l1.as_slice())
            .map(|(a, b)| (Q::from_int(1) - s.clone()) * a.clone() + s.clone() * b.clone())
            .collect()
    };
    rep.check(l0.total().is_positive() && l1.total().is_positive(), || {
        "denominator vanishes on the weight segment".into()
    });
    let s0 = Q::ratio(rng.random_range(1..16), 16);
    let Ok(w0) = Weights::new(at(&s0)) else {
        rep.fail("interior weight is inadmissible".into());
        return;
    };
    let target = weighted_quasi_mean(f, x, &w0).unwrap();
    let mut dists = Vec::new();
    for k in [4u32, 8, 12, 16, 20, 28, 40] {
        let s = s0.clone() + Q::from_int(1) / pow2::<Q>(k);
        let w = Weights::new(at(&s)).unwrap();
        dists.push((weighted_quasi_mean(f, x, &w).unwrap() - target.clone()).abs());
    }
    let shrinking = dists.windows(2).all(|d| d[1] <= d[0]);
    let last = dists.last().unwrap().clone();
    let first = dists[0].clone();
    rep.check(
        shrinking && (first.is_zero() || last * pow2::<Q>(20) <= first),
        || format!("weighted mean does not converge at s = {s0}"),
    );
}

/// Exact one-sided limit of the mean at `x`, read off the affine tail of
/// `eps -> mean(x -+ eps)` on a halving sequence.
fn one_sided_limit(f: &Gen, x: &[Q], w: Option<&Weights<Q>>, from_left: bool, want: &Q) -> bool {
    let eval = |eps: &Q| -> Option<Q> {
        let moved: Vec<Q> = x
            .iter()
            .map(|v| {
                if from_left {
                    v.clone() - eps.clone()
                } else {
                    v.clone() + eps.clone()
                }
            })
            .collect();
        match w {
            Some(w) => weighted_quasi_mean(f, &moved, w).ok(),
            None => quasi_mean(f, &moved).ok(),
        }
    };
    let mut vals: Vec<Option<Q>> = Vec::new();
    for k in 4..=90u32 {
        vals.push(eval(&(Q::from_int(1) / pow2::<Q>(k))));
        let len = vals.len();
        if len < 4 {
            continue;
        }
        if let [Some(a), Some(b), Some(c), Some(d)] = &vals[len - 4..] {
            let two = Q::from_int(2);
            let affine = a.clone() - b.clone() == two.clone() * (b.clone() - c.clone())
                && b.clone() - c.clone() == two.clone() * (c.clone() - d.clone());
            if affine && two * d.clone() - c.clone() == *want {
                return true;
            }
        }
    }
    false
}

/// Envelope means as directional limits, and sub/superassociativity.
pub fn qam3(seed: u64, trials: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("qam3");
    let mut rng = suite_rng(seed, "qam3");
    for i in 0..trials {
        let f: Gen = random::generator(&mut rng, GeneratorShape::default());
        let (lo, hi) = (f.lower_envelope(), f.upper_envelope());
        let n = rng.random_range(2..=8);
        let x = random::points(&mut rng, &f, n);
        let w = random::weights(&mut rng, n);

        let Some((el, eu)) = rep.guard(envelope_means(&f, &x), || "envelope means".into()) else {
            continue;
        };
        let m = quasi_mean(&f, &x).unwrap();
        rep.check(el <= m && m <= eu, || {
            format!("envelope order fails at {}", show(&x))
        });
        if i % 4 == 0 {
            rep.check(one_sided_limit(&f, &x, None, true, &el), || {
                format!("left limit of the mean at {} is not {el}", show(&x))
            });
            rep.check(one_sided_limit(&f, &x, None, false, &eu), || {
                format!("right limit of the mean at {} is not {eu}", show(&x))
            });
            let wl = weighted_quasi_mean(&lo, &x, &w).unwrap();
            let wu = weighted_quasi_mean(&hi, &x, &w).unwrap();
            rep.check(one_sided_limit(&f, &x, Some(&w), true, &wl), || {
                "weighted left limit".into()
            });
            rep.check(one_sided_limit(&f, &x, Some(&w), false, &wu), || {
                "weighted right limit".into()
            });
        }

        let k = rng.random_range(1..n);
        let head_w = &w.as_slice()[..k];
        for (env, sub) in [(&lo, true), (&hi, false)] {
            let y = quasi_mean(env, &x[..k]).unwrap();
            let mut folded = vec![y; k];
            folded.extend_from_slice(&x[k..]);
            let (a, b) = (
                quasi_mean(env, &x).unwrap(),
                quasi_mean(env, &folded).unwrap(),
            );
            rep.check(if sub { a >= b } else { a <= b }, || {
                format!("associativity inequality fails for k = {k} at {}", show(&x))
            });
            if let Ok(hw) = Weights::new(head_w.to_vec()) {
                let z = weighted_quasi_mean(env, &x[..k], &hw).unwrap();
                let mut folded = vec![z; k];
                folded.extend_from_slice(&x[k..]);
                let a = weighted_quasi_mean(env, &x, &w).unwrap();
                let b = weighted_quasi_mean(env, &folded, &w).unwrap();
                rep.check(if sub { a >= b } else { a <= b }, || {
                    format!("weighted associativity inequality fails for k = {k}")
                });
            }
        }
    }
    rep
}

/// Recovering the `m`-variable mean from the `n`-variable one.
pub fn emn(seed: u64, trials: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("emn");
    let mut rng = suite_rng(seed, "emn");
    for _ in 0..trials {
        let f: Gen = random::generator(&mut rng, GeneratorShape::default());
        let n = rng.random_range(2..=5);
        let m = rng.random_range(1..n);
        let x = random::points(&mut rng, &f, m);
        let want = quasi_mean(&f, &x).unwrap();
        let got = reduce_from_n(&f, &x, n);
        rep.check(got == Ok((want.clone(), want.clone())), || {
            format!("reduce {} to n = {n}: {got:?}, want {want}", show(&x))
        });
    }
    rep
}

fn sample_inequality(
    rep: &mut SuiteReport,
    rng: &mut ChaCha8Rng,
    f: &Gen,
    g: &Gen,
    evaluations: usize,
) {
    for _ in 0..evaluations {
        let n = rng.random_range(1..=6);
        let x = random::points(rng, f, n);
        let w = random::weights(rng, n);
        let (a, b) = (
            weighted_quasi_mean(f, &x, &w),
            weighted_quasi_mean(g, &x, &w),
        );
        rep.check(matches!((&a, &b), (Ok(a), Ok(b)) if a <= b), || {
            format!("weighted means {a:?} > {b:?} at {}", show(&x))
        });
        let m = rng.random_range(1..=n);
        let (a, b) = (quasi_mean(f, &x[..m]), quasi_mean(g, &x[..m]));
        rep.check(matches!((&a, &b), (Ok(a), Ok(b)) if a <= b), || {
            format!("means {a:?} > {b:?} at {}", show(&x[..m]))
        });
    }
}

/// Independent check of a bridge certificate at cuts, piece points and
/// random samples.
fn check_bridge(
    rep: &mut SuiteReport,
    rng: &mut ChaCha8Rng,
    f: &Gen,
    g: &Gen,
    cert: &Certificate<Q>,
) {
    let Certificate::Bridge { phi, psi } = cert else {
        rep.fail("expected a bridge certificate".into());
        return;
    };
    rep.check(phi.is_convex() && phi.is_strictly_increasing(), || {
        format!("phi {phi} not convex increasing")
    });
    rep.check(psi.is_concave() && psi.is_strictly_increasing(), || {
        format!("psi {psi} not concave increasing")
    });
    rep.check(
        *phi.domain() == f.conv_range() && phi.image() == g.conv_range(),
        || "phi is not onto the range of g".into(),
    );
    let mut xs: Vec<Q> = f.boundaries().chain(g.boundaries()).cloned().collect();
    xs.extend(random::points(rng, f, 20));
    for x in xs {
        let (fx, gx) = (f.eval(&x).unwrap(), g.eval(&x).unwrap());
        let Some(p) = rep.guard(phi.eval(&fx), || format!("phi at {fx}")) else {
            continue;
        };
        rep.check(p <= gx, || format!("phi(f({x})) = {p} > g({x}) = {gx}"));
        if f.is_continuous_at(&x) && g.is_continuous_at(&x) {
            rep.check(p == gx, || format!("phi(f({x})) = {p} != g({x}) = {gx}"));
        }
        rep.check(psi.eval(&p) == Ok(fx.clone()), || {
            format!("psi does not undo phi at {fx}")
        });
    }
}

/// Comparable pairs certified and sampled, incomparable pairs refuted in
/// both directions.
pub fn comparison(seed: u64, pairs: usize, evaluations: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("compare");
    let mut rng = suite_rng(seed, "compare");
    let per_pair = (evaluations / pairs.max(1)).max(1);
    for (f, g) in comparable_pairs(seed, pairs) {
        let Some(v) = rep.guard(compare(&f, &g), || format!("compare {f} with {g}")) else {
            continue;
        };
        rep.check(v.relation == Relation::LessEq, || {
            format!("{} for {f} vs {g}", v.relation)
        });
        rep.check(f.jump_set() == g.jump_set(), || {
            "comparable pair with different jumps".into()
        });
        if let Some(c) = &v.certificate {
            check_bridge(&mut rep, &mut rng, &f, &g, c);
        }
        let back = compare(&g, &f).map(|v| v.relation);
        rep.check(back == Ok(Relation::GreaterEq), || {
            format!("reverse comparison gave {back:?}")
        });
        sample_inequality(&mut rep, &mut rng, &f, &g, per_pair);
    }
    let mut refuted = incomparable_pairs(seed, pairs);
    refuted.push(jump_and_identity());
    for (f, g) in refuted {
        let Some(v) = rep.guard(compare(&f, &g), || format!("compare {f} with {g}")) else {
            continue;
        };
        rep.check(v.relation == Relation::Incomparable, || {
            format!("{} for {f} vs {g}", v.relation)
        });
        for d in [Direction::LessEq, Direction::GreaterEq] {
            match v.witness(d) {
                Some(w) => {
                    let ce = witness_to_counterexample(&f, &g, &w.triple, d);
                    rep.check(ce.is_ok(), || {
                        format!("witness {} does not verify: {ce:?}", w.triple)
                    });
                }
                None => rep.fail(format!("missing {d} witness for {f} vs {g}")),
            }
        }
    }
    rep
}

/// Affine pairs are equal, and a small node perturbation breaks equality.
pub fn equality(seed: u64, pairs: usize, evaluations: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("equality");
    let mut rng = suite_rng(seed, "equality");
    let per_pair = (evaluations / pairs.max(1)).max(1);
    let bump = Q::ratio(1, 1000);
    for _ in 0..pairs {
        let (f, g, _, _) = random::affine_pair::<Q, _>(&mut rng);
        let Some(v) = rep.guard(compare(&f, &g), || format!("compare {f} with {g}")) else {
            continue;
        };
        rep.check(v.relation == Relation::Equal, || {
            format!("{} for an affine pair", v.relation)
        });
        match (&v.certificate, affine_relation(&f, &g)) {
            (Some(Certificate::Affine { alpha, beta }), Ok(Some((a, b)))) => {
                rep.check(*alpha == a && *beta == b && alpha.is_positive(), || {
                    "certificate mismatch".into()
                });
                for x in random::points(&mut rng, &f, 10) {
                    let ok =
                        f.eval(&x).unwrap() == alpha.clone() * g.eval(&x).unwrap() + beta.clone();
                    rep.check(ok, || format!("f != alpha g + beta at {x}"));
                }
            }
            other => rep.fail(format!("missing affine certificate: {other:?}")),
        }
        for _ in 0..per_pair {
            let n = rng.random_range(1..=6);
            let x = random::points(&mut rng, &f, n);
            let w = random::weights(&mut rng, n);
            rep.check(quasi_mean(&f, &x) == quasi_mean(&g, &x), || {
                format!("means differ at {}", show(&x))
            });
            rep.check(
                weighted_quasi_mean(&f, &x, &w) == weighted_quasi_mean(&g, &x, &w),
                || format!("weighted means differ at {}", show(&x)),
            );
        }
        let Some(perturbed) = perturb(&g, &bump) else {
            rep.fail(format!("cannot perturb {g}"));
            continue;
        };
        let after = compare(&f, &perturbed).map(|v| v.relation);
        rep.check(matches!(after, Ok(r) if r != Relation::Equal), || {
            format!("perturbed pair still {after:?}")
        });
        rep.check(affine_relation(&f, &perturbed) == Ok(None), || {
            "perturbed pair still affine".into()
        });
    }
    rep
}

/// Moves one boundary value by `delta`, preferring a jump node.
pub fn perturb(g: &Gen, delta: &Q) -> Option<Gen> {
    let target = g
        .jumps()
        .first()
        .map(|j| j.x().clone())
        .or_else(|| g.boundaries().next().cloned())?;
    let v = g.eval(&target).ok()?;
    g.with_boundary_value(&target, v.clone() + delta.clone())
        .or_else(|_| g.with_boundary_value(&target, v - delta.clone()))
        .ok()
}

/// The floor condition on every certified comparable pair.
pub fn nv(seed: u64, pairs: usize, n: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("nv");
    for (f, g) in comparable_pairs(seed, pairs) {
        if !matches!(compare(&f, &g), Ok(v) if v.relation == Relation::LessEq) {
            continue;
        }
        let Some(triples) = rep.guard(critical_triples(&f, &g), || "critical triples".into())
        else {
            continue;
        };
        let out = floor_condition(&f, &g, n, &triples);
        rep.check(matches!(&out, Ok(o) if o.passed()), || {
            format!("floor condition: {out:?}")
        });
    }
    rep
}

/// Semicontinuity probes against one-sided limits, and Kolmogorov probes.
pub fn sc(seed: u64, generators: usize, continuity_points: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("sc");
    let mut rng = suite_rng(seed, "sc");
    for f in suite_generators(seed, generators) {
        let mut xs: Vec<Q> = f.boundaries().cloned().collect();
        let nodes = xs.len();
        while xs.len() < nodes + continuity_points {
            let x = random::point_in(&mut rng, f.interval());
            if f.is_continuous_at(&x) {
                xs.push(x);
            }
        }
        for x in &xs {
            let (l, v, r) = f.limits(x).unwrap();
            for n in [2, 3, 5] {
                let d = semicontinuity_probe(&f, x, n);
                rep.check(
                    matches!(&d, Ok(d) if d.lower_semicontinuous == (l == v) && d.upper_semicontinuous == (v == r)),
                    || format!("probe at {x} with n = {n}: {d:?}"),
                );
            }
        }
        let k = kolmogorov_probe(&f, rng.random_range(2..=5));
        match k {
            Ok(k) if f.is_continuous() => rep.check(k.all_pass() && k.continuous, || {
                "continuous generator flagged".into()
            }),
            Ok(k) => {
                let flat = k.strictness_witness.as_ref().is_some_and(|w| {
                    let (a, b) = min_max(&w.x);
                    a != b
                        && (w.mean == a || w.mean == b)
                        && quasi_mean(&f, &w.x) == Ok(w.mean.clone())
                });
                rep.check(flat && !k.continuous && !k.strict, || {
                    format!("no strictness witness for {f}")
                });
            }
            Err(e) => rep.fail(format!("kolmogorov probe: {e}")),
        }
    }
    rep
}

/// The zero-spanning mean: representation on bounded intervals, the
/// plateau bound, non-strictness and escape at larger arity.
pub fn example_m(seed: u64, trials: usize, side_trials: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("example-m");
    let (a, b) = (Q::from_int(-1), Q::from_int(1));
    if let Some(r) = rep.guard(prop_m_experiment(&a, &b, 2, trials, seed), || {
        "experiment".into()
    }) {
        rep.check(r.passed(), || format!("experiment failed:\n{r}"));
        rep.check(r.escape.m == 11 && r.escape.mean == Q::ratio(1, 22), || {
            "escape datum".into()
        });
    }
    let mut rng = suite_rng(seed, "example-m");
    for n in 2..=4 {
        let a = -random::positive::<Q, _>(&mut rng);
        let b = random::positive::<Q, _>(&mut rng);
        if let Some(r) = rep.guard(prop_m_experiment(&a, &b, n, side_trials, seed), || {
            "experiment".into()
        }) {
            rep.check(r.passed(), || format!("experiment failed:\n{r}"));
        }
        let f = frak_generator(&a, &b, n).unwrap();
        let e = crate::example_m::escape_witness(&f, &a, &b).unwrap();
        rep.check(e.m > n && e.mean != e.frak, || {
            format!("no escape for n = {n}")
        });
    }
    let positive = OpenInterval::bounded(Q::ratio(1, 10), Q::from_int(7)).unwrap();
    for _ in 0..side_trials {
        let n = rng.random_range(1..=6);
        let x: Vec<Q> = (0..n)
            .map(|_| random::point_in(&mut rng, &positive))
            .collect();
        let mean = x.iter().fold(Q::from_int(0), |s, v| s + v) / Q::from_int(n as i64);
        rep.check(frak_m(&x) == Ok(mean.clone()), || {
            "arithmetic branch".into()
        });
        let neg: Vec<Q> = x.iter().map(|v| -v.clone()).collect();
        rep.check(frak_m(&neg) == Ok(-mean), || "negative branch".into());
    }
    rep
}

/// Function documents re-parse to the same objects.
pub fn roundtrip(seed: u64, generators: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("roundtrip");
    let mut rng = suite_rng(seed, "roundtrip");
    for _ in 0..generators {
        let f: Gen = random::generator(&mut rng, GeneratorShape::default());
        for h in [f.clone(), f.lower_envelope(), f.upper_envelope()] {
            let back = parse_function::<Q>(&function_to_string(&h));
            rep.check(back.as_ref() == Ok(&h), || {
                format!("round trip of {h}: {back:?}")
            });
        }
        let inv = f.generalized_inverse();
        let back = parse_continuous::<Q>(&continuous_to_string(&inv));
        rep.check(back.as_ref() == Ok(&inv), || {
            format!("round trip of inverse {inv}")
        });
    }
    rep
}

/// `x` on (0,1) and `x + 1` on (1,2) with value 1 at the jump, against the
/// identity on (0,2).
fn jump_and_identity() -> (Gen, Gen) {
    let q = |v: i64| Q::from_int(v);
    let j = MonotonePwl::new(
        vec![
            crate::segment::Segment::through(q(0), q(1), q(0), q(1)).unwrap(),
            crate::segment::Segment::through(q(1), q(2), q(2), q(3)).unwrap(),
        ],
        &[(q(1), q(1))],
    )
    .unwrap();
    let id = MonotonePwl::identity(OpenInterval::bounded(q(0), q(2)).unwrap());
    (j, id)
}
