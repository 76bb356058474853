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

//! The `gqam` command line.
//!
//! [`run`] parses an argument vector and returns the exit code together with
//! everything the command writes, so the binary is a thin wrapper and tests
//! can drive commands in-process.
//!
//! Exit codes: `0` success, `1` negative verdict (incomparable means, a
//! failed probe or check), `2` usage or input error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gqam::format::{continuous_to_string, function_to_string, parse_function, pretty};
use gqam::scalar::parse_scalar;
use gqam::verify::{run_all, run_suite};
use gqam::{
    compare, critical_triples, envelope_means, floor_condition, kolmogorov_probe,
    prop_m_experiment, quasi_mean, reduce_from_n, semicontinuity_probe, weighted_envelope_means,
    weighted_quasi_mean, witness_to_counterexample, Certificate, CompareVerdict, Error, Generator,
    Rational, Relation, Weights,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn verdict(passed: bool, stdout: String) -> Self {
        Outcome {
            code: if passed { EXIT_OK } else { EXIT_NEGATIVE },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(stderr: String) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "gqam",
    version,
    about = "Exact generalized quasiarithmetic means of piecewise-linear generators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct One {
    /// Generator spec file.
    #[arg(short = 'f', long = "function")]
    f: PathBuf,
}

#[derive(Args, Debug)]
struct Two {
    #[arg(short = 'f', long = "function")]
    f: PathBuf,
    /// Second generator spec file.
    #[arg(short = 'g', long = "other")]
    g: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Side {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Check {
    Lsc,
    Usc,
    Cont,
    Kolmogorov,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Value and one-sided limits of f at a point.
    Eval {
        #[command(flatten)]
        io: One,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long)]
        json: bool,
    },
    /// The quasiarithmetic mean of a point vector.
    Mean {
        #[command(flatten)]
        io: One,
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long)]
        json: bool,
    },
    /// The weighted quasiarithmetic mean.
    Wmean {
        #[command(flatten)]
        io: One,
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long)]
        json: bool,
    },
    /// The generalized inverse, at a point or as a spec document.
    Inverse {
        #[command(flatten)]
        io: One,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "emit")]
        at: Option<String>,
        /// Print the inverse as a continuous-function spec.
        #[arg(long, conflicts_with = "at")]
        emit: bool,
    },
    /// A semicontinuous envelope, or its mean at a point vector.
    Envelope {
        #[command(flatten)]
        io: One,
        #[arg(long, value_enum)]
        side: Side,
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "points")]
        weights: Option<String>,
    },
    /// Decide how the means of f and g compare for every arity.
    Compare {
        #[command(flatten)]
        io: Two,
        #[arg(long)]
        json: bool,
        /// Also write the structured verdict to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Decide whether f and g generate the same means.
    Equal {
        #[command(flatten)]
        io: Two,
        #[arg(long)]
        json: bool,
    },
    /// Continuity probes of the n-variable mean.
    Probe {
        #[command(flatten)]
        io: One,
        #[arg(long, value_enum)]
        check: Check,
        /// Point of the diagonal to probe; not used by the kolmogorov check.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        #[arg(short = 'n', long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Recover the m-variable mean from the n-variable one.
    Reduce {
        #[command(flatten)]
        io: One,
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(short = 'n', long)]
        n: usize,
    },
    /// The floor condition on the critical triples of f and g.
    Floorcheck {
        #[command(flatten)]
        io: Two,
        #[arg(short = 'n', long)]
        n: usize,
    },
    /// Experiment on the mean that is quasiarithmetic only on bounded intervals.
    ExampleM {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(short = 'n', long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Seeded property suites.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// `all`, or one of smf, mean-value, qam3, emn, compare, equality, nv,
        /// sc, example-m, roundtrip.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Input problems are reported with exit code 2, library errors verbatim.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Runs the command line `argv`, whose first element is the program name.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(o) => o,
        Err(Failure(msg)) => Outcome::usage(format!("error: {msg}\n")),
    }
}

fn load(path: &Path) -> Res<Generator> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    parse_function(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn scalar(text: &str, what: &str) -> Res<Rational> {
    parse_scalar(text.trim()).ok_or_else(|| Failure(format!("{what}: not a rational: {text:?}")))
}

fn list(text: &str, what: &str) -> Res<Vec<Rational>> {
    text.split(',').map(|s| scalar(s, what)).collect()
}

fn weights(text: &str, n: usize) -> Res<Weights<Rational>> {
    let w = list(text, "--weights")?;
    if w.len() != n {
        return Err(Failure(format!(
            "--weights: expected {n} values, got {}",
            w.len()
        )));
    }
    Ok(Weights::new(w)?)
}

fn line(v: impl std::fmt::Display) -> String {
    format!("{v}\n")
}

fn dispatch(cmd: Command) -> Res<Outcome> {
    match cmd {
        Command::Eval { io, at, json } => {
            let f = load(&io.f)?;
            let x = scalar(&at, "--at")?;
            let (l, v, r) = f.limits(&x)?;
            Ok(Outcome::ok(if json {
                line(pretty(&serde_json::json!({
                    "x": x.to_string(),
                    "left_limit": l.to_string(),
                    "value": v.to_string(),
                    "right_limit": r.to_string(),
                })))
            } else if l == r {
                line(v)
            } else {
                format!("{v}\nleft limit {l}, right limit {r}\n")
            }))
        }
        Command::Mean { io, points, json } => {
            let f = load(&io.f)?;
            let x = list(&points, "--points")?;
            let m = quasi_mean(&f, &x)?;
            Ok(Outcome::ok(if json {
                let (lo, hi) = envelope_means(&f, &x)?;
                line(pretty(&serde_json::json!({
                    "mean": m.to_string(),
                    "lower_envelope_mean": lo.to_string(),
                    "upper_envelope_mean": hi.to_string(),
                })))
            } else {
                line(m)
            }))
        }
        Command::Wmean {
            io,
            points,
            weights: w,
            json,
        } => {
            let f = load(&io.f)?;
            let x = list(&points, "--points")?;
            let w = weights(&w, x.len())?;
            let m = weighted_quasi_mean(&f, &x, &w)?;
            Ok(Outcome::ok(if json {
                let (lo, hi) = weighted_envelope_means(&f, &x, &w)?;
                line(pretty(&serde_json::json!({
                    "mean": m.to_string(),
                    "lower_envelope_mean": lo.to_string(),
                    "upper_envelope_mean": hi.to_string(),
                })))
            } else {
                line(m)
            }))
        }
        Command::Inverse { io, at, emit } => {
            let f = load(&io.f)?;
            if emit {
                return Ok(Outcome::ok(line(continuous_to_string(
                    &f.generalized_inverse(),
                ))));
            }
            let u = scalar(at.as_deref().unwrap_or_default(), "--at")?;
            Ok(Outcome::ok(line(f.inverse_at(&u)?)))
        }
        Command::Envelope {
            io,
            side,
            points,
            weights: w,
        } => {
            let f = load(&io.f)?;
            let env = match side {
                Side::Lower => f.lower_envelope(),
                Side::Upper => f.upper_envelope(),
            };
            let Some(points) = points else {
                return Ok(Outcome::ok(line(function_to_string(&env))));
            };
            let x = list(&points, "--points")?;
            let m = match w {
                Some(w) => weighted_quasi_mean(&env, &x, &weights(&w, x.len())?)?,
                None => quasi_mean(&env, &x)?,
            };
            Ok(Outcome::ok(line(m)))
        }
        Command::Compare { io, json, report } => {
            let (f, g) = (load(&io.f)?, load(&io.g)?);
            let v = compare(&f, &g)?;
            let doc = v.to_json(&f, &g)?;
            if let Some(path) = report {
                fs::write(&path, pretty(&doc) + "\n")
                    .map_err(|e| Failure(format!("cannot write {}: {e}", path.display())))?;
            }
            let text = if json {
                line(pretty(&doc))
            } else {
                verdict_text(&v, &f, &g)?
            };
            Ok(Outcome::verdict(v.relation != Relation::Incomparable, text))
        }
        Command::Equal { io, json } => {
            let (f, g) = (load(&io.f)?, load(&io.g)?);
            let v = compare(&f, &g)?;
            let equal = v.relation == Relation::Equal;
            let text = if json {
                line(pretty(&v.to_json(&f, &g)?))
            } else if let Some(Certificate::Affine { alpha, beta }) = &v.certificate {
                format!("EQUAL\nf = {alpha} * g + {beta}\n")
            } else {
                format!("NOT EQUAL ({})\n", v.relation)
            };
            Ok(Outcome::verdict(equal, text))
        }
        Command::Probe {
            io,
            check,
            at,
            n,
            json,
        } => probe(&load(&io.f)?, check, at.as_deref(), n, json),
        Command::Reduce { io, points, n } => {
            let f = load(&io.f)?;
            let x = list(&points, "--points")?;
            let (lo, hi) = reduce_from_n(&f, &x, n)?;
            Ok(Outcome::ok(format!("inf {lo}\nsup {hi}\n")))
        }
        Command::Floorcheck { io, n } => {
            let (f, g) = (load(&io.f)?, load(&io.g)?);
            let triples = critical_triples(&f, &g)?;
            let out = floor_condition(&f, &g, n, &triples)?;
            let text = match &out.failure {
                None => format!("PASS: {} critical triples, n = {n}\n", out.checked),
                Some(fail) => format!(
                    "FAIL at {} with m = {}: floor for f {} > floor for g {}\n",
                    fail.triple, fail.m, fail.floor_f, fail.floor_g
                ),
            };
            Ok(Outcome::verdict(out.passed(), text))
        }
        Command::ExampleM {
            a,
            b,
            n,
            trials,
            seed,
            json,
        } => {
            let (a, b) = (scalar(&a, "--a")?, scalar(&b, "--b")?);
            let r = prop_m_experiment(&a, &b, n, trials, seed)?;
            let text = if json {
                line(pretty(&r.to_json()))
            } else {
                line(&r)
            };
            Ok(Outcome::verdict(r.passed(), text))
        }
        Command::Verify {
            seed,
            trials,
            suite,
        } => {
            let reports = if suite == "all" {
                run_all(seed, trials)
            } else {
                vec![run_suite(&suite, seed, trials)?]
            };
            let mut text = format!("{:<11} {:>8} {:>8}  result\n", "suite", "checks", "failed");
            for r in &reports {
                let _ = writeln!(text, "{r}");
                for f in &r.failures {
                    let _ = writeln!(text, "    {f}");
                }
            }
            let passed = reports.iter().all(|r| r.passed());
            let _ = writeln!(
                text,
                "{}",
                if passed {
                    "all suites passed"
                } else {
                    "some suites failed"
                }
            );
            Ok(Outcome::verdict(passed, text))
        }
    }
}

fn probe(f: &Generator, check: Check, at: Option<&str>, n: usize, json: bool) -> Res<Outcome> {
    if let Check::Kolmogorov = check {
        let k = kolmogorov_probe(f, n)?;
        let mut text = String::new();
        let mark = |ok: bool| if ok { "yes" } else { "no" };
        let _ = writeln!(text, "kolmogorov properties, n = {}", k.n);
        let _ = writeln!(text, "envelope order     {}", mark(k.envelope_order));
        let _ = writeln!(text, "strict             {}", mark(k.strict));
        if let Some(w) = &k.strictness_witness {
            let _ = writeln!(text, "  witness {} -> {}", show(&w.x), w.mean);
        }
        let _ = writeln!(text, "strictly increasing {}", mark(k.strictly_increasing));
        if let Some((p, q)) = &k.plateau {
            let _ = writeln!(
                text,
                "  plateau {} and {} -> {}",
                show(&p.x),
                show(&q.x),
                p.mean
            );
        }
        let _ = writeln!(text, "continuous         {}", mark(k.continuous));
        if let Some(gap) = &k.envelope_gap {
            let _ = writeln!(
                text,
                "  jump at {}: {} < {}",
                show(&gap.x),
                gap.lower,
                gap.upper
            );
        }
        let _ = writeln!(text, "{}", if k.all_pass() { "PASS" } else { "FAIL" });
        if json {
            let doc = serde_json::json!({
                "n": k.n,
                "envelope_order": k.envelope_order,
                "strict": k.strict,
                "strictly_increasing": k.strictly_increasing,
                "continuous": k.continuous,
                "all_pass": k.all_pass(),
            });
            return Ok(Outcome::verdict(k.all_pass(), line(pretty(&doc))));
        }
        return Ok(Outcome::verdict(k.all_pass(), text));
    }
    let at = at.ok_or_else(|| Failure(format!("--check {check:?} needs --at").to_lowercase()))?;
    let x = scalar(at, "--at")?;
    let d = semicontinuity_probe(f, &x, n)?;
    let passed = match check {
        Check::Lsc => d.lower_semicontinuous,
        Check::Usc => d.upper_semicontinuous,
        _ => d.is_continuous(),
    };
    if json {
        let doc = serde_json::json!({
            "point": d.point.to_string(),
            "n": d.n,
            "lower_semicontinuous": d.lower_semicontinuous,
            "upper_semicontinuous": d.upper_semicontinuous,
            "lower_witness": d.lower_witness.as_ref().map(|w| witness_json(&w.x, &w.mean)),
            "upper_witness": d.upper_witness.as_ref().map(|w| witness_json(&w.x, &w.mean)),
        });
        return Ok(Outcome::verdict(passed, line(pretty(&doc))));
    }
    let mut text = String::new();
    let name = match check {
        Check::Lsc => "lower semicontinuous",
        Check::Usc => "upper semicontinuous",
        _ => "continuous",
    };
    let _ = writeln!(
        text,
        "{name} at ({x}, ..., {x}), n = {n}: {}",
        if passed { "yes" } else { "no" }
    );
    let shown = match check {
        Check::Lsc => vec![("below", &d.lower_witness)],
        Check::Usc => vec![("above", &d.upper_witness)],
        _ => vec![("below", &d.lower_witness), ("above", &d.upper_witness)],
    };
    for (side, w) in shown {
        if let Some(w) = w {
            let _ = writeln!(text, "  jump from {side}: {} -> {}", show(&w.x), w.mean);
        }
    }
    Ok(Outcome::verdict(passed, text))
}

fn witness_json(x: &[Rational], mean: &Rational) -> serde_json::Value {
    serde_json::json!({
        "x": x.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "mean": mean.to_string(),
    })
}

fn show(x: &[Rational]) -> String {
    let parts: Vec<String> = x.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn verdict_text(v: &CompareVerdict<Rational>, f: &Generator, g: &Generator) -> Res<String> {
    let mut text = line(v.relation);
    match &v.certificate {
        Some(Certificate::Affine { alpha, beta }) => {
            let _ = writeln!(text, "f = {alpha} * g + {beta}");
        }
        Some(Certificate::Bridge { phi, .. }) => {
            let knots: Vec<String> = phi.breakpoints().map(|b| b.to_string()).collect();
            let _ = writeln!(
                text,
                "convex bridge with breakpoints [{}]",
                knots.join(", ")
            );
        }
        None => {}
    }
    if let Some(b) = &v.jump_mismatch {
        let _ = writeln!(text, "jump sets differ at {b}");
    }
    for w in &v.witnesses {
        let ce = witness_to_counterexample(f, g, &w.triple, w.direction)?;
        let _ = writeln!(
            text,
            "witness against {}: (x, t, y) = {}, r_f = {}, r_g = {}",
            w.direction, w.triple, w.r_f, w.r_g
        );
        let _ = writeln!(
            text,
            "  weights ({}, {}) at ({}, {}): f-mean {}, g-mean {}",
            ce.weights.as_slice()[0],
            ce.weights.as_slice()[1],
            ce.points[0],
            ce.points[1],
            ce.mean_f,
            ce.mean_g
        );
    }
    Ok(text)
}
