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

use std::fs;
use std::path::PathBuf;

use gqam_cli::{run, Outcome, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};
use tempfile::TempDir;

const J: &str = r#"{
  "interval": {"left": "0", "right": "2"},
  "segments": [
    {"from": "0", "to": "1", "value_from": "0", "value_to": "1"},
    {"from": "1", "to": "2", "value_from": "2", "value_to": "3"}
  ],
  "nodes": [{"x": "1", "value": "1"}]
}"#;

const ID: &str = r#"{
  "interval": {"left": "0", "right": "2"},
  "segments": [{"from": "0", "to": "2", "value_from": "0", "value_to": "2"}]
}"#;

const CONVEX: &str = r#"{
  "interval": {"left": "0", "right": "2"},
  "segments": [
    {"from": "0", "to": "1", "value_from": "0", "value_to": "1"},
    {"from": "1", "to": "2", "value_from": "1", "value_to": "3"}
  ]
}"#;

const SHIFTED_ID: &str = r#"{
  "interval": {"left": "0", "right": "2"},
  "segments": [{"from": "0", "to": "2", "value_from": "5", "value_to": "9"}]
}"#;

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        for (name, text) in [
            ("j.json", J),
            ("id.json", ID),
            ("cv.json", CONVEX),
            ("id2.json", SHIFTED_ID),
        ] {
            fs::write(dir.path().join(name), text).unwrap();
        }
        Files { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Outcome {
        let mut argv = vec!["gqam".to_string()];
        for a in args {
            argv.push(match a.strip_prefix('@') {
                Some(name) => self.path(name).to_str().unwrap().to_string(),
                None => a.to_string(),
            });
        }
        run(argv)
    }
}

#[test]
fn mean_of_j() {
    let fs = Files::new();
    let out = fs.run(&["mean", "-f", "@j.json", "--points", "1/2,3/2"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "1\n"));
}

#[test]
fn weighted_mean() {
    let fs = Files::new();
    let out = fs.run(&[
        "wmean",
        "-f",
        "@j.json",
        "--points",
        "1/2,3/2",
        "--weights",
        "13/16,3/16",
    ]);
    assert_eq!(out.stdout, "7/8\n");
    let bad = fs.run(&[
        "wmean",
        "-f",
        "@j.json",
        "--points",
        "1/2,3/2",
        "--weights",
        "1",
    ]);
    assert_eq!(bad.code, EXIT_USAGE);
    let negative = fs.run(&[
        "wmean",
        "-f",
        "@j.json",
        "--points",
        "1/2,3/2",
        "--weights",
        "-1,2",
    ]);
    assert_eq!(negative.code, EXIT_USAGE);
}

#[test]
fn eval_reports_jump_limits() {
    let fs = Files::new();
    let out = fs.run(&["eval", "-f", "@j.json", "--at", "1"]);
    assert_eq!(out.stdout, "1\nleft limit 1, right limit 2\n");
    assert_eq!(
        fs.run(&["eval", "-f", "@j.json", "--at", "1/2"]).stdout,
        "1/2\n"
    );
    let json: serde_json::Value = serde_json::from_str(
        &fs.run(&["eval", "-f", "@j.json", "--at", "1", "--json"])
            .stdout,
    )
    .unwrap();
    assert_eq!(json["right_limit"], "2");
}

#[test]
fn inverse_at_a_gap_point() {
    let fs = Files::new();
    assert_eq!(
        fs.run(&["inverse", "-f", "@j.json", "--at", "3/2"]).stdout,
        "1\n"
    );
    assert_eq!(
        fs.run(&["inverse", "-f", "@j.json", "--at", "5/2"]).stdout,
        "3/2\n"
    );
    assert_eq!(fs.run(&["inverse", "-f", "@j.json"]).code, EXIT_USAGE);
}

#[test]
fn envelope_mean() {
    let fs = Files::new();
    let out = fs.run(&[
        "envelope", "-f", "@j.json", "--side", "upper", "--points", "1,5/4",
    ]);
    assert_eq!(out.stdout, "9/8\n");
    let out = fs.run(&[
        "envelope", "-f", "@j.json", "--side", "lower", "--points", "1,5/4",
    ]);
    assert_eq!(out.stdout, "1\n");
}

#[test]
fn compare_outcomes_and_exit_codes() {
    let fs = Files::new();
    let out = fs.run(&["compare", "-f", "@j.json", "-g", "@id.json"]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert!(out.stdout.starts_with("INCOMPARABLE\n"));
    assert!(out.stdout.contains("witness against LESS_EQ"));
    assert!(out.stdout.contains("witness against GREATER_EQ"));

    let out = fs.run(&["compare", "-f", "@id.json", "-g", "@cv.json"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("LESS_EQ\n"));
    let out = fs.run(&["compare", "-f", "@cv.json", "-g", "@id.json"]);
    assert!(out.stdout.starts_with("GREATER_EQ\n"));
}

#[test]
fn compare_report_file() {
    let fs = Files::new();
    let report = fs.path("report.json");
    let out = fs.run(&[
        "compare",
        "-f",
        "@j.json",
        "-g",
        "@id.json",
        "--report",
        "@report.json",
    ]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(doc["relation"], "INCOMPARABLE");
    assert_eq!(doc["witnesses"][0]["counterexample"]["lambda"], "13/16");
    let json = fs.run(&["compare", "-f", "@j.json", "-g", "@id.json", "--json"]);
    let again: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(again, doc);
}

#[test]
fn equality() {
    let fs = Files::new();
    let out = fs.run(&["equal", "-f", "@id2.json", "-g", "@id.json"]);
    assert_eq!(
        (out.code, out.stdout.as_str()),
        (EXIT_OK, "EQUAL\nf = 2 * g + 5\n")
    );
    let out = fs.run(&["equal", "-f", "@j.json", "-g", "@id.json"]);
    assert_eq!(
        (out.code, out.stdout.as_str()),
        (EXIT_NEGATIVE, "NOT EQUAL (INCOMPARABLE)\n")
    );
}

#[test]
fn probes() {
    let fs = Files::new();
    let lsc = fs.run(&["probe", "-f", "@j.json", "--check", "lsc", "--at", "1"]);
    assert_eq!(lsc.code, EXIT_OK);
    let usc = fs.run(&["probe", "-f", "@j.json", "--check", "usc", "--at", "1"]);
    assert_eq!(usc.code, EXIT_NEGATIVE);
    assert!(
        usc.stdout.contains("jump from above: (1, 3/2) -> 1"),
        "{}",
        usc.stdout
    );
    assert_eq!(
        fs.run(&["probe", "-f", "@id.json", "--check", "cont", "--at", "1"])
            .code,
        EXIT_OK
    );
    assert_eq!(
        fs.run(&["probe", "-f", "@j.json", "--check", "cont"]).code,
        EXIT_USAGE
    );
    let k = fs.run(&["probe", "-f", "@j.json", "--check", "kolmogorov"]);
    assert_eq!(k.code, EXIT_NEGATIVE);
    assert!(k.stdout.ends_with("FAIL\n"));
    assert_eq!(
        fs.run(&["probe", "-f", "@cv.json", "--check", "kolmogorov"])
            .code,
        EXIT_OK
    );
}

#[test]
fn reduce_and_floorcheck() {
    let fs = Files::new();
    let out = fs.run(&["reduce", "-f", "@j.json", "--points", "1/2,3/2", "-n", "5"]);
    assert_eq!(out.stdout, "inf 1\nsup 1\n");
    assert_eq!(
        fs.run(&["reduce", "-f", "@j.json", "--points", "1/2,3/2", "-n", "2"])
            .code,
        EXIT_USAGE
    );
    let ok = fs.run(&["floorcheck", "-f", "@id.json", "-g", "@cv.json", "-n", "8"]);
    assert_eq!(ok.code, EXIT_OK, "{}", ok.stdout);
    let bad = fs.run(&["floorcheck", "-f", "@cv.json", "-g", "@id.json", "-n", "8"]);
    assert_eq!(bad.code, EXIT_NEGATIVE, "{}", bad.stdout);
}

#[test]
fn example_m_passes_and_is_repeatable() {
    let fs = Files::new();
    let args = [
        "example-m",
        "--a",
        "-1",
        "--b",
        "1",
        "--n",
        "2",
        "--trials",
        "200",
        "--seed",
        "7",
    ];
    let first = fs.run(&args);
    assert_eq!(first.code, EXIT_OK);
    assert!(first.stdout.ends_with("result:   PASS\n"));
    assert_eq!(first, fs.run(&args));
    let bad = fs.run(&["example-m", "--a", "1", "--b", "-1"]);
    assert_eq!(bad.code, EXIT_USAGE);
}

#[test]
fn verify_one_suite() {
    let fs = Files::new();
    let out = fs.run(&["verify", "--seed", "3", "--trials", "40", "--suite", "emn"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("emn"));
    assert_eq!(fs.run(&["verify", "--suite", "nothing"]).code, EXIT_USAGE);
}

#[test]
fn usage_and_input_errors() {
    let fs = Files::new();
    assert_eq!(fs.run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(
        fs.run(&["mean", "-f", "@missing.json", "--points", "1"])
            .code,
        EXIT_USAGE
    );
    assert_eq!(
        fs.run(&["mean", "-f", "@j.json", "--points", "1/0"]).code,
        EXIT_USAGE
    );
    let out = fs.run(&["mean", "-f", "@j.json", "--points", "3"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.starts_with("error: "));
    fs::write(fs.path("bad.json"), "{\"interval\": 3}").unwrap();
    assert_eq!(
        fs.run(&["mean", "-f", "@bad.json", "--points", "1"]).code,
        EXIT_USAGE
    );
    assert_eq!(fs.run(&["--help"]).code, EXIT_OK);
}
