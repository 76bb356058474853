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

use gqam::verify::{run_all, run_suite, SUITES};

#[test]
fn every_suite_passes_on_a_small_run() {
    let reports = run_all(11, 60);
    for r in &reports {
        println!("{r}");
        for f in &r.failures {
            println!("    {f}");
        }
    }
    assert!(reports.iter().all(|r| r.passed()));
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(run_suite("nope", 1, 10).is_err());
    assert_eq!(SUITES.len(), 10);
}
