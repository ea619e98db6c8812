use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;
use ybe::search::{self, EnumFilter};
use ybe::solution::is_isomorphic;
use ybe_cli::{Body, CliError, SolutionDocument};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn ybe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybe")).args(args).output().expect("binary runs")
}

fn status(out: &Output) -> i32 {
    out.status.code().expect("exit status")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

/// All triples where the two sides of the braid relation differ, from r alone.
fn braid_violations(sigma: &[Vec<usize>], tau: &[Vec<usize>]) -> Vec<[usize; 3]> {
    let n = sigma.len();
    let r = |x: usize, y: usize| (sigma[x][y], tau[y][x]);
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // r12 r23 r12 versus r23 r12 r23
                let (a, b) = r(x, y);
                let (b, c) = r(b, z);
                let (a, b) = r(a, b);
                let lhs = (a, b, c);
                let (b, c) = r(y, z);
                let (a, b) = r(x, b);
                let (b, c) = r(b, c);
                if lhs != (a, b, c) {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

#[test]
fn every_fixture_validates() {
    for name in ["exm1.json", "singleton.json", "lyubashenko3.json", "derived2.json", "z3group.json", "qcycle-const-e.json"] {
        let out = ybe(&["validate", fixture(name).to_str().unwrap()]);
        assert_eq!(status(&out), 0, "{name}: {}", stdout(&out));
    }
}

#[test]
fn exm1_is_left_but_not_right_nondegenerate() {
    let out = ybe(&["validate", fixture("exm1.json").to_str().unwrap(), "--json"]);
    assert_eq!(status(&out), 0);
    let v = json(&out);
    assert_eq!(v["braid_ok"], true);
    assert_eq!(v["properties"]["flags"]["left_nondegenerate"], true);
    assert_eq!(v["properties"]["flags"]["right_nondegenerate"], false);
    assert_eq!(v["properties"]["flags"]["bijective"], false);
}

#[test]
fn broken_tau_entry_reports_every_violating_triple() {
    let doc = SolutionDocument::load(&fixture("exm1.json")).unwrap();
    let Body::Solution { sigma, mut tau } = doc.body.clone() else { panic!() };
    tau[2][0] = 0;
    let expected = braid_violations(&sigma, &tau);
    assert!(!expected.is_empty());
    let broken = SolutionDocument { body: Body::Solution { sigma, tau }, ..doc };
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, broken.emit()).unwrap();

    let out = ybe(&["validate", path.to_str().unwrap(), "--json"]);
    assert_eq!(status(&out), 1);
    let got: Vec<[usize; 3]> = serde_json::from_value(json(&out)["braid_violations"].clone()).unwrap();
    assert_eq!(got, expected);
    let first = broken.labelled(&expected[0]);
    assert!(stdout(&ybe(&["validate", path.to_str().unwrap()])).contains(&first));
}

#[test]
fn input_errors_exit_with_status_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("syntax.json", "{ \"format_version\": 1,"),
        ("range.json", r#"{"format_version":1,"n":2,"sigma":[[0,5],[0,1]],"tau":[[0,1],[0,1]]}"#),
        ("shape.json", r#"{"format_version":1,"n":2,"sigma":[[0,1]],"tau":[[0,1],[0,1]]}"#),
    ];
    for (name, text) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        assert_eq!(status(&ybe(&["validate", path.to_str().unwrap()])), 2, "{name}");
    }
    assert_eq!(status(&ybe(&["validate", dir.path().join("missing.json").to_str().unwrap()])), 2);
}

#[test]
fn perturbed_qcycle_fails_validation() {
    let doc = SolutionDocument::load(&fixture("qcycle-const-e.json")).unwrap();
    let Body::QCycle { dot, mut colon } = doc.body.clone() else { panic!() };
    colon[1][2] = 2;
    let q = ybe::qcycle::QCycleSet::from_rows(&dot, &colon).unwrap();
    let expected = ybe::qcycle::validate_qcycle(&q);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    std::fs::write(&path, SolutionDocument { body: Body::QCycle { dot, colon }, ..doc }.emit()).unwrap();
    let out = ybe(&["validate", path.to_str().unwrap(), "--json"]);
    assert_eq!(status(&out), 1);
    let got: Vec<[usize; 4]> = serde_json::from_value(json(&out)["qcycle_violations"].clone()).unwrap();
    assert_eq!(got, expected);
    assert!(!got.is_empty());
}

#[test]
fn exm1_retract_is_incompatible_with_tau() {
    let out = ybe(&["analyze", fixture("exm1.json").to_str().unwrap(), "--retract"]);
    assert_eq!(status(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("~ blocks: {a,b} {c}"), "{text}");
    assert!(text.contains("τ_a(a) = b and τ_a(b) = c are not related"), "{text}");
    assert!(text.contains("CompatibilityError"));

    let v = json(&ybe(&["analyze", fixture("exm1.json").to_str().unwrap(), "--retract", "--json"]));
    assert_eq!(v["sections"]["retract"]["compatibility"]["τ"], serde_json::json!([0, 0, 0, 1]));
    assert_eq!(v["sections"]["retract"]["error"]["name"], "CompatibilityError");
}

#[test]
fn preconditions_map_to_distinct_statuses() {
    let exm1 = fixture("exm1.json");
    assert_eq!(status(&ybe(&["analyze", exm1.to_str().unwrap(), "--mpl"])), 3);
    assert_eq!(status(&ybe(&["analyze", exm1.to_str().unwrap(), "--orbits"])), 3);
    let z3 = fixture("z3group.json");
    assert_eq!(status(&ybe(&["analyze", z3.to_str().unwrap(), "--kred", "--max-k", "2"])), 0);
    assert_eq!(status(&ybe(&["enumerate", "5"])), 7);
    assert_eq!(status(&ybe(&["suite", "--n-max", "5"])), 7);
}

#[test]
fn lyubashenko_has_level_one() {
    let v = json(&ybe(&["analyze", fixture("lyubashenko3.json").to_str().unwrap(), "--mpl", "--json"]));
    assert_eq!(v["sections"]["mpl"]["mpl"], 1);
    assert_eq!(v["sections"]["mpl"]["chain_sizes"], serde_json::json!([3, 1]));
}

#[test]
fn z3_group_is_never_permutational() {
    let out = ybe(&["analyze", fixture("z3group.json").to_str().unwrap(), "--kperm", "--max-k", "4", "--diag"]);
    assert_eq!(status(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("not k-permutational for k <= 4"), "{text}");
    assert!(text.contains("U is constant"), "{text}");
}

#[test]
fn constant_colon_diagonals() {
    let v = json(&ybe(&["analyze", fixture("qcycle-const-e.json").to_str().unwrap(), "--qcycle", "--json"]));
    let d = &v["sections"]["qcycle"]["diagonals"];
    assert_eq!(d["u"], serde_json::json!([0, 1, 2]));
    assert_eq!(d["u_hat"], serde_json::json!([0, 0, 0]));
    assert_eq!(v["sections"]["qcycle"]["regular"], false);
}

#[test]
fn analyze_all_is_deterministic() {
    for name in ["exm1.json", "lyubashenko3.json", "derived2.json"] {
        let path = fixture(name);
        let a = ybe(&["analyze", path.to_str().unwrap(), "--all", "--json", "--seed", "7"]);
        let b = ybe(&["analyze", path.to_str().unwrap(), "--all", "--json", "--seed", "7"]);
        assert_eq!(status(&a), 0, "{name}");
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn enumerate_one_writes_one_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = ybe(&["enumerate", "1", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(status(&out), 0);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let doc = SolutionDocument::load(&dir.path().join("solution-0000.json")).unwrap();
    assert_eq!(doc.to_solution().unwrap(), ybe::FiniteSolution::singleton());
}

#[test]
fn enumerate_matches_checked_in_census() {
    let out = ybe(&["enumerate", "2", "--nd", "--census", "--check-frozen"]);
    assert_eq!(status(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("matches the checked-in census"));
    let out = ybe(&["enumerate", "2", "--involutive", "--left-nd", "--check-frozen"]);
    assert_eq!(status(&out), 1, "{}", stdout(&out));
}

#[test]
fn left_nd_census_contains_exm1() {
    let dir = tempfile::tempdir().unwrap();
    let out = ybe(&["enumerate", "3", "--left-nd", "--census", "--json", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(status(&out), 0);
    let v = json(&out);
    let want = search::frozen_record(3, &EnumFilter::left_nd()).unwrap();
    assert_eq!(v["census"]["raw"], want.raw);
    assert_eq!(v["census"]["iso"], want.iso);
    assert_eq!(v["count"], want.raw);

    let mut names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), want.raw);
    assert_eq!(names[0], "solution-0000.json");
    let exm1 = SolutionDocument::load(&fixture("exm1.json")).unwrap().tables().unwrap();
    let found = names.iter().any(|name| {
        let t = SolutionDocument::load(&dir.path().join(name)).unwrap().tables().unwrap();
        is_isomorphic(&t, &exm1).unwrap().is_some()
    });
    assert!(found);
}

#[test]
fn suite_passes_for_small_sizes() {
    for n in ["1", "2"] {
        assert_eq!(status(&ybe(&["suite", "--n-max", n])), 0);
    }
    let out = ybe(&["suite", "--n-max", "3", "--json"]);
    assert_eq!(status(&out), 0);
    let v = json(&out);
    assert!(v["elapsed_ms"].is_u64());
    assert!(v["theorems"].as_array().unwrap().iter().all(|t| t["failures"] == 0));
}

#[test]
fn unknown_label_is_rejected() {
    let text = r#"{"format_version":1,"n":2,"labels":["a","b"],"sigma":[["a","z"],[0,1]],"tau":[[0,1],[0,1]]}"#;
    assert!(matches!(SolutionDocument::parse(text), Err(CliError::Malformed(_))));
}

fn document() -> impl Strategy<Value = SolutionDocument> {
    (1usize..=4, any::<bool>(), any::<bool>()).prop_flat_map(|(n, qcycle, labelled)| {
        let table = prop::collection::vec(prop::collection::vec(0..n, n), n);
        (table.clone(), table).prop_map(move |(a, b)| {
            let labels = labelled.then(|| (0..n).map(|i| format!("p{i}")).collect());
            let body = if qcycle { Body::QCycle { dot: a, colon: b } } else { Body::Solution { sigma: a, tau: b } };
            SolutionDocument { n, labels, body }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn documents_round_trip_through_files(doc in document()) {
        let file = tempfile::NamedTempFile::new().unwrap();
        std::fs::write(file.path(), doc.emit()).unwrap();
        prop_assert_eq!(SolutionDocument::load(file.path()).unwrap(), doc);
    }
}
