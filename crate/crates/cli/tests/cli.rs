use std::path::PathBuf;
use std::process::{Command, Output};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use gkz_core::gseries::SeriesRecord;
use gkz_core::srring::RingReport;
use gkz_core::triang::{EnumerationRecord, TriangulationRecord};

fn config() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/pentagon.json")
}

fn gkz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gkz")).arg("--input").arg(config()).args(args).output().unwrap()
}

fn result(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["result"].clone()
}

fn round_trips<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(v: &Value) {
    let parsed: T = serde_json::from_value(v.clone()).unwrap();
    let again: T = serde_json::from_value(serde_json::to_value(&parsed).unwrap()).unwrap();
    assert_eq!(parsed, again);
    assert_eq!(&serde_json::to_value(&parsed).unwrap(), v);
}

#[test]
fn artifacts_reparse_into_equal_values() {
    let e = gkz(&["enumerate"]);
    assert!(e.status.success());
    round_trips::<EnumerationRecord>(&result(&e));

    let t = gkz(&["triangulate", "--heights", "1,2,4,8,16,32"]);
    assert!(t.status.success());
    round_trips::<TriangulationRecord>(&result(&t));

    let r = gkz(&["ring", "-t", "T5"]);
    round_trips::<RingReport>(&result(&r));

    let s = gkz(&["series", "-t", "T5", "--order", "3"]);
    round_trips::<SeriesRecord>(&result(&s));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["enumerate"],
        vec!["chambers"],
        vec!["series", "-t", "T1", "--beta", "-a4", "--order", "3"],
        vec!["evaluate", "-t", "T5", "--deep", "2", "--order", "6", "--seed", "3"],
    ] {
        let a = gkz(&args);
        let b = gkz(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn seed_is_recorded() {
    let v: Value = serde_json::from_slice(&gkz(&["kernel", "--seed", "42"]).stdout).unwrap();
    assert_eq!(v["seed"], 42);
    assert_eq!(v["command"], "kernel");
}

#[test]
fn verify_on_first_triangulation_passes() {
    let out = gkz(&["verify", "--triangulation", "T1", "--beta", "0", "--order", "4"]);
    assert!(out.status.success());
    let r = result(&out);
    assert_eq!(r["all_passed"], true);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));
}

#[test]
fn exit_codes() {
    assert_eq!(gkz(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gkz(&["ring", "-t", "T99"]).status.code(), Some(2));
    let degenerate = gkz(&["triangulate", "--heights", "1,1,1,1,1,1"]);
    assert_eq!(degenerate.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&degenerate.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "DegenerateHeights");
    let outside = gkz(&["evaluate", "-t", "T5", "--z", "0,0,0,0,0,0"]);
    assert_eq!(outside.status.code(), Some(1));
    let no_input = Command::new(env!("CARGO_BIN_EXE_gkz")).arg("kernel").output().unwrap();
    assert_eq!(no_input.status.code(), Some(2));
}

#[test]
fn triangulation_file_feeds_later_commands() {
    let dir = tempfile::tempdir().unwrap();
    let tri = dir.path().join("t.json");
    let ring = dir.path().join("r.json");
    let out = gkz(&["triangulate", "--heights", "5,3,9,1,4,11", "--output", tri.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let out = gkz(&["ring", "-t", tri.to_str().unwrap(), "-o", ring.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&ring).unwrap()).unwrap();
    assert_eq!(v["result"]["total_dim"], 5);
}
