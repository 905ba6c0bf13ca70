use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn icat(args: &[&str], dir: &Path) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_icat")).args(args).current_dir(dir).output().unwrap();
    let code = out.status.code().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, report)
}

fn corpus() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let (code, rep) = icat(&["gen", "--seed", "3", "--trials", "2", "--out", "."], dir.path());
    assert_eq!(code, 0, "{rep}");
    assert_eq!(rep["evidence"]["files"].as_array().unwrap().len(), rep["evidence"]["count"].as_u64().unwrap() as usize);
    dir
}

#[test]
fn reports_have_the_contract_fields() {
    let dir = corpus();
    let (code, rep) = icat(&["segal-check", "nerve-of-chain2.json"], dir.path());
    assert_eq!(code, 0);
    for key in ["command", "inputs", "verdict", "evidence", "bounds", "seed"] {
        assert!(rep.get(key).is_some(), "missing {key}");
    }
    assert_eq!(rep["verdict"], "PASS");
    assert_eq!(rep["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn exit_codes_follow_the_verdict() {
    let dir = corpus();
    let d = dir.path();
    assert_eq!(icat(&["validate", "icat-chain1.json"], d).0, 0);
    let (code, rep) = icat(&["complete-check", "icat-chaotic2.json"], d);
    assert_eq!((code, rep["verdict"].as_str()), (1, Some("FAIL")));
    let (code, rep) = icat(&["is-nerve", "nerve-of-chaotic3.json", "--budget", "1"], d);
    assert_eq!((code, rep["verdict"].as_str()), (2, Some("UNKNOWN")));
    assert_eq!(icat(&["homology", "missing.json"], d).0, 3);
    assert_eq!(icat(&["frobnicate", "icat-chain1.json"], d).0, 3);
    assert_eq!(icat(&["nerve", "nerve-of-chain1.json"], d).0, 3);
}

#[test]
fn every_fail_carries_a_witness() {
    let dir = corpus();
    let d = dir.path();
    for args in [
        ["complete-check", "icat-chaotic2.json"],
        ["complete-check", "nerve-of-z2.json"],
        ["segal-check", "icat-interval-monoid.json"],
    ] {
        let (code, rep) = icat(&args, d);
        assert_eq!(code, 1, "{args:?}");
        assert!(!rep["evidence"]["witness"].is_null(), "{args:?}: {rep}");
    }
    let (_, rep) = icat(&["complete-check", "icat-chaotic2.json"], d);
    assert_eq!(rep["evidence"]["witness"], "π0 2 vs 4");
    let (_, rep) = icat(&["segal-check", "icat-interval-monoid.json"], d);
    assert!(rep["evidence"]["witness"]["horn"].is_object());
}

#[test]
fn out_writes_a_loadable_document() {
    let dir = corpus();
    let d = dir.path();
    let (code, rep) = icat(&["nerve", "icat-chaotic2.json", "--out", "n.json"], d);
    assert_eq!(code, 0);
    assert!(rep["evidence"].get("document").is_none());
    let (code, rep) = icat(&["validate", "n.json"], d);
    assert_eq!((code, rep["evidence"]["kind"].as_str()), (0, Some("sspace")));
    let (code, _) = icat(&["complete-check", "n.json"], d);
    assert_eq!(code, 1);
    // without --out the document is embedded
    let (_, rep) = icat(&["grothendieck", "grdata-z2-swap.json"], d);
    assert_eq!(rep["evidence"]["document"]["kind"], "icat");
}

#[test]
fn commands_on_their_input_kinds() {
    let dir = corpus();
    let d = dir.path();
    let runs: &[(&[&str], i32)] = &[
        (&["ho", "icat-z2.json"], 0),
        (&["hoequiv", "nerve-of-chain2.json"], 0),
        (&["is-nerve", "cell-F_2_xD_1_.json"], 0),
        (&["s-adjoint", "cell-F_1_xD_1_.json", "icat-chain2.json"], 0),
        (&["yoneda-check", "presheaf-chain1-corep-0.json"], 0),
        (&["bar", "presheaf-chain1-terminal_right.json"], 0),
        (&["int-check", "scat-chaotic2.json"], 0),
        (&["grothendieck", "grdata-z2-swap.json"], 0),
        (&["segal-check", "icat-Gr_z2__swap_a_b__.json"], 0),
        (&["complete-check", "nerve-of-square.json"], 0),
    ];
    for (args, want) in runs {
        let (code, rep) = icat(args, d);
        assert_eq!(code, *want, "{args:?}: {rep}");
    }
}

#[test]
fn verify_key_lemma_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "key-lemma", "--trials", "6", "--seed", "9", "--dim", "2"];
    let a = Command::new(env!("CARGO_BIN_EXE_icat")).args(args).current_dir(dir.path()).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_icat")).args(args).current_dir(dir.path()).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let rep: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(rep["evidence"]["instances"].as_array().unwrap().len(), 6);
    assert_eq!(rep["seed"], 9);
}
