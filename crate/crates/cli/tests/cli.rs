use std::path::PathBuf;
use std::process::{Command, Output};

fn canonsys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_canonsys")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn info_examples() {
    let d3 = json(&canonsys(&["info", "dihedral:3", "--json"]));
    assert_eq!((d3["order"].as_u64(), d3["reflections"].as_u64()), (Some(6), Some(3)));
    assert_eq!(d3["degrees"], serde_json::json!([2, 3]));

    let c4 = json(&canonsys(&["info", "cyclic:4", "--json"]));
    assert_eq!((c4["order"].as_u64(), c4["reflections"].as_u64()), (Some(4), Some(3)));
    assert_eq!(c4["hyperplanes"], serde_json::json!([{"form": "x", "e": 4}]));
    assert_eq!(c4["delta"], "x^3");

    let g4 = canonsys(&["info", "G4", "--json"]);
    assert!(g4.status.success());
    let g4 = json(&g4);
    assert_eq!((g4["order"].as_u64(), g4["reflections"].as_u64()), (Some(24), Some(8)));
    let es: Vec<u64> = g4["hyperplanes"].as_array().unwrap().iter().map(|h| h["e"].as_u64().unwrap()).collect();
    assert_eq!(es, vec![3, 3, 3, 3]);
    assert_eq!(g4["degrees"], serde_json::json!([4, 6]));
}

#[test]
fn info_reads_group_files() {
    let o = canonsys(&["info", &data("b2_group.json"), "--json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["degrees"], serde_json::json!([2, 4]));
}

#[test]
fn invariants_examples() {
    let c5 = json(&canonsys(&["invariants", "cyclic:5", "--json"]));
    assert_eq!(c5["system"]["polys"][0]["terms"], serde_json::json!([{"exp": [5], "coeff": "1; 0:1"}]));
    assert_eq!(c5["passed"], true);

    let b2 = canonsys(&["invariants", "B:2", "--seed", "7"]);
    assert!(b2.status.success());
    assert!(stdout(&b2).contains("[PASS] degrees: [2, 4]"));

    let dep = canonsys(&["invariants", "dihedral:4", "--from", &data("dihedral4_dependent.json")]);
    assert_eq!(dep.status.code(), Some(1));
    assert!(stdout(&dep).contains("[FAIL] jacobian: J = 0"));
}

#[test]
fn canonical_examples() {
    let b2 = canonsys(&["canonical", "B:2"]);
    assert!(b2.status.success());
    assert!(stdout(&b2).contains("g2 = x^4 - 6*x^2*y^2 + y^4"));

    let c6 = json(&canonsys(&["canonical", "cyclic:6", "--json"]));
    assert_eq!(c6["system"]["pairs"][0]["c"], "1; 0:720");
    assert_eq!(c6["system"]["pairs"][0]["g"]["terms"][0]["exp"], serde_json::json!([6]));

    let d5 = json(&canonsys(&["canonical", "dihedral:5", "--json"]));
    assert_eq!(d5["passed"], true);
    assert_eq!(d5["system"]["degrees"], serde_json::json!([2, 5]));
}

#[test]
fn verify_examples() {
    assert_eq!(canonsys(&["verify", "B:2", &data("b2_canonical.json")]).status.code(), Some(0));
    let bad = canonsys(&["verify", "B:2", &data("b2_noncanonical.json")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("[FAIL] pairwise-orthogonality"));
    assert_eq!(canonsys(&["verify", "cyclic:3", &data("cyclic3_canonical.json")]).status.code(), Some(0));
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(canonsys(&["info", "E8"]).status.code(), Some(2));
    assert_eq!(canonsys(&["info"]).status.code(), Some(2));
    assert_eq!(canonsys(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(canonsys(&["verify", "cyclic:3", &data("b2_canonical.json")]).status.code(), Some(2));
    assert_eq!(canonsys(&["verify", "B:2", "/nonexistent/system.json"]).status.code(), Some(2));
    // reducible groups need an explicit opt-in when read from a file
    assert_eq!(canonsys(&["info", "G:2,1,1"]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a1a1.json");
    std::fs::write(
        &path,
        r#"{"name": "A1xA1", "rank": 2, "generators": [[["1; 0:-1", "1; 0:0"], ["1; 0:0", "1; 0:1"]], [["1; 0:1", "1; 0:0"], ["1; 0:0", "1; 0:-1"]]]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let refused = canonsys(&["info", p]);
    assert_eq!(refused.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("decompose"));
    assert_eq!(canonsys(&["info", p, "--allow-reducible"]).status.code(), Some(0));
}

#[test]
fn round_trip_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    for group in ["B:2", "G4", "dihedral:5"] {
        let a = dir.path().join("a.json");
        let b = dir.path().join("b.json");
        for out in [&a, &b] {
            let o = canonsys(&["canonical", group, "--seed", "3", "--out", out.to_str().unwrap(), "--latex"]);
            assert!(o.status.success(), "{group}");
        }
        let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        assert_eq!(ta, tb, "{group} output differs between identical runs");
        assert!(dir.path().join("a.tex").exists());
        let re = canonsys(&["verify", group, a.to_str().unwrap(), "--json"]);
        assert!(re.status.success());
        assert_eq!(json(&re)["passed"], true);

        let inv = dir.path().join("h.json");
        assert!(canonsys(&["invariants", group, "--out", inv.to_str().unwrap()]).status.success());
        let from = canonsys(&["canonical", group, "--from", inv.to_str().unwrap(), "--json"]);
        let direct = canonsys(&["canonical", group, "--json"]);
        assert_eq!(json(&from)["system"], json(&direct)["system"]);
        let again = canonsys(&["invariants", group, "--from", inv.to_str().unwrap(), "--out", b.to_str().unwrap()]);
        assert!(again.status.success());
        assert_eq!(std::fs::read(&inv).unwrap(), std::fs::read(&b).unwrap());
    }
}
