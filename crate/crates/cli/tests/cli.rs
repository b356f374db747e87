use std::fs;
use std::process::{Command, Output};

use tmes_core::io::Document;

fn tmes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tmes")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn state_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    for spec in ["chi", "hs", "w:2", "omega", "chain-odd:2"] {
        let path = dir.path().join("s.json");
        let out = tmes(&["state", "build", spec, "--out", path.to_str().unwrap()]);
        assert!(out.status.success(), "{spec}");
        let text = fs::read_to_string(&path).unwrap();
        let state = Document::parse(&text).unwrap().into_state().unwrap();
        let expected = tmes_core::make_state(&spec.parse().unwrap()).unwrap();
        let same = state.amplitudes().iter().zip(expected.amplitudes()).all(|(a, b)| {
            a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()
        });
        assert!(same, "{spec}");
        let shown = tmes(&["state", "show", path.to_str().unwrap()]);
        assert!(shown.status.success());
    }
}

#[test]
fn operator_generation() {
    let out = tmes(&["op", "gen", "--level", "2"]);
    assert!(out.status.success());
    let set = Document::parse(&stdout(&out)).unwrap().into_operator_set().unwrap();
    assert_eq!(set.len(), 16);
    let named = tmes(&["op", "named", "u_chi"]);
    assert_eq!(Document::parse(&stdout(&named)).unwrap().into_operator().unwrap().arity(), 2);
}

#[test]
fn analyses_on_files() {
    let dir = tempfile::tempdir().unwrap();
    let file = |spec: &str| {
        let p = dir.path().join(format!("{}.json", spec.replace(':', "_")));
        assert!(tmes(&["state", "build", spec, "--out", p.to_str().unwrap()]).status.success());
        p.to_str().unwrap().to_string()
    };
    let cluster = file("chain:2");
    let cap = stdout(&tmes(&["capacity", "--state", &cluster, "--sender", "1,3"]));
    assert!(cap.contains("teleport       2 qubit(s)") && cap.contains("sdc messages   16"), "{cap}");

    let tele = tmes(&["teleport", "--resource", &cluster, "--sender", "1,3", "--payload-qubits", "2", "--seed", "7"]);
    assert!(tele.status.success(), "{}", stdout(&tele));
    let over = tmes(&["teleport", "--resource", &file("ghz:4"), "--sender", "1,3", "--payload-qubits", "2"]);
    assert_eq!(over.status.code(), Some(1));

    let sdc = stdout(&tmes(&["sdc", "--state", &file("chain-odd:2"), "--sender", "1,3,5"]));
    assert!(sdc.contains("32 messages") && sdc.contains("decoded 32/32"), "{sdc}");

    assert!(stdout(&tmes(&["tmes", "--state", &file("chi")])).contains("is_tmes        true"));
    assert!(stdout(&tmes(&["tmes", "--state", &file("hs")])).contains("is_tmes        false"));

    let ob = stdout(&tmes(&["obstruct", "--source", &file("odd-resource:1"), "--target", &file("w:2"), "--subset", "1,2"]));
    assert!(ob.contains("obstructed at"), "{ob}");
}

#[test]
fn exit_codes() {
    assert_eq!(tmes(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tmes(&["state", "build", "not-a-state"]).status.code(), Some(2));
    assert_eq!(tmes(&["verify", "--claims", "no-such-claim"]).status.code(), Some(2));
    assert_eq!(tmes(&["state", "show", "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(tmes(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_with_loose_tolerance_passes() {
    let out = tmes(&["verify", "--tol", "1e-2"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("0 failed"));
}

#[test]
fn eq15_selection_is_recorded_with_obstructions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = tmes(&["verify", "--claims", "eq15-w2", "--report", path.to_str().unwrap()]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let claims = doc["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 1);
    assert_eq!(claims[0]["verdict"], "recorded");
    assert_eq!(claims[0]["values"]["obstructed_pairs"].as_array().unwrap().len(), 3);
}

#[test]
fn reports_are_stable_apart_from_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let mut bodies = Vec::new();
    for name in ["a.json", "b.json"] {
        let path = dir.path().join(name);
        let out = tmes(&["verify", "--seed", "3", "--report", path.to_str().unwrap()]);
        assert!(out.status.success());
        let mut doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert!(doc["generated_at_unix"].is_u64());
        doc["generated_at_unix"] = 0.into();
        bodies.push(serde_json::to_string(&doc).unwrap());
    }
    assert_eq!(bodies[0], bodies[1]);
    let ids: Vec<_> = serde_json::from_str::<serde_json::Value>(&bodies[0]).unwrap()["claims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["claim_id"].as_str().unwrap().to_string())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(ids, sorted);
}
