use std::path::Path;
use std::process::{Command, Output};

fn gcspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcspec"))
        .args(args)
        .env_remove("GCSPEC_TOL")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn build_writes_reloadable_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bucky.json");
    let o = gcspec(&["build", "--seed", "dodecahedron", "--k", "1", "--l", "1", "--out", p.to_str().unwrap()]);
    assert!(o.status.success());
    let g = gcspec::graphcore::read_json(&p).unwrap();
    assert_eq!(g.n(), 60);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(doc["provenance"].as_array().unwrap().len(), 60);
    assert_eq!(doc["params"], serde_json::json!([1, 1]));

    let o = gcspec(&["build", "--seed", "cube", "--k", "3", "--l", "2"]);
    assert_eq!(json(&o)["rotation"].as_array().unwrap().len(), 152);

    let o = gcspec(&["build", "--seed", "tetrahedron", "--k", "0", "--l", "0"]);
    assert_eq!(o.status.code(), Some(2));

    let o = gcspec(&["build", "--seed", "cube", "--k", "2", "--format", "dot"]);
    assert!(stdout(&o).starts_with("graph"));
}

#[test]
fn spectrum_groups() {
    let o = gcspec(&["spectrum", "--seed", "cube", "--format", "json"]);
    let groups: Vec<(f64, u64)> = json(&o)["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| (g["value"].as_f64().unwrap(), g["multiplicity"].as_u64().unwrap()))
        .collect();
    let want = [(0.0, 1), (2.0, 3), (4.0, 3), (6.0, 1)];
    assert_eq!(groups.len(), 4);
    for ((v, m), (wv, wm)) in groups.iter().zip(want) {
        assert!((v - wv).abs() < 1e-9);
        assert_eq!(*m, wm);
    }

    let o = gcspec(&["spectrum", "--seed", "octahedron", "--k", "2", "--format", "json"]);
    let at4 = json(&o)["groups"]
        .as_array()
        .unwrap()
        .iter()
        .find(|g| (g["value"].as_f64().unwrap() - 4.0).abs() < 1e-6)
        .map(|g| g["multiplicity"].as_u64().unwrap());
    assert_eq!(at4, Some(4));

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(gcspec(&["spectrum", "--graph", empty.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = gcspec(&["spectrum", "--seed", "dodecahedron", "--k", "2"]);
    let b = gcspec(&["spectrum", "--seed", "dodecahedron", "--k", "2"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 80);
}

#[test]
fn tolerance_from_environment() {
    let run = |tol: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_gcspec"))
            .args(["spectrum", "--seed", "dodecahedron", "--format", "json"])
            .env("GCSPEC_TOL", tol)
            .output()
            .unwrap();
        json(&o)["groups"].as_array().unwrap().len()
    };
    assert!(run("10") < run("1e-6"));
    let o = Command::new(env!("CARGO_BIN_EXE_gcspec"))
        .args(["spectrum", "--seed", "cube"])
        .env("GCSPEC_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_prefix() {
    let o = gcspec(&["tables", "1", "--kmax", "3", "--jobs", "2"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "seed,1,2,3\ntetrahedron,3,6,9\ncube,3,4,3\ndodecahedron,0,6,0\noctahedron,3,4,3\n"
    );
    let o = gcspec(&["tables", "2", "--kmax", "4", "--format", "json"]);
    assert_eq!(json(&o)["rows"][3]["computed"], serde_json::json!([0, 0, 1, 1]));
}

#[test]
fn verify_suites() {
    let o = gcspec(&["verify", "thm1_4", "--seed", "dodecahedron", "--k", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("mult(4) = 30"));
    for args in [
        vec!["verify", "prop2_3", "--seed", "tetrahedron", "--z", "2,0", "--zprime", "1,1"],
        vec!["verify", "lemma4_3", "--k", "6"],
        vec!["verify", "lemma4_4", "--k", "2"],
        vec!["verify", "thm1_2", "--seed", "octahedron", "--k", "3", "--l", "1"],
        vec!["verify", "thm1_5", "--k", "2"],
        vec!["verify", "thm1_6", "--k", "3"],
        vec!["verify", "thm3_2", "--seed", "cube", "--k", "4"],
        vec!["verify", "thm3_3", "--k", "4"],
        vec!["verify", "prop2_4", "--k", "2", "--l", "0"],
    ] {
        let o = gcspec(&args);
        assert!(o.status.success(), "{args:?}\n{}", stdout(&o));
        assert!(stdout(&o).trim_end().ends_with("PASS"));
    }
    assert_eq!(gcspec(&["verify", "thm3_3", "--seed", "cube"]).status.code(), Some(2));
    assert_eq!(gcspec(&["verify", "thm1_6", "--seed", "cube"]).status.code(), Some(2));
    assert_eq!(gcspec(&["verify", "prop2_4", "--seed", "tetrahedron"]).status.code(), Some(2));
}

#[test]
fn failing_checks_exit_with_one() {
    // k = 3 is far too coarse for the invariant eigenvalues to cover [0, 6].
    let o = gcspec(&["verify", "thm1_3", "--k", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn exports() {
    let o = gcspec(&["export", "--what", "cn", "--seed", "tetrahedron"]);
    let v = json(&o);
    assert_eq!(v.as_object().unwrap().len(), 6);
    assert_eq!(v["0"], 3);

    let o = gcspec(&["export", "--what", "n", "--seed", "tetrahedron"]);
    assert_eq!(json(&o).as_object().unwrap().len(), 16);

    let o = gcspec(&["export", "--what", "c", "--seed", "tetrahedron"]);
    let v = json(&o);
    assert_eq!(v.as_object().unwrap().values().filter(|c| *c == "black").count(), 1);

    let o = gcspec(&["export", "--what", "c", "--seed", "cube"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["coloring"], serde_json::Value::Null);

    let o = gcspec(&["export", "--what", "bipartition", "--seed", "cube", "--k", "2"]);
    assert_eq!(json(&o).as_object().unwrap().len(), 32);

    let o = gcspec(&["export", "--what", "cn", "--seed", "cube"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.csv");
    let o = gcspec(&["export", "--seed", "cube", "--k", "2", "--format", "csv", "--out", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(Path::new(&p).exists());
}
