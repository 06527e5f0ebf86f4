use std::path::Path;
use std::process::{Command, Output};

use plat_core::orthospace::{dump_space, make_mo};
use plat_core::sepprod::sharp;

fn plat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plat"))
        .args(args)
        .env_remove("PLAT_LIMIT_ATOMS")
        .output()
        .expect("binary runs")
}

fn fixture_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn space_documents() {
    let o = plat(&["space", "mo", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"atoms\":[\"a1\",\"a1'\",\"a2\",\"a2'\"],\"orth\":[[0,1],[2,3]]}\n");

    let o = plat(&["space", "quad", "--q", "3", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[1:2]"));

    // x² + 2y² is isotropic over GF(3)
    let o = plat(&["space", "quad", "--q", "3", "--lambda", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn product_dump_matches_fixture() {
    let o = plat(&["product", "--left", "mo:2", "--right", "mo:2", "--enumerate"]);
    assert_eq!(o.status.code(), Some(0));
    let committed = std::fs::read_to_string(fixture_dir().join("mo2_sepprod.clos.txt")).unwrap();
    assert_eq!(stdout(&o), committed);
}

#[test]
fn product_summary_and_space_files() {
    let dir = tempfile::tempdir().unwrap();
    let left = dir.path().join("left.json");
    let o = plat(&["space", "mo", "2", "--out", left.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = plat(&["product", "--left", left.to_str().unwrap(), "--right", "powerset:2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["atoms"], 8);
    assert_eq!(v["closed_sets"], 36);

    let o = plat(&["product", "--left", "bogus", "--right", "mo:2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn limit_override() {
    let run = |value: &str| {
        Command::new(env!("CARGO_BIN_EXE_plat"))
            .args(["product", "--left", "mo:2", "--right", "mo:2"])
            .env("PLAT_LIMIT_ATOMS", value)
            .output()
            .unwrap()
    };
    assert_eq!(run("8").status.code(), Some(2));
    assert_eq!(run("abc").status.code(), Some(2));
    assert_eq!(run("16").status.code(), Some(0));
}

#[test]
fn check_relation_file() {
    let dir = tempfile::tempdir().unwrap();
    let mo = make_mo(2).unwrap();
    let rel = dir.path().join("sharp.json");
    std::fs::write(&rel, dump_space(sharp(&mo, &mo).unwrap().space())).unwrap();
    let o = plat(&["check", "--left", "mo:2", "--right", "mo:2", "--relation", rel.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["P1", "P2", "P3", "P4", "P5", "P4star", "separating"] {
        assert_eq!(v[key]["holds"], true, "{key}");
    }

    // W given explicitly: only the pair swap, which is its own inverse
    let w = dir.path().join("w.json");
    std::fs::write(&w, "[[2,3,0,1]]").unwrap();
    let ws = w.to_str().unwrap();
    let o = plat(&["check", "--left", "mo:2", "--right", "mo:2", "--relation", rel.to_str().unwrap(), "--w1", ws, "--w2", ws]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["w1_inverse_closed"], true);

    std::fs::write(&w, "[[0,0,1,2]]").unwrap();
    let o = plat(&["check", "--left", "mo:2", "--right", "mo:2", "--relation", rel.to_str().unwrap(), "--w1", ws]);
    assert_eq!(o.status.code(), Some(2));

    let o = plat(&["check", "--left", "mo:2", "--right", "mo:3", "--relation", rel.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "theorem2", "--trials", "60", "--seed", "11"];
    let a = plat(&args);
    let b = plat(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 11);
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_errors() {
    assert_eq!(plat(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(plat(&["verify", "--suite", "closure", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(plat(&["verify", "--suite", "l0", "--q", "4"]).status.code(), Some(2));
}

#[test]
fn verify_l0_suite() {
    let o = plat(&["verify", "--suite", "l0", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ortho = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "l0-no-orthocomplementation")
        .unwrap();
    assert_eq!(ortho["witness"]["orthocomplementation"], "none");
}

#[test]
fn search_command() {
    assert_eq!(plat(&["search", "--budget", "0"]).status.code(), Some(2));
    let a = plat(&["search", "--budget", "200", "--seed", "1"]);
    let b = plat(&["search", "--budget", "200", "--seed", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["budget"], 200);
}

#[test]
fn fixtures_commands() {
    let o = plat(&["fixtures", "--check", "--dir", fixture_dir().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let o = plat(&["fixtures", "--check", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = plat(&["fixtures", "--regen", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for name in ["mo2_sepprod.clos.txt", "l5_mo2.clos.txt", "l0_q3.clos.txt", "l0_q3_report.json"] {
        let fresh = std::fs::read(dir.path().join(name)).unwrap();
        let committed = std::fs::read(fixture_dir().join(name)).unwrap();
        assert_eq!(fresh, committed, "{name}");
    }
    assert_eq!(plat(&["fixtures"]).status.code(), Some(2));
}
