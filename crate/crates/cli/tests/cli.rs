use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn gz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn real_matrix(rows: &[&[f64]]) -> Value {
    json!({
        "n": rows.len(),
        "entries": rows.iter().map(|r| r.iter().map(|&v| [v, 0.0]).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn example_coord() -> Value {
    // tower {0}, {-1, 1}, {-√2, 0, √2}
    json!({"n": 3, "values": [[0,0],[-1,0],[0,0],[0,0],[-2,0],[0,0]]})
}

#[test]
fn phi_of_a_two_by_two() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", &real_matrix(&[&[1., 2.], &[3., 4.]]));
    let out = gz(&["phi", "--matrix", s(&x)]);
    assert!(out.status.success());
    assert_eq!(
        stdout_json(&out),
        json!({"n": 2, "values": [[1.0, 0.0], [-2.0, 0.0], [5.0, 0.0]]})
    );
}

#[test]
fn invert_writes_the_section_point() {
    let dir = TempDir::new().unwrap();
    let c = write(
        &dir,
        "c.json",
        &json!({"n": 2, "values": [[1,0],[-2,0],[5,0]]}),
    );
    let target = dir.path().join("x.json");
    let out = gz(&["invert", "--coord", s(&c), "-o", s(&target)]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let x: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(
        x,
        json!({"n": 2, "entries": [[[1.0,0.0],[6.0,0.0]],[[1.0,0.0],[4.0,0.0]]]})
    );

    let z = write(&dir, "z.json", &json!([[2, 0]]));
    let out = gz(&["invert", "--coord", s(&c), "--subdiag", s(&z)]);
    let x = stdout_json(&out);
    assert_eq!(x["entries"][1][0], json!([2.0, 0.0]));
}

#[test]
fn classify_reports_every_field() {
    let dir = TempDir::new().unwrap();
    let x = write(
        &dir,
        "x.json",
        &real_matrix(&[&[1., 0., 0.], &[0., 2., 0.], &[0., 0., 3.]]),
    );
    let r = stdout_json(&gz(&["classify", "--matrix", s(&x)]));
    assert_eq!(r["strongly_regular"], json!(false));
    assert_eq!(r["disjoint"], json!(false));
    assert!(r["orbit_dim"].as_u64().unwrap() < 3);
    assert_eq!(r["regular_per_level"].as_array().unwrap().len(), 3);

    let x = write(
        &dir,
        "j.json",
        &real_matrix(&[&[0., 1., 0.], &[1., 0., 1.], &[0., 1., 0.]]),
    );
    let r = stdout_json(&gz(&["classify", "--matrix", s(&x)]));
    assert_eq!(r["strongly_regular"], json!(true));
    assert_eq!(r["interlacing"], json!(true));
    assert_eq!(r["orbit_dim"], json!(3));
}

#[test]
fn flows_and_actions_stay_in_the_fiber() {
    let dir = TempDir::new().unwrap();
    let m = real_matrix(&[&[1., 2., 0.5], &[-1., 0., 1.], &[2., 1., -1.]]);
    let x = write(&dir, "x.json", &m);
    let before = stdout_json(&gz(&["phi", "--matrix", s(&x)]));

    let out = gz(&["flow", "--matrix", s(&x), "--key", "1,2", "--t", "-0.3,0.2"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let y = write(&dir, "y.json", &stdout_json(&out));
    let after = stdout_json(&gz(&["phi", "--matrix", s(&y)]));
    for (a, b) in before["values"]
        .as_array()
        .unwrap()
        .iter()
        .zip(after["values"].as_array().unwrap())
    {
        assert!((a[0].as_f64().unwrap() - b[0].as_f64().unwrap()).abs() < 1e-10);
        assert!((a[1].as_f64().unwrap() - b[1].as_f64().unwrap()).abs() < 1e-10);
    }

    let w = write(
        &dir,
        "w.json",
        &json!({"levels": [[[0.1, 0.0]], [[0.2, -0.1], [0.0, 0.3]]]}),
    );
    let out = gz(&["act", "--matrix", s(&x), "--word", s(&w)]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["n"], json!(3));
}

#[test]
fn example_fiber_listing() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.json", &example_coord());
    let r = stdout_json(&gz(&["fiber", "symmetric", "--coord", s(&c)]));
    assert_eq!(r["total"], json!(8));
    assert_eq!(r["jacobi_count"], json!(4));
    let members = r["members"].as_array().unwrap();
    assert_eq!(members.len(), 8);
    let idx: Vec<u64> = members
        .iter()
        .map(|m| m["sign_index"].as_u64().unwrap())
        .collect();
    assert!(idx.windows(2).all(|w| w[0] < w[1]));

    let r = stdout_json(&gz(&[
        "fiber",
        "symmetric",
        "--coord",
        s(&c),
        "--jacobi-only",
    ]));
    assert_eq!(r["members"].as_array().unwrap().len(), 4);
    assert!(r["members"]
        .as_array()
        .unwrap()
        .iter()
        .all(|m| m["jacobi"] == json!(true)));
}

#[test]
fn normal_form_of_the_example() {
    let dir = TempDir::new().unwrap();
    let x = write(
        &dir,
        "x.json",
        &real_matrix(&[&[0., 1., 0.], &[1., 0., 1.], &[0., 1., 0.]]),
    );
    let r = stdout_json(&gz(&["fiber", "normal-form", "--matrix", s(&x)]));
    assert_eq!(r["canonical"]["n"], json!(3));
    assert_eq!(r["word"]["levels"].as_array().unwrap().len(), 2);
}

#[test]
fn orthopoly_commands() {
    let dir = TempDir::new().unwrap();
    let mu = write(
        &dir,
        "mu.json",
        &json!({"nodes": [-1.0, -0.5, 0.0, 0.25, 0.5, 1.0], "weights": [1, 1, 1, 2, 1, 1]}),
    );
    let r = stdout_json(&gz(&[
        "orthopoly",
        "jacobi",
        "--measure",
        s(&mu),
        "--n",
        "4",
    ]));
    assert_eq!(r["recurrence"]["diag"].as_array().unwrap().len(), 4);
    assert_eq!(r["recurrence"]["offdiag"].as_array().unwrap().len(), 3);
    let r = stdout_json(&gz(&[
        "orthopoly",
        "verify",
        "--measure",
        s(&mu),
        "--n",
        "4",
    ]));
    assert_eq!(r["match"], json!(true));

    let out = gz(&["orthopoly", "verify", "--measure", s(&mu), "--n", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"], json!("insufficient_support"));

    let unsorted = write(
        &dir,
        "u.json",
        &json!({"nodes": [1.0, 0.0], "weights": [1, 1]}),
    );
    let out = gz(&["orthopoly", "jacobi", "--measure", s(&unsorted), "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], json!("invalid_measure"));
}

#[test]
fn poisson_commands() {
    let r = stdout_json(&gz(&["poisson", "verify", "--n", "3"]));
    assert_eq!(r["pairs"], json!(15));
    assert_eq!(r["all_zero"], json!(true));

    let r = stdout_json(&gz(&[
        "poisson", "bracket", "--f", "a_12", "--g", "a_21", "--n", "2",
    ]));
    assert_eq!(r["bracket"], json!("a_11 - a_22"));

    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", &real_matrix(&[&[3., 1.], &[2., 1.]]));
    let r = stdout_json(&gz(&[
        "poisson",
        "bracket",
        "--f",
        "a_12",
        "--g",
        "a_21",
        "--matrix",
        s(&x),
    ]));
    assert_eq!(r["value"], json!([2.0, 0.0]));

    let out = gz(&["poisson", "verify", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"], json!("symbolic_limit"));
}

#[test]
fn error_paths_map_to_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = gz(&["phi", "--matrix", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], json!("malformed_json"));

    let out = gz(&["phi", "--matrix", s(&dir.path().join("missing.json"))]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], json!("io"));

    let ragged = write(&dir, "r.json", &json!({"n": 2, "entries": [[[1,0]]]}));
    let out = gz(&["phi", "--matrix", s(&ragged)]);
    assert_eq!(out.status.code(), Some(1));

    let out = gz(&["flow", "--matrix", s(&ragged), "--key", "oops", "--t", "1"]);
    assert_eq!(out.status.code(), Some(1));

    let out = gz(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], json!("usage"));

    let out = gz(&["classify", "--matrix", s(&ragged), "--tol-eq", "-1"]);
    assert_eq!(out.status.code(), Some(1));

    // a diagonal matrix repeats eigenvalues across levels
    let d = write(&dir, "d.json", &real_matrix(&[&[1., 0.], &[0., 2.]]));
    let out = gz(&["fiber", "normal-form", "--matrix", s(&d)]);
    assert_eq!(out.status.code(), Some(2));
    let err = stdout_json(&out);
    assert_eq!(err["error"], json!("not_disjoint"));
    assert!(err["detail"].is_string());

    let x = write(&dir, "x.json", &real_matrix(&[&[1., 2.], &[3., 4.]]));
    let out = gz(&["flow", "--matrix", s(&x), "--key", "2,2", "--t", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], json!("index_out_of_range"));
}

#[test]
fn selftest_is_deterministic() {
    let a = gz(&["selftest", "--seed", "7", "--n-max", "3"]);
    let b = gz(&["selftest", "--seed", "7", "--n-max", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let report = stdout_json(&a);
    assert_eq!(report["seed"], json!(7));
    assert_eq!(report["criteria"].as_array().unwrap().len(), 12);
}

#[test]
fn corrupted_rank_tolerance_is_reported() {
    let out = gz(&["selftest", "--n-max", "3", "--tol-rank", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let report = stdout_json(&out);
    assert_eq!(report["all_pass"], json!(false));
    let failed: Vec<u64> = report["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == json!(false))
        .map(|c| c["id"].as_u64().unwrap())
        .collect();
    assert!(failed.contains(&2), "{failed:?}");
}
