use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn gridhfk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridhfk"))
        .args(args)
        .env_remove("HFK_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn compute_unknot() {
    let o = gridhfk(&["compute", "--grid", fixture("unknot2.grid").to_str().unwrap(), "--tau"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\ntau: 0\n");
}

#[test]
fn compute_torus_knot_and_its_mirror() {
    let path = fixture("t34.grid");
    let o = gridhfk(&["compute", "--grid", path.to_str().unwrap(), "--tau", "--e2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "t^{-3}+qt^{-2}+q^2+q^5t^2+q^6t^3\ntau: -3\nE2: t^{-3}+qt^{-2}+q^2\n"
    );
    let o = gridhfk(&["compute", "--grid", path.to_str().unwrap(), "--tau", "--mirror", "--range", "full"]);
    assert_eq!(stdout(&o), "q^{-6}t^{-3}+q^{-5}t^{-2}+q^{-2}+q^{-1}t^2+t^3\ntau: 3\n");
}

#[test]
fn threads_flag_and_environment() {
    let path = fixture("t25.grid");
    let o = gridhfk(&["compute", "--grid", path.to_str().unwrap(), "--threads", "1"]);
    assert_eq!(stdout(&o), "t^{-2}+qt^{-1}+q^2+q^3t+q^4t^2\n");
    let o = Command::new(env!("CARGO_BIN_EXE_gridhfk"))
        .args(["compute", "--grid", path.to_str().unwrap()])
        .env("HFK_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "t^{-2}+qt^{-1}+q^2+q^3t+q^4t^2\n");
}

#[test]
fn json_output_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = gridhfk(&["compute", "--grid", fixture("figure_eight.grid").to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["name"], "figure_eight");
    assert_eq!(json["tau"], 0);
    assert_eq!(json["grid"]["n"], 6);
    let record = dir.path().join("fig8.json");
    std::fs::write(&record, &o.stdout).unwrap();
    let v = gridhfk(&["verify", "--fixtures", record.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    assert!(stdout(&v).contains("PASS figure_eight"));
}

#[test]
fn bad_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.grid");
    std::fs::write(&bad, "3\nX: 0 1 2\nO: 0 2 1\n").unwrap();
    let o = gridhfk(&["compute", "--grid", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let o = gridhfk(&["compute", "--grid", dir.path().join("missing.grid").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_reports_corrupted_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"[{"name":"trefoil","grid":{"n":5,"x":[0,1,2,3,4],"o":[2,3,4,0,1]},
             "hfk":[{"a":-1,"m":0,"dim":1},{"a":0,"m":1,"dim":3},{"a":1,"m":2,"dim":1}],"tau":null,"e2":null},
            {"name":"no_grid","grid":null,"hfk":[{"a":0,"m":0,"dim":1}],"tau":0,"e2":null}]"#,
    )
    .unwrap();
    let o = gridhfk(&["verify", "--fixtures", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL trefoil"), "{text}");
    assert!(text.contains("(a=0, m=1) expected 3 found 1"), "{text}");
    assert!(text.contains("SKIP no_grid"), "{text}");
}

#[test]
fn verify_with_mirror_allowance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mirror.json");
    std::fs::write(
        &path,
        r#"[{"name":"right_trefoil","grid":{"n":5,"x":[0,1,2,3,4],"o":[2,3,4,0,1]},
             "hfk":[{"a":-1,"m":-2,"dim":1},{"a":0,"m":-1,"dim":1},{"a":1,"m":0,"dim":1}],"tau":1,"e2":null}]"#,
    )
    .unwrap();
    let strict = gridhfk(&["verify", "--fixtures", path.to_str().unwrap()]);
    assert_eq!(strict.status.code(), Some(1));
    let loose = gridhfk(&["verify", "--fixtures", path.to_str().unwrap(), "--allow-mirror"]);
    assert_eq!(loose.status.code(), Some(0));
    assert!(stdout(&loose).contains("PASS right_trefoil (mirror)"));
}

#[test]
fn simplify_writes_smaller_grid() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("big.grid");
    // a 4x4 unknot
    std::fs::write(&input, "4\nX: 0 1 2 3\nO: 1 2 3 0\n").unwrap();
    let out = dir.path().join("small.grid");
    let o = gridhfk(&[
        "simplify",
        "--grid",
        input.to_str().unwrap(),
        "--seed",
        "3",
        "--budget",
        "1000",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sizes: 4 -> 3 -> 2"));
    let g: gridhfk::GridDiagram = std::fs::read_to_string(&out).unwrap().parse().unwrap();
    assert_eq!(g.size(), 2);
}
