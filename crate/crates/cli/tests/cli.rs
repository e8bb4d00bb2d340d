use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    root.join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_persistdist")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn interleaving_of_squares() {
    let o = run(&["interleaving", &data("sq02.json"), &data("sq13.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
    let o = run(&["interleaving", &data("sq02.json"), &data("sq13.json"), "--json"]);
    assert_eq!(stdout(&o), "{\"distance\":\"1\"}\n");
}

#[test]
fn bottleneck_json_matches_example() {
    let o = run(&["bottleneck", &data("twosq.json"), &data("onesq.json"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"distance\":\"1\",\"matching\":[[0,0]],\"unmatched_left\":[1]}\n");
}

#[test]
fn named_modules_and_infinity() {
    let l = format!("{}#L", data("staircase.json"));
    let anti = format!("{}#anti", data("staircase.json"));
    assert_eq!(stdout(&run(&["interleaving", &l, &anti])), "1/2\n");
    assert_eq!(stdout(&run(&["interleaving", &data("quadrant.json"), &data("sq02.json")])), "inf\n");
    let missing = format!("{}#nope", data("staircase.json"));
    assert_eq!(run(&["interleaving", &l, &missing]).status.code(), Some(2));
}

#[test]
fn direct_sums_are_rejected_by_interleaving() {
    let o = run(&["interleaving", &data("twosq.json"), &data("onesq.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bottleneck"));
}

#[test]
fn validation_errors_exit_2() {
    let o = run(&["validate", &data("bad.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ChainsEndpointMismatch"));
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\n  \"format_version\": \"1\",\n  \"modules\": [\n").unwrap();
    let o = run(&["validate", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn validate_reports_counts() {
    let o = run(&["validate", &data("twosq.json"), &data("grid_f.json"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["intervals"], 2);
    assert_eq!(v[1]["grid"], true);
}

#[test]
fn dimension_distances() {
    let o = run(&["dimdist", &data("grid_f.json"), &data("grid_g.json")]);
    assert_eq!(stdout(&o), "d_minus 1\nd_plus 1\nd_zero 1\n");
    let o = run(&["dimdist", &data("sq02.json"), &data("sq13.json"), "--grid", "9x9:0,0:1/2", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "{\"d_minus\":\"1\",\"d_plus\":\"1\",\"d_zero\":\"1\"}\n");
    assert_eq!(run(&["dimdist", &data("sq02.json"), &data("sq13.json")]).status.code(), Some(2));
    assert_eq!(run(&["dimdist", &data("sq02.json"), &data("sq13.json"), "--grid", "0x3"]).status.code(), Some(2));
}

#[test]
fn oracle_check_modes() {
    let o = run(&["oracle-check", "--seed", "11", "--trials", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "checked 10, 0 mismatches\n");
    let o = run(&["oracle-check", &data("twosq.json"), &data("onesq.json"), "--json"]);
    assert_eq!(stdout(&o), "{\"checked\":3,\"mismatches\":[]}\n");
    let o = run(&["oracle-check", &data("quadrant.json"), &data("sq02.json")]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["oracle-check", &data("staircase.json"), &data("sq02.json"), "--max-components", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig.svg");
    let o = run(&[
        "render",
        &data("quadrant.json"),
        &data("sq13.json"),
        "--shift",
        "1/2",
        "--frame=-1,-1,6,6",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("marker-end"));
    assert_eq!(run(&["render", &data("sq02.json"), "--frame", "1,1,0,0"]).status.code(), Some(2));
}

#[test]
fn thread_cap_is_honoured() {
    let o = Command::new(env!("CARGO_BIN_EXE_persistdist"))
        .args(["interleaving", &data("sq02.json"), &data("sq13.json")])
        .env("PERSISTDIST_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "1\n");
    let o = Command::new(env!("CARGO_BIN_EXE_persistdist"))
        .args(["interleaving", &data("sq02.json"), &data("sq13.json")])
        .env("PERSISTDIST_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}
