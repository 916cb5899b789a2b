use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use flowgame::io::parse;
use flowgame::io::report::read_certificate;
use flowgame::recognition::verify_certificate;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowgame"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(cmd: &str, fixture: &str, extra: &[&str]) -> Output {
    let path = data(fixture);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_exit_codes_on_fixtures() {
    for (name, code) in [
        ("n1.fg", 0),
        ("n2.fg", 0),
        ("n3.fg", 1),
        ("n4.fg", 1),
        ("n5.fg", 1),
        ("n6.fg", 0),
    ] {
        let o = run_on("check", name, &[]);
        assert_eq!(o.status.code(), Some(code), "{name}");
        let o = run_on("check", name, &["--format", "json", "--diagnostics"]);
        assert_eq!(o.status.code(), Some(code), "{name} json");
        let o = run_on("oracle", name, &[]);
        assert_eq!(o.status.code(), Some(code), "{name} oracle");
    }
}

#[test]
fn fixture_files_match_library_fixtures() {
    for (name, n) in flowgame::fixtures::all() {
        let text = std::fs::read_to_string(data(&format!("{name}.fg"))).unwrap();
        assert_eq!(parse(&text).unwrap(), n, "{name}");
    }
}

#[test]
fn check_json_document_verifies() {
    let o = run_on("check", "n2.fg", &["--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["verdict"], "convex");
    let caps: Vec<&str> = doc["certificate"]["paths"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["capacity"].as_str().unwrap())
        .collect();
    assert_eq!(caps, ["2", "3"]);
    let n = flowgame::fixtures::n2();
    let cert = read_certificate(&n, &doc).unwrap();
    verify_certificate(&n, &cert).unwrap();
}

#[test]
fn check_reports_deficit() {
    let o = run_on("check", "n3.fg", &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("capacity deficit: sa has capacity 4 but carries 5"));
}

#[test]
fn value_of_coalition() {
    let o = run_on("value", "n6.fg", &["--coalition", "sa,at"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3\n");
    let o = run_on("value", "n3.fg", &["--coalition", "@all"]);
    assert_eq!(stdout(&o), "4\n");
    let o = run_on("value", "n6.fg", &["--coalition", "sa,zz"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn shapley_outputs() {
    let o = run_on("shapley", "n2.fg", &[]);
    assert_eq!(stdout(&o), "sa 5/2\ne1 1\ne2 3/2\n");
    let fast = run_on("shapley", "n6.fg", &[]);
    let slow = run_on("shapley", "n6.fg", &["--exact-bruteforce"]);
    assert_eq!(stdout(&fast), stdout(&slow));
    assert_eq!(run_on("shapley", "n4.fg", &[]).status.code(), Some(1));
    let o = run_on(
        "shapley",
        "n4.fg",
        &["--exact-bruteforce", "--format", "json"],
    );
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["allocation"]["g2"], "1/2");
}

#[test]
fn dividends_and_decomposition_agree_on_convex() {
    let d = run_on("dividends", "n6.fg", &[]);
    assert_eq!(stdout(&d), "sa,ab,bt 2\nsa,at 3\n");
    let u = run_on("decompose", "n6.fg", &[]);
    assert_eq!(stdout(&u), "2 * u[sa,ab,bt]\n3 * u[sa,at]\n");
    assert_eq!(run_on("decompose", "n5.fg", &[]).status.code(), Some(1));
}

#[test]
fn core_check_verdicts() {
    let ok = run_on(
        "core-check",
        "n2.fg",
        &["--allocation", "sa=5/2,e1=1,e2=3/2"],
    );
    assert_eq!(ok.status.code(), Some(0));
    let blocked = run_on("core-check", "n2.fg", &["--allocation", "e1=1,e2=4"]);
    assert_eq!(blocked.status.code(), Some(1));
    assert!(stdout(&blocked).starts_with("blocked by {sa,e1}"));
    let inefficient = run_on("core-check", "n2.fg", &["--allocation", "sa=1"]);
    assert_eq!(inefficient.status.code(), Some(1));
    let bad = run_on("core-check", "n2.fg", &["--allocation", "sa"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn pmas_verifies() {
    let o = run_on("pmas", "n6.fg", &["--verify", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["verified"], true);
    assert_eq!(doc["pmas"].as_array().unwrap().len(), 15);
    assert_eq!(run_on("pmas", "n3.fg", &[]).status.code(), Some(1));
}

#[test]
fn reduce_lists_removed_arcs() {
    let dir = std::env::temp_dir().join(format!("flowgame-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pendant.fg");
    std::fs::write(
        &path,
        flowgame::io::serialize(
            &flowgame::network::FlowNetwork::from_arcs(
                "s",
                "t",
                [
                    ("sa", "s", "a", "2".parse().unwrap()),
                    ("at", "a", "t", "3".parse().unwrap()),
                    ("x", "a", "b", "1".parse().unwrap()),
                ],
            )
            .unwrap(),
        ),
    )
    .unwrap();
    let o = run(&["reduce", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# removed: x\n"));
    assert_eq!(parse(&text).unwrap().arc_count(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn with_stdin(cmd: &str, text: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_flowgame"))
        .args([cmd, "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn run_on_stdin(cmd: &str, text: &str) -> Option<i32> {
    with_stdin(cmd, text).status.code()
}

#[test]
fn stdin_input_and_errors() {
    let o = with_stdin(
        "check",
        "flowgame 1\nnode s\nnode t\nsource s\nsink t\narc x s t -1\n",
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 6"));

    assert_eq!(run(&["check", "/nonexistent.fg"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["gen"]).status.code(), Some(2));
}

#[test]
fn gen_round_trips_through_check() {
    let o = run(&["gen", "--seed", "2", "--paths", "2", "--depth", "1"]);
    assert_eq!(
        stdout(&o),
        "flowgame 1\nnode s\nnode v0\nnode t\nsource s\nsink t\n\
         arc e0 s v0 12\narc e1 v0 t 5\narc e2 v0 t 5\n"
    );
    let o = run(&[
        "gen",
        "--seed",
        "2",
        "--paths",
        "2",
        "--depth",
        "1",
        "--broken",
        "capacity_deficit",
    ]);
    assert!(stdout(&o).ends_with("arc e0 s v0 15/2\narc e1 v0 t 5\narc e2 v0 t 5\n"));
    assert_eq!(run_on_stdin("check", &stdout(&o)), Some(1));
    for kind in ["cycle", "shared_bottleneck", "capacity_deficit"] {
        let o = run(&["gen", "--seed", "9", "--broken", kind]);
        let n = parse(&stdout(&o)).unwrap();
        assert!(!flowgame::recognize(&n).is_convex(), "{kind}");
    }
    assert_eq!(
        run(&["gen", "--seed", "1", "--broken", "nope"])
            .status
            .code(),
        Some(2)
    );
}
