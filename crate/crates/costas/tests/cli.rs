use std::path::Path;
use std::process::{Command, Output};

fn costas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_costas")).args(args).env_remove("COSTAS_THREADS").output().expect("spawn costas")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const EXAMPLE_DPDS: &str = r#"{"group":"Z4xZ5","elements":[[0,1],[1,2],[2,4],[3,3]]}"#;

#[test]
fn exit_codes() {
    assert_eq!(costas(&["classic", "verify", "2,4,3,1"]).status.code(), Some(0));
    assert_eq!(costas(&["classic", "verify", "1,2,3"]).status.code(), Some(1));
    assert_eq!(costas(&["classic", "nonsense"]).status.code(), Some(2));
    assert_eq!(costas(&["classic", "verify", "1,1,2"]).status.code(), Some(2));
    assert_eq!(costas(&["map", "verify", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(costas(&["cpoly", "verify", "-q", "6", "x"]).status.code(), Some(2));
}

#[test]
fn dpds_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(dir.path(), "d.json", EXAMPLE_DPDS);
    let o = costas(&["dpds", "verify", &d]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS dpds"));
    assert!(text.contains("(0,1)-(1,2)=(3,4)"));

    let m = costas(&["--emit", "json", "dpds", "to-map", &d]);
    let mfile = write(dir.path(), "m.json", &stdout(&m));
    assert_eq!(costas(&["map", "verify", &mfile]).status.code(), Some(0));
    let back = costas(&["--emit", "json", "dpds", "from-map", &mfile]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&back)).unwrap();
    let orig: serde_json::Value = serde_json::from_str(EXAMPLE_DPDS).unwrap();
    assert_eq!(v["result"], orig);

    let broken = write(dir.path(), "bad.json", r#"{"group":"Z4xZ5","elements":[[0,0],[1,1],[2,2],[3,3]]}"#);
    assert_eq!(costas(&["dpds", "verify", &broken]).status.code(), Some(1));
}

#[test]
fn json_output_is_reproducible() {
    for threads in ["1", "4"] {
        let a = costas(&["--emit", "json", "--threads", threads, "cpoly", "census-shifting", "-q", "7"]);
        let b = costas(&["--emit", "json", "--threads", "2", "cpoly", "census-shifting", "-q", "7"]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
    let timed = stdout(&costas(&["--emit", "json", "--timing", "classic", "census", "-n", "5"]));
    assert!(timed.contains("elapsed_ms"));
}

#[test]
fn bounds_csv() {
    let o = stdout(&costas(&["--emit", "csv", "cpoly", "bounds", "--table", "2", "3", "3", "4"]));
    let lines: Vec<&str> = o.lines().collect();
    assert_eq!(lines[0], "p,m,R_num,R_den,R_float");
    assert_eq!(lines.len(), 5);
    assert!(lines.contains(&"2,3,6,5,1.200000"));
}

#[test]
fn welch_map_exports_to_periodic_array() {
    let dir = tempfile::tempdir().unwrap();
    let w = costas(&["--emit", "json", "map", "welch", "-q", "25"]);
    assert_eq!(w.status.code(), Some(0));
    let wf = write(dir.path(), "w.json", &stdout(&w));
    let a = costas(&["--emit", "json", "map", "export-array", &wf, "--domain-split", "8,3", "--codomain-split", "5,5"]);
    assert_eq!(a.status.code(), Some(0));
    let af = write(dir.path(), "a.json", &stdout(&a));
    assert_eq!(costas(&["map", "verify-array", &af]).status.code(), Some(0));
    let r = costas(&["map", "export-array", &wf, "--domain-split", "24", "--codomain-split", "5,5", "--raster"]);
    assert_eq!(r.status.code(), Some(0));
    assert!(stdout(&r).contains("# slice 0"));
}

#[test]
fn order_six_search_finds_nothing() {
    let o = costas(&["dpds", "search-none", "-n", "6", "--normalized"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("found = 0"));
}
