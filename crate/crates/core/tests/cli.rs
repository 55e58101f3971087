use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn tilt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilt")).args(args).output().unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tilt-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn simulate_and_trace() {
    let b = scratch("row.txt", "a..\n");
    let o = tilt(&["simulate", b.to_str().unwrap(), "EE"]);
    assert_eq!(stdout(&o), "..a\n");
    let b2 = scratch("wall.txt", "ab#\n");
    assert_eq!(stdout(&tilt(&["simulate", b2.to_str().unwrap(), "E"])), "ab#\n");
    let o = tilt(&["simulate", b.to_str().unwrap(), "EE", "--trace"]);
    assert_eq!(stdout(&o).matches("--").count(), 3);
    assert_eq!(tilt(&["simulate", b.to_str().unwrap(), "EX"]).status.code(), Some(3));
}

#[test]
fn solve_exit_codes() {
    let ident = scratch(
        "ident.json",
        r#"{"v":1,"problem":"reconfiguration","board":"a.\n","target":{"a":[0,0]},"dirs":"SE"}"#,
    );
    let o = tilt(&["solve", ident.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"certificate_len\": 0"));
    let walled = scratch("walled.json", r#"{"v":1,"problem":"relocation","board":"a#.\n","tile":"a","goal":[0,2],"dirs":"NESW"}"#);
    assert_eq!(tilt(&["solve", walled.to_str().unwrap()]).status.code(), Some(1));
    let board = format!("{}\n", ["abcdefgh........"; 16].join("\n").replace("abcdefgh", "........"));
    let mut tiles = String::new();
    for i in 0..12 {
        tiles += &format!("{}\"t{i}\":[{},{}]", if i > 0 { "," } else { "" }, i, i);
    }
    let huge = scratch(
        "huge.json",
        &format!(
            r#"{{"v":1,"problem":"reconfiguration","board":{},"tiles":{{{tiles}}},"target":{{{}}},"dirs":"NESW"}}"#,
            serde_json::to_string(&board).unwrap(),
            tiles.replace("[0,0]", "[15,15]")
        ),
    );
    assert_eq!(tilt(&["solve", huge.to_str().unwrap(), "--budget", "2000"]).status.code(), Some(2));
}

#[test]
fn reduce_and_verify() {
    let sat = scratch("sat.cnf", "p cnf 2 1\n1 -2 2 0\n");
    let unsat = scratch("unsat.cnf", "p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n");
    for fam in ["relocation", "reconfig"] {
        let o = tilt(&["verify", fam, sat.to_str().unwrap()]);
        assert_eq!(stdout(&o).trim(), "MATCH (sat: yes, solvable: yes)", "{fam}");
        let o = tilt(&["verify", fam, unsat.to_str().unwrap()]);
        assert_eq!(stdout(&o).trim(), "MATCH (sat: no, solvable: no)", "{fam}");
        let o = tilt(&["reduce", fam, sat.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["v"], 1);
    }
    let bad = scratch("bad.cnf", "p cnf 2 1\n1 x 0\n");
    let o = tilt(&["verify", "relocation", bad.to_str().unwrap()]);
    assert_ne!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn render_is_deterministic() {
    let sat = scratch("r.cnf", "p cnf 1 1\n1 1 1 0\n");
    let out = scratch("r.json", "");
    assert!(tilt(&["reduce", "reconfig", sat.to_str().unwrap(), "-o", out.to_str().unwrap()]).status.success());
    let a = scratch("a.svg", "");
    let b = scratch("b.svg", "");
    tilt(&["render", out.to_str().unwrap(), "--svg", a.to_str().unwrap()]);
    tilt(&["render", out.to_str().unwrap(), "--svg", b.to_str().unwrap()]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert!(stdout(&tilt(&["render", out.to_str().unwrap()])).contains('*'));
}
