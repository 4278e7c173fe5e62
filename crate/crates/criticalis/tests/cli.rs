//! End-to-end tests of the command-line interface.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_criticalis"))
}

fn json_stdout(out: &std::process::Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.lines().last().expect("no stdout")).expect("not json")
}

#[test]
fn corank_of_a_builtin() {
    let out = bin().args(["corank", "builtin:path3"]).output().unwrap();
    assert!(out.status.success());
    let v = json_stdout(&out);
    assert_eq!(v["gamma"], 2);
    assert_eq!(v["ring"], "Z");
    assert!(v["timing_ms"].is_u64());
}

#[test]
fn ideal_generators_and_triviality() {
    let out = bin()
        .args(["ideal", "builtin:fig6", "--index", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = json_stdout(&out);
    assert_eq!(v["index"], 3);
    assert_eq!(v["trivial"], false);
    let gens: Vec<String> = v["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g.as_str().unwrap().to_string())
        .collect();
    assert!(gens.iter().any(|g| g == "x2 + x4"));
}

#[test]
fn blowup_corank_depends_on_the_ring() {
    for (ring, want) in [("Z", 2u64), ("Z/2", 2), ("Z/3", 3)] {
        let out = bin()
            .args(["blowup", "builtin:path3", "-d", "-1,1,-1", "--ring", ring])
            .output()
            .unwrap();
        assert!(out.status.success(), "ring {ring}");
        assert_eq!(json_stdout(&out)["gamma"], want, "ring {ring}");
    }
}

#[test]
fn graph6_string_as_direct_argument() {
    // the 4-cycle in graph6 is "Cl"
    let out = bin().args(["corank", "Cl"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(json_stdout(&out)["gamma"], 2);
}

#[test]
fn edge_list_file_input() {
    let dir = std::env::temp_dir().join("criticalis-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p3.txt");
    std::fs::write(&path, "n 3\nedge 1 2\nedge 2 3\n").unwrap();
    let out = bin()
        .args(["corank", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json_stdout(&out)["gamma"], 2);
}

#[test]
fn cotree_rendering() {
    let out = bin()
        .args(["cotree", "builtin:fig8", "--format", "text"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(
        text.trim(),
        "join(union(join(v4,v5),join(v6,v7),v3),union(v1,v2))"
    );
}

#[test]
fn parse_errors_exit_with_code_2() {
    for args in [
        vec!["corank", "builtin:nonsense"],
        vec!["corank", "!!!not-graph6"],
        vec!["corank", "builtin:path3", "--ring", "Z/4"],
        vec!["blowup", "builtin:path3", "-d", "a,b,c"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
        assert!(!out.stderr.is_empty(), "args {args:?}");
    }
}

#[test]
fn scan_is_appending_and_resumable() {
    let dir = std::env::temp_dir().join(format!("criticalis-scan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("graphs.g6");
    let output = dir.join("records.jsonl");
    let _ = std::fs::remove_file(&output);
    // path on 4 vertices (twin-free tree) and the 4-cycle (has twins)
    let p4 = criticalis::sgraph::to_graph6(
        &criticalis::sgraph::build_family(&criticalis::sgraph::Family::Path(4)).unwrap(),
    )
    .unwrap();
    let c4 = criticalis::sgraph::to_graph6(
        &criticalis::sgraph::build_family(&criticalis::sgraph::Family::Cycle(4)).unwrap(),
    )
    .unwrap();
    std::fs::write(&input, format!("{p4}\n{c4}\n")).unwrap();
    let run = || {
        bin()
            .args([
                "scan",
                "--conjecture",
                "tree-bound",
                "--input",
                input.to_str().unwrap(),
                "--output",
                output.to_str().unwrap(),
            ])
            .output()
            .unwrap()
    };
    let first = run().clone();
    assert!(first.status.success());
    let records = std::fs::read_to_string(&output).unwrap();
    assert_eq!(records.lines().count(), 2, "one record per input graph");
    let lines: Vec<serde_json::Value> = records
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines[0]["holds"], true);
    assert!(lines[1]["skipped"].is_string());
    // a second run must not duplicate records
    let second = run();
    assert!(second.status.success());
    let records_again = std::fs::read_to_string(&output).unwrap();
    assert_eq!(records_again, records, "resume must not rewrite records");
}

#[test]
fn scan_with_only_skipped_graphs_exits_4() {
    let dir = std::env::temp_dir().join(format!("criticalis-skip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("graphs.g6");
    let output = dir.join("records.jsonl");
    let _ = std::fs::remove_file(&output);
    // the triangle is not a tree
    let k3 = criticalis::sgraph::to_graph6(
        &criticalis::sgraph::build_family(&criticalis::sgraph::Family::Complete(3)).unwrap(),
    )
    .unwrap();
    std::fs::write(&input, format!("{k3}\n")).unwrap();
    let out = bin()
        .args([
            "scan",
            "--conjecture",
            "tree-bound",
            "--input",
            input.to_str().unwrap(),
            "--output",
            output.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn config_file_with_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("criticalis-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("config.json");
    std::fs::write(&cfg, r#"{"ring": "Z/3", "format": "json"}"#).unwrap();
    // config supplies the ring
    let out = bin()
        .args([
            "blowup",
            "builtin:path3",
            "-d",
            "-1,1,-1",
            "--config",
            cfg.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json_stdout(&out)["gamma"], 3);
    // an explicit flag wins over the config
    let out = bin()
        .args([
            "blowup",
            "builtin:path3",
            "-d",
            "-1,1,-1",
            "--config",
            cfg.to_str().unwrap(),
            "--ring",
            "Z",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json_stdout(&out)["gamma"], 2);
}

#[test]
fn verify_named_suite() {
    let out = bin().args(["verify", "joindet"]).output().unwrap();
    assert!(out.status.success());
    let v = json_stdout(&out);
    assert_eq!(v["suite"], "joindet");
    assert_eq!(v["passed"], true);
}
