use std::process::{Command, Output};

use ttstar_cli::golden::TABLES;
use ttstar_cli::RecordRow;

fn ttstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttstar")).args(args).output().expect("binary runs")
}

fn ttstar_env(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttstar"))
        .args(args)
        .env("TTSTAR_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn convert_examples() {
    let o = ttstar(&["convert", "4a", "--from", "asymptotic", "3", "1"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("(0,-1,-1,-1)"), "{s}");
    assert!(s.contains("±4 [exact]") && s.contains("-6 [exact]"), "{s}");

    let o = ttstar(&["convert", "4a", "--from", "asymptotic", "0", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["s1"].as_str(), v["s2"].as_str()), (Some("0"), Some("0")));

    let o = ttstar(&["convert", "5a", "--from", "k", "-2/3", "-5/6", "-5/6", "-5/6", "-5/6", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["gamma"].as_str(), v["delta"].as_str()), (Some("2/3"), Some("1/3")));
    assert_eq!((v["s1"].as_str(), v["s2"].as_str()), (Some("1"), Some("-1")));

    let o = ttstar(&["convert", "4a", "--from", "asymptotic", "1/2", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["integral"], false);
    assert_eq!(v["s1_exact"], false);
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["convert", "4a", "--from", "asymptotic", "x", "1"], 2),
        (&["convert", "4z", "--from", "asymptotic", "0", "0"], 2),
        (&["convert", "4a", "--from", "asymptotic", "1"], 2),
        (&["convert", "4a", "--from", "asymptotic", "5", "0"], 3),
        (&["convert", "4a", "--from", "k", "0", "-1", "-1", "-1/2"], 3),
        (&["convert", "4a", "--from", "asymptotic", "0", "0", "--n", "-1"], 3),
        (&["qdo", "--weights", "1,1", "--degrees", "3"], 4),
        (&["qdo", "--weights", "1,1,2", "--degrees", "3"], 4),
        (&["verify", "--case", "4a", "--bound", "12", "--self-test"], 5),
        (&["verify", "--case", "4a", "--bound", "4"], 2),
        (&["solve", "4a", "5", "0"], 3),
        (&["solve", "4a", "3", "1", "--max-iterations", "1", "-o", "/dev/null"], 6),
        (&["solve", "4a", "3", "1", "--t-min", "-2", "-o", "/dev/null"], 7),
        (&["enumerate"], 2),
    ];
    for (args, expected) in cases {
        assert_eq!(code(&ttstar(args)), *expected, "{args:?}");
    }
}

#[test]
fn qdo_examples() {
    let o = ttstar(&["qdo", "--weights", "1,2,3", "--degrees", "2", "--match"]);
    let s = stdout(&o);
    assert!(s.contains("λ^4 θ^2(θ-1/3)(θ-2/3) - z"), "{s}");
    assert!(s.contains("P^{1,3}"), "{s}");
    assert!(s.contains("π(1/3,0)"), "{s}");
    let o = ttstar(&["qdo", "--weights", "1,1,1,6", "--degrees", "2,3"]);
    assert!(stdout(&o).contains("λ^4 θ^2(θ-1/6)(θ-5/6) - z"));
    let o = ttstar(&["qdo", "--weights", "1,2,3"]);
    assert!(stdout(&o).contains("λ^6 θ^3(θ-2/6)(θ-3/6)(θ-4/6) - z"));
}

#[test]
fn verify_passes_for_several_cases() {
    for case in ["4a", "5a", "5c", "6b"] {
        let o = ttstar(&["verify", "--case", case, "--bound", "12"]);
        assert_eq!(code(&o), 0, "{case}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).ends_with("result: pass\n"));
    }
}

#[test]
fn solve_examples() {
    let dir = std::env::temp_dir();
    let path = dir.join(format!("ttstar-profile-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let o = ttstar(&["solve", "4a", "0", "0", "-o", p]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("residual: 0.000e0"));
    let o = ttstar(&["solve", "4a", "3", "1", "-o", p]);
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().next(), Some("t,u,v"));
    assert_eq!(csv.lines().count(), 2049);
    std::fs::remove_file(&path).unwrap();
    let o = ttstar(&["solve", "6c", "-2", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("t,u,v\n"));
}

#[test]
fn enumerate_counts() {
    let rows = |args: &[&str]| stdout(&ttstar(args)).lines().count() - 1;
    assert_eq!(rows(&["enumerate", "4a", "--format", "csv"]), 12);
    assert_eq!(rows(&["enumerate", "4a", "--format", "csv", "--full"]), 19);
    assert_eq!(rows(&["enumerate", "6a", "--full", "--format", "csv"]), 19);
    assert_eq!(rows(&["enumerate", "5c", "--format", "csv"]), 19);
    assert_eq!(rows(&["enumerate", "--raw", "--format", "csv"]), 33);
    assert_eq!(rows(&["enumerate", "--all", "--full", "--format", "csv"]), 190);
}

#[test]
fn golden_files_match_where_no_erratum_is_listed() {
    for (table, case) in TABLES.iter().zip(["4b", "5b", "5e", "6c"]) {
        let out = stdout(&ttstar(&["enumerate", case, "--format", "csv"]));
        let differing: Vec<(&str, &str)> = out.lines().zip(table.csv.lines()).filter(|(a, b)| a != b).collect();
        let expected = match table.name {
            "table6" | "table7" => 2,
            _ => 0,
        };
        assert_eq!(differing.len(), expected, "{}: {differing:#?}", table.name);
        assert_eq!(out.lines().count(), table.csv.lines().count());
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["enumerate", "--all", "--full", "--format", "json"][..],
        &["enumerate", "--raw"][..],
        &["verify", "--case", "5a"][..],
    ] {
        let a = ttstar_env(args, "1");
        let b = ttstar_env(args, "3");
        let c = ttstar(args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stdout, c.stdout);
    }
}

#[test]
fn json_round_trip() {
    let text = stdout(&ttstar(&["enumerate", "--all", "--full", "--format", "json"]));
    let rows: Vec<RecordRow> = serde_json::from_str(&text).unwrap();
    assert_eq!(rows.len(), 190);
    let again = serde_json::to_string_pretty(&rows).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn latex_has_block_rules() {
    let text = stdout(&ttstar(&["enumerate", "4a", "--format", "latex"]));
    assert!(text.starts_with("\\begin{tabular}{c||c|c|l}"));
    assert!(text.contains(" $(\\pi,0)$ & $(3,1)$ & $(\\pm 4,-6)$ & $\\theta^4$"), "{text}");
    // Header rule plus three block boundaries (the 12-row table has no left edge).
    assert_eq!(text.matches("\\hline").count(), 4);
}
