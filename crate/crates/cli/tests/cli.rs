use std::process::{Command, Output};

use misere::catalog::PublishedSolution;

fn misere(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_misere"))
        .args(args)
        .env_remove(misere::cache::CACHE_DIR_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn solve_prints_the_r8_quotient() {
    let out = misere(&["solve", "0.75"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("order         8\n"), "{text}");
    assert!(text.contains("name          R8\n"), "{text}");
    assert!(text.contains("phi           a b a b c b c b ab2 b ab2"), "{text}");
    assert!(text.contains("period        2 from heap 8"), "{text}");
    assert!(text.contains("isomorphic, row matches"), "{text}");
}

#[test]
fn json_output_is_a_catalog_record() {
    let out = misere(&["--format", "json", "solve", "0.34", "--heaps", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let rec: PublishedSolution = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec.code, "0.34");
    assert_eq!(rec.claimed_name.as_deref(), Some("S12"));
    assert_eq!(rec.phi.words.len(), 20);
}

#[test]
fn outcomes() {
    let out = misere(&["outcome", "0.26", "3", "3", "5"]);
    assert_eq!(stdout(&out), "P\n");
    let out = misere(&["outcome", "0.75", "1"]);
    assert_eq!(stdout(&out), "P\n");
    let out = misere(&["outcome-expr", "*2+*2"]);
    assert_eq!(stdout(&out), "P\n");
    let out = misere(&["outcome-expr", "*"]);
    assert_eq!(stdout(&out), "P\n");
    let out = misere(&["outcome-expr", "0"]);
    assert_eq!(stdout(&out), "N\n");
}

#[test]
fn solve_game_names_the_quotient() {
    let out = misere(&["solve-game", "*4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("order         10\n"), "{text}");
    assert!(text.contains("name          T3\n"), "{text}");
}

#[test]
fn partial_orders_and_repetition() {
    let out = misere(&["partials", "0.75", "--to", "6"]);
    assert_eq!(stdout(&out), "2 6 6 6 8 8\n");
    let out = misere(&["partials", "0.3310", "--to", "2", "--repeat"]);
    let text = stdout(&out);
    assert!(text.contains("1  0.3310  order 6  period 3"), "{text}");
    assert!(text.contains("2  0.33103310  order 202  period 7"), "{text}");
}

#[test]
fn cached_output_equals_cold_output() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path().to_str().unwrap();
    let cold = misere(&["solve", "0.34"]);
    let first = misere(&["--cache-dir", dir, "solve", "0.34"]);
    let entries = std::fs::read_dir(dir).unwrap().count();
    assert_eq!(entries, 1);
    let hit = misere(&["--cache-dir", dir, "solve", "0.34"]);
    assert_eq!(cold.stdout, first.stdout);
    assert_eq!(cold.stdout, hit.stdout);

    let json_cold = misere(&["--format", "json", "solve", "0.34"]);
    let json_hit = misere(&["--cache-dir", dir, "--format", "json", "solve", "0.34"]);
    assert_eq!(json_cold.stdout, json_hit.stdout);
}

#[test]
fn verify_and_ap_check() {
    let out = misere(&["verify", "0.75", "--beans", "16"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("consistent true"));
    let out = misere(&["ap", "check", "0.26", "--beans", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("agree"));
}

#[test]
fn exit_codes() {
    assert_eq!(misere(&["solve", "0.9"]).status.code(), Some(2));
    assert_eq!(misere(&["verify", "0.5"]).status.code(), Some(2));
    assert_eq!(misere(&["outcome", "0.75"]).status.code(), Some(2));
    assert_eq!(misere(&["--max-elements", "5", "solve", "0.34"]).status.code(), Some(2));
    let out = misere(&["--trace", "solve", "0.75", "--heaps", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let trace = String::from_utf8(out.stderr).unwrap();
    assert!(trace.lines().count() > 0);
    for line in trace.lines() {
        let _: serde_json::Value = serde_json::from_str(line).unwrap();
    }
}
