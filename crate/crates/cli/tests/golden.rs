//! Golden reports for every subcommand. Set `DMOD_BLESS=1` to rewrite the
//! expected files after an intended change.

mod common;

use std::io::Write;
use std::process::{Command, Stdio};

use common::{fixtures, golden_dir, golden_mismatches};
use dmod_cli::{execute, render, without_timing, Options};

#[test]
fn reports_match_golden_files() {
    let bless = std::env::var_os("DMOD_BLESS").is_some();
    let failures = golden_mismatches(bless);
    let listing: Vec<String> = failures.iter().map(|(p, got)| format!("{}:\n{got}", p.display())).collect();
    assert!(failures.is_empty(), "{} mismatches:\n{}", failures.len(), listing.join("\n"));
}

#[test]
fn every_subcommand_has_a_fixture() {
    let sources: Vec<String> = fixtures().iter().map(|p| std::fs::read_to_string(p).unwrap()).collect();
    for sub in dmod_cli::parser::SUBCOMMANDS {
        let hit = sources.iter().any(|s| s.lines().any(|l| l.split_whitespace().nth(2) == Some(sub)));
        assert!(hit, "no golden fixture for {sub}");
    }
}

#[test]
fn reports_are_deterministic() {
    for input in fixtures().into_iter().take(12) {
        let src = std::fs::read_to_string(&input).unwrap();
        let a = render(&without_timing(&execute(&src, &Options::default()).report));
        let b = render(&without_timing(&execute(&src, &Options::default()).report));
        assert_eq!(a, b, "{}", input.display());
    }
}

fn run_binary(args: &[&str], stdin: &str) -> (i32, serde_json::Value) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dmod"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap())
}

#[test]
fn binary_exit_codes_and_input_sources() {
    let (code, report) = run_binary(&[], "ring W(1) over QQ; module M = coker [[d1]]; check M holonomic");
    assert_eq!(code, 0);
    assert_eq!(report["result"]["verdict"], serde_json::json!(true));

    let (code, _) = run_binary(&["-"], "ring W(1) over QQ; module F = coker [[]]; check F dual");
    assert_eq!(code, 1);

    let (code, report) = run_binary(&[], "ring W(1) over QQ; module M = coker [[d1 +]]; check M dim");
    assert_eq!(code, 2);
    assert_eq!(report["error"]["line"], serde_json::json!(1));

    let file = golden_dir().join("derham_polynomials.dm");
    let (code, report) = run_binary(&[file.to_str().unwrap(), "--max-degree", "12", "--stats"], "");
    assert_eq!(code, 0);
    assert_eq!(report["result"]["oracle"]["max_degree"], serde_json::json!(12));
    assert!(report["stats"]["bases_computed"].as_u64().unwrap() > 0);
}
