//! Shared helpers for the golden, fuzz and acceptance targets.

#![allow(dead_code)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use dmod_cli::{execute, parse, render, without_timing, Options};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn fixtures() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "dm"))
        .collect();
    v.sort();
    v
}

/// Fixtures whose report differs from the stored one, with the new report.
pub fn golden_mismatches(bless: bool) -> Vec<(PathBuf, String)> {
    let mut out = Vec::new();
    for input in fixtures() {
        let src = std::fs::read_to_string(&input).unwrap();
        let got = render(&without_timing(&execute(&src, &Options::default()).report)) + "\n";
        let expected_path = input.with_extension("json");
        if bless {
            std::fs::write(&expected_path, &got).unwrap();
        } else if std::fs::read_to_string(&expected_path).ok().as_deref() != Some(got.as_str()) {
            out.push((input, got));
        }
    }
    out
}

const PIECES: &[&str] = &[
    "ring", "W", "(", ")", "over", "QQ", "QZ", ";", "module", "lattice", "complex", "=", "coker", "right", "[", "]",
    ",", "check", "generated", "by", "with", "x1", "x2", "d1", "d2", "z", "+", "-", "*", "/", "^", "0", "1", "2", "17",
    "M", "L", "C", "gb", "nf", "dim", "holonomic-hat", "kunneth", "--zpower", "--stats", "#", "\n", " ", "$", "é",
    "99999999999999999999",
];

/// A corrupted session: a fixture with random edits, or a random token soup.
pub fn fuzz_input<R: Rng>(rng: &mut R, seeds: &[String]) -> String {
    if rng.gen_bool(0.3) {
        let k = rng.gen_range(0..40);
        return (0..k).map(|_| *PIECES.choose(rng).unwrap()).collect::<Vec<_>>().join(if rng.gen_bool(0.5) { " " } else { "" });
    }
    let mut chars: Vec<char> = seeds.choose(rng).unwrap().chars().collect();
    for _ in 0..rng.gen_range(1..=4) {
        let at = rng.gen_range(0..=chars.len());
        match rng.gen_range(0..3) {
            0 if at < chars.len() => {
                chars.remove(at);
            }
            1 if at < chars.len() => {
                let piece = PIECES.choose(rng).unwrap();
                chars.splice(at..at + 1, piece.chars());
            }
            _ => {
                let piece = PIECES.choose(rng).unwrap();
                chars.splice(at..at, piece.chars());
            }
        }
    }
    chars.into_iter().collect()
}

#[derive(Debug, Default)]
pub struct FuzzSummary {
    pub cases: usize,
    pub rejected: usize,
    pub accepted: usize,
    pub failures: Vec<String>,
}

/// Parses every input; rejected inputs must also produce an exit-2 report
/// with a position. Panics are caught and counted as failures.
pub fn fuzz_parse<R: Rng>(rng: &mut R, cases: usize) -> FuzzSummary {
    let seeds: Vec<String> = fixtures().iter().map(|p| std::fs::read_to_string(p).unwrap()).collect();
    let mut s = FuzzSummary { cases, ..FuzzSummary::default() };
    for _ in 0..cases {
        let src = fuzz_input(rng, &seeds);
        match catch_unwind(AssertUnwindSafe(|| parse(&src))) {
            Err(_) => s.failures.push(format!("parser panicked on {src:?}")),
            Ok(Ok(_)) => s.accepted += 1,
            Ok(Err(e)) => {
                s.rejected += 1;
                if e.line == 0 || e.column == 0 || e.token.is_empty() {
                    s.failures.push(format!("error without position on {src:?}: {e:?}"));
                    continue;
                }
                match catch_unwind(AssertUnwindSafe(|| execute(&src, &Options::default()))) {
                    Err(_) => s.failures.push(format!("execute panicked on {src:?}")),
                    Ok(o) if o.exit_code != 2 || !o.report["error"]["line"].is_u64() => {
                        s.failures.push(format!("rejected input did not report code 2 with a position: {src:?}"))
                    }
                    Ok(_) => {}
                }
            }
        }
    }
    s
}
