use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const TOY: &str = "a b 1 1\nb c 2 1\na c 2 1\nc d 3 1\nb d 4 1\n";
const LOOP: &str = "a x 1 1\nx y 2 1\ny x 3 1\nx z 4 1\n";

fn tbc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tbc")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compute_matches_oracle_byte_for_byte() {
    let dir = TempDir::new().unwrap();
    let toy = write(&dir, "toy.txt", TOY);
    let looped = write(&dir, "loop.txt", LOOP);
    for (input, criterion, beta) in [
        (&toy, "sh", "inf"),
        (&toy, "sh", "0"),
        (&toy, "sfo", "inf"),
        (&toy, "fa", "1"),
        (&looped, "sh", "inf"),
        (&looped, "sh", "0"),
        (&looped, "la", "2"),
    ] {
        let args = ["--input", s(input), "--criterion", criterion, "--beta", beta];
        let a = stdout(&tbc(&[&["compute"], &args[..]].concat()));
        let b = stdout(&tbc(&[&["oracle"], &args[..]].concat()));
        assert_eq!(a, b, "{criterion} beta={beta}");
    }
}

#[test]
fn toy_output() {
    let dir = TempDir::new().unwrap();
    let toy = write(&dir, "toy.txt", TOY);
    let out = dir.path().join("out.csv");
    stdout(&tbc(&["compute", "--input", s(&toy), "--output", s(&out)]));
    assert_eq!(fs::read_to_string(&out).unwrap(), "node,betweenness\nb,1/2\nc,1/2\na,0\nd,0\n");
    let fast = stdout(&tbc(&["compute", "--input", s(&toy), "--mode", "fast", "--beta", "0"]));
    assert_eq!(fast, "node,betweenness\nc,1.000000000000\na,0.000000000000\nb,0.000000000000\nd,0.000000000000\n");
}

#[test]
fn empty_input_gives_header_only() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.txt", "# nothing\n\n");
    assert_eq!(stdout(&tbc(&["compute", "--input", s(&empty)])), "node,betweenness\n");
}

#[test]
fn worker_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let mut text = String::new();
    for i in 0..120u32 {
        let (u, v) = (i % 13, (i % 13 + 1 + i * 7 % 11) % 13);
        text.push_str(&format!("n{u} n{v} {} {}\n", i % 17, 1 + i % 3));
    }
    let g = write(&dir, "g.txt", &text);
    for criterion in ["sh", "sfa", "fo"] {
        let run = |w: &str| stdout(&tbc(&["compute", "--input", s(&g), "--criterion", criterion, "--workers", w]));
        assert_eq!(run("1"), run("2"));
        assert_eq!(run("1"), run("8"));
    }
}

#[test]
fn static_path() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "p.txt", "u v 1\nv w 5\n");
    assert_eq!(stdout(&tbc(&["static", "--input", s(&path)])), "node,betweenness\nv,1\nu,0\nw,0\n");
}

#[test]
fn compare_files() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.csv", "node,betweenness\nx,3\ny,2\nz,1\nw,0\n");
    let b = write(&dir, "b.csv", "node,betweenness\nx,0\ny,1\nz,2\nw,3\n");
    assert_eq!(stdout(&tbc(&["compare", s(&a), s(&a)])), "1.000000\n");
    assert_eq!(stdout(&tbc(&["compare", s(&a), s(&b)])), "-1.000000\n");
    assert_eq!(stdout(&tbc(&["compare", s(&a), s(&b), "--metric", "wkendall"])), "-1.000000\n");
    assert_eq!(stdout(&tbc(&["compare", s(&a), s(&a), "--metric", "topk", "--k", "2"])), "2.000000\n");
    assert_eq!(tbc(&["compare", s(&a), s(&b), "--metric", "topk", "--k", "9"]).status.code(), Some(6));
    let other = write(&dir, "c.csv", "node,betweenness\nq,3\ny,2\nz,1\nw,0\n");
    assert_eq!(tbc(&["compare", s(&a), s(&other)]).status.code(), Some(6));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let toy = write(&dir, "toy.txt", TOY);
    let bad = write(&dir, "bad.txt", "a b 1 1\na b x\n");
    assert_eq!(tbc(&["compute", "--input", s(&bad)]).status.code(), Some(2));
    let zero = write(&dir, "zero.txt", "a b 1 0\n");
    assert_eq!(tbc(&["compute", "--input", s(&zero)]).status.code(), Some(2));
    assert_eq!(tbc(&["compute", "--input", s(&toy), "--criterion", "xx"]).status.code(), Some(3));
    assert_eq!(tbc(&["compute", "--input", s(&toy), "--beta", "-1"]).status.code(), Some(3));
    assert_eq!(tbc(&["compute", "--input", s(&toy), "--sources", "zz"]).status.code(), Some(3));
    assert_eq!(tbc(&["compute", "--input", s(&toy), "--mode", "slow"]).status.code(), Some(3));
    assert_eq!(tbc(&["compute", "--nope"]).status.code(), Some(3));
    assert_eq!(tbc(&["--help"]).status.code(), Some(0));
    let missing = dir.path().join("missing.txt");
    assert_eq!(tbc(&["compute", "--input", s(&missing)]).status.code(), Some(1));
}

#[test]
fn oracle_walk_cap() {
    // a dense all-to-all graph with many departures has far more than 10^7 walks
    let dir = TempDir::new().unwrap();
    let mut text = String::new();
    for t in 1..=40 {
        for u in 0..6 {
            for v in 0..6 {
                if u != v {
                    text.push_str(&format!("{u} {v} {t} 1\n"));
                }
            }
        }
    }
    let g = write(&dir, "dense.txt", &text);
    assert_eq!(tbc(&["oracle", "--input", s(&g), "--criterion", "fo"]).status.code(), Some(5));
}

#[test]
fn bench_reports_one_median() {
    let dir = TempDir::new().unwrap();
    let toy = write(&dir, "toy.txt", TOY);
    let out = stdout(&tbc(&["bench", "--input", s(&toy), "--reps", "1"]));
    assert_eq!(out.lines().filter(|l| l.starts_with("median_ns=")).count(), 1);
    assert_eq!(out.lines().filter(|l| l.starts_with("sample_ns=")).count(), 1);
    let out = stdout(&tbc(&["bench", "--input", "gen:50:400:100", "--seed", "3", "--beta", "2", "--reps", "3"]));
    assert!(out.starts_with("n=50 M=400 criterion=sh beta=2"), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("sample_ns=")).count(), 3);
    assert_eq!(tbc(&["bench", "--input", "gen:5:x:1"]).status.code(), Some(3));
}

#[test]
fn summary_line_on_stderr() {
    let dir = TempDir::new().unwrap();
    let toy = write(&dir, "toy.txt", TOY);
    let out = tbc(&["compute", "--input", s(&toy), "--undirected"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("n=4 M=10 T=4 criterion=sh beta=inf mode=exact time="), "{err}");
}

#[test]
fn fast_mode_overflow() {
    // two nodes per layer, complete between layers: 2^139 shortest walks to the last layer
    let dir = TempDir::new().unwrap();
    let mut text = String::new();
    for i in 0..140 {
        for u in ["a", "b"] {
            for v in ["a", "b"] {
                text.push_str(&format!("{u}{i} {v}{} {} 1\n", i + 1, i + 1));
            }
        }
    }
    let g = write(&dir, "layers.txt", &text);
    let out = tbc(&["compute", "--input", s(&g), "--mode", "fast", "--sources", "a0"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exact"));
    assert!(tbc(&["compute", "--input", s(&g), "--sources", "a0"]).status.success());
}
