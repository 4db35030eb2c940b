use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use finsat::solver::corpus::{antichain_prefix, conjunction, ANTICHAIN, INFINITY_AXIOM};
use finsat::syntax::write_structure;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("finsat-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn put(dir: &Path, file: &str, text: &str) -> PathBuf {
    let p = dir.join(file);
    std::fs::write(&p, text).unwrap();
    p
}

fn finsat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finsat"))
        .args(args)
        .env_remove("FINSAT_BOUND")
        .env_remove("FINSAT_TIME_LIMIT")
        .env_remove("FINSAT_MAX_CLAUSES")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn infinity_axiom_has_no_model_up_to_six() {
    let d = scratch("inf");
    let f = put(&d, "inf.txt", &format!("logic: l2-1t\n{INFINITY_AXIOM}\n"));
    let o = finsat(&["decide", f.to_str().unwrap(), "--bound", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no model up to size 6"));
}

#[test]
fn bound_comes_from_the_environment() {
    let d = scratch("env");
    let f = put(&d, "inf.txt", &format!("logic: l2-1t\n{INFINITY_AXIOM}\n"));
    let o = Command::new(env!("CARGO_BIN_EXE_finsat"))
        .args(["decide", f.to_str().unwrap()])
        .env("FINSAT_BOUND", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no model up to size 3"));
}

#[test]
fn antichain_prefix_satisfies_the_linear_order_conjuncts() {
    let d = scratch("fig");
    let s = put(&d, "prefix.txt", &write_structure(&antichain_prefix(4)));
    let first_two = put(&d, "lin.txt", &format!("logic: l2-1po-u\n{}\n", conjunction(&ANTICHAIN[..2])));
    let o = finsat(&["check-model", s.to_str().unwrap(), first_two.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "true\n");
    let fourth = put(&d, "up.txt", ANTICHAIN[3]);
    let o = finsat(&["check-model", s.to_str().unwrap(), fourth.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "false\n");
}

#[test]
fn sat_output_rechecks() {
    let d = scratch("sat");
    let f = put(&d, "po.txt", "logic: l2-1po\nforall x exists y (x < y | r(x, y))\n");
    for format in ["text", "document"] {
        let o = finsat(&["decide", f.to_str().unwrap(), "--bound", "3", "--format", format]);
        assert_eq!(o.status.code(), Some(0));
        let m = put(&d, "model.txt", &stdout(&o));
        let c = finsat(&["check-model", m.to_str().unwrap(), f.to_str().unwrap()]);
        assert_eq!(c.status.code(), Some(0), "{}", String::from_utf8_lossy(&c.stderr));
    }
}

#[test]
fn basic_forms_report_signature_growth() {
    let d = scratch("basic");
    let g = finsat(&["gen", "weak", "--seed", "5", "--depth", "2"]);
    assert_eq!(g.status.code(), Some(0));
    let w = put(&d, "weak.txt", &stdout(&g));
    let o = finsat(&["normalize", w.to_str().unwrap(), "--to", "basic"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("|sigma| = ")).expect("growth line");
    let nums: Vec<usize> = line.split(|c: char| !c.is_ascii_digit()).filter_map(|t| t.parse().ok()).collect();
    assert_eq!(nums.len(), 3, "{line}");
    assert_eq!(nums[1], 2);
    assert_eq!(nums[2], nums[0] + 3 * nums[1], "{line}");
}

#[test]
fn generation_is_deterministic() {
    for kind in ["formula", "structure", "weak"] {
        let a = finsat(&["gen", kind, "--seed", "11", "--logic", "l2-1po"]);
        let b = finsat(&["gen", kind, "--seed", "11", "--logic", "l2-1po"]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn generated_structures_factorize_and_export() {
    let d = scratch("dot");
    let g = finsat(&["gen", "structure", "--seed", "2", "--logic", "l2-1po-u", "--size", "6"]);
    let s = put(&d, "s.txt", &stdout(&g));
    let dot = finsat(&["dot", s.to_str().unwrap()]);
    assert_eq!(dot.status.code(), Some(0));
    let text = stdout(&dot);
    assert!(text.starts_with("digraph factorization {") && text.trim_end().ends_with('}'));
    let f = finsat(&["factorize", s.to_str().unwrap()]);
    assert_eq!(f.status.code(), Some(0));
    assert!(stdout(&f).lines().any(|l| l.starts_with("order:")));
}

#[test]
fn exit_codes_for_bad_input() {
    let d = scratch("bad");
    assert_eq!(finsat(&["no-such-command"]).status.code(), Some(64));
    let broken = put(&d, "broken.txt", "forall x (\n");
    let o = finsat(&["parse", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 1"));
    let binary = put(&d, "binary.txt", "logic: l2-1po-u\nforall x exists y r(x, y)\n");
    assert_eq!(finsat(&["parse", binary.to_str().unwrap()]).status.code(), Some(65));
    let clash = put(&d, "clash.txt", "logic: l2\nforall x p(x)\n");
    assert_eq!(finsat(&["parse", clash.to_str().unwrap(), "--logic", "l2-1t"]).status.code(), Some(64));
    assert_eq!(finsat(&["parse", d.join("missing.txt").to_str().unwrap()]).status.code(), Some(64));
}

#[test]
fn unknown_when_the_clause_budget_is_tiny() {
    let d = scratch("unknown");
    let f = put(&d, "f.txt", "logic: l2-1po\nforall x exists y (x < y | r(x, y))\n");
    let o = finsat(&["decide", f.to_str().unwrap(), "--max-clauses", "1"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn pipeline_report_lists_stages() {
    let d = scratch("pipe");
    let f = put(&d, "f.txt", "logic: l2-1t\nforall x exists y (t(x, y) & p(y))\n");
    let o = finsat(&["verify-pipeline", f.to_str().unwrap(), "--bound", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.starts_with("logic: l2-1t\n"));
    assert!(out.lines().any(|l| l.starts_with("PASS")));
}
