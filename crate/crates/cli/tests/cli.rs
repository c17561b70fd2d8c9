use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resolvent"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn invariants_match_golden_report() {
    let o = run(&["invariants", "--complex", "mixed.cx"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), fs::read_to_string(fixtures().join("mixed.invariants.txt")).unwrap());
}

#[test]
fn enumerate_matches_golden_report() {
    let o = run(&["enumerate", "--poset", "chain.poset", "--cap", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), fs::read_to_string(fixtures().join("chain.enumerate.txt")).unwrap());
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        &["verify", "--scale", "tiny", "--seed", "7"][..],
        &["classify", "--complex", "koszul_x.cx", "--complex", "mixed.cx"],
        &["shrink", "--complex", "mixed.cx", "--site", "1"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn seed_is_recorded() {
    let a = stdout(&run(&["verify", "--scale", "tiny", "--seed", "3"]));
    assert!(a.lines().nth(1).unwrap().starts_with("seed 3 scale tiny"));
}

#[test]
fn out_flag_writes_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let o = run(&["chain", "--ring", "dual.ring", "--site", "0", "--cap", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let direct = run(&["chain", "--ring", "dual.ring", "--site", "0", "--cap", "2"]);
    assert_eq!(fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn chain_levels_are_exact() {
    let o = run(&["chain", "--ring", "dual.ring", "--site", "0", "--cap", "3"]);
    let text = stdout(&o);
    for n in 0..=3 {
        assert!(text.contains(&format!("n={n} pd {n} exact level yes contained in next yes strict yes")), "{text}");
    }
}

#[test]
fn d_squared_violation_is_an_input_error() {
    let o = run(&["invariants", "--complex", "bad_d2.cx"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("d∘d ≠ 0 at degree -2"), "{}", stderr(&o));
}

#[test]
fn cyclic_poset_is_an_input_error() {
    let o = run(&["enumerate", "--poset", "cyclic.poset"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("order not antisymmetric"));
}

#[test]
fn parse_errors_carry_line_and_column() {
    let o = run(&["invariants", "--complex", "bad_var.cx"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o).trim(), "error: bad_var.cx:6:7: unknown variable `z`");
}

#[test]
fn missing_inputs_exit_two() {
    assert_eq!(run(&["invariants"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "--complex", "absent.cx"]).status.code(), Some(2));
    assert_eq!(run(&["chain", "--ring", "dual.ring", "--site", "9"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--scale", "huge"]).status.code(), Some(2));
}

#[test]
fn ring_file_dimension() {
    let o = run(&["invariants", "--ring", "local2.ring", "--complex", "koszul_local2.cx"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("k-dims=[4]"));
    assert!(text.contains("pd 2"), "{text}");
}

#[test]
fn tiny_verify_passes() {
    let o = run(&["verify", "--scale", "tiny"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().last().unwrap().ends_with("checks passed"));
}

#[test]
fn injected_dual_fault_fails_biduality_with_reproducible_instance() {
    let o = run(&["verify", "--scale", "tiny", "--inject-fault", "dual-sign"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL complex.biduality"), "{text}");
    assert!(!text.contains("FAIL spectrum"), "{text}");

    // the echoed ring and complex parse back and describe a valid complex
    let block = |title: &str| -> String {
        let start = text.find(title).unwrap() + title.len() + 1;
        text[start..]
            .lines()
            .take_while(|l| l.starts_with("    "))
            .map(|l| format!("{}\n", &l[4..]))
            .collect()
    };
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("r.ring"), block("failing ring file:")).unwrap();
    fs::write(dir.path().join("x.cx"), block("failing complex file:")).unwrap();
    let ring = dir.path().join("r.ring");
    let cx = dir.path().join("x.cx");
    let o = run(&["invariants", "--ring", ring.to_str().unwrap(), "--complex", cx.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}
