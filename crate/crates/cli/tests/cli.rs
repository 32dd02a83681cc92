use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn sgcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgcc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_k4_with_two_negatives() {
    let o = sgcc(&["analyze", path(&fixture("k4_two_negatives.sg"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n=4 m=6 cubic=yes 2ec=yes eps=2 flow-admissible=yes gs=4\n");
}

#[test]
fn generator_output_matches_golden_file() {
    let o = sgcc(&["gen-random", "--n", "10", "--negatives", "2", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = std::fs::read_to_string(fixture("random_n10_neg2_seed7.sg")).unwrap();
    assert_eq!(stdout(&o), golden);
}

#[test]
fn four_vertices_give_k4_for_any_seed() {
    let k4 = "p sg 4 6\ne 1 2 +\ne 1 3 +\ne 1 4 +\ne 2 3 +\ne 2 4 +\ne 3 4 +\n";
    for seed in ["0", "1", "12345"] {
        let o = sgcc(&["gen-random", "--n", "4", "--seed", seed]);
        assert!(stdout(&o).ends_with(k4));
    }
}

#[test]
fn odd_order_is_a_precondition_failure() {
    assert_eq!(sgcc(&["gen-random", "--n", "5"]).status.code(), Some(2));
}

#[test]
fn single_negative_edge_has_no_cover() {
    let o = sgcc(&["cover", path(&fixture("k4_one_negative.sg"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no circuit cover exists"));
}

#[test]
fn cover_then_verify_is_valid() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["k4_two_negatives.sg", "random_n10_neg2_seed7.sg"] {
        let out = dir.path().join(format!("{name}.cover"));
        let o = sgcc(&[
            "cover",
            path(&fixture(name)),
            "--json",
            "--budget",
            "10",
            "--out",
            path(&out),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let text = std::fs::read_to_string(&out).unwrap();
        assert!(text.starts_with("# seed 0\n"));
        assert!(text.contains("\"oracle_gap\":"));
        let v = sgcc(&["verify", path(&fixture(name)), path(&out)]);
        assert_eq!(v.status.code(), Some(0));
        assert!(stdout(&v).starts_with("{\"valid\":true,"));
    }
}

#[test]
fn verify_reports_missing_edges() {
    let dir = tempfile::tempdir().unwrap();
    let cover = dir.path().join("partial.cover");
    std::fs::write(&cover, "C 1 2 4\n").unwrap();
    let o = sgcc(&["verify", path(&fixture("k4_two_negatives.sg")), path(&cover)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"valid\":false"));
}

#[test]
fn oracle_witness_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("witness.cover");
    let g = fixture("k4_two_negatives.sg");
    let o = sgcc(&["oracle-scc", path(&g), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.lines().last().unwrap().contains("\"status\":\"exact\""));
    let v = sgcc(&["verify", path(&g), path(&out)]);
    let report = stdout(&v);
    assert!(
        report.contains("\"valid\":true")
            && report.contains("\"bound_23_9\":true")
            && report.contains("\"bound_26_9\":true")
    );
}

#[test]
fn no_cdc_generator_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    // two K4-minus-an-edge blocks joined by two edges
    let base = dir.path().join("diamonds.sg");
    std::fs::write(
        &base,
        "p sg 8 12\ne 1 2 +\ne 1 3 +\ne 2 3 +\ne 2 4 +\ne 3 4 +\ne 5 6 +\ne 5 7 +\ne 6 7 +\ne 6 8 +\ne 7 8 +\ne 1 5 +\ne 4 8 +\n",
    )
    .unwrap();
    let signed = dir.path().join("signed.sg");
    let o = sgcc(&["gen-no-cdc", path(&base), "--out", path(&signed)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(std::fs::read_to_string(&signed)
        .unwrap()
        .starts_with("# gen-no-cdc cut"));
    let cdc = sgcc(&["oracle-cdc", path(&signed)]);
    assert_eq!(cdc.status.code(), Some(0));
    assert!(stdout(&cdc).starts_with("# cdc no"));
    let a = sgcc(&["analyze", path(&signed)]);
    assert!(stdout(&a).contains("eps=2 "));
    assert_eq!(sgcc(&["cover", path(&signed), "--even-only"]).status.code(), Some(0));
}

#[test]
fn three_edge_connected_input_is_rejected_by_no_cdc_generator() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = dir.path().join("k4.sg");
    std::fs::write(&k4, "p sg 4 6\ne 1 2 +\ne 1 3 +\ne 1 4 +\ne 2 3 +\ne 2 4 +\ne 3 4 +\n").unwrap();
    assert_eq!(sgcc(&["gen-no-cdc", path(&k4)]).status.code(), Some(2));
}

#[test]
fn malformed_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sg");
    std::fs::write(&bad, "p sg 3 1\ne 1 1 +\n").unwrap();
    assert_eq!(sgcc(&["analyze", path(&bad)]).status.code(), Some(1));
    assert_eq!(sgcc(&["analyze", "/nonexistent/graph.sg"]).status.code(), Some(1));
    assert_eq!(sgcc(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn vertex_budget_exceeded_exits_with_three() {
    let o = sgcc(&["analyze", path(&fixture("random_n10_neg2_seed7.sg")), "--max-n", "6"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn thread_cap_does_not_change_output() {
    let g = fixture("random_n10_neg2_seed7.sg");
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_sgcc"))
            .env("SGCC_THREADS", threads)
            .args(["cover", path(&g), "--json"])
            .output()
            .unwrap();
        stdout(&o)
    };
    assert_eq!(run("1"), run("0"));
}
