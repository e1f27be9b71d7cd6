use std::path::Path;
use std::process::{Command, Output};

fn hampart(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hampart"))
        .args(args)
        .current_dir(dir)
        .env("HPART_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn phelps_search_then_aut() {
    let dir = tempfile::tempdir().unwrap();
    let o = hampart(&["phelps-search", "--dim", "2", "-o", "ph.hpart"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("signature={2x28}"));
    let o = hampart(&["aut", "ph.hpart", "--exhaustive"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("ordered-pair orbit: 56 of 56"));
}

#[test]
fn build_verify_uniformity_records() {
    let dir = tempfile::tempdir().unwrap();
    assert!(hampart(&["build", "trivial15", "-o", "t15.hpart"], dir.path()).status.success());
    let o = hampart(&["--format", "records", "verify", "t15.hpart", "--exhaustive"], dir.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "verify n=15 pairs=120 valid=true modes_agree=true");
    let o = hampart(&["--format", "records", "uniformity", "t15.hpart"], dir.path());
    assert_eq!(stdout(&o).trim(), "uniformity uniform=true number=11 signature={11x120}");
}

#[test]
fn extend_then_puncture() {
    let dir = tempfile::tempdir().unwrap();
    assert!(hampart(&["build", "phelps7", "-o", "p.hpart"], dir.path()).status.success());
    assert!(hampart(&["extend", "p.hpart", "-o", "e.hpart"], dir.path()).status.success());
    assert!(hampart(&["puncture", "e.hpart", "--position", "8", "-o", "q.hpart"], dir.path()).status.success());
    let p = std::fs::read_to_string(dir.path().join("p.hpart")).unwrap();
    let q = std::fs::read_to_string(dir.path().join("q.hpart")).unwrap();
    assert_eq!(p, q);
}

#[test]
fn mismatching_table_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let o = hampart(&["theorem-table", "--m", "3"], dir.path());
    assert!(o.status.success());
    let o = hampart(&["theorem-table", "--m", "6"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("trivial63"));
}

#[test]
fn lemma3_with_import() {
    let dir = tempfile::tempdir().unwrap();
    assert!(hampart(&["build", "gold31", "-o", "g.hpart"], dir.path()).status.success());
    let o = hampart(&["--format", "records", "lemma3", "--import", "g.hpart@22"], dir.path());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4);
    assert!(out.contains("n=1023"));
    let o = hampart(&["lemma3", "--import", "g.hpart@23"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lifted_generators_at_31() {
    let dir = tempfile::tempdir().unwrap();
    for (r, f) in [("trivial3", "l.hpart"), ("phelps7", "t.hpart"), ("B(trivial3, phelps7)", "b.hpart")] {
        assert!(hampart(&["build", r, "-o", f], dir.path()).status.success());
    }
    let o = hampart(&["--format", "records", "aut", "b.hpart", "--lift", "l.hpart", "t.hpart"], dir.path());
    assert!(stdout(&o).contains("lift verified="));
    assert!(stdout(&o).contains("expected=992"));
}

#[test]
fn malformed_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.hpart"), "HPART1 3 2 4\n0 000\n111\n0 000\n111\n").unwrap();
    let o = hampart(&["verify", "bad.hpart"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
}
