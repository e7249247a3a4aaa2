//! End-to-end runs of the `gaussint` binary.

use std::path::Path;
use std::process::{Command, Output};

use gaussint::output::{parse_eri_text, parse_matrix_text};

fn gaussint(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gaussint"));
    cmd.args(args).env_remove("GAUSSINT_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn run_in(dir: &Path, mol: &str, out: &str, extra: &[&str], env: &[(&str, &str)]) -> Output {
    let out_dir = dir.join(out);
    let mut args = vec!["--mol", mol, "--out", out_dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    gaussint(&args, env)
}

fn read(dir: &Path, out: &str, file: &str) -> String {
    std::fs::read_to_string(dir.join(out).join(file)).unwrap()
}

#[test]
fn hydrogen_molecule_reference_values() {
    // minimal-basis H2 at 1.4 bohr, values known to four decimals
    let tmp = tempfile::tempdir().unwrap();
    let mol = write(tmp.path(), "h2.xyz", "2\nH2\nH 0 0 0\nH 0 0 1.4\n");
    let out = run_in(tmp.path(), &mol, "out", &[], &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = String::from_utf8(out.stdout).unwrap();
    assert!(summary.starts_with("basis dimension 2, eri records 6,"), "{summary}");

    let (_, s) = parse_matrix_text(&read(tmp.path(), "out", "overlap.txt")).unwrap();
    let (_, t) = parse_matrix_text(&read(tmp.path(), "out", "kinetic.txt")).unwrap();
    let (_, v) = parse_matrix_text(&read(tmp.path(), "out", "nuclear.txt")).unwrap();
    let close = |a: f64, b: f64| (a - b).abs() < 5e-5;
    assert!(close(s.get(1, 0), 0.6593));
    assert!(close(t.get(0, 0), 0.7600) && close(t.get(1, 0), 0.2365));
    assert!(close(v.get(0, 0), -1.8804) && close(v.get(1, 0), -1.1948));

    let eri = parse_eri_text(&read(tmp.path(), "out", "eri.txt")).unwrap();
    let value = |idx: [u32; 4]| eri.iter().find(|r| r.indices == idx).unwrap().value;
    assert!(close(value([0, 0, 0, 0]), 0.7746));
    assert!(close(value([1, 1, 0, 0]), 0.5697));
    assert!(close(value([1, 0, 1, 0]), 0.2970));
    assert!(close(value([1, 0, 0, 0]), 0.4441));
}

#[test]
fn single_atom_gives_one_by_one_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let mol = write(tmp.path(), "h.xyz", "1\nH\nH 0 0 0\n");
    assert!(run_in(tmp.path(), &mol, "out", &[], &[]).status.success());
    let (_, s) = parse_matrix_text(&read(tmp.path(), "out", "overlap.txt")).unwrap();
    assert_eq!(s.dimension(), 1);
    assert!((s.get(0, 0) - 1.0).abs() < 1e-12);
    assert_eq!(parse_eri_text(&read(tmp.path(), "out", "eri.txt")).unwrap().len(), 1);
}

#[test]
fn angstrom_flag_converts_coordinates() {
    let tmp = tempfile::tempdir().unwrap();
    let bohr = write(tmp.path(), "bohr.xyz", "2\n\nH 0 0 0\nH 0 0 1.4\n");
    let ang = write(tmp.path(), "ang.xyz", &format!("2\n\nH 0 0 0\nH 0 0 {}\n", 1.4 * 0.52917721092));
    assert!(run_in(tmp.path(), &bohr, "bohr", &[], &[]).status.success());
    assert!(run_in(tmp.path(), &ang, "ang", &["--angstrom"], &[]).status.success());
    let (_, a) = parse_matrix_text(&read(tmp.path(), "bohr", "overlap.txt")).unwrap();
    let (_, b) = parse_matrix_text(&read(tmp.path(), "ang", "overlap.txt")).unwrap();
    assert!((a.get(1, 0) - b.get(1, 0)).abs() < 1e-12);
}

#[test]
fn worker_count_does_not_change_output() {
    let tmp = tempfile::tempdir().unwrap();
    let mol = write(tmp.path(), "h2o.xyz", "3\nwater\nO 0 0 0.1173\nH 0 1.4304 -0.9316\nH 0 -1.4304 -0.9316\n");
    assert!(run_in(tmp.path(), &mol, "one", &[], &[("GAUSSINT_THREADS", "1")]).status.success());
    assert!(run_in(tmp.path(), &mol, "auto", &[], &[]).status.success());
    for f in ["overlap.txt", "kinetic.txt", "nuclear.txt", "eri.txt"] {
        assert_eq!(read(tmp.path(), "one", f), read(tmp.path(), "auto", f), "{f}");
    }
    // seven functions: every one of the 406 unique integrals is listed
    assert_eq!(parse_eri_text(&read(tmp.path(), "one", "eri.txt")).unwrap().len(), 406);
    let bad = run_in(tmp.path(), &mol, "bad", &[], &[("GAUSSINT_THREADS", "many")]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn ssss_backend_rejects_p_shells() {
    let tmp = tempfile::tempdir().unwrap();
    let h2 = write(tmp.path(), "h2.xyz", "2\n\nH 0 0 0\nH 0 0 1.4\n");
    let h2o = write(tmp.path(), "h2o.xyz", "3\n\nO 0 0 0\nH 0 1.4 -0.9\nH 0 -1.4 -0.9\n");
    let ok = run_in(tmp.path(), &h2, "s", &["--backend", "ssss"], &[]);
    assert!(ok.status.success());
    assert_eq!(read(tmp.path(), "s", "eri.txt"), {
        assert!(run_in(tmp.path(), &h2, "h", &[], &[]).status.success());
        read(tmp.path(), "h", "eri.txt")
    });
    let err = run_in(tmp.path(), &h2o, "p", &["--backend", "ssss"], &[]);
    assert_eq!(err.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(gaussint(&[], &[]).status.code(), Some(2));
    assert_eq!(gaussint(&["--mol", "x.xyz", "--backend", "magic"], &[]).status.code(), Some(2));
    assert_eq!(gaussint(&["--mol", "x.xyz", "--screen", "-1"], &[]).status.code(), Some(2));
    assert_eq!(gaussint(&["--selftest", "--t-switch", "500"], &[]).status.code(), Some(2));

    let missing = tmp.path().join("missing.xyz");
    let out = gaussint(&["--mol", missing.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));

    let bad = write(tmp.path(), "bad.xyz", "1\n\nXx 0 0 0\n");
    assert_eq!(run_in(tmp.path(), &bad, "o", &[], &[]).status.code(), Some(1));
    let mol = write(tmp.path(), "h.xyz", "1\n\nH 0 0 0\n");
    let basis = write(tmp.path(), "b.gbs", "H 0\nS 2 1.00\n1.0 1.0\n****\n");
    let out = run_in(tmp.path(), &mol, "o", &["--basis", &basis], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("b.gbs:4:"));
}

#[test]
fn selftest_is_deterministic() {
    let a = gaussint(&["--selftest", "--seed", "7"], &[]);
    let b = gaussint(&["--selftest", "--seed", "7"], &[]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.trim_end().ends_with("selftest seed 7: 4/4 suites passed"), "{text}");
}

#[test]
fn selftest_with_small_switch_point_still_passes() {
    let out = gaussint(&["--selftest", "--t-switch", "0.001"], &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}
