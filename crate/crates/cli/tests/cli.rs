// SPDX-License-Identifier: Apache-2.0

use std::process::{Command, Output};

use hankel_core::{HankelMatrix, RationalArg, RunReport};

fn hankel_eig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel-eig"))
        .args(args)
        .env_remove("HANKEL_EIG_PRECISION_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn small_run_writes_report_and_dump() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let dump = dir.path().join("m.txt");
    let o = hankel_eig(&[
        "run",
        "--n",
        "6",
        "--beta",
        "1/1",
        "--out",
        out.to_str().unwrap(),
        "--dump-matrix",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("1.04516816531566e-2"), "{text}");
    assert!(text.contains("verified"));
    assert!(text.contains("{c}"));

    let report: RunReport = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.n, 6);
    assert!(report.verified);
    assert_eq!(report.kv_bits, Some(2 * report.k_bits));
    assert_eq!(report.eigenvalue, "1.04516816531566e-2");
    let t = report.timing;
    assert!(t.compute_s + t.net_s + t.div_s <= t.total_s * (1.0 + 1e-9));

    let m = HankelMatrix::from_dump(&std::fs::read_to_string(&dump).unwrap(), RationalArg::integer(1).unwrap())
        .unwrap();
    assert_eq!(m.moments().len(), 11);
}

#[test]
fn one_by_one_reports_exact_value() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = hankel_eig(&["run", "--n", "1", "--out", out.to_str().unwrap()]);
    let report: RunReport = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.eigenvalue, "1.00000000000000e0");
    // λ₁ = 1 is itself the truncated probe, so the sign test cannot separate them.
    assert_eq!(report.verification, "inconclusive-probe-is-eigenvalue");
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn no_verify_succeeds() {
    let o = hankel_eig(&["run", "--n", "4", "--no-verify", "--workers", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("skipped"));
}

#[test]
fn invalid_configs_exit_3() {
    for args in [
        &["run", "--n", "4", "--beta", "0.5"][..],
        &["run", "--n", "0"],
        &["run", "--n", "4", "--workers", "0"],
        &["run", "--n", "4", "--net-bandwidth", "fast"],
        &["run"],
        &["frobnicate"],
    ] {
        let o = hankel_eig(args);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
    }
}

#[test]
fn precision_cap_exits_2() {
    // 32 bits cannot resolve N = 40; the first doubling past 100 hits the cap.
    let o = Command::new(env!("CARGO_BIN_EXE_hankel-eig"))
        .args(["run", "--n", "40", "--precision-bits", "32", "--no-verify"])
        .env("HANKEL_EIG_PRECISION_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    let bad = Command::new(env!("CARGO_BIN_EXE_hankel-eig"))
        .args(["run", "--n", "3"])
        .env("HANKEL_EIG_PRECISION_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn sweep_table_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let o = hankel_eig(&[
        "sweep",
        "--n",
        "5,8",
        "--workers",
        "1,2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 5, "{text}");
    assert!(text.lines().next().unwrap().contains("net+divs %"));
    let reports: Vec<RunReport> = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(reports.len(), 4);
    // Same (N, beta) gives the same digits whatever the worker count.
    assert_eq!(reports[0].eigenvalue, reports[1].eigenvalue);
    assert_eq!(reports[2].eigenvalue, reports[3].eigenvalue);
}

#[test]
fn one_element_sweep_matches_run() {
    let s = hankel_eig(&["sweep", "--n", "7"]);
    let r = hankel_eig(&["run", "--n", "7"]);
    let ev = "5.08986905414665e-3";
    assert!(stdout(&s).contains(ev));
    assert!(stdout(&r).contains(ev));
}
