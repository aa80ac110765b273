use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn opkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opkit")).args(args).output().expect("spawn opkit")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn dottest_exit_codes() {
    let ok = opkit(&["dottest", "--op", "identity"]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stderr));
    let json: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["trials"], 100);

    let chained = opkit(&["dottest", "--op", "chain(restriction, adjoint(dft))", "--n", "256", "--indices-seed", "1"]);
    assert_eq!(code(&chained), 0);
    let json: serde_json::Value = serde_json::from_slice(&chained.stdout).unwrap();
    assert_eq!(json["shape"], serde_json::json!([64, 256]));

    let broken = opkit(&["dottest", "--op", "broken-demo"]);
    assert_eq!(code(&broken), 1);
    let json: serde_json::Value = serde_json::from_slice(&broken.stdout).unwrap();
    assert_eq!(json["passed"], false);

    assert_eq!(code(&opkit(&["dottest", "--op", "nonsense"])), 2);
    assert_eq!(code(&opkit(&["dottest", "--op", "chain(dft"])), 2);
    assert_eq!(code(&opkit(&["dottest", "--op", "dft", "--n", "12"])), 2);
    assert_eq!(code(&opkit(&["dottest", "--op", "identity", "--trials", "0"])), 2);
}

#[test]
fn unwritable_outputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let inside = blocker.join("out");
    let inside = inside.to_str().unwrap();

    let out = opkit(&["interp", "--out", inside]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    let bench_out = blocker.join("bench.csv");
    let out = opkit(&["bench", "--sizes", "16", "--repeats", "1", "--out", bench_out.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bench.csv");
    let out = opkit(&[
        "bench",
        "--sizes",
        "64,128,256",
        "--repeats",
        "3",
        "--dense-cap",
        "20000",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "op_name,impl,size,repeats,mean_seconds,std_seconds");
    assert_eq!(lines.len(), 1 + 3 * 2 * 3);
    // 256² entries exceed the cap
    assert!(lines.iter().any(|l| l.starts_with("dft,dense,256,3,skipped,skipped")));
    assert!(lines.iter().any(|l| l.starts_with("restriction,operator,256,3,")));
    assert!(String::from_utf8_lossy(&out.stdout).contains("log-log slope"));
}

fn interp_into(dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["interp", "--out", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    opkit(&args)
}

#[test]
fn interp_outputs_are_byte_stable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(code(&interp_into(a.path(), &[])), 0);
    assert_eq!(code(&interp_into(b.path(), &[])), 0);
    for name in ["signals.csv", "report.json"] {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap(), "{name}");
    }
}

#[test]
fn interp_report_and_signals() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&interp_into(dir.path(), &[])), 0);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    for key in ["naive", "regularized", "fista"] {
        for field in ["rel_l2_error", "iterations", "stop_reason"] {
            assert!(!report[key][field].is_null(), "{key}.{field}");
        }
    }
    assert_eq!(report["config"]["n"], 256);
    assert_eq!(report["fista"]["true_support"], serde_json::json!([8, 21, 34, 222, 235, 248]));

    let mut reader = csv::Reader::from_path(dir.path().join("signals.csv")).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["t", "x_true", "y_mask", "x_naive", "x_reg", "x_fista"]);
    let rows: Vec<Vec<f64>> =
        reader.records().map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 256);
    assert_eq!(rows.iter().filter(|r| r[2] == 1.0).count(), 64);
    for r in &rows {
        // the naive solution reproduces samples and is zero elsewhere
        if r[2] == 1.0 {
            assert!((r[3] - r[1]).abs() <= 1e-12);
        } else {
            assert_eq!(r[3], 0.0);
        }
    }
}

#[test]
fn interp_iteration_cap_still_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&interp_into(dir.path(), &["--max-iters", "3"])), 0);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["fista"]["stop_reason"], "max_iters");
    assert_eq!(report["fista"]["iterations"], 3);
}

#[test]
fn interp_rejects_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&interp_into(dir.path(), &["--n", "100"])), 2);
    assert_eq!(code(&interp_into(dir.path(), &["--freqs", "8,21", "--amps", "1.0"])), 2);
}
