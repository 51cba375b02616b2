use std::process::{Command, Output};

use nearto::analysis::{bounds_report, trace_inverse};
use nearto::MatrixConfig;
use serde_json::Value;

fn nearto(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nearto")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = nearto(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn close(v: &Value, want: f64, tol: f64) -> bool {
    (v.as_f64().unwrap() - want).abs() <= tol
}

#[test]
fn bounds_dominant_corner() {
    let r = json(&["bounds", "--n", "10", "--b", "2", "--btilde", "5.93"]);
    assert!(close(&r["outputs"]["upper"], 11.139, 5e-4));
    assert_eq!(r["branch"], "btilde_gt_1");
    assert_eq!(r["command"], "bounds");
}

#[test]
fn singular_query_and_singular_input() {
    let r = json(&["singular", "--n", "5", "--b", "2", "--btilde", "0.5"]);
    assert_eq!(r["outputs"]["singular"], true);

    let out = nearto(&["norm", "--n", "5", "--b", "2", "--btilde", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(err["error"]["kind"], "singular");
}

#[test]
fn toeplitz_trace() {
    let r = json(&["trace", "--n", "4", "--b", "2", "--btilde", "2"]);
    assert!(close(&r["outputs"]["trace"], 4.0, 1e-12));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(nearto(&["trace", "--n", "4"]).status.code(), Some(2));
    assert_eq!(nearto(&["trace", "--n", "3", "--b", "2", "--btilde", "2"]).status.code(), Some(2));
    assert_eq!(
        nearto(&["entry", "--n", "4", "--b", "2", "--btilde", "2", "--i", "5", "--j", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(nearto(&["reproduce", "table7"]).status.code(), Some(2));
}

#[test]
fn solve_bvp_table_rows() {
    let r = json(&[
        "solve-bvp",
        "--n",
        "50",
        "--b",
        "2",
        "--btilde",
        "2",
        "--length",
        "0.5",
        "--k",
        "1",
        "--nonlinearity",
        "fisher",
    ]);
    assert!(close(&r["outputs"]["expected_rate"], 0.0325, 1e-3));

    let r = json(&[
        "solve-bvp",
        "--n",
        "50",
        "--b",
        "-2",
        "--btilde",
        "-2",
        "--length",
        "0.05",
        "--k",
        "729",
        "--nonlinearity",
        "fisher",
    ]);
    let it = r["outputs"]["iterations"].as_i64().unwrap();
    assert!((it - 9).abs() <= 2);

    let r = json(&[
        "solve-bvp",
        "--n",
        "10",
        "--b",
        "2",
        "--btilde",
        "2",
        "--length",
        "1",
        "--k",
        "0",
        "--nonlinearity",
        "fisher",
    ]);
    // one step reaches the zero solution, the next confirms it
    assert_eq!(r["outputs"]["converged"], true);
    assert!(r["outputs"]["iterations"].as_u64().unwrap() <= 2);
    assert!(r["outputs"]["solution"].as_array().unwrap().iter().all(|v| v.as_f64() == Some(0.0)));
}

#[test]
fn solve_bvp_accepts_fractional_k() {
    let r = json(&[
        "solve-bvp",
        "--n",
        "50",
        "--b",
        "2",
        "--btilde",
        "2",
        "--length",
        "0.5",
        "--k",
        "1/2",
        "--nonlinearity",
        "fisher",
    ]);
    assert!(close(&r["inputs"]["k"], 0.5, 0.0));
    assert!(close(&r["outputs"]["expected_rate"], 0.0163, 1e-3));
}

#[test]
fn divergence_exit_code_and_trace() {
    let out = nearto(&[
        "solve-bvp",
        "--n",
        "10",
        "--b",
        "2",
        "--btilde",
        "2",
        "--length",
        "3",
        "--k",
        "5",
        "--nonlinearity",
        "bratu",
        "--u-min",
        "0",
        "--u-max",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(err["error"]["kind"], "divergence");
    assert!(!err["error"]["diffs"].as_array().unwrap().is_empty());
}

#[test]
fn bratu_needs_an_iterate_range() {
    let out = nearto(&[
        "solve-bvp",
        "--n",
        "10",
        "--b",
        "2",
        "--btilde",
        "2",
        "--length",
        "1",
        "--k",
        "1",
        "--nonlinearity",
        "bratu",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reproduce_tables() {
    let out = nearto(&["reproduce", "table5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8);
    let expected = [0.0163, 0.0325, 0.065, 0.13, 0.2601, 0.5202, 1.0404];
    for (line, want) in lines[1..].iter().zip(expected) {
        let got: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
        assert!((got - want).abs() <= 1e-3, "{line}");
    }

    let text = String::from_utf8(nearto(&["reproduce", "table6"]).stdout).unwrap();
    let first: f64 = text.lines().nth(1).unwrap().split(',').nth(3).unwrap().parse().unwrap();
    assert!((first - 0.0003).abs() <= 5e-5);

    let r = json(&["reproduce", "fig2_table", "--format", "json"]);
    assert_eq!(r["outputs"]["rows"].as_array().unwrap().len(), 7);
}

#[test]
fn output_is_deterministic_and_out_matches_stdout() {
    let args = ["invert", "--n", "6", "--b", "-2", "--btilde", "0.3"];
    let a = nearto(&args).stdout;
    let b = nearto(&args).stdout;
    assert_eq!(a, b);

    let dir = std::env::temp_dir().join(format!("nearto-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let mut with_out: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    with_out.extend(["--out", &p]);
    let c = nearto(&with_out).stdout;
    assert_eq!(c, a);
    assert_eq!(std::fs::read(&path).unwrap(), a);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn cli_agrees_with_library() {
    for &(n, b, bt) in &[(7usize, 2i32, -1.5f64), (12, -2, 3.25), (9, 2, 0.8)] {
        let cfg = MatrixConfig::new(n, b, bt).unwrap();
        let (ns, bs, bts) = (n.to_string(), b.to_string(), bt.to_string());
        let base = ["--n", ns.as_str(), "--b", bs.as_str(), "--btilde", bts.as_str()];

        let r = json(&[&["bounds"][..], &base].concat());
        let lib = bounds_report(&cfg).unwrap();
        for (key, want) in [("lower", lib.lower), ("upper", lib.upper), ("exact_norm", lib.exact_norm)] {
            assert!(close(&r["outputs"][key], want, 1e-9 * want.abs().max(1.0)), "{key}");
        }
        assert_eq!(r["branch"], lib.branch.label(cfg.diagonal()));

        let r = json(&[&["trace"][..], &base].concat());
        let want = trace_inverse(&cfg).unwrap();
        assert!(close(&r["outputs"]["trace"], want, 1e-9 * want.abs().max(1.0)));
    }
}

#[test]
fn csv_format_switch() {
    let out = nearto(&["rowsum", "--n", "5", "--b", "2", "--btilde", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("section,key,value\n"));
    assert!(text.contains("outputs,rowsums.5,"));
}
