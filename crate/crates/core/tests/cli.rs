use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use corrsplit::families::bell_state;

fn corrsplit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corrsplit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// `name  value` lines of the text report.
fn field(report: &str, name: &str) -> f64 {
    report
        .lines()
        .find_map(|l| {
            let mut it = l.split_whitespace();
            (it.next() == Some(name)).then(|| it.next().unwrap().parse().unwrap())
        })
        .unwrap_or_else(|| panic!("no {name} in\n{report}"))
}

fn sweep(dir: &Path, name: &str, extra: &[&str]) -> String {
    let out = dir.join(name);
    let mut args = vec!["sweep", "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = corrsplit(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    fs::read_to_string(out).unwrap()
}

#[test]
fn measure_werner_endpoints() {
    let o = corrsplit(&["measure", "--werner", "1.0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("psi                1.000000"), "{text}");
    for name in ["ree", "c1", "c2", "chi_projective"] {
        assert!((field(&text, name) - 1.0).abs() < 1e-6);
    }
    assert_eq!(field(&text, "mutual_info"), 2.0);

    let zero = stdout(&corrsplit(&["measure", "--werner", "0.0"]));
    for name in ["mutual_info", "ree", "psi", "c1", "c2", "chi_projective", "negativity"] {
        assert_eq!(field(&zero, name), 0.0, "{name}");
    }
}

#[test]
fn measure_file_matches_named_state() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bell.json");
    fs::write(&path, serde_json::to_string(&bell_state().to_state_file()).unwrap()).unwrap();
    let from_file = stdout(&corrsplit(&["measure", "--file", path.to_str().unwrap()]));
    let named = stdout(&corrsplit(&["measure", "--werner", "1.0"]));
    for name in ["mutual_info", "ree", "psi", "c1", "c2", "chi_projective"] {
        assert!((field(&from_file, name) - field(&named, name)).abs() <= 1e-6, "{name}");
    }
}

#[test]
fn measure_json_output_parses() {
    let o = corrsplit(&["measure", "--werner", "0.6", "--json", "--povm-trials", "10"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["psi"].as_f64().unwrap() > 0.0);
    assert!(v["chi_povm"].as_f64().is_some());
    assert!(v["diagnostics"]["ree_converged"].as_bool().unwrap());
}

#[test]
fn invalid_inputs_exit_with_one_and_name_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            r#"{"d_a":2,"d_b":2,"re":[[0.6,0,0,0.5],[0,0,0,0],[0,0,0,0],[0.5,0,0,0.5]],"im":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#,
            "trace",
        ),
        (
            r#"{"d_a":2,"d_b":2,"re":[[0.5,0,0,0.9],[0,0,0,0],[0,0,0,0],[0.9,0,0,0.5]],"im":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#,
            "positive semidefinite",
        ),
        (
            r#"{"d_a":2,"d_b":2,"re":[[0.5,0.2,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0.5]],"im":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#,
            "Hermitian",
        ),
        (
            r#"{"d_a":2,"d_b":3,"re":[[1,0],[0,0]],"im":[[0,0],[0,0]]}"#,
            "dimension",
        ),
        ("not json", "invalid state file"),
    ];
    for (k, (body, needle)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("bad{k}.json"));
        fs::write(&path, body).unwrap();
        let o = corrsplit(&["measure", "--file", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1), "case {k}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(needle), "case {k}: {err}");
    }
    let o = corrsplit(&["measure", "--werner", "1.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("outside [0, 1]"));
}

#[test]
fn not_converged_exits_with_two_and_still_prints() {
    let o = corrsplit(&["measure", "--werner", "0.9", "--tol", "1e-14", "--max-iters", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(field(&stdout(&o), "ree") > 0.0);
}

#[test]
fn sweep_is_deterministic_and_re_derivable() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("plot.gp");
    let parallel = sweep(dir.path(), "a.csv", &["--plot", plot.to_str().unwrap()]);
    let serial = sweep(dir.path(), "b.csv", &["--threads", "1"]);
    let again = sweep(dir.path(), "c.csv", &["--threads", "3"]);
    assert_eq!(parallel, serial);
    assert_eq!(parallel, again);
    assert!(fs::read_to_string(plot).unwrap().contains("a.csv"));

    let lines: Vec<&str> = parallel.lines().collect();
    assert_eq!(lines[0], corrsplit::sweep::CSV_HEADER);
    assert_eq!(lines.len(), 102);
    assert!(!parallel.contains('\r') && parallel.ends_with('\n'));
    assert_eq!(
        lines[101],
        "1.000000,2.000000,1.000000,1.000000,1.000000,1.000000,1.000000,0.000000,0.000000"
    );

    let mut previous_gamma = -1.0;
    for line in &lines[1..] {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(v[0] > previous_gamma);
        previous_gamma = v[0];
        let report = stdout(&corrsplit(&["measure", "--werner", &v[0].to_string()]));
        let names = [
            "mutual_info",
            "ree",
            "psi",
            "chi_projective",
            "c1",
            "c2",
            "psi_minus_chi",
        ];
        for (name, expected) in names.iter().zip(&v[1..]) {
            assert!((field(&report, name) - expected).abs() <= 5e-5, "γ={}: {name}", v[0]);
        }
        assert!((v[3] - v[4] - v[7]).abs() <= 2e-6 && (v[3] - v[5] - v[8]).abs() <= 2e-6);
    }
}

#[test]
fn failed_sweep_leaves_no_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("rows.csv");
    let o = corrsplit(&["sweep", "--gamma-step", "0.25", "--out", out.to_str().unwrap()]);
    assert_ne!(o.status.code(), Some(0));
    assert!(!out.exists() && !dir.path().join("missing").exists());

    let bad = dir.path().join("bad.csv");
    let o = corrsplit(&[
        "sweep",
        "--gamma-min",
        "0.6",
        "--gamma-max",
        "0.3",
        "--out",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn partial_file_is_removed_when_rename_fails() {
    let dir = tempfile::tempdir().unwrap();
    // a directory at the target path makes the final rename fail
    let out = dir.path().join("rows.csv");
    fs::create_dir(&out).unwrap();
    fs::write(out.join("keep"), "x").unwrap();
    let o = corrsplit(&["sweep", "--gamma-step", "0.5", "--out", out.to_str().unwrap()]);
    assert_ne!(o.status.code(), Some(0));
    let names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert_eq!(names, vec!["rows.csv".to_string()]);
}

#[test]
fn selftest_passes_with_few_trials() {
    let o = corrsplit(&["selftest", "--trials", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 8);
    assert!(!text.contains("FAIL"));
}

#[cfg(feature = "fault-injection")]
#[test]
fn injected_fault_fails_selftest_by_name() {
    let o = corrsplit(&["selftest", "--trials", "3", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("psi_swap_symmetry"));
}
