use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn qwigner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwigner")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qwigner-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn example_list_names_catalog() {
    let o = qwigner(&["example", "list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for name in ["pauli3", "pauli2", "heart", "dual-counterexample", "nearly-commuting", "block-2+2"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name} missing");
    }
}

#[test]
fn dump_round_trips_through_validate() {
    let path = scratch("pauli2.json");
    let o = qwigner(&["example", "dump", "pauli2"]);
    assert!(o.status.success());
    fs::write(&path, o.stdout).unwrap();
    let v = qwigner(&["validate", "--input", path.to_str().unwrap()]);
    assert!(v.status.success());
    let text = stdout(&v);
    assert!(text.contains("n\t2") && text.contains("d\t2") && text.contains("commuting\tfalse"));
}

#[test]
fn wigner_writes_grid_and_image() {
    let json = scratch("w-input.json");
    fs::write(&json, qwigner(&["example", "dump", "pauli2"]).stdout).unwrap();
    let (csv, pgm) = (scratch("w.csv"), scratch("w.pgm"));
    let o = qwigner(&[
        "wigner", "--input", json.to_str().unwrap(), "--epsilon", "0.01", "--box", "-2", "2", "--samples", "64",
        "--out", csv.to_str().unwrap(), "--image", pgm.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("# n=2 lo=-2e0,-2e0 hi=2e0,2e0 N=64,64 epsilon=1e-2"));
    assert_eq!(text.lines().count(), 1 + 64 * 64);
    let image = fs::read(&pgm).unwrap();
    assert!(image.starts_with(b"P5\n64 64\n255\n"));
    let meta = fs::read_to_string(pgm.with_extension("pgm.meta")).unwrap();
    assert!(meta.contains("min=") && meta.contains("max="));
    let mass: f64 = stdout(&o).lines().find_map(|l| l.strip_prefix("mass\t")).unwrap().parse().unwrap();
    assert!((mass - 1.0).abs() < 1e-6);
}

#[test]
fn identical_runs_give_identical_csv() {
    let a = qwigner(&["sing", "--example", "nearly-commuting", "--resolution", "50"]);
    let b = qwigner(&["sing", "--example", "nearly-commuting", "--resolution", "50"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sing_reports_polynomial_residual() {
    let out = scratch("s.csv");
    let o = qwigner(&[
        "sing", "--example", "dual-counterexample", "--resolution", "200", "--residual", "gpoly", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("max_residual") && text.ends_with("PASS\n"));
    assert!(fs::read_to_string(&out).unwrap().starts_with("u1,u2,u3,branch,a1,a2,a3,gap\n"));
}

#[test]
fn check_suite_passes_for_pauli3() {
    let o = qwigner(&["check", "all", "--example", "pauli3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("check\tvalue\tthreshold\tstatus\n"));
    assert!(text.ends_with("PASS\n"));
}

#[test]
fn failed_check_exits_one() {
    let o = qwigner(&["infocomp", "--example", "pauli3", "--expect", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("FAIL\n"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qwigner(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qwigner(&["validate"]).status.code(), Some(2));
    assert_eq!(qwigner(&["validate", "--example", "no-such-thing"]).status.code(), Some(2));
    assert_eq!(qwigner(&["wigner", "--example", "pauli2", "--samples", "100"]).status.code(), Some(2));
}

#[test]
fn non_hermitian_input_is_rejected() {
    let path = scratch("bad.json");
    fs::write(&path, r#"{"n":1,"d":2,"operators":[[[[0,0],[1,0]],[[0,0],[0,0]]]]}"#).unwrap();
    let o = qwigner(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not Hermitian"));
}

#[test]
fn charfn_along_ray() {
    let o = qwigner(&["charfn", "--example", "pauli2", "--xi", "1", "-0.5", "--ray", "0", "1"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines[0], "t,re,im");
    assert_eq!(lines[1], "0e0,1e0,0e0");
    let re: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!((re - 1.25f64.sqrt().cos()).abs() < 1e-12);
}

#[test]
fn bmv_and_symmetry_pass() {
    assert!(qwigner(&["bmv", "--pairs", "10"]).status.success());
    assert!(qwigner(&["symmetry", "--p", "5", "--grid", "64"]).status.success());
}

#[test]
fn help_describes_each_subcommand() {
    let o = qwigner(&["--help"]);
    let text = stdout(&o);
    for sub in [
        "validate", "charfn", "wigner", "marginal", "jnr", "sing", "curves", "ellipses", "moments", "infocomp",
        "normal-complete", "bmv", "symmetry", "example", "check",
    ] {
        assert!(text.contains(sub), "{sub} missing from help");
        let h = qwigner(&[sub, "--help"]);
        assert!(h.status.success() && h.stdout.len() > 40);
    }
}
