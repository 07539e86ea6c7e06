use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polylog")).args(args).env_remove("POLYLOG_BITS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_tmp(name: &str, text: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

/// Value lines of table output (comments dropped).
fn values(o: &Output) -> Vec<String> {
    stdout(o).lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect()
}

#[test]
fn monodromy_of_s1() {
    let o = run(&["monodromy", "--word", "s1"]);
    assert!(o.status.success());
    let v = values(&o);
    let row0: Vec<&str> = v[1].split_whitespace().collect();
    assert_eq!(row0[..3], ["0", "1", "-1"]);
    assert!(stdout(&o).starts_with("# precision: exact"));
}

#[test]
fn tame_of_t_t_at_zero() {
    let o = run(&["tame", "--f", "t", "--g", "t", "--at", "0"]);
    assert!(o.status.success());
    assert_eq!(values(&o), ["-1"]);
}

#[test]
fn d2_at_one_half() {
    let o = run(&["d2", "--x", "0.5"]);
    assert!(o.status.success());
    assert_eq!(values(&o), ["0"]);
    assert!(stdout(&o).contains("256 bits"));
}

#[test]
fn d2_at_i_is_catalan() {
    let o = run(&["d2", "--x", "i"]);
    assert!(values(&o)[0].starts_with("0.9159655941772190150546035149"));
}

#[test]
fn eval_on_real_axis() {
    // Li_2(-1) = -pi^2/12
    let o = run(&["eval", "--k", "2", "--x", "-1"]);
    assert!(values(&o)[0].starts_with("-0.8224670334241132182362075833"));
}

#[test]
fn eval_along_path_file() {
    let file = write_tmp("loop0.path", "# loop around 0\nbasepoint 0.5 0\narc 0 0 0.5 0 6.283185307179586476925286766559005768394\n");
    let principal = run(&["eval", "--k", "1", "--x", "0.5"]);
    let around = run(&["eval", "--k", "1", "--path", &file]);
    assert!(around.status.success(), "{}", String::from_utf8_lossy(&around.stderr));
    // Li_1 is unchanged by a loop around 0
    assert_eq!(values(&principal), values(&around));
}

#[test]
fn itint_and_steinberg_from_path_file() {
    let file = write_tmp("loop1.path", "basepoint 0.5 0\narc 1 0 0.5 3.141592653589793238462643383279502884197 9.424777960769379715387930149838508652592\n");
    let o = run(&["itint", "--forms", "w1", "--path", &file]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // integral of -dz/(z - 1) around 1 is -2 pi i
    assert!(values(&o)[0].starts_with("-6.283185307179586476925286766"), "{:?}", values(&o));
    let s = run(&["steinberg", "--path", &file]);
    assert!(s.status.success());
    let r: f64 = values(&s)[0].parse().unwrap();
    assert!(r < 1e-25);
}

#[test]
fn bloch_wedge_of_a_combo_file() {
    let file = write_tmp("combo.txt", "1 2\n1 -1\n");
    let o = run(&["bloch-wedge", "--combo", &file]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(values(&o).len(), 1);
}

#[test]
fn five_term_lists_arguments() {
    let o = run(&["five-term", "--x", "2", "--y", "3"]);
    assert!(o.status.success());
    let args: Vec<String> = values(&o)[1..].iter().map(|l| l.split_whitespace().nth(1).unwrap().to_string()).collect();
    assert_eq!(args, ["2", "3", "3/2", "2", "4/3"]);
    assert!(stdout(&o).contains("# D2 sum: 0"));
}

#[test]
fn volume_of_regular_tetrahedron() {
    let o = run(&["volume", "--points", "0,1,inf,0.5+0.8660254037844386467637231707529361834714i"]);
    assert!(o.status.success());
    assert!(values(&o)[0].starts_with("1.0149416064096536250212025542"));
}

#[test]
fn lie_check_table() {
    let o = run(&["lie-check", "--degree", "4", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "degree,lyndon,quotient,relations,rep_kills");
    assert_eq!(rows[4], "4,3,1,3,true");
}

#[test]
fn d2_grid_is_csv_by_default() {
    let o = run(&["d2-grid", "--re-range", "-1:1", "--im-range", "0:1", "--step", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "re,im,d2");
    assert_eq!(rows.len(), 1 + 6);
}

#[test]
fn json_lines_carry_precision() {
    let o = run(&["d3", "--x", "2", "--format", "json-lines"]);
    let line = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(v["precision"], "256 bits, tol 1e-30");
    assert!(v["d3"].is_string());
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_polylog"))
        .args(["d2", "--x", "2i", "--tol", "1e-20"])
        .env("POLYLOG_BITS", "320")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("320 bits"));
}

#[test]
fn output_is_deterministic() {
    let args = ["selftest", "--suite", "volume", "--seed", "9", "--scale", "0.05"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["tame", "--f", "t(", "--g", "t", "--at", "0"]).status.code(), Some(1));
    assert_eq!(run(&["d2", "--x", "abc"]).status.code(), Some(1));
    assert_eq!(run(&["limit-mhs", "--at", "2"]).status.code(), Some(1));
    assert_eq!(run(&["tame", "--f", "0", "--g", "t", "--at", "0"]).status.code(), Some(1));
    // the wedge check of the exact suite reports a failure
    let o = run(&["selftest", "--suite", "exact", "--scale", "0.02"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL"));
}
