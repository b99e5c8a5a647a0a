use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torelli-lab"))
        .args(args)
        .env_remove("TORELLI_LAB_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn reports(out: &Output) -> Vec<Value> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON object per line"))
        .collect()
}

#[test]
fn verify_gf101_all_pass() {
    let out = run(&["verify", "--field", "GF(101)", "--genus", "2..6", "--trials", "10"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rs = reports(&out);
    assert_eq!(rs.len(), 50);
    for (i, r) in rs.iter().enumerate() {
        assert_eq!(r["pass"], true);
        assert_eq!(r["genus"], 2 + i as u64 / 10);
        assert_eq!(r["observed"]["cokernel_dim"], 0);
        for key in ["char", "field", "genus", "observed", "expected", "pass", "curve", "seed"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
    assert!(stderr(&out).contains("passed=50 failed=0"));
}

#[test]
fn verify_char2_has_cokernel() {
    let out = run(&["verify", "--field", "GF(2^4)", "--genus", "2..6", "--trials", "10"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rs = reports(&out);
    assert_eq!(rs.len(), 50);
    for r in &rs {
        let g = r["genus"].as_i64().unwrap();
        assert_eq!(r["pass"], true);
        assert_eq!(r["observed"]["cokernel_dim"].as_i64(), Some(g - 2));
        assert_eq!(r["observed"]["combined_rank"].as_i64(), Some(2 * g - 1));
    }
}

#[test]
fn verify_output_is_deterministic() {
    let args = ["verify", "--field", "GF(3^4)", "--genus", "2..5", "--trials", "4", "--seed", "77"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_torelli-lab"))
        .args(args)
        .env("TORELLI_LAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "--field", "GF(3^4)", "--genus", "2..5", "--trials", "4", "--seed", "78"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn verify_rejects_small_field() {
    let out = run(&["verify", "--field", "GF(2)", "--genus", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("FieldTooSmall"));
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        vec!["verify", "--field", "GF(6)", "--genus", "2"],
        vec!["verify", "--field", "GF(7", "--genus", "2"],
        vec!["verify", "--field", "GF(7)", "--genus", "1"],
        vec!["verify", "--field", "GF(7)", "--genus", "4..2"],
        vec!["verify", "--field", "GF(7)", "--genus", "2", "--trials", "0"],
        vec!["report", "--curve", "char=7;f=x^4+1"],
        vec!["report", "--curve", "char=7;g=x^5+1"],
        vec!["hirzebruch", "--genus", "0..3"],
        vec!["frobnicate"],
    ] {
        assert_eq!(code(&run(&args)), 2, "{args:?}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_torelli-lab"))
        .args(["hirzebruch", "--genus", "2"])
        .env("TORELLI_LAB_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn report_explicit_curves() {
    let out = run(&["report", "--curve", "char=7;f=x^5+3x+1"]);
    assert_eq!(code(&out), 0);
    let r = &reports(&out)[0];
    assert_eq!(r["genus"], 2);
    assert_eq!(r["char"], "7");

    let out = run(&["report", "--curve", "char=2^2;alpha0=1;terms=(0:1),(1:1)"]);
    assert_eq!(code(&out), 0);
    assert_eq!(reports(&out)[0]["field"], "GF(2^2)");
}

#[test]
fn normal_form_worked_example() {
    let out = run(&["normal-form", "--field", "GF(2)", "--b", "x^2+x", "--c", "x^5+1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["f"], "x + 1/x + 1/(x+1)");
    assert_eq!(v["genus"], 2);
    assert_eq!(v["replay_ok"], true);
    assert_eq!(v["ramification"]["total"], 6);
}

#[test]
fn normal_form_error_codes() {
    let out = run(&["normal-form", "--field", "GF(2)", "--b", "x^2", "--c", "x^5+1"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("NonGenericB"));

    let out = run(&["normal-form", "--field", "GF(7)", "--b", "x^2+x", "--c", "x^5+1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("WrongCharacteristic"));

    let out = run(&["normal-form", "--field", "GF(2)", "--a", "0", "--b", "x^2+x", "--c", "x"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("DegenerateCurve"));
}

#[test]
fn normal_form_mobius_prestep() {
    // b = x(x+1)(x+t) over GF(4); sending x = t to infinity leaves a genus 2 model
    let out = run(&[
        "normal-form", "--field", "GF(2^2)", "--b", "x^3+(t+1)*x^2+t*x", "--c", "x^5+x+1",
        "--mobius-root", "t",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["genus"], 2);
    assert_eq!(v["replay_ok"], true);
    assert_eq!(v["f"], "(t+1)*x + 1/(x+t) + t/(x+(t+1))");

    // without the pre-step, infinity is not a branch point
    let out = run(&["normal-form", "--field", "GF(2^2)", "--b", "x^3+(t+1)*x^2+t*x", "--c", "x^5+x+1"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("DegenerateCurve"));
}

#[test]
fn hirzebruch_table_and_json() {
    let out = run(&["hirzebruch", "--genus", "2..4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().nth(1).unwrap().contains("2E + 6F"));
    assert!(text.lines().nth(2).unwrap().contains("2E + 8F"));

    let out = run(&["hirzebruch", "--genus", "2..10", "--format", "json"]);
    for (i, r) in reports(&out).iter().enumerate() {
        let g = 2 + i as i64;
        assert_eq!(r["proj_dim"].as_i64(), Some(3 * g + 5));
        assert_eq!(r["hg_dim"].as_i64(), Some(2 * g - 1));
        assert_eq!(r["aut_dim"].as_i64(), Some(g + 6));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    // a repeated root in b is always rejected with exit 1
    #[test]
    fn repeated_root_fixtures_exit_1(r in 0u32..4, extra in 0u32..4) {
        let b = format!("(x+{})^2*(x+{})", elem(r), elem(extra));
        let out = run(&["normal-form", "--field", "GF(2^2)", "--b", &b, "--c", "x^7+1"]);
        prop_assert_eq!(code(&out), 1);
        prop_assert!(stderr(&out).contains("NonGenericB"));
    }

    // odd characteristic is always invalid input for normal-form
    #[test]
    fn odd_characteristic_fixtures_exit_2(p in prop::sample::select(vec![3u64, 5, 7, 11, 13])) {
        let field = format!("GF({p})");
        let out = run(&["normal-form", "--field", &field, "--b", "x^2+x", "--c", "x^5+1"]);
        prop_assert_eq!(code(&out), 2);
    }
}

fn elem(i: u32) -> &'static str {
    ["0", "1", "t", "t+1"][i as usize]
}
