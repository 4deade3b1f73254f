use std::path::PathBuf;
use std::process::{Command, Output};

fn mult(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mult"))
        .args(args)
        .env_remove("MULT_FIXTURE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Compares stdout with `tests/golden/<name>.txt`. Set `UPDATE_GOLDEN=1` to rewrite.
fn golden(name: &str, args: &[&str]) {
    let out = mult(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"));
    let got = stdout(&out);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(got, want, "{name}");
}

#[test]
fn golden_outputs() {
    golden("expand_zero", &["expand", "--expr", "0", "--n", "3"]);
    golden("expand_even", &["expand", "--expr", "t^2/(1-t^2)^2", "--n", "6"]);
    golden("expand_binomial", &["expand", "--expr", "1/(1-t)^3", "--n", "4"]);
    golden("fit_jst_c2", &["fit", "--fixture", "jst_c2"]);
    golden("e_s4", &["e", "--fixture", "s4"]);
    golden("e_xy_r3", &["e", "--fixture", "xy_r3"]);
    golden("e_zero", &["e", "--fixture", "zero"]);
    golden("koszul_jst_c2", &["koszul", "--fixture", "jst_c2", "--s", "2"]);
    golden("limit_jst_c2", &["limit", "--fixture", "jst_c2", "--s", "2", "--n", "100,10000"]);
    golden("theta_a5_b2", &["theta", "--fixture", "theta_a5_b2"]);
    golden("serre_two", &["serre", "--fixture", "serre_two"]);
    golden("e_xy_r3_json", &["--json", "e", "--fixture", "xy_r3"]);
}

#[test]
fn expand_examples() {
    assert_eq!(stdout(&mult(&["expand", "--expr", "0", "--n", "3"])).trim(), "0 0 0 0");
    assert_eq!(stdout(&mult(&["expand", "--expr", "t^2/(1-t^2)^2", "--n", "6"])).trim(), "0 0 1 0 2 0 3");
}

#[test]
fn inline_series_matches_fixture() {
    let out = stdout(&mult(&["e", "--expr", "t^2/(1-t^2)^2", "--d", "2"]));
    assert!(out.contains("e^2 (delta/coefficient) = 1/2"), "{out}");
}

#[test]
fn tor_lists() {
    assert_eq!(stdout(&mult(&["theta", "--tor", "3,5,2"])).trim(), "theta = 0");
    assert_eq!(stdout(&mult(&["serre", "--tor", "3,5,2"])).trim(), "serre = 0");
}

#[test]
fn exit_codes() {
    assert_eq!(mult(&["expand", "--expr", "1/(1-t)", "--n", "2"]).status.code(), Some(0));

    let bad = mult(&["--bogus"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("--bogus"));

    let none = mult(&["fit"]);
    assert_eq!(none.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&none.stderr).starts_with("error:"));

    let low = mult(&["e", "--expr", "1/(1-t)", "--d", "2", "--s", "0"]);
    assert_eq!(low.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&low.stderr).contains("below the complexity"));

    assert_eq!(mult(&["expand", "--expr", "1/t", "--n", "2"]).status.code(), Some(1));
    assert_eq!(mult(&["e", "--fixture", "no_such_fixture"]).status.code(), Some(1));
}

#[test]
fn corpus_suite_passes() {
    for suite in ["corpus", "paper"] {
        let out = mult(&["verify", "--suite", suite]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        assert!(!text.contains("FAIL"), "{text}");
        assert!(text.lines().last().unwrap().starts_with("corpus: "));
    }
}

#[test]
fn property_suite_is_deterministic() {
    let args = ["verify", "--suite", "properties", "--seed", "1", "--cases", "25"];
    let a = mult(&args);
    let b = mult(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("properties: 10/10 passed\n"));
}

#[test]
fn empty_fixture_dir_is_vacuous() {
    let dir = std::env::temp_dir().join(format!("mult-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_mult"))
        .args(["verify", "--suite", "corpus"])
        .env("MULT_FIXTURE_DIR", &dir)
        .output()
        .unwrap();
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "corpus: 0/0 passed");
}

#[test]
fn json_output_parses() {
    let out = mult(&["--json", "e", "--fixture", "xy_r3"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["e_delta"], "3");
    assert_eq!(v["e_coeff"], "3");
    assert_eq!(v["cx"], 1);

    let out = mult(&["--json", "fit", "--expr", "1/(1-t)^2", "--d", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["d"], 2);
}

#[test]
fn fit_output_feeds_back_as_input() {
    let out = mult(&["--json", "fit", "--fixture", "jst_c3"]);
    let path = std::env::temp_dir().join(format!("mult-jst-{}.json", std::process::id()));
    std::fs::write(&path, &out.stdout).unwrap();
    let e = stdout(&mult(&["e", "--input", path.to_str().unwrap()]));
    std::fs::remove_file(&path).ok();
    assert_eq!(e, stdout(&mult(&["e", "--fixture", "jst_c3"])));
    assert!(e.contains("e^3 (delta/coefficient) = -1/-4"), "{e}");
}
