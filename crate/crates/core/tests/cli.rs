use std::fs;
use std::process::{Command, Output};

fn flatvol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatvol")).args(args).output().expect("run flatvol")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn an_values() {
    let o = flatvol(&["an", "--weights", "2/3,1/3,1/3,1/3,1/3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "A_n = 1/9\nJ_n = 1\ne = 3\n");
    let o = flatvol(&["an", "--weights", "1/2,1/2,1/2,1/2"]);
    assert!(stdout(&o).starts_with("A_n = 1/2\n"));
    let o = flatvol(&["an", "--weights", "0,2/3,2/3,2/3"]);
    assert!(stdout(&o).starts_with("A_n = 0\n"));
}

#[test]
fn an_from_signature() {
    let o = flatvol(&["an", "--signature", "5,5,5,5,-8:6", "--neg-orders"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("A_n = 4/9\n"));
}

#[test]
fn approx_keeps_exact_field() {
    let o = flatvol(&["--approx", "an", "--weights", "2/3,1/3,1/3,1/3,1/3"]);
    let s = stdout(&o);
    assert!(s.starts_with("A_n = 1/9  (~ 1.111"), "{s}");
}

#[test]
fn validation_errors_exit_1() {
    let o = flatvol(&["an", "--weights", "1/2,1/2,1/2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("sum"), "{}", stderr(&o));
    let o = flatvol(&["an", "--weights", "3/2,1/4,1/4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not < 1"), "{}", stderr(&o));
    let o = flatvol(&["an", "--weights", "x,y"]);
    assert_eq!(o.status.code(), Some(1));
    let o = flatvol(&["table", "--n", "6"]);
    assert_eq!(o.status.code(), Some(1));
    let o = flatvol(&["check", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown suite"));
}

#[test]
fn table_n4_diff_passes() {
    let o = flatvol(&["table", "--appendix-b", "--n", "4", "--diff"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("col3: 15/15 match"));
    assert!(stderr(&o).contains("15/15 single-polygon rows match"));
}

#[test]
fn table_n5_col3_diff_passes() {
    let o = flatvol(&["table", "--appendix-b", "--n", "5", "--diff", "--col3-only"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("col3: 47/47 match"));
}

#[test]
fn table_n5_full_diff_reports_printed_mismatches() {
    let o = flatvol(&["table", "--appendix-b", "--n", "5", "--diff"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("43/45 single-polygon rows match"), "{e}");
    assert!(e.contains("4,4,4,3,-3"));
    assert!(e.contains("3,3,2,2,2"));
}

#[test]
fn table_csv_is_parseable() {
    let o = flatvol(&["table", "--appendix-b", "--n", "5", "--csv"]);
    assert!(o.status.success());
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(r.headers().unwrap(), vec!["d", "kappa", "col3", "ratio", "mv_volume"]);
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 47);
    let last = rows.iter().find(|x| &x[1] == "5,5,5,5,-8").unwrap();
    assert_eq!((&last[2], &last[3], &last[4]), ("4/9", "64/9", "64/729*pi^3"));
    assert!(rows.iter().any(|x| &x[3] == "unsupported" && &x[4] == "unsupported"));
    for x in &rows {
        flatvol::parse_rational(&x[2]).unwrap();
        if &x[3] != "unsupported" {
            flatvol::parse_rational(&x[3]).unwrap();
            flatvol::PiValue::parse(&x[4]).unwrap();
        }
    }
}

#[test]
fn table_json_matches_csv() {
    let o = flatvol(&["table", "--appendix-b", "--n", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 15);
    assert_eq!(rows[1]["kappa"], "2,2,1,1");
    assert_eq!(rows[1]["ratio"], "-16/9");
    assert_eq!(rows[1]["mv_volume"], "8/81*pi^2");
}

#[test]
fn volume_reports_ratio() {
    let o = flatvol(&["volume", "--signature", "2,2,1,1:3", "--neg-orders"]);
    assert_eq!(stdout(&o), "vol1 = -1/6*pi^2\nratio = -16/9\nmv_volume = 8/81*pi^2\n");
    let o = flatvol(&["volume", "--signature", "1,1,-1,-1,-1,-1,-1,-1:2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("ratio = unsupported"));
}

#[test]
fn cache_cold_warm_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("memo.json");
    let p = path.to_str().unwrap();
    let cold = flatvol(&["--cache", p, "--verbose", "table", "--appendix-b", "--n", "5"]);
    assert!(cold.status.success());
    assert!(path.exists());
    let warm = flatvol(&["--cache", p, "--verbose", "table", "--appendix-b", "--n", "5"]);
    assert_eq!(cold.stdout, warm.stdout);
    let hits = |o: &Output| -> u64 {
        let e = stderr(o);
        let line = e.lines().find(|l| l.starts_with("cache hits: ")).unwrap().to_string();
        line["cache hits: ".len()..].parse().unwrap()
    };
    assert!(hits(&warm) > hits(&cold));
    let plain = flatvol(&["table", "--appendix-b", "--n", "5"]);
    assert_eq!(plain.stdout, warm.stdout);
}

#[test]
fn corrupt_cache_warns_and_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("memo.json");
    fs::write(&path, "[broken").unwrap();
    let o = flatvol(&["--cache", path.to_str().unwrap(), "an", "--weights", "2/3,1/3,1/3,1/3,1/3"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"));
    assert!(stdout(&o).starts_with("A_n = 1/9\n"));
    // rewritten as a valid cache
    let text = fs::read_to_string(&path).unwrap();
    serde_json::from_str::<serde_json::Value>(&text).unwrap();
}

#[test]
fn check_suites_pass() {
    for args in [
        vec!["check", "--suite", "identity", "--max-n", "8"],
        vec!["check", "--suite", "dform", "--max-n", "7"],
        vec!["check", "--suite", "oracle5"],
        vec!["check", "--suite", "kontsevich", "--max-n", "8"],
        vec!["check", "--suite", "sympoly", "--max-n", "5"],
    ] {
        let o = flatvol(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).contains(": pass ("));
    }
}

#[test]
fn check_is_deterministic() {
    let a = flatvol(&["check", "--suite", "dform", "--seed", "11"]);
    let b = flatvol(&["check", "--suite", "dform", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn explain_lists_terms() {
    let o = flatvol(&["explain", "--weights", "5/6,5/6,5/6,5/6,-4/3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["a_n"], "4/9");
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 7);
    let total: flatvol::Rational =
        terms.iter().map(|t| flatvol::parse_rational(t["contribution"].as_str().unwrap()).unwrap()).sum();
    assert_eq!(total.to_string(), "4/9");
    assert!(terms[0]["partition"]["family"].is_string());
}

#[test]
fn piecewise_command() {
    let o = flatvol(&["piecewise", "--weights", "45/60,40/60,21/60,14/60", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree"], 1);
    let o = flatvol(&["piecewise", "--weights", "1/2,1/2,1/2,1/2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("wall"), "{}", stderr(&o));
}
