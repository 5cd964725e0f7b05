use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use triplepoint::format::surface_from_json;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_triplepoint"))
}

fn here(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(rel)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn ok_json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn ok_quiet(out: &Output) {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
}

fn golden(name: &str, out: &Output) {
    assert_eq!(out.status.code(), Some(0));
    let expected = std::fs::read_to_string(here(&format!("golden/{name}"))).unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout), expected, "golden {name}");
}

#[test]
fn bounds_degree_seven() {
    let out = run(&["bounds", "--degree", "7"]);
    golden("bounds_degree_7.json", &out);
    let v = ok_json(&out);
    assert_eq!(
        (&v["polar"], &v["miyaoka"], &v["spectrum"], &v["combined"]),
        (&Value::from(21), &Value::from(18), &Value::from(17), &Value::from(17))
    );
}

#[test]
fn bounds_table_combined_row() {
    let out = run(&["bounds", "--table", "3..12"]);
    golden("bounds_table.json", &out);
    let v = ok_json(&out);
    let row: Vec<u64> = v["combined"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(row, [1, 1, 5, 10, 17, 29, 42, 60, 81, 107]);
}

#[test]
fn spectrum_of_e6_tilde() {
    let out = run(&["spectrum", "--exponents", "3,3,3"]);
    golden("spectrum_e6.json", &out);
    assert_eq!(ok_json(&out)["text"], "1:1, 4/3:3, 5/3:3, 2:1");
}

#[test]
fn invariants_and_classification() {
    let v = ok_json(&run(&["invariants", "--degree", "7", "--nu", "16"]));
    assert_eq!((v["c1_squared"].as_i64(), v["c2"].as_i64(), v["chi"].as_i64()), (Some(15), Some(45), Some(5)));
    assert_eq!(v["noether"], true);
    let v = ok_json(&run(&["classify-sextic", "--nu", "10", "--pg", "0"]));
    assert!(v["minimal_model"].as_str().is_some());
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn construct_is_byte_stable() {
    golden("sextic_ten.json", &run(&["construct", "--family", "sextic-ten-gf31"]));
}

#[test]
fn construct_certify_pipeline() {
    let surface = run(&["construct", "--family", "sextic-ten-gf31"]);
    let out = run_stdin(&["certify", "--hilbert"], &surface.stdout);
    golden("sextic_ten_report.json", &out);
    let v = ok_json(&out);
    assert_eq!(v["verdict"], "certified-exact");
    assert_eq!(v["scheme_degree"], 80);
    assert_eq!(v["points"].as_array().unwrap().len(), 10);
}

#[test]
fn every_family_round_trips() {
    let dir = std::env::temp_dir().join(format!("triplepoint-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for family in [
        "quintic-nu",
        "k3-444",
        "k3-246",
        "k3-228",
        "ell-222",
        "ell-224",
        "sextic-ten-gf31",
        "septic-s4",
    ] {
        let path = dir.join(format!("{family}.json"));
        let p = path.to_str().unwrap();
        ok_quiet(&run(&["construct", "--family", family, "-o", p]));
        let report = ok_json(&run(&["certify", p]));
        assert_ne!(report["verdict"], "failed", "{family}");
        let tangent = ok_json(&run(&["tangent-dim", p]));
        assert!(tangent["dimension"].as_u64().unwrap() >= 15, "{family}");
        let image = ok_json(&run(&["cremona", p]));
        assert!(image["degree"].as_u64().unwrap() > 0, "{family}");
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn cremona_applied_twice() {
    let dir = std::env::temp_dir().join(format!("triplepoint-cremona-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    ok_quiet(&run(&["construct", "--family", "k3-246", "-o", a.to_str().unwrap()]));
    ok_quiet(&run(&["cremona", a.to_str().unwrap(), "-o", b.to_str().unwrap()]));
    let twice = run(&["cremona", b.to_str().unwrap()]);
    assert_eq!(twice.status.code(), Some(0));
    let twice = surface_from_json(&String::from_utf8(twice.stdout).unwrap()).unwrap();
    let orig = surface_from_json(&std::fs::read_to_string(&a).unwrap()).unwrap();
    // the four vertices are triple points, so the degree is preserved
    assert_eq!(twice.degree(), 6);
    let field = orig.field();
    let (m, c) = orig.poly().leading_term().unwrap();
    let ratio = field.div(&twice.poly().coefficient(m), c).unwrap();
    assert!(!field.is_zero(&ratio));
    assert_eq!(twice.poly(), &orig.poly().scale(&ratio));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn tangent_dimension_of_ten_point_sextic() {
    let out = run(&["tangent-dim", here("golden/sextic_ten.json").to_str().unwrap()]);
    assert_eq!(ok_json(&out)["dimension"], 18);
}

#[test]
fn linear_system_of_quintics() {
    let pts = here("fixtures/five_points.json");
    let v = ok_json(&run(&[
        "linear-system",
        "--field",
        "QQ",
        "--degree",
        "5",
        "--points",
        pts.to_str().unwrap(),
    ]));
    assert_eq!(v["conditions"], 50);
    assert_eq!(v["dimension"], 6);
    let v = ok_json(&run(&[
        "linear-system",
        "--field",
        "GF:31",
        "--degree",
        "2",
        "--multiplicity",
        "1",
        "--points",
        pts.to_str().unwrap(),
    ]));
    assert_eq!(v["dimension"], 5);
}

#[test]
fn steiner_of_diagonal_net() {
    let f = here("fixtures/diagonal_net.txt");
    let v = ok_json(&run(&["steiner", "--field", "QQ", "--polys", f.to_str().unwrap()]));
    assert_eq!(v["minors"], serde_json::json!(["8*x*y*z", "0", "0", "0"]));
}

#[test]
fn dianode_of_a_product_vanishes() {
    let f = here("fixtures/product_quartic.txt");
    let v = ok_json(&run(&["dianode", "--field", "GF:31", "--polys", f.to_str().unwrap()]));
    assert_eq!(v["polynomial"], "0");
    assert_eq!(v["degree"], Value::Null);
}

#[test]
fn domain_errors_exit_one_with_json() {
    let out = run(&["construct", "--family", "septic-s4", "--params", "mu=1,nu=1"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "family");
    assert_eq!(v["schema_version"], 1);

    let out = run(&["construct", "--family", "sextic-ten-gf31", "--field", "GF:29"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run_stdin(&["certify"], b"{ not json");
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "format");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bounds"][..],
        &["bounds", "--degree", "7", "--bogus"],
        &["no-such-command"],
        &["spectrum"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = run(&["bounds", "--degree", "7", "--bogus"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--bogus"));
}

#[test]
fn thread_cap_does_not_change_output() {
    let surface = here("golden/sextic_ten.json");
    let a = bin()
        .args(["certify", surface.to_str().unwrap()])
        .env("TRIPLEPOINT_THREADS", "1")
        .output()
        .unwrap();
    let b = bin()
        .args(["certify", surface.to_str().unwrap()])
        .env("TRIPLEPOINT_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let bad = bin().args(["bounds", "--degree", "5"]).env("TRIPLEPOINT_THREADS", "many").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
