use std::path::{Path, PathBuf};
use std::process::Command;

use morikit::cli::{
    parse_rational, run_json, run_with, EXIT_INCOMPLETE, EXIT_INVALID, EXIT_IO, EXIT_OK, EXIT_USAGE,
};
use serde_json::Value;

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/hilbert_n2_deg2.json")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["morikit"];
    argv.extend_from_slice(args);
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn run_fixture(args: &[&str]) -> (i32, Value) {
    let f = fixture();
    let mut a = args.to_vec();
    a.extend_from_slice(&["-c", f.to_str().unwrap(), "--deterministic"]);
    let (code, out, err) = run(&a);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

fn write_config(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn build_reports_constants() {
    let (code, v) = run_fixture(&["build"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["schema"], "morikit/1");
    assert_eq!(
        (v["n"].as_i64(), v["v_sq"].as_i64(), v["delta_sq"].as_i64()),
        (Some(2), Some(2), Some(-2))
    );
    assert!(v.get("generated_at").is_none());
}

#[test]
fn mori_rays_respect_the_length_bound() {
    let (code, v) = run_fixture(&["mori"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["complete"], true);
    let rays = v["rays"].as_array().unwrap();
    assert_eq!(rays.len(), 2);
    for r in rays {
        let q = parse_rational(r["q"].as_str().unwrap()).unwrap();
        assert!(q >= parse_rational("-5/2").unwrap());
        for key in ["coords", "q", "height", "lift"] {
            assert!(r.get(key).is_some());
        }
    }
}

#[test]
fn check_matches_oracle() {
    let (code, v) = run_fixture(&["check", "--coeff-bound", "8"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["oracle_match"], true);
    assert!(v["compared"].as_u64().unwrap() > 0);
}

#[test]
fn nef_and_movable() {
    let (_, nef) = run_fixture(&["nef"]);
    assert_eq!(nef["cone"]["rays"], serde_json::json!([[1, 0], [3, -2]]));
    let (_, mov) = run_fixture(&["movable"]);
    let chambers = mov["chambers"].as_array().unwrap();
    assert_eq!(chambers.len(), 2);
    assert_eq!(
        chambers.iter().filter(|c| c["contains_h"] == true).count(),
        1
    );
    assert_eq!(chambers[0]["cone"], nef["cone"]);
}

#[test]
fn slice_and_k3cone() {
    let (code, s) = run_fixture(&["slice"]);
    assert_eq!(code, EXIT_OK);
    assert!(s.get("mori").is_some() && s.get("nef").is_some());
    let (code, k) = run_fixture(&["k3cone"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(k["rays"], serde_json::json!([[1]]));
}

#[test]
fn rationals_are_exact_strings() {
    let (_, v) = run_fixture(&["mori"]);
    fn walk(v: &Value, found: &mut usize) {
        match v {
            Value::String(s)
                if s.split_once('/')
                    .is_some_and(|(p, _)| p.parse::<i64>().is_ok()) =>
            {
                let (p, q) = s.split_once('/').unwrap();
                let (p, q): (i64, i64) = (p.parse().unwrap(), q.parse().unwrap());
                assert!(q > 0);
                assert_eq!(num_integer::gcd(p, q), 1, "{s} not in lowest terms");
                let r = parse_rational(s).unwrap();
                assert_eq!(format!("{}/{}", r.numer(), r.denom()), *s);
                *found += 1;
            }
            Value::Array(a) => a.iter().for_each(|x| walk(x, found)),
            Value::Object(o) => o.values().for_each(|x| walk(x, found)),
            Value::Number(n) => assert!(n.is_i64() || n.is_u64()),
            _ => {}
        }
    }
    let mut found = 0;
    walk(&v, &mut found);
    assert!(found > 0);
}

#[test]
fn build_round_trips_through_raw() {
    let (_, built) = run_fixture(&["build"]);
    let raw = serde_json::json!({ "model": built["model"].clone() });
    let again: Value =
        serde_json::from_str(&run_json("build", &raw.to_string(), true).unwrap()).unwrap();
    for key in ["n", "v_sq", "h2", "model"] {
        assert_eq!(again[key], built[key], "{key}");
    }
    let mori_k3: Value = serde_json::from_str(
        &run_json("mori", &std::fs::read_to_string(fixture()).unwrap(), true).unwrap(),
    )
    .unwrap();
    let mut raw_cfg = raw.clone();
    raw_cfg["budget"] = serde_json::json!({"height_bound": "30/1"});
    let mori_raw: Value =
        serde_json::from_str(&run_json("mori", &raw_cfg.to_string(), true).unwrap()).unwrap();
    assert_eq!(mori_raw["rays"], mori_k3["rays"]);
}

#[test]
fn deterministic_output_is_byte_identical() {
    let f = fixture();
    let args = ["movable", "-c", f.to_str().unwrap(), "--deterministic"];
    assert_eq!(run(&args), run(&args));
    let (_, with_time, _) = run(&["build", "-c", f.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&with_time).unwrap();
    assert!(v["generated_at"].is_string());
}

#[test]
fn tsv_output_is_flat() {
    let f = fixture();
    let (code, out, _) = run(&[
        "mori",
        "-c",
        f.to_str().unwrap(),
        "--deterministic",
        "--format",
        "tsv",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().all(|l| l.split('\t').count() == 2));
    assert!(out.lines().any(|l| l == "rays.0.q\t-1/2"));
}

#[test]
fn validation_errors_list_field_paths() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_config(
        &dir,
        "bad.json",
        r#"{"model":{"k3":{"gram":[[2]],"n":2}},"budget":{"height_bound":"-1/2"}}"#,
    );
    let (code, out, err) = run(&["build", "-c", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(out.is_empty());
    let e: Value = serde_json::from_str(&err).unwrap();
    let paths: Vec<&str> = e["error"]["fields"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["path"].as_str().unwrap())
        .collect();
    assert!(paths.contains(&"model.k3.polarization"));
    assert!(paths.contains(&"budget.height_bound"));

    let both = write_config(
        &dir,
        "both.json",
        r#"{"model":{"k3":{"gram":[[2]],"polarization":[1],"n":2},"raw":{"gram":[[2]],"v":[1]}}}"#,
    );
    assert_eq!(
        run(&["build", "-c", both.to_str().unwrap()]).0,
        EXIT_INVALID
    );

    let non_primitive = write_config(
        &dir,
        "v.json",
        r#"{"model":{"raw":{"gram":[[0,0,-1],[0,2,0],[-1,0,0]],"v":[2,0,-2]}},"ample":[0,1,0]}"#,
    );
    assert_eq!(
        run(&["build", "-c", non_primitive.to_str().unwrap()]).0,
        EXIT_INVALID
    );
}

#[test]
fn usage_and_io_exit_codes() {
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["mori"]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
    let f = fixture();
    assert_eq!(
        run(&["mori", "-c", f.to_str().unwrap(), "--height-bound", "x"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        run(&["mori", "-c", "/nonexistent/config.json"]).0,
        EXIT_INVALID
    );

    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        "io.json",
        r#"{"model":{"k3":{"gram":[[2]],"polarization":[1],"n":2}},"ample":[-1,5,-1],"output":{"path":"/nonexistent/dir/out.json"}}"#,
    );
    assert_eq!(run(&["build", "-c", cfg.to_str().unwrap()]).0, EXIT_IO);

    let target = dir.path().join("out.json");
    let cfg = write_config(
        &dir,
        "ok.json",
        &format!(
            r#"{{"model":{{"k3":{{"gram":[[2]],"polarization":[1],"n":2}}}},"ample":[-1,5,-1],"output":{{"path":{}}}}}"#,
            serde_json::to_string(target.to_str().unwrap()).unwrap()
        ),
    );
    let (code, out, _) = run(&["build", "-c", cfg.to_str().unwrap(), "--deterministic"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, ""));
    assert!(std::fs::read_to_string(&target)
        .unwrap()
        .contains("morikit/1"));
}

#[test]
fn require_complete_flags_truncated_results() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        "r3.json",
        r#"{"model":{"k3":{"gram":[[2,0],[0,-2]],"polarization":[1,0],"n":2}},"ample":[-1,7,1,-1]}"#,
    );
    let c = cfg.to_str().unwrap();
    assert_eq!(run(&["mori", "-c", c, "--deterministic"]).0, EXIT_OK);
    assert_eq!(
        run(&["mori", "-c", c, "--deterministic", "--require-complete"]).0,
        EXIT_INCOMPLETE
    );
    let f = fixture();
    assert_eq!(
        run(&["mori", "-c", f.to_str().unwrap(), "--require-complete"]).0,
        EXIT_OK
    );
}

#[test]
fn binary_end_to_end() {
    let f = fixture();
    let out = Command::new(env!("CARGO_BIN_EXE_morikit"))
        .args(["build", "-c", f.to_str().unwrap(), "--deterministic"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["n"], 2);
    let bad = Command::new(env!("CARGO_BIN_EXE_morikit"))
        .arg("nonsense")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
