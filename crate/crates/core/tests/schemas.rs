mod common;

use jsonschema::{Resource, Validator};
use serde_json::Value;

use common::{dyntaylor, schema_dir, workspace};

const BASE: &str = "https://dyntaylor.invalid/schemas/";

fn load(name: &str) -> Value {
    let path = schema_dir().join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn validator(name: &str) -> Validator {
    let mut opts = jsonschema::options();
    for dep in ["process_spec", "mc_config", "block_plan"] {
        opts = opts.with_resource(
            format!("{BASE}{dep}.schema.json"),
            Resource::from_contents(load(dep)).unwrap(),
        );
    }
    opts.build(&load(name)).unwrap()
}

fn assert_valid(name: &str, doc: &Value) {
    let v = validator(name);
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{doc}");
}

fn run_json(dir: &std::path::Path, args: &[&str]) -> Value {
    let out = dyntaylor(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn every_schema_is_a_valid_schema() {
    for entry in std::fs::read_dir(schema_dir()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().trim_end_matches(".schema.json").to_string();
        let schema = load(&name);
        assert!(jsonschema::meta::is_valid(&schema), "{name}");
        validator(&name);
    }
}

#[test]
fn cli_outputs_match_schemas() {
    let dir = workspace();
    let d = dir.path();
    std::fs::write(
        d.join("mc.json"),
        r#"{"spec":{"kind":"shifted_ma","shift":10.0,"coeffs":[1.0,0.5],"noise_sd":1.0},
            "n":3000,"beta":2.0,"replicates":100,"base_seed":3,"mode":"static","bandwidth":5}"#,
    )
    .unwrap();
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("blocks", vec!["blocks", "--input", "traj.csv"]),
        ("stats", vec!["stats", "--input", "traj.csv", "--beta", "1.5"]),
        ("lrv_estimate", vec!["lrv", "--input", "traj.csv", "--squares"]),
        ("lrv_estimate", vec!["lrv", "--input", "traj.csv"]),
        ("gof_test_result", vec!["test", "--input", "traj.csv"]),
        ("gof_test_result", vec!["test", "--input", "traj.csv", "--static"]),
        ("estimate_beta", vec!["estimate-beta", "--input", "traj.csv", "--statistic", "t", "--form", "unit-log"]),
        ("mc_report", vec!["mc", "--config", "mc.json"]),
        ("bias_rate_report", vec!["diag-variance", "--spec", "ar1.json", "--p-grid", "1,4,16", "--format", "json"]),
        (
            "moment_report",
            vec!["diag-variance", "--spec", "ar1.json", "--p-grid", "1,8", "--moments", "--replicates", "50", "--format", "json"],
        ),
        ("cumulant_checks", vec!["cumulant-check", "--input", "traj.csv", "--lags", "0,1,2", "--format", "json"]),
    ];
    for (schema, args) in cases {
        assert_valid(schema, &run_json(d, &args));
    }
}

#[test]
fn configs_validate_and_bad_ones_do_not() {
    let spec: Value = serde_json::from_str(common::AR1).unwrap();
    assert_valid("process_spec", &spec);
    let bad: Value = serde_json::from_str(r#"{"kind":"shifted_ar1","shift":10.0,"phi":1.5,"noise_sd":1.0}"#).unwrap();
    assert!(!validator("process_spec").is_valid(&bad));
    let cfg: Value = serde_json::from_str(
        r#"{"spec":{"kind":"iid_lognormal","mu":0.0,"s":0.5},"n":1000,"beta":2.0,"replicates":100,"base_seed":1}"#,
    )
    .unwrap();
    assert_valid("mc_config", &cfg);
    let mut zero = cfg.clone();
    zero["replicates"] = 0.into();
    assert!(!validator("mc_config").is_valid(&zero));
}
