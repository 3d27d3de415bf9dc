//! End-to-end tests of the command-line interface.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qharm"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qharm-test-{name}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_json(path: &PathBuf, v: &Value) {
    fs::write(path, serde_json::to_string_pretty(v).unwrap()).unwrap();
}

fn z1w1_plus_one() -> Value {
    json!({
        "n": 2,
        "order": "z-first",
        "terms": [
            {"z": [0, 0], "w": [0, 0], "coeff": "1"},
            {"z": [1, 0], "w": [1, 0], "coeff": "1"}
        ]
    })
}

#[test]
fn dim_prints_the_dimension() {
    let out = run(&["dim", "--n", "2", "--m", "1", "--mprime", "1"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "3");
    let out = run(&["dim", "--n", "3", "--m", "2", "--mprime", "1"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "15");
}

#[test]
fn zonal_worked_value() {
    let out = run(&["zonal", "--n", "2", "--m", "1", "--mprime", "1"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    // (z2 w2 - q^2 z1 w1)/(1+q^2)
    assert_eq!(terms[0]["coeff"], "(1)/(v^4 + 1)");
    assert_eq!(terms[1]["coeff"], "(-v^4)/(v^4 + 1)");
}

#[test]
fn polynomial_round_trip_through_laplace() {
    let dir = tmpdir("roundtrip");
    let input = dir.join("p.json");
    write_json(&input, &z1w1_plus_one());
    let out = run(&["laplace", "--n", "2", "--in", input.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    // Δq(1 + z1 w1) = 1 (constant), and the emitted JSON re-parses
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
    assert_eq!(v["terms"][0]["coeff"], "1");
    let text1 = out.stdout.clone();
    let out2 = run(&["laplace", "--n", "2", "--in", input.to_str().unwrap()]);
    assert_eq!(text1, out2.stdout, "byte-for-byte determinism");
}

#[test]
fn project_and_restrict() {
    let dir = tmpdir("project");
    let input = dir.join("p.json");
    write_json(
        &input,
        &json!({
            "n": 2,
            "order": "z-first",
            "terms": [{"z": [1, 0], "w": [1, 0], "coeff": "1"}]
        }),
    );
    let out = run(&[
        "project", "--n", "2", "--m", "1", "--mprime", "1",
        "--in", input.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    // (q^2 z1 w1 - z2 w2)/(1+q^2): two terms
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);

    let out = run(&["restrict", "--n", "2", "--in", input.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    // harmonic part plus the constant 1/(1+q^2)
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn inner_product_value() {
    let dir = tmpdir("inner");
    let input = dir.join("z1.json");
    write_json(
        &input,
        &json!({
            "n": 2,
            "order": "z-first",
            "terms": [{"z": [1, 0], "w": [0, 0], "coeff": "1"}]
        }),
    );
    let out = run(&[
        "inner", "--n", "2",
        "--in1", input.to_str().unwrap(),
        "--in2", input.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "(1)/(v^4 + 1)");
}

#[test]
fn verify_suite_exit_codes() {
    let out = run(&["verify", "--suite", "laplace", "--n", "2", "--max-degree", "2"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().len() > 4);
    // unknown suite -> input error
    let out = run(&["verify", "--suite", "bogus", "--n", "2", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // size guard -> input error
    let out = run(&["verify", "--suite", "laplace", "--n", "9", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_json_is_an_input_error() {
    let dir = tmpdir("badjson");
    let input = dir.join("bad.json");
    fs::write(&input, "{ not json").unwrap();
    let out = run(&["laplace", "--n", "2", "--in", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("line"), "diagnostic carries a position: {msg}");

    // wrong exponent-vector length
    let input2 = dir.join("short.json");
    write_json(
        &input2,
        &json!({"n": 2, "order": "z-first",
                "terms": [{"z": [1], "w": [0, 0], "coeff": "1"}]}),
    );
    let out = run(&["laplace", "--n", "2", "--in", input2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_commutes_with_projection() {
    // eval(project(p)) agrees with projecting the rational-coefficient
    // embedding of eval(p) and then evaluating: specialization is a ring
    // homomorphism, so the two routes must give identical rationals.
    use qharmonics::algebra::NCPoly;
    use qharmonics::harmonics::project;
    use num_rational::BigRational;
    use std::str::FromStr;

    let dir = tmpdir("eval");
    let input = dir.join("p.json");
    let poly_json = json!({
        "n": 2,
        "order": "z-first",
        "terms": [
            {"z": [1, 0], "w": [1, 0], "coeff": "q^2 - 1"},
            {"z": [0, 1], "w": [0, 1], "coeff": "3"}
        ]
    });
    write_json(&input, &poly_json);
    let q0 = BigRational::from_str("7/10").unwrap();

    // route 1: project symbolically, evaluate through the CLI
    let projected = run(&[
        "project", "--n", "2", "--m", "1", "--mprime", "1",
        "--in", input.to_str().unwrap(),
        "--out", dir.join("proj.json").to_str().unwrap(),
    ]);
    assert!(projected.status.success());
    let out = run(&[
        "eval", "--q0", "7/10",
        "--in", dir.join("proj.json").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let route1: Value = serde_json::from_slice(&out.stdout).unwrap();

    // route 2: evaluate first, embed the rationals back, project, evaluate
    let p = NCPoly::from_json(&poly_json).unwrap();
    let evaluated = p.eval_coeffs_q(&q0).unwrap();
    let mut embedded = NCPoly::zero(2, qharmonics::algebra::Order::ZFirst);
    for (mono, c) in evaluated {
        embedded.add_term(mono, qharmonics::scalar::ScalarQ::from_big_rational(&c));
    }
    let reprojected = project(&embedded, 1, 1).unwrap();
    for (mono, c) in reprojected.terms() {
        let val = c.eval_q(&q0).unwrap();
        let entry = route1["terms"]
            .as_array()
            .unwrap()
            .iter()
            .find(|t| {
                t["z"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as u32).collect::<Vec<_>>() == mono.z
                    && t["w"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as u32).collect::<Vec<_>>() == mono.w
            })
            .expect("term present in both routes");
        assert_eq!(entry["coeff"].as_str().unwrap(), val.to_string());
    }
}

#[test]
fn basis_and_gram_exports() {
    let out = run(&["basis", "--n", "2", "--m", "1", "--mprime", "1"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    for item in v.as_array().unwrap() {
        assert!(item["label"].is_object());
        assert!(item["poly"]["terms"].is_array());
        assert!(item["norm2"].is_string());
    }

    let out = run(&[
        "gram", "--n", "2", "--m", "1", "--mprime", "0", "--q0", "7/10",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["gram"].as_array().unwrap().len(), 2);
    assert!(v["gram_num"].is_array());
}

#[test]
fn split_project_worked_example() {
    let dir = tmpdir("split");
    let one = dir.join("one.json");
    write_json(
        &one,
        &json!({"n": 2, "order": "z-first",
                "terms": [{"z": [0, 0], "w": [0, 0], "coeff": "1"}]}),
    );
    let out = run(&[
        "split-project", "--n", "2", "--p", "1",
        "--r", "0", "--rprime", "0", "--s", "0", "--sprime", "0", "--u", "1",
        "--ht", one.to_str().unwrap(), "--hy", one.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    // (q^2 z1 w1 - z2 w2)/(1 + q^2)
    assert_eq!(v["terms"][0]["coeff"], "(-1)/(v^4 + 1)");
    assert_eq!(v["terms"][1]["coeff"], "(v^4)/(v^4 + 1)");
}
