use std::path::PathBuf;
use std::process::{Command, Output};

use basechange::gl2_cuspidal::AdmissiblePair;
use basechange::iwahori_variety::{ExtendedQuotient, FinitenessCertificate};
use basechange::ktheory::KMorphism;
use basechange::tempered_gl1::TemperedDualGL1;
use serde_json::Value;

const TAME: &str = r#"{"q":3,"p":3,"e":2,"f":1,"galois":true,"cyclic":true}"#;
const PAIR: &str = r#"{"quad":{"q":3,"p":3,"e":2,"f":1,"galois":true,"cyclic":true},"xi":{"conductor":2,"index":0,"unitary":true},"flags":{"not_norm_factor":true,"level_one_norm_factor":false}}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_basechange"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&full)).unwrap();
    assert_eq!(v["schema_version"], 1);
    v
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

/// Compares with `tests/golden/<name>`; `BLESS=1` rewrites the file.
fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

#[test]
fn extquot_gl4_text() {
    let out = stdout(&["extquot", "--n", "4"]);
    let sym: Vec<String> = out
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().skip(1).collect::<Vec<_>>().join(" "))
        .collect();
    assert_eq!(sym, ["Sym^1", "Sym^1 x Sym^1", "Sym^2", "Sym^1 x Sym^2", "Sym^4"]);
    golden("extquot_4.txt", &out);
}

#[test]
fn extquot_json_round_trips() {
    let v = json(&["extquot", "--n", "5"]);
    assert_eq!(v["count"], 7);
    let q: ExtendedQuotient = serde_json::from_value(v["extended_quotient"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&q).unwrap(), v["extended_quotient"]);
    assert_eq!(stdout(&["extquot", "--n", "1"]).lines().count(), 2);
    golden("extquot_5.json", &stdout(&["extquot", "--n", "5", "--format", "json"]));
}

#[test]
fn psi_tables() {
    let v = json(&["psi", "--orders", "3", "--x", "2"]);
    assert_eq!(v["rows"][0]["psi"], "6");
    let v = json(&["psi", "--x", "7"]);
    assert_eq!(v["rows"][0]["psi"], "7");
    let v = json(&["psi", "--orders", "3,3", "--x", "2,5/2"]);
    assert_eq!(v["rows"][0]["psi"], "4");
    assert_eq!(v["rows"][1]["psi"], "11/2");

    // text and JSON carry the same numbers
    let text = stdout(&["psi", "--orders", "3,3", "--x", "2,5/2"]);
    for row in v["rows"].as_array().unwrap() {
        let line = format!(
            "{} {} {}",
            row["x"].as_str().unwrap(),
            row["psi"].as_str().unwrap(),
            row["phi"].as_str().unwrap()
        );
        assert!(
            text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>().join(" ") == line),
            "{line} missing from text output"
        );
    }
    golden("psi_3_3.json", &stdout(&["psi", "--orders", "3,3", "--x", "2,5/2", "--format", "json"]));
}

#[test]
fn psi_rejects_bad_filtrations() {
    assert_eq!(exit_code(&["psi", "--orders", "2,3", "--x", "1"]), 2);
    assert_eq!(exit_code(&["psi", "--orders", "3", "--x", "-1"]), 2);
    assert_eq!(exit_code(&["psi", "--x", "abc"]), 2);
    assert_eq!(exit_code(&["psi", "--bogus"]), 2);
}

#[test]
fn norm_levels() {
    let v = json(&["norm-level", "--extension", TAME, "--level", "4"]);
    assert_eq!(v["level_f"], 2);
    assert_eq!(exit_code(&["norm-level", "--extension", TAME, "--level", "3"]), 2);
}

#[test]
fn bc_gl1_tame() {
    let v = json(&["bc-gl1", "--extension", TAME, "-M", "2"]);
    assert_eq!(v["degree"], 1);
    let map: Vec<(u64, u64)> = v["conductor_map"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["from"].as_u64().unwrap(), e["to"].as_u64().unwrap()))
        .collect();
    assert_eq!(map, [(0, 0), (1, 2), (2, 4)]);
    let source: TemperedDualGL1 = serde_json::from_value(v["source"].clone()).unwrap();
    assert_eq!(source.circles().len(), 6);
    let k1: KMorphism = serde_json::from_value(v["k1"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&k1).unwrap(), v["k1"]);
    assert_eq!(k1.nonzero().count(), 6);
    golden("bc_gl1_tame.json", &stdout(&["bc-gl1", "--extension", TAME, "-M", "2", "--format", "json"]));
}

#[test]
fn bc_gl1_unramified_and_wild() {
    let unr = r#"{"q":3,"p":3,"e":1,"f":2,"galois":true,"cyclic":true}"#;
    let v = json(&["bc-gl1", "--extension", unr, "-M", "1"]);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["conductor_map"][1]["to"], 1);
    assert!(v["k1"]["sparse"].as_array().unwrap().iter().all(|e| e[2] == 2));

    let wild = r#"{"q":3,"p":3,"e":3,"f":1,"galois":true,"cyclic":false,"filtration_orders":[3,3]}"#;
    let out = run(&["bc-gl1", "--extension", wild, "-M", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported extension"));
}

#[test]
fn bc_gl1_large_target_lists_image_only() {
    let unr = r#"{"q":5,"p":5,"e":1,"f":3,"galois":true,"cyclic":true}"#;
    let v = json(&["bc-gl1", "--extension", unr, "-M", "2"]);
    assert_eq!(v["target_columns"], "image");
    let k0: KMorphism = serde_json::from_value(v["k0"].clone()).unwrap();
    assert_eq!(k0.rows().len(), k0.cols().len());
    assert!(k0.is_identity());
}

#[test]
fn bc_gl2_degree_three() {
    let l3 = r#"{"q":3,"p":3,"e":1,"f":3,"galois":true,"cyclic":true}"#;
    let v = json(&["bc-gl2", "--pair", PAIR, "--l", l3]);
    assert_eq!((v["degree"].as_u64(), v["conductor"].as_u64()), (Some(3), Some(2)));
    assert_eq!(v["k1"]["entries"], serde_json::json!([[3]]));
    assert_eq!(v["k0"]["entries"], serde_json::json!([[1]]));
    let target: AdmissiblePair = serde_json::from_value(v["target"].clone()).unwrap();
    assert_eq!(target.quad.ext.e(), 2);
    assert_eq!(serde_json::to_value(&target).unwrap(), v["target"]);
    golden("bc_gl2_l3.txt", &stdout(&["bc-gl2", "--pair", PAIR, "--l", l3]));
}

#[test]
fn bc_gl2_identity_and_errors() {
    let l1 = r#"{"q":3,"p":3,"e":1,"f":1,"galois":true,"cyclic":true}"#;
    let v = json(&["bc-gl2", "--pair", PAIR, "--l", l1]);
    assert_eq!(v["target"], v["source"]);
    assert_eq!(v["k1"]["entries"], serde_json::json!([[1]]));

    let l2 = r#"{"q":3,"p":3,"e":1,"f":2,"galois":true,"cyclic":true}"#;
    let out = run(&["bc-gl2", "--pair", PAIR, "--l", l2]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("EvenDegree"));

    let ram = r#"{"q":3,"p":3,"e":3,"f":1,"galois":false,"cyclic":false}"#;
    let out = run(&["bc-gl2", "--pair", PAIR, "--l", ram]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotUnramified"));
}

#[test]
fn inputs_from_files() {
    let dir = std::env::temp_dir().join(format!("basechange-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ext = dir.join("ext.json");
    std::fs::write(&ext, TAME).unwrap();
    let out_file = dir.join("out.json");
    stdout(&[
        "bc-gl1",
        "--extension",
        ext.to_str().unwrap(),
        "-M",
        "1",
        "--format",
        "json",
        "--output",
        out_file.to_str().unwrap(),
    ]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
    assert_eq!(v["command"], "bc-gl1");
    assert_eq!(exit_code(&["bc-gl1", "--extension", "/nonexistent.json", "-M", "1"]), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn kmap_from_json_and_sym() {
    let map = r#"{"source":[{"label":"a"},{"label":"b"}],"target":[{"label":"c"},{"label":"d"}],"matches":[{"source":0,"target":0,"degree":2},{"source":1,"target":0,"degree":2}]}"#;
    let v = json(&["kmap", "--map", map]);
    assert_eq!(v["k1"]["entries"], serde_json::json!([[2, 0], [2, 0]]));
    assert_eq!(v["k0"]["entries"], serde_json::json!([[1, 0], [1, 0]]));

    let v = json(&["kmap", "--sym", "4", "--degree", "3"]);
    assert_eq!(v["oracle_degree"], 3);
    assert_eq!(v["sym_oracle_degree"], 3);
    assert_eq!(v["k1"]["entries"], serde_json::json!([[3]]));
    assert_eq!(exit_code(&["kmap", "--sym", "2", "--degree", "3", "--samples", "5"]), 2);
    assert_eq!(exit_code(&["kmap"]), 2);
}

#[test]
fn finiteness_certificates() {
    let v = json(&["finiteness", "--r", "1", "--f", "2", "--window", "4"]);
    assert_eq!(v["generator_count"], 2);
    assert_eq!(v["verified"], true);
    let cert: FinitenessCertificate = serde_json::from_value(v["certificate"].clone()).unwrap();
    assert!(cert.verify());

    let v = json(&["finiteness", "--r", "2", "--f", "2", "--window", "4"]);
    assert_eq!(v["generator_count"], 4);

    let out = run(&["finiteness", "--r", "1", "--f", "3", "--window", "1"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--window 2"));
    assert_eq!(exit_code(&["finiteness", "--r", "4", "--f", "2"]), 2);
    golden("finiteness_1_2_4.txt", &stdout(&["finiteness", "--r", "1", "--f", "2", "--window", "4"]));
}
