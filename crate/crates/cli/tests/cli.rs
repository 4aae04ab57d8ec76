use std::process::Command;

use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_polyfree")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    (code, serde_json::from_str(&text).unwrap())
}

#[test]
fn centralizer_of_mccool_top_layer() {
    let (code, v) = run_json(&["centralizer", "--algebra", "mccool", "--n", "3", "--max-weight", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["weights"][0]["basis"], json!(["B[1,2]", "B[1,3]", "B[2,3]"]));
    assert_eq!(v["weights"][0]["lattice"], json!([[1, 1, 0]]));
    assert_eq!(v["weights"][1]["lattice"], json!([]));
    assert_eq!(v["weights"][2]["lattice"], json!([]));
}

#[test]
fn arrangement_partition_report() {
    let (code, v) = run_json(&["arr-partition", "--r", "2", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(
        v,
        json!({"schema_version": 1, "total": 10, "is_partition": true,
               "sizes": {"H_1": 3, "H_2": 3, "H_{1,2}^{(1)}": 2, "H_{1,2}^{(2)}": 2}})
    );
}

#[test]
fn poison_report() {
    let (code, v) = run_json(&["poison-check"]);
    assert_eq!(code, 0);
    assert_eq!(
        v,
        json!({"schema_version": 1, "kernel_witness": "a1", "alpha": [0, 0, 0], "p": "", "is_identity": false, "center_rank": 1})
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["adkernel", "--algebra", "monomial", "--r", "2", "--n", "3"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["map-verify", "--map", "poison-j", "--require-injective"]).0, 1);
    assert_eq!(run(&["map-verify", "--map", "poison-pxa", "--max-weight", "4", "--require-injective"]).0, 0);
    assert_eq!(run(&["slf-check", "--counterexample"]).0, 0);
    assert_eq!(run(&["centralizer", "--algebra", "mccool"]).0, 2);
    assert_eq!(run(&["center", "--algebra", "dk", "--n", "3", "--format", "csv"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["bracket", "--algebra", "dk", "--n", "3", "--x", "B[1,9]", "--y", "B[1,2]"]).0, 2);
}

#[test]
fn every_verification_passes() {
    let cases: &[&[&str]] = &[
        &["center", "--algebra", "dk", "--n", "4"],
        &["adkernel", "--algebra", "mccool", "--n", "4"],
        &["jacobi", "--algebra", "surface", "--labels", "3", "--n", "3", "--max-weight", "4"],
        &["map-verify", "--map", "induced", "--r", "2", "--n", "2", "--require-injective"],
        &["map-verify", "--map", "identity", "--algebra", "poison"],
        &["pullback-compare", "--r", "2", "--n", "2"],
        &["arr-images", "--r", "3", "--n", "2"],
        &["slf-check", "--r", "3", "--n", "3"],
        &["mccool-relations", "--n", "5"],
    ];
    for args in cases {
        let (code, v) = run_json(args);
        assert_eq!(code, 0, "{args:?}: {v}");
        assert_eq!(v["schema_version"], 1);
    }
}

#[test]
fn dimension_table_as_csv() {
    let (code, text) = run(&["dims", "--algebra", "monomial", "--r", "2", "--n", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(text, "weight,total,layer_0,layer_1\n1,4,1,3\n2,3,0,3\n3,8,0,8\n");
}

#[test]
fn bracket_command() {
    let (code, v) = run_json(&["bracket", "--algebra", "mccool", "--n", "3", "--x", "B[1,2]", "--y", "B[2,3]"]);
    assert_eq!(code, 0);
    assert_eq!(v["terms"], json!([["-1", "[B[1,3],B[2,3]]"]]));
}

#[test]
fn report_written_to_file() {
    let path = std::env::temp_dir().join(format!("polyfree-basis-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, text) = run(&["basis", "--algebra", "poison", "--max-weight", "2", "--out", p]);
    assert_eq!(code, 0);
    assert!(text.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["weights"][1]["basis"], json!(["[phi1,phi2]"]));
    std::fs::remove_file(path).unwrap();
}
