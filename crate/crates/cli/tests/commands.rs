use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symcart")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).unwrap()
}

#[test]
fn table_check_passes_on_shipped_values() {
    assert!(stdout(&["table", "--check"]).contains("all rows agree"));
    let v = json(&["table", "exceptional", "--check"]);
    assert_eq!(v["mismatches"], serde_json::json!([]));
}

#[test]
fn classical_table_prints_formulas_and_members() {
    let text = stdout(&["table", "classical", "--bound", "5"]);
    assert!(text.contains("k_P=(2n-3)(n-1)"));
    assert!(text.contains("AII(5)"));
    let v = json(&["table", "classical", "--bound", "5"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["rows"].as_array().unwrap().len(), 23);
}

#[test]
fn exceptional_table_row() {
    let v = json(&["table", "exceptional"]);
    let row = v["rows"].as_array().unwrap().iter().find(|r| r["space"] == "EVIII").unwrap().clone();
    assert_eq!((row["d_p"].as_i64(), row["k_p"].as_i64()), (Some(57), Some(71)));
}

#[test]
fn kp_of_a_product() {
    let v = json(&["kp", "AI(11) x S(12)"]);
    assert_eq!(v["product"]["dim"], 77);
    assert_eq!(v["product"]["k_p"], 77 - 10);
    assert_eq!(v["factors"][0]["space"]["kp"], 55);
}

#[test]
fn homotopy_of_fii() {
    let text = stdout(&["homotopy", "FII", "--max-degree", "8"]);
    assert!(text.lines().any(|l| l.starts_with("pi_7  = Z ")), "{text}");
    let v = json(&["homotopy", "FII", "--max-degree", "8"]);
    assert_eq!(v["degrees"][6]["group"], "Z");
    assert_eq!(v["degrees"].as_array().unwrap().len(), 8);
}

#[test]
fn distinguish_blind_spot_and_neighbour() {
    assert!(stdout(&["distinguish", "CP(5)", "Gr(R,2,12)"]).contains("Indistinguishable(9)"));
    let v = json(&["distinguish", "CP(5)", "Gr(R,2,11)"]);
    assert_eq!(v["result"]["verdict"], "distinguishable");
    assert_eq!(v["result"]["degree"], 9);
}

#[test]
fn decompose_sphere() {
    let v = json(&["decompose", "S(12)"]);
    assert_eq!(v["decompositions"], serde_json::json!(["S(12)", "S(11)", "S(10)"]));
    let out = run(&["--max-candidates", "2", "decompose", "AI(11)"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn gate_items() {
    assert!(stdout(&["gate", "S(12)", "--codim", "1", "--delta", "1", "--focal-r", "0"]).contains("Item1"));
    let v = json(&["gate", "CI(11)", "--codim", "1"]);
    assert_eq!(v["report"]["verdict"]["item"], "item4");
    let v = json(&["gate", "E8", "--codim", "1"]);
    assert_eq!(v["report"]["verdict"]["item"], "not_applicable");
}

#[test]
fn tgeo_window() {
    let v = json(&["tgeo", "C", "3", "10", "--codim", "4", "--index", "3"]);
    assert_eq!(v["report"]["status"]["status"], "applicable");
    assert_eq!(v["report"]["min_meridian_codim"], 16);
    assert_eq!(v["report"]["cp"], "9/2");
    let v = json(&["tgeo", "C", "4", "8", "--codim", "4", "--index", "3"]);
    assert_eq!(v["report"]["status"]["status"], "precondition_failed");
}

#[test]
fn dump_roots_with_multiplicities() {
    let v = json(&["dump-roots", "B3", "--mult", "2,1,0"]);
    assert_eq!(v["roots"].as_array().unwrap().len(), 9);
    assert!(v["kp"]["kp"].as_u64().is_some());
}

#[test]
fn corollary_check_small_range() {
    let out = run(&["corollary1-check", "--max-dim", "40"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn data_dir_override() {
    let dir = std::env::temp_dir().join(format!("symcart-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("t.txt"), "@kind unstable\nFII | - | 7=Z_3\n").unwrap();
    let v = json(&["--data-dir", dir.to_str().unwrap(), "homotopy", "FII", "--max-degree", "7"]);
    assert_eq!(v["degrees"][6]["group"], "Z_3");
    assert_eq!(v["degrees"][0]["group"], "?");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn errors_exit_nonzero_with_position() {
    let out = run(&["kp", "AI(11) x Spin(4)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 10"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [&["--format", "json", "decompose", "Gr(R,2,12)"][..], &["homotopy", "EVII"], &["table", "exceptional"]]
    {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}
