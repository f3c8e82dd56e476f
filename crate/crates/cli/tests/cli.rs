use std::process::{Command, Output};

use serde_json::Value;

fn rdx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdx")).args(args).output().expect("rdx runs")
}

fn json(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is json");
    assert_eq!(v["schema"], "rdx/1");
    v
}

#[test]
fn solve_paths_cycles_and_files() {
    let out = rdx(&["solve", "--tree", "p:5"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["gamma_r"], 4);

    let out = rdx(&["solve", "--graph", "c:5"]);
    assert_eq!(json(&out)["gamma_r"], 4);

    let dir = std::env::temp_dir().join(format!("rdx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("p4.txt");
    std::fs::write(&file, "# P4\n0 1\n1 2\n2 3\n").unwrap();
    let v = json(&rdx(&["solve", file.to_str().unwrap(), "--function"]));
    assert_eq!((v["gamma_r"].as_u64(), v["gamma"].as_u64()), (Some(3), Some(2)));
    let f: Vec<u64> = v["function"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(f.iter().sum::<u64>(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn tree_flag_rejects_cycles() {
    let out = rdx(&["solve", "--tree", "c:4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a tree"));
}

#[test]
fn recognize_exit_codes() {
    let out = rdx(&["recognize", "p:4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"], "accept");
    assert_eq!(v["base"], "H2");

    let out = rdx(&["recognize", "star:3"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["result"], "reject");
    assert_ne!(v["witness"], 0);
    assert_eq!(v["tree"]["n"], 4);
}

#[test]
fn bases_derive_strata() {
    let v = json(&rdx(&["bases", "--derive"]));
    assert_eq!(v["strata"], serde_json::json!([1, 1, 9]));
    assert_eq!(v["entries"].as_array().unwrap().len(), 11);
}

#[test]
fn generate_is_deterministic() {
    let args = ["generate", "--seed", "11", "--steps", "4", "--ops", "O1,O3"];
    let a = rdx(&args);
    let b = rdx(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let cert = serde_json::to_string(&v["certificate"]).unwrap();
    assert!(!cert.contains("\"O2\"") && !cert.contains("\"O4\""));
}

#[test]
fn dot_output() {
    let out = rdx(&["partition", "p:5", "--dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph T {"));
    assert!(text.contains("2 [shape=diamond, label=\"2:C\"]"));
}

#[test]
fn verify_suite_output_and_csv() {
    let dir = std::env::temp_dir().join(format!("rdx-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("out.csv");
    let args = ["verify", "cea", "--max-n", "12", "--csv", csv.to_str().unwrap()];
    let out = rdx(&args);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let notes = &v["reports"][0]["claims"][0]["notes"];
    let orders: Vec<u64> = notes.as_array().unwrap().iter().map(|t| t["n"].as_u64().unwrap()).collect();
    assert_eq!(orders, [2, 9, 10]);
    assert_eq!(out.stdout, rdx(&args).stdout);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("suite,claim,n,instances,failures,seconds\ncea,"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_errors() {
    assert_eq!(rdx(&["verify", "nope"]).status.code(), Some(1));
    assert_eq!(rdx(&["verify", "minedge", "--max-n", "9"]).status.code(), Some(1));
}

#[test]
fn classify_corona() {
    let v = json(&rdx(&["classify", "corona:0-1,1-2"]));
    assert_eq!(v["corona"], true);
    assert_eq!(v["gamma_r"], 6);
    assert_eq!(v["signature"], "R_{01,02}");
}
