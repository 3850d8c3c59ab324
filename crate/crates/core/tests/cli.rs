use std::process::{Command, Output};

fn gengreen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gengreen")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("gengreen-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn gl2_green_csv() {
    let o = gengreen(&["green", "--kind", "gl", "--n", "2", "--series", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "w,\"1,1|0\",2|0\n2,-q + 1,1\n\"1,1\",q + 1,1\n");
}

#[test]
fn external_round_trip() {
    let path = tmp("gl3.json");
    let o = gengreen(&["solve", "--kind", "gl", "--n", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let solved: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let again = gengreen(&["solve", "--external", path.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));
    let again: serde_json::Value = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(again["P"], solved["P"]);
    assert_eq!(again["Lambda"], solved["Lambda"]);

    let omega = tmp("sl4.json");
    gengreen(&["omega", "--kind", "sl", "--n", "4", "--series", "2", "--output", omega.to_str().unwrap()]);
    let ext = gengreen(&["solve", "--external", omega.to_str().unwrap()]);
    let direct = gengreen(&["solve", "--kind", "sl", "--n", "4", "--series", "2"]);
    assert_eq!(ext.status.code(), Some(0));
    let ext: serde_json::Value = serde_json::from_str(&stdout(&ext)).unwrap();
    let direct: serde_json::Value = serde_json::from_str(&stdout(&direct)).unwrap();
    assert_eq!(ext["P"], direct["P"]);
}

#[test]
fn bad_external_is_rejected() {
    let path = tmp("bad.json");
    std::fs::write(&path, r#"{"schema": "omega-system/v1", "series": "x", "indices": [], "omega": []}"#).unwrap();
    assert_eq!(gengreen(&["solve", "--external", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn verify_small() {
    let o = gengreen(&["verify", "--suite", "all", "--max-n", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("[PASS]")).count(), 10);
}

#[test]
fn invalid_inputs_exit_one() {
    assert_eq!(gengreen(&["series", "--kind", "gl", "--n", "0"]).status.code(), Some(1));
    assert_eq!(gengreen(&["block", "--kind", "sl", "--n", "4", "--series", "3"]).status.code(), Some(1));
    assert_eq!(gengreen(&["oracle", "flags", "--q", "6", "--lambda", "2,1"]).status.code(), Some(1));
    assert_eq!(gengreen(&["ennola", "--kind", "sl", "--n", "4", "--series", "2"]).status.code(), Some(1));
    assert_eq!(gengreen(&["nonsense"]).status.code(), Some(1));
}

#[test]
fn oracle_output() {
    let o = gengreen(&["oracle", "flags", "--q", "2", "--lambda", "2,1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], "5");
    assert!(v["runtime_ms"].is_u64());
    let o = gengreen(&["oracle", "centralizer", "--q", "3", "--lambda", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], "6");
    let o = gengreen(&["oracle", "clambda", "--q", "3", "--lambda", "4", "--d", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"]["nu"], "1");
}

#[test]
fn outputs_are_deterministic() {
    let args = ["green", "--kind", "su", "--n", "4", "--series", "2", "--nu-q", "3"];
    let a = gengreen(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, gengreen(&args).stdout);
}
