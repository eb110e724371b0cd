use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_a2tilde")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["plane", "gen", "--q", "6"]).0, 2);
    assert_eq!(run(&["diffset", "check", "--n", "7", "--set", "0,1,2"]).0, 1);
    assert_eq!(run(&["diffset", "check", "--n", "7", "--set", "0,1,3"]).0, 0);
    assert_eq!(run(&["lattice", "exotic", "--q", "4"]).0, 0);
    assert_eq!(run(&["no-such-command"]).0, 2);
}

#[test]
fn json_keys_are_sorted() {
    let (_, text) = run(&["diffset", "singer", "--q", "3"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn manifest_and_dot_files() {
    let dir = std::env::temp_dir().join(format!("a2tilde-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (m, d) = (dir.join("m.json"), dir.join("p.dot"));
    let code = run(&["plane", "gen", "--q", "2", "--manifest", m.to_str().unwrap(), "--dot", d.to_str().unwrap()]).0;
    assert_eq!(code, 0);
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&m).unwrap()).unwrap();
    assert_eq!(manifest["status"], "pass");
    assert!(std::fs::read_to_string(&d).unwrap().starts_with("graph"));
    std::fs::remove_dir_all(&dir).unwrap();
}
