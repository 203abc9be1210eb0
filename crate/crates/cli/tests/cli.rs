use std::fs;
use std::process::{Command, Output};

fn nilcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcheck")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = nilcheck(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn weight_examples() {
    assert_eq!(stdout(&["weight", "[x1,x2,x1,x2]", "--D", "6"]), "4\n");
    assert_eq!(stdout(&["weight", "[x1,x2]", "--D", "2"]), "2\n");
    assert_eq!(stdout(&["weight", "x1", "--D", "3"]), "1\n");
    assert_eq!(stdout(&["weight", "[x1,x2,x3]", "--D", "2"]), ">2\n");
    assert_eq!(stdout(&["weight", "[x1,x2]", "--D", "2", "--terms"]), "2\n1 X1X2\n-1 X2X1\n");
}

#[test]
fn arithmetic_commands() {
    assert_eq!(stdout(&["bounds", "3"]), "9 11\n");
    assert_eq!(stdout(&["bounds", "2"]), "3 4\n");
    assert_eq!(stdout(&["r", "5", "2", "--variant", "variety"]), "2\npower 8\n");
    assert_eq!(stdout(&["r", "4", "2", "--variant", "engel"]), "2\n");
    assert_eq!(stdout(&["witt", "3", "4"]), "18\n");
}

#[test]
fn group_commands_accept_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sym4.group");
    let made = stdout(&["make", "symmetric(4)", "--out", path.to_str().unwrap()]);
    assert!(made.is_empty());
    let text = stdout(&["fitting", path.to_str().unwrap()]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "order 4");
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[5], "height 3");
    fs::remove_file(&path).unwrap();
}

#[test]
fn law_examples() {
    let s3 = stdout(&["law", "symmetric(3)", "[x1,x2,x1,x2]"]);
    assert!(s3.starts_with("counterexample"), "{s3}");
    assert!(s3.contains("x1 = (1,2)") && s3.contains("x2 = (1,3)"));
    assert_eq!(stdout(&["law", "quaternion(8)", "[x1,x2,x1,x2]"]), "holds (exhaustive, 64 assignments)\n");
    assert_eq!(
        stdout(&["law", "symmetric(3)", "[x1,x2,x1,x2,x3,[x1,x2,x1,x2],x3]"]),
        "holds (exhaustive, 216 assignments)\n"
    );
}

#[test]
fn verify_heineken_passes() {
    let out = nilcheck(&["verify", "heineken", "--corpus", "default"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 22);
    assert!(text.lines().all(|l| l.contains(r#""verdict":"pass""#)));
}

#[test]
fn corrupted_manifest_exits_with_malformed_status() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.toml");
    let manifest = stdout(&["corpus"]);
    let corrupted = manifest.replacen("order = 6\n", "order = 7\n", 1);
    assert_ne!(corrupted, manifest);
    fs::write(&path, corrupted).unwrap();
    let out = nilcheck(&["verify", "heineken", "--corpus", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    let first = text.lines().next().unwrap();
    assert!(first.contains(r#""group":"sym3""#) && first.contains(r#""verdict":"skipped""#), "{first}");
    assert_eq!(text.lines().filter(|l| l.contains(r#""verdict":"pass""#)).count(), 21);
}

#[test]
fn malformed_input_exits_2() {
    let bad_word = nilcheck(&["weight", "[x1,x2", "--D", "3"]);
    assert_eq!(bad_word.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_word.stderr).contains("character 6"));
    assert_eq!(nilcheck(&["bounds", "1"]).status.code(), Some(2));
    assert_eq!(nilcheck(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(nilcheck(&["fitting", "no-such-group"]).status.code(), Some(2));
    assert_eq!(nilcheck(&["verify", "all", "--budget", "0"]).status.code(), Some(2));
}
