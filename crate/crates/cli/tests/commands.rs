use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn bioflat(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bioflat"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bioflat(args, None);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn extend_reports_blocked_obligation_as_json() {
    let (code, out) = run(&["extend", path(&fixture("sociality.dfl")), "--json"]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["OBL ~q"]["partial"], "-");
    assert_eq!(json["INT q"]["partial"], "+");
}

#[test]
fn flattened_theory_reads_back_from_stdin() {
    let (code, flat) = run(&["flatten", path(&fixture("sociality.dfl"))]);
    assert_eq!(code, 0);
    let out = bioflat(&["extend", "-", "--json"], Some(&flat));
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["obl_not_q"]["partial"], "-");
    assert_eq!(json["int_q"]["partial"], "+");
}

#[test]
fn flatten_map_lists_generated_rules() {
    let (code, out) = run(&["flatten", "--map", path(&fixture("sociality.dfl"))]);
    assert_eq!(code, 0);
    assert!(out.contains("# r2: r2_fl, r2_CfOI"), "{out}");
}

#[test]
fn minimal_move_in_second_example() {
    let (code, out) = run(&["move", path(&fixture("ex2.game")), "--player", "pr", "--order", "minimal"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "{p1: a => b}");
    let (code, oracle) = run(&["move", path(&fixture("ex2.game")), "--player", "pr", "--oracle"]);
    assert_eq!((code, oracle), (0, out));
}

#[test]
fn move_for_the_wrong_player_is_an_error() {
    let (code, _) = run(&["move", path(&fixture("ex2.game")), "--player", "op"]);
    assert_eq!(code, 2);
}

#[test]
fn play_writes_a_replayable_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("ex3.json");
    let (code, out) = run(&[
        "play",
        path(&fixture("ex3.game")),
        "--pr",
        "exhaustive",
        "--op",
        "exhaustive",
        "--trace",
        path(&trace),
    ]);
    assert_eq!(code, 0);
    assert!(out.ends_with("won by Pr\n"), "{out}");
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(trace).unwrap()).unwrap();
    assert_eq!(json["result"], "won_by_Pr");
    assert_eq!(json["win_mode"], "weak");
}

#[test]
fn sociality_keeps_s() {
    let (code, out) = run(&["sociality", path(&fixture("sociality.dfl")), "--obligation", "~q"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("holds").count(), 5, "{out}");
    assert!(out.ends_with("keep {s}\n"), "{out}");
}

#[test]
fn sociality_on_an_unblocked_obligation_is_an_error() {
    let (code, _) = run(&["sociality", path(&fixture("sociality.dfl")), "--obligation", "q"]);
    assert_eq!(code, 2);
}

#[test]
fn reduced_game_parses_and_has_witness() {
    let (code, out) = run(&["reduce", path(&fixture("sociality.dfl")), "--obligation", "~q"]);
    assert_eq!(code, 0);
    assert!(out.contains("# witness {r_s}"), "{out}");
    let dir = tempfile::tempdir().unwrap();
    let game = dir.path().join("reduced.game");
    std::fs::write(&game, &out).unwrap();
    assert_eq!(run(&["validate", path(&game)]), (0, "valid\n".to_string()));
    assert!(out.contains("@proponent\nrule r_p: -> int_p.\nrule r_s: -> int_s.\n"), "{out}");
}

#[test]
fn validate_flags_cycles_and_syntax() {
    let dir = tempfile::tempdir().unwrap();
    let cyclic = dir.path().join("cyclic.dfl");
    std::fs::write(&cyclic, "rule r1: => a. rule r2: => ~a. sup r1 > r2. sup r2 > r1.").unwrap();
    assert_eq!(run(&["validate", path(&cyclic)]).0, 1);
    let broken = dir.path().join("broken.dfl");
    std::fs::write(&broken, "rule r: a -> b -> c.").unwrap();
    let out = bioflat(&["validate", path(&broken)], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("1:"));
    for f in ["ex1.game", "ex2.game", "ex3.game", "sociality.dfl"] {
        assert_eq!(run(&["validate", path(&fixture(f))]), (0, "valid\n".to_string()));
    }
}

#[test]
fn prove_prints_a_derivation() {
    let (code, out) = run(&["prove", path(&fixture("sociality.dfl")), "+d", "INT q"]);
    assert_eq!(code, 0);
    assert!(out.contains("+∂ INT q"), "{out}");
    let (code, _) = run(&["prove", path(&fixture("sociality.dfl")), "+d", "OBL ~q"]);
    assert_eq!(code, 1);
}
