//! End-to-end tests against the built binary.

use std::process::{Command, Output};

fn rex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn solve_empty_2x2_reports_first_player_win() {
    let out = rex(&["solve", "--size", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("winner: Black"));
}

#[test]
fn solve_bd1_position_reports_black() {
    let out = rex(&[
        "solve",
        "--board-inline",
        "rex 4 4/...b/..../..../..../toplay w",
        "--tt-mb",
        "16",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("winner: Black"));
}

#[test]
fn solve_timeout_exits_2() {
    let out = rex(&[
        "solve",
        "--board-inline",
        "rex 5 5/b..w./...../...../...../...../toplay b",
        "--time-limit",
        "0.02",
        "--tt-mb",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn machine_mode_emits_one_json_object_per_line() {
    let out = rex(&["solve", "--size", "3", "--machine", "--tt-mb", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    let v: serde_json::Value = serde_json::from_str(lines[0]).expect("valid JSON");
    assert_eq!(v["command"], "solve");
    assert_eq!(v["winner"], "w");
    assert_eq!(v["status"], "solved");
    assert_eq!(v["config"]["threads"], 1);
}

#[test]
fn threads_flag_preserves_the_winner() {
    for threads in ["1", "4"] {
        let out = rex(&["solve", "--size", "3", "--threads", threads, "--machine", "--tt-mb", "8"]);
        let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
        assert_eq!(v["winner"], "w");
    }
}

#[test]
fn analyze_reports_the_five_kept_moves() {
    let out = rex(&[
        "analyze",
        "--board-inline",
        "rex 4 4/...b/..../..../..../toplay w",
        "--machine",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let kept: Vec<&str> = v["kept"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(kept, vec!["a1", "c1", "a4", "b4", "d4"]);
}

#[test]
fn analyze_flags_the_center_pre_join_key() {
    // The empty 3x3 with White to move is decided outright (White is
    // Last and owns a pre-join pairing), and b2 is one of its keys.
    let out = rex(&["analyze", "--size", "3", "--toplay", "w", "--machine"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let keys = v["mover_keys"].as_array().unwrap();
    assert!(keys.iter().any(|k| k == "b2"), "b2 must be a pre-join key: {keys:?}");
    assert_eq!(v["solved"]["winner"], "b");
}

#[test]
fn analyze_empty_board_reports_no_fillin() {
    // With the decision rules off, an empty board has nothing to fill
    // and every move is accounted for as kept or removed.
    let out = rex(&[
        "analyze",
        "--board-inline",
        "rex 3 4/.../.../.../.../toplay b",
        "--no-hsearch",
        "--no-color-symmetry",
        "--machine",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(v["fillin"]["entries"].as_array().unwrap().is_empty());
    assert!(v["solved"].is_null());
    let removed = v["removed"].as_array().unwrap();
    let candidates = v["candidates"].as_array().unwrap();
    assert_eq!(candidates.len() + removed.len(), 12);
}

#[test]
fn openings_size_3_all_lose() {
    let out = rex(&["openings", "--size", "3", "--machine", "--tt-mb", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let moves = v["moves"].as_array().unwrap();
    assert_eq!(moves.len(), 9);
    assert!(moves.iter().all(|m| m["winner"] == "w"));

    let out = rex(&["openings", "--size", "3", "--symmetry", "--machine", "--tt-mb", "8"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["moves"].as_array().unwrap().len(), 5);
}

#[test]
fn bench_unknown_names_are_usage_errors() {
    let out = rex(&["bench", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    let out = rex(&["bench", "--suite", "3x3-all", "--knockout", "warp-drive"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bench_knockout_reports_identical_winners() {
    let out = rex(&[
        "bench",
        "--suite",
        "3x3-all",
        "--knockout",
        "color-symmetry",
        "--machine",
        "--tt-mb",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["winners_match"], true);
    assert_eq!(v["knockout"], "color-symmetry");
}

#[test]
fn oracle_command_gives_ground_truth() {
    let out = rex(&["oracle", "--size", "2", "--machine"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["winner"], "b");
    // Board too large for the oracle: usage error.
    let out = rex(&["oracle", "--size", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_errors_exit_1_with_location() {
    let out = rex(&["solve", "--board-inline", "rex 2 2/../x./toplay b"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line"), "stderr: {err}");
}

#[test]
fn conflicting_position_flags_are_rejected() {
    let out = rex(&["solve", "--size", "2", "--board-inline", "rex 2 2/../../toplay b"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn position_file_input_works() {
    let dir = std::env::temp_dir().join("rex-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pos.rex");
    std::fs::write(&path, "rex 2 2\n..\n..\ntoplay w\n").unwrap();
    let out = rex(&["solve", "--board", path.to_str().unwrap(), "--machine"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["winner"], "w");
    assert_eq!(v["to_move"], "w");
}
