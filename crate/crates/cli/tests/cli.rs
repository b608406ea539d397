//! End-to-end checks of the binary: exit codes, output shapes and the file
//! format contract.

use std::path::Path;
use std::process::{Command, Output};

use proptest::prelude::*;

use kingmaker_cli::format::{parse_tournament, write_tournament, write_tournament_file};
use kingmaker_core::models::{build_uncovered_ratio_example, uniform_random};
use kingmaker_core::Tournament;

fn kingmaker(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kingmaker"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

proptest! {
    #[test]
    fn format_round_trips(n in 1usize..24, seed in any::<u64>()) {
        let t = uniform_random(n, seed);
        let text = write_tournament(&t, &["any comment".into()]);
        prop_assert_eq!(parse_tournament(&text).unwrap(), t);
    }
}

#[test]
fn solve_answers_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.txt");
    write_tournament_file(&file, &Tournament::transitive(8), &[]).unwrap();

    let yes = kingmaker(&["solve", "t.txt", "--player", "0", "--verify"], dir.path());
    assert!(yes.status.success());
    let text = stdout(&yes);
    assert!(text.contains("player 0: SE winner"), "{text}");
    assert!(text.contains("verify: champion 0 (ok)"), "{text}");

    let no = kingmaker(&["solve", "t.txt", "--player", "7"], dir.path());
    assert!(no.status.success());
    assert!(stdout(&no).contains("player 7: not an SE winner (exact)"));

    let unknown = kingmaker(
        &["solve", "t.txt", "--player", "7", "--method", "structural"],
        dir.path(),
    );
    assert_eq!(unknown.status.code(), Some(3));
    assert!(stdout(&unknown).contains("unknown"));
}

#[test]
fn solve_finds_witness_on_the_ratio_instance() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ratio.txt");
    write_tournament_file(&file, &build_uncovered_ratio_example(3, 11).unwrap(), &[]).unwrap();
    let out = kingmaker(
        &["solve", "ratio.txt", "--player", "14", "--verify"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("player 14: SE winner"), "{text}");
    assert!(text.contains("verify: champion 14 (ok)"), "{text}");
}

#[test]
fn solve_exact_reports_cap() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("big.txt");
    write_tournament_file(&file, &Tournament::transitive(32), &[]).unwrap();
    let out = kingmaker(
        &["solve", "big.txt", "--player", "0", "--method", "exact"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("cap"), "{}", stderr(&out));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.txt"), "2\n01\n0x\n").unwrap();
    let out = kingmaker(&["solve", "bad.txt", "--player", "0"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn solutions_on_a_cycle_selects_everyone() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c3.txt"), "3\n010\n001\n100\n").unwrap();
    let out = kingmaker(
        &[
            "solutions",
            "c3.txt",
            "--sets",
            "copeland,uncovered,slater,markov,bipartisan,itmat:2,kpaths:2",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    for line in [
        "copeland: 0 1 2",
        "uncovered: 0 1 2",
        "slater: 0 1 2",
        "markov: 0 1 2",
        "bipartisan: 0 1 2",
        "itmat:2: 0 1 2",
        "kpaths:2: 0 1 2",
    ] {
        assert!(text.contains(line), "missing `{line}` in:\n{text}");
    }
}

#[test]
fn solutions_check_se_reports_weak_support_without_violation() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("flip.txt");
    let t = kingmaker_core::models::build_bipartisan_example(8).unwrap();
    write_tournament_file(&file, &t, &[]).unwrap();
    let out = kingmaker(
        &[
            "solutions",
            "flip.txt",
            "--sets",
            "bipartisan",
            "--check-se",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("check-se bipartisan-max-copeland: ok"),
        "{text}"
    );
    assert!(
        text.contains("bipartisan-support: members outside SE winners: 7"),
        "{text}"
    );
    assert!(!text.contains("VIOLATION"), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_delta = kingmaker(
        &[
            "generate", "--model", "flexible", "--n", "8", "--p", "0.3", "--delta", "0.6",
            "--seed", "1", "-o", "x.txt",
        ],
        dir.path(),
    );
    assert_eq!(bad_delta.status.code(), Some(2));

    std::fs::write(dir.path().join("c3.txt"), "3\n010\n001\n100\n").unwrap();
    let bad_set = kingmaker(&["solutions", "c3.txt", "--sets", "banks"], dir.path());
    assert_eq!(bad_set.status.code(), Some(2));
    assert!(
        stderr(&bad_set).contains("unknown set name"),
        "{}",
        stderr(&bad_set)
    );

    let bad_exp = kingmaker(
        &["experiment", "nonsense", "--trials", "1", "-o", "out.csv"],
        dir.path(),
    );
    assert_eq!(bad_exp.status.code(), Some(2));
}

#[test]
fn experiment_grid_cap_conflict_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = kingmaker(
        &[
            "experiment",
            "solutions-containment",
            "--ns",
            "32",
            "--trials",
            "1",
            "-o",
            "out.csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn zero_noise_generates_the_transitive_tournament() {
    let dir = tempfile::tempdir().unwrap();
    let out = kingmaker(
        &[
            "generate", "--model", "cr", "--n", "8", "--p", "0.0", "--seed", "1", "-o", "z.txt",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(dir.path().join("z.txt")).unwrap();
    assert_eq!(parse_tournament(&text).unwrap(), Tournament::transitive(8));
}

#[test]
fn generated_files_parse_back() {
    let dir = tempfile::tempdir().unwrap();
    let gen = kingmaker(
        &[
            "generate",
            "--model",
            "flexible",
            "--n",
            "16",
            "--p",
            "0.3",
            "--delta",
            "0.25",
            "--adversary",
            "random",
            "--seed",
            "3",
            "-o",
            "f.txt",
        ],
        dir.path(),
    );
    assert!(gen.status.success(), "{}", stderr(&gen));
    let text = std::fs::read_to_string(dir.path().join("f.txt")).unwrap();
    let t = parse_tournament(&text).unwrap();
    assert_eq!(t.n(), 16);
    assert!(text.starts_with("# model=flexible"));
}
