//! Black-box tests for the `textcirc` binary: outputs, exit codes, and
//! determinism.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../textcirc/fixtures")
        .join(name)
}

fn textcirc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_textcirc"))
        .args(args)
        .env("TEXTCIRC_COLOR", "never")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn compile_prints_the_canonical_circuit() {
    let output = textcirc(&["compile", fixture("john_en.txt").to_str().unwrap()]);
    assert!(output.status.success());
    assert_eq!(
        stdout(&output).trim(),
        "wires:[1=John,2=books];elements:[tv(reads;1,2)]"
    );
}

#[test]
fn compile_renders_ascii() {
    let output = textcirc(&[
        "compile",
        fixture("john_en.txt").to_str().unwrap(),
        "--lang",
        "en",
        "--render",
        "ascii",
    ]);
    assert!(output.status.success());
    let grid = stdout(&output);
    assert!(grid.contains("reads"), "{grid}");
    assert!(grid.lines().next().unwrap().contains("John"));
}

#[test]
fn compile_writes_the_out_file() {
    let out = std::env::temp_dir().join("textcirc_cli_test_john.circ");
    let output = textcirc(&[
        "compile",
        fixture("john_ur.txt").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let written = fs::read_to_string(&out).unwrap();
    assert_eq!(
        written.trim(),
        "wires:[1=John,2=kitabein];elements:[tv(parhta hai;1,2)]"
    );
    fs::remove_file(out).ok();
}

#[test]
fn equiv_accepts_the_running_example() {
    let output = textcirc(&[
        "equiv",
        fixture("student_en.txt").to_str().unwrap(),
        fixture("student_ur.txt").to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert!(stdout(&output).starts_with("equal"));
}

#[test]
fn equiv_rejects_an_object_swapped_urdu_text() {
    let mutated = std::env::temp_dir().join("textcirc_cli_test_swapped.txt");
    fs::write(
        &mutated,
        "@lang ur\n(S (NP#2 kitabein) (NP#1 John) (TVP \"parhta hai\"))\n",
    )
    .unwrap();
    let output = textcirc(&[
        "equiv",
        fixture("john_en.txt").to_str().unwrap(),
        mutated.to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let report = stdout(&output);
    assert!(report.contains("equal: false"), "{report}");
    assert!(report.contains("canonical_en_mapped:"));
    assert!(report.contains("canonical_ur:"));
    fs::remove_file(mutated).ok();
}

#[test]
fn translate_round_trips_the_fixture() {
    let output = textcirc(&[
        "translate",
        fixture("student_en.txt").to_str().unwrap(),
        "--dir",
        "e2u",
    ]);
    assert!(output.status.success());
    let translated = stdout(&output);
    assert!(translated.contains("talib-e-ilm jo") || translated.contains("(REL#1 jo)"));
    assert!(translated.starts_with("@lang ur\n"));
}

#[test]
fn missing_file_exits_2() {
    let output = textcirc(&["compile", "/nonexistent/file.txt", "--lang", "en"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn format_error_exits_2_with_position() {
    let broken = std::env::temp_dir().join("textcirc_cli_test_broken.txt");
    fs::write(&broken, "@lang en\n(S (NP#0 John) (IVP smiles))\n").unwrap();
    let output = textcirc(&["compile", broken.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8(output.stderr.clone()).unwrap();
    assert!(err.contains("2:"), "{err}");
    fs::remove_file(broken).ok();
}

#[test]
fn missing_lang_exits_2() {
    let bare = std::env::temp_dir().join("textcirc_cli_test_bare.txt");
    fs::write(&bare, "(S (NP#1 John) (IVP smiles))\n").unwrap();
    let output = textcirc(&["compile", bare.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    fs::remove_file(bare).ok();
}

#[test]
fn sample_is_deterministic() {
    let args = [
        "sample",
        "--seed",
        "11",
        "--wires",
        "3",
        "--elements",
        "4",
        "--depth",
        "2",
        "--lang",
        "ur",
        "--policy",
        "threshold=1,fuse",
    ];
    let first = textcirc(&args);
    let second = textcirc(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let body = stdout(&first);
    assert!(body.contains("---"));
    assert!(body.contains("wires:["));
}

#[test]
fn roundtrip_reports_and_exits_0() {
    let output = textcirc(&[
        "roundtrip",
        "--seed",
        "3",
        "--count",
        "40",
        "--lang",
        "ur",
        "--policy",
        "repeat,fuse",
        "--format",
        "structured",
    ]);
    assert!(output.status.success());
    let report = stdout(&output);
    assert!(report.contains("ok: 40"), "{report}");
    assert!(report.contains("fail: 0"));
}

#[test]
fn color_env_controls_ascii_escapes() {
    let plain = Command::new(env!("CARGO_BIN_EXE_textcirc"))
        .args([
            "compile",
            fixture("john_en.txt").to_str().unwrap(),
            "--render",
            "ascii",
        ])
        .env("TEXTCIRC_COLOR", "never")
        .output()
        .unwrap();
    let colored = Command::new(env!("CARGO_BIN_EXE_textcirc"))
        .args([
            "compile",
            fixture("john_en.txt").to_str().unwrap(),
            "--render",
            "ascii",
        ])
        .env("TEXTCIRC_COLOR", "always")
        .output()
        .unwrap();
    assert!(!stdout(&plain).contains('\u{1b}'));
    assert!(stdout(&colored).contains('\u{1b}'));
}

#[test]
fn explicit_lexicon_file_is_honored() {
    let lexicon = fixture("lexicon_en_ur.tsv");
    let output = textcirc(&[
        "equiv",
        fixture("john_en.txt").to_str().unwrap(),
        fixture("john_ur.txt").to_str().unwrap(),
        "--lexicon",
        lexicon.to_str().unwrap(),
    ]);
    assert!(output.status.success());

    // A lexicon missing the verb makes the comparison a format error.
    let partial = std::env::temp_dir().join("textcirc_cli_test_partial.tsv");
    fs::write(&partial, "John\tJohn\tNP\nbooks\tkitabein\tNP\n").unwrap();
    let output = textcirc(&[
        "equiv",
        fixture("john_en.txt").to_str().unwrap(),
        fixture("john_ur.txt").to_str().unwrap(),
        "--lexicon",
        partial.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    fs::remove_file(partial).ok();
}
