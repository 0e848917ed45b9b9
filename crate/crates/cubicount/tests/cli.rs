//! End-to-end tests of the binary: flag handling, exit codes, and the
//! stability of both output modes. JSON goldens are frozen here so any
//! drift in the envelope, key order, or formatting fails loudly.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubicount"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn workspace_path(relative: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(relative)
}

// -- documented examples ------------------------------------------------------

#[test]
fn classify_prints_the_unique_irreducible_quintic_class() {
    let out = run(&[
        "classify",
        "--surface",
        "scroll",
        "--degree",
        "5",
        "--genus",
        "0",
        "--irreducible",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "D+4F\n");
}

#[test]
fn secant_count_prints_sixteen_for_the_rational_quartic() {
    let out = run(&["secant-count", "--degree", "4", "--genus", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "16\n");
}

#[test]
fn residual_examples_match_the_class_arithmetic() {
    let out = run(&[
        "residual", "--surface", "scroll", "--curve", "2D+2F", "--secants", "2F",
    ]);
    assert_eq!(stdout(&out), "D+2F  (degree 3, genus 0)\n");
    let out = run(&["residual", "--surface", "quadric", "--curve", "(1,1)"]);
    assert_eq!(stdout(&out), "(2,2)  (degree 4, genus 1)\n");
}

#[test]
fn chi_prints_twice_the_degree() {
    let out = run(&["chi", "--degree", "3", "--genus", "0"]);
    assert_eq!(stdout(&out), "6\n");
    let out = run(&["chi", "--degree", "5", "--genus", "2"]);
    assert_eq!(stdout(&out), "10\n");
}

#[test]
fn grr_symbolic_text_is_frozen() {
    let out = run(&["grr"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "c2(E) = (5d^2 - 15d - 12g + 12) pt\nclosed-form route agrees: yes\n"
    );
}

#[test]
fn split_pushforward_drops_the_degree_by_two() {
    let out = run(&["split", "pushforward", "--degree", "5"]);
    assert_eq!(stdout(&out), "O(2) + O(1)\n");
    let out = run(&["split", "pushforward", "--degree", "4", "--pullback"]);
    assert_eq!(stdout(&out), "O(2) + O(0)\n");
}

#[test]
fn enum_lists_the_72_classes_with_their_orbits() {
    let out = run(&["enum", "--degree", "3", "--self-int", "1"]);
    let text = stdout(&out);
    assert!(text.starts_with("72 classes with degree 3 and self-intersection 1\n"));
    for line in [
        "  l  1\n",
        "  2l-e1-e2-e3  20\n",
        "  3l-2e1-e2-e3-e4-e5  30\n",
        "  4l-2e1-2e2-2e3-e4-e5-e6  20\n",
        "  5l-2e1-2e2-2e3-2e4-2e5-2e6  1\n",
    ] {
        assert!(text.contains(line), "missing orbit line {line:?}");
    }
}

// -- JSON goldens -------------------------------------------------------------

#[test]
fn secant_count_json_envelope_is_frozen() {
    let out = run(&["--json", "secant-count", "--degree", "4", "--genus", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = r#"{
  "command": "secant-count",
  "inputs": {
    "degree": 4,
    "genus": 0
  },
  "result": {
    "out_of_regime": false,
    "value": 16
  }
}
"#;
    assert_eq!(stdout(&out), expected);
}

#[test]
fn classify_json_envelope_is_frozen() {
    let out = run(&[
        "--json",
        "classify",
        "--surface",
        "scroll",
        "--degree",
        "5",
        "--genus",
        "0",
        "--irreducible",
    ]);
    let expected = r#"{
  "command": "classify",
  "inputs": {
    "degree": 5,
    "genus": 0,
    "irreducible": true,
    "surface": "scroll"
  },
  "result": {
    "classes": [
      "D+4F"
    ],
    "count": 1
  }
}
"#;
    assert_eq!(stdout(&out), expected);
}

#[test]
fn grr_symbolic_json_envelope_is_frozen() {
    let out = run(&["--json", "grr"]);
    let expected = r#"{
  "command": "grr",
  "inputs": {
    "degree": null,
    "genus": null
  },
  "result": {
    "c2E": {
      "1": "0",
      "d": "0",
      "f1": "0",
      "f2": "0",
      "pt": "5d^2 - 15d - 12g + 12"
    },
    "matches_closed_form": true
  }
}
"#;
    assert_eq!(stdout(&out), expected);
}

#[test]
fn oracle_lines_json_envelope_is_frozen() {
    let out = run(&["--json", "oracle", "lines", "--p", "7", "--form", "fermat3-surface"]);
    let expected = r#"{
  "command": "oracle lines",
  "inputs": {
    "form": "fermat3-surface",
    "k": 1,
    "p": 7
  },
  "result": {
    "count": 27,
    "incident_pairs": 135
  }
}
"#;
    assert_eq!(stdout(&out), expected);
}

#[test]
fn json_flag_position_does_not_matter() {
    let before = run(&["--json", "chi", "--degree", "2", "--genus", "0"]);
    let after = run(&["chi", "--degree", "2", "--genus", "0", "--json"]);
    assert_eq!(before.stdout, after.stdout);
}

#[test]
fn identical_invocations_are_bit_identical() {
    let args = ["--json", "oracle", "three-secants", "--p", "7", "--seed", "0", "--k", "2"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

// -- oracle behavior ----------------------------------------------------------

#[test]
fn oracle_lines_accepts_the_bundled_example_form_file() {
    let path = workspace_path("assets/forms/fermat-cubic-surface.form");
    let spec = format!("file:{}", path.display());
    let from_file = run(&["oracle", "lines", "--p", "7", "--form", &spec]);
    let built_in = run(&["oracle", "lines", "--p", "7", "--form", "fermat3-surface"]);
    assert_eq!(from_file.status.code(), Some(0));
    // Same cubic, so the same text report.
    assert_eq!(from_file.stdout, built_in.stdout);
    assert!(stdout(&built_in).starts_with("27 lines"));
}

#[test]
fn oracle_output_is_thread_count_invariant() {
    let base = run(&["--json", "oracle", "lines", "--p", "7", "--form", "fermat3-threefold"]);
    for threads in ["1", "2", "8"] {
        let pooled = run(&[
            "--json", "oracle", "lines", "--p", "7", "--form", "fermat3-threefold",
            "--threads", threads,
        ]);
        assert_eq!(pooled.status.code(), Some(0));
        assert_eq!(base.stdout, pooled.stdout, "threads = {threads}");
    }
}

#[test]
fn oracle_secants_reports_the_smoothness_caveat() {
    let out = run(&["oracle", "secants", "--p", "5", "--seed", "0", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("geometric total:"));
    assert!(text.contains("not checked for smoothness"));
}

#[test]
fn oracle_secants_requires_a_seed_or_a_form() {
    let out = run(&["oracle", "secants", "--p", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--seed"));
    assert!(stdout(&out).is_empty());
}

#[test]
fn special_census_instances_exit_two_with_a_clean_message() {
    // Seed 1 projects the quintic from a center on its chord variety, so
    // the image has a node and a pencil of inflated 3-secants. The census
    // must refuse the instance politely instead of printing a count.
    let out = run(&["oracle", "three-secants", "--p", "7", "--seed", "1", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    let err = stderr(&out);
    assert!(err.starts_with("error: "), "stderr was: {err}");
    assert!(err.contains("3-secant lines"), "stderr was: {err}");
    assert!(err.contains("certifies nothing"), "stderr was: {err}");
}

#[test]
fn malformed_form_files_fail_with_the_offending_line() {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("bad-form");
    fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("short.form");
    fs::write(&path, "3 0 0 0  1\n2 0 0 0  1\n").expect("write form");
    let spec = format!("file:{}", path.display());
    let out = run(&["oracle", "lines", "--p", "7", "--form", &spec]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "stderr: {}", stderr(&out));
}

// -- audit exit codes ---------------------------------------------------------

#[test]
fn audit_passes_the_bundled_assets() {
    let path = workspace_path("assets/paper-sheets");
    let out = run(&["audit", path.to_str().expect("UTF-8 path")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("24 passed, 0 failed"));
}

#[test]
fn audit_without_a_directory_uses_the_compiled_in_bundle() {
    let out = run(&["audit"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("24 passed, 0 failed"));
}

#[test]
fn audit_fails_with_exit_one_after_an_edit() {
    let source = workspace_path("assets/paper-sheets");
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("edited-sheets");
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).expect("temp dir");
    for entry in fs::read_dir(&source).expect("assets exist") {
        let path = entry.expect("dir entry").path();
        if path.extension().is_some_and(|e| e == "sheet") {
            fs::copy(&path, dir.join(path.file_name().expect("file name"))).expect("copy sheet");
        }
    }
    // Nudge one declared target; the recomputed total no longer matches.
    let victim = dir.join("conics.sheet");
    let text = fs::read_to_string(&victim).expect("read sheet");
    let edited = text.replacen("expect = ", "expect = 1", 1);
    assert_ne!(text, edited, "the edit must change the sheet");
    fs::write(&victim, edited).expect("write sheet");

    let out = run(&["audit", dir.to_str().expect("UTF-8 path")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn audit_rejects_a_directory_without_sheets() {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("empty-audit");
    fs::create_dir_all(&dir).expect("temp dir");
    let out = run(&["audit", dir.to_str().expect("UTF-8 path")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no .sheet files"));
}

// -- usage errors -------------------------------------------------------------

#[test]
fn usage_errors_exit_two_and_stay_off_stdout() {
    for args in [
        &["classify", "--surface", "scroll", "--degree", "5"] as &[&str],
        &["classify", "--surface", "dodecahedron", "--degree", "5", "--genus", "0"],
        &["no-such-command"],
        &["orbit", "--class", "q+e9"],
        &["oracle", "lines", "--p", "6", "--form", "fermat3-surface"],
        &["oracle", "lines", "--p", "7", "--form", "hexagon"],
        &["chi"],
        &["secant-count", "--degree", "0", "--genus", "0"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
        assert!(!stderr(&out).is_empty(), "args: {args:?}");
        assert!(stdout(&out).is_empty(), "args: {args:?}");
    }
}

#[test]
fn help_and_version_succeed() {
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("oracle"));
    let version = run(&["--version"]);
    assert_eq!(version.status.code(), Some(0));
    assert!(stdout(&version).starts_with("cubicount"));
}
