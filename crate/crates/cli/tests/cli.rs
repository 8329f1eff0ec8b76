//! Binary-level tests: exit codes, golden structured output, determinism.

use std::process::{Command, Output};

fn trilin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trilin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn signature_chain_matches_golden_output() {
    let out = trilin(&["signature", "****"]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "trilin-signature v1\n\
         word: ****\n\
         base: X x Y x Z -> W\n\
         step 1 *: W* x X x Y -> Z*\n\
         step 2 *: Z** x W* x X -> Y*\n\
         step 3 *: Y** x Z** x W* -> X*\n\
         step 4 *: X** x Y** x Z** -> W**\n\
         final: X** x Y** x Z** -> W**\n\
         order: αβγ\n"
    );
}

#[test]
fn signature_rejects_bad_words_with_column_and_exit_2() {
    let out = trilin(&["signature", "q"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("column 1"), "stderr: {err}");

    let out = trilin(&["signature", "**x"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("column 3"), "stderr: {err}");
}

#[test]
fn word_check_exit_codes_follow_the_verdict() {
    let equal_pairs = [
        ("****s**t", "s**t****"),
        ("****", "i****i"),
        ("t****s", "t****s"),
    ];
    for (a, b) in equal_pairs {
        let out = trilin(&["word-check", a, b]);
        assert_eq!(out.status.code(), Some(0), "{a} vs {b}");
        assert!(stdout_of(&out).contains("verdict: equal"));
    }

    let out = trilin(&["word-check", "*", "**"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("signatures-match: false"));
    assert!(text.contains("verdict: different"));
}

#[test]
fn limits_structured_output_is_deterministic_and_complete() {
    let args = [
        "limits",
        "--example",
        "triangular-ijk",
        "--trunc",
        "50",
        "--horizon",
        "10",
        "--tol",
        "1e-9",
        "--format",
        "structured",
    ];
    let first = trilin(&args);
    assert!(first.status.success());
    let second = trilin(&args);
    assert_eq!(
        first.stdout, second.stdout,
        "structured output must be byte-identical"
    );

    let text = stdout_of(&first);
    assert!(text.starts_with("trilin-limits v1\nexample: triangular-ijk\ntrunc: 50\nhorizon: 10\n"));
    assert!(text.contains("order αβγ (****)\n  status: stabilized"));
    assert!(text.contains("classification: irregular"));
    assert!(text.contains("witness: αβγ vs βαγ"));
    assert!(text.contains("theorem21-consistent: true"));
}

#[test]
fn limits_classifications_cover_the_catalog() {
    let cases = [
        ("rank-one", "classification: aron-berner-regular-evidence"),
        (
            "reflexive-middle",
            "classification: close-to-regular-evidence",
        ),
        (
            "composed-regular",
            "classification: aron-berner-regular-evidence",
        ),
        ("composed-irregular", "classification: irregular"),
    ];
    for (example, needle) in cases {
        let out = trilin(&["limits", "--example", example, "--format", "structured"]);
        assert_eq!(out.status.code(), Some(0), "{example}");
        assert!(stdout_of(&out).contains(needle), "{example}");
    }
}

#[test]
fn limits_rejects_unknown_examples_and_bad_parameters() {
    let out = trilin(&["limits", "--example", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("unknown example"));

    let out = trilin(&[
        "limits",
        "--example",
        "rank-one",
        "--trunc",
        "20",
        "--horizon",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("N >= 3H"));
}

#[test]
fn tensor_test_is_deterministic_and_validates_dims() {
    let args = [
        "tensor-test",
        "--dims",
        "2,3,2,2",
        "--seed",
        "11",
        "--trials",
        "25",
    ];
    let first = trilin(&args);
    assert_eq!(first.status.code(), Some(0));
    let second = trilin(&args);
    assert_eq!(first.stdout, second.stdout);
    let text = stdout_of(&first);
    assert!(text.contains("identity duality-chain: 25/25"));
    assert!(text.contains("result: pass"));

    let out = trilin(&["tensor-test", "--dims", "17,1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = trilin(&["tensor-test", "--dims", "2,2,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scalar_test_fixture_parses_to_the_catalog_tensor() {
    let doc = include_str!("fixtures/rank_one_2x2.tensor");
    let fixture = trilin::tensor::io::parse_trilinear(doc).expect("fixture parses");
    let spec = trilin::catalog::rank_one(
        trilin::catalog::ScalarSeq::Table(vec![1.0, 0.0]),
        trilin::catalog::ScalarSeq::Table(vec![0.0, 1.0]),
    )
    .unwrap();
    let built = spec.finite_dim_instance(2).unwrap();
    assert!(fixture.entries_equal(&built));
    assert_eq!(fixture.sig(), built.sig());
    // Writing the parsed tensor reproduces the fixture byte for byte.
    assert_eq!(trilin::tensor::io::write_trilinear(&fixture), doc);
}

#[test]
fn report_requires_all_and_passes() {
    let out = trilin(&["report"]);
    assert_eq!(out.status.code(), Some(2));

    let out = trilin(&["report", "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    for id in 1..=12 {
        assert!(
            text.contains(&format!("criterion {id:02} pass")),
            "criterion {id} in:\n{text}"
        );
    }
    assert!(text.ends_with("result: pass (12/12)\n"));
}

#[test]
fn unknown_subcommands_exit_2() {
    let out = trilin(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}
