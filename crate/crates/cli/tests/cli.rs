use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn necklace(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_necklace")).args(args).output().expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("exit code"),
    )
}

#[test]
fn validate_exit_codes() {
    let (out, _, code) = necklace(&["validate", &fixture("kxy-omega.coalg")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("cyclicity-strict"));
    let (out, _, code) = necklace(&["validate", &fixture("non-coassociative.coalg")]);
    assert_eq!(code, 1);
    assert!(out.contains("coefficient of (w,w,v)"), "{out}");
    assert_eq!(necklace(&["validate", &fixture("empty.coalg")]).2, 0);
}

#[test]
fn parse_errors_are_located() {
    let (_, err, code) = necklace(&["validate", &fixture("bad-syntax.coalg")]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4, column 3"), "{err}");
    assert!(err.contains("expected a degree"), "{err}");
    let (_, err, code) = necklace(&["validate", &fixture("missing.coalg")]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn usage_errors() {
    let f = fixture("kxy-omega.coalg");
    let (_, err, code) = necklace(&["bracket", &f, "x", "z"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown generator `z`"), "{err}");
    assert_eq!(necklace(&["traces", &f, "--dim", "0"]).2, 2);
    assert_eq!(necklace(&["frobnicate"]).2, 2);
    assert_eq!(necklace(&["--help"]).2, 0);
}

#[test]
fn axioms_report_d_compatibility() {
    let (out, _, code) = necklace(&["axioms", &fixture("kxy-omega.coalg"), "--max-weight", "4"]);
    assert_eq!(code, 1, "{out}");
    let failing: Vec<&str> = out.lines().filter(|l| l.contains("FAIL")).collect();
    assert_eq!(failing.len(), 1, "{out}");
    assert!(failing[0].starts_with("d-compatibility"));
}

#[test]
fn brackets() {
    let f = fixture("kxy-omega.coalg");
    assert!(necklace(&["bracket", &f, "x", "y"]).0.contains("-1⊗1"));
    let (out, _, code) = necklace(&["bracket", &f, "x^2", "y^2", "--mode", "natural", "--reduced"]);
    assert_eq!(code, 0);
    assert!(out.contains("-4*[xy]"), "{out}");
    let (out, _, _) = necklace(&["bracket", &f, "x^2", "y*t", "--mode", "homology"]);
    assert!(out.contains("-2*[xt]") && out.contains("-2*xy dx"), "{out}");
    let (out, _, _) = necklace(&["bracket", &f, "x^2", "y^2", "--mode", "homology"]);
    assert!(out.contains("-4*xy"), "{out}");
    let (_, err, code) = necklace(&["bracket", &f, "x*y*t*t", "x", "--mode", "homology"]);
    assert_eq!(code, 2);
    assert!(err.contains("cycles"), "{err}");
}

#[test]
fn homology_tables() {
    let f = fixture("kxy-omega.coalg");
    let (out, _, code) = necklace(&["homology", &f, "--max-weight", "3", "--format", "tsv"]);
    assert_eq!(code, 0);
    assert!(out.contains("1\t3\t2\t[xt]; [yt]"), "{out}");
    let (out, _, code) = necklace(&["homology", &f, "--target", "cyclic", "--max-weight", "4"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().skip(2).all(|l| l.trim_end().ends_with("ok")), "{out}");
    let (out, _, code) = necklace(&["homology", &f, "--target", "rep", "--dim", "2", "--max-weight", "2", "--max-degree", "0"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.split_whitespace().take(4).eq(["2", "0", "2", "33"])), "{out}");
}

#[test]
fn traces_and_mutations() {
    let (out, _, code) = necklace(&["traces", &fixture("kxy-omega.coalg"), "--max-weight", "3", "--samples", "30", "--seed", "5"]);
    assert_eq!(code, 0, "{out}");
    let (out, _, code) = necklace(&["traces", &fixture("mutation-rep-transpose.coalg"), "--max-weight", "2"]);
    assert_eq!(code, 1);
    assert!(out.contains("d=2 (x, y)"), "{out}");
    let (out, _, code) = necklace(&["lie", &fixture("mutation-rotation-sign.coalg"), "--reduced"]);
    assert_eq!(code, 1);
    assert!(out.contains("[yt]) residual 2*[t^2]"), "{out}");
    assert_eq!(necklace(&["lie", &fixture("kxy-omega.coalg"), "--reduced"]).2, 0);
    let (out, _, code) = necklace(&["axioms", &fixture("mutation-bracket-sign.coalg")]);
    assert_eq!(code, 1);
    assert!(out.lines().any(|l| l.starts_with("double-jacobi") && l.contains("FAIL")), "{out}");
}

#[test]
fn dual_algebra_matches_coalgebra() {
    for args in [&["homology", "--max-weight", "4"][..], &["bracket", "x^2", "y*t", "--mode", "homology"][..]] {
        let run = |f: &str| {
            let mut a = vec![args[0], f];
            a.extend(&args[1..]);
            necklace(&a).0
        };
        assert_eq!(run(&fixture("torus-cohomology.alg")), run(&fixture("kxy-omega.coalg")));
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["traces", &fixture("kxy-omegatilde.coalg"), "--max-weight", "2", "--samples", "20", "--seed", "9", "--format", "tsv"];
    let first = necklace(&args);
    assert_eq!(first.2, 0, "{}", first.0);
    assert_eq!(first, necklace(&args));
    assert!(first.0.lines().any(|l| l.contains('\t')));
}
