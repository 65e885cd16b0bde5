use std::process::{Command, Output};

fn polyaut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyaut"))
        .args(args)
        .env_remove("POLYAUT_DEGREE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn verify_prints_the_inverse() {
    let o = polyaut(&["verify", "[x1 + x2^2; x2]"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("CERTIFIED\n"));
    assert!(stdout(&o).contains("inverse: [-x2^2 + x1; x2]"));
}

#[test]
fn verify_rejects_non_constant_jacobian() {
    let o = polyaut(&["--format=record", "verify", "[x1^2; x2]"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("verdict=not-automorphism\n"));
    assert!(out.contains("jacobian_det=2*x1\n"));
}

#[test]
fn record_format_is_key_value() {
    let o = polyaut(&[
        "--format",
        "record",
        "compose",
        "[x1 + x2^2; x2]",
        "[x1; x2 + x1^2]",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "map=[x1^4 + 2*x1^2*x2 + x2^2 + x1; x1^2 + x2]\ndegree=4\n"
    );
}

#[test]
fn syntax_errors_exit_two_with_offset() {
    let o = polyaut(&["verify", "[x1 +]"]);
    assert_eq!(code(&o), 2);
    assert!(
        stderr(&o).contains("syntax error at offset 5"),
        "{}",
        stderr(&o)
    );
    assert_eq!(code(&polyaut(&["no-such-command"])), 2);
    assert_eq!(code(&polyaut(&["xu-enum", "2"])), 2);
}

#[test]
fn degree_budget_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_polyaut"))
        .args(["verify", "[x1 + x2^3; x2]"])
        .env("POLYAUT_DEGREE_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("exceeds the degree budget 2"));
    assert_eq!(
        code(&polyaut(&[
            "--degree-budget",
            "3",
            "verify",
            "[x1 + x2^3; x2]"
        ])),
        0
    );
}

#[test]
fn invert_with_translation() {
    let o = polyaut(&["invert", "[x1 + x2^2; x2 + 1]"]);
    assert_eq!(stdout(&o), "[-x2^2 + x1 + 2*x2 - 1; x2 - 1]\n");
    let o = polyaut(&["invert", "--bound", "1", "[2*x1; 3*x2]"]);
    assert_eq!(stdout(&o), "[1/2*x1; 1/3*x2]\n");
}

#[test]
fn derivation_commands() {
    let o = polyaut(&["exp", "[x2^2; 0] d/dx", "--s", "1/2"]);
    assert_eq!(stdout(&o), "[1/2*x2^2 + x1; x2]\n");
    let o = polyaut(&["--format=record", "lnd-check", "[x2^2; 0] d/dx"]);
    assert_eq!(stdout(&o), "verdict=certified\norders=2,1\n");
    let o = polyaut(&["lnd-check", "[x2; x1] d/dx", "--max-power", "6"]);
    assert_eq!(
        (code(&o), stdout(&o)),
        (1, "NOT-NILPOTENT-WITHIN(6)\n".to_string())
    );
    let o = polyaut(&["classify", "[x2^2; 0] d/dx"]);
    assert_eq!(stdout(&o), "axis=1 gamma=(0,2) c=1 character=(1,-2)\n");
    assert_eq!(code(&polyaut(&["classify", "[x2; x1] d/dx"])), 1);
}

#[test]
fn conjugation_and_theta() {
    let o = polyaut(&["conj", "[x1; x2 - 1]", "[x1 + x2^2; x2]"]);
    assert_eq!(stdout(&o), "[x2^2 + x1 + 2*x2 + 1; x2]\n");
    let o = polyaut(&["theta", "[x1; x2]", "[x1 + i*x2; x2]", "--tau", "conj"]);
    assert_eq!(stdout(&o), "[x1 - i*x2; x2]\n");
    assert_eq!(code(&polyaut(&["conj", "[x1^2; x2]", "[x1; x2]"])), 1);
}

#[test]
fn plane_factorization_evaluates_back() {
    let o = polyaut(&["jvk", "[x2; x1 + x2^2]"]);
    assert_eq!(code(&o), 0);
    let word = stdout(&o).trim().to_string();
    let e = polyaut(&["--format=record", "word-eval", &word]);
    assert!(
        stdout(&e).starts_with("map=[x2; x2^2 + x1]\n"),
        "{}",
        stdout(&e)
    );
    let o = polyaut(&["--format=record", "jvk", "[x1 + x2^2; x2]"]);
    assert_eq!(stdout(&o), "word=E1{x2^2}\nfactors=1\ndegree_trace=2,1\n");
}

#[test]
fn centralizer_verdicts() {
    let o = polyaut(&[
        "centralizer",
        "--n",
        "2",
        "--k",
        "3",
        "--deg",
        "2",
        "--full-rank",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "forced: support = {(1,0)},{(0,1)}; centralizer = D2\n"
    );
    let o = polyaut(&[
        "--format=record",
        "centralizer",
        "--n",
        "2",
        "--k",
        "2",
        "--deg",
        "3",
        "--full-rank",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("counterexamples=0\n"));
    // odd maps such as x1 + x2^3 commute with -id
    let o = polyaut(&["centralizer", "--n", "2", "--k", "2", "--deg", "3"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn character_commands() {
    assert_eq!(
        stdout(&polyaut(&["xu-enum", "2", "1"])),
        "(1,0)\n(1,-1)\n(0,1)\n(-1,1)\n"
    );
    assert_eq!(code(&polyaut(&["dominance", "(0,0)", "(1,-1)"])), 0);
    assert_eq!(code(&polyaut(&["dominance", "(1,-1)", "(0,0)"])), 1);
    assert_eq!(
        stdout(&polyaut(&["translation-witness", "(1,0,-2)"])),
        "(0,0,-1)\n"
    );
    assert_eq!(code(&polyaut(&["translation-witness", "(1,0)"])), 1);
}

#[test]
fn locally_finite_verdicts() {
    let o = polyaut(&["locally-finite", "[x2; x1 + x2^2]"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("NOT-LOCALLY-FINITE"));
    let o = polyaut(&["--format=record", "locally-finite", "[x2; x1]"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("dim=2\n"));
}

#[test]
fn lemma_suite_passes_and_mutation_fails() {
    let o = polyaut(&["lemma-suite", "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("seed 3\n"));
    let o = polyaut(&["--format=record", "lemma-suite", "--mutate"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("b-formula-oracle.passed=false\n"));
    assert!(out.contains("flow-group-law.counterexample="));
}
