use std::process::{Command, Output};

fn tgk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tgk"))
        .args(args)
        .env_remove("TGK_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = tgk(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

#[test]
fn seq_prints_tab_separated_values() {
    let text = ok(&["seq", "--n", "5", "--method", "stirling"]);
    assert!(text.trim_end().ends_with("5\t8"), "{text}");
    assert_eq!(text.lines().count(), 5);
    for method in ["egf", "census", "split", "complement"] {
        assert_eq!(ok(&["seq", "--n", "5", "--method", method]), text);
    }
    let all = ok(&["seq", "--n", "6", "--all-methods"]);
    assert!(all.lines().all(|l| l.contains("\tagree")), "{all}");
}

#[test]
fn seq_census_respects_cap() {
    let out = tgk(&["seq", "--n", "11", "--method", "census"]);
    assert_eq!(out.status.code(), Some(2));
    let raised = Command::new(env!("CARGO_BIN_EXE_tgk"))
        .args(["seq", "--n", "4", "--method", "census"])
        .env("TGK_MAX_N", "3")
        .output()
        .unwrap();
    assert_eq!(raised.status.code(), Some(2));
}

#[test]
fn stirling_row_and_value() {
    assert_eq!(ok(&["stirling", "--n", "6", "--k", "3"]).trim(), "225");
    let row = ok(&["stirling", "--n", "3"]);
    assert_eq!(row.trim(), "0\t0\n1\t2\n2\t3\n3\t1");
    assert_eq!(
        tgk(&["stirling", "--n", "2", "--k", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn gamma_and_inverse_round_trip() {
    assert_eq!(
        ok(&["gamma", "--perm", "1,6,2,3,5,7,4"]).trim(),
        "1(2(6) 3 4(5 7))"
    );
    for p in [
        "1",
        "1,2",
        "1,3,2",
        "1,6,2,3,5,7,4",
        "1,7,2,3,5,6,4",
        "1,5,4,3,2",
        "1,2,3,4,5,6",
    ] {
        let tree = ok(&["gamma", "--perm", p]);
        assert_eq!(ok(&["gamma-inv", "--tree", tree.trim()]).trim(), p);
    }
}

#[test]
fn stack_labelings() {
    let east = ok(&["label", "--tree", "((()) () (()()))", "--mode", "eastpush"]);
    assert_eq!(east.trim(), "1(2(7) 3 4(5 6))\n1,7,2,3,5,6,4");
    let west = ok(&["label", "--tree", "((()) () (()()))", "--mode", "westpop"]);
    assert_eq!(west.trim(), "1(2(3) 4 5(6 7))\n1,3,2,4,6,7,5");
}

#[test]
fn avoidance() {
    assert_eq!(
        ok(&["avoid", "--pattern", "213", "--perm", "1,7,2,3,5,6,4"]).trim(),
        "true"
    );
    assert_eq!(
        ok(&["avoid", "--pattern", "213", "--perm", "1,6,2,3,5,7,4"]).trim(),
        "false"
    );
    assert_eq!(
        ok(&["avoid", "--pattern", "312", "--n", "5"])
            .lines()
            .count(),
        14
    );
    assert_eq!(
        tgk(&["avoid", "--pattern", "123", "--n", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn phi_and_prunings() {
    let t1 = "(() (() ((()))))";
    assert_eq!(
        ok(&["phi", "--tree", t1]).trim(),
        "1 + 2*q + 3*q^2 + 4*q^3 + 4*q^4 + 3*q^5 + q^6"
    );
    assert_eq!(
        ok(&["phi", "--tree", t1, "--via", "prunings"]),
        ok(&["phi", "--tree", t1])
    );
    assert_eq!(ok(&["phi", "--tree", t1, "--eval", "1"]).trim(), "18");
    assert_eq!(ok(&["phi", "--tree", t1, "--eval", "2"]).trim(), "273");
    assert_eq!(
        ok(&["phi", "--tree", "(()(()()))", "--eval", "-1"]).trim(),
        "0"
    );
    assert_eq!(
        ok(&["phi", "--tree", "(()(()()))", "--eval", "-1/2"]).trim(),
        "7/16"
    );
    let listing = ok(&["prunings", "--tree", "(()(()()))", "--rgf", "--list"]);
    let lines: Vec<&str> = listing.lines().collect();
    assert_eq!(lines[0], "count\t10");
    assert_eq!(lines[1], "rgf\t1 + 2*q + 3*q^2 + 3*q^3 + q^4");
    assert_eq!(lines.len(), 12);
}

#[test]
fn winner_output() {
    let text = ok(&["winner", "--tree", "(()(()()))"]);
    assert_eq!(text.trim(), "player1\nmove 1 ()");
    assert_eq!(ok(&["winner", "--tree", "((((()))))"]).trim(), "player2");
}

#[test]
fn tamari_commands() {
    let fiber = ok(&["tamari-fiber", "--tree", "((()) () (()()))"]);
    assert!(
        fiber.starts_with("top\t1,7,2,3,5,6,4\nbottom\t1,3,2,4,6,7,5\n"),
        "{fiber}"
    );
    assert_eq!(
        ok(&["tamari-join", "--a", "(()())", "--b", "((()))"]).trim(),
        "((()))"
    );
    assert_eq!(
        ok(&["tamari-meet", "--a", "(()())", "--b", "((()))"]).trim(),
        "(() ())"
    );
    assert_eq!(
        tgk(&["tamari-join", "--a", "(())", "--b", "((()))"])
            .status
            .code(),
        Some(2)
    );
    let report = ok(&["tamari-verify", "--n", "4"]);
    assert!(report.contains("CHECK tamari.pentagon: PASS"), "{report}");
    assert!(!report.contains("FAIL"));
}

#[test]
fn euler_output() {
    let text = ok(&["euler", "--tree", "(())", "--q", "2", "5"]);
    assert_eq!(
        text.trim(),
        "chi_R\t0\nchi_C\t2\npoincare\t1 + q^2\npoints(2)\t3\npoints(5)\t6"
    );
    let loose = tgk(&["euler", "--tree", "(())", "--q", "6"]);
    assert!(loose.status.success());
    assert!(String::from_utf8_lossy(&loose.stderr).contains("warning"));
    assert_eq!(
        tgk(&["euler", "--tree", "(())", "--q", "6", "--strict"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tgk(&["euler", "--tree", "(())", "--q", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn montecarlo_is_reproducible() {
    let args = [
        "montecarlo",
        "--tree",
        "(() (() ((()))))",
        "--q",
        "-0.5",
        "--trials",
        "20000",
        "--seed",
        "3",
    ];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    let mut threaded = vec!["--threads", "1"];
    threaded.extend_from_slice(&args);
    assert_eq!(a, ok(&threaded));
    let default_seed = ok(&[
        "montecarlo",
        "--tree",
        "(())",
        "--q",
        "-0.5",
        "--trials",
        "1000",
    ]);
    assert_eq!(
        default_seed,
        ok(&[
            "montecarlo",
            "--tree",
            "(())",
            "--q",
            "-0.5",
            "--trials",
            "1000",
            "--seed",
            "0"
        ])
    );
    assert_eq!(
        tgk(&["montecarlo", "--tree", "(())", "--q", "0.5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_suite() {
    let out = tgk(&["verify", "--n", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("CHECK ")).count() >= 15);
    assert!(!text.contains(": FAIL"));
    assert_eq!(tgk(&["verify", "--n", "9"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tgk(&["bogus"]).status.code(), Some(2));
    assert_eq!(tgk(&["gamma", "--perm", "2,1"]).status.code(), Some(2));
    assert_eq!(tgk(&["phi", "--tree", "(()"]).status.code(), Some(2));
    assert_eq!(tgk(&["seq"]).status.code(), Some(2));
    assert_eq!(tgk(&["seq", "--n", "0"]).status.code(), Some(2));
    assert!(tgk(&["--help"]).status.success());
}

#[test]
fn json_output_is_one_document() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["seq", "--n", "5"],
        vec!["seq", "--n", "5", "--all-methods"],
        vec!["stirling", "--n", "4"],
        vec!["gamma", "--perm", "1,3,2"],
        vec!["gamma-inv", "--tree", "1(2(3))"],
        vec!["label", "--tree", "(()())", "--mode", "westpop"],
        vec!["avoid", "--pattern", "213", "--n", "4"],
        vec!["phi", "--tree", "(()())", "--eval", "-0.5"],
        vec!["prunings", "--tree", "(()())", "--rgf", "--list"],
        vec!["winner", "--tree", "(()(()()))"],
        vec!["tamari-fiber", "--tree", "(()())"],
        vec!["tamari-join", "--a", "(()())", "--b", "((()))"],
        vec!["tamari-meet", "--a", "(()())", "--b", "((()))"],
        vec!["tamari-verify", "--n", "4"],
        vec!["euler", "--tree", "(()())", "--q", "2", "6"],
        vec![
            "montecarlo",
            "--tree",
            "(()())",
            "--q",
            "-0.5",
            "--trials",
            "100",
        ],
        vec!["verify", "--n", "4"],
    ];
    for args in cases {
        let mut full = vec!["--json"];
        full.extend(args.iter().copied());
        let out = tgk(&full);
        assert!(out.status.success(), "{full:?}");
        let doc: serde_json::Value =
            serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{full:?}: {e}"));
        assert_eq!(doc["command"], args[0], "{full:?}");
        assert_eq!(doc["ok"], true);
    }
    let winner: serde_json::Value =
        serde_json::from_slice(&tgk(&["--json", "winner", "--tree", "(()(()()))"]).stdout).unwrap();
    assert_eq!(winner["winner"], "player1");
    assert_eq!(winner["move"]["index"], 1);
    let err = tgk(&["--json", "verify", "--n", "9"]);
    assert_eq!(err.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_slice(&err.stdout).unwrap();
    assert_eq!(doc["ok"], false);
}
