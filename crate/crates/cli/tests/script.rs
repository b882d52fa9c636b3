use std::process::Command;

use proptest::prelude::*;

use torsionlab::{execute_text, parse_script, Config, Status};
use torsionlab_core::Error;

fn expr() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![(0u64..20).prop_map(|n| n.to_string()), prop::sample::select(vec!["x", "y", "z"]).prop_map(String::from)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), prop::sample::select(vec!["+", "-", "*"]), inner.clone()).prop_map(|(a, op, b)| format!("{a} {op} {b}")),
            inner.clone().prop_map(|a| format!("({a})")),
            inner.clone().prop_map(|a| format!("-{a}")),
            (inner, 1u32..4).prop_map(|(a, k)| format!("({a})^{k}")),
        ]
    })
}

fn script() -> impl Strategy<Value = String> {
    let field = prop_oneof![Just("QQ".to_string()), prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(|p| format!("GF({p})"))];
    let row = prop::collection::vec(expr(), 1..3);
    let stmt = prop_oneof![
        expr().prop_map(|e| format!("print {e};")),
        (expr(), expr()).prop_map(|(a, b)| format!("assert {a} == {b};")),
        expr().prop_map(|e| format!("let t = {e};")),
        row.prop_map(|r| format!("module M = coker [[{}]] over R;", r.join(", "))),
        Just("print betti(residue_field(R), 2);".to_string()),
        Just("verify thm2.8 R (x,y);".to_string()),
    ];
    (field, prop::collection::vec(stmt, 0..6)).prop_map(|(f, body)| {
        let body: Vec<String> = body.iter().enumerate().map(|(i, s)| s.replace("t =", &format!("t{i} =")).replace("M =", &format!("M{i} ="))).collect();
        format!("ring R = {f}[x,y,z];\n{}\n", body.join("\n"))
    })
}

const TOKENS: &[&str] =
    &["ring", "module", "let", "print", "assert", "verify", "R", "M", "x", "=", "==", "(", ")", "[", "]", ",", ";", "^", "*", "+", "QQ", "GF", "over", "coker", "7", "#", "\n", " ", "@", "e1"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printing_round_trips(src in script()) {
        let parsed = parse_script(&src).unwrap();
        let printed = parsed.to_string();
        let reparsed = parse_script(&printed).unwrap();
        prop_assert_eq!(&parsed, &reparsed);
        prop_assert_eq!(printed, reparsed.to_string());
    }

    #[test]
    fn parsing_never_panics(parts in prop::collection::vec(prop::sample::select(TOKENS), 0..40)) {
        let src = parts.concat();
        if let Err(e) = parse_script(&src) {
            let Error::Parse { line, column, .. } = e else {
                return Err(TestCaseError::fail(format!("non-positional error: {e}")));
            };
            prop_assert!(line >= 1 && column >= 1);
            prop_assert!(line <= src.lines().count().max(1) + 1);
        }
    }

    #[test]
    fn arbitrary_bytes_are_rejected_gracefully(src in "\\PC{0,60}") {
        let _ = parse_script(&src);
    }
}

fn exit_code(src: &str) -> i32 {
    execute_text(src, &Config::default()).exit_code
}

const KOSZUL: &str = "ring R = QQ[x,y];\nmodule K = coker [[x],[y]] over R;\n";

#[test]
fn exit_codes() {
    assert_eq!(exit_code(""), 0);
    assert_eq!(exit_code(&format!("{KOSZUL}assert torsion_free(K);")), 0);
    assert_eq!(exit_code(&format!("{KOSZUL}assert torsion_free(tensor_power(K, 2));")), 1);
    assert_eq!(exit_code(&format!("{KOSZUL}verify thm3.5 K e=1;")), 2);
    assert_eq!(exit_code("ring R = QQ[x,y];\nprint x +;"), 3);
    assert_eq!(exit_code(&format!("{KOSZUL}print tensor(K, 3);")), 3);
}

#[test]
fn failures_do_not_stop_the_run() {
    let r = execute_text(&format!("{KOSZUL}assert is_free(K);\nprint nu(K);"), &Config::default());
    let status: Vec<Status> = r.statements.iter().map(|s| s.status).collect();
    assert_eq!(status, vec![Status::Ok, Status::Ok, Status::Fail, Status::Ok]);
    assert_eq!(r.statements[3].value, Some(serde_json::json!(2)));
}

#[test]
fn malformed_matrix_is_located() {
    let r = execute_text("ring R = QQ[x,y];\nmodule M = coker [[x, y], [x]] over R;\n", &Config::default());
    let e = r.parse_error.expect("ragged matrix is a parse error");
    assert_eq!((e.line, e.column), (Some(2), Some(27)));
    assert!(r.statements.is_empty());
}

#[test]
fn reports_are_deterministic() {
    let src = format!("{KOSZUL}print betti(tensor_power(K, 2), 3);\nring S = GF(3)[x,y];\nprint explore(S, panel=2, cap=2);\n");
    let config = Config { seed: 5, ..Config::default() };
    let a = execute_text(&src, &config).deterministic_json();
    let b = execute_text(&src, &config).deterministic_json();
    assert_eq!(a, b);
}

#[test]
fn binary_exit_status_matches_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fail.tl");
    std::fs::write(&path, format!("{KOSZUL}assert torsion_free(tensor_power(K, 2));\n")).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_torsionlab")).arg("run").arg(&path).arg("--no-cache").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[FAIL]"));
}
