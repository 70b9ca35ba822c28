use std::process::{Command, Output};

fn srknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srknot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = srknot(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn factor_and_invariants() {
    assert_eq!(
        stdout(&["sr", "factor", "--m", "2", "--l", "0", "--p", "0"]),
        "2 - 5*t + 2*t^2\n"
    );
    assert_eq!(
        stdout(&["sr", "factor", "--m", "2", "--l", "-1", "--p", "1"]),
        "2 - 6*t + 9*t^2 - 6*t^3 + 2*t^4\n"
    );
    assert_eq!(
        stdout(&["knot", "invariants", "--poly", "2 - 5*t + 2*t^2"]),
        "delta2=0 det=9 symmetric=true\n"
    );
}

#[test]
fn poly_commands() {
    assert_eq!(
        stdout(&["poly", "eval", "--poly", "2 - 5*t + 2*t^2", "--at", "-1"]),
        "9\n"
    );
    assert_eq!(
        stdout(&["poly", "eval", "--poly", "t^-1", "--at", "2"]),
        "1/2\n"
    );
    assert_eq!(
        stdout(&["poly", "normalize", "--poly", "-t^3 + 2*t^4"]),
        "1 - 2*t\n"
    );
}

#[test]
fn classify_output() {
    assert_eq!(
        stdout(&["sr", "classify", "--poly", "6 - 13*t + 6*t^2"]),
        "NOT_SR obstruction=DELTA2_ONE_FORM\n"
    );
    let text = stdout(&["sr", "classify", "--poly", "2 - 5*t + 2*t^2"]);
    let mut lines = text.lines();
    let head = lines.next().unwrap();
    assert!(head.starts_with("POLY_COMPATIBLE certificates="));
    let n: usize = head.rsplit('=').next().unwrap().parse().unwrap();
    let certs: Vec<_> = lines.collect();
    assert_eq!(certs.len(), n);
    assert!(certs.contains(&"certificate=F(2,0,0)"));
}

#[test]
fn product_and_seifert() {
    assert_eq!(
        stdout(&["sr", "product", "--factors", "F(1,1,1)*F(1,1,1)"]),
        "1 - 4*t + 10*t^2 - 16*t^3 + 19*t^4 - 16*t^5 + 10*t^6 - 4*t^7 + t^8\n"
    );
    let text = stdout(&[
        "seifert", "check", "--m", "3", "--l", "-2", "--eps", "+1,-1,+1",
    ]);
    assert!(text.lines().any(|l| l == "agree=true"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("alexander=")));
    assert_eq!(
        stdout(&["seifert", "alexander", "--matrix", "-1,1;0,-1"]),
        "1 - t + t^2\n"
    );
}

#[test]
fn number_theory_commands() {
    assert_eq!(
        stdout(&["nt", "pairs", "--m", "3", "--n", "1"]),
        "m=3 n=1 admissible=true family=(3,1)\n"
    );
    assert_eq!(
        stdout(&["nt", "pairs", "--m", "5", "--n", "3"]),
        "m=5 n=3 admissible=false\n"
    );
    assert_eq!(
        stdout(&["nt", "scan", "--lemma", "32", "--bounds", "10,10,5,5"]),
        "x=3 u=2 y=2 v=3\nhits=1\n"
    );
    assert_eq!(
        stdout(&["nt", "scan", "--lemma", "34", "--bounds", "6,5"]),
        "part=1 A=2 p=3\npart=2 A=2 q=2\npart=2 A=3 q=2\npart=2 A=5 q=2\nhits=4\n"
    );
    assert_eq!(stdout(&["nt", "factor", "--n", "63"]), "{3,7}\n");
    assert_eq!(
        stdout(&["nt", "det", "--det", "9", "--m", "1"]),
        "a=0 b=2\n"
    );
    assert_eq!(
        stdout(&["nt", "gcd", "--a", "3", "--m", "1", "--n", "1", "--minus"]),
        "2\n"
    );
}

#[test]
fn deterministic_output() {
    let args = [
        "--threads",
        "3",
        "nt",
        "scan",
        "--lemma",
        "36",
        "--bounds",
        "10,4",
    ];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["table", "verify"];
    assert_eq!(srknot(&args).stdout, srknot(&args).stdout);
}

#[test]
fn table_verify_report() {
    let out = srknot(&["table", "verify"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 26);
    assert!(text.contains("row=10_22 delta2=pass det=pass factorization=skip classify=pass"));
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("rows=25 "));
    let all_pass = last.ends_with("failed=0");
    assert_eq!(out.status.success(), all_pass);
}

#[test]
fn exit_codes() {
    assert_eq!(srknot(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(srknot(&["sr", "factor", "--m", "2"]).status.code(), Some(2));
    assert_eq!(
        srknot(&["poly", "normalize", "--poly", "0"]).status.code(),
        Some(1)
    );
    assert_eq!(
        srknot(&["poly", "normalize", "--poly", "2 *"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        srknot(&["sr", "factor", "--m", "1", "--l", "0", "--p", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        srknot(&["nt", "pairs", "--m", "2", "--n", "2"])
            .status
            .code(),
        Some(1)
    );
    let out = srknot(&["poly", "eval", "--poly", "t^-1", "--at", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert_eq!(
        srknot(&["table", "verify", "--corpus", "/nonexistent/table"])
            .status
            .code(),
        Some(1)
    );
}
