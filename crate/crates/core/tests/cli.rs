use std::process::Command;

use numcalc::cli::{run, EXIT_INCONCLUSIVE, EXIT_INVALID, EXIT_OK, EXIT_PARSE};

fn binary(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_numcalc"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn exit_codes_from_the_binary() {
    let (code, out, _) = binary(&[
        "integrate",
        "--expr",
        "x^3",
        "--var",
        "x",
        "--from",
        "0",
        "--to",
        "1",
        "--rule",
        "simpson",
        "--n",
        "2",
        "--quiet",
    ]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "0.25\n"));
    let (code, out, err) = binary(&["limit", "--expr", "2 +", "--var", "x", "--at", "0"]);
    assert_eq!(code, EXIT_PARSE);
    assert!(out.contains("offset 3"));
    assert_eq!(out, err);
    let (code, _, _) = binary(&[
        "limit", "--expr", "x", "--var", "x", "--side", "sideways", "--at", "0",
    ]);
    assert_eq!(code, EXIT_INVALID);
    let (code, out, _) = binary(&["series", "--term", "1/k", "--index", "k"]);
    assert_eq!(code, EXIT_INCONCLUSIVE);
    assert!(out.contains("Inconclusive"));
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = [
        "limit",
        "--expr",
        "sin(x)",
        "--var",
        "x",
        "--to-infinity",
        "plus",
        "--perturb",
        "--seed",
        "11",
        "--json",
        "--trace",
    ];
    let first = binary(&args);
    assert_eq!(first, binary(&args));
    let in_process = run(std::iter::once("numcalc").chain(args));
    assert_eq!(first.1, in_process.stdout);
}
