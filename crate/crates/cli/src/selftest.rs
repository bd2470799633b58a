use clap::Parser;
use serde_json::{json, Value};
use vf_core::Result;

use crate::commands::Outcome;
use crate::{report, Cli};

struct Case {
    name: &'static str,
    argv: &'static [&'static str],
    /// JSON pointer into the result and its expected value.
    expect: &'static [(&'static str, &'static str)],
}

const CASES: &[Case] = &[
    Case {
        name: "cusp b-function",
        argv: &["bfun", "--vars", "x,y", "--f", "x^2 + y^3"],
        expect: &[("/bfunction/factored", r#""(s+1)(s+5/6)(s+7/6)""#), ("/certificate/verified", "true")],
    },
    Case {
        name: "quadric b-function",
        argv: &["bfun", "--vars", "x,y,z", "--f", "x^2 + y^2 + z^2"],
        expect: &[("/bfunction/factored", r#""(s+1)(s+3/2)""#)],
    },
    Case {
        name: "cusp multiplier ideal",
        argv: &["hmi", "--vars", "x,y", "--f", "x^2 + y^3", "--alpha", "9/10", "--deg-bound", "4"],
        expect: &[("/generators", r#"["y","x"]"#)],
    },
    Case {
        name: "cusp level-two higher multiplier ideal",
        argv: &["hmi", "--vars", "x,y", "--f", "x^2 + y^3", "--k", "2", "--alpha", "9/10", "--deg-bound", "6"],
        expect: &[("/generators", r#"["x^2*y","x^3","x*y^3","y^5"]"#)],
    },
    Case {
        name: "cusp family limit",
        argv: &["family-limit", "--gens", "x^3; x^2*y^2; x*y^3; y^4 - (2*beta+1)*x^2*y", "--at", "5/6"],
        expect: &[
            ("/fibers/infinity/value", r#"["x^2*y","x^3","x*y^3","y^5"]"#),
            ("/fibers/infinity/colength", "9"),
            ("/fibers/5~16/colength", "9"),
        ],
    },
    Case {
        name: "smooth limit check",
        argv: &["thm12-check", "--vars", "x", "--f", "x", "--alpha", "1", "--deg-bound", "3"],
        expect: &[("/equal", "true")],
    },
];

fn execute(argv: &[&str]) -> Result<(Outcome, Value)> {
    let mut full = vec!["vf"];
    full.extend_from_slice(argv);
    let cli = Cli::try_parse_from(&full).map_err(|e| vf_core::Error::Invalid(e.to_string()))?;
    let o = crate::run(cli.command, &cli.common)?;
    let owned: Vec<String> = argv.iter().map(|s| s.to_string()).collect();
    let r = report(cli.command, &owned, &o);
    Ok((o, r))
}

pub fn run_corpus() -> Vec<Value> {
    CASES
        .iter()
        .map(|case| {
            let first = execute(case.argv);
            let second = execute(case.argv);
            match (first, second) {
                (Ok((o, r1)), Ok((_, r2))) => {
                    let mismatches: Vec<String> = case
                        .expect
                        .iter()
                        .filter(|(ptr, want)| {
                            let want: Value = serde_json::from_str(want).expect("valid expectation");
                            o.result.pointer(ptr) != Some(&want)
                        })
                        .map(|(ptr, _)| ptr.to_string())
                        .collect();
                    let deterministic = serde_json::to_string(&r1).ok() == serde_json::to_string(&r2).ok();
                    json!({
                        "name": case.name,
                        "passed": o.passed && mismatches.is_empty() && deterministic,
                        "deterministic": deterministic,
                        "mismatches": mismatches,
                    })
                }
                (Err(e), _) | (_, Err(e)) => json!({"name": case.name, "passed": false, "error": e.to_string()}),
            }
        })
        .collect()
}

pub fn run() -> Result<Outcome> {
    let cases = run_corpus();
    let passed = cases.iter().all(|c| c["passed"] == json!(true));
    let text = cases
        .iter()
        .map(|c| format!("{} {}\n", if c["passed"] == json!(true) { "PASS" } else { "FAIL" }, c["name"].as_str().unwrap_or("")))
        .collect();
    Ok(Outcome {
        result: json!({"cases": cases}),
        text,
        passed,
    })
}
