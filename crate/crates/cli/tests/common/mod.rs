#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

/// One CLI invocation with a golden transcript.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub env: &'static [(&'static str, &'static str)],
    /// Schema the stdout must satisfy (for `--json` cases).
    pub schema: Option<&'static str>,
}

const fn case(name: &'static str, args: &'static [&'static str]) -> Case {
    Case { name, args, env: &[], schema: None }
}

const fn json_case(name: &'static str, args: &'static [&'static str], schema: &'static str) -> Case {
    Case { name, args, env: &[], schema: Some(schema) }
}

pub const CASES: &[Case] = &[
    case("char_fine_e", &["char-fine", "--p", "3", "--e", "2,0,3,1"]),
    case("char_fine_unit", &["char-fine", "--p", "3", "--e", "0,0"]),
    case("char_fine_negative", &["char-fine", "--p", "3", "--e", "0,-1"]),
    case("char_fine_bad_prime", &["char-fine", "--p", "9", "--e", "1"]),
    case("char_fine_record", &["char-fine", "--record", "fixtures/synthetic1.json"]),
    json_case("char_fine_json", &["--json", "char-fine", "--record", "fixtures/ordinary1.json"], "report"),
    case("char_pm_gcd_e", &["char-pm-gcd", "--p", "3", "--e", "2,0,3,1"]),
    case("char_pm_gcd_trailing", &["char-pm-gcd", "--p", "3", "--e", "2,0,0"]),
    case("char_pm_gcd_ap", &["char-pm-gcd", "--record", "fixtures/bad_ap.json"]),
    json_case("char_pm_gcd_json", &["--json", "char-pm-gcd", "--record", "fixtures/synthetic2.json"], "report"),
    case("bezout_1", &["bezout-pm", "--p", "3", "--n", "1"]),
    case("bezout_2", &["bezout-pm", "--p", "3", "--n", "2"]),
    case("bezout_0", &["bezout-pm", "--p", "3", "--n", "0"]),
    case("bezout_exhausted", &["bezout-pm", "--p", "5", "--n", "3"]),
    Case {
        name: "bezout_env_precision",
        args: &["bezout-pm", "--p", "5", "--n", "3"],
        env: &[("ITK_PRECISION", "40,200")],
        schema: None,
    },
    json_case("bezout_json", &["--json", "bezout-pm", "--p", "5", "--n", "2"], "bezout"),
    case("coinvariant_27", &["coinvariant-order", "--p", "3", "--c", "2", "--n", "1"]),
    case("coinvariant_infinite", &["coinvariant-order", "--p", "3", "--c", "1", "--n", "1"]),
    json_case("coinvariant_json", &["--json", "coinvariant-order", "--p", "5", "--c", "3", "--n", "1"], "coinvariant_order"),
    case("weierstrass_text", &["weierstrass", "--input", "fixtures/f_c.json"]),
    json_case("weierstrass_json", &["--json", "weierstrass", "--input", "fixtures/f_a.json"], "weierstrass"),
    case("iota_text", &["iota", "--input", "fixtures/f_a.json"]),
    json_case("iota_json", &["--json", "iota", "--input", "fixtures/f_a.json"], "lambda_element"),
    case("cyclo_gcd_text", &["cyclo-gcd", "--f", "fixtures/f_b.json", "--g", "fixtures/f_c.json"]),
    json_case("cyclo_gcd_json", &["--json", "cyclo-gcd", "--f", "fixtures/f_b.json", "--g", "fixtures/f_c.json"], "cyclo_gcd"),
    case("cyclo_gcd_mismatch", &["cyclo-gcd", "--f", "fixtures/f_a.json", "--g", "fixtures/f_c.json"]),
    case(
        "kp_match",
        &["kp-check", "--record", "fixtures/synthetic1.json", "--lp-plus", "fixtures/lp_plus_1.json", "--lp-minus", "fixtures/lp_minus_1.json"],
    ),
    case(
        "kp_corrupt",
        &["kp-check", "--record", "fixtures/synthetic1.json", "--lp-plus", "fixtures/lp_plus_1.json", "--lp-minus", "fixtures/lp_minus_1_corrupt.json"],
    ),
    json_case(
        "kp_json",
        &["--json", "kp-check", "--record", "fixtures/synthetic1.json", "--lp-plus", "fixtures/lp_plus_1.json", "--lp-minus", "fixtures/lp_minus_1.json", "--n-max", "3"],
        "report",
    ),
    case("verify_bad", &["verify-record", "fixtures/bad.json"]),
    case(
        "verify_many",
        &["verify-record", "--jobs", "JOBS", "fixtures/synthetic1.json", "fixtures/bad.json", "fixtures/synthetic2.json", "fixtures/bad_jump.json", "fixtures/ordinary1.json", "fixtures/bad_ap.json", "fixtures/missing.json"],
    ),
    json_case(
        "verify_many_json",
        &["--json", "verify-record", "--jobs", "JOBS", "fixtures/synthetic1.json", "fixtures/synthetic2.json", "fixtures/ordinary1.json"],
        "verify_record",
    ),
];

/// Exit code, stdout and stderr in one transcript. `JOBS` in the argument
/// list is replaced by `jobs`.
pub fn run_case(case: &Case, jobs: usize) -> String {
    let args: Vec<String> = case
        .args
        .iter()
        .map(|a| if *a == "JOBS" { jobs.to_string() } else { a.to_string() })
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_itk"))
        .args(&args)
        .current_dir(workspace_root())
        .env_remove("ITK_PRECISION")
        .envs(case.env.iter().copied())
        .output()
        .expect("binary runs");
    format!(
        "$ itk {}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        case.args.join(" "),
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    )
}

pub fn golden_path(case: &Case) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{}.out", case.name))
}

pub fn stdout_of(transcript: &str) -> &str {
    let start = transcript.find("--- stdout\n").unwrap() + "--- stdout\n".len();
    let end = transcript.find("--- stderr\n").unwrap();
    &transcript[start..end]
}
