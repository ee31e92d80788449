//! Acceptance run: one pass/fail line per criterion, nonzero exit if any fail.

use std::process::{Command, ExitCode};
use std::time::Instant;

use jostkohn_cli::criteria::run_one;

const GATE_BUDGET_SECONDS: f64 = 120.0;

fn gate() -> (bool, String) {
    let dir = std::env::temp_dir().join(format!("jostkohn-acceptance-{}", std::process::id()));
    let _ = std::fs::create_dir_all(&dir);
    let out = dir.join("validate.json");
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_jostkohn"))
        .args(["validate", "--no-timestamp", "--output"])
        .arg(&out)
        .status();
    let seconds = start.elapsed().as_secs_f64();
    let _ = std::fs::remove_dir_all(&dir);
    match status {
        Ok(s) => {
            let ok = s.code() == Some(0) && seconds < GATE_BUDGET_SECONDS;
            (ok, format!("validate exit {:?} in {seconds:.2} s (budget {GATE_BUDGET_SECONDS} s)", s.code()))
        }
        Err(e) => (false, format!("could not launch validate: {e}")),
    }
}

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=8u8 {
        let r = run_one(id, false);
        println!("{}", r.summary());
        if !r.passed {
            failed.push(id);
        }
    }
    let (ok, detail) = gate();
    println!("[{}] 9 validate gate ({detail})", if ok { "PASS" } else { "FAIL" });
    if !ok {
        failed.push(9);
    }
    if failed.is_empty() {
        println!("acceptance: all 9 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
