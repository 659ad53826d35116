//! Acceptance criteria 1-11, one PASS/FAIL line each. Runs without the libtest harness
//! so the lines always show up in `cargo test` output.

use std::process::{Command, ExitCode};

use marble_gate::repro::{run_criterion, CriterionReport, CRITERIA};

/// Two CLI runs writing the same trace must produce identical files.
fn cli_determinism() -> Result<String, String> {
    let dir = std::env::temp_dir().join(format!("marblegate-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    for i in 0..2 {
        let path = dir.join(format!("t{i}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_marblegate"))
            .args(["simulate", "gate.lmc", "--in", "A=1,B=1", "--trace"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(format!("simulate exited with {}", status.status));
        }
        files.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    if files[0] == files[1] && !files[0].is_empty() {
        Ok(format!("CLI traces identical ({} bytes)", files[0].len()))
    } else {
        Err("CLI traces differ".into())
    }
}

fn line(r: &CriterionReport, extra: &str) -> String {
    let first_bad = r.checks.iter().find(|c| !c.passed);
    let detail = match first_bad {
        Some(c) => format!("{}: measured {}; expected {}", c.name, c.measured, c.expected),
        None => r.checks.first().map(|c| format!("{}: {}", c.name, c.measured)).unwrap_or_default(),
    };
    format!(
        "criterion {:>2} [{}] {}: {}{}",
        r.number,
        if r.passed { "PASS" } else { "FAIL" },
        r.title,
        detail,
        extra
    )
}

fn main() -> ExitCode {
    // libtest-style flags such as --nocapture or a filter are accepted and ignored
    let mut failed = 0;
    for (_, key, _) in CRITERIA {
        let Some(mut report) = run_criterion(key) else { continue };
        let mut extra = String::new();
        if key == "determinism" {
            match cli_determinism() {
                Ok(m) => extra = format!("; {m}"),
                Err(e) => {
                    report.passed = false;
                    extra = format!("; {e}");
                }
            }
        }
        if !report.passed {
            failed += 1;
        }
        println!("{}", line(&report, &extra));
    }
    println!("acceptance: {}/{} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
