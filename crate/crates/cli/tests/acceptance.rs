//! Runs every acceptance criterion and prints one PASS/FAIL line for each.

use std::path::Path;
use std::process::{Command, ExitCode};

use polymem::membership::Protocol;
use polymem_cli::verify::{run_criterion, write_fixtures, Criterion};

fn run_bin(args: &[&str], dir: &Path) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_polymem"))
        .args(args)
        .current_dir(dir)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

/// Criterion 10 again, through the binary: each command twice, compared bytewise.
fn binary_determinism() -> Criterion {
    let commands: &[&[&str]] = &[
        &["membership", "--a", "example1_a.json", "--c", "example1_c.json", "--f", "example1_f.json"],
        &["membership", "--a", "cube3_times3.json", "--b", "cube3.json"],
        &["chain", "--b", "square.json", "--t", "2"],
        &["foundation", "--a", "cube3_times3.json", "--b", "cube3.json", "--k", "2"],
        &["koszul", "--b", "triangle.json", "--k", "2"],
        &["osculate", "--a", "triangle.json", "--f", "conic.json"],
    ];
    let check = || -> Result<(), String> {
        let dir = write_fixtures().map_err(|e| e.to_string())?;
        for args in commands {
            if run_bin(args, &dir)? != run_bin(args, &dir)? {
                return Err(format!("{args:?} output differs between runs"));
            }
        }
        let _ = std::fs::remove_dir_all(&dir);
        Ok(())
    };
    let (passed, detail) = match check() {
        Ok(()) => (true, format!("binary output byte-identical for {} commands", commands.len())),
        Err(e) => (false, e),
    };
    Criterion {
        id: 10,
        name: "determinism (binary)",
        passed,
        detail,
    }
}

fn main() -> ExitCode {
    let protocol = Protocol::default();
    println!("acceptance: primes {:?}, seeds {:?}", protocol.primes, protocol.seeds);
    let mut criteria: Vec<Criterion> = (1..=10).map(|id| run_criterion(id, &protocol)).collect();
    criteria.push(binary_determinism());
    for c in &criteria {
        println!("{}", c.line());
    }
    let failed = criteria.iter().filter(|c| !c.passed).count();
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
