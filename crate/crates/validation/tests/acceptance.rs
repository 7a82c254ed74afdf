//! One line per acceptance criterion; exits non-zero if any criterion fails.

use std::path::PathBuf;
use std::time::Instant;

/// The `tamed` binary sits next to the `deps` directory holding this test.
fn tamed_binary() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let bin = exe
        .parent()?
        .parent()?
        .join(format!("tamed{}", std::env::consts::EXE_SUFFIX));
    bin.is_file().then_some(bin)
}

fn main() {
    let start = Instant::now();
    let criteria = tamed_validation::evaluate_all(tamed_binary().as_deref());
    let mut failed = 0;
    for c in &criteria {
        let verdict = if c.passed() { "PASS" } else { "FAIL" };
        println!("{verdict}  {}", c.label);
        for check in &c.checks {
            let mark = if check.ok { "ok " } else { "BAD" };
            if check.detail.is_empty() {
                println!("      {mark} {}", check.what);
            } else {
                println!("      {mark} {}: {}", check.what, check.detail);
            }
        }
        for note in &c.notes {
            println!("      info {note}");
        }
        if !c.passed() {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria pass ({:.1}s)",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
