use std::process::ExitCode;

use drinfeld_core::suite::{run_criterion, CRITERIA, DEFAULT_SEED};

fn main() -> ExitCode {
    let mut failed = 0;
    for id in 1..=CRITERIA {
        let r = run_criterion(id, DEFAULT_SEED);
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {:>2}: {} [{:.2}s] {}",
            r.id,
            r.title,
            r.elapsed.as_secs_f64(),
            r.detail
        );
        failed += !r.passed as usize;
    }
    println!("{} of {CRITERIA} criteria passed (seed {DEFAULT_SEED})", CRITERIA as usize - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
