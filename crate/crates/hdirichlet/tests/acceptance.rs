//! Runs every acceptance criterion, prints one pass/fail line each and exits
//! non-zero if any fails.

use hdirichlet::acceptance::run_all;
use std::process::ExitCode;

fn main() -> ExitCode {
    let reports = run_all();
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", reports.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
