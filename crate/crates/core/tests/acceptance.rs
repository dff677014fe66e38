//! Acceptance suite. Prints one PASS/FAIL line per criterion with detail
//! lines underneath, and exits non-zero if any criterion fails.
//!
//! `cargo test -p sr2 --test acceptance`. Set `ACCEPTANCE_SEED` to vary the
//! random identity set (default 0).

use std::process::ExitCode;

use sr2::acceptance;

fn main() -> ExitCode {
    let seed = std::env::var("ACCEPTANCE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
    let results = acceptance::run_all(seed);
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.passed).map(|r| r.number).collect();
    println!("\nacceptance: {} passed, {} failed", results.len() - failed.len(), failed.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
