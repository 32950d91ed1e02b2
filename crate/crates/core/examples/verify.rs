//! Run the invariant suites over a few systems and rings on a thread pool
//! bounded by `CHEV_THREADS`.
//!
//! `CHEV_THREADS=2 cargo run --example verify`

use chevalley::verify::{run_suite, threads_from_env, Suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases: Vec<(String, String)> =
        ["A2", "B2", "G2"].iter().flat_map(|s| ["Z/4", "Z/5"].iter().map(move |r| (s.to_string(), r.to_string()))).collect();
    let threads = threads_from_env();
    for suite in [Suite::Laws, Suite::Eq1, Suite::Weyl, Suite::Commutator] {
        let report = run_suite(suite, &cases, threads, 0)?;
        println!("{:<10} {:>7} checks  {}", suite.name(), report.checks(), if report.passed() { "ok" } else { "FAILED" });
    }
    let jacobi = run_suite(Suite::Jacobi, &[("F4".into(), "Z".into())], threads, 1)?;
    println!("{:<10} {:>7} checks  {}", "jacobi F4", jacobi.checks(), if jacobi.passed() { "ok" } else { "FAILED" });
    Ok(())
}
