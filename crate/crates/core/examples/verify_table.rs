//! Reproduce the classification table: every row plus the generic surfaces.
//!
//! `cargo run --release --example verify_table -- [seed] [row labels...]`

use dp1::verify::run_all;

fn main() -> dp1::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let labels: Vec<String> = args.collect();
    let report = run_all(seed, (!labels.is_empty()).then_some(labels.as_slice()))?;
    for line in report.summary_lines() {
        println!("{line}");
    }
    println!("overall: {}", if report.passed { "PASS" } else { "FAIL" });
    Ok(())
}
