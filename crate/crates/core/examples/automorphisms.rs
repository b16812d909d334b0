//! Saturated automorphism groups for a few special surfaces, with the
//! quotient by the Bertini involution and the action on the base P¹.
//!
//! `cargo run --release --example automorphisms -- [row labels...]`

use dp1::autgroup::{check_constraints, default_start, saturate};
use dp1::groupid::identify;
use dp1::normalform::build;
use dp1::verify::{find_spec, sample_row};

fn main() -> dp1::Result<()> {
    let mut labels: Vec<String> = std::env::args().skip(1).collect();
    if labels.is_empty() {
        labels = ["1a-iii", "2d-i", "3-v", "4-i", "1c-generic"].map(String::from).to_vec();
    }
    for label in labels {
        let row = find_spec(&label).ok_or_else(|| dp1::Error::UnknownLabel(label.clone()))?;
        // Some draws need a field beyond the table to saturate; redraw those.
        let mut attempt = 0;
        let res = loop {
            let s = build(&sample_row(&row, 1, attempt)?)?;
            let res = saturate(&s, default_start(&s), 48)?;
            if res.saturated || attempt == 31 {
                break res;
            }
            attempt += 1;
        };
        let g = res.g_quotient()?;
        let (k, i) = res.project_r()?;
        let report = check_constraints(row.case, &res)?;
        println!(
            "{label:<11} |Aut| = {:>3} {:<16} G = {:<14} K = {:<10} I = {:<10} over GF(2^{}) saturated {} constraints {}",
            res.order(),
            res.structure().label(),
            identify(&g).label(),
            identify(&k).label(),
            identify(&i).label(),
            res.field_k,
            res.saturated,
            if report.passed() { "ok" } else { "FAIL" }
        );
    }
    Ok(())
}
