//! Count points of the scheme parametrising automorphisms in case (5) on
//! each parameter stratum.

use dp1::autgroup::saturate_case5_scheme;
use dp1::FieldCtx;

fn main() -> dp1::Result<()> {
    let f4 = FieldCtx::new(2)?;
    let (zero, one, w) = (f4.zero(), f4.one(), f4.generator());
    for (name, a, b, d) in [
        ("a ≠ 0", one, zero, zero),
        ("a, b ≠ 0", one, one, zero),
        ("a = 0, b ≠ 0", zero, one, zero),
        ("a = b = 0", zero, zero, w),
    ] {
        let c = saturate_case5_scheme(a, b, d, 48)?;
        println!(
            "{name:<13} points {:>3}  γ-image {:>2}  λ per γ {:?}  over GF(2^{}) saturated {}",
            c.count, c.gamma_image, c.lambda_per_gamma, c.field_k, c.saturated
        );
    }
    Ok(())
}
