//! Build one surface per normal-form case and report its defining conditions.
//!
//! `cargo run --example build_case -- [seed]`

use dp1::normalform::{build, sample_valid_params, validate_conditions, NormalFormCase};
use dp1::FieldCtx;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dp1::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctx = FieldCtx::new(4)?;
    for case in NormalFormCase::ALL {
        let p = sample_valid_params(case, ctx, &mut rng)?;
        let s = build(&p)?;
        println!("({case}) {}  branch {}", p.to_json(), s.branch_type()?.label());
        println!("     a1 = {}   a3 = {}", s.a1, s.a3);
    }

    // A violated condition is reported by name.
    let bad = dp1::normalform::NormalFormParams::parse_assignments(NormalFormCase::C4, ctx, "a=1,b=2,c=3,d=0,e=1")?;
    for c in validate_conditions(&bad) {
        println!("(4) with d = 0 violates {c}");
    }
    Ok(())
}
