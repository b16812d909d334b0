//! ADE singularities of the branch surface R for every case.

use dp1::normalform::{build, r_singularities, sample_valid_params, NormalFormCase};
use dp1::FieldCtx;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dp1::Result<()> {
    let ctx = FieldCtx::new(4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in NormalFormCase::ALL {
        let s = build(&sample_valid_params(case, ctx, &mut rng)?)?;
        let recs = r_singularities(&s)?;
        let list: Vec<String> = recs.iter().map(|r| format!("{r:?}")).collect();
        println!("({case:>2}) {}", list.join(", "));
    }
    Ok(())
}
