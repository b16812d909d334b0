//! Compare the pruned solver with exhaustive search over GF(4).

use dp1::autgroup::{brute_force_aut, enumerate_tuples, tuple_key};
use dp1::normalform::{build, sample_valid_params, NormalFormCase};
use dp1::FieldCtx;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dp1::Result<()> {
    let ctx = FieldCtx::new(2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in NormalFormCase::ALL {
        let s = build(&sample_valid_params(case, ctx, &mut rng)?)?;
        let fast = enumerate_tuples(&s, 2)?;
        let slow = brute_force_aut(&s, ctx)?;
        let same = fast.iter().map(tuple_key).eq(slow.iter().map(tuple_key));
        println!("({case:>2}) solver {:>3}  brute force {:>3}  identical {same}", fast.len(), slow.len());
    }
    Ok(())
}
