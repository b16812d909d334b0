//! Singular fibers of the elliptic fibration for every case.

use dp1::fibration::fiber_survey_split;
use dp1::normalform::{build, sample_valid_params, NormalFormCase};
use dp1::FieldCtx;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dp1::Result<()> {
    let ctx = FieldCtx::new(4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for case in NormalFormCase::ALL {
        // Resample until Δ splits inside the modulus table.
        let mut tries = 1;
        let rep = loop {
            let s = build(&sample_valid_params(case, ctx, &mut rng)?)?;
            let rep = fiber_survey_split(&s)?;
            if rep.split || tries == 32 {
                break rep;
            }
            tries += 1;
        };
        println!(
            "({case:>2}) nodal {:>2} cuspidal {} over GF(2^{:<2}) after {tries} draw(s)  cusps at {:?}",
            rep.nodal(),
            rep.cuspidal(),
            rep.field_k,
            rep.cuspidal_points()
        );
    }
    Ok(())
}
