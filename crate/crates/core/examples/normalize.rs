//! Disguise a normal form by a random change of coordinates, then recover it.

use dp1::binform::{BinaryForm, LinearMap2};
use dp1::normalform::{build, reduce_to_normal_form, sample_valid_params, NormalFormCase};
use dp1::surface::Substitution;
use dp1::FieldCtx;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dp1::Result<()> {
    let ctx = FieldCtx::new(4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in NormalFormCase::ALL {
        let p = sample_valid_params(case, ctx, &mut rng)?;
        let s = build(&p)?;

        let sigma = loop {
            let m = LinearMap2::new(ctx.random(&mut rng), ctx.random(&mut rng), ctx.random(&mut rng), ctx.random(&mut rng));
            if let Ok(m) = m {
                break m;
            }
        };
        let rand_form = |d: usize, rng: &mut ChaCha8Rng| BinaryForm::new(ctx, (0..=d).map(|_| ctx.random(rng)).collect());
        let shift = Substitution::shift(rand_form(1, &mut rng), rand_form(2, &mut rng), rand_form(3, &mut rng));
        let disguised = s.apply_substitution(&Substitution::linear(sigma).compose(&shift));

        let r = reduce_to_normal_form(&disguised)?;
        let back = disguised.embed_to(r.field)?.apply_substitution(&r.chain);
        println!(
            "({case}) → ({}) over GF(2^{})  params {}  chain reproduces: {}",
            r.case,
            r.field.k(),
            r.params.to_json(),
            back == build(&r.params)?
        );
    }
    Ok(())
}
