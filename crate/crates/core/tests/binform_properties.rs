//! The substitution action on binary forms and on surface equations.

use dp1::binform::{BinaryForm, LinearMap2};
use dp1::normalform::{build_unchecked, random_params, NormalFormCase};
use dp1::surface::Substitution;
use dp1::FieldCtx;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CASES: u32 = 1_000;

fn ctx() -> FieldCtx {
    FieldCtx::new(4).unwrap()
}

fn form(d: usize, rng: &mut ChaCha8Rng) -> BinaryForm {
    let k = ctx();
    BinaryForm::new(k, (0..=d).map(|_| k.random(rng)).collect())
}

fn map(rng: &mut ChaCha8Rng) -> LinearMap2 {
    let k = ctx();
    loop {
        if let Ok(m) = LinearMap2::new(k.random(rng), k.random(rng), k.random(rng), k.random(rng)) {
            return m;
        }
    }
}

fn substitution(rng: &mut ChaCha8Rng) -> Substitution {
    let sh = Substitution::shift(form(1, rng), form(2, rng), form(3, rng));
    Substitution::linear(map(rng)).compose(&sh)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn action_respects_composition(seed in any::<u64>(), d in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, a, b) = (form(d, &mut rng), map(&mut rng), map(&mut rng));
        prop_assert_eq!(f.substitute(&a).substitute(&b), f.substitute(&a.compose(&b)));
        prop_assert_eq!(f.substitute(&LinearMap2::identity(ctx())), f.clone());
        prop_assert_eq!(f.substitute(&a).substitute(&a.inverse()), f);
    }

    #[test]
    fn action_is_a_ring_map(seed in any::<u64>(), d in 0usize..6, e in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g, h, a) = (form(d, &mut rng), form(e, &mut rng), form(d, &mut rng), map(&mut rng));
        prop_assert_eq!(f.mul(&g).substitute(&a), f.substitute(&a).mul(&g.substitute(&a)));
        prop_assert_eq!(f.add(&h).unwrap().substitute(&a), f.substitute(&a).add(&h.substitute(&a)).unwrap());
        let c = ctx().random(&mut rng);
        prop_assert_eq!(f.scale(c).substitute(&a), f.substitute(&a).scale(c));
    }

    #[test]
    fn action_matches_evaluation(seed in any::<u64>(), d in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, a) = (form(d, &mut rng), map(&mut rng));
        let (u0, v0) = (ctx().random(&mut rng), ctx().random(&mut rng));
        let (u1, v1) = a.apply_vec(u0, v0);
        prop_assert_eq!(f.substitute(&a).eval_uv(u0, v0), f.eval_uv(u1, v1));
    }

    #[test]
    fn surface_substitutions_compose(seed in any::<u64>(), c in 0usize..14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = build_unchecked(&random_params(NormalFormCase::ALL[c], ctx(), &mut rng));
        let (p, q) = (substitution(&mut rng), substitution(&mut rng));
        prop_assert_eq!(s.apply_substitution(&p).apply_substitution(&q), s.apply_substitution(&p.compose(&q)));
        prop_assert_eq!(s.apply_substitution(&p).apply_substitution(&p.inverse()), s.clone());
        prop_assert_eq!(s.apply_substitution(&Substitution::identity(ctx())), s);
    }
}
