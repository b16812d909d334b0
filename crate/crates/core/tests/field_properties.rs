//! Field axioms, Frobenius, Artin-Schreier solvability and cube roots in
//! GF(2^k), checked on random samples for every degree below.

use dp1::gf2k::Embedding;
use dp1::{FieldCtx, FieldElement};
use proptest::prelude::*;

const DEGREES: [u32; 6] = [1, 2, 3, 4, 6, 12];
const CASES: u32 = 10_000;

fn els(bits: &[u64], k: u32) -> Vec<FieldElement> {
    let ctx = FieldCtx::new(k).unwrap();
    bits.iter().map(|b| ctx.el(b & ((1u64 << k) - 1))).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn field_axioms(bits in prop::array::uniform3(any::<u64>())) {
        for k in DEGREES {
            let v = els(&bits, k);
            let (a, b, c) = (v[0], v[1], v[2]);
            let ctx = a.ctx();
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a + ctx.zero(), a);
            prop_assert_eq!(a * ctx.one(), a);
            prop_assert!((a + a).is_zero());
            if !a.is_zero() {
                prop_assert!((a * a.inv().unwrap()).is_one());
            } else {
                prop_assert!(a.inv().is_err());
            }
        }
    }

    #[test]
    fn frobenius(bits in prop::array::uniform2(any::<u64>())) {
        for k in DEGREES {
            let v = els(&bits, k);
            let (a, b) = (v[0], v[1]);
            prop_assert_eq!(a.frobenius(1), a * a);
            prop_assert_eq!((a + b).frobenius(1), a.frobenius(1) + b.frobenius(1));
            prop_assert_eq!((a * b).frobenius(1), a.frobenius(1) * b.frobenius(1));
            prop_assert_eq!(a.frobenius(k), a);
            prop_assert_eq!(a.sqrt() * a.sqrt(), a);
            prop_assert_eq!(a.pow((1u64 << k) - 1), if a.is_zero() { a } else { a.ctx().one() });
        }
    }

    #[test]
    fn artin_schreier_iff_trace_zero(bits in any::<u64>()) {
        for k in DEGREES {
            let c = els(&[bits], k)[0];
            let roots = c.solve_artin_schreier();
            prop_assert_eq!(roots.is_empty(), !c.trace().is_zero());
            for z in &roots {
                prop_assert_eq!(*z * *z + *z, c);
            }
            if !roots.is_empty() {
                prop_assert_eq!(roots.len(), 2);
            }
            let t = c.trace();
            prop_assert!(t.is_zero() || t.is_one());
        }
    }

    #[test]
    fn cube_root_counts(bits in any::<u64>()) {
        for k in DEGREES {
            let a = els(&[bits], k)[0];
            if a.is_zero() {
                continue;
            }
            let roots = a.pow(3).cube_roots();
            prop_assert_eq!(roots.len() as u64, gcd(3, (1u64 << k) - 1));
            prop_assert!(roots.contains(&a));
            for r in roots {
                prop_assert_eq!(r.pow(3), a.pow(3));
            }
        }
    }

    #[test]
    fn embeddings_are_homomorphisms(bits in prop::array::uniform2(any::<u64>())) {
        for (s, t) in [(1, 2), (2, 4), (2, 6), (3, 6), (4, 12), (6, 12)] {
            let e = Embedding::new(FieldCtx::new(s).unwrap(), FieldCtx::new(t).unwrap()).unwrap();
            let v = els(&bits, s);
            let (a, b) = (v[0], v[1]);
            prop_assert_eq!(e.apply(a + b), e.apply(a) + e.apply(b));
            prop_assert_eq!(e.apply(a * b), e.apply(a) * e.apply(b));
        }
    }
}

#[test]
fn embeddings_compose_along_towers() {
    let (f2, f4, f12) = (FieldCtx::new(2).unwrap(), FieldCtx::new(4).unwrap(), FieldCtx::new(12).unwrap());
    let direct = Embedding::new(f2, f12).unwrap();
    let via = (Embedding::new(f2, f4).unwrap(), Embedding::new(f4, f12).unwrap());
    for a in f2.elements() {
        assert_eq!(direct.apply(a), via.1.apply(via.0.apply(a)));
    }
}
