//! The group `H` of substitutions `(σ, x ↦ x + b2)` preserving `a1x + a3`.

use crate::binform::{BinaryForm, LinearMap2};
use crate::gf2k::{FieldCtx, FieldElement};
use crate::surface::BranchType;

use super::AutTuple;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HElement {
    pub sigma: LinearMap2,
    pub b2: BinaryForm,
}

impl HElement {
    /// The image of an automorphism tuple in `H`.
    pub fn of(t: &AutTuple) -> Self {
        HElement { sigma: t.sigma, b2: t.b2.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.is_identity() && self.b2.is_zero()
    }

    /// Definitional test: `σ*a1 = a1` and `σ*a3 + a3 = a1·b2` for the canonical pair.
    pub fn preserves(&self, bt: BranchType) -> bool {
        let (a1, a3) = bt.canonical(self.sigma.ctx());
        a1.substitute(&self.sigma) == a1 && &a3.substitute(&self.sigma) + &a3 == a1.mul(&self.b2)
    }
}

fn quadratics(ctx: FieldCtx) -> impl Iterator<Item = BinaryForm> + Clone {
    let q = ctx.order();
    (0..q * q * q).map(move |i| BinaryForm::new(ctx, vec![ctx.el(i % q), ctx.el(i / q % q), ctx.el(i / (q * q))]))
}

fn map(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Option<LinearMap2> {
    LinearMap2::new(a, b, c, d).ok()
}

/// The σ-part of `H` over `ctx`, following the case constraints.
pub fn sigma_part(bt: BranchType, ctx: FieldCtx) -> Vec<LinearMap2> {
    let els: Vec<FieldElement> = ctx.elements().collect();
    let (z, o) = (ctx.zero(), ctx.one());
    let cubes: Vec<FieldElement> = o.cube_roots();
    let mut out = Vec::new();
    match bt {
        BranchType::TwistedCubic => {
            for &g in &els {
                for &d in &cubes {
                    out.extend(map(o, z, g, d));
                }
            }
        }
        BranchType::LineConic => {
            for &g in &els {
                for &d in els.iter().filter(|d| !d.is_zero()) {
                    out.extend(map(o, z, g, d));
                }
            }
        }
        BranchType::ThreeLines => {
            for &a in &els {
                for &b in &els {
                    for &c in &els {
                        for &d in &els {
                            let ok = (a * c * (a + c)).is_zero()
                                && (b * d * (b + d)).is_zero()
                                && (a * a * d + b * c * c).is_one()
                                && (a * d * d + b * b * c).is_one();
                            if ok {
                                out.extend(map(a, b, c, d));
                            }
                        }
                    }
                }
            }
        }
        BranchType::DoubleLineLine => {
            for &a in els.iter().filter(|a| !a.is_zero()) {
                out.extend(map(a, z, z, (a * a).inv().expect("nonzero")));
            }
        }
        BranchType::TripleLine => {
            for &a in &cubes {
                for &g in &els {
                    for &d in els.iter().filter(|d| !d.is_zero()) {
                        out.extend(map(a, z, g, d));
                    }
                }
            }
        }
    }
    out
}

/// All of `H` over `ctx`, lazily; `b2` runs over all quadratics in cases (3)–(5).
pub fn stabilizer_h(bt: BranchType, ctx: FieldCtx) -> Box<dyn Iterator<Item = HElement>> {
    let sig = sigma_part(bt, ctx);
    match bt {
        BranchType::TwistedCubic => Box::new(sig.into_iter().map(move |s| {
            let (g, d) = (s.gamma, s.delta);
            let b2 = BinaryForm::new(ctx, vec![g * g * g, g * g * d, g * d * d]);
            HElement { sigma: s, b2 }
        })),
        BranchType::LineConic => {
            Box::new(sig.into_iter().map(move |s| HElement { sigma: s, b2: BinaryForm::zero(ctx, 2) }))
        }
        _ => {
            let qs = quadratics(ctx);
            Box::new(sig.into_iter().flat_map(move |s| qs.clone().map(move |b2| HElement { sigma: s, b2 })))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binform::LinearMap2;

    fn brute(bt: BranchType, ctx: FieldCtx) -> usize {
        let els: Vec<_> = ctx.elements().collect();
        let mut n = 0;
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    for &d in &els {
                        let Ok(s) = LinearMap2::new(a, b, c, d) else { continue };
                        n += quadratics(ctx).filter(|b2| HElement { sigma: s, b2: b2.clone() }.preserves(bt)).count();
                    }
                }
            }
        }
        n
    }

    #[test]
    fn orders_match_definition() {
        let f2 = FieldCtx::new(1).unwrap();
        let f4 = FieldCtx::new(2).unwrap();
        assert_eq!(stabilizer_h(BranchType::LineConic, f4).count(), 12);
        assert_eq!(stabilizer_h(BranchType::TwistedCubic, f4).count(), 12);
        assert_eq!(stabilizer_h(BranchType::DoubleLineLine, f2).count(), 8);
        for bt in BranchType::ALL {
            for ctx in [f2, f4] {
                let h: Vec<_> = stabilizer_h(bt, ctx).collect();
                assert!(h.iter().all(|e| e.preserves(bt)), "{bt:?}");
                assert_eq!(h.len(), brute(bt, ctx), "{bt:?} over k={}", ctx.k());
            }
        }
    }
}
