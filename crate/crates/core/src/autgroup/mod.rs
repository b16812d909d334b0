//! Automorphisms as tuples `(b1, b2, b3, σ)` and their enumeration.

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::binform::BinaryForm;
use crate::error::{Error, Result};
use crate::gf2k::{smallest_table_multiple, FieldCtx};
use crate::groupid::{identify, FiniteGroup, GroupId};
use crate::surface::{Substitution, SurfaceEq};

pub mod candidates;
pub mod constraints;
pub mod oracle;
pub mod scheme;
pub mod solve;
pub mod stabilizer;

pub use candidates::sigma_candidates;
pub use constraints::{check_constraints, ConstraintReport};
pub use oracle::brute_force_aut;
pub use scheme::{count_case5_scheme, saturate_case5_scheme, SchemeCount};
pub use stabilizer::{stabilizer_h, HElement};

/// `(b1, b2, b3, σ)` with the composition law of [`Substitution::compose`].
pub type AutTuple = Substitution;

/// Left minus right side of the five defining identities, in the order
/// a1, a2, a3, a4, a6.
pub fn residuals(s: &SurfaceEq, t: &AutTuple) -> [BinaryForm; 5] {
    let sg = &t.sigma;
    let (b1, b2, b3) = (&t.b1, &t.b2, &t.b3);
    let (a1, a2, a3, a4) = (&s.a1, &s.a2, &s.a3, &s.a4);
    let r1 = &a1.substitute(sg) + a1;
    let r2 = &(&(&a2.substitute(sg) + a2) + &a1.mul(b1)) + &(&b1.square() + b2);
    let r3 = &(&a3.substitute(sg) + a3) + &a1.mul(b2);
    let r4 = [a3.mul(b1), a1.mul(b3), b2.square()].iter().fold(&a4.substitute(sg) + a4, |acc, x| &acc + x);
    let b1b2 = b1.mul(b2);
    let b2sq = b2.square();
    let r6 = [
        a4.mul(b2),
        a3.mul(&(b3 + &b1b2)),
        a2.mul(&b2sq),
        a1.mul(&(&b2.mul(b3) + &b1.mul(&b2sq))),
        b3.square(),
        b2sq.mul(b2),
        b1.square().mul(&b2sq),
    ]
    .iter()
    .fold(&s.a6.substitute(sg) + &s.a6, |acc, x| &acc + x);
    [r1, r2, r3, r4, r6]
}

pub fn is_automorphism(s: &SurfaceEq, t: &AutTuple) -> bool {
    residuals(s, t).iter().all(|r| r.is_zero())
}

/// Sort key: coefficient bits in serialization order.
pub fn tuple_key(t: &AutTuple) -> Vec<u64> {
    let sg = &t.sigma;
    let mut k = vec![sg.alpha.bits(), sg.beta.bits(), sg.gamma.bits(), sg.delta.bits()];
    for f in [&t.b1, &t.b2, &t.b3] {
        k.extend(f.coeffs().iter().map(|c| c.bits()));
    }
    k
}

/// All automorphism tuples over `GF(2^k)`, sorted by [`tuple_key`].
pub fn enumerate_tuples(s: &SurfaceEq, k: u8) -> Result<Vec<AutTuple>> {
    Ok(enumerate_tuples_split(s, k)?.0)
}

/// As [`enumerate_tuples`], with the extension degree the σ-eliminants still need.
pub fn enumerate_tuples_split(s: &SurfaceEq, k: u8) -> Result<(Vec<AutTuple>, usize)> {
    let ctx = FieldCtx::new(k as u32)?;
    let s = s.embed_to(ctx)?;
    let bt = s.branch_type()?;
    let (a1, a3) = bt.canonical(ctx);
    if s.a1 != a1 || s.a3 != a3 {
        return Err(Error::NotNormalForm(format!("(a1, a3) is not the canonical pair of {}", bt.label())));
    }
    let (sigmas, split) = candidates::sigma_candidates_split(&s, bt)?;
    let found: Vec<Vec<AutTuple>> = sigmas.par_iter().map(|m| solve::complete_sigma(&s, m)).collect::<Result<_>>()?;
    let mut out: Vec<AutTuple> = found.into_iter().flatten().collect();
    if let Some(t) = out.iter().find(|t| !is_automorphism(&s, t)) {
        return Err(Error::Internal(format!("solver returned a non-automorphism {:?}", t.to_json())));
    }
    out.sort_by_key(tuple_key);
    out.dedup();
    Ok((out, split))
}

/// `Aut(X)` over a fixed field, with its Cayley table.
#[derive(Clone, Debug)]
pub struct AutGroupResult {
    pub surface: SurfaceEq,
    pub elements: Vec<AutTuple>,
    pub group: FiniteGroup,
    pub field_k: u8,
    pub saturated: bool,
    pub identity: u32,
    pub bertini: u32,
    /// Orders seen at each saturation level.
    pub levels: Vec<(u8, usize)>,
}

impl AutGroupResult {
    /// Builds the table; fails if the set is not closed or β is missing.
    pub fn from_tuples(s: &SurfaceEq, elements: Vec<AutTuple>, field_k: u8) -> Result<Self> {
        let s = s.embed_to(FieldCtx::new(field_k as u32)?)?;
        let index: HashMap<Vec<u64>, u32> = elements.iter().enumerate().map(|(i, t)| (tuple_key(t), i as u32)).collect();
        let find = |t: &AutTuple| -> Result<u32> {
            index.get(&tuple_key(t)).copied().ok_or_else(|| Error::Internal("tuple set not closed under composition".into()))
        };
        let rows: Vec<Vec<u32>> = elements
            .par_iter()
            .map(|a| elements.iter().map(|b| find(&a.compose(b))).collect::<Result<Vec<u32>>>())
            .collect::<Result<_>>()?;
        let group = FiniteGroup::from_table(elements.len(), rows.concat())?;
        let identity = find(&AutTuple::identity(s.ctx()))?;
        let bertini = find(&s.bertini())?;
        if identity != group.identity() {
            return Err(Error::Internal("identity tuple is not the table identity".into()));
        }
        Ok(AutGroupResult { surface: s, elements, group, field_k, saturated: false, identity, bertini, levels: Vec::new() })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn structure(&self) -> GroupId {
        identify(&self.group)
    }

    /// `G(X) = Aut(X)/⟨β⟩`.
    pub fn g_quotient(&self) -> Result<FiniteGroup> {
        let mut n = vec![self.identity, self.bertini];
        n.sort();
        n.dedup();
        Ok(self.group.quotient(&n)?.0)
    }

    /// Elements with projectively trivial σ.
    pub fn kernel_indices(&self) -> Vec<u32> {
        (0..self.order() as u32).filter(|&i| self.elements[i as usize].sigma.is_scalar()).collect()
    }

    /// `(K, I)` for `r: Aut(X) → PGL2`.
    pub fn project_r(&self) -> Result<(FiniteGroup, FiniteGroup)> {
        let k = self.kernel_indices();
        Ok((self.group.subgroup(&k)?, self.group.quotient(&k)?.0))
    }

    /// Elements mapping to the identity of `H` (σ = id and b2 = 0).
    pub fn h_kernel(&self) -> Vec<u32> {
        (0..self.order() as u32)
            .filter(|&i| {
                let t = &self.elements[i as usize];
                t.sigma.is_identity() && t.b2.is_zero()
            })
            .collect()
    }

    pub fn generators(&self) -> Vec<&AutTuple> {
        self.group.generators().into_iter().map(|i| &self.elements[i as usize]).collect()
    }

    pub fn to_json(&self) -> Value {
        let (k, i) = self.project_r().map(|(k, i)| (k.order(), i.order())).unwrap_or((0, 0));
        json!({
            "order": self.order(),
            "structure": self.structure().label(),
            "saturated": self.saturated,
            "field_k": self.field_k,
            "kernel_order": k,
            "image_order": i,
            "levels": self.levels.iter().map(|&(k, n)| json!({"field_k": k, "order": n})).collect::<Vec<_>>(),
            "generators": self.generators().iter().map(|t| t.to_json()).collect::<Vec<_>>(),
        })
    }
}

pub fn enumerate_aut(s: &SurfaceEq, k: u8) -> Result<AutGroupResult> {
    let mut r = AutGroupResult::from_tuples(s, enumerate_tuples(s, k)?, k)?;
    r.levels = vec![(k, r.order())];
    Ok(r)
}

/// The field degrees tried by [`saturate`]: `k_start`, then repeatedly the
/// smallest table degree divisible by twice the previous one, so that each
/// level contains every quadratic extension of the one before.
pub fn saturation_levels(k_start: u8, max_k: u8) -> Vec<u8> {
    let mut out = vec![k_start];
    for _ in 0..2 {
        let last = *out.last().expect("nonempty") as u32;
        match (2 * last <= max_k as u32).then(|| smallest_table_multiple((2 * last) as u8, 0)).flatten() {
            Some(k) if k <= max_k => out.push(k),
            _ => break,
        }
    }
    out
}

/// Smallest table degree over which every σ-eliminant of `s` splits, if any.
pub fn candidate_field_degree(s: &SurfaceEq) -> Result<Option<u8>> {
    let bt = s.branch_type()?;
    let mut k = s.ctx().k();
    for _ in 0..6 {
        let (_, d) = candidates::sigma_candidates_split(&s.embed_to(FieldCtx::new(k as u32)?)?, bt)?;
        if d == 1 {
            return Ok(Some(k));
        }
        match smallest_table_multiple(k, 0).and_then(|_| {
            let want = k as usize * d;
            (want <= 48).then(|| smallest_table_multiple(want as u8, 0)).flatten()
        }) {
            Some(n) => k = n,
            None => return Ok(None),
        }
    }
    Ok(None)
}

/// Default first level: the candidate field, enlarged to contain GF(2^12)
/// when that still leaves room for a second level.
pub fn default_start(s: &SurfaceEq) -> u8 {
    let k = candidate_field_degree(s).ok().flatten().unwrap_or(s.ctx().k());
    let l = crate::poly::lcm(k as usize, 12);
    if l <= 24 && crate::gf2k::has_modulus(l as u32) {
        l as u8
    } else {
        k
    }
}

/// Enumerate over growing fields; saturated iff the last two orders agree and
/// the σ-eliminants split over the last field.
pub fn saturate(s: &SurfaceEq, k_start: u8, max_k: u8) -> Result<AutGroupResult> {
    let levels = saturation_levels(k_start, max_k);
    let mut seen = Vec::new();
    let mut last = Vec::new();
    let mut split = 1;
    for &k in &levels {
        (last, split) = enumerate_tuples_split(s, k)?;
        seen.push((k, last.len()));
    }
    let k = *levels.last().expect("nonempty");
    let mut r = AutGroupResult::from_tuples(s, last, k)?;
    // a plateau only counts if every σ-eliminant split over the last field
    r.saturated = split == 1 && seen.len() >= 2 && seen[seen.len() - 1].1 == seen[seen.len() - 2].1;
    r.levels = seen;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2k::FieldElement;
    use crate::normalform::{build_unchecked, sample_valid_params, NormalFormCase};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn solver_matches_oracle_over_small_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for case in NormalFormCase::ALL {
            for k in [1u32, 2] {
                let ctx = FieldCtx::new(k).unwrap();
                for _ in 0..12 {
                    let Ok(p) = sample_valid_params(case, ctx, &mut rng) else { continue };
                    let s = build_unchecked(&p);
                    let want = brute_force_aut(&s, ctx).unwrap();
                    let got = enumerate_tuples(&s, k as u8).unwrap();
                    assert_eq!(got, want, "case {} over k={k}: {}", case.label(), s.to_json());
                }
            }
        }
    }

    #[test]
    fn tuples_close_and_act_trivially() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for case in [NormalFormCase::C1a, NormalFormCase::C3, NormalFormCase::C4, NormalFormCase::C5] {
            let ctx = FieldCtx::new(2).unwrap();
            let s = build_unchecked(&sample_valid_params(case, ctx, &mut rng).unwrap());
            let ts = enumerate_tuples(&s, 2).unwrap();
            for t in &ts {
                assert_eq!(s.apply_substitution(t), s);
                assert!(ts.contains(&t.inverse()));
                for u in &ts {
                    assert!(ts.contains(&t.compose(u)));
                }
            }
        }
    }

    /// The sextic at a point of the weighted space.
    fn sextic(s: &SurfaceEq, u: FieldElement, v: FieldElement, x: FieldElement, y: FieldElement) -> FieldElement {
        let a = |f: &BinaryForm| f.eval_uv(u, v);
        y * y + y * (a(&s.a1) * x + a(&s.a3)) + x * x * x + a(&s.a2) * x * x + a(&s.a4) * x + a(&s.a6)
    }

    // Pointwise oracle: F(σ(u,v), x + b2, y + b1·x + b3) = F(u, v, x, y) at
    // random points of GF(2^12), independent of the five coefficient conditions.
    #[test]
    fn tuples_preserve_the_equation_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let big = FieldCtx::new(12).unwrap();
        let e = crate::gf2k::Embedding::new(FieldCtx::new(4).unwrap(), big).unwrap();
        let mut seen = 0;
        for case in NormalFormCase::ALL {
            let s = build_unchecked(&sample_valid_params(case, FieldCtx::new(2).unwrap(), &mut rng).unwrap());
            let s4 = s.embed_to(FieldCtx::new(4).unwrap()).unwrap();
            let sb = s4.embed(&e);
            for t in enumerate_tuples(&s, 4).unwrap() {
                let t = t.embed(&e);
                for _ in 0..8 {
                    let (u, v, x, y) = (big.random(&mut rng), big.random(&mut rng), big.random(&mut rng), big.random(&mut rng));
                    let (u1, v1) = t.sigma.apply_vec(u, v);
                    let (b1, b2, b3) = (t.b1.eval_uv(u, v), t.b2.eval_uv(u, v), t.b3.eval_uv(u, v));
                    assert_eq!(sextic(&sb, u1, v1, x + b2, y + b1 * x + b3), sextic(&sb, u, v, x, y), "({case})");
                }
                seen += 1;
            }
            // A perturbed tuple is caught.
            let mut bad = AutTuple::identity(big);
            bad.b2 = BinaryForm::constant(big.one()).mul(&BinaryForm::u(big).square());
            let hits = (0..8).any(|_| {
                let (u, v, x, y) = (big.random(&mut rng), big.random(&mut rng), big.random(&mut rng), big.random(&mut rng));
                sextic(&sb, u, v, x + bad.b2.eval_uv(u, v), y) != sextic(&sb, u, v, x, y)
            });
            assert!(hits);
        }
        assert!(seen >= 28);
    }
}
