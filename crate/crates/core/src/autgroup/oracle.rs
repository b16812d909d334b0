//! Exhaustive enumeration over a small field, for cross-checking the solver.

use crate::binform::{BinaryForm, LinearMap2};
use crate::error::{Error, Result};
use crate::gf2k::FieldCtx;
use crate::surface::SurfaceEq;

use super::{residuals, AutTuple};

fn all_forms(ctx: FieldCtx, d: usize) -> Vec<BinaryForm> {
    let q = ctx.order() as usize;
    let mut out = Vec::with_capacity(q.pow(d as u32 + 1));
    let mut idx = vec![0usize; d + 1];
    let els: Vec<_> = ctx.elements().collect();
    loop {
        out.push(BinaryForm::new(ctx, idx.iter().map(|&i| els[i]).collect()));
        let mut j = 0;
        loop {
            if j > d {
                return out;
            }
            idx[j] += 1;
            if idx[j] < q {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Every tuple over `ctx` satisfying the five conditions, found by nested
/// loops over σ, b2, b1, b3 with each condition checked as soon as its
/// unknowns are fixed. Sorted. Limited to `q ≤ 4`.
pub fn brute_force_aut(s: &SurfaceEq, ctx: FieldCtx) -> Result<Vec<AutTuple>> {
    if ctx.k() > 2 {
        return Err(Error::Validation("brute-force oracle needs q ≤ 4".into()));
    }
    let s = s.embed_to(ctx)?;
    let els: Vec<_> = ctx.elements().collect();
    let (f1, f2, f3) = (all_forms(ctx, 1), all_forms(ctx, 2), all_forms(ctx, 3));
    let mut out = Vec::new();
    for &al in &els {
        for &be in &els {
            for &ga in &els {
                for &de in &els {
                    let Ok(sigma) = LinearMap2::new(al, be, ga, de) else { continue };
                    if s.a1.substitute(&sigma) != s.a1 {
                        continue;
                    }
                    let s3 = &s.a3.substitute(&sigma) + &s.a3;
                    let s2 = &s.a2.substitute(&sigma) + &s.a2;
                    let s4 = &s.a4.substitute(&sigma) + &s.a4;
                    for b2 in &f2 {
                        if s.a1.mul(b2) != s3 {
                            continue;
                        }
                        for b1 in &f1 {
                            if &(&s.a1.mul(b1) + &b1.square()) + b2 != s2 {
                                continue;
                            }
                            let base4 = &(&s.a3.mul(b1) + &b2.square()) + &s4;
                            for b3 in &f3 {
                                if s.a1.mul(b3) != base4 {
                                    continue;
                                }
                                let t = AutTuple { sigma, b1: b1.clone(), b2: b2.clone(), b3: b3.clone() };
                                if residuals(&s, &t)[4].is_zero() {
                                    out.push(t);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(super::tuple_key);
    Ok(out)
}
