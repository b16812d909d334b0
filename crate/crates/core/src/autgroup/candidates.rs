//! The finitely many σ that can occur in an automorphism of a normal form.
//!
//! The continuous parameters of σ are eliminated symbolically: the identities
//! that do not involve b3 (and, with b1 solved for, those coefficients of the
//! a6 identity that pin down b3 twice) give polynomials whose common roots
//! contain every admissible parameter value.

use crate::binform::{BinaryForm, LinearMap2};
use crate::elim::{norm_quartic, reduce_quartic, MPoly, SForm, G, P, T};
use crate::error::{Error, Result};
use crate::gf2k::FieldElement;
use crate::poly::Poly;
use crate::surface::{BranchType, SurfaceEq};

/// Nonzero common roots of the nonzero polynomials; `None` if all vanish.
/// `split` accumulates the degree of the extension needed to see every root.
fn common_roots(ps: impl IntoIterator<Item = Poly>, split: &mut usize) -> Option<Vec<FieldElement>> {
    let mut g: Option<Poly> = None;
    for p in ps {
        if p.is_zero() {
            continue;
        }
        g = Some(match g {
            None => p.monic(),
            Some(g) => g.gcd(&p),
        });
    }
    let g = g?;
    if g.degree() == Some(0) {
        return Some(Vec::new());
    }
    *split = crate::poly::lcm(*split, g.splitting_degree());
    Some(g.roots().into_iter().filter(|r| !r.is_zero()).collect())
}

fn pure(cs: &[MPoly], var: usize) -> Vec<Poly> {
    cs.iter().filter(|c| !c.is_zero() && c.only_in(var)).map(|c| c.numerator_in(var)).collect()
}

fn degenerate(what: &str) -> Error {
    Error::Degenerate(format!("no finite candidate set for {what}"))
}

fn konst(a: FieldElement) -> MPoly {
    MPoly::constant(a)
}

/// σ candidates for a surface whose `(a1, a3)` is the canonical pair of `bt`.
pub fn sigma_candidates(s: &SurfaceEq, bt: BranchType) -> Result<Vec<LinearMap2>> {
    Ok(sigma_candidates_split(s, bt)?.0)
}

/// Candidates, and the degree of the extension of the field of `s` needed
/// for the eliminating polynomials met along the way to split (1 if they do).
pub fn sigma_candidates_split(s: &SurfaceEq, bt: BranchType) -> Result<(Vec<LinearMap2>, usize)> {
    let ctx = s.ctx();
    let o = ctx.one();
    let mut split = 1;
    let mut out = match bt {
        BranchType::ThreeLines => {
            let mut v = Vec::new();
            for c in o.cube_roots() {
                for m in 0..16u8 {
                    let b = |i: u8| ctx.from_bool(m >> i & 1 == 1) * c;
                    if let Ok(s) = LinearMap2::new(b(0), b(1), b(2), b(3)) {
                        v.push(s);
                    }
                }
            }
            v
        }
        BranchType::TwistedCubic | BranchType::LineConic => affine_unipotent(s, &mut split)?,
        BranchType::DoubleLineLine => torus(s, &mut split)?,
        BranchType::TripleLine => triple_line(s, &mut split)?,
    };
    if matches!(bt, BranchType::ThreeLines | BranchType::TripleLine) && o.cube_roots().len() < 3 {
        split = crate::poly::lcm(split, 2);
    }
    out.sort_by_key(|m| [m.alpha.bits(), m.beta.bits(), m.gamma.bits(), m.delta.bits()]);
    out.dedup();
    Ok((out, split))
}

/// `σ = (u, γu + δv)`: σ*Δ = Δ, and the v³ term of σ*a3 + a3 vanishes.
fn affine_unipotent(s: &SurfaceEq, split: &mut usize) -> Result<Vec<LinearMap2>> {
    let ctx = s.ctx();
    let (z, o) = (ctx.zero(), ctx.one());
    let l1 = SForm::linear(konst(o), MPoly::zero(ctx));
    let l2 = SForm::linear(MPoly::var(ctx, G), MPoly::var(ctx, T));
    let disc = s.discriminant();
    let mut cs = SForm::substitute(&disc, &l1, &l2).add(&SForm::from_form(&disc)).c;
    let a3 = &s.a3;
    cs.push(SForm::substitute(a3, &l1, &l2).add(&SForm::from_form(a3)).c[3].clone());
    let deltas = common_roots(pure(&cs, T), split).ok_or_else(|| degenerate("δ"))?;
    let mut out = Vec::new();
    for d in deltas {
        let cd: Vec<MPoly> = cs.iter().map(|c| c.subst(T, d)).collect();
        let gammas = common_roots(pure(&cd, G), split).ok_or_else(|| degenerate("γ"))?;
        for g in gammas.into_iter().chain([z]) {
            if cd.iter().all(|c| c.subst(G, g).is_zero()) {
                out.push(LinearMap2::new(o, z, g, d)?);
            }
        }
    }
    Ok(out)
}

/// `σ = diag(α, α⁻²)` for `a3 = u²v`.
fn torus(s: &SurfaceEq, split: &mut usize) -> Result<Vec<LinearMap2>> {
    let ctx = s.ctx();
    let z = ctx.zero();
    let l1 = SForm::linear(MPoly::var(ctx, T), MPoly::zero(ctx));
    let l2 = SForm::linear(MPoly::zero(ctx), MPoly::var_pow(ctx, T, -2));
    let sub = |f: &BinaryForm| SForm::substitute(f, &l1, &l2).add(&SForm::from_form(f));
    let (a2, a3, a4) = (SForm::from_form(&s.a2), SForm::from_form(&s.a3), SForm::from_form(&s.a4));
    let (sa, s4, s6) = (sub(&s.a2), sub(&s.a4), sub(&s.a6));
    // a4 identity: coefficients u³v and u²v² give b1 = pu + qv
    let p = s4.c[1].clone();
    let q = s4.c[2].add(&sa.c[1].square());
    let b1 = SForm::linear(p.clone(), q.clone());
    let b2 = sa.add(&b1.square());
    let mut cs = vec![
        s4.c[0].add(&sa.c[0].square()).add(&p.square().square()),
        s4.c[3].clone(),
        s4.c[4].add(&sa.c[2].square()).add(&q.square().square()),
    ];
    let w = a6_rhs(&s6, &a2, &a3, &a4, &b1, &b2);
    let wc = &w.c;
    cs.push(wc[0].add(&wc[1].square()));
    cs.push(wc[5].clone());
    cs.push(wc[6].add(&wc[4].add(&wc[3].square()).square()));
    let alphas = common_roots(pure(&cs, T), split).ok_or_else(|| degenerate("α"))?;
    alphas
        .into_iter()
        .map(|a| {
            let ai = a.inv()?;
            LinearMap2::new(a, z, z, ai * ai)
        })
        .collect()
}

/// `σ*a6 + a6` plus every term of the a6 identity except those with b3,
/// for `a1 = 0`.
fn a6_rhs(s6: &SForm, a2: &SForm, a3: &SForm, a4: &SForm, b1: &SForm, b2: &SForm) -> SForm {
    let b2sq = b2.square();
    [a4.mul(b2), a3.mul(&b1.mul(b2)), a2.mul(&b2sq), b2sq.mul(b2), b1.square().mul(&b2sq)]
        .iter()
        .fold(s6.clone(), |acc, x| acc.add(x))
}

/// `σ = (αu, γu + δv)` with α³ = 1 for `a3 = u³`; needs `a2 = 0` and no v⁴
/// term in a4, which force b1 = pu and b2 = p²u².
fn triple_line(s: &SurfaceEq, split: &mut usize) -> Result<Vec<LinearMap2>> {
    let ctx = s.ctx();
    let (z, o) = (ctx.zero(), ctx.one());
    if !s.a2.is_zero() || !s.a4.coeff(4).is_zero() {
        return Err(Error::NotNormalForm("case 5 solver expects a2 = 0 and no v⁴ term in a4".into()));
    }
    let (a2, a3, a4) = (SForm::from_form(&s.a2), SForm::from_form(&s.a3), SForm::from_form(&s.a4));
    let pv = MPoly::var(ctx, P);
    let b1 = SForm::linear(pv.clone(), MPoly::zero(ctx));
    let b2 = b1.square();
    let mut out = Vec::new();
    for al in o.cube_roots() {
        let l1 = SForm::linear(konst(al), MPoly::zero(ctx));
        let l2 = SForm::linear(MPoly::var(ctx, G), MPoly::var(ctx, T));
        let sub = |f: &BinaryForm| SForm::substitute(f, &l1, &l2).add(&SForm::from_form(f));
        let (s4, s6) = (sub(&s.a4), sub(&s.a6));
        // a4 identity: u⁴ gives p⁴ + p = c(γ); the rest must vanish
        let c = s4.c[0].clone();
        let mut cs: Vec<MPoly> = s4.c[1..].to_vec();
        let w = a6_rhs(&s6, &a2, &a3, &a4, &b1, &b2);
        let wc = &w.c;
        cs.push(wc[5].clone());
        cs.push(wc[6].add(&wc[3].square()));
        cs.push(wc[4].add(&wc[2].add(&wc[1].square()).square()));
        let deltas = common_roots(pure(&cs, T), split).ok_or_else(|| degenerate("δ"))?;
        for d in deltas {
            let cg = c.subst(T, d);
            if !cg.only_in(G) && !cg.is_zero() {
                return Err(degenerate("p⁴ + p = c(γ)"));
            }
            let cpoly = if cg.is_zero() { Poly::zero(ctx) } else { cg.numerator_in(G) };
            let mut polys = Vec::new();
            for e in cs.iter().map(|e| e.subst(T, d)) {
                if e.is_zero() {
                    continue;
                }
                if e.vars()[T] {
                    return Err(degenerate("γ"));
                }
                let by_p = e.by_p_degree();
                polys.push(norm_quartic(&reduce_quartic(&by_p, &cpoly), &cpoly));
            }
            let gammas = common_roots(polys, split).ok_or_else(|| degenerate("γ"))?;
            for g in gammas.into_iter().chain([z]) {
                out.push(LinearMap2::new(al, z, g, d)?);
            }
        }
    }
    Ok(out)
}
