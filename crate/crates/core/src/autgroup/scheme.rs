//! Point counts of the case-(5) scheme cut out by
//! `F1 = λ⁴ + λ + a²γ² + b²γ⁴`,
//! `F2 = a⁴λ⁴ + b²λ² + γ + dγ² + d²γ⁸ + γ¹⁶`,
//! `F3 = λ0² + λ0 + λ³ + (aγ + bγ²)λ + γ⁵ + dγ⁶`.

use serde::Serialize;

use crate::elim::{norm_quartic, reduce_quartic};
use crate::error::{Error, Result};
use crate::gf2k::{smallest_table_multiple, FieldCtx, FieldElement};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeCount {
    /// Points `(λ, γ, λ0)` over the field.
    pub count: usize,
    /// Size of the image of the projection to γ.
    pub gamma_image: usize,
    /// Distinct values of the number of λ over a fixed γ.
    pub lambda_per_gamma: Vec<usize>,
    pub field_k: u8,
    /// Every polynomial met along the way split completely over the field.
    pub saturated: bool,
}

fn splits(p: &Poly) -> bool {
    let r = p.radical();
    r.rational_part().degree() == r.degree()
}

/// Counts points over `ctx`; `a`, `b`, `d` must lie in a subfield.
pub fn count_case5_scheme(a: FieldElement, b: FieldElement, d: FieldElement, ctx: FieldCtx) -> Result<SchemeCount> {
    let (a, b, d) = (a.embed(ctx)?, b.embed(ctx)?, d.embed(ctx)?);
    let (z, o) = (ctx.zero(), ctx.one());
    let c = Poly::new(ctx, vec![z, z, a * a, z, b * b]);
    let mut f2g = vec![z; 17];
    f2g[1] = o;
    f2g[2] = d;
    f2g[8] = d * d;
    f2g[16] = o;
    let f2 = [
        Poly::new(ctx, f2g),
        Poly::zero(ctx),
        Poly::constant(b * b),
        Poly::zero(ctx),
        Poly::constant(a.pow(4)),
    ];
    let norm = norm_quartic(&reduce_quartic(&f2, &c), &c);
    if norm.is_zero() {
        return Err(Error::Degenerate("F1 and F2 share a component".into()));
    }
    let mut saturated = splits(&norm);
    let mut count = 0;
    let mut gamma_image = 0;
    let mut per = Vec::new();
    for g in norm.roots() {
        let cg = c.eval(g);
        let f1 = Poly::new(ctx, vec![cg, o, z, z, o]);
        let f2 = Poly::new(ctx, vec![f2[0].eval(g), z, b * b, z, a.pow(4)]);
        let h = f1.gcd(&f2);
        saturated &= splits(&h);
        let lambdas = if h.degree().unwrap_or(0) == 0 { Vec::new() } else { h.roots() };
        if lambdas.is_empty() {
            continue;
        }
        gamma_image += 1;
        per.push(lambdas.len());
        for l in lambdas {
            let rhs = l * l * l + (a * g + b * g * g) * l + g.pow(5) + d * g.pow(6);
            let n = rhs.solve_artin_schreier().len();
            saturated &= n == 2;
            count += n;
        }
    }
    per.sort();
    per.dedup();
    Ok(SchemeCount { count, gamma_image, lambda_per_gamma: per, field_k: ctx.k(), saturated })
}

/// Repeats the count over growing table fields until it saturates or `max_k` is passed.
pub fn saturate_case5_scheme(a: FieldElement, b: FieldElement, d: FieldElement, max_k: u8) -> Result<SchemeCount> {
    let base = [a.k(), b.k(), d.k()].into_iter().fold(1usize, |x, y| crate::poly::lcm(x, y as usize)) as u8;
    let mut k = base;
    loop {
        let r = count_case5_scheme(a, b, d, FieldCtx::new(k as u32)?)?;
        if r.saturated {
            return Ok(r);
        }
        match smallest_table_multiple(base, k as u32 + 1) {
            Some(n) if n <= max_k => k = n,
            _ => return Ok(r),
        }
    }
}
