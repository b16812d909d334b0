//! Sparse polynomials in three variables `T` (Laurent), `G`, `P`, and
//! binary forms with such coefficients, for eliminating the continuous part
//! of a substitution.

use std::collections::BTreeMap;

use crate::binform::BinaryForm;
use crate::gf2k::{FieldCtx, FieldElement};
use crate::poly::{det, Poly};

pub const T: usize = 0;
pub const G: usize = 1;
pub const P: usize = 2;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    ctx: FieldCtx,
    terms: BTreeMap<[i32; 3], FieldElement>,
}

impl MPoly {
    pub fn zero(ctx: FieldCtx) -> Self {
        MPoly { ctx, terms: BTreeMap::new() }
    }

    pub fn constant(a: FieldElement) -> Self {
        Self::monomial(a, [0; 3])
    }

    pub fn monomial(a: FieldElement, e: [i32; 3]) -> Self {
        let mut m = MPoly::zero(a.ctx());
        if !a.is_zero() {
            m.terms.insert(e, a);
        }
        m
    }

    pub fn var(ctx: FieldCtx, i: usize) -> Self {
        Self::var_pow(ctx, i, 1)
    }

    pub fn var_pow(ctx: FieldCtx, i: usize, n: i32) -> Self {
        let mut e = [0; 3];
        e[i] = n;
        Self::monomial(ctx.one(), e)
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: [i32; 3], a: FieldElement) {
        let z = *self.terms.entry(e).or_insert(self.ctx.zero()) + a;
        if z.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, z);
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (&e, &a) in &o.terms {
            r.add_term(e, a);
        }
        r
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.ctx);
        for (e1, &a) in &self.terms {
            for (e2, &b) in &o.terms {
                r.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], a * b);
            }
        }
        r
    }

    pub fn scale(&self, a: FieldElement) -> MPoly {
        self.mul(&MPoly::constant(a))
    }

    /// Frobenius is additive, so squaring acts termwise.
    pub fn square(&self) -> MPoly {
        let mut r = MPoly::zero(self.ctx);
        for (e, &a) in &self.terms {
            r.add_term([2 * e[0], 2 * e[1], 2 * e[2]], a.square());
        }
        r
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut r = MPoly::constant(self.ctx.one());
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Variables with a nonzero exponent somewhere.
    pub fn vars(&self) -> [bool; 3] {
        let mut v = [false; 3];
        for e in self.terms.keys() {
            for i in 0..3 {
                v[i] |= e[i] != 0;
            }
        }
        v
    }

    pub fn only_in(&self, i: usize) -> bool {
        let v = self.vars();
        (0..3).all(|j| j == i || !v[j])
    }

    /// Substitute a value for one variable (nonzero if it has negative exponents).
    pub fn subst(&self, i: usize, x: FieldElement) -> MPoly {
        let xi = x.inv().ok();
        let mut r = MPoly::zero(self.ctx);
        for (e, &a) in &self.terms {
            let f = if e[i] >= 0 { x.pow(e[i] as u64) } else { xi.expect("nonzero value").pow((-e[i]) as u64) };
            let mut e2 = *e;
            e2[i] = 0;
            r.add_term(e2, a * f);
        }
        r
    }

    /// For a polynomial in variable `i` only: the numerator after clearing
    /// negative powers.
    pub fn numerator_in(&self, i: usize) -> Poly {
        assert!(self.only_in(i), "not univariate");
        let lo = self.terms.keys().map(|e| e[i]).min().unwrap_or(0).min(0);
        let mut c = vec![self.ctx.zero(); self.terms.keys().map(|e| (e[i] - lo) as usize + 1).max().unwrap_or(0)];
        for (e, &a) in &self.terms {
            c[(e[i] - lo) as usize] = a;
        }
        Poly::new(self.ctx, c)
    }

    /// Coefficients in `P` as polynomials in `G`; requires no `T` and no
    /// negative exponents.
    pub fn by_p_degree(&self) -> Vec<Poly> {
        assert!(!self.vars()[T], "T present");
        let mut out: Vec<Vec<FieldElement>> = Vec::new();
        for (e, &a) in &self.terms {
            let (g, p) = (e[G] as usize, e[P] as usize);
            if out.len() <= p {
                out.resize(p + 1, Vec::new());
            }
            if out[p].len() <= g {
                out[p].resize(g + 1, self.ctx.zero());
            }
            out[p][g] = a;
        }
        out.into_iter().map(|c| Poly::new(self.ctx, c)).collect()
    }
}

/// Reduce a polynomial in `P` over `F[G]` modulo `P⁴ + P + c`.
pub fn reduce_quartic(coeffs: &[Poly], c: &Poly) -> [Poly; 4] {
    let ctx = c.ctx();
    let mut v: Vec<Poly> = coeffs.to_vec();
    v.resize(v.len().max(4), Poly::zero(ctx));
    for i in (4..v.len()).rev() {
        let top = std::mem::replace(&mut v[i], Poly::zero(ctx));
        v[i - 3] = v[i - 3].add(&top);
        v[i - 4] = v[i - 4].add(&top.mul(c));
    }
    [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]
}

/// Norm from `F[G][P]/(P⁴ + P + c)` down to `F[G]`: the determinant of
/// multiplication by `q`.
pub fn norm_quartic(q: &[Poly; 4], c: &Poly) -> Poly {
    let ctx = c.ctx();
    let mut col = q.to_vec();
    let mut cols = Vec::new();
    for _ in 0..4 {
        cols.push(col.clone());
        let e3 = col[3].clone();
        col = vec![e3.mul(c), col[0].add(&e3), col[1].clone(), col[2].clone()];
    }
    let m: Vec<Vec<Poly>> = (0..4).map(|i| (0..4).map(|j| cols[j][i].clone()).collect()).collect();
    det(&m, ctx)
}

/// A binary form with [`MPoly`] coefficients, `c[j]` at `u^(d-j) v^j`.
#[derive(Clone, Debug)]
pub struct SForm {
    pub c: Vec<MPoly>,
}

impl SForm {
    pub fn from_form(f: &BinaryForm) -> Self {
        SForm { c: f.coeffs().iter().map(|&a| MPoly::constant(a)).collect() }
    }

    pub fn zero(ctx: FieldCtx, d: usize) -> Self {
        SForm { c: vec![MPoly::zero(ctx); d + 1] }
    }

    pub fn linear(a: MPoly, b: MPoly) -> Self {
        SForm { c: vec![a, b] }
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &MPoly {
        &self.c[j]
    }

    pub fn add(&self, o: &SForm) -> SForm {
        assert_eq!(self.c.len(), o.c.len(), "degree mismatch");
        SForm { c: self.c.iter().zip(&o.c).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn mul(&self, o: &SForm) -> SForm {
        let ctx = self.c[0].ctx();
        let mut c = vec![MPoly::zero(ctx); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        SForm { c }
    }

    pub fn square(&self) -> SForm {
        let ctx = self.c[0].ctx();
        let mut c = vec![MPoly::zero(ctx); 2 * self.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            c[2 * i] = a.square();
        }
        SForm { c }
    }

    /// `f(l1, l2)` for a numeric form `f` and symbolic linear forms.
    pub fn substitute(f: &BinaryForm, l1: &SForm, l2: &SForm) -> SForm {
        let ctx = f.ctx();
        let d = f.degree();
        let one = SForm { c: vec![MPoly::constant(ctx.one())] };
        let (mut p1, mut p2) = (vec![one.clone()], vec![one]);
        for i in 1..=d {
            p1.push(p1[i - 1].mul(l1));
            p2.push(p2[i - 1].mul(l2));
        }
        let mut out = SForm::zero(ctx, d);
        for (j, &a) in f.coeffs().iter().enumerate() {
            if !a.is_zero() {
                let t = p1[d - j].mul(&p2[j]);
                for (i, m) in t.c.iter().enumerate() {
                    out.c[i] = out.c[i].add(&m.scale(a));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_numerator() {
        let ctx = FieldCtx::new(4).unwrap();
        let t = MPoly::var(ctx, T);
        let ti = MPoly::var_pow(ctx, T, -2);
        let f = t.add(&ti);
        // T + T⁻² → T³ + 1
        assert_eq!(f.numerator_in(T), Poly::new(ctx, vec![ctx.one(), ctx.zero(), ctx.zero(), ctx.one()]));
        assert_eq!(f.subst(T, ctx.one()), MPoly::zero(ctx));
    }

    #[test]
    fn quartic_norm_of_p_is_c() {
        let ctx = FieldCtx::new(4).unwrap();
        let c = Poly::new(ctx, vec![ctx.el(3), ctx.el(1)]);
        let z = Poly::zero(ctx);
        let n = norm_quartic(&[z.clone(), Poly::one(ctx), z.clone(), z], &c);
        // the product of the four roots of P⁴ + P + c is c
        assert_eq!(n, c);
    }

    #[test]
    fn symbolic_substitution_matches_numeric() {
        let ctx = FieldCtx::new(4).unwrap();
        let f = BinaryForm::new(ctx, vec![ctx.el(3), ctx.el(0), ctx.el(7), ctx.el(1)]);
        let l1 = SForm::linear(MPoly::constant(ctx.one()), MPoly::zero(ctx));
        let l2 = SForm::linear(MPoly::var(ctx, G), MPoly::var(ctx, T));
        let s = SForm::substitute(&f, &l1, &l2);
        let (g, d) = (ctx.el(5), ctx.el(9));
        let num = f.substitute(&crate::binform::LinearMap2::new(ctx.one(), ctx.zero(), g, d).unwrap());
        for j in 0..4 {
            let v = s.coeff(j).subst(T, d).subst(G, g);
            assert_eq!(v, MPoly::constant(num.coeff(j)));
        }
    }
}
