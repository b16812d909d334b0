//! Dense univariate polynomials over GF(2^k): gcd, roots and distinct-degree data.

use std::fmt;

use crate::error::Result;
use crate::gf2k::{Embedding, FieldCtx, FieldElement};

/// Coefficients ascending: `c[i]` multiplies `t^i`. No trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: FieldCtx,
    c: Vec<FieldElement>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{a:x}*t^{i}")?;
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(ctx: FieldCtx, c: Vec<FieldElement>) -> Self {
        let mut p = Poly { ctx, c };
        p.trim();
        p
    }

    pub fn zero(ctx: FieldCtx) -> Self {
        Poly { ctx, c: Vec::new() }
    }

    pub fn one(ctx: FieldCtx) -> Self {
        Poly::constant(ctx.one())
    }

    pub fn constant(a: FieldElement) -> Self {
        Poly::new(a.ctx(), vec![a])
    }

    /// `a·t^n`.
    pub fn monomial(a: FieldElement, n: usize) -> Self {
        let mut c = vec![a.ctx().zero(); n + 1];
        c[n] = a;
        Poly::new(a.ctx(), c)
    }

    pub fn t(ctx: FieldCtx) -> Self {
        Poly::monomial(ctx.one(), 1)
    }

    /// `t + r`.
    pub fn linear(r: FieldElement) -> Self {
        Poly::new(r.ctx(), vec![r, r.ctx().one()])
    }

    pub fn from_roots(ctx: FieldCtx, roots: &[FieldElement]) -> Self {
        roots.iter().fold(Poly::one(ctx), |acc, &r| acc.mul(&Poly::linear(r)))
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|a| a.is_zero()) {
            self.c.pop();
        }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.c.get(i).copied().unwrap_or(self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> FieldElement {
        self.c.last().copied().unwrap_or(self.ctx.zero())
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.c.iter().rev().fold(self.ctx.zero(), |acc, &a| acc * x + a)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Poly::new(self.ctx, c)
    }

    pub fn scale(&self, a: FieldElement) -> Poly {
        Poly::new(self.ctx, self.c.iter().map(|&x| x * a).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.ctx);
        }
        let mut c = vec![self.ctx.zero(); self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(self.ctx, c)
    }

    /// Coefficientwise Frobenius then exponent doubling.
    pub fn square(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.ctx.zero(); 2 * self.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            c[2 * i] = a.square();
        }
        Poly::new(self.ctx, c)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(n) = self.degree() else {
            return (Poly::zero(self.ctx), Poly::zero(self.ctx));
        };
        if n < dd {
            return (Poly::zero(self.ctx), self.clone());
        }
        let inv = d.lead().inv().expect("nonzero lead");
        let mut r = self.c.clone();
        let mut q = vec![self.ctx.zero(); n - dd + 1];
        for i in (dd..=n).rev() {
            let a = r[i];
            if a.is_zero() {
                continue;
            }
            let f = a * inv;
            q[i - dd] = f;
            for (j, &b) in d.c.iter().enumerate() {
                r[i - dd + j] += f * b;
            }
        }
        r.truncate(dd);
        (Poly::new(self.ctx, q), Poly::new(self.ctx, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Exact quotient; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.lead().inv().expect("nonzero lead"))
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| if i % 2 == 1 { a } else { self.ctx.zero() })
            .collect();
        Poly::new(self.ctx, c)
    }

    /// `p(t + r)`.
    pub fn translate(&self, r: FieldElement) -> Poly {
        // Horner in the shifted variable
        let lin = Poly::linear(r);
        self.c.iter().rev().fold(Poly::zero(self.ctx), |acc, &a| acc.mul(&lin).add(&Poly::constant(a)))
    }

    /// `p(a·t)`.
    pub fn scale_var(&self, a: FieldElement) -> Poly {
        let mut p = self.ctx.one();
        let mut c = Vec::with_capacity(self.c.len());
        for &x in &self.c {
            c.push(x * p);
            p *= a;
        }
        Poly::new(self.ctx, c)
    }

    /// Map coefficients through an embedding-like function.
    pub fn map_coeffs(&self, ctx: FieldCtx, f: impl Fn(FieldElement) -> FieldElement) -> Poly {
        Poly::new(ctx, self.c.iter().map(|&a| f(a)).collect())
    }

    /// Square root of a polynomial with only even exponents.
    pub fn sqrt_even(&self) -> Option<Poly> {
        if self.c.iter().enumerate().any(|(i, a)| i % 2 == 1 && !a.is_zero()) {
            return None;
        }
        Some(Poly::new(self.ctx, self.c.iter().step_by(2).map(|a| a.sqrt()).collect()))
    }

    pub fn mulmod(&self, o: &Poly, m: &Poly) -> Poly {
        self.mul(o).rem(m)
    }

    /// `self^(2^n) mod m`.
    pub fn frobenius_mod(&self, n: u32, m: &Poly) -> Poly {
        let mut x = self.rem(m);
        for _ in 0..n {
            x = x.square().rem(m);
        }
        x
    }

    /// Product of the distinct irreducible factors.
    pub fn radical(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return Poly::one(self.ctx);
        }
        let d = self.derivative();
        if d.is_zero() {
            return self.sqrt_even().expect("zero derivative means a square").radical();
        }
        let c = self.gcd(&d);
        let w = self.div_exact(&c).expect("gcd divides");
        let mut rest = c;
        loop {
            let y = rest.gcd(&w);
            if y.degree() == Some(0) {
                break;
            }
            rest = rest.div_exact(&y).expect("gcd divides");
        }
        let w = w.monic();
        if rest.degree() == Some(0) {
            w
        } else {
            w.mul(&rest.sqrt_even().expect("remaining part is a square").radical()).monic()
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree().is_some() && self.radical().degree() == self.monic().degree()
    }

    /// Product of the linear factors over the coefficient field (monic, squarefree).
    pub fn rational_part(&self) -> Poly {
        let f = self.monic();
        let k = self.ctx.k() as u32;
        let x = Poly::t(self.ctx);
        let h = x.frobenius_mod(k, &f).add(&x);
        f.gcd(&h)
    }

    /// Distinct roots in the coefficient field, sorted by bit encoding.
    pub fn roots(&self) -> Vec<FieldElement> {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        if self.degree() == Some(0) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let g = self.rational_part();
        split_linear(&g, &mut out, 0);
        out.sort();
        out
    }

    /// Roots with multiplicities.
    pub fn roots_with_multiplicity(&self) -> Vec<(FieldElement, usize)> {
        self.roots()
            .into_iter()
            .map(|r| {
                let lin = Poly::linear(r);
                let mut m = 0;
                let mut f = self.clone();
                while let Some(q) = f.div_exact(&lin) {
                    f = q;
                    m += 1;
                }
                (r, m)
            })
            .collect()
    }

    /// Degrees (over the coefficient field) of the irreducible factors of the radical,
    /// with repetition.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let k = self.ctx.k() as u32;
        let mut f = self.radical();
        let x = Poly::t(self.ctx);
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut i = 0;
        while f.degree().unwrap_or(0) > 0 {
            i += 1;
            if 2 * i > f.degree().unwrap() {
                out.push(f.degree().unwrap());
                break;
            }
            h = h.frobenius_mod(k, &f);
            let g = f.gcd(&h.add(&x));
            if let Some(dg) = g.degree().filter(|&d| d > 0) {
                out.extend(std::iter::repeat_n(i, dg / i));
                f = f.div_exact(&g).expect("gcd divides");
                h = h.rem(&f);
            }
        }
        out
    }

    pub fn embed(&self, e: &Embedding) -> Poly {
        Poly::new(e.target(), self.c.iter().map(|&a| e.apply(a)).collect())
    }

    pub fn embed_to(&self, target: FieldCtx) -> Result<Poly> {
        if target == self.ctx {
            return Ok(self.clone());
        }
        Ok(self.embed(&Embedding::new(self.ctx, target)?))
    }

    /// Degree over the coefficient field of the smallest field holding a root.
    pub fn min_root_degree(&self) -> Option<usize> {
        if self.degree().unwrap_or(0) == 0 {
            return None;
        }
        self.factor_degrees().into_iter().min()
    }

    /// Degree of the splitting field over the coefficient field.
    pub fn splitting_degree(&self) -> usize {
        self.factor_degrees().into_iter().fold(1, lcm)
    }
}

/// Determinant of a square matrix over `F[t]` by cofactor expansion.
pub fn det(m: &[Vec<Poly>], ctx: FieldCtx) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(ctx);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(ctx);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        acc = acc.add(&m[0][j].mul(&det(&minor, ctx)));
    }
    acc
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd_usize(a, b) * b
}

pub fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

/// Equal-degree splitting of a product of distinct linear factors (char 2 trace method).
fn split_linear(g: &Poly, out: &mut Vec<FieldElement>, seed: u64) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => out.push(g.coeff(0) * g.lead().inv().unwrap()),
        Some(_) => {
            let ctx = g.ctx();
            let k = ctx.k() as u32;
            let gen = ctx.generator();
            let mut s = seed;
            loop {
                s += 1;
                // a runs through powers of the generator; in GF(2) only a = 1 exists,
                // but there every root is 0 or 1 and degree ≤ 2 is handled by evaluation
                if ctx.k() == 1 {
                    for r in [ctx.zero(), ctx.one()] {
                        if g.eval(r).is_zero() {
                            out.push(r);
                        }
                    }
                    return;
                }
                let a = gen.pow(s);
                let at = Poly::new(ctx, vec![ctx.zero(), a]).rem(g);
                let mut tr = at.clone();
                let mut p = at;
                for _ in 1..k {
                    p = p.square().rem(g);
                    tr = tr.add(&p);
                }
                let d = g.gcd(&tr);
                let dd = d.degree().unwrap_or(0);
                if dd > 0 && Some(dd) < g.degree() {
                    let other = g.div_exact(&d).unwrap();
                    split_linear(&d, out, s);
                    split_linear(&other, out, s);
                    return;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(k: u32) -> FieldCtx {
        FieldCtx::new(k).unwrap()
    }

    #[test]
    fn roots_of_product() {
        let ctx = f(8);
        let rs: Vec<_> = [3u64, 7, 0x55, 0].iter().map(|&b| ctx.el(b)).collect();
        let p = Poly::from_roots(ctx, &rs);
        let mut want = rs.clone();
        want.sort();
        assert_eq!(p.roots(), want);
    }

    #[test]
    fn irreducible_quadratic_over_gf2() {
        let ctx = f(1);
        let p = Poly::new(ctx, vec![ctx.one(), ctx.one(), ctx.one()]);
        assert!(p.roots().is_empty());
        assert_eq!(p.factor_degrees(), vec![2]);
        let ctx4 = f(2);
        let q = p.map_coeffs(ctx4, |a| a.embed(ctx4).unwrap());
        assert_eq!(q.roots().len(), 2);
    }

    #[test]
    fn multiplicities_and_radical() {
        let ctx = f(4);
        let a = Poly::linear(ctx.el(3));
        let b = Poly::linear(ctx.el(9));
        let p = a.pow(4).mul(&b.pow(3)).mul(&Poly::linear(ctx.zero()));
        assert_eq!(p.radical(), a.mul(&b).mul(&Poly::t(ctx)).monic());
        let m = p.roots_with_multiplicity();
        assert_eq!(m, vec![(ctx.zero(), 1), (ctx.el(3), 4), (ctx.el(9), 3)]);
        assert!(!p.is_squarefree());
        assert!(a.mul(&b).is_squarefree());
    }

    #[test]
    fn factor_degrees_mixed() {
        let ctx = f(1);
        // (t^3+t+1)(t^2+t+1)t
        let c3 = Poly::new(ctx, vec![ctx.one(), ctx.one(), ctx.zero(), ctx.one()]);
        let c2 = Poly::new(ctx, vec![ctx.one(), ctx.one(), ctx.one()]);
        let p = c3.mul(&c2).mul(&Poly::t(ctx));
        let mut d = p.factor_degrees();
        d.sort();
        assert_eq!(d, vec![1, 2, 3]);
        assert_eq!(p.splitting_degree(), 6);
    }

    #[test]
    fn translate_matches_eval() {
        let ctx = f(6);
        let p = Poly::new(ctx, (1..8).map(|i| ctx.el(i * 5)).collect());
        let r = ctx.el(0x2a);
        let q = p.translate(r);
        for x in [0u64, 1, 17, 63] {
            let x = ctx.el(x);
            assert_eq!(q.eval(x), p.eval(x + r));
        }
    }
}
