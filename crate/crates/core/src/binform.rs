//! Homogeneous binary forms `Σ c[j]·u^(d−j)·v^j`, linear substitutions and points of P¹.

use std::fmt;
use std::ops::{Add, Mul};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf2k::{Embedding, FieldCtx, FieldElement};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    ctx: FieldCtx,
    c: Vec<FieldElement>,
}

/// `u ↦ αu + βv`, `v ↦ γu + δv`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct LinearMap2 {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
    pub delta: FieldElement,
}

/// A point `[u:v]` of P¹, first nonzero coordinate equal to 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Point {
    u: FieldElement,
    v: FieldElement,
}

impl fmt::Debug for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:x}:{:x}]", self.u, self.v)
    }
}

impl P1Point {
    pub fn new(u: FieldElement, v: FieldElement) -> Result<Self> {
        if u.is_zero() && v.is_zero() {
            return Err(Error::Validation("[0:0] is not a point".into()));
        }
        if u.is_zero() {
            Ok(P1Point { u, v: v.ctx().one() })
        } else {
            Ok(P1Point { u: u.ctx().one(), v: v * u.inv()? })
        }
    }

    /// `[1:t]`.
    pub fn affine(t: FieldElement) -> Self {
        P1Point { u: t.ctx().one(), v: t }
    }

    /// `[0:1]`.
    pub fn infinity(ctx: FieldCtx) -> Self {
        P1Point { u: ctx.zero(), v: ctx.one() }
    }

    pub fn u(self) -> FieldElement {
        self.u
    }

    pub fn v(self) -> FieldElement {
        self.v
    }

    pub fn ctx(self) -> FieldCtx {
        self.u.ctx()
    }

    pub fn embed(self, e: &Embedding) -> Self {
        P1Point { u: e.apply(self.u), v: e.apply(self.v) }
    }

    pub fn to_json(self) -> Value {
        json!([self.u.to_hex(), self.v.to_hex()])
    }

    /// All points of P¹ over the field.
    pub fn all(ctx: FieldCtx) -> impl Iterator<Item = P1Point> {
        std::iter::once(P1Point::infinity(ctx)).chain(ctx.elements().map(P1Point::affine))
    }
}

impl LinearMap2 {
    pub fn new(alpha: FieldElement, beta: FieldElement, gamma: FieldElement, delta: FieldElement) -> Result<Self> {
        let m = LinearMap2 { alpha, beta, gamma, delta };
        if m.det().is_zero() {
            return Err(Error::Validation("αδ + βγ ≠ 0".into()));
        }
        Ok(m)
    }

    pub fn identity(ctx: FieldCtx) -> Self {
        LinearMap2::scalar(ctx.one())
    }

    pub fn scalar(s: FieldElement) -> Self {
        let z = s.ctx().zero();
        LinearMap2 { alpha: s, beta: z, gamma: z, delta: s }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.alpha.ctx()
    }

    pub fn det(&self) -> FieldElement {
        self.alpha * self.delta + self.beta * self.gamma
    }

    pub fn is_identity(&self) -> bool {
        *self == LinearMap2::identity(self.ctx())
    }

    pub fn is_scalar(&self) -> bool {
        self.beta.is_zero() && self.gamma.is_zero() && self.alpha == self.delta
    }

    /// Matrix product `self·other`; substituting `self` then `other` equals substituting this.
    pub fn compose(&self, o: &LinearMap2) -> LinearMap2 {
        LinearMap2 {
            alpha: self.alpha * o.alpha + self.beta * o.gamma,
            beta: self.alpha * o.beta + self.beta * o.delta,
            gamma: self.gamma * o.alpha + self.delta * o.gamma,
            delta: self.gamma * o.beta + self.delta * o.delta,
        }
    }

    pub fn inverse(&self) -> LinearMap2 {
        let di = self.det().inv().expect("invertible map");
        LinearMap2 { alpha: self.delta * di, beta: self.beta * di, gamma: self.gamma * di, delta: self.alpha * di }
    }

    /// The vector `(αu0 + βv0, γu0 + δv0)`.
    pub fn apply_vec(&self, u0: FieldElement, v0: FieldElement) -> (FieldElement, FieldElement) {
        (self.alpha * u0 + self.beta * v0, self.gamma * u0 + self.delta * v0)
    }

    pub fn apply(&self, p: P1Point) -> P1Point {
        let (a, b) = self.apply_vec(p.u, p.v);
        P1Point::new(a, b).expect("invertible map")
    }

    pub fn embed(&self, e: &Embedding) -> LinearMap2 {
        LinearMap2 {
            alpha: e.apply(self.alpha),
            beta: e.apply(self.beta),
            gamma: e.apply(self.gamma),
            delta: e.apply(self.delta),
        }
    }

    pub fn to_json(&self) -> Value {
        json!([[self.alpha.to_hex(), self.beta.to_hex()], [self.gamma.to_hex(), self.delta.to_hex()]])
    }

    pub fn from_json(v: &Value, ctx: FieldCtx) -> Result<Self> {
        let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(|| Error::Parse("sigma: expected 2 rows".into()))?;
        let mut e = Vec::new();
        for r in rows {
            let r = r.as_array().filter(|r| r.len() == 2).ok_or_else(|| Error::Parse("sigma: expected 2 entries".into()))?;
            for x in r {
                e.push(ctx.parse_hex(x.as_str().ok_or_else(|| Error::Parse("sigma: hex string".into()))?)?);
            }
        }
        LinearMap2::new(e[0], e[1], e[2], e[3])
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut terms = Vec::new();
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut m = String::new();
            let pu = d - j;
            if pu > 0 {
                m.push('u');
                if pu > 1 {
                    m.push_str(&format!("^{pu}"));
                }
            }
            if j > 0 {
                m.push('v');
                if j > 1 {
                    m.push_str(&format!("^{j}"));
                }
            }
            terms.push(match (a.is_one(), m.is_empty()) {
                (true, false) => m,
                (_, true) => format!("{a:x}"),
                (false, false) => format!("{a:x}*{m}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl BinaryForm {
    pub fn new(ctx: FieldCtx, coeffs: Vec<FieldElement>) -> Self {
        assert!(!coeffs.is_empty(), "a form has at least one coefficient");
        assert!(coeffs.iter().all(|a| a.k() == ctx.k()), "coefficient outside ctx");
        BinaryForm { ctx, c: coeffs }
    }

    pub fn zero(ctx: FieldCtx, d: usize) -> Self {
        BinaryForm { ctx, c: vec![ctx.zero(); d + 1] }
    }

    pub fn constant(a: FieldElement) -> Self {
        BinaryForm { ctx: a.ctx(), c: vec![a] }
    }

    /// `a·u^(d−j)·v^j`.
    pub fn monomial(a: FieldElement, d: usize, j: usize) -> Self {
        let mut f = BinaryForm::zero(a.ctx(), d);
        f.c[j] = a;
        f
    }

    pub fn u(ctx: FieldCtx) -> Self {
        BinaryForm::monomial(ctx.one(), 1, 0)
    }

    pub fn v(ctx: FieldCtx) -> Self {
        BinaryForm::monomial(ctx.one(), 1, 1)
    }

    /// `αu + βv`.
    pub fn linear(alpha: FieldElement, beta: FieldElement) -> Self {
        BinaryForm::new(alpha.ctx(), vec![alpha, beta])
    }

    /// Build from `(coefficient, v-exponent)` pairs.
    pub fn from_terms(ctx: FieldCtx, d: usize, terms: &[(FieldElement, usize)]) -> Self {
        let mut f = BinaryForm::zero(ctx, d);
        for &(a, j) in terms {
            f.c[j] += a;
        }
        f
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    /// Coefficient of `u^(d−j) v^j`.
    pub fn coeff(&self, j: usize) -> FieldElement {
        self.c[j]
    }

    pub fn set_coeff(&mut self, j: usize, a: FieldElement) {
        self.c[j] = a;
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|a| a.is_zero())
    }

    pub fn eval_uv(&self, u0: FieldElement, v0: FieldElement) -> FieldElement {
        // Σ c_j u0^(d−j) v0^j by Horner in v0 with u0 powers
        let d = self.degree();
        let mut upow = vec![self.ctx.one(); d + 1];
        for i in 1..=d {
            upow[i] = upow[i - 1] * u0;
        }
        let mut acc = self.ctx.zero();
        let mut vp = self.ctx.one();
        for j in 0..=d {
            acc += self.c[j] * upow[d - j] * vp;
            vp *= v0;
        }
        acc
    }

    pub fn eval(&self, p: P1Point) -> FieldElement {
        self.eval_uv(p.u, p.v)
    }

    pub fn add(&self, o: &BinaryForm) -> Result<BinaryForm> {
        if self.degree() != o.degree() {
            return Err(Error::DegreeMismatch(self.degree(), o.degree()));
        }
        Ok(BinaryForm { ctx: self.ctx, c: self.c.iter().zip(&o.c).map(|(&a, &b)| a + b).collect() })
    }

    pub fn mul(&self, o: &BinaryForm) -> BinaryForm {
        let mut c = vec![self.ctx.zero(); self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        BinaryForm { ctx: self.ctx, c }
    }

    pub fn scale(&self, a: FieldElement) -> BinaryForm {
        BinaryForm { ctx: self.ctx, c: self.c.iter().map(|&x| x * a).collect() }
    }

    pub fn square(&self) -> BinaryForm {
        let mut c = vec![self.ctx.zero(); 2 * self.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            c[2 * i] = a.square();
        }
        BinaryForm { ctx: self.ctx, c }
    }

    pub fn pow(&self, n: usize) -> BinaryForm {
        let mut acc = BinaryForm::constant(self.ctx.one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `σ*f = f(αu + βv, γu + δv)`.
    pub fn substitute(&self, s: &LinearMap2) -> BinaryForm {
        let d = self.degree();
        let l1 = BinaryForm::linear(s.alpha, s.beta);
        let l2 = BinaryForm::linear(s.gamma, s.delta);
        let mut p1 = vec![BinaryForm::constant(self.ctx.one())];
        let mut p2 = vec![BinaryForm::constant(self.ctx.one())];
        for i in 1..=d {
            p1.push(p1[i - 1].mul(&l1));
            p2.push(p2[i - 1].mul(&l2));
        }
        let mut out = BinaryForm::zero(self.ctx, d);
        for (j, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let t = p1[d - j].mul(&p2[j]);
            for (i, &b) in t.c.iter().enumerate() {
                out.c[i] += a * b;
            }
        }
        out
    }

    /// ∂f/∂u; the zero form of degree 0 when d = 0.
    pub fn derivative_u(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(self.ctx, 0);
        }
        let c = (0..d).map(|j| if (d - j) % 2 == 1 { self.c[j] } else { self.ctx.zero() }).collect();
        BinaryForm { ctx: self.ctx, c }
    }

    /// ∂f/∂v.
    pub fn derivative_v(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(self.ctx, 0);
        }
        let c = (1..=d).map(|j| if j % 2 == 1 { self.c[j] } else { self.ctx.zero() }).collect();
        BinaryForm { ctx: self.ctx, c }
    }

    /// `f(1, t)`.
    pub fn dehomogenize(&self) -> Poly {
        Poly::new(self.ctx, self.c.clone())
    }

    /// `f(t, 1)`.
    pub fn dehomogenize_v(&self) -> Poly {
        Poly::new(self.ctx, self.c.iter().rev().copied().collect())
    }

    /// Homogenize `p(t)` to degree `d` with `t = v/u`.
    pub fn homogenize(p: &Poly, d: usize) -> BinaryForm {
        let deg = p.degree().unwrap_or(0);
        assert!(deg <= d, "degree too small for homogenization");
        let mut f = BinaryForm::zero(p.ctx(), d);
        for j in 0..=deg.min(d) {
            f.c[j] = p.coeff(j);
        }
        f
    }

    /// Vanishing order at `[0:1]`.
    pub fn multiplicity_at_infinity(&self) -> usize {
        let deg = self.dehomogenize().degree().unwrap_or(0);
        self.degree() - deg
    }

    /// Exact division by another form.
    pub fn div_exact(&self, o: &BinaryForm) -> Option<BinaryForm> {
        let d = self.degree().checked_sub(o.degree())?;
        if o.is_zero() {
            return None;
        }
        // dividing coefficient vectors as polynomials in v/u keeps homogeneity
        let (q, r) = self.dehomogenize().divrem(&o.dehomogenize());
        if !r.is_zero() || q.degree().unwrap_or(0) > d {
            return None;
        }
        let q = BinaryForm::homogenize(&q, d);
        (q.mul(o) == *self).then_some(q)
    }

    pub fn embed(&self, e: &Embedding) -> BinaryForm {
        BinaryForm { ctx: e.target(), c: self.c.iter().map(|&a| e.apply(a)).collect() }
    }

    pub fn embed_to(&self, target: FieldCtx) -> Result<BinaryForm> {
        Ok(self.embed(&Embedding::new(self.ctx, target)?))
    }

    /// Roots on P¹ over `target` with multiplicities, sorted.
    pub fn roots_p1(&self, target: FieldCtx) -> Result<Vec<(P1Point, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        let f = self.embed_to(target)?;
        let p = f.dehomogenize();
        let mut out: Vec<(P1Point, usize)> = if target.k() <= 16 {
            roots_by_scan(&p)
        } else {
            p.roots_with_multiplicity()
        }
        .into_iter()
        .map(|(r, m)| (P1Point::affine(r), m))
        .collect();
        let mi = f.multiplicity_at_infinity();
        if mi > 0 {
            out.push((P1Point::infinity(target), mi));
        }
        out.sort();
        Ok(out)
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        if self.degree() == 0 {
            return Ok(true);
        }
        if self.derivative_u().is_zero() && self.derivative_v().is_zero() {
            return Ok(false);
        }
        let p = self.dehomogenize();
        let affine_ok = p.degree() == Some(0) || p.is_squarefree();
        Ok(affine_ok && self.multiplicity_at_infinity() <= 1)
    }

    pub fn squarefree_radical(&self) -> Result<BinaryForm> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        let r = self.dehomogenize().radical();
        let d = r.degree().unwrap_or(0) + usize::from(self.multiplicity_at_infinity() > 0);
        Ok(BinaryForm::homogenize(&r, d))
    }

    pub fn to_json(&self) -> Value {
        json!({"degree": self.degree(), "coeffs": self.c.iter().map(|a| a.to_hex()).collect::<Vec<_>>()})
    }

    pub fn from_json(v: &Value, ctx: FieldCtx) -> Result<BinaryForm> {
        let d = v["degree"].as_u64().ok_or_else(|| Error::Parse("form: missing degree".into()))? as usize;
        let cs = v["coeffs"].as_array().ok_or_else(|| Error::Parse("form: missing coeffs".into()))?;
        if cs.len() != d + 1 {
            return Err(Error::Parse(format!("form: degree {d} needs {} coeffs, got {}", d + 1, cs.len())));
        }
        let c = cs
            .iter()
            .map(|x| ctx.parse_hex(x.as_str().ok_or_else(|| Error::Parse("form: hex string".into()))?))
            .collect::<Result<Vec<_>>>()?;
        Ok(BinaryForm { ctx, c })
    }
}

impl Add for &BinaryForm {
    type Output = BinaryForm;
    fn add(self, o: &BinaryForm) -> BinaryForm {
        BinaryForm::add(self, o).expect("degree mismatch")
    }
}

impl Mul for &BinaryForm {
    type Output = BinaryForm;
    fn mul(self, o: &BinaryForm) -> BinaryForm {
        BinaryForm::mul(self, o)
    }
}

fn roots_by_scan(p: &Poly) -> Vec<(FieldElement, usize)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    p.ctx()
        .elements()
        .filter(|&t| p.eval(t).is_zero())
        .map(|t| {
            let lin = Poly::linear(t);
            let mut m = 0;
            let mut f = p.clone();
            while let Some(q) = f.div_exact(&lin) {
                f = q;
                m += 1;
            }
            (t, m)
        })
        .collect()
}

/// Minimal odd exponent of `f(at + t)`; `None` if only even exponents remain.
pub fn odd_part_multiplicity(f: &Poly, at: FieldElement) -> Option<usize> {
    let g = f.translate(at);
    g.coeffs().iter().enumerate().find(|(j, a)| j % 2 == 1 && !a.is_zero()).map(|(j, _)| j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(k: u32) -> FieldCtx {
        FieldCtx::new(k).unwrap()
    }

    #[test]
    fn eval_examples() {
        let f = ctx(2);
        let o = f.one();
        let u3 = BinaryForm::monomial(o, 3, 0);
        assert!(u3.eval(P1Point::infinity(f)).is_zero());
        let g = BinaryForm::from_terms(f, 3, &[(o, 1), (o, 2)]);
        assert!(g.eval(P1Point::affine(o)).is_zero());
        assert_eq!(g.eval(P1Point::affine(f.generator())), o);
    }

    #[test]
    fn substitute_examples() {
        let f = ctx(3);
        let (o, z) = (f.one(), f.zero());
        let swap = LinearMap2::new(z, o, o, z).unwrap();
        let v3 = BinaryForm::monomial(o, 3, 3);
        assert_eq!(v3.substitute(&swap), BinaryForm::monomial(o, 3, 0));
        let shear = LinearMap2::new(o, z, o, o).unwrap();
        let u2v = BinaryForm::monomial(o, 3, 1);
        assert_eq!(u2v.substitute(&shear), BinaryForm::from_terms(f, 3, &[(o, 0), (o, 1)]));
        assert_eq!(u2v.substitute(&LinearMap2::identity(f)), u2v);
    }

    #[test]
    fn arithmetic_examples() {
        let f = ctx(4);
        let o = f.one();
        let upv = BinaryForm::linear(o, o);
        assert_eq!(upv.pow(2), BinaryForm::from_terms(f, 2, &[(o, 0), (o, 2)]));
        assert_eq!(upv.square(), upv.pow(2));
        let g = BinaryForm::from_terms(f, 3, &[(o, 1), (o, 2)]);
        assert_eq!(g.square(), BinaryForm::from_terms(f, 6, &[(o, 2), (o, 4)]));
        assert!(BinaryForm::u(f).add(&BinaryForm::zero(f, 2)).is_err());
    }

    #[test]
    fn derivative_examples() {
        let f = ctx(2);
        let o = f.one();
        assert!(BinaryForm::monomial(o, 2, 2).derivative_v().is_zero());
        assert_eq!(BinaryForm::monomial(o, 4, 3).derivative_v(), BinaryForm::monomial(o, 3, 2));
        let sq = BinaryForm::from_terms(f, 8, &[(o, 8), (o, 6), (o, 4), (o, 2)]);
        assert!(sq.derivative_v().is_zero());
    }

    #[test]
    fn roots_examples() {
        let f2 = ctx(1);
        let o = f2.one();
        let uv = BinaryForm::from_terms(f2, 3, &[(o, 1), (o, 2)]);
        let d = uv.pow(4);
        let r = d.roots_p1(f2).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|&(_, m)| m == 4));
        let u12 = BinaryForm::monomial(o, 12, 0);
        assert_eq!(u12.roots_p1(f2).unwrap(), vec![(P1Point::infinity(f2), 12)]);
        let q = BinaryForm::from_terms(f2, 2, &[(o, 0), (o, 1), (o, 2)]);
        assert!(q.roots_p1(f2).unwrap().is_empty());
        assert_eq!(q.roots_p1(ctx(2)).unwrap().len(), 2);
        assert_eq!(BinaryForm::zero(f2, 3).roots_p1(f2), Err(Error::ZeroForm));
    }

    #[test]
    fn squarefree_examples() {
        let f = ctx(1);
        let o = f.one();
        assert!(!BinaryForm::monomial(o, 12, 0).is_squarefree().unwrap());
        assert!(BinaryForm::from_terms(f, 3, &[(o, 1), (o, 2)]).is_squarefree().unwrap());
    }

    #[test]
    fn odd_part_examples() {
        let f = ctx(3);
        let o = f.one();
        let a = f.el(5);
        let t9 = Poly::monomial(o, 9);
        assert_eq!(odd_part_multiplicity(&t9, f.zero()), Some(9));
        let p = Poly::new(f, vec![f.zero(), f.zero(), a, o]);
        assert_eq!(odd_part_multiplicity(&p, f.zero()), Some(3));
        let e = Poly::new(f, vec![f.zero(), f.zero(), o, f.zero(), o]);
        assert_eq!(odd_part_multiplicity(&e, f.zero()), None);
    }

    #[test]
    fn json_roundtrip() {
        let f = ctx(4);
        let g = BinaryForm::from_terms(f, 3, &[(f.el(5), 0), (f.el(0xa), 3)]);
        let v = g.to_json();
        assert_eq!(v["coeffs"][0], "5");
        assert_eq!(BinaryForm::from_json(&v, f).unwrap(), g);
    }
}
