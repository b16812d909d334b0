//! The sextic `y² + y(a1x + a3) + x³ + a2x² + a4x + a6 = 0` in P(1,1,2,3).

use std::fmt;

use serde_json::{json, Value};

use crate::binform::{BinaryForm, LinearMap2, P1Point};
use crate::error::{Error, Result};
use crate::gf2k::{Embedding, FieldCtx, FieldElement};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SurfaceEq {
    pub a1: BinaryForm,
    pub a2: BinaryForm,
    pub a3: BinaryForm,
    pub a4: BinaryForm,
    pub a6: BinaryForm,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum BranchType {
    /// `a1x + a3 = ux + v³`
    TwistedCubic,
    /// `ux`
    LineConic,
    /// `uv(u+v)`
    ThreeLines,
    /// `u²v`
    DoubleLineLine,
    /// `u³`
    TripleLine,
}

impl BranchType {
    pub fn label(self) -> &'static str {
        match self {
            BranchType::TwistedCubic => "TWISTED_CUBIC",
            BranchType::LineConic => "LINE_CONIC",
            BranchType::ThreeLines => "THREE_LINES",
            BranchType::DoubleLineLine => "DOUBLE_LINE_LINE",
            BranchType::TripleLine => "TRIPLE_LINE",
        }
    }

    pub const ALL: [BranchType; 5] = [
        BranchType::TwistedCubic,
        BranchType::LineConic,
        BranchType::ThreeLines,
        BranchType::DoubleLineLine,
        BranchType::TripleLine,
    ];

    /// The canonical `(a1, a3)`.
    pub fn canonical(self, ctx: FieldCtx) -> (BinaryForm, BinaryForm) {
        let o = ctx.one();
        let u = BinaryForm::u(ctx);
        let z1 = BinaryForm::zero(ctx, 1);
        match self {
            BranchType::TwistedCubic => (u, BinaryForm::monomial(o, 3, 3)),
            BranchType::LineConic => (u, BinaryForm::zero(ctx, 3)),
            BranchType::ThreeLines => (z1, BinaryForm::from_terms(ctx, 3, &[(o, 1), (o, 2)])),
            BranchType::DoubleLineLine => (z1, BinaryForm::monomial(o, 3, 1)),
            BranchType::TripleLine => (z1, BinaryForm::monomial(o, 3, 0)),
        }
    }
}

/// `u ↦ σ(u,v)`, `x ↦ x + b2`, `y ↦ y + b1·x + b3`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Substitution {
    pub sigma: LinearMap2,
    pub b1: BinaryForm,
    pub b2: BinaryForm,
    pub b3: BinaryForm,
}

impl Substitution {
    pub fn identity(ctx: FieldCtx) -> Self {
        Substitution::linear(LinearMap2::identity(ctx))
    }

    pub fn linear(sigma: LinearMap2) -> Self {
        let ctx = sigma.ctx();
        Substitution {
            sigma,
            b1: BinaryForm::zero(ctx, 1),
            b2: BinaryForm::zero(ctx, 2),
            b3: BinaryForm::zero(ctx, 3),
        }
    }

    pub fn shift(b1: BinaryForm, b2: BinaryForm, b3: BinaryForm) -> Self {
        assert_eq!((b1.degree(), b2.degree(), b3.degree()), (1, 2, 3), "b_i degrees");
        let sigma = LinearMap2::identity(b1.ctx());
        Substitution { sigma, b1, b2, b3 }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.sigma.ctx()
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.is_identity() && self.b1.is_zero() && self.b2.is_zero() && self.b3.is_zero()
    }

    /// `(b1,b2,b3,σ)∘(b1',b2',b3',σ') = (σ'*b1 + b1', σ'*b2 + b2', σ'*b3 + b3' + σ'*b1·b2', σ∘σ')`.
    pub fn compose(&self, o: &Substitution) -> Substitution {
        let s = &o.sigma;
        let sb1 = self.b1.substitute(s);
        Substitution {
            sigma: self.sigma.compose(s),
            b1: &sb1 + &o.b1,
            b2: &self.b2.substitute(s) + &o.b2,
            b3: &(&self.b3.substitute(s) + &o.b3) + &sb1.mul(&o.b2),
        }
    }

    pub fn inverse(&self) -> Substitution {
        let si = self.sigma.inverse();
        let b1 = self.b1.substitute(&si);
        let b2 = self.b2.substitute(&si);
        let b3 = &self.b3.substitute(&si) + &b1.mul(&b2);
        Substitution { sigma: si, b1, b2, b3 }
    }

    pub fn embed(&self, e: &Embedding) -> Substitution {
        Substitution { sigma: self.sigma.embed(e), b1: self.b1.embed(e), b2: self.b2.embed(e), b3: self.b3.embed(e) }
    }

    pub fn to_json(&self) -> Value {
        json!({"b1": self.b1.to_json(), "b2": self.b2.to_json(), "b3": self.b3.to_json(), "sigma": self.sigma.to_json()})
    }

    pub fn from_json(v: &Value, ctx: FieldCtx) -> Result<Self> {
        let t = Substitution {
            sigma: LinearMap2::from_json(&v["sigma"], ctx)?,
            b1: BinaryForm::from_json(&v["b1"], ctx)?,
            b2: BinaryForm::from_json(&v["b2"], ctx)?,
            b3: BinaryForm::from_json(&v["b3"], ctx)?,
        };
        if (t.b1.degree(), t.b2.degree(), t.b3.degree()) != (1, 2, 3) {
            return Err(Error::Parse("tuple: b_i must have degrees 1, 2, 3".into()));
        }
        Ok(t)
    }
}

impl fmt::Debug for SurfaceEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] a1={} a2={} a3={} a4={} a6={}",
            self.ctx(),
            self.a1,
            self.a2,
            self.a3,
            self.a4,
            self.a6
        )
    }
}

/// A point of X away from the vertex: P¹ point plus affine `x`, `y`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SurfacePoint {
    pub base: P1Point,
    pub x: FieldElement,
    pub y: FieldElement,
}

impl SurfaceEq {
    pub fn new(a1: BinaryForm, a2: BinaryForm, a3: BinaryForm, a4: BinaryForm, a6: BinaryForm) -> Result<Self> {
        let degs = [a1.degree(), a2.degree(), a3.degree(), a4.degree(), a6.degree()];
        if degs != [1, 2, 3, 4, 6] {
            return Err(Error::Validation(format!("form degrees {degs:?}, expected [1, 2, 3, 4, 6]")));
        }
        let k = a1.ctx();
        if [&a2, &a3, &a4, &a6].iter().any(|f| f.ctx() != k) {
            return Err(Error::Validation("forms over different fields".into()));
        }
        if a1.is_zero() && a3.is_zero() {
            return Err(Error::Inseparable);
        }
        Ok(SurfaceEq { a1, a2, a3, a4, a6 })
    }

    pub fn ctx(&self) -> FieldCtx {
        self.a1.ctx()
    }

    pub fn forms(&self) -> [&BinaryForm; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    /// `Δ = a3⁴ + a1³a3³ + a1⁴(a4² + a1a3a4 + a2a3² + a1²a6)`.
    pub fn discriminant(&self) -> BinaryForm {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let a1sq = a1.square();
        let inner = &(&(&a4.square() + &a1.mul(a3).mul(a4)) + &a2.mul(&a3.square())) + &a1sq.mul(a6);
        let t1 = a3.square().square();
        let t2 = a1.mul(a3).pow(3);
        &(&t1 + &t2) + &a1sq.square().mul(&inner)
    }

    pub fn branch_type(&self) -> Result<BranchType> {
        if self.a1.is_zero() {
            if self.a3.is_zero() {
                return Err(Error::Inseparable);
            }
            let rad = self.a3.squarefree_radical()?;
            return Ok(match rad.degree() {
                3 => BranchType::ThreeLines,
                2 => BranchType::DoubleLineLine,
                _ => BranchType::TripleLine,
            });
        }
        // the root of a1 is [a1_v : a1_u] up to sign
        let root = (self.a1.coeff(1), self.a1.coeff(0));
        if self.a3.eval_uv(root.0, root.1).is_zero() {
            Ok(BranchType::LineConic)
        } else {
            Ok(BranchType::TwistedCubic)
        }
    }

    pub fn apply_substitution(&self, s: &Substitution) -> SurfaceEq {
        let sg = &s.sigma;
        let (a1, a2, a3, a4, a6) = (
            self.a1.substitute(sg),
            self.a2.substitute(sg),
            self.a3.substitute(sg),
            self.a4.substitute(sg),
            self.a6.substitute(sg),
        );
        let (b1, b2, b3) = (&s.b1, &s.b2, &s.b3);
        let n2 = &(&(&a2 + &a1.mul(b1)) + &b1.square()) + b2;
        let n4 = &(&(&(&a4 + &a3.mul(b1)) + &a1.mul(b1).mul(b2)) + &a1.mul(b3)) + &b2.square();
        let n6 = [
            a4.mul(b2),
            a3.mul(b3),
            a2.mul(&b2.square()),
            a1.mul(b2).mul(b3),
            b3.square(),
            b2.pow(3),
        ]
        .iter()
        .fold(a6.clone(), |acc, t| &acc + t);
        let n3 = &a3 + &a1.mul(b2);
        SurfaceEq { a1, a2: n2, a3: n3, a4: n4, a6: n6 }
    }

    /// `(a1, 0, a3, id)`.
    pub fn bertini(&self) -> Substitution {
        let ctx = self.ctx();
        Substitution {
            sigma: LinearMap2::identity(ctx),
            b1: self.a1.clone(),
            b2: BinaryForm::zero(ctx, 2),
            b3: self.a3.clone(),
        }
    }

    pub fn embed(&self, e: &Embedding) -> SurfaceEq {
        SurfaceEq {
            a1: self.a1.embed(e),
            a2: self.a2.embed(e),
            a3: self.a3.embed(e),
            a4: self.a4.embed(e),
            a6: self.a6.embed(e),
        }
    }

    pub fn embed_to(&self, target: FieldCtx) -> Result<SurfaceEq> {
        Ok(self.embed(&Embedding::new(self.ctx(), target)?))
    }

    fn eval_all(&self, p: P1Point) -> [FieldElement; 5] {
        [self.a1.eval(p), self.a2.eval(p), self.a3.eval(p), self.a4.eval(p), self.a6.eval(p)]
    }

    /// The singular point of X over `p`, if any; the two smoothness equations in
    /// `x` (and `y` where `a1(p) ≠ 0`) pin down the only candidate.
    pub fn singular_point_over(&self, p: P1Point) -> Option<SurfacePoint> {
        let [e1, e2, e3, e4, e6] = self.eval_all(p);
        let (x, y) = if !e1.is_zero() {
            let x = e3 / e1;
            (x, (x.square() + e4) / e1)
        } else {
            if !e3.is_zero() {
                return None;
            }
            let x = e4.sqrt();
            (x, (x * x.square() + e2 * x.square() + e4 * x + e6).sqrt())
        };
        let pt = SurfacePoint { base: p, x, y };
        self.is_singular_at(&pt).then_some(pt)
    }

    /// All four smoothness equations plus the surface equation at `pt`.
    pub fn is_singular_at(&self, pt: &SurfacePoint) -> bool {
        let p = pt.base;
        let (x, y) = (pt.x, pt.y);
        let [e1, e2, e3, e4, e6] = self.eval_all(p);
        let f = y.square() + y * (e1 * x + e3) + x * x.square() + e2 * x.square() + e4 * x + e6;
        let fy = e1 * x + e3;
        let fx = x.square() + e1 * y + e4;
        let partial = |d: fn(&BinaryForm) -> BinaryForm| {
            let g = |a: &BinaryForm| d(a).eval(p);
            g(&self.a1) * x * y + g(&self.a3) * y + g(&self.a2) * x.square() + g(&self.a4) * x + g(&self.a6)
        };
        f.is_zero()
            && fy.is_zero()
            && fx.is_zero()
            && partial(BinaryForm::derivative_u).is_zero()
            && partial(BinaryForm::derivative_v).is_zero()
    }

    /// Search for a singular point of X over GF(2^K). Exhaustive over P¹ for
    /// `K ≤ 16`; above that only over the candidate fibers cut out by Δ and the
    /// two derivative equations (and the common zeros of a1, a3).
    pub fn find_singular_point(&self, k_target: u32) -> Result<Option<SurfacePoint>> {
        if self.vertex_is_singular() {
            return Err(Error::Internal("vertex of P(1,1,2,3) reported singular".into()));
        }
        if k_target <= 16 {
            self.scan_singular_point(k_target)
        } else {
            self.candidate_singular_point(k_target)
        }
    }

    /// Chart `u = v = 0`: the only point of X there is `[0:0:1:1]`.
    pub fn vertex_is_singular(&self) -> bool {
        let z = self.ctx().zero();
        let o = self.ctx().one();
        let at0 = |f: &BinaryForm| f.eval_uv(z, z);
        let (x, y) = (o, o);
        let f = y * y + y * (at0(&self.a1) * x + at0(&self.a3)) + x * x * x + at0(&self.a2) * x * x + at0(&self.a4) * x + at0(&self.a6);
        let fx = x * x + at0(&self.a1) * y + at0(&self.a4);
        f.is_zero() && fx.is_zero()
    }

    pub fn scan_singular_point(&self, k_target: u32) -> Result<Option<SurfacePoint>> {
        let target = FieldCtx::new(k_target)?;
        let s = self.embed_to(target)?;
        Ok(P1Point::all(target).find_map(|p| s.singular_point_over(p)))
    }

    pub fn candidate_singular_point(&self, k_target: u32) -> Result<Option<SurfacePoint>> {
        let s = self.embed_to(FieldCtx::new(k_target)?)?;
        Ok(s.candidate_points().into_iter().find_map(|p| s.singular_point_over(p)))
    }

    pub fn is_smooth_bruteforce(&self, k_target: u32) -> Result<bool> {
        Ok(self.find_singular_point(k_target)?.is_none())
    }

    /// For `a1 ≠ 0`: the affine fibers `[1:t]` with `a1 ≠ 0` that can carry a
    /// singular point are roots of this (zero means every such fiber does).
    fn candidate_poly(&self) -> Poly {
        let ctx = self.ctx();
        let a1 = self.a1.dehomogenize();
        let a3 = self.a3.dehomogenize();
        let a4 = self.a4.dehomogenize();
        let w = a3.square().add(&a4.mul(&a1.square()));
        let gd = |d: fn(&BinaryForm) -> BinaryForm| {
            let g = |a: &BinaryForm| d(a).dehomogenize();
            [
                g(&self.a1).mul(&a3).mul(&w),
                g(&self.a3).mul(&w).mul(&a1),
                g(&self.a2).mul(&a3.square()).mul(&a1.square()),
                g(&self.a4).mul(&a3).mul(&a1.pow(3)),
                g(&self.a6).mul(&a1.pow(4)),
            ]
            .iter()
            .fold(Poly::zero(ctx), |acc, t| acc.add(t))
        };
        let delta = self.discriminant().dehomogenize();
        delta.gcd(&gd(BinaryForm::derivative_u)).gcd(&gd(BinaryForm::derivative_v))
    }

    /// Degree over the base of a field containing every candidate fiber.
    pub fn candidate_splitting_degree(&self) -> usize {
        let g = if self.a1.is_zero() { self.a3.dehomogenize() } else { self.candidate_poly() };
        if g.degree().unwrap_or(0) == 0 {
            1
        } else {
            g.splitting_degree()
        }
    }

    /// Two nested table fields over which every candidate fiber is rational.
    pub fn smoothness_levels(&self) -> Result<(u32, u32)> {
        let k1 = self.ctx().extension(self.candidate_splitting_degree())?;
        let k2 = crate::gf2k::table_degrees()
            .find(|&d| d > k1.k() && d % k1.k() == 0)
            .ok_or(Error::ExtensionCap(2 * k1.k() as u32))?;
        Ok((k1.k() as u32, k2 as u32))
    }

    /// Points of P¹ over which a singular point can lie.
    fn candidate_points(&self) -> Vec<P1Point> {
        let ctx = self.ctx();
        let mut pts = vec![P1Point::infinity(ctx)];
        if !self.a1.is_zero() {
            let g = self.candidate_poly();
            if g.is_zero() {
                pts.extend(ctx.elements().take(3).map(P1Point::affine));
            } else if g.degree().unwrap_or(0) > 0 {
                pts.extend(g.roots().into_iter().map(P1Point::affine));
            }
            pts.extend(self.a1.roots_p1(ctx).expect("a1 ≠ 0").into_iter().map(|(p, _)| p));
        } else {
            pts.extend(self.a3.roots_p1(ctx).expect("a3 ≠ 0").into_iter().map(|(p, _)| p));
        }
        pts.sort();
        pts.dedup();
        pts
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field_k": self.ctx().k(),
            "a1": self.a1.to_json(),
            "a2": self.a2.to_json(),
            "a3": self.a3.to_json(),
            "a4": self.a4.to_json(),
            "a6": self.a6.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let k = v["field_k"].as_u64().ok_or_else(|| Error::Parse("surface: missing field_k".into()))?;
        let ctx = FieldCtx::new(k as u32)?;
        let f = |name: &str| BinaryForm::from_json(&v[name], ctx);
        SurfaceEq::new(f("a1")?, f("a2")?, f("a3")?, f("a4")?, f("a6")?)
    }
}

/// Default oracle degree: `2·lcm(k, 12)` capped at 48 and moved onto the table.
pub fn default_oracle_degree(k: u8) -> u32 {
    let l = crate::poly::lcm(k as usize, 12) * 2;
    let want = l.min(48) as u32;
    crate::gf2k::table_degrees()
        .map(|d| d as u32)
        .filter(|&d| d % k as u32 == 0 && d <= want)
        .max()
        .unwrap_or(k as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(k: u32) -> FieldCtx {
        FieldCtx::new(k).unwrap()
    }

    fn surf(ctx: FieldCtx, bt: BranchType, a2: BinaryForm, a4: BinaryForm, a6: BinaryForm) -> SurfaceEq {
        let (a1, a3) = bt.canonical(ctx);
        SurfaceEq::new(a1, a2, a3, a4, a6).unwrap()
    }

    #[test]
    fn discriminant_cases_3_and_4() {
        let f = ctx(2);
        let o = f.one();
        let s3 = surf(f, BranchType::ThreeLines, BinaryForm::zero(f, 2), BinaryForm::zero(f, 4), BinaryForm::monomial(o, 6, 1));
        let uv = BinaryForm::from_terms(f, 3, &[(o, 1), (o, 2)]);
        assert_eq!(s3.discriminant(), uv.pow(4));
        let s4 = surf(f, BranchType::DoubleLineLine, BinaryForm::zero(f, 2), BinaryForm::zero(f, 4), BinaryForm::monomial(o, 6, 1));
        assert_eq!(s4.discriminant(), BinaryForm::monomial(o, 12, 4));
    }

    #[test]
    fn branch_types() {
        let f = ctx(1);
        let o = f.one();
        let z = || BinaryForm::zero(f, 2);
        let mk = |a1: BinaryForm, a3: BinaryForm| {
            SurfaceEq::new(a1, z(), a3, BinaryForm::zero(f, 4), BinaryForm::zero(f, 6)).unwrap().branch_type().unwrap()
        };
        assert_eq!(mk(BinaryForm::u(f), BinaryForm::monomial(o, 3, 3)), BranchType::TwistedCubic);
        assert_eq!(mk(BinaryForm::u(f), BinaryForm::monomial(o, 3, 0)), BranchType::LineConic);
        let z1 = BinaryForm::zero(f, 1);
        assert_eq!(mk(z1.clone(), BinaryForm::from_terms(f, 3, &[(o, 1), (o, 2)])), BranchType::ThreeLines);
        assert_eq!(mk(z1.clone(), BinaryForm::from_terms(f, 3, &[(o, 0), (o, 1)])), BranchType::DoubleLineLine);
        assert_eq!(mk(z1.clone(), BinaryForm::from_terms(f, 3, &[(o, 0), (o, 2)])), BranchType::DoubleLineLine);
        assert_eq!(mk(z1, BinaryForm::monomial(o, 3, 0)), BranchType::TripleLine);
        let e = SurfaceEq::new(BinaryForm::zero(f, 1), z(), BinaryForm::zero(f, 3), BinaryForm::zero(f, 4), BinaryForm::zero(f, 6));
        assert_eq!(e, Err(Error::Inseparable));
    }

    #[test]
    fn b3_shift_on_triple_line() {
        let f = ctx(2);
        let o = f.one();
        let s = surf(f, BranchType::TripleLine, BinaryForm::zero(f, 2), BinaryForm::zero(f, 4), BinaryForm::monomial(o, 6, 5));
        let sub = Substitution::shift(BinaryForm::zero(f, 1), BinaryForm::zero(f, 2), BinaryForm::monomial(o, 3, 3));
        let t = s.apply_substitution(&sub);
        let want = BinaryForm::from_terms(f, 6, &[(o, 5), (o, 3), (o, 6)]);
        assert_eq!(t.a6, want);
        assert_eq!(t.apply_substitution(&sub.inverse()), s);
    }

    #[test]
    fn bertini_squares_to_identity() {
        let f = ctx(2);
        let o = f.one();
        let s = surf(f, BranchType::ThreeLines, BinaryForm::zero(f, 2), BinaryForm::zero(f, 4), BinaryForm::monomial(o, 6, 1));
        let b = s.bertini();
        assert!(b.compose(&b).is_identity());
        assert_eq!(s.apply_substitution(&b), s);
    }

    #[test]
    fn degenerate_case5_is_singular() {
        let f = ctx(2);
        let o = f.one();
        let s = surf(f, BranchType::TripleLine, BinaryForm::zero(f, 2), BinaryForm::zero(f, 4), BinaryForm::monomial(o, 6, 6));
        assert!(!s.is_smooth_bruteforce(4).unwrap());
        assert!(!s.is_smooth_bruteforce(24).unwrap());
        let good = surf(f, BranchType::TripleLine, BinaryForm::zero(f, 2), BinaryForm::zero(f, 4), BinaryForm::monomial(o, 6, 5));
        assert!(good.is_smooth_bruteforce(4).unwrap());
        assert!(good.is_smooth_bruteforce(24).unwrap());
    }

    #[test]
    fn oracle_degree() {
        assert_eq!(default_oracle_degree(1), 24);
        assert_eq!(default_oracle_degree(2), 24);
        assert_eq!(default_oracle_degree(4), 24);
        assert_eq!(default_oracle_degree(16), 48);
    }
}
