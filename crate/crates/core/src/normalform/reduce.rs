//! Reduction of a smooth surface to its normal form.

use crate::binform::{BinaryForm, LinearMap2};
use crate::error::{Error, Result};
use crate::gf2k::{Embedding, FieldCtx, FieldElement};
use crate::elim::norm_quartic;
use crate::poly::Poly;
use crate::surface::{BranchType, Substitution, SurfaceEq};

use super::{build_unchecked, validate_conditions, ConditionKind, NormalFormCase, NormalFormParams};

/// `surface.embed(field).apply_substitution(chain) == build(params)`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub case: NormalFormCase,
    pub params: NormalFormParams,
    pub chain: Substitution,
    pub field: FieldCtx,
}

struct Reducer {
    cur: SurfaceEq,
    acc: Substitution,
}

impl Reducer {
    fn new(s: &SurfaceEq) -> Self {
        Reducer { cur: s.clone(), acc: Substitution::identity(s.ctx()) }
    }

    fn ctx(&self) -> FieldCtx {
        self.cur.ctx()
    }

    fn apply(&mut self, t: Substitution) {
        self.cur = self.cur.apply_substitution(&t);
        self.acc = self.acc.compose(&t);
    }

    fn apply_sigma(&mut self, alpha: FieldElement, beta: FieldElement, gamma: FieldElement, delta: FieldElement) -> Result<()> {
        self.apply(Substitution::linear(LinearMap2::new(alpha, beta, gamma, delta)?));
        Ok(())
    }

    fn shift(&mut self, b1: BinaryForm, b2: BinaryForm, b3: BinaryForm) {
        self.apply(Substitution::shift(b1, b2, b3));
    }

    fn extend_by(&mut self, d: usize) -> Result<()> {
        if d <= 1 {
            return Ok(());
        }
        let e = Embedding::new(self.ctx(), self.ctx().extension(d)?)?;
        self.cur = self.cur.embed(&e);
        self.acc = self.acc.embed(&e);
        Ok(())
    }

    fn el(&self, x: FieldElement) -> FieldElement {
        x.embed(self.ctx()).expect("values live in a subfield of the working field")
    }

    fn poly(&self, p: &Poly) -> Poly {
        p.embed_to(self.ctx()).expect("polynomials live in a subfield of the working field")
    }

    /// Smallest root in the smallest extension holding one.
    fn some_root(&mut self, p: &Poly) -> Result<FieldElement> {
        let p = self.poly(p);
        let d = p.min_root_degree().ok_or_else(|| Error::Internal("constant polynomial has no root".into()))?;
        self.extend_by(d)?;
        Ok(self.poly(&p).roots()[0])
    }

    /// All roots, over the splitting field.
    fn all_roots(&mut self, p: &Poly) -> Result<Vec<(FieldElement, usize)>> {
        let p = self.poly(p);
        if p.degree().unwrap_or(0) == 0 {
            return Ok(Vec::new());
        }
        self.extend_by(p.splitting_degree())?;
        Ok(self.poly(&p).roots_with_multiplicity())
    }

    fn t_poly(&self, c: &[FieldElement]) -> Poly {
        Poly::new(self.ctx(), c.iter().map(|&x| self.el(x)).collect())
    }

    /// A root of `t² + t = c`.
    fn as_root(&mut self, c: FieldElement) -> Result<FieldElement> {
        let o = self.ctx().one();
        let p = self.t_poly(&[c, o, o]);
        self.some_root(&p)
    }

    /// A root of `tⁿ = x`.
    fn nth_root(&mut self, x: FieldElement, n: usize) -> Result<FieldElement> {
        let mut c = vec![self.ctx().zero(); n + 1];
        c[0] = x;
        c[n] = self.ctx().one();
        let p = self.t_poly(&c);
        self.some_root(&p)
    }

    fn form(&self, d: usize, t: &[(FieldElement, usize)]) -> BinaryForm {
        let t: Vec<_> = t.iter().map(|&(a, j)| (self.el(a), j)).collect();
        BinaryForm::from_terms(self.ctx(), d, &t)
    }

    fn zero(&self, d: usize) -> BinaryForm {
        BinaryForm::zero(self.ctx(), d)
    }

    fn branch(&mut self) -> Result<BranchType> {
        let ctx = self.ctx();
        let (z, o) = (ctx.zero(), ctx.one());
        let bt = if !self.cur.a1.is_zero() {
            let (c0, c1) = (self.cur.a1.coeff(0), self.cur.a1.coeff(1));
            if !c0.is_zero() {
                self.apply_sigma(c0.inv()?, c1, z, c0)?;
            } else {
                self.apply_sigma(z, o, c1.inv()?, z)?;
            }
            let a3 = self.cur.a3.clone();
            let b2 = self.form(2, &[(a3.coeff(0), 0), (a3.coeff(1), 1), (a3.coeff(2), 2)]);
            self.shift(self.zero(1), b2, self.zero(3));
            let lam = self.cur.a3.coeff(3);
            if lam.is_zero() {
                BranchType::LineConic
            } else {
                let d = self.nth_root(self.el(lam).inv()?, 3)?;
                let (z, o) = (self.ctx().zero(), self.ctx().one());
                self.apply_sigma(o, z, z, d)?;
                BranchType::TwistedCubic
            }
        } else {
            let affine = self.cur.a3.dehomogenize();
            if affine.degree().unwrap_or(0) > 0 {
                self.extend_by(affine.splitting_degree())?;
            }
            let ctx = self.ctx();
            let (z, o) = (ctx.zero(), ctx.one());
            let roots = self.cur.a3.roots_p1(ctx)?;
            match roots.len() {
                3 => {
                    let (r1, r2, r3) = (roots[0].0, roots[1].0, roots[2].0);
                    let dd = r2.u() * r1.v() + r1.u() * r2.v();
                    let s = (r3.u() * r1.v() + r1.u() * r3.v()) / dd;
                    let t = (r2.u() * r3.v() + r3.u() * r2.v()) / dd;
                    self.apply_sigma(s * r2.u(), t * r1.u(), s * r2.v(), t * r1.v())?;
                    let c = self.cur.a3.coeff(1);
                    let l = self.nth_root(c.inv()?, 3)?;
                    self.apply_sigma(l, self.ctx().zero(), self.ctx().zero(), l)?;
                    BranchType::ThreeLines
                }
                2 => {
                    let (rd, rs) = if roots[0].1 == 2 { (roots[0].0, roots[1].0) } else { (roots[1].0, roots[0].0) };
                    self.apply_sigma(rs.u(), rd.u(), rs.v(), rd.v())?;
                    let c = self.cur.a3.coeff(1);
                    self.apply_sigma(o, z, z, c.inv()?)?;
                    BranchType::DoubleLineLine
                }
                _ => {
                    let r = roots[0].0;
                    let (a, g) = if r.u().is_zero() { (o, z) } else { (z, o) };
                    self.apply_sigma(a, r.u(), g, r.v())?;
                    let c = self.cur.a3.coeff(0);
                    let l = self.nth_root(c.inv()?, 3)?;
                    self.apply_sigma(l, self.ctx().zero(), self.ctx().zero(), self.ctx().one())?;
                    BranchType::TripleLine
                }
            }
        };
        let (a1, a3) = bt.canonical(self.ctx());
        if self.cur.a1 != a1 || self.cur.a3 != a3 {
            return Err(Error::Internal(format!("branch normalization missed {}", bt.label())));
        }
        Ok(bt)
    }

    fn c(f: &BinaryForm, j: usize) -> FieldElement {
        f.coeff(j)
    }

    fn case1(&mut self) -> Result<NormalFormCase> {
        let s = &self.cur;
        let ctx = self.ctx();
        let v = |n| Poly::monomial(ctx.one(), n);
        let f = v(9)
            .add(&s.a2.dehomogenize().mul(&v(6)))
            .add(&s.a4.dehomogenize().mul(&v(3)))
            .add(&s.a6.dehomogenize());
        let roots = self.all_roots(&f.derivative())?;
        let m = roots.iter().map(|r| r.1).max().ok_or(Error::Internal("F' has no roots".into()))?;
        let v0 = roots.iter().find(|r| r.1 == m).expect("max exists").0;
        let (z, o) = (self.ctx().zero(), self.ctx().one());
        let sigma = LinearMap2::new(o, z, v0, o)?;
        let b2 = self.form(2, &[(v0 * v0.square(), 0), (v0.square(), 1), (v0, 2)]);
        self.apply(Substitution { sigma, b1: self.zero(1), b2, b3: self.zero(3) });
        let p = self.as_root(Self::c(&self.cur.a2, 0))?;
        let (a2, a4, a6) = (self.cur.a2.clone(), self.cur.a4.clone(), self.cur.a6.clone());
        let q = Self::c(&a2, 1);
        let p = self.el(p);
        let b1 = self.form(1, &[(p, 0), (q, 1)]);
        let b3 = self.form(3, &[(Self::c(&a6, 3), 0), (Self::c(&a4, 1), 1), (Self::c(&a6, 5), 2), (Self::c(&a4, 3) + p, 3)]);
        self.shift(b1, self.zero(2), b3);
        let a4 = &self.cur.a4;
        let (b, c, d) = (a4.coeff(0), a4.coeff(2), a4.coeff(4));
        let ctx = self.ctx();
        let fp = Poly::new(ctx, vec![ctx.zero(), ctx.zero(), b, ctx.zero(), c, ctx.zero(), d, ctx.zero(), ctx.one()]);
        if fp.radical().degree() == Some(4) {
            return Ok(NormalFormCase::C1a);
        }
        if !b.is_zero() {
            return Err(Error::Internal("root of highest multiplicity not at 0".into()));
        }
        Ok(match (c.is_zero(), d.is_zero()) {
            (false, false) => NormalFormCase::C1b,
            (true, false) => NormalFormCase::C1c,
            (false, true) => NormalFormCase::C1d,
            (true, true) => NormalFormCase::C1e,
        })
    }

    /// Case 2 with `a4(0,1)` already in {0,1}: clear `a2` except `v²` and `a4` except `v⁴`.
    fn case2_clear(&mut self) -> Result<()> {
        let p = self.as_root(Self::c(&self.cur.a2, 0))?;
        let p = self.el(p);
        let (a2, a4) = (self.cur.a2.clone(), self.cur.a4.clone());
        let b1 = self.form(1, &[(p, 0), (a2.coeff(1), 1)]);
        let b3 = self.form(3, &[(a4.coeff(0), 0), (a4.coeff(1), 1), (a4.coeff(2), 2), (a4.coeff(3), 3)]);
        self.shift(b1, self.zero(2), b3);
        Ok(())
    }

    fn translate_v(&mut self, t0: FieldElement) -> Result<()> {
        let (z, o) = (self.ctx().zero(), self.ctx().one());
        self.apply_sigma(o, z, self.el(t0), o)
    }

    fn scale_v(&mut self, d: FieldElement) -> Result<()> {
        let (z, o) = (self.ctx().zero(), self.ctx().one());
        self.apply_sigma(o, z, z, self.el(d))
    }

    fn case2(&mut self) -> Result<NormalFormCase> {
        let a44 = Self::c(&self.cur.a4, 4);
        if !a44.is_zero() {
            self.scale_v(a44.inv()?.sqrt().sqrt())?;
        }
        let dq = self.cur.a6.dehomogenize().derivative();
        if dq.is_zero() {
            return Err(Error::NotSmooth);
        }
        let sing = self.all_roots(&dq)?;
        if !a44.is_zero() {
            if let Some(&(t0, _)) = sing.first() {
                self.translate_v(t0)?;
                self.case2_clear()?;
                let (e, g) = (self.cur.a6.coeff(3), self.cur.a6.coeff(5));
                return match (e.is_zero(), g.is_zero()) {
                    (false, false) => Ok(NormalFormCase::C2a),
                    (true, false) => Ok(NormalFormCase::C2b),
                    (false, true) => Ok(NormalFormCase::C2c),
                    (true, true) => Err(Error::NotSmooth),
                };
            }
            self.case2_clear()?;
            let a6 = self.cur.a6.clone();
            let o = self.ctx().one();
            let z = self.ctx().zero();
            let m = self.t_poly(&[a6.coeff(0), a6.coeff(1), a6.coeff(2), z, a6.coeff(4), z, a6.coeff(6), z, o]);
            let mu = self.some_root(&m)?;
            self.translate_v(mu)?;
            self.case2_clear()?;
            return Ok(NormalFormCase::C2d);
        }
        let Some(&(t0, _)) = sing.first() else {
            return Err(Error::NotSmooth);
        };
        self.translate_v(t0)?;
        self.case2_clear()?;
        let (e, g) = (self.cur.a6.coeff(3), self.cur.a6.coeff(5));
        if g.is_zero() {
            return Err(Error::NotSmooth);
        }
        if !e.is_zero() {
            self.scale_v((e / g).sqrt())?;
            Ok(NormalFormCase::C2e)
        } else {
            let d = self.nth_root(g.inv()?, 5)?;
            self.scale_v(d)?;
            Ok(NormalFormCase::C2f)
        }
    }

    /// `b2` through the square roots of `a4` at `[1:0]`, `[0:1]`; middle coefficient given.
    fn clear_a4_ends(&mut self, mid: FieldElement) {
        let a4 = self.cur.a4.clone();
        let b2 = self.form(2, &[(a4.coeff(0).sqrt(), 0), (mid, 1), (a4.coeff(4).sqrt(), 2)]);
        self.shift(self.zero(1), b2, self.zero(3));
    }

    fn clear_a2_squares(&mut self) {
        let a2 = self.cur.a2.clone();
        let b1 = self.form(1, &[(a2.coeff(0).sqrt(), 0), (a2.coeff(2).sqrt(), 1)]);
        self.shift(b1, self.zero(2), self.zero(3));
    }

    fn case3(&mut self) -> Result<NormalFormCase> {
        let a4 = self.cur.a4.clone();
        let s11: FieldElement = a4.coeffs().iter().copied().sum();
        let mid = s11.sqrt() + a4.coeff(0).sqrt() + a4.coeff(4).sqrt();
        self.clear_a4_ends(mid);
        self.clear_a2_squares();
        let a6 = self.cur.a6.clone();
        let (r0, r3) = (a6.coeff(0).sqrt(), a6.coeff(6).sqrt());
        let r1 = self.as_root(self.el(a6.coeff(2)) + self.el(r0))?;
        let r2 = self.as_root(self.el(a6.coeff(4)) + self.el(r3))?;
        let b3 = self.form(3, &[(r0, 0), (r1, 1), (r2, 2), (r3, 3)]);
        self.shift(self.zero(1), self.zero(2), b3);
        Ok(NormalFormCase::C3)
    }

    fn case4(&mut self) -> Result<NormalFormCase> {
        let mid = self.cur.a2.coeff(1);
        self.clear_a4_ends(mid);
        self.clear_a2_squares();
        let a6 = self.cur.a6.clone();
        let (r0, r3) = (a6.coeff(0).sqrt(), a6.coeff(6).sqrt());
        let r2 = (a6.coeff(4) + r3).sqrt();
        let r1 = self.as_root(self.el(a6.coeff(2)))?;
        let b3 = self.form(3, &[(r0, 0), (r1, 1), (r2, 2), (r3, 3)]);
        self.shift(self.zero(1), self.zero(2), b3);
        let f = self.cur.a6.coeff(5);
        if f.is_zero() {
            return Err(Error::NotSmooth);
        }
        let a = self.nth_root(f, 9)?;
        let z = self.ctx().zero();
        self.apply_sigma(a, z, z, a.inv()?.square())?;
        Ok(NormalFormCase::C4)
    }

    /// With `b1 = b2 = 0`: `b3` killing `u⁶, u⁵v, u⁴v², u³v³` of `a6` against `a3 = u³`.
    fn case5_clear_a6(&mut self) -> Result<()> {
        let a6 = self.cur.a6.clone();
        let r1 = a6.coeff(1);
        let r2 = a6.coeff(2) + r1.square();
        let r3 = a6.coeff(3);
        let r0 = self.as_root(self.el(a6.coeff(0)))?;
        let b3 = self.form(3, &[(r0, 0), (r1, 1), (r2, 2), (r3, 3)]);
        self.shift(self.zero(1), self.zero(2), b3);
        Ok(())
    }

    fn case5(&mut self) -> Result<NormalFormCase> {
        let a2 = self.cur.a2.clone();
        self.shift(self.zero(1), a2.embed_to(self.ctx())?, self.zero(3));
        let r = self.cur.a4.coeff(4).sqrt().sqrt();
        let b1 = self.form(1, &[(r, 1)]);
        self.shift(b1.clone(), b1.square(), self.zero(3));
        let a6 = self.cur.a6.clone();
        let r2 = a6.coeff(4).sqrt();
        let r1 = (a6.coeff(2) + r2).sqrt();
        let r3 = a6.coeff(6).sqrt();
        let r0 = self.as_root(self.el(a6.coeff(0)))?;
        let b3 = self.form(3, &[(r0, 0), (r1, 1), (r2, 2), (r3, 3)]);
        self.shift(self.zero(1), self.zero(2), b3);
        let f = self.cur.a6.coeff(5);
        if f.is_zero() {
            return Err(Error::NotSmooth);
        }
        let d = self.nth_root(f.inv()?, 5)?;
        self.scale_v(d)?;

        // v ↦ v + μ²u with b1 = pu, b2 = p²u²: the u⁴ term of a4 and the u²v⁴
        // term left after clearing a6 must vanish together.
        let (a4, a6) = (self.cur.a4.clone(), self.cur.a6.clone());
        let ctx = self.ctx();
        let (z, o) = (ctx.zero(), ctx.one());
        let (a0, aa, bb, cc) = (a4.coeff(0), a4.coeff(1), a4.coeff(2), a4.coeff(3));
        let (dd, ee) = (a6.coeff(1), a6.coeff(3));
        let pm = |c: &[(FieldElement, usize)]| {
            let n = c.iter().map(|x| x.1).max().unwrap_or(0);
            let mut v = vec![z; n + 1];
            for &(a, j) in c {
                v[j] += a;
            }
            Poly::new(ctx, v)
        };
        let cmu = pm(&[(a0, 0), (aa, 2), (bb, 4), (cc, 6)]);
        let l2 = pm(&[(bb, 0), (cc, 2)]);
        let l1 = pm(&[(aa, 0), (cc, 4)]).square();
        let inner = pm(&[(dd, 0), (ee, 4), (o, 8)]).square();
        let l0 = pm(&[(o, 1), (ee, 2)]).add(&inner).add(&cmu.mul(&l1));
        let norm = norm_quartic(&[l0.clone(), l1.clone(), l2.clone(), Poly::zero(ctx)], &cmu);
        let mu = if norm.is_zero() { z } else { self.some_root(&norm)? };
        let mu = self.el(mu);
        let at = |p: &Poly| self.poly(p).eval(mu);
        let qp = self.t_poly(&[at(&l0), at(&l1), at(&l2)]);
        let o = self.ctx().one();
        let zz = self.ctx().zero();
        let pp = self.t_poly(&[at(&cmu), o, zz, zz, o]);
        let g = if qp.is_zero() { pp } else { pp.gcd(&qp) };
        let p = self.some_root(&g)?;
        let (mu, p) = (self.el(mu), self.el(p));
        let lam = mu.square();
        let (z, o) = (self.ctx().zero(), self.ctx().one());
        let b1 = self.form(1, &[(p, 0)]);
        let sigma = LinearMap2::new(o, z, lam, o)?;
        self.apply(Substitution { sigma, b2: b1.square(), b1, b3: self.zero(3) });
        self.case5_clear_a6()?;
        Ok(NormalFormCase::C5)
    }

    fn params(&self, case: NormalFormCase) -> Result<NormalFormParams> {
        let s = &self.cur;
        let (a2, a4, a6) = (&s.a2, &s.a4, &s.a6);
        let vals: Vec<FieldElement> = case
            .param_names()
            .iter()
            .map(|&n| match (case.branch_type(), n) {
                (BranchType::TwistedCubic, 'a') => a2.coeff(2),
                (BranchType::TwistedCubic, 'b') => a4.coeff(0),
                (BranchType::TwistedCubic, 'c') => a4.coeff(2),
                (BranchType::TwistedCubic, 'd') => a4.coeff(4),
                (BranchType::TwistedCubic, _) => a6.coeff(2 * (n as usize - 'e' as usize)),
                (BranchType::LineConic, 'a') => a2.coeff(2),
                (BranchType::LineConic, _) => a6.coeff(match n {
                    'b' => 0,
                    'c' => 1,
                    'd' => 2,
                    'e' => 3,
                    'f' => 4,
                    'g' => 5,
                    _ => 6,
                }),
                (BranchType::ThreeLines, 'a') => a2.coeff(1),
                (BranchType::ThreeLines, 'b') => a4.coeff(1),
                (BranchType::ThreeLines, 'c') => a4.coeff(3),
                (BranchType::ThreeLines, _) => a6.coeff(2 * (n as usize - 'd' as usize) + 1),
                (BranchType::DoubleLineLine, 'd') => a6.coeff(1),
                (BranchType::DoubleLineLine, 'e') => a6.coeff(3),
                (_, 'd') => a6.coeff(6),
                (_, _) => a4.coeff(n as usize - 'a' as usize + 1),
            })
            .collect();
        NormalFormParams::new(case, vals)
    }
}

/// `Norm_{F[μ][p]/(p⁴ + p + c)}(q0 + q1 p + q2 p²)` as a polynomial in μ.
/// Map `(a1, a3)` to the canonical pair of its branch type.
pub fn normalize_branch(a1: &BinaryForm, a3: &BinaryForm) -> Result<(BranchType, Substitution)> {
    let ctx = a1.ctx();
    let s = SurfaceEq::new(a1.clone(), BinaryForm::zero(ctx, 2), a3.clone(), BinaryForm::zero(ctx, 4), BinaryForm::zero(ctx, 6))?;
    let mut r = Reducer::new(&s);
    let bt = r.branch()?;
    Ok((bt, r.acc))
}

pub fn reduce_to_normal_form(s: &SurfaceEq) -> Result<Reduction> {
    let mut r = Reducer::new(s);
    let case = match r.branch()? {
        BranchType::TwistedCubic => r.case1()?,
        BranchType::LineConic => r.case2()?,
        BranchType::ThreeLines => r.case3()?,
        BranchType::DoubleLineLine => r.case4()?,
        BranchType::TripleLine => r.case5()?,
    };
    let params = r.params(case)?;
    if validate_conditions(&params).iter().any(|c| c.kind == ConditionKind::Smoothness) {
        return Err(Error::NotSmooth);
    }
    if build_unchecked(&params) != r.cur {
        return Err(Error::Internal(format!("reduction to {case} left {:?}", r.cur)));
    }
    let field = r.ctx();
    if s.embed_to(field)?.apply_substitution(&r.acc) != r.cur {
        return Err(Error::Internal("substitution chain does not reproduce the normal form".into()));
    }
    Ok(Reduction { case, params, chain: r.acc, field })
}
