//! Singular points of the components of the reduced ramification curve.

use std::fmt;

use serde_json::{json, Value};

use crate::binform::{odd_part_multiplicity, P1Point};
use crate::error::{Error, Result};
use crate::gf2k::{FieldCtx, FieldElement};
use crate::poly::{lcm, Poly};
use crate::surface::{BranchType, SurfaceEq};

use super::{NormalFormCase::*, NormalFormParams};

/// A point `[u:v:x]` of P(1,1,2), normalized to `u = 1` or `(u,v) = (0,1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoint {
    pub u: FieldElement,
    pub v: FieldElement,
    pub x: FieldElement,
}

impl QPoint {
    pub fn new(u: FieldElement, v: FieldElement, x: FieldElement) -> Result<Self> {
        if !u.is_zero() {
            let i = u.inv()?;
            Ok(QPoint { u: u.ctx().one(), v: v * i, x: x * i * i })
        } else if !v.is_zero() {
            let i = v.inv()?;
            Ok(QPoint { u, v: v.ctx().one(), x: x * i * i })
        } else {
            Err(Error::Validation("[0:0:x] is the vertex".into()))
        }
    }

    pub fn over(p: P1Point, x: FieldElement) -> Self {
        QPoint::new(p.u(), p.v(), x).expect("p is a point of P¹")
    }

    pub fn base(&self) -> P1Point {
        P1Point::new(self.u, self.v).expect("nonzero")
    }

    pub fn embed(&self, target: FieldCtx) -> Result<Self> {
        Ok(QPoint { u: self.u.embed(target)?, v: self.v.embed(target)?, x: self.x.embed(target)? })
    }

    pub fn to_json(&self) -> Value {
        json!([self.u.to_hex(), self.v.to_hex(), self.x.to_hex()])
    }
}

impl fmt::Debug for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.u, self.v, self.x)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingularityRecord {
    pub location: QPoint,
    /// `n` of `A_n`; `None` when the local model has no odd part.
    pub a_n: Option<usize>,
    pub component: usize,
}

impl SingularityRecord {
    pub fn label(&self) -> String {
        match self.a_n {
            Some(n) => format!("A_{n}"),
            None => "non-reduced".into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"location": self.location.to_json(), "type": self.label(), "component": self.component})
    }
}

impl fmt::Debug for SingularityRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?} (R{})", self.label(), self.location, self.component)
    }
}

fn a_type(f: &Poly, at: FieldElement) -> Option<usize> {
    odd_part_multiplicity(f, at).map(|m| m - 1)
}

/// `x³ + a2(p)x² + a4(p)x + a6(p)`: the fiber curve of R over `p` on the branch.
fn fiber_cubic(s: &SurfaceEq, p: P1Point) -> Poly {
    let ctx = p.ctx();
    Poly::new(ctx, vec![s.a6.eval(p), s.a4.eval(p), s.a2.eval(p), ctx.one()])
}

/// The cubic component over a line of B: single singular point at `x = a4(p)^{1/2}`.
fn line_component(s: &SurfaceEq, p: P1Point, component: usize) -> SingularityRecord {
    let x0 = s.a4.eval(p).sqrt();
    SingularityRecord { location: QPoint::over(p, x0), a_n: a_type(&fiber_cubic(s, p), x0), component }
}

/// `v⁹ + a2(1,v)v⁶ + a4(1,v)v³ + a6(1,v)`.
fn twisted_cubic_model(s: &SurfaceEq) -> Poly {
    let ctx = s.ctx();
    let v = |n| Poly::monomial(ctx.one(), n);
    v(9).add(&s.a2.dehomogenize().mul(&v(6)))
        .add(&s.a4.dehomogenize().mul(&v(3)))
        .add(&s.a6.dehomogenize())
}

fn check_branch(s: &SurfaceEq) -> Result<BranchType> {
    let bt = s.branch_type()?;
    let (a1, a3) = bt.canonical(s.ctx());
    if (a1, a3) != (s.a1.clone(), s.a3.clone()) {
        return Err(Error::NotNormalForm(format!("(a1, a3) is not the canonical pair of {}", bt.label())));
    }
    Ok(bt)
}

/// Field over which every singular point is rational.
pub fn singularity_field(s: &SurfaceEq) -> Result<FieldCtx> {
    let d = match check_branch(s)? {
        BranchType::TwistedCubic => twisted_cubic_model(s).derivative().splitting_degree(),
        BranchType::LineConic => {
            let q = s.a6.dehomogenize().derivative();
            if q.is_zero() {
                1
            } else {
                q.splitting_degree()
            }
        }
        _ => 1,
    };
    s.ctx().extension(lcm(d, 1))
}

/// Singular points of the components of R_red over `target`.
pub fn r_singularities_over(s: &SurfaceEq, target: FieldCtx) -> Result<Vec<SingularityRecord>> {
    let bt = check_branch(s)?;
    let s = s.embed_to(target)?;
    let mut out = Vec::new();
    match bt {
        BranchType::TwistedCubic => {
            let f = twisted_cubic_model(&s);
            for (v0, _) in f.derivative().roots_with_multiplicity() {
                let loc = QPoint::new(target.one(), v0, v0 * v0.square())?;
                out.push(SingularityRecord { location: loc, a_n: a_type(&f, v0), component: 0 });
            }
        }
        BranchType::LineConic => {
            out.push(line_component(&s, P1Point::infinity(target), 0));
            let q = s.a6.dehomogenize();
            let z = target.zero();
            if q.derivative().is_zero() {
                // a6 is a square: R2 is non-reduced
                out.push(SingularityRecord { location: QPoint::new(target.one(), z, z)?, a_n: None, component: 1 });
            } else {
                for t0 in q.derivative().roots() {
                    out.push(SingularityRecord { location: QPoint::new(target.one(), t0, z)?, a_n: a_type(&q, t0), component: 1 });
                }
                if s.a6.coeff(5).is_zero() {
                    let q0 = s.a6.dehomogenize_v();
                    out.push(SingularityRecord { location: QPoint::new(z, target.one(), z)?, a_n: a_type(&q0, z), component: 1 });
                }
            }
        }
        _ => {
            for (i, (p, _)) in s.a3.roots_p1(target)?.into_iter().enumerate() {
                out.push(line_component(&s, p, i));
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn r_singularities(s: &SurfaceEq) -> Result<Vec<SingularityRecord>> {
    r_singularities_over(s, singularity_field(s)?)
}

/// `(location, n)` pairs of the singularity column, over `target`.
pub fn expected_singularities(p: &NormalFormParams, target: FieldCtx) -> Result<Vec<(QPoint, usize)>> {
    let p = p.embed_to(target)?;
    let g = |n| p.get(n);
    let (z, o) = (target.zero(), target.one());
    let q = |u, v, x| QPoint::new(u, v, x).expect("not the vertex");
    let on_cubic = |v: FieldElement| q(o, v, v * v.square());
    let poly = |c: &[FieldElement]| Poly::new(target, c.to_vec());
    let mut out = match p.case {
        C1a => poly(&[z, z, g('b'), z, g('c'), z, g('d'), z, o]).roots().into_iter().map(|v| (on_cubic(v), 2)).collect(),
        C1b => {
            let mut r: Vec<_> = poly(&[g('c'), z, g('d'), z, o]).roots().into_iter().map(|v| (on_cubic(v), 2)).collect();
            r.push((on_cubic(z), 4));
            r
        }
        C1c => vec![(on_cubic(z), 6), (on_cubic(g('d').sqrt()), 2)],
        C1d => vec![(on_cubic(z), 4), (on_cubic(g('c').sqrt().sqrt()), 4)],
        C1e => vec![(on_cubic(z), 8)],
        C2a => vec![(q(z, o, o), 2), (q(o, z, z), 2), (q(g('g').sqrt(), g('e').sqrt(), z), 2)],
        C2b => vec![(q(o, z, z), 4), (q(z, o, o), 2)],
        C2c => vec![(q(z, o, o), 2), (q(o, z, z), 2), (q(z, o, z), 2)],
        C2d => vec![(q(z, o, z), 4), (q(z, o, o), 2)],
        C2e => vec![(q(z, o, z), 2), (q(o, z, z), 2), (q(o, o, z), 2)],
        C2f => vec![(q(o, z, z), 4), (q(z, o, z), 2)],
        C3 => vec![(q(o, z, z), 2), (q(z, o, z), 2), (q(o, o, z), 2)],
        C4 => vec![(q(o, z, z), 2), (q(z, o, z), 2)],
        C5 => vec![(q(z, o, z), 2)],
    };
    out.sort();
    Ok(out)
}
