//! Singular fibers of the elliptic fibration `X → P¹` given by `[u:v]`.

use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::binform::P1Point;
use crate::error::{Error, Result};
use crate::gf2k::{smallest_table_multiple, FieldCtx, MAX_K};
use crate::surface::SurfaceEq;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum FiberClass {
    Nodal,
    Cuspidal,
    SmoothOrdinary,
    SmoothSupersingular,
}

impl FiberClass {
    pub fn label(self) -> &'static str {
        match self {
            FiberClass::Nodal => "NODAL",
            FiberClass::Cuspidal => "CUSPIDAL",
            FiberClass::SmoothOrdinary => "SMOOTH_ORDINARY",
            FiberClass::SmoothSupersingular => "SMOOTH_SUPERSINGULAR",
        }
    }
}

impl fmt::Display for FiberClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `p` must lie over the field of `s` (or a subfield of it).
pub fn classify_fiber(s: &SurfaceEq, p: P1Point) -> FiberClass {
    let (e1, e3) = (s.a1.eval(p), s.a3.eval(p));
    match (e1.is_zero(), e3.is_zero()) {
        (true, true) => FiberClass::Cuspidal,
        (true, false) => FiberClass::SmoothSupersingular,
        _ if s.discriminant().eval(p).is_zero() => FiberClass::Nodal,
        _ => FiberClass::SmoothOrdinary,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub field_k: u32,
    pub split: bool,
    /// Roots of Δ over GF(2^field_k) with multiplicity and class.
    pub points: Vec<(P1Point, usize, FiberClass)>,
}

impl FiberReport {
    pub fn nodal(&self) -> usize {
        self.count(FiberClass::Nodal)
    }

    pub fn cuspidal(&self) -> usize {
        self.count(FiberClass::Cuspidal)
    }

    fn count(&self, c: FiberClass) -> usize {
        self.points.iter().filter(|p| p.2 == c).count()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.1).sum()
    }

    pub fn cuspidal_points(&self) -> Vec<P1Point> {
        self.points.iter().filter(|p| p.2 == FiberClass::Cuspidal).map(|p| p.0).collect()
    }

    pub fn to_json(&self) -> Value {
        let pts: Vec<Value> = self
            .points
            .iter()
            .map(|(p, m, c)| json!({"point": p.to_json(), "multiplicity": m, "class": c.label()}))
            .collect();
        json!({
            "nodal": self.nodal(),
            "cuspidal": self.cuspidal(),
            "points": pts,
            "split_field_k": self.field_k,
            "split": self.split,
        })
    }
}

/// Classify every root of Δ over GF(2^K).
pub fn fiber_survey(s: &SurfaceEq, k_target: u32) -> Result<FiberReport> {
    let target = FieldCtx::new(k_target)?;
    let se = s.embed_to(target)?;
    let delta = se.discriminant();
    if delta.is_zero() {
        return Err(Error::NotSmooth);
    }
    let roots = delta.roots_p1(target)?;
    let points: Vec<_> = roots.par_iter().map(|&(p, m)| (p, m, classify_fiber(&se, p))).collect();
    let split = points.iter().map(|p| p.1).sum::<usize>() == 12;
    Ok(FiberReport { field_k: k_target, split, points })
}

/// Survey over the smallest table field where Δ splits, or over the largest
/// table field containing the base if there is none.
pub fn fiber_survey_split(s: &SurfaceEq) -> Result<FiberReport> {
    let k = s.ctx().k();
    let delta = s.discriminant();
    if delta.is_zero() {
        return Err(Error::NotSmooth);
    }
    let d = delta.dehomogenize().splitting_degree() as u32 * k as u32;
    let kt = if d <= MAX_K as u32 {
        smallest_table_multiple(d as u8, 0)
    } else {
        None
    };
    let kt = kt.unwrap_or_else(|| {
        crate::gf2k::table_degrees().filter(|&t| t % k == 0).max().unwrap_or(k)
    });
    fiber_survey(s, kt as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binform::BinaryForm;
    use crate::surface::BranchType;

    fn case3(f: FieldCtx) -> SurfaceEq {
        let o = f.one();
        let (a1, a3) = BranchType::ThreeLines.canonical(f);
        let a6 = BinaryForm::from_terms(f, 6, &[(o, 1), (o, 3), (o, 5)]);
        SurfaceEq::new(a1, BinaryForm::zero(f, 2), a3, BinaryForm::zero(f, 4), a6).unwrap()
    }

    #[test]
    fn three_lines_three_cusps() {
        let f = FieldCtx::new(1).unwrap();
        let s = case3(f);
        let one = f.one();
        assert_eq!(classify_fiber(&s, P1Point::affine(one)), FiberClass::Cuspidal);
        let r = fiber_survey_split(&s).unwrap();
        assert_eq!((r.nodal(), r.cuspidal()), (0, 3));
        assert_eq!(r.total_multiplicity(), 12);
        assert!(r.split);
    }

    #[test]
    fn supersingular_off_branch() {
        let f = FieldCtx::new(2).unwrap();
        let s = case3(f);
        let w = f.generator();
        assert_eq!(classify_fiber(&s, P1Point::affine(w)), FiberClass::SmoothSupersingular);
    }
}
