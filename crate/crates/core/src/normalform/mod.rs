//! The fourteen normal forms: construction, parameter conditions, expected tables.

mod reduce;
mod singularities;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde_json::{json, Map, Value};

use crate::binform::{BinaryForm, P1Point};
use crate::error::{Error, Result};
use crate::gf2k::{FieldCtx, FieldElement};
use crate::surface::{BranchType, SurfaceEq};

pub use reduce::{normalize_branch, reduce_to_normal_form, Reduction};
pub use singularities::{expected_singularities, r_singularities, r_singularities_over, singularity_field, QPoint, SingularityRecord};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum NormalFormCase {
    C1a,
    C1b,
    C1c,
    C1d,
    C1e,
    C2a,
    C2b,
    C2c,
    C2d,
    C2e,
    C2f,
    C3,
    C4,
    C5,
}

use NormalFormCase::*;

impl NormalFormCase {
    pub const ALL: [NormalFormCase; 14] = [C1a, C1b, C1c, C1d, C1e, C2a, C2b, C2c, C2d, C2e, C2f, C3, C4, C5];

    pub fn label(self) -> &'static str {
        match self {
            C1a => "1a",
            C1b => "1b",
            C1c => "1c",
            C1d => "1d",
            C1e => "1e",
            C2a => "2a",
            C2b => "2b",
            C2c => "2c",
            C2d => "2d",
            C2e => "2e",
            C2f => "2f",
            C3 => "3",
            C4 => "4",
            C5 => "5",
        }
    }

    pub fn param_names(self) -> &'static [char] {
        match self {
            C1a => &['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'],
            C1b => &['a', 'c', 'd', 'e', 'f', 'g', 'h'],
            C1c => &['a', 'd', 'e', 'f', 'g', 'h'],
            C1d => &['a', 'c', 'e', 'f', 'g', 'h'],
            C1e => &['a', 'e', 'f', 'g', 'h'],
            C2a => &['a', 'b', 'd', 'e', 'f', 'g', 'h'],
            C2b => &['a', 'b', 'd', 'f', 'g', 'h'],
            C2c => &['a', 'b', 'd', 'e', 'f', 'h'],
            C2d => &['a', 'c', 'd', 'f', 'h'],
            C2e => &['a', 'b', 'd', 'e', 'f', 'h'],
            C2f => &['a', 'b', 'd', 'f', 'h'],
            C3 => &['a', 'b', 'c', 'd', 'e', 'f'],
            C4 => &['a', 'b', 'c', 'd', 'e'],
            C5 => &['a', 'b', 'c', 'd'],
        }
    }

    pub fn branch_type(self) -> BranchType {
        match self {
            C1a | C1b | C1c | C1d | C1e => BranchType::TwistedCubic,
            C3 => BranchType::ThreeLines,
            C4 => BranchType::DoubleLineLine,
            C5 => BranchType::TripleLine,
            _ => BranchType::LineConic,
        }
    }
}

impl fmt::Display for NormalFormCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for NormalFormCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').replace([')', '(', ' '], "").to_ascii_lowercase();
        NormalFormCase::ALL
            .into_iter()
            .find(|c| c.label() == t)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalFormParams {
    pub case: NormalFormCase,
    pub values: Vec<FieldElement>,
}

impl NormalFormParams {
    pub fn new(case: NormalFormCase, values: Vec<FieldElement>) -> Result<Self> {
        let n = case.param_names().len();
        if values.len() != n {
            return Err(Error::Validation(format!("case {case} takes {n} parameters, got {}", values.len())));
        }
        let k = values[0].ctx();
        if values.iter().any(|v| v.ctx() != k) {
            return Err(Error::Validation("parameters over different fields".into()));
        }
        Ok(NormalFormParams { case, values })
    }

    pub fn from_named(case: NormalFormCase, ctx: FieldCtx, named: &[(char, FieldElement)]) -> Result<Self> {
        let mut values = vec![ctx.zero(); case.param_names().len()];
        for &(n, v) in named {
            let i = case
                .param_names()
                .iter()
                .position(|&m| m == n)
                .ok_or_else(|| Error::Validation(format!("case {case} has no parameter {n}")))?;
            values[i] = v;
        }
        NormalFormParams::new(case, values)
    }

    pub fn ctx(&self) -> FieldCtx {
        self.values[0].ctx()
    }

    /// Zero for names the case does not have.
    pub fn get(&self, name: char) -> FieldElement {
        self.case
            .param_names()
            .iter()
            .position(|&m| m == name)
            .map_or(self.ctx().zero(), |i| self.values[i])
    }

    pub fn embed_to(&self, target: FieldCtx) -> Result<Self> {
        let values = self.values.iter().map(|v| v.embed(target)).collect::<Result<Vec<_>>>()?;
        Ok(NormalFormParams { case: self.case, values })
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (n, v) in self.case.param_names().iter().zip(&self.values) {
            m.insert(n.to_string(), json!(v.to_hex()));
        }
        Value::Object(m)
    }

    pub fn from_json(case: NormalFormCase, ctx: FieldCtx, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("params: expected an object".into()))?;
        let mut named = Vec::new();
        for (k, x) in obj {
            let c = k.chars().next().filter(|_| k.len() == 1).ok_or_else(|| Error::Parse(format!("bad name {k}")))?;
            let s = x.as_str().ok_or_else(|| Error::Parse("params: hex string".into()))?;
            named.push((c, ctx.parse_hex(s)?));
        }
        NormalFormParams::from_named(case, ctx, &named)
    }

    /// `a=2,b=3,...` with hex values.
    pub fn parse_assignments(case: NormalFormCase, ctx: FieldCtx, s: &str) -> Result<Self> {
        let mut named = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (n, v) = part.split_once('=').ok_or_else(|| Error::Parse(format!("expected name=value: {part}")))?;
            let c = n.trim().chars().next().ok_or_else(|| Error::Parse("empty name".into()))?;
            named.push((c, ctx.parse_hex(v.trim())?));
        }
        NormalFormParams::from_named(case, ctx, &named)
    }
}

/// Whether a condition guards smoothness or only pins the subcase.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ConditionKind {
    Smoothness,
    Subcase,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Condition {
    pub label: &'static str,
    pub kind: ConditionKind,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label)
    }
}

/// The row of the normal-form table, without validation.
pub fn build_unchecked(p: &NormalFormParams) -> SurfaceEq {
    let ctx = p.ctx();
    let g = |n| p.get(n);
    let o = ctx.one();
    let (a1, a3) = p.case.branch_type().canonical(ctx);
    let form = |d, t: &[(FieldElement, usize)]| BinaryForm::from_terms(ctx, d, t);
    let (a2, a4, a6) = match p.case.branch_type() {
        BranchType::TwistedCubic => (
            form(2, &[(g('a'), 2)]),
            form(4, &[(g('b'), 0), (g('c'), 2), (g('d'), 4)]),
            form(6, &[(g('e'), 0), (g('f'), 2), (g('g'), 4), (g('h'), 6)]),
        ),
        BranchType::LineConic => {
            let a4 = if matches!(p.case, C2e | C2f) { BinaryForm::zero(ctx, 4) } else { form(4, &[(o, 4)]) };
            let uv5 = match p.case {
                C2a | C2b => g('g'),
                C2e => g('e'),
                C2f => o,
                _ => ctx.zero(),
            };
            let a6 = form(6, &[(g('b'), 0), (g('c'), 1), (g('d'), 2), (g('e'), 3), (g('f'), 4), (uv5, 5), (g('h'), 6)]);
            (form(2, &[(g('a'), 2)]), a4, a6)
        }
        BranchType::ThreeLines => (
            form(2, &[(g('a'), 1)]),
            form(4, &[(g('b'), 1), (g('b') + g('c'), 2), (g('c'), 3)]),
            form(6, &[(g('d'), 1), (g('e'), 3), (g('f'), 5)]),
        ),
        BranchType::DoubleLineLine => (
            BinaryForm::zero(ctx, 2),
            form(4, &[(g('a'), 1), (g('b'), 2), (g('c'), 3)]),
            form(6, &[(g('d'), 1), (g('e'), 3), (o, 5)]),
        ),
        BranchType::TripleLine => (
            BinaryForm::zero(ctx, 2),
            form(4, &[(g('a'), 1), (g('b'), 2), (g('c'), 3)]),
            form(6, &[(o, 5), (g('d'), 6)]),
        ),
    };
    SurfaceEq::new(a1, a2, a3, a4, a6).expect("normal forms have the right degrees")
}

pub fn build(p: &NormalFormParams) -> Result<SurfaceEq> {
    let bad = validate_conditions(p);
    if !bad.is_empty() {
        let names: Vec<_> = bad.iter().map(|c| c.label).collect();
        return Err(Error::Validation(format!("case {}: violated {}", p.case, names.join(", "))));
    }
    Ok(build_unchecked(p))
}

/// `u^{-e}Δ` is squarefree (and nonzero).
fn reduced_delta_squarefree(s: &SurfaceEq, e: usize) -> bool {
    let d = s.discriminant();
    let ue = BinaryForm::monomial(s.ctx().one(), e, 0);
    match d.div_exact(&ue) {
        Some(q) if !q.is_zero() => q.is_squarefree().unwrap_or(false),
        _ => false,
    }
}

/// Violated conditions of the parameter table, in table order.
pub fn validate_conditions(p: &NormalFormParams) -> Vec<Condition> {
    use ConditionKind::*;
    let s = build_unchecked(p);
    let g = |n| p.get(n);
    let nz = |x: FieldElement| !x.is_zero();
    let mut out = Vec::new();
    let mut need = |ok: bool, label: &'static str, kind| {
        if !ok {
            out.push(Condition { label, kind });
        }
    };
    match p.case {
        C1a | C1b | C1c | C1d => {
            need(reduced_delta_squarefree(&s, 0), "Δ has only simple roots", Smoothness);
            match p.case {
                C1a => {
                    let ctx = p.ctx();
                    let o = ctx.one();
                    let fp = crate::poly::Poly::new(ctx, vec![ctx.zero(), ctx.zero(), g('b'), ctx.zero(), g('c'), ctx.zero(), g('d'), ctx.zero(), o]);
                    need(fp.radical().degree() == Some(4), "v⁸+dv⁶+cv⁴+bv² has four distinct roots", Subcase);
                }
                C1b => {
                    need(nz(g('c')), "c ≠ 0", Subcase);
                    need(nz(g('d')), "d ≠ 0", Subcase);
                }
                C1c => need(nz(g('d')), "d ≠ 0", Subcase),
                _ => need(nz(g('c')), "c ≠ 0", Subcase),
            }
        }
        C1e => need(nz(g('e')), "e ≠ 0", Smoothness),
        C2a => {
            need(reduced_delta_squarefree(&s, 4), "u⁻⁴Δ has only simple roots", Smoothness);
            need(nz(g('e')), "e ≠ 0", Subcase);
            need(nz(g('g')), "g ≠ 0", Subcase);
            need(nz(g('g').square() + g('a') + g('h')), "(g²+a+h) ≠ 0", Smoothness);
        }
        C2b => {
            need(nz(g('b')), "b ≠ 0", Smoothness);
            need(nz(g('g')), "g ≠ 0", Smoothness);
            need(nz(g('g').square() + g('a') + g('h')), "(g²+a+h) ≠ 0", Smoothness);
        }
        C2c => {
            need(nz(g('b')), "b ≠ 0", Smoothness);
            need(nz(g('e')), "e ≠ 0", Smoothness);
            need(nz(g('a') + g('h')), "(a+h) ≠ 0", Smoothness);
        }
        C2d => {
            need(nz(g('c')), "c ≠ 0", Smoothness);
            need(nz(g('a') + g('h')), "(a+h) ≠ 0", Smoothness);
        }
        C2e => {
            need(reduced_delta_squarefree(&s, 6), "u⁻⁶Δ has only simple roots", Smoothness);
            need(nz(g('e')), "e ≠ 0", Smoothness);
        }
        C2f => need(reduced_delta_squarefree(&s, 6), "u⁻⁶Δ has only simple roots", Smoothness),
        C3 => {
            need(nz(g('d')), "d ≠ 0", Smoothness);
            need(nz(g('f')), "f ≠ 0", Smoothness);
            let t = g('d') + g('e') + g('f');
            need(!t.is_zero() && !t.is_one(), "(d+e+f) ∉ {0,1}", Smoothness);
        }
        C4 => need(nz(g('d')), "d ≠ 0", Smoothness),
        C5 => {}
    }
    out
}

pub fn random_params<R: Rng + ?Sized>(case: NormalFormCase, ctx: FieldCtx, rng: &mut R) -> NormalFormParams {
    let values = case.param_names().iter().map(|_| ctx.random(rng)).collect();
    NormalFormParams { case, values }
}

/// Rejection sampling until every condition holds.
pub fn sample_valid_params<R: Rng + ?Sized>(case: NormalFormCase, ctx: FieldCtx, rng: &mut R) -> Result<NormalFormParams> {
    sample_where(case, ctx, rng, |p| validate_conditions(p).is_empty())
}

/// Rejection sampling until the subcase conditions hold; smoothness may fail.
pub fn sample_in_case<R: Rng + ?Sized>(case: NormalFormCase, ctx: FieldCtx, rng: &mut R) -> Result<NormalFormParams> {
    sample_where(case, ctx, rng, |p| validate_conditions(p).iter().all(|c| c.kind == ConditionKind::Smoothness))
}

pub fn sample_where<R: Rng + ?Sized>(
    case: NormalFormCase,
    ctx: FieldCtx,
    rng: &mut R,
    mut keep: impl FnMut(&NormalFormParams) -> bool,
) -> Result<NormalFormParams> {
    for _ in 0..100_000 {
        let p = random_params(case, ctx, rng);
        if keep(&p) {
            return Ok(p);
        }
    }
    Err(Error::Validation(format!("no admissible parameters for case {case} over GF(2^{})", ctx.k())))
}

/// Fiber table row: number of nodal fibers and the cuspidal points.
pub fn expected_fibers(p: &NormalFormParams) -> (usize, Vec<P1Point>) {
    let ctx = p.ctx();
    let (z, o) = (ctx.zero(), ctx.one());
    let pt = |u, v| P1Point::new(u, v).expect("nonzero");
    match p.case {
        C1a | C1b | C1c | C1d | C1e => (12, vec![]),
        C2a | C2b | C2c | C2d => (8, vec![pt(z, o)]),
        C2e | C2f => (if p.get('h').is_zero() { 5 } else { 6 }, vec![pt(z, o)]),
        C3 => (0, vec![pt(o, z), pt(z, o), pt(o, o)]),
        C4 => (0, vec![pt(o, z), pt(z, o)]),
        C5 => (0, vec![pt(z, o)]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(k: u32) -> FieldCtx {
        FieldCtx::new(k).unwrap()
    }

    #[test]
    fn parse_case_labels() {
        assert_eq!("1a".parse::<NormalFormCase>().unwrap(), C1a);
        assert_eq!("(2)(e)".parse::<NormalFormCase>().unwrap(), C2e);
        assert_eq!("5".parse::<NormalFormCase>().unwrap(), C5);
        assert!("6".parse::<NormalFormCase>().is_err());
    }

    #[test]
    fn case3_example_over_gf4() {
        let k = f(2);
        let w = k.generator();
        let p = NormalFormParams::from_named(C3, k, &[('d', k.one()), ('e', w), ('f', k.one())]).unwrap();
        assert!(build(&p).is_ok());
    }

    #[test]
    fn case5_all_zero_is_valid() {
        let k = f(1);
        let p = NormalFormParams::from_named(C5, k, &[]).unwrap();
        let s = build(&p).unwrap();
        assert!(s.a4.is_zero());
        assert_eq!(s.a6, BinaryForm::monomial(k.one(), 6, 5));
    }

    #[test]
    fn violated_labels() {
        let k = f(2);
        let o = k.one();
        let p = NormalFormParams::from_named(C1e, k, &[]).unwrap();
        assert!(build(&p).is_err());
        let p = NormalFormParams::from_named(C2d, k, &[('a', o), ('h', o), ('c', o)]).unwrap();
        let v: Vec<_> = validate_conditions(&p).iter().map(|c| c.label).collect();
        assert_eq!(v, vec!["(a+h) ≠ 0"]);
        let p = NormalFormParams::from_named(C4, k, &[('d', o)]).unwrap();
        assert!(validate_conditions(&p).is_empty());
    }

    #[test]
    fn case1a_delta_matches_table() {
        let k = f(4);
        let mut rng = rand::thread_rng();
        let p = random_params(C1a, k, &mut rng);
        let g = |n| p.get(n);
        let d = build_unchecked(&p).discriminant();
        let want = [
            (12, k.one()),
            (9, k.one()),
            (8, g('d').square() + g('a')),
            (7, g('d')),
            (6, g('h')),
            (5, g('c')),
            (4, g('c').square() + g('g')),
            (3, g('b')),
            (2, g('f')),
            (0, g('b').square() + g('e')),
        ];
        let want: Vec<_> = want.iter().map(|&(j, a)| (a, j)).collect();
        assert_eq!(d, BinaryForm::from_terms(k, 12, &want));
        let dv = d.dehomogenize().derivative();
        let fp = crate::poly::Poly::new(k, vec![k.zero(), k.zero(), g('b'), k.zero(), g('c'), k.zero(), g('d'), k.zero(), k.one()]);
        assert_eq!(dv, fp);
    }

    #[test]
    fn conditions_agree_with_smoothness() {
        use rand::SeedableRng;
        let k = f(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for case in NormalFormCase::ALL {
            for _ in 0..20 {
                let p = sample_in_case(case, k, &mut rng).unwrap();
                let s = build_unchecked(&p);
                let ok = validate_conditions(&p).is_empty();
                let (k1, k2) = s.smoothness_levels().unwrap();
                assert_eq!(s.is_smooth_bruteforce(k1).unwrap(), ok, "case {case} {p:?} at {k1}");
                assert_eq!(s.is_smooth_bruteforce(k2).unwrap(), ok, "case {case} {p:?} at {k2}");
            }
        }
    }
}
