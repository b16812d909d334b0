//! End-to-end reproduction of the classification table: sample a surface per
//! row, saturate its automorphism group, identify it, and cross-check the
//! fiber and singularity tables on the same surface.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::autgroup::{check_constraints, default_start, saturate, saturate_case5_scheme, AutGroupResult, SchemeCount};
use crate::error::{Error, Result};
use crate::fibration::fiber_survey_split;
use crate::gf2k::{Embedding, FieldCtx};
use crate::groupid::{identify, GroupId};
use crate::normalform::{
    build, expected_fibers, expected_singularities, r_singularities_over, singularity_field, NormalFormParams,
};
use crate::surface::SurfaceEq;

pub mod rows;

pub use rows::{all_specs, find_spec, generic_specs, rows, RowSpec};

/// Samples per attempt before giving up on the row's pattern.
const DRAWS: usize = 20_000;
/// Resamples allowed after an unsaturated or over-specialized surface.
const RETRIES: usize = 32;
pub const MAX_K: u8 = 48;

fn label_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn row_rng(row: &RowSpec, seed: u64, attempt: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ label_hash(row.label) ^ (attempt as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Draws parameters matching the row pattern that pass every table condition.
pub fn sample_row(row: &RowSpec, seed: u64, attempt: usize) -> Result<NormalFormParams> {
    let ctx = FieldCtx::new(row.k)?;
    let mut rng = row_rng(row, seed, attempt);
    for _ in 0..DRAWS {
        let named = (row.sample)(ctx, &mut rng);
        let p = NormalFormParams::from_named(row.case, ctx, &named)?;
        if build(&p).is_ok() {
            return Ok(p);
        }
    }
    Err(Error::Validation(format!("row {}: no valid sample in {DRAWS} draws", row.label)))
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub label: String,
    pub case: String,
    pub seed: u64,
    pub attempts: usize,
    pub expected_aut: String,
    pub expected_g: String,
    pub aut_order: usize,
    pub aut_label: String,
    pub g_order: usize,
    pub g_label: String,
    pub kernel_order: usize,
    pub image_order: usize,
    pub field_k: u8,
    pub saturated: bool,
    pub checks: Vec<(String, bool)>,
    pub passed: bool,
    pub surface: Value,
    pub params: Value,
    pub runtime_ms: u128,
    pub error: Option<String>,
}

impl RowReport {
    fn failed(row: &RowSpec, seed: u64, attempts: usize, e: Error, t: Instant) -> Self {
        RowReport {
            label: row.label.into(),
            case: row.case.label().into(),
            seed,
            attempts,
            expected_aut: row.aut.label().into(),
            expected_g: row.g.label().into(),
            aut_order: 0,
            aut_label: GroupId::Unrecognized.label().into(),
            g_order: 0,
            g_label: GroupId::Unrecognized.label().into(),
            kernel_order: 0,
            image_order: 0,
            field_k: 0,
            saturated: false,
            checks: Vec::new(),
            passed: false,
            surface: Value::Null,
            params: Value::Null,
            runtime_ms: t.elapsed().as_millis(),
            error: Some(e.to_string()),
        }
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect()
    }
}

/// Fiber survey over the splitting field against the expected table.
pub fn fibers_match(p: &NormalFormParams, s: &SurfaceEq) -> Result<bool> {
    let rep = fiber_survey_split(s)?;
    let (nodal, cusps) = expected_fibers(p);
    let e = Embedding::new(p.ctx(), FieldCtx::new(rep.field_k)?)?;
    let mut want: Vec<_> = cusps.into_iter().map(|c| c.embed(&e)).collect();
    want.sort();
    let mut got = rep.cuspidal_points();
    got.sort();
    Ok(rep.split && rep.nodal() == nodal && got == want)
}

/// Singularities of R against the expected types and locations.
pub fn singularities_match(p: &NormalFormParams, s: &SurfaceEq) -> Result<bool> {
    let f = singularity_field(s)?;
    let mut got: Vec<_> = r_singularities_over(s, f)?.into_iter().map(|r| (r.location, r.a_n)).collect();
    let mut want: Vec<_> = expected_singularities(p, f)?.into_iter().map(|(q, n)| (q, Some(n))).collect();
    got.sort();
    want.sort();
    Ok(got == want)
}

/// Brute-force smoothness at both levels.
pub fn smooth_by_oracle(s: &SurfaceEq) -> Result<bool> {
    let (k1, k2) = s.smoothness_levels()?;
    Ok(s.is_smooth_bruteforce(k1)? && s.is_smooth_bruteforce(k2)?)
}

fn run_aut(s: &SurfaceEq) -> Result<AutGroupResult> {
    saturate(s, default_start(s), MAX_K)
}

/// Sample, saturate, identify and compare one row.
pub fn verify_row(row: &RowSpec, seed: u64) -> RowReport {
    verify_row_with_group(row, seed).0
}

/// [`verify_row`], also returning the group it computed.
pub fn verify_row_with_group(row: &RowSpec, seed: u64) -> (RowReport, Option<AutGroupResult>) {
    let t = Instant::now();
    let mut attempt = 0;
    let (p, s, res) = loop {
        let step = sample_row(row, seed, attempt).and_then(|p| {
            let s = build(&p)?;
            // the fiber check needs every root of Δ in a table field
            if !fiber_survey_split(&s)?.split && attempt + 1 < RETRIES {
                return Ok(None);
            }
            let res = run_aut(&s)?;
            Ok(Some((p, s, res)))
        });
        match step {
            Err(e) => return (RowReport::failed(row, seed, attempt + 1, e, t), None),
            Ok(None) => attempt += 1,
            Ok(Some((p, s, res))) => {
                let n = res.order();
                let want = row.aut.order();
                // an over-specialized sample lands in a proper supergroup
                let special = n > want && n % want == 0;
                if (special || !res.saturated) && attempt + 1 < RETRIES {
                    attempt += 1;
                    continue;
                }
                break (p, s, res);
            }
        }
    };
    match finish_row(row, seed, attempt + 1, &p, &s, &res, t) {
        Ok(r) => (r, Some(res)),
        Err(e) => (RowReport::failed(row, seed, attempt + 1, e, t), Some(res)),
    }
}

fn finish_row(
    row: &RowSpec,
    seed: u64,
    attempts: usize,
    p: &NormalFormParams,
    s: &SurfaceEq,
    res: &AutGroupResult,
    t: Instant,
) -> Result<RowReport> {
    let aut_label = res.structure();
    let g = res.g_quotient()?;
    let g_label = identify(&g);
    let (k, i) = res.project_r()?;
    let constraints = check_constraints(row.case, res)?;
    let mut h_kernel = res.h_kernel();
    h_kernel.sort();
    let mut ib = vec![res.identity, res.bertini];
    ib.sort();
    let checks = vec![
        ("saturated".to_string(), res.saturated),
        ("Aut order".to_string(), res.order() == row.aut.order()),
        ("Aut structure".to_string(), aut_label == row.aut),
        ("G order".to_string(), g.order() == row.g.order()),
        ("G structure".to_string(), g_label == row.g),
        (format!("constraints: {}", constraints.clause), constraints.passed()),
        ("kernel of Aut → H is {id, β}".to_string(), h_kernel == ib),
        ("fiber table".to_string(), fibers_match(p, s)?),
        ("singularity table".to_string(), singularities_match(p, s)?),
        ("smooth by point oracle".to_string(), smooth_by_oracle(s)?),
    ];
    let passed = checks.iter().all(|c| c.1);
    Ok(RowReport {
        label: row.label.into(),
        case: row.case.label().into(),
        seed,
        attempts,
        expected_aut: row.aut.label().into(),
        expected_g: row.g.label().into(),
        aut_order: res.order(),
        aut_label: aut_label.label().into(),
        g_order: g.order(),
        g_label: g_label.label().into(),
        kernel_order: k.order(),
        image_order: i.order(),
        field_k: res.field_k,
        saturated: res.saturated,
        checks,
        passed,
        surface: s.to_json(),
        params: p.to_json(),
        runtime_ms: t.elapsed().as_millis(),
        error: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SchemeReport {
    pub stratum: String,
    pub params: [String; 3],
    pub result: SchemeCount,
    pub expected_gamma_image: usize,
    pub passed: bool,
}

/// The four strata of the case-(5) point count, on fixed small parameters.
pub fn verify_case5_scheme() -> Result<Vec<SchemeReport>> {
    let f4 = FieldCtx::new(2)?;
    let (z, o, w) = (f4.zero(), f4.one(), f4.generator());
    let strata = [
        ("a ≠ 0, b ≠ a²", [o, z, z], 64, None),
        ("a ≠ 0, b = a²", [o, o, z], 32, None),
        ("a = 0, b ≠ 0", [z, o, z], 64, None),
        ("a = b = 0", [z, z, w], 16, Some(4)),
    ];
    strata
        .par_iter()
        .map(|&(name, [a, b, d], gamma, lambda)| {
            let r = saturate_case5_scheme(a, b, d, MAX_K)?;
            let lam_ok = lambda.is_none_or(|l| r.lambda_per_gamma == vec![l]);
            let passed = r.saturated && r.count == 128 && r.gamma_image == gamma && lam_ok;
            Ok(SchemeReport {
                stratum: name.into(),
                params: [a.to_hex(), b.to_hex(), d.to_hex()],
                result: r,
                expected_gamma_image: gamma,
                passed,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub rows: Vec<RowReport>,
    pub generic: Vec<RowReport>,
    pub scheme: Vec<SchemeReport>,
    /// Observed Aut labels of the classified rows.
    pub observed_labels: Vec<String>,
    pub labels_match_list: bool,
    pub max_order: usize,
    /// Rows attaining the maximal order (uniqueness within this run only).
    pub max_order_rows: Vec<String>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn summary_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in self.rows.iter().chain(&self.generic) {
            let status = if r.passed { "PASS" } else { "FAIL" };
            let mut line = format!(
                "{status} {:<11} Aut {:>4} {:<18} G {:>4} {:<18} K={} ",
                r.label, r.aut_order, r.aut_label, r.g_order, r.g_label, r.field_k
            );
            if let Some(e) = &r.error {
                line.push_str(&format!("error: {e}"));
            } else if !r.passed {
                line.push_str(&format!("failed: {}", r.failures().join(", ")));
            }
            out.push(line.trim_end().to_string());
        }
        for s in &self.scheme {
            let status = if s.passed { "PASS" } else { "FAIL" };
            out.push(format!(
                "{status} case-5 scheme {:<14} count {} γ-image {} λ per γ {:?}",
                s.stratum, s.result.count, s.result.gamma_image, s.result.lambda_per_gamma
            ));
        }
        out.push(format!(
            "{} maximal order {} attained by {}",
            if self.max_order_rows.len() == 1 { "PASS" } else { "FAIL" },
            self.max_order,
            self.max_order_rows.join(", ")
        ));
        out.push(format!("{} group list matches", if self.labels_match_list { "PASS" } else { "FAIL" }));
        out
    }
}

/// The automorphism groups listed for non-trivial `G(X)`, plus `Z/2` for the generic surface.
pub fn expected_label_set() -> BTreeSet<String> {
    rows().iter().map(|r| r.aut.label().to_string()).chain(std::iter::once(GroupId::Z2.label().to_string())).collect()
}

/// Verify the selected specs (all if `labels` is `None`) plus the case-(5) scheme counts.
pub fn run_all(seed: u64, labels: Option<&[String]>) -> Result<VerifyReport> {
    Ok(run_all_with_groups(seed, labels)?.0)
}

/// [`run_all`], also returning each row's group keyed by label.
pub fn run_all_with_groups(seed: u64, labels: Option<&[String]>) -> Result<(VerifyReport, Vec<(String, AutGroupResult)>)> {
    let pick = |r: &RowSpec| labels.is_none_or(|ls| ls.iter().any(|l| l == r.label));
    let specs: Vec<RowSpec> = all_specs().into_iter().filter(|r| pick(r)).collect();
    if let Some(ls) = labels {
        if let Some(bad) = ls.iter().find(|l| find_spec(l).is_none()) {
            return Err(Error::UnknownLabel(bad.clone()));
        }
    }
    let (reports, groups): (Vec<RowReport>, Vec<Option<AutGroupResult>>) =
        specs.par_iter().map(|r| verify_row_with_group(r, seed)).unzip();
    let groups: Vec<(String, AutGroupResult)> =
        specs.iter().zip(groups).filter_map(|(r, g)| g.map(|g| (r.label.to_string(), g))).collect();
    let (generic, rows): (Vec<_>, Vec<_>) = reports.into_iter().zip(&specs).partition(|(_, s)| s.generic);
    let rows: Vec<RowReport> = rows.into_iter().map(|x| x.0).collect();
    let generic: Vec<RowReport> = generic.into_iter().map(|x| x.0).collect();
    let scheme = if labels.is_none() { verify_case5_scheme()? } else { Vec::new() };
    let observed: BTreeSet<String> = rows.iter().chain(&generic).map(|r| r.aut_label.clone()).collect();
    let labels_match_list = labels.is_some() || observed == expected_label_set();
    let max_order = rows.iter().chain(&generic).map(|r| r.aut_order).max().unwrap_or(0);
    let max_order_rows: Vec<String> =
        rows.iter().chain(&generic).filter(|r| r.aut_order == max_order).map(|r| r.label.clone()).collect();
    let unique_max = labels.is_some() || max_order_rows.len() == 1;
    let passed = rows.iter().chain(&generic).all(|r| r.passed)
        && scheme.iter().all(|s| s.passed)
        && labels_match_list
        && unique_max;
    let report = VerifyReport {
        seed,
        rows,
        generic,
        scheme,
        observed_labels: observed.into_iter().collect(),
        labels_match_list,
        max_order,
        max_order_rows,
        passed,
    };
    Ok((report, groups))
}
