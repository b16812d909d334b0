//! Per-σ completion: with σ fixed, the unknown coefficients of b1, b2, b3
//! enter the defining identities F2-affinely (after b2 is pinned down), so
//! each stage is a Gaussian elimination over F2.

use crate::binform::{BinaryForm, LinearMap2};
use crate::error::{Error, Result};
use crate::gf2k::{FieldCtx, FieldElement};
use crate::surface::SurfaceEq;

use super::AutTuple;

/// Upper bound on solutions returned per stage.
const SOLUTION_CAP: usize = 1 << 16;

struct BitRows {
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl BitRows {
    fn get(row: &[u64], i: usize) -> bool {
        row[i / 64] >> (i % 64) & 1 == 1
    }
    fn flip(row: &mut [u64], i: usize) {
        row[i / 64] ^= 1 << (i % 64);
    }
}

/// All `x ∈ GF(2^k)^n` with `f(x) = 0`, where `f` is F2-affine.
pub fn affine_zeros(
    ctx: FieldCtx,
    n: usize,
    f: &dyn Fn(&[FieldElement]) -> Vec<FieldElement>,
) -> Result<Vec<Vec<FieldElement>>> {
    let k = ctx.k() as usize;
    let nb = n * k;
    let zero = vec![ctx.zero(); n];
    let f0 = f(&zero);
    let m = f0.len();
    let mb = m * k;
    // augmented rows: columns 0..nb, rhs at nb
    let words = (nb + 1).div_ceil(64);
    let mut mat = BitRows { words, rows: vec![vec![0u64; words]; mb] };
    for (i, &y) in f0.iter().enumerate() {
        for b in 0..k {
            if y.bits() >> b & 1 == 1 {
                BitRows::flip(&mut mat.rows[i * k + b], nb);
            }
        }
    }
    let mut x = zero.clone();
    for col in 0..nb {
        let (vi, b) = (col / k, col % k);
        x[vi] = ctx.el(1u64 << b);
        let fx = f(&x);
        x[vi] = ctx.zero();
        for (i, (&y, &y0)) in fx.iter().zip(&f0).enumerate() {
            let d = (y + y0).bits();
            for bb in 0..k {
                if d >> bb & 1 == 1 {
                    BitRows::flip(&mut mat.rows[i * k + bb], col);
                }
            }
        }
    }
    // row reduce
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nb {
        let Some(p) = (r..mb).find(|&i| BitRows::get(&mat.rows[i], col)) else { continue };
        mat.rows.swap(r, p);
        let pr = mat.rows[r].clone();
        for i in 0..mb {
            if i != r && BitRows::get(&mat.rows[i], col) {
                for w in 0..mat.words {
                    mat.rows[i][w] ^= pr[w];
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if mat.rows[r..].iter().any(|row| BitRows::get(row, nb)) {
        return Ok(Vec::new());
    }
    let free: Vec<usize> = (0..nb).filter(|c| !pivots.contains(c)).collect();
    if free.len() > 16 || (1usize << free.len()) > SOLUTION_CAP {
        return Err(Error::Degenerate(format!("solution space of dimension {} over F2", free.len())));
    }
    let mut out = Vec::with_capacity(1 << free.len());
    for mask in 0..(1u64 << free.len()) {
        let mut bits = vec![false; nb];
        for (j, &c) in free.iter().enumerate() {
            bits[c] = mask >> j & 1 == 1;
        }
        for (row, &pc) in pivots.iter().enumerate() {
            let mut v = BitRows::get(&mat.rows[row], nb);
            for (j, &c) in free.iter().enumerate() {
                if mask >> j & 1 == 1 && BitRows::get(&mat.rows[row], c) {
                    v = !v;
                }
            }
            bits[pc] = v;
        }
        let sol = (0..n)
            .map(|i| ctx.el((0..k).fold(0u64, |acc, b| acc | (bits[i * k + b] as u64) << b)))
            .collect();
        out.push(sol);
    }
    Ok(out)
}

fn form(v: &[FieldElement]) -> BinaryForm {
    BinaryForm::new(v[0].ctx(), v.to_vec())
}

fn cat(fs: &[&BinaryForm]) -> Vec<FieldElement> {
    fs.iter().flat_map(|f| f.coeffs().iter().copied()).collect()
}

/// All tuples with the given σ.
pub fn complete_sigma(s: &SurfaceEq, sigma: &LinearMap2) -> Result<Vec<AutTuple>> {
    let ctx = s.ctx();
    if s.a1.substitute(sigma) != s.a1 {
        return Ok(Vec::new());
    }
    let s2 = &s.a2.substitute(sigma) + &s.a2;
    let s3 = &s.a3.substitute(sigma) + &s.a3;
    let s4 = &s.a4.substitute(sigma) + &s.a4;
    let s6 = &s.a6.substitute(sigma) + &s.a6;
    let (a1, a2, a3, a4) = (&s.a1, &s.a2, &s.a3, &s.a4);
    let r6 = |b1: &BinaryForm, b2: &BinaryForm, b3: &BinaryForm| {
        let b1b2 = b1.mul(b2);
        let b2sq = b2.square();
        [
            a4.mul(b2),
            a3.mul(&(b3 + &b1b2)),
            a2.mul(&b2sq),
            a1.mul(&(&b2.mul(b3) + &b1.mul(&b2sq))),
            b3.square(),
            b2sq.mul(b2),
            b1.square().mul(&b2sq),
        ]
        .iter()
        .fold(s6.clone(), |acc, x| &acc + x)
    };
    let mut out = Vec::new();
    if !a1.is_zero() {
        let Some(b2) = s3.div_exact(a1) else { return Ok(out) };
        let sys = |x: &[FieldElement]| {
            let (b1, b3) = (form(&x[0..2]), form(&x[2..6]));
            let r2 = &(&(&s2 + &a1.mul(&b1)) + &b1.square()) + &b2;
            let r4 = [a3.mul(&b1), a1.mul(&b3), b2.square()].iter().fold(s4.clone(), |acc, y| &acc + y);
            cat(&[&r2, &r4, &r6(&b1, &b2, &b3)])
        };
        for x in affine_zeros(ctx, 6, &sys)? {
            out.push(AutTuple { sigma: *sigma, b1: form(&x[0..2]), b2: b2.clone(), b3: form(&x[2..6]) });
        }
    } else {
        if !s3.is_zero() {
            return Ok(out);
        }
        // b2 = σ*a2 + a2 + b1², and the a4 identity is affine in b1
        let b2_of = |b1: &BinaryForm| &s2 + &b1.square();
        let sys1 = |x: &[FieldElement]| {
            let b1 = form(x);
            let r4 = &(&s4 + &a3.mul(&b1)) + &b2_of(&b1).square();
            r4.coeffs().to_vec()
        };
        for x in affine_zeros(ctx, 2, &sys1)? {
            let b1 = form(&x);
            let b2 = b2_of(&b1);
            let sys3 = |y: &[FieldElement]| r6(&b1, &b2, &form(y)).coeffs().to_vec();
            for y in affine_zeros(ctx, 4, &sys3)? {
                out.push(AutTuple { sigma: *sigma, b1: b1.clone(), b2: b2.clone(), b3: form(&y) });
            }
        }
    }
    Ok(out)
}
