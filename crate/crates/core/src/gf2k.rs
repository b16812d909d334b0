//! Arithmetic in GF(2^k) for the degrees of the Conway table.
//!
//! Elements are bit vectors in the polynomial basis: bit `i` is the
//! coefficient of `x^i`. Every element carries its degree `k`, so values from
//! different fields never mix silently.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub};
use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};

/// Conway polynomials over GF(2), `(k, bits)` with bit `i` the coefficient of `x^i`.
pub const CONWAY: [(u8, u64); 27] = [
    (1, 0x3),
    (2, 0x7),
    (3, 0xb),
    (4, 0x13),
    (5, 0x25),
    (6, 0x5b),
    (7, 0x83),
    (8, 0x11d),
    (9, 0x211),
    (10, 0x46f),
    (11, 0x805),
    (12, 0x10eb),
    (13, 0x201b),
    (14, 0x40a9),
    (15, 0x8035),
    (16, 0x1002d),
    (17, 0x20009),
    (18, 0x41403),
    (19, 0x80027),
    (20, 0x1006f3),
    (21, 0x200065),
    (22, 0x401f61),
    (23, 0x800021),
    (24, 0x101e6a9),
    (30, 0x400328af),
    (36, 0x1000da6163),
    (48, 0x1000002821d89),
];

pub const MAX_K: u8 = 48;

const fn build_moduli() -> [u64; 49] {
    let mut out = [0u64; 49];
    let mut i = 0;
    while i < CONWAY.len() {
        out[CONWAY[i].0 as usize] = CONWAY[i].1;
        i += 1;
    }
    out
}

static MODULI: [u64; 49] = build_moduli();

/// Degrees with a table entry, ascending.
pub fn table_degrees() -> impl Iterator<Item = u8> {
    CONWAY.iter().map(|&(k, _)| k)
}

pub fn has_modulus(k: u32) -> bool {
    k <= MAX_K as u32 && MODULI[k as usize] != 0
}

/// Smallest table degree that is a multiple of `k` and at least `min`.
pub fn smallest_table_multiple(k: u8, min: u32) -> Option<u8> {
    table_degrees().find(|&d| d % k == 0 && d as u32 >= min)
}

/// Carry-less product of two 64-bit polynomials.
#[inline]
pub fn clmul(a: u64, b: u64) -> u128 {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: feature presence checked just above.
            return unsafe { clmul_pclmul(a, b) };
        }
    }
    clmul_portable(a, b)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq", enable = "sse2")]
unsafe fn clmul_pclmul(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::*;
    let x = _mm_set_epi64x(0, a as i64);
    let y = _mm_set_epi64x(0, b as i64);
    let r = _mm_clmulepi64_si128(x, y, 0x00);
    let lo = _mm_cvtsi128_si64(r) as u64;
    let hi = _mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)) as u64;
    ((hi as u128) << 64) | lo as u128
}

/// 4-bit windowed shift-and-add multiply.
pub fn clmul_portable(a: u64, b: u64) -> u128 {
    let mut table = [0u128; 16];
    for i in 1..16usize {
        let mut acc = 0u128;
        for bit in 0..4 {
            if i >> bit & 1 == 1 {
                acc ^= (a as u128) << bit;
            }
        }
        table[i] = acc;
    }
    let mut r = 0u128;
    for nib in (0..16).rev() {
        r = (r << 4) ^ table[((b >> (4 * nib)) & 0xf) as usize];
    }
    r
}

#[inline]
fn reduce(mut p: u128, k: u8) -> u64 {
    let m = MODULI[k as usize];
    let tail = m ^ (1u64 << k);
    let mask = (1u128 << k) - 1;
    while p >> k != 0 {
        let hi = p >> k;
        let lo = p & mask;
        // hi < 2^(2k-1), split to keep each clmul operand within 64 bits
        let hi_lo = (hi & 0xffff_ffff_ffff_ffff) as u64;
        let hi_hi = (hi >> 64) as u64;
        p = lo ^ clmul(hi_lo, tail) ^ (clmul(hi_hi, tail) << 64);
    }
    p as u64
}

/// Field context: the degree `k`; the modulus is implied by the table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldCtx {
    k: u8,
}

impl FieldCtx {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 || !has_modulus(k) {
            return Err(Error::UnsupportedDegree(k));
        }
        Ok(FieldCtx { k: k as u8 })
    }

    pub fn k(self) -> u8 {
        self.k
    }

    pub fn modulus(self) -> u64 {
        MODULI[self.k as usize]
    }

    /// Number of elements, 2^k.
    pub fn order(self) -> u64 {
        1u64 << self.k
    }

    pub fn zero(self) -> FieldElement {
        FieldElement { k: self.k, bits: 0 }
    }

    pub fn one(self) -> FieldElement {
        FieldElement { k: self.k, bits: 1 }
    }

    /// The class of `x`, a primitive element for Conway moduli.
    pub fn generator(self) -> FieldElement {
        if self.k == 1 {
            self.one()
        } else {
            FieldElement { k: self.k, bits: 2 }
        }
    }

    pub fn elem(self, bits: u64) -> Result<FieldElement> {
        if self.k < 64 && bits >> self.k != 0 {
            return Err(Error::BitsOutOfRange { k: self.k, bits });
        }
        Ok(FieldElement { k: self.k, bits })
    }

    /// Panics if `bits` does not fit; for literals in code and tests.
    pub fn el(self, bits: u64) -> FieldElement {
        self.elem(bits).expect("bits out of range")
    }

    pub fn from_bool(self, b: bool) -> FieldElement {
        FieldElement { k: self.k, bits: b as u64 }
    }

    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        let k = self.k;
        (0..1u64 << k).map(move |bits| FieldElement { k, bits })
    }

    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> FieldElement {
        let bits = rng.gen::<u64>() & ((1u64 << self.k) - 1);
        FieldElement { k: self.k, bits }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(self, rng: &mut R) -> FieldElement {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Smallest table field containing GF(2^(k·d)).
    pub fn extension(self, d: usize) -> Result<FieldCtx> {
        let n = self.k as usize * d;
        if n > MAX_K as usize {
            return Err(Error::ExtensionCap(n as u32));
        }
        let t = smallest_table_multiple(n as u8, 0).ok_or(Error::ExtensionCap(n as u32))?;
        FieldCtx::new(t as u32)
    }

    pub fn is_subfield_of(self, other: FieldCtx) -> bool {
        other.k.is_multiple_of(self.k)
    }

    pub fn parse_hex(self, s: &str) -> Result<FieldElement> {
        let t = s.trim().trim_start_matches("0x");
        let bits = u64::from_str_radix(t, 16).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        self.elem(bits)
    }

    pub(crate) fn trace_mask(self) -> u64 {
        static MASKS: OnceLock<Vec<u64>> = OnceLock::new();
        MASKS.get_or_init(|| {
            let mut v = vec![0u64; MAX_K as usize + 1];
            for (k, _) in CONWAY {
                let ctx = FieldCtx { k };
                let mut mask = 0;
                for i in 0..k {
                    if ctx.el(1 << i).trace_slow().bits == 1 {
                        mask |= 1 << i;
                    }
                }
                v[k as usize] = mask;
            }
            v
        })[self.k as usize]
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})", self.k)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    k: u8,
    bits: u64,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.bits)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.bits)
    }
}

impl fmt::LowerHex for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.bits, f)
    }
}

impl FieldElement {
    pub fn ctx(self) -> FieldCtx {
        FieldCtx { k: self.k }
    }

    pub fn k(self) -> u8 {
        self.k
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn is_one(self) -> bool {
        self.bits == 1
    }

    pub fn to_hex(self) -> String {
        format!("{:x}", self.bits)
    }

    fn check(self, other: FieldElement) -> Result<()> {
        if self.k == other.k {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.k, other.k))
        }
    }

    pub fn checked_add(self, other: FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement { k: self.k, bits: self.bits ^ other.bits })
    }

    pub fn checked_mul(self, other: FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.mul_raw(other))
    }

    #[inline]
    fn mul_raw(self, other: FieldElement) -> FieldElement {
        FieldElement { k: self.k, bits: reduce(clmul(self.bits, other.bits), self.k) }
    }

    #[inline]
    pub fn square(self) -> FieldElement {
        self.mul_raw(self)
    }

    pub fn pow(self, mut e: u64) -> FieldElement {
        let mut base = self;
        let mut acc = self.ctx().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// `x^(2^n)`.
    pub fn frobenius(self, n: u32) -> FieldElement {
        let mut x = self;
        for _ in 0..n % self.k as u32 {
            x = x.square();
        }
        x
    }

    pub fn inv(self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid on GF(2)[x]
        let m = self.ctx().modulus();
        let (mut r0, mut r1) = (m as u128, self.bits as u128);
        let (mut s0, mut s1) = (0u128, 1u128);
        while r1 != 0 {
            let d0 = 127 - r0.leading_zeros() as i32;
            let d1 = 127 - r1.leading_zeros() as i32;
            if d0 < d1 {
                std::mem::swap(&mut r0, &mut r1);
                std::mem::swap(&mut s0, &mut s1);
                continue;
            }
            let sh = (d0 - d1) as u32;
            r0 ^= r1 << sh;
            s0 ^= s1 << sh;
            if r0 == 0 {
                break;
            }
        }
        // whichever of r0/r1 is 1 carries the inverse
        let (r, s) = if r0 == 1 { (r0, s0) } else { (r1, s1) };
        debug_assert_eq!(r, 1);
        Ok(FieldElement { k: self.k, bits: reduce_wide(s, self.k) })
    }

    pub fn checked_div(self, other: FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.mul_raw(other.inv()?))
    }

    /// The unique `y` with `y^2 = x`.
    pub fn sqrt(self) -> FieldElement {
        self.frobenius(self.k as u32 - 1)
    }

    fn trace_slow(self) -> FieldElement {
        let mut acc = self;
        let mut x = self;
        for _ in 1..self.k {
            x = x.square();
            acc += x;
        }
        acc
    }

    /// Absolute trace to GF(2), returned as 0 or 1 in this field.
    pub fn trace(self) -> FieldElement {
        let t = (self.bits & self.ctx().trace_mask()).count_ones() & 1;
        FieldElement { k: self.k, bits: t as u64 }
    }

    /// All `λ` with `λ^2 + λ = c`.
    pub fn solve_artin_schreier(self) -> Vec<FieldElement> {
        match as_solver(self.k).solve(self.bits) {
            Some(l) => {
                let l = FieldElement { k: self.k, bits: l };
                vec![l, l + self.ctx().one()]
            }
            None => Vec::new(),
        }
    }

    /// All `y` with `y^3 = x`.
    pub fn cube_roots(self) -> Vec<FieldElement> {
        let ctx = self.ctx();
        if self.is_zero() {
            return vec![ctx.zero()];
        }
        let q1 = ctx.order() - 1;
        if !q1.is_multiple_of(3) {
            let e = mod_inverse(3, q1);
            return vec![self.pow(e)];
        }
        if self.pow(q1 / 3) != ctx.one() {
            return Vec::new();
        }
        let mut s = 0;
        let mut t = q1;
        while t.is_multiple_of(3) {
            t /= 3;
            s += 1;
        }
        let sylow = 3u64.pow(s);
        // split x = (x·w)·w⁻¹ with x·w of order prime to 3 and w in the 3-Sylow
        let a = self.pow(t);
        let winv = a.pow(mod_inverse(t % sylow, sylow));
        let part = (self * winv.inv().expect("nonzero")).pow(mod_inverse(3, t));
        let c = ctx.generator().pow(t);
        let mut j = 0;
        let mut cj = ctx.one();
        while cj != winv {
            cj *= c;
            j += 1;
            assert!(j < sylow, "3-Sylow discrete log failed");
        }
        debug_assert_eq!(j % 3, 0);
        let y = part * c.pow(j / 3);
        let w = ctx.generator().pow(q1 / 3);
        let mut out = vec![y, y * w, y * w * w];
        out.sort();
        out
    }

    /// Image under the Conway-compatible embedding into `target`.
    pub fn embed(self, target: FieldCtx) -> Result<FieldElement> {
        Ok(Embedding::new(self.ctx(), target)?.apply(self))
    }
}

fn reduce_wide(p: u128, k: u8) -> u64 {
    reduce(p, k)
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (m as i128, a as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    assert_eq!(r, 1, "not invertible");
    t.rem_euclid(m as i128) as u64
}

/// Pivoted preimage table for the F2-linear map λ ↦ λ² + λ.
struct AsSolver {
    // pivot[b] = (image with leading bit b, preimage)
    pivot: Vec<Option<(u64, u64)>>,
}

impl AsSolver {
    fn new(k: u8) -> Self {
        let ctx = FieldCtx { k };
        let mut pivot = vec![None; k as usize];
        for i in 0..k {
            let e = ctx.el(1 << i);
            let mut v = (e.square() + e).bits;
            let mut p = 1u64 << i;
            while v != 0 {
                let b = 63 - v.leading_zeros() as usize;
                match pivot[b] {
                    Some((pv, pp)) => {
                        v ^= pv;
                        p ^= pp;
                    }
                    None => {
                        pivot[b] = Some((v, p));
                        break;
                    }
                }
            }
        }
        AsSolver { pivot }
    }

    fn solve(&self, mut c: u64) -> Option<u64> {
        let mut p = 0;
        while c != 0 {
            let b = 63 - c.leading_zeros() as usize;
            let (pv, pp) = self.pivot[b]?;
            c ^= pv;
            p ^= pp;
        }
        Some(p)
    }
}

fn as_solver(k: u8) -> &'static AsSolver {
    static SOLVERS: OnceLock<Vec<Option<AsSolver>>> = OnceLock::new();
    SOLVERS.get_or_init(|| {
        (0..=MAX_K)
            .map(|k| has_modulus(k as u32).then(|| AsSolver::new(k)))
            .collect()
    })[k as usize]
        .as_ref()
        .expect("table degree")
}

/// Embedding GF(2^m) → GF(2^n), g_m ↦ g_n^((2^n−1)/(2^m−1)).
#[derive(Clone, Debug)]
pub struct Embedding {
    src: FieldCtx,
    dst: FieldCtx,
    powers: Vec<FieldElement>,
}

impl Embedding {
    pub fn new(src: FieldCtx, dst: FieldCtx) -> Result<Self> {
        if !dst.k.is_multiple_of(src.k) {
            return Err(Error::NotEmbeddable(src.k, dst.k));
        }
        let h = if src.k == 1 {
            dst.one()
        } else {
            dst.generator().pow((dst.order() - 1) / (src.order() - 1))
        };
        let mut powers = Vec::with_capacity(src.k as usize);
        let mut p = dst.one();
        for _ in 0..src.k {
            powers.push(p);
            p *= h;
        }
        Ok(Embedding { src, dst, powers })
    }

    pub fn source(&self) -> FieldCtx {
        self.src
    }

    pub fn target(&self) -> FieldCtx {
        self.dst
    }

    pub fn apply(&self, x: FieldElement) -> FieldElement {
        assert_eq!(x.k, self.src.k, "embedding source mismatch");
        let mut acc = self.dst.zero();
        let mut b = x.bits;
        while b != 0 {
            let i = b.trailing_zeros() as usize;
            acc += self.powers[i];
            b &= b - 1;
        }
        acc
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.k, rhs.k, "field context mismatch");
        FieldElement { k: self.k, bits: self.bits ^ rhs.bits }
    }
}

impl AddAssign for FieldElement {
    #[inline]
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = *self + rhs;
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    // characteristic 2
    #[allow(clippy::suspicious_arithmetic_impl)]
    #[inline]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self + rhs
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn neg(self) -> FieldElement {
        self
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn mul(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.k, rhs.k, "field context mismatch");
        self.mul_raw(rhs)
    }
}

impl MulAssign for FieldElement {
    #[inline]
    fn mul_assign(&mut self, rhs: FieldElement) {
        *self = *self * rhs;
    }
}

impl Div for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl std::iter::Sum for FieldElement {
    fn sum<I: Iterator<Item = FieldElement>>(mut iter: I) -> FieldElement {
        let first = iter.next().expect("sum of empty iterator has no field");
        iter.fold(first, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> FieldCtx {
        FieldCtx::new(2).unwrap()
    }

    #[test]
    fn gf4_examples() {
        let f = gf4();
        let g = f.generator();
        assert_eq!(g + g, f.zero());
        assert_eq!(g * g, g + f.one());
        assert_eq!(g.inv().unwrap(), g + f.one());
        assert_eq!(g.sqrt(), g + f.one());
        assert_eq!(g.trace(), f.one());
        let mut s = f.one().solve_artin_schreier();
        s.sort();
        assert_eq!(s, vec![g, g + f.one()]);
        assert_eq!(f.one().cube_roots().len(), 3);
        assert!(g.cube_roots().is_empty());
    }

    #[test]
    fn gf2_examples() {
        let f = FieldCtx::new(1).unwrap();
        assert_eq!(f.one() + f.one(), f.zero());
        assert_eq!(f.one().trace(), f.one());
        assert!(f.one().solve_artin_schreier().is_empty());
        assert_eq!(f.one().cube_roots(), vec![f.one()]);
        let mut z = f.zero().solve_artin_schreier();
        z.sort();
        assert_eq!(z, vec![f.zero(), f.one()]);
    }

    #[test]
    fn inverse_zero_errors() {
        assert_eq!(gf4().zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatch_is_error() {
        let a = gf4().one();
        let b = FieldCtx::new(4).unwrap().one();
        assert_eq!(a.checked_add(b), Err(Error::ContextMismatch(2, 4)));
        assert!(FieldCtx::new(25).is_err());
    }

    #[test]
    fn portable_matches_hw() {
        let mut x = 0x9e37_79b9_7f4a_7c15u64;
        for _ in 0..1000 {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let y = x.rotate_left(17) ^ 0x5555;
            assert_eq!(clmul(x, y), clmul_portable(x, y));
        }
    }

    #[test]
    fn gf4_embeds_into_gf16() {
        let g = gf4().generator();
        let h = g.embed(FieldCtx::new(4).unwrap()).unwrap();
        assert_eq!(h * h + h, h.ctx().one());
        assert!(g.embed(FieldCtx::new(3).unwrap()).is_err());
    }

    #[test]
    fn cube_roots_large() {
        for k in [6u32, 12, 24, 36, 48] {
            let f = FieldCtx::new(k).unwrap();
            let x = f.el(0x1234 & ((1 << k.min(16)) - 1)).pow(3);
            let r = x.cube_roots();
            assert_eq!(r.len(), 3);
            for y in r {
                assert_eq!(y * y * y, x);
            }
        }
    }

    #[test]
    fn hex_roundtrip() {
        let f = FieldCtx::new(4).unwrap();
        assert_eq!(f.el(5).to_hex(), "5");
        assert_eq!(f.parse_hex("5").unwrap(), f.el(5));
        assert!(f.parse_hex("1f").is_err());
    }
}
