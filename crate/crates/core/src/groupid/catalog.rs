//! Concrete constructions of the catalog groups.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2k::FieldCtx;

use super::FiniteGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum GroupId {
    Trivial,
    Z2,
    Z3,
    Z4,
    Z5,
    Z6,
    Z10,
    Z15,
    Z2Sq,
    Z2Cube,
    Z2Fourth,
    Z2Sixth,
    Z2xZ6,
    Q8,
    S3,
    D8,
    Z2xS3,
    Z3xS3,
    Z6xS3,
    A4,
    Sl2F3,
    Extraspecial,
    ExtraspecialZ3,
    ExtraspecialZ15,
    E64Z3,
    E64Z15,
    Unrecognized,
}

impl GroupId {
    /// Every catalog label (without `Unrecognized`).
    pub const ALL: [GroupId; 26] = [
        GroupId::Trivial,
        GroupId::Z2,
        GroupId::Z3,
        GroupId::Z4,
        GroupId::Z5,
        GroupId::Z6,
        GroupId::Z10,
        GroupId::Z15,
        GroupId::Z2Sq,
        GroupId::Z2Cube,
        GroupId::Z2Fourth,
        GroupId::Z2Sixth,
        GroupId::Z2xZ6,
        GroupId::Q8,
        GroupId::S3,
        GroupId::D8,
        GroupId::Z2xS3,
        GroupId::Z3xS3,
        GroupId::Z6xS3,
        GroupId::A4,
        GroupId::Sl2F3,
        GroupId::Extraspecial,
        GroupId::ExtraspecialZ3,
        GroupId::ExtraspecialZ15,
        GroupId::E64Z3,
        GroupId::E64Z15,
    ];

    pub fn label(self) -> &'static str {
        use GroupId::*;
        match self {
            Trivial => "trivial",
            Z2 => "Z/2",
            Z3 => "Z/3",
            Z4 => "Z/4",
            Z5 => "Z/5",
            Z6 => "Z/6",
            Z10 => "Z/10",
            Z15 => "Z/15",
            Z2Sq => "(Z/2)^2",
            Z2Cube => "(Z/2)^3",
            Z2Fourth => "(Z/2)^4",
            Z2Sixth => "(Z/2)^6",
            Z2xZ6 => "Z/2×Z/6",
            Q8 => "Q8",
            S3 => "S3",
            D8 => "D8",
            Z2xS3 => "Z/2×S3",
            Z3xS3 => "Z/3×S3",
            Z6xS3 => "Z/6×S3",
            A4 => "A4",
            Sl2F3 => "SL2(F3)",
            Extraspecial => "2_+^{1+6}",
            ExtraspecialZ3 => "2_+^{1+6} : Z/3",
            ExtraspecialZ15 => "2_+^{1+6} : Z/15",
            E64Z3 => "(Z/2)^6 : Z/3",
            E64Z15 => "(Z/2)^6 : Z/15",
            Unrecognized => "UNRECOGNIZED",
        }
    }

    pub fn order(self) -> usize {
        use GroupId::*;
        match self {
            Trivial => 1,
            Z2 => 2,
            Z3 => 3,
            Z4 | Z2Sq => 4,
            Z5 => 5,
            Z6 | S3 => 6,
            Z2Cube | Q8 | D8 => 8,
            Z10 => 10,
            Z2xZ6 | Z2xS3 | A4 => 12,
            Z15 => 15,
            Z2Fourth => 16,
            Z3xS3 => 18,
            Sl2F3 => 24,
            Z6xS3 => 36,
            Z2Sixth => 64,
            Extraspecial => 128,
            E64Z3 => 192,
            ExtraspecialZ3 => 384,
            E64Z15 => 960,
            ExtraspecialZ15 => 1920,
            Unrecognized => 0,
        }
    }

    pub fn is_abelian(self) -> bool {
        use GroupId::*;
        matches!(self, Trivial | Z2 | Z3 | Z4 | Z5 | Z6 | Z10 | Z15 | Z2Sq | Z2Cube | Z2Fourth | Z2Sixth | Z2xZ6)
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for GroupId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace(" x ", "×").replace('x', "×");
        GroupId::ALL
            .into_iter()
            .chain([GroupId::Unrecognized])
            .find(|g| g.label() == s || g.label() == norm)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

impl TryFrom<String> for GroupId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GroupId> for String {
    fn from(g: GroupId) -> String {
        g.label().to_string()
    }
}

fn elementary(r: usize) -> FiniteGroup {
    FiniteGroup::from_fn(1 << r, |a, b| a ^ b).expect("elementary abelian group")
}

fn perms(gens: &[&[u16]]) -> FiniteGroup {
    FiniteGroup::from_permutations(&gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).expect("permutation group")
}

fn s3() -> FiniteGroup {
    perms(&[&[1, 0, 2], &[1, 2, 0]])
}

fn q8() -> FiniteGroup {
    // units 1, i, j, k as 0..4 with sign bit 4
    const UNIT: [[(u32, u32); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    FiniteGroup::from_fn(8, |a, b| {
        let (u, s) = UNIT[(a & 3) as usize][(b & 3) as usize];
        u | (((a >> 2) ^ (b >> 2) ^ s) << 2)
    })
    .expect("quaternion group")
}

fn sl2_f3() -> FiniteGroup {
    let mut mats = Vec::new();
    for m in 0..81u32 {
        let e = [m % 3, m / 3 % 3, m / 9 % 3, m / 27];
        if (e[0] * e[3] + 2 * e[1] * e[2]) % 3 == 1 {
            mats.push(e);
        }
    }
    let idx = |x: [u32; 4]| mats.iter().position(|&y| y == x).expect("closed") as u32;
    FiniteGroup::from_fn(mats.len(), |a, b| {
        let (x, y) = (mats[a as usize], mats[b as usize]);
        idx([
            (x[0] * y[0] + x[1] * y[2]) % 3,
            (x[0] * y[1] + x[1] * y[3]) % 3,
            (x[2] * y[0] + x[3] * y[2]) % 3,
            (x[2] * y[1] + x[3] * y[3]) % 3,
        ])
    })
    .expect("SL2(F3)")
}

/// Signed permutations of eight coordinates indexed by F2³: translations
/// `e_x ↦ e_{x+h}` and sign changes by affine functions of `x`. Points of the
/// permutation action are `x + 8·sign`.
pub fn extraspecial_signed_permutations() -> FiniteGroup {
    FiniteGroup::from_permutations(&signed_permutation_generators()).expect("signed permutation group")
}

fn signed_permutation_generators() -> Vec<Vec<u16>> {
    let translate = |h: u16| -> Vec<u16> { (0..16).map(|p| ((p & 7) ^ h) | (p & 8)).collect() };
    let sign = |s: &dyn Fn(u16) -> u16| -> Vec<u16> { (0..16).map(|p| p ^ (s(p & 7) << 3)).collect() };
    vec![
        translate(1),
        translate(2),
        translate(4),
        sign(&|x| x & 1),
        sign(&|x| x >> 1 & 1),
        sign(&|x| x >> 2 & 1),
        sign(&|_| 1),
    ]
}

/// `(F2⁶, q)` with `q(x, y) = N(x) + Tr(N(y))` on `F4 ⊕ F16`, the norms
/// going to F2 and F4, and the isometry `g(x, y) = (ωx, ζ³y)` of order 15.
pub struct QuadraticModel {
    pub q: [u8; 64],
    bprime: Vec<[u8; 64]>,
    pub g: [u8; 64],
}

impl QuadraticModel {
    pub fn new() -> Self {
        let f4 = FieldCtx::new(2).expect("GF(4)");
        let f16 = FieldCtx::new(4).expect("GF(16)");
        let omega = f4.generator();
        let zeta3 = f16.generator().pow(3);
        let mut q = [0u8; 64];
        let mut g = [0u8; 64];
        for v in 0..64u64 {
            let (x, y) = (f4.el(v & 3), f16.el(v >> 2));
            let ny = y.pow(5);
            q[v as usize] = (x.pow(3).bits() ^ (ny + ny.square()).bits()) as u8;
            g[v as usize] = ((omega * x).bits() | (zeta3 * y).bits() << 2) as u8;
        }
        let pol = |v: usize, w: usize| q[v ^ w] ^ q[v] ^ q[w];
        let mut bprime = vec![[0u8; 64]; 64];
        for (v, row) in bprime.iter_mut().enumerate() {
            for (w, b) in row.iter_mut().enumerate() {
                let mut s = 0;
                for i in 0..6 {
                    for j in i..6 {
                        if v >> i & 1 == 1 && w >> j & 1 == 1 {
                            s ^= if i == j { q[1 << i] } else { pol(1 << i, 1 << j) };
                        }
                    }
                }
                *b = s;
            }
        }
        QuadraticModel { q, bprime, g }
    }

    /// Product in the central extension `(v, z)·(w, z') = (v + w, z + z' + B'(v, w))`.
    pub fn ext_mul(&self, a: u32, b: u32) -> u32 {
        let (v, w) = ((a & 63) as usize, (b & 63) as usize);
        (v ^ w) as u32 | ((a >> 6) ^ (b >> 6) ^ self.bprime[v][w] as u32) << 6
    }

    /// A lift of `g` to an automorphism of the extension, of order 15.
    pub fn lift(&self) -> Vec<u32> {
        let c = |v: usize, w: usize| self.bprime[self.g[v] as usize][self.g[w] as usize] ^ self.bprime[v][w];
        let f = |v: usize| {
            let mut s = 0;
            for i in 0..6 {
                for j in i + 1..6 {
                    if v >> i & 1 == 1 && v >> j & 1 == 1 {
                        s ^= c(1 << i, 1 << j);
                    }
                }
            }
            s as u32
        };
        let phi: Vec<u32> = (0..128u32).map(|e| self.g[(e & 63) as usize] as u32 | ((e >> 6) ^ f((e & 63) as usize)) << 6).collect();
        // φ has order 15 or 30; φ¹⁶ induces g and has order 15
        let mut psi: Vec<u32> = (0..128).collect();
        for _ in 0..16 {
            psi = psi.iter().map(|&e| phi[e as usize]).collect();
        }
        psi
    }
}

impl Default for QuadraticModel {
    fn default() -> Self {
        Self::new()
    }
}

fn compose_power(p: &[u32], k: usize) -> Vec<u32> {
    let mut r: Vec<u32> = (0..p.len() as u32).collect();
    for _ in 0..k {
        r = r.iter().map(|&e| p[e as usize]).collect();
    }
    r
}

/// `2_+^{1+6} ⋊ Z/n` for `n | 15`, elements `e + 128·k`.
fn extraspecial_semidirect(n: usize) -> FiniteGroup {
    let m = QuadraticModel::new();
    let psi = compose_power(&m.lift(), 15 / n);
    let powers: Vec<Vec<u32>> = (0..n).map(|k| compose_power(&psi, k)).collect();
    FiniteGroup::from_fn(128 * n, |a, b| {
        let (e1, k1, e2, k2) = (a % 128, (a / 128) as usize, b % 128, (b / 128) as usize);
        m.ext_mul(e1, powers[k1][e2 as usize]) + 128 * ((k1 + k2) % n) as u32
    })
    .expect("semidirect product")
}

/// `(Z/2)⁶ ⋊ Z/n` for `n | 15` via the isometry `g^(15/n)`.
fn elementary_semidirect(n: usize) -> FiniteGroup {
    let m = QuadraticModel::new();
    let g: Vec<u32> = m.g.iter().map(|&x| x as u32).collect();
    let h = compose_power(&g, 15 / n);
    let powers: Vec<Vec<u32>> = (0..n).map(|k| compose_power(&h, k)).collect();
    FiniteGroup::from_fn(64 * n, |a, b| {
        let (v1, k1, v2, k2) = (a % 64, (a / 64) as usize, b % 64, (b / 64) as usize);
        (v1 ^ powers[k1][v2 as usize]) + 64 * ((k1 + k2) % n) as u32
    })
    .expect("semidirect product")
}

/// A concrete group for each label.
pub fn catalog_group(id: GroupId) -> Result<FiniteGroup> {
    use GroupId::*;
    let c = FiniteGroup::cyclic;
    Ok(match id {
        Trivial => c(1),
        Z2 => c(2),
        Z3 => c(3),
        Z4 => c(4),
        Z5 => c(5),
        Z6 => c(6),
        Z10 => c(10),
        Z15 => c(15),
        Z2Sq => elementary(2),
        Z2Cube => elementary(3),
        Z2Fourth => elementary(4),
        Z2Sixth => elementary(6),
        Z2xZ6 => FiniteGroup::direct_product(&c(2), &c(6)),
        Q8 => q8(),
        S3 => s3(),
        D8 => perms(&[&[1, 2, 3, 0], &[0, 3, 2, 1]]),
        Z2xS3 => FiniteGroup::direct_product(&c(2), &s3()),
        Z3xS3 => FiniteGroup::direct_product(&c(3), &s3()),
        Z6xS3 => FiniteGroup::direct_product(&c(6), &s3()),
        A4 => perms(&[&[1, 2, 0, 3], &[1, 0, 3, 2]]),
        Sl2F3 => sl2_f3(),
        Extraspecial => extraspecial_signed_permutations(),
        ExtraspecialZ3 => extraspecial_semidirect(3),
        ExtraspecialZ15 => extraspecial_semidirect(15),
        E64Z3 => elementary_semidirect(3),
        E64Z15 => elementary_semidirect(15),
        Unrecognized => return Err(Error::UnknownLabel("UNRECOGNIZED".into())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extraspecial_signed_permutation_model() {
        let m = extraspecial_signed_permutations();
        let f = m.fingerprint();
        assert_eq!((f.order, f.center_order, f.exponent), (128, 2, 4));
        assert_eq!(f.order_histogram.get(&2), Some(&71));
        let z = m.center();
        let (q, proj) = m.quotient(&z).unwrap();
        assert_eq!(q.abelian_invariants(), vec![2; 6]);
        // q(x) = x̃² has 36 zeros on the quotient
        let isotropic: std::collections::BTreeSet<u32> =
            m.elements().filter(|&x| m.mul(x, x) == m.identity()).map(|x| proj[x as usize]).collect();
        assert_eq!(isotropic.len(), 36);
        // pure sign changes: order 16, containing β, image totally isotropic of dimension 3
        let elems = FiniteGroup::permutation_closure(&signed_permutation_generators()).unwrap();
        let n: Vec<u32> = (0..128u32).filter(|&i| elems[i as usize].iter().enumerate().all(|(j, &p)| p & 7 == j as u16 & 7)).collect();
        assert_eq!(n.len(), 16);
        assert!(z.iter().all(|x| n.contains(x)));
        let image: std::collections::BTreeSet<u32> = n.iter().map(|&x| proj[x as usize]).collect();
        assert_eq!(image.len(), 8);
        assert!(n.iter().all(|&x| m.mul(x, x) == m.identity()));
    }

    #[test]
    fn quadratic_model_is_plus_type_and_lift_has_order_15() {
        let m = QuadraticModel::new();
        assert_eq!(m.q.iter().filter(|&&x| x == 0).count(), 36);
        for v in 0..64 {
            assert_eq!(m.q[m.g[v] as usize], m.q[v]);
        }
        let psi = m.lift();
        assert_eq!(compose_power(&psi, 15), (0..128).collect::<Vec<u32>>());
        for a in 0..128 {
            for b in 0..128 {
                assert_eq!(psi[m.ext_mul(a, b) as usize], m.ext_mul(psi[a as usize], psi[b as usize]));
            }
        }
    }
}
