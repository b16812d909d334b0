//! Finite groups given by Cayley tables, their invariants, a catalog of the
//! groups that occur as automorphism groups, and identification.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};

pub mod catalog;
pub mod identify;

pub use catalog::{catalog_group, GroupId};
pub use identify::{identify, is_isomorphic, is_subgroup_embeddable};

/// A group on `0..n` with multiplication table `table[a*n + b] = a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    identity: u32,
    inverse: Vec<u32>,
}

/// Isomorphism invariants computed directly from the table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: usize,
    pub order_histogram: BTreeMap<usize, usize>,
    pub center_order: usize,
    pub derived_order: usize,
    pub abelianization: Vec<usize>,
    pub exponent: usize,
}

impl FiniteGroup {
    /// Validates the Latin-square property, the identity and associativity
    /// (Light's test against a generating set, which is exhaustive).
    pub fn from_table(n: usize, table: Vec<u32>) -> Result<Self> {
        if n == 0 || table.len() != n * n {
            return Err(Error::Validation("table size".into()));
        }
        let bad = |m: &str| Error::Validation(format!("not a group table: {m}"));
        let mut seen = vec![0u32; n];
        for r in 0..n {
            for c in 0..n {
                let x = table[r * n + c] as usize;
                if x >= n || seen[x] == (r as u32) + 1 {
                    return Err(bad("row repeats"));
                }
                seen[x] = r as u32 + 1;
            }
        }
        let mut seen = vec![0u32; n];
        for c in 0..n {
            for r in 0..n {
                let x = table[r * n + c] as usize;
                if seen[x] == (c as u32) + 1 {
                    return Err(bad("column repeats"));
                }
                seen[x] = c as u32 + 1;
            }
        }
        let identity = (0..n).find(|&e| (0..n).all(|a| table[e * n + a] as usize == a)).ok_or_else(|| bad("no identity"))?;
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a * n + b] as usize == identity).expect("latin square") as u32;
        }
        let g = FiniteGroup { n, table, identity: identity as u32, inverse };
        for s in g.generators() {
            for x in 0..n as u32 {
                let xs = g.mul(x, s);
                for y in 0..n as u32 {
                    if g.mul(xs, y) != g.mul(x, g.mul(s, y)) {
                        return Err(bad("not associative"));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Table from a multiplication on `0..n`.
    pub fn from_fn(n: usize, f: impl Fn(u32, u32) -> u32) -> Result<Self> {
        let mut t = Vec::with_capacity(n * n);
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                t.push(f(a, b));
            }
        }
        Self::from_table(n, t)
    }

    /// All products of the given permutations (images of `0..m`), sorted.
    pub fn permutation_closure(gens: &[Vec<u16>]) -> Result<Vec<Vec<u16>>> {
        let m = gens.first().map_or(0, |g| g.len());
        let id: Vec<u16> = (0..m as u16).collect();
        let mut elems = vec![id.clone()];
        let mut seen: HashSet<Vec<u16>> = HashSet::from([id]);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let x = compose_perm(&elems[i], g);
                if seen.insert(x.clone()) {
                    elems.push(x);
                }
            }
            i += 1;
            if elems.len() > 100_000 {
                return Err(Error::Validation("permutation group too large".into()));
            }
        }
        elems.sort();
        Ok(elems)
    }

    /// The group generated by permutations; element `i` is the `i`-th
    /// permutation of [`FiniteGroup::permutation_closure`].
    pub fn from_permutations(gens: &[Vec<u16>]) -> Result<Self> {
        let elems = Self::permutation_closure(gens)?;
        let index: HashMap<&[u16], u32> = elems.iter().enumerate().map(|(i, e)| (e.as_slice(), i as u32)).collect();
        Self::from_fn(elems.len(), |a, b| index[compose_perm(&elems[a as usize], &elems[b as usize]).as_slice()])
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n as u32).expect("cyclic group")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let m = b.n as u32;
        Self::from_fn(a.n * b.n, |x, y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m)).expect("direct product")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn pow(&self, a: u32, e: usize) -> u32 {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.n as u32
    }

    /// Closure of a set of elements under multiplication, sorted.
    pub fn subgroup_generated(&self, gens: &[u32]) -> Vec<u32> {
        let mut inside = vec![false; self.n];
        inside[self.identity as usize] = true;
        let mut elems = vec![self.identity];
        let mut i = 0;
        while i < elems.len() {
            for &g in gens {
                let x = self.mul(elems[i], g);
                if !inside[x as usize] {
                    inside[x as usize] = true;
                    elems.push(x);
                }
            }
            i += 1;
        }
        elems.sort();
        elems
    }

    /// A generating set chosen greedily, largest element orders first.
    pub fn generators(&self) -> Vec<u32> {
        let mut by_order: Vec<u32> = self.elements().collect();
        by_order.sort_by_key(|&a| std::cmp::Reverse(self.element_order(a)));
        let mut gens = Vec::new();
        let mut inside = vec![false; self.n];
        inside[self.identity as usize] = true;
        let mut count = 1;
        for a in by_order {
            if count == self.n {
                break;
            }
            if !inside[a as usize] {
                gens.push(a);
                let h = self.subgroup_generated(&gens);
                count = h.len();
                inside.iter_mut().for_each(|x| *x = false);
                for x in h {
                    inside[x as usize] = true;
                }
            }
        }
        gens
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<u32> {
        let g = self.generators();
        self.elements().filter(|&z| g.iter().all(|&a| self.mul(a, z) == self.mul(z, a))).collect()
    }

    pub fn is_central(&self, z: u32) -> bool {
        self.generators().iter().all(|&a| self.mul(a, z) == self.mul(z, a))
    }

    /// Normal closure of the commutators of all pairs; this is the derived
    /// subgroup since the set of commutators is conjugation invariant.
    pub fn derived_subgroup(&self) -> Vec<u32> {
        let mut comms = Vec::new();
        let mut seen = vec![false; self.n];
        for a in self.elements() {
            for b in self.elements() {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    comms.push(c);
                }
            }
        }
        self.subgroup_generated(&comms)
    }

    pub fn is_normal(&self, h: &[u32]) -> bool {
        let mut inside = vec![false; self.n];
        for &x in h {
            inside[x as usize] = true;
        }
        let g = self.generators();
        g.iter().all(|&a| h.iter().all(|&x| inside[self.mul(self.mul(self.inv(a), x), a) as usize]))
    }

    /// `G/N` for a normal subgroup `N`; element `i` is the coset with the
    /// `i`-th smallest minimal representative. Also returns the projection.
    pub fn quotient(&self, normal: &[u32]) -> Result<(FiniteGroup, Vec<u32>)> {
        if !self.is_normal(normal) {
            return Err(Error::Validation("subgroup is not normal".into()));
        }
        let mut proj = vec![u32::MAX; self.n];
        let mut reps = Vec::new();
        for a in self.elements() {
            if proj[a as usize] == u32::MAX {
                let c = reps.len() as u32;
                for &h in normal {
                    proj[self.mul(a, h) as usize] = c;
                }
                reps.push(a);
            }
        }
        let q = FiniteGroup::from_fn(reps.len(), |x, y| proj[self.mul(reps[x as usize], reps[y as usize]) as usize])?;
        Ok((q, proj))
    }

    /// Invariant factors of an abelian group (empty for the trivial group).
    pub fn abelian_invariants(&self) -> Vec<usize> {
        let mut n = self.n;
        let mut primes = Vec::new();
        let mut p = 2;
        while n > 1 {
            if n.is_multiple_of(p) {
                primes.push(p);
                while n.is_multiple_of(p) {
                    n /= p;
                }
            }
            p += 1;
        }
        // elementary divisors per prime from |{x : x^(p^i) = 1}|
        let mut divisors: Vec<Vec<usize>> = Vec::new();
        for &p in &primes {
            let mut logs = vec![0usize];
            let mut pi = 1;
            loop {
                pi *= p;
                let c = self.elements().filter(|&x| self.pow(x, pi) == self.identity).count();
                let l = (c as f64).log(p as f64).round() as usize;
                if l == *logs.last().expect("nonempty") {
                    break;
                }
                logs.push(l);
            }
            // number of cyclic factors of order ≥ p^i is logs[i] - logs[i-1]
            let mut parts = Vec::new();
            for i in 1..logs.len() {
                let ge_i = logs[i] - logs[i - 1];
                let ge_next = if i + 1 < logs.len() { logs[i + 1] - logs[i] } else { 0 };
                for _ in 0..ge_i - ge_next {
                    parts.push(p.pow(i as u32));
                }
            }
            parts.sort_unstable_by(|a, b| b.cmp(a));
            divisors.push(parts);
        }
        let len = divisors.iter().map(|d| d.len()).max().unwrap_or(0);
        let mut inv: Vec<usize> =
            (0..len).map(|i| divisors.iter().map(|d| d.get(i).copied().unwrap_or(1)).product()).collect();
        inv.reverse();
        inv
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut order_histogram = BTreeMap::new();
        let mut exponent = 1;
        for a in self.elements() {
            let o = self.element_order(a);
            *order_histogram.entry(o).or_insert(0) += 1;
            exponent = crate::poly::lcm(exponent, o);
        }
        let derived = self.derived_subgroup();
        let (ab, _) = self.quotient(&derived).expect("derived subgroup is normal");
        Fingerprint {
            order: self.n,
            order_histogram,
            center_order: self.center().len(),
            derived_order: derived.len(),
            abelianization: ab.abelian_invariants(),
            exponent,
        }
    }

    /// Elements whose order is a power of `p`.
    pub fn p_elements(&self, p: usize) -> Vec<u32> {
        self.elements()
            .filter(|&a| {
                let mut o = self.element_order(a);
                while o.is_multiple_of(p) {
                    o /= p;
                }
                o == 1
            })
            .collect()
    }

    /// The subgroup on a sorted list of elements, re-indexed in that order.
    pub fn subgroup(&self, elems: &[u32]) -> Result<FiniteGroup> {
        let pos: HashMap<u32, u32> = elems.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
        let mut t = Vec::with_capacity(elems.len() * elems.len());
        for &a in elems {
            for &b in elems {
                t.push(*pos.get(&self.mul(a, b)).ok_or_else(|| Error::Validation("not closed".into()))?);
            }
        }
        FiniteGroup::from_table(elems.len(), t)
    }
}

/// Apply `a`, then `b`.
fn compose_perm(a: &[u16], b: &[u16]) -> Vec<u16> {
    a.iter().map(|&i| b[i as usize]).collect()
}
