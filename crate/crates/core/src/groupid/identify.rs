//! Identification against the catalog and embedding tests.

use std::sync::OnceLock;

use super::catalog::{catalog_group, GroupId};
use super::{FiniteGroup, Fingerprint};

/// Cap on generator-image assignments tried by the backtracking search.
const WORK_BUDGET: usize = 2_000_000;

static CACHE: [OnceLock<(FiniteGroup, Fingerprint)>; 26] = [const { OnceLock::new() }; 26];

/// Catalog group and its fingerprint, built once.
pub fn catalog_entry(id: GroupId) -> &'static (FiniteGroup, Fingerprint) {
    let i = GroupId::ALL.iter().position(|&g| g == id).expect("catalog label");
    CACHE[i].get_or_init(|| {
        let g = catalog_group(id).expect("catalog construction");
        let f = g.fingerprint();
        (g, f)
    })
}

/// Extend generator images to the subgroup they generate; `None` if the
/// assignment is not a well-defined injective homomorphism there.
fn extend(a: &FiniteGroup, b: &FiniteGroup, gens: &[u32], imgs: &[u32]) -> Option<Vec<u32>> {
    let mut map = vec![u32::MAX; a.order()];
    let mut used = vec![false; b.order()];
    map[a.identity() as usize] = b.identity();
    used[b.identity() as usize] = true;
    let mut queue = vec![a.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        let fx = map[x as usize];
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = a.mul(x, s);
            let fy = b.mul(fx, t);
            match map[y as usize] {
                u32::MAX => {
                    if used[fy as usize] {
                        return None;
                    }
                    used[fy as usize] = true;
                    map[y as usize] = fy;
                    queue.push(y);
                }
                m if m != fy => return None,
                _ => {}
            }
        }
        i += 1;
    }
    Some(map)
}

/// An injective homomorphism `a → b`, by backtracking over images of a
/// generating set with matching element orders.
pub fn find_embedding(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<u32>> {
    if !b.order().is_multiple_of(a.order()) {
        return None;
    }
    let gens = a.generators();
    if gens.is_empty() {
        return Some(vec![b.identity()]);
    }
    let cands: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            let o = a.element_order(g);
            b.elements().filter(|&x| b.element_order(x) == o).collect()
        })
        .collect();
    let mut work = 0usize;
    let mut imgs = Vec::with_capacity(gens.len());
    fn go(
        a: &FiniteGroup,
        b: &FiniteGroup,
        gens: &[u32],
        cands: &[Vec<u32>],
        imgs: &mut Vec<u32>,
        work: &mut usize,
    ) -> Option<Vec<u32>> {
        let i = imgs.len();
        for &c in &cands[i] {
            *work += 1;
            if *work > WORK_BUDGET {
                return None;
            }
            imgs.push(c);
            if let Some(m) = extend(a, b, &gens[..=i], imgs) {
                if i + 1 == gens.len() {
                    return Some(m);
                }
                if let Some(m) = go(a, b, gens, cands, imgs, work) {
                    return Some(m);
                }
            }
            imgs.pop();
        }
        None
    }
    go(a, b, &gens, &cands, &mut imgs, &mut work)
}

pub fn is_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    a.order() == b.order() && a.fingerprint() == b.fingerprint() && find_embedding(a, b).is_some()
}

pub fn is_subgroup_embeddable(h: &FiniteGroup, g: &FiniteGroup) -> bool {
    find_embedding(h, g).is_some()
}

/// Order 128, center = derived subgroup of order 2, all squares central,
/// and 72 solutions of `x² = 1` (the plus type).
pub fn is_extraspecial_plus(g: &FiniteGroup) -> bool {
    if g.order() != 128 {
        return false;
    }
    let z = g.center();
    if z.len() != 2 || g.derived_subgroup() != z {
        return false;
    }
    let sq_central = g.elements().all(|x| z.contains(&g.mul(x, x)));
    let solutions = g.elements().filter(|&x| g.mul(x, x) == g.identity()).count();
    sq_central && solutions == 72
}

/// The elements of 2-power order, if they form a subgroup (then normal).
fn normal_sylow2(g: &FiniteGroup) -> Option<Vec<u32>> {
    let s = g.p_elements(2);
    (g.subgroup_generated(&s).len() == s.len()).then_some(s)
}

fn check_extension(g: &FiniteGroup, two_part: usize, test: impl Fn(&FiniteGroup) -> bool) -> bool {
    // the quotient has order 3 or 15, hence is cyclic
    match normal_sylow2(g) {
        Some(s) if s.len() == two_part => g.subgroup(&s).map(|h| test(&h)).unwrap_or(false),
        _ => false,
    }
}

/// Whether `g` matches the catalog entry `id`.
pub fn matches(g: &FiniteGroup, id: GroupId) -> bool {
    use GroupId::*;
    if g.order() != id.order() {
        return false;
    }
    let elementary = |h: &FiniteGroup| h.is_abelian() && h.elements().all(|x| h.mul(x, x) == h.identity());
    match id {
        Unrecognized => false,
        Extraspecial => is_extraspecial_plus(g),
        ExtraspecialZ3 | ExtraspecialZ15 => check_extension(g, 128, is_extraspecial_plus),
        E64Z3 | E64Z15 => check_extension(g, 64, elementary),
        _ => {
            let (c, f) = catalog_entry(id);
            let fp = g.fingerprint();
            // abelian invariants determine an abelian group
            fp == *f && (id.is_abelian() || find_embedding(g, c).is_some())
        }
    }
}

pub fn identify(g: &FiniteGroup) -> GroupId {
    GroupId::ALL.into_iter().find(|&id| matches(g, id)).unwrap_or(GroupId::Unrecognized)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_self_consistent() {
        for id in GroupId::ALL {
            let g = catalog_group(id).unwrap();
            assert_eq!(g.order(), id.order(), "{id}");
            assert_eq!(identify(&g), id, "{id}");
        }
    }

    #[test]
    fn fingerprints_separate_equal_orders() {
        let small: Vec<GroupId> = GroupId::ALL.into_iter().filter(|g| g.order() <= 64).collect();
        for (i, &x) in small.iter().enumerate() {
            for &y in &small[i + 1..] {
                if x.order() == y.order() {
                    assert_ne!(catalog_entry(x).1, catalog_entry(y).1, "{x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn q8_and_sl2_fingerprints() {
        let q = &catalog_entry(GroupId::Q8).1;
        assert_eq!(q.order_histogram.get(&2), Some(&1));
        assert_eq!(q.order_histogram.get(&4), Some(&6));
        assert_eq!(q.center_order, 2);
        let s = &catalog_entry(GroupId::Sl2F3).1;
        assert_eq!((s.order, s.order_histogram.get(&2), s.center_order), (24, Some(&1), 2));
    }

    #[test]
    fn embeddings() {
        let g = |id| catalog_group(id).unwrap();
        assert!(is_subgroup_embeddable(&g(GroupId::Z2Sq), &g(GroupId::A4)));
        assert!(!is_subgroup_embeddable(&g(GroupId::Z4), &g(GroupId::A4)));
        assert!(is_subgroup_embeddable(&g(GroupId::Z3), &g(GroupId::S3)));
        assert!(is_subgroup_embeddable(&g(GroupId::Q8), &g(GroupId::Sl2F3)));
    }
}
