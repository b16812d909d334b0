//! Structural restrictions on `G(X)`, `K` and `I` per normal-form case.

use serde::Serialize;

use crate::error::Result;
use crate::groupid::identify::catalog_entry;
use crate::groupid::{is_subgroup_embeddable, FiniteGroup, GroupId};
use crate::normalform::NormalFormCase;

use super::AutGroupResult;

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintReport {
    pub case: String,
    pub clause: &'static str,
    pub checks: Vec<ConstraintCheck>,
}

impl ConstraintReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    fn push(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(ConstraintCheck { name: name.into(), passed });
    }
}

fn embeds(g: &FiniteGroup, id: GroupId) -> bool {
    let big = &catalog_entry(id).0;
    big.order().is_multiple_of(g.order()) && is_subgroup_embeddable(g, big)
}

fn is_elementary_abelian_2(g: &FiniteGroup) -> bool {
    g.is_abelian() && g.elements().all(|x| g.mul(x, x) == g.identity())
}

fn is_cyclic(g: &FiniteGroup) -> bool {
    g.elements().any(|x| g.element_order(x) == g.order())
}

const ODD_ORDERS: [usize; 6] = [1, 3, 5, 7, 9, 15];

/// `A ⋊ ⟨ξ⟩` with `A` an elementary abelian 2-group and `ξ` of odd order in the list.
fn is_g_xi_a(g: &FiniteGroup) -> bool {
    let two = g.p_elements(2);
    let Ok(a) = g.subgroup(&two) else { return false };
    if two.len() != g.subgroup_generated(&two).len() || !is_elementary_abelian_2(&a) || !g.is_normal(&two) {
        return false;
    }
    let Ok((q, _)) = g.quotient(&two) else { return false };
    ODD_ORDERS.contains(&q.order()) && is_cyclic(&q)
}

/// Checks the restriction belonging to `case` on a saturated result.
pub fn check_constraints(case: NormalFormCase, res: &AutGroupResult) -> Result<ConstraintReport> {
    use NormalFormCase::*;
    let g = res.g_quotient()?;
    let (k, i) = res.project_r()?;
    let a = &res.group;
    let b = res.bertini;
    let clause = match case {
        C1a | C1b | C1c | C1d | C1e => "G(X) embeds in A4",
        C2a | C2b | C2c | C2d => "G(X) embeds in (Z/2)^3",
        C2e | C2f => "G(X) embeds in Z/5 or Z/2",
        C3 => "K embeds in SL2(F3), I embeds in S3",
        C4 => "K embeds in SL2(F3), I cyclic of order 1, 3, 5, 7, 9 or 15",
        C5 => "K embeds in SL2(F3), I is A ⋊ <ξ> with ξ of order 1, 3, 5, 7, 9 or 15",
    };
    let mut r = ConstraintReport { case: case.label().to_string(), clause, checks: Vec::new() };
    r.push("bertini has order 2", a.element_order(b) == 2);
    r.push("bertini is central", a.is_central(b));
    r.push("|Aut| = 2|G|", a.order() == 2 * g.order());
    r.push("|Aut| = |K||I|", a.order() == k.order() * i.order());
    match case {
        C1a | C1b | C1c | C1d | C1e => r.push(clause, embeds(&g, GroupId::A4)),
        C2a | C2b | C2c | C2d => r.push(clause, is_elementary_abelian_2(&g) && 8 % g.order() == 0),
        C2e | C2f => r.push(clause, [1, 2, 5].contains(&g.order())),
        C3 => {
            r.push("K embeds in SL2(F3)", embeds(&k, GroupId::Sl2F3));
            r.push("I embeds in S3", embeds(&i, GroupId::S3));
        }
        C4 => {
            r.push("K embeds in SL2(F3)", embeds(&k, GroupId::Sl2F3));
            r.push("I cyclic of allowed order", is_cyclic(&i) && ODD_ORDERS.contains(&i.order()));
        }
        C5 => {
            r.push("K embeds in SL2(F3)", embeds(&k, GroupId::Sl2F3));
            r.push("I is A ⋊ <ξ>", is_g_xi_a(&i));
        }
    }
    if matches!(case, C1a | C1b | C1c | C1d | C1e | C2a | C2b | C2c | C2d | C2e | C2f) {
        r.push("K = <bertini>", k.order() == 2);
    }
    Ok(r)
}
