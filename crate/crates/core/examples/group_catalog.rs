//! The group catalog: invariants of each entry and identification of a
//! group built independently from permutations.

use dp1::groupid::{catalog_group, identify, FiniteGroup, GroupId};

fn main() -> dp1::Result<()> {
    for id in GroupId::ALL {
        let g = catalog_group(id)?;
        let fp = g.fingerprint();
        println!(
            "{:<22} order {:>4}  center {:>2}  exponent {:>3}  abelianization {:?}",
            id.label(),
            fp.order,
            fp.center_order,
            fp.exponent,
            fp.abelianization
        );
    }

    let a4 = FiniteGroup::from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])?;
    println!("⟨(012), (01)(23)⟩ is {}", identify(&a4));
    let d8 = FiniteGroup::from_permutations(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])?;
    println!("symmetries of a square: {}", identify(&d8));
    Ok(())
}
