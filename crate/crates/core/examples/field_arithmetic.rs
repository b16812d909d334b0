//! Arithmetic in GF(2^k): inverses, Frobenius, Artin-Schreier equations,
//! cube roots and subfield embeddings.

use dp1::gf2k::Embedding;
use dp1::FieldCtx;

fn main() -> dp1::Result<()> {
    let f16 = FieldCtx::new(4)?;
    let g = f16.generator();
    println!("{f16}: modulus {:#x}, generator {g}", f16.modulus());
    for i in 0..5u64 {
        let x = g.pow(i + 1);
        println!("g^{} = {x}  inverse {}  trace {}  frobenius {}", i + 1, x.inv()?, x.trace(), x.frobenius(1));
    }

    // z² + z = c is solvable exactly when tr(c) = 0.
    for c in f16.elements().take(6) {
        println!("z^2+z = {c}: {:?}", c.solve_artin_schreier());
    }

    // GF(16) has all cube roots of unity, GF(8) does not.
    for k in [3, 4] {
        let ctx = FieldCtx::new(k)?;
        println!("cube roots of 1 in GF(2^{k}): {:?}", ctx.one().cube_roots());
    }

    let f256 = FieldCtx::new(8)?;
    let e = Embedding::new(f16, f256)?;
    println!("GF(16) → GF(256): g ↦ {}", e.apply(g));
    Ok(())
}
