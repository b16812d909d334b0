//! Binary forms under linear substitution, and their roots on P¹.

use dp1::binform::{BinaryForm, LinearMap2};
use dp1::FieldCtx;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dp1::Result<()> {
    let ctx = FieldCtx::new(4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (u, v) = (BinaryForm::u(ctx), BinaryForm::v(ctx));

    // u v (u + v): the three rational points of P¹ over GF(2).
    let f = u.mul(&v).mul(&u.add(&v)?);
    println!("f = {f}");
    for (p, m) in f.roots_p1(ctx)? {
        println!("  root {p:?} multiplicity {m}");
    }

    let a = LinearMap2::new(ctx.random(&mut rng), ctx.one(), ctx.one(), ctx.zero())?;
    let b = LinearMap2::new(ctx.one(), ctx.random(&mut rng), ctx.zero(), ctx.one())?;
    let lhs = f.substitute(&a).substitute(&b);
    let rhs = f.substitute(&a.compose(&b));
    println!("f∘A∘B = {lhs}");
    println!("(f∘A)∘B and f∘(A·B) agree: {}", lhs == rhs);

    let g = f.square().add(&u.pow(6))?;
    println!("g = {g}, squarefree: {}", g.is_squarefree()?);
    Ok(())
}
