//! Exact arithmetic in Z[ζ_p]: orthogonality of additive characters and an
//! exact Gauss-type sum.

use ppcount::{CycInt, FieldSpec, FiniteField};

fn main() -> ppcount::Result<()> {
    let field = FiniteField::new(&FieldSpec::for_order(7)?)?;
    for x in field.elements() {
        println!("Σ_b ζ^Tr(b·{x}) = {}", field.orthogonality_sum(x));
    }

    // Gauss sum over squares: g·conj(g) = p
    let p = field.characteristic();
    let mut g = CycInt::zero(p)?;
    for x in field.elements() {
        g = &g + &field.char(field.mul(x, x)).to_cyc();
    }
    let norm = &g * &g.conjugate();
    println!("\ng = Σ_x ζ^(x²) = {g}");
    println!("g·ḡ = {} (≈ {:.6})", norm, norm.to_complex().re);

    let a = &CycInt::one(p)? + &CycInt::from_root(p, 1)?;
    println!("(1+ζ)(1+ζ⁶) = {}", &a * &a.conjugate());
    Ok(())
}
