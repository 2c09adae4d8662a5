//! Interpolates a permutation of GF(q) and reads off the low-degree criterion.
//!
//! ```text
//! cargo run --example interpolate_permutation -- 7 0,3,6,2,5,1,4
//! ```

use ppcount::permpoly::{criterion_sum, interpolate, is_low_degree};
use ppcount::{FieldSpec, FiniteField, Permutation};

fn main() -> ppcount::Result<()> {
    let mut args = std::env::args().skip(1);
    let spec: FieldSpec = args.next().as_deref().unwrap_or("7").parse()?;
    let field = FiniteField::new(&spec)?;
    let sigma: Permutation = match args.next() {
        Some(text) => text.parse()?,
        // x ↦ 3x + 1 on the prime field, a generic permutation elsewhere
        None => Permutation::new(
            field
                .elements()
                .map(|x| field.add(field.mul(x, 3 % field.q()), 1))
                .collect(),
        )?,
    };

    let poly = interpolate(&field, &sigma)?;
    println!("σ = [{sigma}] on GF({})", field.q());
    let terms: Vec<String> = poly
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(k, c)| format!("{c}·x^{k}"))
        .collect();
    println!("f_σ = {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") });
    println!("deg f_σ = {}, q - 2 = {}", poly.degree(), field.q() as i64 - 2);
    println!("Σ c·σ(c) = {}", criterion_sum(&field, &sigma)?);
    println!("low degree: {}", is_low_degree(&field, &sigma)?);
    Ok(())
}
