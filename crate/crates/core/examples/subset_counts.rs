//! n_S by brute force and by the character-sum product, then N by
//! inclusion–exclusion over all subsets.

use num_bigint::BigInt;
use ppcount::counting::{character_sum, ns_bruteforce, ns_formula, SubsetMask};
use ppcount::{FieldSpec, FiniteField};

fn main() -> ppcount::Result<()> {
    let q: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let field = FiniteField::new(&FieldSpec::for_order(q)?)?;
    let q = field.q();

    println!("{:<18} {:>6} {:>8} {:>8}", "S", "(-1)^", "formula", "brute");
    let mut total = BigInt::default();
    for s in SubsetMask::all(q) {
        let formula = ns_formula(&field, &s)?;
        let brute = ns_bruteforce(&field, &s)?;
        assert_eq!(formula, brute);
        let sign = if (q - s.len()) % 2 == 0 { 1 } else { -1 };
        total += BigInt::from(formula.clone()) * sign;
        if s.len() <= 2 || s.len() == q {
            let members: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            println!("{:<18} {sign:>6} {formula:>8} {brute:>8}", format!("{{{}}}", members.join(",")));
        }
    }
    println!("N = Σ (-1)^(q-|S|) n_S = {total}");

    let s = SubsetMask::from_elements(q, &[0, 1])?;
    for b in field.elements() {
        println!("b = {b}: Σ_(t∈{{0,1}}) ζ^Tr(bt) = {}", character_sum(&field, &s, b)?);
    }
    Ok(())
}
