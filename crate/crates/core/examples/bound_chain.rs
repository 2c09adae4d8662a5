//! The inequality chain |N - (q-1)!| ≤ … ≤ sqrt(2e/π)·q^(q/2) for each
//! prime power up to 13, with the empirical constants.

use ppcount::bounds::{conjectured_constant, theorem_constant, theorem_report, BoundReport};
use ppcount::counting::{count, Method};
use ppcount::{FieldSpec, FiniteField};

fn main() -> ppcount::Result<()> {
    println!("sqrt(2e/π) = {:.6}, sqrt(e/2π) = {:.6}\n", theorem_constant(), conjectured_constant());
    println!("{}", BoundReport::MARKDOWN_HEADER);
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        let field = FiniteField::new(&FieldSpec::for_order(q)?)?;
        let n = count(&field, Method::auto(q as u32))?.n;
        let report = theorem_report(&field, &n)?;
        println!("{}", report.to_markdown_row());
    }
    Ok(())
}
