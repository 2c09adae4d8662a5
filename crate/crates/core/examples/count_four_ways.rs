//! Counts N(q) with every engine that supports q and compares the answers.
//!
//! ```text
//! cargo run --release --example count_four_ways -- 8
//! ```

use ppcount::counting::{count, Method};
use ppcount::{FieldSpec, FiniteField};

fn main() -> ppcount::Result<()> {
    let spec: FieldSpec = std::env::args().nth(1).as_deref().unwrap_or("7").parse()?;
    let field = FiniteField::new(&spec)?;
    let q = field.q();
    let mut answers = Vec::new();
    for method in Method::ALL {
        if !method.accepts(q) {
            println!("{method:>20}: q = {q} outside 2..={}", method.max_q());
            continue;
        }
        let r = count(&field, method)?;
        println!("{method:>20}: N = {} in {:.3}s", r.n, r.elapsed_s);
        answers.push(r.n);
    }
    let agree = answers.windows(2).all(|w| w[0] == w[1]);
    println!("agreement: {agree}");
    Ok(())
}
