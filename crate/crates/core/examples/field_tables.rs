//! Builds GF(q) and prints its multiplication table, traces and inverses.
//!
//! ```text
//! cargo run --example field_tables -- 2^3/1,0,1,1
//! ```

use ppcount::{FieldSpec, FiniteField};

fn main() -> ppcount::Result<()> {
    let spec: FieldSpec = std::env::args().nth(1).as_deref().unwrap_or("9").parse()?;
    let field = FiniteField::new(&spec)?;
    let q = field.q();
    println!("GF({q}) = {}, generator {}", field.spec(), field.generator());

    if q <= 16 {
        print!("  ×|");
        for y in field.elements() {
            print!("{y:>3}");
        }
        println!("\n{}", "-".repeat(4 + 3 * q as usize));
        for x in field.elements() {
            print!("{x:>3}|");
            for y in field.elements() {
                print!("{:>3}", field.mul(x, y));
            }
            println!();
        }
    }

    println!("\n   x  Tr(x)  x^-1  char(x)");
    for x in field.elements().take(16) {
        let inv = field.inv(x).map_or("-".into(), |i| i.to_string());
        let chi = field.char(x);
        println!("{x:>4}  {:>5}  {inv:>4}  ζ_{}^{}", field.trace(x), chi.p, chi.power);
    }
    Ok(())
}
