//! The d-descent triangle by recurrence, its CSV export, and the explicit
//! marginal formula.

use flatstat::ddescent::{explicit_marginal, triangle_by_recurrence, DDescentError};

fn main() -> Result<(), DDescentError> {
    let d = 2;
    let t = triangle_by_recurrence(6, d)?;
    print!("{}", t.to_csv());
    for m in 0..3 {
        println!(
            "a(9, {m}) with d={d}: {} (explicit {})",
            triangle_by_recurrence(9, d)?.marginal(9, m),
            explicit_marginal(9, m, d)?
        );
    }
    Ok(())
}
