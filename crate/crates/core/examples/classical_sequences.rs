//! Eulerian numbers, Chebyshev polynomials, Stirling numbers and the
//! coefficients of powers of x^2 cot x.

use flatstat::classical::{
    chebyshev_v, stirling_row, ClassicalError, EulerianTable, StirlingKind, TCoeffTable,
};

fn main() -> Result<(), ClassicalError> {
    let eulerian = EulerianTable::new(6);
    for n in 1..=6 {
        println!("A_{n} = {}", eulerian.poly(n));
    }
    for n in 0..=4 {
        println!("V_{n}(s) = {}", chebyshev_v(n));
    }
    println!(
        "c(6, k) = {:?}",
        stirling_row(StirlingKind::FirstSignless, 6)
    );
    let t = TCoeffTable::new(10, 3);
    println!("t(9, 3) = {}", t.get(9, 3)?);
    Ok(())
}
