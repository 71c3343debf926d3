//! Exact polynomials in q and in s with s^2 = 1 - q, and truncated series.

use flatstat::algebra::{AlgebraError, QPolynomial, QSeries, SPolynomial};

fn main() -> Result<(), AlgebraError> {
    let a = QPolynomial::from_i64s(&[1, 4, 1]);
    let theta = QPolynomial::theta();
    println!("A_3 = {a}, theta = {theta}, A_3 * theta = {}", &a * &theta);
    println!("A_3 with q -> 1 - q: {}", a.substitute_theta());

    let s = SPolynomial::var();
    let even = &(&s * &s) + &SPolynomial::one();
    println!("s^2 + 1 in q: {}", even.reduce_even()?);

    let f = QSeries::from_egf(&[QPolynomial::one(), QPolynomial::q(), theta], 4);
    let inv = f.reciprocal()?;
    println!("f * (1/f) = 1: {}", &f * &inv == QSeries::one(4));
    Ok(())
}
