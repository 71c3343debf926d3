//! Truncated exponential generating series and the identities linking them
//! to the recurrences.

use flatstat::dist::gf::{builder, series_identity_check};
use flatstat::dist::DistError;

fn main() -> Result<(), DistError> {
    let gp = builder("Gp", 6)?;
    for m in 0..=6 {
        println!("[x^{m}] G^p = {}", gp.coeff(m));
    }
    for name in ["des", "321", "peak", "valley"] {
        println!(
            "{name} identity holds to order 12: {}",
            series_identity_check(name, 12)?
        );
    }
    Ok(())
}
