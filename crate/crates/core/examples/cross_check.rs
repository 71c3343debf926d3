//! The full cross-check suite at a small size.

use flatstat::oracle::Oracle;
use flatstat::verify::{run_suite, VerifyConfig, VerifyError};

fn main() -> Result<(), VerifyError> {
    let cfg = VerifyConfig {
        n_max: 6,
        d_max: 2,
        fault: None,
        oracle: Oracle::default(),
    };
    print!("{}", run_suite(&cfg)?);
    Ok(())
}
