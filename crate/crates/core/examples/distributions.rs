//! Exact distributions by every available method, checked against each
//! other.

use flatstat::dist::{dist, DistError, MethodTag};
use flatstat::perm::{StatKind, Statistic};

fn main() -> Result<(), DistError> {
    let n = 7;
    let kinds = [
        StatKind::Des,
        StatKind::Asc,
        StatKind::BigDes,
        StatKind::Sub123,
        StatKind::Sub321,
        StatKind::Peak,
        StatKind::Valley,
    ];
    for kind in kinds {
        let st = Statistic::flattened(kind);
        let brute = dist(st, n, MethodTag::Brute)?;
        println!("{kind} over S_{n}: {brute}");
        for method in MethodTag::ALL.into_iter().skip(1) {
            match dist(st, n, method) {
                Ok(g) => println!("  {method:<10} agrees: {}", g == brute),
                Err(DistError::MethodUnsupported { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    let ddes = dist(
        Statistic::flattened(StatKind::DDes(3)),
        10,
        MethodTag::Closed,
    )?;
    println!("ddes(3) over S_10 by the closed form: {ddes}");
    Ok(())
}
