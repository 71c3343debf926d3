//! Distributions restricted to flattened words starting with `1k`.

use flatstat::dist::{prefix_dist, DistError};
use flatstat::oracle::Oracle;
use flatstat::perm::{StatKind, Statistic};

fn main() -> Result<(), DistError> {
    let oracle = Oracle::default();
    let n = 6;
    for kind in [
        StatKind::Sub123,
        StatKind::Sub321,
        StatKind::Peak,
        StatKind::Valley,
    ] {
        println!("{kind}, n = {n}");
        for k in 3..=n {
            let formula = prefix_dist(kind, n, k)?;
            let brute =
                oracle.brute_prefix_distribution(Statistic::flattened(kind), n, &[1, k as u32])?;
            println!(
                "  g(1{k}) = {formula}   matches enumeration: {}",
                formula == brute
            );
        }
    }
    Ok(())
}
