//! Closed-form averages next to the mean of the exact distribution.

use flatstat::dist::{average, dist, mean_of, DistError, MethodTag};
use flatstat::perm::{StatKind, Statistic};

fn main() -> Result<(), DistError> {
    let kinds = [
        StatKind::Des,
        StatKind::Asc,
        StatKind::Sub123,
        StatKind::Sub321,
        StatKind::Peak,
        StatKind::Valley,
    ];
    for kind in kinds {
        let n = 8;
        let closed = average(kind, n)?;
        let g = dist(Statistic::flattened(kind), n, MethodTag::Brute)?;
        println!(
            "{kind:<7} n={n}: closed {closed:>7}  from distribution {}",
            mean_of(&g, n)
        );
    }
    println!("123 at n=100: {}", average(StatKind::Sub123, 100)?);
    Ok(())
}
