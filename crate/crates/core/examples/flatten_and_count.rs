//! Standard cycle form, flattening, and statistic counts on one permutation.

use flatstat::perm::{parse_permutation, StatKind, Statistic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = parse_permutation("7,1,5,6,4,3,2,8", false)?.into_permutation();
    println!("permutation     {p}");
    println!("cycle form      {}", p.standard_cycle_form());
    println!("flattened word  {}", p.flattened());

    let kinds = [
        StatKind::Des,
        StatKind::Asc,
        StatKind::BigDes,
        StatKind::DDes(3),
        StatKind::Sub123,
        StatKind::Sub321,
        StatKind::Peak,
        StatKind::Valley,
    ];
    println!("{:<8} {:>9} {:>6}", "stat", "flattened", "plain");
    for kind in kinds {
        println!(
            "{:<8} {:>9} {:>6}",
            kind.name(),
            p.count(Statistic::flattened(kind)),
            p.count(Statistic::plain(kind))
        );
    }
    Ok(())
}
