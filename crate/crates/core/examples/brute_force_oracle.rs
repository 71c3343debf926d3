//! Parallel enumeration of S_n: histograms, prefix tables and the reduction
//! and exchange identities.

use flatstat::oracle::{Oracle, OracleError};
use flatstat::perm::{StatKind, Statistic};

fn main() -> Result<(), OracleError> {
    let oracle = Oracle::from_env();
    let st = Statistic::flattened(StatKind::Peak);
    println!("peak histogram over S_9: {:?}", oracle.histogram(st, 9)?);
    for (prefix, g) in oracle.prefix_table(st, 5, 2)? {
        println!("  prefix {prefix:?}: {g}");
    }
    println!(
        "reduction (i,j,k) = (3,5,2), n = 6: {}",
        oracle.verify_lemma_reduction(StatKind::Valley, 6, 3, 5, 2)?
    );
    println!(
        "exchange (i,j) = (5,3), n = 6: {}",
        oracle.verify_lemma_exchange(StatKind::Sub321, 6, 5, 3)?
    );
    Ok(())
}
