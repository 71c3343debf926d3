//! Floating-point closed forms, infinite sums and the peak expansion
//! diagnostic.

use flatstat::dist::analytic::{
    analytic_compare, infinite_sum_eval, peak_series_diagnostic, AnalyticFn,
};
use flatstat::dist::DistError;

fn main() -> Result<(), DistError> {
    for f in [
        AnalyticFn::H,
        AnalyticFn::G123,
        AnalyticFn::B123,
        AnalyticFn::B321,
    ] {
        let c = analytic_compare(f, 0.1, 0.5)?;
        println!(
            "{:<5} closed {:.15} series {:.15} rel err {:.1e}",
            f.name(),
            c.closed,
            c.series,
            c.relative_error
        );
    }
    for (name, n, q) in [("des", 5, 0.5), ("asc", 5, 2.0), ("valley", 5, 0.5)] {
        let s = infinite_sum_eval(name, n, q)?;
        println!(
            "{name} n={n} q={q}: {} ({} terms, tail <= {:.1e})",
            s.value, s.terms, s.tail_bound
        );
    }
    print!("{}", peak_series_diagnostic(3, 0.9, 10)?);
    Ok(())
}
