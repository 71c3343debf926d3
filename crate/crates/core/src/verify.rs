//! Cross-checks of every computed quantity against the brute-force oracle
//! and against each other, grouped into named suites.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::QPolynomial;
use crate::bijection::{all_encodings, transport};
use crate::ddescent::{
    equidistribution_check, explicit_marginal, factorial_identity_check, marginal_by_recurrence,
    triangle_by_recurrence,
};
use crate::dist::analytic::{analytic_compare, analytic_eval, infinite_sum_eval, AnalyticFn};
use crate::dist::gf::series_identity_mismatch;
use crate::dist::{average, dist_with, mean_of, prefix_dist, DistError, MethodTag};
use crate::oracle::Oracle;
use crate::perm::{count_stat, iterate_sym, StatKind, Statistic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("n_max = {n_max} exceeds the oracle cap {cap}")]
    CapExceeded { n_max: usize, cap: usize },
}

/// A deliberate corruption used to prove the suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Adds 1 to the recurrence value of flattened `Sub321` at `n = n_max`.
    PerturbDistribution,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub suite: &'static str,
    pub case: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl CheckRecord {
    fn new(suite: &'static str, case: String, passed: bool) -> Self {
        CheckRecord {
            suite,
            case,
            passed,
            detail: None,
        }
    }

    fn error(suite: &'static str, case: String, err: impl fmt::Display) -> Self {
        CheckRecord {
            suite,
            case,
            passed: false,
            detail: Some(err.to_string()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub n_max: usize,
    pub d_max: u32,
    pub fault: Option<Fault>,
    pub oracle: Oracle,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max: 8,
            d_max: 3,
            fault: None,
            oracle: Oracle::from_env(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub records: Vec<CheckRecord>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.records.iter().find(|r| !r.passed)
    }

    /// `(suite, passed, total)` in first-seen suite order.
    pub fn summary(&self) -> Vec<(&'static str, usize, usize)> {
        let mut rows: Vec<(&'static str, usize, usize)> = Vec::new();
        for r in &self.records {
            let idx = match rows.iter().position(|row| row.0 == r.suite) {
                Some(i) => i,
                None => {
                    rows.push((r.suite, 0, 0));
                    rows.len() - 1
                }
            };
            rows[idx].1 += usize::from(r.passed);
            rows[idx].2 += 1;
        }
        rows
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<12} {:>8} {:>8}  status", "suite", "passed", "total")?;
        for (suite, passed, total) in self.summary() {
            let status = if passed == total { "PASS" } else { "FAIL" };
            writeln!(f, "{suite:<12} {passed:>8} {total:>8}  {status}")?;
        }
        match self.first_failure() {
            Some(r) => {
                write!(f, "first failure: [{}] {}", r.suite, r.case)?;
                if let Some(d) = &r.detail {
                    write!(f, ": {d}")?;
                }
                writeln!(f)
            }
            None => writeln!(f, "all checks passed"),
        }
    }
}

/// Flattened statistics with at least one non-brute method.
pub fn checked_statistics(d_max: u32) -> Vec<Statistic> {
    let mut kinds = vec![
        StatKind::Des,
        StatKind::Asc,
        StatKind::BigDes,
        StatKind::Sub123,
        StatKind::Sub321,
        StatKind::Peak,
        StatKind::Valley,
    ];
    kinds.extend((1..=d_max).map(StatKind::DDes));
    let mut stats: Vec<Statistic> = kinds.into_iter().map(Statistic::flattened).collect();
    stats.push(Statistic::plain(StatKind::Des));
    stats.push(Statistic::plain(StatKind::Asc));
    stats
}

/// Every supported method of every statistic against the oracle.
pub fn oracle_agreement(
    oracle: &Oracle,
    stats: &[Statistic],
    ns: impl IntoIterator<Item = usize> + Clone,
    fault: Option<(Statistic, usize, MethodTag)>,
) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for &st in stats {
        for n in ns.clone() {
            let brute = match oracle.brute_distribution(st, n) {
                Ok(b) => b,
                Err(e) => {
                    out.push(CheckRecord::error(
                        "oracle",
                        format!("({st}, {n}, brute)"),
                        e,
                    ));
                    continue;
                }
            };
            for method in MethodTag::ALL
                .into_iter()
                .filter(|&m| m != MethodTag::Brute)
            {
                let case = format!("({st}, {n}, {method})");
                match dist_with(oracle, st, n, method) {
                    Ok(mut g) => {
                        if fault == Some((st, n, method)) {
                            g = &g + &QPolynomial::one();
                        }
                        out.push(CheckRecord::new("oracle", case, g == brute));
                    }
                    Err(DistError::MethodUnsupported { .. }) => {}
                    Err(e) => out.push(CheckRecord::error("oracle", case, e)),
                }
            }
        }
    }
    out
}

/// `g_n(1k)` formulas against prefix-restricted enumeration.
pub fn prefix_formulas(oracle: &Oracle, ns: impl IntoIterator<Item = usize>) -> Vec<CheckRecord> {
    let kinds = [
        StatKind::Des,
        StatKind::Sub123,
        StatKind::Sub321,
        StatKind::Peak,
        StatKind::Valley,
    ];
    let mut out = Vec::new();
    for n in ns {
        for kind in kinds {
            let table = match oracle.prefix_table(Statistic::flattened(kind), n, 2) {
                Ok(t) => t,
                Err(e) => {
                    out.push(CheckRecord::error("prefix", format!("{kind} n={n}"), e));
                    continue;
                }
            };
            for k in 3..=n {
                let case = format!("{kind} g_{n}(1{k})");
                let brute = table
                    .get(&[1, k as u32][..])
                    .cloned()
                    .unwrap_or_else(QPolynomial::zero);
                match prefix_dist(kind, n, k) {
                    Ok(g) => out.push(CheckRecord::new("prefix", case, g == brute)),
                    Err(e) => out.push(CheckRecord::error("prefix", case, e)),
                }
            }
        }
    }
    out
}

/// Generating-series identities up to `x^order`.
pub fn series_identities(order: usize) -> Vec<CheckRecord> {
    ["des", "321", "peak", "valley"]
        .into_iter()
        .map(|name| {
            let case = format!("{name} to order {order}");
            match series_identity_mismatch(name, order) {
                Ok(None) => CheckRecord::new("series", case, true),
                Ok(Some(m)) => CheckRecord {
                    detail: Some(format!("coefficient of x^{m} differs")),
                    ..CheckRecord::new("series", case, false)
                },
                Err(e) => CheckRecord::error("series", case, e),
            }
        })
        .collect()
}

/// Closed-form averages against the mean of the brute-force distribution.
pub fn averages(oracle: &Oracle, ns: impl IntoIterator<Item = usize> + Clone) -> Vec<CheckRecord> {
    let kinds = [
        StatKind::Des,
        StatKind::Asc,
        StatKind::Sub123,
        StatKind::Sub321,
        StatKind::Peak,
        StatKind::Valley,
    ];
    let mut out = Vec::new();
    for kind in kinds {
        for n in ns.clone() {
            let Ok(expected) = average(kind, n) else {
                continue;
            };
            let case = format!("{kind} n={n}");
            match oracle.brute_distribution(Statistic::flattened(kind), n) {
                Ok(g) => out.push(CheckRecord::new(
                    "average",
                    case,
                    mean_of(&g, n) == expected,
                )),
                Err(e) => out.push(CheckRecord::error("average", case, e)),
            }
        }
    }
    out
}

/// `transport` is a bijection of `S_n` carrying flattened descents to big
/// descents, and encodings of length `n - 1` number `n!`.
pub fn bijections(
    ns: impl IntoIterator<Item = usize>,
    encoding_ns: impl IntoIterator<Item = usize>,
    cap: usize,
) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let des = Statistic::flattened(StatKind::Des);
    let big = Statistic::plain(StatKind::BigDes);
    for n in ns {
        let case = format!("transport on S_{n}");
        let perms = match iterate_sym(n, cap) {
            Ok(p) => p,
            Err(e) => {
                out.push(CheckRecord::error("bijection", case, e));
                continue;
            }
        };
        let mut image = HashSet::new();
        let mut carried = true;
        let mut total = 0usize;
        for p in perms {
            let t = transport(&p);
            carried &= count_stat(&p, des) == count_stat(&t, big);
            image.insert(t);
            total += 1;
        }
        out.push(CheckRecord::new(
            "bijection",
            case,
            carried && image.len() == total,
        ));
    }
    for n in encoding_ns {
        let expected: usize = (1..=n).product();
        out.push(CheckRecord::new(
            "bijection",
            format!("|A_{n}| = {n}!"),
            all_encodings(n).len() == expected,
        ));
    }
    out
}

/// d-descent triangle, marginals, factorial identity and equidistribution.
pub fn ddescents(oracle: &Oracle, n_max: usize, d_max: u32, equi_n_max: usize) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    if n_max == 0 {
        return out;
    }
    for d in 1..=d_max {
        let case = format!("triangle d={d} n<={n_max}");
        match (
            triangle_by_recurrence(n_max, d),
            oracle.brute_ddescent_table(n_max, d),
        ) {
            (Ok(t), Ok(b)) => out.push(CheckRecord::new("ddescent", case, t == b)),
            (Err(e), _) => out.push(CheckRecord::error("ddescent", case, e)),
            (_, Err(e)) => out.push(CheckRecord::error("ddescent", case, e)),
        }
        for n in 1..=equi_n_max {
            let case = format!("equidistribution d={d} n={n}");
            match equidistribution_check(oracle, n, d) {
                Ok(ok) => out.push(CheckRecord::new("ddescent", case, ok)),
                Err(e) => out.push(CheckRecord::error("ddescent", case, e)),
            }
        }
    }
    out
}

/// Marginal recurrence against the explicit formula, and the factorial
/// identity; both are cheap, so they take their own bound.
pub fn ddescent_formulas(n_max: usize, d_max: u32) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for d in 1..=d_max {
        let case = format!("explicit marginal d={d} n<={n_max}");
        match marginal_by_recurrence(n_max, d) {
            Ok(marg) => {
                let ok = (1..=n_max).all(|n| {
                    (0..n).all(|m| match explicit_marginal(n, m, d) {
                        Ok(v) => v == marg[n][m],
                        Err(_) => m == 0 || marg[n][m] == BigInt::from(0),
                    })
                });
                out.push(CheckRecord::new("ddescent", case, ok));
            }
            Err(e) => out.push(CheckRecord::error("ddescent", case, e)),
        }
        for n in d as usize + 1..=n_max {
            let case = format!("n!/(d+1)! identity d={d} n={n}");
            match factorial_identity_check(n, d) {
                Ok(ok) => out.push(CheckRecord::new("ddescent", case, ok)),
                Err(e) => out.push(CheckRecord::error("ddescent", case, e)),
            }
        }
    }
    out
}

/// Reduction and exchange identities on prefix distributions for every
/// admissible index choice and every length-three statistic.
pub fn lemmas(oracle: &Oracle, ns: impl IntoIterator<Item = usize>) -> Vec<CheckRecord> {
    let kinds = [
        StatKind::Sub123,
        StatKind::Sub321,
        StatKind::Peak,
        StatKind::Valley,
    ];
    let mut out = Vec::new();
    for n in ns {
        let top = n as u32;
        for kind in kinds {
            let mut reduction = Ok(true);
            for i in 2..=top {
                for j in (2..=top).filter(|&j| j != i) {
                    for k in (2..=top).filter(|&k| k != i && k != j) {
                        if reduction == Ok(true) {
                            reduction = oracle.verify_lemma_reduction(kind, n, i, j, k);
                        }
                    }
                }
            }
            push_result(
                &mut out,
                "lemma",
                format!("reduction {kind} n={n}"),
                reduction,
            );
            let mut exchange = Ok(true);
            for i in 3..=top {
                for j in 2..i {
                    if exchange == Ok(true) {
                        exchange = oracle.verify_lemma_exchange(kind, n, i, j);
                    }
                }
            }
            push_result(
                &mut out,
                "lemma",
                format!("exchange {kind} n={n}"),
                exchange,
            );
        }
    }
    out
}

fn push_result<E: fmt::Display>(
    out: &mut Vec<CheckRecord>,
    suite: &'static str,
    case: String,
    r: Result<bool, E>,
) {
    out.push(match r {
        Ok(ok) => CheckRecord::new(suite, case, ok),
        Err(e) => CheckRecord::error(suite, case, e),
    });
}

/// Grid of `(x, q)` used for the floating-point checks.
pub const ANALYTIC_XS: [f64; 3] = [0.05, 0.1, 0.2];
pub const ANALYTIC_QS: [f64; 3] = [0.25, 0.5, 0.75];

/// `H(0) = 2`, `H'(0) = 6 - 4 theta`, the closed forms against their exact
/// series, and the infinite sums against exact distributions.
pub fn analytics(oracle: &Oracle, ns: impl IntoIterator<Item = usize> + Clone) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for q in ANALYTIC_QS {
        let h0 = analytic_compare(AnalyticFn::H, 0.0, q).map(|c| (c.closed - 2.0).abs() < 1e-12);
        push_result(&mut out, "analytic", format!("H(0) = 2 at q={q}"), h0);
        let step = 1e-5;
        let slope = analytic_eval(AnalyticFn::H, step, q).and_then(|hp| {
            let hm = analytic_eval(AnalyticFn::H, -step, q)?;
            Ok(((hp - hm) / (2.0 * step) - (6.0 - 4.0 * (1.0 - q))).abs() < 1e-4)
        });
        push_result(&mut out, "analytic", format!("H'(0) at q={q}"), slope);
    }
    for f in [
        AnalyticFn::H,
        AnalyticFn::G123,
        AnalyticFn::B123,
        AnalyticFn::B321,
    ] {
        for x in ANALYTIC_XS {
            for q in ANALYTIC_QS {
                let r = analytic_compare(f, x, q).map(|c| c.relative_error < 1e-8);
                push_result(
                    &mut out,
                    "analytic",
                    format!("{} at x={x} q={q}", f.name()),
                    r,
                );
            }
        }
    }
    for (name, kind, min_n) in [("des", StatKind::Des, 1), ("valley", StatKind::Valley, 2)] {
        for n in ns.clone().into_iter().filter(|&n| n >= min_n) {
            let exact = dist_with(oracle, Statistic::flattened(kind), n, MethodTag::Recurrence);
            for q in ANALYTIC_QS {
                let case = format!("{name} sum n={n} q={q}");
                let r = exact.clone().and_then(|g| {
                    let sum = infinite_sum_eval(name, n, q)?;
                    Ok((sum.value - g.eval_f64(q)).abs() < 1e-8)
                });
                push_result(&mut out, "analytic", case, r);
            }
        }
    }
    out
}

/// Runs every suite with bounds derived from `cfg`.
pub fn run_suite(cfg: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    let cap = cfg.oracle.max_n();
    if cfg.n_max > cap {
        return Err(VerifyError::CapExceeded {
            n_max: cfg.n_max,
            cap,
        });
    }
    let n_max = cfg.n_max;
    let o = &cfg.oracle;
    let fault = cfg.fault.map(|Fault::PerturbDistribution| {
        (
            Statistic::flattened(StatKind::Sub321),
            n_max,
            MethodTag::Recurrence,
        )
    });
    let mut records = oracle_agreement(o, &checked_statistics(cfg.d_max), 1..=n_max, fault);
    records.extend(prefix_formulas(o, 3..=n_max.min(7)));
    records.extend(series_identities(n_max.saturating_sub(1)));
    records.extend(averages(o, 1..=n_max));
    records.extend(bijections(1..=n_max.min(7), 1..=n_max.min(8), cap));
    records.extend(ddescents(o, n_max, cfg.d_max, n_max));
    records.extend(ddescent_formulas(n_max, cfg.d_max));
    records.extend(lemmas(o, 4..=n_max.min(6)));
    records.extend(analytics(o, 1..=n_max));
    Ok(VerifyReport { records })
}
