//! Permutations counted by flattened d-descents and cycles.
//!
//! `a_{n,m,k}` is the number of permutations of `[n]` whose flattened form
//! has exactly `m` d-descents and which have exactly `k` cycles; the marginal
//! `a_{n,m}` sums over `k`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::factorial;
use crate::classical::{stirling_row, weak_compositions, StirlingKind};
use crate::oracle::{Oracle, OracleError};
use crate::perm::{StatKind, Statistic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DDescentError {
    #[error("need n >= m + d + 1 (n = {n}, m = {m}, d = {d})")]
    Range { n: usize, m: usize, d: u32 },
    #[error("d must be at least 1")]
    ZeroD,
}

/// Triangle `a_{n,m,k}` for `1 <= n <= max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistTriangle {
    d: u32,
    /// `rows[n][m][k]`, with `m < n` and `k <= n`; `rows[0]` is unused.
    rows: Vec<Vec<Vec<BigInt>>>,
}

impl DistTriangle {
    pub(crate) fn zeroed(max_n: usize, d: u32) -> Self {
        let rows = (0..=max_n)
            .map(|n| vec![vec![BigInt::zero(); n + 1]; n.max(1)])
            .collect();
        DistTriangle { d, rows }
    }

    pub(crate) fn cell_mut(&mut self, n: usize, m: usize, k: usize) -> &mut BigInt {
        &mut self.rows[n][m][k]
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `a_{n,m,k}`; zero outside the stored range.
    pub fn get(&self, n: usize, m: usize, k: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|r| r.get(m))
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_default()
    }

    /// `a_{n,m} = sum_k a_{n,m,k}`.
    pub fn marginal(&self, n: usize, m: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|r| r.get(m))
            .map(|r| r.iter().sum())
            .unwrap_or_default()
    }

    pub fn row_total(&self, n: usize) -> BigInt {
        self.rows[n].iter().flatten().sum()
    }

    /// CSV with header `n,m,k,count`, nonzero cells only, ordered by
    /// `(n, m, k)`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,m,k,count\n");
        for (n, row) in self.rows.iter().enumerate().skip(1) {
            for (m, ks) in row.iter().enumerate() {
                for (k, c) in ks.iter().enumerate() {
                    if !c.is_zero() {
                        writeln!(out, "{n},{m},{k},{c}").unwrap();
                    }
                }
            }
        }
        out
    }
}

fn check_d(d: u32) -> Result<(), DDescentError> {
    if d == 0 {
        Err(DDescentError::ZeroD)
    } else {
        Ok(())
    }
}

/// Fills `a_{n,m,k}` for `n <= max_n` from the base rows `n <= d + 2` and
/// the three-term recurrence in `n`.
pub fn triangle_by_recurrence(max_n: usize, d: u32) -> Result<DistTriangle, DDescentError> {
    check_d(d)?;
    let du = d as usize;
    let mut t = DistTriangle::zeroed(max_n, d);
    for n in 1..=max_n.min(du + 1) {
        for (k, c) in stirling_row(StirlingKind::FirstSignless, n)
            .into_iter()
            .enumerate()
        {
            *t.cell_mut(n, 0, k) = c;
        }
    }
    if max_n >= du + 2 {
        let lower = stirling_row(StirlingKind::FirstSignless, du + 1);
        let upper = stirling_row(StirlingKind::FirstSignless, du + 2);
        for k in 0..=du + 2 {
            let c_lo = lower.get(k).cloned().unwrap_or_default();
            *t.cell_mut(du + 2, 0, k) = &upper[k] - &c_lo;
            *t.cell_mut(du + 2, 1, k) = c_lo;
        }
    }
    for n in du + 3..=max_n {
        for m in 0..n {
            for k in 1..=n {
                let mut v = t.get(n - 1, m, k - 1) + t.get(n - 1, m, k) * (m + du);
                if m > 0 && n > m + du {
                    v += t.get(n - 1, m - 1, k) * (n - m - du);
                }
                *t.cell_mut(n, m, k) = v;
            }
        }
    }
    Ok(t)
}

/// `a_{n,m}` for `n <= max_n` via the marginal recurrence; `result[n][m]`.
pub fn marginal_by_recurrence(max_n: usize, d: u32) -> Result<Vec<Vec<BigInt>>, DDescentError> {
    check_d(d)?;
    let du = d as usize;
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..=max_n {
        let mut row = vec![BigInt::zero(); n];
        if n <= du + 1 {
            row[0] = factorial(n);
        } else {
            let prev = &rows[n - 1];
            let at = |m: usize| prev.get(m).cloned().unwrap_or_default();
            for (m, slot) in row.iter_mut().enumerate() {
                let mut v = at(m) * (m + du + 1);
                if m > 0 && n > m + du {
                    v += at(m - 1) * (n - m - du);
                }
                *slot = v;
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Sum over weak compositions `i_1 + ... + i_{m+1} = n - 1 - d - m` of
/// `prod_{j<=m}(1 + i_1 + ... + i_j) * prod_j (d + j)^{i_j}`.
fn composition_sum(n: usize, m: usize, d: usize) -> BigInt {
    weak_compositions(n - 1 - d - m, m + 1)
        .map(|parts| {
            let mut term = BigInt::one();
            let mut partial = 0;
            for (j, &i) in parts.iter().enumerate() {
                partial += i;
                if j < m {
                    term *= partial + 1;
                }
                term *= BigInt::from(d + j + 1).pow(i as u32);
            }
            term
        })
        .sum()
}

/// `a_{n,m}` from the explicit composition formula.
pub fn explicit_marginal(n: usize, m: usize, d: u32) -> Result<BigInt, DDescentError> {
    check_d(d)?;
    let du = d as usize;
    if n < m + du + 1 {
        return Err(DDescentError::Range { n, m, d });
    }
    Ok(factorial(du + 1) * composition_sum(n, m, du))
}

/// Checks `n!/(d+1)! = sum_m (composition sum for a_{n,m})`.
pub fn factorial_identity_check(n: usize, d: u32) -> Result<bool, DDescentError> {
    check_d(d)?;
    let du = d as usize;
    if n < du + 1 {
        return Err(DDescentError::Range { n, m: 0, d });
    }
    let total: BigInt = (0..=n - du - 1).map(|m| composition_sum(n, m, du)).sum();
    Ok(total * factorial(du + 1) == factorial(n))
}

/// Compares the distribution of flattened `DDes(d)` with that of plain
/// `DDes(d + 1)` over `S_n`.
pub fn equidistribution_check(oracle: &Oracle, n: usize, d: u32) -> Result<bool, OracleError> {
    assert!(d >= 1, "d must be at least 1");
    let flat = oracle.histogram(Statistic::flattened(StatKind::DDes(d)), n)?;
    let plain = oracle.histogram(Statistic::plain(StatKind::DDes(d + 1)), n)?;
    Ok(trim(flat) == trim(plain))
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}
