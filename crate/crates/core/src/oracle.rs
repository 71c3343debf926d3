//! Exhaustive enumeration over `S_n`: exact distributions, distributions
//! restricted to a prefix of the flattened word, and mechanical checks of the
//! prefix reduction and exchange lemmas.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::QPolynomial;
use crate::ddescent::DistTriangle;
use crate::perm::{
    count_on_word, flatten_into, next_permutation, prefixes, PermError, StatKind, Statistic,
    DEFAULT_MAX_N,
};

/// Environment variable overriding the default enumeration cap.
pub const MAX_N_ENV: &str = "FLATSTAT_MAX_N";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("invalid prefix {0:?}")]
    InvalidPrefix(Vec<u32>),
    #[error("n must be at least 1")]
    EmptyRange,
    #[error("lemma arguments out of range: {0}")]
    LemmaRange(String),
}

impl From<PermError> for OracleError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::CapExceeded { n, cap } => OracleError::CapExceeded { n, cap },
            _ => OracleError::EmptyRange,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    max_n: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            max_n: DEFAULT_MAX_N,
        }
    }
}

impl Oracle {
    pub fn new(max_n: usize) -> Self {
        Oracle { max_n }
    }

    /// Reads the cap from `FLATSTAT_MAX_N`, falling back to the default.
    pub fn from_env() -> Self {
        std::env::var(MAX_N_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Oracle::new)
            .unwrap_or_default()
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    fn check(&self, n: usize) -> Result<(), OracleError> {
        if n == 0 {
            return Err(OracleError::EmptyRange);
        }
        if n > self.max_n {
            return Err(OracleError::CapExceeded { n, cap: self.max_n });
        }
        Ok(())
    }

    /// `hist[c]` = number of `pi` in `S_n` with statistic value `c`.
    pub fn histogram(&self, st: Statistic, n: usize) -> Result<Vec<u64>, OracleError> {
        self.check(n)?;
        let hist = par_fold(
            n,
            || vec![0u64; n],
            |acc, word, flat, _| {
                let w = if st.flattened { flat } else { word };
                acc[count_on_word(w, st.kind)] += 1;
            },
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
        Ok(hist)
    }

    /// `g_n^st(q)`, the generating polynomial of `st` over `S_n`.
    pub fn brute_distribution(&self, st: Statistic, n: usize) -> Result<QPolynomial, OracleError> {
        Ok(hist_to_poly(&self.histogram(st, n)?))
    }

    /// Distributions for every prefix of length `len` of the word the
    /// statistic is read on (the flattened word when `st.flattened`).
    pub fn prefix_table(
        &self,
        st: Statistic,
        n: usize,
        len: usize,
    ) -> Result<BTreeMap<Vec<u32>, QPolynomial>, OracleError> {
        self.check(n)?;
        let len = len.min(n);
        let table = par_fold(
            n,
            BTreeMap::<Vec<u32>, Vec<u64>>::new,
            |acc, word, flat, _| {
                let w = if st.flattened { flat } else { word };
                let hist = acc.entry(w[..len].to_vec()).or_insert_with(|| vec![0; n]);
                hist[count_on_word(w, st.kind)] += 1;
            },
            |mut a, b| {
                for (k, v) in b {
                    let slot = a.entry(k).or_insert_with(|| vec![0; n]);
                    slot.iter_mut().zip(v).for_each(|(x, y)| *x += y);
                }
                a
            },
        );
        Ok(table
            .into_iter()
            .map(|(k, h)| (k, hist_to_poly(&h)))
            .collect())
    }

    /// `g_n^st(a_1 ... a_k)`: the distribution over permutations whose
    /// (flattened) word starts with `prefix`; zero when `a_1 != 1` for a
    /// flattened statistic.
    pub fn brute_prefix_distribution(
        &self,
        st: Statistic,
        n: usize,
        prefix: &[u32],
    ) -> Result<QPolynomial, OracleError> {
        self.check(n)?;
        validate_prefix(prefix, n)?;
        Ok(self
            .prefix_table(st, n, prefix.len())?
            .remove(prefix)
            .unwrap_or_else(QPolynomial::zero))
    }

    /// Checks the reduction `g_n(1ijk) = (1 + [i = 2]) q^{st(1ijk) - st(1jk)}
    /// g_{n-1}(1 j' k')` with `j' = j - [j > i]`, `k' = k - [k > i]`.
    pub fn verify_lemma_reduction(
        &self,
        st: StatKind,
        n: usize,
        i: u32,
        j: u32,
        k: u32,
    ) -> Result<bool, OracleError> {
        let args = [i, j, k];
        if n < 4 || args.iter().any(|&a| a < 2 || a as usize > n) || i == j || j == k || i == k {
            return Err(OracleError::LemmaRange(format!("n={n} i={i} j={j} k={k}")));
        }
        let st = Statistic::flattened(st);
        let lhs = self.brute_prefix_distribution(st, n, &[1, i, j, k])?;
        let shift = |x: u32| x - u32::from(x > i);
        let rhs_base = self.brute_prefix_distribution(st, n - 1, &[1, shift(j), shift(k)])?;
        let exponent = count_on_word(&[1, i, j, k], st.kind) as i64
            - count_on_word(&[1, j, k], st.kind) as i64;
        let factor = if i == 2 { 2 } else { 1 };
        Ok(rhs_base
            .scale_i64(factor)
            .shift(exponent)
            .is_ok_and(|rhs| rhs == lhs))
    }

    /// Checks the exchange `g_n(1ij) = g_n(1 (j+1) j)` for `2 <= j < i <= n`.
    pub fn verify_lemma_exchange(
        &self,
        st: StatKind,
        n: usize,
        i: u32,
        j: u32,
    ) -> Result<bool, OracleError> {
        if n < 4 || j < 2 || j >= i || i as usize > n {
            return Err(OracleError::LemmaRange(format!("n={n} i={i} j={j}")));
        }
        let st = Statistic::flattened(st);
        let table = self.prefix_table(st, n, 3)?;
        let get = |p: [u32; 3]| table.get(&p[..]).cloned().unwrap_or_else(QPolynomial::zero);
        Ok(get([1, i, j]) == get([1, j + 1, j]))
    }

    /// `a_{m,k}` counts for every length up to `n`, by enumeration.
    pub fn brute_ddescent_table(&self, n: usize, d: u32) -> Result<DistTriangle, OracleError> {
        self.check(n)?;
        assert!(d >= 1, "d must be at least 1");
        let mut t = DistTriangle::zeroed(n, d);
        for len in 1..=n {
            let cells = par_fold(
                len,
                || vec![vec![0u64; len + 1]; len],
                |acc, _, flat, cycles| acc[count_on_word(flat, StatKind::DDes(d))][cycles] += 1,
                |mut a, b| {
                    for (ra, rb) in a.iter_mut().zip(b) {
                        ra.iter_mut().zip(rb).for_each(|(x, y)| *x += y);
                    }
                    a
                },
            );
            for (m, row) in cells.iter().enumerate() {
                for (k, &c) in row.iter().enumerate() {
                    *t.cell_mut(len, m, k) = BigInt::from(c);
                }
            }
        }
        Ok(t)
    }
}

fn validate_prefix(prefix: &[u32], n: usize) -> Result<(), OracleError> {
    let bad = || OracleError::InvalidPrefix(prefix.to_vec());
    if prefix.is_empty() || prefix.len() > 4 || prefix.len() > n {
        return Err(bad());
    }
    let mut seen = vec![false; n + 1];
    for &v in prefix {
        if v == 0 || v as usize > n || seen[v as usize] {
            return Err(bad());
        }
        seen[v as usize] = true;
    }
    Ok(())
}

fn hist_to_poly(hist: &[u64]) -> QPolynomial {
    QPolynomial::new(hist.iter().map(|&c| BigInt::from(c)).collect())
}

/// Visits every permutation of `S_n` with its flattened word and cycle count,
/// partitioning the work on word prefixes of length `ceil(n/2)`.
fn par_fold<A, I, V, M>(n: usize, init: I, visit: V, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    V: Fn(&mut A, &[u32], &[u32], usize) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let plen = n.div_ceil(2);
    prefixes(n, plen)
        .par_iter()
        .fold(
            || (init(), Vec::new(), Vec::new(), Vec::new()),
            |(mut acc, mut word, mut flat, mut seen), prefix| {
                word.clear();
                word.extend_from_slice(prefix);
                word.extend((1..=n as u32).filter(|v| !prefix.contains(v)));
                loop {
                    let cycles = flatten_into(&word, &mut flat, &mut seen);
                    visit(&mut acc, &word, &flat, cycles);
                    if !next_permutation(&mut word[plen..]) {
                        break;
                    }
                }
                (acc, word, flat, seen)
            },
        )
        .map(|(acc, ..)| acc)
        .reduce(&init, &merge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::factorial;

    fn flat(kind: StatKind) -> Statistic {
        Statistic::flattened(kind)
    }

    #[test]
    fn small_distributions() {
        let o = Oracle::default();
        assert_eq!(
            o.brute_distribution(flat(StatKind::Des), 3).unwrap(),
            QPolynomial::from_i64s(&[4, 2])
        );
        assert_eq!(
            o.brute_distribution(flat(StatKind::Sub123), 3).unwrap(),
            QPolynomial::from_i64s(&[2, 4])
        );
        assert_eq!(
            o.brute_distribution(flat(StatKind::Valley), 3).unwrap(),
            QPolynomial::constant(6)
        );
    }

    #[test]
    fn totals_are_factorials() {
        let o = Oracle::default();
        for kind in [StatKind::Des, StatKind::Peak, StatKind::Sub321] {
            for n in 1..=7 {
                let g = o.brute_distribution(flat(kind), n).unwrap();
                assert_eq!(g.eval_one(), factorial(n));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let o = Oracle::new(5);
        assert_eq!(
            o.brute_distribution(flat(StatKind::Des), 6),
            Err(OracleError::CapExceeded { n: 6, cap: 5 })
        );
    }

    #[test]
    fn prefix_distributions() {
        let o = Oracle::default();
        assert_eq!(
            o.brute_prefix_distribution(flat(StatKind::Des), 4, &[1, 2])
                .unwrap(),
            QPolynomial::from_i64s(&[8, 4])
        );
        assert!(o
            .brute_prefix_distribution(flat(StatKind::Des), 4, &[2])
            .unwrap()
            .is_zero());
        let total: QPolynomial = (2..=5)
            .map(|k| {
                o.brute_prefix_distribution(flat(StatKind::Peak), 5, &[1, k])
                    .unwrap()
            })
            .sum();
        assert_eq!(
            total,
            o.brute_distribution(flat(StatKind::Peak), 5).unwrap()
        );
        assert!(matches!(
            o.brute_prefix_distribution(flat(StatKind::Des), 4, &[1, 1]),
            Err(OracleError::InvalidPrefix(_))
        ));
        assert!(matches!(
            o.brute_prefix_distribution(flat(StatKind::Des), 6, &[1, 2, 3, 4, 5]),
            Err(OracleError::InvalidPrefix(_))
        ));
    }

    #[test]
    fn prefix_distributions_refine() {
        let o = Oracle::default();
        for kind in [
            StatKind::Des,
            StatKind::Sub123,
            StatKind::Sub321,
            StatKind::Valley,
        ] {
            for n in 1..=7 {
                let st = flat(kind);
                let mut coarse =
                    BTreeMap::from([(Vec::new(), o.brute_distribution(st, n).unwrap())]);
                for len in 1..=3.min(n) {
                    let fine = o.prefix_table(st, n, len).unwrap();
                    for (prefix, g) in &coarse {
                        let sum: QPolynomial = fine
                            .iter()
                            .filter(|(p, _)| p.starts_with(prefix))
                            .map(|(_, h)| h.clone())
                            .sum();
                        assert_eq!(&sum, g, "{kind} n={n} prefix={prefix:?}");
                    }
                    coarse = fine;
                }
            }
        }
    }

    #[test]
    fn lemma_spot_checks() {
        let o = Oracle::default();
        assert!(o
            .verify_lemma_reduction(StatKind::Peak, 4, 3, 2, 4)
            .unwrap());
        assert!(o
            .verify_lemma_reduction(StatKind::Sub123, 6, 2, 4, 3)
            .unwrap());
        assert!(o.verify_lemma_exchange(StatKind::Valley, 6, 5, 2).unwrap());
        assert!(o.verify_lemma_exchange(StatKind::Sub321, 5, 3, 2).unwrap());
        assert!(o.verify_lemma_exchange(StatKind::Peak, 3, 3, 2).is_err());
    }

    #[test]
    fn ddescent_fixture_cell() {
        let t = Oracle::default().brute_ddescent_table(9, 3).unwrap();
        assert!(t.get(9, 2, 3) > BigInt::from(0));
        assert_eq!(t.row_total(9), factorial(9));
        for n in 1..=4 {
            assert_eq!(t.marginal(n, 0), factorial(n));
        }
    }
}
