//! Eulerian numbers, Chebyshev polynomials of the second kind, Stirling
//! numbers, weak compositions and the coefficients `t_{n,m}` of
//! `(x^2 cot x)^m`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{factorial, QPolynomial, SPolynomial};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassicalError {
    #[error("Chebyshev closed form left an imaginary residue {0:e}")]
    ResidueTooLarge(f64),
    #[error("t({n},{m}): closed double sum disagrees with the series coefficient")]
    Mismatch { n: usize, m: usize },
    #[error("argument out of range: {0}")]
    Range(String),
}

/// Binomial coefficient, zero whenever `b < 0`, `a < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    (0..b).fold(BigInt::one(), |acc, i| acc * (a - i) / (i + 1))
}

/// Rows `A_{n,k}` for `0 <= n <= max_n`, where `A_{n,k}` counts permutations
/// of length `n` with `k` ascents.
#[derive(Debug, Clone)]
pub struct EulerianTable {
    rows: Vec<Vec<BigInt>>,
}

impl EulerianTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let at = |k: i64| {
                if k < 0 {
                    BigInt::zero()
                } else {
                    prev.get(k as usize).cloned().unwrap_or_default()
                }
            };
            let row: Vec<BigInt> = (0..n as i64)
                .map(|k| (k + 1) * at(k) + (n as i64 - k) * at(k - 1))
                .collect();
            rows.push(row);
        }
        EulerianTable { rows }
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.rows[n].get(k).cloned().unwrap_or_default()
    }

    pub fn poly(&self, n: usize) -> QPolynomial {
        QPolynomial::new(self.rows[n].clone())
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }
}

/// The Eulerian polynomial `A_n(q)`.
pub fn eulerian_poly(n: usize) -> QPolynomial {
    EulerianTable::new(n).poly(n)
}

/// `V_n(s) = U_n(s/2)`, which has integer coefficients; `n >= -2`.
pub fn chebyshev_v(n: i64) -> SPolynomial {
    assert!(n >= -2, "Chebyshev index below -2");
    chebyshev_v_table(n.max(0) as usize)[(n + 2) as usize].clone()
}

/// `V_{-2}, V_{-1}, V_0, ..., V_max` (index shifted by 2).
pub fn chebyshev_v_table(max: usize) -> Vec<SPolynomial> {
    let s = SPolynomial::var();
    let mut out = vec![SPolynomial::constant(-1), SPolynomial::zero()];
    for i in 2..max + 3 {
        let next = &(&s * &out[i - 1]) - &out[i - 2];
        out.push(next);
    }
    out
}

/// Evaluates `U_n(t)` through the closed form with complex intermediates.
pub fn chebyshev_closed_eval(n: i64, t: f64) -> Result<f64, ClassicalError> {
    if n < -2 {
        return Err(ClassicalError::Range(format!("n = {n} < -2")));
    }
    let k = (n + 1) as i32;
    let root = Complex64::new(t * t - 1.0, 0.0).sqrt();
    if root.norm() < 1e-12 {
        // t = +-1: limit (n+1) t^n
        return Ok((n + 1) as f64 * t.powi(n as i32));
    }
    let a = Complex64::new(t, 0.0) + root;
    let b = Complex64::new(t, 0.0) - root;
    let v = (a.powi(k) - b.powi(k)) / (root * 2.0);
    if v.im.abs() > 1e-9 {
        return Err(ClassicalError::ResidueTooLarge(v.im));
    }
    Ok(v.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StirlingKind {
    FirstSignless,
    FirstSigned,
    Second,
}

/// Row `n` of the requested Stirling triangle, indices `0..=n`.
pub fn stirling_row(kind: StirlingKind, n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for i in 1..=n {
        let mut next = vec![BigInt::zero(); i + 1];
        for k in 1..=i {
            let carry = row.get(k - 1).cloned().unwrap_or_default();
            let stay = row.get(k).cloned().unwrap_or_default();
            next[k] = match kind {
                StirlingKind::Second => carry + stay * k,
                _ => carry + stay * (i - 1),
            };
        }
        row = next;
    }
    if kind == StirlingKind::FirstSigned {
        for (k, c) in row.iter_mut().enumerate() {
            if (n - k) % 2 == 1 {
                *c = -c.clone();
            }
        }
    }
    row
}

pub fn stirling(kind: StirlingKind, n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    stirling_row(kind, n)[k].clone()
}

/// Iterator over all `(i_1, ..., i_parts)` of nonnegative integers summing to
/// `total`, in lexicographic order.
#[derive(Debug, Clone)]
pub struct WeakCompositions {
    current: Vec<usize>,
    done: bool,
}

pub fn weak_compositions(total: usize, parts: usize) -> WeakCompositions {
    assert!(parts >= 1, "at least one part");
    let mut current = vec![0; parts];
    current[parts - 1] = total;
    WeakCompositions {
        current,
        done: false,
    }
}

impl Iterator for WeakCompositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let p = self.current.len();
        let mut suffix = self.current[p - 1];
        let mut j = p - 1;
        loop {
            if j == 0 {
                self.done = true;
                break;
            }
            j -= 1;
            if suffix > 0 {
                self.current[j] += 1;
                for c in &mut self.current[j + 1..] {
                    *c = 0;
                }
                self.current[p - 1] = suffix - 1;
                break;
            }
            suffix += self.current[j];
        }
        Some(out)
    }
}

/// Compositions of `total` into exactly `parts` positive parts.
pub fn compositions(total: usize, parts: usize) -> impl Iterator<Item = Vec<usize>> {
    let inner = (parts >= 1 && total >= parts).then(|| weak_compositions(total - parts, parts));
    inner
        .into_iter()
        .flatten()
        .map(|c| c.into_iter().map(|i| i + 1).collect())
}

/// Coefficients `t_{n,m} = [x^n] (x^2 cot x)^m`, each computed from the
/// Stirling double sum and checked against the series expansion.
#[derive(Debug, Clone)]
pub struct TCoeffTable {
    /// `powers[m][n] = [x^n] (x^2 cot x)^m`.
    powers: Vec<Vec<BigRational>>,
    tables: StirlingTables,
}

impl TCoeffTable {
    pub fn new(max_n: usize, max_m: usize) -> Self {
        let base = x2_cot_series(max_n);
        let mut powers = vec![one_series(max_n)];
        for m in 1..=max_m {
            powers.push(mul_trunc(&powers[m - 1], &base));
        }
        TCoeffTable {
            powers,
            tables: StirlingTables::new(max_n),
        }
    }

    /// The series coefficient alone.
    pub fn series_value(&self, n: usize, m: usize) -> BigRational {
        self.powers[m][n].clone()
    }

    pub fn get(&self, n: usize, m: usize) -> Result<BigRational, ClassicalError> {
        if m == 0 || n < m {
            return Err(ClassicalError::Range(format!(
                "t({n},{m}) needs n >= m >= 1"
            )));
        }
        if m >= self.powers.len() || n >= self.powers[m].len() {
            return Err(ClassicalError::Range(format!("t({n},{m}) outside table")));
        }
        let oracle = self.series_value(n, m);
        if t_closed_sum_with(n, m, &self.tables) != oracle {
            return Err(ClassicalError::Mismatch { n, m });
        }
        Ok(oracle)
    }
}

pub fn t_coeff(n: usize, m: usize) -> Result<BigRational, ClassicalError> {
    TCoeffTable::new(n, m).get(n, m)
}

/// Stirling double sum for `t_{n,m}`; zero unless `n - m` is even. The inner
/// index runs over `0 <= k <= n - 2m + l`, the full support of `s_2(n-2m+l, k)`.
pub fn t_closed_sum(n: usize, m: usize) -> BigRational {
    t_closed_sum_with(n, m, &StirlingTables::new(n))
}

/// Signed first-kind and second-kind Stirling rows plus factorials up to a
/// fixed size, shared across many `t_{n,m}` evaluations.
#[derive(Debug, Clone)]
struct StirlingTables {
    first_signed: Vec<Vec<BigInt>>,
    second: Vec<Vec<BigInt>>,
    factorials: Vec<BigInt>,
}

impl StirlingTables {
    fn new(max: usize) -> Self {
        let mut factorials = vec![BigInt::one()];
        for i in 1..=max {
            let next = &factorials[i - 1] * i;
            factorials.push(next);
        }
        StirlingTables {
            first_signed: (0..=max)
                .map(|i| stirling_row(StirlingKind::FirstSigned, i))
                .collect(),
            second: (0..=max)
                .map(|i| stirling_row(StirlingKind::Second, i))
                .collect(),
            factorials,
        }
    }
}

fn t_closed_sum_with(n: usize, m: usize, tables: &StirlingTables) -> BigRational {
    if (n - m) % 2 == 1 {
        return BigRational::zero();
    }
    let fact = &tables.factorials;
    let mut total = BigRational::zero();
    for l in 0..=m {
        let Some(a) = (n + l).checked_sub(2 * m) else {
            continue;
        };
        for k in 0..=a {
            let s1 = &tables.first_signed[l + k][l];
            let s2 = &tables.second[a][k];
            if s1.is_zero() || s2.is_zero() {
                continue;
            }
            let num = (BigInt::one() << l) * &fact[k] * s1 * s2;
            let den = &fact[m - l] * &fact[l + k] * &fact[a];
            total += BigRational::new(num, den);
        }
    }
    let two_pow = if n >= 2 * m {
        BigRational::from_integer(BigInt::one() << (n - 2 * m))
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (2 * m - n))
    };
    let sign = if ((n - m) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    };
    total * two_pow * BigRational::from_integer(&fact[m] * sign)
}

fn one_series(order: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); order + 1];
    v[0] = BigRational::one();
    v
}

fn mul_trunc(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|m| {
            (0..=m)
                .filter(|&k| !a[k].is_zero() && !b[m - k].is_zero())
                .map(|k| &a[k] * &b[m - k])
                .fold(BigRational::zero(), |acc, t| acc + t)
        })
        .collect()
}

/// `x^2 cos x / sin x = x * cos x / (sin x / x)` up to `x^order`.
fn x2_cot_series(order: usize) -> Vec<BigRational> {
    let alternating = |m: usize, offset: usize| {
        if m % 2 == 1 {
            return BigRational::zero();
        }
        let sign = if (m / 2).is_multiple_of(2) { 1 } else { -1 };
        BigRational::new(BigInt::from(sign), factorial(m + offset))
    };
    let cos: Vec<_> = (0..=order).map(|m| alternating(m, 0)).collect();
    let sinc: Vec<_> = (0..=order).map(|m| alternating(m, 1)).collect();
    // reciprocal of sinc (constant term 1)
    let mut inv = vec![BigRational::one()];
    for m in 1..=order {
        let acc = (1..=m)
            .filter(|&k| !sinc[k].is_zero())
            .map(|k| &sinc[k] * &inv[m - k])
            .fold(BigRational::zero(), |acc, t| acc + t);
        inv.push(-acc);
    }
    let cot_x = mul_trunc(&cos, &inv);
    let mut out = vec![BigRational::zero()];
    out.extend(cot_x.into_iter().take(order));
    out
}

/// `C(a, b)` as an `i64`; panics on overflow.
pub fn binomial_i64(a: i64, b: i64) -> i64 {
    use num_traits::ToPrimitive;
    binomial(a, b).to_i64().expect("binomial fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn eulerian_small_rows() {
        assert_eq!(eulerian_poly(0), QPolynomial::one());
        assert_eq!(eulerian_poly(1), QPolynomial::one());
        assert_eq!(eulerian_poly(2), QPolynomial::from_i64s(&[1, 1]));
        assert_eq!(eulerian_poly(3), QPolynomial::from_i64s(&[1, 4, 1]));
    }

    #[test]
    fn eulerian_row_sums_and_symmetry() {
        let t = EulerianTable::new(15);
        for n in 1..=15 {
            let row = t.row(n);
            assert_eq!(row.iter().sum::<BigInt>(), factorial(n));
            for k in 0..n {
                assert_eq!(row[k], row[n - 1 - k]);
            }
        }
    }

    #[test]
    fn eulerian_and_stirling_count_permutations() {
        use crate::perm::{count_stat, iterate_sym, StatKind, Statistic};
        let t = EulerianTable::new(7);
        for n in 1..=7 {
            let mut by_des = vec![BigInt::zero(); n];
            let mut by_cycles = vec![BigInt::zero(); n + 1];
            for p in iterate_sym(n, 10).unwrap() {
                by_des[count_stat(&p, Statistic::plain(StatKind::Des))] += 1;
                by_cycles[p.standard_cycle_form().num_cycles()] += 1;
            }
            assert_eq!(t.row(n), &by_des[..], "n={n}");
            assert_eq!(
                stirling_row(StirlingKind::FirstSignless, n),
                by_cycles,
                "n={n}"
            );
        }
    }

    #[test]
    fn chebyshev_values() {
        assert_eq!(chebyshev_v(-2), SPolynomial::constant(-1));
        assert_eq!(chebyshev_v(-1), SPolynomial::zero());
        assert_eq!(chebyshev_v(0), SPolynomial::one());
        assert_eq!(chebyshev_v(2), SPolynomial::from_i64s(&[-1, 0, 1]));
        assert_eq!(chebyshev_v(4), SPolynomial::from_i64s(&[1, 0, -3, 0, 1]));
    }

    #[test]
    fn chebyshev_parity() {
        let table = chebyshev_v_table(40);
        for n in 0..=40usize {
            let v = &table[n + 2];
            assert_eq!(v.degree(), Some(n));
            for (i, c) in v.coeffs().iter().enumerate() {
                if (i + n) % 2 == 1 {
                    assert!(c.is_zero(), "V_{n} has s^{i}");
                }
            }
        }
    }

    #[test]
    fn chebyshev_closed_form() {
        assert!((chebyshev_closed_eval(2, 0.3).unwrap() + 0.64).abs() < 1e-9);
        assert!((chebyshev_closed_eval(0, 0.77).unwrap() - 1.0).abs() < 1e-12);
        assert!(chebyshev_closed_eval(-1, 0.5).unwrap().abs() < 1e-12);
        assert!((chebyshev_closed_eval(-2, 0.5).unwrap() + 1.0).abs() < 1e-12);
        assert!((chebyshev_closed_eval(3, 1.0).unwrap() - 4.0).abs() < 1e-12);
        assert!((chebyshev_closed_eval(2, 1.5).unwrap() - (4.0 * 2.25 - 1.0)).abs() < 1e-9);
        // a fixed pseudo-random grid of 20 points in (-1, 1)
        let table = chebyshev_v_table(15);
        for i in 0..20 {
            let t = ((i as f64) * 0.618_033_988_75).fract() * 1.98 - 0.99;
            for n in 0..=15i64 {
                let exact = table[(n + 2) as usize].eval_f64(2.0 * t);
                let closed = chebyshev_closed_eval(n, t).unwrap();
                assert!((exact - closed).abs() < 1e-9, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn stirling_numbers() {
        let c3: Vec<_> = (1..=3)
            .map(|k| stirling(StirlingKind::FirstSignless, 3, k))
            .collect();
        assert_eq!(c3, vec![2.into(), 3.into(), 1.into()]);
        assert_eq!(stirling(StirlingKind::Second, 3, 2), 3.into());
        assert_eq!(stirling(StirlingKind::FirstSigned, 3, 1), 2.into());
        assert_eq!(stirling(StirlingKind::FirstSigned, 2, 1), (-1).into());
        for n in 0..=10 {
            assert_eq!(stirling(StirlingKind::FirstSignless, n, n), BigInt::one());
        }
        for n in 0..=12 {
            let row = stirling_row(StirlingKind::FirstSignless, n);
            assert_eq!(row.iter().sum::<BigInt>(), factorial(n));
        }
        assert_eq!(stirling(StirlingKind::Second, 2, 5), BigInt::zero());
    }

    #[test]
    fn t_coefficients() {
        assert_eq!(t_coeff(1, 1).unwrap(), r(1, 1));
        assert_eq!(t_coeff(3, 1).unwrap(), r(-1, 3));
        assert_eq!(t_coeff(2, 2).unwrap(), r(1, 1));
        assert_eq!(t_coeff(2, 1).unwrap(), r(0, 1));
        assert!(matches!(t_coeff(1, 2), Err(ClassicalError::Range(_))));
        let table = TCoeffTable::new(30, 8);
        for m in 1..=8 {
            for n in m..=30 {
                table.get(n, m).unwrap();
            }
        }
    }

    #[test]
    fn compositions_enumerate_exactly_once() {
        let v: Vec<_> = weak_compositions(2, 2).collect();
        assert_eq!(v, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(
            weak_compositions(0, 3).collect::<Vec<_>>(),
            vec![vec![0, 0, 0]]
        );
        assert_eq!(weak_compositions(5, 3).count(), 21);
        assert_eq!(weak_compositions(4, 1).collect::<Vec<_>>(), vec![vec![4]]);
        let all: std::collections::HashSet<_> = weak_compositions(6, 4).collect();
        assert_eq!(all.len(), binomial_i64(9, 3) as usize);
        assert!(all.iter().all(|c| c.iter().sum::<usize>() == 6));
        assert_eq!(compositions(4, 2).count(), 3);
        assert_eq!(compositions(1, 2).count(), 0);
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial_i64(3, 1), 3);
        assert_eq!(binomial_i64(1, -1), 0);
        assert_eq!(binomial_i64(-2, 0), 0);
        assert_eq!(binomial_i64(2, 3), 0);
        assert_eq!(binomial_i64(0, 0), 1);
    }
}
