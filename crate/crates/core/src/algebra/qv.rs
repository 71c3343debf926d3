use std::fmt;
use std::ops::{Add, Mul};

use super::QPolynomial;

/// Polynomial in `q` and `v`, stored by powers of `v`: `rows[t]` is the
/// coefficient of `v^t`, itself a polynomial in `q`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QVPolynomial {
    rows: Vec<QPolynomial>,
}

impl QVPolynomial {
    pub fn new(mut rows: Vec<QPolynomial>) -> Self {
        while rows.last().is_some_and(QPolynomial::is_zero) {
            rows.pop();
        }
        QVPolynomial { rows }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_q(p: QPolynomial) -> Self {
        Self::new(vec![p])
    }

    pub fn rows(&self) -> &[QPolynomial] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Coefficient of `q^i v^j`.
    pub fn coeff(&self, i: usize, j: usize) -> num_bigint::BigInt {
        self.rows.get(j).map(|r| r.coeff(i)).unwrap_or_default()
    }

    pub fn v_degree(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    /// Multiplies by `v^k`.
    pub fn mul_v_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![QPolynomial::zero(); k];
        rows.extend(self.rows.iter().cloned());
        Self::new(rows)
    }

    pub fn mul_v(&self) -> Self {
        self.mul_v_pow(1)
    }

    pub fn scale_q(&self, p: &QPolynomial) -> Self {
        Self::new(self.rows.iter().map(|r| r * p).collect())
    }

    pub fn eval_v_one(&self) -> QPolynomial {
        self.rows.iter().cloned().sum()
    }

    /// `1 + v + ... + v^(m-1)`, i.e. `(1 - v^m) / (1 - v)`.
    pub fn geometric(m: usize) -> Self {
        Self::new(vec![QPolynomial::one(); m])
    }
}

impl Add for &QVPolynomial {
    type Output = QVPolynomial;
    fn add(self, rhs: Self) -> QVPolynomial {
        let n = self.rows.len().max(rhs.rows.len());
        QVPolynomial::new(
            (0..n)
                .map(|i| match (self.rows.get(i), rhs.rows.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Mul for &QVPolynomial {
    type Output = QVPolynomial;
    fn mul(self, rhs: Self) -> QVPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QVPolynomial::zero();
        }
        let mut rows = vec![QPolynomial::zero(); self.rows.len() + rhs.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in rhs.rows.iter().enumerate() {
                rows[i + j] += &(a * b);
            }
        }
        QVPolynomial::new(rows)
    }
}

impl fmt::Debug for QVPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(j, r)| format!("({r})*v^{j}"))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}
