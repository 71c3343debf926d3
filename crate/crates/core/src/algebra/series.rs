//! Truncated power series in `x` whose coefficients are rational multiples
//! of polynomials in `q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::to_f64;
use super::{factorial, AlgebraError, QPolynomial};

/// `num / den` with `den > 0` and the content of `num` coprime to `den`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    num: QPolynomial,
    den: BigInt,
}

impl RatPoly {
    pub fn new(num: QPolynomial, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatPoly {
                num,
                den: BigInt::one(),
            };
        }
        let mut g = num.coeffs().iter().fold(den.clone(), |g, c| g.gcd(c));
        if den.is_negative() {
            g = -g;
        }
        if g.is_one() {
            return RatPoly { num, den };
        }
        RatPoly {
            num: QPolynomial::new(num.coeffs().iter().map(|c| c / &g).collect()),
            den: den / g,
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(QPolynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(QPolynomial::one())
    }

    pub fn from_poly(p: QPolynomial) -> Self {
        RatPoly {
            num: p,
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::new(QPolynomial::constant(r.numer().clone()), r.denom().clone())
    }

    pub fn numer(&self) -> &QPolynomial {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Some value when this is a constant (in q).
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num
            .as_constant()
            .map(|c| BigRational::new(c, self.den.clone()))
    }

    /// Some polynomial when the denominator is 1.
    pub fn as_poly(&self) -> Option<&QPolynomial> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }

    pub fn div_int(&self, c: &BigInt) -> Self {
        Self::new(self.num.clone(), &self.den * c)
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.num.eval_f64(q) / to_f64(&self.den)
    }

    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        self.num.eval_rational(q) / BigRational::from_integer(self.den.clone())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: Self) -> RatPoly {
        let l = self.den.lcm(&rhs.den);
        let a = self.num.scale(&(&l / &self.den));
        let b = rhs.num.scale(&(&l / &rhs.den));
        RatPoly::new(&a + &b, l)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: Self) -> RatPoly {
        self + &(-rhs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: Self) -> RatPoly {
        RatPoly::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `sum_{m <= order} terms[m] * x^m`.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    terms: Vec<RatPoly>,
}

impl QSeries {
    /// The order is `terms.len() - 1`; at least one term is required.
    pub fn new(terms: Vec<RatPoly>) -> Self {
        assert!(!terms.is_empty(), "a series needs at least the x^0 term");
        QSeries { terms }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![RatPoly::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(RatPoly::one(), order)
    }

    pub fn constant(c: RatPoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.terms[0] = c;
        s
    }

    /// `x` truncated at `order`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.terms[1] = RatPoly::one();
        }
        s
    }

    /// Builds `sum_m polys[m] x^m / m!`, truncated at `order`; missing
    /// terms are zero.
    pub fn from_egf(polys: &[QPolynomial], order: usize) -> Self {
        Self::new(
            (0..=order)
                .map(|m| match polys.get(m) {
                    Some(p) => RatPoly::new(p.clone(), factorial(m)),
                    None => RatPoly::zero(),
                })
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[RatPoly] {
        &self.terms
    }

    pub fn coeff(&self, m: usize) -> &RatPoly {
        &self.terms[m]
    }

    /// `m! [x^m]`.
    pub fn egf_coeff(&self, m: usize) -> RatPoly {
        self.terms[m].scale_int(&factorial(m))
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Self::new(self.terms[..=order].to_vec())
    }

    pub fn scale(&self, c: &RatPoly) -> Self {
        Self::new(self.terms.iter().map(|t| t * c).collect())
    }

    /// Divides every coefficient exactly by a polynomial.
    pub fn div_poly_exact(&self, p: &QPolynomial) -> Result<Self, AlgebraError> {
        self.terms
            .iter()
            .map(|t| Ok(RatPoly::new(t.numer().div_exact(p)?, t.denom().clone())))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn reciprocal(&self) -> Result<Self, AlgebraError> {
        let c0 = self.terms[0]
            .as_rational()
            .filter(|r| !r.is_zero())
            .ok_or(AlgebraError::NotInvertible)?;
        let inv0 = RatPoly::from_rational(&c0.recip());
        let mut out: Vec<RatPoly> = Vec::with_capacity(self.terms.len());
        out.push(inv0.clone());
        for m in 1..self.terms.len() {
            let mut acc = RatPoly::zero();
            for k in 1..=m {
                if self.terms[k].is_zero() || out[m - k].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.terms[k] * &out[m - k]);
            }
            out.push(-&(&acc * &inv0));
        }
        Ok(Self::new(out))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.order()), |acc, _| &acc * self)
    }

    /// Formal `d/dx`; the order drops by one (stays 0 for constants).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::new(
            (1..self.terms.len())
                .map(|m| self.terms[m].scale_int(&BigInt::from(m)))
                .collect(),
        )
    }

    /// Formal integral with zero constant term; the order grows by one.
    pub fn integral(&self) -> Self {
        let mut terms = vec![RatPoly::zero()];
        terms.extend(
            self.terms
                .iter()
                .enumerate()
                .map(|(m, t)| t.div_int(&BigInt::from(m + 1))),
        );
        Self::new(terms)
    }

    pub fn eval_f64(&self, x: f64, q: f64) -> f64 {
        self.terms
            .iter()
            .rev()
            .fold(0.0, |acc, t| acc * x + t.eval_f64(q))
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: Self) -> QSeries {
        let n = self.order().min(rhs.order());
        QSeries::new((0..=n).map(|m| &self.terms[m] + &rhs.terms[m]).collect())
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: Self) -> QSeries {
        let n = self.order().min(rhs.order());
        QSeries::new((0..=n).map(|m| &self.terms[m] - &rhs.terms[m]).collect())
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::new(self.terms.iter().map(|t| -t).collect())
    }
}

/// Truncated at the smaller of the two orders.
impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: Self) -> QSeries {
        let n = self.order().min(rhs.order());
        QSeries::new(
            (0..=n)
                .map(|m| {
                    (0..=m).fold(RatPoly::zero(), |acc, k| {
                        let (a, b) = (&self.terms[k], &rhs.terms[m - k]);
                        if a.is_zero() || b.is_zero() {
                            acc
                        } else {
                            &acc + &(a * b)
                        }
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .map(|(m, t)| format!("[{t}]x^{m}"))
            .collect();
        write!(f, "{} + O(x^{})", parts.join(" + "), self.order() + 1)
    }
}

/// `exp((q-1)x)`: coefficient of `x^n` is `(q-1)^n / n!`.
pub fn exp_q_minus_one(order: usize) -> QSeries {
    let qm1 = QPolynomial::from_i64s(&[-1, 1]);
    let polys: Vec<_> = (0..=order).map(|n| qm1.pow(n as u32)).collect();
    QSeries::from_egf(&polys, order)
}

/// `A(x,q) = (1-q) / (e^{(q-1)x} - q)`, the Eulerian-polynomial EGF.
///
/// The denominator divided by `1-q` is `1 - sum_{n>=1} (q-1)^{n-1} x^n/n!`,
/// which has unit constant term, so the reciprocal is taken of that.
pub fn eulerian_egf(order: usize) -> QSeries {
    let qm1 = QPolynomial::from_i64s(&[-1, 1]);
    let mut polys = vec![QPolynomial::one()];
    polys.extend((1..=order).map(|n| -&qm1.pow(n as u32 - 1)));
    QSeries::from_egf(&polys, order)
        .reciprocal()
        .expect("unit constant term")
}

/// `cosh(s x) = sum theta^k x^{2k} / (2k)!`.
pub fn cosh_s(order: usize) -> QSeries {
    even_odd_series(order, |m| {
        (m % 2 == 0).then(|| QPolynomial::theta().pow((m / 2) as u32))
    })
}

/// `sinh(s x) / s = sum theta^k x^{2k+1} / (2k+1)!`.
pub fn sinh_s_over_s(order: usize) -> QSeries {
    even_odd_series(order, |m| {
        (m % 2 == 1).then(|| QPolynomial::theta().pow((m / 2) as u32))
    })
}

/// `theta * cosh(2 s x)`.
pub fn theta_cosh_2s(order: usize) -> QSeries {
    let theta = QPolynomial::theta();
    even_odd_series(order, |m| {
        (m % 2 == 0).then(|| {
            let k = (m / 2) as u32;
            (&theta * &theta.pow(k)).scale(&BigInt::from(4).pow(k))
        })
    })
}

/// `s * sinh(2 s x)`.
pub fn s_sinh_2s(order: usize) -> QSeries {
    let theta = QPolynomial::theta();
    even_odd_series(order, |m| {
        (m % 2 == 1).then(|| {
            let k = (m / 2) as u32;
            theta.pow(k + 1).scale(&BigInt::from(2).pow(2 * k + 1))
        })
    })
}

fn even_odd_series(order: usize, f: impl Fn(usize) -> Option<QPolynomial>) -> QSeries {
    let polys: Vec<_> = (0..=order)
        .map(|m| f(m).unwrap_or_else(QPolynomial::zero))
        .collect();
    QSeries::from_egf(&polys, order)
}
