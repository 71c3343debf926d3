use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::AlgebraError;

/// Marker for the indeterminate of a [`DensePoly`].
pub trait Variable: Copy + Default + fmt::Debug + Eq + Hash + Send + Sync + 'static {
    const NAME: &'static str;
}

/// The indeterminate `q`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Q;

/// The formal square root `s` of `theta = 1 - q`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct S;

impl Variable for Q {
    const NAME: &'static str = "q";
}

impl Variable for S {
    const NAME: &'static str = "s";
}

/// Dense univariate polynomial with arbitrary-precision integer
/// coefficients; index `i` holds the coefficient of `var^i`. Trailing zeros
/// are never stored, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DensePoly<V: Variable> {
    coeffs: Vec<BigInt>,
    _var: PhantomData<V>,
}

pub type QPolynomial = DensePoly<Q>;
pub type SPolynomial = DensePoly<S>;

impl<V: Variable> DensePoly<V> {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        DensePoly {
            coeffs,
            _var: PhantomData,
        }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn monomial(c: impl Into<BigInt>, power: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); power + 1];
        coeffs[power] = c.into();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including 0).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&BigInt::from(c))
    }

    /// Multiplies by `var^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Exact division by the indeterminate.
    pub fn div_var(&self) -> Result<Self, AlgebraError> {
        match self.coeffs.first() {
            None => Ok(Self::zero()),
            Some(c0) if !c0.is_zero() => Err(AlgebraError::NotDivisible),
            Some(_) => Ok(Self::new(self.coeffs[1..].to_vec())),
        }
    }

    /// Multiplies by `var^e`; negative `e` divides exactly.
    pub fn shift(&self, e: i64) -> Result<Self, AlgebraError> {
        if e >= 0 {
            return Ok(self.shift_up(e as usize));
        }
        let k = e.unsigned_abs() as usize;
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(AlgebraError::NotDivisible);
        }
        Ok(Self::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `var^d * p(1/var)`; requires `deg p <= d`.
    pub fn reversed(&self, d: usize) -> Self {
        assert!(
            self.degree().is_none_or(|deg| deg <= d),
            "reversal degree below polynomial degree"
        );
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[d - i] = c.clone();
        }
        Self::new(coeffs)
    }

    /// Exact quotient `self / divisor` in the integer polynomial ring.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() {
                Ok(Self::zero())
            } else {
                Err(AlgebraError::NotDivisible)
            };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(AlgebraError::NotDivisible);
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &qc * d;
            }
            quot[i] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(AlgebraError::NotDivisible);
        }
        Ok(Self::new(quot))
    }

    /// Sum of coefficients, i.e. the value at 1.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| acc * x + to_f64(c))
    }

    /// Human-readable form such as `4 + 2*q`.
    pub fn to_human(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let monomial = match i {
                0 => String::new(),
                1 => V::NAME.to_string(),
                _ => format!("{}^{}", V::NAME, i),
            };
            if i == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&monomial);
            } else {
                out.push_str(&format!("{mag}*{monomial}"));
            }
        }
        out
    }
}

pub(crate) fn to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl QPolynomial {
    pub fn q() -> Self {
        Self::var()
    }

    /// `theta = 1 - q`.
    pub fn theta() -> Self {
        Self::from_i64s(&[1, -1])
    }

    /// Reads `self` as a polynomial in theta and rewrites it in q.
    pub fn substitute_theta(&self) -> QPolynomial {
        let theta = Self::theta();
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &theta) + &Self::constant(c.clone())
        })
    }

    /// Value of `d/dq` at `q = 1`.
    pub fn derivative_at_one(&self) -> BigInt {
        self.derivative().eval_one()
    }
}

impl SPolynomial {
    /// Maps `s^(2k)` to `theta^k`, expressed in q. Fails if any odd power of
    /// `s` survives.
    pub fn reduce_even(&self) -> Result<QPolynomial, AlgebraError> {
        if let Some((i, _)) = self
            .coeffs
            .iter()
            .enumerate()
            .find(|(i, c)| i % 2 == 1 && !c.is_zero())
        {
            return Err(AlgebraError::OddPowerResidue(i));
        }
        let in_theta = QPolynomial::new(self.coeffs.iter().step_by(2).cloned().collect());
        Ok(in_theta.substitute_theta())
    }
}

impl<V: Variable> fmt::Debug for DensePoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_human())
    }
}

impl<V: Variable> fmt::Display for DensePoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_human())
    }
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], sign: i8) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                None => x,
                Some(y) if sign > 0 => x + y,
                Some(y) => x - y,
            }
        })
        .collect()
}

impl<V: Variable> Add for &DensePoly<V> {
    type Output = DensePoly<V>;
    fn add(self, rhs: Self) -> DensePoly<V> {
        DensePoly::new(add_coeffs(&self.coeffs, &rhs.coeffs, 1))
    }
}

impl<V: Variable> Sub for &DensePoly<V> {
    type Output = DensePoly<V>;
    fn sub(self, rhs: Self) -> DensePoly<V> {
        DensePoly::new(add_coeffs(&self.coeffs, &rhs.coeffs, -1))
    }
}

impl<V: Variable> Mul for &DensePoly<V> {
    type Output = DensePoly<V>;
    fn mul(self, rhs: Self) -> DensePoly<V> {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DensePoly::new(out)
    }
}

impl<V: Variable> Neg for &DensePoly<V> {
    type Output = DensePoly<V>;
    fn neg(self) -> DensePoly<V> {
        DensePoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<V: Variable> $tr for DensePoly<V> {
            type Output = DensePoly<V>;
            fn $m(self, rhs: Self) -> DensePoly<V> {
                (&self).$m(&rhs)
            }
        }
        impl<V: Variable> $tr<&DensePoly<V>> for DensePoly<V> {
            type Output = DensePoly<V>;
            fn $m(self, rhs: &DensePoly<V>) -> DensePoly<V> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<V: Variable> Neg for DensePoly<V> {
    type Output = DensePoly<V>;
    fn neg(self) -> DensePoly<V> {
        -&self
    }
}

impl<V: Variable> AddAssign<&DensePoly<V>> for DensePoly<V> {
    fn add_assign(&mut self, rhs: &DensePoly<V>) {
        *self = &*self + rhs;
    }
}

impl<V: Variable> SubAssign<&DensePoly<V>> for DensePoly<V> {
    fn sub_assign(&mut self, rhs: &DensePoly<V>) {
        *self = &*self - rhs;
    }
}

impl<V: Variable> std::iter::Sum for DensePoly<V> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| &acc + &p)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    var: String,
    coeffs: Vec<String>,
}

impl<V: Variable> Serialize for DensePoly<V> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        PolyJson {
            var: V::NAME.to_string(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, V: Variable> Deserialize<'de> for DensePoly<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(deserializer)?;
        if raw.var != V::NAME {
            return Err(D::Error::custom(format!(
                "expected variable {:?}, found {:?}",
                V::NAME,
                raw.var
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qp(c: &[i64]) -> QPolynomial {
        QPolynomial::from_i64s(c)
    }

    #[test]
    fn basic_ring_operations() {
        assert_eq!(&qp(&[1, 1]) * &qp(&[1, 1]), qp(&[1, 2, 1]));
        assert_eq!(qp(&[4, 2]).derivative(), qp(&[2]));
        assert_eq!(qp(&[0, 0, 1]).substitute_theta(), qp(&[1, -2, 1]));
        assert_eq!(&qp(&[1, 2]) - &qp(&[1, 2]), QPolynomial::zero());
        assert!(QPolynomial::zero().coeffs().is_empty());
        assert_eq!(qp(&[3, 0, 0]).degree(), Some(0));
    }

    #[test]
    fn division_by_q() {
        assert_eq!(qp(&[0, 4, 2]).div_var().unwrap(), qp(&[4, 2]));
        assert_eq!(qp(&[0, 1]).div_var().unwrap(), qp(&[1]));
        assert_eq!(qp(&[1, 1]).div_var(), Err(AlgebraError::NotDivisible));
        assert_eq!(qp(&[0, 0, 5]).shift(-2).unwrap(), qp(&[5]));
        assert_eq!(qp(&[0, 1]).shift(-2), Err(AlgebraError::NotDivisible));
    }

    #[test]
    fn exact_division() {
        let t = QPolynomial::theta();
        let p = &qp(&[2, 7, -3]) * &t;
        assert_eq!(p.div_exact(&t).unwrap(), qp(&[2, 7, -3]));
        assert_eq!(qp(&[1, 1]).div_exact(&t), Err(AlgebraError::NotDivisible));
        assert_eq!(
            qp(&[1]).div_exact(&qp(&[2])),
            Err(AlgebraError::NotDivisible)
        );
        assert_eq!(
            qp(&[1]).div_exact(&QPolynomial::zero()),
            Err(AlgebraError::DivisionByZero)
        );
    }

    #[test]
    fn s_reduction() {
        assert_eq!(
            SPolynomial::from_i64s(&[0, 0, 1]).reduce_even().unwrap(),
            qp(&[1, -1])
        );
        let a = SPolynomial::from_i64s(&[3, 3]);
        let b = SPolynomial::from_i64s(&[3, -3]);
        assert_eq!((&a + &b).reduce_even().unwrap(), qp(&[6]));
        assert_eq!(
            SPolynomial::from_i64s(&[0, 1]).reduce_even(),
            Err(AlgebraError::OddPowerResidue(1))
        );
    }

    #[test]
    fn evaluation_and_reversal() {
        let p = qp(&[4, 2]);
        assert_eq!(p.eval_f64(0.5), 5.0);
        assert_eq!(p.eval_one(), BigInt::from(6));
        assert_eq!(p.reversed(2), qp(&[0, 2, 4]));
        let r = p.eval_rational(&BigRational::new(1.into(), 3.into()));
        assert_eq!(r, BigRational::new(14.into(), 3.into()));
        let z = p.eval_complex(Complex64::new(0.0, 1.0));
        assert_eq!(z, Complex64::new(4.0, 2.0));
    }

    #[test]
    fn human_rendering() {
        assert_eq!(qp(&[4, 2]).to_human(), "4 + 2*q");
        assert_eq!(qp(&[0, 2]).to_human(), "2*q");
        assert_eq!(qp(&[1, -2, 1]).to_human(), "1 - 2*q + q^2");
        assert_eq!(qp(&[0, -1]).to_human(), "-q");
        assert_eq!(QPolynomial::zero().to_human(), "0");
        assert_eq!(SPolynomial::from_i64s(&[1, 0, -3]).to_human(), "1 - 3*s^2");
    }

    #[test]
    fn json_schema() {
        let p = qp(&[4, 2]);
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"{"var":"q","coeffs":["4","2"]}"#);
        let back: QPolynomial = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
        let zero = serde_json::to_string(&QPolynomial::zero()).unwrap();
        assert_eq!(zero, r#"{"var":"q","coeffs":[]}"#);
        assert!(serde_json::from_str::<QPolynomial>(r#"{"var":"s","coeffs":["1"]}"#).is_err());
        let big: QPolynomial =
            serde_json::from_str(r#"{"var":"q","coeffs":["123456789012345678901234567890","0"]}"#)
                .unwrap();
        assert_eq!(big.degree(), Some(0));
    }

    fn arb_poly() -> impl Strategy<Value = QPolynomial> {
        prop::collection::vec(-1000i64..=1000, 0..=21).prop_map(|c| QPolynomial::from_i64s(&c))
    }

    fn arb_spoly() -> impl Strategy<Value = SPolynomial> {
        prop::collection::vec(-1000i64..=1000, 0..=21).prop_map(|c| SPolynomial::from_i64s(&c))
    }

    /// Keeps only the powers of the given parity.
    fn parity_part(p: &SPolynomial, parity: usize) -> SPolynomial {
        SPolynomial::new(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if i % 2 == parity {
                        c.clone()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect(),
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn substitute_theta_is_a_homomorphism(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a * &b).substitute_theta(), &a.substitute_theta() * &b.substitute_theta());
            prop_assert_eq!((&a + &b).substitute_theta(), &a.substitute_theta() + &b.substitute_theta());
        }

        #[test]
        fn reduce_even_is_multiplicative(a in arb_spoly(), b in arb_spoly()) {
            let (ae, be) = (parity_part(&a, 0), parity_part(&b, 0));
            prop_assert_eq!(
                (&ae * &be).reduce_even().unwrap(),
                &ae.reduce_even().unwrap() * &be.reduce_even().unwrap()
            );
            let (ao, bo) = (parity_part(&a, 1), parity_part(&b, 1));
            prop_assert!((&ao * &bo).reduce_even().is_ok());
        }

        #[test]
        fn json_round_trip(a in arb_poly()) {
            let j = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<QPolynomial>(&j).unwrap(), a);
        }
    }
}
