use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{KernelError, Rational};

/// Truncated power series `c_0 + c_1 z + ... + c_K z^K` with exact rational
/// coefficients. Products drop every term of order above `K`.
///
/// The operator impls panic on mismatched truncation orders; the `checked_*`
/// methods report the mismatch instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZSeries {
    coeffs: Vec<Rational>,
}

/// The formal functions of `z` that appear in the deformed relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesFunction {
    Exp,
    Sinh,
    Cosh,
    /// `sinh(a z) / z`
    SinhOverZ,
}

impl SeriesFunction {
    pub fn from_name(name: &str) -> Result<Self, KernelError> {
        match name {
            "exp" => Ok(Self::Exp),
            "sinh" => Ok(Self::Sinh),
            "cosh" => Ok(Self::Cosh),
            "sinh_over_z" | "sinhz" => Ok(Self::SinhOverZ),
            other => Err(KernelError::UnknownFunction(other.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Exp => "exp",
            Self::Sinh => "sinh",
            Self::Cosh => "cosh",
            Self::SinhOverZ => "sinhz",
        }
    }

    /// Power of the argument that accompanies `z^k` in the expansion:
    /// `f(a z X) = sum_k c_k z^k X^(k + shift)`.
    pub fn power_shift(self) -> usize {
        match self {
            Self::SinhOverZ => 1,
            _ => 0,
        }
    }

    /// Taylor coefficients of the function of `scale * z` up to `z^order`.
    pub fn taylor(self, scale: &Rational, order: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(order + 1);
        let mut fact = BigInt::one();
        let mut power = Rational::one();
        // n-th term of exp(scale z): scale^n / n!
        let mut exp_terms = Vec::with_capacity(order + 2);
        for n in 0..=order + 1 {
            if n > 0 {
                fact *= BigInt::from(n);
                power = &power * scale;
            }
            exp_terms.push(&power / Rational::from_integer(fact.clone()));
        }
        for k in 0..=order {
            let c = match self {
                Self::Exp => exp_terms[k].clone(),
                Self::Sinh if k % 2 == 1 => exp_terms[k].clone(),
                Self::Cosh if k % 2 == 0 => exp_terms[k].clone(),
                Self::SinhOverZ if k % 2 == 0 => exp_terms[k + 1].clone(),
                _ => Rational::zero(),
            };
            out.push(c);
        }
        out
    }
}

impl ZSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_integer(n: i64, order: usize) -> Self {
        Self::constant(Rational::from_integer(n.into()), order)
    }

    /// `c z^power`, or zero when `power` exceeds the truncation order.
    pub fn monomial(c: Rational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// The series variable itself.
    pub fn z(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    /// Builds a series from its leading coefficients; missing orders are zero
    /// and coefficients beyond `order` are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn expand_function(
        name: &str,
        scale: &Rational,
        order: usize,
    ) -> Result<Self, KernelError> {
        let f = SeriesFunction::from_name(name)?;
        Ok(Self::expand(f, scale, order))
    }

    pub fn expand(f: SeriesFunction, scale: &Rational, order: usize) -> Self {
        Self { coeffs: f.taylor(scale, order) }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Lowest order with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Same series viewed at a different truncation order (padding with zeros
    /// when raising the order).
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    /// Multiplies by `z^k`, dropping what falls beyond the truncation order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        let mut out = Self::zero(n - 1);
        for i in 0..n.saturating_sub(k) {
            out.coeffs[i + k] = self.coeffs[i].clone();
        }
        out
    }

    /// Divides by `z^k`; `None` when a coefficient below order `k` is nonzero.
    /// The top `k` orders become unknown and are returned as zero.
    pub fn unshift(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        let n = self.coeffs.len();
        let mut out = Self::zero(n - 1);
        for i in k..n {
            out.coeffs[i - k] = self.coeffs[i].clone();
        }
        Some(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order());
        }
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, KernelError> {
        self.check(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, KernelError> {
        self.check(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, KernelError> {
        self.check(other)?;
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    /// In-place `self += other * factor`.
    pub fn add_scaled(&mut self, other: &Self, factor: &Self) {
        assert_eq!(self.order(), other.order(), "truncation order mismatch");
        let n = self.coeffs.len();
        for (i, a) in other.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in factor.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    self.coeffs[i + j] += a * b;
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.order(), other.order(), "truncation order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let n = self.coeffs.len();
        let inv0 = c0.recip();
        let mut out = vec![Rational::zero(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -(acc * &inv0);
        }
        Some(Self { coeffs: out })
    }

    /// Integer power; negative exponents need an invertible series.
    pub fn powi(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one(self.order());
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Some(out)
    }

    fn check(&self, other: &Self) -> Result<(), KernelError> {
        if self.order() != other.order() {
            return Err(KernelError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }
}

impl Add for &ZSeries {
    type Output = ZSeries;
    fn add(self, rhs: &ZSeries) -> ZSeries {
        self.checked_add(rhs).expect("truncation order mismatch")
    }
}

impl Sub for &ZSeries {
    type Output = ZSeries;
    fn sub(self, rhs: &ZSeries) -> ZSeries {
        self.checked_sub(rhs).expect("truncation order mismatch")
    }
}

impl Mul for &ZSeries {
    type Output = ZSeries;
    fn mul(self, rhs: &ZSeries) -> ZSeries {
        self.checked_mul(rhs).expect("truncation order mismatch")
    }
}

impl Neg for &ZSeries {
    type Output = ZSeries;
    fn neg(self) -> ZSeries {
        ZSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for ZSeries {
    type Output = ZSeries;
    fn neg(self) -> ZSeries {
        -&self
    }
}

impl fmt::Display for ZSeries {
    /// Prints `1 - z^2/6 + 3 z^4`; a single nonzero term is printed bare.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let zpart = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{zpart}")?;
            } else if mag.denom().is_one() {
                write!(f, "{} {zpart}", mag.numer())?;
            } else if mag.numer().is_one() {
                write!(f, "{zpart}/{}", mag.denom())?;
            } else {
                write!(f, "{} {zpart}/{}", mag.numer(), mag.denom())?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ZSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZSeries[K={}]({self})", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn polynomial_identity() {
        let k = 2;
        let a = &ZSeries::one(k) + &ZSeries::z(k);
        let b = &ZSeries::one(k) - &ZSeries::z(k);
        let expected = ZSeries::from_coeffs(vec![q(1, 1), q(0, 1), q(-1, 1)], k);
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn hyperbolic_identity() {
        let k = 6;
        let one = q(1, 1);
        let c = ZSeries::expand(SeriesFunction::Cosh, &one, k);
        let s = ZSeries::expand(SeriesFunction::Sinh, &one, k);
        assert!((&(&c * &c) - &(&s * &s)).is_one());
    }

    #[test]
    fn inverse_exponentials() {
        let k = 6;
        let e = ZSeries::expand_function("exp", &q(3, 1), k).unwrap();
        let f = ZSeries::expand_function("exp", &q(-3, 1), k).unwrap();
        assert!((&e * &f).is_one());
    }

    #[test]
    fn named_expansions() {
        let s = ZSeries::expand_function("sinh_over_z", &q(1, 1), 4).unwrap();
        assert_eq!(s, ZSeries::from_coeffs(vec![q(1, 1), q(0, 1), q(1, 6), q(0, 1), q(1, 120)], 4));
        let c = ZSeries::expand_function("cosh", &q(1, 1), 2).unwrap();
        assert_eq!(c, ZSeries::from_coeffs(vec![q(1, 1), q(0, 1), q(1, 2)], 2));
        let e = ZSeries::expand_function("exp", &q(3, 1), 1).unwrap();
        assert_eq!(e, ZSeries::from_coeffs(vec![q(1, 1), q(3, 1)], 1));
        assert_eq!(
            ZSeries::expand_function("tan", &q(1, 1), 2),
            Err(KernelError::UnknownFunction("tan".into()))
        );
    }

    #[test]
    fn sinh_over_z_times_z_is_sinh() {
        for scale in [q(1, 1), q(-2, 3), q(5, 2)] {
            let k = 8;
            let sz = ZSeries::expand(SeriesFunction::SinhOverZ, &scale, k);
            let s = ZSeries::expand(SeriesFunction::Sinh, &scale, k);
            assert_eq!(sz.shift(1), s);
        }
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let a = ZSeries::one(2);
        let b = ZSeries::one(3);
        assert_eq!(a.checked_mul(&b), Err(KernelError::OrderMismatch(2, 3)));
        assert_eq!(a.checked_add(&b), Err(KernelError::OrderMismatch(2, 3)));
    }

    #[test]
    fn display() {
        let s = ZSeries::expand(SeriesFunction::SinhOverZ, &q(1, 1), 4);
        assert_eq!(s.to_string(), "1 + z^2/6 + z^4/120");
        assert_eq!((-&ZSeries::z(3)).to_string(), "-z");
        assert_eq!(ZSeries::zero(3).to_string(), "0");
    }

    #[test]
    fn inverse_and_powers() {
        let c = ZSeries::expand(SeriesFunction::Cosh, &q(1, 1), 6);
        assert!((&c * &c.inverse().unwrap()).is_one());
        assert_eq!(c.powi(2).unwrap(), &c * &c);
        assert!(ZSeries::z(4).inverse().is_none());
    }

    fn arb_series(k: usize) -> impl Strategy<Value = ZSeries> {
        proptest::collection::vec((-20i64..20, 1i64..7), k + 1)
            .prop_map(move |v| ZSeries::from_coeffs(v.into_iter().map(|(n, d)| q(n, d)).collect(), k))
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in (0usize..=8).prop_flat_map(|k| (arb_series(k), arb_series(k), arb_series(k)))) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a);
        }
    }
}
