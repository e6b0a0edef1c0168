use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{PolynomialQ, RationalFunctionQ};
use crate::{Error, Rational, Result};

/// Power series in `q` truncated at `O(q^order)`.
///
/// Binary operations truncate to the smaller of the two orders.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PowerSeriesQ {
    coeffs: Vec<Rational>,
}

impl PowerSeriesQ {
    /// Series whose order is `coeffs.len()`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| crate::rat(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Rational::zero(); order])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = Rational::one();
        }
        s
    }

    pub fn from_poly(p: &PolynomialQ, order: usize) -> Self {
        Self::new((0..order).map(|i| p.coeff(i)).collect())
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self::new((0..order).map(f).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..order.min(self.order())].to_vec())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplication by `q^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        Self::from_fn(n, |i| if i >= k { self.coeffs[i - k].clone() } else { Rational::zero() })
    }

    /// `q·d/dq`
    pub fn theta(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    /// Substitution `q ↦ q^d`, same order.
    pub fn compose_monomial(&self, d: usize) -> Self {
        assert!(d >= 1, "compose_monomial needs d >= 1");
        let mut out = Self::zero(self.order());
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = i * d;
            if j >= out.order() {
                break;
            }
            out.coeffs[j] = c.clone();
        }
        out
    }

    /// In-place multiplication by `1 − q^j`, `j ≥ 1`.
    pub fn mul_one_minus_q_pow(&mut self, j: usize) {
        for i in (j..self.order()).rev() {
            let t = self.coeffs[i - j].clone();
            self.coeffs[i] -= t;
        }
    }

    /// In-place division by `1 − q^j`, `j ≥ 1`.
    pub fn div_one_minus_q_pow(&mut self, j: usize) {
        for i in j..self.order() {
            let t = self.coeffs[i - j].clone();
            self.coeffs[i] += t;
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    acc += a * &out[k - i];
                }
            }
            out.push(-(acc * &inv0));
        }
        Ok(Self::new(out))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// `q·f′/f` for `f(0) ≠ 0`.
    pub fn log_derivative(&self) -> Result<Self> {
        self.theta().div(self)
    }

    /// Truncated polynomial with the stored coefficients.
    pub fn to_polynomial(&self) -> PolynomialQ {
        PolynomialQ::new(self.coeffs.clone())
    }
}

impl RationalFunctionQ {
    /// Maclaurin expansion to `O(q^order)`.
    pub fn expand(&self, order: usize) -> Result<PowerSeriesQ> {
        if self.den().coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let num = PowerSeriesQ::from_poly(self.num(), order);
        let den = PowerSeriesQ::from_poly(self.den(), order);
        num.div(&den)
    }
}

impl<'a> Add<&'a PowerSeriesQ> for &'a PowerSeriesQ {
    type Output = PowerSeriesQ;
    fn add(self, rhs: &'a PowerSeriesQ) -> PowerSeriesQ {
        PowerSeriesQ::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a PowerSeriesQ> for &'a PowerSeriesQ {
    type Output = PowerSeriesQ;
    fn sub(self, rhs: &'a PowerSeriesQ) -> PowerSeriesQ {
        PowerSeriesQ::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl<'a> Mul<&'a PowerSeriesQ> for &'a PowerSeriesQ {
    type Output = PowerSeriesQ;
    fn mul(self, rhs: &'a PowerSeriesQ) -> PowerSeriesQ {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeriesQ::new(out)
    }
}

impl Neg for &PowerSeriesQ {
    type Output = PowerSeriesQ;
    fn neg(self) -> PowerSeriesQ {
        PowerSeriesQ::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for PowerSeriesQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(q^{})", self.to_polynomial(), self.order())
    }
}

impl fmt::Debug for PowerSeriesQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeriesQ({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> PolynomialQ {
        PolynomialQ::from_i64(c)
    }

    #[test]
    fn expansion_examples() {
        let geo = RationalFunctionQ::inv_one_minus_q_pow(1);
        assert_eq!(geo.expand(4).unwrap(), PowerSeriesQ::from_i64(&[1, 1, 1, 1]));
        let diff = &geo - &RationalFunctionQ::inv_one_minus_q_pow(3);
        assert_eq!(diff.expand(6).unwrap(), PowerSeriesQ::from_i64(&[0, 1, 1, 0, 1, 1]));
        let quot = RationalFunctionQ::new(p(&[-1, 0, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(quot.expand(4).unwrap(), PowerSeriesQ::from_i64(&[1, 1, 1, 0]));
        let pole = RationalFunctionQ::new(p(&[1]), p(&[0, 1])).unwrap();
        assert_eq!(pole.expand(3), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn mixed_orders_truncate() {
        let a = PowerSeriesQ::one(5);
        let b = PowerSeriesQ::from_i64(&[1, 2, 3]);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
    }

    #[test]
    fn sparse_factor_ops() {
        // ∏_{k≥1}(1 − q^k) = 1 − q − q² + q⁵ + q⁷ − …
        let mut s = PowerSeriesQ::one(10);
        for k in 1..10 {
            s.mul_one_minus_q_pow(k);
        }
        assert_eq!(s, PowerSeriesQ::from_i64(&[1, -1, -1, 0, 0, 1, 0, 1, 0, 0]));
        for k in 1..10 {
            s.div_one_minus_q_pow(k);
        }
        assert_eq!(s, PowerSeriesQ::one(10));
    }

    #[test]
    fn log_derivative_of_geometric() {
        // q d/dq log 1/(1−q) = q/(1−q)
        let geo = RationalFunctionQ::inv_one_minus_q_pow(1).expand(8).unwrap();
        let ld = geo.log_derivative().unwrap();
        assert_eq!(ld, PowerSeriesQ::from_i64(&[0, 1, 1, 1, 1, 1, 1, 1]));
        assert_eq!(PowerSeriesQ::from_i64(&[0, 1]).inverse(), Err(Error::ZeroConstantTerm));
        assert_eq!(geo.compose_monomial(3).coeffs()[3], rat(1));
    }

    proptest! {
        #[test]
        fn inverse_round_trip(c in proptest::collection::vec(-4i64..=4, 1..12), a0 in 1i64..=3) {
            let mut c = c;
            c[0] = a0;
            let s = PowerSeriesQ::from_i64(&c);
            prop_assert_eq!(&s * &s.inverse().unwrap(), PowerSeriesQ::one(c.len()));
        }
    }
}
