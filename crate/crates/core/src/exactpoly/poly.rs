use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{rat, Error, Rational, Result};

/// Univariate polynomial in `q` over ℚ.
///
/// `coeffs[i]` is the coefficient of `q^i`; trailing zeros are stripped, so
/// the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolynomialQ {
    coeffs: Vec<Rational>,
}

impl PolynomialQ {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c·q^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `q^d − 1`
    pub fn q_pow_minus_one(d: usize) -> Self {
        let mut p = Self::monomial(Rational::one(), d);
        p -= &Self::one();
        p
    }

    /// The q-integer `[m]_q = 1 + q + ⋯ + q^{m−1}`.
    pub fn q_integer(m: usize) -> Self {
        Self::new(vec![Rational::one(); m])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `q^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Substitution `q ↦ q^d`.
    pub fn compose_monomial(&self, d: usize) -> Self {
        assert!(d > 0, "substitution q -> q^0 is not supported");
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * d] = c.clone();
        }
        Self { coeffs }
    }

    /// Substitution `q ↦ c·q`.
    pub fn scale_variable(&self, c: &Rational) -> Self {
        let mut power = Rational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &power);
            power *= c;
        }
        Self::new(coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division `self = quot·divisor + rem` with `deg rem < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dl = divisor.leading().ok_or(Error::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let inv = dl.recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient of an exact division.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        super::gcd::gcd(self, other)
    }

    /// Integer coefficients after clearing denominators and removing the
    /// content, with positive leading coefficient.
    pub(crate) fn primitive_integer_part(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        super::gcd::make_primitive(&mut ints);
        ints
    }

    pub(crate) fn from_integers(ints: &[BigInt]) -> Self {
        Self::new(ints.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }
}

impl Zero for PolynomialQ {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for PolynomialQ {
    fn one() -> Self {
        Self {
            coeffs: vec![Rational::one()],
        }
    }
}

impl From<Rational> for PolynomialQ {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<'a> AddAssign<&'a PolynomialQ> for PolynomialQ {
    fn add_assign(&mut self, rhs: &'a PolynomialQ) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.trim();
    }
}

impl<'a> SubAssign<&'a PolynomialQ> for PolynomialQ {
    fn sub_assign(&mut self, rhs: &'a PolynomialQ) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.trim();
    }
}

impl<'a> Add<&'a PolynomialQ> for &'a PolynomialQ {
    type Output = PolynomialQ;
    fn add(self, rhs: &'a PolynomialQ) -> PolynomialQ {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a PolynomialQ> for &'a PolynomialQ {
    type Output = PolynomialQ;
    fn sub(self, rhs: &'a PolynomialQ) -> PolynomialQ {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a PolynomialQ> for &'a PolynomialQ {
    type Output = PolynomialQ;
    fn mul(self, rhs: &'a PolynomialQ) -> PolynomialQ {
        if self.is_zero() || rhs.is_zero() {
            return PolynomialQ::zero();
        }
        let len = self.coeffs.len() + rhs.coeffs.len() - 1;
        if self.is_integral() && rhs.is_integral() {
            // Integer fast path: avoid a gcd per accumulated term.
            let mut acc = vec![BigInt::zero(); len];
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    acc[i + j] += a.numer() * b.numer();
                }
            }
            return PolynomialQ::new(acc.into_iter().map(Rational::from_integer).collect());
        }
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolynomialQ::new(out)
    }
}

impl Neg for &PolynomialQ {
    type Output = PolynomialQ;
    fn neg(self) -> PolynomialQ {
        PolynomialQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<PolynomialQ> for PolynomialQ {
            type Output = PolynomialQ;
            fn $m(self, rhs: PolynomialQ) -> PolynomialQ {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a PolynomialQ> for PolynomialQ {
            type Output = PolynomialQ;
            fn $m(self, rhs: &'a PolynomialQ) -> PolynomialQ {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for PolynomialQ {
    type Output = PolynomialQ;
    fn neg(self) -> PolynomialQ {
        -&self
    }
}

impl fmt::Display for PolynomialQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = abs.is_one();
            if !unit || i == 0 {
                if abs.is_integer() {
                    write!(f, "{}", abs)?;
                } else {
                    write!(f, "({})", abs)?;
                }
            }
            match i {
                0 => {}
                1 if unit => f.write_str("q")?,
                1 => f.write_str("*q")?,
                _ if unit => write!(f, "q^{}", i)?,
                _ => write!(f, "*q^{}", i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolynomialQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolynomialQ({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> PolynomialQ {
        PolynomialQ::from_i64(c)
    }

    #[test]
    fn canonical_form() {
        assert!(p(&[0, 0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert_eq!(p(&[]).degree(), None);
        assert_eq!(p(&[3]).degree(), Some(0));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 1]).to_string(), "q^2 - q + 1");
        assert_eq!(p(&[-1, 1]).to_string(), "q - 1");
        assert_eq!(p(&[0, 2, 0, -3]).to_string(), "-3*q^3 + 2*q");
        assert_eq!(PolynomialQ::zero().to_string(), "0");
        let half = PolynomialQ::new(vec![ratio(1, 2), ratio(-1, 3)]);
        assert_eq!(half.to_string(), "-(1/3)*q + (1/2)");
    }

    #[test]
    fn division() {
        let a = p(&[-1, 0, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(p(&[1, 0, 1]).exact_div(&b), Err(Error::NotDivisible));
        assert_eq!(a.div_rem(&PolynomialQ::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn compose_and_derivative() {
        assert_eq!(p(&[1, 1]).compose_monomial(3), p(&[1, 0, 0, 1]));
        assert_eq!(p(&[5, 1, 1]).derivative(), p(&[1, 2]));
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(p(&[1, 2, 3]).eval(&rat(2)), rat(17));
        assert_eq!(p(&[1, 1, 1]).scale_variable(&rat(-1)), p(&[1, -1, 1]));
    }

    fn poly_strategy(max_deg: usize) -> impl Strategy<Value = PolynomialQ> {
        proptest::collection::vec((-9i64..=9, 1i64..=4), 0..=max_deg + 1)
            .prop_map(|v| PolynomialQ::new(v.into_iter().map(|(a, b)| ratio(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn div_rem_reconstructs(a in poly_strategy(7), b in poly_strategy(4)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree() || r.is_zero());
        }

        #[test]
        fn ring_laws(a in poly_strategy(5), b in poly_strategy(5), c in poly_strategy(5)) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            let x = ratio(3, 7);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        }
    }
}
