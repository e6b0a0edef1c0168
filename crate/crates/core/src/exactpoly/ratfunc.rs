use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::PolynomialQ;
use crate::{Error, Rational, Result};

/// Reduced rational function `num / den` in `q` over ℚ.
///
/// Invariants: `den ≠ 0`, `gcd(num, den) = 1` and `den` is monic. Zero is
/// `0 / 1`. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionQ {
    num: PolynomialQ,
    den: PolynomialQ,
}

impl RationalFunctionQ {
    pub fn new(num: PolynomialQ, den: PolynomialQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: PolynomialQ, den: PolynomialQ) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.recip();
            Self {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: PolynomialQ) -> Self {
        Self {
            num: p,
            den: PolynomialQ::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(PolynomialQ::constant(c))
    }

    /// `1 / (q^d − 1)`
    pub fn inv_q_pow_minus_one(d: usize) -> Self {
        Self {
            num: PolynomialQ::one(),
            den: PolynomialQ::q_pow_minus_one(d),
        }
    }

    /// `1 / (1 − q^d)`
    pub fn inv_one_minus_q_pow(d: usize) -> Self {
        -Self::inv_q_pow_minus_one(d)
    }

    pub fn num(&self) -> &PolynomialQ {
        &self.num
    }

    pub fn den(&self) -> &PolynomialQ {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&PolynomialQ> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(Self {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Evaluation at a point that is not a pole.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Substitution `q ↦ q^d`.
    pub fn compose_monomial(&self, d: usize) -> Self {
        // Coprimality survives the substitution.
        Self {
            num: self.num.compose_monomial(d),
            den: self.den.compose_monomial(d),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        Self::reduce(self.num.shift(k), self.den.clone())
    }

    /// Ordinary derivative in `q`.
    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(num, &self.den * &self.den)
    }

    /// Logarithmic derivative `q·f′(q)/f(q)`.
    pub fn log_derivative(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::Zero("f"));
        }
        // q (N'D − N D') / (N D)
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(top.shift(1), &self.num * &self.den)
    }
}

impl Zero for RationalFunctionQ {
    fn zero() -> Self {
        Self {
            num: PolynomialQ::zero(),
            den: PolynomialQ::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunctionQ {
    fn one() -> Self {
        Self::from_poly(PolynomialQ::one())
    }
}

impl From<PolynomialQ> for RationalFunctionQ {
    fn from(p: PolynomialQ) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rational> for RationalFunctionQ {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a RationalFunctionQ> for &'a RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn add(self, rhs: &'a RationalFunctionQ) -> RationalFunctionQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunctionQ::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a_cof = self.den.exact_div(&g).expect("gcd divides");
        let b_cof = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &b_cof) + &(&rhs.num * &a_cof);
        RationalFunctionQ::reduce(num, &self.den * &b_cof)
    }
}

impl<'a> Sub<&'a RationalFunctionQ> for &'a RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn sub(self, rhs: &'a RationalFunctionQ) -> RationalFunctionQ {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunctionQ> for &'a RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn mul(self, rhs: &'a RationalFunctionQ) -> RationalFunctionQ {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunctionQ::zero();
        }
        // Cross-cancel first so that the final reduction stays small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading().expect("nonzero").recip();
        RationalFunctionQ {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }
}

impl<'a> Div<&'a RationalFunctionQ> for &'a RationalFunctionQ {
    type Output = Result<RationalFunctionQ>;
    fn div(self, rhs: &'a RationalFunctionQ) -> Result<RationalFunctionQ> {
        Ok(self * &rhs.recip()?)
    }
}

impl Neg for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        RationalFunctionQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<RationalFunctionQ> for RationalFunctionQ {
            type Output = RationalFunctionQ;
            fn $m(self, rhs: RationalFunctionQ) -> RationalFunctionQ {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunctionQ> for RationalFunctionQ {
            type Output = RationalFunctionQ;
            fn $m(self, rhs: &'a RationalFunctionQ) -> RationalFunctionQ {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunctionQ({})", self)
    }
}
