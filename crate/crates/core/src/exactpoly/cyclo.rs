//! Cyclotomic and necklace polynomials, resultants and tensor products.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{PolynomialQ, PowerSeriesQ, RationalFunctionQ};
use crate::arith::{divisor_list, mobius_unchecked};
use crate::{Error, Rational, Result};

/// `Φ_n(q) = ∏_{d|n} (q^d − 1)^{μ(n/d)}`, evaluated as an exact quotient.
pub fn cyclotomic(n: u64) -> Result<PolynomialQ> {
    if n == 0 {
        return Err(Error::NonPositive("n"));
    }
    let mut num = PolynomialQ::one();
    let mut den = PolynomialQ::one();
    for d in divisor_list(n) {
        match mobius_unchecked(n / d) {
            1 => num = &num * &PolynomialQ::q_pow_minus_one(d as usize),
            -1 => den = &den * &PolynomialQ::q_pow_minus_one(d as usize),
            _ => {}
        }
    }
    num.exact_div(&den)
        .map_err(|_| Error::Internal("cyclotomic quotient has a remainder"))
}

/// Necklace polynomial `M(q,d) = (1/d) Σ_{d'|d} μ(d/d') q^{d'}`.
pub fn necklace(d: u64) -> Result<PolynomialQ> {
    if d == 0 {
        return Err(Error::NonPositive("d"));
    }
    let mut acc = PolynomialQ::zero();
    for dp in divisor_list(d) {
        let mu = mobius_unchecked(d / dp);
        if mu != 0 {
            acc += &PolynomialQ::monomial(crate::rat(mu), dp as usize);
        }
    }
    Ok(acc.scale(&crate::ratio(1, d as i64)))
}

/// Exponent of `Φ_d` in a nonzero polynomial, found by repeated division.
pub fn cyclotomic_multiplicity(f: &PolynomialQ, d: u64) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::Zero("f"));
    }
    let phi = cyclotomic(d)?;
    let mut k = 0;
    if f.is_integral() {
        // Φ_d is monic over ℤ, so integral quotients stay integral.
        let phi = phi.primitive_integer_part();
        let mut rest = f.primitive_integer_part();
        while let Some(q) = super::gcd::int_exact_div(&rest, &phi) {
            rest = q;
            k += 1;
        }
    } else {
        let mut rest = f.clone();
        while let Ok(q) = rest.exact_div(&phi) {
            rest = q;
            k += 1;
        }
    }
    Ok(k)
}

/// Signed exponent of `Φ_d` in a nonzero rational function.
pub fn cyclotomic_valuation(f: &RationalFunctionQ, d: u64) -> Result<i64> {
    Ok(i64::from(cyclotomic_multiplicity(f.num(), d)?) - i64::from(cyclotomic_multiplicity(f.den(), d)?))
}

/// Determinant of a square matrix over ℚ[q] by fraction-free (Bareiss)
/// elimination.
fn bareiss_det(mut m: Vec<Vec<PolynomialQ>>) -> PolynomialQ {
    let size = m.len();
    if size == 0 {
        return PolynomialQ::one();
    }
    let mut sign = false;
    let mut prev = PolynomialQ::one();
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return PolynomialQ::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev).expect("Bareiss step is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Resultant of two polynomials in `t` whose coefficients lie in ℚ[q],
/// taken with formal degrees `a.len() − 1` and `b.len() − 1`.
///
/// Coefficient slices are indexed by the power of `t`.
pub fn resultant(a: &[PolynomialQ], b: &[PolynomialQ]) -> PolynomialQ {
    let m = a.len().saturating_sub(1);
    let k = b.len().saturating_sub(1);
    let size = m + k;
    if size == 0 {
        return PolynomialQ::one();
    }
    let mut rows = Vec::with_capacity(size);
    // Sylvester rows hold coefficients from the highest power of t down.
    for i in 0..k {
        let mut row = alloc::vec![PolynomialQ::zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = alloc::vec![PolynomialQ::zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// `f ⊗ g = Res_t(t^m f(q/t), g(t))`, `m = deg f`: roots are the pairwise
/// products of roots. Normalized to monic when both inputs are monic.
pub fn tensor_product(f: &PolynomialQ, g: &PolynomialQ) -> Result<PolynomialQ> {
    if f.is_zero() {
        return Err(Error::Zero("f"));
    }
    if g.is_zero() {
        return Err(Error::Zero("g"));
    }
    // t^m f(q/t) = Σ_i f_i q^i t^{m−i}
    let m = f.degree().unwrap_or(0);
    let mut a = alloc::vec![PolynomialQ::zero(); m + 1];
    for (i, c) in f.coeffs().iter().enumerate() {
        a[m - i] = PolynomialQ::monomial(c.clone(), i);
    }
    let b: Vec<PolynomialQ> = g.coeffs().iter().cloned().map(PolynomialQ::constant).collect();
    let r = resultant(&a, &b);
    if f.is_monic() && g.is_monic() {
        Ok(r.monic())
    } else {
        Ok(r)
    }
}

/// `q·f′(q)/f(q)`.
pub fn log_derivative(f: &RationalFunctionQ) -> Result<RationalFunctionQ> {
    f.log_derivative()
}

/// First `order` Maclaurin coefficients of `f`.
pub fn expand(f: &RationalFunctionQ, order: usize) -> Result<PowerSeriesQ> {
    f.expand(order)
}

/// `Σ_{k=1}^{d} c_d(k) q^k / (q^d − 1)`.
pub fn ramanujan_log_form(d: u64) -> RationalFunctionQ {
    let num = PolynomialQ::new(
        (0..=d)
            .map(|k| {
                if k == 0 {
                    Rational::zero()
                } else {
                    crate::rat(crate::arith::ramanujan_unchecked(d, k as i64))
                }
            })
            .collect(),
    );
    RationalFunctionQ::new(num, PolynomialQ::q_pow_minus_one(d as usize)).expect("nonzero denominator")
}
