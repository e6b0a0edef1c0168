//! Polynomial gcd over ℚ.
//!
//! Inputs are reduced to primitive integer polynomials. The heuristic gcd
//! (evaluate at a large integer, take the integer gcd, read the result back in
//! balanced base-ξ digits, confirm by trial division) handles almost every
//! case; a primitive remainder sequence is the fallback.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::PolynomialQ;

const HEURISTIC_ATTEMPTS: usize = 6;

pub(crate) fn gcd(a: &PolynomialQ, b: &PolynomialQ) -> PolynomialQ {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return PolynomialQ::one();
    }
    let ai = a.primitive_integer_part();
    let bi = b.primitive_integer_part();
    let g = heuristic_gcd(&ai, &bi).unwrap_or_else(|| prs_gcd(ai, bi));
    PolynomialQ::from_integers(&g).monic()
}

/// Divides out the content and makes the leading coefficient positive.
pub(crate) fn make_primitive(p: &mut [BigInt]) {
    let content = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return;
    }
    let flip = p.last().is_some_and(|c| c.is_negative());
    for c in p.iter_mut() {
        *c = &*c / &content;
        if flip {
            *c = -&*c;
        }
    }
}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn max_norm(p: &[BigInt]) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap_or_default()
}

fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Balanced base-`xi` digits of `gamma`, read as polynomial coefficients.
fn balanced_digits(mut gamma: BigInt, xi: &BigInt) -> Vec<BigInt> {
    let half = xi >> 1u32;
    let mut out = Vec::new();
    while !gamma.is_zero() {
        let mut c = gamma.mod_floor(xi);
        if c > half {
            c -= xi;
        }
        gamma = (gamma - &c) / xi;
        out.push(c);
    }
    out
}

/// Exact division over ℤ; `None` if `d` does not divide `p`.
pub(crate) fn int_exact_div(p: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = d.len().checked_sub(1)?;
    if p.is_empty() {
        return Some(Vec::new());
    }
    if p.len() <= dd {
        return None;
    }
    let lc = &d[dd];
    let mut rem = p.to_vec();
    let mut quot = vec![BigInt::zero(); p.len() - dd];
    for i in (0..quot.len()).rev() {
        let top = &rem[i + dd];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        for (j, dc) in d.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quot[i] = c;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

fn heuristic_gcd(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let bound = max_norm(a).min(max_norm(b));
    let mut xi: BigInt = bound * 2u32 + 29u32;
    for _ in 0..HEURISTIC_ATTEMPTS {
        let gamma = eval(a, &xi).gcd(&eval(b, &xi));
        if !gamma.is_zero() {
            let mut g = balanced_digits(gamma, &xi);
            trim(&mut g);
            make_primitive(&mut g);
            if !g.is_empty() && int_exact_div(a, &g).is_some() && int_exact_div(b, &g).is_some() {
                return Some(g);
            }
        }
        xi = xi * 73794u32 / 27011u32;
    }
    None
}

/// Pseudo-remainder of `a` by `b` over ℤ.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let top = r.last().cloned().unwrap_or_default();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &top * bc;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn prs_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_empty() {
            return a;
        }
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let mut r = pseudo_rem(&a, &b);
        make_primitive(&mut r);
        a = b;
        b = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::cyclotomic;
    use crate::ratio;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> PolynomialQ {
        PolynomialQ::from_i64(c)
    }

    fn ints(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn simple_gcds() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 0, 0, 1])), p(&[-1, 1]));
        assert_eq!(p(&[2, 2]).gcd(&p(&[4, 4])), p(&[1, 1]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[1, 2])), PolynomialQ::one());
        assert_eq!(PolynomialQ::zero().gcd(&p(&[2, 4])), p(&[1, 2]).monic());
        let big = p(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let other = p(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(big.gcd(&other), p(&[-1, 0, 0, 0, 1]));
    }

    #[test]
    fn prs_fallback_agrees() {
        let a = ints(&[-1, 0, 0, 0, 0, 0, 1]);
        let b = ints(&[-1, 0, 0, 0, 1]);
        assert_eq!(prs_gcd(a.clone(), b.clone()), ints(&[-1, 0, 1]));
        assert_eq!(heuristic_gcd(&a, &b).unwrap(), ints(&[-1, 0, 1]));
    }

    #[test]
    fn cyclotomic_products() {
        let a = &cyclotomic(12).unwrap().pow(3) * &cyclotomic(5).unwrap();
        let b = &cyclotomic(12).unwrap().pow(2) * &cyclotomic(7).unwrap().pow(2);
        assert_eq!(a.gcd(&b), cyclotomic(12).unwrap().pow(2));
    }

    fn poly_strategy(max_deg: usize) -> impl Strategy<Value = PolynomialQ> {
        proptest::collection::vec((-6i64..=6, 1i64..=3), 1..=max_deg + 1)
            .prop_map(|v| PolynomialQ::new(v.into_iter().map(|(a, b)| ratio(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn gcd_divides_and_is_maximal(a in poly_strategy(4), b in poly_strategy(4), c in poly_strategy(3)) {
            prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
            let ac = &a * &c;
            let bc = &b * &c;
            let g = ac.gcd(&bc);
            prop_assert!(g.is_monic());
            prop_assert!(ac.exact_div(&g).is_ok());
            prop_assert!(bc.exact_div(&g).is_ok());
            prop_assert!(g.exact_div(&c.monic()).is_ok());
            let pa = a.primitive_integer_part();
            let pb = b.primitive_integer_part();
            let prs = PolynomialQ::from_integers(&prs_gcd(pa, pb)).monic();
            prop_assert_eq!(prs, a.gcd(&b));
        }
    }
}
