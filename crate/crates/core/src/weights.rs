//! Quasihomogeneous surface singularities: spectra, multiplicity and power
//! sum generating functions from weights, and the characteristic
//! polynomial from Seifert invariants.
//!
//! Partial-fraction data are kept as divisor maps `d ↦ c_d` meaning
//! `Σ c_d/(q^d − 1)`, which has the same coefficients as `Σ c_d/(1 − q^d)`
//! once the left side is divided by `1 − q^n` instead of `q^n − 1`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{gcd, int_pow};
use crate::dirichlet::DirichletSeries;
use crate::zetaprod::dft_power_sums;
use crate::{rat, ratio, DivisorMap, Error, EvenFunction, IdentityReport, PolynomialQ, Rational, RationalFunctionQ, Result, ZetaProduct};

/// Weights `(a, b, c)` and degree `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub n: u64,
}

impl WeightSystem {
    pub fn new(a: u64, b: u64, c: u64, n: u64) -> Result<Self> {
        for (v, name) in [(a, "a"), (b, "b"), (c, "c"), (n, "n")] {
            if v == 0 {
                return Err(Error::NonPositive(name));
            }
        }
        Ok(Self { a, b, c, n })
    }

    pub fn weights(&self) -> [u64; 3] {
        [self.a, self.b, self.c]
    }

    /// `(n − a)(n − b)(n − c)/(abc)`.
    pub fn milnor_number(&self) -> Rational {
        let [a, b, c] = self.weights().map(|w| w as i64);
        let n = self.n as i64;
        ratio((n - a) * (n - b) * (n - c), a * b * c)
    }

    fn non_regular(&self) -> Error {
        Error::NonRegularWeights {
            a: self.a,
            b: self.b,
            c: self.c,
            n: self.n,
        }
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{};{})", self.a, self.b, self.c, self.n)
    }
}

/// Genus and the pairs `(α_i, β_i)`. Only `g`, `r` and the `α_i` enter
/// the characteristic polynomial; `β_i` are carried along unused.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertData {
    pub genus: u64,
    pub pairs: Vec<(u64, u64)>,
}

impl SeifertData {
    pub fn new(genus: u64, pairs: Vec<(u64, u64)>) -> Result<Self> {
        if pairs.iter().any(|&(a, b)| a == 0 || b == 0) {
            return Err(Error::NonPositive("alpha/beta"));
        }
        Ok(Self { genus, pairs })
    }

    pub fn r(&self) -> usize {
        self.pairs.len()
    }

    pub fn alphas(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(a, _)| a)
    }

    /// `2g − 2 + r`.
    pub fn euler_term(&self) -> i64 {
        2 * self.genus as i64 - 2 + self.r() as i64
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.genus)?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            let sep = if i == 0 { " " } else { "," };
            write!(f, "{sep}{a}/{b}")?;
        }
        Ok(())
    }
}

fn q_pow_minus_one(d: u64) -> PolynomialQ {
    PolynomialQ::q_pow_minus_one(d as usize)
}

/// `q^{−n} ∏_{w∈{a,b,c}} (q^n − q^w)/(q^w − 1)`, which must be a polynomial
/// with nonnegative integer coefficients.
pub fn spectral_gf(w: &WeightSystem) -> Result<PolynomialQ> {
    let n = w.n as usize;
    let mut num = PolynomialQ::one();
    let mut den = PolynomialQ::monomial(Rational::one(), n);
    for x in w.weights() {
        let x = x as usize;
        num = &num * &(&PolynomialQ::monomial(Rational::one(), n) - &PolynomialQ::monomial(Rational::one(), x));
        den = &den * &q_pow_minus_one(x as u64);
    }
    let rf = RationalFunctionQ::new(num, den)?;
    let p = rf.as_polynomial().ok_or_else(|| w.non_regular())?;
    let ok = p.coeffs().iter().all(|c| c.is_integer() && !c.is_negative());
    if ok {
        Ok(p.clone())
    } else {
        Err(w.non_regular())
    }
}

/// `Σ_d c_d/(q^d − 1)`.
pub fn partial_fractions(c: &DivisorMap<Rational>) -> RationalFunctionQ {
    c.iter().fold(RationalFunctionQ::zero(), |acc, (d, v)| {
        &acc + &RationalFunctionQ::inv_q_pow_minus_one(d as usize).scale(v)
    })
}

fn add_term(c: &mut DivisorMap<Rational>, d: u64, v: Rational) -> Result<()> {
    let n = c.n();
    let slot = c
        .divisors()
        .iter()
        .position(|&x| x == d)
        .ok_or(Error::DivisorKeys { n })?;
    let mut values = c.values().to_vec();
    values[slot] += v;
    *c = DivisorMap::new(n, c.divisors().iter().copied().zip(values))?;
    Ok(())
}

/// The eight partial-fraction terms of `Σ_{k<n} m(k) q^k/(q^n − 1)`.
pub fn m_coefficients_from_weights(w: &WeightSystem) -> Result<DivisorMap<Rational>> {
    let n = w.n;
    let [a, b, c] = w.weights();
    let mut out = DivisorMap::from_fn(n, |_| Rational::zero())?;
    let ni = n as i64;
    add_term(&mut out, 1, ratio(ni * ni, (a * b * c) as i64))?;
    add_term(&mut out, n, rat(-1))?;
    for x in [a, b, c] {
        let g = gcd(x, n);
        add_term(&mut out, g, ratio(g as i64, x as i64))?;
    }
    for (x, y) in [(b, c), (a, c), (a, b)] {
        let g = gcd(gcd(x, y), n);
        add_term(&mut out, g, ratio(-(ni * g as i64), (x * y) as i64))?;
    }
    Ok(out)
}

/// The displayed terms of `Σ_{k<n} p(k) q^k/(q^n − 1)`.
pub fn p_coefficients_from_weights(w: &WeightSystem) -> Result<DivisorMap<Rational>> {
    let n = w.n;
    let [a, b, c] = w.weights();
    let ni = n as i64;
    let mut out = DivisorMap::from_fn(n, |_| Rational::zero())?;
    add_term(&mut out, n, ratio(ni * ni * ni, (a * b * c) as i64))?;
    add_term(&mut out, 1, rat(-1))?;
    for x in [a, b, c] {
        add_term(&mut out, n / gcd(x, n), ratio(ni, x as i64))?;
    }
    for (x, y) in [(b, c), (a, c), (a, b)] {
        add_term(&mut out, n / gcd(gcd(x, y), n), ratio(-(ni * ni), (x * y) as i64))?;
    }
    Ok(out)
}

/// Multiplicity generating function assembled from the weights, with its
/// partial-fraction coefficients.
pub fn m_gf_from_weights(w: &WeightSystem) -> Result<(RationalFunctionQ, DivisorMap<Rational>)> {
    let c = m_coefficients_from_weights(w)?;
    Ok((partial_fractions(&c), c))
}

/// Power sum generating function assembled from the weights.
pub fn p_gf_from_weights(w: &WeightSystem) -> Result<(RationalFunctionQ, DivisorMap<Rational>)> {
    let c = p_coefficients_from_weights(w)?;
    Ok((partial_fractions(&c), c))
}

/// `(1/ζ(s)) Σ m(k) k^{−s}` in the displayed closed form.
pub fn m_dirichlet_from_weights(w: &WeightSystem, s: i64) -> Rational {
    let n = w.n;
    let [a, b, c] = w.weights();
    let ni = n as i64;
    let mut v = ratio(ni * ni, (a * b * c) as i64) - int_pow(n, -s);
    for x in [a, b, c] {
        v += rat(x as i64).recip() * int_pow(gcd(x, n), 1 - s);
    }
    for (x, y) in [(b, c), (a, c), (a, b)] {
        v -= ratio(ni, (x * y) as i64) * int_pow(gcd(gcd(x, y), n), 1 - s);
    }
    v
}

/// `(1/ζ(s)) Σ p(k) k^{−s}` in the displayed closed form.
pub fn p_dirichlet_from_weights(w: &WeightSystem, s: i64) -> Rational {
    let n = w.n;
    let [a, b, c] = w.weights();
    let mut v = rat((a * b * c) as i64).recip() * int_pow(n, 3 - s) - rat(1);
    for x in [a, b, c] {
        v += int_pow(gcd(x, n), s) * int_pow(n, 1 - s) / rat(x as i64);
    }
    for (x, y) in [(b, c), (a, c), (a, b)] {
        v -= int_pow(gcd(gcd(x, y), n), s) * int_pow(n, 2 - s) / rat((x * y) as i64);
    }
    v
}

/// `e(d) = c_{n/d}` from multiplicity coefficients, which must be integers.
pub fn zeta_product_from_m_coefficients(c: &DivisorMap<Rational>) -> Result<ZetaProduct> {
    let n = c.n();
    let mut pairs = Vec::with_capacity(c.divisors().len());
    for (d, v) in c.iter() {
        if !v.is_integer() {
            return Err(Error::NotCyclotomicProduct { n });
        }
        let e: i64 = v.to_integer().try_into().map_err(|_| Error::NotCyclotomicProduct { n })?;
        pairs.push((n / d, e));
    }
    ZetaProduct::new(n, pairs)
}

pub fn zeta_product_from_weights(w: &WeightSystem) -> Result<ZetaProduct> {
    zeta_product_from_m_coefficients(&m_coefficients_from_weights(w)?)
}

fn sum_at(c: &DivisorMap<Rational>, s: i64) -> Rational {
    c.iter().map(|(d, v)| v * int_pow(d, -s)).sum()
}

fn numerator_over_q_n_minus_one(values: &[Rational], n: u64) -> RationalFunctionQ {
    RationalFunctionQ::new(PolynomialQ::new(values.to_vec()), q_pow_minus_one(n)).expect("nonzero denominator")
}

/// Every consistency check available for a weight system.
pub fn verify_weight_system(w: &WeightSystem, s_values: &[i64]) -> Result<IdentityReport> {
    let n = w.n;
    let mut report = IdentityReport::new(format!("weight system {w}"));
    let spectrum = spectral_gf(w)?;
    report.pass("spectrum is a nonnegative integral polynomial");
    let total: Rational = spectrum.coeffs().iter().sum();
    report.compare("spectrum size = Milnor number", "q=1", &total, &w.milnor_number());
    // Spectral numbers are symmetric under j ↦ n − j.
    let mirrored = PolynomialQ::new(
        (0..=n as usize)
            .map(|j| spectrum.coeff(n as usize - j))
            .collect(),
    );
    report.compare("spectrum is symmetric about n/2", "q^n P(1/q)", &spectrum, &mirrored);

    let (m_gf, mc) = m_gf_from_weights(w)?;
    let (p_gf, pc) = p_gf_from_weights(w)?;
    let m = EvenFunction::divisor_sums(&mc);
    report.compare("m partial fractions", "q", &m_gf, &numerator_over_q_n_minus_one(m.values(), n));

    let mut reduced = alloc::vec![Rational::zero(); n as usize];
    for (j, v) in spectrum.coeffs().iter().enumerate() {
        reduced[j % n as usize] += v;
    }
    report.compare(
        "spectrum mod q^n - 1 = sum m(k) q^k",
        "q",
        &PolynomialQ::new(reduced),
        &PolynomialQ::new(m.values().to_vec()),
    );

    let p = EvenFunction::divisor_sums(&pc);
    report.compare("p partial fractions", "q", &p_gf, &numerator_over_q_n_minus_one(p.values(), n));
    report.compare("p = Fourier transform of m", "k", &p, &dft_power_sums(&m));
    let implied = mc.map(|d, _| rat(d as i64) * mc.at(n / d));
    report.compare("p coefficient = d e(d)", "d", &pc, &implied);

    for &s in s_values {
        report.compare("m Dirichlet form", format!("s={s}"), &m_dirichlet_from_weights(w, s), &sum_at(&mc, s));
        report.compare("p Dirichlet form", format!("s={s}"), &p_dirichlet_from_weights(w, s), &sum_at(&pc, s));
    }
    Ok(report)
}

/// `(1 − q^n)^{2g−2+r} ∏_{d|n, d∈{a,b,c}} (1 − q^{n/d}) / ((1 − q) ∏_{α_i|n} (1 − q^{n/α_i}))`.
/// Weights are counted with multiplicity.
pub fn char_poly_from_seifert(w: &WeightSystem, s: &SeifertData) -> RationalFunctionQ {
    let one_minus = |d: u64| -> RationalFunctionQ { (&PolynomialQ::one() - &PolynomialQ::monomial(Rational::one(), d as usize)).into() };
    let n = w.n;
    let mut num = one_minus(n).pow(s.euler_term()).expect("1 - q^n is nonzero");
    for d in w.weights() {
        if n.is_multiple_of(d) {
            num = &num * &one_minus(n / d);
        }
    }
    let mut den = one_minus(1);
    for a in s.alphas() {
        if n.is_multiple_of(a) {
            den = &den * &one_minus(n / a);
        }
    }
    (&num / &den).expect("nonzero denominator")
}

/// Partial-fraction coefficients of `Σ_{k<n} m(k) q^k/(q^n − 1)` read off
/// the Seifert form.
pub fn seifert_m_coefficients(w: &WeightSystem, s: &SeifertData) -> Result<DivisorMap<Rational>> {
    let n = w.n;
    let mut c = DivisorMap::from_fn(n, |_| Rational::zero())?;
    add_term(&mut c, 1, rat(s.euler_term()))?;
    add_term(&mut c, n, rat(-1))?;
    for d in w.weights() {
        if n.is_multiple_of(d) {
            add_term(&mut c, d, rat(1))?;
        }
    }
    for a in s.alphas() {
        if n.is_multiple_of(a) {
            add_term(&mut c, a, rat(-1))?;
        }
    }
    Ok(c)
}

/// The cyclotomic product `∏ (q^d − 1)^{e(d)}` whose multiplicities give the
/// Seifert m-form.
pub fn seifert_zeta_product(w: &WeightSystem, s: &SeifertData) -> Result<ZetaProduct> {
    zeta_product_from_m_coefficients(&seifert_m_coefficients(w, s)?)
}

/// The four Seifert generating-function forms against the product they come
/// from: the `(1 − ·)` characteristic polynomial, both partial-fraction forms
/// and both Dirichlet forms at each `s`.
pub fn seifert_m_forms(w: &WeightSystem, sd: &SeifertData, s_values: &[i64], order: usize) -> Result<IdentityReport> {
    let n = w.n;
    let mut report = IdentityReport::new(format!("Seifert forms {w} {{{sd}}}"));
    let z = seifert_zeta_product(w, sd)?;
    let sign = if z.milnor_number() % 2 == 0 { rat(1) } else { rat(-1) };
    report.compare(
        "characteristic polynomial",
        "q",
        &char_poly_from_seifert(w, sd),
        &z.to_rational_function().scale(&sign),
    );

    let m = z.multiplicities();
    let p = z.power_sums();
    let mc = seifert_m_coefficients(w, sd)?;
    report.compare("m form", "q", &numerator_over_q_n_minus_one(m.values(), n), &partial_fractions(&mc));

    let eg = sd.euler_term();
    let mut pc = DivisorMap::from_fn(n, |_| Rational::zero())?;
    add_term(&mut pc, n, rat(n as i64 * eg))?;
    add_term(&mut pc, 1, rat(-1))?;
    for d in w.weights() {
        if n.is_multiple_of(d) {
            add_term(&mut pc, n / d, rat((n / d) as i64))?;
        }
    }
    for a in sd.alphas() {
        if n.is_multiple_of(a) {
            add_term(&mut pc, n / a, rat(-((n / a) as i64)))?;
        }
    }
    report.compare("p form", "q", &numerator_over_q_n_minus_one(p.values(), n), &partial_fractions(&pc));

    // Σ m(k) k^{−s} = ζ(s) Σ c_d d^{−s}, checked coefficientwise.
    let series = |f: &EvenFunction| DirichletSeries::from_fn(order, |k| f.at(k as i64).clone());
    let mobius = DirichletSeries::mobius(order);
    for (name, f, c) in [("m Dirichlet series", &m, &mc), ("p Dirichlet series", &p, &pc)] {
        let lhs = &series(f) * &mobius;
        let rhs = DirichletSeries::from_divisor_map(c, order);
        match lhs.first_mismatch(&rhs) {
            None => report.pass(name),
            Some((k, l, r)) => report.fail(name, format!("k={k}"), l, r),
        }
    }

    for &s in s_values {
        let mut m_closed = rat(eg) - int_pow(n, -s);
        let mut p_closed = rat(eg) - int_pow(n, s - 1);
        for d in w.weights() {
            if n.is_multiple_of(d) {
                m_closed += int_pow(d, -s);
                p_closed += int_pow(d, s - 1);
            }
        }
        for a in sd.alphas() {
            if n.is_multiple_of(a) {
                m_closed -= int_pow(a, -s);
                p_closed -= int_pow(a, s - 1);
            }
        }
        report.compare("m Dirichlet closed form", format!("s={s}"), &m_closed, &sum_at(&mc, s));
        let scaled = int_pow(n, s - 1) * sum_at(&pc, s);
        report.compare("p Dirichlet closed form", format!("s={s}"), &p_closed, &scaled);
    }
    Ok(report)
}
