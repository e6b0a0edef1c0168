//! Cyclotomic products `ζ_e(q) = ∏_{d|n} (q^d − 1)^{e(d)}` and the even
//! functions attached to them.
//!
//! With `g = gcd(k, n)` (and `gcd(0, n) = n`):
//!
//! | function | value at `k` |
//! |---|---|
//! | `m(k)`  | `Σ_{d|g} e(n/d)` |
//! | `p(k)`  | `Σ_{d|g} d·e(d)` |
//! | `m*(k)` | `Σ_{d|g} e(d)` |
//! | `p*(k)` | `Σ_{d|g} d·e(n/d)` |

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg};

use num_traits::{One, Zero};

use crate::arith::{
    divisor_list, gcd_index, int_pow, inverse_mobius_transform, mobius_transform, phi_s_unchecked, ramanujan_unchecked,
    DivisorMap,
};
use crate::exactpoly::{cyclotomic, cyclotomic_valuation, log_derivative, necklace, ramanujan_log_form};
use crate::{rat, ratio, Error, IdentityReport, PolynomialQ, Rational, RationalFunctionQ, Result};

/// Integer exponent data `e(d)` on the divisors of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZetaProduct {
    e: DivisorMap<i64>,
}

impl ZetaProduct {
    pub fn new(n: u64, pairs: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        Ok(Self {
            e: DivisorMap::new(n, pairs)?,
        })
    }

    pub fn from_map(e: DivisorMap<i64>) -> Self {
        Self { e }
    }

    /// All exponents zero, so `ζ_e = 1`.
    pub fn trivial(n: u64) -> Result<Self> {
        Ok(Self {
            e: DivisorMap::from_fn(n, |_| 0)?,
        })
    }

    pub fn n(&self) -> u64 {
        self.e.n()
    }

    pub fn e(&self) -> &DivisorMap<i64> {
        &self.e
    }

    pub fn exponent(&self, d: u64) -> Option<i64> {
        self.e.get(d).copied()
    }

    /// `μ_e = Σ_{d|n} e(d)`, the degree of `ζ_e`.
    pub fn milnor_number(&self) -> i64 {
        self.e.values().iter().sum()
    }

    /// Product of two cyclotomic products on the same conductor.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::ConductorMismatch(self.n(), other.n()));
        }
        Ok(Self {
            e: self.e.map(|d, v| v + other.e.at(d)),
        })
    }

    /// Sign-counted multiplicity of `exp(2πik/n)` as a root of `ζ_e`.
    pub fn multiplicities(&self) -> EvenFunction {
        EvenFunction::divisor_sums(&self.e.reversed().map(|_, &v| rat(v)))
    }

    /// Sign-counted power sums of the roots of `ζ_e`.
    pub fn power_sums(&self) -> EvenFunction {
        EvenFunction::divisor_sums(&self.e.map(|d, &v| rat(d as i64 * v)))
    }

    /// `(m*, p*)`: multiplicities and power sums of the Saito transform.
    pub fn star_functions(&self) -> (EvenFunction, EvenFunction) {
        let rev = self.e.reversed();
        (
            EvenFunction::divisor_sums(&self.e.map(|_, &v| rat(v))),
            EvenFunction::divisor_sums(&rev.map(|d, &v| rat(d as i64 * v))),
        )
    }

    /// Exponents `d ↦ e(n/d)`.
    pub fn saito_transform(&self) -> Self {
        Self { e: self.e.reversed() }
    }

    /// Exponents `d ↦ −e(n/d)`.
    pub fn saito_dual(&self) -> Self {
        Self {
            e: self.e.reversed().map(|_, v| -v),
        }
    }

    /// `ζ_e` as a reduced rational function.
    pub fn to_rational_function(&self) -> RationalFunctionQ {
        let mut num = PolynomialQ::one();
        let mut den = PolynomialQ::one();
        for (d, &v) in self.e.iter() {
            if v == 0 {
                continue;
            }
            let f = PolynomialQ::q_pow_minus_one(d as usize).pow(v.unsigned_abs() as u32);
            if v > 0 {
                num = &num * &f;
            } else {
                den = &den * &f;
            }
        }
        RationalFunctionQ::new(num, den).expect("nonzero denominator")
    }

    /// `∏_{d|(k,n)} (q^d − 1)^{e(d)}`; the root `q = 1` has multiplicity
    /// `Σ_{d|(k,n)} e(d)`.
    pub fn partial_zeta(&self, k: i64) -> RationalFunctionQ {
        let g = gcd_index(k, self.n());
        let mut out = RationalFunctionQ::one();
        for (d, &v) in self.e.iter() {
            if g.is_multiple_of(d) && v != 0 {
                let f = RationalFunctionQ::from_poly(PolynomialQ::q_pow_minus_one(d as usize));
                out = &out * &f.pow(v).expect("nonzero factor");
            }
        }
        out
    }
}

impl fmt::Display for ZetaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; e={{", self.n())?;
        for (i, (d, v)) in self.e.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}:{v}")?;
        }
        f.write_str("}")
    }
}

/// An `n`-periodic function whose value at `k` depends only on `gcd(k, n)`.
/// Values are stored for `k = 0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvenFunction {
    n: u64,
    values: Vec<Rational>,
}

impl EvenFunction {
    /// Validates that `values[k] = values[gcd(k, n) mod n]` for every `k`.
    pub fn new(n: u64, values: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NonPositive("n"));
        }
        if values.len() as u64 != n {
            return Err(Error::Length {
                expected: n as usize,
                got: values.len(),
            });
        }
        for k in 1..n {
            let g = gcd_index(k as i64, n) % n;
            if values[k as usize] != values[g as usize] {
                return Err(Error::NotEven { n, k });
            }
        }
        Ok(Self { n, values })
    }

    pub fn from_i64(n: u64, values: &[i64]) -> Result<Self> {
        Self::new(n, values.iter().map(|&v| rat(v)).collect())
    }

    pub fn zero(n: u64) -> Result<Self> {
        Self::new(n, alloc::vec![Rational::zero(); n as usize])
    }

    /// Spreads values given on the divisors: `k ↦ g(gcd(k, n))`.
    pub fn from_divisor_values(g: &DivisorMap<Rational>) -> Self {
        let n = g.n();
        let values = (0..n).map(|k| g.at(gcd_index(k as i64, n)).clone()).collect();
        Self { n, values }
    }

    /// `k ↦ Σ_{d|(k,n)} e(d)`.
    pub fn divisor_sums(e: &DivisorMap<Rational>) -> Self {
        Self::from_divisor_values(&mobius_transform(e))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Value at any integer `k`, read periodically.
    pub fn at(&self, k: i64) -> &Rational {
        &self.values[k.rem_euclid(self.n as i64) as usize]
    }

    /// Restriction to the divisors of `n`.
    pub fn on_divisors(&self) -> DivisorMap<Rational> {
        DivisorMap::from_fn(self.n, |d| self.at(d as i64).clone()).expect("n >= 1")
    }

    /// Integer values, if every value is an integer.
    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.values
            .iter()
            .map(|v| {
                use num_traits::ToPrimitive;
                v.is_integer().then(|| v.to_integer().to_i64()).flatten()
            })
            .collect()
    }

    /// Re-runs the construction check on values produced without it.
    pub fn revalidate(&self) -> Result<()> {
        Self::new(self.n, self.values.clone()).map(|_| ())
    }
}

impl Add for &EvenFunction {
    type Output = EvenFunction;
    fn add(self, rhs: &EvenFunction) -> EvenFunction {
        assert_eq!(self.n, rhs.n, "conductors differ");
        EvenFunction {
            n: self.n,
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Neg for &EvenFunction {
    type Output = EvenFunction;
    fn neg(self) -> EvenFunction {
        EvenFunction {
            n: self.n,
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

impl fmt::Display for EvenFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// `k ↦ Σ_{d|n} w(d)·c_d(k)`, evaluated on divisors and spread.
fn ramanujan_combination(n: u64, w: impl Fn(u64) -> Rational) -> EvenFunction {
    let ds = divisor_list(n);
    let weights: Vec<Rational> = ds.iter().map(|&d| w(d)).collect();
    let g = DivisorMap::from_fn(n, |k| {
        ds.iter()
            .zip(&weights)
            .filter(|(_, w)| !w.is_zero())
            .fold(Rational::zero(), |acc, (&d, w)| acc + w * rat(ramanujan_unchecked(d, k as i64)))
    })
    .expect("n >= 1");
    EvenFunction::from_divisor_values(&g)
}

/// `r(k) = (1/n) Σ_{d|n} a(n/d) c_d(k)`.
pub fn ramanujan_coefficients(a: &EvenFunction) -> EvenFunction {
    let n = a.n();
    let scale = ratio(1, n as i64);
    ramanujan_combination(n, |d| a.at((n / d) as i64) * &scale)
}

/// `a(k) = Σ_{d|n} r(n/d) c_d(k)`.
pub fn ramanujan_reconstruct(r: &EvenFunction) -> EvenFunction {
    let n = r.n();
    ramanujan_combination(n, |d| r.at((n / d) as i64).clone())
}

/// `p(l) = Σ_{d|n} m(n/d) c_d(l)`, the discrete Fourier transform of an even
/// function written with Ramanujan sums.
pub fn dft_power_sums(m: &EvenFunction) -> EvenFunction {
    ramanujan_reconstruct(m)
}

fn geometric_inverse(d: u64) -> RationalFunctionQ {
    RationalFunctionQ::inv_one_minus_q_pow(d as usize)
}

/// The two generating-function identities for `a(k) = Σ_{d|(k,n)} e(d)`,
/// summed over `k = 1..n` and over `k = 0..n−1`.
#[derive(Clone, Debug)]
pub struct GfIdentities {
    pub report: IdentityReport,
    /// `Σ_{d|n} e(d) q^d / (1 − q^d)`
    pub from_one: RationalFunctionQ,
    /// `Σ_{d|n} e(d) / (1 − q^d)`
    pub from_zero: RationalFunctionQ,
}

/// Checks
/// `Σ_{k=1}^{n} a(k) q^k/(1−q^n) = Σ e(d) q^d/(1−q^d) = (1−q)^{-1} Σ e(d) q^d/[d]_q`
/// and
/// `Σ_{k=0}^{n−1} a(k) q^k/(1−q^n) = Σ e(d)/(1−q^d) = (1−q)^{-1} Σ e(d)/[d]_q`.
pub fn gf_power_series(a: &EvenFunction, e: &DivisorMap<i64>) -> Result<GfIdentities> {
    let n = e.n();
    if a.n() != n {
        return Err(Error::ConductorMismatch(a.n(), n));
    }
    let inv_n = geometric_inverse(n);
    let from_one_lhs = &RationalFunctionQ::from_poly(PolynomialQ::new(
        (0..=n).map(|k| if k == 0 { Rational::zero() } else { a.at(k as i64).clone() }).collect(),
    )) * &inv_n;
    let from_zero_lhs =
        &RationalFunctionQ::from_poly(PolynomialQ::new(a.values().to_vec())) * &inv_n;

    let mut from_one = RationalFunctionQ::zero();
    let mut from_zero = RationalFunctionQ::zero();
    let mut one_qint = RationalFunctionQ::zero();
    let mut zero_qint = RationalFunctionQ::zero();
    for (d, &v) in e.iter() {
        if v == 0 {
            continue;
        }
        let c = rat(v);
        let g = geometric_inverse(d).scale(&c);
        from_one = &from_one + &g.shift(d as usize);
        from_zero = &from_zero + &g;
        let qint = RationalFunctionQ::new(PolynomialQ::constant(c), PolynomialQ::q_integer(d as usize))?;
        one_qint = &one_qint + &qint.shift(d as usize);
        zero_qint = &zero_qint + &qint;
    }
    let one_qint = &one_qint * &geometric_inverse(1);
    let zero_qint = &zero_qint * &geometric_inverse(1);

    let mut report = IdentityReport::new("generating functions");
    report.compare("sum k=1..n vs e(d)q^d/(1-q^d)", "q", &from_one_lhs, &from_one);
    report.compare("e(d)q^d/(1-q^d) vs q-integer form", "q", &from_one, &one_qint);
    report.compare("sum k=0..n-1 vs e(d)/(1-q^d)", "q", &from_zero_lhs, &from_zero);
    report.compare("e(d)/(1-q^d) vs q-integer form", "q", &from_zero, &zero_qint);
    Ok(GfIdentities {
        report,
        from_one,
        from_zero,
    })
}

/// Checks that the exponent of `Φ_d` in the reduced `ζ_e` equals `m(n/d)`.
pub fn verify_cyclotomic_factorization(z: &ZetaProduct) -> IdentityReport {
    let n = z.n();
    let f = z.to_rational_function();
    let m = z.multiplicities();
    let mut report = IdentityReport::new("cyclotomic exponents");
    let mut degree = 0i64;
    for d in divisor_list(n) {
        let v = cyclotomic_valuation(&f, d).expect("nonzero");
        degree += v * crate::arith::euler_phi(d).expect("d >= 1") as i64;
        report.compare("exponent of Phi_d", format!("d={d}"), &rat(v), m.at((n / d) as i64));
    }
    // Every factor must be accounted for by the Φ_d with d | n.
    let total = f.num().degree().unwrap_or(0) as i64 - f.den().degree().unwrap_or(0) as i64;
    report.compare("degree", "total", &total, &degree);
    report
}

/// Named choices of `x_d` with a closed form for `z_d = Σ_{d'|d} μ(d/d') x_{d'}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairingPreset {
    /// `x_d = 1`; `z_d = [d = 1]`.
    Unit,
    /// `x_d = q^d`; `z_d = d·M(q, d)`.
    Necklace,
    /// `x_d = d q^d/(q^d − 1)`; `z_d = qΦ_d′(q)/Φ_d(q)`.
    LogDerivative,
    /// `x_d = d q^d/(q^d − 1)`; `z_d = Σ_{k=1}^{d} c_d(k) q^k/(q^d − 1)`.
    RamanujanForm,
}

impl PairingPreset {
    pub const ALL: [PairingPreset; 4] = [Self::Unit, Self::Necklace, Self::LogDerivative, Self::RamanujanForm];

    pub fn name(self) -> &'static str {
        match self {
            Self::Unit => "unit",
            Self::Necklace => "necklace",
            Self::LogDerivative => "log-derivative",
            Self::RamanujanForm => "ramanujan-form",
        }
    }

    pub fn x(self, n: u64) -> Result<DivisorMap<RationalFunctionQ>> {
        DivisorMap::from_fn(n, |d| match self {
            Self::Unit => RationalFunctionQ::one(),
            Self::Necklace => PolynomialQ::monomial(Rational::one(), d as usize).into(),
            Self::LogDerivative | Self::RamanujanForm => RationalFunctionQ::new(
                PolynomialQ::monomial(rat(d as i64), d as usize),
                PolynomialQ::q_pow_minus_one(d as usize),
            )
            .expect("nonzero denominator"),
        })
    }

    pub fn z(self, n: u64) -> Result<DivisorMap<RationalFunctionQ>> {
        let pairs = divisor_list(n)
            .into_iter()
            .map(|d| {
                let v = match self {
                    Self::Unit => RationalFunctionQ::constant(rat((d == 1) as i64)),
                    Self::Necklace => necklace(d)?.scale(&rat(d as i64)).into(),
                    Self::LogDerivative => log_derivative(&cyclotomic(d)?.into())?,
                    Self::RamanujanForm => ramanujan_log_form(d),
                };
                Ok((d, v))
            })
            .collect::<Result<Vec<_>>>()?;
        DivisorMap::new(n, pairs)
    }
}

/// `Σ_{d|n} m(n/d) z_d = Σ_{d|n} e(d) x_d` and
/// `Σ_{d|n} p(n/d) z_d = Σ_{d|n} (n/d) e(n/d) x_d`.
fn pairing_sides(
    z: &ZetaProduct,
    x: &DivisorMap<RationalFunctionQ>,
    zd: &DivisorMap<RationalFunctionQ>,
) -> [(RationalFunctionQ, RationalFunctionQ); 2] {
    let n = z.n();
    let m = z.multiplicities();
    let p = z.power_sums();
    let mut out: [(RationalFunctionQ, RationalFunctionQ); 2] = Default::default();
    for (d, zv) in zd.iter() {
        let k = (n / d) as i64;
        out[0].0 = &out[0].0 + &zv.scale(m.at(k));
        out[1].0 = &out[1].0 + &zv.scale(p.at(k));
    }
    for (d, xv) in x.iter() {
        out[0].1 = &out[0].1 + &xv.scale(&rat(*z.e().at(d)));
        let nd = n / d;
        out[1].1 = &out[1].1 + &xv.scale(&rat(nd as i64 * z.e().at(nd)));
    }
    out
}

impl Default for RationalFunctionQ {
    fn default() -> Self {
        Self::zero()
    }
}

/// Both pairing identities with `z` the inverse Möbius transform of `x`.
pub fn verify_mobius_pairing(z: &ZetaProduct, x: &DivisorMap<RationalFunctionQ>) -> Result<IdentityReport> {
    if x.n() != z.n() {
        return Err(Error::ConductorMismatch(z.n(), x.n()));
    }
    let zd = inverse_mobius_transform(x);
    let [(l1, r1), (l2, r2)] = pairing_sides(z, x, &zd);
    let mut report = IdentityReport::new("mobius pairing");
    report.compare("sum m(n/d) z_d = sum e(d) x_d", "q", &l1, &r1);
    report.compare("sum p(n/d) z_d = sum (n/d) e(n/d) x_d", "q", &l2, &r2);
    Ok(report)
}

/// Pairing identities for a preset, using the closed form of `z_d`, plus the
/// check that the closed form is the inverse Möbius transform of `x_d`.
pub fn verify_pairing_preset(z: &ZetaProduct, preset: PairingPreset) -> Result<IdentityReport> {
    let n = z.n();
    let x = preset.x(n)?;
    let closed = preset.z(n)?;
    let computed = inverse_mobius_transform(&x);
    let mut report = IdentityReport::new(format!("pairing preset {}", preset.name()));
    for (d, c) in closed.iter() {
        report.compare("closed form of z_d", format!("d={d}"), c, computed.at(d));
    }
    let [(l1, r1), (l2, r2)] = pairing_sides(z, &x, &closed);
    report.compare("m-side", "q", &l1, &r1);
    report.compare("p-side", "q", &l2, &r2);
    Ok(report)
}

/// The four `φ_s` identities at each integer `s`:
///
/// - `Σ m(n/d) φ_{1−s}(d) = Σ d e(d)/d^s`
/// - `(1/n) Σ p(n/d) φ_{1−s}(d) = Σ e(n/d)/d^s`
/// - `Σ m(n/d) φ_{−s}(d) = Σ e(d)/d^s`
/// - `Σ p(n/d) φ_{−s}(d) = Σ (n/d) e(n/d)/d^s`
pub fn verify_phi_s_identities(z: &ZetaProduct, s_values: &[i64]) -> IdentityReport {
    let n = z.n();
    let m = z.multiplicities();
    let p = z.power_sums();
    let e = |d: u64| rat(*z.e().at(d));
    let ds = divisor_list(n);
    let mut report = IdentityReport::new("phi_s identities");
    for &s in s_values {
        let sum = |f: &dyn Fn(u64) -> Rational| ds.iter().fold(Rational::zero(), |acc, &d| acc + f(d));
        let at = format!("s={s}");
        let m_at = |d: u64| m.at((n / d) as i64).clone();
        let p_at = |d: u64| p.at((n / d) as i64).clone();
        report.compare(
            "m with phi_{1-s}",
            &at,
            &sum(&|d| m_at(d) * phi_s_unchecked(d, 1 - s)),
            &sum(&|d| e(d) * rat(d as i64) * int_pow(d, -s)),
        );
        report.compare(
            "p with phi_{1-s}",
            &at,
            &(sum(&|d| p_at(d) * phi_s_unchecked(d, 1 - s)) * ratio(1, n as i64)),
            &sum(&|d| e(n / d) * int_pow(d, -s)),
        );
        report.compare(
            "m with phi_{-s}",
            &at,
            &sum(&|d| m_at(d) * phi_s_unchecked(d, -s)),
            &sum(&|d| e(d) * int_pow(d, -s)),
        );
        report.compare(
            "p with phi_{-s}",
            &at,
            &sum(&|d| p_at(d) * phi_s_unchecked(d, -s)),
            &sum(&|d| e(n / d) * rat((n / d) as i64) * int_pow(d, -s)),
        );
    }
    report
}

/// For `F(d) = F(d, n/d)`, checks `f_s(k) = Σ_{d|n} f′_{s+1}(n/d) c_d(k)` for
/// `k = 0..n−1`, where `f_s(k) = Σ_{d|(k,n)} F(d)/d^s` and
/// `f′_s(j) = Σ_{d′|(j,n)} F(n/d′)/(n/d′)^s`.
pub fn generalized_pair_check(f: &DivisorMap<Rational>, s: i64) -> IdentityReport {
    let n = f.n();
    let lhs = EvenFunction::divisor_sums(&f.map(|d, v| v * int_pow(d, -s)));
    let dual = EvenFunction::divisor_sums(&f.map(|d, _| {
        let nd = n / d;
        f.at(nd) * int_pow(nd, -(s + 1))
    }));
    let rhs = ramanujan_reconstruct(&dual);
    let mut report = IdentityReport::new("generalized Ramanujan pair");
    for k in 0..n as i64 {
        report.compare("f_s(k)", format!("s={s}, k={k}"), lhs.at(k), rhs.at(k));
    }
    report
}
