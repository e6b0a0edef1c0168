//! Number-theoretic kernel: divisors, classical arithmetic functions,
//! Ramanujan sums and Möbius transforms on divisor-indexed data.
//!
//! Throughout, `gcd(0, n) = n`, so index `0` behaves like index `n` in every
//! even-function formula.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Sub};

use num_integer::Integer;
use num_traits::Zero;

use crate::{rat, Error, Rational, Result};

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::NonPositive("n"));
    }
    Ok(divisor_list(n))
}

pub(crate) fn divisor_list(n: u64) -> Vec<u64> {
    debug_assert!(n > 0);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization by trial division, as `(p, exponent)` pairs.
pub fn factorize(mut k: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            let mut e = 0;
            while k.is_multiple_of(p) {
                k /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

/// `gcd(a, b)` with `gcd(0, n) = n`.
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `gcd(k, n)` for a signed index `k`.
pub fn gcd_index(k: i64, n: u64) -> u64 {
    gcd(k.unsigned_abs(), n)
}

/// Möbius function.
pub fn mobius(k: u64) -> Result<i64> {
    if k == 0 {
        return Err(Error::NonPositive("k"));
    }
    Ok(mobius_unchecked(k))
}

pub(crate) fn mobius_unchecked(k: u64) -> i64 {
    let f = factorize(k);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Euler's totient.
pub fn euler_phi(k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::NonPositive("k"));
    }
    Ok(factorize(k)
        .iter()
        .fold(k, |acc, &(p, _)| acc / p * (p - 1)))
}

/// Jordan-type sum `φ_s(n) = Σ_{d|n} μ(n/d) d^s` for any integer `s`.
pub fn phi_s(n: u64, s: i64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::NonPositive("n"));
    }
    Ok(phi_s_unchecked(n, s))
}

pub(crate) fn phi_s_unchecked(n: u64, s: i64) -> Rational {
    divisor_list(n)
        .into_iter()
        .map(|d| rat(mobius_unchecked(n / d)) * int_pow(d, s))
        .fold(Rational::zero(), |a, b| a + b)
}

/// `d^s` for a positive base and any integer exponent.
pub fn int_pow(d: u64, s: i64) -> Rational {
    let base = Rational::from_integer(d.into());
    num_traits::pow::Pow::pow(&base, s as i32)
}

/// Ramanujan sum `c_m(l)`, through `Σ_{d|(l,m)} d·μ(m/d)`.
pub fn ramanujan_sum(m: u64, l: i64) -> Result<i64> {
    if m == 0 {
        return Err(Error::NonPositive("m"));
    }
    Ok(ramanujan_unchecked(m, l))
}

pub(crate) fn ramanujan_unchecked(m: u64, l: i64) -> i64 {
    divisor_list(gcd_index(l, m))
        .into_iter()
        .map(|d| d as i64 * mobius_unchecked(m / d))
        .sum()
}

fn is_perfect_power(k: u64, r: u32) -> bool {
    k > 0 && factorize(k).iter().all(|&(_, e)| e % r == 0)
}

/// Largest `r`-th power dividing `k`.
fn largest_power_divisor(k: u64, r: u32) -> u64 {
    factorize(k)
        .iter()
        .map(|&(p, e)| p.pow(e / r * r))
        .product()
}

/// Values indexed exactly by the positive divisors of a conductor `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorMap<T> {
    n: u64,
    divisors: Vec<u64>,
    values: Vec<T>,
}

impl<T> DivisorMap<T> {
    /// Builds a map from `(divisor, value)` pairs. Every divisor of `n` must
    /// appear exactly once and no other key is accepted.
    pub fn new(n: u64, pairs: impl IntoIterator<Item = (u64, T)>) -> Result<Self> {
        let divisors = divisors(n)?;
        let mut slots: Vec<Option<T>> = divisors.iter().map(|_| None).collect();
        for (d, v) in pairs {
            let i = divisors
                .binary_search(&d)
                .map_err(|_| Error::DivisorKeys { n })?;
            if slots[i].replace(v).is_some() {
                return Err(Error::DivisorKeys { n });
            }
        }
        let values = slots
            .into_iter()
            .collect::<Option<Vec<T>>>()
            .ok_or(Error::DivisorKeys { n })?;
        Ok(Self {
            n,
            divisors,
            values,
        })
    }

    /// Builds a map by evaluating `f` at every divisor.
    pub fn from_fn(n: u64, mut f: impl FnMut(u64) -> T) -> Result<Self> {
        let divisors = divisors(n)?;
        let values = divisors.iter().map(|&d| f(d)).collect();
        Ok(Self {
            n,
            divisors,
            values,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Value at divisor `d`, or `None` if `d ∤ n`.
    pub fn get(&self, d: u64) -> Option<&T> {
        self.divisors
            .binary_search(&d)
            .ok()
            .map(|i| &self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &T)> + '_ {
        self.divisors.iter().copied().zip(self.values.iter())
    }

    pub fn map<U>(&self, mut f: impl FnMut(u64, &T) -> U) -> DivisorMap<U> {
        DivisorMap {
            n: self.n,
            divisors: self.divisors.clone(),
            values: self.iter().map(|(d, v)| f(d, v)).collect(),
        }
    }

    /// The map `d ↦ self(n/d)`.
    pub fn reversed(&self) -> Self
    where
        T: Clone,
    {
        let values = self.values.iter().rev().cloned().collect();
        Self {
            n: self.n,
            divisors: self.divisors.clone(),
            values,
        }
    }

    pub(crate) fn at(&self, d: u64) -> &T {
        self.get(d).expect("divisor of the conductor")
    }
}

/// Divisor summation `o(d) = Σ_{d'|d} e(d')`.
impl<T: fmt::Display> fmt::Display for DivisorMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (d, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}:{v}")?;
        }
        f.write_str("}")
    }
}

pub fn mobius_transform<T>(e: &DivisorMap<T>) -> DivisorMap<T>
where
    T: Clone + Zero + for<'a> Add<&'a T, Output = T>,
{
    e.map(|d, _| {
        e.iter()
            .filter(|&(dp, _)| d % dp == 0)
            .fold(T::zero(), |acc, (_, v)| acc + v)
    })
}

/// Inverse of [`mobius_transform`]: `z(d) = Σ_{d'|d} μ(d/d') x(d')`.
pub fn inverse_mobius_transform<T>(x: &DivisorMap<T>) -> DivisorMap<T>
where
    T: Clone + Zero + for<'a> Add<&'a T, Output = T> + for<'a> Sub<&'a T, Output = T>,
{
    x.map(|d, _| {
        x.iter()
            .filter(|&(dp, _)| d % dp == 0)
            .fold(T::zero(), |acc, (dp, v)| match mobius_unchecked(d / dp) {
                1 => acc + v,
                -1 => acc - v,
                _ => acc,
            })
    })
}

/// The arithmetic functions used by the Dirichlet-series identities. Each is
/// evaluated by a definitional loop, with no multiplicativity shortcuts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithmeticFunction {
    Mobius,
    AbsMobius,
    EulerPhi,
    /// `φ^{(−1)}(k) = Σ_{d|k} d·μ(d)`.
    PhiInv,
    /// `(−1)^Ω(k)`.
    Liouville,
    /// Dedekind `ψ(k) = Σ_{d|k} |μ(d)|·k/d`.
    DedekindPsi,
    /// Klee's function: `#{1 ≤ j ≤ k : the largest r-th power dividing (j,k) is 1}`.
    Klee(u32),
    /// `Σ d` over `d | k` with `k/d` an `r`-th power.
    Rho(u32),
    /// `Σ d` over `d | k` with `d` an `r`-th power.
    RhoPrime(u32),
    /// `#{1 ≤ j ≤ k : (j,k) is a perfect square}`.
    Beta,
    LargestOdd,
    Sigma,
}

impl ArithmeticFunction {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Mobius => "mobius",
            Self::AbsMobius => "abs_mobius",
            Self::EulerPhi => "euler_phi",
            Self::PhiInv => "phi_inv",
            Self::Liouville => "liouville",
            Self::DedekindPsi => "dedekind_psi",
            Self::Klee(_) => "klee",
            Self::Rho(_) => "rho",
            Self::RhoPrime(_) => "rho_prime",
            Self::Beta => "beta",
            Self::LargestOdd => "largest_odd",
            Self::Sigma => "sigma",
        }
    }

    pub fn params(&self) -> Vec<u64> {
        match *self {
            Self::Klee(r) | Self::Rho(r) | Self::RhoPrime(r) => vec![r as u64],
            _ => Vec::new(),
        }
    }

    /// Value at `k ≥ 1`; index `0` lies outside the domain and yields `0`.
    pub fn eval(&self, k: u64) -> i64 {
        if k == 0 {
            return 0;
        }
        let divs = || divisor_list(k).into_iter();
        match *self {
            Self::Mobius => mobius_unchecked(k),
            Self::AbsMobius => mobius_unchecked(k).abs(),
            Self::EulerPhi => (1..=k).filter(|&j| gcd(j, k) == 1).count() as i64,
            Self::PhiInv => divs().map(|d| d as i64 * mobius_unchecked(d)).sum(),
            Self::Liouville => {
                let omega: u32 = factorize(k).iter().map(|&(_, e)| e).sum();
                if omega.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
            Self::DedekindPsi => divs()
                .map(|d| mobius_unchecked(d).abs() * (k / d) as i64)
                .sum(),
            Self::Klee(r) => (1..=k)
                .filter(|&j| largest_power_divisor(gcd(j, k), r) == 1)
                .count() as i64,
            Self::Rho(r) => divs()
                .filter(|&d| is_perfect_power(k / d, r))
                .map(|d| d as i64)
                .sum(),
            Self::RhoPrime(r) => divs()
                .filter(|&d| is_perfect_power(d, r))
                .map(|d| d as i64)
                .sum(),
            Self::Beta => (1..=k)
                .filter(|&j| is_perfect_power(gcd(j, k), 2))
                .count() as i64,
            Self::LargestOdd => {
                let mut c = k;
                while c.is_multiple_of(2) {
                    c /= 2;
                }
                c as i64
            }
            Self::Sigma => divs().map(|d| d as i64).sum(),
        }
    }

    pub fn eval_rational(&self, k: u64) -> Rational {
        rat(self.eval(k))
    }
}

impl core::fmt::Display for ArithmeticFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self.params().first() {
            Some(r) => write!(f, "{}({})", self.name(), r),
            None => f.write_str(self.name()),
        }
    }
}

/// Looks up a named arithmetic function. `klee`, `rho` and `rho_prime` take
/// one parameter `r ≥ 1`; the others take none.
pub fn named_function(name: &str, params: &[u64]) -> Result<ArithmeticFunction> {
    use ArithmeticFunction as F;
    let plain = |f: F| {
        if params.is_empty() {
            Ok(f)
        } else {
            Err(Error::FunctionParams {
                name: name.to_string(),
                expected: 0,
            })
        }
    };
    let with_r = |make: fn(u32) -> F| match params {
        [r] if *r >= 1 => Ok(make(*r as u32)),
        [0] => Err(Error::NonPositive("r")),
        _ => Err(Error::FunctionParams {
            name: name.to_string(),
            expected: 1,
        }),
    };
    match name {
        "mobius" => plain(F::Mobius),
        "abs_mobius" => plain(F::AbsMobius),
        "euler_phi" => plain(F::EulerPhi),
        "phi_inv" => plain(F::PhiInv),
        "liouville" => plain(F::Liouville),
        "dedekind_psi" => plain(F::DedekindPsi),
        "beta" => plain(F::Beta),
        "largest_odd" => plain(F::LargestOdd),
        "sigma" => plain(F::Sigma),
        "klee" => with_r(F::Klee),
        "rho" => with_r(F::Rho),
        "rho_prime" => with_r(F::RhoPrime),
        _ => Err(Error::UnknownFunction(String::from(name))),
    }
}
