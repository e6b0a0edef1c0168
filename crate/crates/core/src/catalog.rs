//! Printed generating-function lines for the simple, parabolic and
//! exceptional unimodal singularities, and their consistency checks.
//!
//! Each line lists the coefficients `c_d` of `Σ c_d/(1 − q^d)`: the m-line
//! expands `Σ_{k<n} m(k) q^k/(1 − q^n)`, the p-line the same sum over
//! `p(k)`. Lines are stored verbatim, so a p-line may carry a key that
//! does not divide `n`.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::weights::{m_coefficients_from_weights, p_coefficients_from_weights, WeightSystem};
use crate::zetaprod::{dft_power_sums, verify_cyclotomic_factorization};
use crate::{rat, DivisorMap, Error, IdentityReport, PolynomialQ, Rational, RationalFunctionQ, Result, ZetaProduct};

/// Sparse `d ↦ c_d`.
pub type Line = BTreeMap<u64, i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    SimpleParabolic,
    ExceptionalUnimodal,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::SimpleParabolic => "simple_parabolic",
            Source::ExceptionalUnimodal => "exceptional_unimodal",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "simple_parabolic" => Some(Source::SimpleParabolic),
            "exceptional_unimodal" => Some(Source::ExceptionalUnimodal),
            _ => None,
        }
    }
}

/// Which entries have a Coxeter-exponent check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    A(u64),
    D(u64),
    E6,
    E7,
    E8,
    Other,
}

impl Kind {
    /// Coxeter exponents with multiplicity, `None` outside ADE.
    pub fn coxeter_exponents(self) -> Option<Vec<u64>> {
        Some(match self {
            Kind::A(l) => (1..=l).collect(),
            Kind::D(l) => {
                let mut v: Vec<u64> = (1..l).map(|i| 2 * i - 1).collect();
                v.push(l - 1);
                v.sort_unstable();
                v
            }
            Kind::E6 => [1, 4, 5, 7, 8, 11].to_vec(),
            Kind::E7 => [1, 5, 7, 9, 11, 13, 17].to_vec(),
            Kind::E8 => [1, 7, 11, 13, 17, 19, 23, 29].to_vec(),
            Kind::Other => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: Kind,
    pub n: u64,
    pub m_line: Line,
    pub p_line: Line,
    pub source: Source,
    pub note: Option<String>,
}

fn line(terms: &[(u64, i64)]) -> Line {
    let mut out = Line::new();
    for &(d, c) in terms {
        *out.entry(d).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn entry(name: &str, kind: Kind, n: u64, m: &[(u64, i64)], p: &[(u64, i64)], source: Source) -> CatalogEntry {
    CatalogEntry {
        name: name.to_owned(),
        kind,
        n,
        m_line: line(m),
        p_line: line(p),
        source,
        note: None,
    }
}

/// `A_l`, `n = l + 1`.
pub fn a_series(l: u64) -> Result<CatalogEntry> {
    if l == 0 {
        return Err(Error::NonPositive("l"));
    }
    let n = l + 1;
    Ok(entry(
        &format!("A_{l}"),
        Kind::A(l),
        n,
        &[(1, 1), (n, -1)],
        &[(1, -1), (n, n as i64)],
        Source::SimpleParabolic,
    ))
}

/// `D_l`, `n = 2l − 2`, for `l ≥ 3`.
pub fn d_series(l: u64) -> Result<CatalogEntry> {
    if l < 3 {
        return Err(Error::UnknownEntry(format!("D_{l}")));
    }
    let n = 2 * l - 2;
    let h = (n / 2) as i64;
    Ok(entry(
        &format!("D_{l}"),
        Kind::D(l),
        n,
        &[(1, 1), (2, -1), (n / 2, 1), (n, -1)],
        &[(1, -1), (2, 2), (n / 2, -h), (n, n as i64)],
        Source::SimpleParabolic,
    ))
}

/// The fixed entries in printed order.
pub fn fixed_entries() -> Vec<CatalogEntry> {
    use Source::{ExceptionalUnimodal as X, SimpleParabolic as S};
    let mut v = alloc::vec![
        entry("E6", Kind::E6, 12, &[(1, 1), (2, -1), (3, -1), (4, 1), (6, 1), (12, -1)], &[(1, -1), (2, 2), (3, 3), (4, -4), (6, -6), (12, 12)], S),
        entry("E7", Kind::E7, 18, &[(1, 1), (2, -1), (3, -1), (6, 1), (9, 1), (18, -1)], &[(1, -1), (2, 2), (3, 3), (6, -6), (9, -9), (18, 18)], S),
        entry(
            "E8",
            Kind::E8,
            30,
            &[(1, 1), (2, -1), (3, -1), (5, -1), (6, 1), (10, 1), (15, 1), (30, -1)],
            &[(1, -1), (2, 2), (3, 3), (5, 5), (6, -6), (10, -10), (15, -15), (30, 30)],
            S,
        ),
        entry("P8", Kind::Other, 3, &[(1, 3), (3, -1)], &[(1, -1), (3, 9)], S),
        entry("X9", Kind::Other, 4, &[(1, 2), (2, 1), (4, -1)], &[(1, -1), (2, -2), (4, 8)], S),
        entry("J10", Kind::Other, 6, &[(1, 1), (2, 1), (3, 1), (6, -1)], &[(1, -1), (2, 2), (4, 3), (6, 6)], S),
        entry("U_12", Kind::Other, 12, &[(1, 1), (3, 1), (4, -1), (12, -1)], &[(1, -1), (3, -3), (4, 4), (12, 12)], X),
        entry("S_12", Kind::Other, 13, &[(1, 1), (13, -1)], &[(1, -1), (13, 13)], X),
        entry("S_11", Kind::Other, 16, &[(1, 1), (2, -1), (4, 1), (16, -1)], &[(1, -1), (4, 4), (8, -8), (16, 16)], X),
        entry("Q_12", Kind::Other, 15, &[(1, 1), (3, -1), (5, 1), (15, -1)], &[(1, -1), (3, 3), (5, -5), (15, 15)], X),
        entry("Q_11", Kind::Other, 18, &[(1, 1), (2, -1), (6, 1), (18, -1)], &[(1, -1), (3, 3), (9, -9), (18, 18)], X),
        entry(
            "Q_10",
            Kind::Other,
            24,
            &[(1, 1), (2, -1), (3, -1), (6, 1), (8, 1), (24, -1)],
            &[(1, -1), (3, 3), (4, 4), (8, -8), (12, -12), (24, 24)],
            X,
        ),
        entry("W_13", Kind::Other, 16, &[(1, 1), (4, -1), (8, 1), (16, -1)], &[(1, -1), (2, 2), (4, -4), (16, 16)], X),
        entry(
            "W_12",
            Kind::Other,
            20,
            &[(1, 1), (2, -1), (4, 1), (5, -1), (10, 1), (20, -1)],
            &[(1, -1), (2, 2), (4, -4), (5, 5), (10, -10), (20, 20)],
            X,
        ),
        entry("Z_13", Kind::Other, 18, &[(1, 1), (3, -1), (9, 1), (18, -1)], &[(1, -1), (2, 2), (6, -6), (18, 18)], X),
        entry("Z_12", Kind::Other, 22, &[(1, 1), (2, -1), (11, 1), (22, -1)], &[(1, -1), (2, 2), (11, -11), (22, 22)], X),
        entry(
            "Z_11",
            Kind::Other,
            30,
            &[(1, 1), (2, -1), (3, -1), (6, 1), (15, 1), (30, -1)],
            &[(1, -1), (2, 2), (5, 5), (10, -10), (15, -15), (30, 30)],
            X,
        ),
        entry(
            "E_14",
            Kind::Other,
            24,
            &[(1, 1), (3, -1), (4, -1), (8, 1), (12, 1), (24, -1)],
            &[(1, -1), (2, 2), (3, 3), (6, -6), (8, -8), (24, 24)],
            X,
        ),
        entry(
            "E_13",
            Kind::Other,
            30,
            &[(1, 1), (2, -1), (5, -1), (10, 1), (15, 1), (30, -1)],
            &[(1, -1), (2, 2), (3, 3), (6, -6), (15, -15), (30, 30)],
            X,
        ),
        entry(
            "E_12",
            Kind::Other,
            42,
            &[(1, 1), (2, -1), (3, -1), (6, 1), (7, -1), (14, 1), (21, 1), (42, -1)],
            &[(1, -1), (2, 2), (3, 3), (6, -6), (7, 7), (14, -14), (21, -21), (42, 42)],
            X,
        ),
    ];
    for e in &mut v {
        if e.name == "S_12" {
            e.note = Some("the p-line numerator at d=13 is printed as the symbol n; stored as 13".to_string());
        }
    }
    v
}

/// Fixed entries followed by `A_1..=A_lmax` and `D_3..=D_lmax`.
pub fn catalog(lmax: u64) -> Vec<CatalogEntry> {
    let mut v = fixed_entries();
    v.extend((1..=lmax).filter_map(|l| a_series(l).ok()));
    v.extend((3..=lmax).filter_map(|l| d_series(l).ok()));
    v
}

fn normalize(name: &str) -> String {
    name.chars()
        .filter(|c| !matches!(c, '_' | '-' | '~' | ' '))
        .flat_map(char::to_lowercase)
        .collect()
}

/// Looks up an entry by name. Family members are written `A_4`, `A4`,
/// or `A_l` with `param = Some(4)`; `tilde-E6/7/8` alias `P8`, `X9`, `J10`.
pub fn get(name: &str, param: Option<u64>) -> Result<CatalogEntry> {
    let key = normalize(name);
    let unknown = || Error::UnknownEntry(name.to_owned());
    let alias = match key.as_str() {
        "tildee6" | "e6tilde" => "p8",
        "tildee7" | "e7tilde" => "x9",
        "tildee8" | "e8tilde" => "j10",
        k => k,
    };
    if let Some(e) = fixed_entries().into_iter().find(|e| normalize(&e.name) == alias) {
        return Ok(e);
    }
    let (family, rest) = alias.split_at(1.min(alias.len()));
    let l = match (rest, param) {
        ("l" | "", Some(l)) => l,
        (digits, _) => digits.parse::<u64>().map_err(|_| unknown())?,
    };
    match family {
        "a" => a_series(l),
        "d" => d_series(l),
        _ => Err(unknown()),
    }
}

fn term(c: i64, d: u64) -> String {
    format!("{c}/(1-q^{d})")
}

impl CatalogEntry {
    /// `e(d) = c_{n/d}` from the m-line.
    pub fn zeta_product(&self) -> Result<ZetaProduct> {
        let n = self.n;
        if self.m_line.keys().any(|&d| !n.is_multiple_of(d)) {
            return Err(Error::DivisorKeys { n });
        }
        ZetaProduct::new(n, crate::arith::divisors(n)?.into_iter().map(|d| (d, *self.m_line.get(&(n / d)).unwrap_or(&0))))
    }

    /// The p-line implied by the m-line: `d ↦ d e(d)`.
    pub fn implied_p_line(&self) -> Result<Line> {
        let z = self.zeta_product()?;
        let mut out = Line::new();
        for (d, &e) in z.e().iter() {
            if e != 0 {
                out.insert(d, d as i64 * e);
            }
        }
        Ok(out)
    }

    pub fn m_divisor_map(&self) -> Result<DivisorMap<Rational>> {
        let n = self.n;
        if self.m_line.keys().any(|&d| !n.is_multiple_of(d)) {
            return Err(Error::DivisorKeys { n });
        }
        DivisorMap::from_fn(n, |d| rat(*self.m_line.get(&d).unwrap_or(&0)))
    }

    pub fn flag_id(&self) -> String {
        format!("catalog-{}", self.name.replace('_', ""))
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |f: &mut fmt::Formatter<'_>, l: &Line| -> fmt::Result {
            for (i, (&d, &c)) in l.iter().enumerate() {
                if i > 0 {
                    f.write_str(if c < 0 { " - " } else { " + " })?;
                    write!(f, "{}", term(c.abs(), d))?;
                } else {
                    write!(f, "{}", term(c, d))?;
                }
            }
            Ok(())
        };
        writeln!(f, "{}, n={}", self.name, self.n)?;
        f.write_str("  m: ")?;
        render(f, &self.m_line)?;
        f.write_str("\n  p: ")?;
        render(f, &self.p_line)?;
        if let Some(note) = &self.note {
            write!(f, "\n  note: {note}")?;
        }
        Ok(())
    }
}

fn one_minus_sum(l: &BTreeMap<u64, Rational>) -> RationalFunctionQ {
    l.iter().fold(RationalFunctionQ::zero(), |acc, (&d, c)| {
        &acc + &RationalFunctionQ::inv_one_minus_q_pow(d as usize).scale(c)
    })
}

fn over_one_minus_q_n(values: &[Rational], n: u64) -> RationalFunctionQ {
    &RationalFunctionQ::from_poly(PolynomialQ::new(values.to_vec())) * &RationalFunctionQ::inv_one_minus_q_pow(n as usize)
}

/// Checks an entry against the identities its lines encode. A p-line that
/// disagrees with the one implied by the m-line is flagged, not failed.
pub fn verify_entry(entry: &CatalogEntry) -> IdentityReport {
    let mut report = IdentityReport::new(format!("catalog {}", entry.name));
    let z = match entry.zeta_product() {
        Ok(z) => z,
        Err(_) => {
            let bad: Vec<u64> = entry.m_line.keys().copied().filter(|d| !entry.n.is_multiple_of(*d)).collect();
            report.fail("m-line keys divide n", format!("n={}", entry.n), format!("{bad:?}"), "divisors of n");
            return report;
        }
    };
    report.pass("m-line keys divide n");

    let m = z.multiplicities();
    let p = z.power_sums();
    let m_line: BTreeMap<u64, Rational> = entry.m_line.iter().map(|(&d, &c)| (d, rat(c))).collect();
    report.compare("m-line generating function", "q", &over_one_minus_q_n(m.values(), entry.n), &one_minus_sum(&m_line));
    report.compare("p = Fourier transform of m", "k", &p, &dft_power_sums(&m));
    report.merge(verify_cyclotomic_factorization(&z));

    let implied = entry.implied_p_line().expect("m-line keys checked");
    let implied_q: BTreeMap<u64, Rational> = implied.iter().map(|(&d, &c)| (d, rat(c))).collect();
    report.compare("implied p-line generating function", "q", &over_one_minus_q_n(p.values(), entry.n), &one_minus_sum(&implied_q));

    if implied == entry.p_line {
        report.pass("p-line = d e(d)");
    } else {
        let mut parts = Vec::new();
        let keys: alloc::collections::BTreeSet<u64> = implied.keys().chain(entry.p_line.keys()).copied().collect();
        for d in keys {
            let (s, i) = (*entry.p_line.get(&d).unwrap_or(&0), *implied.get(&d).unwrap_or(&0));
            if s != i {
                let mut msg = format!("stored {} vs implied {}", term(s, d), term(i, d));
                if !entry.n.is_multiple_of(d) {
                    msg.push_str(&format!(" ({d} does not divide {})", entry.n));
                }
                parts.push(msg);
            }
        }
        report.flag(entry.flag_id(), format!("{}: p-line inconsistent with m-line: {}", entry.name, parts.join("; ")));
    }

    if let Some(exps) = entry.kind.coxeter_exponents() {
        let mut coeffs = alloc::vec![0i64; entry.n as usize];
        for j in exps {
            coeffs[j as usize] += 1;
        }
        let expected = PolynomialQ::from_i64(&coeffs);
        report.compare("sum m(k) q^k = Coxeter exponents", "q", &PolynomialQ::new(m.values().to_vec()), &expected);
    }
    report
}

/// Weight systems whose generating functions must reproduce catalog lines.
pub const WEIGHT_CROSS_CHECKS: [(&str, [u64; 4]); 3] = [("P8", [1, 1, 1, 3]), ("E8", [15, 10, 6, 30]), ("Q_10", [6, 8, 9, 24])];

/// Compares catalog lines with the weight-system formulas.
pub fn verify_weight_cross_checks() -> Result<IdentityReport> {
    let mut report = IdentityReport::new("catalog vs weights");
    for (name, [a, b, c, n]) in WEIGHT_CROSS_CHECKS {
        let entry = get(name, None)?;
        let w = WeightSystem::new(a, b, c, n)?;
        let mc = m_coefficients_from_weights(&w)?;
        report.compare(format!("{name} m-line"), w, &mc, &entry.m_divisor_map()?);
        if entry.implied_p_line()? == entry.p_line {
            let pc = p_coefficients_from_weights(&w)?;
            let stored = DivisorMap::from_fn(n, |d| rat(*entry.p_line.get(&d).unwrap_or(&0)))?;
            report.compare(format!("{name} p-line"), w, &pc, &stored);
        }
    }
    Ok(report)
}

/// Every entry of [`catalog`] plus the weight cross-checks.
pub fn verify_all(lmax: u64) -> IdentityReport {
    let mut report = IdentityReport::new(format!("catalog (families up to l={lmax})"));
    for e in catalog(lmax) {
        report.merge(verify_entry(&e));
    }
    match verify_weight_cross_checks() {
        Ok(r) => report.merge(r),
        Err(err) => report.fail("weight cross-checks", "", err, "ok"),
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPair {
    pub name: String,
    pub transform: ZetaProduct,
    pub dual: ZetaProduct,
    /// Entries whose e-vector equals the Saito transform.
    pub transform_matches: Vec<String>,
    /// Entries whose e-vector equals the Saito dual.
    pub dual_matches: Vec<String>,
    pub involutive: bool,
}

/// Saito transform and dual of every entry, matched against the catalog by
/// e-vector.
pub fn saito_dual_pairs(entries: &[CatalogEntry]) -> Vec<DualPair> {
    let zs: Vec<(String, ZetaProduct)> = entries
        .iter()
        .filter_map(|e| e.zeta_product().ok().map(|z| (e.name.clone(), z)))
        .collect();
    zs.iter()
        .map(|(name, z)| {
            let transform = z.saito_transform();
            let dual = z.saito_dual();
            let matches = |t: &ZetaProduct| zs.iter().filter(|(_, w)| w == t).map(|(n, _)| n.clone()).collect();
            DualPair {
                name: name.clone(),
                transform_matches: matches(&transform),
                dual_matches: matches(&dual),
                involutive: transform.saito_transform() == *z && dual.saito_dual() == *z,
                transform,
                dual,
            }
        })
        .collect()
}
