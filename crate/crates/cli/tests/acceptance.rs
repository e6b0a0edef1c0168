//! Acceptance criteria 1–12. Each test prints one `PASS`/`FAIL` line.
//!
//! Criteria 5, 7, 8 and 12 fail as stated: the printed formulas they test are
//! wrong, or the expected flag count does not match the flags the checks
//! legitimately raise. Those tests assert the failure together with the passing
//! corrected variant, so a regression in either direction shows up.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use cyclozeta::apostol::verify_apostol_sums;
use cyclozeta::arith::{divisors, gcd, named_function};
use cyclozeta::catalog::{self, CatalogEntry, Kind};
use cyclozeta::dirichlet::{example_identity_with, example_takes_r, verify_g_phi_identities, verify_g_convolution, DirichletSeries};
use cyclozeta::etaprod::eta_log_derivative;
use cyclozeta::exactpoly::{cyclotomic, PolynomialQ};
use cyclozeta::weights::{
    char_poly_from_seifert, m_gf_from_weights, p_gf_from_weights, partial_fractions, seifert_zeta_product, spectral_gf,
    SeifertData, WeightSystem,
};
use cyclozeta::zetaprod::{
    dft_power_sums, ramanujan_coefficients, ramanujan_reconstruct, verify_cyclotomic_factorization, verify_pairing_preset,
    verify_phi_s_identities, PairingPreset,
};
use cyclozeta::{rat, ratio, DivisorMap, EvenFunction, IdentityReport, Rational, Reading, Status, ZetaProduct};
use cyclozeta_cli::suite::random_zeta;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

fn rng(criterion: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(42 + criterion);
    r.set_stream(stream);
    r
}

fn report_line(id: &str, ok: bool, what: &str, detail: &str) -> bool {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("{tag} {id}: {what} ({detail})");
    ok
}

fn summary(reports: &[IdentityReport]) -> (usize, Option<String>) {
    let checks = reports.iter().map(|r| r.checks.len()).sum();
    let first = reports.iter().find(|r| !r.passed()).map(|r| r.to_string());
    (checks, first)
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

// Integer polynomial oracle, lowest degree first.
fn ipoly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// Exact division by a monic divisor; panics on a nonzero remainder.
fn ipoly_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    assert_eq!(b[db], 1);
    let mut q = vec![0; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db];
        q[i] = c;
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= c * y;
        }
    }
    assert!(rem.iter().all(|&c| c == 0));
    q
}

fn q_pow_minus_one(d: usize) -> Vec<i64> {
    let mut v = vec![0; d + 1];
    v[0] = -1;
    v[d] = 1;
    v
}

fn to_ints(p: &PolynomialQ) -> Vec<i64> {
    p.coeffs().iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()
}

#[test]
fn c01_cyclotomic_identities() {
    let start = Instant::now();
    // Φ_n by the oracle recursion Φ_n = (q^n − 1) / ∏_{d|n, d<n} Φ_d.
    let mut oracle: Vec<Vec<i64>> = vec![vec![]];
    let mut failures = Vec::new();
    for n in 1..=60usize {
        let mut phi = q_pow_minus_one(n);
        for d in 1..n {
            if n % d == 0 {
                phi = ipoly_div(&phi, &oracle[d]);
            }
        }
        oracle.push(phi);
        let lib = to_ints(&cyclotomic(n as u64).unwrap());
        if lib != oracle[n] {
            failures.push(format!("Phi_{n}"));
        }
        let product = divisors(n as u64).unwrap().iter().fold(vec![1], |acc, &d| ipoly_mul(&acc, &to_ints(&cyclotomic(d).unwrap())));
        if product != q_pow_minus_one(n) {
            failures.push(format!("prod Phi_d = q^{n}-1"));
        }
        // Φ_n = ∏ (q^d − 1)^{μ(n/d)}: numerator over denominator.
        let (mut num, mut den) = (vec![1], vec![1]);
        for d in divisors(n as u64).unwrap() {
            match cyclozeta::arith::mobius(n as u64 / d).unwrap() {
                1 => num = ipoly_mul(&num, &q_pow_minus_one(d as usize)),
                -1 => den = ipoly_mul(&den, &q_pow_minus_one(d as usize)),
                _ => {}
            }
        }
        if ipoly_mul(&lib, &den) != num {
            failures.push(format!("Mobius product n={n}"));
        }
    }
    let t = start.elapsed();
    let ok = failures.is_empty() && t < Duration::from_secs(10);
    report_line("C1", ok, "cyclotomic product and Mobius formula for n <= 60", &format!("{} failures, {}", failures.len(), secs(t)));
    assert!(ok, "{failures:?}");
}

// m(k): the root e^{2πik/n} lies on q^d − 1 iff n/(k,n) divides d.
fn oracle_m(z: &ZetaProduct, k: u64) -> i64 {
    let n = z.n();
    let order = n / gcd(k, n);
    z.e().iter().filter(|(d, _)| d % order == 0).map(|(_, &v)| v).sum()
}

// p(k): the k-th powers of the d-th roots of unity sum to d if d | k, else 0.
fn oracle_p(z: &ZetaProduct, k: u64) -> i64 {
    z.e().iter().filter(|(d, _)| k.is_multiple_of(*d)).map(|(d, &v)| d as i64 * v).sum()
}

#[test]
fn c02_multiplicities_and_power_sums() {
    let start = Instant::now();
    let reports: Vec<(IdentityReport, usize)> = (1..=60u64)
        .into_par_iter()
        .map(|n| {
            let mut rng = rng(2, n);
            let mut report = IdentityReport::new(format!("n={n}"));
            let mut oracle_bad = 0;
            for t in 0..100 {
                let z = random_zeta(&mut rng, n);
                report.merge(verify_cyclotomic_factorization(&z));
                let m = z.multiplicities();
                let p = z.power_sums();
                report.compare("power sums = dft(multiplicities)", format!("trial {t}"), &p, &dft_power_sums(&m));
                for k in 0..n {
                    if *m.at(k as i64) != rat(oracle_m(&z, k)) || *p.at(k as i64) != rat(oracle_p(&z, k)) {
                        oracle_bad += 1;
                    }
                }
            }
            (report, oracle_bad)
        })
        .collect();
    let t = start.elapsed();
    let oracle_bad: usize = reports.iter().map(|r| r.1).sum();
    let reports: Vec<IdentityReport> = reports.into_iter().map(|r| r.0).collect();
    let (checks, first) = summary(&reports);
    let ok = first.is_none() && oracle_bad == 0;
    report_line(
        "C2",
        ok,
        "cyclotomic exponents = multiplicities, p = dft(m), 100 e-vectors per n <= 60",
        &format!("{checks} checks, {oracle_bad} oracle mismatches, {}", secs(t)),
    );
    assert!(ok, "{first:?}");
}

#[test]
fn c03_fourier_ramanujan_round_trip() {
    let start = Instant::now();
    let bad: Vec<String> = (1..=60u64)
        .into_par_iter()
        .flat_map_iter(|n| {
            let mut rng = rng(3, n);
            (0..50)
                .filter_map(|t| {
                    let g = DivisorMap::from_fn(n, |_| ratio(rng.gen_range(-20..=20), rng.gen_range(1..=6))).unwrap();
                    let a = EvenFunction::from_divisor_values(&g);
                    (ramanujan_reconstruct(&ramanujan_coefficients(&a)) != a).then(|| format!("n={n} trial {t}"))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let ok = bad.is_empty();
    report_line("C3", ok, "Fourier-Ramanujan round trip, 50 even functions per n <= 60", &format!("{} mismatches, {}", bad.len(), secs(start.elapsed())));
    assert!(ok, "{bad:?}");
}

#[test]
fn c04_tensor_powers() {
    let report = cyclozeta_cli::suite::tensor_power_report(4, 3);
    // Degree bookkeeping as an independent sanity check: deg = d · d^{k−1}.
    let degree_ok = (1..=4usize).all(|d| {
        let base = PolynomialQ::q_pow_minus_one(d);
        let sq = cyclozeta::exactpoly::tensor_product(&base, &base).unwrap();
        sq.degree() == Some(d * d)
    });
    let ok = report.passed() && degree_ok;
    report_line("C4", ok, "(q^d-1)^{tensor k} = (q^d-1)^{d^(k-1)}, d <= 4, k <= 3", &format!("{} checks", report.checks.len()));
    assert!(ok, "{report}");
}

fn apostol_sweep(reading: Reading) -> Vec<IdentityReport> {
    let cases: Vec<(u64, u32)> = [6u64, 12].iter().flat_map(|&n| (0..=4u32).map(move |r| (n, r))).collect();
    cases
        .into_par_iter()
        .map(|(n, r)| {
            let mut rng = rng(5, n * 10 + r as u64);
            let mut report = IdentityReport::new(format!("n={n} r={r}"));
            for _ in 0..10 {
                let z = random_zeta(&mut rng, n);
                for (b, c) in [(1, 0), (2, 3)] {
                    report.merge(verify_apostol_sums(&z, b, c, r, reading).unwrap());
                }
            }
            report
        })
        .collect()
}

#[test]
fn c05_weighted_geometric_sums() {
    let start = Instant::now();
    let printed = apostol_sweep(Reading::Printed);
    let t = start.elapsed();
    let corrected = apostol_sweep(Reading::Corrected);
    let (checks, first) = summary(&printed);
    let ok = first.is_none() && t < Duration::from_secs(60);
    report_line(
        "C5",
        ok,
        "all three weighted-sum identities as printed, n in {6,12}, r <= 4",
        &format!("{checks} checks, {}; first failure: {}", secs(t), first.as_deref().unwrap_or("none").lines().next().unwrap_or("")),
    );
    let (cchecks, cfirst) = summary(&corrected);
    let corrected_ok = cfirst.is_none() && corrected.iter().all(|r| r.flags.iter().any(|f| f.id == "apostol-alternating-sign"));
    println!("     corrected (+E_r in the alternating form): {} ({cchecks} checks)", if corrected_ok { "pass" } else { "fail" });
    // The printed alternating form has the wrong sign; only the corrected one holds.
    assert!(!ok);
    assert!(corrected_ok, "{cfirst:?}");
    let first = first.unwrap();
    assert!(first.contains("alternating") || first.contains("(-q)"), "{first}");
}

#[test]
fn c06_pairings() {
    let start = Instant::now();
    let cases: Vec<(u64, PairingPreset)> = [6u64, 12, 30].iter().flat_map(|&n| PairingPreset::ALL.map(|p| (n, p))).collect();
    let reports: Vec<IdentityReport> = cases
        .into_par_iter()
        .enumerate()
        .map(|(i, (n, preset))| {
            let mut rng = rng(6, i as u64);
            let mut report = IdentityReport::new(format!("{} n={n}", preset.name()));
            for _ in 0..20 {
                let z = random_zeta(&mut rng, n);
                report.merge(verify_pairing_preset(&z, preset).unwrap());
                if preset == PairingPreset::Unit {
                    report.merge(verify_phi_s_identities(&z, &[-2, -1, 0, 1, 2, 3]));
                }
            }
            report
        })
        .collect();
    let (checks, first) = summary(&reports);
    let ok = first.is_none();
    report_line("C6", ok, "phi_s points, necklace, log-derivative and Ramanujan-form pairings, n in {6,12,30}", &format!("{checks} checks, {}", secs(start.elapsed())));
    assert!(ok, "{first:?}");
}

fn example_sweep(reading: Reading) -> Vec<IdentityReport> {
    let mut cases = Vec::new();
    for index in 1..=12u32 {
        let rs: &[u64] = if example_takes_r(index) { &[1, 2, 3] } else { &[1] };
        for &n in &[6u64, 12, 30] {
            for &r in rs {
                cases.push((index, n, r));
            }
        }
    }
    cases
        .into_par_iter()
        .enumerate()
        .map(|(i, (index, n, r))| {
            let mut rng = rng(7, i as u64);
            let mut report = IdentityReport::new(format!("example {index} n={n} r={r}"));
            for _ in 0..20 {
                let z = random_zeta(&mut rng, n);
                report.merge(example_identity_with(index, &z, r, 200, reading).unwrap().to_identity_report());
            }
            report
        })
        .collect()
}

fn convolution_sweep() -> Vec<IdentityReport> {
    let order = 200;
    let series = [
        DirichletSeries::zeta(order),
        DirichletSeries::mobius(order),
        DirichletSeries::from_function(named_function("euler_phi", &[]).unwrap(), order),
        DirichletSeries::from_function(named_function("liouville", &[]).unwrap(), order),
    ];
    [6u64, 12, 30]
        .into_par_iter()
        .map(|n| {
            let mut rng = rng(70, n);
            let mut report = IdentityReport::new(format!("convolutions n={n}"));
            for _ in 0..20 {
                let z = random_zeta(&mut rng, n);
                for g in &series {
                    report.merge(verify_g_phi_identities(&z, g));
                }
                report.merge(verify_g_convolution(&z, &series[0], &series[2]));
                report.merge(verify_g_convolution(&z, &series[3], &series[1]));
            }
            report
        })
        .collect()
}

#[test]
fn c07_dirichlet_examples() {
    let start = Instant::now();
    let a2 = ZetaProduct::new(3, [(1, -1), (3, 1)]).unwrap();
    let m = a2.multiplicities();
    let (_, p_star) = a2.star_functions();
    let phi = |k: u64| rat(cyclozeta::arith::euler_phi(k).unwrap() as i64);
    let phi_inv = |k: u64| rat(divisors(k).unwrap().iter().map(|&d| d as i64 * cyclozeta::arith::mobius(d).unwrap()).sum());
    // k = 3: 3·m(3) = Σ_{d|3} φ(3/d) p*(d), and p*(3) = Σ_{d|3} φ^{(−1)}(3/d) d m(d).
    let lhs1 = rat(3) * m.at(3);
    let rhs1 = phi(3) * p_star.at(1) + phi(1) * p_star.at(3);
    let rhs2 = phi_inv(3) * m.at(1) + phi_inv(1) * rat(3) * m.at(3);
    let hand_ok = lhs1 == rat(0) && rhs1 == rat(0) && *p_star.at(3) == rat(-2) && rhs2 == rat(-2);

    let mut reports = convolution_sweep();
    let printed = example_sweep(Reading::Printed);
    reports.extend(printed.iter().cloned());
    let (checks, first) = summary(&reports);
    let ok = hand_ok && first.is_none();
    report_line(
        "C7",
        ok,
        "Dirichlet transforms and examples 1-12 as printed, N=200, n in {6,12,30}, r in {1,2,3}",
        &format!(
            "hand check {}, {checks} checks, {}; first failure: {}",
            if hand_ok { "ok" } else { "bad" },
            secs(start.elapsed()),
            first.as_deref().unwrap_or("none").lines().next().unwrap_or("")
        ),
    );
    let corrected = example_sweep(Reading::Corrected);
    let (cchecks, cfirst) = summary(&corrected);
    let flagged = corrected.iter().any(|r| r.flags.iter().any(|f| f.id == "liouville-kernel-even-r"));
    println!("     corrected example 8 kernel for even r: {} ({cchecks} checks)", if cfirst.is_none() && flagged { "pass" } else { "fail" });
    assert!(hand_ok);
    // Only example 8 with even r fails as printed.
    let failing: BTreeSet<String> = printed.iter().filter(|r| !r.passed()).map(|r| r.name.clone()).collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|name| name.starts_with("example 8 ") && name.ends_with("r=2")), "{failing:?}");
    assert!(!ok);
    assert!(cfirst.is_none() && flagged, "{cfirst:?}");
}

#[test]
fn c08_eta_product() {
    let entries = catalog::catalog(12);
    let mut forms_agree = true;
    let mut direct_ok = true;
    let mut flags: BTreeSet<String> = BTreeSet::new();
    for e in &entries {
        let z = e.zeta_product().unwrap();
        let ex = eta_log_derivative(&z, 100).unwrap();
        let neg = ex.divisor_sum.scale(&rat(-1));
        direct_ok &= ex.direct == neg;
        // The three printed right-hand sides.
        forms_agree &= ex.divisor_sum == ex.cyclotomic_form && ex.cyclotomic_form == ex.ramanujan_form_printed;
        flags.extend(ex.verify(Reading::Corrected).flags.into_iter().map(|f| f.id));
    }
    let one_flag = flags.len() == 1 && flags.contains("eta-sign");
    let ok = forms_agree && direct_ok && one_flag;
    report_line(
        "C8",
        ok,
        "printed eta forms agree, direct = -sum d e(d) L(q^d), exactly one flag",
        &format!("printed forms agree: {forms_agree}, direct: {direct_ok}, flags: {flags:?}"),
    );
    let corrected_ok = entries.iter().all(|e| {
        let ex = eta_log_derivative(&e.zeta_product().unwrap(), 100).unwrap();
        ex.direct == ex.cyclotomic_form && ex.cyclotomic_form == ex.ramanujan_form
    });
    println!("     corrected forms (-sum d e(d) L(q^d), factor k in the Ramanujan form): {}", if corrected_ok { "pass" } else { "fail" });
    assert!(direct_ok && corrected_ok);
    assert!(!forms_agree);
    assert_eq!(flags, BTreeSet::from(["eta-ramanujan-factor-k".to_string(), "eta-sign".to_string()]));
    assert!(!ok);
}

fn line_map(n: u64, line: &catalog::Line) -> DivisorMap<Rational> {
    DivisorMap::from_fn(n, |d| rat(*line.get(&d).unwrap_or(&0))).unwrap()
}

#[test]
fn c09_weights_and_p8() {
    let w = WeightSystem::new(1, 1, 1, 3).unwrap();
    let p8 = catalog::get("P8", None).unwrap();
    let (mgf, mc) = m_gf_from_weights(&w).unwrap();
    let (pgf, pc) = p_gf_from_weights(&w).unwrap();
    let m_ok = mc == line_map(3, &p8.m_line) && mgf == partial_fractions(&line_map(3, &p8.m_line));
    let p_ok = pc == line_map(3, &p8.p_line) && pgf == partial_fractions(&line_map(3, &p8.p_line));
    let spectrum = spectral_gf(&w).unwrap();
    let spec_ok = spectrum == PolynomialQ::from_i64(&[1, 3, 3, 1]) && spectrum.coeffs().iter().sum::<Rational>() == rat(8);
    let (_, reduced) = spectrum.div_rem(&PolynomialQ::q_pow_minus_one(3)).unwrap();
    let red_ok = reduced == PolynomialQ::from_i64(&[2, 3, 3]);
    // The reduction is Σ_{k<n} m(k) q^k of the P8 product.
    let z = p8.zeta_product().unwrap();
    let m_poly = PolynomialQ::new(z.multiplicities().values().to_vec());
    let ok = m_ok && p_ok && spec_ok && red_ok && m_poly == reduced;
    report_line("C9", ok, "weights (1,1,1;3) reproduce the P8 lines and spectrum", &format!("m {m_ok}, p {p_ok}, spectrum {spec_ok}, mod q^3-1 {red_ok}"));
    assert!(ok);
}

#[test]
fn c10_seifert_e8() {
    let w = WeightSystem::new(15, 10, 6, 30).unwrap();
    let sd = SeifertData::new(0, vec![(2, 1), (3, 1), (5, 1)]).unwrap();
    let e8 = catalog::get("E8", None).unwrap().zeta_product().unwrap();
    let z = seifert_zeta_product(&w, &sd).unwrap();
    let sign = if e8.milnor_number() % 2 == 0 { rat(1) } else { rat(-1) };
    let cp_ok = char_poly_from_seifert(&w, &sd) == e8.to_rational_function().scale(&sign);
    let ok = z == e8 && cp_ok;
    report_line("C10", ok, "Seifert data (15,10,6;30), g=0, (2,3,5) gives the E8 e-vector", &format!("{z}"));
    assert!(ok);
}

fn exponents_from_multiplicities(e: &CatalogEntry) -> Vec<u64> {
    let m = e.zeta_product().unwrap().multiplicities();
    let mut out = Vec::new();
    for k in 0..e.n {
        let c = i64::try_from(m.at(k as i64).to_integer()).unwrap();
        assert!(c >= 0);
        out.extend(std::iter::repeat_n(k, c as usize));
    }
    out
}

#[test]
fn c11_catalog() {
    let start = Instant::now();
    let report = catalog::verify_all(12);
    let flags: Vec<String> = report.flags.iter().map(|f| f.id.clone()).collect();
    let mut cox_ok = true;
    for l in 1..=12 {
        cox_ok &= exponents_from_multiplicities(&catalog::get("A", Some(l)).unwrap()) == (1..=l).collect::<Vec<_>>();
    }
    let e8 = catalog::get("E8", None).unwrap();
    assert_eq!(e8.kind, Kind::E8);
    cox_ok &= exponents_from_multiplicities(&e8) == [1, 7, 11, 13, 17, 19, 23, 29];
    let t = start.elapsed();
    let ok = report.passed() && flags == ["catalog-X9", "catalog-J10"] && cox_ok && t < Duration::from_secs(10);
    report_line(
        "C11",
        ok,
        "catalog consistency with exactly the X9 and J10 flags; Coxeter exponents",
        &format!("{} checks, flags {flags:?}, {}", report.checks.len(), secs(t)),
    );
    assert!(ok, "{report}");
}

fn verify_all_json() -> (Value, i32, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_cyclozeta"))
        .args(["--format", "json", "verify", "all", "--seed", "42"])
        .output()
        .unwrap();
    let t = start.elapsed();
    (serde_json::from_slice(&out.stdout).unwrap(), out.status.code().unwrap(), t)
}

#[test]
fn c12_verify_all() {
    let (first, code, t) = verify_all_json();
    let (second, _, _) = verify_all_json();
    let deterministic = first == second;
    let status = first["status"].as_str().unwrap().to_string();
    let flags: BTreeSet<String> = first["payload"]["flags"].as_array().unwrap().iter().map(|f| f["id"].as_str().unwrap().to_string()).collect();
    let expected: BTreeSet<String> = ["catalog-X9", "catalog-J10", "eta-sign"].map(String::from).into();
    let clean = status != Status::Fail.as_str() && code == 0;
    let ok = deterministic && clean && flags == expected && t < Duration::from_secs(300);
    report_line(
        "C12",
        ok,
        "verify all --seed 42: deterministic, pass + 3 flags (two catalog, one eta sign)",
        &format!("status {status}, {} flags {flags:?}, deterministic {deterministic}, {}", flags.len(), secs(t)),
    );
    // Every check passes; the extra flags mark three more printed statements
    // that the corrected checks disagree with.
    assert!(deterministic && clean && t < Duration::from_secs(300));
    assert!(flags.is_superset(&expected));
    let extra: BTreeSet<&str> = flags.iter().map(String::as_str).filter(|f| !expected.contains(*f)).collect();
    assert_eq!(extra, BTreeSet::from(["eta-ramanujan-factor-k", "liouville-kernel-even-r", "apostol-alternating-sign"]));
    assert!(!ok);
}
