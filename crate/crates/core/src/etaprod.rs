//! Logarithmic derivative of the eta-product `η̄_e(q) = ∏_{k≥1} ζ_e(q^k)`.

use alloc::format;
use num_traits::Zero;

use crate::arith::divisor_list;
use crate::exactpoly::{cyclotomic, ramanujan_log_form};
use crate::report::Reading;
use crate::{rat, IdentityReport, PowerSeriesQ, Rational, RationalFunctionQ, Result, ZetaProduct};

/// `L(q) = Σ_{m≥1} σ(m) q^m` to `O(q^order)`.
pub fn lambert_l(order: usize) -> PowerSeriesQ {
    let mut sigma = alloc::vec![0i64; order];
    for d in 1..order {
        for m in (d..order).step_by(d) {
            sigma[m] += d as i64;
        }
    }
    PowerSeriesQ::from_fn(order, |m| rat(sigma[m]))
}

/// `L(q)` summed as the Lambert series `Σ_k k q^k/(1 − q^k)`.
pub fn lambert_l_quotients(order: usize) -> PowerSeriesQ {
    let mut out = PowerSeriesQ::zero(order);
    for k in 1..order {
        let mut term = PowerSeriesQ::from_fn(order, |i| if i == k { rat(k as i64) } else { Rational::zero() });
        term.div_one_minus_q_pow(k);
        out = &out + &term;
    }
    out
}

/// `q·d/dq log η̄_e` computed four ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaExpansion {
    pub order: usize,
    /// `μ_e`; the eta-product carries the prefactor `q^{μ_e/24}`, which is not expanded.
    pub milnor_number: i64,
    /// From the truncated product `∏_k ∏_d (1 − q^{kd})^{e(d)}`.
    pub direct: PowerSeriesQ,
    /// `Σ_{d|n} d e(d) L(q^d)`.
    pub divisor_sum: PowerSeriesQ,
    /// `Σ_{d|n} m(n/d) Σ_k k q^k Φ_d′(q^k)/Φ_d(q^k)`.
    pub cyclotomic_form: PowerSeriesQ,
    /// `Σ_{d|n} m(n/d) Σ_k k Σ_j c_d(j) q^{kj}/(q^{kd} − 1)`.
    pub ramanujan_form: PowerSeriesQ,
    /// As above without the factor `k`.
    pub ramanujan_form_printed: PowerSeriesQ,
}

/// Expands every form to `O(q^order)`.
pub fn eta_log_derivative(z: &ZetaProduct, order: usize) -> Result<EtaExpansion> {
    let n = z.n();
    let mut product = PowerSeriesQ::one(order);
    for (d, &v) in z.e().iter() {
        let d = d as usize;
        for k in 1..order {
            if k * d >= order {
                break;
            }
            for _ in 0..v.unsigned_abs() {
                if v > 0 {
                    product.mul_one_minus_q_pow(k * d);
                } else {
                    product.div_one_minus_q_pow(k * d);
                }
            }
        }
    }
    let direct = product.log_derivative()?;

    let l = lambert_l(order);
    let mut divisor_sum = PowerSeriesQ::zero(order);
    for (d, &v) in z.e().iter() {
        if v != 0 {
            divisor_sum = &divisor_sum + &l.compose_monomial(d as usize).scale(&rat(d as i64 * v));
        }
    }

    let m = z.multiplicities();
    let mut cyclotomic_form = PowerSeriesQ::zero(order);
    let mut ramanujan_form = PowerSeriesQ::zero(order);
    let mut ramanujan_form_printed = PowerSeriesQ::zero(order);
    for d in divisor_list(n) {
        let weight: Rational = m.at((n / d) as i64).clone();
        if weight.is_zero() {
            continue;
        }
        let phi: RationalFunctionQ = cyclotomic(d)?.into();
        let log_phi = phi.log_derivative()?.expand(order)?;
        let ram = ramanujan_log_form(d).expand(order)?;
        for k in 1..order {
            let kk = rat(k as i64);
            cyclotomic_form = &cyclotomic_form + &log_phi.compose_monomial(k).scale(&(&weight * &kk));
            let ram_k = ram.compose_monomial(k).scale(&weight);
            ramanujan_form = &ramanujan_form + &ram_k.scale(&kk);
            ramanujan_form_printed = &ramanujan_form_printed + &ram_k;
        }
    }

    Ok(EtaExpansion {
        order,
        milnor_number: z.milnor_number(),
        direct,
        divisor_sum,
        cyclotomic_form,
        ramanujan_form,
        ramanujan_form_printed,
    })
}

fn first_difference(a: &PowerSeriesQ, b: &PowerSeriesQ) -> Option<(usize, Rational, Rational)> {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .enumerate()
        .find(|(_, (x, y))| x != y)
        .map(|(i, (x, y))| (i, x.clone(), y.clone()))
}

impl EtaExpansion {
    /// Compares the forms. With [`Reading::Corrected`] the direct series is
    /// matched against `−Σ d e(d) L(q^d)` and the `Φ`-forms, and the Ramanujan
    /// form with the factor `k`; the printed variants are flagged when they
    /// differ. With [`Reading::Printed`] the printed statements are checked as
    /// they stand.
    pub fn verify(&self, reading: Reading) -> IdentityReport {
        let mut report = IdentityReport::new(format!("eta log-derivative to O(q^{})", self.order));
        let cmp = |report: &mut IdentityReport, name: &str, a: &PowerSeriesQ, b: &PowerSeriesQ| match first_difference(a, b) {
            None => {
                report.pass(name);
                true
            }
            Some((i, x, y)) => {
                report.fail(name, format!("q^{i}"), x, y);
                false
            }
        };
        let neg_sum = self.divisor_sum.scale(&rat(-1));
        match reading {
            Reading::Corrected => {
                cmp(&mut report, "direct = -sum d e(d) L(q^d)", &self.direct, &neg_sum);
                cmp(&mut report, "direct = cyclotomic form", &self.direct, &self.cyclotomic_form);
                cmp(&mut report, "cyclotomic form = ramanujan form", &self.cyclotomic_form, &self.ramanujan_form);
                if self.direct != self.divisor_sum {
                    report.flag(
                        "eta-sign",
                        "q d/dq log of the eta-product is -sum d e(d) L(q^d); the printed identity drops the sign",
                    );
                }
                if self.ramanujan_form_printed != self.ramanujan_form {
                    report.flag(
                        "eta-ramanujan-factor-k",
                        "the Ramanujan-sum form needs the factor k in front of sum_j c_d(j) q^{kj}/(q^{kd}-1)",
                    );
                }
            }
            Reading::Printed => {
                cmp(&mut report, "direct = sum d e(d) L(q^d)", &self.direct, &self.divisor_sum);
                cmp(&mut report, "sum d e(d) L(q^d) = cyclotomic form", &self.divisor_sum, &self.cyclotomic_form);
                cmp(&mut report, "cyclotomic form = ramanujan form", &self.cyclotomic_form, &self.ramanujan_form_printed);
            }
        }
        report
    }
}

/// Expands and verifies in one step.
pub fn verify_eta(z: &ZetaProduct, order: usize, reading: Reading) -> Result<IdentityReport> {
    Ok(eta_log_derivative(z, order)?.verify(reading))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Status;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    #[test]
    fn lambert_forms() {
        let l = lambert_l(100);
        assert_eq!(*l.coeff(1), rat(1));
        assert_eq!(*l.coeff(6), rat(12));
        assert!(l.coeff(0).is_zero());
        assert_eq!(l, lambert_l_quotients(100));
    }

    #[test]
    fn trivial_and_single_factor() {
        let zero = eta_log_derivative(&ZetaProduct::trivial(4).unwrap(), 20).unwrap();
        assert!(zero.direct.is_zero());
        let one = ZetaProduct::new(1, [(1, 1)]).unwrap();
        let ex = eta_log_derivative(&one, 50).unwrap();
        assert_eq!(ex.direct, lambert_l(50).scale(&rat(-1)));
        assert_eq!(ex.milnor_number, 1);
    }

    #[test]
    fn tilde_e8_four_ways() {
        let z = crate::catalog::get("J10", None).unwrap().zeta_product().unwrap();
        let ex = eta_log_derivative(&z, 100).unwrap();
        assert_eq!(ex.direct, ex.divisor_sum.scale(&rat(-1)));
        assert_eq!(ex.direct, ex.cyclotomic_form);
        assert_eq!(ex.cyclotomic_form, ex.ramanujan_form);
        let rep = ex.verify(Reading::Corrected);
        assert_eq!(rep.status(), Status::Flagged);
        let ids: Vec<_> = rep.flags.iter().map(|f| f.id.as_str()).collect();
        assert_eq!(ids, ["eta-sign", "eta-ramanujan-factor-k"]);
        assert_eq!(ex.verify(Reading::Printed).status(), Status::Fail);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn additive_in_e(e1 in proptest::collection::vec(-2i64..=2, 4), e2 in proptest::collection::vec(-2i64..=2, 4)) {
            let divs = [1u64, 2, 3, 6];
            let a = ZetaProduct::new(6, divs.into_iter().zip(e1)).unwrap();
            let b = ZetaProduct::new(6, divs.into_iter().zip(e2)).unwrap();
            let ab = a.product(&b).unwrap();
            let ea = eta_log_derivative(&a, 30).unwrap();
            let eb = eta_log_derivative(&b, 30).unwrap();
            let eab = eta_log_derivative(&ab, 30).unwrap();
            prop_assert_eq!(&eab.direct, &(&ea.direct + &eb.direct));
            prop_assert!(eab.verify(Reading::Corrected).passed());
        }
    }
}
