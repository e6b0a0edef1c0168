//! Seeded verification suites behind `verify`.
//!
//! Every item draws from its own ChaCha stream keyed by the seed and the
//! item's position, so results do not depend on scheduling. Items run in
//! parallel and are reported in canonical order.

use std::fmt;

use cyclozeta::apostol::verify_apostol_sums;
use cyclozeta::arith::named_function;
use cyclozeta::catalog::{self, saito_dual_pairs};
use cyclozeta::dirichlet::{example_identity, example_takes_r, verify_g_phi_identities, verify_g_convolution, DirichletSeries, ExampleReport};
use cyclozeta::etaprod::verify_eta;
use cyclozeta::exactpoly::{tensor_product, PolynomialQ};
use cyclozeta::weights::{seifert_m_forms, verify_weight_system, SeifertData, WeightSystem};
use cyclozeta::zetaprod::{
    dft_power_sums, generalized_pair_check, gf_power_series, ramanujan_coefficients, ramanujan_reconstruct,
    verify_cyclotomic_factorization, verify_pairing_preset, verify_phi_s_identities, PairingPreset,
};
use cyclozeta::{rat, DivisorMap, Flag, IdentityReport, Reading, Status, ZetaProduct};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum Scope {
    All,
    Prop,
    Example,
    Catalog,
    Eta,
    Weights,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::Prop => "prop",
            Scope::Example => "example",
            Scope::Catalog => "catalog",
            Scope::Eta => "eta",
            Scope::Weights => "weights",
        }
    }

    fn parts(self) -> Vec<Scope> {
        match self {
            Scope::All => vec![Scope::Prop, Scope::Example, Scope::Catalog, Scope::Eta, Scope::Weights],
            s => vec![s],
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Largest conductor in the per-`n` sweeps.
    pub nmax: u64,
    /// Random e-vectors per instance.
    pub trials: usize,
    /// Dirichlet-series order.
    pub order: usize,
    /// Power-series order for the eta expansions.
    pub eta_order: usize,
    /// Restricts the example suite to one example.
    pub index: Option<u32>,
    /// Restricts the example suite to one conductor.
    pub n: Option<u64>,
    /// Restricts the example suite to one parameter `r`.
    pub r: Option<u64>,
    /// Largest family index in the catalog sweeps.
    pub lmax: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            nmax: 60,
            trials: 2,
            order: 200,
            eta_order: 100,
            index: None,
            n: None,
            r: None,
            lmax: 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteItem {
    pub suite: Scope,
    pub id: String,
    pub report: IdentityReport,
    /// Per-trial records of the example suite.
    pub examples: Vec<ExampleReport>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub scope: Scope,
    pub items: Vec<SuiteItem>,
}

impl SuiteOutcome {
    pub fn status(&self) -> Status {
        let worst = self.items.iter().map(|i| i.report.status()).max().unwrap_or(Status::Pass);
        if worst == Status::Fail {
            Status::Fail
        } else if self.flags().is_empty() {
            Status::Pass
        } else {
            Status::Flagged
        }
    }

    /// Flags across all items, deduplicated by id in first-seen order.
    pub fn flags(&self) -> Vec<Flag> {
        let mut out: Vec<Flag> = Vec::new();
        for item in &self.items {
            for f in &item.report.flags {
                if !out.iter().any(|g| g.id == f.id) {
                    out.push(f.clone());
                }
            }
        }
        out
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteItem> {
        self.items.iter().filter(|i| !i.report.passed())
    }
}

/// One unit of work: a label and a closure that gets its own RNG.
struct Task {
    suite: Scope,
    id: String,
    run: Box<dyn Fn(&mut ChaCha8Rng) -> (IdentityReport, Vec<ExampleReport>) + Send + Sync>,
}

fn task(suite: Scope, id: String, run: impl Fn(&mut ChaCha8Rng) -> IdentityReport + Send + Sync + 'static) -> Task {
    Task {
        suite,
        id,
        run: Box::new(move |rng| (run(rng), Vec::new())),
    }
}

/// Uniform exponents in `[-2, 2]` on every divisor of `n`.
pub fn random_zeta(rng: &mut impl Rng, n: u64) -> ZetaProduct {
    let e = DivisorMap::from_fn(n, |_| rng.gen_range(-2..=2)).expect("n >= 1");
    ZetaProduct::from_map(e)
}

fn err_report(name: &str, e: impl fmt::Display) -> IdentityReport {
    let mut r = IdentityReport::new(name);
    r.fail("setup", "", e, "ok");
    r
}

fn or_report(name: &str, r: cyclozeta::Result<IdentityReport>) -> IdentityReport {
    r.unwrap_or_else(|e| err_report(name, e))
}

const PRESET_NS: [u64; 3] = [6, 12, 30];
const APOSTOL_NS: [u64; 2] = [6, 12];

fn prop_tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let mut out = Vec::new();
    let trials = cfg.trials;
    for n in 1..=cfg.nmax {
        out.push(task(Scope::Prop, format!("even-functions n={n}"), move |rng| {
            let mut report = IdentityReport::new(format!("even functions n={n}"));
            for t in 0..trials {
                let z = random_zeta(rng, n);
                report.merge(verify_cyclotomic_factorization(&z));
                let m = z.multiplicities();
                let p = z.power_sums();
                report.compare("p = dft(m)", format!("trial {t}"), &p, &dft_power_sums(&m));
                report.compare(
                    "Ramanujan round trip",
                    format!("trial {t}"),
                    &ramanujan_reconstruct(&ramanujan_coefficients(&m)),
                    &m,
                );
                let p_map = z.e().map(|d, &v| d as i64 * v);
                match gf_power_series(&m, z.saito_transform().e()).and_then(|a| Ok((a, gf_power_series(&p, &p_map)?))) {
                    Ok((a, b)) => {
                        report.merge(a.report);
                        report.merge(b.report);
                    }
                    Err(e) => report.fail("generating functions", format!("trial {t}"), e, "ok"),
                }
                report.merge(verify_phi_s_identities(&z, &[-2, -1, 0, 1, 2, 3]));
                let f = z.e().map(|_, &v| rat(v));
                report.merge(generalized_pair_check(&f, 1 + t as i64 % 3));
            }
            report
        }));
    }
    for n in PRESET_NS {
        for preset in PairingPreset::ALL {
            out.push(task(Scope::Prop, format!("pairing {} n={n}", preset.name()), move |rng| {
                let mut report = IdentityReport::new(format!("pairing {} n={n}", preset.name()));
                for _ in 0..trials {
                    let z = random_zeta(rng, n);
                    report.merge(or_report("pairing", verify_pairing_preset(&z, preset)));
                }
                report
            }));
        }
    }
    for n in APOSTOL_NS {
        for r in 0..=4u32 {
            out.push(task(Scope::Prop, format!("weighted sums n={n} r={r}"), move |rng| {
                let mut report = IdentityReport::new(format!("weighted sums n={n} r={r}"));
                for _ in 0..trials {
                    let z = random_zeta(rng, n);
                    for (b, c) in [(1, 0), (2, 3)] {
                        report.merge(or_report("weighted sums", verify_apostol_sums(&z, b, c, r, Reading::Corrected)));
                    }
                }
                report
            }));
        }
    }
    out.push(task(Scope::Prop, "tensor powers".into(), |_| tensor_power_report(4, 3)));
    let order = cfg.order;
    for n in PRESET_NS {
        out.push(task(Scope::Prop, format!("dirichlet transforms n={n}"), move |rng| {
            let mut report = IdentityReport::new(format!("dirichlet transforms n={n}"));
            let series = [
                DirichletSeries::zeta(order),
                DirichletSeries::mobius(order),
                DirichletSeries::from_function(named_function("euler_phi", &[]).expect("known"), order),
                DirichletSeries::from_function(named_function("liouville", &[]).expect("known"), order),
            ];
            for _ in 0..trials {
                let z = random_zeta(rng, n);
                for g in &series {
                    report.merge(verify_g_phi_identities(&z, g));
                }
                report.merge(verify_g_convolution(&z, &series[0], &series[2]));
                report.merge(verify_g_convolution(&z, &series[3], &series[1]));
            }
            report
        }));
    }
    out
}

/// `(q^d − 1)^{⊗k} = (q^d − 1)^{d^{k−1}}` for `d ≤ dmax`, `k ≤ kmax`.
pub fn tensor_power_report(dmax: usize, kmax: u32) -> IdentityReport {
    let mut report = IdentityReport::new("tensor powers of q^d - 1");
    for d in 1..=dmax {
        let base = PolynomialQ::q_pow_minus_one(d);
        let mut acc = base.clone();
        for k in 1..=kmax {
            if k > 1 {
                acc = match tensor_product(&acc, &base) {
                    Ok(p) => p,
                    Err(e) => {
                        report.fail("tensor product", format!("d={d}, k={k}"), e, "ok");
                        break;
                    }
                };
            }
            let expect = base.pow((d as u32).pow(k - 1));
            report.compare("tensor power", format!("d={d}, k={k}"), &acc, &expect);
        }
    }
    report
}

fn example_tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let indices: Vec<u32> = cfg.index.map(|i| vec![i]).unwrap_or_else(|| (1..=12).collect());
    let ns: Vec<u64> = cfg.n.map(|n| vec![n]).unwrap_or_else(|| PRESET_NS.to_vec());
    let mut out = Vec::new();
    for &index in &indices {
        let rs: Vec<u64> = match (cfg.r, example_takes_r(index)) {
            (Some(r), _) => vec![r],
            (None, true) => vec![1, 2, 3],
            (None, false) => vec![1],
        };
        for &n in &ns {
            for &r in &rs {
                let (trials, order) = (cfg.trials, cfg.order);
                let id = if example_takes_r(index) {
                    format!("example {index} n={n} r={r}")
                } else {
                    format!("example {index} n={n}")
                };
                let label = id.clone();
                out.push(Task {
                    suite: Scope::Example,
                    id,
                    run: Box::new(move |rng| {
                        let mut report = IdentityReport::new(label.clone());
                        let mut records = Vec::with_capacity(trials);
                        for _ in 0..trials {
                            let z = random_zeta(rng, n);
                            match example_identity(index, &z, r, order) {
                                Ok(rep) => {
                                    report.merge(rep.to_identity_report());
                                    records.push(rep);
                                }
                                Err(e) => report.fail("example", format!("{z}"), e, "ok"),
                            }
                        }
                        (report, records)
                    }),
                });
            }
        }
    }
    out
}

fn catalog_tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let lmax = cfg.lmax;
    let mut out: Vec<Task> = catalog::catalog(lmax)
        .into_iter()
        .map(|e| task(Scope::Catalog, format!("entry {}", e.name), move |_| catalog::verify_entry(&e)))
        .collect();
    out.push(task(Scope::Catalog, "weight cross-checks".into(), |_| {
        or_report("weight cross-checks", catalog::verify_weight_cross_checks())
    }));
    out.push(task(Scope::Catalog, "saito transform pairs".into(), move |_| {
        let mut report = IdentityReport::new("saito transform pairs");
        for p in saito_dual_pairs(&catalog::catalog(lmax)) {
            report.compare("transform and dual are involutions", &p.name, &p.involutive, &true);
        }
        report
    }));
    out
}

fn eta_tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let order = cfg.eta_order;
    catalog::catalog(cfg.lmax)
        .into_iter()
        .filter_map(|e| e.zeta_product().ok().map(|z| (e.name, z)))
        .map(|(name, z)| {
            task(Scope::Eta, format!("eta {name}"), move |_| or_report("eta", verify_eta(&z, order, Reading::Corrected)))
        })
        .collect()
}

/// Regular weight systems used by the weights suite.
pub const REGULAR_WEIGHTS: [[u64; 4]; 7] = [[1, 1, 1, 3], [1, 1, 2, 4], [1, 2, 3, 6], [4, 3, 6, 12], [6, 4, 9, 18], [15, 10, 6, 30], [2, 5, 5, 10]];

fn weights_tasks(_cfg: &SuiteConfig) -> Vec<Task> {
    let mut out: Vec<Task> = REGULAR_WEIGHTS
        .into_iter()
        .map(|[a, b, c, n]| {
            task(Scope::Weights, format!("weights ({a},{b},{c};{n})"), move |_| {
                let w = WeightSystem::new(a, b, c, n).expect("positive weights");
                or_report("weights", verify_weight_system(&w, &[-2, -1, 0, 1, 2, 3]))
            })
        })
        .collect();
    let seifert: [([u64; 4], u64, Vec<(u64, u64)>); 2] = [([15, 10, 6, 30], 0, vec![(2, 1), (3, 1), (5, 1)]), ([1, 1, 1, 3], 1, vec![])];
    for ([a, b, c, n], g, pairs) in seifert {
        out.push(task(Scope::Weights, format!("seifert ({a},{b},{c};{n}) g={g}"), move |_| {
            let w = WeightSystem::new(a, b, c, n).expect("positive weights");
            let sd = SeifertData::new(g, pairs.clone()).expect("positive pairs");
            let mut report = or_report("seifert", seifert_m_forms(&w, &sd, &[-2, -1, 0, 1, 2, 3], 120));
            match (cyclozeta::weights::seifert_zeta_product(&w, &sd), cyclozeta::weights::zeta_product_from_weights(&w)) {
                (Ok(a), Ok(b)) => {
                    report.compare("Seifert product = weight product", w, &a, &b);
                }
                (Err(e), _) | (_, Err(e)) => report.fail("Seifert product", w.to_string(), e, "ok"),
            }
            report
        }));
    }
    out
}

fn tasks(scope: Scope, cfg: &SuiteConfig) -> Vec<Task> {
    scope
        .parts()
        .into_iter()
        .flat_map(|s| match s {
            Scope::Prop => prop_tasks(cfg),
            Scope::Example => example_tasks(cfg),
            Scope::Catalog => catalog_tasks(cfg),
            Scope::Eta => eta_tasks(cfg),
            Scope::Weights => weights_tasks(cfg),
            Scope::All => unreachable!("expanded by parts"),
        })
        .collect()
}

/// Runs a scope; output order is the canonical task order.
pub fn run(scope: Scope, cfg: &SuiteConfig) -> SuiteOutcome {
    let tasks = tasks(scope, cfg);
    let items = tasks
        .par_iter()
        .enumerate()
        .map(|(i, t)| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            let (report, examples) = (t.run)(&mut rng);
            SuiteItem {
                suite: t.suite,
                id: t.id.clone(),
                report,
                examples,
            }
        })
        .collect();
    SuiteOutcome { scope, items }
}
