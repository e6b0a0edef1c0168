//! The subcommands, each producing an [`Outcome`].

use std::fmt::Write as _;

use anyhow::{bail, Context};
use cyclozeta::arith::named_function;
use cyclozeta::catalog::{self, CatalogEntry};
use cyclozeta::dirichlet::{g_transforms, ps_g_transforms, DirichletSeries};
use cyclozeta::weights::{
    char_poly_from_seifert, m_gf_from_weights, p_gf_from_weights, seifert_m_forms, seifert_zeta_product, spectral_gf,
    verify_weight_system, zeta_product_from_weights, SeifertData, WeightSystem,
};
use cyclozeta::zetaprod::{gf_power_series, ramanujan_coefficients};
use cyclozeta::{DivisorMap, IdentityReport, PowerSeriesQ, Rational, Status, ZetaProduct};
use serde_json::{json, Value};

use crate::catalog_data;
use crate::output::{even_json, example_json, flag_json, rat_json, report_json, zeta_json, Outcome};
use crate::suite::{self, Scope, SuiteConfig, SuiteOutcome};

fn divisor_map_json(c: &DivisorMap<Rational>) -> Value {
    Value::Object(c.iter().map(|(d, v)| (d.to_string(), rat_json(v))).collect())
}

pub fn analyze(z: &ZetaProduct) -> anyhow::Result<Outcome> {
    let m = z.multiplicities();
    let p = z.power_sums();
    let (m_star, p_star) = z.star_functions();
    let rm = ramanujan_coefficients(&m);
    let rp = ramanujan_coefficients(&p);
    let m_gf = gf_power_series(&m, z.saito_transform().e())?;
    let p_gf = gf_power_series(&p, &z.e().map(|d, &v| d as i64 * v))?;
    let rf = z.to_rational_function();
    let mut report = IdentityReport::new("analyze");
    report.merge(m_gf.report.clone());
    report.merge(p_gf.report.clone());

    let payload = json!({
        "input": zeta_json(z),
        "milnor_number": z.milnor_number(),
        "m": even_json(&m),
        "p": even_json(&p),
        "m_star": even_json(&m_star),
        "p_star": even_json(&p_star),
        "ramanujan": { "m": even_json(&rm), "p": even_json(&rp) },
        "generating_functions": {
            "m": { "from_one": m_gf.from_one.to_string(), "from_zero": m_gf.from_zero.to_string() },
            "p": { "from_one": p_gf.from_one.to_string(), "from_zero": p_gf.from_zero.to_string() },
        },
        "rational_function": rf.to_string(),
        "saito_transform": zeta_json(&z.saito_transform()),
        "saito_dual": zeta_json(&z.saito_dual()),
        "report": report_json(&report),
    });
    let mut text = String::new();
    writeln!(text, "input      {z}")?;
    writeln!(text, "milnor     {}", z.milnor_number())?;
    writeln!(text, "m          {m}")?;
    writeln!(text, "p          {p}")?;
    writeln!(text, "m*         {m_star}")?;
    writeln!(text, "p*         {p_star}")?;
    writeln!(text, "r[m]       {rm}")?;
    writeln!(text, "r[p]       {rp}")?;
    writeln!(text, "sum_(k=1..n) m(k)q^k/(1-q^n)   = {}", m_gf.from_one)?;
    writeln!(text, "sum_(k=0..n-1) m(k)q^k/(1-q^n) = {}", m_gf.from_zero)?;
    writeln!(text, "sum_(k=1..n) p(k)q^k/(1-q^n)   = {}", p_gf.from_one)?;
    writeln!(text, "sum_(k=0..n-1) p(k)q^k/(1-q^n) = {}", p_gf.from_zero)?;
    writeln!(text, "zeta       {rf}")?;
    writeln!(text, "transform  {}", z.saito_transform())?;
    writeln!(text, "dual       {}", z.saito_dual())?;
    write!(text, "status     {}", report.status())?;
    Ok(Outcome {
        command: "analyze".into(),
        status: report.status(),
        payload,
        text,
    })
}

pub fn dual(z: &ZetaProduct) -> Outcome {
    let t = z.saito_transform();
    let d = z.saito_dual();
    Outcome {
        command: "dual".into(),
        status: Status::Pass,
        payload: json!({ "input": zeta_json(z), "transform": zeta_json(&t), "dual": zeta_json(&d) }),
        text: format!("{t}\ndual: {d}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SeriesKind {
    Dirichlet,
    Power,
}

/// `zeta`, `unit` or any named arithmetic function, as coefficients `G(1..=order)`.
pub fn g_series(name: &str, params: &[u64], order: usize) -> anyhow::Result<DirichletSeries> {
    Ok(match name {
        "zeta" | "one" => DirichletSeries::zeta(order),
        "unit" => DirichletSeries::unit(order),
        _ => DirichletSeries::from_function(named_function(name, params)?, order),
    })
}

fn series_json(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(rat_json).collect())
}

fn join(values: &[Rational]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn series(z: &ZetaProduct, g_name: &str, params: &[u64], order: usize, kind: SeriesKind) -> anyhow::Result<Outcome> {
    let g = g_series(g_name, params, order)?;
    let mut text = format!("{z}; G={g_name}{params:?}; order={order}\n");
    let payload = match kind {
        SeriesKind::Dirichlet => {
            let t = g_transforms(z, &g);
            for (label, s) in [("m_G", &t.m), ("p_G", &t.p), ("m*_G", &t.m_star), ("p*_G", &t.p_star)] {
                writeln!(text, "{label:5} {}", join(s.coeffs()))?;
            }
            json!({
                "kind": "dirichlet", "first_index": 1,
                "m": series_json(t.m.coeffs()), "p": series_json(t.p.coeffs()),
                "m_star": series_json(t.m_star.coeffs()), "p_star": series_json(t.p_star.coeffs()),
            })
        }
        SeriesKind::Power => {
            // g(q) = Σ_{k≥1} G(k) q^k
            let gq = PowerSeriesQ::from_fn(order, |k| if k == 0 { Rational::from_integer(0.into()) } else { g.coeff(k as u64).clone() });
            let (m, p) = ps_g_transforms(z, &gq)?;
            writeln!(text, "m_[G] {}", join(m.coeffs()))?;
            writeln!(text, "p_[G] {}", join(p.coeffs()))?;
            json!({ "kind": "power", "first_index": 0, "m": series_json(m.coeffs()), "p": series_json(p.coeffs()) })
        }
    };
    let mut payload = payload;
    payload["input"] = zeta_json(z);
    payload["G"] = json!({ "name": g_name, "params": params });
    payload["order"] = json!(order);
    Ok(Outcome {
        command: "series".into(),
        status: Status::Pass,
        payload,
        text: text.trim_end().to_string(),
    })
}

pub fn suite_json(cfg: &SuiteConfig, out: &SuiteOutcome) -> Value {
    json!({
        "scope": out.scope.as_str(),
        "seed": cfg.seed,
        "config": {
            "nmax": cfg.nmax, "trials": cfg.trials, "order": cfg.order, "eta_order": cfg.eta_order,
            "index": cfg.index, "n": cfg.n, "r": cfg.r, "lmax": cfg.lmax,
        },
        "items": out.items.iter().map(|i| {
            let mut v = report_json(&i.report);
            v["suite"] = json!(i.suite.as_str());
            v["id"] = json!(i.id);
            if !i.examples.is_empty() {
                v["examples"] = Value::Array(i.examples.iter().map(example_json).collect());
            }
            v
        }).collect::<Vec<_>>(),
        "counts": {
            "items": out.items.len(),
            "checks": out.items.iter().map(|i| i.report.checks.len()).sum::<usize>(),
            "failed_items": out.failures().count(),
        },
        "flags": out.flags().iter().map(flag_json).collect::<Vec<_>>(),
    })
}

pub fn suite_text(out: &SuiteOutcome) -> String {
    let mut text = String::new();
    let checks: usize = out.items.iter().map(|i| i.report.checks.len()).sum();
    for scope in [Scope::Prop, Scope::Example, Scope::Catalog, Scope::Eta, Scope::Weights] {
        let items: Vec<_> = out.items.iter().filter(|i| i.suite == scope).collect();
        if items.is_empty() {
            continue;
        }
        let failed = items.iter().filter(|i| !i.report.passed()).count();
        let c: usize = items.iter().map(|i| i.report.checks.len()).sum();
        let _ = writeln!(text, "{scope:8} {} items, {c} checks, {failed} failed", items.len());
    }
    for item in out.failures() {
        let _ = writeln!(text, "FAIL [{}] {}: {}", item.suite, item.id, item.report);
    }
    for f in out.flags() {
        let _ = writeln!(text, "flag {}: {}", f.id, f.note);
    }
    let _ = write!(text, "{}: {} ({} items, {checks} checks, {} flags)", out.scope, out.status(), out.items.len(), out.flags().len());
    text
}

pub fn verify(scope: Scope, cfg: &SuiteConfig) -> Outcome {
    let out = suite::run(scope, cfg);
    Outcome {
        command: format!("verify {scope}"),
        status: out.status(),
        payload: suite_json(cfg, &out),
        text: suite_text(&out),
    }
}

fn entry_json(e: &CatalogEntry) -> Value {
    serde_json::to_value(catalog_data::EntryJson::from(e)).expect("serializable")
}

pub fn catalog_list(lmax: u64) -> Outcome {
    let entries = catalog::catalog(lmax);
    let text = entries
        .iter()
        .map(|e| format!("{:6} n={:<3} {}", e.name, e.n, e.source.as_str()))
        .collect::<Vec<_>>()
        .join("\n");
    Outcome {
        command: "catalog list".into(),
        status: Status::Pass,
        payload: json!({ "entries": entries.iter().map(|e| json!({"name": e.name, "n": e.n, "source": e.source.as_str()})).collect::<Vec<_>>() }),
        text,
    }
}

pub fn catalog_get(name: &str, l: Option<u64>) -> anyhow::Result<Outcome> {
    let e = catalog::get(name, l)?;
    let mut payload = entry_json(&e);
    payload["zeta_product"] = e.zeta_product().map(|z| zeta_json(&z)).unwrap_or(Value::Null);
    Ok(Outcome {
        command: "catalog get".into(),
        status: Status::Pass,
        payload,
        text: e.to_string(),
    })
}

pub fn catalog_verify(lmax: u64) -> Outcome {
    let entries = catalog::catalog(lmax);
    let mut all = IdentityReport::new(format!("catalog (families up to l={lmax})"));
    let mut items = Vec::new();
    let mut text = String::new();
    for e in &entries {
        let r = catalog::verify_entry(e);
        let _ = writeln!(text, "{:6} {}", e.name, r.status());
        items.push(json!({ "name": e.name, "report": report_json(&r) }));
        all.merge(r);
    }
    let cross = catalog::verify_weight_cross_checks().unwrap_or_else(|err| {
        let mut r = IdentityReport::new("catalog vs weights");
        r.fail("weight cross-checks", "", err, "ok");
        r
    });
    let _ = writeln!(text, "weights {}", cross.status());
    all.merge(cross.clone());
    for f in &all.flags {
        let _ = writeln!(text, "flag {}: {}", f.id, f.note);
    }
    let _ = write!(text, "catalog: {} ({} entries, {} flags)", all.status(), entries.len(), all.flags.len());
    Outcome {
        command: "catalog verify".into(),
        status: all.status(),
        payload: json!({
            "entries": items,
            "weight_cross_checks": report_json(&cross),
            "flags": all.flags.iter().map(flag_json).collect::<Vec<_>>(),
            "flagged_entries": all.flags.len(),
        }),
        text,
    }
}

pub fn catalog_export() -> anyhow::Result<(Outcome, String)> {
    let file = catalog_data::export();
    let body = serde_json::to_string_pretty(&file)?;
    let out = Outcome {
        command: "catalog export".into(),
        status: Status::Pass,
        payload: serde_json::to_value(&file)?,
        text: body.clone(),
    };
    Ok((out, body))
}

pub fn catalog_pairs(lmax: u64) -> Outcome {
    let pairs = catalog::saito_dual_pairs(&catalog::catalog(lmax));
    let mut text = String::new();
    let mut status = Status::Pass;
    let rows: Vec<Value> = pairs
        .iter()
        .map(|p| {
            if !p.involutive {
                status = Status::Fail;
            }
            let _ = writeln!(
                text,
                "{:6} transform {} -> [{}]; dual {} -> [{}]",
                p.name,
                p.transform,
                p.transform_matches.join(", "),
                p.dual,
                p.dual_matches.join(", ")
            );
            json!({
                "name": p.name,
                "transform": zeta_json(&p.transform),
                "transform_matches": p.transform_matches,
                "dual": zeta_json(&p.dual),
                "dual_matches": p.dual_matches,
                "involutive": p.involutive,
            })
        })
        .collect();
    Outcome {
        command: "catalog pairs".into(),
        status,
        payload: json!({ "pairs": rows }),
        text: text.trim_end().to_string(),
    }
}

pub fn weights(w: &WeightSystem, seifert: Option<&SeifertData>) -> anyhow::Result<Outcome> {
    let spectrum = spectral_gf(w).with_context(|| format!("weight system {w}"))?;
    let (m_gf, mc) = m_gf_from_weights(w)?;
    let (p_gf, pc) = p_gf_from_weights(w)?;
    let mut report = verify_weight_system(w, &[-2, -1, 0, 1, 2, 3])?;
    let z = zeta_product_from_weights(w).ok();
    let mut text = String::new();
    writeln!(text, "weights    {w}")?;
    writeln!(text, "milnor     {}", w.milnor_number())?;
    writeln!(text, "spectrum   {spectrum}")?;
    writeln!(text, "m coeffs   {mc}   (of 1/(q^d-1))")?;
    writeln!(text, "p coeffs   {pc}")?;
    writeln!(text, "m gf       {m_gf}")?;
    writeln!(text, "p gf       {p_gf}")?;
    if let Some(z) = &z {
        writeln!(text, "zeta       {z}")?;
    }
    let mut payload = json!({
        "weights": { "a": w.a, "b": w.b, "c": w.c, "n": w.n },
        "milnor_number": rat_json(&w.milnor_number()),
        "spectrum": spectrum.coeffs().iter().map(rat_json).collect::<Vec<_>>(),
        "m_coefficients": divisor_map_json(&mc),
        "p_coefficients": divisor_map_json(&pc),
        "m_gf": m_gf.to_string(),
        "p_gf": p_gf.to_string(),
        "zeta_product": z.as_ref().map(zeta_json),
    });
    if let Some(sd) = seifert {
        let cp = char_poly_from_seifert(w, sd);
        let sz = seifert_zeta_product(w, sd)?;
        let forms = seifert_m_forms(w, sd, &[-2, -1, 0, 1, 2, 3], 120)?;
        writeln!(text, "seifert    {sd}")?;
        writeln!(text, "char poly  {cp}")?;
        writeln!(text, "seifert e  {sz}")?;
        payload["seifert"] = json!({
            "genus": sd.genus,
            "pairs": sd.pairs,
            "char_poly": cp.to_string(),
            "zeta_product": zeta_json(&sz),
            "report": report_json(&forms),
        });
        report.merge(forms);
    }
    write!(text, "status     {report}")?;
    payload["report"] = report_json(&report);
    Ok(Outcome {
        command: "weights".into(),
        status: report.status(),
        payload,
        text,
    })
}

pub fn require_positive(name: &str, v: usize) -> anyhow::Result<()> {
    if v == 0 {
        bail!("{name} must be positive");
    }
    Ok(())
}
