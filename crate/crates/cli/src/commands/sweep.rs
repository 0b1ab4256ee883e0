use anyhow::{bail, Result};
use clap::Args;
use gtrs_core::gtrs::is_mds_plus;
use gtrs_core::selfdual::{plus_self_dual_report, sweep_constructions, SweepConfig};
use gtrs_core::serial::GtrsJson;
use gtrs_core::{CodeClass, Field, Gf, GtrsParams};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::classify::classify_params;
use super::construct::ClassArg;
use super::Status;
use crate::config::{Format, RunConfig};

#[derive(Clone, Debug, Args)]
pub struct SweepArgs {
    /// Subfield orders, e.g. 3,5,7.
    #[arg(long, value_delimiter = ',', required = true)]
    pub q: Vec<u32>,
    /// Even lengths; defaults to every even n <= min(q, 8).
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = ClassArg::Both)]
    pub class: ClassArg,
    /// Evenly spaced x-subsets per configuration, besides the first zero-sum one.
    #[arg(long, default_value_t = 3)]
    pub subsets: usize,
    /// Rows re-classified from their serialized datum as a consistency check.
    #[arg(long, default_value_t = 8)]
    pub spot_checks: usize,
}

/// One catalog line. Elements are written as coefficient tuples `c0:c1`.
/// CSV columns follow the field order.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogRow {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub class: String,
    pub a_l: String,
    pub m: Option<u32>,
    pub x_subset: String,
    pub eta: String,
    pub a: String,
    pub predicted: CodeClass,
    pub d: Option<usize>,
    pub code_class: Option<CodeClass>,
    pub subset_mds: bool,
    pub self_dual: bool,
    pub polynomial_check: bool,
}

#[derive(Debug, Serialize)]
struct SkippedRow {
    q: u32,
    n: usize,
    class: String,
    a_l: String,
    m: Option<u32>,
    x_subset: String,
    reason: String,
}

#[derive(Debug, Serialize)]
struct Catalog {
    rows: Vec<CatalogRow>,
    skipped: Vec<SkippedRow>,
    duplicates: usize,
    notes: Vec<String>,
}

fn show(f: &Field, x: Gf) -> String {
    f.to_coeffs(x).iter().map(u32::to_string).collect::<Vec<_>>().join(":")
}

fn show_all(f: &Field, xs: &[Gf]) -> String {
    xs.iter().map(|&x| show(f, x)).collect::<Vec<_>>().join(" ")
}

fn lengths(q: u32, given: &Option<Vec<usize>>) -> Vec<usize> {
    match given {
        Some(ns) => ns.iter().copied().filter(|&n| n <= q as usize).collect(),
        None => (2..=q.min(8) as usize).step_by(2).collect(),
    }
}

pub fn run(args: &SweepArgs, cfg: &RunConfig) -> Result<Status> {
    if args.q.len() > 1 && (cfg.modulus.is_some() || cfg.generator.is_some()) {
        bail!("--modulus/--generator apply to a single q");
    }
    let caps = cfg.caps();
    let config = SweepConfig { classes: args.class.classes(), subset_limit: args.subsets, caps };
    let mut catalog = Catalog { rows: Vec::new(), skipped: Vec::new(), duplicates: 0, notes: Vec::new() };
    let mut params: Vec<GtrsParams> = Vec::new();
    let mut ok = true;

    for &q in &args.q {
        let field = cfg.quadratic_field(q)?;
        let ns = lengths(q, &args.n);
        if ns.is_empty() {
            catalog.notes.push(format!("q = {q}: no even length n <= q requested"));
            continue;
        }
        let out = sweep_constructions(&field, &ns, &config)?;
        catalog.duplicates += out.duplicates;
        if out.degenerate > 0 {
            catalog.notes.push(format!("q = {q}: {} configurations with a != 0 and vanishing pivot", out.degenerate));
        }
        for s in out.skipped {
            catalog.skipped.push(SkippedRow {
                q,
                n: s.n,
                class: s.class.to_string(),
                a_l: show(&field, s.a_l),
                m: s.m,
                x_subset: show_all(&field, &s.x_subset),
                reason: s.reason,
            });
        }
        for r in &out.results {
            for c in &r.eta_candidates {
                let p = r.params(c.eta)?;
                let code = p.code()?;
                let self_dual = code.is_hermitian_self_dual()?;
                let poly = plus_self_dual_report(&p)?.polynomial;
                let cls = classify_params(&p, &caps)?;
                let subset_mds = is_mds_plus(&r.alpha, c.eta, r.k(), caps.subset)?;
                ok &= self_dual && poly && cls.consistent();
                catalog.rows.push(CatalogRow {
                    q,
                    n: r.n,
                    k: r.k(),
                    class: r.class.to_string(),
                    a_l: show(&field, r.a_l),
                    m: r.m,
                    x_subset: show_all(&field, &r.x_subset),
                    eta: show(&field, c.eta),
                    a: show(&field, r.a),
                    predicted: c.class,
                    d: cls.d,
                    code_class: cls.class,
                    subset_mds,
                    self_dual,
                    polynomial_check: poly,
                });
                params.push(p);
            }
        }
    }
    if catalog.rows.is_empty() {
        catalog.notes.push("empty catalog: no admissible configuration".into());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let picks = sample(&mut rng, params.len(), args.spot_checks.min(params.len()));
    for i in picks.iter() {
        let text = serde_json::to_string(&GtrsJson::from_params(&params[i]))?;
        let back: GtrsJson = serde_json::from_str(&text)?;
        let again = classify_params(&back.to_params()?, &caps)?;
        if again.d != catalog.rows[i].d || again.class != catalog.rows[i].code_class {
            bail!("spot check failed on catalog row {i}");
        }
    }

    match cfg.format {
        Format::Json => cfg.emit_json(&catalog)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if catalog.rows.is_empty() {
                w.write_record(CSV_HEADER)?;
            }
            for row in &catalog.rows {
                w.serialize(row)?;
            }
            cfg.emit(&w.into_inner()?)?;
        }
    }
    Ok(Status::from_bool(ok))
}

pub const CSV_HEADER: [&str; 15] = [
    "q",
    "n",
    "k",
    "class",
    "a_l",
    "m",
    "x_subset",
    "eta",
    "a",
    "predicted",
    "d",
    "code_class",
    "subset_mds",
    "self_dual",
    "polynomial_check",
];
