use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use gtrs_core::codes::CodeError;
use gtrs_core::gtrs::is_mds_plus;
use gtrs_core::serial::{Coeffs, Document};
use gtrs_core::{Caps, CodeClass, GtrsParams, LinearCode};
use serde::Serialize;

use super::Status;
use crate::config::{read_input, RunConfig};

#[derive(Clone, Debug, Args)]
pub struct ClassifyArgs {
    /// Code file: a construction, a GTRS datum or a generator matrix (`-` for stdin).
    pub file: PathBuf,
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<Coeffs>,
    pub n: usize,
    pub k: usize,
    /// `null` when the distance computation exceeds the caps.
    pub d: Option<usize>,
    pub dual_distance: Option<usize>,
    pub class: Option<CodeClass>,
    /// k-subset sum verdict, for (+) data.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset_mds: Option<bool>,
    /// Class recorded by the constructor (`MDS` unless `a*eta + 2 = 0`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<CodeClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClassifyReport {
    /// The subset verdict, when present, agrees with the distance.
    pub fn consistent(&self) -> bool {
        match (self.subset_mds, self.class) {
            (Some(s), Some(c)) => s == (c == CodeClass::Mds),
            _ => true,
        }
    }
}

#[derive(Debug, Serialize)]
struct Output {
    instances: Vec<ClassifyReport>,
}

pub fn classify_code(code: &LinearCode, caps: &Caps) -> Result<ClassifyReport> {
    let mut report = ClassifyReport {
        eta: None,
        n: code.n(),
        k: code.k(),
        d: None,
        dual_distance: None,
        class: None,
        subset_mds: None,
        predicted: None,
        note: None,
    };
    match code.classify(caps.distance) {
        Ok(c) => {
            report.d = Some(c.d);
            report.dual_distance = c.dual_distance;
            report.class = Some(c.class);
        }
        Err(CodeError::CapExceeded { size, cap }) => {
            report.note = Some(format!("distance cap exceeded ({size} > {cap}); subset criterion only"));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

pub fn classify_params(p: &GtrsParams, caps: &Caps) -> Result<ClassifyReport> {
    let mut report = classify_code(&p.code()?, caps)?;
    if let Some(eta) = p.twist().plus_eta() {
        report.eta = Some(p.field().to_coeffs(eta));
        report.subset_mds = Some(is_mds_plus(p.alpha(), eta, p.k(), caps.subset)?);
    }
    Ok(report)
}

pub fn run(args: &ClassifyArgs, cfg: &RunConfig) -> Result<Status> {
    cfg.require_json("classify")?;
    let caps = cfg.caps();
    let doc = Document::parse(&read_input(&args.file)?)?;
    let instances = match doc {
        Document::Construction(c) => c
            .instances()?
            .iter()
            .map(|(p, predicted)| {
                let mut r = classify_params(p, &caps)?;
                r.predicted = Some(*predicted);
                Ok(r)
            })
            .collect::<Result<Vec<_>>>()?,
        Document::Gtrs(g) => vec![classify_params(&g.to_params()?, &caps)?],
        Document::Code(c) => vec![classify_code(&c.to_code()?, &caps)?],
    };
    let ok = instances.iter().all(ClassifyReport::consistent);
    cfg.emit_json(&Output { instances })?;
    Ok(Status::from_bool(ok))
}
