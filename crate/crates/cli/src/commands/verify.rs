use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use gtrs_core::selfdual::{plus_self_dual_report, SelfDualError};
use gtrs_core::serial::{Coeffs, Document};
use gtrs_core::{GtrsParams, LinearCode};
use serde::Serialize;

use super::Status;
use crate::config::{read_input, RunConfig};

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    /// Code file: a construction, a GTRS datum or a generator matrix (`-` for stdin).
    pub file: PathBuf,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<Coeffs>,
    pub hermitian_self_dual: bool,
    pub gram_zero: bool,
    /// `null` when the input is not a (+) datum or the check does not apply.
    pub polynomial_check: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Serialize)]
struct Output {
    hermitian_self_dual: bool,
    instances: Vec<VerifyReport>,
}

fn verify_code(code: &LinearCode) -> Result<VerifyReport> {
    if code.n() % 2 != 0 {
        return Ok(VerifyReport {
            eta: None,
            hermitian_self_dual: false,
            gram_zero: code.hermitian_gram()?.is_zero(),
            polynomial_check: None,
            reason: Some("n odd".into()),
        });
    }
    let gram_zero = code.hermitian_gram()?.is_zero();
    Ok(VerifyReport {
        eta: None,
        hermitian_self_dual: code.is_hermitian_self_dual()?,
        gram_zero,
        polynomial_check: None,
        reason: (code.n() != 2 * code.k()).then(|| "n != 2k".into()),
    })
}

pub fn verify_params(p: &GtrsParams) -> Result<VerifyReport> {
    let mut report = verify_code(&p.code()?)?;
    report.eta = p.twist().plus_eta().map(|e| p.field().to_coeffs(e));
    if report.reason.is_some() {
        return Ok(report);
    }
    match plus_self_dual_report(p) {
        Ok(r) => {
            report.polynomial_check = Some(r.polynomial);
            if r.polynomial != r.gram_zero {
                report.reason = Some("Gram and polynomial checks disagree".into());
            }
        }
        Err(SelfDualError::NotPlus) => report.reason = Some("not a (+) code".into()),
        Err(SelfDualError::ExcludedEta) => report.reason = Some("excluded eta: 1 + a*eta = 0".into()),
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

pub fn run(args: &VerifyArgs, cfg: &RunConfig) -> Result<Status> {
    cfg.require_json("verify")?;
    let doc = Document::parse(&read_input(&args.file)?)?;
    let instances = match doc {
        Document::Construction(c) => c
            .instances()?
            .iter()
            .map(|(p, _)| verify_params(p))
            .collect::<Result<Vec<_>>>()?,
        Document::Gtrs(g) => vec![verify_params(&g.to_params()?)?],
        Document::Code(c) => vec![verify_code(&c.to_code()?)?],
    };
    let all = !instances.is_empty() && instances.iter().all(|r| r.hermitian_self_dual);
    cfg.emit_json(&Output { hermitian_self_dual: all, instances })?;
    Ok(Status::from_bool(all))
}
