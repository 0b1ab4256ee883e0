use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use gtrs_core::serial::{CodeJson, Document, GtrsJson};
use gtrs_core::{GtrsParams, LinearCode};
use serde::Serialize;

use super::Status;
use crate::config::{read_input, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DualMode {
    /// Kernel of the generator.
    Euclidean,
    /// Kernel of the conjugated generator over GF(q^2).
    Hermitian,
    /// Closed-form dual datum for locators forming a multiplicative subgroup.
    Subgroup,
    /// Closed-form dual of a (+) datum with `1 + a*eta != 0`.
    Plus,
}

#[derive(Clone, Debug, Args)]
pub struct DualArgs {
    /// Code file: a construction, a GTRS datum or a generator matrix (`-` for stdin).
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub mode: DualMode,
    /// For construction files: which listed eta to use.
    #[arg(long, default_value_t = 0)]
    pub eta_index: usize,
}

#[derive(Debug, Serialize)]
struct ClosedForm {
    dual: GtrsJson,
    agrees_with_kernel: bool,
}

enum Input {
    Params(GtrsParams),
    Code(LinearCode),
}

fn load(args: &DualArgs) -> Result<Input> {
    Ok(match Document::parse(&read_input(&args.file)?)? {
        Document::Construction(c) => {
            let mut inst = c.instances()?;
            if args.eta_index >= inst.len() {
                bail!("eta index {} out of range ({} listed)", args.eta_index, inst.len());
            }
            Input::Params(inst.swap_remove(args.eta_index).0)
        }
        Document::Gtrs(g) => Input::Params(g.to_params()?),
        Document::Code(c) => Input::Code(c.to_code()?),
    })
}

pub fn run(args: &DualArgs, cfg: &RunConfig) -> Result<Status> {
    cfg.require_json("dual")?;
    let input = load(args)?;
    let code = match &input {
        Input::Params(p) => p.code()?,
        Input::Code(c) => c.clone(),
    };
    let closed = match args.mode {
        DualMode::Euclidean => {
            cfg.emit_json(&CodeJson::from_code(&code.dual_euclidean()))?;
            return Ok(Status::Ok);
        }
        DualMode::Hermitian => {
            cfg.emit_json(&CodeJson::from_code(&code.dual_hermitian()?))?;
            return Ok(Status::Ok);
        }
        DualMode::Subgroup | DualMode::Plus => {
            let Input::Params(p) = &input else {
                bail!("{:?} mode needs a GTRS datum, not a bare generator", args.mode);
            };
            if args.mode == DualMode::Subgroup {
                let h = p.dual_parity_matrix_multiplicative()?;
                if !p.generator_matrix()?.mul(&h.transpose())?.is_zero() {
                    bail!("internal error: parity matrix is not orthogonal to the generator");
                }
                p.dual_twist_params_multiplicative()?
            } else {
                p.plus_dual_euclidean()?
            }
        }
    };
    let agrees = closed.code()?.equals(&code.dual_euclidean())?;
    cfg.emit_json(&ClosedForm { dual: GtrsJson::from_params(&closed), agrees_with_kernel: agrees })?;
    Ok(Status::from_bool(agrees))
}
