use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use gtrs_core::selfdual::{canonical_subsets, construct_class1, construct_class2};
use gtrs_core::serial::ConstructionJson;
use gtrs_core::ConstructionClass;

use super::Status;
use crate::config::{parse_element, parse_elements, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "both")]
    Both,
}

impl ClassArg {
    pub fn classes(self) -> Vec<ConstructionClass> {
        match self {
            ClassArg::I => vec![ConstructionClass::I],
            ClassArg::II => vec![ConstructionClass::II],
            ClassArg::Both => vec![ConstructionClass::I, ConstructionClass::II],
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub class: ClassArg,
    /// Subfield order; the code lives over GF(q^2).
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub n: usize,
    /// Coset label in GF(q).
    #[arg(long = "al", default_value = "0", allow_hyphen_values = true)]
    pub a_l: String,
    /// Exponent of the class II multiplier w^m, 1 <= m <= q.
    #[arg(long)]
    pub m: Option<u32>,
    /// The n distinct elements x_i of GF(q).
    #[arg(long, value_delimiter = ',', conflicts_with = "auto", allow_hyphen_values = true)]
    pub x: Option<Vec<String>>,
    /// Use the first canonical subset (the default when --x is absent).
    #[arg(long)]
    pub auto: bool,
}

pub fn run(args: &ConstructArgs, cfg: &RunConfig) -> Result<Status> {
    cfg.require_json("construct")?;
    let field = cfg.quadratic_field(args.q)?;
    let a_l = parse_element(&field, &args.a_l)?;
    let x = match &args.x {
        Some(items) => parse_elements(&field, items)?,
        None => {
            let sub = field.quadratic()?.subfield_elements();
            if args.n > sub.len() {
                bail!("length {} not admissible for q = {}", args.n, args.q);
            }
            let first = canonical_subsets(&field, args.n, 1)?.into_iter().next();
            match first {
                Some(idx) => idx.iter().map(|&i| sub[i]).collect(),
                None => bail!("no subset of size {}", args.n),
            }
        }
    };
    let caps = cfg.caps();
    let result = match args.class {
        ClassArg::I => construct_class1(&field, a_l, &x, &caps)?,
        ClassArg::II => {
            let Some(m) = args.m else { bail!("class II needs --m") };
            construct_class2(&field, a_l, m, &x, &caps)?
        }
        ClassArg::Both => bail!("construct takes a single class"),
    };
    cfg.emit_json(&ConstructionJson::from_result(&result))?;
    Ok(Status::Ok)
}
