use anyhow::Result;
use clap::Args;
use gtrs_core::table::{field_with_generator, reproduce, search_convention, Q};
use gtrs_core::Field;

use super::Status;
use crate::config::RunConfig;

#[derive(Clone, Debug, Args)]
pub struct TableArgs {
    /// Check only the eta at this position in each row.
    #[arg(long)]
    pub eta_index: Option<usize>,
}

/// Uses `--modulus`/`--generator` when given, otherwise searches for the
/// convention.
pub fn run(args: &TableArgs, cfg: &RunConfig) -> Result<Status> {
    cfg.require_json("table")?;
    let caps = cfg.caps();
    let field = match (&cfg.modulus, &cfg.generator) {
        (None, None) => search_convention(&caps)?,
        (None, Some(g)) => field_with_generator(g)?,
        (m, g) => Field::with_params(Q, 2, m.as_deref(), g.as_deref())?,
    };
    let report = reproduce(&field, args.eta_index, &caps)?;
    cfg.emit_json(&report)?;
    for row in &report.rows {
        eprintln!(
            "row {} ({}) [{},{},{}]: {}",
            row.row,
            row.class,
            row.stated[0],
            row.stated[1],
            row.stated[2],
            if row.pass { "pass" } else { "FAIL" }
        );
    }
    Ok(Status::from_bool(report.all_pass()))
}
