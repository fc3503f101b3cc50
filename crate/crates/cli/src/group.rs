//! `group tables`: irreps and characters of a double cover.

use std::io::Write;

use clap::{Args, Subcommand};
use dihedral_dunkl::grp::{group_tables, CoverSign};

use crate::config::check_m;
use crate::error::CliError;
use crate::monogenics::Format;

#[derive(Subcommand, Debug)]
pub enum GroupCommand {
    /// Conjugacy classes, irreps and the character table.
    Tables(TablesArgs),
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[arg(long)]
    pub m: u32,
    /// plus or minus.
    #[arg(long)]
    pub cover: CoverSign,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

pub fn tables(args: &TablesArgs, out: &mut impl Write) -> Result<bool, CliError> {
    let m = check_m(args.m)?;
    let t = group_tables(m, args.cover).map_err(|e| CliError::failure(e.to_string()))?;
    match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&t).expect("tables serialize"))?,
        Format::Latex => write!(out, "{}", t.to_latex())?,
    }
    Ok(t.check.passed())
}
