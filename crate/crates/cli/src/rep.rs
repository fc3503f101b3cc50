//! `rep build` and `rep classify`.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use dihedral_dunkl::dunkl::Kappa;
use dihedral_dunkl::reps::{build_rep, certify, classify_scan, Case, Family, RepError, RepSpec};
use serde::Deserialize;
use serde_json::json;

use crate::config::{check_delta, check_kappa, check_m, parse_rat, KappaArgs};
use crate::error::CliError;

#[derive(Subcommand, Debug)]
pub enum RepCommand {
    /// Build the matrices of one cell of the classification.
    Build(BuildArgs),
    /// Compare table and certificate verdicts over a κ grid.
    Classify(ClassifyArgs),
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long = "N")]
    pub n: u32,
    #[arg(long)]
    pub ell: u32,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub delta: i32,
    /// I, II, III (odd m) or I.i, I.ii, II, III (even m).
    #[arg(long)]
    pub case: Case,
    #[arg(long)]
    pub lambda_branch: u8,
    /// Λ family, 1 or 2.
    #[arg(long = "Lambda-branch")]
    pub family: Family,
    #[command(flatten)]
    pub kappa: KappaArgs,
    /// Where to write the matrices; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long = "N-max")]
    pub n_max: u32,
    /// JSON array of κ triples, each ["p/q", "p/q", "p/q"] or
    /// {"kappa0": .., "kappa1": .., "kappam": ..}.
    #[arg(long)]
    pub kappa_grid: PathBuf,
    /// Where to write the full scan; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GridPoint {
    Triple([String; 3]),
    Named { kappa0: String, kappa1: String, kappam: Option<String> },
}

fn write_or_print(path: Option<&Path>, text: &str, out: &mut impl Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(format!("{}: {e}", p.display()))),
        None => Ok(writeln!(out, "{text}")?),
    }
}

fn rep_error(e: RepError) -> CliError {
    match e {
        RepError::NoRepresentation(n) => {
            CliError::usage(format!("no representations in this case (case III with odd N = {n})"))
        }
        RepError::IncompatibleCase(_) => CliError::usage(e.to_string()),
        _ => CliError::failure(e.to_string()),
    }
}

pub fn build(args: &BuildArgs, out: &mut impl Write) -> Result<bool, CliError> {
    let m = check_m(args.m)?;
    let spec = RepSpec::new(
        m,
        args.n,
        args.ell,
        check_delta(args.delta)?,
        args.case,
        args.lambda_branch,
        args.family,
        args.kappa.resolve(m)?,
    );
    let rep = build_rep(&spec).map_err(rep_error)?;
    let cert = certify(&rep);
    let text = serde_json::to_string_pretty(&rep).expect("matrices serialize");
    write_or_print(args.out.as_deref(), &text, out)?;
    if args.out.is_some() {
        let summary = json!({
            "dim": rep.dim(),
            "lambda": rep.data.lambda,
            "Lambda": rep.data.big_lambda,
            "certificate": cert,
        });
        writeln!(out, "{summary}")?;
    }
    Ok(true)
}

pub fn read_grid(path: &Path, m: u32) -> Result<Vec<Kappa>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    let points: Vec<GridPoint> =
        serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    points
        .into_iter()
        .map(|p| {
            let (a, b, c) = match p {
                GridPoint::Triple([a, b, c]) => (a, b, Some(c)),
                GridPoint::Named { kappa0, kappa1, kappam } => (kappa0, kappa1, kappam),
            };
            let k1 = parse_rat("kappa1", &b)?;
            let km = match c {
                Some(c) => parse_rat("kappam", &c)?,
                None => k1.clone(),
            };
            check_kappa(m, Kappa::new(parse_rat("kappa0", &a)?, k1, km))
        })
        .collect()
}

pub fn classify(args: &ClassifyArgs, out: &mut impl Write) -> Result<bool, CliError> {
    let m = check_m(args.m)?;
    let grid = read_grid(&args.kappa_grid, m)?;
    let summary = classify_scan(m, args.n_max, &grid);
    if let Some(p) = &args.out {
        let text = serde_json::to_string_pretty(&summary).expect("scan serializes");
        write_or_print(Some(p), &text, out)?;
    } else {
        for row in &summary.rows {
            writeln!(out, "{}", json!({ "cell": row, "agrees": row.agrees() }))?;
        }
    }
    let disagreements: Vec<_> = summary
        .disagreements()
        .map(|r| {
            format!(
                "m={} N={} ell={} delta={} case={} branch={} family={:?} kappa=({}, {}, {})",
                r.m, r.n, r.ell, r.delta, r.case, r.lambda_branch, r.family, r.kappa.k0, r.kappa.k1, r.kappa.km
            )
        })
        .collect();
    writeln!(
        out,
        "{}",
        json!({ "summary": {
            "cells": summary.cells,
            "agreements": summary.agreements,
            "unitary_violations": summary.unitary_violations,
            "disagreements": disagreements,
            "passed": summary.all_agree(),
        }})
    )?;
    Ok(summary.all_agree())
}
