//! `verify`: the identity suites, streamed as JSON lines.

use std::io::Write;

use clap::{Args, ValueEnum};
use dihedral_dunkl::dunkl::{verify_angular_momenta, verify_equivariance, verify_osp12, Kappa, Report, RootSystem};
use dihedral_dunkl::symalg::{
    build_symmetries, verify_action_tables, verify_central, verify_commutation_rules, verify_ladder_relations,
    verify_presentation, verify_supercommutation,
};
use rayon::prelude::*;
use serde_json::json;

use crate::config::{KappaArgs, Output, SessionConfig};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// The osp(1|2) relations, the Dunkl commutators and W-equivariance.
    Osp12,
    /// Commutators and the cyclic identities of the deformed angular momenta.
    AngularMomenta,
    /// Supercommutation, commutation rules, ladder relations, the group
    /// presentation and centrality of O₁₂₃.
    Symmetries,
    /// The action tables of the lifted reflections on the symmetries.
    Actions,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Osp12 => "osp12",
            Suite::AngularMomenta => "angular-momenta",
            Suite::Symmetries => "symmetries",
            Suite::Actions => "actions",
            Suite::All => "all",
        }
    }

    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Osp12, Suite::AngularMomenta, Suite::Symmetries, Suite::Actions],
            s => vec![s],
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub m: u32,
    #[command(flatten)]
    pub kappa: KappaArgs,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub delta: i32,
    #[arg(long, default_value_t = 3)]
    pub max_degree: u32,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Also run on this many random κ triples drawn from --seed.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Output::Json)]
    pub format: Output,
}

fn run_suite(rs: &RootSystem, delta: i32, suite: Suite, d: u32) -> Result<Report, CliError> {
    let internal = |e: String| CliError::failure(e);
    Ok(match suite {
        Suite::Osp12 => {
            let mut r = verify_osp12(rs, delta, d).map_err(|e| internal(e.to_string()))?;
            r.extend(verify_equivariance(rs, d));
            r
        }
        Suite::AngularMomenta => verify_angular_momenta(rs, d),
        Suite::Symmetries | Suite::Actions => {
            let s = build_symmetries(rs, delta).map_err(|e| internal(e.to_string()))?;
            if suite == Suite::Actions {
                verify_action_tables(&s, d)
            } else {
                let mut r = verify_supercommutation(&s, d);
                r.extend(verify_commutation_rules(&s, d));
                r.extend(verify_ladder_relations(&s, d));
                r.extend(verify_presentation(&s, d));
                r.extend(verify_central(&s, d));
                r
            }
        }
        Suite::All => unreachable!("expanded before running"),
    })
}

pub fn run(args: &VerifyArgs, out: &mut impl Write) -> Result<bool, CliError> {
    let cfg = SessionConfig::new(args.m, &args.kappa, args.delta, args.max_degree, args.seed, args.format)?;
    let mut kappas = vec![cfg.kappa.clone()];
    kappas.extend(Kappa::sample(cfg.m, cfg.seed, args.samples));
    let suites = args.suite.expand();
    let (mut checks, mut failures) = (0usize, 0usize);
    for kappa in &kappas {
        let rs = RootSystem::new(cfg.m, kappa.clone()).map_err(|e| CliError::usage(e.to_string()))?;
        let reports: Vec<Result<Report, CliError>> =
            suites.par_iter().map(|&s| run_suite(&rs, cfg.delta, s, cfg.max_degree)).collect();
        for (suite, report) in suites.iter().zip(reports) {
            for r in report?.0 {
                checks += 1;
                failures += usize::from(!r.passed());
                match cfg.output {
                    Output::Text => writeln!(
                        out,
                        "{} {} [{}] degree {} kappa=({}, {}, {})",
                        if r.passed() { "PASS" } else { "FAIL" },
                        r.identity,
                        suite.name(),
                        r.degree,
                        kappa.k0,
                        kappa.k1,
                        kappa.km
                    )?,
                    _ => {
                        let line = json!({
                            "suite": suite.name(),
                            "m": cfg.m,
                            "delta": cfg.delta,
                            "kappa": kappa,
                            "result": r,
                        });
                        writeln!(out, "{line}")?;
                    }
                }
            }
            out.flush()?;
        }
    }
    let passed = failures == 0;
    match cfg.output {
        Output::Text => writeln!(out, "{checks} checks, {failures} failed")?,
        _ => writeln!(out, "{}", json!({ "summary": { "checks": checks, "failures": failures, "passed": passed } }))?,
    }
    Ok(passed)
}
