//! `monogenics`: the degree-n basis, optionally with its verification report.

use std::io::Write;

use clap::{Args, ValueEnum};
use dihedral_dunkl::dunkl::RootSystem;
use dihedral_dunkl::monogenics::{verify_monogenic_rep, Monogenic3D, Monogenics};
use dihedral_dunkl::poly::Spin;
use serde_json::json;

use crate::config::{check_delta, check_m, KappaArgs};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
}

/// Which construction of the basis to print.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    /// Cauchy–Kovalevskaya extension of x̂^{n−k}Φ_k^±.
    Extension,
    /// The closed form with Jacobi polynomials.
    ClosedForm,
}

#[derive(Args, Debug)]
pub struct MonogenicsArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub delta: i32,
    #[command(flatten)]
    pub kappa: KappaArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = Construction::Extension)]
    pub construction: Construction,
    /// Also check dimension, actions and the module structure; exit 1 on
    /// failure.
    #[arg(long)]
    pub verify: bool,
}

fn sign(s: Spin) -> &'static str {
    if s == Spin::Up {
        "+"
    } else {
        "-"
    }
}

fn latex(basis: &[Monogenic3D], zeta: &str) -> String {
    let mut s = String::from("\\begin{align*}\n");
    for b in basis {
        s.push_str(&format!(
            "\\psi_{{{},{}}}^{{{}}} &= {} \\\\\n",
            b.n,
            b.k,
            sign(b.sign),
            b.psi.render(zeta, true)
        ));
    }
    s.push_str("\\end{align*}\n");
    s
}

pub fn run(args: &MonogenicsArgs, out: &mut impl Write) -> Result<bool, CliError> {
    let m = check_m(args.m)?;
    let delta = check_delta(args.delta)?;
    let kappa = args.kappa.resolve(m)?;
    let rs = RootSystem::new(m, kappa.clone()).map_err(|e| CliError::usage(e.to_string()))?;
    let mono = Monogenics::positive(&rs, delta).map_err(|e| CliError::usage(e.to_string()))?;
    let basis = match args.construction {
        Construction::Extension => mono.monogenic_basis(args.n),
        Construction::ClosedForm => mono.explicit_basis(args.n),
    }
    .map_err(|e| CliError::failure(e.to_string()))?;
    let order = mono.field().order();
    let report = if args.verify {
        Some(verify_monogenic_rep(&rs, delta, args.n).map_err(|e| CliError::failure(e.to_string()))?)
    } else {
        None
    };
    match args.format {
        Format::Latex => {
            writeln!(out, "% m = {m}, n = {}, delta = {delta}, kappa = ({}, {}, {}); zeta = exp(2 pi i/{order})", args.n, kappa.k0, kappa.k1, kappa.km)?;
            write!(out, "{}", latex(&basis, "\\zeta"))?;
        }
        Format::Json => {
            let elements: Vec<_> = basis
                .iter()
                .map(|b| {
                    json!({
                        "n": b.n,
                        "k": b.k,
                        "sign": sign(b.sign),
                        "text": b.psi.render(&format!("z{order}"), false),
                        "psi": b.psi,
                    })
                })
                .collect();
            let doc = json!({
                "m": m,
                "n": args.n,
                "delta": delta,
                "kappa": kappa,
                "root_of_unity_order": order,
                "basis": elements,
                "report": report,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("basis serializes"))?;
        }
    }
    Ok(report.map_or(true, |r| r.passed()))
}
