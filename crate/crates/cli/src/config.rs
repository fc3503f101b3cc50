//! Command-line configuration shared by the subcommands.

use clap::{Args, ValueEnum};
use dihedral_dunkl::dunkl::Kappa;
use dihedral_dunkl::Rat;

use crate::error::CliError;

/// Multiplicities as exact fractions. κₘ defaults to κ₁.
#[derive(Args, Clone, Debug)]
pub struct KappaArgs {
    /// κ₀ as p/q.
    #[arg(long, default_value = "0")]
    pub kappa0: String,
    /// κ₁ as p/q.
    #[arg(long, default_value = "0")]
    pub kappa1: String,
    /// κₘ as p/q; defaults to κ₁.
    #[arg(long)]
    pub kappam: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Latex,
    Text,
}

/// The validated common settings of a run.
#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub m: u32,
    pub kappa: Kappa,
    pub delta: i32,
    pub max_degree: u32,
    pub seed: u64,
    pub output: Output,
}

pub fn parse_rat(name: &str, s: &str) -> Result<Rat, CliError> {
    s.parse::<Rat>().map_err(|_| CliError::usage(format!("--{name} must be an exact fraction p/q, got {s:?}")))
}

impl KappaArgs {
    pub fn resolve(&self, m: u32) -> Result<Kappa, CliError> {
        let k0 = parse_rat("kappa0", &self.kappa0)?;
        let k1 = parse_rat("kappa1", &self.kappa1)?;
        let km = match &self.kappam {
            Some(s) => parse_rat("kappam", s)?,
            None => k1.clone(),
        };
        check_kappa(m, Kappa::new(k0, k1, km))
    }
}

pub fn check_m(m: u32) -> Result<u32, CliError> {
    if m < 2 {
        return Err(CliError::usage(format!("--m must be at least 2, got {m}")));
    }
    Ok(m)
}

pub fn check_delta(delta: i32) -> Result<i32, CliError> {
    if delta != 1 && delta != -1 {
        return Err(CliError::usage(format!("--delta must be 1 or -1, got {delta}")));
    }
    Ok(delta)
}

pub fn check_kappa(m: u32, k: Kappa) -> Result<Kappa, CliError> {
    if m % 2 == 1 && k.k1 != k.km {
        return Err(CliError::usage(format!("odd m = {m} needs kappa1 = kappam, got {} and {}", k.k1, k.km)));
    }
    Ok(k)
}

impl SessionConfig {
    pub fn new(m: u32, kappa: &KappaArgs, delta: i32, max_degree: u32, seed: u64, output: Output) -> Result<Self, CliError> {
        let m = check_m(m)?;
        Ok(SessionConfig { m, kappa: kappa.resolve(m)?, delta: check_delta(delta)?, max_degree, seed, output })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(k0: &str, k1: &str, km: Option<&str>) -> KappaArgs {
        KappaArgs { kappa0: k0.into(), kappa1: k1.into(), kappam: km.map(Into::into) }
    }

    #[test]
    fn kappam_defaults_to_kappa1() {
        let k = args("1/2", "1/3", None).resolve(3).unwrap();
        assert_eq!(k.km, Rat::new(1, 3));
    }

    #[test]
    fn decimals_are_refused() {
        assert!(args("0.5", "1/3", None).resolve(2).is_err());
    }

    #[test]
    fn odd_m_needs_equal_multiplicities() {
        assert!(args("1/2", "1/3", Some("1/4")).resolve(5).is_err());
        assert!(args("1/2", "1/3", Some("1/4")).resolve(4).is_ok());
    }

    #[test]
    fn delta_and_m_are_validated() {
        assert!(check_delta(0).is_err());
        assert!(check_m(1).is_err());
    }
}
