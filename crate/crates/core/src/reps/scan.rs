//! Cross-validation of the admissibility tables against the certificate on
//! a grid of parameters.

use rayon::prelude::*;
use serde::Serialize;

use super::{build_rep, certify, check_admissibility, resolve_lambda_lambda, Case, Family, RepSpec};
use crate::dunkl::Kappa;

/// One scanned representation.
#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub spec: RepSpec,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub m: u32,
    pub n: u32,
    pub ell: u32,
    pub delta: i32,
    pub case: Case,
    pub lambda_branch: u8,
    pub family: Family,
    pub kappa: Kappa,
    pub lambda: String,
    pub table_irreducible: bool,
    pub table_unitary: bool,
    pub violated_constraints: Vec<String>,
    pub build_error: Option<String>,
    pub relation_failures: Vec<String>,
    pub commutant_dim: Option<usize>,
    pub certified_irreducible: bool,
    pub certified_unitary: bool,
    /// Some A(k) of the built module is zero.
    pub ladder_vanishes: bool,
    /// Sorted O₀ spectrum, for spotting equivalent cells.
    pub spectrum: Vec<String>,
}

impl ScanRow {
    pub fn agrees(&self) -> bool {
        self.table_irreducible == self.certified_irreducible
    }

    /// Table unitarity is sufficient only: it may not claim more than the certificate.
    pub fn unitarity_consistent(&self) -> bool {
        !self.table_unitary || self.certified_unitary
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ScanSummary {
    pub cells: usize,
    pub agreements: usize,
    pub unitary_violations: usize,
    pub rows: Vec<ScanRow>,
}

impl ScanSummary {
    pub fn disagreements(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| !r.agrees())
    }

    pub fn all_agree(&self) -> bool {
        self.agreements == self.cells && self.unitary_violations == 0
    }
}

fn ell_range(m: u32) -> std::ops::RangeInclusive<u32> {
    if m % 2 == 1 {
        0..=m / 2
    } else {
        0..=m / 2 - 1
    }
}

/// Every spec with N ≤ n_max whose λ and Λ resolve, for each κ on the grid.
pub fn scan_cells(m: u32, n_max: u32, grid: &[Kappa]) -> Vec<Cell> {
    let mut out = Vec::new();
    for kappa in grid {
        for n in 0..=n_max {
            for ell in ell_range(m) {
                for &case in Case::for_parity(m) {
                    for &branch in case.branches(m) {
                        for delta in [1, -1] {
                            for family in [Family::One, Family::Two] {
                                let spec = RepSpec::new(m, n, ell, delta, case, branch, family, kappa.clone());
                                if resolve_lambda_lambda(&spec).is_ok() {
                                    out.push(Cell { spec });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Table verdict and certificate for one spec.
pub fn scan_spec(s: &RepSpec) -> ScanRow {
    let verdict = check_admissibility(s);
    let lambda = resolve_lambda_lambda(s).map(|(l, _)| l.to_string()).unwrap_or_default();
    let mut row = ScanRow {
        m: s.m,
        n: s.n,
        ell: s.ell,
        delta: s.delta,
        case: s.case,
        lambda_branch: s.lambda_branch,
        family: s.family,
        kappa: s.kappa.clone(),
        lambda,
        table_irreducible: verdict.irreducible,
        table_unitary: verdict.unitary_sufficient,
        violated_constraints: verdict.violated_constraints,
        build_error: None,
        relation_failures: vec![],
        commutant_dim: None,
        certified_irreducible: false,
        certified_unitary: false,
        ladder_vanishes: false,
        spectrum: vec![],
    };
    match build_rep(s) {
        Ok(r) => {
            let c = certify(&r);
            let mut spec: Vec<_> = (0..r.dim()).map(|i| r.o0.get(i, i).clone()).collect();
            spec.sort_by(|a, b| a.to_complex_f64().0.total_cmp(&b.to_complex_f64().0));
            row.spectrum = spec.iter().map(|x| x.to_string()).collect();
            row.relation_failures = c.relation_failures;
            row.commutant_dim = Some(c.commutant_dim);
            row.certified_irreducible = c.irreducible;
            row.certified_unitary = c.unitary;
            row.ladder_vanishes = r.a.iter().any(|x| x.is_zero());
        }
        Err(e) => row.build_error = Some(e.to_string()),
    }
    row
}

/// Evaluates table and certificate on every cell, in parallel.
pub fn classify_scan(m: u32, n_max: u32, grid: &[Kappa]) -> ScanSummary {
    let cells = scan_cells(m, n_max, grid);
    let rows: Vec<ScanRow> = cells.par_iter().map(|c| scan_spec(&c.spec)).collect();
    ScanSummary {
        cells: rows.len(),
        agreements: rows.iter().filter(|r| r.agrees()).count(),
        unitary_violations: rows.iter().filter(|r| !r.unitarity_consistent()).count(),
        rows,
    }
}
