//! The admissibility tables: excluded values of κ for irreducibility and
//! sufficient conditions for unitarity, one row per (case, λ, Λ-row).

use serde::Serialize;

use super::{build_rep, half, modm, resolve_lambda_lambda, Case, RepError, RepSpec};
use crate::dunkl::Kappa;
use crate::scalar::{CycNum, Rat};

/// The table's label ℓ for the group representation of a spec.
///
/// For even m the congruences of the tables hold for the module whose lowest
/// vector has τ̂-weight ζ^{2ℓ−3}; with weight ζ^{2ℓ+1} they hold after ℓ is
/// shifted by 2. For odd m no shift is needed.
pub fn table_ell(m: u32, ell: u32) -> i64 {
    if m % 2 == 0 {
        ell as i64 + 2
    } else {
        ell as i64
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityVerdict {
    /// Table verdict: no excluded set contains κ.
    pub irreducible: bool,
    /// Every sufficient unitarity condition of the row holds.
    pub unitary_sufficient: bool,
    pub violated_constraints: Vec<String>,
    pub failed_unitarity: Vec<String>,
    /// A(1..N) from the built module, when it could be built.
    pub a_values: Vec<CycNum>,
    /// Direct verdict: the module builds and no A(k) vanishes.
    pub direct_irreducible: bool,
    pub build_error: Option<String>,
}

struct Ctx {
    m: i64,
    p: i64,
    n: i64,
    l: i64,
    lam: Rat,
    k0: Rat,
    k1: Rat,
    km: Rat,
}

impl Ctx {
    fn ks(&self) -> impl Iterator<Item = i64> {
        1..=self.n
    }

    fn odd_ks(&self) -> impl Iterator<Item = i64> {
        (1..=self.n).filter(|k| k % 2 == 1)
    }

    fn cong(&self, a: i64, b: i64) -> bool {
        modm(a - b, self.m as u32) == 0
    }

    fn r(&self, a: i64, b: i64) -> Rat {
        Rat::new(a, b)
    }
}

#[derive(Default)]
struct Row {
    irreducible: Vec<(String, bool)>,
    unitary: Vec<(String, bool)>,
}

impl Row {
    /// Records "value ∉ set"; the entry is violated when value lies in it.
    fn not_in(&mut self, name: &str, value: &Rat, set: impl IntoIterator<Item = Rat>) {
        let hit = set.into_iter().any(|x| &x == value);
        self.irreducible.push((name.to_string(), !hit));
    }

    fn unit(&mut self, name: &str, ok: bool) {
        self.unitary.push((name.to_string(), ok));
    }
}

/// value < min(set), vacuous when the set is empty.
fn below_min(value: &Rat, set: impl IntoIterator<Item = Rat>) -> bool {
    set.into_iter().min().is_none_or(|b| value < &b)
}

fn k0_odd_pair(c: &Ctx, row: &mut Row) {
    let set: Vec<Rat> = c.odd_ks().flat_map(|k| [c.r(k, 2), &c.lam + &half() - c.r(k, 2)]).collect();
    row.not_in("kappa0 not in {k/2, lambda+1/2-k/2 | odd k}", &c.k0, set);
}

fn k0_small_or_large(c: &Ctx, row: &mut Row, bound: &Rat, label: &str) {
    row.unit(&format!("kappa0 < 1/2 or kappa0 > {label}"), c.k0 < half() || &c.k0 > bound);
}

fn odd_rows(c: &Ctx, case: Case, branch: u8, first: bool, row: &mut Row) {
    let m = c.m;
    let n = c.n;
    let l = c.l;
    let k1 = c.k1.clone();
    let cong2 = |k: i64| c.cong(2 * (k + l), 1);
    match (case, branch) {
        (Case::I, 1) => {
            if !first {
                k0_odd_pair(c, row);
                k0_small_or_large(c, row, &c.lam, "lambda1");
            }
        }
        (Case::I, 2) => {
            if first {
                let set: Vec<Rat> = c.odd_ks().map(|k| -&c.lam - half() + c.r(k, 2)).collect();
                row.not_in("kappa0 not in {-lambda2-1/2+k/2 | odd k}", &c.k0, set);
            } else {
                k0_odd_pair(c, row);
            }
            let a = c.ks().filter(|&k| cong2(k)).map(|k| c.r(n - k + 1, 2 * m));
            let b = c.ks().filter(|&j| !c.cong(2 * j + l, -1)).map(|j| c.r(n - j + 1, m));
            row.not_in("kappa1 not in {(N-k+1)/2m, (N-j+1)/m | 2(k+l) = 1, 2j+l != -1}", &k1, a.chain(b));
            if !first {
                k0_small_or_large(c, row, &c.lam, "lambda2");
            }
            row.unit("kappa1 < 1/2m", k1 < c.r(1, 2 * m));
        }
        (Case::II, _) => {
            if !first {
                k0_odd_pair(c, row);
            }
            let set = c.ks().filter(|&k| cong2(k)).map(|k| c.r(n + 1 - k, m));
            row.not_in("kappa1 not in {(N+1-k)/m | 2(k+l) = 1}", &k1, set);
            if !first {
                k0_small_or_large(c, row, &c.lam, "lambda3");
            }
            let set = c.ks().filter(|&k| c.cong(2 * k + l, 1)).map(|k| c.r(n + 1 - k, m));
            row.unit("kappa1 < min{(N+1-k)/m | 2k+l = 1}", below_min(&k1, set));
        }
        (Case::III, _) => {
            if first {
                let set = c.ks().filter(|&k| 2 * k > n && !cong2(k)).map(|k| c.r(2 * k - n - 1, 2));
                row.not_in("kappa0 not in {(2k-N-1)/2 | k > N/2, 2(k+l) != 1}", &c.k0, set);
            } else {
                let a = c.odd_ks().flat_map(|k| [c.r(k, 2), c.r(n - k + 1, 4)]);
                let b = c.ks().filter(|&j| !cong2(j)).map(|j| c.r(n + 1 - 2 * j, 2));
                row.not_in("kappa0 not in {k/2, (N-k+1)/4, (N+1-2j)/2 | odd k, 2(j+l) != 1}", &c.k0, a.chain(b));
            }
            let set = c.ks().filter(|&k| cong2(k)).map(|k| (&c.lam - &Rat::int(k) + half()).abs() / Rat::int(m));
            row.not_in("kappa1 not in {|lambda4-k+1/2|/m | 2(k+l) = 1}", &k1, set);
            if !first {
                k0_small_or_large(c, row, &(c.r(n, 2) + half()), "N/2+1/2");
            }
            let set = c
                .ks()
                .filter(|&k| c.cong(2 * k + l, 1))
                .map(|k| (c.r(n, 2) + &c.k0 + half() - Rat::int(k)).abs() / Rat::int(m));
            row.unit("kappa1 < min{|N/2+kappa0+1/2-k|/m | 2k+l = 1}", below_min(&k1, set));
        }
        _ => unreachable!("odd-m case"),
    }
}

fn even_rows(c: &Ctx, case: Case, branch: u8, first: bool, row: &mut Row) {
    let (m, p, n, l) = (c.m, c.p, c.n, c.l);
    let sum = &c.k1 + &c.km;
    let diff = &c.k1 - &c.km;
    let adiff = diff.abs();
    let at = |k: i64, r: i64| c.cong(2 - k - l, r);
    match (case, branch) {
        (Case::Ii, 1) => {
            if !first {
                k0_odd_pair(c, row);
                k0_small_or_large(c, row, &c.lam, "lambda1");
            }
        }
        (Case::Ii, 2) => {
            if first {
                let set: Vec<Rat> = c.odd_ks().map(|k| -&c.lam - half() + c.r(k, 2)).collect();
                row.not_in("kappa0 not in {-lambda2-1/2+k/2 | odd k}", &c.k0, set);
            } else {
                k0_odd_pair(c, row);
            }
            let set: Vec<Rat> = c.ks().filter(|&k| at(k, 0)).map(|k| c.r(n - k + 1, m)).collect();
            row.not_in("kappa1 not in {(N-k+1)/m | 2-k-l = 0}", &c.k1, set.clone());
            row.not_in("kappam not in {(N-k+1)/m | 2-k-l = 0}", &c.km, set);
            let a = c.ks().filter(|&k| at(k, p)).map(|k| c.r(n - k + 1, m));
            let b = c.ks().filter(|&j| !c.cong(j, 0) && !c.cong(j, p)).map(|j| c.r(n - j + 1, p));
            row.not_in("kappa1+kappam not in {(N-k+1)/m, (N-j+1)/p | 2-k-l = p, j != 0,p}", &sum, a.chain(b));
            if !first {
                k0_small_or_large(c, row, &c.lam, "lambda2");
            }
            row.unit("kappa1+kappam < 1/p", sum < c.r(1, p));
        }
        (Case::Iii, 3) => {
            if !first {
                k0_odd_pair(c, row);
            }
            let set: Vec<Rat> = c.ks().filter(|&k| at(k, p)).map(|k| c.r(n - k + 1, m)).collect();
            row.not_in("kappam not in {(N-k+1)/m | 2-k-l = p}", &c.km, set.clone());
            if !first {
                k0_small_or_large(c, row, &c.lam, "lambda3");
            }
            row.unit("kappam < min{(N-k+1)/m | 2-k-l = p}", below_min(&c.km, set));
        }
        (Case::Iii, 4) => {
            if !first {
                k0_odd_pair(c, row);
            }
            let set: Vec<Rat> = c.ks().filter(|&k| at(k, p)).map(|k| c.r(n - k + 1, m)).collect();
            row.not_in("kappa1 not in {(N-k+1)/m | 2-k-l = p}", &c.k1, set.clone());
            let a = c.ks().filter(|&k| at(k, 0)).map(|k| c.r(n - k + 1, m));
            let b = c.ks().filter(|&j| !at(j, 0) && !at(j, p)).map(|j| c.r(n - j + 1, p));
            row.not_in("kappa1-kappam not in {(N-k+1)/m, (N-j+1)/p | 2-k-l = 0, 2-j-l != 0,p}", &diff, a.chain(b));
            if !first {
                k0_small_or_large(c, row, &c.lam, "lambda4");
            }
            row.unit("kappa1-kappam < 1/p", diff < c.r(1, p));
            row.unit("kappa1 < min{(N-k+1)/m | 2-k-l = p}", below_min(&c.k1, set));
        }
        (Case::II, _) => {
            if !first {
                k0_odd_pair(c, row);
            }
            let a: Vec<Rat> = c.ks().filter(|&k| at(k, p)).map(|k| c.r(n - k + 1, p)).collect();
            let b: Vec<Rat> = c.ks().filter(|&k| at(k, 0)).map(|k| c.r(n - k + 1, p)).collect();
            row.not_in("kappa1+kappam not in {(N-k+1)/p | 2-k-l = p}", &sum, a);
            row.not_in("|kappa1-kappam| not in {(N-k+1)/p | 2-k-l = 0}", &adiff, b.clone());
            if !first {
                k0_small_or_large(c, row, &(Rat::int(n) - half()), "N-1/2");
            }
            let am = c.ks().filter(|&k| at(k, p)).map(|k| c.r(n - k + 1, m));
            row.unit("kappa1+kappam < min{(N-k+1)/m | 2-k-l = p}", below_min(&sum, am));
            row.unit("|kappa1-kappam| < min{(N-k+1)/p | 2-k-l = 0}", below_min(&adiff, b));
        }
        (Case::III, _) => {
            if first {
                let set = c.ks().filter(|&k| !at(k, 0) && !at(k, p)).map(|k| c.r(n - 2 * k + 1, 2));
                row.not_in("kappa0 not in {(N-2k+1)/2 | 2-k-l != 0,p}", &c.k0, set);
            } else {
                let a = c.odd_ks().flat_map(|k| [c.r(k, 2), c.r(n - k + 1, 4)]);
                let b = c.ks().filter(|&j| !at(j, 0) && !at(j, p)).map(|j| c.r(2 * j - n - 1, 2));
                row.not_in("kappa0 not in {k/2, (N-k+1)/4, (2j-N-1)/2 | odd k, 2-j-l != 0,p}", &c.k0, a.chain(b));
            }
            let dist = |k: i64| (&c.lam - &Rat::int(k) + half()).abs() / Rat::int(p);
            let a: Vec<Rat> = c.ks().filter(|&k| at(k, p)).map(dist).collect();
            let b: Vec<Rat> = c.ks().filter(|&k| at(k, 0)).map(dist).collect();
            row.not_in("kappa1+kappam not in {|lambda6-k+1/2|/p | 2-k-l = p}", &sum, a.clone());
            row.not_in("|kappa1-kappam| not in {|lambda6-k+1/2|/p | 2-k-l = 0}", &adiff, b.clone());
            if !first {
                k0_small_or_large(c, row, &(c.r(n, 2) + half()), "N/2+1/2");
            }
            row.unit("kappa1+kappam < min{|lambda6-k+1/2|/p | 2-k-l = p}", below_min(&sum, a));
            row.unit("|kappa1-kappam| < min{|lambda6-k+1/2|/p | 2-k-l = 0}", below_min(&adiff, b));
        }
        _ => unreachable!("even-m case"),
    }
}

/// The violated irreducibility and unitarity entries of a spec's table row,
/// without building the module.
pub fn table_row(spec: &RepSpec) -> Result<(Vec<String>, Vec<String>), RepError> {
    let (lam, _) = resolve_lambda_lambda(spec)?;
    let c = Ctx {
        m: spec.m as i64,
        p: (spec.m / 2) as i64,
        n: spec.n as i64,
        l: table_ell(spec.m, spec.ell),
        lam,
        k0: spec.kappa.k0.clone(),
        k1: spec.kappa.k1.clone(),
        km: spec.kappa.km.clone(),
    };
    let mut row = Row::default();
    if spec.m % 2 == 1 {
        odd_rows(&c, spec.case, spec.lambda_branch, spec.first_row(), &mut row);
    } else {
        even_rows(&c, spec.case, spec.lambda_branch, spec.first_row(), &mut row);
    }
    let violated: Vec<String> = row.irreducible.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.clone()).collect();
    let failed_unitarity: Vec<String> = row.unitary.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.clone()).collect();
    Ok((violated, failed_unitarity))
}

/// Evaluates the table row of a spec and, independently, the A(k) of the
/// built module.
pub fn check_admissibility(spec: &RepSpec) -> AdmissibilityVerdict {
    let (violated, failed_unitarity) = match table_row(spec) {
        Ok(r) => r,
        Err(e) => {
            return AdmissibilityVerdict {
                irreducible: false,
                unitary_sufficient: false,
                violated_constraints: vec![format!("incompatible: {e}")],
                failed_unitarity: vec![],
                a_values: vec![],
                direct_irreducible: false,
                build_error: Some(e.to_string()),
            }
        }
    };
    let (a_values, direct, build_error) = match build_rep(spec) {
        Ok(r) => {
            let ok = r.a.iter().all(|x| !x.is_zero());
            (r.a, ok, None)
        }
        Err(e) => (vec![], false, Some(e.to_string())),
    };
    AdmissibilityVerdict {
        irreducible: violated.is_empty(),
        unitary_sufficient: violated.is_empty() && failed_unitarity.is_empty(),
        violated_constraints: violated,
        failed_unitarity,
        a_values,
        direct_irreducible: direct,
        build_error,
    }
}

/// A κ near the spec's own on which the table excludes irreducibility: one
/// coordinate (κ₁ and κₘ together for odd m) is moved to j/d with d ≤ 2m and
/// j ≤ 3d. None when the row excludes nothing reachable this way.
pub fn excluded_kappa(spec: &RepSpec) -> Option<Kappa> {
    let m = spec.m as i64;
    let mut values: Vec<Rat> = (1..=2 * m).flat_map(|d| (1..=3 * d).map(move |j| Rat::new(j, d))).collect();
    values.sort();
    values.dedup();
    let base = &spec.kappa;
    let moves: Vec<Box<dyn Fn(&Rat) -> Kappa>> = if spec.m % 2 == 1 {
        vec![
            Box::new(|v: &Rat| Kappa::new(v.clone(), base.k1.clone(), base.km.clone())),
            Box::new(|v: &Rat| Kappa::new(base.k0.clone(), v.clone(), v.clone())),
        ]
    } else {
        vec![
            Box::new(|v: &Rat| Kappa::new(v.clone(), base.k1.clone(), base.km.clone())),
            Box::new(|v: &Rat| Kappa::new(base.k0.clone(), v.clone(), base.km.clone())),
            Box::new(|v: &Rat| Kappa::new(base.k0.clone(), base.k1.clone(), v.clone())),
        ]
    };
    for mv in &moves {
        for v in &values {
            let mut s = spec.clone();
            s.kappa = mv(v);
            if matches!(table_row(&s), Ok((violated, _)) if !violated.is_empty()) {
                return Some(s.kappa);
            }
        }
    }
    None
}
