//! Finite-dimensional representations of the symmetry algebra: explicit
//! matrices for each candidate module, the admissibility tables, and an
//! independent certificate (relations, irreducibility, unitarity).

mod certify;
pub mod closed_forms;
mod scan;
mod tables;

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::dunkl::Kappa;
use crate::poly::{solve_linear_system, Matrix};
use crate::scalar::{root_of_unity, sqrt_rational, CycNum, Field, Rat};

pub use certify::{certify, relations, star_failures, commutant_dim, is_irreducible, trace_invariants, Certificate};
pub use scan::{classify_scan, scan_cells, scan_spec, Cell, ScanRow, ScanSummary};
pub use tables::{check_admissibility, excluded_kappa, table_ell, table_row, AdmissibilityVerdict};

/// Why a column with a vanishing denominator could not be filled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Gap {
    /// The linear relations have no solution.
    Inconsistent,
    /// The linear relations leave a free parameter.
    Underdetermined,
    /// The unique linear solution breaks O₊O₋ or O₋O₊.
    QuadraticFails,
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gap::Inconsistent => "inconsistent",
            Gap::Underdetermined => "underdetermined",
            Gap::QuadraticFails => "violated by the quadratic relations",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("incompatible data: {0}")]
    IncompatibleCase(String),
    #[error("case III with odd N = {0} admits no representation")]
    NoRepresentation(u32),
    #[error("{operator} has a vanishing denominator on {basis} and the remaining relations are {reason}")]
    DenominatorZero { operator: &'static str, basis: String, reason: Gap },
    #[error("the {0} boundary condition fails")]
    BoundaryViolated(&'static str),
}

/// Case family of the classification tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "I")]
    I,
    #[serde(rename = "I.i")]
    Ii,
    #[serde(rename = "I.ii")]
    Iii,
    #[serde(rename = "II")]
    II,
    #[serde(rename = "III")]
    III,
}

impl Case {
    pub fn for_parity(m: u32) -> &'static [Case] {
        if m % 2 == 1 {
            &[Case::I, Case::II, Case::III]
        } else {
            &[Case::Ii, Case::Iii, Case::II, Case::III]
        }
    }

    /// The λ-branches listed under this case.
    pub fn branches(self, m: u32) -> &'static [u8] {
        match (m % 2 == 1, self) {
            (true, Case::I) => &[1, 2],
            (true, Case::II) => &[3],
            (true, Case::III) => &[4],
            (false, Case::Ii) => &[1, 2],
            (false, Case::Iii) => &[3, 4],
            (false, Case::II) => &[5],
            (false, Case::III) => &[6],
            _ => &[],
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "I",
            Case::Ii => "I.i",
            Case::Iii => "I.ii",
            Case::II => "II",
            Case::III => "III",
        })
    }
}

impl FromStr for Case {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "I" => Ok(Case::I),
            "I.i" => Ok(Case::Ii),
            "I.ii" => Ok(Case::Iii),
            "II" => Ok(Case::II),
            "III" => Ok(Case::III),
            _ => Err(format!("unknown case {s:?}")),
        }
    }
}

/// Which of the two Λ families: One is ±i(λ+1/2+κ₀δ), Two is ∓i(λ+1/2−κ₀δ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    One,
    Two,
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "1" => Ok(Family::One),
            "2" => Ok(Family::Two),
            _ => Err(format!("Lambda branch must be 1 or 2, got {s:?}")),
        }
    }
}

/// One cell of the classification together with a multiplicity function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepSpec {
    pub m: u32,
    pub n: u32,
    /// Label of the lowest group representation: Y_ℓ for odd m, Y_{2ℓ+1}
    /// for even m, with τ̂v₀⁺ = ζ^{2ℓ} (resp. ζ^{2ℓ+1}). Labels past ⌊m/2⌋
    /// (resp. m/2 − 1) name the same group representation with its two
    /// basis vectors swapped.
    pub ell: u32,
    pub delta: i32,
    pub case: Case,
    pub lambda_branch: u8,
    pub family: Family,
    /// +1 for the upper sign of the family, −1 for the lower.
    pub family_sign: i32,
    pub kappa: Kappa,
}

impl RepSpec {
    pub fn new(m: u32, n: u32, ell: u32, delta: i32, case: Case, lambda_branch: u8, family: Family, kappa: Kappa) -> Self {
        RepSpec { m, n, ell, delta, case, lambda_branch, family, family_sign: 1, kappa }
    }

    /// Exponent e with τ̂v₀⁺ = ζ^e.
    pub fn tau_exponent(&self) -> i64 {
        if self.m % 2 == 0 {
            2 * self.ell as i64 + 1
        } else {
            2 * self.ell as i64
        }
    }

    /// Whether the row of the table is the (Λ₁, 1), (Λ₂, −1) one.
    pub fn first_row(&self) -> bool {
        (self.family == Family::One) == (self.delta == 1)
    }
}

/// The data a module is built from, without reference to the tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleData {
    pub m: u32,
    pub n: u32,
    pub tau_exponent: i64,
    pub delta: i32,
    pub lambda: Rat,
    pub big_lambda: CycNum,
    pub kappa: Kappa,
}

pub(crate) fn modm(a: i64, m: u32) -> i64 {
    a.rem_euclid(m as i64)
}

pub(crate) fn half() -> Rat {
    Rat::new(1, 2)
}

/// Checks the case against the congruence conditions, using the table's
/// labelling of the group representation.
fn case_holds(m: u32, n: u32, ell_t: i64, case: Case) -> bool {
    let n = n as i64;
    let p = (m / 2) as i64;
    if m % 2 == 1 {
        let first = modm(2 * (n + ell_t) + 1, m) == 0;
        match case {
            Case::I => first,
            Case::II => !first,
            Case::III => n % 2 == 0,
            _ => false,
        }
    } else {
        let r = modm(n + ell_t, m);
        let ii = r == modm(1 - p, m);
        let iii = r == modm(1, m);
        match case {
            Case::Ii => ii,
            Case::Iii => iii,
            Case::II => !ii && !iii,
            Case::III => n % 2 == 0,
            _ => false,
        }
    }
}

/// The exact λ and Λ for a cell.
pub fn resolve_lambda_lambda(spec: &RepSpec) -> Result<(Rat, CycNum), RepError> {
    let m = spec.m;
    if m < 2 {
        return Err(RepError::IncompatibleCase(format!("m = {m} is below 2")));
    }
    if spec.delta != 1 && spec.delta != -1 {
        return Err(RepError::IncompatibleCase(format!("delta = {} is not ±1", spec.delta)));
    }
    if spec.family_sign != 1 && spec.family_sign != -1 {
        return Err(RepError::IncompatibleCase("family sign must be ±1".into()));
    }
    if m % 2 == 1 && spec.kappa.k1 != spec.kappa.km {
        return Err(RepError::IncompatibleCase("odd m needs kappa1 = kappam".into()));
    }
    let p = m / 2;
    if spec.ell >= m {
        return Err(RepError::IncompatibleCase(format!("ell = {} outside 0..{m}", spec.ell)));
    }
    if !Case::for_parity(m).contains(&spec.case) {
        return Err(RepError::IncompatibleCase(format!("case {} does not occur for m = {m}", spec.case)));
    }
    let odd_n_branch = if m % 2 == 1 { 5 } else { 7 };
    if spec.case == Case::III && (spec.n % 2 == 1 || spec.lambda_branch == odd_n_branch) {
        if spec.n % 2 == 1 {
            return Err(RepError::NoRepresentation(spec.n));
        }
        return Err(RepError::IncompatibleCase(format!("branch {odd_n_branch} needs odd N")));
    }
    if !spec.case.branches(m).contains(&spec.lambda_branch) {
        return Err(RepError::IncompatibleCase(format!(
            "lambda branch {} is not listed under case {}",
            spec.lambda_branch, spec.case
        )));
    }
    if !case_holds(m, spec.n, table_ell(m, spec.ell), spec.case) {
        return Err(RepError::IncompatibleCase(format!(
            "congruence for case {} fails at N = {}, ell = {}",
            spec.case, spec.n, spec.ell
        )));
    }
    let k = &spec.kappa;
    let top = Rat::int(spec.n as i64) + half();
    let pm = Rat::int(p as i64);
    let mm = Rat::int(m as i64);
    let delta = Rat::int(spec.delta as i64);
    let lambda = match (m % 2 == 1, spec.lambda_branch) {
        (true, 1) => top + &k.k1 * &mm,
        (true, 2) => top - &k.k1 * &mm,
        (true, 3) | (false, 5) => top,
        (false, 1) => top + (&k.k1 + &k.km) * &pm,
        (false, 2) => top - (&k.k1 + &k.km) * &pm,
        (false, 3) => top + (&k.k1 - &k.km) * &pm,
        (false, 4) => top - (&k.k1 - &k.km) * &pm,
        // Case III: N/2 + κ₀δ for the second family. Within a table row the
        // first family carries the opposite δ, so it gets N/2 − κ₀δ.
        _ => {
            let s = if spec.family == Family::Two { delta.clone() } else { -delta.clone() };
            Rat::new(spec.n as i64, 2) + &k.k0 * &s
        }
    };
    let f = Field::for_dihedral(m);
    let i = f.i();
    let sign = Rat::int(spec.family_sign as i64);
    let big = match spec.family {
        Family::One => &i * &f.rat(&(&sign * &(&lambda + &half() + &k.k0 * &delta))),
        Family::Two => &i * &f.rat(&(-&sign * &(&lambda + &half() - &k.k0 * &delta))),
    };
    Ok((lambda, big))
}

/// Explicit matrices of a module on the basis [v₀⁺..v_N⁺, v₀⁻..v_N⁻].
#[derive(Clone, Debug)]
pub struct RepMatrices {
    pub data: ModuleData,
    pub o0: Matrix,
    pub o123: Matrix,
    pub t0: Matrix,
    pub tplus: Matrix,
    pub tminus: Matrix,
    pub s0: Matrix,
    pub s1: Matrix,
    pub sm: Matrix,
    pub tau: Matrix,
    pub lplus: Matrix,
    pub lminus: Matrix,
    pub oplus: Matrix,
    pub ominus: Matrix,
    /// σ̂ⱼ for j = 0..=m.
    pub sigma: Vec<Matrix>,
    /// A(1..N).
    pub a: Vec<CycNum>,
    /// h₀..h_N.
    pub gram: Vec<CycNum>,
}

pub fn basis_labels(n: u32) -> Vec<String> {
    let plus = (0..=n).map(|k| format!("v{k}+"));
    let minus = (0..=n).map(|k| format!("v{k}-"));
    plus.chain(minus).collect()
}

impl RepMatrices {
    pub fn dim(&self) -> usize {
        self.o0.rows()
    }

    pub fn field(&self) -> &'static Field {
        self.o0.field()
    }

    /// The same module with entries in a larger cyclotomic field.
    pub fn embed(&self, to: &'static Field) -> RepMatrices {
        let e = |x: &Matrix| x.embed(to);
        RepMatrices {
            data: self.data.clone(),
            o0: e(&self.o0),
            o123: e(&self.o123),
            t0: e(&self.t0),
            tplus: e(&self.tplus),
            tminus: e(&self.tminus),
            s0: e(&self.s0),
            s1: e(&self.s1),
            sm: e(&self.sm),
            tau: e(&self.tau),
            lplus: e(&self.lplus),
            lminus: e(&self.lminus),
            oplus: e(&self.oplus),
            ominus: e(&self.ominus),
            sigma: self.sigma.iter().map(e).collect(),
            a: self.a.iter().map(|x| x.embed(to)).collect(),
            gram: self.gram.iter().map(|x| x.embed(to)).collect(),
        }
    }

    pub fn generators(&self) -> Vec<(&'static str, &Matrix)> {
        vec![
            ("O0", &self.o0),
            ("O+", &self.oplus),
            ("O-", &self.ominus),
            ("O123", &self.o123),
            ("T0", &self.t0),
            ("T+", &self.tplus),
            ("T-", &self.tminus),
            ("S0", &self.s0),
            ("S1", &self.s1),
            ("Sm", &self.sm),
            ("tau", &self.tau),
            ("L+", &self.lplus),
            ("L-", &self.lminus),
        ]
    }

    /// Eigenvalue of T₊T₋ on v_k⁺.
    pub fn tt_plus(&self, k: usize) -> CycNum {
        self.tplus.mul(&self.tminus).get(k, k).clone()
    }
}

impl Serialize for RepMatrices {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let gens: serde_json::Map<String, serde_json::Value> = self
            .generators()
            .into_iter()
            .map(|(n, m)| (n.to_string(), serde_json::to_value(m).expect("matrix json")))
            .collect();
        let mut map = s.serialize_map(Some(7))?;
        map.serialize_entry("dim", &self.dim())?;
        map.serialize_entry("basis", &basis_labels(self.data.n))?;
        map.serialize_entry("lambda", &self.data.lambda)?;
        map.serialize_entry("Lambda", &self.data.big_lambda)?;
        map.serialize_entry("generators", &gens)?;
        map.serialize_entry("A", &self.a)?;
        map.serialize_entry("gram", &self.gram)?;
        map.end()
    }
}

pub fn build_rep(spec: &RepSpec) -> Result<RepMatrices, RepError> {
    let (lambda, big_lambda) = resolve_lambda_lambda(spec)?;
    build_module(&ModuleData {
        m: spec.m,
        n: spec.n,
        tau_exponent: spec.tau_exponent(),
        delta: spec.delta,
        lambda,
        big_lambda,
        kappa: spec.kappa.clone(),
    })
}

/// Diagonal of the ladder factorization −((μ−1/2)² + (Λ+t)²)((μ−1/2)² − h)
/// with μ the O₀-eigenvalue, t the T₀-eigenvalue and h that of T₊T₋.
pub(crate) fn ladder_factor(f: &'static Field, mu: &Rat, big: &CycNum, t0: &CycNum, h: &CycNum) -> CycNum {
    let s = f.rat(&(mu - &half()).pow(2));
    let first = &s + &(big + t0).pow(2);
    -(&first * &(&s - h))
}

/// Group matrices and the T-operators on the basis [v⁺ block, v⁻ block].
#[derive(Clone, Debug)]
pub struct GroupPart {
    pub s0: Matrix,
    pub sm: Matrix,
    pub tau: Matrix,
    /// σ̂ⱼ for j = 0..=m.
    pub sigma: Vec<Matrix>,
    pub t0: Matrix,
    pub tplus: Matrix,
    pub tminus: Matrix,
}

/// σ̂ⱼ = (−1)^{j+1}τ̂ʲσ̂ₘ, then T₊ = −iΣκⱼζʲσ̂ⱼ and T₋ = iΣκⱼζ^{−j}σ̂ⱼ.
pub fn group_part(m: u32, n: u32, tau_exponent: i64, delta: i32, kappa: &Kappa) -> GroupPart {
    let f = Field::for_dihedral(m);
    let n = n as usize;
    let dim = 2 * n + 2;
    let zeta = |k: i64| root_of_unity(m, k);
    let i = f.i();
    let delta = delta as i64;
    let mut s0 = Matrix::zeros(f, dim, dim);
    let mut sm = Matrix::zeros(f, dim, dim);
    for k in 0..=n {
        let s = if k % 2 == 0 { delta } else { -delta };
        s0.set(k, k, f.int(s));
        s0.set(n + 1 + k, n + 1 + k, f.int(-s));
        sm.set(k, n + 1 + k, f.one());
        sm.set(n + 1 + k, k, f.one());
    }
    let weight = |k: usize| tau_exponent + 2 * k as i64;
    let tau_pow = |j: i64| {
        let mut t = Matrix::zeros(f, dim, dim);
        for k in 0..=n {
            t.set(k, k, zeta(j * weight(k)));
            t.set(n + 1 + k, n + 1 + k, zeta(-j * weight(k)));
        }
        t
    };
    let tau = tau_pow(1);
    let mut sigma = vec![s0.clone()];
    for j in 1..=m as i64 {
        let s = tau_pow(j).mul(&sm);
        sigma.push(if j % 2 == 1 { s } else { s.neg() });
    }
    let kj = |j: u32| if m % 2 == 1 || j % 2 == 1 { &kappa.k1 } else { &kappa.km };
    let mut tplus = Matrix::zeros(f, dim, dim);
    let mut tminus = Matrix::zeros(f, dim, dim);
    for j in 1..=m {
        let c = f.rat(kj(j));
        tplus = tplus.add(&sigma[j as usize].scale(&(&c * &zeta(j as i64))));
        tminus = tminus.add(&sigma[j as usize].scale(&(&c * &zeta(-(j as i64)))));
    }
    let tplus = tplus.scale(&-&i);
    let tminus = tminus.scale(&i);
    let t0 = s0.scale(&(&i * &f.rat(&kappa.k0)));
    GroupPart { s0, sm, tau, sigma, t0, tplus, tminus }
}

/// Builds the module from raw data. T± come from the group-algebra sums, A(k)
/// from the ladder factorization, and O± from the ladder and T actions.
/// Columns of O± with a vanishing denominator are solved from the linear
/// relations instead.
pub fn build_module(d: &ModuleData) -> Result<RepMatrices, RepError> {
    let (m, n) = (d.m, d.n as usize);
    let f = Field::for_dihedral(m);
    let dim = 2 * n + 2;
    let plus = |k: usize| k;
    let minus = |k: usize| n + 1 + k;
    let mut o0 = Matrix::zeros(f, dim, dim);
    let mut mu = vec![Rat::zero(); dim];
    for k in 0..=n {
        let e = &d.lambda - &Rat::int(k as i64);
        mu[plus(k)] = e.clone();
        mu[minus(k)] = -e;
        o0.set(plus(k), plus(k), f.rat(&mu[plus(k)]));
        o0.set(minus(k), minus(k), f.rat(&mu[minus(k)]));
    }
    let GroupPart { s0, sm, tau, sigma, t0, tplus, tminus } = group_part(m, d.n, d.tau_exponent, d.delta, &d.kappa);
    let s1 = sigma[1].clone();
    let o123 = Matrix::scalar(f, dim, &d.big_lambda);

    let tt = tplus.mul(&tminus);
    let tt_rev = tminus.mul(&tplus);
    let t0_at = |k: usize| t0.get(plus(k), plus(k)).clone();
    // A(k) = ladder factor at v_{k−1}⁺ with μ = λ−k+1.
    let a_at = |k: usize| ladder_factor(f, &mu[plus(k - 1)], &d.big_lambda, &t0_at(k - 1), tt.get(plus(k - 1), plus(k - 1)));
    let a: Vec<CycNum> = (1..=n).map(a_at).collect();

    // L₊ must kill v₀⁺ and L₋ must kill v_N⁺.
    let lowest = {
        let s = f.rat(&(&mu[plus(0)] + &half()).pow(2));
        let first = &s + &(&d.big_lambda - &t0_at(0)).pow(2);
        -(&first * &(&s - tt_rev.get(plus(0), plus(0))))
    };
    if !lowest.is_zero() {
        return Err(RepError::BoundaryViolated("lowest"));
    }
    if !a_at(n + 1).is_zero() {
        return Err(RepError::BoundaryViolated("highest"));
    }

    let mut lm_plus = Matrix::zeros(f, dim, dim);
    let mut lp_plus = Matrix::zeros(f, dim, dim);
    for k in 0..n {
        lm_plus.set(plus(k + 1), plus(k), f.one());
    }
    for k in 1..=n {
        lp_plus.set(plus(k - 1), plus(k), a[k - 1].clone());
    }
    let lplus = lp_plus.sub(&sm.mul(&lm_plus).mul(&sm));
    let lminus = lm_plus.sub(&sm.mul(&lp_plus).mul(&sm));

    let rm = lminus.sub(&o123.sub(&t0).mul(&tminus));
    let rp = lplus.sub(&o123.add(&t0).mul(&tplus));
    let labels = basis_labels(d.n);
    let mut om_cols = Vec::with_capacity(dim);
    let mut op_cols = Vec::with_capacity(dim);
    let (mut open_m, mut open_p) = (Vec::new(), Vec::new());
    for b in 0..dim {
        let dm = &mu[b] - &half();
        let dp = &mu[b] + &half();
        if dm.is_zero() {
            open_m.push(b);
            om_cols.push(vec![f.zero(); dim]);
        } else {
            let im = f.rat(&dm.recip().expect("nonzero"));
            om_cols.push(rm.col(b).iter().map(|x| x * &im).collect());
        }
        if dp.is_zero() {
            open_p.push(b);
            op_cols.push(vec![f.zero(); dim]);
        } else {
            let ip = f.rat(&dp.recip().expect("nonzero"));
            op_cols.push(rp.col(b).iter().map(|x| x * &ip).collect());
        }
    }
    let ominus = Matrix::from_cols(f, dim, om_cols);
    let oplus = Matrix::from_cols(f, dim, op_cols);
    let mut gram = vec![f.one()];
    for x in &a {
        let last = gram.last().expect("h0").clone();
        gram.push(&last * x);
    }
    let mut rep = RepMatrices {
        data: d.clone(),
        o0,
        o123,
        t0,
        tplus,
        tminus,
        s0,
        s1,
        sm,
        tau,
        lplus,
        lminus,
        oplus,
        ominus,
        sigma,
        a,
        gram,
    };
    if !open_m.is_empty() || !open_p.is_empty() {
        let (operator, b) = match open_m.first() {
            Some(&b) => ("O-", b),
            None => ("O+", open_p[0]),
        };
        let gap = |reason| RepError::DenominatorZero { operator, basis: labels[b].clone(), reason };
        let values = complete_columns(&rep, &open_p, &open_m).map_err(gap)?;
        let target = values[0].1.field();
        if !std::ptr::eq(target, f) {
            rep = rep.embed(target);
        }
        for ((is_p, i, j), v) in values {
            if is_p {
                rep.oplus.set(i, j, v);
            } else {
                rep.ominus.set(i, j, v);
            }
        }
        if !quadratic_relations_hold(&rep) {
            return Err(gap(Gap::QuadraticFails));
        }
    }
    Ok(rep)
}

/// Relations linear in (O₊, O₋) with the other generators fixed:
/// homogeneous part evaluated at (p, q).
fn linear_relations(r: &RepMatrices, p: &Matrix, q: &Matrix) -> Vec<Matrix> {
    let f = p.field();
    let half = f.frac(1, 2);
    let comm = |a: &Matrix, b: &Matrix| a.mul(b).sub(&b.mul(a));
    let acomm = |a: &Matrix, b: &Matrix| a.mul(b).add(&b.mul(a));
    let mut out = vec![
        comm(&r.o0, p).sub(p),
        comm(&r.o0, q).add(q),
        acomm(&r.o0, p).scale(&half),
        acomm(&r.o0, q).scale(&half),
        acomm(&r.t0, p),
        acomm(&r.t0, q),
        r.tplus.mul(q).add(&p.mul(&r.tminus)),
        r.tminus.mul(p).add(&q.mul(&r.tplus)),
        acomm(&r.sigma[0], p),
        acomm(&r.sigma[0], q),
    ];
    for (j, s) in r.sigma.iter().enumerate().skip(1) {
        let j = j as i64;
        out.push(s.mul(p).sub(&q.mul(s).scale(&root_of_unity(r.data.m, 2 * j).embed(f))));
        out.push(s.mul(q).sub(&p.mul(s).scale(&root_of_unity(r.data.m, -2 * j).embed(f))));
    }
    out
}

/// Right-hand sides matching `linear_relations`.
fn linear_rhs(r: &RepMatrices) -> Vec<Matrix> {
    let f = r.field();
    let d = r.dim();
    let comm = |a: &Matrix, b: &Matrix| a.mul(b).sub(&b.mul(a));
    let acomm = |a: &Matrix, b: &Matrix| a.mul(b).add(&b.mul(a));
    let mut out = vec![
        acomm(&r.o123, &r.tplus).add(&comm(&r.t0, &r.tplus)),
        acomm(&r.o123, &r.tminus).sub(&comm(&r.t0, &r.tminus)),
        r.lplus.clone(),
        r.lminus.clone(),
    ];
    out.resize(10 + 2 * r.data.m as usize, Matrix::zeros(f, d, d));
    out
}

/// Right-hand sides of O₊O₋ and O₋O₊.
fn quadratic_targets(r: &RepMatrices) -> (Matrix, Matrix) {
    let f = r.field();
    let h = Matrix::identity(f, r.dim()).scale(&f.frac(1, 2));
    let sq = |x: &Matrix| x.mul(x);
    let pm = r.tplus.mul(&r.tminus).sub(&sq(&r.o0.sub(&h))).sub(&sq(&r.o123.add(&r.t0)));
    let mp = r.tminus.mul(&r.tplus).sub(&sq(&r.o0.add(&h))).sub(&sq(&r.o123.sub(&r.t0)));
    (pm, mp)
}

fn quadratic_relations_hold(r: &RepMatrices) -> bool {
    let (pm, mp) = quadratic_targets(r);
    r.oplus.mul(&r.ominus) == pm && r.ominus.mul(&r.oplus) == mp
}

/// Largest cyclotomic order allowed when a completion needs a square root.
const MAX_EXTENSION: u32 = 840;

type Entry = (bool, usize, usize);

/// Values for the O₊ columns `open_p` and O₋ columns `open_m` left open by
/// vanishing denominators (those columns of `r` are zero on entry).
///
/// The linear relations are solved exactly. A single remaining parameter t
/// is fixed by the quadratic relations, which are quadratic in t; when the
/// root is irrational the values live in a larger cyclotomic field.
fn complete_columns(r: &RepMatrices, open_p: &[usize], open_m: &[usize]) -> Result<Vec<(Entry, CycNum)>, Gap> {
    let f = r.field();
    let dim = r.dim();
    let vars: Vec<Entry> = open_p
        .iter()
        .flat_map(|&b| (0..dim).map(move |a| (true, a, b)))
        .chain(open_m.iter().flat_map(|&b| (0..dim).map(move |a| (false, a, b))))
        .collect();
    let zero = Matrix::zeros(f, dim, dim);
    let base: Vec<Matrix> =
        linear_relations(r, &r.oplus, &r.ominus).iter().zip(linear_rhs(r)).map(|(l, c)| l.sub(&c)).collect();
    let coeffs: Vec<Vec<Matrix>> = vars
        .iter()
        .map(|&(is_p, a, b)| {
            let mut e = zero.clone();
            e.set(a, b, f.one());
            if is_p {
                linear_relations(r, &e, &zero)
            } else {
                linear_relations(r, &zero, &e)
            }
        })
        .collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (k, c) in base.iter().enumerate() {
        for i in 0..dim {
            for j in 0..dim {
                let row: Vec<CycNum> = coeffs.iter().map(|m| m[k].get(i, j).clone()).collect();
                if row.iter().all(|x| x.is_zero()) {
                    if !c.get(i, j).is_zero() {
                        return Err(Gap::Inconsistent);
                    }
                    continue;
                }
                rows.push(row);
                rhs.push(-c.get(i, j));
            }
        }
    }
    let sol = solve_linear_system(&Matrix::from_rows(f, rows), &rhs);
    let Some(x0) = sol.particular else { return Err(Gap::Inconsistent) };
    let values = match sol.nullspace.as_slice() {
        [] => x0,
        [v] => {
            let t = quadratic_parameter(r, &vars, &x0, v)?;
            let g = t.field();
            x0.iter().zip(v).map(|(a, b)| &a.embed(g) + &(&t * &b.embed(g))).collect()
        }
        _ => return Err(Gap::Underdetermined),
    };
    Ok(vars.into_iter().zip(values).collect())
}

/// Solves the quadratic relations for t in x = x0 + t·v.
fn quadratic_parameter(r: &RepMatrices, vars: &[Entry], x0: &[CycNum], v: &[CycNum]) -> Result<CycNum, Gap> {
    let f = r.field();
    let fill = |x: &[CycNum], with_base: bool| {
        let (mut p, mut q) = if with_base {
            (r.oplus.clone(), r.ominus.clone())
        } else {
            (Matrix::zeros(f, r.dim(), r.dim()), Matrix::zeros(f, r.dim(), r.dim()))
        };
        for (&(is_p, i, j), val) in vars.iter().zip(x) {
            if is_p {
                p.set(i, j, val.clone());
            } else {
                q.set(i, j, val.clone());
            }
        }
        (p, q)
    };
    let (p0, q0) = fill(x0, true);
    let (p1, q1) = fill(v, false);
    let (pm, mp) = quadratic_targets(r);
    // Entrywise a·t² + b·t + c for both products.
    let polys = [
        (p1.mul(&q1), p0.mul(&q1).add(&p1.mul(&q0)), p0.mul(&q0).sub(&pm)),
        (q1.mul(&p1), q0.mul(&p1).add(&q1.mul(&p0)), q0.mul(&p0).sub(&mp)),
    ];
    let mut eqs = Vec::new();
    for (a, b, c) in &polys {
        for i in 0..r.dim() {
            for j in 0..r.dim() {
                let e = (a.get(i, j).clone(), b.get(i, j).clone(), c.get(i, j).clone());
                if !(e.0.is_zero() && e.1.is_zero() && e.2.is_zero()) {
                    eqs.push(e);
                }
            }
        }
    }
    let mut candidates = Vec::new();
    if let Some((_, b, c)) = eqs.iter().find(|(a, b, _)| a.is_zero() && !b.is_zero()) {
        candidates.push(-&c.checked_div(b).expect("nonzero"));
    } else if let Some((a, b, c)) = eqs.iter().find(|(a, _, _)| !a.is_zero()) {
        let disc = &(b * b) - &(&f.int(4) * &(a * c));
        let root = disc.to_rat().and_then(|q| sqrt_rational(&q, MAX_EXTENSION)).ok_or(Gap::Underdetermined)?;
        let g = Field::get(num_integer::lcm(f.order(), root.order()));
        let root = root.embed(g);
        let two_a = (&f.int(2) * a).embed(g);
        for s in [root.clone(), -&root] {
            candidates.push((&(-&b.embed(g)) + &s).checked_div(&two_a).expect("nonzero"));
        }
    } else {
        return Err(if eqs.is_empty() { Gap::Underdetermined } else { Gap::QuadraticFails });
    }
    candidates
        .into_iter()
        .find(|t| {
            let g = t.field();
            eqs.iter().all(|(a, b, c)| (&(&a.embed(g) * &(t * t)) + &(&b.embed(g) * t)) + c.embed(g) == CycNum::zero(g))
        })
        .ok_or(Gap::QuadraticFails)
}

/// Data of the same module seen from its other end: v_N⁻ becomes the new
/// lowest vector, with λ' = N − λ.
pub fn relabeled(d: &ModuleData) -> ModuleData {
    let n = d.n as i64;
    ModuleData {
        lambda: Rat::int(n) - &d.lambda,
        delta: if d.n % 2 == 0 { -d.delta } else { d.delta },
        tau_exponent: -(d.tau_exponent + 2 * n),
        ..d.clone()
    }
}

/// Entry of a degenerate O± column that the ladder data leave undetermined.
///
/// When λ = N + 1/2 the columns of O₋ at v_N⁺ and of O₊ at v_N⁻ are 0/0. The
/// σ̂ₘ relation makes both equal to one unknown c on the swapped vector. The
/// quadratic relation O₊O₋ = T₊T₋ − (O₀−1/2)² − (O₁₂₃+T₀)² at v_N⁺ fixes
/// c², while the σ̂₁ relation allows c ≠ 0 only if the τ̂-weights match.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Completion {
    pub forced_square: CycNum,
    pub weight_allows_nonzero: bool,
}

impl Completion {
    pub fn consistent(&self) -> bool {
        self.weight_allows_nonzero || self.forced_square.is_zero()
    }
}

/// Analyses the top degenerate column; `None` if λ ≠ N + 1/2.
pub fn top_completion(d: &ModuleData) -> Option<Completion> {
    if d.lambda != Rat::int(d.n as i64) + half() {
        return None;
    }
    let f = Field::for_dihedral(d.m);
    let n = d.n as usize;
    let g = group_part(d.m, d.n, d.tau_exponent, d.delta, &d.kappa);
    let h = g.tplus.mul(&g.tminus).get(n, n).clone();
    // O₀ − 1/2 vanishes at v_N⁺, and O₋v_N⁺ has no other component.
    let forced_square = &h - &(&d.big_lambda + g.t0.get(n, n)).pow(2);
    let w = d.tau_exponent + 2 * n as i64;
    let weight_allows_nonzero = root_of_unity(d.m, 2 * w + 2) == f.one();
    Some(Completion { forced_square, weight_allows_nonzero })
}

#[cfg(test)]
mod tests;
