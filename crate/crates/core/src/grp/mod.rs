//! The two double covers of Z₂ × D₂ₘ: presentations, normal forms,
//! conjugacy classes, irreducible representations and characters, and the
//! comparison with the operator realization.

mod todd_coxeter;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::dunkl::{check_identities, Counterexample, Evaluator, LinOperator, OperatorIdentity, Report, RootSystem};
use crate::poly::{GradedBasis, Matrix};
use crate::scalar::{root_of_unity, CycNum, Field};
use crate::symalg::{build_symmetries, SymAlgError, SymmetrySet};

pub use todd_coxeter::enumerate as enumerate_cosets;

#[derive(Debug, Error)]
pub enum GrpError {
    #[error("m must be at least 2, got {0}")]
    BadOrder(u32),
    #[error("the operator realization covers W+ only")]
    WrongCover,
    #[error("group has m = {group} but root system has m = {roots}")]
    OrderMismatch { group: u32, roots: u32 },
    #[error("relation {relation} fails in degree {degree}")]
    RelationViolated { relation: String, degree: u32, counterexample: Box<Counterexample> },
    #[error("{0}")]
    SymAlg(#[from] SymAlgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverSign {
    Plus,
    Minus,
}

impl fmt::Display for CoverSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverSign::Plus => "plus",
            CoverSign::Minus => "minus",
        })
    }
}

impl std::str::FromStr for CoverSign {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plus" | "+" => Ok(CoverSign::Plus),
            "minus" | "-" => Ok(CoverSign::Minus),
            _ => Err(format!("unknown cover '{s}', expected plus or minus")),
        }
    }
}

/// Abstract generators: the central element and three lifted reflections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    Z,
    S0,
    S1,
    Sm,
}

impl Gen {
    fn column(self) -> usize {
        2 * match self {
            Gen::Z => 0,
            Gen::S0 => 1,
            Gen::S1 => 2,
            Gen::Sm => 3,
        }
    }
}

/// A defining relation lhs = rhs between generator words.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: Vec<Gen>,
    pub rhs: Vec<Gen>,
}

fn rel(name: impl Into<String>, lhs: Vec<Gen>, rhs_is_z: bool) -> Relation {
    Relation { name: name.into(), lhs, rhs: if rhs_is_z { vec![Gen::Z] } else { Vec::new() } }
}

fn repeat(w: &[Gen], k: u32) -> Vec<Gen> {
    w.iter().copied().cycle().take(w.len() * k as usize).collect()
}

/// The defining relations of the cover: z² = 1, z central, and the Coxeter
/// relations with right-hand sides 1 or z depending on the parity of m and the sign.
pub fn presentation(m: u32, sign: CoverSign) -> Vec<Relation> {
    use Gen::*;
    let odd = m % 2 == 1;
    let minus = sign == CoverSign::Minus;
    let squares_z = minus;
    let braid_z = minus || !odd;
    let central = |g: Gen, name: &str| Relation { name: name.into(), lhs: vec![Z, g], rhs: vec![g, Z] };
    let sq = if squares_z { "z" } else { "1" };
    vec![
        rel("z^2 = 1", vec![Z, Z], false),
        central(S0, "z S0 = S0 z"),
        central(S1, "z S1 = S1 z"),
        central(Sm, "z Sm = Sm z"),
        rel(format!("S0^2 = {sq}"), vec![S0, S0], squares_z),
        rel(format!("S1^2 = {sq}"), vec![S1, S1], squares_z),
        rel(format!("Sm^2 = {sq}"), vec![Sm, Sm], squares_z),
        rel("(S0 S1)^2 = z", vec![S0, S1, S0, S1], true),
        rel("(S0 Sm)^2 = z", vec![S0, Sm, S0, Sm], true),
        rel(format!("(S1 Sm)^m = {}", if braid_z { "z" } else { "1" }), repeat(&[S1, Sm], m), braid_z),
    ]
}

/// z^a σ̂₀^b τ̂^c σ̂ₘ^d with τ̂ = σ̂₁σ̂ₘ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupElement {
    pub a: u8,
    pub b: u8,
    pub c: u32,
    pub d: u8,
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.a == 1 {
            parts.push("z".to_string());
        }
        if self.b == 1 {
            parts.push("S0".to_string());
        }
        match self.c {
            0 => {}
            1 => parts.push("T".to_string()),
            c => parts.push(format!("T^{c}")),
        }
        if self.d == 1 {
            parts.push("Sm".to_string());
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// A double cover of Z₂ × D₂ₘ as an explicit multiplication table.
#[derive(Clone, Debug)]
pub struct CoverGroup {
    m: u32,
    sign: CoverSign,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    forms: Vec<GroupElement>,
    z: usize,
    s0: usize,
    s1: usize,
    sm: usize,
    tau: usize,
    tau_order: u32,
}

fn relator(r: &Relation) -> Vec<usize> {
    let mut w: Vec<usize> = r.lhs.iter().map(|g| g.column()).collect();
    w.extend(r.rhs.iter().rev().map(|g| g.column() + 1));
    w
}

/// Builds the cover from its presentation by coset enumeration.
pub fn make_cover(m: u32, sign: CoverSign) -> Result<CoverGroup, GrpError> {
    if m < 2 {
        return Err(GrpError::BadOrder(m));
    }
    let rels: Vec<Vec<usize>> = presentation(m, sign).iter().map(relator).collect();
    let action = todd_coxeter::enumerate(4, &rels, 64 * m as usize + 256).expect("presentation defines a finite group");
    let n = action.len();
    // Word for each coset along a spanning tree from the identity coset.
    let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
    words[0] = Some(Vec::new());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for x in (0..8).step_by(2) {
            let t = action[c][x];
            if words[t].is_none() {
                let mut w = words[c].clone().expect("visited");
                w.push(x);
                words[t] = Some(w);
                queue.push_back(t);
            }
        }
    }
    let words: Vec<Vec<usize>> = words.into_iter().map(|w| w.expect("connected")).collect();
    let run = |start: usize, w: &[usize]| w.iter().fold(start, |c, &x| action[c][x]);
    let table: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|h| run(g, &words[h])).collect()).collect();
    let inverse: Vec<usize> = (0..n).map(|g| (0..n).find(|&h| table[g][h] == 0).expect("inverse")).collect();
    let gen = |g: Gen| action[0][g.column()];
    let (z, s0, s1, sm) = (gen(Gen::Z), gen(Gen::S0), gen(Gen::S1), gen(Gen::Sm));
    let tau = table[s1][sm];
    let mut tau_order = 1;
    let mut p = tau;
    while p != 0 {
        p = table[p][tau];
        tau_order += 1;
    }
    let mut g = CoverGroup {
        m,
        sign,
        table,
        inverse,
        forms: Vec::new(),
        z,
        s0,
        s1,
        sm,
        tau,
        tau_order,
    };
    // First normal form reaching each element, preferring a = 0.
    let mut forms: Vec<Option<GroupElement>> = vec![None; n];
    for a in 0..2u8 {
        for b in 0..2u8 {
            for c in 0..tau_order {
                for d in 0..2u8 {
                    let e = GroupElement { a, b, c, d };
                    let k = g.evaluate(&e);
                    if forms[k].is_none() {
                        forms[k] = Some(e);
                    }
                }
            }
        }
    }
    g.forms = forms.into_iter().map(|f| f.expect("normal forms cover the group")).collect();
    Ok(g)
}

impl CoverGroup {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn sign(&self) -> CoverSign {
        self.sign
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn gen(&self, g: Gen) -> usize {
        match g {
            Gen::Z => self.z,
            Gen::S0 => self.s0,
            Gen::S1 => self.s1,
            Gen::Sm => self.sm,
        }
    }

    /// τ̂ = σ̂₁σ̂ₘ.
    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn tau_order(&self) -> u32 {
        self.tau_order
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn pow(&self, g: usize, e: u32) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn word(&self, w: &[Gen]) -> usize {
        w.iter().fold(0, |acc, &x| self.mul(acc, self.gen(x)))
    }

    /// The element named by a (not necessarily reduced) normal form.
    pub fn evaluate(&self, e: &GroupElement) -> usize {
        let mut g = self.pow(self.z, e.a as u32);
        g = self.mul(g, self.pow(self.s0, e.b as u32));
        g = self.mul(g, self.pow(self.tau, e.c));
        self.mul(g, self.pow(self.sm, e.d as u32))
    }

    /// The unique normal form of an element.
    pub fn normal_form(&self, g: usize) -> GroupElement {
        self.forms[g]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Relations that fail in the multiplication table.
    pub fn failed_relations(&self) -> Vec<String> {
        presentation(self.m, self.sign)
            .into_iter()
            .filter(|r| self.word(&r.lhs) != self.word(&r.rhs))
            .map(|r| r.name)
            .collect()
    }
}

/// Conjugacy classes by orbit computation, sorted by their smallest element.
pub fn conjugacy_classes(g: &CoverGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|h| g.mul(g.mul(h, x), g.inv(h))).collect();
        class.sort_unstable();
        class.dedup();
        for &y in &class {
            seen[y] = true;
        }
        out.push(class);
    }
    out
}

/// One irreducible representation, given on z, σ̂₀, σ̂ₘ and τ̂.
#[derive(Clone, Debug, Serialize)]
pub struct Irrep {
    pub name: String,
    pub dim: usize,
    /// Eigenvalue of z.
    pub epsilon: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<CycNum>,
    pub z: Matrix,
    pub s0: Matrix,
    pub sm: Matrix,
    pub tau: Matrix,
}

impl Irrep {
    pub fn is_spin(&self) -> bool {
        self.epsilon == -1
    }

    /// σ̂₁ = τ̂σ̂ₘ⁻¹.
    pub fn s1(&self) -> Matrix {
        self.tau.mul(&self.sm.pow(3))
    }

    pub fn generator(&self, g: Gen) -> Matrix {
        match g {
            Gen::Z => self.z.clone(),
            Gen::S0 => self.s0.clone(),
            Gen::S1 => self.s1(),
            Gen::Sm => self.sm.clone(),
        }
    }

    fn word(&self, w: &[Gen]) -> Matrix {
        let f = self.z.field();
        w.iter().fold(Matrix::identity(f, self.dim), |acc, &x| acc.mul(&self.generator(x)))
    }

    /// Relations of the presentation violated by these matrices.
    pub fn failed_relations(&self, m: u32, sign: CoverSign) -> Vec<String> {
        presentation(m, sign).into_iter().filter(|r| self.word(&r.lhs) != self.word(&r.rhs)).map(|r| r.name).collect()
    }

    /// The matrix of every group element, through its normal form.
    pub fn images(&self, g: &CoverGroup) -> Vec<Matrix> {
        g.elements()
            .map(|x| {
                let e = g.normal_form(x);
                self.z.pow(e.a as u32).mul(&self.s0.pow(e.b as u32)).mul(&self.tau.pow(e.c)).mul(&self.sm.pow(e.d as u32))
            })
            .collect()
    }

    pub fn character(&self, g: &CoverGroup) -> Vec<CycNum> {
        self.images(g).iter().map(|m| m.trace()).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IrrepTable {
    pub m: u32,
    pub sign: CoverSign,
    pub irreps: Vec<Irrep>,
}

fn mat(f: &'static Field, rows: Vec<Vec<CycNum>>) -> Matrix {
    Matrix::from_rows(f, rows)
}

fn diag2(f: &'static Field, a: CycNum, b: CycNum) -> Matrix {
    Matrix::diagonal(f, &[a, b])
}

fn one_dim(f: &'static Field, name: String, s0: i64, sm: i64, tau: i64) -> Irrep {
    let s = |k: i64| Matrix::scalar(f, 1, &f.int(k));
    Irrep { name, dim: 1, epsilon: 1, ell: None, delta: None, z: s(1), s0: s(s0), sm: s(sm), tau: s(tau) }
}

fn sign_str(k: i32) -> &'static str {
    if k > 0 {
        "+1"
    } else {
        "-1"
    }
}

/// The complete list of irreducible representations of the cover.
pub fn irrep_table(g: &CoverGroup) -> IrrepTable {
    let m = g.m;
    let f = Field::for_dihedral(m);
    let zeta = |k: i64| root_of_unity(m, k);
    let (one, zero, i) = (f.one(), f.zero(), f.i());
    let neg = |x: &CycNum| -x.clone();
    let mut irreps = Vec::new();
    let one_dims: &[(i64, i64, i64)] = if m % 2 == 1 {
        &[(1, 1, 1), (-1, 1, 1), (1, -1, 1), (-1, -1, 1)]
    } else {
        &[(1, 1, 1), (-1, 1, 1), (1, -1, 1), (-1, -1, 1), (1, 1, -1), (-1, 1, -1), (1, -1, -1), (-1, -1, -1)]
    };
    for (k, &(a, b, c)) in one_dims.iter().enumerate() {
        irreps.push(one_dim(f, format!("X{}", k + 1), a, b, c));
    }
    let swap = mat(f, vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]]);
    let parity = |j: u32| if j % 2 == 0 { 1i64 } else { -1 };
    // σ̂ₘ = [[0, (−1)^j], [1, 0]] for the negative cover.
    let twisted_swap = |j: u32| mat(f, vec![vec![zero.clone(), f.int(parity(j))], vec![one.clone(), zero.clone()]]);
    let deltas = |j: u32| if j % 2 == 0 { vec![one.clone(), neg(&one)] } else { vec![i.clone(), neg(&i)] };
    let two = |name: String, epsilon: i32, ell: Option<u32>, delta: Option<CycNum>, s0: Matrix, sm: Matrix, tau: Matrix| Irrep {
        name,
        dim: 2,
        epsilon,
        ell,
        delta,
        z: Matrix::scalar(f, 2, &f.int(epsilon as i64)),
        s0,
        sm,
        tau,
    };
    match (m % 2 == 1, g.sign) {
        (true, CoverSign::Plus) => {
            let p = (m - 1) / 2;
            irreps.push(two(
                "Y0".into(),
                -1,
                Some(0),
                None,
                diag2(f, one.clone(), neg(&one)),
                swap.clone(),
                Matrix::identity(f, 2),
            ));
            for j in 1..=p {
                for eps in [1i32, -1] {
                    for delta in [one.clone(), neg(&one)] {
                        let e = f.int(eps as i64);
                        irreps.push(two(
                            format!("Y{j}(eps={},delta={})", sign_str(eps), delta),
                            eps,
                            Some(j),
                            Some(delta.clone()),
                            diag2(f, delta.clone(), &e * &delta),
                            swap.clone(),
                            diag2(f, zeta(2 * j as i64), zeta(-2 * j as i64)),
                        ));
                    }
                }
            }
        }
        (true, CoverSign::Minus) => {
            let p = (m - 1) / 2;
            for j in 1..=2 * p {
                for delta in deltas(j) {
                    irreps.push(two(
                        format!("Y{j}(delta={delta})"),
                        parity(j) as i32,
                        Some(j),
                        Some(delta.clone()),
                        diag2(f, delta.clone(), &f.int(parity(j)) * &delta),
                        twisted_swap(j),
                        diag2(f, zeta(j as i64), zeta(-(j as i64))),
                    ));
                }
            }
            irreps.push(two(
                format!("Y{m}"),
                -1,
                Some(m),
                None,
                diag2(f, i.clone(), neg(&i)),
                mat(f, vec![vec![zero.clone(), neg(&one)], vec![one.clone(), zero.clone()]]),
                Matrix::scalar(f, 2, &f.int(-1)),
            ));
        }
        (false, sign) => {
            for j in 1..m {
                let ds = if sign == CoverSign::Plus { vec![one.clone(), neg(&one)] } else { deltas(j) };
                for delta in ds {
                    let sm = if sign == CoverSign::Plus { swap.clone() } else { twisted_swap(j) };
                    irreps.push(two(
                        format!("Y{j}(delta={delta})"),
                        parity(j) as i32,
                        Some(j),
                        Some(delta.clone()),
                        diag2(f, delta.clone(), &f.int(parity(j)) * &delta),
                        sm,
                        diag2(f, zeta(j as i64), zeta(-(j as i64))),
                    ));
                }
            }
        }
    }
    IrrepTable { m, sign: g.sign, irreps }
}

/// Outcome of checking an irrep table against the group.
#[derive(Clone, Debug, Default, Serialize)]
pub struct TableCheck {
    /// (irrep, relation) pairs where the matrices break the presentation.
    pub relation_failures: Vec<(String, String)>,
    /// Irreps whose normal-form images are not multiplicative.
    pub not_homomorphic: Vec<String>,
    /// Irreps whose character is not a class function.
    pub not_class_functions: Vec<String>,
    /// Pairs (i, j) with ⟨χᵢ, χⱼ⟩ ≠ δᵢⱼ.
    pub orthogonality_failures: Vec<(usize, usize)>,
    pub irreps: usize,
    pub classes: usize,
    pub sum_dim_squared: usize,
    pub order: usize,
}

impl TableCheck {
    pub fn passed(&self) -> bool {
        self.relation_failures.is_empty()
            && self.not_homomorphic.is_empty()
            && self.not_class_functions.is_empty()
            && self.orthogonality_failures.is_empty()
            && self.irreps == self.classes
            && self.sum_dim_squared == self.order
    }
}

/// ⟨χ, ψ⟩ = (1/|G|) Σ χ(g) conj(ψ(g)).
pub fn inner_product(a: &[CycNum], b: &[CycNum]) -> CycNum {
    let f = a[0].field();
    let mut s = f.zero();
    for (x, y) in a.iter().zip(b) {
        s = &s + &(x * &y.conj());
    }
    &s * &f.frac(1, a.len() as i64)
}

/// Verifies the table: presentation, homomorphism, class functions,
/// orthonormality, the class count and Σ dim² = |G|.
pub fn check_table(g: &CoverGroup, t: &IrrepTable) -> TableCheck {
    let classes = conjugacy_classes(g);
    let mut out = TableCheck {
        irreps: t.irreps.len(),
        classes: classes.len(),
        sum_dim_squared: t.irreps.iter().map(|r| r.dim * r.dim).sum(),
        order: g.order(),
        ..Default::default()
    };
    let mut chars = Vec::with_capacity(t.irreps.len());
    for r in &t.irreps {
        for rel in r.failed_relations(g.m, g.sign) {
            out.relation_failures.push((r.name.clone(), rel));
        }
        let img = r.images(g);
        let hom = g.elements().all(|x| g.elements().all(|y| img[x].mul(&img[y]) == img[g.mul(x, y)]));
        if !hom {
            out.not_homomorphic.push(r.name.clone());
        }
        let ch: Vec<CycNum> = img.iter().map(|m| m.trace()).collect();
        if classes.iter().any(|c| c.iter().any(|&x| ch[x] != ch[c[0]])) {
            out.not_class_functions.push(r.name.clone());
        }
        chars.push(ch);
    }
    for i in 0..chars.len() {
        for j in i..chars.len() {
            let ip = inner_product(&chars[i], &chars[j]);
            let ok = if i == j { ip.is_one() } else { ip.is_zero() };
            if !ok {
                out.orthogonality_failures.push((i, j));
            }
        }
    }
    out
}

/// Character table: rows are irreps, columns are conjugacy classes.
pub fn character_table(g: &CoverGroup, t: &IrrepTable) -> Vec<Vec<CycNum>> {
    let classes = conjugacy_classes(g);
    t.irreps
        .iter()
        .map(|r| {
            let ch = r.character(g);
            classes.iter().map(|c| ch[c[0]].clone()).collect()
        })
        .collect()
}

/// Index of the irrep whose character equals `ch`, if any.
pub fn match_character(g: &CoverGroup, t: &IrrepTable, ch: &[CycNum]) -> Option<usize> {
    t.irreps.iter().position(|r| r.character(g) == ch)
}

/// The realized operator for an abstract generator, with z ↦ −1.
fn realized(s: &SymmetrySet, x: Gen) -> LinOperator {
    match x {
        Gen::Z => s.scalar(s.field.int(-1)),
        Gen::S0 => s.dsig[0].clone(),
        Gen::S1 => s.dsig[1].clone(),
        Gen::Sm => s.dsig[s.m as usize].clone(),
    }
}

fn realized_word(s: &SymmetrySet, w: &[Gen]) -> LinOperator {
    w.iter().fold(s.one(), |acc, &x| acc.mul(&realized(s, x)))
}

/// Presentation relations in the realization plus σ̂ⱼ = (−1)^{j+1}τ̂^jσ̂ₘ.
pub fn realization_identities(g: &CoverGroup, s: &SymmetrySet) -> Vec<OperatorIdentity> {
    let f = s.field;
    let mut v: Vec<OperatorIdentity> = presentation(g.m, g.sign)
        .into_iter()
        .map(|r| OperatorIdentity::new(r.name, realized_word(s, &r.lhs), realized_word(s, &r.rhs)))
        .collect();
    let sm = &s.dsig[s.m as usize];
    for j in 1..=s.m {
        let sign = if j % 2 == 1 { f.one() } else { f.int(-1) };
        let rhs = s.dtau.pow(j, f).mul(sm).scale(&sign);
        v.push(OperatorIdentity::new(format!("S{j} = (-1)^{}·T^{j}·Sm", j + 1), s.dsig[j as usize].clone(), rhs));
    }
    v
}

/// Checks the realization on GradedBasis(d) for d ≤ max_degree.
pub fn realization_report(g: &CoverGroup, s: &SymmetrySet, max_degree: u32) -> Result<Report, GrpError> {
    if g.sign != CoverSign::Plus {
        return Err(GrpError::WrongCover);
    }
    if g.m != s.m {
        return Err(GrpError::OrderMismatch { group: g.m, roots: s.m });
    }
    let ev = Evaluator::new(s.field);
    let rep = Report(check_identities(&ev, &realization_identities(g, s), max_degree));
    if let Some(bad) = rep.failures().next() {
        return Err(GrpError::RelationViolated {
            relation: bad.identity.clone(),
            degree: bad.degree,
            counterexample: Box::new(bad.counterexample.clone().expect("failures carry a counterexample")),
        });
    }
    Ok(rep)
}

/// Maps the abstract generators onto the realized operators and checks every
/// relation on polynomials of degree at most 2.
pub fn realization_map(g: &CoverGroup, rs: &RootSystem, delta: i32) -> Result<Report, GrpError> {
    if g.m != rs.m() {
        return Err(GrpError::OrderMismatch { group: g.m, roots: rs.m() });
    }
    if g.sign != CoverSign::Plus {
        return Err(GrpError::WrongCover);
    }
    let s = build_symmetries(rs, delta)?;
    realization_report(g, &s, 2)
}

/// Character of the realized action on constant spinors, the span of χ⁺ and σ̂ₘχ⁺.
pub fn constant_spinor_character(g: &CoverGroup, s: &SymmetrySet) -> Vec<CycNum> {
    let ev = Evaluator::new(s.field);
    let gen = |x: Gen| ev.matrix(&realized(s, x), 0).as_ref().clone();
    let (z, s0, sm) = (gen(Gen::Z), gen(Gen::S0), gen(Gen::Sm));
    let tau = ev.matrix(&s.dtau, 0).as_ref().clone();
    debug_assert_eq!(GradedBasis::new(0).len(), 2);
    g.elements()
        .map(|x| {
            let e = g.normal_form(x);
            z.pow(e.a as u32).mul(&s0.pow(e.b as u32)).mul(&tau.pow(e.c)).mul(&sm.pow(e.d as u32)).trace()
        })
        .collect()
}

/// Dimension of the span of χ⁺ and σ̂ₘχ⁺.
pub fn constant_spinor_span_dim(s: &SymmetrySet) -> usize {
    let ev = Evaluator::new(s.field);
    let sm = ev.matrix(&s.dsig[s.m as usize], 0);
    let up = vec![s.field.one(), s.field.zero()];
    let moved = sm.mul_vec(&up);
    Matrix::from_cols(s.field, 2, vec![up, moved]).rank()
}

/// Everything `group tables` prints.
#[derive(Clone, Debug, Serialize)]
pub struct GroupTables {
    pub m: u32,
    pub cover: CoverSign,
    pub order: usize,
    pub classes: Vec<Vec<GroupElement>>,
    pub irreps: Vec<Irrep>,
    pub characters: Vec<Vec<CycNum>>,
    pub check: TableCheck,
}

pub fn group_tables(m: u32, sign: CoverSign) -> Result<GroupTables, GrpError> {
    let g = make_cover(m, sign)?;
    let t = irrep_table(&g);
    let classes = conjugacy_classes(&g).into_iter().map(|c| c.into_iter().map(|x| g.normal_form(x)).collect()).collect();
    Ok(GroupTables {
        m,
        cover: sign,
        order: g.order(),
        classes,
        characters: character_table(&g, &t),
        check: check_table(&g, &t),
        irreps: t.irreps,
    })
}

fn latex_element(e: &GroupElement) -> String {
    let mut s = String::new();
    if e.a == 1 {
        s.push_str("z");
    }
    if e.b == 1 {
        s.push_str("\\hat\\sigma_0");
    }
    match e.c {
        0 => {}
        1 => s.push_str("\\hat\\tau"),
        c => s.push_str(&format!("\\hat\\tau^{{{c}}}")),
    }
    if e.d == 1 {
        s.push_str("\\hat\\sigma_m");
    }
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

fn latex_matrix(m: &Matrix) -> String {
    let rows: Vec<String> =
        m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" & ")).collect();
    format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
}

impl GroupTables {
    /// LaTeX rendering: irrep generator matrices and the character table.
    pub fn to_latex(&self) -> String {
        let mut s = String::new();
        let n = self.classes.len();
        s.push_str(&format!(
            "% m = {}, cover {}, order {}; field generator z{} = exp(2 pi i/{})\n",
            self.m,
            self.cover,
            self.order,
            Field::for_dihedral(self.m).order(),
            Field::for_dihedral(self.m).order()
        ));
        s.push_str("\\begin{tabular}{l|cccc}\nirrep & $z$ & $\\hat\\sigma_0$ & $\\hat\\sigma_m$ & $\\hat\\tau$ \\\\\n\\hline\n");
        for r in &self.irreps {
            s.push_str(&format!(
                "\\texttt{{{}}} & ${}$ & ${}$ & ${}$ & ${}$ \\\\\n",
                r.name,
                latex_matrix(&r.z),
                latex_matrix(&r.s0),
                latex_matrix(&r.sm),
                latex_matrix(&r.tau)
            ));
        }
        s.push_str("\\end{tabular}\n\n");
        s.push_str(&format!("\\begin{{tabular}}{{l|{}}}\n", "c".repeat(n)));
        let heads: Vec<String> = self.classes.iter().map(|c| format!("${}$", latex_element(&c[0]))).collect();
        s.push_str(&format!(" & {} \\\\\n", heads.join(" & ")));
        let sizes: Vec<String> = self.classes.iter().map(|c| c.len().to_string()).collect();
        s.push_str(&format!("size & {} \\\\\n\\hline\n", sizes.join(" & ")));
        for (r, row) in self.irreps.iter().zip(&self.characters) {
            let cells: Vec<String> = row.iter().map(|x| format!("${x}$")).collect();
            s.push_str(&format!("\\texttt{{{}}} & {} \\\\\n", r.name, cells.join(" & ")));
        }
        s.push_str("\\end{tabular}\n");
        s
    }
}

#[cfg(test)]
mod tests;
