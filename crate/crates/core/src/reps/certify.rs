//! Independent checks on built matrices: the algebra relations, the
//! commutant, an exact irreducibility test, and unitarity.

use serde::Serialize;

use super::RepMatrices;
use crate::grp::{presentation, CoverSign, Gen};
use crate::poly::Matrix;
use crate::scalar::{root_of_unity, sign_of_real, CycNum, Sign};

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub relation_failures: Vec<String>,
    pub commutant_dim: usize,
    /// No proper invariant subspace (and all relations hold).
    pub irreducible: bool,
    pub a_signs: Vec<Sign>,
    pub ladder_positive: bool,
    pub star_failures: Vec<String>,
    pub unitary: bool,
}

fn comm(a: &Matrix, b: &Matrix) -> Matrix {
    a.mul(b).sub(&b.mul(a))
}

fn acomm(a: &Matrix, b: &Matrix) -> Matrix {
    a.mul(b).add(&b.mul(a))
}

/// Relations of the symmetry algebra as matrix identities (lhs, rhs).
pub fn relations(r: &RepMatrices) -> Vec<(String, Matrix, Matrix)> {
    let f = r.field();
    let d = r.dim();
    let m = r.data.m;
    let one = Matrix::identity(f, d);
    let zero = Matrix::zeros(f, d, d);
    let minus_one = one.neg();
    let half = f.frac(1, 2);
    let h = one.scale(&half);
    let (o0, op, om, o123) = (&r.o0, &r.oplus, &r.ominus, &r.o123);
    let (t0, tp, tm) = (&r.t0, &r.tplus, &r.tminus);
    let (lp, lm) = (&r.lplus, &r.lminus);
    let (s0, s1, sm, tau) = (&r.s0, &r.s1, &r.sm, &r.tau);
    let sq = |x: &Matrix| x.mul(x);
    let z2 = root_of_unity(m, 2).embed(f);
    let zm2 = root_of_unity(m, -2).embed(f);
    let mut out: Vec<(String, Matrix, Matrix)> = Vec::new();
    let mut id = |name: &str, a: Matrix, b: Matrix| out.push((name.to_string(), a, b));

    let word = |w: &[Gen]| {
        w.iter().fold(one.clone(), |acc, g| {
            acc.mul(match g {
                Gen::Z => &minus_one,
                Gen::S0 => s0,
                Gen::S1 => s1,
                Gen::Sm => sm,
            })
        })
    };
    for rel in presentation(m, CoverSign::Plus) {
        id(&rel.name, word(&rel.lhs), word(&rel.rhs));
    }
    id("tau = S1 Sm", tau.clone(), s1.mul(sm));
    for (j, s) in r.sigma.iter().enumerate().skip(1) {
        let want = tau.pow(j as u32).mul(sm);
        let want = if j % 2 == 1 { want } else { want.neg() };
        id(&format!("S{j} = (-1)^(j+1) tau^j Sm"), s.clone(), want);
    }

    id("[O0,O+] = O+ + {O123,T+} + [T0,T+]", comm(o0, op), op.add(&acomm(o123, tp)).add(&comm(t0, tp)));
    id("[O0,O-] = -O- + {O123,T-} - [T0,T-]", comm(o0, om), om.neg().add(&acomm(o123, tm)).sub(&comm(t0, tm)));
    id(
        "[O+,O-] = 2O0 - 2{O123,T0} + [T+,T-]",
        comm(op, om),
        o0.scale(&f.int(2)).sub(&acomm(o123, t0).scale(&f.int(2))).add(&comm(tp, tm)),
    );
    let o0m = o0.sub(&h);
    let o0p = o0.add(&h);
    let cas_minus = sq(&o0m).add(&sq(&o123.add(t0)));
    let cas_plus = sq(&o0p).add(&sq(&o123.sub(t0)));
    id("O+O- = T+T- - (O0-1/2)^2 - (O123+T0)^2", op.mul(om), tp.mul(tm).sub(&cas_minus));
    id("O-O+ = T-T+ - (O0+1/2)^2 - (O123-T0)^2", om.mul(op), tm.mul(tp).sub(&cas_plus));
    // O₁₂₃² = −1/4 + ΣOᵢ² + ΣOᵢⱼ² written with O₀, O±, T₀, T±.
    let casimir = one
        .scale(&f.frac(-1, 4))
        .add(&acomm(tp, tm).scale(&half))
        .sub(&sq(t0))
        .sub(&sq(o0))
        .sub(&acomm(op, om).scale(&half));
    id("O123^2 = -1/4 + sum O_i^2 + sum O_ij^2", sq(o123), casimir);
    id("L+ = {O0,O+}/2", lp.clone(), acomm(o0, op).scale(&half));
    id("L- = {O0,O-}/2", lm.clone(), acomm(o0, om).scale(&half));
    id("[O0,L+] = L+", comm(o0, lp), lp.clone());
    id("[O0,L-] = -L-", comm(o0, lm), lm.neg());
    id(
        "L+L- = (O123+T0)^2 T+T- + (O0-1/2)^2 O+O-",
        lp.mul(lm),
        sq(&o123.add(t0)).mul(&tp.mul(tm)).add(&sq(&o0m).mul(&op.mul(om))),
    );
    id(
        "L-L+ = (O123-T0)^2 T-T+ + (O0+1/2)^2 O-O+",
        lm.mul(lp),
        sq(&o123.sub(t0)).mul(&tm.mul(tp)).add(&sq(&o0p).mul(&om.mul(op))),
    );
    id("L+L- = -((O0-1/2)^2 + (O123+T0)^2)((O0-1/2)^2 - T+T-)", lp.mul(lm), cas_minus.mul(&sq(&o0m).sub(&tp.mul(tm))).neg());
    id("L-L+ = -((O0+1/2)^2 + (O123-T0)^2)((O0+1/2)^2 - T-T+)", lm.mul(lp), cas_plus.mul(&sq(&o0p).sub(&tm.mul(tp))).neg());

    id("[O0,T0] = 0", comm(o0, t0), zero.clone());
    id("{O0,T+} = 0", acomm(o0, tp), zero.clone());
    id("{O0,T-} = 0", acomm(o0, tm), zero.clone());
    id("T0 T+ = -T+ T0", t0.mul(tp), tp.mul(t0).neg());
    id("T0 T- = -T- T0", t0.mul(tm), tm.mul(t0).neg());
    id("T0 O+ = -O+ T0", t0.mul(op), op.mul(t0).neg());
    id("T0 O- = -O- T0", t0.mul(om), om.mul(t0).neg());
    id("T+ O- = -O+ T-", tp.mul(om), op.mul(tm).neg());
    id("T- O+ = -O- T+", tm.mul(op), om.mul(tp).neg());
    id("T+ L- = L+ T-", tp.mul(lm), lp.mul(tm));
    id("T- L+ = L- T+", tm.mul(lp), lm.mul(tp));
    id("S0 O0 = O0 S0", s0.mul(o0), o0.mul(s0));
    id("S1 O0 = -O0 S1", s1.mul(o0), o0.mul(s1).neg());
    id("Sm O0 = -O0 Sm", sm.mul(o0), o0.mul(sm).neg());
    id("S0 O+ = -O+ S0", s0.mul(op), op.mul(s0).neg());
    id("S0 O- = -O- S0", s0.mul(om), om.mul(s0).neg());
    for (j, s) in r.sigma.iter().enumerate().skip(1) {
        let zp = root_of_unity(m, 2 * j as i64).embed(f);
        let zn = root_of_unity(m, -2 * j as i64).embed(f);
        id(&format!("S{j} O+ = z^{} O- S{j}", 2 * j), s.mul(op), om.mul(s).scale(&zp));
        id(&format!("S{j} O- = z^-{} O+ S{j}", 2 * j), s.mul(om), op.mul(s).scale(&zn));
    }
    id("S0 L+ = -L+ S0", s0.mul(lp), lp.mul(s0).neg());
    id("S0 L- = -L- S0", s0.mul(lm), lm.mul(s0).neg());
    id("S1 L+ = -z^2 L- S1", s1.mul(lp), lm.mul(s1).scale(&-&z2));
    id("S1 L- = -z^-2 L+ S1", s1.mul(lm), lp.mul(s1).scale(&-&zm2));
    id("Sm L+ = -L- Sm", sm.mul(lp), lm.mul(sm).neg());
    id("Sm L- = -L+ Sm", sm.mul(lm), lp.mul(sm).neg());
    id("tau L+ = z^-2 L+ tau", tau.mul(lp), lp.mul(tau).scale(&zm2));
    id("tau L- = z^2 L- tau", tau.mul(lm), lm.mul(tau).scale(&z2));
    for (name, g) in r.generators() {
        id(&format!("[O123,{name}] = 0"), comm(o123, g), zero.clone());
    }
    out
}

/// Matrices generating the same algebra as all generators.
fn algebra_generators(r: &RepMatrices) -> Vec<&Matrix> {
    vec![&r.o0, &r.oplus, &r.ominus, &r.s0, &r.sm, &r.tau, &r.tplus, &r.tminus]
}

/// Dimension of {X : XM = MX for every generator M}. Since O₀ is diagonal,
/// X is supported on pairs of equal O₀-eigenvalue.
pub fn commutant_dim(r: &RepMatrices) -> usize {
    let f = r.field();
    let d = r.dim();
    let mut unknowns = Vec::new();
    for a in 0..d {
        for b in 0..d {
            if r.o0.get(a, a) == r.o0.get(b, b) {
                unknowns.push((a, b));
            }
        }
    }
    let mut index = vec![vec![None; d]; d];
    for (u, &(a, b)) in unknowns.iter().enumerate() {
        index[a][b] = Some(u);
    }
    let mut rows = Vec::new();
    for g in algebra_generators(r) {
        for i in 0..d {
            for j in 0..d {
                // (XM − MX)ᵢⱼ = Σ_c X_ic M_cj − M_ic X_cj.
                let mut row = vec![f.zero(); unknowns.len()];
                let mut any = false;
                for c in 0..d {
                    if let Some(u) = index[i][c] {
                        let x = g.get(c, j);
                        if !x.is_zero() {
                            row[u] = &row[u] + x;
                            any = true;
                        }
                    }
                    if let Some(u) = index[c][j] {
                        let x = g.get(i, c);
                        if !x.is_zero() {
                            row[u] = &row[u] - x;
                            any = true;
                        }
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return unknowns.len();
    }
    unknowns.len() - Matrix::from_rows(f, rows).rank()
}

/// Semi-echelon span used for spinning vectors and matrices.
struct Span {
    basis: Vec<(usize, Vec<CycNum>)>,
}

impl Span {
    fn new() -> Self {
        Span { basis: Vec::new() }
    }

    /// Adds v if independent; returns whether it was added.
    fn insert(&mut self, mut v: Vec<CycNum>) -> bool {
        for (p, b) in &self.basis {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x = &*x - &(&c * y);
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].inv().expect("nonzero");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        self.basis.push((p, v));
        true
    }

    fn len(&self) -> usize {
        self.basis.len()
    }
}

/// Dimension of the submodule generated by v.
fn spin(gens: &[Matrix], v: Vec<CycNum>) -> usize {
    let mut span = Span::new();
    let mut queue = vec![v.clone()];
    span.insert(v);
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.mul_vec(&x);
            if span.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    span.len()
}

/// Dimension of the algebra generated by the matrices (with the identity).
fn algebra_dim(gens: &[Matrix]) -> usize {
    let d = gens[0].rows();
    let f = gens[0].field();
    let flat = |m: &Matrix| m.to_rows().into_iter().flatten().collect::<Vec<_>>();
    let mut span = Span::new();
    let id = Matrix::identity(f, d);
    span.insert(flat(&id));
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.mul(g);
            if span.insert(flat(&y)) {
                queue.push(y);
            }
        }
    }
    span.len()
}

/// Exact irreducibility over the algebraic closure.
///
/// Norton's criterion with θ = O₀ − μ for an eigenvalue μ of multiplicity
/// one: the module is irreducible iff the eigenvector generates it and the
/// same vector generates the dual module under the transposes. Without a
/// simple eigenvalue the algebra dimension is compared with d².
pub fn is_irreducible(r: &RepMatrices) -> bool {
    let d = r.dim();
    let f = r.field();
    let gens: Vec<Matrix> = algebra_generators(r).into_iter().cloned().collect();
    let simple = (0..d).find(|&a| (0..d).filter(|&b| r.o0.get(b, b) == r.o0.get(a, a)).count() == 1);
    match simple {
        Some(a) => {
            let mut e = vec![f.zero(); d];
            e[a] = f.one();
            if spin(&gens, e.clone()) != d {
                return false;
            }
            let dual: Vec<Matrix> = gens.iter().map(|g| g.transpose()).collect();
            spin(&dual, e) == d
        }
        None => algebra_dim(&gens) == d * d,
    }
}

/// Star images of the generators, as (name, X, X*) with X* expressed
/// through the module matrices; O₁₂₃* = −O₁₂₃ and T₀* = −T₀.
fn star_pairs(r: &RepMatrices) -> Vec<(&'static str, &Matrix, Matrix)> {
    vec![
        ("O0", &r.o0, r.o0.clone()),
        ("O+", &r.oplus, r.ominus.clone()),
        ("O-", &r.ominus, r.oplus.clone()),
        ("O123", &r.o123, r.o123.neg()),
        ("T0", &r.t0, r.t0.neg()),
        ("T+", &r.tplus, r.tminus.clone()),
        ("T-", &r.tminus, r.tplus.clone()),
        ("S0", &r.s0, r.s0.clone()),
        ("S1", &r.s1, r.s1.clone()),
        ("Sm", &r.sm, r.sm.clone()),
    ]
}

/// Generators X with G·M(X*) ≠ M(X)†·G for G = diag(h, h).
pub fn star_failures(r: &RepMatrices) -> Vec<String> {
    let f = r.field();
    let mut diag = r.gram.clone();
    diag.extend(r.gram.iter().cloned());
    let g = Matrix::diagonal(f, &diag);
    star_pairs(r)
        .into_iter()
        .filter(|(_, x, xs)| g.mul(xs) != x.adjoint().mul(&g))
        .map(|(n, _, _)| n.to_string())
        .collect()
}

pub fn certify(r: &RepMatrices) -> Certificate {
    let relation_failures: Vec<String> =
        relations(r).into_iter().filter(|(_, a, b)| a != b).map(|(n, _, _)| n).collect();
    let commutant_dim = commutant_dim(r);
    let irreducible = relation_failures.is_empty() && is_irreducible(r);
    let a_signs: Vec<Sign> = r.a.iter().map(|x| sign_of_real(x).unwrap_or(Sign::Zero)).collect();
    let real = r.a.iter().all(|x| x.is_real());
    let ladder_positive = real && a_signs.iter().all(|&s| s == Sign::Positive);
    let star_failures = star_failures(r);
    let unitary = relation_failures.is_empty() && ladder_positive && star_failures.is_empty();
    Certificate { relation_failures, commutant_dim, irreducible, a_signs, ladder_positive, star_failures, unitary }
}

/// Traces of all words of length ≤ `len` in O₀, O±, σ̂₀, σ̂ₘ, τ̂; equal for
/// isomorphic modules.
pub fn trace_invariants(r: &RepMatrices, len: u32) -> Vec<CycNum> {
    let gens = [&r.o0, &r.oplus, &r.ominus, &r.s0, &r.sm, &r.tau];
    let mut out = Vec::new();
    let mut layer = vec![Matrix::identity(r.field(), r.dim())];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for g in gens {
                let x = w.mul(g);
                out.push(x.trace());
                next.push(x);
            }
        }
        layer = next;
    }
    out
}
