//! The symmetry algebra acting on degree-n monogenics: eigenvalues and group
//! phases on each ψ_{n,k}^±, and the matrix module they span compared with
//! the ladder construction.

use serde::Serialize;

use super::{coordinate_matrix, rank_of, MonogenicError, Monogenic3D, Monogenics};
use crate::dunkl::{LinOperator, RootSystem};
use crate::poly::{solve_linear_system, GradedBasis, Matrix, Spin, SpinorPoly};
use crate::reps::{
    build_module, certify, check_admissibility, resolve_lambda_lambda, AdmissibilityVerdict, Case, Certificate,
    Family, ModuleData, RepMatrices, RepSpec,
};
use crate::scalar::{root_of_unity, CycNum, Rat};
use crate::symalg::{build_symmetries, SymmetrySet};

/// Everything checked on the degree-n monogenics for one (m, κ, δ).
#[derive(Clone, Debug, Serialize)]
pub struct MonogenicRepReport {
    pub m: u32,
    pub n: u32,
    pub delta: i32,
    /// dim ker D on degree-n spinors, from the nullspace of D alone.
    pub kernel_dim: usize,
    pub ck_rank: usize,
    pub explicit_rank: usize,
    /// Rank of the two bases together.
    pub joint_rank: usize,
    pub all_annihilated: bool,
    /// Per (k, ±): the c with closed form = c·CK output, if proportional.
    pub explicit_over_ck: Vec<Option<String>>,
    /// Printed eigenvalue and group-action claims that fail, by name.
    pub action_failures: Vec<String>,
    /// The same claims with O₁₂₃ = δi(n+1+γ̂+κ₀), which is the Λ of the
    /// unrestricted row for both signs of δ.
    pub corrected_failures: Vec<String>,
    /// The scalar by which O₁₂₃ acts.
    pub o123_eigenvalue: Option<String>,
    /// Matrices of the generators on the ladder basis built from ψ_{n,n}^+.
    #[serde(skip)]
    pub module: Option<RepMatrices>,
    pub certificate: Option<Certificate>,
    /// The ladder-basis matrices equal those built from the same data.
    pub equals_built_module: bool,
    /// A case-I spec whose (λ, Λ, τ̂-weight, δ) reproduce the module.
    pub matched_spec: Option<RepSpec>,
    pub matched_verdict: Option<AdmissibilityVerdict>,
}

impl MonogenicRepReport {
    pub fn dimension_ok(&self) -> bool {
        let d = 2 * self.n as usize + 2;
        self.kernel_dim == d && self.ck_rank == d && self.explicit_rank == d && self.joint_rank == d && self.all_annihilated
    }

    pub fn irreducible(&self) -> bool {
        self.certificate.as_ref().is_some_and(|c| c.irreducible && c.commutant_dim == 1)
    }

    /// The module equals the one built from its data, and that data is a
    /// cell of the unrestricted row (λ₁ with (Λ₁, 1) or (Λ₂, −1)).
    pub fn matches_family(&self) -> bool {
        self.equals_built_module
            && self.matched_spec.as_ref().is_some_and(|s| s.lambda_branch == 1 && s.first_row())
            && self.matched_verdict.as_ref().is_some_and(|v| v.irreducible && v.violated_constraints.is_empty())
    }

    /// Every check, against the printed action tables.
    pub fn passed(&self) -> bool {
        self.dimension_ok() && self.action_failures.is_empty() && self.irreducible() && self.matches_family()
    }

    /// Every check, with the corrected O₁₂₃ eigenvalue.
    pub fn passed_corrected(&self) -> bool {
        self.dimension_ok() && self.corrected_failures.is_empty() && self.irreducible() && self.matches_family()
    }
}

/// c with a = c·b, when a and b are proportional and b ≠ 0.
pub(crate) fn proportionality(a: &SpinorPoly, b: &SpinorPoly) -> Option<CycNum> {
    let (mono, spin, cb) = [Spin::Up, Spin::Down]
        .into_iter()
        .find_map(|s| b.component(s).terms().next().map(|(m, c)| (*m, s, c.clone())))?;
    let ca = a.component(spin).coeff(&mono).cloned().unwrap_or_else(|| cb.field().zero());
    let c = &ca * &cb.inv().ok()?;
    (a == &b.scale(&c)).then_some(c)
}

fn sign_of(s: Spin) -> i64 {
    if s == Spin::Up {
        1
    } else {
        -1
    }
}

fn other(s: Spin) -> Spin {
    if s == Spin::Up {
        Spin::Down
    } else {
        Spin::Up
    }
}

/// Which O₁₂₃ eigenvalue to claim: the printed δi(n+1+γ̂+δκ₀) or
/// δi(n+1+γ̂+κ₀).
#[derive(Clone, Copy, PartialEq, Eq)]
enum O123Form {
    Printed,
    Corrected,
}

/// The eigenvalue and phase claims, as (name, operator, expected image) for
/// one basis element.
fn claims(
    sym: &SymmetrySet,
    mono: &Monogenics,
    basis: &[Monogenic3D],
    b: &Monogenic3D,
    form: O123Form,
) -> Vec<(String, LinOperator, SpinorPoly)> {
    let f = sym.field;
    let m = sym.m;
    let i = f.i();
    let n = b.n as i64;
    let k = b.k as i64;
    let s = sign_of(b.sign);
    let delta = sym.delta as i64;
    let parity = if (n - k) % 2 == 0 { 1 } else { -1 };
    let ell = k.rem_euclid(m as i64);
    let kappa = mono.rs.kappa();
    let partner = basis.iter().find(|c| c.k == b.k && c.sign == other(b.sign)).expect("both signs present");
    let tag = |name: &str| format!("{name} on psi_{{{},{}}}^{}", b.n, b.k, if s == 1 { "+" } else { "-" });
    let gh = &mono.gamma_hat;
    let o0 = f.rat(&(Rat::int(s) * (Rat::int(k) + Rat::new(1, 2) + gh.clone())));
    let k0 = if form == O123Form::Printed { Rat::int(delta) * kappa.k0.clone() } else { kappa.k0.clone() };
    let o123 = &(&f.int(delta) * &i) * &f.rat(&(Rat::int(n + 1) + gh.clone() + k0));
    let s0 = f.int(s * delta * parity);
    let s1 = &(&(&i * &f.int(-s * parity)) * &root_of_unity(m, s * 2 * ell)) * &root_of_unity(m, s);
    let sm = &i * &f.int(s * parity);
    let tau = -root_of_unity(m, -s * (2 * ell + 1));
    vec![
        (tag("O0"), sym.o0.clone(), b.psi.scale(&o0)),
        (tag("O123"), sym.o123.clone(), b.psi.scale(&o123)),
        (tag("S0"), sym.dsig[0].clone(), b.psi.scale(&s0)),
        (tag("S1"), sym.dsig[1].clone(), partner.psi.scale(&s1)),
        (tag("Sm"), sym.dsig[m as usize].clone(), partner.psi.scale(&sm)),
        (tag("tau"), sym.dtau.clone(), b.psi.scale(&tau)),
    ]
}

/// Matrix of `op` on the span of `vecs`, if the span is invariant.
fn restricted(op: &LinOperator, span: &Matrix, vecs: &[SpinorPoly], n: u32) -> Option<Matrix> {
    let f = span.field();
    let b = GradedBasis::new(n);
    let mut cols = Vec::with_capacity(vecs.len());
    for v in vecs {
        let image = b.coords(f, &op.apply(v))?;
        cols.push(solve_linear_system(span, &image).particular?);
    }
    Some(Matrix::from_cols(f, vecs.len(), cols))
}

/// Columns of the inverse of an invertible matrix.
fn inverse(p: &Matrix) -> Option<Matrix> {
    let f = p.field();
    let d = p.rows();
    let mut cols = Vec::with_capacity(d);
    for j in 0..d {
        let mut e = vec![f.zero(); d];
        e[j] = f.one();
        let sol = solve_linear_system(p, &e);
        if sol.rank < d {
            return None;
        }
        cols.push(sol.particular?);
    }
    Some(Matrix::from_cols(f, d, cols))
}

/// The module on the ladder basis v₀⁺ = ψ_{n,n}^+, v_{k+1}⁺ = L₋v_k⁺,
/// v_k⁻ = σ̂ₘv_k⁺.
fn ladder_module(sym: &SymmetrySet, mono: &Monogenics, basis: &[Monogenic3D], n: u32) -> Option<RepMatrices> {
    let f = sym.field;
    let vecs: Vec<SpinorPoly> = basis.iter().map(|b| b.psi.clone()).collect();
    let span = coordinate_matrix(f, n, &vecs);
    let on = |op: &LinOperator| restricted(op, &span, &vecs, n);
    let d = vecs.len();
    let nn = n as usize;
    let top = basis.iter().position(|b| b.k == n && b.sign == Spin::Up)?;
    let lminus = on(&sym.lminus)?;
    let sm = on(&sym.dsig[sym.m as usize])?;
    let mut plus = vec![{
        let mut e = vec![f.zero(); d];
        e[top] = f.one();
        e
    }];
    for k in 0..nn {
        plus.push(lminus.mul_vec(&plus[k]));
    }
    let minus: Vec<Vec<CycNum>> = plus.iter().map(|v| sm.mul_vec(v)).collect();
    let p = Matrix::from_cols(f, d, plus.into_iter().chain(minus).collect());
    let pinv = inverse(&p)?;
    let conj = |op: &LinOperator| on(op).map(|x| pinv.mul(&x).mul(&p));

    let o0 = conj(&sym.o0)?;
    let o123 = conj(&sym.o123)?;
    let lplus = conj(&sym.lplus)?;
    let tau = conj(&sym.dtau)?;
    let s0 = conj(&sym.dsig[0])?;
    let lambda = o0.get(0, 0).to_rat()?;
    let tau_exponent = (0..2 * sym.m as i64).find(|&e| tau.get(0, 0) == &root_of_unity(sym.m, e))?;
    let delta = if s0.get(0, 0).is_one() { 1 } else { -1 };
    let a: Vec<CycNum> = (1..=nn).map(|k| lplus.get(k - 1, k).clone()).collect();
    let mut gram = vec![f.one()];
    for x in &a {
        let last = gram.last().expect("h0").clone();
        gram.push(&last * x);
    }
    let sigma = sym.dsig.iter().map(|s| conj(s)).collect::<Option<Vec<_>>>()?;
    Some(RepMatrices {
        data: ModuleData {
            m: sym.m,
            n,
            tau_exponent,
            delta,
            lambda,
            big_lambda: o123.get(0, 0).clone(),
            kappa: mono.rs.kappa().clone(),
        },
        o0,
        o123,
        t0: conj(&sym.t0)?,
        tplus: conj(&sym.tplus)?,
        tminus: conj(&sym.tminus)?,
        s0,
        s1: sigma[1].clone(),
        sm: sigma[sym.m as usize].clone(),
        tau,
        lplus,
        lminus: conj(&sym.lminus)?,
        oplus: conj(&sym.oplus)?,
        ominus: conj(&sym.ominus)?,
        sigma,
        a,
        gram,
    })
}

fn same_module(a: &RepMatrices, b: &RepMatrices) -> bool {
    std::ptr::eq(a.field(), b.field())
        && a.generators().iter().zip(b.generators()).all(|((_, x), (_, y))| *x == y)
        && a.sigma == b.sigma
        && a.a == b.a
}

/// The case-I spec with the module's λ, Λ, δ and τ̂-weight.
fn find_spec(r: &RepMatrices) -> Option<RepSpec> {
    let d = &r.data;
    let case = if d.m % 2 == 1 { Case::I } else { Case::Ii };
    for ell in 0..d.m {
        for &branch in case.branches(d.m) {
            for family in [Family::One, Family::Two] {
                let spec = RepSpec::new(d.m, d.n, ell, d.delta, case, branch, family, d.kappa.clone());
                let same_weight = (spec.tau_exponent() - d.tau_exponent).rem_euclid(2 * d.m as i64) == 0;
                if !same_weight {
                    continue;
                }
                if let Ok((lam, big)) = resolve_lambda_lambda(&spec) {
                    if lam == d.lambda && big == d.big_lambda {
                        return Some(spec);
                    }
                }
            }
        }
    }
    None
}

/// Builds both bases at degree n and checks dimension, spans, the printed
/// action tables and the module structure.
pub fn verify_monogenic_rep(rs: &RootSystem, delta: i32, n: u32) -> Result<MonogenicRepReport, MonogenicError> {
    let mono = Monogenics::positive(rs, delta)?;
    let f = mono.field();
    let sym = build_symmetries(rs, delta).map_err(|e| match e {
        crate::symalg::SymAlgError::Dunkl(d) => MonogenicError::Dunkl(d),
        other => panic!("symmetry construction failed: {other}"),
    })?;
    let ck = mono.monogenic_basis(n)?;
    let explicit = mono.explicit_basis(n)?;
    let ck_polys: Vec<SpinorPoly> = ck.iter().map(|b| b.psi.clone()).collect();
    let ex_polys: Vec<SpinorPoly> = explicit.iter().map(|b| b.psi.clone()).collect();
    let joint: Vec<SpinorPoly> = ck_polys.iter().chain(&ex_polys).cloned().collect();
    let all_annihilated = joint.iter().all(|p| mono.is_monogenic(p));
    let explicit_over_ck = explicit
        .iter()
        .zip(&ck)
        .map(|(e, c)| proportionality(&e.psi, &c.psi).map(|x| x.to_string()))
        .collect();

    let failures = |form| {
        let mut out = Vec::new();
        for b in &ck {
            for (name, op, want) in claims(&sym, &mono, &ck, b, form) {
                if op.apply(&b.psi) != want {
                    out.push(name);
                }
            }
        }
        out
    };
    let action_failures = failures(O123Form::Printed);
    let corrected_failures = failures(O123Form::Corrected);
    let o123_eigenvalue = ck.first().and_then(|b| proportionality(&sym.o123.apply(&b.psi), &b.psi)).map(|c| c.to_string());

    let module = ladder_module(&sym, &mono, &ck, n);
    let certificate = module.as_ref().map(certify);
    let equals_built_module = module
        .as_ref()
        .is_some_and(|r| build_module(&r.data).is_ok_and(|built| same_module(r, &built)));
    let matched_spec = module.as_ref().and_then(find_spec);
    let matched_verdict = matched_spec.as_ref().map(check_admissibility);
    Ok(MonogenicRepReport {
        m: rs.m(),
        n,
        delta,
        kernel_dim: mono.kernel_dim(n),
        ck_rank: rank_of(f, n, &ck_polys),
        explicit_rank: rank_of(f, n, &ex_polys),
        joint_rank: rank_of(f, n, &joint),
        all_annihilated,
        explicit_over_ck,
        action_failures,
        corrected_failures,
        o123_eigenvalue,
        module,
        certificate,
        equals_built_module,
        matched_spec,
        matched_verdict,
    })
}
