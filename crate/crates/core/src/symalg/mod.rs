//! The symmetry algebra of the dihedral Dunkl–Dirac operator: one-, two- and
//! three-index symmetries, the realized double cover, ladder operators, and
//! the ledger of relations between them.

use thiserror::Error;

use crate::dunkl::{
    build_core_operators, check_identities, clifford_matrix, CoreOperators, Counterexample, DunklError, Evaluator,
    LinOperator, OperatorIdentity, Report, RootSystem,
};
use crate::poly::Mat3;
use crate::scalar::{root_of_unity, CycNum, Field};

#[derive(Debug, Error, Clone)]
pub enum SymAlgError {
    #[error(transparent)]
    Dunkl(#[from] DunklError),
    #[error("two constructions of {name} disagree at degree {degree}: {counterexample:?}")]
    ConstructionMismatch { name: String, degree: u32, counterexample: Box<Counterexample> },
}

/// Deliberate defects used as negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corruption {
    /// Flip the sign of the e₁e₂/2 term of O₁₂ after the build-time checks.
    O12CliffordSign,
}

/// Every generator of the symmetry algebra as an operator on spinor polynomials.
#[derive(Clone)]
pub struct SymmetrySet {
    pub core: CoreOperators,
    pub field: &'static Field,
    pub m: u32,
    pub delta: i32,
    /// ζ = e^{iπ/m}.
    pub zeta: CycNum,
    /// σ̂₀, σ̂₁, …, σ̂ₘ.
    pub dsig: Vec<LinOperator>,
    pub dtau: LinOperator,
    pub dtau_inv: LinOperator,
    /// O₁, O₂, O₃.
    pub o: [LinOperator; 3],
    pub o12: LinOperator,
    pub o31: LinOperator,
    pub o23: LinOperator,
    pub o123: LinOperator,
    pub t0: LinOperator,
    pub tplus: LinOperator,
    pub tminus: LinOperator,
    pub o0: LinOperator,
    pub oplus: LinOperator,
    pub ominus: LinOperator,
    pub lplus: LinOperator,
    pub lminus: LinOperator,
}

/// σ̂ = (Σ_k r_k e_k)·σ_r as a single operator.
fn realized_reflection(label: String, root: &[CycNum; 3], refl: &Mat3, delta: i32) -> LinOperator {
    let cl = clifford_matrix(root, delta);
    let s = refl.clone();
    LinOperator::prim(root[0].field(), label, 0, move |p| p.map(|q| q.substitute_linear(&s)).apply_2x2(&cl))
}

fn sum(f: &'static Field, ops: Vec<LinOperator>) -> LinOperator {
    LinOperator::comb(ops.into_iter().map(|o| (f.one(), o)).collect())
}

fn lin(terms: Vec<(CycNum, LinOperator)>) -> LinOperator {
    LinOperator::comb(terms)
}

const BUILD_CHECK_DEGREE: u32 = 2;

impl SymmetrySet {
    /// The identity operator.
    pub fn one(&self) -> LinOperator {
        LinOperator::identity(self.field)
    }

    pub fn scalar(&self, c: CycNum) -> LinOperator {
        LinOperator::scalar(c)
    }

    /// e₁e₂e₃, which is iδ in the Pauli realization.
    pub fn pseudoscalar(&self) -> LinOperator {
        let e = &self.core.e;
        e[0].mul(&e[1]).mul(&e[2])
    }
}

/// O_ij = L_ij + ½e_ie_j + O_ie_j − O_je_i, or with the Clifford factors on the left.
fn two_index(core: &CoreOperators, o: &[LinOperator; 3], i: usize, j: usize, clifford_left: bool) -> LinOperator {
    let f = core.field;
    let e = &core.e;
    let half = f.frac(1, 2);
    let (a, b) = if clifford_left { (e[i].mul(&o[j]), e[j].mul(&o[i])) } else { (o[i].mul(&e[j]), o[j].mul(&e[i])) };
    lin(vec![(f.one(), core.l[i][j].clone()), (half, e[i].mul(&e[j])), (f.one(), a), (f.int(-1), b)])
}

pub fn build_symmetries(rs: &RootSystem, delta: i32) -> Result<SymmetrySet, SymAlgError> {
    build_symmetries_with(rs, delta, None)
}

pub fn build_symmetries_with(
    rs: &RootSystem,
    delta: i32,
    corruption: Option<Corruption>,
) -> Result<SymmetrySet, SymAlgError> {
    let core = build_core_operators(rs, delta)?;
    let f = core.field;
    let m = rs.m();
    let zeta = root_of_unity(m, 1);
    let i_unit = f.i();
    let half = f.frac(1, 2);
    let e = core.e.clone();
    let roots = rs.positive_roots();
    let dsig: Vec<LinOperator> = roots
        .iter()
        .enumerate()
        .map(|(j, r)| realized_reflection(format!("S{j}"), &r.vector, &r.reflection, delta))
        .collect();
    let dtau = dsig[1].mul(&dsig[m as usize]).named("tau");
    let dtau_inv = dsig[m as usize].mul(&dsig[1]).named("tau^-1");

    // One-index symmetries as group sums.
    let o: [LinOperator; 3] = std::array::from_fn(|i| {
        lin(roots
            .iter()
            .zip(&dsig)
            .map(|(r, s)| (&f.rat(&r.kappa) * &r.vector[i], s.clone()))
            .collect())
        .named(format!("O{}", i + 1))
    });
    let ev = Evaluator::new(f);
    let mut checks: Vec<OperatorIdentity> = Vec::new();
    for i in 0..3 {
        let dx = LinOperator::comm(&core.dirac, &core.xs[i]);
        let via_comm = dx.sub(&e[i]).scale(&half);
        checks.push(OperatorIdentity::new(format!("O{} via [D,x{}]", i + 1, i + 1), via_comm, o[i].clone()));
        let cs = sum(f, (0..3).map(|k| e[k].mul(&core.c[k][i])).collect());
        let via_c = cs.sub(&e[i]).scale(&half);
        checks.push(OperatorIdentity::new(format!("O{} via C", i + 1), via_c, o[i].clone()));
    }

    let pairs = [(0usize, 1usize), (2, 0), (1, 2)];
    let two: Vec<LinOperator> = pairs
        .iter()
        .map(|&(i, j)| two_index(&core, &o, i, j, false).named(format!("O{}{}", i + 1, j + 1)))
        .collect();
    for (k, &(i, j)) in pairs.iter().enumerate() {
        checks.push(OperatorIdentity::new(
            format!("O{}{} with Clifford factors left", i + 1, j + 1),
            two_index(&core, &o, i, j, true),
            two[k].clone(),
        ));
    }
    let (o12, o31, o23) = (two[0].clone(), two[1].clone(), two[2].clone());

    let e123 = e[0].mul(&e[1]).mul(&e[2]);
    let scas = LinOperator::comm(&core.dirac, &core.xvec).sub(&LinOperator::identity(f));
    let o123 = scas.mul(&e123).scale(&half).named("O123");
    let e23 = e[1].mul(&e[2]);
    let e31 = e[2].mul(&e[0]);
    let e12 = e[0].mul(&e[1]);
    let neg = f.int(-1);
    let one = f.one();
    let v1 = lin(vec![
        (f.frac(-1, 2), e123.clone()),
        (neg.clone(), o[0].mul(&e23)),
        (neg.clone(), o[1].mul(&e31)),
        (neg.clone(), o[2].mul(&e12)),
        (one.clone(), o12.mul(&e[2])),
        (one.clone(), o31.mul(&e[1])),
        (one.clone(), o23.mul(&e[0])),
    ]);
    let v2 = lin(vec![
        (f.frac(-1, 2), e123.clone()),
        (neg.clone(), e23.mul(&o[0])),
        (neg.clone(), e31.mul(&o[1])),
        (neg.clone(), e12.mul(&o[2])),
        (one.clone(), e[2].mul(&o12)),
        (one.clone(), e[1].mul(&o31)),
        (one.clone(), e[0].mul(&o23)),
    ]);
    checks.push(OperatorIdentity::new("O123 expansion, symmetries left", v1, o123.clone()));
    checks.push(OperatorIdentity::new("O123 expansion, Clifford left", v2, o123.clone()));

    let t0 = dsig[0].scale(&(&i_unit * &f.rat(&roots[0].kappa))).named("T0");
    let tplus = lin((1..=m as usize)
        .map(|j| (&(&-&i_unit * &f.rat(&roots[j].kappa)) * &zeta.pow(j as u32), dsig[j].clone()))
        .collect())
    .named("T+");
    let zinv = zeta.inv().expect("root of unity");
    let tminus = lin((1..=m as usize)
        .map(|j| (&(&i_unit * &f.rat(&roots[j].kappa)) * &zinv.pow(j as u32), dsig[j].clone()))
        .collect())
    .named("T-");
    checks.push(OperatorIdentity::new("T0 = i O3", o[2].scale(&i_unit), t0.clone()));
    checks.push(OperatorIdentity::new("T+ = O1 + i O2", o[0].add(&o[1].scale(&i_unit)), tplus.clone()));
    checks.push(OperatorIdentity::new("T- = O1 - i O2", o[0].sub(&o[1].scale(&i_unit)), tminus.clone()));

    for id in &checks {
        for d in 0..=BUILD_CHECK_DEGREE {
            if let Some(ce) = ev.compare(&id.lhs, &id.rhs, d) {
                return Err(SymAlgError::ConstructionMismatch {
                    name: id.name.clone(),
                    degree: d,
                    counterexample: Box::new(ce),
                });
            }
        }
    }

    let o12 = match corruption {
        Some(Corruption::O12CliffordSign) => o12.sub(&e12.scale(&one)).named("O12 (corrupted)"),
        None => o12,
    };
    let o0 = o12.scale(&-&i_unit).named("O0");
    let oplus = o31.scale(&i_unit).add(&o23).named("O+");
    let ominus = o31.scale(&i_unit).sub(&o23).named("O-");
    let lplus = LinOperator::anticomm(&o0, &oplus).scale(&half).named("L+");
    let lminus = LinOperator::anticomm(&o0, &ominus).scale(&half).named("L-");
    Ok(SymmetrySet {
        core,
        field: f,
        m,
        delta,
        zeta,
        dsig,
        dtau,
        dtau_inv,
        o,
        o12,
        o31,
        o23,
        o123,
        t0,
        tplus,
        tminus,
        o0,
        oplus,
        ominus,
        lplus,
        lminus,
    })
}

fn id(name: impl Into<String>, lhs: LinOperator, rhs: LinOperator) -> OperatorIdentity {
    OperatorIdentity::new(name, lhs, rhs)
}

fn comm(a: &LinOperator, b: &LinOperator) -> LinOperator {
    LinOperator::comm(a, b)
}

fn acomm(a: &LinOperator, b: &LinOperator) -> LinOperator {
    LinOperator::anticomm(a, b)
}

/// Graded commutation with D and x: the two-index symmetries commute with
/// both, while O₁₂₃ and the realized reflections anticommute with both.
pub fn supercommutation_identities(s: &SymmetrySet) -> Vec<OperatorIdentity> {
    let d = &s.core.dirac;
    let x = &s.core.xvec;
    let mut ids = Vec::new();
    for (name, op) in [("O12", &s.o12), ("O31", &s.o31), ("O23", &s.o23)] {
        ids.push(id(format!("[{name},D] = 0"), comm(op, d), LinOperator::zero(-1)));
        ids.push(id(format!("[{name},x] = 0"), comm(op, x), LinOperator::zero(1)));
    }
    ids.push(id("{O123,D} = 0", acomm(&s.o123, d), LinOperator::zero(-1)));
    ids.push(id("{O123,x} = 0", acomm(&s.o123, x), LinOperator::zero(1)));
    for (j, g) in s.dsig.iter().enumerate() {
        ids.push(id(format!("{{S{j},D}} = 0"), acomm(g, d), LinOperator::zero(-1)));
        ids.push(id(format!("{{S{j},x}} = 0"), acomm(g, x), LinOperator::zero(1)));
    }
    ids
}

/// Commutators of Clifford elements with one-index symmetries, and the two-index
/// commutation rules in both generating sets.
pub fn commutation_rule_identities(s: &SymmetrySet) -> Vec<OperatorIdentity> {
    let f = s.field;
    let o = &s.o;
    let mut ids = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            ids.push(id(
                format!("{{e{},O{}}} = {{e{},O{}}}", i + 1, j + 1, j + 1, i + 1),
                acomm(&s.core.e[i], &o[j]),
                acomm(&s.core.e[j], &o[i]),
            ));
        }
    }
    let rule = |a: &LinOperator, b: &LinOperator, c: &LinOperator, k: usize, p: usize, q: usize, name: &str| {
        id(name, comm(a, b), sum(f, vec![c.clone(), acomm(&s.o123, &o[k]), comm(&o[p], &o[q])]))
    };
    ids.push(rule(&s.o12, &s.o31, &s.o23, 0, 1, 2, "[O12,O31] = O23 + {O123,O1} + [O2,O3]"));
    ids.push(rule(&s.o23, &s.o12, &s.o31, 1, 2, 0, "[O23,O12] = O31 + {O123,O2} + [O3,O1]"));
    ids.push(rule(&s.o31, &s.o23, &s.o12, 2, 0, 1, "[O31,O23] = O12 + {O123,O3} + [O1,O2]"));
    let one = f.one();
    let neg = f.int(-1);
    ids.push(id(
        "[O0,O+] = O+ + {O123,T+} + [T0,T+]",
        comm(&s.o0, &s.oplus),
        sum(f, vec![s.oplus.clone(), acomm(&s.o123, &s.tplus), comm(&s.t0, &s.tplus)]),
    ));
    ids.push(id(
        "[O0,O-] = -O- + {O123,T-} - [T0,T-]",
        comm(&s.o0, &s.ominus),
        lin(vec![
            (neg.clone(), s.ominus.clone()),
            (one.clone(), acomm(&s.o123, &s.tminus)),
            (neg.clone(), comm(&s.t0, &s.tminus)),
        ]),
    ));
    ids.push(id(
        "[O+,O-] = 2O0 - 2{O123,T0} + [T+,T-]",
        comm(&s.oplus, &s.ominus),
        lin(vec![
            (f.int(2), s.o0.clone()),
            (f.int(-2), acomm(&s.o123, &s.t0)),
            (one, comm(&s.tplus, &s.tminus)),
        ]),
    ));
    ids
}

/// The square of O₁₂₃, the products O±O∓, and the ladder relations with
/// their factorizations.
pub fn ladder_relation_identities(s: &SymmetrySet) -> Vec<OperatorIdentity> {
    let f = s.field;
    let one = f.one();
    let neg = f.int(-1);
    let sq = |a: &LinOperator| a.mul(a);
    let mut ids = Vec::new();
    let rhs36 = lin(vec![
        (f.frac(-1, 4), s.one()),
        (one.clone(), sq(&s.o[0])),
        (one.clone(), sq(&s.o[1])),
        (one.clone(), sq(&s.o[2])),
        (one.clone(), sq(&s.o12)),
        (one.clone(), sq(&s.o31)),
        (one.clone(), sq(&s.o23)),
    ]);
    ids.push(id("O123^2 = -1/4 + sum O_i^2 + sum O_ij^2", sq(&s.o123), rhs36));

    let half = s.scalar(f.frac(1, 2));
    let o0m = s.o0.sub(&half);
    let o0p = s.o0.add(&half);
    let ct = s.o123.add(&s.t0);
    let cmt = s.o123.sub(&s.t0);
    let tpm = s.tplus.mul(&s.tminus);
    let tmp = s.tminus.mul(&s.tplus);
    let opm = s.oplus.mul(&s.ominus);
    let omp = s.ominus.mul(&s.oplus);
    ids.push(id(
        "O+O- = T+T- - (O0-1/2)^2 - (O123+T0)^2",
        opm.clone(),
        lin(vec![(one.clone(), tpm.clone()), (neg.clone(), sq(&o0m)), (neg.clone(), sq(&ct))]),
    ));
    ids.push(id(
        "O-O+ = T-T+ - (O0+1/2)^2 - (O123-T0)^2",
        omp.clone(),
        lin(vec![(one.clone(), tmp.clone()), (neg.clone(), sq(&o0p)), (neg.clone(), sq(&cmt))]),
    ));
    ids.push(id("[O0,L+] = L+", comm(&s.o0, &s.lplus), s.lplus.clone()));
    ids.push(id("[O0,L-] = -L-", comm(&s.o0, &s.lminus), s.lminus.neg()));
    ids.push(id("[O+O-,O0] = 0", comm(&opm, &s.o0), LinOperator::zero(0)));
    ids.push(id("[O-O+,O0] = 0", comm(&omp, &s.o0), LinOperator::zero(0)));
    let lpm = s.lplus.mul(&s.lminus);
    let lmp = s.lminus.mul(&s.lplus);
    ids.push(id(
        "L+L- = (O123+T0)^2 T+T- + (O0-1/2)^2 O+O-",
        lpm.clone(),
        sum(f, vec![sq(&ct).mul(&tpm), sq(&o0m).mul(&opm)]),
    ));
    ids.push(id(
        "L-L+ = (O123-T0)^2 T-T+ + (O0+1/2)^2 O-O+",
        lmp.clone(),
        sum(f, vec![sq(&cmt).mul(&tmp), sq(&o0p).mul(&omp)]),
    ));
    ids.push(id(
        "L+L- = -((O0-1/2)^2 + (O123+T0)^2)((O0-1/2)^2 - T+T-)",
        lpm,
        sq(&o0m).add(&sq(&ct)).mul(&sq(&o0m).sub(&tpm)).neg(),
    ));
    ids.push(id(
        "L-L+ = -((O0+1/2)^2 + (O123-T0)^2)((O0+1/2)^2 - T-T+)",
        lmp,
        sq(&o0p).add(&sq(&cmt)).mul(&sq(&o0p).sub(&tmp)).neg(),
    ));
    ids
}

/// One conjugation rule g·X = c·Y·g.
struct Twist<'a> {
    name: String,
    g: &'a LinOperator,
    x: &'a LinOperator,
    c: CycNum,
    y: &'a LinOperator,
}

/// How O₀ and the T's commute, the reflection and τ̂ conjugation tables, and
/// σ̂_j O± = ζ^{±2j} O∓ σ̂_j for every j. `corrupt` multiplies the phase of
/// the given table entry by ζ.
pub fn action_table_identities(s: &SymmetrySet, corrupt: Option<usize>) -> Vec<OperatorIdentity> {
    let f = s.field;
    let m = s.m as usize;
    let z = &s.zeta;
    let z2 = z.pow(2);
    let zm2 = z2.inv().expect("root of unity");
    let one = f.one();
    let neg = f.int(-1);
    let mut ids = vec![
        id("[O0,T0] = 0", comm(&s.o0, &s.t0), LinOperator::zero(0)),
        id("{O0,T+} = 0", acomm(&s.o0, &s.tplus), LinOperator::zero(0)),
        id("{O0,T-} = 0", acomm(&s.o0, &s.tminus), LinOperator::zero(0)),
        id("T0 T+ = -T+ T0", s.t0.mul(&s.tplus), s.tplus.mul(&s.t0).neg()),
        id("T0 T- = -T- T0", s.t0.mul(&s.tminus), s.tminus.mul(&s.t0).neg()),
    ];
    let (s0, s1, sm) = (&s.dsig[0], &s.dsig[1], &s.dsig[m]);
    let mut twists = vec![
        Twist { name: "T0 O+ = -O+ T0".into(), g: &s.t0, x: &s.oplus, c: neg.clone(), y: &s.oplus },
        Twist { name: "T0 O- = -O- T0".into(), g: &s.t0, x: &s.ominus, c: neg.clone(), y: &s.ominus },
        Twist { name: "S0 O0 = O0 S0".into(), g: s0, x: &s.o0, c: one.clone(), y: &s.o0 },
        Twist { name: "S1 O0 = -O0 S1".into(), g: s1, x: &s.o0, c: neg.clone(), y: &s.o0 },
        Twist { name: "Sm O0 = -O0 Sm".into(), g: sm, x: &s.o0, c: neg.clone(), y: &s.o0 },
        Twist { name: "S0 O+ = -O+ S0".into(), g: s0, x: &s.oplus, c: neg.clone(), y: &s.oplus },
        Twist { name: "S1 O+ = z^2 O- S1".into(), g: s1, x: &s.oplus, c: z2.clone(), y: &s.ominus },
        Twist { name: "Sm O+ = O- Sm".into(), g: sm, x: &s.oplus, c: one.clone(), y: &s.ominus },
        Twist { name: "S0 O- = -O- S0".into(), g: s0, x: &s.ominus, c: neg.clone(), y: &s.ominus },
        Twist { name: "S1 O- = z^-2 O+ S1".into(), g: s1, x: &s.ominus, c: zm2.clone(), y: &s.oplus },
        Twist { name: "Sm O- = O+ Sm".into(), g: sm, x: &s.ominus, c: one.clone(), y: &s.oplus },
        Twist { name: "S0 L+ = -L+ S0".into(), g: s0, x: &s.lplus, c: neg.clone(), y: &s.lplus },
        Twist { name: "S1 L+ = -z^2 L- S1".into(), g: s1, x: &s.lplus, c: -&z2, y: &s.lminus },
        Twist { name: "Sm L+ = -L- Sm".into(), g: sm, x: &s.lplus, c: neg.clone(), y: &s.lminus },
        Twist { name: "S0 L- = -L- S0".into(), g: s0, x: &s.lminus, c: neg.clone(), y: &s.lminus },
        Twist { name: "S1 L- = -z^-2 L+ S1".into(), g: s1, x: &s.lminus, c: -&zm2, y: &s.lplus },
        Twist { name: "Sm L- = -L+ Sm".into(), g: sm, x: &s.lminus, c: neg.clone(), y: &s.lplus },
        Twist { name: "tau L+ = z^-2 L+ tau".into(), g: &s.dtau, x: &s.lplus, c: zm2.clone(), y: &s.lplus },
        Twist { name: "tau L- = z^2 L- tau".into(), g: &s.dtau, x: &s.lminus, c: z2.clone(), y: &s.lminus },
        Twist { name: "tau^-1 L+ = z^2 L+ tau^-1".into(), g: &s.dtau_inv, x: &s.lplus, c: z2.clone(), y: &s.lplus },
        Twist { name: "tau^-1 L- = z^-2 L- tau^-1".into(), g: &s.dtau_inv, x: &s.lminus, c: zm2.clone(), y: &s.lminus },
    ];
    for j in 1..=m {
        let zp = z2.pow(j as u32);
        let zn = zm2.pow(j as u32);
        twists.push(Twist { name: format!("S{j} O+ = z^{} O- S{j}", 2 * j), g: &s.dsig[j], x: &s.oplus, c: zp, y: &s.ominus });
        twists.push(Twist { name: format!("S{j} O- = z^-{} O+ S{j}", 2 * j), g: &s.dsig[j], x: &s.ominus, c: zn, y: &s.oplus });
    }
    for (k, t) in twists.into_iter().enumerate() {
        let c = if corrupt == Some(k) { &t.c * z } else { t.c };
        ids.push(id(t.name, t.g.mul(t.x), t.y.mul(t.g).scale(&c)));
    }
    ids.push(id("T+ O- = -O+ T-", s.tplus.mul(&s.ominus), s.oplus.mul(&s.tminus).neg()));
    ids.push(id("T- O+ = -O- T+", s.tminus.mul(&s.oplus), s.ominus.mul(&s.tplus).neg()));
    ids.push(id("T+ L- = L+ T-", s.tplus.mul(&s.lminus), s.lplus.mul(&s.tminus)));
    ids.push(id("T- L+ = L- T+", s.tminus.mul(&s.lplus), s.lminus.mul(&s.tplus)));
    ids
}

/// Number of phase entries in [`action_table_identities`] that `corrupt` can target.
pub fn action_table_len(m: u32) -> usize {
    21 + 2 * m as usize
}

/// Index of the first phase entry whose coefficient is a nontrivial power of ζ.
pub const ACTION_ENTRY_S1_OPLUS: usize = 6;

/// The defining relations of the realized double cover.
pub fn presentation_identities(s: &SymmetrySet) -> Vec<OperatorIdentity> {
    let f = s.field;
    let m = s.m;
    let (s0, s1, sm) = (&s.dsig[0], &s.dsig[1], &s.dsig[m as usize]);
    let one = s.one();
    let minus = s.scalar(f.int(-1));
    let sign = if m % 2 == 1 { one.clone() } else { minus.clone() };
    vec![
        id("S0^2 = 1", s0.mul(s0), one.clone()),
        id("S1^2 = 1", s1.mul(s1), one.clone()),
        id("Sm^2 = 1", sm.mul(sm), one.clone()),
        id("(S0 S1)^2 = -1", s0.mul(s1).mul(s0).mul(s1), minus.clone()),
        id("(S0 Sm)^2 = -1", s0.mul(sm).mul(s0).mul(sm), minus),
        id("(S1 Sm)^m = (-1)^(m+1)", s.dtau.pow(m, f), sign),
    ]
}

/// O₁₂₃ commutes with the generators.
pub fn central_identities(s: &SymmetrySet) -> Vec<OperatorIdentity> {
    let m = s.m as usize;
    let gens: Vec<(&str, &LinOperator)> = vec![
        ("O0", &s.o0),
        ("O+", &s.oplus),
        ("O-", &s.ominus),
        ("L+", &s.lplus),
        ("L-", &s.lminus),
        ("T0", &s.t0),
        ("T+", &s.tplus),
        ("T-", &s.tminus),
        ("S0", &s.dsig[0]),
        ("S1", &s.dsig[1]),
        ("Sm", &s.dsig[m]),
    ];
    gens.into_iter().map(|(n, g)| id(format!("[O123,{n}] = 0"), comm(&s.o123, g), LinOperator::zero(0))).collect()
}

/// Every identity of the symmetry algebra ledger.
pub fn full_ledger(s: &SymmetrySet) -> Vec<OperatorIdentity> {
    let mut v = supercommutation_identities(s);
    v.extend(commutation_rule_identities(s));
    v.extend(ladder_relation_identities(s));
    v.extend(action_table_identities(s, None));
    v.extend(presentation_identities(s));
    v.extend(central_identities(s));
    v
}

fn run(s: &SymmetrySet, ids: Vec<OperatorIdentity>, max_degree: u32) -> Report {
    let ev = Evaluator::new(s.field);
    Report(check_identities(&ev, &ids, max_degree))
}

pub fn verify_supercommutation(s: &SymmetrySet, max_degree: u32) -> Report {
    run(s, supercommutation_identities(s), max_degree)
}

pub fn verify_commutation_rules(s: &SymmetrySet, max_degree: u32) -> Report {
    run(s, commutation_rule_identities(s), max_degree)
}

pub fn verify_ladder_relations(s: &SymmetrySet, max_degree: u32) -> Report {
    run(s, ladder_relation_identities(s), max_degree)
}

pub fn verify_action_tables(s: &SymmetrySet, max_degree: u32) -> Report {
    run(s, action_table_identities(s, None), max_degree)
}

pub fn verify_presentation(s: &SymmetrySet, max_degree: u32) -> Report {
    run(s, presentation_identities(s), max_degree)
}

pub fn verify_central(s: &SymmetrySet, max_degree: u32) -> Report {
    run(s, central_identities(s), max_degree)
}

pub fn verify_full_ledger(s: &SymmetrySet, max_degree: u32) -> Report {
    run(s, full_ledger(s), max_degree)
}

#[cfg(test)]
mod tests;
