//! Dunkl operators for the reflection group Z₂ × D₂ₘ acting on R³, the
//! Dunkl–Dirac operator and vector variable, and verification of their
//! defining relations.

mod operator;

pub use operator::{
    check_identities, graded_dim, Counterexample, Evaluator, IdentityResult, LinOperator, OperatorIdentity, Status,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::poly::{Mat3, MPoly, SpinorPoly};
use crate::scalar::{sin_cos, CycNum, Field, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DunklError {
    #[error("m must be at least 2, got {0}")]
    BadOrder(u32),
    #[error("for odd m the multiplicities on α₁ and αₘ must agree ({0} ≠ {1})")]
    OddMultiplicity(Rat, Rat),
    #[error("delta must be +1 or -1, got {0}")]
    BadDelta(i32),
}

/// The three multiplicity constants κ₀ = κ(α₀), κ₁ = κ(α₁), κₘ = κ(αₘ).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Kappa {
    pub k0: Rat,
    pub k1: Rat,
    pub km: Rat,
}

impl Kappa {
    pub fn new(k0: Rat, k1: Rat, km: Rat) -> Kappa {
        Kappa { k0, k1, km }
    }

    pub fn zero() -> Kappa {
        Kappa::new(Rat::zero(), Rat::zero(), Rat::zero())
    }

    /// Shorthand from (num, den) pairs.
    pub fn fracs(k0: (i64, i64), k1: (i64, i64), km: (i64, i64)) -> Kappa {
        Kappa::new(Rat::new(k0.0, k0.1), Rat::new(k1.0, k1.1), Rat::new(km.0, km.1))
    }

    /// `count` positive κ with numerators and denominators in 1..=9, drawn
    /// from a ChaCha stream seeded by `seed`. κₘ = κ₁ when m is odd.
    pub fn sample(m: u32, seed: u64, count: usize) -> Vec<Kappa> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || Rat::new(rng.gen_range(1..=9), rng.gen_range(1..=9));
        (0..count)
            .map(|_| {
                let (k0, k1) = (draw(), draw());
                let km = if m % 2 == 1 { k1.clone() } else { draw() };
                Kappa::new(k0, k1, km)
            })
            .collect()
    }
}

/// A positive root with its multiplicity and reflection.
#[derive(Clone, Debug)]
pub struct Root {
    pub vector: [CycNum; 3],
    pub kappa: Rat,
    pub reflection: Mat3,
}

/// The positive roots α₀ = (0,0,1), α_j = (sin jπ/m, −cos jπ/m, 0) for
/// j = 1..m, with a W-invariant multiplicity.
#[derive(Clone, Debug)]
pub struct RootSystem {
    m: u32,
    field: &'static Field,
    kappa: Kappa,
    roots: Vec<Root>,
}

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = &a[i][0] * &b[0][j];
            for k in 1..3 {
                s = &s + &(&a[i][k] * &b[k][j]);
            }
            s
        })
    })
}

fn mat_transpose(a: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

impl RootSystem {
    pub fn new(m: u32, kappa: Kappa) -> Result<RootSystem, DunklError> {
        if m < 2 {
            return Err(DunklError::BadOrder(m));
        }
        if m % 2 == 1 && kappa.k1 != kappa.km {
            return Err(DunklError::OddMultiplicity(kappa.k1.clone(), kappa.km.clone()));
        }
        let field = Field::for_dihedral(m);
        let mut roots = Vec::with_capacity(m as usize + 1);
        for j in 0..=m {
            let vector = if j == 0 {
                [field.zero(), field.zero(), field.one()]
            } else {
                let (s, c) = sin_cos(m, j as i64);
                [s, -c, field.zero()]
            };
            let k = if j == 0 {
                kappa.k0.clone()
            } else if m % 2 == 0 && j % 2 == 0 {
                kappa.km.clone()
            } else {
                kappa.k1.clone()
            };
            let two = field.int(2);
            let reflection: Mat3 = std::array::from_fn(|a| {
                std::array::from_fn(|b| {
                    let outer = &(&two * &vector[a]) * &vector[b];
                    if a == b {
                        &field.one() - &outer
                    } else {
                        -outer
                    }
                })
            });
            roots.push(Root { vector, kappa: k, reflection });
        }
        Ok(RootSystem { m, field, kappa, roots })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn kappa(&self) -> &Kappa {
        &self.kappa
    }

    /// α₀, α₁, …, αₘ.
    pub fn positive_roots(&self) -> &[Root] {
        &self.roots
    }

    /// σ_j for any j ≥ 0; indices past m wrap since α_{j+m} = −α_j.
    pub fn reflection(&self, j: u32) -> &Mat3 {
        if j == 0 {
            &self.roots[0].reflection
        } else {
            &self.roots[((j - 1) % self.m + 1) as usize].reflection
        }
    }

    /// γ = Σ_{r ∈ R₊} κ(r) = κ₀ + m(κ₁ + κₘ)/2.
    pub fn gamma(&self) -> Rat {
        let mut g = self.kappa.k0.clone();
        let half_m = Rat::new(self.m as i64, 2);
        g = g + half_m * (self.kappa.k1.clone() + self.kappa.km.clone());
        g
    }

    pub fn inner(&self, a: &[CycNum; 3], b: &[CycNum; 3]) -> CycNum {
        &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
    }

    pub fn identity_matrix(&self) -> Mat3 {
        let f = self.field;
        std::array::from_fn(|i| std::array::from_fn(|j| if i == j { f.one() } else { f.zero() }))
    }

    /// All 4m elements of W as matrices, generated by σ₀, σ₁, σₘ.
    pub fn group_elements(&self) -> Vec<Mat3> {
        let gens = [self.reflection(0).clone(), self.reflection(1).clone(), self.reflection(self.m).clone()];
        let mut elems = vec![self.identity_matrix()];
        let mut i = 0;
        while i < elems.len() {
            for g in &gens {
                let p = mat_mul(g, &elems[i]);
                if !elems.contains(&p) {
                    elems.push(p);
                }
            }
            i += 1;
        }
        elems
    }
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    mat_mul(a, b)
}

/// Inverse of an orthogonal matrix.
pub fn mat3_orth_inverse(a: &Mat3) -> Mat3 {
    mat_transpose(a)
}

/// Multiplication by x_{i+1}.
pub fn mul_x(field: &'static Field, i: usize) -> LinOperator {
    let xi = MPoly::var(field, i);
    LinOperator::prim(field, format!("x{}", i + 1), 1, move |p| p.mul_poly(&xi))
}

/// Multiplication by a fixed homogeneous polynomial of degree `deg`.
pub fn mul_poly(field: &'static Field, label: impl Into<String>, q: MPoly, deg: i32) -> LinOperator {
    LinOperator::prim(field, label, deg, move |p| p.mul_poly(&q))
}

pub fn partial(field: &'static Field, i: usize) -> LinOperator {
    LinOperator::prim(field, format!("d{}", i + 1), -1, move |p| p.map(|q| q.partial_derivative(i)))
}

/// The action f ↦ f(w⁻¹x) of an orthogonal matrix w.
pub fn group_action(label: impl Into<String>, w: &Mat3) -> LinOperator {
    let inv = mat_transpose(w);
    LinOperator::prim(w[0][0].field(), label, 0, move |p| p.map(|q| q.substitute_linear(&inv)))
}

/// The 2×2 matrix of v₁e₁ + v₂e₂ + v₃e₃ with e₁ = [[0,1],[1,0]],
/// e₂ = [[0,−i],[i,0]], e₃ = diag(δ, −δ).
pub fn clifford_matrix(v: &[CycNum; 3], delta: i32) -> [[CycNum; 2]; 2] {
    let f = v[0].field();
    let i = f.i();
    let d = f.int(delta as i64);
    let iv2 = &i * &v[1];
    [[&d * &v[2], &v[0] - &iv2], [&v[0] + &iv2, -(&d * &v[2])]]
}

/// Left multiplication by the Clifford vector Σ v_j e_j.
pub fn clifford(label: impl Into<String>, v: &[CycNum; 3], delta: i32) -> LinOperator {
    let m = clifford_matrix(v, delta);
    LinOperator::prim(v[0].field(), label, 0, move |p| p.apply_2x2(&m))
}

/// The Dunkl operator T_v = ∂_v + Σ_r κ(r)⟨v,r⟩(f − σ_r f)/⟨x,r⟩, acting on both components.
pub fn dunkl_along(rs: &RootSystem, v: [CycNum; 3], label: impl Into<String>) -> LinOperator {
    let field = rs.field;
    let terms: Vec<([CycNum; 3], Mat3, CycNum)> = rs
        .roots
        .iter()
        .filter_map(|r| {
            let c = &field.rat(&r.kappa) * &rs.inner(&v, &r.vector);
            (!c.is_zero()).then(|| (r.vector.clone(), r.reflection.clone(), c))
        })
        .collect();
    let dirs: Vec<(usize, CycNum)> = (0..3).filter(|&i| !v[i].is_zero()).map(|i| (i, v[i].clone())).collect();
    LinOperator::prim(field, label, -1, move |p| {
        p.map(|q| {
            let mut out = MPoly::zero();
            for (i, c) in &dirs {
                out.add_scaled(c, &q.partial_derivative(*i));
            }
            for (r, s, c) in &terms {
                let diff = q.sub(&q.substitute_linear(s));
                let quot = diff.exact_div_linear(r).expect("f − σ_r f is divisible by ⟨x, r⟩");
                out.add_scaled(c, &quot);
            }
            out
        })
    })
}

/// T_i along the coordinate vector ξ_{i+1}. `delta` only matters for Clifford
/// factors, which T_i does not involve.
pub fn dunkl_operator(rs: &RootSystem, i: usize) -> LinOperator {
    let f = rs.field;
    let v: [CycNum; 3] = std::array::from_fn(|k| if k == i { f.one() } else { f.zero() });
    dunkl_along(rs, v, format!("T{}", i + 1))
}

/// The operators built from one root system and one Pauli realization.
#[derive(Clone)]
pub struct CoreOperators {
    pub field: &'static Field,
    pub m: u32,
    pub delta: i32,
    pub t: [LinOperator; 3],
    pub xs: [LinOperator; 3],
    pub partials: [LinOperator; 3],
    pub e: [LinOperator; 3],
    /// σ₀, σ₁, …, σₘ acting on polynomials.
    pub refl: Vec<LinOperator>,
    pub dirac: LinOperator,
    pub xvec: LinOperator,
    pub euler: LinOperator,
    pub laplacian: LinOperator,
    /// Multiplication by x₁² + x₂² + x₃².
    pub norm2: LinOperator,
    /// C_ij = [T_i, x_j].
    pub c: [[LinOperator; 3]; 3],
    /// δ_ij + Σ 2κ(r) r_i r_j σ_r.
    pub c_formula: [[LinOperator; 3]; 3],
    pub l: [[LinOperator; 3]; 3],
    pub gamma: CycNum,
}

pub fn build_core_operators(rs: &RootSystem, delta: i32) -> Result<CoreOperators, DunklError> {
    if delta != 1 && delta != -1 {
        return Err(DunklError::BadDelta(delta));
    }
    let f = rs.field;
    let unit = |i: usize| -> [CycNum; 3] { std::array::from_fn(|k| if k == i { f.one() } else { f.zero() }) };
    let t: [LinOperator; 3] = std::array::from_fn(|i| dunkl_operator(rs, i));
    let xs: [LinOperator; 3] = std::array::from_fn(|i| mul_x(f, i));
    let partials: [LinOperator; 3] = std::array::from_fn(|i| partial(f, i));
    let e: [LinOperator; 3] = std::array::from_fn(|i| clifford(format!("e{}", i + 1), &unit(i), delta));
    let refl: Vec<LinOperator> =
        (0..=rs.m).map(|j| group_action(format!("s{j}"), rs.reflection(j))).collect();
    let one = f.one();
    let sum = |ops: Vec<LinOperator>| LinOperator::comb(ops.into_iter().map(|o| (one.clone(), o)).collect());
    let dirac = sum((0..3).map(|j| e[j].mul(&t[j])).collect()).named("D");
    let xvec = sum((0..3).map(|j| e[j].mul(&xs[j])).collect()).named("x");
    let euler = sum((0..3).map(|j| xs[j].mul(&partials[j])).collect()).named("E");
    let laplacian = sum((0..3).map(|j| t[j].mul(&t[j])).collect()).named("Lap");
    let mut q = MPoly::zero();
    for i in 0..3 {
        q = q.add(&MPoly::var(f, i).mul(&MPoly::var(f, i)));
    }
    let norm2 = mul_poly(f, "|x|^2", q, 2);
    let c: [[LinOperator; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| LinOperator::comm(&t[i], &xs[j]).named(format!("C{}{}", i + 1, j + 1)))
    });
    let c_formula: [[LinOperator; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut terms = Vec::new();
            if i == j {
                terms.push((f.one(), LinOperator::identity(f)));
            }
            for (k, r) in rs.roots.iter().enumerate() {
                let coef = &(&f.rat(&(Rat::int(2) * r.kappa.clone())) * &r.vector[i]) * &r.vector[j];
                terms.push((coef, refl[k].clone()));
            }
            LinOperator::comb(terms).named(format!("C{}{}'", i + 1, j + 1))
        })
    });
    let l: [[LinOperator; 3]; 3] = {
        let mut l: [[Option<LinOperator>; 3]; 3] = Default::default();
        for i in 0..3 {
            l[i][i] = Some(LinOperator::zero(0));
            for j in i + 1..3 {
                let lij = xs[i].mul(&t[j]).sub(&xs[j].mul(&t[i])).named(format!("L{}{}", i + 1, j + 1));
                l[j][i] = Some(lij.neg().named(format!("L{}{}", j + 1, i + 1)));
                l[i][j] = Some(lij);
            }
        }
        l.map(|row| row.map(|o| o.expect("filled")))
    };
    Ok(CoreOperators {
        field: f,
        m: rs.m,
        delta,
        t,
        xs,
        partials,
        e,
        refl,
        dirac,
        xvec,
        euler,
        laplacian,
        norm2,
        c,
        c_formula,
        l,
        gamma: f.rat(&rs.gamma()),
    })
}

impl CoreOperators {
    /// 𝔼 + 3/2 + γ.
    pub fn sl2_shift(&self) -> LinOperator {
        let f = self.field;
        let c = &f.frac(3, 2) + &self.gamma;
        self.euler.add(&LinOperator::scalar(c)).named("E + 3/2 + gamma")
    }

    /// Replaces γ, as used by the corrupted-γ negative control.
    pub fn with_gamma(mut self, gamma: CycNum) -> CoreOperators {
        self.gamma = gamma;
        self
    }
}

/// A verification report: one entry per identity and degree.
#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
pub struct Report(pub Vec<IdentityResult>);

impl Report {
    pub fn all_passed(&self) -> bool {
        self.0.iter().all(|r| r.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityResult> {
        self.0.iter().filter(|r| !r.passed())
    }

    pub fn extend(&mut self, o: Report) {
        self.0.extend(o.0);
    }
}

fn n(i: usize) -> usize {
    i + 1
}

/// The osp(1|2) and sl₂ relations together with the basic Dunkl relations.
pub fn osp12_identities(ops: &CoreOperators) -> Vec<OperatorIdentity> {
    let f = ops.field;
    let mut ids = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            ids.push(OperatorIdentity::new(
                format!("[T{},T{}] = 0", n(i), n(j)),
                LinOperator::comm(&ops.t[i], &ops.t[j]),
                LinOperator::zero(-2),
            ));
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            ids.push(OperatorIdentity::new(
                format!("[T{},x{}] = C{}{}", n(i), n(j), n(i), n(j)),
                ops.c[i][j].clone(),
                ops.c_formula[i][j].clone(),
            ));
        }
    }
    for i in 0..3 {
        for j in i + 1..3 {
            ids.push(OperatorIdentity::new(
                format!("C{}{} = C{}{}", n(i), n(j), n(j), n(i)),
                ops.c[i][j].clone(),
                ops.c[j][i].clone(),
            ));
        }
    }
    let two = f.int(2);
    let shift = ops.sl2_shift();
    let x2 = ops.xvec.mul(&ops.xvec);
    let dx = LinOperator::anticomm(&ops.dirac, &ops.xvec);
    ids.push(OperatorIdentity::new("D^2 = Lap", ops.dirac.mul(&ops.dirac), ops.laplacian.clone()));
    ids.push(OperatorIdentity::new("x^2 = |x|^2", x2, ops.norm2.clone()));
    ids.push(OperatorIdentity::new("{D,x} = 2(E + 3/2 + gamma)", dx.clone(), shift.scale(&two)));
    ids.push(OperatorIdentity::new(
        "[E,|x|^2] = 2|x|^2",
        LinOperator::comm(&ops.euler, &ops.norm2),
        ops.norm2.scale(&two),
    ));
    ids.push(OperatorIdentity::new(
        "[E,Lap] = -2 Lap",
        LinOperator::comm(&ops.euler, &ops.laplacian),
        ops.laplacian.scale(&f.int(-2)),
    ));
    ids.push(OperatorIdentity::new(
        "[|x|^2,Lap] = -4(E + 3/2 + gamma)",
        LinOperator::comm(&ops.norm2, &ops.laplacian),
        shift.scale(&f.int(-4)),
    ));
    ids.push(OperatorIdentity::new(
        "[{D,x},D] = -2D",
        LinOperator::comm(&dx, &ops.dirac),
        ops.dirac.scale(&f.int(-2)),
    ));
    ids.push(OperatorIdentity::new("[{D,x},x] = 2x", LinOperator::comm(&dx, &ops.xvec), ops.xvec.scale(&two)));
    ids
}

/// w T_i w⁻¹ = T_{w·ξ_i} for the generators σ₀, σ₁, σₘ.
pub fn equivariance_identities(rs: &RootSystem, ops: &CoreOperators) -> Vec<OperatorIdentity> {
    let mut ids = Vec::new();
    for j in [0, 1, rs.m] {
        let w = rs.reflection(j);
        let act = group_action(format!("s{j}"), w);
        let inv = group_action(format!("s{j}^-1"), &mat_transpose(w));
        for i in 0..3 {
            let image: [CycNum; 3] = std::array::from_fn(|k| w[k][i].clone());
            let lhs = act.mul(&ops.t[i]).mul(&inv);
            let rhs = dunkl_along(rs, image, format!("T(s{j}·xi{})", n(i)));
            ids.push(OperatorIdentity::new(format!("s{j} T{} s{j}^-1 = T(s{j}·xi{})", n(i), n(i)), lhs, rhs));
        }
    }
    ids
}

/// The identities relating L_ij and C_ij, for every index tuple.
pub fn angular_momentum_identities(ops: &CoreOperators) -> Vec<OperatorIdentity> {
    let l = &ops.l;
    let c = &ops.c;
    let sum = |v: Vec<LinOperator>| {
        let f = ops.field;
        LinOperator::comb(v.into_iter().map(|o| (f.one(), o)).collect())
    };
    let mut ids = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for m in 0..3 {
                    let tag = format!("{}{}{}{}", n(i), n(j), n(k), n(m));
                    let lhs = LinOperator::comm(&l[i][j], &l[k][m]);
                    let right = sum(vec![
                        l[i][m].mul(&c[j][k]),
                        l[j][k].mul(&c[i][m]),
                        l[k][i].mul(&c[m][j]),
                        l[m][j].mul(&c[k][i]),
                    ]);
                    let left = sum(vec![
                        c[j][k].mul(&l[i][m]),
                        c[i][m].mul(&l[j][k]),
                        c[m][j].mul(&l[k][i]),
                        c[k][i].mul(&l[m][j]),
                    ]);
                    ids.push(OperatorIdentity::new(format!("[L,L] = LC ({tag})"), lhs.clone(), right));
                    ids.push(OperatorIdentity::new(format!("[L,L] = CL ({tag})"), lhs, left));
                    let anti = sum(vec![
                        LinOperator::anticomm(&l[i][j], &l[k][m]),
                        LinOperator::anticomm(&l[k][i], &l[j][m]),
                        LinOperator::anticomm(&l[j][k], &l[i][m]),
                    ]);
                    ids.push(OperatorIdentity::new(format!("cyclic {{L,L}} = 0 ({tag})"), anti, LinOperator::zero(0)));
                    let lc = sum(vec![
                        LinOperator::comm(&l[i][j], &c[k][m]),
                        LinOperator::comm(&l[k][i], &c[j][m]),
                        LinOperator::comm(&l[j][k], &c[i][m]),
                    ]);
                    ids.push(OperatorIdentity::new(format!("cyclic [L,C] = 0 ({tag})"), lc, LinOperator::zero(0)));
                    let ll = sum(vec![l[i][j].mul(&l[k][m]), l[k][i].mul(&l[j][m]), l[j][k].mul(&l[i][m])]);
                    let lcs = sum(vec![l[i][j].mul(&c[k][m]), l[k][i].mul(&c[j][m]), l[j][k].mul(&c[i][m])]);
                    ids.push(OperatorIdentity::new(format!("LL = LC ({tag})"), ll, lcs));
                }
            }
        }
    }
    ids
}

pub fn verify_osp12(rs: &RootSystem, delta: i32, max_degree: u32) -> Result<Report, DunklError> {
    let ops = build_core_operators(rs, delta)?;
    let ev = Evaluator::new(rs.field);
    Ok(Report(check_identities(&ev, &osp12_identities(&ops), max_degree)))
}

pub fn verify_angular_momenta(rs: &RootSystem, max_degree: u32) -> Report {
    let ops = build_core_operators(rs, 1).expect("delta = 1 is valid");
    let ev = Evaluator::new(rs.field);
    Report(check_identities(&ev, &angular_momentum_identities(&ops), max_degree))
}

pub fn verify_equivariance(rs: &RootSystem, max_degree: u32) -> Report {
    let ops = build_core_operators(rs, 1).expect("delta = 1 is valid");
    let ev = Evaluator::new(rs.field);
    Report(check_identities(&ev, &equivariance_identities(rs, &ops), max_degree))
}

/// Convenience for tests and callers holding a plain polynomial.
pub fn apply_scalar(op: &LinOperator, p: &MPoly) -> MPoly {
    op.apply(&SpinorPoly::new(p.clone(), MPoly::zero())).up
}

#[cfg(test)]
mod tests;
