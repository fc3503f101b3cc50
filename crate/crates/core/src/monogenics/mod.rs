//! Polynomial monogenics of the dihedral Dunkl–Dirac operator: planar Dunkl
//! harmonics and monogenics, the Fischer decomposition, the
//! Cauchy–Kovalevskaya extension to R³, two constructions of a basis of the
//! degree-n monogenics, and the representation of the symmetry algebra they
//! carry.

pub mod special;
mod verify;

use serde::Serialize;
use thiserror::Error;

use crate::dunkl::{build_core_operators, CoreOperators, DunklError, Evaluator, LinOperator, RootSystem};
use crate::poly::{GradedBasis, MPoly, Matrix, Mono, Spin, SpinorPoly};
use crate::scalar::{CycNum, Field, Rat};
use special::{factorial, jacobi_homogeneous, pochhammer};

pub use verify::{verify_monogenic_rep, MonogenicRepReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonogenicError {
    #[error(transparent)]
    Dunkl(#[from] DunklError),
    #[error("the multiplicities must be positive, got {0}")]
    NonPositiveKappa(String),
    #[error("the degree-{0} harmonic is not annihilated by its factor of the Dunkl Laplacian")]
    NotHarmonic(u32),
    #[error("the input depends on x3")]
    DependsOnX3,
}

/// The pair φₙ⁺, φₙ⁻ of planar Dunkl harmonics of degree n.
#[derive(Clone, Debug, Serialize)]
pub struct Harmonic2D {
    pub n: u32,
    pub plus: MPoly,
    pub minus: MPoly,
}

/// One element ψ_{n,k}^± of a basis of the degree-n monogenics.
#[derive(Clone, Debug, Serialize)]
pub struct Monogenic3D {
    pub n: u32,
    pub k: u32,
    pub sign: Spin,
    pub psi: SpinorPoly,
}

/// The operators of the planar Dunkl–Dirac realization next to the 3D ones.
#[derive(Clone)]
pub struct Monogenics {
    pub rs: RootSystem,
    pub delta: i32,
    pub core: CoreOperators,
    /// D̂ = e₁T₁ + e₂T₂.
    pub dirac2: LinOperator,
    /// x̂ = e₁x₁ + e₂x₂.
    pub xvec2: LinOperator,
    /// γ̂ = m(κ₁ + κₘ)/2.
    pub gamma_hat: Rat,
}

fn field_of(rs: &RootSystem) -> &'static Field {
    rs.field()
}

impl Monogenics {
    pub fn new(rs: &RootSystem, delta: i32) -> Result<Monogenics, MonogenicError> {
        let core = build_core_operators(rs, delta)?;
        let f = core.field;
        let sum2 = |a: LinOperator, b: LinOperator| LinOperator::comb(vec![(f.one(), a), (f.one(), b)]);
        let dirac2 = sum2(core.e[0].mul(&core.t[0]), core.e[1].mul(&core.t[1])).named("D2");
        let xvec2 = sum2(core.e[0].mul(&core.xs[0]), core.e[1].mul(&core.xs[1])).named("x2");
        let k = rs.kappa();
        let gamma_hat = Rat::new(rs.m() as i64, 2) * (k.k1.clone() + k.km.clone());
        Ok(Monogenics { rs: rs.clone(), delta, core, dirac2, xvec2, gamma_hat })
    }

    /// As `new`, requiring κ₀, κ₁, κₘ > 0.
    pub fn positive(rs: &RootSystem, delta: i32) -> Result<Monogenics, MonogenicError> {
        let k = rs.kappa();
        if !(k.k0.is_positive() && k.k1.is_positive() && k.km.is_positive()) {
            return Err(MonogenicError::NonPositiveKappa(format!("({}, {}, {})", k.k0, k.k1, k.km)));
        }
        Monogenics::new(rs, delta)
    }

    pub fn field(&self) -> &'static Field {
        self.core.field
    }

    pub fn m(&self) -> u32 {
        self.rs.m()
    }

    fn e3(&self, p: &SpinorPoly) -> SpinorPoly {
        self.core.e[2].apply(p)
    }

    fn times_x3(&self, p: &SpinorPoly, e: u16) -> SpinorPoly {
        let mono = Mono::new(0, 0, e);
        p.map(|q| q.mul_mono(&mono))
    }

    pub fn harmonics(&self, n: u32) -> Result<Harmonic2D, MonogenicError> {
        harmonics_2d(&self.rs, n)
    }

    /// Φₙ⁺ = φₙ⁺χ⁺ and Φₙ⁻ = φₙ⁻χ⁻.
    pub fn monogenics_2d(&self, n: u32) -> Result<(SpinorPoly, SpinorPoly), MonogenicError> {
        let h = self.harmonics(n)?;
        Ok((SpinorPoly::times_chi(h.plus, Spin::Up), SpinorPoly::times_chi(h.minus, Spin::Down)))
    }

    fn planar(&self, k: u32, sign: Spin) -> Result<SpinorPoly, MonogenicError> {
        let (p, m) = self.monogenics_2d(k)?;
        Ok(if sign == Spin::Up { p } else { m })
    }

    /// x̂ʲ applied to a spinor.
    pub fn xhat_pow(&self, p: &SpinorPoly, j: u32) -> SpinorPoly {
        (0..j).fold(p.clone(), |acc, _| self.xvec2.apply(&acc))
    }

    /// The planar spinors x̂^{n−j}Φ_j^± for j = 0..=n.
    pub fn fischer_family(&self, n: u32) -> Result<Vec<SpinorPoly>, MonogenicError> {
        let mut out = Vec::new();
        for j in 0..=n {
            for s in [Spin::Up, Spin::Down] {
                out.push(self.xhat_pow(&self.planar(j, s)?, n - j));
            }
        }
        Ok(out)
    }

    /// The Cauchy–Kovalevskaya extension
    /// ₀F₁(κ₀+1/2; −(x₃D̂)²/4) − e₃x₃D̂/(2κ₀+1) · ₀F₁(κ₀+3/2; −(x₃D̂)²/4).
    /// The series stops once a power of D̂ kills the input.
    pub fn ck_extend(&self, f: &SpinorPoly) -> Result<SpinorPoly, MonogenicError> {
        if [&f.up, &f.down].iter().any(|p| p.terms().any(|(m, _)| m.exps()[2] != 0)) {
            return Err(MonogenicError::DependsOnX3);
        }
        let fld = self.field();
        let k0 = self.rs.kappa().k0.clone();
        let half = Rat::new(1, 2);
        let mut out = SpinorPoly::zero();
        let mut g = f.clone();
        let mut a: u32 = 0;
        while !g.is_zero() {
            let j = a / 2;
            let base = Rat::new(1, 4).pow(j) * factorial(j).recip().expect("nonzero");
            let sign = if j % 2 == 0 { Rat::one() } else { Rat::int(-1) };
            if a % 2 == 0 {
                let c = base * sign * pochhammer(&(&k0 + &half), j).recip().expect("κ₀ + 1/2 is not a pole");
                out.add_scaled(&fld.rat(&c), &self.times_x3(&g, a as u16));
            } else {
                let den = (Rat::int(2) * k0.clone() + Rat::one()) * pochhammer(&(&k0 + &Rat::new(3, 2)), j);
                let c = -(base * sign * den.recip().expect("κ₀ + 1/2 is not a pole"));
                out.add_scaled(&fld.rat(&c), &self.e3(&self.times_x3(&g, a as u16)));
            }
            g = self.dirac2.apply(&g);
            a += 1;
        }
        Ok(out)
    }

    /// ψ_{n,k}^± = CK(x̂^{n−k}Φ_k^±), ordered k = 0..=n with + before −.
    pub fn monogenic_basis(&self, n: u32) -> Result<Vec<Monogenic3D>, MonogenicError> {
        let mut out = Vec::new();
        for k in 0..=n {
            for sign in [Spin::Up, Spin::Down] {
                let psi = self.ck_extend(&self.xhat_pow(&self.planar(k, sign)?, n - k))?;
                out.push(Monogenic3D { n, k, sign, psi });
            }
        }
        Ok(out)
    }

    /// Σ_j c_j ρ^{2(t−j)} x₃^{2j}, the polynomial |x|^{2t} P_t^{(a,b)}(Υ)
    /// with Υ = (ρ² − x₃²)/(ρ² + x₃²) and ρ² = x₁² + x₂².
    fn jacobi_in_x(&self, t: u32, a: &Rat, b: &Rat) -> MPoly {
        let f = self.field();
        let mut p = MPoly::zero();
        for (j, c) in jacobi_homogeneous(t, a, b).into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let rest = t - j as u32;
            // ρ^{2r} = Σ_i C(r,i) x₁^{2i} x₂^{2(r−i)}.
            let mut binom = Rat::one();
            for i in 0..=rest {
                let mono = Mono::new(2 * i as u16, 2 * (rest - i) as u16, 2 * j as u16);
                p.add_term(mono, f.rat(&(c.clone() * binom.clone())));
                binom = binom * Rat::new((rest - i) as i64, i as i64 + 1);
            }
        }
        p
    }

    /// The closed form B_{n,k}(x̂, x₃)Φ_k^± with the Jacobi factors expanded
    /// in polynomial form.
    pub fn explicit_basis(&self, n: u32) -> Result<Vec<Monogenic3D>, MonogenicError> {
        let f = self.field();
        let k0 = self.rs.kappa().k0.clone();
        let h = Rat::new(1, 2);
        let mut out = Vec::new();
        for k in 0..=n {
            let kk = Rat::int(k as i64);
            let b = n - k;
            let t = b / 2;
            let front = factorial(t) * pochhammer(&(&k0 + &h), t).recip().expect("pole");
            for sign in [Spin::Up, Spin::Down] {
                let phi = self.planar(k, sign)?;
                let psi = if b % 2 == 1 {
                    let p1 = self.jacobi_in_x(t, &(&k0 - &h), &(kk.clone() + Rat::one() + self.gamma_hat.clone()));
                    let p2 = self.jacobi_in_x(t, &(&k0 + &h), &(kk.clone() + self.gamma_hat.clone()));
                    let c = (Rat::int(t as i64) + kk.clone() + Rat::one() + self.gamma_hat.clone())
                        * (Rat::int(t as i64) + k0.clone() + h.clone()).recip().expect("pole");
                    let first = self.xvec2.apply(&phi.mul_poly(&p1));
                    let second = self.e3(&self.times_x3(&phi.mul_poly(&p2), 1)).scale(&f.rat(&c));
                    first.sub(&second)
                } else {
                    let p1 = self.jacobi_in_x(t, &(&k0 - &h), &(kk.clone() + self.gamma_hat.clone()));
                    let mut psi = phi.mul_poly(&p1);
                    if t > 0 {
                        let p2 = self.jacobi_in_x(t - 1, &(&k0 + &h), &(kk.clone() + Rat::one() + self.gamma_hat.clone()));
                        let second = self.e3(&self.times_x3(&self.xvec2.apply(&phi.mul_poly(&p2)), 1));
                        psi = psi.sub(&second);
                    }
                    psi
                };
                out.push(Monogenic3D { n, k, sign, psi: psi.scale(&f.rat(&front)) });
            }
        }
        Ok(out)
    }

    /// Exact rank of the family {x̂^{n−j}Φ_j^±}, which is 2(n+1) exactly when
    /// the degree-n spinors split as the Fischer decomposition says.
    pub fn fischer_check(&self, n: u32) -> Result<FischerReport, MonogenicError> {
        let fam = self.fischer_family(n)?;
        Ok(FischerReport { n, cardinality: fam.len(), expected: 2 * (n as usize + 1), rank: rank_of(self.field(), n, &fam) })
    }

    /// dim ker D on GradedBasis(n), from the matrix of D.
    pub fn kernel_dim(&self, n: u32) -> usize {
        let ev = Evaluator::new(self.field());
        let d = ev.matrix(&self.core.dirac, n);
        d.cols() - d.rank()
    }

    /// Whether D annihilates p.
    pub fn is_monogenic(&self, p: &SpinorPoly) -> bool {
        self.core.dirac.apply(p).is_zero()
    }
}

/// The planar Dunkl harmonics φₙ^±, checked against Δ̂ = T₁² + T₂².
///
/// Odd m with n = km + ℓ: φₙ⁺ = z^ℓ Σ_{j≤k} (κ₁)_j(κ₁+1)_{k−j}/(j!(k−j)!) z̄^{mj}z^{m(k−j)}.
/// Even m = 2p with n = kp + ℓ: φₙ⁺ = z^ℓ f_k(z^p, z̄^p) from the g-expansion.
/// φₙ⁻ is the complex conjugate for odd m and z̄^ℓ f_k(z̄^p, z^p) for even m.
pub fn harmonics_2d(rs: &RootSystem, n: u32) -> Result<Harmonic2D, MonogenicError> {
    let f = field_of(rs);
    let m = rs.m();
    let k = rs.kappa();
    let z = MPoly::var(f, 0).add(&MPoly::var(f, 1).scale(&f.i()));
    let zb = z.conj();
    let plus = if m % 2 == 1 {
        let (kk, ell) = (n / m, n % m);
        let mut s = MPoly::zero();
        for j in 0..=kk {
            let c = pochhammer(&k.k1, j) * pochhammer(&(&k.k1 + &Rat::one()), kk - j)
                * (factorial(j) * factorial(kk - j)).recip().expect("nonzero");
            s.add_scaled(&f.rat(&c), &zb.pow(f, m * j).mul(&z.pow(f, m * (kk - j))));
        }
        z.pow(f, ell).mul(&s)
    } else {
        let p = m / 2;
        let (kk, ell) = (n / p, n % p);
        let zp = z.pow(f, p);
        let zbp = zb.pow(f, p);
        let re = zp.add(&zbp).scale(&f.frac(1, 2));
        let im = zp.sub(&zbp).scale(&(&f.frac(1, 2) * &(-f.i())));
        z.pow(f, ell).mul(&compose2(&f_k(f, kk, &k.k1, &k.km), &re, &im))
    };
    let minus = if m % 2 == 1 {
        plus.conj()
    } else {
        // z̄^ℓ f_k(z̄^p, z^p): conjugate the arguments, not the coefficients.
        let p = m / 2;
        let (kk, ell) = (n / p, n % p);
        let zp = zb.pow(f, p);
        let zbp = z.pow(f, p);
        let re = zp.add(&zbp).scale(&f.frac(1, 2));
        let im = zp.sub(&zbp).scale(&(&f.frac(1, 2) * &(-f.i())));
        zb.pow(f, ell).mul(&compose2(&f_k(f, kk, &k.k1, &k.km), &re, &im))
    };
    let h = Harmonic2D { n, plus, minus };
    let ok = is_harmonic(rs, &h.plus)
        && is_harmonic(rs, &h.minus)
        && holomorphic_part(rs, &h.plus, 1).is_zero()
        && holomorphic_part(rs, &h.minus, -1).is_zero();
    if !ok {
        return Err(MonogenicError::NotHarmonic(n));
    }
    Ok(h)
}

/// Δ̂p = 0 with Δ̂ = T₁² + T₂².
pub fn is_harmonic(rs: &RootSystem, p: &MPoly) -> bool {
    let t1 = crate::dunkl::dunkl_operator(rs, 0);
    let t2 = crate::dunkl::dunkl_operator(rs, 1);
    let s = SpinorPoly::times_chi(p.clone(), Spin::Up);
    t1.apply(&t1.apply(&s)).add(&t2.apply(&t2.apply(&s))).is_zero()
}

/// (T₁ + s·iT₂)p, one factor of Δ̂ = (T₁ + iT₂)(T₁ − iT₂).
pub fn holomorphic_part(rs: &RootSystem, p: &MPoly, s: i64) -> MPoly {
    let f = rs.field();
    let t1 = crate::dunkl::dunkl_operator(rs, 0);
    let t2 = crate::dunkl::dunkl_operator(rs, 1);
    let q = SpinorPoly::times_chi(p.clone(), Spin::Up);
    t1.apply(&q).add(&t2.apply(&q).scale(&(&f.int(s) * &f.i()))).up
}

/// q(a, b) for q a polynomial in x₁, x₂.
pub fn compose2(q: &MPoly, a: &MPoly, b: &MPoly) -> MPoly {
    let Some((_, c0)) = q.terms().next() else { return MPoly::zero() };
    let f = c0.field();
    let mut out = MPoly::zero();
    for (mono, c) in q.terms() {
        let [i, j, _] = mono.exps();
        out.add_scaled(c, &a.pow(f, i as u32).mul(&b.pow(f, j as u32)));
    }
    out
}

/// f_k(X₁ + iX₂) as a polynomial in X₁, X₂ (stored in the x₁, x₂ slots),
/// through the g_k expansion and its normalization.
pub fn f_k(f: &'static Field, k: u32, k1: &Rat, km: &Rat) -> MPoly {
    let t = k / 2;
    let norm = if k % 2 == 0 {
        pochhammer(&(km + k1 + Rat::one()), t) * pochhammer(&(k1 + &Rat::new(1, 2)), t).recip().expect("pole")
    } else {
        pochhammer(&(km + k1 + Rat::one()), t) * pochhammer(&(k1 + &Rat::new(1, 2)), t + 1).recip().expect("pole")
    };
    g_k(f, k, k1, km).scale(&f.rat(&norm))
}

/// The polynomials g_{2t}, g_{2t+1} in X₁ and iX₂.
pub fn g_k(f: &'static Field, k: u32, k1: &Rat, km: &Rat) -> MPoly {
    let t = k / 2;
    // Base 1/2 − ⌈k/2⌉: −t+1/2 for k = 2t and −t−1/2 for k = 2t+1.
    let base = Rat::new(1, 2) - Rat::int(k.div_ceil(2) as i64);
    let am = base.clone() - km.clone();
    let a1 = base - k1.clone();
    let i = f.i();
    // X₁^a (iX₂)^b.
    let term = |a: u32, b: u32, c: Rat| MPoly::term(&f.rat(&c) * &i.pow(b), Mono::new(a as u16, b as u16, 0));
    let sgn = |e: u32| if e % 2 == 0 { Rat::one() } else { Rat::int(-1) };
    let inv = |x: Rat| x.recip().expect("nonzero");
    let mut g = MPoly::zero();
    if k % 2 == 0 {
        for j in 0..=t {
            let c = sgn(t) * pochhammer(&am, t - j) * pochhammer(&a1, j) * inv(factorial(t - j) * factorial(j));
            g = g.add(&term(2 * t - 2 * j, 2 * j, c));
        }
        if t >= 1 {
            for j in 0..t {
                let c = sgn(t - 1) * pochhammer(&am, t - 1 - j) * pochhammer(&a1, j) * inv(factorial(t - 1 - j) * factorial(j));
                g = g.add(&term(2 * t - 1 - 2 * j, 2 * j + 1, c));
            }
        }
    } else {
        for j in 0..=t {
            let c = sgn(t + 1) * pochhammer(&am, t + 1 - j) * pochhammer(&a1, j) * inv(factorial(t - j) * factorial(j));
            g = g.add(&term(2 * t + 1 - 2 * j, 2 * j, c));
            let c = sgn(t + 1) * pochhammer(&am, t - j) * pochhammer(&a1, j + 1) * inv(factorial(t - j) * factorial(j));
            g = g.add(&term(2 * t - 2 * j, 2 * j + 1, c));
        }
    }
    g
}

/// f_k from the generalized Gegenbauer polynomials:
/// r^k(c_k G_k^{(κₘ,κ₁)}(cos θ) + i sin θ G_{k−1}^{(κₘ+1,κ₁)}(cos θ)) with
/// c_k = (k + 2κₘ + (1+(−1)^k)κ₁)/(2(κₘ+κ₁)).
pub fn f_k_gegenbauer(f: &'static Field, k: u32, k1: &Rat, km: &Rat) -> MPoly {
    let parity = if k % 2 == 0 { Rat::int(2) } else { Rat::zero() };
    let ck = (Rat::int(k as i64) + Rat::int(2) * km.clone() + parity * k1.clone())
        * (Rat::int(2) * (km + k1)).recip().expect("κ₁ + κₘ ≠ 0");
    // r^e X₁^d with e even.
    let radial = |d: u32, e: u32, c: CycNum| {
        let mut p = MPoly::zero();
        let mut binom = Rat::one();
        let r = e / 2;
        for i in 0..=r {
            p.add_term(Mono::new((d + 2 * i) as u16, (2 * (r - i)) as u16, 0), &c * &f.rat(&binom));
            binom = binom * Rat::new((r - i) as i64, i as i64 + 1);
        }
        p
    };
    let mut out = MPoly::zero();
    for (d, g) in special::gegenbauer(k, km, k1).into_iter().enumerate() {
        if !g.is_zero() {
            out = out.add(&radial(d as u32, k - d as u32, f.rat(&(g * ck.clone()))));
        }
    }
    if k >= 1 {
        let x2 = MPoly::term(f.i(), Mono::new(0, 1, 0));
        for (d, g) in special::gegenbauer(k - 1, &(km + &Rat::one()), k1).into_iter().enumerate() {
            if !g.is_zero() {
                out = out.add(&x2.mul(&radial(d as u32, k - 1 - d as u32, f.rat(&g))));
            }
        }
    }
    out
}

/// Result of the Fischer rank check at one degree.
#[derive(Clone, Debug, Serialize)]
pub struct FischerReport {
    pub n: u32,
    pub cardinality: usize,
    pub expected: usize,
    pub rank: usize,
}

impl FischerReport {
    pub fn passed(&self) -> bool {
        self.cardinality == self.expected && self.rank == self.expected
    }
}

/// Columns of coordinates on GradedBasis(n).
pub fn coordinate_matrix(f: &'static Field, n: u32, ps: &[SpinorPoly]) -> Matrix {
    let b = GradedBasis::new(n);
    let cols = ps.iter().map(|p| b.coords(f, p).expect("homogeneous of degree n")).collect();
    Matrix::from_cols(f, b.len(), cols)
}

pub fn rank_of(f: &'static Field, n: u32, ps: &[SpinorPoly]) -> usize {
    if ps.is_empty() {
        return 0;
    }
    coordinate_matrix(f, n, ps).rank()
}

/// d_{a,b}^k with D̂^a(x̂^b M_k) = d x̂^{b−a} M_k for a monogenic M_k of degree k.
pub fn d_coefficient(a: u32, b: u32, k: u32, gamma_hat: &Rat) -> Rat {
    if a > b {
        return Rat::zero();
    }
    let (al, be) = (a / 2, b / 2);
    let kk = Rat::int(k as i64);
    let mbe = Rat::int(-(be as i64));
    let g0 = mbe.clone() - kk.clone() - gamma_hat.clone();
    let g1 = g0.clone() - Rat::one();
    let two = |e: u32| Rat::int(2).pow(e);
    match (a % 2, b % 2) {
        (0, 0) => two(2 * al) * pochhammer(&mbe, al) * pochhammer(&g0, al),
        (1, 0) => -(two(2 * al + 1) * pochhammer(&mbe, al + 1) * pochhammer(&g0, al)),
        (1, 1) => -(two(2 * al + 1) * pochhammer(&mbe, al) * pochhammer(&g1, al + 1)),
        _ => two(2 * al) * pochhammer(&mbe, al) * pochhammer(&g1, al),
    }
}

#[cfg(test)]
mod tests;
