//! Published closed forms for the T-actions and ladder coefficients when m
//! is even, compared against the group-algebra sums.

use serde::Serialize;

use super::{group_part, half, ladder_factor, modm};
use crate::dunkl::Kappa;
use crate::scalar::{CycNum, Field, Rat};

/// Which argument convention to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Transcription {
    /// As printed: G(1−k−ℓ) in T₊v_k⁻, T₋v_k⁺ and H(2−k−ℓ) in A(k).
    Printed,
    /// With 1−k−ℓ replaced by 1+k+ℓ, as the exponent (2j−1)(−2−2(k+ℓ))
    /// of the summation requires.
    Corrected,
}

/// 1 if x ≡ 0 (mod p).
fn one_p(x: i64, m: u32) -> i64 {
    i64::from(modm(x, m / 2) == 0)
}

/// 1 if x ≡ 0, −1 if x ≡ p (mod m), else 0.
fn one_m(x: i64, m: u32) -> i64 {
    let r = modm(x, m);
    if r == 0 {
        1
    } else if r == (m / 2) as i64 {
        -1
    } else {
        0
    }
}

/// G(x) = p(κ₁ 1′ₘ(x) − κₘ 1ₚ(x)).
pub fn g_kappa(m: u32, x: i64, k: &Kappa) -> Rat {
    let p = Rat::int((m / 2) as i64);
    p * (&k.k1 * &Rat::int(one_m(x, m)) - &k.km * &Rat::int(one_p(x, m)))
}

/// H(x) = p²((κ₁² + κₘ²) 1ₚ(x) − 2κ₁κₘ 1′ₘ(x)).
pub fn h_kappa(m: u32, x: i64, k: &Kappa) -> Rat {
    let p2 = Rat::int((m / 2) as i64 * (m / 2) as i64);
    let sq = &k.k1 * &k.k1 + &k.km * &k.km;
    let cross = Rat::int(2) * &k.k1 * &k.km;
    p2 * (sq * Rat::int(one_p(x, m)) - cross * Rat::int(one_m(x, m)))
}

/// Argument replacing 1−k−ℓ.
fn shifted(k: i64, ell: i64, t: Transcription) -> i64 {
    match t {
        Transcription::Printed => 1 - k - ell,
        Transcription::Corrected => 1 + k + ell,
    }
}

/// Closed-form A(k).
pub fn a_closed(m: u32, ell: i64, k: i64, delta: i32, lambda: &Rat, big: &CycNum, kappa: &Kappa, t: Transcription) -> CycNum {
    let f = Field::for_dihedral(m);
    let h = match t {
        Transcription::Printed => h_kappa(m, 2 - k - ell, kappa),
        Transcription::Corrected => h_kappa(m, k + ell, kappa),
    };
    let s = f.rat(&(lambda - &Rat::int(k) + half()).pow(2));
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let t0 = &f.i() * &f.rat(&(&kappa.k0 * &Rat::int(sign * delta as i64)));
    let first = &s + &(big - &t0).pow(2);
    -(&first * &(&s - &f.rat(&h)))
}

/// One formula compared at one index.
#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub formula: String,
    pub k: u32,
    pub closed: String,
    pub summed: String,
}

/// Compares every closed form for one (m, N, ℓ, δ) against the sums. Even m
/// only.
pub fn compare(m: u32, n: u32, ell: u32, delta: i32, kappa: &Kappa, t: Transcription) -> Vec<Mismatch> {
    assert!(m % 2 == 0, "closed forms are for even m");
    let f = Field::for_dihedral(m);
    let i = f.i();
    let g = group_part(m, n, 2 * ell as i64 + 1, delta, kappa);
    let tt = g.tplus.mul(&g.tminus);
    let tt_rev = g.tminus.mul(&g.tplus);
    let nn = n as usize;
    let l = ell as i64;
    let mut out = Vec::new();
    let mut cmp = |formula: &str, k: usize, closed: CycNum, summed: &CycNum| {
        if &closed != summed {
            out.push(Mismatch { formula: formula.into(), k: k as u32, closed: closed.to_string(), summed: summed.to_string() });
        }
    };
    let gr = |x: i64| f.rat(&g_kappa(m, x, kappa));
    let hr = |x: i64| f.rat(&h_kappa(m, x, kappa));
    for k in 0..=nn {
        let (p, q) = (k, nn + 1 + k);
        let kk = k as i64;
        let s = shifted(kk, l, t);
        cmp("T+ v_k- = -i G(1-k-l) v_k+", k, -(&i * &gr(s)), g.tplus.get(p, q));
        cmp("T+ v_k+ = -i G(k+l) v_k-", k, -(&i * &gr(kk + l)), g.tplus.get(q, p));
        cmp("T- v_k- = i G(k+l) v_k+", k, &i * &gr(kk + l), g.tminus.get(p, q));
        cmp("T- v_k+ = i G(1-k-l) v_k-", k, &i * &gr(s), g.tminus.get(q, p));
        cmp("T-T+ v_k+ = H(k+l)", k, hr(kk + l), tt_rev.get(p, p));
        cmp("T-T+ v_k- = H(1-k-l)", k, hr(s), tt_rev.get(q, q));
        cmp("T+T- v_k+ = H(1-k-l)", k, hr(s), tt.get(p, p));
        cmp("T+T- v_k- = H(k+l)", k, hr(kk + l), tt.get(q, q));
    }
    // A(k) is an identity in λ and Λ once T₊T₋ is known; test at a generic point.
    let lambda = Rat::new(17, 7);
    let big = &i * &f.rat(&Rat::new(3, 5));
    for k in 1..=nn {
        let summed = ladder_factor(f, &(&lambda - &Rat::int(k as i64 - 1)), &big, g.t0.get(k - 1, k - 1), tt.get(k - 1, k - 1));
        cmp("A(k)", k, a_closed(m, l, k as i64, delta, &lambda, &big, kappa, t), &summed);
    }
    out
}
