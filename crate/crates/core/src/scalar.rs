//! Exact arithmetic in Q and in the cyclotomic fields Q(ζₙ).
//!
//! A [`CycNum`] is kept reduced modulo the n-th cyclotomic polynomial, so its
//! coefficient vector over ζₙ^0..ζₙ^{φ(n)-1} is canonical. Coefficients share
//! one denominator. Values that fit use `i128` arithmetic with overflow checks
//! and fall back to big integers otherwise.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not real")]
    NotReal,
    #[error("cyclotomic orders differ: {0} and {1}")]
    OrderMismatch(u32, u32),
    #[error("not an exact rational literal: {0:?}")]
    Parse(String),
}

/// Arbitrary-precision rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(num.into(), den.into()))
    }

    pub fn int(n: i64) -> Rat {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn from_big(r: BigRational) -> Rat {
        Rat(r)
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Result<Rat, ScalarError> {
        if self.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(Rat(self.0.recip()))
        }
    }

    pub fn pow(&self, e: u32) -> Rat {
        let mut r = Rat::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Integer value if this is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rat {
    type Err = ScalarError;

    /// Accepts `p/q` or `p` with decimal integers only.
    fn from_str(s: &str) -> Result<Rat, ScalarError> {
        let bad = || ScalarError::Parse(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let ok = |x: &str| {
            let digits = x.strip_prefix('-').or_else(|| x.strip_prefix('+')).unwrap_or(x);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !ok(n) || !ok(d) {
            return Err(bad());
        }
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rat(BigRational::new(n, d)))
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat((&self.0).$m(&o.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat(self.0.$m(o.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat(self.0.$m(&o.0))
            }
        }
    };
}
rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

fn lcm_u(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

/// Integer polynomial division; `den` must be monic.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dn = den.len() - 1;
    let mut q = vec![0i64; num.len() - dn];
    for k in (0..q.len()).rev() {
        let c = r[k + dn];
        q[k] = c;
        for (j, &d) in den.iter().enumerate() {
            r[k + j] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

fn cyclotomic_poly(n: u32, memo: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let c = cyclotomic_poly(d, memo);
            p = poly_div_exact(&p, &c);
        }
    }
    memo.insert(n, p.clone());
    p
}

/// The cyclotomic field Q(ζₙ) with precomputed reduction data.
#[derive(Debug)]
pub struct Field {
    n: u32,
    phi: usize,
    /// Φₙ coefficients, low degree first, monic.
    cyclo: Vec<i64>,
    /// `powers[k]` is ζₙ^k reduced to the canonical basis.
    powers: Vec<Vec<i64>>,
}

impl Field {
    /// The shared field of order `n`.
    pub fn get(n: u32) -> &'static Field {
        static FIELDS: OnceLock<Mutex<HashMap<u32, &'static Field>>> = OnceLock::new();
        assert!(n >= 1, "cyclotomic order must be positive");
        let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = map.lock().expect("field cache poisoned");
        guard.entry(n).or_insert_with(|| Box::leak(Box::new(Field::build(n))))
    }

    /// The field Q(ζₙ), n = lcm(4, 2m), used for the dihedral group of order 2m.
    pub fn for_dihedral(m: u32) -> &'static Field {
        assert!(m >= 1);
        Field::get(lcm_u(4, 2 * m))
    }

    fn build(n: u32) -> Field {
        let cyclo = cyclotomic_poly(n, &mut HashMap::new());
        let phi = cyclo.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            for j in (1..phi).rev() {
                next[j] = cur[j - 1];
            }
            for j in 0..phi {
                next[j] -= top * cyclo[j];
            }
            cur = next;
        }
        Field { n, phi, cyclo, powers }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn zero(&'static self) -> CycNum {
        CycNum::zero(self)
    }

    pub fn one(&'static self) -> CycNum {
        CycNum::one(self)
    }

    pub fn int(&'static self, k: i64) -> CycNum {
        CycNum::from_i128(self, k as i128, 1)
    }

    pub fn rat(&'static self, r: &Rat) -> CycNum {
        CycNum::from_rat(self, r)
    }

    pub fn frac(&'static self, num: i64, den: i64) -> CycNum {
        CycNum::from_i128(self, num as i128, den as i128)
    }

    /// ζₙ^k.
    pub fn zeta_n(&'static self, k: i64) -> CycNum {
        let idx = k.rem_euclid(self.n as i64) as usize;
        let num = self.powers[idx].iter().map(|&c| c as i128).collect();
        CycNum { field: self, repr: Repr::Small { num, den: 1 } }
    }

    /// The imaginary unit ζₙ^{n/4}; requires 4 | n.
    pub fn i(&'static self) -> CycNum {
        assert!(self.n % 4 == 0, "i is not in Q(zeta_{})", self.n);
        self.zeta_n(self.n as i64 / 4)
    }
}

type SmallNum = SmallVec<[i128; 8]>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Small { num: SmallNum, den: i128 },
    Big { num: Vec<BigInt>, den: BigInt },
}

/// An element of Q(ζₙ).
#[derive(Clone)]
pub struct CycNum {
    field: &'static Field,
    repr: Repr,
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn to_big_parts(repr: &Repr) -> (Vec<BigInt>, BigInt) {
    match repr {
        Repr::Small { num, den } => (num.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(*den)),
        Repr::Big { num, den } => (num.clone(), den.clone()),
    }
}

impl CycNum {
    pub fn zero(field: &'static Field) -> CycNum {
        CycNum { field, repr: Repr::Small { num: SmallVec::from_elem(0, field.phi), den: 1 } }
    }

    pub fn one(field: &'static Field) -> CycNum {
        CycNum::from_i128(field, 1, 1)
    }

    pub fn from_i128(field: &'static Field, num: i128, den: i128) -> CycNum {
        assert!(den != 0, "zero denominator");
        let mut v: SmallNum = SmallVec::from_elem(0, field.phi);
        v[0] = num;
        CycNum::small_normalized(field, v, den).expect("small rational")
    }

    pub fn from_rat(field: &'static Field, r: &Rat) -> CycNum {
        let mut num = vec![BigInt::zero(); field.phi];
        num[0] = r.numer().clone();
        CycNum::big_normalized(field, num, r.denom().clone())
    }

    /// Builds from coefficients over ζₙ^0, ζₙ^1, ..., reducing as needed.
    pub fn from_power_coeffs(field: &'static Field, coeffs: &[Rat]) -> CycNum {
        let mut acc = CycNum::zero(field);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&field.zeta_n(k as i64) * &CycNum::from_rat(field, c));
            }
        }
        acc
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn order(&self) -> u32 {
        self.field.n
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().all(|&x| x == 0),
            Repr::Big { num, .. } => num.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small { num, den } => *den == 1 && num[0] == 1 && num[1..].iter().all(|&x| x == 0),
            Repr::Big { .. } => false,
        }
    }

    /// Canonical coefficients over ζₙ^0..ζₙ^{φ(n)-1}.
    pub fn coeffs(&self) -> Vec<Rat> {
        let (num, den) = to_big_parts(&self.repr);
        num.into_iter().map(|x| Rat(BigRational::new(x, den.clone()))).collect()
    }

    /// Rational value if the element lies in Q.
    pub fn to_rat(&self) -> Option<Rat> {
        let c = self.coeffs();
        if c[1..].iter().all(|x| x.is_zero()) {
            Some(c[0].clone())
        } else {
            None
        }
    }

    fn small_normalized(field: &'static Field, mut num: SmallNum, mut den: i128) -> Option<CycNum> {
        if den < 0 {
            den = den.checked_neg()?;
            for x in num.iter_mut() {
                *x = x.checked_neg()?;
            }
        }
        if num.iter().all(|&x| x == 0) {
            return Some(CycNum::zero(field));
        }
        let mut g = den as u128;
        for &x in num.iter() {
            if g == 1 {
                break;
            }
            g = gcd_u128(g, x.unsigned_abs());
        }
        if g > 1 {
            let g = g as i128;
            den /= g;
            for x in num.iter_mut() {
                *x /= g;
            }
        }
        Some(CycNum { field, repr: Repr::Small { num, den } })
    }

    fn big_normalized(field: &'static Field, mut num: Vec<BigInt>, mut den: BigInt) -> CycNum {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            for x in num.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        if num.iter().all(|x| x.is_zero()) {
            return CycNum::zero(field);
        }
        let mut g = den.clone();
        for x in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(x);
        }
        if !g.is_one() {
            den /= &g;
            for x in num.iter_mut() {
                *x /= &g;
            }
        }
        let small_den = den.to_i128();
        let small_num: Option<SmallNum> = num.iter().map(|x| x.to_i128()).collect();
        match (small_num, small_den) {
            (Some(n), Some(d)) => CycNum { field, repr: Repr::Small { num: n, den: d } },
            _ => CycNum { field, repr: Repr::Big { num, den } },
        }
    }

    fn check_order(&self, o: &CycNum) {
        if !std::ptr::eq(self.field, o.field) {
            panic!("{}", ScalarError::OrderMismatch(self.field.n, o.field.n));
        }
    }

    /// Fallible addition reporting mixed orders.
    pub fn try_add(&self, o: &CycNum) -> Result<CycNum, ScalarError> {
        if !std::ptr::eq(self.field, o.field) {
            return Err(ScalarError::OrderMismatch(self.field.n, o.field.n));
        }
        Ok(self.add_impl(o, false))
    }

    fn add_impl(&self, o: &CycNum, negate: bool) -> CycNum {
        self.check_order(o);
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) = (&self.repr, &o.repr) {
            let r = (|| {
                let g = gcd_u128(*da as u128, *db as u128) as i128;
                let fa = db / g;
                let fb = da / g;
                let den = da.checked_mul(fa)?;
                let mut num: SmallNum = SmallVec::with_capacity(a.len());
                for (x, y) in a.iter().zip(b.iter()) {
                    let t = y.checked_mul(fb)?;
                    let t = if negate { t.checked_neg()? } else { t };
                    num.push(x.checked_mul(fa)?.checked_add(t)?);
                }
                CycNum::small_normalized(self.field, num, den)
            })();
            if let Some(r) = r {
                return r;
            }
        }
        let (a, da) = to_big_parts(&self.repr);
        let (b, db) = to_big_parts(&o.repr);
        let num = a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| {
                let t = y * &da;
                if negate {
                    x * &db - t
                } else {
                    x * &db + t
                }
            })
            .collect();
        CycNum::big_normalized(self.field, num, da * db)
    }

    fn mul_impl(&self, o: &CycNum) -> CycNum {
        self.check_order(o);
        let f = self.field;
        let phi = f.phi;
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) = (&self.repr, &o.repr) {
            let r = (|| {
                let mut acc: SmallVec<[i128; 16]> = SmallVec::from_elem(0, 2 * phi - 1);
                for (i, &x) in a.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in b.iter().enumerate() {
                        if y != 0 {
                            acc[i + j] = acc[i + j].checked_add(x.checked_mul(y)?)?;
                        }
                    }
                }
                reduce_small(f, &mut acc)?;
                let num: SmallNum = acc[..phi].iter().copied().collect();
                CycNum::small_normalized(f, num, da.checked_mul(*db)?)
            })();
            if let Some(r) = r {
                return r;
            }
        }
        let (a, da) = to_big_parts(&self.repr);
        let (b, db) = to_big_parts(&o.repr);
        let mut acc = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        reduce_big(f, &mut acc);
        acc.truncate(phi);
        CycNum::big_normalized(f, acc, da * db)
    }

    pub fn scale_rat(&self, r: &Rat) -> CycNum {
        self * &CycNum::from_rat(self.field, r)
    }

    /// Complex conjugation, the ring map ζₙ ↦ ζₙ^{n-1}.
    pub fn conj(&self) -> CycNum {
        let f = self.field;
        let n = f.n as usize;
        if let Repr::Small { num, den } = &self.repr {
            let r = (|| {
                let mut out: SmallNum = SmallVec::from_elem(0, f.phi);
                for (k, &c) in num.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let row = &f.powers[(n - k) % n];
                    for (o, &p) in out.iter_mut().zip(row.iter()) {
                        if p != 0 {
                            *o = o.checked_add(c.checked_mul(p as i128)?)?;
                        }
                    }
                }
                CycNum::small_normalized(f, out, *den)
            })();
            if let Some(r) = r {
                return r;
            }
        }
        let (num, den) = to_big_parts(&self.repr);
        let mut out = vec![BigInt::zero(); f.phi];
        for (k, c) in num.iter().enumerate() {
            for (o, &p) in out.iter_mut().zip(f.powers[(n - k) % n].iter()) {
                *o += c * BigInt::from(p);
            }
        }
        CycNum::big_normalized(f, out, den)
    }

    /// (a + conj a)/2.
    pub fn real_part(&self) -> CycNum {
        (self + &self.conj()) * &CycNum::from_i128(self.field, 1, 2)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn inv(&self) -> Result<CycNum, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let f = self.field;
        let phi = f.phi;
        if let Some(r) = self.to_rat() {
            return Ok(CycNum::from_rat(f, &r.recip()?));
        }
        // Column j of the multiplication matrix is self·ζₙ^j.
        let mut mat: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); phi + 1]; phi];
        for j in 0..phi {
            let col = self * &f.zeta_n(j as i64);
            for (i, c) in col.coeffs().into_iter().enumerate() {
                mat[i][j] = c.0;
            }
        }
        mat[0][phi] = BigRational::one();
        for c in 0..phi {
            let p = (c..phi).find(|&r| !mat[r][c].is_zero()).ok_or(ScalarError::DivisionByZero)?;
            mat.swap(c, p);
            let inv = mat[c][c].recip();
            for x in mat[c].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..phi {
                if r != c && !mat[r][c].is_zero() {
                    let fac = mat[r][c].clone();
                    for k in c..=phi {
                        let t = &mat[c][k] * &fac;
                        mat[r][k] -= t;
                    }
                }
            }
        }
        let coeffs: Vec<Rat> = mat.into_iter().map(|row| Rat(row[phi].clone())).collect();
        let mut acc = CycNum::zero(f);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &f.zeta_n(k as i64).scale_rat(c);
            }
        }
        Ok(acc)
    }

    /// The same number in Q(ζ_N) for a multiple N of the current order.
    pub fn embed(&self, to: &'static Field) -> CycNum {
        if std::ptr::eq(self.field, to) {
            return self.clone();
        }
        assert!(to.n % self.field.n == 0, "Q(zeta_{}) does not contain Q(zeta_{})", to.n, self.field.n);
        let step = (to.n / self.field.n) as i64;
        let mut acc = CycNum::zero(to);
        for (j, c) in self.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &to.zeta_n(step * j as i64).scale_rat(c);
            }
        }
        acc
    }

    pub fn checked_div(&self, o: &CycNum) -> Result<CycNum, ScalarError> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: u32) -> CycNum {
        let mut r = CycNum::one(self.field);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        r
    }

    /// Floating-point value, for display only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let n = self.field.n as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs().iter().enumerate() {
            let t = std::f64::consts::TAU * k as f64 / n;
            re += c.to_f64() * t.cos();
            im += c.to_f64() * t.sin();
        }
        (re, im)
    }

    /// Writes the value in terms of `zeta` = ζₙ, e.g. `1/2 - 3*z^2`.
    pub fn fmt_with(&self, zeta: &str) -> String {
        let c = self.coeffs();
        let mut parts: Vec<String> = Vec::new();
        for (k, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mag = x.abs();
            let sign = if x.is_negative() { "-" } else { "+" };
            let body = match k {
                0 => mag.to_string(),
                _ => {
                    let p = if k == 1 { zeta.to_string() } else { format!("{zeta}^{k}") };
                    if mag == Rat::one() {
                        p
                    } else {
                        format!("{mag}*{p}")
                    }
                }
            };
            parts.push(format!("{sign}{body}"));
        }
        if parts.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, p) in parts.iter().enumerate() {
            let (sign, body) = p.split_at(1);
            if i == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(if sign == "-" { " - " } else { " + " });
            }
            s.push_str(body);
        }
        s
    }
}

fn reduce_small(f: &Field, acc: &mut [i128]) -> Option<()> {
    let phi = f.phi;
    for k in (phi..acc.len()).rev() {
        let c = acc[k];
        if c == 0 {
            continue;
        }
        acc[k] = 0;
        for j in 0..phi {
            let p = f.cyclo[j];
            if p != 0 {
                acc[k - phi + j] = acc[k - phi + j].checked_sub(c.checked_mul(p as i128)?)?;
            }
        }
    }
    Some(())
}

fn reduce_big(f: &Field, acc: &mut [BigInt]) {
    let phi = f.phi;
    for k in (phi..acc.len()).rev() {
        let c = std::mem::take(&mut acc[k]);
        if c.is_zero() {
            continue;
        }
        for j in 0..phi {
            let p = f.cyclo[j];
            if p != 0 {
                acc[k - phi + j] -= &c * BigInt::from(p);
            }
        }
    }
}

/// Reduces an integer coefficient vector of any length modulo Φₙ in place;
/// the first φ(n) entries hold the result. Returns `None` on overflow.
pub(crate) fn reduce_int_coeffs(f: &Field, acc: &mut [i128]) -> Option<()> {
    reduce_small(f, acc)
}

/// Builds a value from integer numerators over the canonical basis and a denominator.
pub(crate) fn from_int_parts(f: &'static Field, num: &[i128], den: i128) -> Option<CycNum> {
    CycNum::small_normalized(f, num.iter().copied().collect(), den)
}

/// Integer numerators and denominator of a small value.
pub(crate) fn small_parts(a: &CycNum) -> Option<(&[i128], i128)> {
    match &a.repr {
        Repr::Small { num, den } => Some((num.as_slice(), *den)),
        Repr::Big { .. } => None,
    }
}

impl PartialEq for CycNum {
    fn eq(&self, o: &CycNum) -> bool {
        std::ptr::eq(self.field, o.field) && self.repr == o.repr
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.field.n.hash(h);
        self.repr.hash(h);
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&format!("z{}", self.field.n)))
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&format!("z{}", self.field.n)))
    }
}

impl Add<&CycNum> for &CycNum {
    type Output = CycNum;
    fn add(self, o: &CycNum) -> CycNum {
        self.add_impl(o, false)
    }
}

impl Sub<&CycNum> for &CycNum {
    type Output = CycNum;
    fn sub(self, o: &CycNum) -> CycNum {
        self.add_impl(o, true)
    }
}

impl Mul<&CycNum> for &CycNum {
    type Output = CycNum;
    fn mul(self, o: &CycNum) -> CycNum {
        self.mul_impl(o)
    }
}

impl Div<&CycNum> for &CycNum {
    type Output = CycNum;
    fn div(self, o: &CycNum) -> CycNum {
        self.checked_div(o).expect("division by zero")
    }
}

macro_rules! cyc_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: CycNum) -> CycNum {
                (&self).$m(&o)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: &CycNum) -> CycNum {
                (&self).$m(o)
            }
        }
        impl $tr<CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, o: CycNum) -> CycNum {
                self.$m(&o)
            }
        }
    };
}
cyc_owned!(Add, add);
cyc_owned!(Sub, sub);
cyc_owned!(Mul, mul);
cyc_owned!(Div, div);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        match &self.repr {
            Repr::Small { num, den } => {
                if let Some(num) = num.iter().map(|x| x.checked_neg()).collect::<Option<SmallNum>>() {
                    return CycNum { field: self.field, repr: Repr::Small { num, den: *den } };
                }
                let (n, d) = to_big_parts(&self.repr);
                CycNum::big_normalized(self.field, n.into_iter().map(|x| -x).collect(), d)
            }
            Repr::Big { num, den } => {
                CycNum::big_normalized(self.field, num.iter().map(|x| -x).collect(), den.clone())
            }
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct CycJson {
    order: u32,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut coeffs: Vec<[String; 2]> =
            self.coeffs().iter().map(|c| [c.numer().to_string(), c.denom().to_string()]).collect();
        while coeffs.last().is_some_and(|c| c[0] == "0") {
            coeffs.pop();
        }
        CycJson { order: self.field.n, coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<CycNum, D::Error> {
        let j = CycJson::deserialize(d)?;
        if j.order == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        let f = Field::get(j.order);
        let mut rats = Vec::with_capacity(j.coeffs.len());
        for [n, den] in &j.coeffs {
            let r: Rat = format!("{n}/{den}").parse().map_err(D::Error::custom)?;
            rats.push(r);
        }
        Ok(CycNum::from_power_coeffs(f, &rats))
    }
}

/// ζ^k for ζ = e^{iπ/m}, as an element of Q(ζₙ), n = lcm(4, 2m).
pub fn root_of_unity(m: u32, k: i64) -> CycNum {
    assert!(m >= 2, "m must be at least 2");
    let f = Field::for_dihedral(m);
    let step = (f.n / (2 * m)) as i64;
    f.zeta_n(step * k.rem_euclid(2 * m as i64))
}

/// The positive square root of a rational in the smallest Q(ζₙ) with 4 | n
/// that contains it, or `None` when that order would exceed `max_order`.
pub fn sqrt_rational(r: &Rat, max_order: u32) -> Option<CycNum> {
    if r.is_zero() {
        return Some(CycNum::zero(Field::get(4)));
    }
    // √(a/b) = √(ab)/b; split ab = u²·s with s squarefree.
    let prod = (r.numer() * r.denom()).abs();
    let prod = prod.to_u64()?;
    let (mut rest, mut u, mut primes) = (prod, 1u64, Vec::new());
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        u *= p.pow(e / 2);
        if e % 2 == 1 {
            primes.push(p);
        }
        p += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }
    let mut order = 4u64;
    for &q in &primes {
        order = num_integer::lcm(order, if q == 2 { 8 } else { q });
        if order > max_order as u64 {
            return None;
        }
    }
    let f = Field::get(order as u32);
    let n = f.n as i64;
    let i = f.i();
    let mut root = f.one();
    for &q in &primes {
        let sq = if q == 2 {
            &f.zeta_n(n / 8) + &f.zeta_n(-n / 8)
        } else {
            // Quadratic Gauss sum: g² = (−1)^{(q−1)/2} q.
            let step = n / q as i64;
            let mut g = f.zero();
            for a in 1..q {
                let chi = if legendre(a, q) { f.one() } else { -f.one() };
                g = &g + &(&chi * &f.zeta_n(step * a as i64));
            }
            if q % 4 == 1 {
                g
            } else {
                &(-&i) * &g
            }
        };
        root = &root * &sq;
    }
    if r.is_negative() {
        root = &root * &i;
    }
    let scale = Rat::from_big(BigRational::new(BigInt::from(u), r.denom().clone()));
    let out = root.scale_rat(&scale);
    debug_assert!(&out * &out == f.rat(r));
    Some(out)
}

/// Whether a is a nonzero square mod the odd prime q.
fn legendre(a: u64, q: u64) -> bool {
    let mut e = (q - 1) / 2;
    let (mut base, mut acc) = (a % q, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    acc == 1
}

/// (sin(jπ/m), cos(jπ/m)).
pub fn sin_cos(m: u32, j: i64) -> (CycNum, CycNum) {
    let f = Field::for_dihedral(m);
    let z = root_of_unity(m, j);
    let zi = root_of_unity(m, -j);
    let half = f.frac(1, 2);
    let i = f.i();
    let sin = &(&(&z - &zi) * &half) * &(-&i);
    let cos = &(&z + &zi) * &half;
    (sin, cos)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Fixed-point π·2^bits with error below 2^-bits·64.
fn pi_fixed(bits: u64) -> BigInt {
    fn atan_inv(x: u64, bits: u64) -> BigInt {
        let one = BigInt::one() << bits;
        let x2 = BigInt::from(x * x);
        let mut term = &one / BigInt::from(x);
        let mut sum = term.clone();
        let mut k = 1u64;
        loop {
            term /= &x2;
            if term.is_zero() {
                break;
            }
            let t = &term / BigInt::from(2 * k + 1);
            if k % 2 == 1 {
                sum -= t;
            } else {
                sum += t;
            }
            k += 1;
        }
        sum
    }
    atan_inv(5, bits) * 16 - atan_inv(239, bits) * 4
}

/// Fixed-point cos(2πk/n)·2^bits with error of a few units.
fn cos_fixed(k: u64, n: u64, bits: u64) -> BigInt {
    let guard = 64;
    let w = bits + guard;
    let k = k % n;
    let (k, n) = if 2 * k > n { (n - k, n) } else { (k, n) };
    let theta = pi_fixed(w) * BigInt::from(2 * k) / BigInt::from(n);
    let theta2 = (&theta * &theta) >> w;
    let mut term = BigInt::one() << w;
    let mut sum = term.clone();
    let mut j = 0u64;
    loop {
        term = -((&term * &theta2) >> w) / BigInt::from((2 * j + 1) * (2 * j + 2));
        if term.is_zero() {
            break;
        }
        sum += &term;
        j += 1;
    }
    sum >> guard
}

/// Sign of a real element. Zero is decided exactly; otherwise the value is
/// bracketed numerically at doubling precision until the bracket excludes zero.
pub fn sign_of_real(a: &CycNum) -> Result<Sign, ScalarError> {
    if !a.is_real() {
        return Err(ScalarError::NotReal);
    }
    if a.is_zero() {
        return Ok(Sign::Zero);
    }
    if let Some(r) = a.to_rat() {
        return Ok(if r.is_positive() { Sign::Positive } else { Sign::Negative });
    }
    let (num, _) = to_big_parts(&a.repr);
    let n = a.field.n as u64;
    let mut bits = 64u64;
    loop {
        let mut sum = BigInt::zero();
        let mut bound = BigInt::zero();
        for (k, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            sum += c * cos_fixed(k as u64, n, bits);
            bound += c.abs() * 4;
        }
        if sum > bound {
            return Ok(Sign::Positive);
        }
        if sum < -bound {
            return Ok(Sign::Negative);
        }
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_cyc(n: u32) -> impl Strategy<Value = CycNum> {
        let f = Field::get(n);
        prop::collection::vec((-20i64..20, 1i64..9), f.degree()).prop_map(move |v| {
            let rats: Vec<Rat> = v.iter().map(|&(a, b)| Rat::new(a, b)).collect();
            CycNum::from_power_coeffs(f, &rats)
        })
    }

    #[test]
    fn cyclotomic_polynomials() {
        let f = Field::get(12);
        assert_eq!(f.cyclo, vec![1, 0, -1, 0, 1]);
        assert_eq!(Field::get(8).cyclo, vec![1, 0, 0, 0, 1]);
        assert_eq!(Field::get(20).degree(), 8);
        assert_eq!(Field::get(28).degree(), 12);
    }

    #[test]
    fn half_turn_squares_to_minus_one() {
        for n in [4u32, 8, 12, 20] {
            let f = Field::get(n);
            let h = f.zeta_n(n as i64 / 2);
            assert_eq!(&h * &h, f.one());
            assert_eq!(h, f.int(-1));
        }
    }

    #[test]
    fn conjugate_pair_sums() {
        let z = root_of_unity(2, 1);
        assert_eq!(&z + &z.conj(), Field::for_dihedral(2).zero());
    }

    #[test]
    fn sixth_roots_sum_to_zero() {
        let f = Field::for_dihedral(3);
        let mut s = f.zero();
        for j in 1..=6 {
            s = &s + &root_of_unity(3, 2 * j);
        }
        assert!(s.is_zero());
    }

    #[test]
    fn roots_of_unity_examples() {
        assert_eq!(root_of_unity(2, 1), Field::for_dihedral(2).i());
        assert_eq!(root_of_unity(3, 3), Field::for_dihedral(3).int(-1));
        assert_eq!(root_of_unity(4, 2), Field::for_dihedral(4).i());
        for m in 2..=12u32 {
            let f = Field::for_dihedral(m);
            assert_eq!(root_of_unity(m, 2 * m as i64), f.one());
            assert_eq!(root_of_unity(m, m as i64), f.int(-1));
        }
    }

    #[test]
    fn sin_cos_examples() {
        let f2 = Field::for_dihedral(2);
        assert_eq!(sin_cos(2, 1), (f2.one(), f2.zero()));
        assert_eq!(sin_cos(2, 2), (f2.zero(), f2.int(-1)));
        let f4 = Field::for_dihedral(4);
        let (s, c) = sin_cos(4, 1);
        assert_eq!(&s * &s, f4.frac(1, 2));
        assert_eq!(s, c);
        assert_eq!(sign_of_real(&s), Ok(Sign::Positive));
    }

    #[test]
    fn pythagoras_for_all_small_m() {
        for m in 2..=12u32 {
            let f = Field::for_dihedral(m);
            for j in 0..(2 * m as i64) {
                let (s, c) = sin_cos(m, j);
                assert!(s.is_real() && c.is_real());
                assert_eq!(&(&s * &s) + &(&c * &c), f.one(), "m={m} j={j}");
            }
        }
    }

    #[test]
    fn sign_examples() {
        let f = Field::for_dihedral(3);
        assert_eq!(sign_of_real(&f.zero()), Ok(Sign::Zero));
        let z = root_of_unity(3, 1);
        assert_eq!(sign_of_real(&(&z + &z.conj())), Ok(Sign::Positive));
        assert_eq!(sign_of_real(&f.frac(-3, 2)), Ok(Sign::Negative));
        assert_eq!(sign_of_real(&z), Err(ScalarError::NotReal));
    }

    #[test]
    fn sign_of_tiny_irrational_difference() {
        // 2cos(π/5) - 1.618... is golden ratio minus a close rational.
        let f = Field::for_dihedral(5);
        let (_, c) = sin_cos(5, 1);
        let x = &(&c * &f.int(2)) - &f.frac(161803398, 100000000);
        assert_eq!(sign_of_real(&x), Ok(Sign::Positive));
        let y = &(&c * &f.int(2)) - &f.frac(161803399, 100000000);
        assert_eq!(sign_of_real(&y), Ok(Sign::Negative));
    }

    #[test]
    fn overflow_falls_back_to_big() {
        let f = Field::for_dihedral(3);
        let big = f.frac(i64::MAX, 3);
        let p = big.pow(5);
        let q = p.pow(2);
        assert_eq!(q, big.pow(10));
        let back = &q / &p;
        assert_eq!(back, p);
        assert_eq!(&(&p - &p) + &f.one(), f.one());
    }

    #[test]
    fn parse_rationals() {
        assert_eq!("3/6".parse::<Rat>().unwrap(), Rat::new(1, 2));
        assert_eq!("-2".parse::<Rat>().unwrap(), Rat::int(-2));
        assert!("0.5".parse::<Rat>().is_err());
        assert!("1/0".parse::<Rat>().is_err());
        assert!("1e3".parse::<Rat>().is_err());
    }

    #[test]
    fn json_round_trip_and_trim() {
        let f = Field::for_dihedral(3);
        let x = f.frac(1, 2);
        let j = serde_json::to_value(&x).unwrap();
        assert_eq!(j, serde_json::json!({"order": 12, "coeffs": [["1", "2"]]}));
        let z = root_of_unity(3, 5);
        let back: CycNum = serde_json::from_value(serde_json::to_value(&z).unwrap()).unwrap();
        assert_eq!(back, z);
        // Non-canonical input: ζ₁₂^6 = -1.
        let raw = serde_json::json!({"order": 12, "coeffs": [["0","1"],["0","1"],["0","1"],["0","1"],["0","1"],["0","1"],["1","1"]]});
        let v: CycNum = serde_json::from_value(raw).unwrap();
        assert_eq!(v, f.int(-1));
    }

    #[test]
    #[should_panic(expected = "orders differ")]
    fn mixing_orders_panics() {
        let _ = &Field::get(8).one() + &Field::get(12).one();
    }

    #[test]
    fn mixing_orders_is_reported() {
        assert_eq!(
            Field::get(8).one().try_add(&Field::get(12).one()),
            Err(ScalarError::OrderMismatch(8, 12))
        );
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_cyc(12), b in arb_cyc(12), c in arb_cyc(12)) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn conj_is_automorphism(a in arb_cyc(20), b in arb_cyc(20)) {
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!(a.conj().conj(), a.clone());
            let r = a.real_part();
            prop_assert_eq!(r.conj(), r);
        }

        #[test]
        fn sign_matches_float(a in arb_cyc(20)) {
            let r = a.real_part();
            let (x, _) = r.to_complex_f64();
            let s = sign_of_real(&r).unwrap();
            if x > 1e-9 { prop_assert_eq!(s, Sign::Positive); }
            if x < -1e-9 { prop_assert_eq!(s, Sign::Negative); }
        }
    }

    #[test]
    fn rational_square_roots() {
        for (a, b) in [(2, 1), (3, 1), (5, 4), (-7, 3), (12, 5), (1, 9), (-1, 1)] {
            let r = Rat::new(a, b);
            let x = sqrt_rational(&r, 1000).unwrap();
            assert_eq!(&x * &x, x.field().rat(&r), "{a}/{b}");
            let (re, im) = x.to_complex_f64();
            let want = (a as f64 / b as f64).abs().sqrt();
            if a > 0 {
                assert!((re - want).abs() < 1e-12 && im.abs() < 1e-12);
            } else {
                assert!(re.abs() < 1e-12 && (im - want).abs() < 1e-12);
            }
        }
        assert!(sqrt_rational(&Rat::int(1009), 100).is_none());
    }

    #[test]
    fn embedding_preserves_arithmetic() {
        let f = Field::for_dihedral(3);
        let g = Field::get(24);
        let a = &f.zeta_n(1) + &f.frac(2, 3);
        let b = &f.i() * &f.zeta_n(5);
        assert_eq!((&a * &b).embed(g), &a.embed(g) * &b.embed(g));
        assert_eq!(f.zeta_n(1).embed(g), g.zeta_n(2));
    }
}
