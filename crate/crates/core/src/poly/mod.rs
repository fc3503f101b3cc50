//! Polynomials in x₁, x₂, x₃ over Q(ζₙ), spinor-valued polynomials, graded
//! monomial bases and exact linear algebra.

mod linear;
mod spinor;

pub use linear::{solve_linear_system, LinearSolution, Matrix};
pub use spinor::{GradedBasis, Spin, SpinorPoly};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::{CycNum, Field};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial is not divisible by the linear form")]
    NotDivisible,
    #[error("linear form is zero")]
    ZeroDivisor,
}

/// Monomial x₁^a x₂^b x₃^c. Ordered by total degree, then lexicographically
/// with x₁ > x₂ > x₃ (so x₁² precedes x₁x₂ within degree 2).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono([u16; 3]);

impl Mono {
    pub const ONE: Mono = Mono([0, 0, 0]);

    pub fn new(a: u16, b: u16, c: u16) -> Mono {
        Mono([a, b, c])
    }

    pub fn var(i: usize) -> Mono {
        let mut e = [0; 3];
        e[i] = 1;
        Mono(e)
    }

    pub fn exps(&self) -> [u16; 3] {
        self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&x| x as u32).sum()
    }

    pub fn times(&self, o: &Mono) -> Mono {
        Mono([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    /// Position inside the degree-d block of [`monomials`].
    pub fn index_in_degree(&self) -> usize {
        let d = self.degree() as usize;
        let s = d - self.0[0] as usize;
        s * (s + 1) / 2 + (s - self.0[1] as usize)
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Mono) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Mono) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

impl Mono {
    fn render(&self, latex: bool) -> String {
        let mut s = String::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if latex {
                s.push_str(&format!("x_{}", i + 1));
                if e > 1 {
                    s.push_str(&format!("^{{{e}}}"));
                }
            } else {
                if !s.is_empty() {
                    s.push('*');
                }
                s.push_str(&format!("x{}", i + 1));
                if e > 1 {
                    s.push_str(&format!("^{e}"));
                }
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

/// All monomials of total degree `d` in increasing order.
pub fn monomials(d: u32) -> Vec<Mono> {
    let d = d as u16;
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push(Mono::new(a, b, d - a - b));
        }
    }
    out
}

/// A 3×3 matrix of scalars acting on coordinates.
pub type Mat3 = [[CycNum; 3]; 3];

/// Sparse polynomial with nonzero coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<Mono, CycNum>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn constant(c: CycNum) -> MPoly {
        MPoly::term(c, Mono::ONE)
    }

    pub fn term(c: CycNum, m: Mono) -> MPoly {
        let mut p = MPoly::zero();
        p.add_term(m, c);
        p
    }

    /// The coordinate function x_{i+1}.
    pub fn var(field: &'static Field, i: usize) -> MPoly {
        MPoly::term(field.one(), Mono::var(i))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &CycNum)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Option<&CycNum> {
        self.terms.get(m)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Mono, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &CycNum, o: &MPoly) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &o.terms {
            self.add_term(*m, c * v);
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, v) in &o.terms {
            r.add_term(*m, v.clone());
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, v) in &o.terms {
            r.add_term(*m, -v);
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, v)| (*m, -v)).collect() }
    }

    pub fn scale(&self, c: &CycNum) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero();
        for (m1, v1) in &self.terms {
            for (m2, v2) in &o.terms {
                r.add_term(m1.times(m2), v1 * v2);
            }
        }
        r
    }

    pub fn mul_mono(&self, m: &Mono) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(k, v)| (k.times(m), v.clone())).collect() }
    }

    pub fn pow(&self, field: &'static Field, e: u32) -> MPoly {
        let mut r = MPoly::constant(field.one());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Complex conjugation of every coefficient.
    pub fn conj(&self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, v)| (*m, v.conj())).collect() }
    }

    /// Formal partial derivative in x_{i+1}.
    pub fn partial_derivative(&self, i: usize) -> MPoly {
        let mut r = MPoly::zero();
        for (m, v) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = *m;
            n.0[i] -= 1;
            r.add_term(n, v * &v.field().int(e as i64));
        }
        r
    }

    /// f(M·x): each x_i is replaced by Σ_j M_ij x_j.
    pub fn substitute_linear(&self, mat: &Mat3) -> MPoly {
        let Some(first) = self.terms.values().next() else {
            return MPoly::zero();
        };
        let field = first.field();
        let maxe: Vec<u16> = (0..3).map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)).collect();
        let images: Vec<MPoly> = (0..3)
            .map(|i| {
                let mut p = MPoly::zero();
                for (j, c) in mat[i].iter().enumerate() {
                    p.add_term(Mono::var(j), c.clone());
                }
                p
            })
            .collect();
        let powers: Vec<Vec<MPoly>> = (0..3)
            .map(|i| {
                let mut v = vec![MPoly::constant(field.one())];
                for k in 1..=maxe[i] as usize {
                    let next = v[k - 1].mul(&images[i]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            let [a, b, e] = m.0;
            let p = powers[0][a as usize].mul(&powers[1][b as usize]).mul(&powers[2][e as usize]);
            r.add_scaled(c, &p);
        }
        r
    }

    /// Quotient q with q·L = f for the linear form L = Σ l_i x_i.
    pub fn exact_div_linear(&self, l: &[CycNum; 3]) -> Result<MPoly, PolyError> {
        let v = (0..3).find(|&i| !l[i].is_zero()).ok_or(PolyError::ZeroDivisor)?;
        let lead_inv = l[v].inv().map_err(|_| PolyError::ZeroDivisor)?;
        let mut rem = self.clone();
        let mut q = MPoly::zero();
        loop {
            let pick = rem.terms.iter().filter(|(m, _)| m.0[v] > 0).max_by_key(|(m, _)| (m.0[v], **m));
            let Some((m, c)) = pick else { break };
            let mut qm = *m;
            qm.0[v] -= 1;
            let qc = c * &lead_inv;
            for (j, lj) in l.iter().enumerate() {
                if !lj.is_zero() {
                    rem.add_term(qm.times(&Mono::var(j)), -(&qc * lj));
                }
            }
            q.add_term(qm, qc);
        }
        if rem.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible)
        }
    }

    /// Keeps only the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        MPoly { terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, v)| (*m, v.clone())).collect() }
    }

    /// Renders with the given name for ζₙ; `latex` selects LaTeX monomials.
    pub fn render(&self, zeta: &str, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let coeff = c.fmt_with(zeta);
            let simple = !coeff.contains(' ');
            let neg = simple && coeff.starts_with('-');
            let mag = if neg { &coeff[1..] } else { &coeff[..] };
            if i > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let mono = m.render(latex);
            let cpart = if simple { mag.to_string() } else { format!("({coeff})") };
            if *m == Mono::ONE {
                s.push_str(&cpart);
            } else if cpart == "1" {
                s.push_str(&mono);
            } else if latex {
                s.push_str(&format!("{cpart}\\,{mono}"));
            } else {
                s.push_str(&format!("{cpart}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("z", false))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: [u16; 3],
    coeff: CycNum,
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TermJson> = self.terms.iter().map(|(m, c)| TermJson { exps: m.0, coeff: c.clone() }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<MPoly, D::Error> {
        let v: Vec<TermJson> = Vec::deserialize(d)?;
        let mut p = MPoly::zero();
        let mut order = None;
        for t in v {
            if *order.get_or_insert(t.coeff.order()) != t.coeff.order() {
                return Err(D::Error::custom("mixed cyclotomic orders"));
            }
            p.add_term(Mono(t.exps), t.coeff);
        }
        Ok(p)
    }
}
