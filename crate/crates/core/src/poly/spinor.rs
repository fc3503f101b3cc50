use std::fmt;

use serde::{Deserialize, Serialize};

use super::{monomials, MPoly, Mono};
use crate::scalar::{CycNum, Field};

/// Spinor component: χ⁺ = (1, 0)ᵀ or χ⁻ = (0, 1)ᵀ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spin {
    Up,
    Down,
}

/// A C²-valued polynomial (up, down).
#[derive(Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinorPoly {
    pub up: MPoly,
    pub down: MPoly,
}

impl SpinorPoly {
    pub fn new(up: MPoly, down: MPoly) -> SpinorPoly {
        SpinorPoly { up, down }
    }

    pub fn zero() -> SpinorPoly {
        SpinorPoly::default()
    }

    pub fn chi(field: &'static Field, s: Spin) -> SpinorPoly {
        SpinorPoly::times_chi(MPoly::constant(field.one()), s)
    }

    /// p·χ^s.
    pub fn times_chi(p: MPoly, s: Spin) -> SpinorPoly {
        match s {
            Spin::Up => SpinorPoly::new(p, MPoly::zero()),
            Spin::Down => SpinorPoly::new(MPoly::zero(), p),
        }
    }

    pub fn component(&self, s: Spin) -> &MPoly {
        match s {
            Spin::Up => &self.up,
            Spin::Down => &self.down,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.up.is_zero() && self.down.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.up.degree().max(self.down.degree())
    }

    pub fn add(&self, o: &SpinorPoly) -> SpinorPoly {
        SpinorPoly::new(self.up.add(&o.up), self.down.add(&o.down))
    }

    pub fn sub(&self, o: &SpinorPoly) -> SpinorPoly {
        SpinorPoly::new(self.up.sub(&o.up), self.down.sub(&o.down))
    }

    pub fn neg(&self) -> SpinorPoly {
        SpinorPoly::new(self.up.neg(), self.down.neg())
    }

    pub fn scale(&self, c: &CycNum) -> SpinorPoly {
        SpinorPoly::new(self.up.scale(c), self.down.scale(c))
    }

    pub fn add_scaled(&mut self, c: &CycNum, o: &SpinorPoly) {
        self.up.add_scaled(c, &o.up);
        self.down.add_scaled(c, &o.down);
    }

    /// Multiplies both components by a scalar polynomial.
    pub fn mul_poly(&self, p: &MPoly) -> SpinorPoly {
        SpinorPoly::new(self.up.mul(p), self.down.mul(p))
    }

    /// Applies a scalar-polynomial map to both components.
    pub fn map(&self, f: impl Fn(&MPoly) -> MPoly) -> SpinorPoly {
        SpinorPoly::new(f(&self.up), f(&self.down))
    }

    /// Applies the 2×2 matrix [[a, b], [c, d]] to (up, down).
    pub fn apply_2x2(&self, m: &[[CycNum; 2]; 2]) -> SpinorPoly {
        let mut up = self.up.scale(&m[0][0]);
        up.add_scaled(&m[0][1], &self.down);
        let mut down = self.up.scale(&m[1][0]);
        down.add_scaled(&m[1][1], &self.down);
        SpinorPoly::new(up, down)
    }

    pub fn render(&self, zeta: &str, latex: bool) -> String {
        let (a, b, dot) = if latex { ("\\chi^+", "\\chi^-", "\\,") } else { ("chi+", "chi-", "·") };
        format!("({}){dot}{a} + ({}){dot}{b}", self.up.render(zeta, latex), self.down.render(zeta, latex))
    }
}

impl fmt::Debug for SpinorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?} | {:?}]", self.up, self.down)
    }
}

/// Spinor monomials of degree n: all degree-n monomials times χ⁺, then times χ⁻.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    degree: u32,
    monos: Vec<Mono>,
}

impl GradedBasis {
    pub fn new(degree: u32) -> GradedBasis {
        GradedBasis { degree, monos: monomials(degree) }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        2 * self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn monos(&self) -> &[Mono] {
        &self.monos
    }

    /// Monomial and spin of the k-th element.
    pub fn label(&self, k: usize) -> (Mono, Spin) {
        let h = self.monos.len();
        if k < h {
            (self.monos[k], Spin::Up)
        } else {
            (self.monos[k - h], Spin::Down)
        }
    }

    pub fn element(&self, field: &'static Field, k: usize) -> SpinorPoly {
        let (m, s) = self.label(k);
        SpinorPoly::times_chi(MPoly::term(field.one(), m), s)
    }

    pub fn elements(&self, field: &'static Field) -> Vec<SpinorPoly> {
        (0..self.len()).map(|k| self.element(field, k)).collect()
    }

    pub fn index(&self, m: &Mono, s: Spin) -> usize {
        let i = m.index_in_degree();
        match s {
            Spin::Up => i,
            Spin::Down => i + self.monos.len(),
        }
    }

    /// Coordinates of a homogeneous degree-n spinor; `None` if other degrees occur.
    pub fn coords(&self, field: &'static Field, p: &SpinorPoly) -> Option<Vec<CycNum>> {
        let mut v = vec![field.zero(); self.len()];
        for s in [Spin::Up, Spin::Down] {
            for (m, c) in p.component(s).terms() {
                if m.degree() != self.degree {
                    return None;
                }
                v[self.index(m, s)] = c.clone();
            }
        }
        Some(v)
    }

    pub fn from_coords(&self, v: &[CycNum]) -> SpinorPoly {
        let mut p = SpinorPoly::zero();
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (m, s) = self.label(k);
            match s {
                Spin::Up => p.up.add_term(m, c.clone()),
                Spin::Down => p.down.add_term(m, c.clone()),
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes_and_coords() {
        let f = Field::get(8);
        for n in 0..6u32 {
            let b = GradedBasis::new(n);
            assert_eq!(b.len() as u32, (n + 1) * (n + 2));
            for k in 0..b.len() {
                let e = b.element(f, k);
                let c = b.coords(f, &e).unwrap();
                assert!(c.iter().enumerate().all(|(j, x)| x.is_one() == (j == k)));
                assert_eq!(b.from_coords(&c), e);
            }
        }
        let b = GradedBasis::new(1);
        assert!(b.coords(f, &SpinorPoly::chi(f, Spin::Up)).is_none());
    }
}
