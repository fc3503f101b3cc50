use std::fmt;

use serde::{Serialize, Serializer};

use crate::scalar::{from_int_parts, reduce_int_coeffs, small_parts, CycNum, Field};

/// Dense matrix over Q(ζₙ).
#[derive(Clone)]
pub struct Matrix {
    field: &'static Field,
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl Matrix {
    pub fn zeros(field: &'static Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &'static Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn scalar(field: &'static Field, n: usize, c: &CycNum) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(field: &'static Field, rows: Vec<Vec<CycNum>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(field: &'static Field, rows: usize, cols: Vec<Vec<CycNum>>) -> Matrix {
        let c = cols.len();
        let mut m = Matrix::zeros(field, rows, c);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.into_iter().enumerate() {
                m.data[i * c + j] = x;
            }
        }
        m
    }

    pub fn diagonal(field: &'static Field, d: &[CycNum]) -> Matrix {
        let n = d.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, x) in d.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    /// The same matrix over a larger cyclotomic field.
    pub fn embed(&self, to: &'static Field) -> Matrix {
        Matrix::from_rows(to, self.to_rows().iter().map(|r| r.iter().map(|x| x.embed(to)).collect()).collect())
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<CycNum> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<CycNum>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn zip(&self, o: &Matrix, f: impl Fn(&CycNum, &CycNum) -> CycNum) -> Matrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        self.zip(o, |a, b| if b.is_zero() { a.clone() } else { a + b })
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.zip(o, |a, b| if b.is_zero() { a.clone() } else { a - b })
    }

    pub fn scale(&self, c: &CycNum) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let mut m = self.transpose();
        for x in m.data.iter_mut() {
            *x = x.conj();
        }
        m
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        if self.rows == 0 || o.cols == 0 || self.cols == 0 {
            return Matrix::zeros(self.field, self.rows, o.cols);
        }
        self.mul_int(o).unwrap_or_else(|| self.mul_generic(o))
    }

    fn mul_generic(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let t = &out.data[i * o.cols + j] + &(a * b);
                        out.data[i * o.cols + j] = t;
                    }
                }
            }
        }
        out
    }

    /// Common-denominator integer form: (flat numerators, nonzero flags, denominator).
    fn int_form(&self) -> Option<(Vec<i128>, Vec<bool>, i128)> {
        let phi = self.field.degree();
        let mut l: i128 = 1;
        for x in &self.data {
            let (_, d) = small_parts(x)?;
            if d != 1 {
                let g = gcd_i(l, d);
                l = l.checked_mul(d / g)?;
            }
        }
        let mut nums = vec![0i128; self.data.len() * phi];
        let mut nz = vec![false; self.data.len()];
        for (e, x) in self.data.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            nz[e] = true;
            let (n, d) = small_parts(x)?;
            let f = l / d;
            for (k, &c) in n.iter().enumerate() {
                nums[e * phi + k] = c.checked_mul(f)?;
            }
        }
        Some((nums, nz, l))
    }

    fn mul_int(&self, o: &Matrix) -> Option<Matrix> {
        let f = self.field;
        let phi = f.degree();
        let w = 2 * phi - 1;
        let (an, az, ad) = self.int_form()?;
        let (bn, bz, bd) = o.int_form()?;
        let den = ad.checked_mul(bd)?;
        let mut acc = vec![0i128; self.rows * o.cols * w];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let ea = i * self.cols + k;
                if !az[ea] {
                    continue;
                }
                let x = &an[ea * phi..(ea + 1) * phi];
                for j in 0..o.cols {
                    let eb = k * o.cols + j;
                    if !bz[eb] {
                        continue;
                    }
                    let y = &bn[eb * phi..(eb + 1) * phi];
                    let out = &mut acc[(i * o.cols + j) * w..(i * o.cols + j + 1) * w];
                    for (p, &xp) in x.iter().enumerate() {
                        if xp == 0 {
                            continue;
                        }
                        for (q, &yq) in y.iter().enumerate() {
                            if yq != 0 {
                                out[p + q] = out[p + q].checked_add(xp.checked_mul(yq)?)?;
                            }
                        }
                    }
                }
            }
        }
        let mut data = Vec::with_capacity(self.rows * o.cols);
        for e in 0..self.rows * o.cols {
            let slot = &mut acc[e * w..(e + 1) * w];
            if slot.iter().all(|&x| x == 0) {
                data.push(f.zero());
                continue;
            }
            reduce_int_coeffs(f, slot)?;
            data.push(from_int_parts(f, &slot[..phi], den)?);
        }
        Some(Matrix { field: f, rows: self.rows, cols: o.cols, data })
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut r = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn trace(&self) -> CycNum {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t = &t + self.get(i, i);
        }
        t
    }

    /// Kronecker-style stacking: rows of `self` followed by rows of `o`.
    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { field: self.field, rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        rref(&mut rows, self.cols).len()
    }

    /// Basis of {v : self·v = 0}.
    pub fn nullspace(&self) -> Vec<Vec<CycNum>> {
        let mut rows = self.to_rows();
        let piv = rref(&mut rows, self.cols);
        nullspace_from_rref(self.field, &rows, &piv, self.cols)
    }

    /// Index of the first differing entry.
    pub fn first_difference(&self, o: &Matrix) -> Option<(usize, usize)> {
        assert!(self.rows == o.rows && self.cols == o.cols, "shape mismatch");
        for j in 0..self.cols {
            for i in 0..self.rows {
                if self.get(i, j) != o.get(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl PartialEq for Matrix {
    fn eq(&self, o: &Matrix) -> bool {
        std::ptr::eq(self.field, o.field) && self.rows == o.rows && self.cols == o.cols && self.data == o.data
    }
}

impl Eq for Matrix {}

fn gcd_i(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

/// In-place Gauss–Jordan reduction; returns pivot columns. Rows end up with a
/// leading 1 in each pivot column and zero elsewhere in that column.
pub(crate) fn rref(rows: &mut Vec<Vec<CycNum>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (prow, rest) = tail.split_first_mut().expect("pivot row");
        for other in head.iter_mut().chain(rest.iter_mut()) {
            let fac = other[c].clone();
            if fac.is_zero() {
                continue;
            }
            for (k, x) in prow.iter().enumerate().skip(c) {
                if !x.is_zero() {
                    other[k] = &other[k] - &(&fac * x);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn nullspace_from_rref(field: &'static Field, rows: &[Vec<CycNum>], piv: &[usize], cols: usize) -> Vec<Vec<CycNum>> {
    let mut out = Vec::new();
    for free in 0..cols {
        if piv.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (r, &pc) in piv.iter().enumerate() {
            v[pc] = -&rows[r][free];
        }
        out.push(v);
    }
    out
}

/// Solution set of A·x = b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub rank: usize,
    /// A particular solution, or `None` when the system is inconsistent.
    pub particular: Option<Vec<CycNum>>,
    pub nullspace: Vec<Vec<CycNum>>,
}

impl LinearSolution {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }
}

/// Exact Gauss–Jordan solve of A·x = b.
pub fn solve_linear_system(a: &Matrix, b: &[CycNum]) -> LinearSolution {
    assert_eq!(a.rows(), b.len(), "right-hand side length");
    let f = a.field();
    let n = a.cols();
    let mut rows: Vec<Vec<CycNum>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let piv_all = rref(&mut rows, n + 1);
    let inconsistent = piv_all.last() == Some(&n);
    let piv: Vec<usize> = piv_all.iter().copied().filter(|&c| c < n).collect();
    let rank = piv.len();
    let coeff_rows: Vec<Vec<CycNum>> = rows.iter().take(rank).map(|r| r[..n].to_vec()).collect();
    let nullspace = nullspace_from_rref(f, &coeff_rows, &piv, n);
    let particular = if inconsistent {
        None
    } else {
        let mut x = vec![f.zero(); n];
        for (r, &pc) in piv.iter().enumerate() {
            x[pc] = rows[r][n].clone();
        }
        Some(x)
    };
    LinearSolution { rank, particular, nullspace }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::root_of_unity;
    use proptest::prelude::*;

    fn f() -> &'static Field {
        Field::get(12)
    }

    #[test]
    fn identity_system() {
        let z = root_of_unity(6, 1);
        let a = Matrix::identity(f(), 2);
        let s = solve_linear_system(&a, &[f().one(), z.clone()]);
        assert_eq!(s.rank, 2);
        assert_eq!(s.particular, Some(vec![f().one(), z]));
        assert!(s.nullspace.is_empty());
    }

    #[test]
    fn rank_one_nullspace() {
        let o = f().one();
        let a = Matrix::from_rows(f(), vec![vec![o.clone(), o.clone()], vec![o.clone(), o.clone()]]);
        let s = solve_linear_system(&a, &[f().zero(), f().zero()]);
        assert_eq!(s.rank, 1);
        assert_eq!(s.nullspace, vec![vec![-&o, o]]);
    }

    #[test]
    fn inconsistent_system() {
        let o = f().one();
        let a = Matrix::from_rows(f(), vec![vec![o.clone(), o.clone()], vec![o.clone(), o.clone()]]);
        let s = solve_linear_system(&a, &[f().zero(), o]);
        assert!(!s.is_consistent());
        assert_eq!(s.rank, 1);
    }

    #[test]
    fn linear_form_coefficients_have_rank_two() {
        // x₁+x₂, x₁−x₂, x₁ as coefficient rows.
        let i = |k: i64| f().int(k);
        let a = Matrix::from_rows(f(), vec![vec![i(1), i(1)], vec![i(1), i(-1)], vec![i(1), i(0)]]);
        assert_eq!(a.rank(), 2);
        let g = a.mul(&a.transpose());
        assert_eq!(g.rank(), 2);
    }

    fn arb_matrix(r: usize, c: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec((-4i64..5, 1i64..4, 0i64..12), r * c).prop_map(move |v| {
            let data: Vec<Vec<CycNum>> = v
                .chunks(c)
                .map(|row| row.iter().map(|&(a, b, k)| &f().frac(a, b) * &f().zeta_n(k)).collect())
                .collect();
            Matrix::from_rows(f(), data)
        })
    }

    proptest! {
        #[test]
        fn fast_product_matches_generic(a in arb_matrix(3, 4), b in arb_matrix(4, 2)) {
            prop_assert_eq!(a.mul(&b), a.mul_generic(&b));
        }

        #[test]
        fn nullspace_is_annihilated(a in arb_matrix(3, 5)) {
            let ns = a.nullspace();
            prop_assert_eq!(ns.len() + a.rank(), 5);
            for v in ns {
                prop_assert!(a.mul_vec(&v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn particular_solution_solves(a in arb_matrix(4, 3), x in arb_matrix(3, 1)) {
            let b = a.mul(&x).col(0);
            let s = solve_linear_system(&a, &b);
            let p = s.particular.unwrap();
            prop_assert_eq!(a.mul_vec(&p), b);
        }
    }
}
