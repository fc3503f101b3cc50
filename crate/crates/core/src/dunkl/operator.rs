//! Lazy linear operators on spinor polynomials and their exact comparison on
//! graded bases.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::poly::{GradedBasis, Matrix, SpinorPoly};
use crate::scalar::{CycNum, Field};

type Kernel = dyn Fn(&SpinorPoly) -> SpinorPoly + Send + Sync;

enum Kind {
    Prim(Arc<Kernel>),
    Scalar(CycNum),
    Comb(Vec<(CycNum, LinOperator)>),
    /// Product written left to right; the rightmost factor acts first.
    Prod(Vec<LinOperator>),
}

struct Node {
    kind: Kind,
    field: Option<&'static Field>,
    shift: Option<i32>,
    label: String,
}

/// A linear operator on C²-valued polynomials, kept as an expression tree.
/// `shift` is the degree change of a homogeneous operator, `None` if mixed.
#[derive(Clone)]
pub struct LinOperator(Arc<Node>);

impl fmt::Debug for LinOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.label)
    }
}

fn wrap(label: &str) -> String {
    if label.contains(' ') {
        format!("({label})")
    } else {
        label.to_string()
    }
}

impl LinOperator {
    /// A primitive operator with a known degree shift.
    pub fn prim(
        field: &'static Field,
        label: impl Into<String>,
        shift: i32,
        f: impl Fn(&SpinorPoly) -> SpinorPoly + Send + Sync + 'static,
    ) -> Self {
        LinOperator(Arc::new(Node { kind: Kind::Prim(Arc::new(f)), field: Some(field), shift: Some(shift), label: label.into() }))
    }

    pub fn scalar(c: CycNum) -> Self {
        let label = c.to_string();
        let field = Some(c.field());
        LinOperator(Arc::new(Node { kind: Kind::Scalar(c), field, shift: Some(0), label }))
    }

    pub fn identity(field: &'static Field) -> Self {
        Self::scalar(field.one())
    }

    /// The zero map with a declared degree shift.
    pub fn zero(shift: i32) -> Self {
        LinOperator(Arc::new(Node { kind: Kind::Comb(Vec::new()), field: None, shift: Some(shift), label: "0".into() }))
    }

    pub fn shift(&self) -> Option<i32> {
        self.0.shift
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    /// Replaces the label.
    pub fn named(&self, label: impl Into<String>) -> Self {
        let kind = match &self.0.kind {
            Kind::Prim(f) => Kind::Prim(f.clone()),
            Kind::Scalar(c) => Kind::Scalar(c.clone()),
            Kind::Comb(v) => Kind::Comb(v.clone()),
            Kind::Prod(v) => Kind::Prod(v.clone()),
        };
        LinOperator(Arc::new(Node { kind, field: self.0.field, shift: self.0.shift, label: label.into() }))
    }

    fn key(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    /// Σ cᵢ·Aᵢ.
    pub fn comb(terms: Vec<(CycNum, LinOperator)>) -> Self {
        let terms: Vec<(CycNum, LinOperator)> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero(0);
        }
        let s0 = terms[0].1.shift();
        let shift = if terms.iter().all(|(_, t)| t.shift() == s0) { s0 } else { None };
        let label = terms
            .iter()
            .enumerate()
            .map(|(i, (c, t))| {
                let cs = c.to_string();
                let body = if c.is_one() {
                    wrap(t.label())
                } else {
                    format!("{}·{}", wrap(&cs), wrap(t.label()))
                };
                if i == 0 {
                    body
                } else {
                    format!("+ {body}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ");
        let field = Some(terms[0].0.field());
        LinOperator(Arc::new(Node { kind: Kind::Comb(terms), field, shift, label }))
    }

    pub fn add(&self, o: &LinOperator) -> Self {
        let one = self.any_field().or_else(|| o.any_field());
        match one {
            Some(f) => Self::comb(vec![(f.one(), self.clone()), (f.one(), o.clone())]),
            None => self.clone(),
        }
    }

    pub fn sub(&self, o: &LinOperator) -> Self {
        match self.any_field().or_else(|| o.any_field()) {
            Some(f) => Self::comb(vec![(f.one(), self.clone()), (f.int(-1), o.clone())]),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        Self::comb(vec![(c.clone(), self.clone())])
    }

    pub fn neg(&self) -> Self {
        match self.any_field() {
            Some(f) => self.scale(&f.int(-1)),
            None => self.clone(),
        }
    }

    /// Composition self ∘ o.
    pub fn mul(&self, o: &LinOperator) -> Self {
        let shift = match (self.shift(), o.shift()) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        let label = format!("{}·{}", wrap(self.label()), wrap(o.label()));
        let field = self.0.field.or(o.0.field);
        LinOperator(Arc::new(Node { kind: Kind::Prod(vec![self.clone(), o.clone()]), field, shift, label }))
    }

    pub fn pow(&self, e: u32, field: &'static Field) -> Self {
        let mut r = LinOperator::identity(field);
        for _ in 0..e {
            r = self.mul(&r);
        }
        r
    }

    /// [A, B] = AB − BA.
    pub fn comm(a: &LinOperator, b: &LinOperator) -> Self {
        a.mul(b).sub(&b.mul(a)).named(format!("[{}, {}]", a.label(), b.label()))
    }

    /// {A, B} = AB + BA.
    pub fn anticomm(a: &LinOperator, b: &LinOperator) -> Self {
        a.mul(b).add(&b.mul(a)).named(format!("{{{}, {}}}", a.label(), b.label()))
    }

    fn any_field(&self) -> Option<&'static Field> {
        self.0.field
    }

    /// Applies the operator to a polynomial.
    pub fn apply(&self, p: &SpinorPoly) -> SpinorPoly {
        match &self.0.kind {
            Kind::Prim(f) => f(p),
            Kind::Scalar(c) => p.scale(c),
            Kind::Comb(v) => {
                let mut out = SpinorPoly::zero();
                for (c, t) in v {
                    out.add_scaled(c, &t.apply(p));
                }
                out
            }
            Kind::Prod(v) => {
                let mut cur = p.clone();
                for t in v.iter().rev() {
                    cur = t.apply(&cur);
                }
                cur
            }
        }
    }
}

/// Dimension of the degree-d spinor space, zero for negative d.
pub fn graded_dim(d: i64) -> usize {
    if d < 0 {
        0
    } else {
        ((d + 1) * (d + 2)) as usize
    }
}

/// Materializes operators as exact matrices on homogeneous pieces, caching
/// every subexpression. All operators handed to one evaluator must share its field.
pub struct Evaluator {
    field: &'static Field,
    cache: Mutex<HashMap<(Vec<usize>, u32), Arc<Matrix>>>,
    keep: Mutex<Vec<LinOperator>>,
}

impl Evaluator {
    pub fn new(field: &'static Field) -> Self {
        Evaluator { field, cache: Mutex::new(HashMap::new()), keep: Mutex::new(Vec::new()) }
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    fn lookup(&self, key: &(Vec<usize>, u32)) -> Option<Arc<Matrix>> {
        self.cache.lock().expect("cache").get(key).cloned()
    }

    fn store(&self, key: (Vec<usize>, u32), m: Arc<Matrix>, hold: &[LinOperator]) {
        self.keep.lock().expect("keep").extend(hold.iter().cloned());
        self.cache.lock().expect("cache").insert(key, m);
    }

    /// Matrix from GradedBasis(d) to GradedBasis(d + shift).
    pub fn matrix(&self, op: &LinOperator, d: u32) -> Arc<Matrix> {
        let shift = op.shift().unwrap_or_else(|| panic!("operator {} is not homogeneous", op.label()));
        let rows = graded_dim(d as i64 + shift as i64);
        let cols = graded_dim(d as i64);
        match &op.0.kind {
            Kind::Prod(_) => {
                let (scal, factors) = self.flatten(op);
                let m = self.product(&factors, d);
                match scal {
                    Some(c) => Arc::new(m.scale(&c)),
                    None => m,
                }
            }
            _ => {
                let key = (vec![op.key()], d);
                if let Some(m) = self.lookup(&key) {
                    return m;
                }
                let m = match &op.0.kind {
                    Kind::Prim(f) => Arc::new(self.prim_matrix(f.as_ref(), d, shift)),
                    Kind::Scalar(c) => Arc::new(Matrix::scalar(self.field, cols, c)),
                    Kind::Comb(v) => {
                        let mut acc = Matrix::zeros(self.field, rows, cols);
                        for (c, t) in v {
                            let tm = self.matrix(t, d);
                            acc = if c.is_one() { acc.add(&tm) } else { acc.add(&tm.scale(c)) };
                        }
                        Arc::new(acc)
                    }
                    Kind::Prod(_) => unreachable!(),
                };
                self.store(key, m.clone(), std::slice::from_ref(op));
                m
            }
        }
    }

    /// Flattens nested products and pulls out scalar factors.
    fn flatten(&self, op: &LinOperator) -> (Option<CycNum>, Vec<LinOperator>) {
        let mut scal: Option<CycNum> = None;
        let mut out = Vec::new();
        let mut stack = vec![op.clone()];
        let mulc = |c: &CycNum, s: &mut Option<CycNum>| {
            *s = Some(match s.take() {
                Some(x) => &x * c,
                None => c.clone(),
            });
        };
        while let Some(t) = stack.pop() {
            match &t.0.kind {
                Kind::Prod(v) => {
                    for f in v.iter() {
                        stack.push(f.clone());
                    }
                }
                Kind::Scalar(c) => mulc(c, &mut scal),
                Kind::Comb(v) if v.len() == 1 => {
                    mulc(&v[0].0, &mut scal);
                    stack.push(v[0].1.clone());
                }
                _ => out.push(t.clone()),
            }
        }
        // The stack pops the last factor first.
        out.reverse();
        (scal, out)
    }

    fn product(&self, factors: &[LinOperator], d: u32) -> Arc<Matrix> {
        if factors.is_empty() {
            return Arc::new(Matrix::identity(self.field, graded_dim(d as i64)));
        }
        if factors.len() == 1 {
            return self.matrix(&factors[0], d);
        }
        let key = (factors.iter().map(|f| f.key()).collect::<Vec<_>>(), d);
        if let Some(m) = self.lookup(&key) {
            return m;
        }
        let rest = &factors[1..];
        let rest_shift: i32 = rest.iter().map(|f| f.shift().expect("homogeneous")).sum();
        let inner = self.product(rest, d);
        let mid = d as i64 + rest_shift as i64;
        let m = if mid < 0 {
            let rows = graded_dim(mid + factors[0].shift().expect("homogeneous") as i64);
            Arc::new(Matrix::zeros(self.field, rows, graded_dim(d as i64)))
        } else {
            let outer = self.matrix(&factors[0], mid as u32);
            Arc::new(outer.mul(&inner))
        };
        self.store(key, m.clone(), factors);
        m
    }

    fn prim_matrix(&self, f: &Kernel, d: u32, shift: i32) -> Matrix {
        let src = GradedBasis::new(d);
        let target = d as i64 + shift as i64;
        let rows = graded_dim(target);
        let mut cols = Vec::with_capacity(src.len());
        for k in 0..src.len() {
            let out = f(&src.element(self.field, k));
            if target < 0 {
                assert!(out.is_zero(), "operator produced terms below degree 0");
                cols.push(Vec::new());
                continue;
            }
            let tb = GradedBasis::new(target as u32);
            let c = tb.coords(self.field, &out).unwrap_or_else(|| panic!("operator is not homogeneous of shift {shift}"));
            cols.push(c);
        }
        Matrix::from_cols(self.field, rows, cols)
    }

    /// Compares two operators on GradedBasis(d).
    pub fn compare(&self, lhs: &LinOperator, rhs: &LinOperator, d: u32) -> Option<Counterexample> {
        let a = self.matrix(lhs, d);
        let b = self.matrix(rhs, d);
        if a.rows() != b.rows() {
            // Different declared shifts: equal only if both vanish.
            let j = (0..a.cols()).find(|&j| a.col(j).iter().any(|x| !x.is_zero()) || b.col(j).iter().any(|x| !x.is_zero()))?;
            return Some(self.counterexample(&a, &b, lhs, rhs, d, j));
        }
        let (_, j) = a.first_difference(&b)?;
        Some(self.counterexample(&a, &b, lhs, rhs, d, j))
    }

    fn counterexample(&self, a: &Matrix, b: &Matrix, lhs: &LinOperator, rhs: &LinOperator, d: u32, j: usize) -> Counterexample {
        let src = GradedBasis::new(d);
        let (mono, spin) = src.label(j);
        let out = |m: &Matrix, op: &LinOperator| {
            let t = d as i64 + op.shift().unwrap_or(0) as i64;
            if t < 0 {
                SpinorPoly::zero()
            } else {
                GradedBasis::new(t as u32).from_coords(&m.col(j))
            }
        };
        Counterexample {
            input: format!("{:?}·chi{}", mono, if spin == crate::poly::Spin::Up { "+" } else { "-" }),
            lhs: out(a, lhs),
            rhs: out(b, rhs),
        }
    }

    pub fn cached_len(&self) -> usize {
        self.cache.lock().expect("cache").len()
    }
}


/// A named claimed equality lhs = rhs.
#[derive(Clone, Debug)]
pub struct OperatorIdentity {
    pub name: String,
    pub lhs: LinOperator,
    pub rhs: LinOperator,
}

impl OperatorIdentity {
    pub fn new(name: impl Into<String>, lhs: LinOperator, rhs: LinOperator) -> Self {
        OperatorIdentity { name: name.into(), lhs, rhs }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Counterexample {
    pub input: String,
    pub lhs: SpinorPoly,
    pub rhs: SpinorPoly,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One row of a verification report.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityResult {
    pub identity: String,
    pub degree: u32,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl IdentityResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Checks each identity on GradedBasis(d) for every d ≤ max_degree.
pub fn check_identities(ev: &Evaluator, ids: &[OperatorIdentity], max_degree: u32) -> Vec<IdentityResult> {
    let mut out = Vec::with_capacity(ids.len() * (max_degree as usize + 1));
    for id in ids {
        for d in 0..=max_degree {
            let ce = ev.compare(&id.lhs, &id.rhs, d);
            out.push(IdentityResult {
                identity: id.name.clone(),
                degree: d,
                status: if ce.is_none() { Status::Pass } else { Status::Fail },
                counterexample: ce,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MPoly, Mono};

    fn f() -> &'static Field {
        Field::get(8)
    }

    fn mul_x(i: usize) -> LinOperator {
        LinOperator::prim(f(), format!("x{}", i + 1), 1, move |p| p.mul_poly(&MPoly::var(Field::get(8), i)))
    }

    fn del(i: usize) -> LinOperator {
        LinOperator::prim(f(), format!("d{}", i + 1), -1, move |p| p.map(|q| q.partial_derivative(i)))
    }

    #[test]
    fn heisenberg_relation() {
        let ev = Evaluator::new(f());
        let c = LinOperator::comm(&del(0), &mul_x(0));
        let id = OperatorIdentity::new("[d1,x1]=1", c, LinOperator::identity(f()));
        assert!(check_identities(&ev, &[id], 3).iter().all(|r| r.passed()));
    }

    #[test]
    fn failure_reports_counterexample() {
        let ev = Evaluator::new(f());
        let c = LinOperator::comm(&del(0), &mul_x(0));
        let id = OperatorIdentity::new("wrong", c, LinOperator::scalar(f().int(2)));
        let r = check_identities(&ev, &[id], 1);
        assert_eq!(r[0].status, Status::Fail);
        let ce = r[0].counterexample.as_ref().unwrap();
        assert_eq!(ce.input, "1·chi+");
        assert_eq!(ce.lhs, SpinorPoly::chi(f(), crate::poly::Spin::Up));
    }

    #[test]
    fn lazy_and_materialized_agree() {
        let ev = Evaluator::new(f());
        let op = mul_x(1).mul(&del(0)).sub(&del(2).mul(&mul_x(2)).scale(&f().zeta_n(1)));
        let b = GradedBasis::new(2);
        let m = ev.matrix(&op, 2);
        for k in 0..b.len() {
            let lazy = op.apply(&b.element(f(), k));
            assert_eq!(b.coords(f(), &lazy).unwrap(), m.col(k));
        }
    }

    #[test]
    fn products_below_degree_zero_vanish() {
        let ev = Evaluator::new(f());
        let op = del(0).mul(&del(1));
        let m = ev.matrix(&op, 1);
        assert_eq!((m.rows(), m.cols()), (0, 6));
        let p = SpinorPoly::times_chi(MPoly::term(f().one(), Mono::new(1, 0, 0)), crate::poly::Spin::Down);
        assert!(op.apply(&p).is_zero());
    }
}
