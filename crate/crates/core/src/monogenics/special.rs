//! Pochhammer symbols, terminating hypergeometric series and the Jacobi and
//! generalized Gegenbauer polynomials, all over Q.

use crate::scalar::Rat;

/// (a)_n = a(a+1)⋯(a+n−1).
pub fn pochhammer(a: &Rat, n: u32) -> Rat {
    (0..n).fold(Rat::one(), |acc, j| acc * (a + &Rat::int(j as i64)))
}

pub fn factorial(n: u32) -> Rat {
    pochhammer(&Rat::one(), n)
}

/// The degree of termination: the least n with some numerator parameter
/// equal to −n.
fn termination(num: &[Rat]) -> Option<u32> {
    num.iter()
        .filter(|a| a.is_integer() && !a.is_positive())
        .filter_map(|a| a.to_i64().map(|v| (-v) as u32))
        .min()
}

/// Coefficients (a₁)_k⋯(a_r)_k / ((b₁)_k⋯(b_s)_k k!) for k = 0..=len.
pub fn series_coeffs(num: &[Rat], den: &[Rat], len: u32) -> Vec<Rat> {
    let mut out = Vec::with_capacity(len as usize + 1);
    let mut c = Rat::one();
    for k in 0..=len {
        out.push(c.clone());
        let kk = Rat::int(k as i64);
        let mut step = Rat::one();
        for a in num {
            step = step * (a + &kk);
        }
        for b in den {
            step = step * (b + &kk).recip().expect("denominator parameter hits a pole");
        }
        c = c * step * Rat::int(k as i64 + 1).recip().expect("nonzero");
    }
    out
}

/// ₚF_q(num; den; z) when some numerator parameter is a non-positive
/// integer; `None` otherwise.
pub fn hypergeometric(num: &[Rat], den: &[Rat], z: &Rat) -> Option<Rat> {
    let n = termination(num)?;
    let coeffs = series_coeffs(num, den, n);
    // Horner from the top.
    Some(coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * z.clone() + c.clone()))
}

/// Power-basis coefficients of P_n^{(a,b)}(x), lowest degree first.
pub fn jacobi(n: u32, a: &Rat, b: &Rat) -> Vec<Rat> {
    let front = pochhammer(&(a + &Rat::one()), n) * factorial(n).recip().expect("nonzero");
    let num = [Rat::int(-(n as i64)), Rat::int(n as i64 + 1) + a.clone() + b.clone()];
    let c = series_coeffs(&num, &[a + &Rat::one()], n);
    // ((1−x)/2)^j expanded with binomial coefficients.
    let mut out = vec![Rat::zero(); n as usize + 1];
    for (j, cj) in c.iter().enumerate() {
        let scale = cj.clone() * Rat::new(1, 2).pow(j as u32);
        let mut binom = Rat::one();
        for i in 0..=j {
            let sign = if i % 2 == 0 { Rat::one() } else { Rat::int(-1) };
            out[i] = out[i].clone() + scale.clone() * binom.clone() * sign;
            binom = binom * Rat::new((j - i) as i64, i as i64 + 1);
        }
    }
    out.into_iter().map(|c| c * front.clone()).collect()
}

/// Coefficients c_j of xⁿ⁻ʲyʲ in the homogeneous form
/// (x+y)ⁿ P_n^{(a,b)}((x−y)/(x+y)) = (a+1)_n/n! xⁿ ₂F₁(−n, −n−b; a+1; −y/x).
pub fn jacobi_homogeneous(n: u32, a: &Rat, b: &Rat) -> Vec<Rat> {
    let front = pochhammer(&(a + &Rat::one()), n) * factorial(n).recip().expect("nonzero");
    let nn = Rat::int(-(n as i64));
    let c = series_coeffs(&[nn.clone(), nn - b.clone()], &[a + &Rat::one()], n);
    c.into_iter()
        .enumerate()
        .map(|(j, cj)| {
            let sign = if j % 2 == 0 { Rat::one() } else { Rat::int(-1) };
            cj * sign * front.clone()
        })
        .collect()
}

/// Evaluates a power-basis polynomial.
pub fn eval(coeffs: &[Rat], x: &Rat) -> Rat {
    coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// Power-basis coefficients of the generalized Gegenbauer polynomial
/// G_n^{(λ,μ)}(x).
pub fn gegenbauer(n: u32, lambda: &Rat, mu: &Rat) -> Vec<Rat> {
    let h = Rat::new(1, 2);
    let half_n = n / 2;
    let (scale, p) = if n % 2 == 0 {
        let s = pochhammer(&(lambda + mu), half_n) * pochhammer(&(mu + &h), half_n).recip().expect("pole");
        (s, jacobi(half_n, &(lambda - &h), &(mu - &h)))
    } else {
        let s = pochhammer(&(lambda + mu), half_n + 1) * pochhammer(&(mu + &h), half_n + 1).recip().expect("pole");
        (s, jacobi(half_n, &(lambda - &h), &(mu + &h)))
    };
    // Substitute 2x² − 1, then multiply by x in the odd case.
    let mut out = vec![Rat::zero(); n as usize + 1];
    let mut power = vec![Rat::one()];
    for c in &p {
        for (i, q) in power.iter().enumerate() {
            let d = 2 * i + (n % 2) as usize;
            out[d] = out[d].clone() + c.clone() * q.clone() * scale.clone();
        }
        let mut next = vec![Rat::zero(); power.len() + 1];
        for (i, q) in power.iter().enumerate() {
            next[i] = next[i].clone() - q.clone();
            next[i + 1] = next[i + 1].clone() + Rat::int(2) * q.clone();
        }
        power = next;
    }
    out
}
