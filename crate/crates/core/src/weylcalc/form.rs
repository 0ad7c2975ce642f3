//! Linear forms in p_i, u_i, λ_i and Weyl-ordered exponentials of them.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Generator of the Weyl algebra (1-based index).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    P(usize),
    U(usize),
    Lam(usize),
}

/// Σ c·g over p_1..p_n, u_1..u_n, λ_1..λ_n.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    pub n: usize,
    pub c: Vec<Q>,
}

impl Form {
    pub fn zero(n: usize) -> Self {
        Form { n, c: vec![Q::zero(); 3 * n] }
    }
    pub fn slot(n: usize, g: Gen) -> usize {
        match g {
            Gen::P(i) => i - 1,
            Gen::U(i) => n + i - 1,
            Gen::Lam(i) => 2 * n + i - 1,
        }
    }
    pub fn gen(n: usize, g: Gen) -> Self {
        let mut f = Self::zero(n);
        f.c[Self::slot(n, g)] = Q::one();
        f
    }
    /// Integer combination of generators.
    pub fn from_terms(n: usize, terms: &[(i64, Gen)]) -> Self {
        let mut f = Self::zero(n);
        for &(k, g) in terms {
            f.c[Self::slot(n, g)] += q(k);
        }
        f
    }
    /// λ_j − λ_k.
    pub fn lam_diff(n: usize, j: usize, k: usize) -> Self {
        Self::from_terms(n, &[(1, Gen::Lam(j)), (-1, Gen::Lam(k))])
    }
    pub fn get(&self, g: Gen) -> &Q {
        &self.c[Self::slot(self.n, g)]
    }
    pub fn p(&self, i: usize) -> &Q {
        &self.c[i - 1]
    }
    pub fn u(&self, i: usize) -> &Q {
        &self.c[self.n + i - 1]
    }
    pub fn add(&self, o: &Form) -> Form {
        Form { n: self.n, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
    pub fn sub(&self, o: &Form) -> Form {
        Form { n: self.n, c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
    pub fn scale(&self, k: &Q) -> Form {
        Form { n: self.n, c: self.c.iter().map(|a| a * k).collect() }
    }
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    /// Only λ terms.
    pub fn is_central(&self) -> bool {
        self.c[..2 * self.n].iter().all(|x| x.is_zero())
    }
    /// `[F, G] / ħ` with `[p_i, u_i] = w_i ħ`.
    pub fn commutator(&self, o: &Form, w: &[i64]) -> Q {
        let n = self.n;
        let mut s = Q::zero();
        for i in 1..=n {
            let wi = q(w[i - 1]);
            s += wi * (self.p(i) * o.u(i) - self.u(i) * o.p(i));
        }
        s
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (name, i) = match idx / self.n {
                0 => ("p", idx % self.n + 1),
                1 => ("u", idx % self.n + 1),
                _ => ("λ", idx % self.n + 1),
            };
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{name}{i}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form({self})")
    }
}

/// `q^{qpow2/2} exp(form)` in symmetric (Weyl) ordering; κ_j = e^{λ_j} sit in
/// the λ part of the form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylMono {
    pub form: Form,
    pub qpow2: i64,
}

impl WeylMono {
    pub fn new(form: Form) -> Self {
        WeylMono { form, qpow2: 0 }
    }
    /// `e^X e^Y = q^{[X,Y]/2ħ} e^{X+Y}`.
    pub fn mul(&self, o: &WeylMono, w: &[i64]) -> Result<WeylMono> {
        let c = self.form.commutator(&o.form, w);
        let c = c
            .to_integer()
            .to_i64()
            .filter(|_| c.is_integer())
            .ok_or_else(|| Error::NonIntegerExponent(format!("commutator {c}")))?;
        Ok(WeylMono { form: self.form.add(&o.form), qpow2: self.qpow2 + o.qpow2 + c })
    }
    pub fn scale_q(&self, e: i64) -> WeylMono {
        WeylMono { form: self.form.clone(), qpow2: self.qpow2 + 2 * e }
    }
}

impl fmt::Display for WeylMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.qpow2 != 0 {
            if self.qpow2 % 2 == 0 {
                write!(f, "q^{} ", self.qpow2 / 2)?;
            } else {
                write!(f, "q^({}/2) ", self.qpow2)?;
            }
        }
        write!(f, "e^{{{}}}", self.form)
    }
}

/// Parses `k2^-1 p2 -u2 -2p1` style exponent data: `kJ` / `kJ^-1` are κ
/// factors, signed `[c]pI` / `[c]uI` are exponent terms.
pub fn parse_mono(n: usize, s: &str) -> Result<WeylMono> {
    let mut f = Form::zero(n);
    let bad = || Error::Parse(format!("monomial {s:?}"));
    for tok in s.split_whitespace() {
        if let Some(rest) = tok.strip_prefix('k') {
            let (idx, pow) = match rest.split_once('^') {
                Some((a, b)) => (a, b.parse::<i64>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let j: usize = idx.parse().map_err(|_| bad())?;
            if j == 0 || j > n {
                return Err(bad());
            }
            f.c[Form::slot(n, Gen::Lam(j))] += q(pow);
            continue;
        }
        let (sign, body) = match tok.as_bytes()[0] {
            b'-' => (-1, &tok[1..]),
            b'+' => (1, &tok[1..]),
            _ => (1, tok),
        };
        let pos = body.find(['p', 'u']).ok_or_else(bad)?;
        let coef: i64 = if pos == 0 { 1 } else { body[..pos].parse().map_err(|_| bad())? };
        let i: usize = body[pos + 1..].parse().map_err(|_| bad())?;
        if i == 0 || i > n {
            return Err(bad());
        }
        let g = if &body[pos..pos + 1] == "p" { Gen::P(i) } else { Gen::U(i) };
        f.c[Form::slot(n, g)] += q(sign * coef);
    }
    Ok(WeylMono::new(f))
}

/// Solves `Σ_j x_j cols[j] = b` exactly; `None` if inconsistent.
pub fn solve(cols: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = b.len();
    let k = cols.len();
    let mut a: Vec<Vec<Q>> = (0..m)
        .map(|r| {
            let mut row: Vec<Q> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..=k {
                    let v = &a[row][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][k].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let m = parse_mono(3, "k1 k3^-1 p1 u1 p3 -u3 -p2").unwrap();
        assert_eq!(m.form.to_string(), "p1-p2+p3+u1-u3+λ1-λ3");
        assert!(parse_mono(3, "p4").is_err());
        assert_eq!(parse_mono(4, "-2p3").unwrap().form.p(3), &q(-2));
    }

    #[test]
    fn product_rule() {
        let w = [1, 1];
        let p = WeylMono::new(Form::gen(2, Gen::P(1)));
        let u = WeylMono::new(Form::gen(2, Gen::U(1)));
        // e^p e^u = q^{1/2} e^{p+u}, e^u e^p = q^{-1/2} e^{p+u}
        assert_eq!(p.mul(&u, &w).unwrap().qpow2, 1);
        assert_eq!(u.mul(&p, &w).unwrap().qpow2, -1);
    }

    #[test]
    fn solve_consistent_and_not() {
        let cols = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        assert_eq!(solve(&cols, &[q(2), q(3), q(5)]), Some(vec![q(2), q(3)]));
        assert_eq!(solve(&cols, &[q(2), q(3), q(4)]), None);
    }
}
