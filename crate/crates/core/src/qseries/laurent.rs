//! Laurent polynomials in q with exact rational coefficients.

use super::coef::Coef;
use num_complex::Complex64;
use std::fmt;

/// Dense canonical form: `c[0]` is the coefficient of `q^lo`, and both
/// `c[0]` and the last entry are nonzero. Zero is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentQ {
    lo: i64,
    c: Vec<Coef>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        LaurentQ { lo: 0, c: Vec::new() }
    }
    pub fn one() -> Self {
        Self::constant(Coef::one())
    }
    pub fn constant(v: Coef) -> Self {
        Self::monomial(v, 0)
    }
    pub fn monomial(v: Coef, e: i64) -> Self {
        if v.is_zero() {
            return Self::zero();
        }
        LaurentQ { lo: e, c: vec![v] }
    }
    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(Coef::one(), e)
    }
    /// `1 - q^k`.
    pub fn one_minus_q_pow(k: i64) -> Self {
        Self::from_terms([(0, Coef::one()), (k, Coef::Small(-1))])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Coef)>>(it: I) -> Self {
        let items: Vec<(i64, Coef)> = it.into_iter().collect();
        if items.is_empty() {
            return Self::zero();
        }
        let lo = items.iter().map(|x| x.0).min().unwrap();
        let hi = items.iter().map(|x| x.0).max().unwrap();
        let mut c = vec![Coef::zero(); (hi - lo + 1) as usize];
        for (e, v) in items {
            c[(e - lo) as usize].add_assign(&v);
        }
        Self::from_dense(lo, c)
    }

    /// Integer coefficients listed from `q^lo` upward.
    pub fn from_ints(lo: i64, cs: &[i64]) -> Self {
        Self::from_dense(lo, cs.iter().map(|&v| Coef::Small(v)).collect())
    }

    pub(crate) fn from_dense(mut lo: i64, mut c: Vec<Coef>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        let lead = c.iter().take_while(|v| v.is_zero()).count();
        if lead == c.len() {
            return Self::zero();
        }
        if lead > 0 {
            c.drain(..lead);
            lo += lead as i64;
        }
        LaurentQ { lo, c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.c.len() == 1 && self.c[0].is_one()
    }
    /// Lowest exponent; `None` for zero.
    pub fn low(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }
    pub fn high(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lo + self.c.len() as i64 - 1)
    }
    pub fn coeff(&self, e: i64) -> Coef {
        let i = e - self.lo;
        if i < 0 || i as usize >= self.c.len() {
            Coef::zero()
        } else {
            self.c[i as usize].clone()
        }
    }
    #[cfg(test)]
    pub(crate) fn lowest_coeff(&self) -> &Coef {
        &self.c[0]
    }
    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Coef)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(i, v)| (self.lo + i as i64, v))
    }
    pub fn num_terms(&self) -> usize {
        self.terms().count()
    }
    /// Single term `c q^e`, if it is one.
    pub fn as_monomial(&self) -> Option<(i64, &Coef)> {
        (self.c.len() == 1).then(|| (self.lo, &self.c[0]))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.high().unwrap().max(o.high().unwrap());
        let mut c = vec![Coef::zero(); (hi - lo + 1) as usize];
        for (i, v) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + i].add_assign(v);
        }
        for (i, v) in o.c.iter().enumerate() {
            c[(o.lo - lo) as usize + i].add_assign(v);
        }
        Self::from_dense(lo, c)
    }
    pub fn neg(&self) -> Self {
        LaurentQ { lo: self.lo, c: self.c.iter().map(|v| v.neg()).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Coef::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j].add_assign(&a.mul(b));
            }
        }
        Self::from_dense(self.lo + o.lo, c)
    }
    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }
    pub fn scale(&self, v: &Coef) -> Self {
        if v.is_zero() {
            return Self::zero();
        }
        LaurentQ { lo: self.lo, c: self.c.iter().map(|x| x.mul(v)).collect() }
    }
    /// Multiply by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentQ { lo: self.lo + e, c: self.c.clone() }
    }
    /// Substitute `q -> q^k` for `k >= 1`.
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k >= 1);
        Self::from_terms(self.terms().map(|(e, v)| (e * k, v.clone())))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in the Laurent ring.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.c.len();
        let m = d.c.len();
        if n < m {
            return None;
        }
        let mut rem = self.c.clone();
        let lead = &d.c[m - 1];
        let mut quo = vec![Coef::zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            let r = &rem[k + m - 1];
            if r.is_zero() {
                continue;
            }
            let f = r.div(lead);
            for (j, dj) in d.c.iter().enumerate() {
                if !dj.is_zero() {
                    rem[k + j] = rem[k + j].sub(&f.mul(dj));
                }
            }
            quo[k] = f;
        }
        if rem.iter().any(|v| !v.is_zero()) {
            return None;
        }
        Some(Self::from_dense(self.lo - d.lo, quo))
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.terms().map(|(e, v)| v.to_f64() * q.powi(e as i32)).sum()
    }
    pub fn eval_complex(&self, q: Complex64) -> Complex64 {
        self.terms().map(|(e, v)| q.powi(e as i32) * v.to_f64()).sum()
    }
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, v) in self.terms() {
            let neg = v.is_negative();
            let mag = if neg { v.neg() } else { v.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentQ({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_canonical() {
        let a = LaurentQ::from_ints(-1, &[1, 0, 2]);
        let b = LaurentQ::from_ints(1, &[-2]);
        let s = a.add(&b);
        assert_eq!(s, LaurentQ::q_pow(-1));
        assert_eq!(s.low(), Some(-1));
        assert_eq!(a.sub(&a), LaurentQ::zero());
    }

    #[test]
    fn exact_division() {
        let p = LaurentQ::one_minus_q_pow(6);
        let d = LaurentQ::one_minus_q_pow(2);
        let quo = p.div_exact(&d).unwrap();
        assert_eq!(quo, LaurentQ::from_ints(0, &[1, 0, 1, 0, 1]));
        assert!(LaurentQ::one_minus_q_pow(3).div_exact(&d).is_none());
    }

    #[test]
    fn display() {
        let a = LaurentQ::from_ints(0, &[1, -1, 0, 3]);
        assert_eq!(a.to_string(), "1 - q + 3*q^3");
    }
}
