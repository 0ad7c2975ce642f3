//! Rational functions of q whose denominators are products of cyclotomic
//! polynomials. Every denominator met in q-series work has this shape, and
//! since the Φ_d are irreducible the reduced form is canonical.

use super::coef::Coef;
use super::laurent::LaurentQ;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

static CYCLO: OnceLock<RwLock<Vec<LaurentQ>>> = OnceLock::new();

/// Φ_d(q), cached.
pub fn cyclotomic(d: u32) -> LaurentQ {
    assert!(d >= 1);
    let cache = CYCLO.get_or_init(|| RwLock::new(vec![LaurentQ::zero()]));
    if let Some(p) = cache.read().unwrap().get(d as usize) {
        return p.clone();
    }
    let mut w = cache.write().unwrap();
    while w.len() <= d as usize {
        let n = w.len() as i64;
        // q^n - 1 = prod_{e | n} Φ_e
        let mut p = LaurentQ::one_minus_q_pow(n).neg();
        for e in 1..n {
            if n % e == 0 {
                p = p.div_exact(&w[e as usize]).expect("cyclotomic recursion");
            }
        }
        w.push(p);
    }
    w[d as usize].clone()
}

fn divisors(k: u32) -> impl Iterator<Item = u32> {
    (1..=k).filter(move |d| k % d == 0)
}

/// Exact element of Q[q, 1/q] localized at the cyclotomic polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatQ {
    num: LaurentQ,
    // d -> exponent of Φ_d in the denominator; never divides num
    den: BTreeMap<u32, u32>,
}

impl RatQ {
    pub fn zero() -> Self {
        RatQ { num: LaurentQ::zero(), den: BTreeMap::new() }
    }
    pub fn one() -> Self {
        Self::from_laurent(LaurentQ::one())
    }
    pub fn from_int(v: i64) -> Self {
        Self::from_laurent(LaurentQ::constant(Coef::Small(v)))
    }
    pub fn from_coef(v: Coef) -> Self {
        Self::from_laurent(LaurentQ::constant(v))
    }
    pub fn q_pow(e: i64) -> Self {
        Self::from_laurent(LaurentQ::q_pow(e))
    }
    /// `c * q^e`.
    pub fn monomial(c: i64, e: i64) -> Self {
        Self::from_laurent(LaurentQ::monomial(Coef::Small(c), e))
    }
    pub fn from_laurent(p: LaurentQ) -> Self {
        RatQ { num: p, den: BTreeMap::new() }
    }

    /// `num / den`; fails if `den` is zero or has a non-cyclotomic factor.
    pub fn from_frac(num: &LaurentQ, den: &LaurentQ) -> Result<Self> {
        let (c, shift, map) = factor_cyclotomic(den)?;
        let n = num.shift(-shift).scale(&Coef::one().div(&c));
        Ok(Self::reduce(n, map))
    }

    fn reduce(mut num: LaurentQ, mut den: BTreeMap<u32, u32>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        den.retain(|_, e| *e > 0);
        let keys: Vec<u32> = den.keys().copied().collect();
        for d in keys {
            let phi = cyclotomic(d);
            let e = den.get_mut(&d).unwrap();
            while *e > 0 {
                match num.div_exact(&phi) {
                    Some(q) => {
                        num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|_, e| *e > 0);
        RatQ { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }
    /// Laurent polynomial value, if the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentQ> {
        self.den.is_empty().then_some(&self.num)
    }

    /// Numerator under the normalization where the denominator's lowest
    /// coefficient is 1.
    pub fn num(&self) -> LaurentQ {
        if self.den.get(&1).copied().unwrap_or(0) % 2 == 1 {
            self.num.neg()
        } else {
            self.num.clone()
        }
    }
    /// Denominator, lowest coefficient 1 (Φ_1 is taken as 1 - q).
    pub fn den(&self) -> LaurentQ {
        let mut p = LaurentQ::one();
        for (&d, &e) in &self.den {
            let f = if d == 1 { LaurentQ::one_minus_q_pow(1) } else { cyclotomic(d) };
            p = p.mul(&f.pow(e));
        }
        p
    }
    /// Cyclotomic exponents of the denominator.
    pub fn den_factors(&self) -> &BTreeMap<u32, u32> {
        &self.den
    }

    pub fn neg(&self) -> Self {
        RatQ { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        let mut l = self.den.clone();
        for (&d, &e) in &o.den {
            let x = l.entry(d).or_insert(0);
            *x = (*x).max(e);
        }
        let a = lift(&self.num, &self.den, &l);
        let b = lift(&o.num, &o.den, &l);
        Self::reduce(a.add(&b), l)
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_empty() && o.den.is_empty() {
            return Self::from_laurent(self.num.mul(&o.num));
        }
        // cancel across: num of one against den of the other
        let mut den = self.den.clone();
        for (&d, &e) in &o.den {
            *den.entry(d).or_insert(0) += e;
        }
        Self::reduce(self.num.mul(&o.num), den)
    }
    /// Multiply by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        RatQ { num: self.num.shift(e), den: self.den.clone() }
    }
    pub fn scale(&self, c: &Coef) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatQ { num: self.num.scale(c), den: self.den.clone() }
    }
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Pole);
        }
        let (c, shift, map) = factor_cyclotomic(&self.num)?;
        let mut n = LaurentQ::monomial(Coef::one().div(&c), -shift);
        for (&d, &e) in &self.den {
            n = n.mul(&cyclotomic(d).pow(e));
        }
        Ok(RatQ { num: n, den: map })
    }
    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut r = Self::one();
        for _ in 0..n.unsigned_abs() {
            r = r.mul(&base);
        }
        Ok(r)
    }

    /// Sum of factored terms with a single final reduction.
    pub fn sum_terms<'a, I: IntoIterator<Item = &'a QTerm>>(terms: I) -> Self {
        let ts: Vec<(i64, Coef, BTreeMap<u32, i32>)> =
            terms.into_iter().map(|t| t.cyclo_form()).collect();
        if ts.is_empty() {
            return Self::zero();
        }
        let mut l: BTreeMap<u32, u32> = BTreeMap::new();
        for (_, _, f) in &ts {
            for (&d, &e) in f {
                if e < 0 {
                    let x = l.entry(d).or_insert(0);
                    *x = (*x).max((-e) as u32);
                }
            }
        }
        let mut total = LaurentQ::zero();
        for (s, c, f) in &ts {
            let mut p = LaurentQ::monomial(c.clone(), *s);
            let mut ds: BTreeMap<u32, i32> = f.clone();
            for (&d, &e) in &l {
                *ds.entry(d).or_insert(0) += e as i32;
            }
            for (&d, &e) in &ds {
                debug_assert!(e >= 0);
                if e > 0 {
                    p = p.mul(&cyclotomic(d).pow(e as u32));
                }
            }
            total = total.add(&p);
        }
        Self::reduce(total, l)
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.num().eval_f64(q) / self.den().eval_f64(q)
    }
    pub fn eval_complex(&self, q: Complex64) -> Complex64 {
        self.num().eval_complex(q) / self.den().eval_complex(q)
    }
}

fn lift(num: &LaurentQ, have: &BTreeMap<u32, u32>, want: &BTreeMap<u32, u32>) -> LaurentQ {
    let mut p = num.clone();
    for (&d, &e) in want {
        let h = have.get(&d).copied().unwrap_or(0);
        if e > h {
            p = p.mul(&cyclotomic(d).pow(e - h));
        }
    }
    p
}

/// Write `p = c * q^shift * prod Φ_d^{e_d}`.
pub fn factor_cyclotomic(p: &LaurentQ) -> Result<(Coef, i64, BTreeMap<u32, u32>)> {
    if p.is_zero() {
        return Err(Error::Pole);
    }
    let shift = p.low().unwrap();
    let mut rest = p.shift(-shift);
    let mut map = BTreeMap::new();
    let mut d = 1u32;
    loop {
        let deg = rest.high().unwrap();
        if deg == 0 {
            break;
        }
        // phi(d) >= sqrt(d/2), so no factor beyond 2 deg^2 + 2
        if (d as i64) > 2 * deg * deg + 2 {
            return Err(Error::NonCyclotomic(p.to_string()));
        }
        let phi = cyclotomic(d);
        if phi.high().unwrap() <= deg {
            while let Some(q) = rest.div_exact(&phi) {
                rest = q;
                *map.entry(d).or_insert(0) += 1;
            }
        }
        d += 1;
    }
    Ok((rest.coeff(0), shift, map))
}

/// `sign * q^qpow * prod_k (1 - q^k)^{fac[k]}` with k >= 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTerm {
    pub coef: Coef,
    pub qpow: i64,
    pub fac: BTreeMap<u32, i32>,
}

impl QTerm {
    pub fn one() -> Self {
        QTerm { coef: Coef::one(), qpow: 0, fac: BTreeMap::new() }
    }
    pub fn monomial(c: i64, e: i64) -> Self {
        QTerm { coef: Coef::Small(c), qpow: e, fac: BTreeMap::new() }
    }
    /// Multiply by `(1 - q^k)^e`; `k = 0` is rejected, negative `k` is
    /// rewritten via `1 - q^k = -q^k (1 - q^{-k})`.
    pub fn mul_one_minus(&mut self, k: i64, e: i32) -> Result<()> {
        if k == 0 {
            return Err(Error::Pole);
        }
        if e == 0 {
            return Ok(());
        }
        let kk = if k < 0 {
            self.qpow += k * e as i64;
            if e % 2 != 0 {
                self.coef = self.coef.neg();
            }
            (-k) as u32
        } else {
            k as u32
        };
        let x = self.fac.entry(kk).or_insert(0);
        *x += e;
        if *x == 0 {
            self.fac.remove(&kk);
        }
        Ok(())
    }
    pub fn mul(&self, o: &QTerm) -> QTerm {
        let mut fac = self.fac.clone();
        for (&k, &e) in &o.fac {
            let x = fac.entry(k).or_insert(0);
            *x += e;
            if *x == 0 {
                fac.remove(&k);
            }
        }
        QTerm { coef: self.coef.mul(&o.coef), qpow: self.qpow + o.qpow, fac }
    }

    /// Collapse to `(q-power, coefficient, Φ_d exponents)`.
    fn cyclo_form(&self) -> (i64, Coef, BTreeMap<u32, i32>) {
        let mut f: BTreeMap<u32, i32> = BTreeMap::new();
        let mut flips = 0i64;
        for (&k, &e) in &self.fac {
            // 1 - q^k = -prod_{d|k} Φ_d
            flips += e as i64;
            for d in divisors(k) {
                *f.entry(d).or_insert(0) += e;
            }
        }
        f.retain(|_, e| *e != 0);
        let c = if flips.rem_euclid(2) == 1 { self.coef.neg() } else { self.coef.clone() };
        (self.qpow, c, f)
    }

    pub fn to_ratq(&self) -> RatQ {
        RatQ::sum_terms(std::iter::once(self))
    }
}

impl fmt::Display for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num();
        if self.den.is_empty() {
            return write!(f, "{n}");
        }
        let d = self.den();
        let wrap = |p: &LaurentQ| {
            if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&n), wrap(&d))
    }
}

impl fmt::Debug for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatQ({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), LaurentQ::from_ints(0, &[-1, 1]));
        assert_eq!(cyclotomic(6), LaurentQ::from_ints(0, &[1, -1, 1]));
        assert_eq!(cyclotomic(12), LaurentQ::from_ints(0, &[1, 0, -1, 0, 1]));
    }

    #[test]
    fn normalization_and_display() {
        let r = RatQ::from_frac(&LaurentQ::q_pow(1).neg(), &LaurentQ::one_minus_q_pow(2)).unwrap();
        assert_eq!(r.to_string(), "-q/(1 - q^2)");
        assert!(r.den().lowest_coeff().is_one());
    }

    #[test]
    fn reduction_cancels() {
        let a = RatQ::from_frac(&LaurentQ::one_minus_q_pow(4), &LaurentQ::one_minus_q_pow(2)).unwrap();
        assert_eq!(a, RatQ::from_laurent(LaurentQ::from_ints(0, &[1, 0, 1])));
    }

    #[test]
    fn non_cyclotomic_rejected() {
        let d = LaurentQ::from_ints(0, &[1, 1, 0, 1]);
        assert!(matches!(RatQ::from_frac(&LaurentQ::one(), &d), Err(Error::NonCyclotomic(_))));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = RatQ::from_frac(&LaurentQ::from_ints(-2, &[3, 0, 3]), &LaurentQ::one_minus_q_pow(3)).unwrap();
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
    }

    #[test]
    fn qterm_sum_matches_ratq_sum() {
        let mut a = QTerm::monomial(-1, 1);
        a.mul_one_minus(2, -1).unwrap();
        let mut b = QTerm::monomial(1, 0);
        b.mul_one_minus(-4, -2).unwrap();
        let s = RatQ::sum_terms([&a, &b]);
        assert_eq!(s, a.to_ratq().add(&b.to_ratq()));
    }
}
