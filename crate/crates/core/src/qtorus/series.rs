//! Truncated series in the positive cone, monomial-times-series elements,
//! and finite torus elements.

use super::torus::{Lattice, Torus};
use crate::error::{Error, Result};
use crate::qseries::RatQ;
use std::collections::BTreeMap;
use std::fmt;

pub fn degree(v: &[i64]) -> i64 {
    v.iter().sum()
}
pub fn in_cone(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0)
}
fn add_vec(a: &[i64], b: &[i64]) -> Lattice {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
fn scale_vec(a: &[i64], k: i64) -> Lattice {
    a.iter().map(|x| x * k).collect()
}

/// Σ c_γ Y^γ over γ ≥ 0 with |γ| ≤ `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    pub order: i64,
    pub terms: BTreeMap<Lattice, RatQ>,
}

impl Series {
    pub fn one(dim: usize, order: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; dim], RatQ::one());
        Series { order, terms }
    }
    pub fn dim(&self) -> usize {
        self.terms.keys().next().map_or(0, |k| k.len())
    }
    pub fn constant(&self) -> RatQ {
        let z = vec![0; self.dim()];
        self.terms.get(&z).cloned().unwrap_or_else(RatQ::zero)
    }
    pub fn coeff(&self, g: &[i64]) -> RatQ {
        self.terms.get(g).cloned().unwrap_or_else(RatQ::zero)
    }

    fn insert_add(terms: &mut BTreeMap<Lattice, RatQ>, k: Lattice, v: RatQ) {
        if v.is_zero() {
            return;
        }
        match terms.get_mut(&k) {
            Some(x) => {
                *x = x.add(&v);
                if x.is_zero() {
                    terms.remove(&k);
                }
            }
            None => {
                terms.insert(k, v);
            }
        }
    }

    /// Adds `c Y^γ`; terms beyond the order are dropped.
    pub fn add_term(&mut self, g: Lattice, c: RatQ) {
        debug_assert!(in_cone(&g));
        if degree(&g) <= self.order {
            Self::insert_add(&mut self.terms, g, c);
        }
    }

    pub fn add(&self, o: &Series) -> Series {
        let order = self.order.min(o.order);
        let mut s = Series { order, terms: BTreeMap::new() };
        for (k, v) in self.terms.iter().chain(o.terms.iter()) {
            s.add_term(k.clone(), v.clone());
        }
        s
    }
    pub fn scale(&self, c: &RatQ) -> Series {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.clone(), v.mul(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Series { order: self.order, terms }
    }

    pub fn mul(&self, o: &Series, t: &Torus) -> Result<Series> {
        let order = self.order.min(o.order);
        let mut out = BTreeMap::new();
        let right: Vec<(&Lattice, &RatQ, i64)> = o.terms.iter().map(|(k, v)| (k, v, degree(k))).collect();
        for (a, ca) in &self.terms {
            let da = degree(a);
            if da > order {
                continue;
            }
            let row = t.row2(a);
            for &(b, cb, db) in &right {
                if da + db > order {
                    continue;
                }
                let p2: i64 = row.iter().zip(b).map(|(x, y)| x * y).sum();
                let p = t.half(p2)?;
                Self::insert_add(&mut out, add_vec(a, b), ca.mul(cb).shift(p));
            }
        }
        Ok(Series { order, terms: out })
    }

    /// `Y^{-m} S Y^m`: each term picks up `q^{-2⟨m,γ⟩}`.
    pub fn conj(&self, m: &[i64], t: &Torus) -> Series {
        if m.iter().all(|&x| x == 0) {
            return self.clone();
        }
        let row = t.row2(m);
        let terms = self
            .terms
            .iter()
            .map(|(g, c)| {
                let p2: i64 = row.iter().zip(g).map(|(x, y)| x * y).sum();
                (g.clone(), c.shift(-p2))
            })
            .collect();
        Series { order: self.order, terms }
    }

    /// Inverse of a series with constant term 1.
    pub fn inv(&self, t: &Torus) -> Result<Series> {
        if !self.constant().is_one() {
            return Err(Error::ConeViolation(vec![]));
        }
        let dim = self.dim();
        let mut tail = self.clone();
        tail.terms.remove(&vec![0; dim]);
        let neg = tail.scale(&RatQ::from_int(-1));
        let mut acc = Series::one(dim, self.order);
        let mut pow = Series::one(dim, self.order);
        for _ in 0..self.order {
            pow = pow.mul(&neg, t)?;
            if pow.terms.is_empty() {
                break;
            }
            acc = acc.add(&pow);
        }
        Ok(acc)
    }

    pub fn truncate(&self, order: i64) -> Series {
        let terms = self.terms.iter().filter(|(k, _)| degree(k) <= order).map(|(k, v)| (k.clone(), v.clone())).collect();
        Series { order: order.min(self.order), terms }
    }

    /// First exponent where the two series differ (within the common order).
    pub fn first_difference(&self, o: &Series) -> Option<(Lattice, RatQ, RatQ)> {
        let order = self.order.min(o.order);
        let a = self.truncate(order);
        let b = o.truncate(order);
        let keys: std::collections::BTreeSet<&Lattice> = a.terms.keys().chain(b.terms.keys()).collect();
        for k in keys {
            let (x, y) = (a.coeff(k), b.coeff(k));
            if x != y {
                return Some((k.clone(), x, y));
            }
        }
        None
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[O({})]{{", self.order)?;
        for (k, v) in &self.terms {
            write!(f, " {k:?}: {v};")?;
        }
        write!(f, " }}")
    }
}

/// `coef · Y^mono · tail` with `tail` a cone series with constant term 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConeSeries {
    pub coef: RatQ,
    pub mono: Lattice,
    pub tail: Series,
}

impl ConeSeries {
    pub fn monomial(coef: RatQ, mono: Lattice, order: i64) -> Self {
        let dim = mono.len();
        ConeSeries { coef, mono, tail: Series::one(dim, order) }
    }
    pub fn generator(dim: usize, i: usize, order: i64) -> Self {
        let mut m = vec![0; dim];
        m[i - 1] = 1;
        Self::monomial(RatQ::one(), m, order)
    }
    pub fn order(&self) -> i64 {
        self.tail.order
    }

    /// Normalizes `c · Y^m · S` where `S` has an arbitrary nonzero constant.
    pub fn from_parts(coef: RatQ, mono: Lattice, s: Series) -> Result<Self> {
        let c0 = s.constant();
        if c0.is_zero() {
            return Err(Error::ConeViolation(mono));
        }
        let inv0 = c0.inv()?;
        Ok(ConeSeries { coef: coef.mul(&c0), mono, tail: s.scale(&inv0) })
    }

    pub fn mul(&self, o: &ConeSeries, t: &Torus) -> Result<ConeSeries> {
        // (c1 Y^{m1} S1)(c2 Y^{m2} S2) = c1 c2 Y^{m1} Y^{m2} (Y^{-m2} S1 Y^{m2}) S2
        let p = t.pairing(&self.mono, &o.mono)?;
        let tail = self.tail.conj(&o.mono, t).mul(&o.tail, t)?;
        Ok(ConeSeries {
            coef: self.coef.mul(&o.coef).shift(p),
            mono: add_vec(&self.mono, &o.mono),
            tail,
        })
    }

    pub fn inv(&self, t: &Torus) -> Result<ConeSeries> {
        // (c Y^m S)^{-1} = c^{-1} Y^{-m} (Y^m S^{-1} Y^{-m})
        let neg = scale_vec(&self.mono, -1);
        let si = self.tail.inv(t)?.conj(&neg, t);
        Ok(ConeSeries { coef: self.coef.inv()?, mono: neg, tail: si })
    }

    pub fn pow(&self, k: i64, t: &Torus) -> Result<ConeSeries> {
        let base = if k < 0 { self.inv(t)? } else { self.clone() };
        let mut acc = ConeSeries::monomial(RatQ::one(), vec![0; self.mono.len()], self.order());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base, t)?;
        }
        Ok(acc)
    }

    /// `(1 + c·X)^e` for `e = ±1`, put in monomial × cone form.
    ///
    /// If X's monomial is in the positive cone the sum is already a cone
    /// series. If it is in the negative cone, `1 + cX = cX (1 + c^{-1} X^{-1})`.
    pub fn one_plus(c: &RatQ, x: &ConeSeries, e: i64, t: &Torus) -> Result<ConeSeries> {
        assert!(e == 1 || e == -1);
        let dim = x.mono.len();
        let order = x.order();
        if x.mono.iter().all(|&v| v == 0) {
            return Err(Error::ConeViolation(x.mono.clone()));
        }
        let base = if in_cone(&x.mono) {
            let cx = x.coef.mul(c);
            let mut s = Series::one(dim, order);
            // Y^m S expanded: Y^m Y^γ = q^{⟨m,γ⟩} Y^{m+γ}
            let row = t.row2(&x.mono);
            for (g, v) in &x.tail.terms {
                let p2: i64 = row.iter().zip(g).map(|(a, b)| a * b).sum();
                s.add_term(add_vec(&x.mono, g), v.mul(&cx).shift(t.half(p2)?));
            }
            ConeSeries::from_parts(RatQ::one(), vec![0; dim], s)?
        } else if x.mono.iter().all(|&v| v <= 0) {
            let cx = ConeSeries { coef: x.coef.mul(c), mono: x.mono.clone(), tail: x.tail.clone() };
            let inner = ConeSeries::one_plus(&c.inv()?, &x.inv(t)?, 1, t)?;
            cx.mul(&inner, t)?
        } else {
            return Err(Error::ConeViolation(x.mono.clone()));
        };
        if e == 1 {
            Ok(base)
        } else {
            base.inv(t)
        }
    }

    /// Expand into a finite torus element (all terms up to the order).
    pub fn expand(&self, t: &Torus) -> Result<TorusElem> {
        let mut out = TorusElem::zero();
        let row = t.row2(&self.mono);
        for (g, v) in &self.tail.terms {
            let p2: i64 = row.iter().zip(g).map(|(a, b)| a * b).sum();
            out.add_term(add_vec(&self.mono, g), v.mul(&self.coef).shift(t.half(p2)?));
        }
        Ok(out)
    }

    pub fn truncate(&self, order: i64) -> ConeSeries {
        ConeSeries { coef: self.coef.clone(), mono: self.mono.clone(), tail: self.tail.truncate(order) }
    }

    /// Equal up to the smaller of the two orders.
    pub fn agrees(&self, o: &ConeSeries) -> bool {
        self.coef == o.coef && self.mono == o.mono && self.tail.first_difference(&o.tail).is_none()
    }
}

/// Finite sum Σ c_α Y^α over arbitrary α.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TorusElem {
    pub terms: BTreeMap<Lattice, RatQ>,
}

impl TorusElem {
    pub fn zero() -> Self {
        TorusElem { terms: BTreeMap::new() }
    }
    pub fn monomial(c: RatQ, a: Lattice) -> Self {
        let mut e = Self::zero();
        e.add_term(a, c);
        e
    }
    pub fn one(dim: usize) -> Self {
        Self::monomial(RatQ::one(), vec![0; dim])
    }
    pub fn generator(dim: usize, i: usize) -> Self {
        let mut a = vec![0; dim];
        a[i - 1] = 1;
        Self::monomial(RatQ::one(), a)
    }
    pub fn add_term(&mut self, a: Lattice, c: RatQ) {
        Series::insert_add(&mut self.terms, a, c);
    }
    pub fn add(&self, o: &TorusElem) -> TorusElem {
        let mut r = self.clone();
        for (k, v) in &o.terms {
            r.add_term(k.clone(), v.clone());
        }
        r
    }
    pub fn scale(&self, c: &RatQ) -> TorusElem {
        let mut r = Self::zero();
        for (k, v) in &self.terms {
            r.add_term(k.clone(), v.mul(c));
        }
        r
    }
    pub fn mul(&self, o: &TorusElem, t: &Torus) -> Result<TorusElem> {
        let mut r = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let p = t.pairing(a, b)?;
                r.add_term(add_vec(a, b), ca.mul(cb).shift(p));
            }
        }
        Ok(r)
    }
    /// Inverse of a single monomial.
    pub fn inv_monomial(&self) -> Result<TorusElem> {
        if self.terms.len() != 1 {
            return Err(Error::ConeViolation(vec![]));
        }
        let (a, c) = self.terms.iter().next().unwrap();
        Ok(Self::monomial(c.inv()?, scale_vec(a, -1)))
    }
    /// Keep terms `mono + γ` with γ ≥ 0 and |γ| ≤ order.
    pub fn window(&self, mono: &[i64], order: i64) -> TorusElem {
        let mut r = Self::zero();
        for (k, v) in &self.terms {
            let g: Lattice = k.iter().zip(mono).map(|(a, b)| a - b).collect();
            if in_cone(&g) && degree(&g) <= order {
                r.add_term(k.clone(), v.clone());
            }
        }
        r
    }
}
