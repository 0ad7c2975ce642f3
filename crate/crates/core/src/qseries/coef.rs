//! Rational coefficients with an allocation-free path for machine integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// An arbitrary-precision rational. Integers that fit in `i64` stay inline.
#[derive(Clone)]
pub enum Coef {
    Small(i64),
    Big(BigRational),
}

impl Coef {
    pub fn zero() -> Self {
        Coef::Small(0)
    }
    pub fn one() -> Self {
        Coef::Small(1)
    }
    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Coef::Big(BigRational::new(BigInt::from(n), BigInt::from(d))).norm()
    }
    pub fn from_big(r: BigRational) -> Self {
        Coef::Big(r).norm()
    }

    fn norm(self) -> Self {
        match self {
            Coef::Big(r) => {
                if r.is_integer() {
                    if let Some(v) = r.numer().to_i64() {
                        return Coef::Small(v);
                    }
                }
                Coef::Big(r)
            }
            s => s,
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Coef::Small(v) => BigRational::from_integer(BigInt::from(*v)),
            Coef::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coef::Small(v) => *v == 0,
            Coef::Big(r) => r.is_zero(),
        }
    }
    pub fn is_one(&self) -> bool {
        match self {
            Coef::Small(v) => *v == 1,
            Coef::Big(r) => r.is_one(),
        }
    }
    pub fn is_negative(&self) -> bool {
        match self {
            Coef::Small(v) => *v < 0,
            Coef::Big(r) => r.is_negative(),
        }
    }
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Coef::Small(v) => Some(*v),
            Coef::Big(_) => None,
        }
    }
    pub fn to_f64(&self) -> f64 {
        match self {
            Coef::Small(v) => *v as f64,
            Coef::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn add(&self, o: &Coef) -> Coef {
        if let (Coef::Small(a), Coef::Small(b)) = (self, o) {
            if let Some(s) = a.checked_add(*b) {
                return Coef::Small(s);
            }
        }
        Coef::Big(self.to_big() + o.to_big()).norm()
    }
    pub fn sub(&self, o: &Coef) -> Coef {
        if let (Coef::Small(a), Coef::Small(b)) = (self, o) {
            if let Some(s) = a.checked_sub(*b) {
                return Coef::Small(s);
            }
        }
        Coef::Big(self.to_big() - o.to_big()).norm()
    }
    pub fn mul(&self, o: &Coef) -> Coef {
        if let (Coef::Small(a), Coef::Small(b)) = (self, o) {
            if let Some(s) = a.checked_mul(*b) {
                return Coef::Small(s);
            }
        }
        Coef::Big(self.to_big() * o.to_big()).norm()
    }
    pub fn neg(&self) -> Coef {
        match self {
            Coef::Small(v) => match v.checked_neg() {
                Some(n) => Coef::Small(n),
                None => Coef::Big(-self.to_big()),
            },
            Coef::Big(r) => Coef::Big(-r.clone()),
        }
    }
    /// Panics on division by zero.
    pub fn div(&self, o: &Coef) -> Coef {
        assert!(!o.is_zero(), "division by zero coefficient");
        if let (Coef::Small(a), Coef::Small(b)) = (self, o) {
            if *b != 0 && a % b == 0 {
                if let Some(v) = a.checked_div(*b) {
                    return Coef::Small(v);
                }
            }
        }
        Coef::Big(self.to_big() / o.to_big()).norm()
    }
    pub fn add_assign(&mut self, o: &Coef) {
        if let (Coef::Small(a), Coef::Small(b)) = (&*self, o) {
            if let Some(s) = a.checked_add(*b) {
                *self = Coef::Small(s);
                return;
            }
        }
        *self = self.add(o);
    }
}

impl PartialEq for Coef {
    fn eq(&self, o: &Coef) -> bool {
        match (self, o) {
            (Coef::Small(a), Coef::Small(b)) => a == b,
            // normalized: a Big is never an i64-sized integer
            (Coef::Big(a), Coef::Big(b)) => a == b,
            _ => false,
        }
    }
}
impl Eq for Coef {}

impl std::hash::Hash for Coef {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        match self {
            Coef::Small(v) => {
                0u8.hash(h);
                v.hash(h)
            }
            Coef::Big(r) => {
                1u8.hash(h);
                r.numer().hash(h);
                r.denom().hash(h)
            }
        }
    }
}

impl PartialOrd for Coef {
    fn partial_cmp(&self, o: &Coef) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Coef {
    fn cmp(&self, o: &Coef) -> Ordering {
        match (self, o) {
            (Coef::Small(a), Coef::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl From<i64> for Coef {
    fn from(v: i64) -> Self {
        Coef::Small(v)
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Small(v) => write!(f, "{v}"),
            Coef::Big(r) => write!(f, "{r}"),
        }
    }
}
impl fmt::Debug for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes() {
        let a = Coef::Small(i64::MAX);
        let b = a.add(&Coef::one());
        assert!(matches!(b, Coef::Big(_)));
        assert_eq!(b.sub(&Coef::one()), a);
        let m = a.mul(&a).div(&a);
        assert_eq!(m, a);
    }

    #[test]
    fn fractions_normalize() {
        let h = Coef::from_ratio(2, 4);
        assert_eq!(h.add(&h), Coef::one());
        assert_eq!(Coef::from_ratio(6, -3), Coef::Small(-2));
    }
}
