//! Coefficient ring and q-series primitives.

mod coef;
mod laurent;
mod ratq;

pub use coef::Coef;
pub use laurent::LaurentQ;
pub use ratq::{cyclotomic, factor_cyclotomic, QTerm, RatQ};

use crate::error::{Error, Result};

/// `(q^z; q^b)_n` as a factored term, `None` when it vanishes.
///
/// For `n < 0` the shift convention `(z;q)_n = 1/(z q^n; q)_{-n}` is used.
pub fn qpochhammer_term(base: i64, z: i64, n: i64) -> Result<Option<QTerm>> {
    assert!(base >= 1, "base exponent must be positive");
    let mut t = QTerm::one();
    if n >= 0 {
        for j in 0..n {
            let e = z + j * base;
            if e == 0 {
                return Ok(None);
            }
            t.mul_one_minus(e, 1)?;
        }
    } else {
        for j in 0..(-n) {
            let e = z + (n + j) * base;
            if e == 0 {
                return Err(Error::Pole);
            }
            t.mul_one_minus(e, -1)?;
        }
    }
    Ok(Some(t))
}

/// `(q^{z_power}; q^{base})_n`.
pub fn qpochhammer(base: i64, z_power: i64, n: i64) -> Result<RatQ> {
    Ok(qpochhammer_term(base, z_power, n)?.map_or_else(RatQ::zero, |t| t.to_ratq()))
}

/// `1/(q^b;q^b)_n` as a term; `None` for `n < 0`.
pub fn inv_qfactorial_term(n: i64, base: i64) -> Option<QTerm> {
    if n < 0 {
        return None;
    }
    let mut t = QTerm::one();
    for j in 1..=n {
        t.mul_one_minus(j * base, -1).expect("nonzero exponent");
    }
    Some(t)
}

/// `1/(q^b;q^b)_n`, zero for negative `n`.
pub fn inv_qfactorial(n: i64, base: i64) -> RatQ {
    inv_qfactorial_term(n, base).map_or_else(RatQ::zero, |t| t.to_ratq())
}

/// Coefficient of `U^n` in `Ψ_{q^b}(U)`, or in its inverse.
pub fn psi_series_term(n: i64, inverse: bool, base: i64) -> QTerm {
    assert!(n >= 0);
    let mut t = inv_qfactorial_term(n, 2 * base).unwrap();
    if inverse {
        t.qpow += base * n * n;
    } else {
        t.qpow += base * n;
        if n % 2 == 1 {
            t.coef = t.coef.neg();
        }
    }
    t
}

pub fn psi_series_coeff(n: i64, inverse: bool, base: i64) -> RatQ {
    psi_series_term(n, inverse, base).to_ratq()
}

/// One side of the q-binomial duality:
/// `1/(q²)_{s+t} Σ_n (-1)^n q^{n(n+1+2s)} / ((q²)_n (q²)_{t-n} (q²)_{n+r})`.
pub fn qbinomial_side(r: i64, s: i64, t: i64) -> RatQ {
    let Some(pre) = inv_qfactorial_term(s + t, 2) else {
        return RatQ::zero();
    };
    let mut terms = Vec::new();
    for n in 0.max(-r)..=t {
        let (Some(a), Some(b), Some(c)) = (
            inv_qfactorial_term(n, 2),
            inv_qfactorial_term(t - n, 2),
            inv_qfactorial_term(n + r, 2),
        ) else {
            continue;
        };
        let sgn = if n % 2 == 0 { 1 } else { -1 };
        let m = QTerm::monomial(sgn, n * (n + 1 + 2 * s));
        terms.push(pre.mul(&m).mul(&a).mul(&b).mul(&c));
    }
    RatQ::sum_terms(&terms)
}

/// Both sides of the duality and whether they agree.
pub fn qbinomial_duality(r: i64, s: i64, t: i64) -> (RatQ, RatQ, bool) {
    let l = qbinomial_side(r, s, t);
    let rr = qbinomial_side(s, r, t);
    let ok = l == rr;
    (l, rr, ok)
}

pub fn verify_qbinomial_duality(r: i64, s: i64, t: i64) -> bool {
    qbinomial_duality(r, s, t).2
}
