//! Closed-form matrix elements of 𝓡 and 𝓚 in the u- and p-representations.

use crate::error::Error;
use crate::qseries::{inv_qfactorial_term, qpochhammer_term, QTerm, RatQ};

/// A closed-form value. `Indeterminate` marks a literal 0·∞ in the printed
/// formula; the oracle decides those.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Zero,
    Term(QTerm),
    Indeterminate,
}

impl Elem {
    pub fn to_ratq(&self) -> Option<RatQ> {
        match self {
            Elem::Zero => Some(RatQ::zero()),
            Elem::Term(t) => Some(t.to_ratq()),
            Elem::Indeterminate => None,
        }
    }
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `⟨a|𝓡_123|b⟩` in the u-representation, spectral `n_i = λ_i/ħ`.
pub fn r_elem_u_term(a: [i64; 3], b: [i64; 3], n: [i64; 3]) -> Option<QTerm> {
    if a[0] + a[1] != b[0] + b[1] || a[1] + a[2] != b[1] + b[2] {
        return None;
    }
    let m = a[1] - b[2];
    let t = inv_qfactorial_term(m, 2)?;
    let (n13, n23) = (n[0] - n[2], n[1] - n[2]);
    let e = m + (b[0] - b[2] + n13) * (m - n23) + n13 * n23;
    Some(t.mul(&QTerm::monomial(sign(m), e)))
}

/// `⟨c|𝓡_123|d⟩` in the p-representation.
pub fn r_elem_p_term(c: [i64; 3], d: [i64; 3], n: [i64; 3]) -> Option<QTerm> {
    if c[1] != d[0] + d[2] || c[0] + c[2] != d[1] {
        return None;
    }
    let (n13, n23) = (n[0] - n[2], n[1] - n[2]);
    let m = c[0] - d[0] + n23;
    let t = inv_qfactorial_term(m, 2)?;
    Some(t.mul(&QTerm::monomial(sign(m), m + m * (d[1] - c[1] + n13))))
}

pub fn r_elem_u(a: [i64; 3], b: [i64; 3], n: [i64; 3]) -> RatQ {
    r_elem_u_term(a, b, n).map_or_else(RatQ::zero, |t| t.to_ratq())
}

pub fn r_elem_p(c: [i64; 3], d: [i64; 3], n: [i64; 3]) -> RatQ {
    r_elem_p_term(c, d, n).map_or_else(RatQ::zero, |t| t.to_ratq())
}

/// Shared K shape: `q^e (-1)^s (q^{-4M};q^4)_L / ((q^4;q^4)_L (q^2;q^2)_M)`.
fn k_shape(mm: i64, l: i64, e: i64, s: i64) -> Elem {
    let num = qpochhammer_term(4, -4 * mm, l);
    let (d1, d2) = (inv_qfactorial_term(l, 4), inv_qfactorial_term(mm, 2));
    match num {
        Err(Error::Pole) => {
            // only for L < 0, where 1/(q^4;q^4)_L already vanishes
            Elem::Indeterminate
        }
        Err(_) => unreachable!("pochhammer only fails with a pole"),
        Ok(None) => Elem::Zero,
        Ok(Some(t)) => match (d1, d2) {
            (Some(x), Some(y)) => Elem::Term(t.mul(&x).mul(&y).mul(&QTerm::monomial(sign(s), e))),
            _ => Elem::Zero,
        },
    }
}

/// `⟨a|𝓚_1234|b⟩` in the u-representation at λ = 0, legs weighted (1,2,1,2).
pub fn k_elem_u_checked(a: [i64; 4], b: [i64; 4]) -> Elem {
    if b[1] + b[2] + b[3] != a[1] + a[2] + a[3] || b[0] + 2 * b[1] + b[2] != a[0] + 2 * a[1] + a[2] {
        return Elem::Zero;
    }
    let mm = a[1] + b[1] - a[3] - b[3];
    let l = b[1] - a[3];
    let e = mm * (b[0] + 2 * b[1] - b[2] - 2 * b[3] + 1) + 2 * l * (a[1] - a[3] + 1);
    k_shape(mm, l, e, a[1] - b[3])
}

/// `⟨c|𝓚_1234|d⟩` in the p-representation at λ = 0.
pub fn k_elem_p_checked(c: [i64; 4], d: [i64; 4]) -> Elem {
    if d[0] + d[2] != c[0] + c[2] || d[1] + d[3] != c[1] + c[3] {
        return Elem::Zero;
    }
    let mm = c[0] - d[0];
    let l = c[1] - d[0] - d[3];
    let e = mm * (-d[0] + d[2] - 2 * d[3] + 1) + 2 * l * (d[1] + d[3] - c[2] + 1);
    k_shape(mm, l, e, c[0] + c[1] - d[3])
}

/// Indeterminate corners are read as the empty n₁-sum of the derivation, i.e. 0.
pub fn k_elem_u(a: [i64; 4], b: [i64; 4]) -> RatQ {
    k_elem_u_checked(a, b).to_ratq().unwrap_or_else(RatQ::zero)
}

pub fn k_elem_p(c: [i64; 4], d: [i64; 4]) -> RatQ {
    k_elem_p_checked(c, d).to_ratq().unwrap_or_else(RatQ::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::LaurentQ;

    fn mq_over() -> RatQ {
        // -q / (1 - q^2)
        RatQ::from_frac(&LaurentQ::monomial((-1).into(), 1), &LaurentQ::one_minus_q_pow(2)).unwrap()
    }

    #[test]
    fn r_examples() {
        assert!(r_elem_u([0; 3], [0; 3], [0; 3]).is_one());
        assert!(r_elem_u([0, 0, 1], [0; 3], [0; 3]).is_zero());
        assert_eq!(r_elem_u([0, 2, 0], [1, 1, 1], [0; 3]), mq_over());
        assert!(r_elem_p([0; 3], [0; 3], [0; 3]).is_one());
        // c1 - d1 + n23 < 0
        assert!(r_elem_p([0, 1, 1], [1, 1, 0], [0; 3]).is_zero());
    }

    #[test]
    fn k_examples() {
        assert!(k_elem_u([0; 4], [0; 4]).is_one());
        assert_eq!(k_elem_u([0; 4], [-1, 1, -1, 0]), mq_over());
        assert!(k_elem_u([0; 4], [1, 0, 0, 0]).is_zero());
        assert!(k_elem_p([0; 4], [0; 4]).is_one());
        assert!(k_elem_p([0; 4], [1, 0, 0, 0]).is_zero());
    }
}
