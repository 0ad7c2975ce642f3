//! u- and p-representations of 𝓡 and 𝓚: closed-form matrix elements, an
//! operator-level oracle, and exact contractions for the tetrahedron and
//! 3D reflection equations.

mod closed;
mod contract;
mod oracle;

pub use closed::{k_elem_p, k_elem_p_checked, k_elem_u, k_elem_u_checked, r_elem_p, r_elem_p_term, r_elem_u, r_elem_u_term, Elem};
pub use contract::{Contraction, Network};
pub use oracle::{oracle_elem, OpKind, Oracle, RepFactor, RepOperator};

use crate::error::{Error, Result};
use crate::qseries::{qbinomial_side, RatQ};
use crate::weylcalc::{REFL_LHS, REFL_RHS, REFL_WEIGHTS, TETRA_LHS, TETRA_RHS, TETRA_WEIGHTS};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    U,
    P,
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u" | "U" => Ok(Basis::U),
            "p" | "P" => Ok(Basis::P),
            _ => Err(Error::UnknownName(s.into())),
        }
    }
}

/// Leg weights of a wiring diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegSpec {
    pub weights: Vec<i64>,
}

impl LegSpec {
    pub fn tetra() -> Self {
        LegSpec { weights: TETRA_WEIGHTS.to_vec() }
    }
    pub fn reflection() -> Self {
        LegSpec { weights: REFL_WEIGHTS.to_vec() }
    }
    pub fn count(&self) -> usize {
        self.weights.len()
    }
}

/// Two words to be compared as operators.
#[derive(Clone)]
pub struct WordPair {
    pub lhs: Network,
    pub rhs: Network,
}

/// Outcome of one `(a, c)` comparison.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairOutcome {
    pub holds: bool,
    pub lhs_paths: usize,
    pub rhs_paths: usize,
    pub corners: usize,
}

impl WordPair {
    /// `⟨a|R124 R135 R236 R456|c⟩` against `⟨a|R456 R236 R135 R124|c⟩`.
    pub fn tetra(basis: Basis, n: &[i64]) -> Result<Self> {
        let w = TETRA_WEIGHTS;
        Ok(WordPair { lhs: Network::new(&TETRA_RHS, &w, basis, n)?, rhs: Network::new(&TETRA_LHS, &w, basis, n)? })
    }

    /// The seven-factor words of the 3D reflection equation, u-basis, λ = 0.
    pub fn reflection() -> Result<Self> {
        let w = REFL_WEIGHTS;
        let z = [0; 9];
        Ok(WordPair { lhs: Network::new(&REFL_LHS, &w, Basis::U, &z)?, rhs: Network::new(&REFL_RHS, &w, Basis::U, &z)? })
    }

    pub fn compare(&self, a: &[i64], c: &[i64], widen: i64) -> Result<PairOutcome> {
        let l = self.lhs.contract(a, c, widen)?;
        let r = self.rhs.contract(a, c, widen)?;
        let holds = if l.terms.is_empty() && r.terms.is_empty() {
            true
        } else {
            let mut all = l.terms.clone();
            all.extend(r.terms.iter().map(|t| {
                let mut t = t.clone();
                t.coef = t.coef.neg();
                t
            }));
            RatQ::sum_terms(&all).is_zero()
        };
        Ok(PairOutcome { holds, lhs_paths: l.paths, rhs_paths: r.paths, corners: l.corners + r.corners })
    }

    pub fn values(&self, a: &[i64], c: &[i64]) -> Result<(RatQ, RatQ)> {
        Ok((self.lhs.contract(a, c, 0)?.value(), self.rhs.contract(a, c, 0)?.value()))
    }

    /// Range-enlargement check: widening every derived range by `by` leaves
    /// both sides unchanged.
    pub fn enlargement_stable(&self, a: &[i64], c: &[i64], by: i64) -> Result<bool> {
        for net in [&self.lhs, &self.rhs] {
            if net.contract(a, c, 0)?.value() != net.contract(a, c, by)?.value() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn verify_tetrahedron_rep(basis: Basis, a: &[i64; 6], c: &[i64; 6], n: &[i64; 6]) -> Result<bool> {
    Ok(WordPair::tetra(basis, n)?.compare(a, c, 0)?.holds)
}

pub fn verify_reflection_rep(a: &[i64; 9], c: &[i64; 9]) -> Result<bool> {
    Ok(WordPair::reflection()?.compare(a, c, 0)?.holds)
}

/// Totals of a window sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub cases: usize,
    pub passed: usize,
    pub nonzero: usize,
    pub corners: usize,
    pub max_paths: usize,
    /// First few failing `(a, c)`.
    pub failures: Vec<(Vec<i64>, Vec<i64>)>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.cases == self.passed
    }
    fn merge(mut self, o: SweepReport) -> SweepReport {
        self.cases += o.cases;
        self.passed += o.passed;
        self.nonzero += o.nonzero;
        self.corners += o.corners;
        self.max_paths = self.max_paths.max(o.max_paths);
        self.failures.extend(o.failures);
        self.failures.truncate(10);
        self
    }
}

/// All vectors in `[-w, w]^m`.
pub fn window(m: usize, w: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out.into_iter().flat_map(|v| (-w..=w).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Groups window vectors by their conservation-law values.
pub fn law_buckets(laws: &[Vec<i64>], m: usize, w: i64) -> Vec<Vec<Vec<i64>>> {
    let mut map: HashMap<Vec<i64>, Vec<Vec<i64>>> = HashMap::new();
    for v in window(m, w) {
        let key: Vec<i64> = laws.iter().map(|l| l.iter().zip(&v).map(|(x, y)| x * y).sum()).collect();
        map.entry(key).or_default().push(v);
    }
    let mut b: Vec<_> = map.into_iter().collect();
    b.sort();
    b.into_iter().map(|(_, v)| v).collect()
}

/// Every conservation-consistent `(a, c)` in the window, in parallel on the
/// current rayon pool. u-basis only: the laws are u-basis conservation laws.
pub fn sweep_window(pair: &WordPair, w: i64) -> Result<SweepReport> {
    if pair.lhs.basis != Basis::U {
        return Err(Error::Parse("window sweeps use the u-basis".into()));
    }
    let laws = pair.lhs.conservation_laws();
    let buckets = law_buckets(&laws, pair.lhs.m, w);
    buckets
        .par_iter()
        .map(|bucket| {
            let mut rep = SweepReport::default();
            for a in bucket {
                for c in bucket {
                    let o = pair.compare(a, c, 0)?;
                    rep.cases += 1;
                    rep.corners += o.corners;
                    rep.max_paths = rep.max_paths.max(o.lhs_paths.max(o.rhs_paths));
                    if o.lhs_paths + o.rhs_paths > 0 {
                        rep.nonzero += 1;
                    }
                    if o.holds {
                        rep.passed += 1;
                    } else if rep.failures.len() < 10 {
                        rep.failures.push((a.clone(), c.clone()));
                    }
                }
            }
            Ok(rep)
        })
        .try_reduce(SweepReport::default, |x, y| Ok(x.merge(y)))
}

/// `(r, s, t)` of the q-binomial duality for a tetrahedron index choice.
pub fn duality_parameters(a: &[i64; 6], c: &[i64; 6]) -> (i64, i64, i64) {
    let r = -a[0] + 2 * a[3] + a[4] - a[5] + c[0] - c[1] - c[3];
    let s = a[3] + a[4] - a[5] - c[1];
    let t = a[0] + a[1] + a[2] - a[3] - a[4] - c[0];
    (r, s, t)
}

/// Spot check of the distilled identity: at λ = 0 both sides of the
/// tetrahedron equation are a common `±q^e` times the two sides of the
/// q-binomial duality at `(r, s, t)`.
pub fn qbinomial_spot_check(a: &[i64; 6], c: &[i64; 6]) -> Result<bool> {
    let pair = WordPair::tetra(Basis::U, &[0; 6])?;
    let (l, r) = pair.values(a, c)?;
    let (rr, ss, tt) = duality_parameters(a, c);
    let (dl, dr) = (qbinomial_side(rr, ss, tt), qbinomial_side(ss, rr, tt));
    if dl.is_zero() || dr.is_zero() {
        return Ok(l.is_zero() && r.is_zero() && dl.is_zero() && dr.is_zero());
    }
    let (fl, fr) = (l.div(&dl)?, r.div(&dr)?);
    let signed_monomial = fl
        .as_laurent()
        .and_then(|p| p.as_monomial().map(|(_, c)| c.is_one() || c.neg().is_one()))
        .unwrap_or(false);
    Ok(signed_monomial && fl == fr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_indices() {
        assert!(verify_tetrahedron_rep(Basis::U, &[0; 6], &[0; 6], &[0; 6]).unwrap());
        assert!(verify_reflection_rep(&[0; 9], &[0; 9]).unwrap());
    }

    #[test]
    fn window_enumeration() {
        assert_eq!(window(2, 1).len(), 9);
        assert_eq!(window(3, 2).len(), 125);
    }
}
