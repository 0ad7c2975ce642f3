//! Quantum y-seeds, the monomial parts τ of mutation, the adjoint action of
//! Ψ_q, and checks of the periodicity identities in truncated cone series.
//!
//! Every element lives in the torus of the initial seed. Truncation is by
//! total degree of the cone part, relative to the leading monomial.

mod series;
mod torus;

pub use series::{degree, in_cone, ConeSeries, Series, TorusElem};
pub use torus::{Lattice, Torus};

use crate::error::{Error, Result};
use crate::qseries::{psi_series_coeff, RatQ};
use crate::quiver::{builtin_quiver, BuiltinQuiver, Permutation, Seed};
use crate::tropical::{Sign, TropSeed};
use serde::{Deserialize, Serialize};
use std::fmt;

pub const DEFAULT_ORDER: i64 = 6;

/// `Ψ_{q^base}(q^{arg_qpow} Y^α)` (or its inverse) truncated at `order`.
pub fn psi_truncated(t: &Torus, alpha: &[i64], base: i64, inverse: bool, arg_qpow: i64, order: i64) -> Result<Series> {
    if !in_cone(alpha) || degree(alpha) == 0 {
        return Err(Error::ConeViolation(alpha.to_vec()));
    }
    let mut s = Series::one(t.dim(), order);
    let d = degree(alpha);
    let mut n = 1;
    while n * d <= order {
        let g: Lattice = alpha.iter().map(|a| a * n).collect();
        s.add_term(g, psi_series_coeff(n, inverse, base).shift(arg_qpow * n));
        n += 1;
    }
    Ok(s)
}

fn as_cone(s: Series) -> ConeSeries {
    let dim = s.dim();
    ConeSeries { coef: RatQ::one(), mono: vec![0; dim], tail: s }
}

/// Outcome of a series identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityOutcome {
    pub name: String,
    pub order: i64,
    pub holds: bool,
    /// `(exponent, lhs coefficient, rhs coefficient)` at the first mismatch.
    pub first_difference: Option<(Lattice, String, String)>,
}

impl IdentityOutcome {
    fn compare(name: &str, order: i64, l: &Series, r: &Series) -> Self {
        let first_difference = l.first_difference(r).map(|(k, a, b)| (k, a.to_string(), b.to_string()));
        IdentityOutcome { name: name.into(), order, holds: first_difference.is_none(), first_difference }
    }
    fn compare_cone(name: &str, order: i64, l: &ConeSeries, r: &ConeSeries) -> Self {
        if l.coef != r.coef || l.mono != r.mono {
            return IdentityOutcome {
                name: name.into(),
                order,
                holds: false,
                first_difference: Some((l.mono.clone(), format!("{}·Y^{:?}", l.coef, l.mono), format!("{}·Y^{:?}", r.coef, r.mono))),
            };
        }
        Self::compare(name, order, &l.tail, &r.tail)
    }
}

impl fmt::Display for IdentityOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {}): {}", self.name, self.order, if self.holds { "holds" } else { "FAILS" })?;
        if let Some((k, a, b)) = &self.first_difference {
            write!(f, "; first difference at Y^{k:?}: {a} vs {b}")?;
        }
        Ok(())
    }
}

/// Pentagon Ψ(U)Ψ(W) = Ψ(W)Ψ(q^{-1}UW)Ψ(U) for U = Y^αU, W = Y^αW with UW = q²WU.
pub fn pentagon_check(t: &Torus, a_u: &[i64], a_w: &[i64], order: i64) -> Result<IdentityOutcome> {
    let p = t.pairing(a_u, a_w)?;
    if p != 1 {
        return Err(Error::PentagonHypothesis(p));
    }
    let uw: Lattice = a_u.iter().zip(a_w).map(|(a, b)| a + b).collect();
    let pu = psi_truncated(t, a_u, 1, false, 0, order)?;
    let pw = psi_truncated(t, a_w, 1, false, 0, order)?;
    let puw = psi_truncated(t, &uw, 1, false, 0, order)?;
    let l = pu.mul(&pw, t)?;
    let r = pw.mul(&puw, t)?.mul(&pu, t)?;
    Ok(IdentityOutcome::compare("pentagon", order, &l, &r))
}

/// Ψ_Q(Q²U) Ψ_Q(U)^{-1} = 1 + QU with Q = q^base.
pub fn recursion_check(t: &Torus, alpha: &[i64], base: i64, order: i64) -> Result<IdentityOutcome> {
    let a = psi_truncated(t, alpha, base, false, 2 * base, order)?;
    let b = psi_truncated(t, alpha, base, true, 0, order)?;
    let l = a.mul(&b, t)?;
    let mut r = Series::one(t.dim(), order);
    r.add_term(alpha.to_vec(), RatQ::q_pow(base));
    Ok(IdentityOutcome::compare("recursion", order, &l, &r))
}

/// Closed form of `Ad(Ψ_{q^base}(Y^α)^{±1})` on `coef·Y^γ`:
/// `X ∏_{j=1}^{m}(1+Q^{2j-1}U)` for m = ⟨α,γ⟩/base > 0, and
/// `X ∏_{j=1}^{|m|}(1+Q^{1-2j}U)^{-1}` for m < 0. The inverse flips the exponents.
pub fn ad_psi(t: &Torus, coef: &RatQ, gamma: &[i64], alpha: &[i64], base: i64, inverse: bool, order: i64) -> Result<ConeSeries> {
    if !in_cone(alpha) || degree(alpha) == 0 {
        return Err(Error::ConeViolation(alpha.to_vec()));
    }
    let p = t.pairing(alpha, gamma)?;
    if p % base != 0 {
        return Err(Error::NonIntegerExponent(format!("<alpha,gamma> = {p} not a multiple of {base}")));
    }
    let m = p / base;
    let mut acc = ConeSeries::monomial(coef.clone(), gamma.to_vec(), order);
    let u = ConeSeries::monomial(RatQ::one(), alpha.to_vec(), order);
    for j in 1..=m.abs() {
        let (qe, e) = if m > 0 { (base * (2 * j - 1), 1) } else { (base * (1 - 2 * j), -1) };
        let e = if inverse { -e } else { e };
        let f = ConeSeries::one_plus(&RatQ::q_pow(qe), &u, e, t)?;
        acc = acc.mul(&f, t)?;
    }
    Ok(acc)
}

/// `Ad(Ψ_{q^base}(Y^α)^{δ})` applied to an arbitrary cone element, by series products.
pub fn ad_psi_series(t: &Torus, x: &ConeSeries, alpha: &[i64], base: i64, delta: Sign, order: i64) -> Result<ConeSeries> {
    let p = as_cone(psi_truncated(t, alpha, base, false, 0, order)?);
    let pi = as_cone(psi_truncated(t, alpha, base, true, 0, order)?);
    if delta > 0 {
        p.mul(x, t)?.mul(&pi, t)
    } else {
        pi.mul(x, t)?.mul(&p, t)
    }
}

/// Lattice part of a torus morphism `T(B') → T(B)`: column i is the image of e'_i.
///
/// The monomial maps used here carry no extra q-power: in the symmetric
/// normalization Y'^v ↦ Y^{Lv} is already an algebra map when L preserves
/// the pairing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauMap {
    pub cols: Vec<Lattice>,
}

impl TauMap {
    pub fn identity(n: usize) -> Self {
        TauMap { cols: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect() }
    }
    pub fn apply(&self, v: &[i64]) -> Lattice {
        let n = self.cols[0].len();
        let mut r = vec![0; n];
        for (vi, c) in v.iter().zip(&self.cols) {
            if *vi != 0 {
                for j in 0..n {
                    r[j] += vi * c[j];
                }
            }
        }
        r
    }
    /// `self ∘ other`.
    pub fn compose(&self, other: &TauMap) -> TauMap {
        TauMap { cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }
    /// Relabeling `Y'_{σ(i)} ↦ Y_i`.
    pub fn permutation(p: &Permutation) -> TauMap {
        let n = p.len();
        let mut cols = vec![vec![0; n]; n];
        for i in 1..=n {
            cols[p.image(i) - 1][i - 1] = 1;
        }
        TauMap { cols }
    }
    /// Whether ⟨Lv,Lw⟩_B = ⟨v,w⟩_{B'} for all generators.
    pub fn preserves_pairing(&self, from: &Seed, to: &Seed) -> bool {
        let t = Torus::new(to);
        let n = from.n;
        (1..=n).all(|i| (1..=n).all(|j| t.pairing2(&self.cols[i - 1], &self.cols[j - 1]) == from.bhat2(i, j)))
    }
}

/// τ_{k,ε}: T(μ_k B) → T(B), Y'_k ↦ Y_k^{-1}, Y'_i ↦ Y^{e_i + [ε b_ik]_+ e_k}.
pub fn tau_map(seed: &Seed, k: usize, eps: Sign) -> Result<TauMap> {
    if !seed.is_mutable(k) {
        return Err(if k == 0 || k > seed.n { Error::VertexOutOfRange(k) } else { Error::FrozenVertex(k) });
    }
    let n = seed.n;
    let mut cols = TauMap::identity(n).cols;
    for i in 1..=n {
        if i == k {
            cols[i - 1][k - 1] = -1;
        } else {
            let (b, _) = seed.b(i, k);
            cols[i - 1][k - 1] = (eps as i64 * b).max(0);
        }
    }
    Ok(TauMap { cols })
}

/// `τ_{i1,ε1} ∘ ... ∘ τ_{iL,εL}` with each τ built on the intermediate seed.
/// Returns the composite and the final seed.
pub fn tau_composite(start: &Seed, seq: &[usize], signs: &[Sign]) -> Result<(TauMap, Seed)> {
    if seq.len() != signs.len() {
        return Err(Error::LengthMismatch(format!("{} vertices, {} signs", seq.len(), signs.len())));
    }
    let mut m = TauMap::identity(start.n);
    let mut s = start.clone();
    for (&k, &e) in seq.iter().zip(signs) {
        m = m.compose(&tau_map(&s, k, e)?);
        s = s.mutate(k)?;
    }
    Ok((m, s))
}

/// Quantum y-variables of a seed, written in the initial torus.
#[derive(Clone, Debug)]
pub struct QuantumYSeed {
    pub seed: Seed,
    pub y: Vec<ConeSeries>,
}

impl QuantumYSeed {
    pub fn initial(seed: &Seed, order: i64) -> Self {
        let y = (1..=seed.n).map(|i| ConeSeries::generator(seed.n, i, order)).collect();
        QuantumYSeed { seed: seed.clone(), y }
    }
}

/// One quantum mutation: Y'_k = Y_k^{-1} and, for i ≠ k,
/// Y'_i = Y_i ∏_{j=1}^{|b_ik|} (1 + q_k^{2j-1} Y_k^{-sgn b_ik})^{-sgn b_ik}.
pub fn mutate_quantum_y(t: &Torus, st: &QuantumYSeed, k: usize) -> Result<QuantumYSeed> {
    let seed = st.seed.mutate(k)?;
    let dk = st.seed.d[k - 1];
    let yk = &st.y[k - 1];
    let yk_inv = yk.inv(t)?;
    let mut y = st.y.clone();
    for i in 1..=st.seed.n {
        if i == k {
            y[i - 1] = yk_inv.clone();
            continue;
        }
        let (b, _) = st.seed.b(i, k);
        if b == 0 {
            continue;
        }
        let s = b.signum();
        let x = if s > 0 { &yk_inv } else { yk };
        let mut acc = st.y[i - 1].clone();
        for j in 1..=b.abs() {
            let f = ConeSeries::one_plus(&RatQ::q_pow(dk * (2 * j - 1)), x, -s, t)?;
            acc = acc.mul(&f, t)?;
        }
        y[i - 1] = acc;
    }
    Ok(QuantumYSeed { seed, y })
}

/// β_r = τ_{i1}⋯τ_{i(r-1)}(e_{i_r}) for each step.
pub fn beta_vectors(start: &Seed, seq: &[usize], signs: &[Sign]) -> Result<Vec<Lattice>> {
    let mut out = Vec::with_capacity(seq.len());
    let mut m = TauMap::identity(start.n);
    let mut s = start.clone();
    for (&k, &e) in seq.iter().zip(signs) {
        out.push(m.cols[k - 1].clone());
        m = m.compose(&tau_map(&s, k, e)?);
        s = s.mutate(k)?;
    }
    Ok(out)
}

/// Checks, after every step t and for every i, that the mutated Y_i(t+1)
/// equals Ad(Ψ(Y^{δ1β1})^{δ1})⋯Ad(Ψ(Y^{δtβt})^{δt}) applied to τ_{i1}⋯τ_{it}(Y_i).
pub fn verify_ad_tau_decomposition(start: &Seed, seq: &[usize], signs: &[Sign], order: i64) -> Result<IdentityOutcome> {
    if seq.len() != signs.len() {
        return Err(Error::LengthMismatch(format!("{} vertices, {} signs", seq.len(), signs.len())));
    }
    let t = Torus::new(start);
    let betas = beta_vectors(start, seq, signs)?;
    let mut st = QuantumYSeed::initial(start, order);
    let mut m = TauMap::identity(start.n);
    let mut s = start.clone();
    for step in 0..seq.len() {
        let k = seq[step];
        m = m.compose(&tau_map(&s, k, signs[step])?);
        s = s.mutate(k)?;
        st = mutate_quantum_y(&t, &st, k)?;
        for i in 1..=start.n {
            let mut x = ConeSeries::monomial(RatQ::one(), m.cols[i - 1].clone(), order);
            for r in (0..=step).rev() {
                let d = signs[r];
                let arg: Lattice = betas[r].iter().map(|b| b * d as i64).collect();
                x = ad_psi_series(&t, &x, &arg, start.d[seq[r] - 1], d, order)?;
            }
            let o = IdentityOutcome::compare_cone(&format!("ad-tau step {} Y{}", step + 1, i), order, &st.y[i - 1], &x);
            if !o.holds {
                return Ok(o);
            }
        }
    }
    Ok(IdentityOutcome { name: "ad-tau".into(), order, holds: true, first_difference: None })
}

/// One factor Ψ_{q^base}(Y^α)^{±1} of a dilogarithm product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiFactor {
    pub alpha: Lattice,
    pub base: i64,
    pub inverse: bool,
}

/// Factors Ψ_{q_{i_t}}(Y^{ε_t c_t})^{ε_t} with c_t the c-vector of y_{i_t}(t).
pub fn dilog_factors(start: &Seed, seq: &[usize]) -> Result<Vec<PsiFactor>> {
    let mut tr = TropSeed::initial(start);
    let mut out = Vec::with_capacity(seq.len());
    for &k in seq {
        let c = tr.c[k - 1].clone();
        let (next, e) = tr.mutate(k)?;
        out.push(PsiFactor {
            alpha: c.iter().map(|v| v * e as i64).collect(),
            base: start.d[k - 1],
            inverse: e < 0,
        });
        tr = next;
    }
    Ok(out)
}

pub fn dilog_product(t: &Torus, factors: &[PsiFactor], order: i64) -> Result<Series> {
    let mut acc = Series::one(t.dim(), order);
    for f in factors {
        acc = acc.mul(&psi_truncated(t, &f.alpha, f.base, f.inverse, 0, order)?, t)?;
    }
    Ok(acc)
}

/// ∏ over `seq_a` equals ∏ over `seq_b`.
pub fn verify_dilog_identity(start: &Seed, seq_a: &[usize], seq_b: &[usize], order: i64) -> Result<IdentityOutcome> {
    let t = Torus::new(start);
    let l = dilog_product(&t, &dilog_factors(start, seq_a)?, order)?;
    let r = dilog_product(&t, &dilog_factors(start, seq_b)?, order)?;
    Ok(IdentityOutcome::compare("dilog", order, &l, &r))
}

/// Outcome of a τ identity: equality of the composite lattice maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauOutcome {
    pub holds: bool,
    pub lhs: TauMap,
    pub rhs: TauMap,
    pub preserves_pairing: bool,
    /// First generator whose images differ.
    pub first_difference: Option<usize>,
}

/// `τ(seq_a) σ_a = τ(seq_b) σ_b` as morphisms into the start torus.
pub fn verify_tau_identity(
    start: &Seed,
    seq_a: &[usize],
    signs_a: &[Sign],
    perm_a: Option<&Permutation>,
    seq_b: &[usize],
    signs_b: &[Sign],
    perm_b: Option<&Permutation>,
) -> Result<TauOutcome> {
    let side = |seq: &[usize], signs: &[Sign], p: Option<&Permutation>| -> Result<(TauMap, Seed)> {
        let (m, s) = tau_composite(start, seq, signs)?;
        match p {
            Some(p) => Ok((m.compose(&TauMap::permutation(p)), s.permute(p)?)),
            None => Ok((m, s)),
        }
    };
    let (lhs, sa) = side(seq_a, signs_a, perm_a)?;
    let (rhs, sb) = side(seq_b, signs_b, perm_b)?;
    let first_difference = (0..start.n).find(|&i| lhs.cols[i] != rhs.cols[i]).map(|i| i + 1);
    let preserves_pairing = sa == sb && lhs.preserves_pairing(&sa, start) && rhs.preserves_pairing(&sb, start);
    Ok(TauOutcome { holds: first_difference.is_none() && preserves_pairing, lhs, rhs, preserves_pairing, first_difference })
}

/// A named periodicity instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub start: BuiltinQuiver,
    pub seq_a: Vec<usize>,
    pub perm_a: Option<Vec<usize>>,
    pub seq_b: Vec<usize>,
    pub perm_b: Option<Vec<usize>>,
}

impl Instance {
    pub fn seed(&self) -> Seed {
        builtin_quiver(self.start)
    }
    fn perm(&self, p: &Option<Vec<usize>>) -> Result<Option<Permutation>> {
        p.as_ref().map(|v| Permutation::from_images(v.clone())).transpose()
    }
    pub fn verify_tau(&self) -> Result<TauOutcome> {
        let s = self.seed();
        let sa = crate::tropical::sign_sequence(&s, &self.seq_a)?;
        let sb = crate::tropical::sign_sequence(&s, &self.seq_b)?;
        let (pa, pb) = (self.perm(&self.perm_a)?, self.perm(&self.perm_b)?);
        verify_tau_identity(&s, &self.seq_a, &sa, pa.as_ref(), &self.seq_b, &sb, pb.as_ref())
    }
    pub fn verify_dilog(&self, order: i64) -> Result<IdentityOutcome> {
        verify_dilog_identity(&self.seed(), &self.seq_a, &self.seq_b, order)
    }
}

/// The R-type instance on J123121 and the K-type instance on J123123123.
pub fn instance(name: &str) -> Result<Instance> {
    match name {
        "r" | "R" => Ok(Instance {
            start: BuiltinQuiver::J123121,
            seq_a: vec![8, 4, 7, 8],
            perm_a: Some(vec![1, 2, 3, 7, 5, 6, 4, 8, 9]),
            seq_b: vec![7, 4, 8, 7],
            perm_b: Some(vec![1, 2, 3, 8, 5, 6, 7, 4, 9]),
        }),
        "k" | "K" => Ok(Instance {
            start: BuiltinQuiver::J123123123,
            seq_a: vec![10, 2, 6, 2, 7, 11, 3, 6, 3, 2, 10, 2, 11],
            perm_a: None,
            seq_b: vec![11, 3, 7, 3, 2, 6, 2, 11, 10, 3, 6, 3, 7],
            perm_b: None,
        }),
        _ => Err(Error::UnknownName(name.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j121() -> Torus {
        Torus::new(&builtin_quiver(BuiltinQuiver::J121))
    }

    #[test]
    fn psi_inverse_product_is_one() {
        let t = j121();
        let a = psi_truncated(&t, &[0, 1, 0, 1, 0], 1, false, 0, 6).unwrap();
        let b = psi_truncated(&t, &[0, 1, 0, 1, 0], 1, true, 0, 6).unwrap();
        assert_eq!(a.mul(&b, &t).unwrap(), Series::one(5, 6));
    }

    #[test]
    fn cone_inverse_roundtrip() {
        let t = j121();
        let x = ConeSeries::one_plus(&RatQ::q_pow(1), &ConeSeries::generator(5, 4, 6), 1, &t).unwrap();
        let y = ConeSeries::generator(5, 1, 6).mul(&x, &t).unwrap();
        let one = y.mul(&y.inv(&t).unwrap(), &t).unwrap();
        assert_eq!(one, ConeSeries::monomial(RatQ::one(), vec![0; 5], 6));
    }

    #[test]
    fn negative_cone_normalization() {
        let t = j121();
        let x = ConeSeries::generator(5, 4, 6).inv(&t).unwrap();
        let f = ConeSeries::one_plus(&RatQ::q_pow(1), &x, 1, &t).unwrap();
        assert_eq!(f.coef, RatQ::q_pow(1));
        assert_eq!(f.mono, vec![0, 0, 0, -1, 0]);
        assert_eq!(f.tail.coeff(&[0, 0, 0, 1, 0]), RatQ::q_pow(-1));
    }

    #[test]
    fn mixed_sign_is_error() {
        let t = j121();
        let x = ConeSeries::monomial(RatQ::one(), vec![1, 0, 0, -1, 0], 4);
        assert!(matches!(ConeSeries::one_plus(&RatQ::one(), &x, 1, &t), Err(Error::ConeViolation(_))));
    }

    #[test]
    fn tau_is_pairing_preserving() {
        let s = builtin_quiver(BuiltinQuiver::J1212);
        for k in s.mutable() {
            for e in [1, -1] {
                let m = tau_map(&s, k, e).unwrap();
                assert!(m.preserves_pairing(&s.mutate(k).unwrap(), &s));
            }
        }
    }
}
