//! Brute-force matrix elements: apply each factor of 𝓡 / 𝓚 to basis
//! vectors exactly and pick out the target component.

use super::Basis;
use crate::error::{Error, Result};
use crate::qseries::{psi_series_term, QTerm, RatQ};
use crate::weylcalc::{factor_args, Form, Gen, OpIdx, Q};
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

/// One factor of an operator, legs 1-based.
#[derive(Clone, Debug)]
pub enum RepFactor {
    /// `Ψ_{q^base}(e^{arg})^{±1}`; the λ part of `arg` gives the κ prefactor.
    Dilog { arg: Form, base: i64, inverse: bool },
    /// ρ_ij.
    Swap(usize, usize),
    /// `e^{p_i Σ c_j u_j / ħ}`.
    ExpPU { i: usize, cs: Vec<(usize, i64)> },
    /// `e^{Σ c(λ) g / ħ}` with central `c`.
    ExpLam(Vec<(Form, Gen)>),
}

/// Product of factors, leftmost first.
#[derive(Clone, Debug)]
pub struct RepOperator {
    pub weights: Vec<i64>,
    pub factors: Vec<RepFactor>,
}

impl RepOperator {
    /// `𝓡_123` with α = 0: Ψ_q(κ1κ3⁻¹ e^{p1+u1+p3−u3−p2}) ρ23 e^{p1(u3−u2)/ħ} e^{λ23(u3−u1)/ħ}.
    pub fn r123() -> Self {
        let w = vec![1, 1, 1];
        let mut factors: Vec<RepFactor> = dilogs(&w, OpIdx::R(1, 2, 3));
        let l23 = Form::lam_diff(3, 2, 3);
        factors.push(RepFactor::Swap(2, 3));
        factors.push(RepFactor::ExpPU { i: 1, cs: vec![(3, 1), (2, -1)] });
        factors.push(RepFactor::ExpLam(vec![(l23.clone(), Gen::U(3)), (l23.scale(&Q::from_integer((-1).into())), Gen::U(1))]));
        RepOperator { weights: w, factors }
    }

    /// `𝓚_1234` at λ = 0: Ψ_{q²}(A) Ψ_q(B) Ψ_{q²}(A)⁻¹ ρ24 e^{p1(u4−u2)/ħ}.
    pub fn k1234() -> Self {
        let w = vec![1, 2, 1, 2];
        let mut factors = dilogs(&w, OpIdx::K(1, 2, 3, 4));
        factors.push(RepFactor::Swap(2, 4));
        factors.push(RepFactor::ExpPU { i: 1, cs: vec![(4, 1), (2, -1)] });
        RepOperator { weights: w, factors }
    }

    pub fn legs(&self) -> usize {
        self.weights.len()
    }
}

fn dilogs(w: &[i64], o: OpIdx) -> Vec<RepFactor> {
    factor_args(w, o).into_iter().map(|(arg, base, inverse)| RepFactor::Dilog { arg, base, inverse }).collect()
}

fn int(x: &Q, what: &str) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::NonIntegerExponent(format!("{what}: {x}")));
    }
    x.to_integer().to_i64().ok_or_else(|| Error::Numeric(format!("{what} overflows")))
}

/// `Σ_i c_i n_i` for the λ part of `f`, which must be an integer.
fn lam_value(f: &Form, n: &[i64]) -> Result<i64> {
    let mut s = Q::zero();
    for (i, &ni) in n.iter().enumerate() {
        s += f.get(Gen::Lam(i + 1)) * Q::from_integer(ni.into());
    }
    int(&s, "spectral exponent")
}

/// Result of replaying the factors on one basis vector for fixed series orders.
struct Replay {
    state: Vec<i64>,
    qpow2: i64,
    coef: QTerm,
}

/// Oracle for one operator and basis; precomputes the series shift data.
pub struct Oracle {
    op: RepOperator,
    basis: Basis,
    series: Vec<usize>,
    // Σ n_j W_j reaches the target; W_j per series factor
    shifts: Vec<Vec<i64>>,
    // y with y·W_j ≥ 1 for all j, when the system has free variables
    cone: Option<Vec<i64>>,
    rank_free: Vec<usize>,
}

impl Oracle {
    pub fn new(op: RepOperator, basis: Basis) -> Result<Self> {
        let m = op.legs();
        let series: Vec<usize> =
            op.factors.iter().enumerate().filter(|(_, f)| matches!(f, RepFactor::Dilog { .. })).map(|(i, _)| i).collect();
        let mut o = Oracle { op, basis, series, shifts: vec![], cone: None, rank_free: vec![] };
        let zero_n = vec![0; m];
        let base = vec![0; m];
        let f0 = o.replay(&base, &zero_n, &vec![0; o.series.len()])?.state;
        for j in 0..o.series.len() {
            let mut ns = vec![0; o.series.len()];
            ns[j] = 1;
            let fj = o.replay(&base, &zero_n, &ns)?.state;
            o.shifts.push(fj.iter().zip(&f0).map(|(a, b)| a - b).collect());
        }
        o.rank_free = free_columns(&o.shifts, m);
        if !o.rank_free.is_empty() {
            o.cone = find_cone(&o.shifts, m);
            if o.cone.is_none() {
                return Err(Error::Propagation("series shifts do not span a pointed cone".into()));
            }
        }
        Ok(o)
    }

    fn replay(&self, b: &[i64], n: &[i64], ns: &[i64]) -> Result<Replay> {
        let w = &self.op.weights;
        let mut st = b.to_vec();
        let mut qpow2 = 0i64;
        let mut coef = QTerm::one();
        let mut si = self.series.len();
        for f in self.op.factors.iter().rev() {
            match f {
                RepFactor::Dilog { arg, base, inverse } => {
                    si -= 1;
                    let k = ns[si];
                    coef = coef.mul(&psi_series_term(k, *inverse, *base));
                    qpow2 += 2 * k * lam_value(arg, n)?;
                    for i in 1..=st.len() {
                        let x = int(arg.p(i), "p exponent")?;
                        let y = int(arg.u(i), "u exponent")?;
                        let wi = w[i - 1];
                        let s = &mut st[i - 1];
                        match self.basis {
                            Basis::U => {
                                qpow2 += wi * (2 * k * y * *s - k * k * x * y);
                                *s -= k * x;
                            }
                            Basis::P => {
                                qpow2 += wi * (2 * k * x * *s + k * k * x * y);
                                *s += k * y;
                            }
                        }
                    }
                }
                RepFactor::Swap(i, j) => st.swap(i - 1, j - 1),
                RepFactor::ExpPU { i, cs } => match self.basis {
                    Basis::U => {
                        let k: i64 = cs.iter().map(|&(j, c)| c * w[j - 1] * st[j - 1]).sum();
                        st[i - 1] -= k;
                    }
                    Basis::P => {
                        let v = w[i - 1] * st[i - 1];
                        for &(j, c) in cs {
                            st[j - 1] += c * v;
                        }
                    }
                },
                RepFactor::ExpLam(terms) => {
                    for (c, g) in terms {
                        let k = lam_value(c, n)?;
                        match (g, self.basis) {
                            (Gen::U(i), Basis::U) => qpow2 += 2 * k * w[i - 1] * st[i - 1],
                            (Gen::U(i), Basis::P) => st[i - 1] += k,
                            (Gen::P(i), Basis::U) => st[i - 1] -= k,
                            (Gen::P(i), Basis::P) => qpow2 += 2 * k * w[i - 1] * st[i - 1],
                            (Gen::Lam(_), _) => {}
                        }
                    }
                }
            }
        }
        Ok(Replay { state: st, qpow2, coef })
    }

    /// `⟨a|O|b⟩` at spectral parameters `n`.
    pub fn elem(&self, a: &[i64], b: &[i64], n: &[i64]) -> Result<RatQ> {
        let m = self.op.legs();
        if a.len() != m || b.len() != m || n.len() != m {
            return Err(Error::LengthMismatch(format!("expected {m} legs")));
        }
        let k = self.series.len();
        let f0 = self.replay(b, n, &vec![0; k])?.state;
        let t: Vec<i64> = a.iter().zip(&f0).map(|(x, y)| x - y).collect();
        let mut terms = Vec::new();
        for ns in self.solutions(&t) {
            let r = self.replay(b, n, &ns)?;
            if r.state != a {
                return Err(Error::Numeric("operator action is not affine in the series orders".into()));
            }
            if r.qpow2 % 2 != 0 {
                return Err(Error::HalfIntegerPower(r.qpow2));
            }
            terms.push(r.coef.mul(&QTerm::monomial(1, r.qpow2 / 2)));
        }
        Ok(RatQ::sum_terms(&terms))
    }

    /// Nonnegative integer `ns` with `Σ ns_j W_j = t`.
    fn solutions(&self, t: &[i64]) -> Vec<Vec<i64>> {
        let bound = match &self.cone {
            Some(y) => y.iter().zip(t).map(|(a, b)| a * b).sum::<i64>(),
            None => 0,
        };
        let mut out = Vec::new();
        let mut free = vec![0i64; self.rank_free.len()];
        loop {
            if let Some(ns) = solve_with_free(&self.shifts, t, &self.rank_free, &free) {
                if ns.iter().all(|&x| x >= 0) {
                    out.push(ns);
                }
            }
            // next free assignment with Σ free ≤ bound
            let mut idx = 0;
            loop {
                if idx == free.len() {
                    return out;
                }
                free[idx] += 1;
                if free.iter().sum::<i64>() <= bound {
                    break;
                }
                free[idx] = 0;
                idx += 1;
            }
        }
    }
}

/// Columns left free after row reduction of `[W_0 … W_{k-1}]`.
fn free_columns(cols: &[Vec<i64>], m: usize) -> Vec<usize> {
    let mut rows: Vec<Vec<Rational64>> =
        (0..m).map(|r| cols.iter().map(|c| Rational64::from_integer(c[r])).collect()).collect();
    let mut free = Vec::new();
    let mut row = 0;
    for col in 0..cols.len() {
        let Some(p) = (row..m).find(|&r| !rows[r][col].is_zero()) else {
            free.push(col);
            continue;
        };
        rows.swap(row, p);
        let pv = rows[row][col];
        for r in 0..m {
            if r != row && !rows[r][col].is_zero() {
                let f = rows[r][col] / pv;
                for c in 0..cols.len() {
                    let v = rows[row][c] * f;
                    rows[r][c] -= v;
                }
            }
        }
        row += 1;
    }
    free
}

/// Solves for the pivot unknowns given the free ones; `None` if inconsistent
/// or non-integral.
fn solve_with_free(cols: &[Vec<i64>], t: &[i64], free: &[usize], fv: &[i64]) -> Option<Vec<i64>> {
    let m = t.len();
    let mut rhs: Vec<i64> = t.to_vec();
    for (&c, &v) in free.iter().zip(fv) {
        for r in 0..m {
            rhs[r] -= cols[c][r] * v;
        }
    }
    let piv: Vec<usize> = (0..cols.len()).filter(|c| !free.contains(c)).collect();
    let sub: Vec<Vec<Q>> = piv.iter().map(|&c| cols[c].iter().map(|&x| Q::from_integer(x.into())).collect()).collect();
    let b: Vec<Q> = rhs.iter().map(|&x| Q::from_integer(x.into())).collect();
    let x = if piv.is_empty() {
        if rhs.iter().any(|&v| v != 0) {
            return None;
        }
        vec![]
    } else {
        crate::weylcalc::solve(&sub, &b)?
    };
    let mut ns = vec![0i64; cols.len()];
    for (&c, v) in free.iter().zip(fv) {
        ns[c] = *v;
    }
    for (&c, v) in piv.iter().zip(&x) {
        if !v.is_integer() {
            return None;
        }
        ns[c] = v.to_integer().to_i64()?;
    }
    Some(ns)
}

/// Small integer `y` with `y·W_j ≥ 1` for every shift, so `Σ ns ≤ y·t`.
fn find_cone(cols: &[Vec<i64>], m: usize) -> Option<Vec<i64>> {
    let mut y = vec![-2i64; m];
    loop {
        if cols.iter().all(|c| c.iter().zip(&y).map(|(a, b)| a * b).sum::<i64>() >= 1) {
            return Some(y);
        }
        let mut i = 0;
        loop {
            if i == m {
                return None;
            }
            y[i] += 1;
            if y[i] <= 2 {
                break;
            }
            y[i] = -2;
            i += 1;
        }
    }
}

/// Which closed form an oracle call stands in for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    R,
    K,
}

/// `oracle_elem(op, basis, a, b, n)`; for K the spectral vector must be zero.
pub fn oracle_elem(kind: OpKind, basis: Basis, a: &[i64], b: &[i64], n: &[i64]) -> Result<RatQ> {
    let op = match kind {
        OpKind::R => RepOperator::r123(),
        OpKind::K if n.iter().all(|&x| x == 0) => RepOperator::k1234(),
        OpKind::K => return Err(Error::Parse("K is only available at λ = 0".into())),
    };
    Oracle::new(op, basis)?.elem(a, b, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_elements() {
        for basis in [Basis::U, Basis::P] {
            assert!(oracle_elem(OpKind::R, basis, &[0; 3], &[0; 3], &[0; 3]).unwrap().is_one());
            assert!(oracle_elem(OpKind::K, basis, &[0; 4], &[0; 4], &[0; 4]).unwrap().is_one());
        }
    }

    #[test]
    fn k_has_one_free_series_order() {
        let o = Oracle::new(RepOperator::k1234(), Basis::U).unwrap();
        assert_eq!(o.rank_free.len(), 1);
        assert!(o.cone.is_some());
    }
}
