//! Exact contraction of an operator word over internal indices.
//!
//! Every leg carries one integer variable between consecutive factors. Each
//! factor contributes its delta equalities and the inequalities under which
//! its inverse q-factorials are nonzero. Integer interval propagation over
//! these constraints bounds every internal variable; the sum is then a DFS
//! over the free output indices of each factor.

use super::closed::{k_elem_p_checked, k_elem_u_checked, r_elem_p_term, r_elem_u_term, Elem};
use super::oracle::{Oracle, RepOperator};
use super::Basis;
use crate::error::{Error, Result};
use crate::qseries::{QTerm, RatQ};
use crate::weylcalc::{OpIdx, Q};
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

const INF: i64 = i64::MAX / 4;

/// `Σ c·v (= or ≥) k`.
#[derive(Clone, Debug)]
struct Con {
    terms: Vec<(usize, i64)>,
    k: i64,
    eq: bool,
}

/// `out = (k + Σ c·v) / den`.
#[derive(Clone, Debug)]
struct Pivot {
    target: usize,
    terms: Vec<(usize, i64)>,
    k: i64,
    den: i64,
}

#[derive(Clone, Debug)]
struct Slot {
    op: OpIdx,
    ins: Vec<usize>,
    outs: Vec<usize>,
    free: Vec<usize>,
    pivots: Vec<Pivot>,
    spectral: [i64; 3],
}

/// Local constraint rows `(out coefs, in coefs, k, eq)` of one factor.
fn local_rows(op: OpIdx, basis: Basis, spectral: [i64; 3]) -> Vec<(Vec<i64>, Vec<i64>, i64, bool)> {
    match (op, basis) {
        (OpIdx::R(..), Basis::U) => vec![
            (vec![1, 1, 0], vec![-1, -1, 0], 0, true),
            (vec![0, 1, 1], vec![0, -1, -1], 0, true),
            (vec![0, 1, 0], vec![0, 0, -1], 0, false),
        ],
        (OpIdx::R(..), Basis::P) => vec![
            (vec![0, 1, 0], vec![-1, 0, -1], 0, true),
            (vec![1, 0, 1], vec![0, -1, 0], 0, true),
            (vec![1, 0, 0], vec![-1, 0, 0], spectral[2] - spectral[1], false),
        ],
        (OpIdx::K(..), Basis::U) => vec![
            (vec![0, 1, 1, 1], vec![0, -1, -1, -1], 0, true),
            (vec![1, 2, 1, 0], vec![-1, -2, -1, 0], 0, true),
            (vec![0, 0, 0, -1], vec![0, 1, 0, 0], 0, false),
            (vec![0, 1, 0, -1], vec![0, 1, 0, -1], 0, false),
        ],
        (OpIdx::K(..), Basis::P) => vec![
            (vec![1, 0, 1, 0], vec![-1, 0, -1, 0], 0, true),
            (vec![0, 1, 0, 1], vec![0, -1, 0, -1], 0, true),
            (vec![1, 0, 0, 0], vec![-1, 0, 0, 0], 0, false),
            (vec![0, 1, 0, 0], vec![-1, 0, 0, -1], 0, false),
        ],
    }
}

fn op_legs(op: OpIdx) -> Vec<usize> {
    match op {
        OpIdx::R(i, j, k) => vec![i, j, k],
        OpIdx::K(i, j, k, l) => vec![i, j, k, l],
    }
}

/// Conserved functionals `(out coefs = in coefs)` of a factor in the u-basis.
fn local_laws(op: OpIdx) -> Vec<Vec<i64>> {
    match op {
        OpIdx::R(..) => vec![vec![1, 1, 0], vec![0, 1, 1]],
        OpIdx::K(..) => vec![vec![0, 1, 1, 1], vec![1, 2, 1, 0]],
    }
}

/// A word `O_1 ⋯ O_r` (leftmost first) on `m` legs, ready to contract.
#[derive(Clone)]
pub struct Network {
    pub basis: Basis,
    pub m: usize,
    pub word: Vec<OpIdx>,
    nvars: usize,
    finals: Vec<usize>,
    cons: Vec<Con>,
    slots: Vec<Slot>,
    k_oracle: Option<std::sync::Arc<Oracle>>,
}

/// Sum of path products for one `(a, c)`.
#[derive(Clone, Debug, Default)]
pub struct Contraction {
    pub terms: Vec<QTerm>,
    pub paths: usize,
    pub corners: usize,
}

impl Contraction {
    pub fn value(&self) -> RatQ {
        RatQ::sum_terms(&self.terms)
    }
}

impl Network {
    /// Leg weights are checked against the factor types: R needs weight-1
    /// legs, K needs (1,2,1,2).
    pub fn new(word: &[OpIdx], weights: &[i64], basis: Basis, spectral: &[i64]) -> Result<Self> {
        let m = weights.len();
        if spectral.len() != m {
            return Err(Error::LengthMismatch(format!("{} spectral parameters for {m} legs", spectral.len())));
        }
        let mut front: Vec<usize> = (0..m).collect();
        let mut nvars = m;
        let mut cons = Vec::new();
        let mut slots = vec![];
        let mut has_k = false;
        for &op in word.iter().rev() {
            let legs = op_legs(op);
            let want: &[i64] = if legs.len() == 3 { &[1, 1, 1] } else { &[1, 2, 1, 2] };
            for (&l, &wl) in legs.iter().zip(want) {
                if l == 0 || l > m {
                    return Err(Error::VertexOutOfRange(l));
                }
                if weights[l - 1] != wl {
                    return Err(Error::LengthMismatch(format!("leg {l} has weight {}, factor needs {wl}", weights[l - 1])));
                }
            }
            if legs.len() == 4 {
                has_k = true;
                if legs.iter().any(|&l| spectral[l - 1] != 0) {
                    return Err(Error::Parse("K factors are only available at λ = 0".into()));
                }
            }
            let sp = if legs.len() == 3 { [spectral[legs[0] - 1], spectral[legs[1] - 1], spectral[legs[2] - 1]] } else { [0; 3] };
            let ins: Vec<usize> = legs.iter().map(|&l| front[l - 1]).collect();
            let outs: Vec<usize> = (0..legs.len()).map(|i| nvars + i).collect();
            nvars += legs.len();
            for (&l, &o) in legs.iter().zip(&outs) {
                front[l - 1] = o;
            }
            let rows = local_rows(op, basis, sp);
            for (oc, ic, k, eq) in &rows {
                let mut terms = Vec::new();
                for (j, &c) in oc.iter().enumerate() {
                    if c != 0 {
                        terms.push((outs[j], c));
                    }
                }
                for (j, &c) in ic.iter().enumerate() {
                    if c != 0 {
                        terms.push((ins[j], c));
                    }
                }
                cons.push(Con { terms, k: *k, eq: *eq });
            }
            let (free, pivots) = solve_plan(&rows, &ins, &outs);
            slots.push(Slot { op, ins, outs, free, pivots, spectral: sp });
        }
        let k_oracle = if has_k { Some(std::sync::Arc::new(Oracle::new(RepOperator::k1234(), basis)?)) } else { None };
        Ok(Network { basis, m, word: word.to_vec(), nvars, finals: front, cons, slots, k_oracle })
    }

    /// Interval bounds for every variable, or `None` if some constraint is
    /// infeasible.
    fn bounds(&self, a: &[i64], c: &[i64]) -> Result<Option<(Vec<i64>, Vec<i64>)>> {
        let mut lo = vec![-INF; self.nvars];
        let mut hi = vec![INF; self.nvars];
        for l in 0..self.m {
            lo[l] = c[l];
            hi[l] = c[l];
        }
        for (l, &v) in self.finals.iter().enumerate() {
            lo[v] = lo[v].max(a[l]);
            hi[v] = hi[v].min(a[l]);
        }
        for _round in 0..1000 {
            let mut changed = false;
            for con in &self.cons {
                for (idx, &(v, cv)) in con.terms.iter().enumerate() {
                    // cv·v ≥ k − max(rest); for equalities also cv·v ≤ k − min(rest)
                    let (mut rmax, mut rmin) = (Some(0i64), Some(0i64));
                    for (jdx, &(u, cu)) in con.terms.iter().enumerate() {
                        if jdx == idx {
                            continue;
                        }
                        let (a1, a2) = if cu > 0 { (hi[u], lo[u]) } else { (lo[u], hi[u]) };
                        rmax = rmax.and_then(|s| (a1.abs() < INF).then(|| s + cu * a1));
                        rmin = rmin.and_then(|s| (a2.abs() < INF).then(|| s + cu * a2));
                    }
                    let mut tighten = |bound: i64, geq: bool| {
                        // cv·v ≥ bound (geq) or cv·v ≤ bound
                        let (is_lower, val) = match (cv > 0, geq) {
                            (true, true) => (true, div_ceil(bound, cv)),
                            (true, false) => (false, div_floor(bound, cv)),
                            (false, true) => (false, div_floor(bound, cv)),
                            (false, false) => (true, div_ceil(bound, cv)),
                        };
                        if is_lower && val > lo[v] {
                            lo[v] = val;
                            changed = true;
                        } else if !is_lower && val < hi[v] {
                            hi[v] = val;
                            changed = true;
                        }
                    };
                    if let Some(r) = rmax {
                        tighten(con.k - r, true);
                    }
                    if con.eq {
                        if let Some(r) = rmin {
                            tighten(con.k - r, false);
                        }
                    }
                    if lo[v] > hi[v] {
                        return Ok(None);
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for v in 0..self.nvars {
            if lo[v] <= -INF || hi[v] >= INF {
                let (s, j) = self.locate(v);
                return Err(Error::Propagation(format!(
                    "leg {} after factor {:?} is unbounded",
                    op_legs(self.slots[s].op)[j],
                    self.slots[s].op
                )));
            }
        }
        Ok(Some((lo, hi)))
    }

    fn locate(&self, v: usize) -> (usize, usize) {
        for (s, sl) in self.slots.iter().enumerate() {
            if let Some(j) = sl.outs.iter().position(|&o| o == v) {
                return (s, j);
            }
        }
        (0, 0)
    }

    /// `⟨a| O_1 ⋯ O_r |c⟩` as a list of path products. `widen` enlarges every
    /// derived internal range by that many steps on each side.
    pub fn contract(&self, a: &[i64], c: &[i64], widen: i64) -> Result<Contraction> {
        if a.len() != self.m || c.len() != self.m {
            return Err(Error::LengthMismatch(format!("expected {} legs", self.m)));
        }
        let mut out = Contraction::default();
        let Some((mut lo, mut hi)) = self.bounds(a, c)? else {
            return Ok(out);
        };
        if widen > 0 {
            let fixed: Vec<usize> = (0..self.m).chain(self.finals.iter().copied()).collect();
            for v in 0..self.nvars {
                if !fixed.contains(&v) {
                    lo[v] -= widen;
                    hi[v] += widen;
                }
            }
        }
        let mut vals = vec![0i64; self.nvars];
        vals[..self.m].copy_from_slice(c);
        self.dfs(0, &mut vals, &lo, &hi, QTerm::one(), &mut out)?;
        Ok(out)
    }

    fn dfs(&self, s: usize, vals: &mut [i64], lo: &[i64], hi: &[i64], acc: QTerm, out: &mut Contraction) -> Result<()> {
        if s == self.slots.len() {
            out.paths += 1;
            out.terms.push(acc);
            return Ok(());
        }
        let sl = &self.slots[s];
        let nf = sl.free.len();
        let mut fv: Vec<i64> = sl.free.iter().map(|&v| lo[v]).collect();
        if sl.free.iter().any(|&v| lo[v] > hi[v]) {
            return Ok(());
        }
        loop {
            for (&v, &x) in sl.free.iter().zip(&fv) {
                vals[v] = x;
            }
            let mut ok = true;
            for p in &sl.pivots {
                let num = p.k + p.terms.iter().map(|&(v, c)| c * vals[v]).sum::<i64>();
                if num % p.den != 0 {
                    ok = false;
                    break;
                }
                let x = num / p.den;
                if x < lo[p.target] || x > hi[p.target] {
                    ok = false;
                    break;
                }
                vals[p.target] = x;
            }
            if ok {
                if let Some(t) = self.element(sl, vals, out)? {
                    self.dfs(s + 1, vals, lo, hi, acc.mul(&t), out)?;
                }
            }
            // odometer over free outputs
            let mut i = 0;
            loop {
                if i == nf {
                    return Ok(());
                }
                fv[i] += 1;
                if fv[i] <= hi[sl.free[i]] {
                    break;
                }
                fv[i] = lo[sl.free[i]];
                i += 1;
            }
        }
    }

    fn element(&self, sl: &Slot, vals: &[i64], out: &mut Contraction) -> Result<Option<QTerm>> {
        let o: Vec<i64> = sl.outs.iter().map(|&v| vals[v]).collect();
        let i: Vec<i64> = sl.ins.iter().map(|&v| vals[v]).collect();
        Ok(match (sl.op, self.basis) {
            (OpIdx::R(..), Basis::U) => r_elem_u_term([o[0], o[1], o[2]], [i[0], i[1], i[2]], sl.spectral),
            (OpIdx::R(..), Basis::P) => r_elem_p_term([o[0], o[1], o[2]], [i[0], i[1], i[2]], sl.spectral),
            (OpIdx::K(..), b) => {
                let (oa, ia) = ([o[0], o[1], o[2], o[3]], [i[0], i[1], i[2], i[3]]);
                let e = match b {
                    Basis::U => k_elem_u_checked(oa, ia),
                    Basis::P => k_elem_p_checked(oa, ia),
                };
                match e {
                    Elem::Zero => None,
                    Elem::Term(t) => Some(t),
                    Elem::Indeterminate => {
                        out.corners += 1;
                        let v = self.k_oracle.as_ref().expect("K oracle").elem(&o, &i, &[0; 4])?;
                        if !v.is_zero() {
                            return Err(Error::Numeric(format!("0/0 corner {o:?} {i:?} has oracle value {v}")));
                        }
                        None
                    }
                }
            }
        })
    }

    /// Integer basis of the functionals `f` with `f·a = f·c` whenever any
    /// product of u-basis elements along the word is nonzero.
    pub fn conservation_laws(&self) -> Vec<Vec<i64>> {
        let m = self.m;
        let ns = self.word.len();
        let ncols = m + 2 * ns;
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for (s, &op) in self.word.iter().enumerate() {
            let laws = local_laws(op);
            for (j, &l) in op_legs(op).iter().enumerate() {
                let mut r = vec![Q::zero(); ncols];
                for (ri, law) in laws.iter().enumerate() {
                    r[m + 2 * s + ri] = Q::from_integer(law[j].into());
                }
                r[l - 1] = -Q::one();
                rows.push(r);
            }
        }
        let null = nullspace(rows, ncols);
        let proj: Vec<Vec<Q>> = null.iter().map(|v| v[..m].to_vec()).collect();
        let basis = row_basis(proj, m);
        basis.into_iter().map(|v| integerize(&v)).collect()
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}
fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

/// Pick pivot outputs for the equality rows; the rest are free.
fn solve_plan(rows: &[(Vec<i64>, Vec<i64>, i64, bool)], ins: &[usize], outs: &[usize]) -> (Vec<usize>, Vec<Pivot>) {
    let eqs: Vec<&(Vec<i64>, Vec<i64>, i64, bool)> = rows.iter().filter(|r| r.3).collect();
    let no = outs.len();
    let ni = ins.len();
    // columns: outs, ins, constant
    let mut a: Vec<Vec<Rational64>> = eqs
        .iter()
        .map(|(oc, ic, k, _)| {
            let mut r: Vec<Rational64> = oc.iter().chain(ic.iter()).map(|&x| Rational64::from_integer(x)).collect();
            r.push(Rational64::from_integer(*k));
            r
        })
        .collect();
    let mut pcols = Vec::new();
    let mut row = 0;
    for col in 0..no {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..=no + ni {
                    let v = a[row][c] * f;
                    a[r][c] -= v;
                }
            }
        }
        pcols.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..no).filter(|c| !pcols.contains(c)).map(|c| outs[c]).collect();
    let mut pivots = Vec::new();
    for (r, &pc) in pcols.iter().enumerate() {
        // out_pc = k − Σ_{other} coef·var
        let den = a[r].iter().fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
        let mut terms = Vec::new();
        for c in 0..no + ni {
            if c == pc || a[r][c].is_zero() {
                continue;
            }
            let v = if c < no { outs[c] } else { ins[c - no] };
            terms.push((v, -(a[r][c] * den).to_integer()));
        }
        pivots.push(Pivot { target: outs[pc], terms, k: (a[r][no + ni] * den).to_integer(), den });
    }
    (free, pivots)
}

fn rref(mut a: Vec<Vec<Q>>, ncols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut piv = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..ncols {
                    let v = &a[row][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
        piv.push(col);
        row += 1;
    }
    a.truncate(row);
    (a, piv)
}

fn nullspace(a: Vec<Vec<Q>>, ncols: usize) -> Vec<Vec<Q>> {
    let (r, piv) = rref(a, ncols);
    let mut out = Vec::new();
    for f in (0..ncols).filter(|c| !piv.contains(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[f] = Q::one();
        for (row, &pc) in r.iter().zip(&piv) {
            v[pc] = -row[f].clone();
        }
        out.push(v);
    }
    out
}

fn row_basis(vs: Vec<Vec<Q>>, ncols: usize) -> Vec<Vec<Q>> {
    rref(vs, ncols).0
}

fn integerize(v: &[Q]) -> Vec<i64> {
    let den = v.iter().fold(num_bigint::BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
    ints.iter().map(|x| (x / &g).to_i64().expect("small law")).collect::<Vec<_>>().into_iter().map(|x| x * sign_of_first(v)).collect()
}

fn sign_of_first(v: &[Q]) -> i64 {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -1,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weylcalc::{TETRA_LHS, TETRA_WEIGHTS};

    #[test]
    fn floor_ceil() {
        assert_eq!(div_floor(-3, 2), -2);
        assert_eq!(div_ceil(-3, 2), -1);
        assert_eq!(div_floor(3, -2), -2);
        assert_eq!(div_ceil(3, 2), 2);
    }

    #[test]
    fn tetra_has_three_laws() {
        let net = Network::new(&TETRA_LHS, &TETRA_WEIGHTS, Basis::U, &[0; 6]).unwrap();
        assert_eq!(net.conservation_laws().len(), 3);
    }
}
