//! Seeds, weighted quivers, mutation and vertex relabeling.
//!
//! Vertices are labeled 1..=n in every public function.
//! Half-integer entries are stored doubled.

mod data;

pub use data::{builtin_quiver, BuiltinQuiver, ALL_BUILTINS};

use crate::error::{Error, Result};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    pub n: usize,
    /// 2 b_ij, row-major.
    #[serde(rename = "B2")]
    pub b2: Vec<Vec<i64>>,
    pub d: Vec<i64>,
}

impl Seed {
    /// Checks skew-symmetrizability and gcd(d) = 1.
    pub fn new(b2: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Seed> {
        let n = d.len();
        let s = Seed { n, b2, d };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if self.d.len() != n || self.b2.len() != n || self.b2.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSeed("dimension mismatch".into()));
        }
        if self.d.iter().any(|&x| x <= 0) {
            return Err(Error::InvalidSeed("weights must be positive".into()));
        }
        if n > 0 && self.d.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
            return Err(Error::InvalidSeed("gcd of weights is not 1".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if self.b2[i][j] * self.d[j] != -self.b2[j][i] * self.d[i] {
                    return Err(Error::InvalidSeed(format!("B d not skew-symmetric at ({},{})", i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }

    fn idx(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.n {
            Err(Error::VertexOutOfRange(k))
        } else {
            Ok(k - 1)
        }
    }

    /// `b_ij` as a (numerator, denominator) pair in lowest terms.
    pub fn b(&self, i: usize, j: usize) -> (i64, i64) {
        let v = self.b2[i - 1][j - 1];
        if v % 2 == 0 {
            (v / 2, 1)
        } else {
            (v, 2)
        }
    }

    /// 2 b̂_ij = 2 b_ij d_j.
    pub fn bhat2(&self, i: usize, j: usize) -> i64 {
        self.b2[i - 1][j - 1] * self.d[j - 1]
    }

    /// Full matrix of 2 b̂.
    pub fn bhat2_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.b2[i][j] * self.d[j]).collect())
            .collect()
    }

    /// Vertices touching a half-integer entry.
    pub fn frozen(&self) -> BTreeSet<usize> {
        (0..self.n)
            .filter(|&i| (0..self.n).any(|j| self.b2[i][j] % 2 != 0 || self.b2[j][i] % 2 != 0))
            .map(|i| i + 1)
            .collect()
    }
    pub fn is_mutable(&self, k: usize) -> bool {
        k >= 1 && k <= self.n && !self.frozen().contains(&k)
    }
    pub fn mutable(&self) -> Vec<usize> {
        let f = self.frozen();
        (1..=self.n).filter(|k| !f.contains(k)).collect()
    }

    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let kk = self.idx(k)?;
        if self.frozen().contains(&k) {
            return Err(Error::FrozenVertex(k));
        }
        let n = self.n;
        let b = &self.b2;
        let mut out = b.clone();
        for i in 0..n {
            for j in 0..n {
                if i == kk || j == kk {
                    out[i][j] = -b[i][j];
                } else {
                    // 2b' = 2b + (|2b_ik| 2b_kj + 2b_ik |2b_kj|) / 4
                    let t = b[i][kk].abs() * b[kk][j] + b[i][kk] * b[kk][j].abs();
                    debug_assert!(t % 4 == 0);
                    out[i][j] = b[i][j] + t / 4;
                }
            }
        }
        Ok(Seed { n, b2: out, d: self.d.clone() })
    }

    pub fn mutate_seq(&self, seq: &[usize]) -> Result<Seed> {
        let mut s = self.clone();
        for &k in seq {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Relabel by `perm` (1-based, `perm[i-1] = σ(i)`): b'_{σ(i)σ(j)} = b_ij.
    pub fn permute(&self, perm: &Permutation) -> Result<Seed> {
        if perm.len() != self.n {
            return Err(Error::BadPermutation(format!("length {} vs {} vertices", perm.len(), self.n)));
        }
        let n = self.n;
        let mut b2 = vec![vec![0; n]; n];
        let mut d = vec![0; n];
        for i in 0..n {
            d[perm.image(i + 1) - 1] = self.d[i];
            for j in 0..n {
                b2[perm.image(i + 1) - 1][perm.image(j + 1) - 1] = self.b2[i][j];
            }
        }
        Ok(Seed { n, b2, d })
    }

    pub fn weighted(&self) -> WeightedQuiver {
        WeightedQuiver::from_seed(self)
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d = {:?}", self.d)?;
        for i in 1..=self.n {
            let row: Vec<String> = (1..=self.n)
                .map(|j| match self.b(i, j) {
                    (v, 1) => v.to_string(),
                    (v, den) => format!("{v}/{den}"),
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A bijection of {1..n}; `map[i-1] = σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { map: (1..=n).collect() }
    }
    pub fn from_images(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::BadPermutation(format!("{map:?}")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { map })
    }
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::BadPermutation(format!("({i} {j}) on {n} points")));
        }
        let mut p = Self::identity(n);
        p.map.swap(i - 1, j - 1);
        Ok(p)
    }
    /// Parses `"i:j,k:l"` (i ↦ j); unlisted points are fixed.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let mut map: Vec<usize> = (1..=n).collect();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = part
                .split_once(':')
                .ok_or_else(|| Error::BadPermutation(part.to_string()))?;
            let a: usize = a.trim().parse().map_err(|_| Error::BadPermutation(part.into()))?;
            let b: usize = b.trim().parse().map_err(|_| Error::BadPermutation(part.into()))?;
            if a == 0 || a > n {
                return Err(Error::BadPermutation(part.into()));
            }
            map[a - 1] = b;
        }
        Self::from_images(map)
    }
    pub fn len(&self) -> usize {
        self.map.len()
    }
    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
    pub fn image(&self, i: usize) -> usize {
        self.map[i - 1]
    }
    pub fn inverse(&self) -> Self {
        let mut m = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            m[v - 1] = i + 1;
        }
        Permutation { map: m }
    }
    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        Permutation { map: other.map.iter().map(|&v| self.map[v - 1]).collect() }
    }
    pub fn images(&self) -> &[usize] {
        &self.map
    }
}

/// Weighted quiver: 2σ with σ_ij = b_ij gcd(d_i, d_j) / d_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedQuiver {
    pub sigma2: Vec<Vec<i64>>,
    pub d: Vec<i64>,
}

impl WeightedQuiver {
    pub fn from_seed(s: &Seed) -> Self {
        let n = s.n;
        let mut sigma2 = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let g = s.d[i].gcd(&s.d[j]);
                let v = s.b2[i][j] * g;
                assert!(v % s.d[i] == 0, "σ not representable at ({},{})", i + 1, j + 1);
                sigma2[i][j] = v / s.d[i];
            }
        }
        WeightedQuiver { sigma2, d: s.d.clone() }
    }

    /// Arrows: `(i, j, count)` solid; `dashed` entries add ±1/2.
    pub fn from_arrows(d: Vec<i64>, solid: &[(usize, usize)], dashed: &[(usize, usize)]) -> Self {
        let n = d.len();
        let mut sigma2 = vec![vec![0; n]; n];
        for &(i, j) in solid {
            sigma2[i - 1][j - 1] += 2;
            sigma2[j - 1][i - 1] -= 2;
        }
        for &(i, j) in dashed {
            sigma2[i - 1][j - 1] += 1;
            sigma2[j - 1][i - 1] -= 1;
        }
        WeightedQuiver { sigma2, d }
    }

    pub fn to_seed(&self) -> Result<Seed> {
        let n = self.d.len();
        let mut b2 = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let g = self.d[i].gcd(&self.d[j]);
                let v = self.sigma2[i][j] * self.d[i];
                if v % g != 0 {
                    return Err(Error::InvalidSeed(format!("b_({},{}) not half-integral", i + 1, j + 1)));
                }
                b2[i][j] = v / g;
            }
        }
        Seed::new(b2, self.d.clone())
    }

    fn is_skew(&self) -> bool {
        let n = self.d.len();
        (0..n).all(|i| (0..n).all(|j| self.sigma2[i][j] == -self.sigma2[j][i]))
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.d.len();
        if k == 0 || k > n {
            return Err(Error::VertexOutOfRange(k));
        }
        let kk = k - 1;
        if (0..n).any(|j| self.sigma2[kk][j] % 2 != 0) {
            return Err(Error::FrozenVertex(k));
        }
        let s = &self.sigma2;
        let d = &self.d;
        let mut out = s.clone();
        for i in 0..n {
            for j in 0..n {
                if i == kk || j == kk {
                    out[i][j] = -s[i][j];
                } else {
                    let num = d[kk] * d[i].gcd(&d[j]);
                    let den = d[kk].gcd(&d[i]) * d[kk].gcd(&d[j]);
                    let t = (s[i][kk].abs() * s[kk][j] + s[i][kk] * s[kk][j].abs()) * num;
                    debug_assert!(t % (4 * den) == 0);
                    out[i][j] = s[i][j] + t / (4 * den);
                }
            }
        }
        let w = WeightedQuiver { sigma2: out, d: d.clone() };
        debug_assert!(w.is_skew());
        Ok(w)
    }
}

/// Free-function forms of the seed operations.
pub fn mutate_seed(s: &Seed, k: usize) -> Result<Seed> {
    s.mutate(k)
}
pub fn mutate_weighted(w: &WeightedQuiver, k: usize) -> Result<WeightedQuiver> {
    w.mutate(k)
}
pub fn apply_vertex_permutation(s: &Seed, perm: &Permutation) -> Result<Seed> {
    s.permute(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weighted_example() -> WeightedQuiver {
        WeightedQuiver::from_arrows(vec![2, 2, 1], &[(2, 1), (1, 3), (3, 2)], &[])
    }

    #[test]
    fn weighted_mutation_example() {
        let m = weighted_example().mutate(3).unwrap();
        let want = WeightedQuiver::from_arrows(vec![2, 2, 1], &[(1, 2), (3, 1), (2, 3)], &[]);
        assert_eq!(m, want);
    }

    #[test]
    fn equal_weights_no_new_arrow() {
        let q = WeightedQuiver::from_arrows(vec![1, 1, 1], &[(2, 1), (1, 3), (3, 2)], &[]);
        let m = q.mutate(3).unwrap();
        assert_eq!(m.sigma2[0][1], 0);
    }

    #[test]
    fn permutation_parse_and_inverse() {
        let p = Permutation::parse(9, "4:7,7:4").unwrap();
        assert_eq!(p.image(4), 7);
        assert_eq!(p.compose(&p), Permutation::identity(9));
        assert!(Permutation::parse(3, "1:2").is_err());
        let c = Permutation::from_images(vec![2, 3, 1]).unwrap();
        assert_eq!(c.compose(&c.inverse()), Permutation::identity(3));
    }

    #[test]
    fn frozen_vertex_rejected() {
        let s = builtin_quiver(BuiltinQuiver::J121);
        assert_eq!(s.mutate(1), Err(Error::FrozenVertex(1)));
        assert_eq!(s.mutable(), vec![4]);
    }

    #[test]
    fn invalid_seed_rejected() {
        assert!(Seed::new(vec![vec![0, 2], vec![2, 0]], vec![1, 1]).is_err());
        assert!(Seed::new(vec![vec![0, 2], vec![-2, 0]], vec![2, 2]).is_err());
    }
}
