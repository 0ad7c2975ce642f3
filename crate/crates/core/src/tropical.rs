//! Tropical y-seeds as c-vectors, with sign-coherent mutation.

use crate::error::{Error, Result};
use crate::quiver::{Permutation, Seed};
use serde::{Deserialize, Serialize};

/// Row i of `c` is the exponent vector of y_i in the initial variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TropSeed {
    pub seed: Seed,
    pub c: Vec<Vec<i64>>,
}

/// +1 or -1.
pub type Sign = i8;

pub fn sign_char(s: Sign) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

impl TropSeed {
    pub fn initial(seed: &Seed) -> Self {
        let n = seed.n;
        let c = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        TropSeed { seed: seed.clone(), c }
    }

    /// Tropical sign of y_k.
    pub fn sign(&self, k: usize) -> Result<Sign> {
        let row = &self.c[k - 1];
        let pos = row.iter().any(|&v| v > 0);
        let neg = row.iter().any(|&v| v < 0);
        match (pos, neg) {
            (true, false) => Ok(1),
            (false, true) => Ok(-1),
            _ => Err(Error::SignCoherence { vertex: k, row: row.clone() }),
        }
    }

    pub fn mutate(&self, k: usize) -> Result<(TropSeed, Sign)> {
        if k == 0 || k > self.seed.n {
            return Err(Error::VertexOutOfRange(k));
        }
        let eps = self.sign(k)?;
        let seed = self.seed.mutate(k)?;
        let n = self.seed.n;
        let ck = self.c[k - 1].clone();
        let mut c = self.c.clone();
        for i in 1..=n {
            if i == k {
                c[i - 1] = ck.iter().map(|v| -v).collect();
            } else {
                let (b, den) = self.seed.b(i, k);
                debug_assert_eq!(den, 1, "mutable column is integral");
                let m = (eps as i64 * b).max(0);
                if m > 0 {
                    for j in 0..n {
                        c[i - 1][j] += ck[j] * m;
                    }
                }
            }
        }
        let out = TropSeed { seed, c };
        for i in 1..=n {
            out.sign(i)?;
        }
        Ok((out, eps))
    }

    /// Mutates along `seq`, returning the final seed and the signs consumed.
    pub fn mutate_seq(&self, seq: &[usize]) -> Result<(TropSeed, Vec<Sign>)> {
        let mut t = self.clone();
        let mut signs = Vec::with_capacity(seq.len());
        for &k in seq {
            let (n, e) = t.mutate(k)?;
            t = n;
            signs.push(e);
        }
        Ok((t, signs))
    }

    /// Relabel: y'_{σ(i)} = y_i.
    pub fn permute(&self, perm: &Permutation) -> Result<TropSeed> {
        let seed = self.seed.permute(perm)?;
        let mut c = self.c.clone();
        for i in 1..=self.seed.n {
            c[perm.image(i) - 1] = self.c[i - 1].clone();
        }
        Ok(TropSeed { seed, c })
    }

    /// y_i as a monomial string like `y2 y4^-1`.
    pub fn describe(&self, i: usize) -> String {
        let parts: Vec<String> = self.c[i - 1]
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(j, &v)| if v == 1 { format!("y{}", j + 1) } else { format!("y{}^{}", j + 1, v) })
            .collect();
        parts.join(" ")
    }
}

pub fn mutate_tropical(t: &TropSeed, k: usize) -> Result<(TropSeed, Sign)> {
    t.mutate(k)
}

pub fn sign_sequence(start: &Seed, seq: &[usize]) -> Result<Vec<Sign>> {
    Ok(TropSeed::initial(start).mutate_seq(seq)?.1)
}

/// Final tropical seed after `seq` then `perm`.
pub fn run_sequence(start: &Seed, seq: &[usize], perm: Option<&Permutation>) -> Result<TropSeed> {
    let (t, _) = TropSeed::initial(start).mutate_seq(seq)?;
    match perm {
        Some(p) => t.permute(p),
        None => Ok(t),
    }
}

pub fn verify_tropical_periodicity(
    start: &Seed,
    seq_a: &[usize],
    perm_a: Option<&Permutation>,
    seq_b: &[usize],
    perm_b: Option<&Permutation>,
) -> Result<bool> {
    let a = run_sequence(start, seq_a, perm_a)?;
    let b = run_sequence(start, seq_b, perm_b)?;
    Ok(a == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{builtin_quiver, BuiltinQuiver};

    #[test]
    fn involution() {
        let t = TropSeed::initial(&builtin_quiver(BuiltinQuiver::J1212));
        let (a, e1) = t.mutate(2).unwrap();
        let (b, e2) = a.mutate(2).unwrap();
        assert_eq!((e1, e2), (1, -1));
        assert_eq!(b, t);
    }

    #[test]
    fn mixed_row_is_error() {
        let mut t = TropSeed::initial(&builtin_quiver(BuiltinQuiver::J121));
        t.c[3] = vec![1, 0, 0, -1, 0];
        assert!(matches!(t.mutate(4), Err(Error::SignCoherence { vertex: 4, .. })));
    }

    #[test]
    fn describe_monomials() {
        let (t, _) = TropSeed::initial(&builtin_quiver(BuiltinQuiver::J1212)).mutate(2).unwrap();
        assert_eq!(t.describe(1), "y1 y2");
        assert_eq!(t.describe(2), "y2^-1");
    }
}
