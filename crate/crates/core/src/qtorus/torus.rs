//! Quantum torus of a seed: Y^α Y^β = q^{⟨α,β⟩} Y^{α+β}, ⟨α,β⟩ = α·B̂β.

use crate::error::{Error, Result};
use crate::quiver::Seed;

pub type Lattice = Vec<i64>;

#[derive(Clone, Debug)]
pub struct Torus {
    pub seed: Seed,
    bhat2: Vec<Vec<i64>>,
}

impl Torus {
    pub fn new(seed: &Seed) -> Self {
        Torus { seed: seed.clone(), bhat2: seed.bhat2_matrix() }
    }
    pub fn dim(&self) -> usize {
        self.seed.n
    }
    /// `α^T (2B̂)` as a row vector.
    pub fn row2(&self, a: &[i64]) -> Lattice {
        let n = self.dim();
        let mut r = vec![0; n];
        for (i, &ai) in a.iter().enumerate() {
            if ai != 0 {
                for j in 0..n {
                    r[j] += ai * self.bhat2[i][j];
                }
            }
        }
        r
    }
    pub fn pairing2(&self, a: &[i64], b: &[i64]) -> i64 {
        self.row2(a).iter().zip(b).map(|(x, y)| x * y).sum()
    }
    pub fn half(&self, p2: i64) -> Result<i64> {
        if p2 % 2 != 0 {
            Err(Error::HalfIntegerPower(p2))
        } else {
            Ok(p2 / 2)
        }
    }
    /// ⟨α,β⟩; errors if it is a half-integer.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        self.half(self.pairing2(a, b))
    }
    pub fn unit(&self, i: usize) -> Lattice {
        let mut v = vec![0; self.dim()];
        v[i - 1] = 1;
        v
    }
}
