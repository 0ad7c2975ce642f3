//! Affine substitutions on (p, u) with formal λ shifts, as adjoint actions.

use super::form::{solve, Form, Gen, Q};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;

/// `Ad(g)`: the images of p_1..p_n, u_1..u_n. λ's are central and fixed.
#[derive(Clone, PartialEq, Eq)]
pub struct AffineOp {
    pub n: usize,
    pub w: Vec<i64>,
    pub img: Vec<Form>,
}

impl AffineOp {
    pub fn identity(w: &[i64]) -> Self {
        let n = w.len();
        let img = (0..2 * n).map(|s| {
            let mut f = Form::zero(n);
            f.c[s] = Q::one();
            f
        });
        AffineOp { n, w: w.to_vec(), img: img.collect() }
    }

    pub fn image(&self, g: Gen) -> &Form {
        &self.img[Form::slot(self.n, g)]
    }
    fn image_mut(&mut self, g: Gen) -> &mut Form {
        let s = Form::slot(self.n, g);
        &mut self.img[s]
    }

    pub fn apply(&self, f: &Form) -> Form {
        let n = self.n;
        let mut out = Form::zero(n);
        out.c[2 * n..].clone_from_slice(&f.c[2 * n..]);
        for (s, c) in f.c[..2 * n].iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.img[s].scale(c));
            }
        }
        out
    }

    /// `Ad(self) ∘ Ad(other)`, i.e. the action of the product `self · other`.
    pub fn compose(&self, other: &AffineOp) -> AffineOp {
        AffineOp { n: self.n, w: self.w.clone(), img: other.img.iter().map(|f| self.apply(f)).collect() }
    }

    pub fn product(ops: &[AffineOp]) -> AffineOp {
        let mut it = ops.iter();
        let first = it.next().expect("nonempty product").clone();
        it.fold(first, |acc, o| acc.compose(o))
    }

    pub fn inverse(&self) -> Result<AffineOp> {
        let n = self.n;
        let cols: Vec<Vec<Q>> = self.img.iter().map(|f| f.c[..2 * n].to_vec()).collect();
        let mut img = Vec::with_capacity(2 * n);
        for s in 0..2 * n {
            let mut e = vec![Q::zero(); 2 * n];
            e[s] = Q::one();
            let x = solve(&cols, &e).ok_or_else(|| Error::Numeric("singular affine map".into()))?;
            // Σ x_h img[h] has λ part Σ x_h T_h; subtract it
            let mut f = Form::zero(n);
            f.c[..2 * n].clone_from_slice(&x);
            let lam = self.apply(&f);
            for t in 2 * n..3 * n {
                f.c[t] = -lam.c[t].clone();
            }
            img.push(f);
        }
        Ok(AffineOp { n, w: self.w.clone(), img })
    }

    /// `[Ad g_a, Ad g_b] = [g_a, g_b]` for all generator pairs.
    pub fn preserves_symplectic(&self) -> bool {
        let n = self.n;
        (0..2 * n).all(|a| {
            (0..2 * n).all(|b| {
                let mut fa = Form::zero(n);
                fa.c[a] = Q::one();
                let mut fb = Form::zero(n);
                fb.c[b] = Q::one();
                self.img[a].commutator(&self.img[b], &self.w) == fa.commutator(&fb, &self.w)
            })
        })
    }

    /// The permutation ρ_ij: swaps p_i ↔ p_j and u_i ↔ u_j.
    pub fn rho(w: &[i64], i: usize, j: usize) -> Self {
        let mut op = Self::identity(w);
        let n = op.n;
        *op.image_mut(Gen::P(i)) = Form::gen(n, Gen::P(j));
        *op.image_mut(Gen::P(j)) = Form::gen(n, Gen::P(i));
        *op.image_mut(Gen::U(i)) = Form::gen(n, Gen::U(j));
        *op.image_mut(Gen::U(j)) = Form::gen(n, Gen::U(i));
        op
    }

    /// `Ad(e^{p_i Σ c_j u_j / ħ})` (c_i = 0): p_j ↦ p_j − c_j w_j p_i, u_i ↦ u_i + w_i Σ c_j u_j.
    pub fn exp_pu(w: &[i64], i: usize, cs: &[(usize, i64)]) -> Self {
        let mut op = Self::identity(w);
        let n = op.n;
        let mut ui = Form::gen(n, Gen::U(i));
        for &(j, c) in cs {
            assert_ne!(i, j, "p_i u_i term is not nilpotent");
            let pj = op.image(Gen::P(j)).sub(&Form::from_terms(n, &[(c * w[j - 1], Gen::P(i))]));
            *op.image_mut(Gen::P(j)) = pj;
            ui = ui.add(&Form::from_terms(n, &[(c * w[i - 1], Gen::U(j))]));
        }
        *op.image_mut(Gen::U(i)) = ui;
        op
    }

    /// `Ad(e^{Σ c_g g / ħ})` for central coefficients c_g and generators g:
    /// a u_i term shifts p_i by −w_i c, a p_i term shifts u_i by +w_i c.
    pub fn exp_linear(w: &[i64], terms: &[(Form, Gen)]) -> Self {
        let mut op = Self::identity(w);
        for (c, g) in terms {
            debug_assert!(c.is_central());
            match *g {
                Gen::U(i) => {
                    let v = op.image(Gen::P(i)).sub(&c.scale(&super::form::q(w[i - 1])));
                    *op.image_mut(Gen::P(i)) = v;
                }
                Gen::P(i) => {
                    let v = op.image(Gen::U(i)).add(&c.scale(&super::form::q(w[i - 1])));
                    *op.image_mut(Gen::U(i)) = v;
                }
                Gen::Lam(_) => {}
            }
        }
        op
    }

    /// Sets one image (used for the printed tables).
    pub fn with_image(mut self, g: Gen, f: Form) -> Self {
        *self.image_mut(g) = f;
        self
    }
}

impl fmt::Debug for AffineOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "AffineOp {{")?;
        for i in 1..=self.n {
            writeln!(f, "  p{i} ↦ {}", self.image(Gen::P(i)))?;
        }
        for i in 1..=self.n {
            writeln!(f, "  u{i} ↦ {}", self.image(Gen::U(i)))?;
        }
        write!(f, "}}")
    }
}
