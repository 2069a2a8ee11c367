//! Representations, norms, block decomposition and ideal lattices.
//!
//! Every finite groupoid algebra is a finite-dimensional C*-algebra, so it
//! splits as a direct sum of full matrix blocks and its closed two-sided
//! ideals are exactly the sums of blocks. The routines here compute that
//! splitting numerically and serve as the oracle for all other checks.

mod blocks;
mod gns;
mod seminorms;

pub use blocks::{
    all_ideals, block_decomposition, decompose_subalgebra, ideal_generated_by, is_simple, BlockDecomposition, Ideal,
    BLOCK_SEED, GAP_TOL, MAX_RESEEDS,
};
pub use gns::{gns, gns_rep, kernel_ideal_k, left_kernel_l, Gns};
pub use seminorms::{evaluation_hom, p_e, p_unif, unif_generators, unif_ideal, EvaluationHom};

use crate::algebra::{AlgebraElement, StarAlgebra};
use crate::error::{Error, Result};
use crate::groupoid::ElementId;
use crate::linalg::{op_norm, CMat, ONE, ZERO};

/// A finite-dimensional representation given on the basis `{δ_γ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    dim: usize,
    matrices: Vec<CMat>,
}

impl Representation {
    pub fn new(dim: usize, matrices: Vec<CMat>) -> Self {
        Representation { dim, matrices }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, gamma: ElementId) -> &CMat {
        &self.matrices[gamma]
    }

    pub fn apply(&self, f: &AlgebraElement) -> CMat {
        let mut out = CMat::zeros(self.dim, self.dim);
        for (g, m) in self.matrices.iter().enumerate() {
            if f[g] != ZERO {
                out += m * f[g];
            }
        }
        out
    }

    /// Largest defect of `π(δ_a δ_b) = π(δ_a)π(δ_b)` and `π(δ_a*) = π(δ_a)*`.
    pub fn homomorphism_defect(&self, alg: &StarAlgebra) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..alg.dim() {
            let star = self.apply(&alg.involution(&alg.delta(a)));
            worst = worst.max(crate::linalg::max_abs(&(star - self.matrices[a].adjoint())));
            for b in 0..alg.dim() {
                let prod = self.apply(&alg.convolve(&alg.delta(a), &alg.delta(b)).expect("same algebra"));
                worst = worst.max(crate::linalg::max_abs(&(prod - &self.matrices[a] * &self.matrices[b])));
            }
        }
        worst
    }
}

/// `Γ_u`: left convolution on `ℓ²(𝒢u)` with basis `{δ_γ : s(γ) = u}` in id order.
pub fn regular_rep_at(alg: &StarAlgebra, u: ElementId) -> Result<Representation> {
    let g = alg.groupoid();
    if u >= g.len() || !g.is_unit(u) {
        return Err(Error::NotAUnit(u));
    }
    let fiber = g.source_fiber(u);
    let d = fiber.len();
    let local = |x: ElementId| fiber.iter().position(|&y| y == x);
    let mut matrices = vec![CMat::zeros(d, d); g.len()];
    for &(a, b, c) in alg.triples() {
        if let (Some(j), Some(i)) = (local(b), local(c)) {
            matrices[a][(i, j)] += ONE;
        }
    }
    Ok(Representation::new(d, matrices))
}

/// `max_u ‖Γ_u(f)‖`.
pub fn norm(alg: &StarAlgebra, f: &AlgebraElement) -> f64 {
    let l = alg.left_matrix(f);
    let g = alg.groupoid();
    g.units()
        .iter()
        .map(|&u| {
            let fiber = g.source_fiber(u);
            op_norm(&CMat::from_fn(fiber.len(), fiber.len(), |i, j| l[(fiber[i], fiber[j])]))
        })
        .fold(0.0, f64::max)
}
