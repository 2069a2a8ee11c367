use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, StarAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eigen, op_norm, orthogonalize, CMat, CVec};
use num_complex::Complex64;

pub const BLOCK_SEED: u64 = 0xC57A;
pub const MAX_RESEEDS: usize = 8;
/// Eigenvalues closer than this are treated as one cluster.
pub const GAP_TOL: f64 = 1e-6;
const MEMBER_TOL: f64 = 1e-7;

/// Minimal central idempotents of a *-subalgebra `B ⊆ C_c(𝒢)` (possibly all
/// of it), with their matrix sizes.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    /// Orthonormal basis of `B` in coefficient space.
    basis: CMat,
    idempotents: Vec<AlgebraElement>,
    dims: Vec<usize>,
    /// Orthonormal basis of the range of `L(e_j)` inside `ℂⁿ`.
    frames: Vec<CMat>,
    center_dim: usize,
    reseeds: usize,
}

/// A two-sided ideal, recorded as the set of blocks it contains.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    blocks: Vec<usize>,
    total: usize,
}

impl Ideal {
    pub fn new(mut blocks: Vec<usize>, total: usize) -> Self {
        blocks.sort_unstable();
        blocks.dedup();
        assert!(blocks.iter().all(|&b| b < total), "block index out of range");
        Ideal { blocks, total }
    }

    pub fn zero(total: usize) -> Self {
        Ideal { blocks: Vec::new(), total }
    }

    pub fn whole(total: usize) -> Self {
        Ideal { blocks: (0..total).collect(), total }
    }

    pub fn from_mask(mask: u64, total: usize) -> Self {
        Ideal { blocks: (0..total).filter(|&i| mask >> i & 1 == 1).collect(), total }
    }

    pub fn mask(&self) -> u64 {
        assert!(self.total <= 64, "mask needs at most 64 blocks");
        self.blocks.iter().fold(0, |m, &b| m | 1 << b)
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn contains_block(&self, i: usize) -> bool {
        self.blocks.binary_search(&i).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.blocks.len() == self.total
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.blocks.iter().all(|&b| other.contains_block(b))
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        Ideal::new(self.blocks.iter().copied().filter(|&b| other.contains_block(b)).collect(), self.total)
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.total).filter(|&b| !self.contains_block(b)).collect()
    }
}

impl BlockDecomposition {
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn idempotents(&self) -> &[AlgebraElement] {
        &self.idempotents
    }

    pub fn frame(&self, i: usize) -> &CMat {
        &self.frames[i]
    }

    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    pub fn center_dim(&self) -> usize {
        self.center_dim
    }

    /// Number of extra generic elements drawn before the spectrum split cleanly.
    pub fn reseeds(&self) -> usize {
        self.reseeds
    }

    /// `V_iᴴ L(f) V_i`: the block component of `f`, repeated with multiplicity.
    pub fn block_component(&self, alg: &StarAlgebra, f: &AlgebraElement, i: usize) -> CMat {
        let v = &self.frames[i];
        v.adjoint() * alg.left_matrix(f) * v
    }

    pub fn block_norms(&self, alg: &StarAlgebra, f: &AlgebraElement) -> Vec<f64> {
        let l = alg.left_matrix(f);
        self.frames.iter().map(|v| op_norm(&(v.adjoint() * &l * v))).collect()
    }

    /// `max_i ‖f_i‖`.
    pub fn norm(&self, alg: &StarAlgebra, f: &AlgebraElement) -> f64 {
        self.block_norms(alg, f).into_iter().fold(0.0, f64::max)
    }

    pub fn projection(&self, alg: &StarAlgebra, ideal: &Ideal) -> AlgebraElement {
        ideal.blocks().iter().fold(alg.zero(), |acc, &i| &acc + &self.idempotents[i])
    }

    /// Blocks `i` with `e_i × x ≠ 0`.
    pub fn blocks_touched(&self, alg: &StarAlgebra, x: &AlgebraElement) -> Vec<usize> {
        let scale = x.max_abs().max(1.0);
        (0..self.len())
            .filter(|&i| alg.convolve(&self.idempotents[i], x).expect("same algebra").max_abs() > MEMBER_TOL * scale)
            .collect()
    }

    /// `x ∈ I_S` iff `(1 − p_S) × x = 0`; `x` must lie in the decomposed algebra.
    pub fn contains(&self, alg: &StarAlgebra, ideal: &Ideal, x: &AlgebraElement) -> bool {
        let px = alg.convolve(&self.projection(alg, ideal), x).expect("same algebra");
        (x - &px).max_abs() <= MEMBER_TOL * x.max_abs().max(1.0)
    }

    /// Orthonormal basis of `p_S B` in coefficient space.
    pub fn ideal_basis(&self, alg: &StarAlgebra, ideal: &Ideal) -> CMat {
        let l = alg.left_matrix(&self.projection(alg, ideal));
        let images = (0..self.basis.ncols()).map(|k| &l * self.basis.column(k));
        linalg::orthonormal_basis(alg.dim(), images, 1e-9)
    }

    pub fn ideal_dim(&self, ideal: &Ideal) -> usize {
        ideal.blocks().iter().map(|&i| self.dims[i] * self.dims[i]).sum()
    }
}

/// Decomposition of the whole algebra.
pub fn block_decomposition(alg: &StarAlgebra) -> Result<BlockDecomposition> {
    decompose_subalgebra(alg, &CMat::identity(alg.dim(), alg.dim()))
}

pub fn is_simple(alg: &StarAlgebra) -> Result<bool> {
    Ok(block_decomposition(alg)?.len() == 1)
}

/// Decomposition of the unital *-subalgebra with orthonormal basis `basis`.
///
/// The center is the null space of `Σ_k C_kᴴ C_k` with `C_k = (L(b_k) − R(b_k)) V`.
/// A generic self-adjoint central `z` then has one eigenvalue of `L(z)` per
/// block, and the spectral projections are `L(e_j)`.
pub fn decompose_subalgebra(alg: &StarAlgebra, basis: &CMat) -> Result<BlockDecomposition> {
    let n = alg.dim();
    let m = basis.ncols();
    let elements: Vec<AlgebraElement> = (0..m).map(|k| AlgebraElement::from_vector(&basis.column(k).into())).collect();
    let mut gram = CMat::zeros(m, m);
    for b in &elements {
        let c = (alg.left_matrix(b) - alg.right_matrix(b)) * basis;
        gram += c.adjoint() * c;
    }
    let (values, vectors) = hermitian_eigen(&gram);
    let scale = values.last().copied().unwrap_or(0.0).max(1.0);
    let keep: Vec<usize> = (0..m).filter(|&i| values[i] <= 1e-8 * scale).collect();
    let center: Vec<CVec> = keep.iter().map(|&i| basis * vectors.column(i)).collect();
    let center_dim = center.len();

    let mut smallest_gap = f64::INFINITY;
    for attempt in 0..=MAX_RESEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(BLOCK_SEED + attempt as u64);
        let mut y = CVec::zeros(n);
        for w in &center {
            let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            y.axpy(c, w, Complex64::new(1.0, 0.0));
        }
        let y = AlgebraElement::from_vector(&y);
        let z = &y + &alg.involution(&y);
        let (eig, u) = hermitian_eigen(&alg.left_matrix(&z));
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for i in 0..eig.len() {
            if i > 0 && eig[i] - eig[i - 1] <= GAP_TOL {
                clusters.last_mut().expect("nonempty").push(i);
            } else {
                if i > 0 {
                    smallest_gap = smallest_gap.min(eig[i] - eig[i - 1]);
                }
                clusters.push(vec![i]);
            }
        }
        if clusters.len() != center_dim {
            log::debug!("block split attempt {attempt}: {} clusters for center of dim {center_dim}", clusters.len());
            continue;
        }
        let mut blocks = Vec::with_capacity(center_dim);
        for cols in &clusters {
            let frame = linalg::select_columns(&u, cols);
            let p = &frame * frame.adjoint();
            let g = alg.groupoid();
            let e = AlgebraElement::new((0..n).map(|x| p[(x, g.s(x))]).collect());
            let rank = if m == n {
                cols.len()
            } else {
                let r = alg.right_matrix(&e) * basis;
                let sv = r.svd(false, false).singular_values;
                sv.iter().filter(|&&s| s > 1e-7).count()
            };
            let d = (rank as f64).sqrt().round() as usize;
            if d * d != rank {
                return Err(Error::NumericalDegeneracy { retries: attempt, gap: smallest_gap });
            }
            blocks.push((e, d, frame));
        }
        blocks.sort_by(|a, b| canonical_order(&a.0, &b.0));
        let mut dec = BlockDecomposition {
            basis: basis.clone(),
            idempotents: Vec::new(),
            dims: Vec::new(),
            frames: Vec::new(),
            center_dim,
            reseeds: attempt,
        };
        for (e, d, frame) in blocks {
            dec.idempotents.push(e);
            dec.dims.push(d);
            dec.frames.push(frame);
        }
        return Ok(dec);
    }
    Err(Error::NumericalDegeneracy { retries: MAX_RESEEDS, gap: smallest_gap })
}

/// Blocks sorted by their idempotent's coefficients, larger real parts first.
fn canonical_order(a: &AlgebraElement, b: &AlgebraElement) -> Ordering {
    let key = |e: &AlgebraElement| -> Vec<(i64, i64)> {
        e.coeffs().iter().map(|z| ((-z.re * 1e6).round() as i64, (-z.im * 1e6).round() as i64)).collect()
    };
    key(a).cmp(&key(b))
}

/// All `2^k` block subsets, ordered by size and then by bitmask.
pub fn all_ideals(dec: &BlockDecomposition) -> Result<Vec<Ideal>> {
    let k = dec.len();
    if k > 20 {
        return Err(Error::LatticeTooLarge(k));
    }
    let mut masks: Vec<u64> = (0..1u64 << k).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    Ok(masks.into_iter().map(|m| Ideal::from_mask(m, k)).collect())
}

/// Least two-sided ideal of the whole algebra containing `gens`, identified
/// with its block subset. `dec` must be [`block_decomposition`] of `alg`.
pub fn ideal_generated_by(alg: &StarAlgebra, dec: &BlockDecomposition, gens: &[AlgebraElement]) -> Result<Ideal> {
    let n = alg.dim();
    let mut basis: Vec<CVec> = Vec::new();
    let mut queue: Vec<AlgebraElement> = Vec::new();
    for g in gens {
        g.check_len(n)?;
        if let Some(q) = orthogonalize(&basis, g.to_vector(), 1e-9) {
            basis.push(q.clone());
            queue.push(AlgebraElement::from_vector(&q));
        }
    }
    while let Some(x) = queue.pop() {
        for gamma in 0..n {
            let d = alg.delta(gamma);
            for y in [alg.convolve(&d, &x)?, alg.convolve(&x, &d)?] {
                if let Some(q) = orthogonalize(&basis, y.to_vector(), 1e-9) {
                    basis.push(q.clone());
                    queue.push(AlgebraElement::from_vector(&q));
                }
            }
        }
    }
    let mut touched: Vec<usize> = basis
        .iter()
        .flat_map(|q| dec.blocks_touched(alg, &AlgebraElement::from_vector(q)))
        .collect();
    touched.sort_unstable();
    touched.dedup();
    let ideal = Ideal::new(touched, dec.len());
    if dec.ideal_dim(&ideal) != basis.len() {
        return Err(Error::ClosureNotIdeal(format!(
            "closure has dimension {} but its blocks {:?} span {}",
            basis.len(),
            ideal.blocks(),
            dec.ideal_dim(&ideal)
        )));
    }
    Ok(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::groupoid::FiniteGroupoid;
    use crate::spectral::norm;

    fn alg_of(g: FiniteGroupoid) -> StarAlgebra {
        StarAlgebra::new(g)
    }

    #[test]
    fn z3_has_three_characters() {
        let alg = alg_of(FiniteGroupoid::from_group(&FiniteGroup::cyclic(3)));
        let dec = block_decomposition(&alg).unwrap();
        assert_eq!(dec.dims(), &[1, 1, 1]);
        // trivial character first
        assert!(dec.idempotents()[0].approx_eq(&AlgebraElement::from_real(&[1.0 / 3.0; 3]), 1e-9));
    }

    #[test]
    fn pair_three_is_one_block() {
        let alg = alg_of(FiniteGroupoid::pair(3));
        let dec = block_decomposition(&alg).unwrap();
        assert_eq!(dec.dims(), &[3]);
        assert!(is_simple(&alg).unwrap());
    }

    #[test]
    fn trivial_three_units() {
        let alg = alg_of(FiniteGroupoid::trivial(3));
        let dec = block_decomposition(&alg).unwrap();
        assert_eq!(dec.dims(), &[1, 1, 1]);
        for (i, e) in dec.idempotents().iter().enumerate() {
            assert!(e.approx_eq(&alg.delta(i), 1e-9));
        }
    }

    #[test]
    fn simplicity_examples() {
        assert!(is_simple(&alg_of(FiniteGroupoid::pair(2))).unwrap());
        let z2 = alg_of(FiniteGroupoid::from_group(&FiniteGroup::cyclic(2)));
        assert!(!is_simple(&z2).unwrap());
        assert_eq!(all_ideals(&block_decomposition(&z2).unwrap()).unwrap().len(), 4);
        assert!(is_simple(&alg_of(FiniteGroupoid::trivial(1))).unwrap());
    }

    #[test]
    fn lattice_cap() {
        let alg = alg_of(FiniteGroupoid::trivial(21));
        let dec = block_decomposition(&alg).unwrap();
        assert_eq!(all_ideals(&dec), Err(Error::LatticeTooLarge(21)));
    }

    #[test]
    fn generated_ideals() {
        let z2 = alg_of(FiniteGroupoid::from_group(&FiniteGroup::cyclic(2)));
        let dec = block_decomposition(&z2).unwrap();
        assert!(ideal_generated_by(&z2, &dec, &[z2.zero()]).unwrap().is_zero());
        let aug = ideal_generated_by(&z2, &dec, &z2.augmentation_generators().unwrap()).unwrap();
        // the sign block is the second one
        assert_eq!(aug.blocks(), &[1]);
        let pair = alg_of(FiniteGroupoid::pair(3));
        let dec = block_decomposition(&pair).unwrap();
        assert!(ideal_generated_by(&pair, &dec, &[pair.delta(1)]).unwrap().is_whole());
    }

    #[test]
    fn blockwise_norm_agrees() {
        let alg = alg_of(FiniteGroupoid::group_bundle(&[FiniteGroup::dihedral(3), FiniteGroup::cyclic(2)]));
        let dec = block_decomposition(&alg).unwrap();
        assert_eq!(dec.dims().iter().map(|d| d * d).sum::<usize>(), alg.dim());
        let f = AlgebraElement::from_real(&[1.0, -0.5, 0.25, 2.0, 0.0, 1.0, -1.0, 0.5]);
        assert!((dec.norm(&alg, &f) - norm(&alg, &f)).abs() < 1e-9);
    }

    #[test]
    fn ideal_membership_and_basis() {
        let alg = alg_of(FiniteGroupoid::disjoint_union(&FiniteGroupoid::pair(2), &FiniteGroupoid::pair(1)));
        let dec = block_decomposition(&alg).unwrap();
        assert_eq!(dec.dims(), &[2, 1]);
        let m2 = Ideal::new(vec![0], 2);
        assert!(dec.contains(&alg, &m2, &alg.delta(3)));
        assert!(!dec.contains(&alg, &m2, &alg.delta(2)));
        assert_eq!(dec.ideal_basis(&alg, &m2).ncols(), 4);
    }
}
