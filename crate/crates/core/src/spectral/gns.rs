use crate::algebra::{AlgebraElement, StarAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, max_abs, select_columns, CMat};
use crate::spectral::{BlockDecomposition, Ideal, Representation};

const PSD_TOL: f64 = 1e-9;

/// GNS data of a functional `ψ(f) = Σ_γ ψ_γ f(γ)`.
#[derive(Debug, Clone)]
pub struct Gns {
    /// `G_{αβ} = ψ(δ_α* × δ_β)`.
    pub gram: CMat,
    /// Columns `e_k = U_k / √λ_k`, orthonormal for the form `xᴴ G y`.
    pub basis: CMat,
    /// Orthonormal basis of `L_ψ = null(G)`.
    pub null: CMat,
}

impl Gns {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// `π(a)_{kl} = e_kᴴ G L(a) e_l`.
    pub fn pi(&self, alg: &StarAlgebra, a: &AlgebraElement) -> CMat {
        self.basis.adjoint() * &self.gram * alg.left_matrix(a) * &self.basis
    }
}

pub fn gns(alg: &StarAlgebra, psi: &AlgebraElement) -> Result<Gns> {
    psi.check_len(alg.dim())?;
    let g = alg.groupoid();
    let n = alg.dim();
    let gram = CMat::from_fn(n, n, |a, b| match g.product(g.inv(a), b) {
        Some(c) => psi[c],
        None => crate::linalg::ZERO,
    });
    let skew = max_abs(&(&gram - gram.adjoint()));
    if skew > PSD_TOL {
        // ψ(x*) ≠ conj ψ(x): not even Hermitian
        return Err(Error::NotPositive(-skew));
    }
    let (values, vectors) = hermitian_eigen(&gram);
    if let Some(&low) = values.first() {
        if low < -PSD_TOL {
            return Err(Error::NotPositive(low));
        }
    }
    let top = values.last().copied().unwrap_or(0.0).max(1.0);
    let live: Vec<usize> = (0..n).filter(|&i| values[i] > PSD_TOL * top).collect();
    let dead: Vec<usize> = (0..n).filter(|&i| values[i] <= PSD_TOL * top).collect();
    let mut basis = select_columns(&vectors, &live);
    for (k, &i) in live.iter().enumerate() {
        let s = values[i].sqrt();
        basis.column_mut(k).unscale_mut(s);
    }
    Ok(Gns { gram, basis, null: select_columns(&vectors, &dead) })
}

pub fn gns_rep(alg: &StarAlgebra, psi: &AlgebraElement) -> Result<Representation> {
    let data = gns(alg, psi)?;
    let matrices = (0..alg.dim()).map(|g| data.pi(alg, &alg.delta(g))).collect();
    Ok(Representation::new(data.dim(), matrices))
}

/// `K_ψ`: the blocks on which `ψ(p_i × z)` vanishes for every `z`.
pub fn kernel_ideal_k(alg: &StarAlgebra, dec: &BlockDecomposition, psi: &AlgebraElement) -> Result<Ideal> {
    gns(alg, psi)?;
    let blocks = (0..dec.len())
        .filter(|&i| {
            (0..alg.dim()).all(|gamma| {
                let x = alg.convolve(&dec.idempotents()[i], &alg.delta(gamma)).expect("same algebra");
                let value: num_complex::Complex64 = (0..alg.dim()).map(|c| psi[c] * x[c]).sum();
                value.norm() <= 1e-9
            })
        })
        .collect();
    Ok(Ideal::new(blocks, dec.len()))
}

/// `L_ψ = {x : ψ(x* × x) = 0}`, as orthonormal columns.
pub fn left_kernel_l(alg: &StarAlgebra, psi: &AlgebraElement) -> Result<CMat> {
    Ok(gns(alg, psi)?.null)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::groupoid::FiniteGroupoid;
    use crate::linalg::op_norm;
    use crate::spectral::block_decomposition;

    #[test]
    fn faithful_trace_on_m2() {
        let alg = StarAlgebra::new(FiniteGroupoid::pair(2));
        let dec = block_decomposition(&alg).unwrap();
        let tr = AlgebraElement::from_real(&[1.0, 1.0, 0.0, 0.0]);
        assert!(kernel_ideal_k(&alg, &dec, &tr).unwrap().is_zero());
        assert_eq!(left_kernel_l(&alg, &tr).unwrap().ncols(), 0);
        let rep = gns_rep(&alg, &tr).unwrap();
        assert_eq!(rep.dim(), 4);
        assert!(rep.homomorphism_defect(&alg) < 1e-9);
    }

    #[test]
    fn first_coordinate_of_z2() {
        // ψ = trivial character, so K = L = the sign block
        let alg = StarAlgebra::new(FiniteGroupoid::from_group(&FiniteGroup::cyclic(2)));
        let dec = block_decomposition(&alg).unwrap();
        let psi = AlgebraElement::from_real(&[1.0, 1.0]);
        assert_eq!(kernel_ideal_k(&alg, &dec, &psi).unwrap().blocks(), &[1]);
        let l = left_kernel_l(&alg, &psi).unwrap();
        assert_eq!(l.ncols(), 1);
        let sign = AlgebraElement::from_vector(&l.column(0).into());
        assert!(dec.contains(&alg, &Ideal::new(vec![1], 2), &sign));
    }

    #[test]
    fn not_positive() {
        let alg = StarAlgebra::new(FiniteGroupoid::trivial(2));
        let psi = AlgebraElement::from_real(&[1.0, -1.0]);
        assert!(matches!(gns(&alg, &psi), Err(Error::NotPositive(v)) if v < 0.0));
    }

    #[test]
    fn regular_state_gives_regular_norm() {
        let alg = StarAlgebra::new(FiniteGroupoid::from_group(&FiniteGroup::cyclic(2)));
        let data = gns(&alg, &alg.delta(0)).unwrap();
        let f = AlgebraElement::from_real(&[1.0, 1.0]);
        assert!((op_norm(&data.pi(&alg, &f)) - 2.0).abs() < 1e-12);
    }
}
