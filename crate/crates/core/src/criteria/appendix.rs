//! Positive definite functions on isotropy groups and the functionals
//! `η_θ(f) = Σ_{γ ∈ u𝒢u} θ(γ) f(γ)` they induce.

use num_complex::Complex64;
use rand::seq::IndexedRandom;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{AlgebraElement, StarAlgebra};
use crate::error::{Error, Result};
use crate::groupoid::{ElementId, FiniteGroupoid, Subgroupoid};
use crate::linalg::{hermitian_eigen, CMat, ZERO};
use crate::spectral::norm;

const PD_TOL: f64 = 1e-9;
const ETA_TOL: f64 = 1e-8;

/// `θ : u𝒢u → ℂ`, stored against the sorted isotropy ids.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveDefiniteFunction {
    unit: ElementId,
    elements: Vec<ElementId>,
    values: Vec<Complex64>,
}

fn isotropy_at(g: &FiniteGroupoid, u: ElementId) -> Result<Vec<ElementId>> {
    if u >= g.len() || !g.is_unit(u) {
        return Err(Error::NotAUnit(u));
    }
    Ok((0..g.len()).filter(|&x| g.r(x) == u && g.s(x) == u).collect())
}

/// Smallest eigenvalue of `[θ(h_i⁻¹ h_j)]` over the whole group; a
/// non-Hermitian matrix reports minus the size of its skew part.
fn gram_min_eigen(g: &FiniteGroupoid, elements: &[ElementId], theta: impl Fn(ElementId) -> Complex64) -> f64 {
    let k = elements.len();
    let gram = CMat::from_fn(k, k, |i, j| {
        theta(g.product(g.inv(elements[i]), elements[j]).expect("same isotropy group"))
    });
    let skew = crate::linalg::max_abs(&(&gram - gram.adjoint()));
    if skew > PD_TOL {
        return -skew;
    }
    hermitian_eigen(&gram).0.first().copied().unwrap_or(0.0)
}

impl PositiveDefiniteFunction {
    /// Checks positive definiteness on the full Gram matrix, which covers
    /// every finite subset at once.
    pub fn new(g: &FiniteGroupoid, unit: ElementId, values: Vec<Complex64>) -> Result<Self> {
        let elements = isotropy_at(g, unit)?;
        if values.len() != elements.len() {
            return Err(Error::GroupoidMismatch { expected: elements.len(), actual: values.len() });
        }
        let lookup = |x: ElementId| values[elements.binary_search(&x).expect("closed")];
        let low = gram_min_eigen(g, &elements, lookup);
        if low < -PD_TOL {
            return Err(Error::NotPositiveDefinite(low));
        }
        Ok(PositiveDefiniteFunction { unit, elements, values })
    }

    /// `θ(h) = ⟨ξ, λ_h ξ⟩` for a random `ξ` on a random subgroup `K ⊆ u𝒢u`,
    /// extended by zero.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, g: &FiniteGroupoid, unit: ElementId) -> Result<Self> {
        let elements = isotropy_at(g, unit)?;
        let seeds: Vec<ElementId> = (0..rng.random_range(0..=2)).filter_map(|_| elements.choose(rng).copied()).collect();
        let subgroup = closure(g, unit, &seeds);
        let xi: Vec<Complex64> = subgroup
            .iter()
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let values = elements
            .iter()
            .map(|&h| match subgroup.binary_search(&h) {
                Err(_) => ZERO,
                Ok(_) => subgroup
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| {
                        let hix = g.product(g.inv(h), x).expect("same isotropy group");
                        xi[i].conj() * xi[subgroup.binary_search(&hix).expect("subgroup")]
                    })
                    .sum(),
            })
            .collect();
        Self::new(g, unit, values)
    }

    pub fn unit(&self) -> ElementId {
        self.unit
    }

    pub fn value(&self, h: ElementId) -> Option<Complex64> {
        self.elements.binary_search(&h).ok().map(|i| self.values[i])
    }

    /// Coefficients of `η_θ` as a functional on `C_c(𝒢)`.
    pub fn eta(&self, n: usize) -> AlgebraElement {
        let mut psi = AlgebraElement::zeros(n);
        for (i, &h) in self.elements.iter().enumerate() {
            psi[h] = self.values[i];
        }
        psi
    }
}

/// Subgroup of `u𝒢u` generated by `seeds`, sorted.
fn closure(g: &FiniteGroupoid, unit: ElementId, seeds: &[ElementId]) -> Vec<ElementId> {
    let mut members = vec![unit];
    let mut frontier = vec![unit];
    while let Some(x) = frontier.pop() {
        for &s in seeds {
            let y = g.product(x, s).expect("same isotropy group");
            if !members.contains(&y) {
                members.push(y);
                frontier.push(y);
            }
        }
    }
    members.sort_unstable();
    members
}

pub fn eta_theta(g: &FiniteGroupoid, theta: &PositiveDefiniteFunction) -> AlgebraElement {
    theta.eta(g.len())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EtaReport {
    pub unit: ElementId,
    pub min_eigenvalue: f64,
    pub pass: bool,
}

/// Builds `G_{γδ} = η_θ(δ_γ* × δ_δ)` over all of `𝒢` and checks it is PSD.
/// `δ_γ* × δ_δ` is `δ_{γ⁻¹δ}` when `r(γ) = r(δ)` and zero otherwise.
pub fn verify_eta_positivity(alg: &StarAlgebra, theta: &PositiveDefiniteFunction) -> EtaReport {
    let g = alg.groupoid();
    let psi = eta_theta(g, theta);
    let n = alg.dim();
    let gram = CMat::from_fn(n, n, |a, b| g.product(g.inv(a), b).map_or(ZERO, |c| psi[c]));
    let (values, _) = hermitian_eigen(&gram);
    let skew = crate::linalg::max_abs(&(&gram - gram.adjoint()));
    let min_eigenvalue = values.first().copied().unwrap_or(0.0);
    EtaReport { unit: theta.unit(), min_eigenvalue, pass: min_eigenvalue >= -ETA_TOL && skew <= ETA_TOL }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsometryReport {
    pub elements: usize,
    pub samples: usize,
    pub max_deviation: f64,
    pub pass: bool,
}

/// Norms of random `f ∈ C_c(Y)` computed in `C*(Y)` and, extended by zero, in `C*(𝒢)`.
pub fn verify_open_subgroupoid_isometry<R: Rng + ?Sized>(
    alg: &StarAlgebra,
    sub: &Subgroupoid,
    samples: usize,
    rng: &mut R,
) -> Result<IsometryReport> {
    alg.groupoid().restrict_to_open_subgroupoid(&sub.parent)?;
    let small = StarAlgebra::new(sub.groupoid.clone());
    let mut max_deviation: f64 = 0.0;
    for _ in 0..samples {
        let f = AlgebraElement::random(rng, small.dim());
        let inside = norm(&small, &f);
        let outside = norm(alg, &f.extend_by_zero(&sub.parent, alg.dim()));
        max_deviation = max_deviation.max((inside - outside).abs());
    }
    Ok(IsometryReport { elements: sub.parent.len(), samples, max_deviation, pass: max_deviation <= 1e-7 })
}

/// Subgroupoid generated by one to three random elements.
pub fn random_subgroupoid<R: Rng + ?Sized>(rng: &mut R, g: &FiniteGroupoid) -> Subgroupoid {
    let count = rng.random_range(1..=3);
    let seeds: Vec<ElementId> = (0..count).map(|_| rng.random_range(0..g.len())).collect();
    g.generated_subgroupoid(&seeds).expect("seeds in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn delta_at_identity_is_positive() {
        let g = FiniteGroupoid::from_group(&FiniteGroup::cyclic(3));
        let alg = StarAlgebra::new(g.clone());
        let theta = PositiveDefiniteFunction::new(&g, 0, vec![Complex64::new(1.0, 0.0), ZERO, ZERO]).unwrap();
        assert!(verify_eta_positivity(&alg, &theta).pass);
    }

    #[test]
    fn constant_one_gives_square_of_sum() {
        let g = FiniteGroupoid::from_group(&FiniteGroup::dihedral(3));
        let alg = StarAlgebra::new(g.clone());
        let theta = PositiveDefiniteFunction::new(&g, 0, vec![Complex64::new(1.0, 0.0); 6]).unwrap();
        let psi = eta_theta(&g, &theta);
        let f = AlgebraElement::from_real(&[1.0, -2.0, 0.5, 0.0, 3.0, 1.0]);
        let ff = alg.convolve(&alg.involution(&f), &f).unwrap();
        let value: Complex64 = (0..6).map(|c| psi[c] * ff[c]).sum();
        let sum: Complex64 = f.coeffs().iter().sum();
        assert!((value - sum.norm_sqr()).norm() < 1e-12);
    }

    #[test]
    fn gram_matches_convolution() {
        let g = FiniteGroupoid::pair(2);
        let alg = StarAlgebra::new(g.clone());
        let theta = PositiveDefiniteFunction::new(&g, 1, vec![Complex64::new(1.0, 0.0)]).unwrap();
        let psi = eta_theta(&g, &theta);
        for a in 0..4 {
            for b in 0..4 {
                let p = alg.convolve(&alg.involution(&alg.delta(a)), &alg.delta(b)).unwrap();
                let direct: Complex64 = (0..4).map(|c| psi[c] * p[c]).sum();
                let table = g.product(g.inv(a), b).map_or(ZERO, |c| psi[c]);
                assert_eq!(direct, table);
            }
        }
    }

    #[test]
    fn random_theta_in_bundle() {
        let g = FiniteGroupoid::group_bundle(&[FiniteGroup::cyclic(3), FiniteGroup::cyclic(3)]);
        let alg = StarAlgebra::new(g.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for u in [0, 1] {
            for _ in 0..10 {
                let theta = PositiveDefiniteFunction::random(&mut rng, &g, u).unwrap();
                assert!(verify_eta_positivity(&alg, &theta).pass);
            }
        }
    }

    #[test]
    fn rejects_non_positive_definite() {
        let g = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
        let err = PositiveDefiniteFunction::new(&g, 0, vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]);
        assert!(matches!(err, Err(Error::NotPositiveDefinite(v)) if v < 0.0));
    }

    #[test]
    fn isometry_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = FiniteGroupoid::pair(3);
        let alg = StarAlgebra::new(g.clone());
        let units = g.restrict_to_open_subgroupoid(g.units()).unwrap();
        assert!(verify_open_subgroupoid_isometry(&alg, &units, 20, &mut rng).unwrap().pass);
        let all: Vec<usize> = (0..g.len()).collect();
        let whole = g.restrict_to_open_subgroupoid(&all).unwrap();
        assert!(verify_open_subgroupoid_isometry(&alg, &whole, 20, &mut rng).unwrap().pass);
        for _ in 0..5 {
            let y = random_subgroupoid(&mut rng, &g);
            assert!(verify_open_subgroupoid_isometry(&alg, &y, 20, &mut rng).unwrap().pass);
        }
    }
}
