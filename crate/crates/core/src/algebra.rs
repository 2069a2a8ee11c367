//! The convolution *-algebra `C_c(𝒢)` of a finite groupoid.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::groupoid::{ElementId, FiniteGroupoid};
use crate::linalg::{CMat, CVec, ONE, ZERO};
use crate::transformation::TransformationGroupoid;

/// A function on the groupoid, stored as one coefficient per element id.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement(Vec<Complex64>);

impl AlgebraElement {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        AlgebraElement(coeffs)
    }

    pub fn zeros(n: usize) -> Self {
        AlgebraElement(vec![ZERO; n])
    }

    pub fn delta(n: usize, gamma: ElementId) -> Self {
        let mut f = Self::zeros(n);
        f.0[gamma] = ONE;
        f
    }

    pub fn from_real(values: &[f64]) -> Self {
        AlgebraElement(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Coefficients with real and imaginary parts uniform in `[-1, 1)`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        AlgebraElement((0..n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect())
    }

    /// Random coefficients on `support`, zero elsewhere.
    pub fn random_on<R: Rng + ?Sized>(rng: &mut R, n: usize, support: &[ElementId]) -> Self {
        let mut f = Self::zeros(n);
        for &g in support {
            f.0[g] = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
        f
    }

    pub fn from_vector(v: &CVec) -> Self {
        AlgebraElement(v.iter().copied().collect())
    }

    pub fn to_vector(&self) -> CVec {
        CVec::from_column_slice(&self.0)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() == n {
            Ok(())
        } else {
            Err(Error::GroupoidMismatch { expected: n, actual: self.0.len() })
        }
    }

    /// Ids with `|f(γ)| > tol`.
    pub fn support(&self, tol: f64) -> Vec<ElementId> {
        (0..self.0.len()).filter(|&g| self.0[g].norm() > tol).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        AlgebraElement(self.0.iter().map(|&z| z * c).collect())
    }

    /// Extension by zero along `parent`, into an algebra of dimension `n`.
    pub fn extend_by_zero(&self, parent: &[ElementId], n: usize) -> Self {
        let mut out = Self::zeros(n);
        for (i, &p) in parent.iter().enumerate() {
            out.0[p] = self.0[i];
        }
        out
    }

    /// Restriction to the ids in `parent`.
    pub fn restrict(&self, parent: &[ElementId]) -> Self {
        AlgebraElement(parent.iter().map(|&p| self.0[p]).collect())
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| (a - b).norm() <= tol)
    }
}

impl Index<ElementId> for AlgebraElement {
    type Output = Complex64;
    fn index(&self, g: ElementId) -> &Complex64 {
        &self.0[g]
    }
}

impl IndexMut<ElementId> for AlgebraElement {
    fn index_mut(&mut self, g: ElementId) -> &mut Complex64 {
        &mut self.0[g]
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.len(), rhs.len(), "adding elements of different algebras");
        AlgebraElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.len(), rhs.len(), "subtracting elements of different algebras");
        AlgebraElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&AlgebraElement> for Complex64 {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        rhs.scale(self)
    }
}

/// `C_c(𝒢)` with cached structure constants.
#[derive(Debug, Clone)]
pub struct StarAlgebra {
    groupoid: FiniteGroupoid,
    triples: Vec<(ElementId, ElementId, ElementId)>,
    unit: AlgebraElement,
}

impl StarAlgebra {
    pub fn new(groupoid: FiniteGroupoid) -> Self {
        let triples = groupoid.composable_pairs().collect();
        let mut unit = AlgebraElement::zeros(groupoid.len());
        for &u in groupoid.units() {
            unit[u] = ONE;
        }
        StarAlgebra { groupoid, triples, unit }
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn dim(&self) -> usize {
        self.groupoid.len()
    }

    /// All `(α, β, αβ)`.
    pub fn triples(&self) -> &[(ElementId, ElementId, ElementId)] {
        &self.triples
    }

    pub fn unit(&self) -> &AlgebraElement {
        &self.unit
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zeros(self.dim())
    }

    pub fn delta(&self, gamma: ElementId) -> AlgebraElement {
        AlgebraElement::delta(self.dim(), gamma)
    }

    /// `(f×g)(γ) = Σ_{αβ=γ} f(α) g(β)`.
    pub fn convolve(&self, f: &AlgebraElement, g: &AlgebraElement) -> Result<AlgebraElement> {
        f.check_len(self.dim())?;
        g.check_len(self.dim())?;
        let mut out = self.zero();
        for &(a, b, c) in &self.triples {
            out[c] += f[a] * g[b];
        }
        Ok(out)
    }

    /// Product of several factors, left to right.
    pub fn product(&self, factors: &[&AlgebraElement]) -> Result<AlgebraElement> {
        let mut acc = self.unit.clone();
        for f in factors {
            acc = self.convolve(&acc, f)?;
        }
        Ok(acc)
    }

    /// `f*(γ) = conj(f(γ⁻¹))`.
    pub fn involution(&self, f: &AlgebraElement) -> AlgebraElement {
        AlgebraElement((0..f.len()).map(|g| f[self.groupoid.inv(g)].conj()).collect())
    }

    /// `sup_u max(Σ_{r(γ)=u} |f(γ)|, Σ_{s(γ)=u} |f(γ)|)`.
    pub fn i_norm(&self, f: &AlgebraElement) -> f64 {
        let n = self.dim();
        let mut range_sum = vec![0.0; n];
        let mut source_sum = vec![0.0; n];
        for g in 0..f.len().min(n) {
            range_sum[self.groupoid.r(g)] += f[g].norm();
            source_sum[self.groupoid.s(g)] += f[g].norm();
        }
        self.groupoid.units().iter().map(|&u| range_sum[u].max(source_sum[u])).fold(0.0, f64::max)
    }

    /// `𝔼(f) = f|_{𝒢⁽⁰⁾}`.
    pub fn expectation(&self, f: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        for &u in self.groupoid.units() {
            out[u] = f[u];
        }
        out
    }

    /// `δ_γ` for every `γ`: singletons are open bisections.
    pub fn elementary_normalizers(&self) -> Vec<AlgebraElement> {
        (0..self.dim()).map(|g| self.delta(g)).collect()
    }

    /// `δ_γ − δ_{r(γ)}` for every non-unit `γ` of a group bundle.
    pub fn augmentation_generators(&self) -> Result<Vec<AlgebraElement>> {
        if let Some(g) = (0..self.dim()).find(|&g| self.groupoid.r(g) != self.groupoid.s(g)) {
            return Err(Error::NotGroupBundle(g));
        }
        Ok((0..self.dim())
            .filter(|&g| !self.groupoid.is_unit(g))
            .map(|g| &self.delta(g) - &self.delta(self.groupoid.r(g)))
            .collect())
    }

    /// Matrix of `x ↦ f×x` in the basis `{δ_γ}`; equals `⊕_u Γ_u(f)`.
    pub fn left_matrix(&self, f: &AlgebraElement) -> CMat {
        let n = self.dim();
        let mut m = CMat::zeros(n, n);
        for &(a, b, c) in &self.triples {
            m[(c, b)] += f[a];
        }
        m
    }

    /// Matrix of `x ↦ x×f`.
    pub fn right_matrix(&self, f: &AlgebraElement) -> CMat {
        let n = self.dim();
        let mut m = CMat::zeros(n, n);
        for &(a, b, c) in &self.triples {
            m[(c, a)] += f[b];
        }
        m
    }
}

/// Coefficients of `Σ_g f_g ⊗ v_g ∈ C(Q) ⊗ ℂ[G]`, indexed `[q][g]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaImage {
    pub table: Vec<Vec<Complex64>>,
}

impl DeltaImage {
    /// The same element in the algebra of [`TransformationGroupoid::tensor_bundle`].
    pub fn to_bundle_element(&self, t: &TransformationGroupoid) -> AlgebraElement {
        let m = t.action().space();
        let k = t.action().group().order();
        let mut out = AlgebraElement::zeros(m * k);
        for (q, row) in self.table.iter().enumerate() {
            for (g, &c) in row.iter().enumerate() {
                out[t.tensor_id(q, g)] = c;
            }
        }
        out
    }
}

/// `Δ(Σ_g f_g u_g) = Σ_g f_g ⊗ v_g` on elements supported in `{(g, q) : gq = q}`.
pub fn delta_embedding(t: &TransformationGroupoid, f: &AlgebraElement) -> Result<DeltaImage> {
    f.check_len(t.groupoid().len())?;
    let action = t.action();
    if let Some(x) = (0..f.len()).find(|&x| {
        let (g, q) = t.pair(x);
        f[x] != ZERO && action.act(g, q) != q
    }) {
        return Err(Error::SupportOutsideInteriorIsotropy(x));
    }
    let a = t.upsilon(f)?;
    let table = (0..action.space())
        .map(|q| (0..action.group().order()).map(|g| a.coeffs[g][q]).collect())
        .collect();
    Ok(DeltaImage { table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::transformation::GroupAction;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z2() -> StarAlgebra {
        StarAlgebra::new(FiniteGroupoid::from_group(&FiniteGroup::cyclic(2)))
    }

    #[test]
    fn pair_matrix_units_multiply() {
        let alg = StarAlgebra::new(FiniteGroupoid::pair(3));
        let g = alg.groupoid();
        let id = |l: &str| (0..g.len()).find(|&x| g.label(x) == l).unwrap();
        let p = alg.convolve(&alg.delta(id("(1,2)")), &alg.delta(id("(2,3)"))).unwrap();
        assert_eq!(p, alg.delta(id("(1,3)")));
    }

    #[test]
    fn z2_convolution() {
        let alg = z2();
        assert_eq!(alg.convolve(&alg.delta(1), &alg.delta(1)).unwrap(), alg.delta(0));
        let f = AlgebraElement::from_real(&[1.0, 1.0]);
        assert_eq!(alg.convolve(&f, &f).unwrap(), AlgebraElement::from_real(&[2.0, 2.0]));
    }

    #[test]
    fn mismatch_is_reported() {
        let alg = z2();
        let err = alg.convolve(&alg.delta(0), &AlgebraElement::zeros(3)).unwrap_err();
        assert_eq!(err, Error::GroupoidMismatch { expected: 2, actual: 3 });
    }

    #[test]
    fn involution_examples() {
        let alg = StarAlgebra::new(FiniteGroupoid::pair(2));
        // ids: (1,1), (2,2), (1,2), (2,1)
        assert_eq!(alg.involution(&alg.delta(2)), alg.delta(3));
        let f = AlgebraElement::new(vec![c(1.0, 0.0), c(-3.0, 0.0), ZERO, ZERO]);
        assert_eq!(alg.involution(&f), f);
        let f = alg.delta(2).scale(c(2.0, 1.0));
        assert_eq!(alg.involution(&f), alg.delta(3).scale(c(2.0, -1.0)));
    }

    #[test]
    fn i_norm_examples() {
        let alg = StarAlgebra::new(FiniteGroupoid::pair(3));
        assert_eq!(alg.i_norm(&alg.delta(5)), 1.0);
        let z3 = StarAlgebra::new(FiniteGroupoid::from_group(&FiniteGroup::cyclic(3)));
        assert_eq!(z3.i_norm(&AlgebraElement::from_real(&[1.0, 1.0, 1.0])), 3.0);
        let f = AlgebraElement::from_real(&[0.5, -2.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(alg.i_norm(&f), 2.0);
    }

    #[test]
    fn expectation_examples() {
        let alg = StarAlgebra::new(FiniteGroupoid::pair(2));
        assert_eq!(alg.expectation(&alg.delta(1)), alg.delta(1));
        assert_eq!(alg.expectation(&alg.delta(2)), alg.zero());
        // E(δ_γ* × δ_γ) = δ_{s(γ)}
        let d = alg.delta(2);
        let p = alg.convolve(&alg.involution(&d), &d).unwrap();
        assert_eq!(alg.expectation(&p), alg.delta(alg.groupoid().s(2)));
    }

    #[test]
    fn normalizers_conjugate_units() {
        let alg = StarAlgebra::new(FiniteGroupoid::pair(2));
        assert_eq!(alg.elementary_normalizers().len(), 4);
        let g = alg.groupoid();
        for gamma in 0..4 {
            let n = alg.delta(gamma);
            let ns = alg.involution(&n);
            let s = alg.delta(g.s(gamma));
            assert_eq!(alg.product(&[&n, &s, &ns]).unwrap(), alg.delta(g.r(gamma)));
            for &u in g.units() {
                if u != g.s(gamma) {
                    assert_eq!(alg.product(&[&n, &alg.delta(u), &ns]).unwrap(), alg.zero());
                }
            }
        }
    }

    #[test]
    fn augmentation_generators_examples() {
        assert!(StarAlgebra::new(FiniteGroupoid::trivial(3)).augmentation_generators().unwrap().is_empty());
        let gens = z2().augmentation_generators().unwrap();
        assert_eq!(gens, vec![AlgebraElement::from_real(&[-1.0, 1.0])]);
        let pair = StarAlgebra::new(FiniteGroupoid::pair(2));
        assert_eq!(pair.augmentation_generators(), Err(Error::NotGroupBundle(2)));
    }

    #[test]
    fn left_and_right_matrices() {
        let alg = StarAlgebra::new(FiniteGroupoid::pair(2));
        let f = AlgebraElement::new(vec![c(1.0, 0.5), c(0.0, 2.0), c(-1.0, 0.0), c(0.3, 0.3)]);
        let x = AlgebraElement::new(vec![c(0.2, 0.0), c(1.0, -1.0), c(0.0, 1.0), c(4.0, 0.0)]);
        let fx = alg.left_matrix(&f) * x.to_vector();
        let xf = alg.right_matrix(&f) * x.to_vector();
        assert!(AlgebraElement::from_vector(&fx).approx_eq(&alg.convolve(&f, &x).unwrap(), 1e-12));
        assert!(AlgebraElement::from_vector(&xf).approx_eq(&alg.convolve(&x, &f).unwrap(), 1e-12));
        let adj = alg.left_matrix(&alg.involution(&f));
        assert!(crate::linalg::max_abs(&(adj - alg.left_matrix(&f).adjoint())) < 1e-12);
    }

    #[test]
    fn delta_embedding_examples() {
        let t = TransformationGroupoid::new(GroupAction::swap());
        let f = AlgebraElement::from_real(&[1.0, 2.0, 0.0, 0.0]);
        let d = delta_embedding(&t, &f).unwrap();
        assert_eq!(d.table, vec![vec![c(1.0, 0.0), ZERO], vec![c(2.0, 0.0), ZERO]]);
        let bad = AlgebraElement::from_real(&[0.0, 0.0, 1.0, 0.0]);
        assert_eq!(delta_embedding(&t, &bad), Err(Error::SupportOutsideInteriorIsotropy(2)));

        let point = TransformationGroupoid::new(GroupAction::trivial(FiniteGroup::cyclic(2), 1));
        let d = delta_embedding(&point, &AlgebraElement::from_real(&[1.0, 1.0])).unwrap();
        assert_eq!(d.to_bundle_element(&point), AlgebraElement::from_real(&[1.0, 1.0]));
    }
}
