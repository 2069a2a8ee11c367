use crate::algebra::{AlgebraElement, StarAlgebra};
use crate::error::{Error, Result};
use crate::groupoid::ElementId;
use crate::linalg::{self, hermitian_eigen, max_abs, orthonormal_basis, residual, select_columns, CMat};
use crate::spectral::{decompose_subalgebra, BlockDecomposition, Ideal};

const TOL: f64 = 1e-7;
/// Above this many blocks, lattice quantifiers are discharged by the
/// per-block reductions instead of a `2^k` scan.
pub const EXHAUSTIVE_BLOCKS: usize = 20;

/// A unital *-subalgebra `B ⊆ A = C_c(𝒢)` given by an orthonormal basis.
#[derive(Debug, Clone)]
pub struct Inclusion {
    alg: StarAlgebra,
    a_dec: BlockDecomposition,
    basis: CMat,
    b_dec: BlockDecomposition,
    /// `masks[j]`: the A-blocks `i` with `p_i e_j ≠ 0`.
    masks: Vec<u64>,
}

/// Conjugation maps `x ↦ n x n*` and `x ↦ n* x n` as matrices.
struct Conjugations(Vec<(CMat, CMat)>);

impl Inclusion {
    /// `vectors` may be any spanning family of `B`.
    pub fn new(alg: &StarAlgebra, a_dec: &BlockDecomposition, vectors: Vec<AlgebraElement>) -> Result<Self> {
        let n = alg.dim();
        for v in &vectors {
            v.check_len(n)?;
        }
        assert!(a_dec.len() <= 64, "too many blocks for bitmasks");
        let basis = orthonormal_basis(n, vectors.iter().map(AlgebraElement::to_vector), 1e-9);
        let unit = alg.unit().to_vector();
        if residual(&basis, &unit) > 1e-9 * unit.norm().max(1.0) {
            return Err(Error::DegenerateInclusion("the unit of A is not in B".into()));
        }
        let elems: Vec<AlgebraElement> =
            (0..basis.ncols()).map(|k| AlgebraElement::from_vector(&basis.column(k).into())).collect();
        for (i, x) in elems.iter().enumerate() {
            if residual(&basis, &alg.involution(x).to_vector()) > 1e-9 {
                return Err(Error::NotSubalgebra(format!("adjoint of basis vector {i} leaves B")));
            }
            for (j, y) in elems.iter().enumerate() {
                if residual(&basis, &alg.convolve(x, y)?.to_vector()) > 1e-9 {
                    return Err(Error::NotSubalgebra(format!("product of basis vectors {i} and {j} leaves B")));
                }
            }
        }
        let b_dec = decompose_subalgebra(alg, &basis)?;
        let masks = b_dec
            .idempotents()
            .iter()
            .map(|e| a_dec.blocks_touched(alg, e).iter().fold(0u64, |m, &i| m | 1 << i))
            .collect();
        Ok(Inclusion { alg: alg.clone(), a_dec: a_dec.clone(), basis, b_dec, masks })
    }

    /// `C(𝒢⁽⁰⁾) ⊆ C*(𝒢)`.
    pub fn units(alg: &StarAlgebra, a_dec: &BlockDecomposition) -> Result<Self> {
        let vectors = alg.groupoid().units().iter().map(|&u| alg.delta(u)).collect();
        Self::new(alg, a_dec, vectors)
    }

    /// `C*(Y) ⊆ C*(𝒢)` for a subgroupoid with element set `support`.
    pub fn subgroupoid(alg: &StarAlgebra, a_dec: &BlockDecomposition, support: &[ElementId]) -> Result<Self> {
        alg.groupoid().restrict_to_open_subgroupoid(support)?;
        Self::new(alg, a_dec, support.iter().map(|&g| alg.delta(g)).collect())
    }

    pub fn whole(alg: &StarAlgebra, a_dec: &BlockDecomposition) -> Result<Self> {
        Self::new(alg, a_dec, (0..alg.dim()).map(|g| alg.delta(g)).collect())
    }

    pub fn alg(&self) -> &StarAlgebra {
        &self.alg
    }

    pub fn a_dec(&self) -> &BlockDecomposition {
        &self.a_dec
    }

    pub fn b_dec(&self) -> &BlockDecomposition {
        &self.b_dec
    }

    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    pub fn dim_b(&self) -> usize {
        self.basis.ncols()
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn contains_b(&self, x: &AlgebraElement) -> bool {
        residual(&self.basis, &x.to_vector()) <= TOL * x.max_abs().max(1.0)
    }

    /// Bitmask of the B-blocks inside `B ∩ I_L`.
    fn cap(&self, l: u64) -> u64 {
        self.masks.iter().enumerate().filter(|(_, &m)| m & !l == 0).fold(0, |acc, (j, _)| acc | 1 << j)
    }

    /// `B ∩ L` as an ideal of `B`: the blocks `j` with `e_j ∈ L`.
    pub fn intersect_ideal_with_subalgebra(&self, l: &Ideal) -> Ideal {
        Ideal::from_mask(self.cap(l.mask()), self.b_dec.len())
    }

    /// `B ∩ L` as a subspace, computed without the block calculus.
    pub fn intersection_subspace(&self, l: &Ideal) -> CMat {
        let p = self.alg.left_matrix(&self.a_dec.projection(&self.alg, l));
        let n = self.alg.dim();
        let m = (CMat::identity(n, n) - p) * &self.basis;
        let (values, vectors) = hermitian_eigen(&(m.adjoint() * &m));
        let keep: Vec<usize> = (0..values.len()).filter(|&i| values[i] <= 1e-12).collect();
        &self.basis * select_columns(&vectors, &keep)
    }

    /// Every nonzero ideal of `A` meets `B`.
    pub fn is_essential(&self) -> bool {
        let k = self.a_dec.len();
        if k > EXHAUSTIVE_BLOCKS {
            return self.is_dominant_reduced(&Ideal::zero(k));
        }
        (1..1u64 << k).all(|l| self.cap(l) != 0)
    }

    /// `∀L: B∩L ⊆ B∩J ⇒ L ⊆ J`, scanning the whole lattice when it is small.
    pub fn is_dominant(&self, j: &Ideal) -> bool {
        if self.a_dec.len() > EXHAUSTIVE_BLOCKS {
            self.is_dominant_reduced(j)
        } else {
            self.is_dominant_exhaustive(j).expect("small lattice")
        }
    }

    pub fn is_dominant_exhaustive(&self, j: &Ideal) -> Result<bool> {
        let k = self.a_dec.len();
        if k > EXHAUSTIVE_BLOCKS {
            return Err(Error::LatticeTooLarge(k));
        }
        let jm = j.mask();
        let bj = self.cap(jm);
        Ok((0..1u64 << k).all(|l| self.cap(l) & !bj != 0 || l & !jm == 0))
    }

    /// Same answer via single blocks: every A-block outside `J` must contain
    /// a B-block. Testing `L = {i}` is necessary, and any `L ⊄ J` contains such
    /// an `i`, so it is also sufficient.
    pub fn is_dominant_reduced(&self, j: &Ideal) -> bool {
        j.complement().into_iter().all(|i| self.masks.contains(&(1u64 << i)))
    }

    /// A nonzero ideal of `A` with `B ∩ L = 0`, if there is one.
    pub fn non_essential_witness(&self) -> Option<Ideal> {
        (0..self.a_dec.len())
            .find(|&i| !self.masks.contains(&(1u64 << i)))
            .map(|i| Ideal::new(vec![i], self.a_dec.len()))
    }

    fn conjugations(&self, normalizers: &[AlgebraElement]) -> Result<Conjugations> {
        let n = self.alg.dim();
        let outside = CMat::identity(n, n) - &self.basis * self.basis.adjoint();
        let mut maps = Vec::with_capacity(normalizers.len());
        for (idx, nz) in normalizers.iter().enumerate() {
            nz.check_len(n)?;
            let ns = self.alg.involution(nz);
            let m1 = self.alg.left_matrix(nz) * self.alg.right_matrix(&ns);
            let m2 = self.alg.left_matrix(&ns) * self.alg.right_matrix(nz);
            let leak = max_abs(&(&outside * &m1 * &self.basis)).max(max_abs(&(&outside * &m2 * &self.basis)));
            if leak > TOL {
                return Err(Error::NotANormalizer(idx));
            }
            maps.push((m1, m2));
        }
        Ok(Conjugations(maps))
    }

    /// `nJn* ⊆ J` and `n*Jn ⊆ J` for every listed normalizer, tested on a basis of `J`.
    pub fn is_fully_normalized(&self, j: &Ideal, normalizers: &[AlgebraElement]) -> Result<bool> {
        let conj = self.conjugations(normalizers)?;
        let w = self.b_dec.ideal_basis(&self.alg, j);
        let n = self.alg.dim();
        let outside = CMat::identity(n, n) - self.alg.left_matrix(&self.b_dec.projection(&self.alg, j));
        Ok(conj.0.iter().all(|(m1, m2)| max_abs(&(&outside * m1 * &w)) <= TOL && max_abs(&(&outside * m2 * &w)) <= TOL))
    }

    /// `reach[j]`: B-blocks met by `nB_jn*` or `n*B_jn` for some normalizer.
    pub fn conjugation_relation(&self, normalizers: &[AlgebraElement]) -> Result<Vec<u64>> {
        let conj = self.conjugations(normalizers)?;
        let k = self.b_dec.len();
        assert!(k <= 64, "too many blocks for bitmasks");
        let proj: Vec<CMat> = self.b_dec.idempotents().iter().map(|e| self.alg.left_matrix(e)).collect();
        let mut reach = vec![0u64; k];
        for (j, r) in reach.iter_mut().enumerate() {
            let w = self.b_dec.ideal_basis(&self.alg, &Ideal::new(vec![j], k));
            for (m1, m2) in &conj.0 {
                let images = [m1 * &w, m2 * &w];
                for (jj, p) in proj.iter().enumerate() {
                    if images.iter().any(|y| max_abs(&(p * y)) > TOL) {
                        *r |= 1 << jj;
                    }
                }
            }
        }
        Ok(reach)
    }

    /// Fully normalized ideals of `B`, by a scan of all block subsets.
    pub fn fully_normalized_ideals(&self, normalizers: &[AlgebraElement]) -> Result<Vec<Ideal>> {
        let k = self.b_dec.len();
        if k > EXHAUSTIVE_BLOCKS {
            return Err(Error::LatticeTooLarge(k));
        }
        let reach = self.conjugation_relation(normalizers)?;
        Ok((0..1u64 << k)
            .filter(|&t| (0..k).all(|j| t >> j & 1 == 0 || reach[j] & !t == 0))
            .map(|t| Ideal::from_mask(t, k))
            .collect())
    }

    /// A fully normalized ideal other than `0` and `B`, if any.
    pub fn minimality_witness(&self, normalizers: &[AlgebraElement]) -> Result<Option<Ideal>> {
        let k = self.b_dec.len();
        let reach = self.conjugation_relation(normalizers)?;
        let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        for start in 0..k {
            let mut closed = 1u64 << start;
            loop {
                let next = (0..k).filter(|&j| closed >> j & 1 == 1).fold(closed, |acc, j| acc | reach[j]);
                if next == closed {
                    break;
                }
                closed = next;
            }
            if closed != all {
                return Ok(Some(Ideal::from_mask(closed, k)));
            }
        }
        Ok(None)
    }

    /// The only fully normalized ideals of `B` are `0` and `B`.
    pub fn is_inclusion_minimal(&self, normalizers: &[AlgebraElement]) -> Result<bool> {
        let k = self.b_dec.len();
        if k > EXHAUSTIVE_BLOCKS {
            return Ok(self.minimality_witness(normalizers)?.is_none());
        }
        Ok(self.fully_normalized_ideals(normalizers)?.len() == if k == 0 { 1 } else { 2 })
    }

    /// Dimension of the *-algebra generated by `B` and `extra`.
    pub fn generated_dim(&self, extra: &[AlgebraElement]) -> usize {
        let n = self.alg.dim();
        let mut basis: Vec<linalg::CVec> = Vec::new();
        let mut queue: Vec<AlgebraElement> = Vec::new();
        let seeds = (0..self.basis.ncols())
            .map(|k| self.basis.column(k).into())
            .chain(extra.iter().map(AlgebraElement::to_vector))
            .chain(extra.iter().map(|x| self.alg.involution(x).to_vector()));
        for v in seeds {
            if let Some(q) = linalg::orthogonalize(&basis, v, 1e-9) {
                queue.push(AlgebraElement::from_vector(&q));
                basis.push(q);
            }
        }
        while let Some(x) = queue.pop() {
            let current: Vec<AlgebraElement> = basis.iter().map(AlgebraElement::from_vector).collect();
            for y in current {
                for z in [self.alg.convolve(&x, &y).expect("same"), self.alg.convolve(&y, &x).expect("same")] {
                    if let Some(q) = linalg::orthogonalize(&basis, z.to_vector(), 1e-9) {
                        queue.push(AlgebraElement::from_vector(&q));
                        basis.push(q);
                    }
                }
            }
            if basis.len() == n {
                break;
            }
        }
        basis.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::groupoid::FiniteGroupoid;
    use crate::spectral::{all_ideals, block_decomposition};
    use crate::transformation::{GroupAction, TransformationGroupoid};

    fn setup(g: FiniteGroupoid) -> (StarAlgebra, BlockDecomposition) {
        let alg = StarAlgebra::new(g);
        let dec = block_decomposition(&alg).unwrap();
        (alg, dec)
    }

    #[test]
    fn intersections() {
        let (alg, dec) = setup(FiniteGroupoid::from_group(&FiniteGroup::cyclic(2)));
        let inc = Inclusion::new(&alg, &dec, vec![alg.unit().clone()]).unwrap();
        assert!(inc.intersect_ideal_with_subalgebra(&Ideal::whole(2)).is_whole());
        assert!(inc.intersect_ideal_with_subalgebra(&Ideal::zero(2)).is_zero());
        let one = Ideal::new(vec![0], 2);
        assert!(inc.intersect_ideal_with_subalgebra(&one).is_zero());
        assert_eq!(inc.intersection_subspace(&one).ncols(), 0);
        assert_eq!(inc.intersection_subspace(&Ideal::whole(2)).ncols(), 1);
    }

    #[test]
    fn essentiality() {
        let (alg, dec) = setup(FiniteGroupoid::pair(2));
        assert!(Inclusion::units(&alg, &dec).unwrap().is_essential());
        let (alg, dec) = setup(FiniteGroupoid::from_group(&FiniteGroup::cyclic(2)));
        let inc = Inclusion::units(&alg, &dec).unwrap();
        assert!(!inc.is_essential());
        assert!(inc.non_essential_witness().is_some());
        assert!(Inclusion::whole(&alg, &dec).unwrap().is_essential());
    }

    #[test]
    fn dominance() {
        let (alg, dec) = setup(FiniteGroupoid::disjoint_union(&FiniteGroupoid::pair(2), &FiniteGroupoid::pair(1)));
        let inc = Inclusion::units(&alg, &dec).unwrap();
        assert!(inc.is_dominant(&Ideal::whole(2)));
        let j = Ideal::new(vec![0], 2);
        assert!(inc.is_dominant(&j));
        let (alg, dec) = setup(FiniteGroupoid::from_group(&FiniteGroup::cyclic(3)));
        let whole = Inclusion::whole(&alg, &dec).unwrap();
        assert!(whole.is_dominant(&Ideal::zero(3)));
        let units = Inclusion::units(&alg, &dec).unwrap();
        for l in all_ideals(&dec).unwrap() {
            assert_eq!(units.is_dominant_exhaustive(&l).unwrap(), units.is_dominant_reduced(&l));
        }
    }

    #[test]
    fn fully_normalized_ideals_of_units() {
        let (alg, dec) = setup(FiniteGroupoid::pair(2));
        let inc = Inclusion::units(&alg, &dec).unwrap();
        let norms = alg.elementary_normalizers();
        // functions vanishing at the first unit
        let vanish = Ideal::new(vec![1], 2);
        assert!(!inc.is_fully_normalized(&vanish, &norms).unwrap());
        assert!(inc.is_inclusion_minimal(&norms).unwrap());

        let (alg, dec) = setup(FiniteGroupoid::disjoint_union(&FiniteGroupoid::pair(2), &FiniteGroupoid::pair(1)));
        let inc = Inclusion::units(&alg, &dec).unwrap();
        let norms = alg.elementary_normalizers();
        // C_{0,X} for the invariant set X = {3}
        let x = Ideal::new(vec![2], 3);
        assert!(inc.is_fully_normalized(&x, &norms).unwrap());
        assert!(!inc.is_inclusion_minimal(&norms).unwrap());
        assert!(inc.minimality_witness(&norms).unwrap().is_some());
    }

    #[test]
    fn intersections_are_fully_normalized() {
        let t = TransformationGroupoid::new(
            GroupAction::new(FiniteGroup::cyclic(4), 2, (0..4).map(|g| if g % 2 == 0 { vec![0, 1] } else { vec![1, 0] }).collect())
                .unwrap(),
        );
        let (alg, dec) = setup(t.into_groupoid());
        let iso = alg.groupoid().interior_isotropy();
        let inc = Inclusion::subgroupoid(&alg, &dec, &iso.parent).unwrap();
        let norms = alg.elementary_normalizers();
        for l in all_ideals(&dec).unwrap() {
            let j = inc.intersect_ideal_with_subalgebra(&l);
            assert!(inc.is_fully_normalized(&j, &norms).unwrap());
        }
        // relation-based scan agrees with the direct test on every subset
        let listed = inc.fully_normalized_ideals(&norms).unwrap();
        for t in all_ideals(inc.b_dec()).unwrap() {
            assert_eq!(listed.contains(&t), inc.is_fully_normalized(&t, &norms).unwrap());
        }
    }

    #[test]
    fn swap_intiso_inclusion_is_minimal() {
        let (alg, dec) = setup(TransformationGroupoid::new(GroupAction::swap()).into_groupoid());
        let iso = alg.groupoid().interior_isotropy();
        let inc = Inclusion::subgroupoid(&alg, &dec, &iso.parent).unwrap();
        assert!(inc.is_inclusion_minimal(&alg.elementary_normalizers()).unwrap());
    }

    #[test]
    fn bad_inputs() {
        let (alg, dec) = setup(FiniteGroupoid::pair(2));
        assert!(matches!(Inclusion::new(&alg, &dec, vec![alg.delta(0)]), Err(Error::DegenerateInclusion(_))));
        let err = Inclusion::new(&alg, &dec, vec![alg.delta(0), alg.delta(1), alg.delta(2)]).unwrap_err();
        assert!(matches!(err, Error::NotSubalgebra(_)));
        let inc = Inclusion::units(&alg, &dec).unwrap();
        let not_normalizer = &alg.delta(2) + &alg.delta(0);
        assert_eq!(inc.is_fully_normalized(&Ideal::zero(2), &[not_normalizer]), Err(Error::NotANormalizer(0)));
    }
}
