//! Transformation groupoids `G × Q` of finite group actions and the
//! crossed-product dictionary.
//!
//! Conventions: `s(g, q) = q`, `r(g, q) = gq`, `(g₁, g₂q)·(g₂, q) = (g₁g₂, q)`
//! and `(g, q)⁻¹ = (g⁻¹, gq)`.

use num_complex::Complex64;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::groupoid::{ElementId, FiniteGroupoid, RawGroupoid};
use crate::linalg::ZERO;

/// A validated action of a finite group on `{0, .., space - 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    space: usize,
    act: Vec<Vec<usize>>,
}

impl GroupAction {
    /// `act[g][q]` is `g·q`.
    pub fn new(group: FiniteGroup, space: usize, act: Vec<Vec<usize>>) -> Result<Self> {
        if act.len() != group.order() {
            return Err(Error::InvalidAction(format!("{} rows for a group of order {}", act.len(), group.order())));
        }
        for (g, row) in act.iter().enumerate() {
            if row.len() != space {
                return Err(Error::InvalidAction(format!("row {g} has {} entries, expected {space}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&q| q >= space) {
                return Err(Error::InvalidAction(format!("row {g} sends a point to {bad}")));
            }
        }
        let e = group.identity();
        if let Some(q) = (0..space).find(|&q| act[e][q] != q) {
            return Err(Error::InvalidAction(format!("identity moves point {q}")));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let ab = group.mul(a, b);
                if let Some(q) = (0..space).find(|&q| act[a][act[b][q]] != act[ab][q]) {
                    return Err(Error::InvalidAction(format!("g{a}·(g{b}·{q}) != (g{a}g{b})·{q}")));
                }
            }
        }
        Ok(GroupAction { group, space, act })
    }

    /// Every group element fixes every point.
    pub fn trivial(group: FiniteGroup, space: usize) -> Self {
        let act = vec![(0..space).collect(); group.order()];
        Self::new(group, space, act).expect("trivial action")
    }

    /// Action through a homomorphism into `Sym(space)`, given on all elements.
    pub fn from_permutations(group: FiniteGroup, images: Vec<Vec<usize>>) -> Result<Self> {
        let space = images.first().map_or(0, Vec::len);
        Self::new(group, space, images)
    }

    /// `ℤ/2` swapping two points.
    pub fn swap() -> Self {
        Self::new(FiniteGroup::cyclic(2), 2, vec![vec![0, 1], vec![1, 0]]).expect("swap")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn space(&self) -> usize {
        self.space
    }

    pub fn act(&self, g: usize, q: usize) -> usize {
        self.act[g][q]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.act
    }

    /// `Q^g`.
    pub fn fixed_point_set(&self, g: usize) -> Vec<usize> {
        (0..self.space).filter(|&q| self.act[g][q] == q).collect()
    }

    /// `G_q`, sorted.
    pub fn stabilizer(&self, q: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.act[g][q] == q).collect()
    }

    /// Pointwise stabilizer `G_V` of a set of points.
    pub fn set_stabilizer(&self, v: &[usize]) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| v.iter().all(|&q| self.act[g][q] == q)).collect()
    }

    /// A neighborhood basis at `q`; in the discrete topology `{{q}}` suffices.
    pub fn neighborhood_basis(&self, q: usize) -> Vec<Vec<usize>> {
        vec![vec![q]]
    }

    /// `G°_q = ⋃_{V ∋ q open} G_V`.
    pub fn interior_stabilizer(&self, q: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.neighborhood_basis(q).iter().flat_map(|v| self.set_stabilizer(v)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn orbit_count(&self) -> usize {
        let mut seen = vec![false; self.space];
        let mut count = 0;
        for q in 0..self.space {
            if !seen[q] {
                count += 1;
                for g in 0..self.group.order() {
                    seen[self.act[g][q]] = true;
                }
            }
        }
        count
    }
}

/// The groupoid `G × Q` with the bijection `(g, q) ↔ id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformationGroupoid {
    action: GroupAction,
    groupoid: FiniteGroupoid,
    /// Group elements ordered identity first; `id(g, q) = rank[g] * |Q| + q`.
    order: Vec<usize>,
    rank: Vec<usize>,
}

/// Crossed-product coefficients `a_g(q)`, indexed `[g][q]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossedProductElement {
    pub coeffs: Vec<Vec<Complex64>>,
}

impl TransformationGroupoid {
    pub fn new(action: GroupAction) -> Self {
        let order = action.group.elements_identity_first();
        let mut rank = vec![0; order.len()];
        for (i, &g) in order.iter().enumerate() {
            rank[g] = i;
        }
        let m = action.space;
        let k = order.len();
        let id = |g: usize, q: usize| rank[g] * m + q;
        let grp = &action.group;
        let e = grp.identity();
        let mut raw = RawGroupoid {
            elements: k * m,
            units: (0..m).collect(),
            r: vec![0; k * m],
            s: vec![0; k * m],
            inv: vec![0; k * m],
            mul: Vec::new(),
        };
        for &g in &order {
            for q in 0..m {
                let x = id(g, q);
                let gq = action.act[g][q];
                raw.r[x] = id(e, gq);
                raw.s[x] = id(e, q);
                raw.inv[x] = id(grp.inv(g), gq);
                // (g1, g2 q)·(g2, q)
                for &g1 in &order {
                    raw.mul.push([id(g1, gq), x, id(grp.mul(g1, g), q)]);
                }
            }
        }
        let labels = order
            .iter()
            .flat_map(|&g| (0..m).map(move |q| (g, q)))
            .map(|(g, q)| format!("({},{})", grp.element_name(g), q))
            .collect();
        let groupoid = FiniteGroupoid::build(raw).expect("transformation groupoid axioms").with_labels(labels);
        TransformationGroupoid { action, groupoid, order, rank }
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn into_groupoid(self) -> FiniteGroupoid {
        self.groupoid
    }

    pub fn id(&self, g: usize, q: usize) -> ElementId {
        self.rank[g] * self.action.space + q
    }

    /// Inverse of [`Self::id`].
    pub fn pair(&self, x: ElementId) -> (usize, usize) {
        let m = self.action.space;
        (self.order[x / m], x % m)
    }

    /// `a_g(q) = f(g, g⁻¹q)`.
    pub fn upsilon(&self, f: &AlgebraElement) -> Result<CrossedProductElement> {
        f.check_len(self.groupoid.len())?;
        let grp = &self.action.group;
        let coeffs = (0..grp.order())
            .map(|g| {
                (0..self.action.space)
                    .map(|q| f[self.id(g, self.action.act[grp.inv(g)][q])])
                    .collect()
            })
            .collect();
        Ok(CrossedProductElement { coeffs })
    }

    /// Inverse of [`Self::upsilon`]: `f(g, q) = a_g(gq)`.
    pub fn upsilon_inverse(&self, a: &CrossedProductElement) -> AlgebraElement {
        let mut f = AlgebraElement::zeros(self.groupoid.len());
        for (g, row) in a.coeffs.iter().enumerate() {
            for q in 0..self.action.space {
                f[self.id(g, q)] = row[self.action.act[g][q]];
            }
        }
        f
    }

    /// `(a×b)_g(q) = Σ_{g₁g₂=g} a_{g₁}(q) b_{g₂}(g₁⁻¹q)`.
    pub fn crossed_product(&self, a: &CrossedProductElement, b: &CrossedProductElement) -> CrossedProductElement {
        let grp = &self.action.group;
        let m = self.action.space;
        let mut out = vec![vec![ZERO; m]; grp.order()];
        for g1 in 0..grp.order() {
            for g2 in 0..grp.order() {
                let g = grp.mul(g1, g2);
                for q in 0..m {
                    out[g][q] += a.coeffs[g1][q] * b.coeffs[g2][self.action.act[grp.inv(g1)][q]];
                }
            }
        }
        CrossedProductElement { coeffs: out }
    }

    /// `(a*)_g(q) = conj(a_{g⁻¹}(g⁻¹q))`.
    pub fn crossed_involution(&self, a: &CrossedProductElement) -> CrossedProductElement {
        let grp = &self.action.group;
        let coeffs = (0..grp.order())
            .map(|g| {
                let gi = grp.inv(g);
                (0..self.action.space).map(|q| a.coeffs[gi][self.action.act[gi][q]].conj()).collect()
            })
            .collect();
        CrossedProductElement { coeffs }
    }

    /// Pairs `(g, Int(Q^g))` with nonempty support, in group order.
    pub fn interior_isotropy_subalgebra_support(&self) -> Vec<(usize, Vec<usize>)> {
        (0..self.action.group.order())
            .map(|g| (g, self.action.fixed_point_set(g)))
            .filter(|(_, fixed)| !fixed.is_empty())
            .collect()
    }

    /// `Q × G` as a group bundle, the groupoid of `C(Q) ⊗ ℂ[G]`.
    pub fn tensor_bundle(&self) -> FiniteGroupoid {
        FiniteGroupoid::group_bundle(&vec![self.action.group.clone(); self.action.space])
    }

    /// Element of [`Self::tensor_bundle`] holding `δ_q ⊗ v_g`.
    pub fn tensor_id(&self, q: usize, g: usize) -> ElementId {
        let m = self.action.space;
        match self.rank[g] {
            0 => q,
            r => m + q * (self.order.len() - 1) + (r - 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::StarAlgebra;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn swap_is_pair_groupoid_like() {
        let t = TransformationGroupoid::new(GroupAction::swap());
        let g = t.groupoid();
        assert_eq!(g.len(), 4);
        assert!(g.is_minimal());
        assert!(g.is_topologically_principal());
    }

    #[test]
    fn trivial_group_gives_unit_space() {
        let t = TransformationGroupoid::new(GroupAction::trivial(FiniteGroup::trivial(), 3));
        assert_eq!(t.groupoid().len(), 3);
        assert_eq!(t.groupoid().units(), &[0, 1, 2]);
    }

    #[test]
    fn z2_on_point_is_group() {
        let t = TransformationGroupoid::new(GroupAction::trivial(FiniteGroup::cyclic(2), 1));
        assert_eq!(t.groupoid().units(), &[0]);
        assert!(!t.groupoid().is_topologically_principal());
    }

    #[test]
    fn trivial_z2_on_two_points_isotropy() {
        let t = TransformationGroupoid::new(GroupAction::trivial(FiniteGroup::cyclic(2), 2));
        let iso = t.groupoid().interior_isotropy();
        assert_eq!(iso.groupoid.len(), 4);
        assert!(iso.groupoid.isotropy().groups.iter().all(|h| h.order() == 2));
    }

    #[test]
    fn stabilizers() {
        let swap = GroupAction::swap();
        assert!(swap.fixed_point_set(1).is_empty());
        let triv = GroupAction::trivial(FiniteGroup::cyclic(3), 2);
        assert_eq!(triv.stabilizer(1), vec![0, 1, 2]);
        // Z4 through the quotient swap
        let z4 = FiniteGroup::cyclic(4);
        let act = (0..4).map(|g| if g % 2 == 0 { vec![0, 1] } else { vec![1, 0] }).collect();
        let a = GroupAction::new(z4, 2, act).unwrap();
        for q in 0..2 {
            assert_eq!(a.stabilizer(q), vec![0, 2]);
            assert_eq!(a.interior_stabilizer(q), a.stabilizer(q));
        }
    }

    #[test]
    fn invalid_action_rejected() {
        let z3 = FiniteGroup::cyclic(3);
        // generator as a transposition is not a homomorphism from Z3
        let act = vec![vec![0, 1], vec![1, 0], vec![1, 0]];
        assert!(matches!(GroupAction::new(z3, 2, act), Err(Error::InvalidAction(_))));
    }

    #[test]
    fn upsilon_of_deltas() {
        let t = TransformationGroupoid::new(GroupAction::swap());
        let e = AlgebraElement::delta(4, t.id(0, 1));
        let a = t.upsilon(&e).unwrap();
        assert_eq!(a.coeffs[0], vec![ZERO, Complex64::new(1.0, 0.0)]);
        assert_eq!(a.coeffs[1], vec![ZERO, ZERO]);
        let a = t.upsilon(&AlgebraElement::delta(4, t.id(1, 0))).unwrap();
        // a_g = indicator of g·0 = 1
        assert_eq!(a.coeffs[1], vec![ZERO, Complex64::new(1.0, 0.0)]);
    }

    #[test]
    fn upsilon_intertwines_operations() {
        let z4 = FiniteGroup::cyclic(4);
        let act = (0..4).map(|g| if g % 2 == 0 { vec![0, 1, 2] } else { vec![1, 0, 2] }).collect();
        let t = TransformationGroupoid::new(GroupAction::new(z4, 3, act).unwrap());
        let alg = StarAlgebra::new(t.groupoid().clone());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let f = AlgebraElement::random(&mut rng, alg.dim());
            let h = AlgebraElement::random(&mut rng, alg.dim());
            let uf = t.upsilon(&f).unwrap();
            let uh = t.upsilon(&h).unwrap();
            assert_eq!(t.upsilon_inverse(&uf), f);
            let lhs = t.upsilon(&alg.convolve(&f, &h).unwrap()).unwrap();
            let rhs = t.crossed_product(&uf, &uh);
            let star = t.upsilon(&alg.involution(&f)).unwrap();
            let star_rhs = t.crossed_involution(&uf);
            for g in 0..4 {
                for q in 0..3 {
                    assert!((lhs.coeffs[g][q] - rhs.coeffs[g][q]).norm() < 1e-12);
                    assert!((star.coeffs[g][q] - star_rhs.coeffs[g][q]).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn subalgebra_supports() {
        let swap = TransformationGroupoid::new(GroupAction::swap());
        assert_eq!(swap.interior_isotropy_subalgebra_support(), vec![(0, vec![0, 1])]);
        let triv = TransformationGroupoid::new(GroupAction::trivial(FiniteGroup::cyclic(2), 2));
        assert_eq!(triv.interior_isotropy_subalgebra_support().len(), 2);
        // V4 = Z2 x Z2 with index 2x + y: the first factor swaps, the second is trivial
        let v4 = FiniteGroup::klein_four();
        let act: Vec<Vec<usize>> = (0..4).map(|g| if g / 2 == 1 { vec![1, 0] } else { vec![0, 1] }).collect();
        let t = TransformationGroupoid::new(GroupAction::new(v4.clone(), 2, act).unwrap());
        let supp = t.interior_isotropy_subalgebra_support();
        assert_eq!(supp.len(), 2);
        for (g, fixed) in supp {
            assert!(g / 2 == 0);
            assert_eq!(fixed, vec![0, 1]);
        }
    }

    #[test]
    fn tensor_ids_match_bundle_labels() {
        let t = TransformationGroupoid::new(GroupAction::trivial(FiniteGroup::cyclic(3), 2));
        let b = t.tensor_bundle();
        let grp = t.action().group();
        for q in 0..2 {
            for g in 0..3 {
                assert_eq!(b.label(t.tensor_id(q, g)), format!("{}@{}", grp.element_name(g), q));
            }
        }
    }
}
