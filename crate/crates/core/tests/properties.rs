use std::sync::LazyLock;

use gpdlab::algebra::{AlgebraElement, StarAlgebra};
use gpdlab::corpus::actions_up_to_relabeling;
use gpdlab::criteria::Inclusion;
use gpdlab::group::FiniteGroup;
use gpdlab::groupoid::FiniteGroupoid;
use gpdlab::linalg::op_norm;
use gpdlab::spectral::{
    all_ideals, block_decomposition, gns, ideal_generated_by, norm, p_unif, regular_rep_at, BlockDecomposition, Ideal,
};
use gpdlab::transformation::{GroupAction, TransformationGroupoid};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-8;

struct Case {
    alg: StarAlgebra,
    dec: BlockDecomposition,
}

fn case(g: FiniteGroupoid) -> Case {
    let alg = StarAlgebra::new(g);
    let dec = block_decomposition(&alg).unwrap();
    Case { alg, dec }
}

static POOL: LazyLock<Vec<Case>> = LazyLock::new(|| {
    let z2 = FiniteGroup::cyclic(2);
    let s3 = FiniteGroup::symmetric(3);
    let atoms = vec![
        FiniteGroupoid::pair(1),
        FiniteGroupoid::pair(2),
        FiniteGroupoid::pair(3),
        FiniteGroupoid::from_group(&z2),
        FiniteGroupoid::from_group(&s3),
        FiniteGroupoid::from_group(&FiniteGroup::quaternion()),
        FiniteGroupoid::group_bundle(&[z2.clone(), FiniteGroup::cyclic(3)]),
        TransformationGroupoid::new(GroupAction::swap()).into_groupoid(),
        TransformationGroupoid::new(GroupAction::trivial(z2.clone(), 2)).into_groupoid(),
        TransformationGroupoid::new(GroupAction::new(FiniteGroup::cyclic(4), 2, vec![vec![0, 1], vec![1, 0], vec![0, 1], vec![1, 0]]).unwrap())
            .into_groupoid(),
    ];
    let mut out: Vec<Case> = atoms.iter().cloned().map(case).collect();
    out.push(case(FiniteGroupoid::disjoint_union(&atoms[1], &atoms[3])));
    out.push(case(FiniteGroupoid::disjoint_union(&atoms[7], &atoms[8])));
    out.push(case(FiniteGroupoid::disjoint_union(&atoms[0], &atoms[4])));
    out
});

static BUNDLES: LazyLock<Vec<Case>> = LazyLock::new(|| {
    let groups = FiniteGroup::catalog(6);
    let mut out = Vec::new();
    for (i, a) in groups.iter().enumerate() {
        for b in &groups[i..] {
            out.push(case(FiniteGroupoid::group_bundle(&[a.clone(), b.clone()])));
        }
    }
    out.push(case(FiniteGroupoid::group_bundle(&[FiniteGroup::cyclic(2), FiniteGroup::trivial(), FiniteGroup::klein_four()])));
    out
});

static ACTIONS: LazyLock<Vec<TransformationGroupoid>> = LazyLock::new(|| {
    let mut out = Vec::new();
    for g in FiniteGroup::catalog(6) {
        for m in 1..=3 {
            out.extend(actions_up_to_relabeling(&g, m).into_iter().map(TransformationGroupoid::new));
        }
    }
    out
});

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn scale(f: &AlgebraElement) -> f64 {
    f.max_abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_is_associative(idx in 0..13usize, seed: u64) {
        let c = &POOL[idx];
        let mut rng = rng_for(seed);
        let n = c.alg.dim();
        let (f, g, h) = (AlgebraElement::random(&mut rng, n), AlgebraElement::random(&mut rng, n), AlgebraElement::random(&mut rng, n));
        let left = c.alg.convolve(&c.alg.convolve(&f, &g).unwrap(), &h).unwrap();
        let right = c.alg.convolve(&f, &c.alg.convolve(&g, &h).unwrap()).unwrap();
        prop_assert!(left.approx_eq(&right, TOL * scale(&left)));
    }

    #[test]
    fn involution_is_antimultiplicative(idx in 0..13usize, seed: u64) {
        let c = &POOL[idx];
        let mut rng = rng_for(seed);
        let n = c.alg.dim();
        let (f, g) = (AlgebraElement::random(&mut rng, n), AlgebraElement::random(&mut rng, n));
        prop_assert_eq!(c.alg.involution(&c.alg.involution(&f)), f.clone());
        let lhs = c.alg.involution(&c.alg.convolve(&f, &g).unwrap());
        let rhs = c.alg.convolve(&c.alg.involution(&g), &c.alg.involution(&f)).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, TOL * scale(&lhs)));
    }

    #[test]
    fn c_star_identity_and_i_norm_bound(idx in 0..13usize, seed: u64) {
        let c = &POOL[idx];
        let mut rng = rng_for(seed);
        let f = AlgebraElement::random(&mut rng, c.alg.dim());
        let nf = norm(&c.alg, &f);
        let nff = norm(&c.alg, &c.alg.convolve(&c.alg.involution(&f), &f).unwrap());
        prop_assert!((nff - nf * nf).abs() <= 1e-7 * nf * nf.max(1.0));
        prop_assert!(nf <= c.alg.i_norm(&f) + 1e-9);
        // the blockwise norm is the same norm
        prop_assert!((c.dec.norm(&c.alg, &f) - nf).abs() <= 1e-7 * nf.max(1.0));
    }

    #[test]
    fn expectation_is_a_conditional_expectation(idx in 0..13usize, seed: u64) {
        let c = &POOL[idx];
        let mut rng = rng_for(seed);
        let n = c.alg.dim();
        let f = AlgebraElement::random(&mut rng, n);
        let e = c.alg.expectation(&f);
        prop_assert_eq!(c.alg.expectation(&e), e.clone());
        let b1 = c.alg.expectation(&AlgebraElement::random(&mut rng, n));
        let b2 = c.alg.expectation(&AlgebraElement::random(&mut rng, n));
        let lhs = c.alg.expectation(&c.alg.product(&[&b1, &f, &b2]).unwrap());
        let rhs = c.alg.product(&[&b1, &e, &b2]).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, TOL * scale(&lhs)));
        // 𝔼(f*f) is a nonnegative function on units
        let pos = c.alg.expectation(&c.alg.convolve(&c.alg.involution(&f), &f).unwrap());
        for &u in c.alg.groupoid().units() {
            prop_assert!(pos[u].im.abs() <= 1e-9 && pos[u].re >= -1e-9);
        }
    }

    #[test]
    fn generated_ideal_is_the_touched_blocks(idx in 0..13usize, seed: u64) {
        let c = &POOL[idx];
        let mut rng = rng_for(seed);
        let n = c.alg.dim();
        let k = rng.random_range(1..=n);
        let support: Vec<usize> = (0..k).map(|_| rng.random_range(0..n)).collect();
        let x = AlgebraElement::random_on(&mut rng, n, &support);
        let ideal = ideal_generated_by(&c.alg, &c.dec, std::slice::from_ref(&x)).unwrap();
        prop_assert_eq!(ideal.blocks().to_vec(), c.dec.blocks_touched(&c.alg, &x));
        prop_assert!(c.dec.contains(&c.alg, &ideal, &x));
    }

    #[test]
    fn gns_of_point_mass_is_regular_rep(idx in 0..13usize, seed: u64) {
        let c = &POOL[idx];
        let mut rng = rng_for(seed);
        let units = c.alg.groupoid().units();
        let u = units[rng.random_range(0..units.len())];
        let f = AlgebraElement::random(&mut rng, c.alg.dim());
        let data = gns(&c.alg, &c.alg.delta(u)).unwrap();
        prop_assert_eq!(data.dim(), c.alg.groupoid().source_fiber(u).len());
        let via_gns = op_norm(&data.pi(&c.alg, &f));
        let via_gamma = op_norm(&regular_rep_at(&c.alg, u).unwrap().apply(&f));
        prop_assert!((via_gns - via_gamma).abs() <= 1e-8 * via_gamma.max(1.0));
    }

    #[test]
    fn essential_iff_zero_is_dominant(idx in 0..13usize) {
        let c = &POOL[idx];
        let inc = Inclusion::units(&c.alg, &c.dec).unwrap();
        let zero = Ideal::zero(c.dec.len());
        prop_assert_eq!(inc.is_essential(), inc.is_dominant(&zero));
        prop_assert_eq!(inc.is_essential(), inc.non_essential_witness().is_none());
        for j in all_ideals(&c.dec).unwrap() {
            prop_assert_eq!(inc.is_dominant_exhaustive(&j).unwrap(), inc.is_dominant_reduced(&j));
        }
    }

    #[test]
    fn ideal_traces_on_units_are_normalized(idx in 0..13usize) {
        let c = &POOL[idx];
        let inc = Inclusion::units(&c.alg, &c.dec).unwrap();
        let normalizers = c.alg.elementary_normalizers();
        for l in all_ideals(&c.dec).unwrap() {
            let trace = inc.intersect_ideal_with_subalgebra(&l);
            prop_assert!(inc.is_fully_normalized(&trace, &normalizers).unwrap());
        }
    }

    #[test]
    fn bisection_generators_give_the_singleton_ideal(idx in 0..22usize, seed: u64) {
        let c = &BUNDLES[idx % BUNDLES.len()];
        let g = c.alg.groupoid();
        let mut rng = rng_for(seed);
        let singletons = c.alg.augmentation_generators().unwrap();
        let target = ideal_generated_by(&c.alg, &c.dec, &singletons).unwrap();
        // a bisection of a bundle picks at most one element over each unit
        let mut gens = Vec::new();
        for _ in 0..6 {
            let mut f = c.alg.zero();
            for &u in g.units() {
                if rng.random_bool(0.7) {
                    let fiber = g.source_fiber(u);
                    let gamma = fiber[rng.random_range(0..fiber.len())];
                    f = &(&f + &c.alg.delta(gamma)) - &c.alg.delta(u);
                }
            }
            prop_assert!(c.dec.contains(&c.alg, &target, &f));
            gens.push(f);
        }
        // every singleton bisection is among them once added, so the ideals agree
        let from_bisections = ideal_generated_by(&c.alg, &c.dec, &gens).unwrap();
        prop_assert!(from_bisections.is_subset(&target));
        gens.extend(singletons);
        prop_assert_eq!(ideal_generated_by(&c.alg, &c.dec, &gens).unwrap(), target);
    }

    #[test]
    fn p_unif_is_an_infimum_over_cutoffs(idx in 0..22usize, seed: u64) {
        let c = &BUNDLES[idx % BUNDLES.len()];
        let g = c.alg.groupoid();
        let mut rng = rng_for(seed);
        let f = AlgebraElement::random(&mut rng, c.alg.dim());
        for &q in g.units() {
            let p = p_unif(&c.alg, &c.dec, q, &f).unwrap();
            let at_q = norm(&c.alg, &c.alg.convolve(&c.alg.delta(q), &f).unwrap());
            prop_assert!((at_q - p).abs() <= 1e-8 * p.max(1.0));
            for _ in 0..8 {
                let mut phi = c.alg.zero();
                for &u in g.units() {
                    phi[u] = Complex64::new(if u == q { 1.0 } else { rng.random::<f64>() }, 0.0);
                }
                let cut = norm(&c.alg, &c.alg.convolve(&phi, &f).unwrap());
                prop_assert!(cut >= p - 1e-8 * p.max(1.0));
            }
        }
    }

    #[test]
    fn upsilon_intertwines(idx in 0..1000usize, seed: u64) {
        let t = &ACTIONS[idx % ACTIONS.len()];
        let alg = StarAlgebra::new(t.groupoid().clone());
        let mut rng = rng_for(seed);
        let (f, h) = (AlgebraElement::random(&mut rng, alg.dim()), AlgebraElement::random(&mut rng, alg.dim()));
        let (uf, uh) = (t.upsilon(&f).unwrap(), t.upsilon(&h).unwrap());
        let prod = t.upsilon(&alg.convolve(&f, &h).unwrap()).unwrap();
        let cross = t.crossed_product(&uf, &uh);
        for (a, b) in prod.coeffs.iter().flatten().zip(cross.coeffs.iter().flatten()) {
            prop_assert!((a - b).norm() <= 1e-9 * scale(&f) * scale(&h) * alg.dim() as f64);
        }
        prop_assert_eq!(t.upsilon(&alg.involution(&f)).unwrap(), t.crossed_involution(&uf));
        prop_assert_eq!(t.upsilon_inverse(&uf), f);
    }
}
