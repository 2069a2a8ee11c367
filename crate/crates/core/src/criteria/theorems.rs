use serde::Serialize;

use crate::algebra::{AlgebraElement, StarAlgebra};
use crate::criteria::Inclusion;
use crate::error::{Error, Result};
use crate::groupoid::{ElementId, Subgroupoid};
use crate::spectral::{block_decomposition, ideal_generated_by, unif_ideal, BlockDecomposition, Ideal};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegSimpleReport {
    pub simple: bool,
    pub essential: bool,
    pub minimal: bool,
    pub holds: bool,
    pub witness: Option<String>,
}

/// Simplicity of `A` against essentiality and minimality of a regular inclusion.
pub fn verify_reg_simple(inc: &Inclusion, normalizers: &[AlgebraElement]) -> Result<RegSimpleReport> {
    let n = inc.alg().dim();
    let generated = inc.generated_dim(normalizers);
    if generated != n {
        return Err(Error::NotRegularInclusion(format!("B and the normalizers generate {generated} of {n} dimensions")));
    }
    let simple = inc.a_dec().len() == 1;
    let essential = inc.is_essential();
    let minimal = inc.is_inclusion_minimal(normalizers)?;
    let holds = simple == (essential && minimal);
    let witness = if !essential {
        inc.non_essential_witness().map(|l| format!("A-ideal {:?} misses B", l.blocks()))
    } else if !minimal {
        inc.minimality_witness(normalizers)?.map(|j| format!("B-ideal {:?} is fully normalized", j.blocks()))
    } else {
        None
    };
    Ok(RegSimpleReport { simple, essential, minimal, holds, witness })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplicityReport {
    pub oracle_simple: bool,
    pub minimal: bool,
    pub principal: bool,
    pub intiso_minimal: bool,
    pub holds: bool,
}

/// Oracle simplicity ⇔ minimal ∧ topologically principal ⇔ the isotropy
/// inclusion is minimal under elementary normalizers.
pub fn verify_simplicity_theorems(alg: &StarAlgebra, dec: &BlockDecomposition) -> Result<SimplicityReport> {
    let g = alg.groupoid();
    let oracle_simple = dec.len() == 1;
    let minimal = g.is_minimal();
    let principal = g.is_topologically_principal();
    let iso = g.interior_isotropy();
    let inc = Inclusion::subgroupoid(alg, dec, &iso.parent)?;
    let intiso_minimal = inc.is_inclusion_minimal(&alg.elementary_normalizers())?;
    let holds = oracle_simple == (minimal && principal) && oracle_simple == intiso_minimal;
    Ok(SimplicityReport { oracle_simple, minimal, principal, intiso_minimal, holds })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AugReport {
    /// `𝒢⁽⁰⁾ ⊊ 𝒢`.
    pub nontrivial_bundle: bool,
    pub nonzero: bool,
    pub proper: bool,
    pub normalizer_invariant: bool,
    pub holds: bool,
    pub blocks: Vec<usize>,
}

fn conjugates_stay_in(
    bundle: &StarAlgebra,
    dec: &BlockDecomposition,
    ideal: &Ideal,
    parent: &[ElementId],
    ambient: &StarAlgebra,
) -> bool {
    let basis = dec.ideal_basis(bundle, ideal);
    let n = ambient.dim();
    for k in 0..basis.ncols() {
        let x = AlgebraElement::from_vector(&basis.column(k).into()).extend_by_zero(parent, n);
        for gamma in 0..n {
            let nz = ambient.delta(gamma);
            let ns = ambient.involution(&nz);
            for y in [ambient.product(&[&nz, &x, &ns]), ambient.product(&[&ns, &x, &nz])] {
                let y = y.expect("same algebra");
                let back = y.restrict(parent);
                if !back.extend_by_zero(parent, n).approx_eq(&y, 1e-9) || !dec.contains(bundle, ideal, &back) {
                    return false;
                }
            }
        }
    }
    true
}

/// The augmentation ideal of a group bundle: nonzero iff the bundle has
/// non-unit arrows, always proper, and invariant under elementary normalizers.
pub fn verify_aug_ideal(bundle: &StarAlgebra) -> Result<AugReport> {
    let gens = bundle.augmentation_generators()?;
    let dec = block_decomposition(bundle)?;
    let v = ideal_generated_by(bundle, &dec, &gens)?;
    let identity: Vec<ElementId> = (0..bundle.dim()).collect();
    let g = bundle.groupoid();
    let nontrivial_bundle = g.units().len() < g.len();
    let nonzero = !v.is_zero();
    let proper = !v.is_whole() || bundle.dim() == 0;
    let normalizer_invariant = conjugates_stay_in(bundle, &dec, &v, &identity, bundle);
    let holds = nonzero == nontrivial_bundle && proper && normalizer_invariant;
    Ok(AugReport { nontrivial_bundle, nonzero, proper, normalizer_invariant, holds, blocks: v.blocks().to_vec() })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AugCertificate {
    pub intiso_nontrivial: bool,
    /// The augmentation ideal of `C*(IntIso 𝒢)` is nonzero, proper and
    /// invariant under conjugation by every `δ_γ` of `C*(𝒢)`.
    pub certified_nonsimple: bool,
    pub oracle_simple: bool,
    pub holds: bool,
}

/// Non-simplicity certificate from the augmentation ideal of the isotropy.
pub fn augmentation_certificate(alg: &StarAlgebra, dec: &BlockDecomposition) -> Result<AugCertificate> {
    let iso = alg.groupoid().interior_isotropy();
    let bundle = StarAlgebra::new(iso.groupoid.clone());
    let bdec = block_decomposition(&bundle)?;
    let v = ideal_generated_by(&bundle, &bdec, &bundle.augmentation_generators()?)?;
    let intiso_nontrivial = !alg.groupoid().is_topologically_principal();
    let invariant = conjugates_stay_in(&bundle, &bdec, &v, &iso.parent, alg);
    let certified_nonsimple = !v.is_zero() && !v.is_whole() && invariant;
    let oracle_simple = dec.len() == 1;
    let holds = if intiso_nontrivial { certified_nonsimple && !oracle_simple } else { !certified_nonsimple };
    Ok(AugCertificate { intiso_nontrivial, certified_nonsimple, oracle_simple, holds })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimpleDomReport {
    /// Units `q` with `A / J^unif_q` simple.
    pub q_simple: Vec<ElementId>,
    pub subsets_checked: usize,
    /// Subsets `Q₀` whose intersection ideal failed to be dominant.
    pub failures: Vec<Vec<ElementId>>,
    /// `Some(essential)` when `Q_simple ≠ ∅` and `⋂ J^unif_q = 0`.
    pub essential_consequence: Option<bool>,
    pub holds: bool,
}

/// For every nonempty `Q₀ ⊆ Q_simple`, `⋂_{q∈Q₀} J^unif_q` is dominant
/// relative to `C(𝒢⁽⁰⁾)`.
pub fn verify_simple_dom(alg: &StarAlgebra, dec: &BlockDecomposition) -> Result<SimpleDomReport> {
    let units = alg.groupoid().units().to_vec();
    if units.len() > 16 {
        return Err(Error::LatticeTooLarge(units.len()));
    }
    let inc = Inclusion::units(alg, dec)?;
    let mut q_simple = Vec::new();
    let mut ideals = Vec::new();
    for &q in &units {
        let j = unif_ideal(alg, dec, q)?;
        if j.complement().len() == 1 {
            q_simple.push(q);
            ideals.push(j);
        }
    }
    let mut failures = Vec::new();
    let mut subsets_checked = 0;
    for sub in 1..1u32 << q_simple.len() {
        let chosen: Vec<usize> = (0..q_simple.len()).filter(|&i| sub >> i & 1 == 1).collect();
        let j = chosen.iter().skip(1).fold(ideals[chosen[0]].clone(), |acc, &i| acc.intersection(&ideals[i]));
        subsets_checked += 1;
        if !inc.is_dominant(&j) {
            failures.push(chosen.iter().map(|&i| q_simple[i]).collect());
        }
    }
    let essential_consequence = if q_simple.is_empty() {
        None
    } else {
        let all = ideals.iter().skip(1).fold(ideals[0].clone(), |acc, j| acc.intersection(j));
        all.is_zero().then(|| inc.is_essential())
    };
    let holds = failures.is_empty() && essential_consequence != Some(false);
    Ok(SimpleDomReport { q_simple, subsets_checked, failures, essential_consequence, holds })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralNormReport {
    pub cases: usize,
    pub mismatches: Vec<(ElementId, ElementId, ElementId)>,
}

/// For `C(𝒢⁽⁰⁾) ⊆ D = C*(IntIso 𝒢) ⊆ C*(𝒢)` and `n = δ_γ`:
/// `n C_{0,q₁} n* ⊆ C_{0,q₂}` iff `n J^unif_{q₁} n* ⊆ J^unif_{q₂}` (ideals of `D`).
pub fn verify_central_norm_ideal(alg: &StarAlgebra, iso: &Subgroupoid) -> Result<CentralNormReport> {
    let d = StarAlgebra::new(iso.groupoid.clone());
    let ddec = block_decomposition(&d)?;
    let g = alg.groupoid();
    let n = alg.dim();
    // units of D are listed first and match the units of 𝒢
    let units: Vec<(ElementId, ElementId)> = d.groupoid().units().iter().map(|&l| (l, iso.parent[l])).collect();
    let mut ideals = Vec::new();
    let mut bases = Vec::new();
    for &(local, _) in &units {
        let j = unif_ideal(&d, &ddec, local)?;
        bases.push(ddec.ideal_basis(&d, &j));
        ideals.push(j);
    }
    let mut cases = 0;
    let mut mismatches = Vec::new();
    for gamma in 0..n {
        let nz = alg.delta(gamma);
        let ns = alg.involution(&nz);
        for (i1, &(_, q1)) in units.iter().enumerate() {
            for (i2, &(_, q2)) in units.iter().enumerate() {
                cases += 1;
                // (i): images of δ_u, u ≠ q₁, vanish at q₂ and live on units
                let functions_ok = g.units().iter().filter(|&&u| u != q1).all(|&u| {
                    let y = alg.product(&[&nz, &alg.delta(u), &ns]).expect("same algebra");
                    y[q2].norm() <= 1e-9 && y.support(1e-9).iter().all(|&x| g.is_unit(x))
                });
                let ideals_ok = (0..bases[i1].ncols()).all(|k| {
                    let x = AlgebraElement::from_vector(&bases[i1].column(k).into()).extend_by_zero(&iso.parent, n);
                    let y = alg.product(&[&nz, &x, &ns]).expect("same algebra");
                    ddec.contains(&d, &ideals[i2], &y.restrict(&iso.parent))
                });
                if functions_ok != ideals_ok {
                    mismatches.push((gamma, q1, q2));
                }
            }
        }
    }
    Ok(CentralNormReport { cases, mismatches })
}
