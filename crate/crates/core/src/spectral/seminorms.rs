use crate::algebra::{AlgebraElement, StarAlgebra};
use crate::error::{Error, Result};
use crate::groupoid::{ElementId, FiniteGroupoid};
use crate::linalg::op_norm;
use crate::spectral::{gns, ideal_generated_by, BlockDecomposition, Ideal};

fn require_unit(alg: &StarAlgebra, q: ElementId) -> Result<()> {
    let g = alg.groupoid();
    if q >= g.len() || !g.is_unit(q) {
        return Err(Error::NotAUnit(q));
    }
    Ok(())
}

fn require_central(alg: &StarAlgebra) -> Result<()> {
    let g = alg.groupoid();
    match (0..g.len()).find(|&x| g.r(x) != g.s(x)) {
        Some(x) => Err(Error::NotCentralInclusion(x)),
        None => Ok(()),
    }
}

/// `{δ_u : u ≠ q}`, spanning `C_{0,q}(𝒢⁽⁰⁾)`.
pub fn unif_generators(alg: &StarAlgebra, q: ElementId) -> Result<Vec<AlgebraElement>> {
    require_unit(alg, q)?;
    Ok(alg.groupoid().units().iter().filter(|&&u| u != q).map(|&u| alg.delta(u)).collect())
}

/// `J^unif_q`, the ideal generated by `C_{0,q}`.
pub fn unif_ideal(alg: &StarAlgebra, dec: &BlockDecomposition, q: ElementId) -> Result<Ideal> {
    ideal_generated_by(alg, dec, &unif_generators(alg, q)?)
}

/// Quotient norm modulo `J^unif_q`, computed blockwise.
pub fn p_unif(alg: &StarAlgebra, dec: &BlockDecomposition, q: ElementId, f: &AlgebraElement) -> Result<f64> {
    require_central(alg)?;
    f.check_len(alg.dim())?;
    let j = unif_ideal(alg, dec, q)?;
    let norms = dec.block_norms(alg, f);
    Ok(j.complement().into_iter().map(|i| norms[i]).fold(0.0, f64::max))
}

/// Operator norm in the GNS representation of `ev_q ∘ 𝔼`.
pub fn p_e(alg: &StarAlgebra, q: ElementId, f: &AlgebraElement) -> Result<f64> {
    require_central(alg)?;
    require_unit(alg, q)?;
    f.check_len(alg.dim())?;
    let data = gns(alg, &alg.delta(q))?;
    Ok(op_norm(&data.pi(alg, f)))
}

/// `𝔢_u : f ↦ Σ_{γ ∈ 𝒢u} f(γ) v_γ` into the group algebra of the fiber over `u`.
#[derive(Debug, Clone)]
pub struct EvaluationHom {
    pub unit: ElementId,
    pub target: StarAlgebra,
    /// `parent[i]` is the bundle id of the `i`-th fiber element.
    pub parent: Vec<ElementId>,
}

impl EvaluationHom {
    pub fn apply(&self, f: &AlgebraElement) -> AlgebraElement {
        f.restrict(&self.parent)
    }

    /// Blocks of the source algebra killed by the map.
    pub fn kernel(&self, dec: &BlockDecomposition) -> Ideal {
        let blocks = (0..dec.len()).filter(|&i| self.apply(&dec.idempotents()[i]).max_abs() <= 1e-9).collect();
        Ideal::new(blocks, dec.len())
    }
}

pub fn evaluation_hom(alg: &StarAlgebra, u: ElementId) -> Result<EvaluationHom> {
    let g: &FiniteGroupoid = alg.groupoid();
    if let Some(x) = (0..g.len()).find(|&x| g.r(x) != g.s(x)) {
        return Err(Error::NotGroupBundle(x));
    }
    require_unit(alg, u)?;
    let fiber = g.source_fiber(u);
    let sub = g.restrict_to_open_subgroupoid(&fiber)?;
    Ok(EvaluationHom { unit: u, target: StarAlgebra::new(sub.groupoid), parent: sub.parent })
}
