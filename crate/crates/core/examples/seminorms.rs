//! The seminorms p_unif and p_E on a group bundle, and the GNS data of a
//! state.
//!
//! ```bash
//! cargo run -p gpdlab --example seminorms
//! ```

use gpdlab::algebra::{AlgebraElement, StarAlgebra};
use gpdlab::group::FiniteGroup;
use gpdlab::groupoid::FiniteGroupoid;
use gpdlab::spectral::{block_decomposition, evaluation_hom, gns, kernel_ideal_k, p_e, p_unif, unif_ideal};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = FiniteGroupoid::group_bundle(&[FiniteGroup::cyclic(3), FiniteGroup::klein_four(), FiniteGroup::trivial()]);
    let alg = StarAlgebra::new(g);
    let dec = block_decomposition(&alg)?;
    let f = AlgebraElement::random(&mut rng, alg.dim());
    for &q in alg.groupoid().units() {
        println!(
            "q = {q}: J_unif keeps blocks {:?}; p_unif {:.9}, p_E {:.9}",
            unif_ideal(&alg, &dec, q)?.complement(),
            p_unif(&alg, &dec, q, &f)?,
            p_e(&alg, q, &f)?
        );
        let ev = evaluation_hom(&alg, q)?;
        println!("  kernel of e_{q}: {:?}", ev.kernel(&dec).blocks());
    }

    // the trace state sum_u delta_u is faithful; a single delta_u is not
    let trace = alg.unit().clone();
    println!("trace: K = {:?}", kernel_ideal_k(&alg, &dec, &trace)?.blocks());
    let point = alg.delta(0);
    let data = gns(&alg, &point)?;
    println!("delta_0: GNS dimension {}, K = {:?}", data.dim(), kernel_ideal_k(&alg, &dec, &point)?.blocks());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("seminorms");
}
