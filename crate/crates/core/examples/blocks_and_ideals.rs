//! Wedderburn blocks, the ideal lattice, and norms computed two ways.
//!
//! ```bash
//! cargo run -p gpdlab --example blocks_and_ideals
//! ```

use gpdlab::algebra::{AlgebraElement, StarAlgebra};
use gpdlab::group::FiniteGroup;
use gpdlab::groupoid::FiniteGroupoid;
use gpdlab::spectral::{all_ideals, block_decomposition, ideal_generated_by, norm, regular_rep_at};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = FiniteGroupoid::disjoint_union(&FiniteGroupoid::pair(2), &FiniteGroupoid::from_group(&FiniteGroup::symmetric(3)));
    let alg = StarAlgebra::new(g);
    let dec = block_decomposition(&alg)?;
    println!("dim {} = sum of {:?} squared", alg.dim(), dec.dims());

    let ideals = all_ideals(&dec)?;
    println!("{} ideals:", ideals.len());
    for ideal in &ideals {
        println!("  blocks {:?}, dimension {}", ideal.blocks(), dec.ideal_dim(ideal));
    }

    // δ_γ - δ_{r(γ)} for a transposition generates the sign and standard blocks
    let gr = alg.groupoid();
    let x = (0..gr.len()).find(|&x| gr.label(x).starts_with('R') && !gr.is_unit(x)).unwrap();
    let gen = &alg.delta(x) - &alg.delta(gr.r(x));
    println!("ideal generated by delta_x - delta_r(x): {:?}", ideal_generated_by(&alg, &dec, &[gen])?.blocks());

    let f = AlgebraElement::random(&mut rng, alg.dim());
    let via_reps = gr
        .units()
        .iter()
        .map(|&u| regular_rep_at(&alg, u).map(|r| gpdlab::linalg::op_norm(&r.apply(&f))))
        .collect::<Result<Vec<_>, _>>()?;
    println!("regular representations {:?}", via_reps);
    println!("norm {:.9}, blockwise {:.9}, I-norm {:.9}", norm(&alg, &f), dec.norm(&alg, &f), alg.i_norm(&f));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("blocks_and_ideals");
}
