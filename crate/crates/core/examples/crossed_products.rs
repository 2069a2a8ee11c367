//! Transformation groupoids of finite actions: stabilizers, the relabeling
//! Υ onto the crossed product, and the embedding Δ of the isotropy part.
//!
//! ```bash
//! cargo run -p gpdlab --example crossed_products
//! ```

use gpdlab::algebra::{delta_embedding, AlgebraElement, StarAlgebra};
use gpdlab::group::FiniteGroup;
use gpdlab::spectral::{block_decomposition, norm};
use gpdlab::transformation::{GroupAction, TransformationGroupoid};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let swap = TransformationGroupoid::new(GroupAction::swap());
    let alg = StarAlgebra::new(swap.groupoid().clone());
    println!("swap: blocks {:?}", block_decomposition(&alg)?.dims());

    // Z4 acting through its quotient Z2
    let z4 = GroupAction::new(FiniteGroup::cyclic(4), 2, vec![vec![0, 1], vec![1, 0], vec![0, 1], vec![1, 0]])?;
    for q in 0..2 {
        println!("Z4 via swap: G_{q} = {:?}, interior {:?}", z4.stabilizer(q), z4.interior_stabilizer(q));
    }
    let t = TransformationGroupoid::new(z4);
    let alg = StarAlgebra::new(t.groupoid().clone());
    println!("  blocks {:?}", block_decomposition(&alg)?.dims());
    println!("  isotropy support {:?}", t.interior_isotropy_subalgebra_support());

    // Υ turns convolution into the crossed-product rule
    let f = AlgebraElement::random(&mut rng, alg.dim());
    let g = AlgebraElement::random(&mut rng, alg.dim());
    let lhs = t.upsilon(&alg.convolve(&f, &g)?)?;
    let rhs = t.crossed_product(&t.upsilon(&f)?, &t.upsilon(&g)?);
    let defect = &t.upsilon_inverse(&lhs) - &t.upsilon_inverse(&rhs);
    println!("  Upsilon product defect {:.1e}", defect.max_abs());

    // Δ on an element supported on the isotropy
    let gr = t.groupoid();
    let support: Vec<usize> = (0..gr.len()).filter(|&x| gr.r(x) == gr.s(x)).collect();
    let h = AlgebraElement::random_on(&mut rng, alg.dim(), &support);
    let image = delta_embedding(&t, &h)?;
    let bundle = StarAlgebra::new(t.tensor_bundle());
    println!(
        "  |h| = {:.6}, |Delta h| = {:.6}",
        norm(&alg, &h),
        norm(&bundle, &image.to_bundle_element(&t))
    );
    let off = (0..gr.len()).find(|&x| gr.r(x) != gr.s(x)).unwrap();
    println!("  Delta(delta_{off}): {}", delta_embedding(&t, &alg.delta(off)).unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("crossed_products");
}
