//! Inclusions B ⊆ A: essentiality, relative dominance, fully normalized
//! ideals and minimality.
//!
//! ```bash
//! cargo run -p gpdlab --example inclusions
//! ```

use gpdlab::algebra::StarAlgebra;
use gpdlab::criteria::{verify_reg_simple, verify_simple_dom, Inclusion};
use gpdlab::group::FiniteGroup;
use gpdlab::groupoid::FiniteGroupoid;
use gpdlab::spectral::{all_ideals, block_decomposition, unif_ideal, Ideal};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // pair groupoid on {1,2} next to an isolated point {3}
    let g = FiniteGroupoid::disjoint_union(&FiniteGroupoid::pair(2), &FiniteGroupoid::trivial(1));
    let alg = StarAlgebra::new(g);
    let dec = block_decomposition(&alg)?;
    let inc = Inclusion::units(&alg, &dec)?;
    println!("C(Q) in C*(pair + point): blocks {:?}, essential {}", dec.dims(), inc.is_essential());

    let j3 = unif_ideal(&alg, &dec, 2)?;
    println!("J_unif at the point: blocks {:?}, dominant {}", j3.blocks(), inc.is_dominant(&j3));
    for l in all_ideals(&dec)? {
        println!("  B meets L = {:?} in B-blocks {:?}", l.blocks(), inc.intersect_ideal_with_subalgebra(&l).blocks());
    }

    let normalizers = alg.elementary_normalizers();
    let fully: Vec<Vec<usize>> =
        inc.fully_normalized_ideals(&normalizers)?.iter().map(|j| j.blocks().to_vec()).collect();
    println!("fully normalized ideals of B: {fully:?}");
    println!("simple-dom: {:?}", verify_simple_dom(&alg, &dec)?);
    println!("reg-simple: {:?}", verify_reg_simple(&inc, &normalizers)?);

    // C·1 inside C[Z2] misses the sign block
    let z2 = StarAlgebra::new(FiniteGroupoid::from_group(&FiniteGroup::cyclic(2)));
    let zdec = block_decomposition(&z2)?;
    let scalars = Inclusion::units(&z2, &zdec)?;
    println!(
        "C1 in C[Z2]: essential {}, zero ideal dominant {}, witness {:?}",
        scalars.is_essential(),
        scalars.is_dominant(&Ideal::zero(zdec.len())),
        scalars.non_essential_witness().map(|l| l.blocks().to_vec())
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("inclusions");
}
