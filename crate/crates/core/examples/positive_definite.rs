//! Positive definite functions on isotropy groups, the functionals η_θ they
//! induce, and isometric inclusions of open subgroupoids.
//!
//! ```bash
//! cargo run -p gpdlab --example positive_definite
//! ```

use gpdlab::algebra::StarAlgebra;
use gpdlab::criteria::{random_subgroupoid, verify_eta_positivity, verify_open_subgroupoid_isometry, PositiveDefiniteFunction};
use gpdlab::group::FiniteGroup;
use gpdlab::groupoid::FiniteGroupoid;
use gpdlab::transformation::{GroupAction, TransformationGroupoid};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let trivial = TransformationGroupoid::new(GroupAction::trivial(FiniteGroup::cyclic(2), 2)).into_groupoid();
    let swap = TransformationGroupoid::new(GroupAction::swap()).into_groupoid();
    let g = FiniteGroupoid::disjoint_union(&trivial, &swap);
    let alg = StarAlgebra::new(g.clone());

    for &u in g.units() {
        let theta = PositiveDefiniteFunction::random(&mut rng, &g, u)?;
        let r = verify_eta_positivity(&alg, &theta);
        println!("unit {u}: smallest Gram eigenvalue of eta_theta {:.3e}", r.min_eigenvalue);
    }

    let one = Complex64::new(1.0, 0.0);
    match PositiveDefiniteFunction::new(&g, 0, vec![one, Complex64::new(2.0, 0.0)]) {
        Err(e) => println!("theta = (1, 2) rejected: {e}"),
        Ok(_) => return Err("(1, 2) is not positive definite".into()),
    }

    let iso = g.interior_isotropy();
    let r = verify_open_subgroupoid_isometry(&alg, &iso, 100, &mut rng)?;
    println!("IntIso ({} elements): max norm deviation {:.2e}", r.elements, r.max_deviation);
    for _ in 0..3 {
        let y = random_subgroupoid(&mut rng, &g);
        let r = verify_open_subgroupoid_isometry(&alg, &y, 20, &mut rng)?;
        println!("Y = {:?}: deviation {:.2e}", y.parent, r.max_deviation);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("positive_definite");
}
