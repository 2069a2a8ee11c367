//! Simplicity of C*(G) decided three ways, with the augmentation ideal as
//! the certificate for non-simplicity.
//!
//! ```bash
//! cargo run -p gpdlab --example simplicity
//! ```

use gpdlab::algebra::StarAlgebra;
use gpdlab::criteria::{augmentation_certificate, verify_aug_ideal, verify_simplicity_theorems};
use gpdlab::group::FiniteGroup;
use gpdlab::groupoid::FiniteGroupoid;
use gpdlab::spectral::block_decomposition;
use gpdlab::transformation::{GroupAction, TransformationGroupoid};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("swap", TransformationGroupoid::new(GroupAction::swap()).into_groupoid()),
        ("Z2 on a point", FiniteGroupoid::from_group(&FiniteGroup::cyclic(2))),
        ("pair + point", FiniteGroupoid::disjoint_union(&FiniteGroupoid::pair(2), &FiniteGroupoid::trivial(1))),
        ("S3 on 3 points", TransformationGroupoid::new(natural_s3()?).into_groupoid()),
        ("pair(4)", FiniteGroupoid::pair(4)),
    ];
    for (name, g) in cases {
        let alg = StarAlgebra::new(g);
        let dec = block_decomposition(&alg)?;
        let r = verify_simplicity_theorems(&alg, &dec)?;
        let cert = augmentation_certificate(&alg, &dec)?;
        println!(
            "{name:>15}: blocks {:?} simple {} | minimal {} principal {} | IntIso-minimal {} | certified non-simple {}",
            dec.dims(),
            r.oracle_simple,
            r.minimal,
            r.principal,
            r.intiso_minimal,
            cert.certified_nonsimple
        );
    }

    let bundle = StarAlgebra::new(FiniteGroupoid::group_bundle(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)]));
    println!("augmentation ideal of Z2 over two points: {:?}", verify_aug_ideal(&bundle)?);
    Ok(())
}

fn natural_s3() -> gpdlab::error::Result<GroupAction> {
    let s3 = FiniteGroup::symmetric(3);
    let homs = gpdlab::corpus::homomorphisms_to_sym(&s3, 3);
    // the faithful, transitive one
    let table = homs.into_iter().find(|t| t.iter().skip(1).all(|p| p.iter().enumerate().any(|(i, &j)| i != j)));
    GroupAction::new(s3, 3, table.expect("S3 acts on 3 points"))
}

#[allow(dead_code)]
fn main() {
    run_example().expect("simplicity");
}
