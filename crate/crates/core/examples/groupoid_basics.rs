//! Building groupoids, validating them, and reading off orbits and isotropy.
//!
//! ```bash
//! cargo run -p gpdlab --example groupoid_basics
//! ```

use gpdlab::group::FiniteGroup;
use gpdlab::groupoid::FiniteGroupoid;
use gpdlab::io::{groupoid_to_json, parse_groupoid};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pair = FiniteGroupoid::pair(3);
    println!("pair(3): {} elements, units {:?}", pair.len(), pair.units());
    println!("  minimal: {}, principal: {}", pair.is_minimal(), pair.is_topologically_principal());

    // (1,2)(2,3) = (1,3)
    let a = pair.labels().iter().position(|l| l == "(1,2)").unwrap();
    let b = pair.labels().iter().position(|l| l == "(2,3)").unwrap();
    println!("  (1,2)(2,3) = {}", pair.label(pair.compose(a, b)?));

    let bundle = FiniteGroupoid::group_bundle(&[FiniteGroup::cyclic(2), FiniteGroup::symmetric(3)]);
    for iso in &bundle.isotropy().groups {
        println!("bundle isotropy at {}: order {}", bundle.label(iso.unit), iso.order());
    }

    let union = FiniteGroupoid::disjoint_union(&pair, &FiniteGroupoid::from_group(&FiniteGroup::cyclic(3)));
    let orbits = union.orbits();
    println!("pair(3) + Z3: {} orbits {:?}", orbits.count, orbits.orbits());
    println!("  invariant closure of unit 0: {:?}", union.invariant_closure(&[0])?);
    println!("  IntIso has {} elements", union.interior_isotropy().groupoid.len());

    // raw tables round-trip through JSON and are validated again on the way in
    let back = parse_groupoid(&groupoid_to_json(&pair))?;
    assert_eq!(back.to_raw(), pair.to_raw());

    let mut raw = pair.to_raw();
    raw.mul[1][2] = 0;
    match FiniteGroupoid::build(raw) {
        Err(e) => println!("corrupted table rejected: {e}"),
        Ok(_) => return Err("corruption went unnoticed".into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("groupoid_basics");
}
