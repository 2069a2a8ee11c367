#[path = "../examples/groupoid_basics.rs"]
mod groupoid_basics;
#[path = "../examples/crossed_products.rs"]
mod crossed_products;
#[path = "../examples/blocks_and_ideals.rs"]
mod blocks_and_ideals;
#[path = "../examples/seminorms.rs"]
mod seminorms;
#[path = "../examples/inclusions.rs"]
mod inclusions;
#[path = "../examples/simplicity.rs"]
mod simplicity;
#[path = "../examples/positive_definite.rs"]
mod positive_definite;
#[path = "../examples/corpus_sweep.rs"]
mod corpus_sweep;

#[test]
fn every_example_runs() {
    groupoid_basics::run_example().unwrap();
    crossed_products::run_example().unwrap();
    blocks_and_ideals::run_example().unwrap();
    seminorms::run_example().unwrap();
    inclusions::run_example().unwrap();
    simplicity::run_example().unwrap();
    positive_definite::run_example().unwrap();
    corpus_sweep::run_example().unwrap();
}
