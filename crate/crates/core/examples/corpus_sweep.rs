//! Enumerating a small corpus and sweeping theorem suites over it.
//!
//! ```bash
//! cargo run -p gpdlab --example corpus_sweep
//! ```

use gpdlab::corpus::{enumerate_corpus, CorpusSpec};
use gpdlab::suite::{run_suite, Suite};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = CorpusSpec { group_bound: 4, space_bound: 3, bundle_bound: 2, pair_bound: 3, samples: 10, ..Default::default() };
    let corpus = enumerate_corpus(&spec)?;
    println!("{} instances", corpus.len());
    for inst in corpus.iter().take(5) {
        println!("  {:3} {}", inst.id, inst.name);
    }

    let report = run_suite(&corpus, &[Suite::Simplicity, Suite::Dominance, Suite::Minimality], &spec)?;
    println!("{} checks, {} failures", report.checks, report.failures);
    let first = &report.instances[0];
    println!("first instance report:\n{}", serde_json::to_string_pretty(first)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("corpus_sweep");
}
