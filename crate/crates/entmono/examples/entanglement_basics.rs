//! States, Schmidt decomposition and the entropy of entanglement.
//!
//! ```bash
//! cargo run --release -p entmono --example entanglement_basics
//! ```

use entmono::measures::entropy_of_entanglement;
use entmono::states::{haar_random_pure, max_entangled, schmidt_decompose};

fn main() {
    // Maximally entangled states carry log2(d) ebits across the cut.
    println!("maximally entangled states:");
    for d in 2..=6 {
        let psi = max_entangled(d).unwrap();
        let s = entropy_of_entanglement(&psi, 1).unwrap();
        println!("  d = {d}: S = {s:.12} (log2 d = {:.12})", (d as f64).log2());
    }

    // Schmidt decomposition of a random two-qubit state.
    let psi = haar_random_pure(4, 42).with_dims(vec![2, 2]).unwrap();
    let form = schmidt_decompose(&psi, 1).unwrap();
    println!("\nrandom two-qubit state (seed 42):");
    println!("  Schmidt rank: {}", form.rank);
    for (i, c) in form.coefficients.iter().enumerate() {
        println!("  sqrt(mu_{i}) = {c:.9}");
    }
    let s = entropy_of_entanglement(&psi, 1).unwrap();
    println!("  entropy of entanglement: {s:.9} bits");

    // The entropy is the Shannon entropy of the Schmidt weights.
    let weights = form.weights();
    let from_weights: f64 = weights
        .iter()
        .filter(|w| **w > 0.0)
        .map(|w| -w * w.log2())
        .sum();
    println!("  entropy from Schmidt weights: {from_weights:.9} bits");
}
