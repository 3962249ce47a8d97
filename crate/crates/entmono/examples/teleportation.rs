//! The teleportation protocol: exhaustive branch enumeration and sampled runs.
//!
//! ```bash
//! cargo run --release -p entmono --example teleportation
//! ```

use entmono::protocols::{teleport, teleport_branches};
use entmono::states::{haar_random_pure, rng_from_seed, sample_seed};

fn main() {
    let input = haar_random_pure(2, 7);
    let v = input.vector().unwrap();
    println!("input qubit (seed 7):");
    println!("  |0> amplitude: {:.6}", v.get(0));
    println!("  |1> amplitude: {:.6}", v.get(1));

    // All four branches, exact probabilities, exact output fidelity.
    println!("\nexhaustive branches:");
    for branch in teleport_branches(&input).unwrap() {
        let fidelity = v.inner(branch.output.vector().unwrap()).norm_sqr();
        println!(
            "  outcome {:?}: probability {:.9}, output fidelity {:.12}",
            branch.outcome, branch.probability, fidelity
        );
    }

    // Sampled runs reproduce the uniform outcome distribution.
    let n = 20_000;
    let mut counts = [0usize; 4];
    for i in 0..n {
        let mut rng = rng_from_seed(sample_seed(99, i));
        let transcript = teleport(&input, &mut rng).unwrap();
        let outcome = transcript.steps[1].outcome.clone().unwrap();
        let index = match outcome.as_str() {
            "(0,0)" => 0,
            "(0,1)" => 1,
            "(1,0)" => 2,
            _ => 3,
        };
        counts[index] += 1;
    }
    println!("\noutcome frequencies over {n} sampled runs:");
    for (i, count) in counts.iter().enumerate() {
        println!("  branch {i}: {:.4}", *count as f64 / n as f64);
    }

    // One transcript in full.
    let mut rng = rng_from_seed(3);
    let transcript = teleport(&input, &mut rng).unwrap();
    println!("\none transcript as JSON:\n{}", transcript.to_json());
}
