//! LOCC conversion of a shared maximally entangled pair into an arbitrary
//! state alpha|00> + beta|11>, including the mixed-state extension.
//!
//! ```bash
//! cargo run --release -p entmono --example locc_preparation
//! ```

use entmono::linalg::{trace_distance, ComplexMatrix};
use entmono::measures::entropy_of_entanglement;
use entmono::protocols::{locc_prepare_branches, locc_prepare_mixed, PrepareMember};
use entmono::states::{rng_from_seed, sample_seed, schmidt_decompose};
use num_complex::Complex64;

fn main() {
    let alpha = Complex64::new(0.75f64.sqrt(), 0.0);
    let beta = Complex64::new(0.5, 0.0);

    // Both measurement branches end in the same target state.
    println!("preparing {alpha:.4}|00> + {beta:.4}|11>:");
    for branch in locc_prepare_branches(alpha, beta).unwrap() {
        let form = schmidt_decompose(&branch.output, 1).unwrap();
        let s = entropy_of_entanglement(&branch.output, 1).unwrap();
        println!(
            "  branch {} (p = {:.3}): Schmidt weights {:?}, entanglement {s:.6} bits",
            branch.outcome,
            branch.probability,
            form.weights().iter().map(|w| (w * 1e6).round() / 1e6).collect::<Vec<_>>()
        );
    }
    println!("  one ebit was consumed; less than one ebit came out.");

    // Mixed-state preparation: sample ensemble members and average.
    let ensemble = vec![
        PrepareMember {
            probability: 0.5,
            alpha: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
            unitary_a: ComplexMatrix::identity(2),
            unitary_b: ComplexMatrix::identity(2),
        },
        PrepareMember {
            probability: 0.5,
            alpha: Complex64::new(0.0, 0.0),
            beta: Complex64::new(1.0, 0.0),
            unitary_a: ComplexMatrix::identity(2),
            unitary_b: ComplexMatrix::identity(2),
        },
    ];
    let n = 10_000;
    let mut mean = ComplexMatrix::zeros(4);
    for i in 0..n {
        let mut rng = rng_from_seed(sample_seed(17, i));
        let t = locc_prepare_mixed(&ensemble, &mut rng).unwrap();
        mean = mean.add(&t.final_state.density_matrix()).unwrap();
    }
    mean = mean.scale_real(1.0 / n as f64);
    let target = ComplexMatrix::from_diagonal(&[0.5, 0.0, 0.0, 0.5]);
    println!(
        "\nmixed preparation of (|00><00| + |11><11|)/2 over {n} runs:\n  trace distance to target: {:.4}",
        trace_distance(&mean, &target).unwrap()
    );
}
