//! Relative entropy, its heuristic minimization over separable states, and
//! the entropy continuity bound.
//!
//! ```bash
//! cargo run --release -p entmono --example relative_entropy
//! ```

use entmono::linalg::ComplexVector;
use entmono::measures::{
    fannes_bound, ree_upper_bound, relative_entropy, von_neumann_entropy, OptimizerConfig,
};
use entmono::states::{induced_mixed, max_entangled, separable_mixture, QuantumState};

fn main() {
    // Plain relative entropy on commuting states.
    let a = QuantumState::mixed(
        vec![2],
        entmono::linalg::ComplexMatrix::from_diagonal(&[1.0, 0.0]),
    )
    .unwrap();
    let b = QuantumState::mixed(
        vec![2],
        entmono::linalg::ComplexMatrix::from_diagonal(&[0.5, 0.5]),
    )
    .unwrap();
    println!("S(diag(1,0) || I/2) = {:.9}", relative_entropy(&a, &b).unwrap());
    let c = QuantumState::mixed(
        vec![2],
        entmono::linalg::ComplexMatrix::from_diagonal(&[0.0, 1.0]),
    )
    .unwrap();
    println!("S(diag(1,0) || diag(0,1)) = {}", relative_entropy(&a, &c).unwrap());

    // Heuristic relative entropy of entanglement.
    let cfg = OptimizerConfig { restarts: 8, max_sweeps: 60, ..OptimizerConfig::default() };
    let bell =
        QuantumState::mixed(vec![2, 2], max_entangled(2).unwrap().density_matrix()).unwrap();
    let result = ree_upper_bound(&bell, 1, &cfg).unwrap();
    println!(
        "\nREE upper bound for the Bell state: {:.4} ({} sweeps, residual {:.1e})",
        result.value, result.iterations, result.residual
    );

    let p0 = ComplexVector::basis_state(2, 0).outer();
    let p1 = ComplexVector::basis_state(2, 1).outer();
    let chi = separable_mixture(&[
        (0.5, vec![p0.clone(), p0.clone()]),
        (0.5, vec![p1.clone(), p1.clone()]),
    ])
    .unwrap();
    let result = ree_upper_bound(&chi, 1, &cfg).unwrap();
    println!("REE upper bound for a classically correlated state: {:.2e}", result.value);

    // Entropy continuity: |S(rho) - S(sigma)| against the bound.
    println!("\nentropy continuity bound on random qubit pairs:");
    for seed in 0..5 {
        let rho = induced_mixed(2, 2, seed).unwrap();
        let sigma = induced_mixed(2, 2, seed + 100).unwrap();
        let gap = (von_neumann_entropy(&rho).unwrap() - von_neumann_entropy(&sigma).unwrap())
            .abs();
        let bound = fannes_bound(&rho, &sigma).unwrap();
        println!("  seed {seed}: |dS| = {gap:.4} <= bound = {bound:.4}");
    }
}
