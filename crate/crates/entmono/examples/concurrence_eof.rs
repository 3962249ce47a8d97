//! Two-qubit concurrence, the closed-form entanglement of formation, and a
//! cross-check of the closed form against the convex-roof minimizer.
//!
//! ```bash
//! cargo run --release -p entmono --example concurrence_eof
//! ```

use entmono::linalg::ComplexMatrix;
use entmono::measures::{
    concurrence_two_qubit, eof_convex_roof, eof_from_concurrence, eof_two_qubit, OptimizerConfig,
};
use entmono::states::{induced_mixed, max_entangled, QuantumState};

fn werner(p: f64) -> QuantumState {
    let bell = max_entangled(2).unwrap().density_matrix();
    let noise = ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
    QuantumState::mixed(vec![2, 2], bell.scale_real(p).add(&noise).unwrap()).unwrap()
}

fn main() {
    println!("Werner family p |Phi+><Phi+| + (1-p) I/4:");
    println!("{:>6} {:>14} {:>14}", "p", "concurrence", "eof");
    for n in 0..=10 {
        let p = n as f64 / 10.0;
        let state = werner(p);
        let c = concurrence_two_qubit(&state).unwrap();
        let e = eof_two_qubit(&state).unwrap().value;
        println!("{p:>6.2} {c:>14.9} {e:>14.9}");
    }

    // On the closed form, entanglement appears only above p = 1/3.
    println!("\nclosed form vs convex roof on random mixed states:");
    let cfg = OptimizerConfig::default();
    for seed in 0..5 {
        let rho = induced_mixed(4, 3, seed).unwrap().with_dims(vec![2, 2]).unwrap();
        let closed = eof_two_qubit(&rho).unwrap().value;
        let roof = eof_convex_roof(&rho, 1, &cfg).unwrap();
        println!(
            "  seed {seed}: closed {closed:.9}, roof {:.9} (gap {:+.2e}, {} sweeps)",
            roof.value,
            roof.value - closed,
            roof.iterations
        );
    }

    // The monotone map from concurrence to entanglement of formation.
    println!("\neof as a function of concurrence:");
    for c in [0.0, 0.25, 0.5, std::f64::consts::FRAC_1_SQRT_2, 1.0] {
        println!("  C = {c:.4} -> E_F = {:.9}", eof_from_concurrence(c).unwrap());
    }
}
