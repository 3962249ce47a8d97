//! The alpha-power monogamy relation: bisect the smallest alpha for which
//! (E_AB^a + E_AC^a)^(1/a) <= E_A(BC) holds over a sample set, per measure.
//!
//! ```bash
//! cargo run --release -p entmono --example alpha_monogamy
//! ```

use entmono::measures::OptimizerConfig;
use entmono::monogamy::{alpha_search, power_mean, MeasureId};

fn main() {
    let cfg = OptimizerConfig::default();

    // Unsquared concurrence: squaring the alpha = 2 relation recovers CKW,
    // so the empirical alpha* stays at or below two.
    let alpha = alpha_search(MeasureId::Concurrence, &[2, 2, 2], 1000, 1, 1e-4, &cfg).unwrap();
    println!("concurrence over 1000 samples: alpha* = {alpha:.4}");

    // Entanglement of formation: no sum inequality, but a finite power does
    // the job at fixed dimension.
    let alpha = alpha_search(MeasureId::Eof, &[2, 2, 2], 1000, 1, 1e-4, &cfg).unwrap();
    println!("eof over 1000 samples:         alpha* = {alpha:.4}");

    // The power mean interpolates between the sum (alpha = 1) and the max
    // (alpha -> infinity).
    println!("\npower mean of (0.3, 0.7):");
    for alpha in [1.0, 2.0, 10.0, 100.0] {
        println!("  alpha = {alpha:>5}: {:.6}", power_mean(0.3, 0.7, alpha));
    }

    // Larger sample sets can only push the empirical alpha* up.
    println!("\nempirical alpha* growth with sample count (concurrence):");
    for n in [10u64, 100, 1000] {
        let alpha = alpha_search(MeasureId::Concurrence, &[2, 2, 2], n, 1, 1e-4, &cfg).unwrap();
        println!("  n = {n:>5}: alpha* = {alpha:.4}");
    }
}
