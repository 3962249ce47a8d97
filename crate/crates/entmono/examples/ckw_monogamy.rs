//! The CKW monogamy inequality: a seeded scan over random pure three-qubit
//! states, a saturating state, and the state that breaks the plain sum
//! inequality for the entanglement of formation.
//!
//! ```bash
//! cargo run --release -p entmono --example ckw_monogamy
//! ```

use entmono::measures::{entropy_of_entanglement, eof_two_qubit, OptimizerConfig};
use entmono::monogamy::{ckw_pure, ckw_scan, eval_pure_triple, MeasureId};
use entmono::states::counterexample_state;

fn main() {
    // C^2_AB + C^2_AC <= C^2_A(BC) over ten thousand Haar samples.
    let report = ckw_scan(10_000, 0).unwrap();
    println!("CKW scan over {} pure three-qubit samples:", report.samples.len());
    println!("  violations (slack < -1e-9): {}", report.violations);
    println!("  smallest slack seen:        {:.6e}", report.min_slack);

    // The W-class state saturates the inequality.
    let w = counterexample_state();
    let t = ckw_pure(&w).unwrap();
    println!("\nsaturating three-qubit state:");
    println!("  C^2_AB = {:.9}, C^2_AC = {:.9}, C^2_A(BC) = {:.9}", t.e_ab, t.e_ac, t.e_abc);
    println!("  slack  = {:.3e}", t.slack());

    // The same state breaks E_AB + E_AC <= E_A(BC) for the entanglement of
    // formation, which is why the sum inequality is no general monogamy test.
    let e_ab = eof_two_qubit(&w.reduce(&[0, 1]).unwrap()).unwrap().value;
    let e_ac = eof_two_qubit(&w.reduce(&[0, 2]).unwrap()).unwrap().value;
    let e_abc = entropy_of_entanglement(&w, 1).unwrap();
    println!("\nthe same state under the entanglement of formation:");
    println!("  E_AB = {e_ab:.6}, E_AC = {e_ac:.6}, E_A(BC) = {e_abc:.6}");
    println!("  E_AB + E_AC = {:.6} > E_A(BC)", e_ab + e_ac);

    // Partial-trace monotonicity still holds for eof triples.
    let t = eval_pure_triple(MeasureId::Eof, &w, 0, &OptimizerConfig::default()).unwrap();
    println!("  max(E_AB, E_AC) = {:.6} <= E_A(BC)", t.e_ab.max(t.e_ac));
}
