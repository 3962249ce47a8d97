//! Projective measurements and the two LOCC protocols: teleportation and the
//! conversion of a shared maximally entangled pair into an arbitrary
//! two-qubit state, both with full transcripts.
//!
//! Every protocol comes in two flavours: a sampled run driven by a seeded
//! generator, and an exhaustive branch enumeration with exact probabilities
//! for per-branch assertions.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{tensor, ComplexMatrix, ComplexVector};
use crate::states::{self, complete_unitary, max_entangled, QuantumState, StateBody};

/// Orthogonality / completeness tolerance for projector sets.
pub const PVM_TOL: f64 = 1e-10;

/// Pauli X.
pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    )
    .expect("constant")
}

/// Pauli Y.
pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
    .expect("constant")
}

/// Pauli Z.
pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&[1.0, -1.0])
}

/// Hadamard gate.
pub fn hadamard() -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real(2, &[h, h, h, -h]).expect("constant")
}

/// Projection-valued measure: orthogonal projectors summing to the identity.
#[derive(Debug, Clone)]
pub struct Pvm {
    pub projectors: Vec<ComplexMatrix>,
    pub labels: Vec<String>,
}

impl Pvm {
    /// Validates orthogonality (`P_i P_j = delta_ij P_i`) and completeness.
    pub fn new(projectors: Vec<ComplexMatrix>, labels: Vec<String>) -> Result<Self> {
        if projectors.is_empty() || projectors.len() != labels.len() {
            return Err(Error::InvalidArgument(
                "PVM needs matching non-empty projector and label lists".into(),
            ));
        }
        let dim = projectors[0].dim();
        let mut sum = ComplexMatrix::zeros(dim);
        for (i, p) in projectors.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch("PVM projector dims differ".into()));
            }
            for (j, q) in projectors.iter().enumerate() {
                let product = p.mul(q)?;
                let expected = if i == j { p.clone() } else { ComplexMatrix::zeros(dim) };
                if product.max_abs_diff(&expected) > PVM_TOL {
                    return Err(Error::InvalidArgument(format!(
                        "PVM projectors {i} and {j} are not orthogonal projections"
                    )));
                }
            }
            sum = sum.add(p)?;
        }
        if sum.max_abs_diff(&ComplexMatrix::identity(dim)) > PVM_TOL {
            return Err(Error::InvalidArgument("PVM projectors do not sum to identity".into()));
        }
        Ok(Self { projectors, labels })
    }

    /// Computational-basis measurement of a `dim`-dimensional system.
    pub fn computational(dim: usize) -> Self {
        let projectors =
            (0..dim).map(|i| ComplexVector::basis_state(dim, i).outer()).collect();
        let labels = (0..dim).map(|i| i.to_string()).collect();
        Self { projectors, labels }
    }

    /// Measures the first `d_first` dimensions of a `d_first * d_rest` space in
    /// the computational basis, acting trivially on the rest.
    pub fn computational_on_first(d_first: usize, d_rest: usize) -> Self {
        let rest = ComplexMatrix::identity(d_rest);
        let projectors = (0..d_first)
            .map(|i| tensor(&ComplexVector::basis_state(d_first, i).outer(), &rest))
            .collect();
        let labels = (0..d_first).map(|i| i.to_string()).collect();
        Self { projectors, labels }
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].dim()
    }
}

/// One enumerated measurement branch.
#[derive(Debug, Clone)]
pub struct MeasurementBranch {
    pub outcome: usize,
    pub label: String,
    pub probability: f64,
    pub post_state: QuantumState,
}

/// All branches with probability above the numerical floor, Born-rule exact.
pub fn pvm_outcomes(state: &QuantumState, pvm: &Pvm) -> Result<Vec<MeasurementBranch>> {
    if pvm.dim() != state.dim() {
        return Err(Error::DimensionMismatch(format!(
            "PVM dim {} vs state dim {}",
            pvm.dim(),
            state.dim()
        )));
    }
    let mut branches = Vec::new();
    for (outcome, projector) in pvm.projectors.iter().enumerate() {
        match state.body() {
            StateBody::Pure(psi) => {
                let projected = projector.mul_vec(psi)?;
                let p = projected.norm_sq();
                if p < 1e-14 {
                    continue;
                }
                let post = projected.scale(Complex64::new(1.0 / p.sqrt(), 0.0));
                branches.push(MeasurementBranch {
                    outcome,
                    label: pvm.labels[outcome].clone(),
                    probability: p,
                    post_state: QuantumState::pure(state.dims().to_vec(), post)?,
                });
            }
            StateBody::Mixed(rho) => {
                let unnorm = projector.mul(rho)?.mul(projector)?;
                let p = unnorm.trace().re;
                if p < 1e-14 {
                    continue;
                }
                let post = unnorm.scale_real(1.0 / p);
                branches.push(MeasurementBranch {
                    outcome,
                    label: pvm.labels[outcome].clone(),
                    probability: p,
                    post_state: QuantumState::mixed(state.dims().to_vec(), post)?,
                });
            }
        }
    }
    if branches.is_empty() {
        return Err(Error::InvalidArgument(
            "every PVM outcome has zero probability on this state".into(),
        ));
    }
    Ok(branches)
}

/// Samples one measurement outcome by inverse CDF over the exact probabilities.
pub fn pvm_measure(
    state: &QuantumState,
    pvm: &Pvm,
    rng: &mut ChaCha8Rng,
) -> Result<MeasurementBranch> {
    let branches = pvm_outcomes(state, pvm)?;
    let total: f64 = branches.iter().map(|b| b.probability).sum();
    let mut target = rng.random::<f64>() * total;
    for branch in &branches {
        target -= branch.probability;
        if target <= 0.0 {
            return Ok(branch.clone());
        }
    }
    Ok(branches.last().expect("non-empty").clone())
}

/// One recorded protocol step.
#[derive(Debug, Clone)]
pub struct TranscriptStep {
    pub actor: &'static str,
    pub action: String,
    pub outcome: Option<String>,
    pub probability: Option<f64>,
}

/// Ordered protocol record plus the final state.
#[derive(Debug, Clone)]
pub struct Transcript {
    pub steps: Vec<TranscriptStep>,
    pub final_state: QuantumState,
}

impl Transcript {
    /// JSON form: ordered steps and the final state in the state-file schema.
    pub fn to_json(&self) -> String {
        let steps: Vec<serde_json::Value> = self
            .steps
            .iter()
            .map(|s| {
                json!({
                    "actor": s.actor,
                    "action": s.action,
                    "outcome": s.outcome,
                    "probability": s.probability,
                })
            })
            .collect();
        let state: serde_json::Value =
            serde_json::from_str(&states::to_json(&self.final_state)).expect("valid json");
        json!({ "steps": steps, "final_state": state }).to_string()
    }
}

// ---------------------------------------------------------------------------
// Teleportation
// ---------------------------------------------------------------------------

/// One of the four teleportation branches.
#[derive(Debug, Clone)]
pub struct TeleportBranch {
    pub outcome: (usize, usize),
    pub probability: f64,
    pub output: QuantumState,
}

fn require_qubit_pure(input: &QuantumState) -> Result<&ComplexVector> {
    if input.dims() != [2] {
        return Err(Error::DimensionMismatch(format!(
            "teleportation input must be a single qubit, got dims {:?}",
            input.dims()
        )));
    }
    input.vector()
}

/// Extracts the trailing factor of a product vector `|block> (x) |rest>`.
fn trailing_factor(post: &ComplexVector, block: usize, rest: usize) -> ComplexVector {
    let mut out = ComplexVector::zeros(rest);
    for k in 0..rest {
        out.set(k, post.get(block * rest + k));
    }
    out.normalized().expect("branch has positive probability")
}

fn teleport_branches_inner(input: &QuantumState, apply_correction: bool) -> Result<Vec<TeleportBranch>> {
    let psi = require_qubit_pure(input)?;
    let bell = max_entangled(2)?;
    let joint = crate::linalg::tensor_vec(psi, bell.vector()?);

    // Bell-basis rotation on the A pair: CNOT then Hadamard on the first qubit
    let mut cnot = ComplexMatrix::zeros(4);
    for (from, to) in [(0usize, 0usize), (1, 1), (2, 3), (3, 2)] {
        cnot.set(to, from, Complex64::new(1.0, 0.0));
    }
    let u_a = tensor(&hadamard(), &ComplexMatrix::identity(2)).mul(&cnot)?;
    let full = tensor(&u_a, &ComplexMatrix::identity(2));
    let rotated = full.mul_vec(&joint)?;
    let state = QuantumState::pure(vec![2, 2, 2], rotated)?;

    let pvm = Pvm::computational_on_first(4, 2);
    let mut branches = Vec::new();
    for branch in pvm_outcomes(&state, &pvm)? {
        let (i, j) = (branch.outcome / 2, branch.outcome % 2);
        let b_state = trailing_factor(branch.post_state.vector()?, branch.outcome, 2);
        let corrected = if apply_correction {
            // outcome (i, j) needs Z^i X^j on B's qubit
            let mut v = b_state;
            if j == 1 {
                v = sigma_x().mul_vec(&v)?;
            }
            if i == 1 {
                v = sigma_z().mul_vec(&v)?;
            }
            v
        } else {
            b_state
        };
        branches.push(TeleportBranch {
            outcome: (i, j),
            probability: branch.probability,
            output: QuantumState::pure(vec![2], corrected)?,
        });
    }
    Ok(branches)
}

/// Exhaustive teleportation: all four outcome branches with exact probabilities.
pub fn teleport_branches(input: &QuantumState) -> Result<Vec<TeleportBranch>> {
    teleport_branches_inner(input, true)
}

/// Branches of the protocol with the classical correction step omitted;
/// exists so tests can confirm the correction is load-bearing.
#[cfg(test)]
fn teleport_branches_uncorrected(
    input: &QuantumState,
) -> Result<Vec<TeleportBranch>> {
    teleport_branches_inner(input, false)
}

/// Samples one run of the teleportation protocol and records the transcript.
pub fn teleport(input: &QuantumState, rng: &mut ChaCha8Rng) -> Result<Transcript> {
    let branches = teleport_branches(input)?;
    let total: f64 = branches.iter().map(|b| b.probability).sum();
    let mut target = rng.random::<f64>() * total;
    let mut chosen = branches.len() - 1;
    for (n, branch) in branches.iter().enumerate() {
        target -= branch.probability;
        if target <= 0.0 {
            chosen = n;
            break;
        }
    }
    let branch = &branches[chosen];
    let (i, j) = branch.outcome;
    let steps = vec![
        TranscriptStep {
            actor: "A",
            action: "apply Bell-basis rotation to the input qubit and the shared pair".into(),
            outcome: None,
            probability: None,
        },
        TranscriptStep {
            actor: "A",
            action: "measure both qubits in the computational basis".into(),
            outcome: Some(format!("({i},{j})")),
            probability: Some(branch.probability),
        },
        TranscriptStep {
            actor: "B",
            action: format!("apply correction Z^{i} X^{j}"),
            outcome: None,
            probability: None,
        },
    ];
    Ok(Transcript { steps, final_state: branch.output.clone() })
}

// ---------------------------------------------------------------------------
// LOCC preparation of alpha|00> + beta|11>
// ---------------------------------------------------------------------------

/// One of the two preparation branches.
#[derive(Debug, Clone)]
pub struct PrepareBranch {
    pub outcome: usize,
    pub probability: f64,
    pub output: QuantumState,
}

/// The two-qubit unitary acting on the ancilla and A's half of the pair:
/// `|00> -> alpha|00> + beta|11>` and `|01> -> beta|01> + alpha|10>`, completed
/// to a full unitary over the remaining basis columns.
pub fn preparation_unitary(alpha: Complex64, beta: Complex64) -> Result<ComplexMatrix> {
    let zero = Complex64::new(0.0, 0.0);
    let col0 = ComplexVector::new(vec![alpha, zero, zero, beta])?;
    let col1 = ComplexVector::new(vec![zero, beta, alpha, zero])?;
    complete_unitary(4, &[col0, col1])
}

fn check_target(alpha: Complex64, beta: Complex64) -> Result<()> {
    let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm_sq });
    }
    Ok(())
}

/// Exhaustive LOCC preparation: both measurement branches, each ending in the
/// target state `alpha|00> + beta|11>` on the remaining pair.
pub fn locc_prepare_branches(alpha: Complex64, beta: Complex64) -> Result<Vec<PrepareBranch>> {
    check_target(alpha, beta)?;
    let ancilla = ComplexVector::basis_state(2, 0);
    let joint = crate::linalg::tensor_vec(&ancilla, max_entangled(2)?.vector()?);
    let u = preparation_unitary(alpha, beta)?;
    let full = tensor(&u, &ComplexMatrix::identity(2));
    let rotated = full.mul_vec(&joint)?;
    let state = QuantumState::pure(vec![2, 2, 2], rotated)?;

    let pvm = Pvm::computational_on_first(2, 4);
    let mut branches = Vec::new();
    for branch in pvm_outcomes(&state, &pvm)? {
        let pair = trailing_factor(branch.post_state.vector()?, branch.outcome, 4);
        let corrected = if branch.outcome == 1 {
            // sigma_x on the third particle
            tensor(&ComplexMatrix::identity(2), &sigma_x()).mul_vec(&pair)?
        } else {
            pair
        };
        branches.push(PrepareBranch {
            outcome: branch.outcome,
            probability: branch.probability,
            output: QuantumState::pure(vec![2, 2], corrected)?,
        });
    }
    Ok(branches)
}

/// Samples one run of the preparation protocol and records the transcript.
pub fn locc_prepare_pure(
    alpha: Complex64,
    beta: Complex64,
    rng: &mut ChaCha8Rng,
) -> Result<Transcript> {
    let branches = locc_prepare_branches(alpha, beta)?;
    let total: f64 = branches.iter().map(|b| b.probability).sum();
    let mut target = rng.random::<f64>() * total;
    let mut chosen = branches.len() - 1;
    for (n, branch) in branches.iter().enumerate() {
        target -= branch.probability;
        if target <= 0.0 {
            chosen = n;
            break;
        }
    }
    let branch = &branches[chosen];
    let steps = vec![
        TranscriptStep {
            actor: "A",
            action: "apply preparation unitary to the ancilla and the local pair half".into(),
            outcome: None,
            probability: None,
        },
        TranscriptStep {
            actor: "A",
            action: "measure the ancilla in the computational basis".into(),
            outcome: Some(branch.outcome.to_string()),
            probability: Some(branch.probability),
        },
        TranscriptStep {
            actor: "B",
            action: if branch.outcome == 1 {
                "apply sigma_x correction".into()
            } else {
                "no correction needed".into()
            },
            outcome: None,
            probability: None,
        },
    ];
    Ok(Transcript { steps, final_state: branch.output.clone() })
}

/// One member of a preparation ensemble: probability, target amplitudes and the
/// local unitaries applied after the pure-state preparation.
#[derive(Debug, Clone)]
pub struct PrepareMember {
    pub probability: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub unitary_a: ComplexMatrix,
    pub unitary_b: ComplexMatrix,
}

fn check_unitary(u: &ComplexMatrix) -> Result<()> {
    let product = u.adjoint().mul(u)?;
    if product.max_abs_diff(&ComplexMatrix::identity(u.dim())) > 1e-10 {
        return Err(Error::InvalidArgument("matrix is not unitary".into()));
    }
    Ok(())
}

/// Samples an ensemble member, prepares its pure state and applies the local
/// unitaries; repeated runs converge to the mixed state
/// `sum_i p_i |phi_i><phi_i|`.
pub fn locc_prepare_mixed(
    ensemble: &[PrepareMember],
    rng: &mut ChaCha8Rng,
) -> Result<Transcript> {
    if ensemble.is_empty() {
        return Err(Error::InvalidArgument("empty preparation ensemble".into()));
    }
    let sum: f64 = ensemble.iter().map(|m| m.probability).sum();
    if (sum - 1.0).abs() > 1e-10 {
        return Err(Error::ProbabilitySum { sum });
    }
    for member in ensemble {
        check_target(member.alpha, member.beta)?;
        if member.unitary_a.dim() != 2 || member.unitary_b.dim() != 2 {
            return Err(Error::DimensionMismatch("local unitaries must be 2x2".into()));
        }
        check_unitary(&member.unitary_a)?;
        check_unitary(&member.unitary_b)?;
    }

    let mut target = rng.random::<f64>() * sum;
    let mut index = ensemble.len() - 1;
    for (n, member) in ensemble.iter().enumerate() {
        target -= member.probability;
        if target <= 0.0 {
            index = n;
            break;
        }
    }
    let member = &ensemble[index];
    let mut transcript = locc_prepare_pure(member.alpha, member.beta, rng)?;
    transcript.steps.insert(
        0,
        TranscriptStep {
            actor: "A",
            action: format!("draw ensemble member {index}"),
            outcome: Some(index.to_string()),
            probability: Some(member.probability),
        },
    );
    let local = tensor(&member.unitary_a, &member.unitary_b);
    let rotated = local.mul_vec(transcript.final_state.vector()?)?;
    transcript.steps.push(TranscriptStep {
        actor: "A",
        action: "apply local unitaries U_i (x) V_i".into(),
        outcome: None,
        probability: None,
    });
    transcript.final_state = QuantumState::pure(vec![2, 2], rotated)?;
    Ok(transcript)
}
