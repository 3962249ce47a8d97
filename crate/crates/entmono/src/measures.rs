//! Entanglement measures: entropy of entanglement, two-qubit concurrence with
//! the closed-form entanglement of formation, a numerical convex-roof
//! minimizer, relative entropy with a heuristic separable minimization, and
//! the entropy continuity bound.
//!
//! All logarithms are base 2; measure values are in bits (or squared
//! concurrence units where stated).

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{
    self, hermitian_eig, hermitian_eigvals, sqrt_psd, tensor, ComplexMatrix, ComplexVector,
    EigenSystem,
};
use crate::protocols::sigma_y;
use crate::states::{
    haar_random_pure_with, rng_from_seed, sample_seed, EnsembleMember, QuantumState,
};

/// Values this close to zero are clipped to exactly zero in measure results.
pub const VALUE_CLIP: f64 = 1e-12;
/// Eigenvalues of sigma below this count as outside its support.
const SUPPORT_EIGENVALUE_TOL: f64 = 1e-14;
/// Overlap mass of rho outside sigma's support that triggers the infinity sentinel.
const SUPPORT_MASS_TOL: f64 = 1e-10;

/// How a measure value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureMethod {
    ClosedForm,
    ConvexRoof,
    HeuristicUpperBound,
    ExactPure,
}

impl MeasureMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            MeasureMethod::ClosedForm => "closed_form",
            MeasureMethod::ConvexRoof => "convex_roof",
            MeasureMethod::HeuristicUpperBound => "heuristic_upper_bound",
            MeasureMethod::ExactPure => "exact_pure",
        }
    }
}

/// Witness backing a numerically optimized measure value.
#[derive(Debug, Clone)]
pub enum Certificate {
    /// Decomposition ensemble achieving a convex-roof value.
    Ensemble(Vec<EnsembleMember>),
    /// Separable state achieving a relative-entropy value.
    Separable(QuantumState),
}

/// A measure value plus method metadata and optimizer diagnostics.
#[derive(Debug, Clone)]
pub struct MeasureResult {
    pub value: f64,
    pub method: MeasureMethod,
    pub iterations: usize,
    pub residual: f64,
    pub certificate: Option<Certificate>,
}

impl MeasureResult {
    fn exact(value: f64, method: MeasureMethod) -> Self {
        Self { value: clip_value(value), method, iterations: 0, residual: 0.0, certificate: None }
    }
}

/// Knobs of the derivative-free optimizers.
#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_sweeps: usize,
    pub step_tolerance: f64,
    /// Ensemble / product-term count; `None` means rank^2 for the convex roof
    /// and d^2 for the separable ansatz.
    pub ensemble_size: Option<usize>,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self { restarts: 16, max_sweeps: 200, step_tolerance: 1e-7, ensemble_size: None, seed: 0 }
    }
}

fn clip_value(value: f64) -> f64 {
    if value < 0.0 && value > -VALUE_CLIP {
        0.0
    } else {
        value
    }
}

/// `x log2(x)` with the `0 log 0 := 0` convention.
pub fn xlog2(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Binary entropy in bits.
pub fn binary_entropy(x: f64) -> f64 {
    // the trailing + 0.0 normalizes -0.0 away
    -xlog2(x) - xlog2(1.0 - x) + 0.0
}

/// Shannon entropy in bits of a probability list.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    -p.iter().map(|&x| xlog2(x)).sum::<f64>() + 0.0
}

/// Von Neumann entropy `-Tr(rho log2 rho)` in bits.
pub fn von_neumann_entropy(rho: &QuantumState) -> Result<f64> {
    matrix_entropy(&rho.density_matrix())
}

pub(crate) fn matrix_entropy(m: &ComplexMatrix) -> Result<f64> {
    let values = linalg::psd_eigenvalues(m)?;
    Ok(shannon_entropy(&values))
}

/// Entropy of entanglement of a pure state across the cut after `cut` leading
/// subsystems: the Von Neumann entropy of either reduced state.
pub fn entropy_of_entanglement(psi: &QuantumState, cut: usize) -> Result<f64> {
    let vector = psi.vector()?;
    if cut == 0 || cut >= psi.dims().len() {
        return Err(Error::InvalidArgument(format!(
            "cut {cut} does not bipartition {} subsystems",
            psi.dims().len()
        )));
    }
    let d_a: usize = psi.dims()[..cut].iter().product();
    let d_b: usize = psi.dims()[cut..].iter().product();
    Ok(weighted_cut_entropy(vector.entries(), d_a, d_b))
}

/// Wootters concurrence of a two-qubit density matrix.
///
/// The eigenvalues of `R = sqrt(rho rho~)` are computed as square roots of the
/// spectrum of the Hermitian PSD matrix `sqrt(rho) rho~ sqrt(rho)`, which is
/// similar to `rho rho~`.
pub fn concurrence_two_qubit(rho: &QuantumState) -> Result<f64> {
    if rho.dims() != [2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "concurrence needs dims [2, 2], got {:?}",
            rho.dims()
        )));
    }
    let matrix = rho.density_matrix();
    let rho_tilde = spin_flip(&matrix)?;
    let root = sqrt_psd(&matrix)?;
    let m = root.mul(&rho_tilde)?.mul(&root)?;
    let mut lambdas: Vec<f64> =
        linalg::psd_eigenvalues(&m)?.into_iter().map(f64::sqrt).collect();
    lambdas.resize(4, 0.0);
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(c.clamp(0.0, 1.0))
}

/// `rho~ = (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y)`.
fn spin_flip(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let syy = tensor(&sigma_y(), &sigma_y());
    syy.mul(&rho.conj())?.mul(&syy)
}

/// Concurrence of a pure state across a cut whose left side is a single qubit:
/// `C = 2 sqrt(det rho_A)`.
pub fn concurrence_pure_cut(psi: &QuantumState, cut: usize) -> Result<f64> {
    let _ = psi.vector()?;
    if cut == 0 || cut >= psi.dims().len() {
        return Err(Error::InvalidArgument(format!(
            "cut {cut} does not bipartition {} subsystems",
            psi.dims().len()
        )));
    }
    let d_a: usize = psi.dims()[..cut].iter().product();
    if d_a != 2 {
        return Err(Error::DimensionMismatch(format!(
            "qubit side of the cut has dimension {d_a}, expected 2"
        )));
    }
    let keep: Vec<usize> = (0..cut).collect();
    let rho_a = psi.reduce(&keep)?.density_matrix();
    let det = linalg::det2(&rho_a)?.re.max(0.0);
    Ok((2.0 * det.sqrt()).clamp(0.0, 1.0))
}

/// Closed-form entanglement of formation from a concurrence value:
/// `h((1 + sqrt(1 - C^2)) / 2)` in bits.
pub fn eof_from_concurrence(c: f64) -> Result<f64> {
    if !(-VALUE_CLIP..=1.0 + VALUE_CLIP).contains(&c) {
        return Err(Error::InvalidArgument(format!("concurrence {c} outside [0, 1]")));
    }
    let c = c.clamp(0.0, 1.0);
    Ok(binary_entropy((1.0 + (1.0 - c * c).sqrt()) / 2.0))
}

/// Closed-form two-qubit entanglement of formation.
pub fn eof_two_qubit(rho: &QuantumState) -> Result<MeasureResult> {
    let c = concurrence_two_qubit(rho)?;
    Ok(MeasureResult::exact(eof_from_concurrence(c)?, MeasureMethod::ClosedForm))
}

// ---------------------------------------------------------------------------
// Convex-roof minimization
// ---------------------------------------------------------------------------

/// Entanglement of formation by convex-roof minimization over decomposition
/// ensembles of `rho`, across the cut after `cut` leading subsystems.
///
/// The returned value is an upper bound on the true minimum; the certificate
/// carries the best ensemble found. Non-convergence is reported through
/// `residual`, never as an error.
pub fn eof_convex_roof(
    rho: &QuantumState,
    cut: usize,
    cfg: &OptimizerConfig,
) -> Result<MeasureResult> {
    if cut == 0 || cut >= rho.dims().len() {
        return Err(Error::InvalidArgument(format!(
            "cut {cut} does not bipartition {} subsystems",
            rho.dims().len()
        )));
    }
    let d_a: usize = rho.dims()[..cut].iter().product();
    let d_b: usize = rho.dims()[cut..].iter().product();
    let objective = move |member: &[Complex64]| weighted_cut_entropy(member, d_a, d_b);
    let outcome = convex_roof_minimize(&rho.density_matrix(), &objective, cfg)?;
    Ok(roof_result(rho, outcome, MeasureMethod::ConvexRoof))
}

/// Convex-roof minimization of an arbitrary weighted pure-state objective.
/// `objective` receives an unnormalized ensemble member `m` (so `|m|^2` is its
/// probability) and returns the weighted contribution `p * f(m / sqrt(p))`.
pub(crate) fn convex_roof_minimize(
    rho: &ComplexMatrix,
    objective: &(dyn Fn(&[Complex64]) -> f64 + Sync),
    cfg: &OptimizerConfig,
) -> Result<RoofOutcome> {
    let eig = hermitian_eig(rho)?;
    let values = linalg::clip_psd(&eig.values)?;
    let spectral: Vec<Vec<Complex64>> = values
        .iter()
        .zip(&eig.vectors)
        .filter(|(v, _)| **v > 1e-12)
        .map(|(v, e)| {
            let amp = v.sqrt();
            e.entries().iter().map(|z| z * amp).collect()
        })
        .collect();
    let rank = spectral.len().max(1);
    let k = cfg.ensemble_size.unwrap_or(rank * rank).max(rank);

    let dim = rho.dim();
    let run = |restart: usize| -> RoofOutcome {
        let mut members = spectral.clone();
        members.resize(k, vec![Complex64::new(0.0, 0.0); dim]);
        let mut rng = rng_from_seed(sample_seed(cfg.seed, restart as u64));
        if restart > 0 {
            // randomized warm-up: one sweep of random rotations over all pairs
            use rand::Rng;
            for i in 0..k {
                for j in i + 1..k {
                    let theta = (rng.random::<f64>() - 0.5) * std::f64::consts::PI;
                    let phi = (rng.random::<f64>() - 0.5) * std::f64::consts::TAU;
                    apply_rotation(&mut members, i, j, theta, phi);
                }
            }
        }
        optimize_members(members, objective, cfg)
    };

    let mut outcomes: Vec<(usize, RoofOutcome)> = (0..cfg.restarts.max(1))
        .into_par_iter()
        .map(|r| (r, run(r)))
        .collect();
    outcomes.sort_by(|(ra, a), (rb, b)| {
        a.value.partial_cmp(&b.value).expect("finite").then(ra.cmp(rb))
    });
    Ok(outcomes.into_iter().next().expect("at least one restart").1)
}

pub(crate) struct RoofOutcome {
    pub value: f64,
    pub members: Vec<Vec<Complex64>>,
    pub sweeps: usize,
    pub residual: f64,
}

fn roof_result(rho: &QuantumState, outcome: RoofOutcome, method: MeasureMethod) -> MeasureResult {
    let mut ensemble = Vec::new();
    for member in &outcome.members {
        let p: f64 = member.iter().map(|z| z.norm_sqr()).sum();
        if p < 1e-14 {
            continue;
        }
        let v = ComplexVector::new(member.clone()).expect("finite");
        let v = v.scale(Complex64::new(1.0 / p.sqrt(), 0.0));
        if let Ok(state) = QuantumState::pure(rho.dims().to_vec(), v) {
            ensemble.push(EnsembleMember { probability: p, state });
        }
    }
    MeasureResult {
        value: clip_value(outcome.value),
        method,
        iterations: outcome.sweeps,
        residual: outcome.residual,
        certificate: Some(Certificate::Ensemble(ensemble)),
    }
}

/// Mixes members i and j by the unitary plane rotation with angle `theta` and
/// phase `phi`; the Gram sum of the members is preserved exactly.
fn apply_rotation(
    members: &mut [Vec<Complex64>],
    i: usize,
    j: usize,
    theta: f64,
    phi: f64,
) {
    let c = theta.cos();
    let s = Complex64::from_polar(theta.sin(), phi);
    for idx in 0..members[i].len() {
        let a = members[i][idx];
        let b = members[j][idx];
        members[i][idx] = c * a + s * b;
        members[j][idx] = -s.conj() * a + c * b;
    }
}

/// Reused buffers for the two trial members of a candidate rotation.
#[derive(Default)]
struct PairScratch {
    first: Vec<Complex64>,
    second: Vec<Complex64>,
}

fn rotated_pair_value(
    members: &[Vec<Complex64>],
    pair: (usize, usize),
    theta: f64,
    phi: f64,
    objective: &(dyn Fn(&[Complex64]) -> f64 + Sync),
    scratch: &mut PairScratch,
) -> f64 {
    let c = theta.cos();
    let s = Complex64::from_polar(theta.sin(), phi);
    scratch.first.clear();
    scratch.second.clear();
    for (&a, &b) in members[pair.0].iter().zip(&members[pair.1]) {
        scratch.first.push(c * a + s * b);
        scratch.second.push(-s.conj() * a + c * b);
    }
    objective(&scratch.first) + objective(&scratch.second)
}

/// Coordinate descent over member-pair rotations: for each pair and each of
/// the two phase directions, a coarse scan plus golden-section refinement of
/// the rotation angle. Stops when a full sweep improves the objective by less
/// than `step_tolerance`.
fn optimize_members(
    mut members: Vec<Vec<Complex64>>,
    objective: &(dyn Fn(&[Complex64]) -> f64 + Sync),
    cfg: &OptimizerConfig,
) -> RoofOutcome {
    let k = members.len();
    let mut contributions: Vec<f64> = members.iter().map(|m| objective(m)).collect();
    let mut total: f64 = contributions.iter().sum();
    let mut sweeps = 0;
    let mut residual = f64::INFINITY;
    let mut scratch = PairScratch::default();

    while sweeps < cfg.max_sweeps {
        sweeps += 1;
        let before = total;
        for i in 0..k {
            for j in i + 1..k {
                if member_weight(&members[i]) < 1e-16 && member_weight(&members[j]) < 1e-16 {
                    continue;
                }
                for phi in [0.0, std::f64::consts::FRAC_PI_2] {
                    let pair_now = contributions[i] + contributions[j];
                    let eval = |theta: f64, s: &mut PairScratch| {
                        rotated_pair_value(&members, (i, j), theta, phi, objective, s)
                    };
                    let theta = minimize_angle(&eval, pair_now, &mut scratch);
                    if let Some(theta) = theta {
                        let new_pair = eval(theta, &mut scratch);
                        if new_pair < pair_now - 1e-15 {
                            apply_rotation(&mut members, i, j, theta, phi);
                            contributions[i] = objective(&members[i]);
                            contributions[j] = objective(&members[j]);
                            total += contributions[i] + contributions[j] - pair_now;
                        }
                    }
                }
            }
        }
        residual = before - total;
        if residual < cfg.step_tolerance {
            break;
        }
    }
    RoofOutcome { value: total, members, sweeps, residual }
}

fn member_weight(m: &[Complex64]) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum()
}

/// Coarse scan over a period of the rotation angle followed by golden-section
/// refinement around the best point seen (theta = 0 included, so small
/// gradient-scale moves near convergence stay reachable). Returns `None` when
/// nothing beats the current value.
fn minimize_angle(
    eval: &dyn Fn(f64, &mut PairScratch) -> f64,
    current: f64,
    scratch: &mut PairScratch,
) -> Option<f64> {
    const SCAN: usize = 8;
    let half = std::f64::consts::FRAC_PI_2;
    let step = 2.0 * half / SCAN as f64;
    let mut best_theta = 0.0;
    let mut best = current;
    for n in 0..SCAN {
        let theta = -half + step * (n as f64 + 0.5);
        if theta.abs() < 1e-12 {
            continue;
        }
        let v = eval(theta, scratch);
        if v < best {
            best = v;
            best_theta = theta;
        }
    }
    // golden-section inside the bracketing interval around the best point
    let inv_phi = 0.618_033_988_749_894_9;
    let mut lo = best_theta - step;
    let mut hi = best_theta + step;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = eval(x1, scratch);
    let mut f2 = eval(x2, scratch);
    for _ in 0..30 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = eval(x1, scratch);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = eval(x2, scratch);
        }
    }
    let (theta, value) = if f1 < f2 { (x1, f1) } else { (x2, f2) };
    if value < current && value < best {
        Some(theta)
    } else if best < current {
        Some(best_theta)
    } else {
        None
    }
}

/// Weighted entropy contribution of one unnormalized member across a cut:
/// `p * S(reduced state of m / sqrt(p))` with `p = |m|^2`.
pub(crate) fn weighted_cut_entropy(member: &[Complex64], d_a: usize, d_b: usize) -> f64 {
    let p = member_weight(member);
    if p < 1e-14 {
        return 0.0;
    }
    if d_a == 2 {
        // closed-form 2x2 spectrum of the reduced state
        let mut a00 = 0.0;
        let mut a11 = 0.0;
        let mut a01 = Complex64::new(0.0, 0.0);
        for j in 0..d_b {
            let top = member[j];
            let bottom = member[d_b + j];
            a00 += top.norm_sqr();
            a11 += bottom.norm_sqr();
            a01 += top * bottom.conj();
        }
        let disc = ((a00 - a11) * (a00 - a11) + 4.0 * a01.norm_sqr()).max(0.0).sqrt();
        let l1 = ((p + disc) / 2.0).max(0.0);
        let l2 = ((p - disc) / 2.0).max(0.0);
        return -(l1 * safe_log2(l1 / p) + l2 * safe_log2(l2 / p));
    }
    let mut rho_a = ComplexMatrix::zeros(d_a);
    for i in 0..d_a {
        for k in i..d_a {
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..d_b {
                sum += member[i * d_b + j] * member[k * d_b + j].conj();
            }
            rho_a.set(i, k, sum);
            rho_a.set(k, i, sum.conj());
        }
    }
    let values = hermitian_eigvals(&rho_a).expect("Gram matrix is Hermitian");
    values.iter().map(|&l| if l > 0.0 { -l * safe_log2(l / p) } else { 0.0 }).sum()
}

fn safe_log2(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x.log2()
    }
}

/// Weighted squared-concurrence contribution of an unnormalized member across
/// a qubit-sided cut: `p * 4 det(rho_A(m / sqrt(p))) = 4 det(rho_A(m)) / p`.
pub(crate) fn weighted_cut_concurrence_sq(member: &[Complex64], d_b: usize) -> f64 {
    let p = member_weight(member);
    if p < 1e-14 {
        return 0.0;
    }
    let mut a00 = 0.0;
    let mut a11 = 0.0;
    let mut a01 = Complex64::new(0.0, 0.0);
    for j in 0..d_b {
        let top = member[j];
        let bottom = member[d_b + j];
        a00 += top.norm_sqr();
        a11 += bottom.norm_sqr();
        a01 += top * bottom.conj();
    }
    let det = (a00 * a11 - a01.norm_sqr()).max(0.0);
    4.0 * det / p
}

// ---------------------------------------------------------------------------
// Relative entropy
// ---------------------------------------------------------------------------

/// Quantum relative entropy `S(rho || sigma) = Tr(rho log2 rho - rho log2 sigma)`
/// in bits. Returns `f64::INFINITY` when the support of `rho` leaks outside the
/// support of `sigma`.
pub fn relative_entropy(rho: &QuantumState, sigma: &QuantumState) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "relative entropy needs equal dims, got {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let rho_eig = hermitian_eig(&rho.density_matrix())?;
    relative_entropy_with(&rho_eig, &sigma.density_matrix())
}

/// Relative entropy with the spectral decomposition of `rho` precomputed.
pub(crate) fn relative_entropy_with(
    rho_eig: &EigenSystem,
    sigma: &ComplexMatrix,
) -> Result<f64> {
    let sigma_eig = hermitian_eig(sigma)?;
    let p = linalg::clip_psd(&rho_eig.values)?;
    let q = linalg::clip_psd(&sigma_eig.values)?;

    let mut s: f64 = p.iter().map(|&x| xlog2(x)).sum();
    for (j, &qj) in q.iter().enumerate() {
        // overlap mass of rho on sigma's j-th eigenvector
        let mut mass = 0.0;
        for (i, &pi) in p.iter().enumerate() {
            if pi <= 0.0 {
                continue;
            }
            mass += pi * rho_eig.vectors[i].inner(&sigma_eig.vectors[j]).norm_sqr();
        }
        if qj < SUPPORT_EIGENVALUE_TOL {
            if mass > SUPPORT_MASS_TOL {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        s -= mass * qj.log2();
    }
    Ok(s.max(0.0))
}

// ---------------------------------------------------------------------------
// Relative entropy of entanglement (heuristic upper bound)
// ---------------------------------------------------------------------------

/// Heuristic upper bound on the relative entropy of entanglement across the
/// cut after `cut` subsystems: minimizes `S(rho || sigma)` over parametrized
/// separable mixtures of `K` product terms.
pub fn ree_upper_bound(
    rho: &QuantumState,
    cut: usize,
    cfg: &OptimizerConfig,
) -> Result<MeasureResult> {
    if cut == 0 || cut >= rho.dims().len() {
        return Err(Error::InvalidArgument(format!(
            "cut {cut} does not bipartition {} subsystems",
            rho.dims().len()
        )));
    }
    let d_a: usize = rho.dims()[..cut].iter().product();
    let d_b: usize = rho.dims()[cut..].iter().product();
    let dim = d_a * d_b;
    let k = cfg.ensemble_size.unwrap_or(dim * dim);

    let matrix = rho.density_matrix();
    let rho_eig = hermitian_eig(&matrix)?;

    // initial ansatz shared by every restart: eigenbasis products of the marginals
    let rho_a = crate::linalg::partial_trace(&matrix, &[d_a, d_b], 1)?;
    let rho_b = crate::linalg::partial_trace(&matrix, &[d_a, d_b], 0)?;
    let eig_a = hermitian_eig(&rho_a)?;
    let eig_b = hermitian_eig(&rho_b)?;

    let run = |restart: usize| -> (f64, SeparableAnsatz, usize, f64) {
        let mut rng = rng_from_seed(sample_seed(cfg.seed ^ 0x5eed_ab1e, restart as u64));
        let mut ansatz = match restart {
            0 => SeparableAnsatz::from_marginals(k, d_a, d_b, &eig_a, &eig_b),
            1 => SeparableAnsatz::from_spectral_products(k, d_a, d_b, &rho_eig)
                .unwrap_or_else(|| SeparableAnsatz::random(k, d_a, d_b, &mut rng)),
            _ => SeparableAnsatz::random(k, d_a, d_b, &mut rng),
        };
        let objective = |a: &SeparableAnsatz| -> f64 {
            let sigma = a.build();
            relative_entropy_with(&rho_eig, &sigma).unwrap_or(f64::INFINITY)
        };
        let mut best = objective(&ansatz);
        let mut sweeps = 0;
        let mut residual = f64::INFINITY;
        while sweeps < cfg.max_sweeps {
            sweeps += 1;
            let before = best;
            for coord in 0..ansatz.coords() {
                let current = ansatz.get(coord);
                let mut best_x = current;
                // coarse scan then golden-section refinement of this coordinate
                const SCAN: usize = 6;
                let width = 1.2;
                for n in 0..=SCAN {
                    let x = current - width + 2.0 * width * n as f64 / SCAN as f64;
                    ansatz.set(coord, x);
                    let v = objective(&ansatz);
                    if v < best {
                        best = v;
                        best_x = x;
                    }
                }
                let inv_phi = 0.618_033_988_749_894_9;
                let mut lo = best_x - 2.0 * width / SCAN as f64;
                let mut hi = best_x + 2.0 * width / SCAN as f64;
                for _ in 0..18 {
                    let x1 = hi - inv_phi * (hi - lo);
                    let x2 = lo + inv_phi * (hi - lo);
                    ansatz.set(coord, x1);
                    let f1 = objective(&ansatz);
                    ansatz.set(coord, x2);
                    let f2 = objective(&ansatz);
                    if f1 < f2 {
                        hi = x2;
                    } else {
                        lo = x1;
                    }
                    let mid = (lo + hi) / 2.0;
                    ansatz.set(coord, mid);
                    let fm = objective(&ansatz);
                    if fm < best {
                        best = fm;
                        best_x = mid;
                    }
                }
                ansatz.set(coord, best_x);
            }
            residual = before - best;
            if residual < cfg.step_tolerance {
                break;
            }
        }
        (best, ansatz, sweeps, residual)
    };

    let mut outcomes: Vec<(usize, (f64, SeparableAnsatz, usize, f64))> =
        (0..cfg.restarts.max(1)).into_par_iter().map(|r| (r, run(r))).collect();
    outcomes.sort_by(|(ra, a), (rb, b)| {
        a.0.partial_cmp(&b.0).expect("finite").then(ra.cmp(rb))
    });
    let (value, ansatz, sweeps, residual) = outcomes.into_iter().next().expect("restarts").1;

    let sigma = ansatz.build();
    let certificate = QuantumState::mixed(rho.dims().to_vec(), sigma).ok().map(Certificate::Separable);
    Ok(MeasureResult {
        value: clip_value(value).max(0.0),
        method: MeasureMethod::HeuristicUpperBound,
        iterations: sweeps,
        residual,
        certificate,
    })
}

/// `sum_k softmax(t)_k |a_k><a_k| (x) |b_k><b_k|` with raw real coordinates.
struct SeparableAnsatz {
    d_a: usize,
    d_b: usize,
    k: usize,
    /// per term: weight logit, then 2*d_a reals for a_k, then 2*d_b reals for b_k
    params: Vec<f64>,
}

impl SeparableAnsatz {
    fn stride(d_a: usize, d_b: usize) -> usize {
        1 + 2 * d_a + 2 * d_b
    }

    fn from_marginals(k: usize, d_a: usize, d_b: usize, eig_a: &EigenSystem, eig_b: &EigenSystem) -> Self {
        let mut ansatz = Self {
            d_a,
            d_b,
            k,
            params: vec![0.0; k * Self::stride(d_a, d_b)],
        };
        let mut term = 0;
        for (i, wa) in eig_a.values.iter().enumerate() {
            for (j, wb) in eig_b.values.iter().enumerate() {
                if term >= k {
                    break;
                }
                let w = (wa.max(1e-6) * wb.max(1e-6)).max(1e-9);
                ansatz.write_term(term, w.ln(), &eig_a.vectors[i], &eig_b.vectors[j]);
                term += 1;
            }
        }
        // spread any remaining terms over computational products
        while term < k {
            let a = ComplexVector::basis_state(d_a, term % d_a);
            let b = ComplexVector::basis_state(d_b, (term / d_a) % d_b);
            ansatz.write_term(term, -6.0, &a, &b);
            term += 1;
        }
        ansatz
    }

    /// Usable when every eigenvector of rho is a product state across the cut
    /// (classically correlated inputs); then sigma can start at rho itself.
    fn from_spectral_products(
        k: usize,
        d_a: usize,
        d_b: usize,
        rho_eig: &EigenSystem,
    ) -> Option<Self> {
        let mut terms = Vec::new();
        for (value, vector) in rho_eig.values.iter().zip(&rho_eig.vectors) {
            if *value < 1e-12 {
                continue;
            }
            let (a, b) = split_product(vector, d_a, d_b)?;
            terms.push((*value, a, b));
        }
        if terms.is_empty() || terms.len() > k {
            return None;
        }
        let mut ansatz =
            Self { d_a, d_b, k, params: vec![0.0; k * Self::stride(d_a, d_b)] };
        for (i, (w, a, b)) in terms.iter().enumerate() {
            ansatz.write_term(i, w.max(1e-9).ln(), a, b);
        }
        for i in terms.len()..k {
            let a = ComplexVector::basis_state(d_a, i % d_a);
            let b = ComplexVector::basis_state(d_b, (i / d_a) % d_b);
            ansatz.write_term(i, -12.0, &a, &b);
        }
        Some(ansatz)
    }

    fn random(k: usize, d_a: usize, d_b: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Self {
        let mut ansatz =
            Self { d_a, d_b, k, params: vec![0.0; k * Self::stride(d_a, d_b)] };
        for term in 0..k {
            let a = haar_random_pure_with(rng, d_a);
            let b = haar_random_pure_with(rng, d_b);
            ansatz.write_term(term, 0.0, a.vector().expect("pure"), b.vector().expect("pure"));
        }
        ansatz
    }

    fn write_term(&mut self, term: usize, logit: f64, a: &ComplexVector, b: &ComplexVector) {
        let stride = Self::stride(self.d_a, self.d_b);
        let base = term * stride;
        self.params[base] = logit;
        for i in 0..self.d_a {
            self.params[base + 1 + 2 * i] = a.get(i).re;
            self.params[base + 1 + 2 * i + 1] = a.get(i).im;
        }
        let b_base = base + 1 + 2 * self.d_a;
        for i in 0..self.d_b {
            self.params[b_base + 2 * i] = b.get(i).re;
            self.params[b_base + 2 * i + 1] = b.get(i).im;
        }
    }

    fn coords(&self) -> usize {
        self.params.len()
    }

    fn get(&self, coord: usize) -> f64 {
        self.params[coord]
    }

    fn set(&mut self, coord: usize, value: f64) {
        self.params[coord] = value;
    }

    fn build(&self) -> ComplexMatrix {
        let stride = Self::stride(self.d_a, self.d_b);
        let dim = self.d_a * self.d_b;
        let max_logit = (0..self.k)
            .map(|t| self.params[t * stride])
            .fold(f64::NEG_INFINITY, f64::max);
        let mut weights: Vec<f64> =
            (0..self.k).map(|t| (self.params[t * stride] - max_logit).exp()).collect();
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        let mut sigma = ComplexMatrix::zeros(dim);
        for (term, weight) in weights.iter().enumerate() {
            let base = term * stride;
            let mut a = Vec::with_capacity(self.d_a);
            for i in 0..self.d_a {
                a.push(Complex64::new(
                    self.params[base + 1 + 2 * i],
                    self.params[base + 1 + 2 * i + 1],
                ));
            }
            let b_base = base + 1 + 2 * self.d_a;
            let mut b = Vec::with_capacity(self.d_b);
            for i in 0..self.d_b {
                b.push(Complex64::new(
                    self.params[b_base + 2 * i],
                    self.params[b_base + 2 * i + 1],
                ));
            }
            let na: f64 = a.iter().map(|z| z.norm_sqr()).sum();
            let nb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
            if na < 1e-18 || nb < 1e-18 {
                continue;
            }
            let scale = weight / (na * nb);
            for i1 in 0..self.d_a {
                for j1 in 0..self.d_b {
                    let row = i1 * self.d_b + j1;
                    for i2 in 0..self.d_a {
                        for j2 in 0..self.d_b {
                            let col = i2 * self.d_b + j2;
                            let entry = a[i1] * a[i2].conj() * b[j1] * b[j2].conj() * scale;
                            let old = sigma.get(row, col);
                            sigma.set(row, col, old + entry);
                        }
                    }
                }
            }
        }
        sigma
    }
}

/// Splits a vector into product factors if it has Schmidt rank one.
fn split_product(
    vector: &ComplexVector,
    d_a: usize,
    d_b: usize,
) -> Option<(ComplexVector, ComplexVector)> {
    // largest-magnitude entry anchors the factorization
    let mut best = (0usize, 0.0f64);
    for (i, z) in vector.entries().iter().enumerate() {
        if z.norm() > best.1 {
            best = (i, z.norm());
        }
    }
    if best.1 < 1e-9 {
        return None;
    }
    let (r0, c0) = (best.0 / d_b, best.0 % d_b);
    let anchor = vector.get(r0 * d_b + c0);
    let mut a = Vec::with_capacity(d_a);
    for i in 0..d_a {
        a.push(vector.get(i * d_b + c0) / anchor);
    }
    let mut b = Vec::with_capacity(d_b);
    for j in 0..d_b {
        b.push(vector.get(r0 * d_b + j));
    }
    // verify rank one: v[i,j] == a[i] * b[j]
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            if (vector.get(i * d_b + j) - ai * bj).norm() > 1e-9 {
                return None;
            }
        }
    }
    let a = ComplexVector::new(a).ok()?.normalized().ok()?;
    let b = ComplexVector::new(b).ok()?.normalized().ok()?;
    Some((a, b))
}

// ---------------------------------------------------------------------------
// Entropy continuity bound
// ---------------------------------------------------------------------------

/// Entropy continuity bound: with `x = 2 T(rho, sigma)` the trace norm of the
/// difference, returns `x log2(d) + eta(x)` where `eta(x) = -x log2(x)` for
/// `x <= 1/e` and `log2(e)/e` otherwise. Satisfies
/// `|S(rho) - S(sigma)| <= fannes_bound(rho, sigma)`.
pub fn fannes_bound(rho: &QuantumState, sigma: &QuantumState) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "fannes bound needs equal dims, got {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let d = rho.dim() as f64;
    let t = linalg::trace_distance(&rho.density_matrix(), &sigma.density_matrix())?;
    let x = 2.0 * t;
    let eta = if x <= 0.0 {
        0.0
    } else if x <= 1.0 / std::f64::consts::E {
        -x * x.log2()
    } else {
        std::f64::consts::LOG2_E / std::f64::consts::E
    };
    Ok(x * d.log2() + eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{
        counterexample_state, haar_random_pure, induced_mixed, max_entangled, separable_mixture,
        QuantumState,
    };

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn quick_cfg(seed: u64) -> OptimizerConfig {
        OptimizerConfig { restarts: 6, max_sweeps: 80, step_tolerance: 1e-8, ensemble_size: None, seed }
    }

    #[test]
    fn entropy_examples() {
        // pure projector
        let psi = haar_random_pure(3, 1);
        let rho = QuantumState::mixed(vec![3], psi.density_matrix()).unwrap();
        assert!(von_neumann_entropy(&rho).unwrap().abs() < 1e-10);

        // maximally mixed
        for d in 2..=6 {
            let mm = QuantumState::mixed(
                vec![d],
                ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
            )
            .unwrap();
            assert!((von_neumann_entropy(&mm).unwrap() - (d as f64).log2()).abs() < 1e-12);
        }

        // diag(3/4, 1/4), frozen from the scalar formula at high precision
        let rho = QuantumState::mixed(vec![2], ComplexMatrix::from_diagonal(&[0.75, 0.25]))
            .unwrap();
        assert!((von_neumann_entropy(&rho).unwrap() - 0.8112781244591328).abs() < 1e-12);
    }

    #[test]
    fn entropy_of_entanglement_examples() {
        // product state
        let v = crate::linalg::tensor_vec(
            &ComplexVector::basis_state(2, 0),
            &ComplexVector::basis_state(2, 1),
        );
        let psi = QuantumState::pure(vec![2, 2], v).unwrap();
        assert!(entropy_of_entanglement(&psi, 1).unwrap().abs() < 1e-12);

        // maximally entangled
        for d in 2..=6 {
            let psi = max_entangled(d).unwrap();
            let s = entropy_of_entanglement(&psi, 1).unwrap();
            assert!((s - (d as f64).log2()).abs() < 1e-12, "d = {d}");
        }

        // Schmidt coefficients (3/4, 1/4)
        let v = ComplexVector::new(vec![
            c(0.75f64.sqrt(), 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.25f64.sqrt(), 0.0),
        ])
        .unwrap();
        let psi = QuantumState::pure(vec![2, 2], v).unwrap();
        assert!((entropy_of_entanglement(&psi, 1).unwrap() - 0.8112781244591328).abs() < 1e-12);

        // both sides of the cut agree
        for seed in 0..10 {
            let psi = haar_random_pure(8, seed).with_dims(vec![2, 4]).unwrap();
            let left = entropy_of_entanglement(&psi, 1).unwrap();
            let right = matrix_entropy(&psi.reduce(&[1]).unwrap().density_matrix()).unwrap();
            assert!((left - right).abs() < 1e-10);
        }
    }

    #[test]
    fn concurrence_examples() {
        // Bell state
        let bell = QuantumState::mixed(vec![2, 2], max_entangled(2).unwrap().density_matrix())
            .unwrap();
        assert!((concurrence_two_qubit(&bell).unwrap() - 1.0).abs() < 1e-10);

        // product pure state
        let v = crate::linalg::tensor_vec(
            &ComplexVector::basis_state(2, 0),
            &ComplexVector::basis_state(2, 0),
        );
        let product = QuantumState::mixed(
            vec![2, 2],
            QuantumState::pure(vec![2, 2], v).unwrap().density_matrix(),
        )
        .unwrap();
        assert!(concurrence_two_qubit(&product).unwrap() < 1e-10);

        // pure |psi> = a|00>+b|01>+c|10>+d|11> has C = 2 |ad - bc|
        for seed in 0..20 {
            let psi = haar_random_pure(4, seed).with_dims(vec![2, 2]).unwrap();
            let v = psi.vector().unwrap();
            let expected =
                2.0 * (v.get(0) * v.get(3) - v.get(1) * v.get(2)).norm();
            let rho = QuantumState::mixed(vec![2, 2], psi.density_matrix()).unwrap();
            let got = concurrence_two_qubit(&rho).unwrap();
            assert!((got - expected).abs() < 1e-7, "seed {seed}: {got} vs {expected}");
        }

        // wrong dims rejected
        let mm = QuantumState::mixed(vec![2], ComplexMatrix::identity(2).scale_real(0.5)).unwrap();
        assert!(concurrence_two_qubit(&mm).is_err());
    }

    #[test]
    fn concurrence_pure_cut_examples() {
        // counterexample state across A|(BC)
        let psi = counterexample_state();
        assert!((concurrence_pure_cut(&psi, 1).unwrap() - 1.0).abs() < 1e-12);

        // |000>
        let zero = QuantumState::pure(vec![2, 2, 2], ComplexVector::basis_state(8, 0)).unwrap();
        assert!(concurrence_pure_cut(&zero, 1).unwrap() < 1e-12);

        // Bell (x) |0> across A|(BC)
        let v = crate::linalg::tensor_vec(
            max_entangled(2).unwrap().vector().unwrap(),
            &ComplexVector::basis_state(2, 0),
        );
        let psi = QuantumState::pure(vec![2, 2, 2], v).unwrap();
        assert!((concurrence_pure_cut(&psi, 1).unwrap() - 1.0).abs() < 1e-12);

        // agreement with the two-qubit concurrence on pure two-qubit states
        for seed in 0..10 {
            let psi = haar_random_pure(4, seed).with_dims(vec![2, 2]).unwrap();
            let via_det = concurrence_pure_cut(&psi, 1).unwrap();
            let rho = QuantumState::mixed(vec![2, 2], psi.density_matrix()).unwrap();
            let via_wootters = concurrence_two_qubit(&rho).unwrap();
            assert!((via_det - via_wootters).abs() < 1e-7);
        }

        // non-qubit side rejected
        let psi = haar_random_pure(8, 0).with_dims(vec![4, 2]).unwrap();
        assert!(concurrence_pure_cut(&psi, 1).is_err());
    }

    #[test]
    fn eof_from_concurrence_examples() {
        assert!(eof_from_concurrence(0.0).unwrap().abs() < 1e-15);
        assert!((eof_from_concurrence(1.0).unwrap() - 1.0).abs() < 1e-15);
        // frozen from the scalar formula at C = 1/sqrt(2)
        let c = std::f64::consts::FRAC_1_SQRT_2;
        assert!((eof_from_concurrence(c).unwrap() - 0.600876036692856).abs() < 1e-12);
        assert!(eof_from_concurrence(1.5).is_err());
        assert!(eof_from_concurrence(-0.5).is_err());

        // strictly increasing over a thousand-point grid
        let mut last = -1.0;
        for n in 0..=1000 {
            let v = eof_from_concurrence(n as f64 / 1000.0).unwrap();
            assert!(v > last || n == 0);
            last = v;
        }
    }

    #[test]
    fn eof_two_qubit_examples() {
        let bell = QuantumState::mixed(vec![2, 2], max_entangled(2).unwrap().density_matrix())
            .unwrap();
        let result = eof_two_qubit(&bell).unwrap();
        assert!((result.value - 1.0).abs() < 1e-10);
        assert_eq!(result.method, MeasureMethod::ClosedForm);

        // separable mixtures have zero entanglement of formation
        let p0 = ComplexVector::basis_state(2, 0).outer();
        let p1 = ComplexVector::basis_state(2, 1).outer();
        let chi = separable_mixture(&[
            (0.5, vec![p0.clone(), p0.clone()]),
            (0.5, vec![p1.clone(), p1.clone()]),
        ])
        .unwrap();
        assert!(eof_two_qubit(&chi).unwrap().value < 1e-10);

        // Werner-type state at p = 0.9; the independent oracle is the
        // Bell-diagonal formula C = 2 lambda_max - 1.
        let werner = werner_state(0.9);
        let eigs = hermitian_eigvals(&werner.density_matrix()).unwrap();
        let oracle_c = 2.0 * eigs[0] - 1.0;
        let oracle = eof_from_concurrence(oracle_c).unwrap();
        assert!((oracle - 0.7893549609887845).abs() < 1e-12);
        let got = eof_two_qubit(&werner).unwrap().value;
        assert!((got - oracle).abs() < 1e-10);
    }

    fn werner_state(p: f64) -> QuantumState {
        let bell = max_entangled(2).unwrap().density_matrix();
        let noise = ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
        QuantumState::mixed(vec![2, 2], bell.scale_real(p).add(&noise).unwrap()).unwrap()
    }

    #[test]
    fn convex_roof_on_pure_input_matches_entropy() {
        for seed in 0..5 {
            let psi = haar_random_pure(4, seed).with_dims(vec![2, 2]).unwrap();
            let s = entropy_of_entanglement(&psi, 1).unwrap();
            let result = eof_convex_roof(&psi, 1, &quick_cfg(seed)).unwrap();
            assert!((result.value - s).abs() < 1e-9, "seed {seed}");
            assert_eq!(result.method, MeasureMethod::ConvexRoof);
        }
    }

    #[test]
    fn convex_roof_matches_closed_form_on_rank_two_states() {
        for seed in 0..6 {
            let rho = induced_mixed(4, 2, seed).unwrap().with_dims(vec![2, 2]).unwrap();
            let closed = eof_two_qubit(&rho).unwrap().value;
            let roof = eof_convex_roof(&rho, 1, &quick_cfg(seed)).unwrap();
            assert!(
                roof.value - closed >= -1e-9 && roof.value - closed <= 1e-3,
                "seed {seed}: roof {} vs closed {closed}",
                roof.value
            );
        }
    }

    #[test]
    fn convex_roof_on_separable_input_is_small() {
        let p0 = ComplexVector::basis_state(2, 0).outer();
        let p1 = ComplexVector::basis_state(2, 1).outer();
        let chi = separable_mixture(&[
            (0.5, vec![p0.clone(), p0.clone()]),
            (0.5, vec![p1.clone(), p1.clone()]),
        ])
        .unwrap();
        let roof = eof_convex_roof(&chi, 1, &quick_cfg(0)).unwrap();
        assert!(roof.value <= 1e-4, "roof {}", roof.value);
    }

    #[test]
    fn convex_roof_certificate_reconstructs_input() {
        let rho = induced_mixed(4, 3, 9).unwrap().with_dims(vec![2, 2]).unwrap();
        let roof = eof_convex_roof(&rho, 1, &quick_cfg(1)).unwrap();
        let Certificate::Ensemble(members) = roof.certificate.unwrap() else {
            panic!("expected ensemble certificate")
        };
        crate::states::validate_ensemble(&members).unwrap();
        let mut rebuilt = ComplexMatrix::zeros(4);
        for m in &members {
            rebuilt = rebuilt
                .add(&m.state.density_matrix().scale_real(m.probability))
                .unwrap();
        }
        assert!(rebuilt.max_abs_diff(&rho.density_matrix()) < 1e-8);
        // every certificate member is a valid pure state
        for m in &members {
            assert!(m.state.is_pure());
        }
    }

    #[test]
    fn convex_roof_dominates_closed_form() {
        for seed in 20..26 {
            let rank = 2 + (seed as usize) % 3;
            let rho = induced_mixed(4, rank, seed).unwrap().with_dims(vec![2, 2]).unwrap();
            let closed = eof_two_qubit(&rho).unwrap().value;
            let roof = eof_convex_roof(&rho, 1, &quick_cfg(seed)).unwrap();
            assert!(roof.value >= closed - 1e-6, "upper bound property violated");
        }
    }

    #[test]
    fn eof_closed_form_is_convex() {
        let mut rng = rng_from_seed(77);
        use rand::Rng;
        for _ in 0..20 {
            let a = induced_mixed(4, 2, rng.random()).unwrap().with_dims(vec![2, 2]).unwrap();
            let b = induced_mixed(4, 2, rng.random()).unwrap().with_dims(vec![2, 2]).unwrap();
            let p: f64 = rng.random();
            let mix = QuantumState::mixed(
                vec![2, 2],
                a.density_matrix()
                    .scale_real(p)
                    .add(&b.density_matrix().scale_real(1.0 - p))
                    .unwrap(),
            )
            .unwrap();
            let lhs = eof_two_qubit(&mix).unwrap().value;
            let rhs = p * eof_two_qubit(&a).unwrap().value
                + (1.0 - p) * eof_two_qubit(&b).unwrap().value;
            assert!(lhs <= rhs + 1e-6);
        }
    }

    #[test]
    fn entropy_is_additive_and_bounded() {
        // S(psi (x) psi) = 2 S(psi)
        for seed in 0..10 {
            let psi = haar_random_pure(4, seed).with_dims(vec![2, 2]).unwrap();
            let s = entropy_of_entanglement(&psi, 1).unwrap();
            let doubled = crate::linalg::tensor_vec(psi.vector().unwrap(), psi.vector().unwrap());
            let doubled = QuantumState::pure(vec![2, 2, 2, 2], doubled)
                .unwrap()
                .permute_subsystems(&[0, 2, 1, 3])
                .unwrap();
            let s2 = entropy_of_entanglement(&doubled, 2).unwrap();
            assert!((s2 - 2.0 * s).abs() < 1e-9, "seed {seed}");
        }
        // maximality over random states
        for d in [2usize, 3] {
            for seed in 0..1000 {
                let psi = haar_random_pure(d * d, sample_seed(1000 + d as u64, seed))
                    .with_dims(vec![d, d])
                    .unwrap();
                let s = entropy_of_entanglement(&psi, 1).unwrap();
                assert!(s <= (d as f64).log2() + 1e-9);
            }
        }
    }

    #[test]
    fn relative_entropy_examples() {
        let rho = induced_mixed(2, 2, 31).unwrap();
        assert!(relative_entropy(&rho, &rho).unwrap() < 1e-10);

        // commuting diagonal case: S(diag(1,0) || diag(1/2,1/2)) = 1
        let a = QuantumState::mixed(vec![2], ComplexMatrix::from_diagonal(&[1.0, 0.0])).unwrap();
        let b = QuantumState::mixed(vec![2], ComplexMatrix::from_diagonal(&[0.5, 0.5])).unwrap();
        assert!((relative_entropy(&a, &b).unwrap() - 1.0).abs() < 1e-10);

        // disjoint support
        let z1 = QuantumState::mixed(vec![2], ComplexMatrix::from_diagonal(&[0.0, 1.0])).unwrap();
        assert!(relative_entropy(&a, &z1).unwrap().is_infinite());

        // nonnegative, zero only at equality
        for seed in 0..20 {
            let rho = induced_mixed(3, 3, seed).unwrap();
            let sigma = induced_mixed(3, 3, seed + 1000).unwrap();
            let s = relative_entropy(&rho, &sigma).unwrap();
            assert!(s >= 0.0);
            assert!(s > 1e-6, "independent random states should differ");
        }

        let d3 = QuantumState::mixed(vec![3], ComplexMatrix::identity(3).scale_real(1.0 / 3.0))
            .unwrap();
        assert!(relative_entropy(&rho, &d3).is_err());
    }

    #[test]
    fn ree_on_separable_inputs_is_small() {
        let cfg = OptimizerConfig {
            restarts: 4,
            max_sweeps: 40,
            step_tolerance: 1e-9,
            ensemble_size: None,
            seed: 5,
        };
        // classically correlated state: spectral products make sigma = rho reachable
        let p0 = ComplexVector::basis_state(2, 0).outer();
        let p1 = ComplexVector::basis_state(2, 1).outer();
        let chi = separable_mixture(&[
            (0.5, vec![p0.clone(), p0.clone()]),
            (0.5, vec![p1.clone(), p1.clone()]),
        ])
        .unwrap();
        let result = ree_upper_bound(&chi, 1, &cfg).unwrap();
        assert!(result.value <= 1e-4, "value {}", result.value);
        assert_eq!(result.method, MeasureMethod::HeuristicUpperBound);

        // product mixed state
        let rho_a = induced_mixed(2, 2, 1).unwrap().density_matrix();
        let rho_b = induced_mixed(2, 2, 2).unwrap().density_matrix();
        let product = separable_mixture(&[(1.0, vec![rho_a, rho_b])]).unwrap();
        let result = ree_upper_bound(&product, 1, &cfg).unwrap();
        assert!(result.value <= 1e-4, "value {}", result.value);
    }

    #[test]
    fn ree_on_bell_state_is_near_one() {
        let cfg = OptimizerConfig {
            restarts: 8,
            max_sweeps: 60,
            step_tolerance: 1e-9,
            ensemble_size: None,
            seed: 3,
        };
        let bell = QuantumState::mixed(vec![2, 2], max_entangled(2).unwrap().density_matrix())
            .unwrap();
        let result = ree_upper_bound(&bell, 1, &cfg).unwrap();
        assert!((result.value - 1.0).abs() <= 0.02, "value {}", result.value);
        assert!(result.value >= 0.0);
        // the certificate is a valid state
        let Certificate::Separable(sigma) = result.certificate.unwrap() else {
            panic!("expected separable certificate")
        };
        assert_eq!(sigma.dims(), &[2, 2]);
    }

    #[test]
    fn fannes_bound_examples() {
        let rho = induced_mixed(4, 4, 51).unwrap();
        assert!(fannes_bound(&rho, &rho).unwrap().abs() < 1e-12);

        // scalar evaluation at T = 1/e, d = 2: x = 2/e > 1/e so eta caps
        let e = std::f64::consts::E;
        let a = QuantumState::mixed(vec![2], ComplexMatrix::from_diagonal(&[1.0, 0.0])).unwrap();
        let b = QuantumState::mixed(
            vec![2],
            ComplexMatrix::from_diagonal(&[1.0 - 1.0 / e, 1.0 / e]),
        )
        .unwrap();
        let expected = (2.0 / e) * 2.0f64.log2() + std::f64::consts::LOG2_E / e;
        assert!((fannes_bound(&a, &b).unwrap() - expected).abs() < 1e-12);

        // the continuity inequality holds on random pairs
        for d in [2usize, 3, 4] {
            for seed in 0..200 {
                let rho = induced_mixed(d, d, sample_seed(600 + d as u64, seed)).unwrap();
                let sigma = induced_mixed(d, d, sample_seed(700 + d as u64, seed)).unwrap();
                let gap = (von_neumann_entropy(&rho).unwrap()
                    - von_neumann_entropy(&sigma).unwrap())
                .abs();
                let bound = fannes_bound(&rho, &sigma).unwrap();
                assert!(gap <= bound, "d {d} seed {seed}: gap {gap} > bound {bound}");
            }
        }
    }
}
