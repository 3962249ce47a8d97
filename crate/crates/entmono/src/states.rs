//! Validated quantum states, Schmidt decomposition, canonical constructors
//! and seeded random samplers.
//!
//! A [`QuantumState`] is either a normalized pure vector or a density matrix,
//! always carried together with its subsystem dimension list (big-endian:
//! subsystem 0 is the most significant index block). Every sampler takes an
//! explicit seed and is bit-reproducible; scan code derives per-sample seeds
//! with [`sample_seed`].

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    self, hermitian_eig, partial_trace, tensor, tensor_vec, ComplexMatrix, ComplexVector,
};

/// Pure-state normalization tolerance.
pub const NORM_TOL: f64 = 1e-10;
/// Density-matrix trace tolerance.
pub const TRACE_TOL: f64 = 1e-10;
/// Purity threshold for [`QuantumState::is_pure`].
pub const PURITY_TOL: f64 = 1e-8;
/// Schmidt weights mu_i below this are treated as numerical noise and dropped.
pub const SCHMIDT_THRESHOLD: f64 = 1e-12;

/// Pure vector or density matrix.
#[derive(Debug, Clone)]
pub enum StateBody {
    Pure(ComplexVector),
    Mixed(ComplexMatrix),
}

/// A validated quantum state over a list of subsystem dimensions.
#[derive(Debug, Clone)]
pub struct QuantumState {
    dims: Vec<usize>,
    body: StateBody,
}

/// Schmidt coefficients (sqrt(mu_i), descending) and the two orthonormal bases
/// of a bipartite pure state.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub coefficients: Vec<f64>,
    pub basis_a: Vec<ComplexVector>,
    pub basis_b: Vec<ComplexVector>,
    pub rank: usize,
}

/// One member of a pure-state ensemble.
#[derive(Debug, Clone)]
pub struct EnsembleMember {
    pub probability: f64,
    pub state: QuantumState,
}

/// Kind tag used by the state file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Pure,
    Mixed,
}

impl QuantumState {
    /// Validates raw entries as a pure or mixed state over `dims`.
    pub fn validate(dims: Vec<usize>, kind: StateKind, data: Vec<Complex64>) -> Result<Self> {
        match kind {
            StateKind::Pure => Self::pure(dims, ComplexVector::new(data)?),
            StateKind::Mixed => {
                let total: usize = dims.iter().product();
                Self::mixed(dims, ComplexMatrix::new(total, data)?)
            }
        }
    }

    /// Wraps a normalized vector as a pure state.
    pub fn pure(dims: Vec<usize>, vector: ComplexVector) -> Result<Self> {
        let total = check_dims(&dims)?;
        if vector.dim() != total {
            return Err(Error::DimensionMismatch(format!(
                "dims {dims:?} give dimension {total}, vector has {}",
                vector.dim()
            )));
        }
        let norm_sq = vector.norm_sq();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { dims, body: StateBody::Pure(vector) })
    }

    /// Wraps a matrix as a mixed state after checking the density-matrix conditions.
    pub fn mixed(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        let total = check_dims(&dims)?;
        if matrix.dim() != total {
            return Err(Error::DimensionMismatch(format!(
                "dims {dims:?} give dimension {total}, matrix has {}",
                matrix.dim()
            )));
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > linalg::HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation, tolerance: linalg::HERMITICITY_TOL });
        }
        let values = linalg::hermitian_eigvals(&matrix)?;
        if let Some(&min) = values.last() {
            if min < -linalg::PSD_CLIP_TOL {
                return Err(Error::NotPsd { eigenvalue: min });
            }
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace });
        }
        Ok(Self { dims, body: StateBody::Mixed(matrix) })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn body(&self) -> &StateBody {
        &self.body
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_pure_body(&self) -> bool {
        matches!(self.body, StateBody::Pure(_))
    }

    /// Pure-state vector, or an error for mixed bodies.
    pub fn vector(&self) -> Result<&ComplexVector> {
        match &self.body {
            StateBody::Pure(v) => Ok(v),
            StateBody::Mixed(_) => {
                Err(Error::InvalidArgument("expected a pure state, got a mixed one".into()))
            }
        }
    }

    /// Density matrix of the state (projector for pure bodies).
    pub fn density_matrix(&self) -> ComplexMatrix {
        match &self.body {
            StateBody::Pure(v) => v.outer(),
            StateBody::Mixed(m) => m.clone(),
        }
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        match &self.body {
            StateBody::Pure(_) => 1.0,
            StateBody::Mixed(m) => m.mul(m).expect("same dims").trace().re,
        }
    }

    /// Purity test: `Tr(rho^2) >= 1 - 1e-8` (pure vectors trivially pass).
    pub fn is_pure(&self) -> bool {
        self.purity() >= 1.0 - PURITY_TOL
    }

    /// Reinterprets the subsystem split without touching the data.
    pub fn with_dims(self, dims: Vec<usize>) -> Result<Self> {
        let total = check_dims(&dims)?;
        if total != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot reinterpret dimension {} as dims {dims:?}",
                self.dim()
            )));
        }
        Ok(Self { dims, body: self.body })
    }

    /// Traces out every subsystem not listed in `keep` (strictly increasing indices).
    pub fn reduce(&self, keep: &[usize]) -> Result<QuantumState> {
        if keep.is_empty() || keep.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "keep list must be non-empty and strictly increasing".into(),
            ));
        }
        if *keep.last().unwrap() >= self.dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "keep index {} out of range for {} subsystems",
                keep.last().unwrap(),
                self.dims.len()
            )));
        }
        let mut matrix = self.density_matrix();
        let mut dims = self.dims.clone();
        // trace from the highest index down so remaining indices stay valid
        for i in (0..dims.len()).rev() {
            if !keep.contains(&i) {
                matrix = partial_trace(&matrix, &dims, i)?;
                dims.remove(i);
            }
        }
        QuantumState::mixed(dims, matrix)
    }

    /// Reorders subsystems: new subsystem `k` is old subsystem `perm[k]`.
    pub fn permute_subsystems(&self, perm: &[usize]) -> Result<QuantumState> {
        let n = self.dims.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidArgument(format!("invalid permutation {perm:?}")));
        }
        let new_dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let map = index_map(&self.dims, &new_dims, perm);
        match &self.body {
            StateBody::Pure(v) => {
                let mut out = ComplexVector::zeros(v.dim());
                for (new_i, &old_i) in map.iter().enumerate() {
                    out.set(new_i, v.get(old_i));
                }
                QuantumState::pure(new_dims, out)
            }
            StateBody::Mixed(m) => {
                let d = m.dim();
                let mut out = ComplexMatrix::zeros(d);
                for (new_r, &old_r) in map.iter().enumerate() {
                    for (new_c, &old_c) in map.iter().enumerate() {
                        out.set(new_r, new_c, m.get(old_r, old_c));
                    }
                }
                QuantumState::mixed(new_dims, out)
            }
        }
    }
}

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidArgument(format!("invalid dims {dims:?}")));
    }
    Ok(dims.iter().product())
}

/// For each new flat index, the old flat index it reads from.
fn index_map(old_dims: &[usize], new_dims: &[usize], perm: &[usize]) -> Vec<usize> {
    let total: usize = old_dims.iter().product();
    let mut map = vec![0usize; total];
    let n = old_dims.len();
    let mut old_strides = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        old_strides[i] = old_strides[i + 1] * old_dims[i + 1];
    }
    for (new_i, slot) in map.iter_mut().enumerate() {
        // decode new_i big-endian over new_dims, route digit k to old subsystem perm[k]
        let mut rem = new_i;
        let mut old_i = 0usize;
        for (k, &d) in new_dims.iter().enumerate() {
            let weight: usize = new_dims[k + 1..].iter().product();
            let digit = rem / weight;
            rem %= weight;
            old_i += digit * old_strides[perm[k]];
            let _ = d;
        }
        *slot = old_i;
    }
    map
}

/// Schmidt decomposition of a pure state across the cut after `cut` leading subsystems.
pub fn schmidt_decompose(psi: &QuantumState, cut: usize) -> Result<SchmidtForm> {
    let vector = psi.vector()?;
    if cut == 0 || cut >= psi.dims().len() {
        return Err(Error::InvalidArgument(format!(
            "cut {cut} does not split {} subsystems into two non-empty groups",
            psi.dims().len()
        )));
    }
    let d_a: usize = psi.dims()[..cut].iter().product();
    let d_b: usize = psi.dims()[cut..].iter().product();

    // rho_A = M M^dag with M the d_a x d_b reshape of the vector
    let mut rho_a = ComplexMatrix::zeros(d_a);
    for i in 0..d_a {
        for k in 0..d_a {
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..d_b {
                sum += vector.get(i * d_b + j) * vector.get(k * d_b + j).conj();
            }
            rho_a.set(i, k, sum);
        }
    }
    let eig = hermitian_eig(&rho_a)?;

    let mut coefficients = Vec::new();
    let mut basis_a = Vec::new();
    let mut basis_b = Vec::new();
    for (mu, e) in eig.values.iter().zip(&eig.vectors) {
        if *mu < SCHMIDT_THRESHOLD {
            continue;
        }
        let root = mu.sqrt();
        // f = (<e| (x) I) |psi> / sqrt(mu)
        let mut f = ComplexVector::zeros(d_b);
        for j in 0..d_b {
            let mut sum = Complex64::new(0.0, 0.0);
            for i in 0..d_a {
                sum += e.get(i).conj() * vector.get(i * d_b + j);
            }
            f.set(j, sum / root);
        }
        coefficients.push(root);
        basis_a.push(e.clone());
        basis_b.push(f);
    }
    let rank = coefficients.len();
    Ok(SchmidtForm { coefficients, basis_a, basis_b, rank })
}

impl SchmidtForm {
    /// Rebuilds `sum_i sqrt(mu_i) |e_i> (x) |f_i>`.
    pub fn reconstruct(&self) -> ComplexVector {
        let d = self.basis_a[0].dim() * self.basis_b[0].dim();
        let mut out = ComplexVector::zeros(d);
        for ((c, e), f) in self.coefficients.iter().zip(&self.basis_a).zip(&self.basis_b) {
            let term = tensor_vec(e, f).scale(Complex64::new(*c, 0.0));
            out = out.add(&term).expect("same dims");
        }
        out
    }

    /// Squared coefficients `mu_i`, descending.
    pub fn weights(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c * c).collect()
    }
}

/// Maximally entangled state `sum_i |ii> / sqrt(d)` over dims `[d, d]`.
pub fn max_entangled(d: usize) -> Result<QuantumState> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("maximally entangled state needs d >= 2, got {d}")));
    }
    let mut v = ComplexVector::zeros(d * d);
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    for i in 0..d {
        v.set(i * d + i, amp);
    }
    QuantumState::pure(vec![d, d], v)
}

/// Convex mixture of product states: `sum_i p_i (rho_i^1 (x) ... (x) rho_i^n)`.
pub fn separable_mixture(members: &[(f64, Vec<ComplexMatrix>)]) -> Result<QuantumState> {
    if members.is_empty() {
        return Err(Error::InvalidArgument("separable mixture needs at least one member".into()));
    }
    let sum: f64 = members.iter().map(|(p, _)| p).sum();
    if (sum - 1.0).abs() > TRACE_TOL {
        return Err(Error::ProbabilitySum { sum });
    }
    let dims: Vec<usize> = members[0].1.iter().map(|f| f.dim()).collect();
    let total: usize = dims.iter().product();
    let mut rho = ComplexMatrix::zeros(total);
    for (p, factors) in members {
        if *p < 0.0 {
            return Err(Error::InvalidArgument(format!("negative probability {p}")));
        }
        let factor_dims: Vec<usize> = factors.iter().map(|f| f.dim()).collect();
        if factor_dims != dims {
            return Err(Error::DimensionMismatch(format!(
                "member dims {factor_dims:?} differ from {dims:?}"
            )));
        }
        let mut product = factors[0].clone();
        for f in &factors[1..] {
            product = tensor(&product, f);
        }
        rho = rho.add(&product.scale_real(*p))?;
    }
    QuantumState::mixed(dims, rho)
}

/// Splitmix-style hash deriving the seed of sample `index` from a master seed.
pub fn sample_seed(master_seed: u64, index: u64) -> u64 {
    let mut z = master_seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The crate-wide seeded generator.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Complex vector of independent standard-normal real/imaginary parts.
fn ginibre_vector(rng: &mut ChaCha8Rng, dim: usize) -> ComplexVector {
    let entries =
        (0..dim).map(|_| Complex64::new(standard_normal(rng), standard_normal(rng))).collect();
    ComplexVector::new(entries).expect("finite normals")
}

/// Haar-random pure state of the given dimension (dims `[dim]`).
pub fn haar_random_pure(dim: usize, seed: u64) -> QuantumState {
    let mut rng = rng_from_seed(seed);
    haar_random_pure_with(&mut rng, dim)
}

/// Haar-random pure state drawn from an existing generator.
pub fn haar_random_pure_with(rng: &mut ChaCha8Rng, dim: usize) -> QuantumState {
    let v = ginibre_vector(rng, dim).normalized().expect("nonzero with probability 1");
    QuantumState::pure(vec![dim], v).expect("normalized")
}

/// Mixed state of dimension `d` induced by tracing an environment of dimension `s`
/// out of a Haar-random pure state on `d * s`.
pub fn induced_mixed(d: usize, s: usize, seed: u64) -> Result<QuantumState> {
    if d == 0 || s == 0 {
        return Err(Error::InvalidArgument("dimensions must be positive".into()));
    }
    let joint = haar_random_pure(d * s, seed).with_dims(vec![d, s])?;
    joint.reduce(&[0])
}

/// Minimal purification: a pure state over dims `[d, rank]` whose environment
/// trace reproduces the input.
pub fn purify(rho: &QuantumState) -> Result<QuantumState> {
    let matrix = rho.density_matrix();
    let d = matrix.dim();
    let eig = hermitian_eig(&matrix)?;
    let values = linalg::clip_psd(&eig.values)?;
    let kept: Vec<(f64, &ComplexVector)> = values
        .iter()
        .zip(&eig.vectors)
        .filter(|(v, _)| **v > SCHMIDT_THRESHOLD)
        .map(|(v, e)| (*v, e))
        .collect();
    let rank = kept.len().max(1);
    let mut psi = ComplexVector::zeros(d * rank);
    for (k, (value, vector)) in kept.iter().enumerate() {
        let amp = value.sqrt();
        for i in 0..d {
            psi.set(i * rank + k, vector.get(i) * amp);
        }
    }
    // normalization drift from clipped tail eigenvalues
    let psi = psi.normalized()?;
    QuantumState::pure(vec![d, rank], psi)
}

/// The three-qubit state `(|100> + |010>/sqrt(2) + |001>/sqrt(2)) / sqrt(2)`.
pub fn counterexample_state() -> QuantumState {
    let mut v = ComplexVector::zeros(8);
    let half = Complex64::new(0.5, 0.0);
    v.set(0b100, Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
    v.set(0b010, half);
    v.set(0b001, half);
    QuantumState::pure(vec![2, 2, 2], v).expect("normalized by construction")
}

/// Haar-random unitary: Gram-Schmidt on Ginibre columns with each column's
/// first non-negligible entry made real positive.
pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = rng_from_seed(seed);
    let columns: Vec<ComplexVector> = (0..dim).map(|_| ginibre_vector(&mut rng, dim)).collect();
    let ortho = orthonormalize(dim, &[], &columns).expect("generic columns are independent");
    columns_to_matrix(dim, &ortho)
}

/// Extends `fixed` orthonormal columns to a full unitary, filling the rest by
/// Gram-Schmidt over the standard basis with deterministic phase fixing.
pub fn complete_unitary(dim: usize, fixed: &[ComplexVector]) -> Result<ComplexMatrix> {
    for (i, a) in fixed.iter().enumerate() {
        if a.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "fixed column has dim {}, expected {dim}",
                a.dim()
            )));
        }
        for (j, b) in fixed.iter().enumerate() {
            let overlap = a.inner(b).norm();
            let expected = if i == j { 1.0 } else { 0.0 };
            if (overlap - expected).abs() > 1e-10 {
                return Err(Error::InvalidArgument(
                    "fixed columns are not orthonormal".into(),
                ));
            }
        }
    }
    let basis: Vec<ComplexVector> = (0..dim).map(|i| ComplexVector::basis_state(dim, i)).collect();
    let all = orthonormalize(dim, fixed, &basis)?;
    Ok(columns_to_matrix(dim, &all))
}

/// Gram-Schmidt: keeps `fixed` as-is, then adds projected candidates until
/// `dim` columns exist. Added columns get the phase convention applied.
fn orthonormalize(
    dim: usize,
    fixed: &[ComplexVector],
    candidates: &[ComplexVector],
) -> Result<Vec<ComplexVector>> {
    let mut columns: Vec<ComplexVector> = fixed.to_vec();
    for cand in candidates {
        if columns.len() == dim {
            break;
        }
        let mut v = cand.clone();
        for c in &columns {
            let overlap = c.inner(&v);
            v = v.add(&c.scale(-overlap))?;
        }
        let norm = v.norm();
        if norm < 1e-8 {
            continue;
        }
        let mut v = v.scale(Complex64::new(1.0 / norm, 0.0));
        if let Some(first) = v.entries().iter().find(|z| z.norm() > 1e-12) {
            let phase = first / first.norm();
            v = v.scale(phase.conj());
        }
        columns.push(v);
    }
    if columns.len() != dim {
        return Err(Error::InvalidArgument("could not complete an orthonormal basis".into()));
    }
    Ok(columns)
}

fn columns_to_matrix(dim: usize, columns: &[ComplexVector]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for (j, col) in columns.iter().enumerate() {
        for i in 0..dim {
            m.set(i, j, col.get(i));
        }
    }
    m
}

/// Checks that ensemble probabilities are positive and sum to one.
pub fn validate_ensemble(members: &[EnsembleMember]) -> Result<()> {
    if members.is_empty() {
        return Err(Error::InvalidArgument("empty ensemble".into()));
    }
    let sum: f64 = members.iter().map(|m| m.probability).sum();
    if (sum - 1.0).abs() > TRACE_TOL {
        return Err(Error::ProbabilitySum { sum });
    }
    if members.iter().any(|m| m.probability <= 0.0) {
        return Err(Error::InvalidArgument("ensemble probabilities must be positive".into()));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// State file format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct StateFile {
    dims: Vec<usize>,
    kind: String,
    data: Vec<[f64; 2]>,
}

/// Serializes a state to the JSON file format
/// `{"dims": [..], "kind": "pure"|"mixed", "data": [[re,im], ...]}`.
pub fn to_json(state: &QuantumState) -> String {
    let (kind, data): (&str, Vec<[f64; 2]>) = match state.body() {
        StateBody::Pure(v) => ("pure", v.entries().iter().map(|z| [z.re, z.im]).collect()),
        StateBody::Mixed(m) => ("mixed", m.entries().iter().map(|z| [z.re, z.im]).collect()),
    };
    let file = StateFile { dims: state.dims().to_vec(), kind: kind.into(), data };
    serde_json::to_string(&file).expect("serializable")
}

/// Parses and validates a state from the JSON file format.
pub fn from_json(text: &str) -> Result<QuantumState> {
    let file: StateFile =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let kind = match file.kind.as_str() {
        "pure" => StateKind::Pure,
        "mixed" => StateKind::Mixed,
        other => return Err(Error::Format(format!("unknown kind {other:?}"))),
    };
    let data: Vec<Complex64> = file.data.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
    QuantumState::validate(file.dims, kind, data)
}

/// Loads a state file from disk.
pub fn load(path: &std::path::Path) -> Result<QuantumState> {
    from_json(&std::fs::read_to_string(path)?)
}

/// Writes a state file to disk.
pub fn save(state: &QuantumState, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, to_json(state))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bell() -> QuantumState {
        max_entangled(2).unwrap()
    }

    #[test]
    fn validate_accepts_and_rejects() {
        let mixed = QuantumState::validate(
            vec![2],
            StateKind::Mixed,
            vec![c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)],
        );
        assert!(mixed.is_ok());

        let pure = QuantumState::validate(
            vec![2, 2],
            StateKind::Pure,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        );
        assert!(pure.is_ok());

        let neg = QuantumState::validate(
            vec![2],
            StateKind::Mixed,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.001, 0.0)],
        );
        assert!(matches!(neg, Err(Error::NotPsd { .. })));

        let unnormalized =
            QuantumState::validate(vec![2], StateKind::Pure, vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(unnormalized, Err(Error::NotNormalized { .. })));

        let bad_trace = QuantumState::validate(
            vec![2],
            StateKind::Mixed,
            vec![c(0.7, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.7, 0.0)],
        );
        assert!(matches!(bad_trace, Err(Error::TraceNotOne { .. })));

        let bad_dims =
            QuantumState::validate(vec![3], StateKind::Pure, vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(bad_dims.is_err());
    }

    #[test]
    fn schmidt_product_state_has_rank_one() {
        let v = tensor_vec(&ComplexVector::basis_state(2, 0), &ComplexVector::basis_state(2, 1));
        let psi = QuantumState::pure(vec![2, 2], v).unwrap();
        let form = schmidt_decompose(&psi, 1).unwrap();
        assert_eq!(form.rank, 1);
        assert!((form.coefficients[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn schmidt_bell_state() {
        let form = schmidt_decompose(&bell(), 1).unwrap();
        assert_eq!(form.rank, 2);
        let weights = form.weights();
        assert!((weights[0] - 0.5).abs() < 1e-12);
        assert!((weights[1] - 0.5).abs() < 1e-12);
        assert!((weights.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn schmidt_reconstruction_on_random_states() {
        for seed in 0..20 {
            let psi = haar_random_pure(8, seed).with_dims(vec![2, 4]).unwrap();
            let form = schmidt_decompose(&psi, 1).unwrap();
            assert!(form.rank <= 2);
            let rebuilt = form.reconstruct();
            let err: f64 = rebuilt
                .entries()
                .iter()
                .zip(psi.vector().unwrap().entries())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-10, "reconstruction error {err} at seed {seed}");
            // orthonormal bases
            for i in 0..form.rank {
                for j in 0..form.rank {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((form.basis_a[i].inner(&form.basis_a[j]).norm() - expected).abs() < 1e-10);
                    assert!((form.basis_b[i].inner(&form.basis_b[j]).norm() - expected).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn schmidt_rejects_mixed_input() {
        let rho = QuantumState::mixed(vec![2, 2], ComplexMatrix::identity(4).scale_real(0.25))
            .unwrap();
        assert!(schmidt_decompose(&rho, 1).is_err());
    }

    #[test]
    fn schmidt_coefficients_invariant_under_local_unitaries() {
        let psi = haar_random_pure(8, 404).with_dims(vec![2, 4]).unwrap();
        let base = schmidt_decompose(&psi, 1).unwrap().coefficients;
        let u = random_unitary(2, 1);
        let v = random_unitary(4, 2);
        let m = tensor(&u, &ComplexMatrix::identity(4));
        let rotated = m.mul_vec(psi.vector().unwrap()).unwrap();
        let rotated = QuantumState::pure(vec![2, 4], rotated).unwrap();
        let coeffs = schmidt_decompose(&rotated, 1).unwrap().coefficients;
        for (a, b) in base.iter().zip(&coeffs) {
            assert!((a - b).abs() < 1e-10);
        }
        let m = tensor(&ComplexMatrix::identity(2), &v);
        let rotated = m.mul_vec(psi.vector().unwrap()).unwrap();
        let rotated = QuantumState::pure(vec![2, 4], rotated).unwrap();
        let coeffs = schmidt_decompose(&rotated, 1).unwrap().coefficients;
        for (a, b) in base.iter().zip(&coeffs) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn max_entangled_examples() {
        let phi = bell();
        let v = phi.vector().unwrap();
        let amp = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v.get(0).re - amp).abs() < 1e-15);
        assert!((v.get(3).re - amp).abs() < 1e-15);

        for d in 2..=6 {
            let psi = max_entangled(d).unwrap();
            let reduced = psi.reduce(&[0]).unwrap();
            let expected = ComplexMatrix::identity(d).scale_real(1.0 / d as f64);
            assert!(reduced.density_matrix().max_abs_diff(&expected) < 1e-12, "d = {d}");
        }
        let eigs = linalg::hermitian_eigvals(
            &max_entangled(3).unwrap().reduce(&[0]).unwrap().density_matrix(),
        )
        .unwrap();
        for e in eigs {
            assert!((e - 1.0 / 3.0).abs() < 1e-12);
        }
        assert!(max_entangled(1).is_err());
    }

    #[test]
    fn separable_mixture_examples() {
        // single member with pure factors is a product projector
        let p0 = ComplexVector::basis_state(2, 0).outer();
        let p1 = ComplexVector::basis_state(2, 1).outer();
        let product = separable_mixture(&[(1.0, vec![p0.clone(), p1.clone()])]).unwrap();
        assert!(product.is_pure());

        // classically correlated two-qubit state
        let chi = separable_mixture(&[
            (0.5, vec![p0.clone(), p0.clone()]),
            (0.5, vec![p1.clone(), p1.clone()]),
        ])
        .unwrap();
        assert!(!chi.is_pure());
        let expected = ComplexMatrix::from_diagonal(&[0.5, 0.0, 0.0, 0.5]);
        assert!(chi.density_matrix().max_abs_diff(&expected) < 1e-12);

        // probability sum enforced
        assert!(matches!(
            separable_mixture(&[(0.4, vec![p0.clone()]), (0.4, vec![p1])]),
            Err(Error::ProbabilitySum { .. })
        ));
    }

    #[test]
    fn no_signalling_on_separable_mixtures() {
        // updating each member by P rho_i P / Tr(P rho_i P) on subsystem 0 leaves
        // the reduced state of the rest unchanged, whatever the outcome
        let mut rng = rng_from_seed(99);
        for _ in 0..5 {
            let members: Vec<(f64, Vec<ComplexMatrix>)> = {
                let p = rng.random::<f64>();
                vec![
                    (p, vec![random_qubit_density(&mut rng), random_qubit_density(&mut rng)]),
                    (1.0 - p, vec![random_qubit_density(&mut rng), random_qubit_density(&mut rng)]),
                ]
            };
            let rho = separable_mixture(&members).unwrap();
            let before = rho.reduce(&[1]).unwrap().density_matrix();

            for outcome in 0..2 {
                let proj = ComplexVector::basis_state(2, outcome).outer();
                let mut post_members = Vec::new();
                for (p, factors) in &members {
                    let unnorm = proj.mul(&factors[0]).unwrap().mul(&proj).unwrap();
                    let weight = unnorm.trace().re;
                    if weight < 1e-12 {
                        continue;
                    }
                    post_members
                        .push((*p, vec![unnorm.scale_real(1.0 / weight), factors[1].clone()]));
                }
                let post = separable_mixture(&post_members).unwrap();
                let after = post.reduce(&[1]).unwrap().density_matrix();
                assert!(after.max_abs_diff(&before) < 1e-10);
            }
        }
    }

    fn random_qubit_density(rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let g = ginibre_vector(rng, 4);
        let mut m = ComplexMatrix::zeros(2);
        for i in 0..2 {
            for j in 0..2 {
                let mut sum = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    sum += g.get(i * 2 + k) * g.get(j * 2 + k).conj();
                }
                m.set(i, j, sum);
            }
        }
        let t = m.trace().re;
        m.scale_real(1.0 / t)
    }

    #[test]
    fn haar_sampler_is_deterministic_and_normalized() {
        let a = haar_random_pure(4, 7);
        let b = haar_random_pure(4, 7);
        assert_eq!(a.vector().unwrap().entries(), b.vector().unwrap().entries());
        for seed in 0..50 {
            let s = haar_random_pure(4, seed);
            assert!((s.vector().unwrap().norm_sq() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn haar_mean_population_is_uniform() {
        let n = 10_000;
        let mut sum = 0.0;
        for i in 0..n {
            let s = haar_random_pure(2, sample_seed(42, i));
            sum += s.vector().unwrap().get(0).norm_sqr();
        }
        let mean = sum / n as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn induced_mixed_behaviour() {
        // s = 1 keeps the state pure
        let pure = induced_mixed(4, 1, 3).unwrap();
        assert!((pure.purity() - 1.0).abs() < 1e-10);

        // s >= d gives full rank in practice
        for seed in 0..100 {
            let rho = induced_mixed(3, 3, seed).unwrap();
            let values = linalg::hermitian_eigvals(&rho.density_matrix()).unwrap();
            assert!(values.iter().all(|&v| v > 0.0), "seed {seed}: {values:?}");
        }
    }

    #[test]
    fn purify_round_trips() {
        let rho = induced_mixed(3, 3, 11).unwrap();
        let psi = purify(&rho).unwrap();
        assert_eq!(psi.dims(), &[3, 3]);
        let back = psi.reduce(&[0]).unwrap();
        assert!(back.density_matrix().max_abs_diff(&rho.density_matrix()) < 1e-10);

        // maximally mixed input purifies to something locally maximally mixed
        let mm = QuantumState::mixed(vec![3], ComplexMatrix::identity(3).scale_real(1.0 / 3.0))
            .unwrap();
        let psi = purify(&mm).unwrap();
        let back = psi.reduce(&[0]).unwrap();
        assert!(back.density_matrix().max_abs_diff(&mm.density_matrix()) < 1e-10);

        // pure input gets a one-dimensional environment
        let pure = haar_random_pure(4, 5);
        let rho = QuantumState::mixed(vec![4], pure.density_matrix()).unwrap();
        let psi = purify(&rho).unwrap();
        assert_eq!(psi.dims(), &[4, 1]);
        let overlap = psi.vector().unwrap().inner(pure.vector().unwrap()).norm();
        assert!((overlap - 1.0).abs() < 1e-10);
    }

    #[test]
    fn is_pure_cases() {
        assert!(bell().is_pure());
        let bell_proj = QuantumState::mixed(vec![2, 2], bell().density_matrix()).unwrap();
        assert!(bell_proj.is_pure());
        let mm = QuantumState::mixed(vec![2], ComplexMatrix::identity(2).scale_real(0.5)).unwrap();
        assert!(!mm.is_pure());
        // partial state of an entangled pure state is mixed
        let reduced = bell().reduce(&[0]).unwrap();
        assert!(!reduced.is_pure());
    }

    #[test]
    fn partial_purity_drops_for_entangled_states() {
        // Schmidt rank >= 2 forces Tr(rho_A^2) < 1
        for seed in 0..20 {
            let psi = haar_random_pure(4, seed).with_dims(vec![2, 2]).unwrap();
            let rank = schmidt_decompose(&psi, 1).unwrap().rank;
            if rank >= 2 {
                assert!(psi.reduce(&[0]).unwrap().purity() < 1.0);
            }
        }
    }

    #[test]
    fn counterexample_state_shape() {
        let psi = counterexample_state();
        assert!((psi.vector().unwrap().norm_sq() - 1.0).abs() < 1e-12);
        let rho_a = psi.reduce(&[0]).unwrap();
        let values = linalg::hermitian_eigvals(&rho_a.density_matrix()).unwrap();
        assert!((values[0] - 0.5).abs() < 1e-12);
        assert!((values[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn permutation_swaps_subsystems() {
        let psi = counterexample_state();
        let swapped = psi.permute_subsystems(&[0, 2, 1]).unwrap();
        // |100> stays, |010> and |001> swap -> same amplitudes here
        let (a, b) = (psi.vector().unwrap(), swapped.vector().unwrap());
        assert_eq!(a.get(0b100), b.get(0b100));
        assert_eq!(a.get(0b010), b.get(0b001));
        // double swap restores
        let back = swapped.permute_subsystems(&[0, 2, 1]).unwrap();
        assert_eq!(a.entries(), back.vector().unwrap().entries());
    }

    #[test]
    fn random_unitary_is_unitary_and_deterministic() {
        for dim in [2, 3, 4] {
            let u = random_unitary(dim, 13);
            let product = u.adjoint().mul(&u).unwrap();
            assert!(product.max_abs_diff(&ComplexMatrix::identity(dim)) < 1e-12);
        }
        assert_eq!(random_unitary(3, 4).entries(), random_unitary(3, 4).entries());
    }

    #[test]
    fn complete_unitary_respects_fixed_columns() {
        let col0 = ComplexVector::new(vec![
            c(0.6, 0.0),
            c(0.0, 0.8),
        ])
        .unwrap();
        let u = complete_unitary(2, std::slice::from_ref(&col0)).unwrap();
        assert!((u.get(0, 0) - col0.get(0)).norm() < 1e-12);
        assert!((u.get(1, 0) - col0.get(1)).norm() < 1e-12);
        let product = u.adjoint().mul(&u).unwrap();
        assert!(product.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn state_file_round_trip() {
        let psi = haar_random_pure(4, 21).with_dims(vec![2, 2]).unwrap();
        let text = to_json(&psi);
        let back = from_json(&text).unwrap();
        assert_eq!(back.dims(), psi.dims());
        assert_eq!(back.vector().unwrap().entries(), psi.vector().unwrap().entries());

        let rho = induced_mixed(2, 2, 22).unwrap();
        let back = from_json(&to_json(&rho)).unwrap();
        assert!(back.density_matrix().max_abs_diff(&rho.density_matrix()) < 1e-15);

        assert!(from_json("{\"dims\": [2], \"kind\": \"weird\", \"data\": []}").is_err());
        assert!(from_json("not json").is_err());
    }

    #[test]
    fn sample_seed_disperses() {
        let a = sample_seed(0, 0);
        let b = sample_seed(0, 1);
        let e = sample_seed(1, 0);
        assert_ne!(a, b);
        assert_ne!(a, e);
        assert_eq!(sample_seed(7, 9), sample_seed(7, 9));
    }
}
