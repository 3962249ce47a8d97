//! Monogamy verification machinery: CKW inequality checks for pure and mixed
//! three-qubit states, the alpha-power monogamy search, equality-condition
//! probes, and the evaluable bound functions with plot-data emission.
//!
//! Scans draw Haar-random pure samples with per-sample seeds derived from a
//! master seed, so every report is bit-reproducible and sample evaluation can
//! run on any number of workers without changing the output.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::det2;
use crate::measures::{
    concurrence_two_qubit, convex_roof_minimize, eof_two_qubit, entropy_of_entanglement,
    ree_upper_bound, weighted_cut_concurrence_sq, OptimizerConfig,
};
use crate::states::{haar_random_pure, sample_seed, QuantumState};

/// Slack below this counts as an inequality violation in scan reports.
pub const SLACK_TOL: f64 = 1e-9;
/// Numerical headroom added to the right side of the power-mean comparison.
const ALPHA_SLACK: f64 = 1e-9;
/// Bisection range for the alpha search.
const ALPHA_RANGE: (f64, f64) = (1.0, 256.0);
const ALPHA_MAX_ITERS: usize = 60;

/// Which entanglement quantity a scan evaluates on each pair / cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureId {
    /// Squared concurrence (tangle units).
    ConcurrenceSq,
    /// Unsquared concurrence.
    Concurrence,
    /// Entanglement of formation in bits (closed form on qubit pairs).
    Eof,
    /// Relative entropy of entanglement in bits (heuristic on pairs).
    Ree,
}

impl MeasureId {
    pub fn as_str(&self) -> &'static str {
        match self {
            MeasureId::ConcurrenceSq => "concurrence_sq",
            MeasureId::Concurrence => "concurrence",
            MeasureId::Eof => "eof",
            MeasureId::Ree => "ree",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "concurrence_sq" => Ok(MeasureId::ConcurrenceSq),
            "concurrence" => Ok(MeasureId::Concurrence),
            "eof" => Ok(MeasureId::Eof),
            "ree" => Ok(MeasureId::Ree),
            other => Err(Error::InvalidArgument(format!(
                "unknown measure {other:?} (expected concurrence_sq, concurrence, eof or ree)"
            ))),
        }
    }
}

/// The three pairwise / joint values of one monogamy evaluation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MonogamyTriple {
    pub e_ab: f64,
    pub e_ac: f64,
    pub e_abc: f64,
    pub measure_id: MeasureId,
    /// Seed of the sampled state (or 0 for explicit inputs).
    pub state_ref: u64,
}

impl MonogamyTriple {
    /// Builds a triple, enforcing partial-trace monotonicity
    /// `e_abc >= max(e_ab, e_ac) - 1e-8`.
    pub fn new(
        e_ab: f64,
        e_ac: f64,
        e_abc: f64,
        measure_id: MeasureId,
        state_ref: u64,
    ) -> Result<Self> {
        if e_abc < e_ab.max(e_ac) - 1e-8 {
            return Err(Error::InvalidArgument(format!(
                "monotonicity violated: e_abc {e_abc} < max({e_ab}, {e_ac}) - 1e-8"
            )));
        }
        Ok(Self { e_ab, e_ac, e_abc, measure_id, state_ref })
    }

    /// `e_abc - e_ab - e_ac`, the CKW-style slack.
    pub fn slack(&self) -> f64 {
        self.e_abc - self.e_ab - self.e_ac
    }
}

/// Parameters of the dimension-weighted bound functions.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundParams {
    /// The universal constant, configurable because no numeric value is known.
    pub c: f64,
    pub exponent: f64,
    pub dims: [usize; 3],
}

impl BoundParams {
    pub fn new(c: f64, exponent: f64, dims: [usize; 3]) -> Result<Self> {
        if c <= 0.0 {
            return Err(Error::InvalidArgument(format!("constant c must be positive, got {c}")));
        }
        if dims.iter().any(|&d| d < 2) {
            return Err(Error::InvalidArgument(format!("dims must all be >= 2, got {dims:?}")));
        }
        Ok(Self { c, exponent, dims })
    }

    /// Eighth-power bound shape.
    pub fn eighth_power(c: f64, dims: [usize; 3]) -> Result<Self> {
        Self::new(c, 8.0, dims)
    }

    /// Fourth-power bound shape.
    pub fn fourth_power(c: f64, dims: [usize; 3]) -> Result<Self> {
        Self::new(c, 4.0, dims)
    }
}

/// The evaluable bound functions over a measured point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    FSum,
    FEuclid,
    FPiecewise44,
    Bound45,
    Bound46,
    PowerMean,
}

/// Evaluates the named bound function at the point `(e_ab, e_ac, e_abc)`.
/// `alpha` is consumed by `PowerMean` only.
pub fn bound_eval(
    kind: BoundKind,
    params: &BoundParams,
    e_ab: f64,
    e_ac: f64,
    e_abc: f64,
    alpha: Option<f64>,
) -> Result<f64> {
    if e_ab < 0.0 || e_ac < 0.0 || e_abc < 0.0 {
        return Err(Error::InvalidArgument(
            "bound functions take nonnegative point components".into(),
        ));
    }
    match kind {
        BoundKind::FSum => Ok(e_ab + e_ac),
        BoundKind::FEuclid => Ok(e_ab.hypot(e_ac)),
        BoundKind::FPiecewise44 => {
            let threshold = 0.8 * e_abc;
            if e_ab >= threshold && e_ac >= threshold {
                Ok(e_ab + e_ac - threshold)
            } else {
                Ok(e_ab.max(e_ac))
            }
        }
        BoundKind::Bound45 => Ok(weighted_bound(params, 8.0, e_ab, e_ac)),
        BoundKind::Bound46 => Ok(weighted_bound(params, 4.0, e_ab, e_ac)),
        BoundKind::PowerMean => {
            let alpha = alpha.ok_or_else(|| {
                Error::InvalidArgument("power_mean needs an alpha value".into())
            })?;
            Ok(power_mean(e_ab, e_ac, alpha))
        }
    }
}

fn weighted_bound(params: &BoundParams, exponent: f64, e_ab: f64, e_ac: f64) -> f64 {
    let [d_a, d_b, d_c] = params.dims;
    let coeff = |d_other: usize| {
        let m = (d_a.min(d_other)) as f64;
        params.c / (d_a as f64 * d_other as f64 * m.log2().powf(exponent))
    };
    let first = e_ab + coeff(d_c) * e_ac.powf(exponent);
    let second = e_ac + coeff(d_b) * e_ab.powf(exponent);
    first.max(second)
}

/// `(x^alpha + y^alpha)^(1/alpha)`, stabilized against overflow/underflow by
/// factoring out the larger argument.
pub fn power_mean(x: f64, y: f64, alpha: f64) -> f64 {
    let m = x.max(y);
    if m <= 0.0 {
        return 0.0;
    }
    let (lo, hi) = (x.min(y) / m, 1.0f64);
    m * (hi + (lo).powf(alpha)).powf(1.0 / alpha)
}

// ---------------------------------------------------------------------------
// CKW checks
// ---------------------------------------------------------------------------

fn require_three_qubits(dims: &[usize]) -> Result<()> {
    if dims != [2, 2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "expected dims [2, 2, 2], got {dims:?}"
        )));
    }
    Ok(())
}

/// Squared concurrences of the two qubit pairs of a three-qubit state.
fn pair_tangles(state: &QuantumState) -> Result<(f64, f64)> {
    let rho_ab = state.reduce(&[0, 1])?;
    let rho_ac = state.reduce(&[0, 2])?;
    let c_ab = concurrence_two_qubit(&rho_ab)?;
    let c_ac = concurrence_two_qubit(&rho_ac)?;
    Ok((c_ab * c_ab, c_ac * c_ac))
}

/// `4 det(rho_A)`, the squared concurrence across the A|(BC) cut of a pure state.
fn joint_tangle_pure(psi: &QuantumState) -> Result<f64> {
    let rho_a = psi.reduce(&[0])?.density_matrix();
    Ok((4.0 * det2(&rho_a)?.re.max(0.0)).min(1.0 + 1e-12))
}

/// CKW triple of a pure three-qubit state:
/// `(C^2_AB, C^2_AC, 4 det rho_A)` with `state_ref` attached.
pub fn ckw_pure(psi: &QuantumState) -> Result<MonogamyTriple> {
    ckw_pure_with_ref(psi, 0)
}

fn ckw_pure_with_ref(psi: &QuantumState, state_ref: u64) -> Result<MonogamyTriple> {
    require_three_qubits(psi.dims())?;
    let _ = psi.vector()?;
    let (e_ab, e_ac) = pair_tangles(psi)?;
    let e_abc = joint_tangle_pure(psi)?;
    MonogamyTriple::new(e_ab, e_ac, e_abc, MeasureId::ConcurrenceSq, state_ref)
}

/// CKW triple of a mixed three-qubit state. The joint term is the convex-roof
/// heuristic minimum of the average squared cut concurrence, an upper bound on
/// the true right-hand side, so the slack is only a necessary check.
pub fn ckw_mixed(rho: &QuantumState, cfg: &OptimizerConfig) -> Result<MonogamyTriple> {
    require_three_qubits(rho.dims())?;
    let (e_ab, e_ac) = pair_tangles(rho)?;
    let objective = |member: &[num_complex::Complex64]| weighted_cut_concurrence_sq(member, 4);
    let outcome = convex_roof_minimize(&rho.density_matrix(), &objective, cfg)?;
    MonogamyTriple::new(e_ab, e_ac, outcome.value.max(0.0), MeasureId::ConcurrenceSq, 0)
}

// ---------------------------------------------------------------------------
// Sampled scans
// ---------------------------------------------------------------------------

/// One scan record: the triple plus its slack, ordered by sample index.
#[derive(Debug, Clone, Serialize)]
pub struct SampleRecord {
    pub index: u64,
    #[serde(flatten)]
    pub triple: MonogamyTriple,
    pub slack: f64,
}

/// Per-sample records of a monogamy scan plus aggregate statistics.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub measure_id: MeasureId,
    pub dims: Vec<usize>,
    pub master_seed: u64,
    pub samples: Vec<SampleRecord>,
    /// Count of samples with `slack < -1e-9`.
    pub violations: usize,
    pub min_slack: f64,
    pub alpha_star: Option<f64>,
    /// True when the joint term is only a heuristic upper bound (mixed-state
    /// right-hand sides and REE scans), making the slack a weak check.
    pub heuristic_rhs: bool,
}

impl ScanReport {
    fn from_samples(
        measure_id: MeasureId,
        dims: Vec<usize>,
        master_seed: u64,
        samples: Vec<SampleRecord>,
        heuristic_rhs: bool,
    ) -> Self {
        let violations = samples.iter().filter(|s| s.slack < -SLACK_TOL).count();
        let min_slack = samples.iter().map(|s| s.slack).fold(f64::INFINITY, f64::min);
        let min_slack = if samples.is_empty() { 0.0 } else { min_slack };
        Self {
            measure_id,
            dims,
            master_seed,
            samples,
            violations,
            min_slack,
            alpha_star: None,
            heuristic_rhs,
        }
    }

    /// CSV table with the fixed header `sample_index,e_ab,e_ac,e_abc,slack`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sample_index,e_ab,e_ac,e_abc,slack\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{},{:.9},{:.9},{:.9},{:.9}\n",
                s.index, s.triple.e_ab, s.triple.e_ac, s.triple.e_abc, s.slack
            ));
        }
        out
    }

    /// JSON mirror of the report fields.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// `(e_ab/e_abc, e_ac/e_abc)` rows for region plots; zero joint values map
    /// to the origin.
    pub fn normalized_points(&self) -> Vec<(f64, f64)> {
        self.samples
            .iter()
            .map(|s| {
                if s.triple.e_abc <= 0.0 {
                    (0.0, 0.0)
                } else {
                    (s.triple.e_ab / s.triple.e_abc, s.triple.e_ac / s.triple.e_abc)
                }
            })
            .collect()
    }
}

fn check_measure_dims(measure: MeasureId, dims: &[usize]) -> Result<()> {
    match measure {
        MeasureId::ConcurrenceSq | MeasureId::Concurrence | MeasureId::Eof => {
            require_three_qubits(dims)
        }
        MeasureId::Ree => {
            if dims.len() != 3 {
                return Err(Error::DimensionMismatch(format!(
                    "REE scans need three subsystems, got {dims:?}"
                )));
            }
            if dims.iter().product::<usize>() > 64 {
                return Err(Error::DimensionMismatch(format!(
                    "total dimension of {dims:?} exceeds the supported 64"
                )));
            }
            Ok(())
        }
    }
}

/// Evaluates one measure triple on a pure three-partite sample.
pub fn eval_pure_triple(
    measure: MeasureId,
    psi: &QuantumState,
    state_ref: u64,
    cfg: &OptimizerConfig,
) -> Result<MonogamyTriple> {
    check_measure_dims(measure, psi.dims())?;
    match measure {
        MeasureId::ConcurrenceSq => ckw_pure_with_ref(psi, state_ref),
        MeasureId::Concurrence => {
            let (t_ab, t_ac) = pair_tangles(psi)?;
            let e_abc = joint_tangle_pure(psi)?.sqrt();
            MonogamyTriple::new(t_ab.sqrt(), t_ac.sqrt(), e_abc, measure, state_ref)
        }
        MeasureId::Eof => {
            let e_ab = eof_two_qubit(&psi.reduce(&[0, 1])?)?.value;
            let e_ac = eof_two_qubit(&psi.reduce(&[0, 2])?)?.value;
            // exact pure-state value across the A|(BC) cut
            let e_abc = entropy_of_entanglement(psi, 1)?;
            MonogamyTriple::new(e_ab, e_ac, e_abc, measure, state_ref)
        }
        MeasureId::Ree => {
            let e_ab = ree_upper_bound(&psi.reduce(&[0, 1])?, 1, cfg)?.value;
            let e_ac = ree_upper_bound(&psi.reduce(&[0, 2])?, 1, cfg)?.value;
            let e_abc = entropy_of_entanglement(psi, 1)?;
            // heuristic pair values are upper bounds, so monotonicity against the
            // exact joint value is not guaranteed and is not enforced here
            Ok(MonogamyTriple { e_ab, e_ac, e_abc, measure_id: measure, state_ref })
        }
    }
}

fn sample_state(dims: &[usize], seed: u64) -> QuantumState {
    let total: usize = dims.iter().product();
    haar_random_pure(total, seed).with_dims(dims.to_vec()).expect("dims match")
}

/// Scans `n_samples` Haar-random pure states, emitting one record per sample.
pub fn region_scan(
    measure: MeasureId,
    dims: &[usize],
    n_samples: u64,
    master_seed: u64,
    cfg: &OptimizerConfig,
) -> Result<ScanReport> {
    check_measure_dims(measure, dims)?;
    let samples: Result<Vec<SampleRecord>> = (0..n_samples)
        .into_par_iter()
        .map(|index| {
            let seed = sample_seed(master_seed, index);
            let psi = sample_state(dims, seed);
            let triple = eval_pure_triple(measure, &psi, seed, cfg)?;
            Ok(SampleRecord { index, triple, slack: triple.slack() })
        })
        .collect();
    Ok(ScanReport::from_samples(
        measure,
        dims.to_vec(),
        master_seed,
        samples?,
        measure == MeasureId::Ree,
    ))
}

/// CKW scan: squared-concurrence triples over pure three-qubit samples.
pub fn ckw_scan(n_samples: u64, master_seed: u64) -> Result<ScanReport> {
    region_scan(MeasureId::ConcurrenceSq, &[2, 2, 2], n_samples, master_seed, &OptimizerConfig::default())
}

// ---------------------------------------------------------------------------
// Alpha search
// ---------------------------------------------------------------------------

/// Smallest alpha in `[1, 256]` (bisection to `tol`, 60 iterations) for which
/// `(e_ab^alpha + e_ac^alpha)^(1/alpha) <= e_abc + 1e-9` holds on every triple.
/// Returns `f64::INFINITY` when even the upper end fails.
pub fn alpha_search_over(triples: &[MonogamyTriple], tol: f64) -> f64 {
    let satisfied = |alpha: f64| {
        triples.iter().all(|t| power_mean(t.e_ab, t.e_ac, alpha) <= t.e_abc + ALPHA_SLACK)
    };
    let (mut lo, mut hi) = ALPHA_RANGE;
    if !satisfied(hi) {
        return f64::INFINITY;
    }
    if satisfied(lo) {
        return lo;
    }
    let mut iters = 0;
    while hi - lo > tol && iters < ALPHA_MAX_ITERS {
        let mid = (lo + hi) / 2.0;
        if satisfied(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        iters += 1;
    }
    hi
}

/// Samples `n_samples` pure states and runs the alpha bisection over their
/// triples; the result is the empirical alpha for this sample set.
pub fn alpha_search(
    measure: MeasureId,
    dims: &[usize],
    n_samples: u64,
    master_seed: u64,
    tol: f64,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    let report = region_scan(measure, dims, n_samples, master_seed, cfg)?;
    let triples: Vec<MonogamyTriple> = report.samples.iter().map(|s| s.triple).collect();
    Ok(alpha_search_over(&triples, tol))
}

// ---------------------------------------------------------------------------
// Definition-15 probe
// ---------------------------------------------------------------------------

/// Result of probing the equality condition: among samples with
/// `e_abc - e_ab < epsilon`, how large can `e_ac` get?
#[derive(Debug, Clone, Serialize)]
pub struct Def15Report {
    pub measure_id: MeasureId,
    pub epsilon: f64,
    pub n_samples: u64,
    pub in_slab: usize,
    pub max_in_slab_e_ac: f64,
    /// Targeted Bell_AB (x) |phi>_C states: all are expected inside the slab
    /// with zero `e_ac`.
    pub targeted_in_slab: usize,
    pub targeted_max_e_ac: f64,
}

/// Bell pair on AB tensored with a few fixed single-qubit states on C.
fn targeted_states() -> Vec<QuantumState> {
    use crate::linalg::{tensor_vec, ComplexVector};
    use num_complex::Complex64;
    let bell = crate::states::max_entangled(2).expect("d = 2");
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let phis = vec![
        ComplexVector::basis_state(2, 0),
        ComplexVector::basis_state(2, 1),
        ComplexVector::from_real(&[h, h]),
        ComplexVector::new(vec![Complex64::new(h, 0.0), Complex64::new(0.0, h)]).expect("finite"),
    ];
    phis.into_iter()
        .map(|phi| {
            let v = tensor_vec(bell.vector().expect("pure"), &phi);
            QuantumState::pure(vec![2, 2, 2], v).expect("normalized")
        })
        .collect()
}

/// Filters sampled triples to the near-equality slab `e_abc - e_ab < epsilon`
/// and reports the largest `e_ac` seen there, alongside the targeted states.
pub fn def15_probe(
    measure: MeasureId,
    dims: &[usize],
    n_samples: u64,
    master_seed: u64,
    epsilon: f64,
    cfg: &OptimizerConfig,
) -> Result<Def15Report> {
    let report = region_scan(measure, dims, n_samples, master_seed, cfg)?;
    let mut in_slab = 0;
    let mut max_e_ac: f64 = 0.0;
    for s in &report.samples {
        if s.triple.e_abc - s.triple.e_ab < epsilon {
            in_slab += 1;
            max_e_ac = max_e_ac.max(s.triple.e_ac);
        }
    }
    let mut targeted_in_slab = 0;
    let mut targeted_max: f64 = 0.0;
    for psi in targeted_states() {
        if psi.dims() == dims {
            let t = eval_pure_triple(measure, &psi, 0, cfg)?;
            if t.e_abc - t.e_ab < epsilon {
                targeted_in_slab += 1;
                targeted_max = targeted_max.max(t.e_ac);
            }
        }
    }
    Ok(Def15Report {
        measure_id: measure,
        epsilon,
        n_samples,
        in_slab,
        max_in_slab_e_ac: max_e_ac,
        targeted_in_slab,
        targeted_max_e_ac: targeted_max,
    })
}
