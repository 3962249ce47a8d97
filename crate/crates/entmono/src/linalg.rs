//! Dense complex linear algebra over small Hilbert spaces.
//!
//! Everything here operates on square row-major matrices of `Complex64`
//! entries. Matrices never exceed a few dozen rows at the scales this crate
//! targets, so the routines favour robustness and determinism over speed:
//! the eigensolver is a cyclic complex Jacobi iteration, and eigenvalue sort
//! order (descending, ties by original index) is fixed so results are
//! reproducible bit for bit.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Max-entry deviation from the adjoint below which a matrix counts as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Eigenvalues in `[-PSD_CLIP_TOL, 0)` are clipped to zero; anything lower is an error.
pub const PSD_CLIP_TOL: f64 = 1e-10;
/// Jacobi stops once every off-diagonal entry is below this factor times the input max-norm.
const JACOBI_THRESHOLD_FACTOR: f64 = 1e-13;
/// Jacobi sweep cap factor: at most `100 * dim^2` sweeps before giving up.
const JACOBI_SWEEP_FACTOR: usize = 100;

/// Dense square matrix of complex entries, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

/// Dense complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<Complex64>,
}

/// Eigenvalues (descending) and matching orthonormal eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: Vec<ComplexVector>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and non-finite values.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if let Some(i) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteEntry(i));
        }
        Ok(Self { dim, entries })
    }

    /// All-zero matrix.
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix whose entries are real values (imaginary parts zero).
    pub fn from_real(dim: usize, reals: &[f64]) -> Result<Self> {
        Self::new(dim, reals.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    /// Diagonal matrix from real values.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let dim = diag.len();
        let mut m = Self::zeros(dim);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * dim + i] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|z| z.conj()).collect() }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { dim: self.dim, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Self { dim: self.dim, entries })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|z| z * factor).collect() }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.entries[i * d + j] += a * other.entries[k * d + j];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "matrix dim {} vs vector dim {}",
                self.dim,
                v.dim()
            )));
        }
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for (i, slot) in out.iter_mut().enumerate() {
            for j in 0..d {
                *slot += self.entries[i * d + j] * v.entries[j];
            }
        }
        Ok(ComplexVector { entries: out })
    }

    /// Largest entry magnitude.
    pub fn norm_max(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max-entry deviation from the adjoint.
    pub fn hermiticity_deviation(&self) -> f64 {
        let d = self.dim;
        let mut dev: f64 = 0.0;
        for i in 0..d {
            for j in i..d {
                dev = dev.max((self.entries[i * d + j] - self.entries[j * d + i].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "matrix dims {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    fn check_hermitian(&self) -> Result<()> {
        let deviation = self.hermiticity_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation, tolerance: HERMITICITY_TOL });
        }
        Ok(())
    }
}

impl ComplexVector {
    /// Builds a vector, rejecting empty or non-finite input.
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("vector must have positive dimension".into()));
        }
        if let Some(i) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteEntry(i));
        }
        Ok(Self { entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { entries: vec![Complex64::new(0.0, 0.0); dim] }
    }

    /// Computational basis state `|index>`.
    pub fn basis_state(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[index] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn from_real(reals: &[f64]) -> Self {
        Self { entries: reals.iter().map(|&r| Complex64::new(r, 0.0)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize) -> Complex64 {
        self.entries[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: Complex64) {
        self.entries[i] = value;
    }

    /// Inner product `<self|other>` (conjugate-linear in `self`).
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Returns a unit-norm copy, or an error for the zero vector.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(Error::NotNormalized { norm_sq: 0.0 });
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { entries: self.entries.iter().map(|z| z * factor).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector dims {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(Self { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() })
    }

    /// Projector `|self><self|`.
    pub fn outer(&self) -> ComplexMatrix {
        let d = self.dim();
        let mut m = ComplexMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m.entries[i * d + j] = self.entries[i] * self.entries[j].conj();
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        Self { entries: self.entries.iter().map(|z| z.conj()).collect() }
    }
}

/// Kronecker product of two matrices, left operand most significant.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim, b.dim);
    let d = da * db;
    let mut out = ComplexMatrix::zeros(d);
    for i1 in 0..da {
        for j1 in 0..da {
            let aij = a.entries[i1 * da + j1];
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for i2 in 0..db {
                for j2 in 0..db {
                    out.entries[(i1 * db + i2) * d + (j1 * db + j2)] =
                        aij * b.entries[i2 * db + j2];
                }
            }
        }
    }
    out
}

/// Kronecker product of two vectors, left operand most significant.
pub fn tensor_vec(a: &ComplexVector, b: &ComplexVector) -> ComplexVector {
    let mut entries = Vec::with_capacity(a.dim() * b.dim());
    for x in &a.entries {
        for y in &b.entries {
            entries.push(x * y);
        }
    }
    ComplexVector { entries }
}

/// Traces out subsystem `traced_index` of an operator over `dims` (big-endian layout,
/// subsystem 0 most significant). The remaining subsystems keep their order.
pub fn partial_trace(
    m: &ComplexMatrix,
    dims: &[usize],
    traced_index: usize,
) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if total != m.dim {
        return Err(Error::DimensionMismatch(format!(
            "product of dims {dims:?} is {total}, matrix dim is {}",
            m.dim
        )));
    }
    if traced_index >= dims.len() {
        return Err(Error::DimensionMismatch(format!(
            "traced index {traced_index} out of range for {} subsystems",
            dims.len()
        )));
    }
    let dt = dims[traced_index];
    let inner: usize = dims[traced_index + 1..].iter().product();
    let outer: usize = dims[..traced_index].iter().product();
    let out_dim = outer * inner;
    let mut out = ComplexMatrix::zeros(out_dim);
    for o1 in 0..outer {
        for i1 in 0..inner {
            let r_out = o1 * inner + i1;
            for o2 in 0..outer {
                for i2 in 0..inner {
                    let c_out = o2 * inner + i2;
                    let mut sum = Complex64::new(0.0, 0.0);
                    for x in 0..dt {
                        let r_full = (o1 * dt + x) * inner + i1;
                        let c_full = (o2 * dt + x) * inner + i2;
                        sum += m.entries[r_full * m.dim + c_full];
                    }
                    out.entries[r_out * out_dim + c_out] = sum;
                }
            }
        }
    }
    Ok(out)
}

/// Cyclic complex Jacobi eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues come out sorted descending, ties broken by the pre-sort column
/// index, and the eigenvectors are the matching unitary columns. The rotation
/// loop stops when every off-diagonal magnitude drops below
/// `1e-13 * max-norm` of the input, or errors after `100 * dim^2` sweeps.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenSystem> {
    m.check_hermitian()?;
    let (values, vectors) = jacobi(m, true)?;
    let vectors = vectors.expect("jacobi with vectors");
    Ok(EigenSystem { values, vectors })
}

/// Eigenvalues only (descending); skips accumulating the eigenvector matrix.
pub fn hermitian_eigvals(m: &ComplexMatrix) -> Result<Vec<f64>> {
    m.check_hermitian()?;
    let (values, _) = jacobi(m, false)?;
    Ok(values)
}

fn jacobi(m: &ComplexMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<Vec<ComplexVector>>)> {
    let d = m.dim;
    let mut a = m.entries.clone();
    let mut v = if want_vectors { ComplexMatrix::identity(d).entries } else { Vec::new() };
    let threshold = JACOBI_THRESHOLD_FACTOR * m.norm_max();
    let max_sweeps = JACOBI_SWEEP_FACTOR * d * d;

    let mut sweeps = 0;
    loop {
        let mut off_max: f64 = 0.0;
        for p in 0..d {
            for q in p + 1..d {
                off_max = off_max.max(a[p * d + q].norm());
            }
        }
        if off_max <= threshold {
            break;
        }
        sweeps += 1;
        if sweeps > max_sweeps {
            return Err(Error::ConvergenceFailure { sweeps: max_sweeps });
        }
        for p in 0..d {
            for q in p + 1..d {
                let apq = a[p * d + q];
                let r = apq.norm();
                if r <= threshold {
                    continue;
                }
                // Unitary plane rotation J(p,q): c real, s = sin(theta) * phase(apq),
                // chosen so (J^dag A J)[p][q] = 0.
                let phase = apq / r;
                let app = a[p * d + p].re;
                let aqq = a[q * d + q].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = phase * (t * c);

                // A <- A J  (columns p, q)
                for i in 0..d {
                    let aip = a[i * d + p];
                    let aiq = a[i * d + q];
                    a[i * d + p] = c * aip - s.conj() * aiq;
                    a[i * d + q] = s * aip + c * aiq;
                }
                // A <- J^dag A  (rows p, q)
                for j in 0..d {
                    let apj = a[p * d + j];
                    let aqj = a[q * d + j];
                    a[p * d + j] = c * apj - s * aqj;
                    a[q * d + j] = s.conj() * apj + c * aqj;
                }
                // Kill the rounding residue on the zeroed pair.
                a[p * d + q] = Complex64::new(0.0, 0.0);
                a[q * d + p] = Complex64::new(0.0, 0.0);
                a[p * d + p] = Complex64::new(a[p * d + p].re, 0.0);
                a[q * d + q] = Complex64::new(a[q * d + q].re, 0.0);

                if want_vectors {
                    for i in 0..d {
                        let vip = v[i * d + p];
                        let viq = v[i * d + q];
                        v[i * d + p] = c * vip - s.conj() * viq;
                        v[i * d + q] = s * vip + c * viq;
                    }
                }
            }
        }
    }

    // Stable descending sort keeps the original column order on ties.
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| {
        a[j * d + j].re.partial_cmp(&a[i * d + i].re).expect("finite eigenvalues")
    });
    let values: Vec<f64> = order.iter().map(|&i| a[i * d + i].re).collect();
    let vectors = if want_vectors {
        Some(
            order
                .iter()
                .map(|&col| {
                    ComplexVector { entries: (0..d).map(|row| v[row * d + col]).collect() }
                })
                .collect(),
        )
    } else {
        None
    };
    Ok((values, vectors))
}

impl EigenSystem {
    /// Rebuilds `sum_i lambda_i |v_i><v_i|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = self.vectors[0].dim();
        let mut m = ComplexMatrix::zeros(d);
        for (value, vector) in self.values.iter().zip(&self.vectors) {
            let p = vector.outer();
            for (e, pe) in m.entries.iter_mut().zip(p.entries) {
                *e += pe * value;
            }
        }
        m
    }
}

/// Applies a real function to a Hermitian matrix through its spectral decomposition.
///
/// Errors if `f` returns a non-finite value at any eigenvalue.
pub fn apply_function<F: Fn(f64) -> f64>(m: &ComplexMatrix, f: F) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    let d = m.dim;
    let mut out = ComplexMatrix::zeros(d);
    for (value, vector) in eig.values.iter().zip(&eig.vectors) {
        let fv = f(*value);
        if !fv.is_finite() {
            return Err(Error::DomainError { eigenvalue: *value });
        }
        let p = vector.outer();
        for (e, pe) in out.entries.iter_mut().zip(p.entries) {
            *e += pe * fv;
        }
    }
    Ok(out)
}

/// Eigenvalues of a Hermitian PSD matrix with the small-negative clip applied.
///
/// Values in `[-1e-10, 0)` are clipped to zero; anything more negative is a
/// not-PSD error. Returned descending.
pub fn psd_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let values = hermitian_eigvals(m)?;
    clip_psd(&values)
}

/// Applies the PSD clip to an eigenvalue list.
pub fn clip_psd(values: &[f64]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(values.len());
    for &v in values {
        if v < -PSD_CLIP_TOL {
            return Err(Error::NotPsd { eigenvalue: v });
        }
        out.push(v.max(0.0));
    }
    Ok(out)
}

/// Principal square root of a Hermitian PSD matrix.
pub fn sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    let values = clip_psd(&eig.values)?;
    let d = m.dim;
    let mut out = ComplexMatrix::zeros(d);
    for (value, vector) in values.iter().zip(&eig.vectors) {
        let root = value.sqrt();
        if root == 0.0 {
            continue;
        }
        let p = vector.outer();
        for (e, pe) in out.entries.iter_mut().zip(p.entries) {
            *e += pe * root;
        }
    }
    Ok(out)
}

/// Trace distance `T(rho, sigma) = Tr|rho - sigma| / 2` between Hermitian matrices.
pub fn trace_distance(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    rho.check_same_dim(sigma)?;
    rho.check_hermitian()?;
    sigma.check_hermitian()?;
    let diff = rho.sub(sigma)?;
    let values = hermitian_eigvals(&diff)?;
    Ok(values.iter().map(|v| v.abs()).sum::<f64>() / 2.0)
}

/// Determinant of a 2x2 matrix.
pub fn det2(m: &ComplexMatrix) -> Result<Complex64> {
    if m.dim != 2 {
        return Err(Error::DimensionMismatch(format!("expected 2x2 matrix, got dim {}", m.dim)));
    }
    Ok(m.entries[0] * m.entries[3] - m.entries[1] * m.entries[2])
}
