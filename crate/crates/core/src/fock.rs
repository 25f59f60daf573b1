//! Truncated Fock-space states, Kraus channels and the bosonic loss channel.
//!
//! Multi-mode objects carry their per-mode truncation dimensions; the flat
//! basis index is row-major in the mode order, so `|n_0 n_1 ...⟩` sits at
//! `n_0 * (d_1 d_2 ...) + n_1 * (d_2 ...) + ...`.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{param, Error, Result};
use crate::linalg::{self, cr, CMatrix, ONE, ZERO};

/// Tolerance for structural invariants (Hermiticity, trace, positivity).
pub const STRUCTURE_TOL: f64 = 1e-9;
/// Tolerance for exact algebraic identities.
pub const EXACT_TOL: f64 = 1e-12;
/// Largest admissible Fock tail weight dropped by [`coherent_vector`].
pub const COHERENT_TAIL_TOL: f64 = 1e-10;

fn product(dims: &[usize]) -> usize {
    dims.iter().product()
}

fn check_dims(dims: &[usize]) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(param("mode_dims", format!("need at least one mode of nonzero dimension, got {dims:?}")));
    }
    Ok(())
}

/// Splits a flat index into per-mode occupation numbers.
pub fn unflatten(dims: &[usize], mut index: usize) -> Vec<usize> {
    let mut occ = vec![0; dims.len()];
    for (slot, &d) in occ.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    occ
}

/// Flat index of a multi-mode occupation pattern.
pub fn flatten(dims: &[usize], occupations: &[usize]) -> usize {
    occupations.iter().zip(dims).fold(0, |acc, (&n, &d)| acc * d + n)
}

/// Pure state on a truncated multi-mode Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    mode_dims: Vec<usize>,
    amplitudes: DVector<Complex64>,
}

impl FockVector {
    pub fn new(mode_dims: Vec<usize>, amplitudes: DVector<Complex64>) -> Result<Self> {
        check_dims(&mode_dims)?;
        if amplitudes.len() != product(&mode_dims) {
            return Err(Error::Shape(format!(
                "{} amplitudes for mode dims {:?}",
                amplitudes.len(),
                mode_dims
            )));
        }
        Ok(Self { mode_dims, amplitudes })
    }

    /// Number state `|n_0 n_1 ...⟩`.
    pub fn basis(mode_dims: &[usize], occupations: &[usize]) -> Result<Self> {
        check_dims(mode_dims)?;
        if occupations.len() != mode_dims.len() || occupations.iter().zip(mode_dims).any(|(&n, &d)| n >= d) {
            return Err(Error::Shape(format!("occupations {occupations:?} do not fit dims {mode_dims:?}")));
        }
        let mut amplitudes = DVector::zeros(product(mode_dims));
        amplitudes[flatten(mode_dims, occupations)] = ONE;
        Ok(Self { mode_dims: mode_dims.to_vec(), amplitudes })
    }

    pub fn vacuum(mode_dims: &[usize]) -> Result<Self> {
        Self::basis(mode_dims, &vec![0; mode_dims.len()])
    }

    /// Linear combination `Σ c_k |v_k⟩` of vectors on identical mode dims.
    pub fn superpose(terms: &[(Complex64, &FockVector)]) -> Result<Self> {
        let (_, first) = terms.first().ok_or_else(|| param("terms", "empty superposition"))?;
        let mut amplitudes = DVector::zeros(first.dim());
        for (coeff, v) in terms {
            if v.mode_dims != first.mode_dims {
                return Err(Error::Shape(format!("mode dims {:?} vs {:?}", v.mode_dims, first.mode_dims)));
            }
            amplitudes += &v.amplitudes * *coeff;
        }
        Ok(Self { mode_dims: first.mode_dims.clone(), amplitudes })
    }

    pub fn mode_dims(&self) -> &[usize] {
        &self.mode_dims
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::Validity("cannot normalize a zero vector".into()));
        }
        Ok(Self { mode_dims: self.mode_dims.clone(), amplitudes: &self.amplitudes / cr(n) })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &FockVector) -> Result<Complex64> {
        if self.mode_dims != other.mode_dims {
            return Err(Error::Shape(format!("mode dims {:?} vs {:?}", self.mode_dims, other.mode_dims)));
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `|self⟩⟨self|` (not renormalized).
    pub fn projector(&self) -> DensityOp {
        let m = &self.amplitudes * self.amplitudes.adjoint();
        DensityOp { mode_dims: self.mode_dims.clone(), matrix: m }
    }
}

/// Density operator on a truncated multi-mode Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOp {
    mode_dims: Vec<usize>,
    matrix: CMatrix,
}

impl DensityOp {
    /// Wraps a matrix after a shape check; use [`DensityOp::validate`] for
    /// the physical invariants.
    pub fn new(mode_dims: Vec<usize>, matrix: CMatrix) -> Result<Self> {
        check_dims(&mode_dims)?;
        let d = product(&mode_dims);
        if matrix.shape() != (d, d) {
            return Err(Error::Shape(format!("matrix {:?} for mode dims {:?}", matrix.shape(), mode_dims)));
        }
        Ok(Self { mode_dims, matrix })
    }

    /// Single-qubit state (one mode of dimension two).
    pub fn qubit(matrix: CMatrix) -> Result<Self> {
        Self::new(vec![2], matrix)
    }

    pub fn from_pure(v: &FockVector) -> Result<Self> {
        Ok(v.normalized()?.projector())
    }

    pub fn maximally_mixed(mode_dims: &[usize]) -> Result<Self> {
        check_dims(mode_dims)?;
        let d = product(mode_dims);
        Ok(Self { mode_dims: mode_dims.to_vec(), matrix: CMatrix::identity(d, d) * cr(1.0 / d as f64) })
    }

    pub fn mode_dims(&self) -> &[usize] {
        &self.mode_dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        linalg::trace(&self.matrix)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(&self.matrix)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    /// Checks Hermiticity, unit trace and positivity to within `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let herm = self.hermiticity_defect();
        if herm > tol {
            return Err(Error::Validity(format!("not Hermitian (defect {herm:e})")));
        }
        let tr = self.trace();
        if (tr - ONE).norm() > tol {
            return Err(Error::Validity(format!("trace {tr} differs from 1")));
        }
        let min = linalg::min_eigenvalue(&self.matrix);
        if min < -tol {
            return Err(Error::Validity(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate(STRUCTURE_TOL).is_ok()
    }
}

/// Kronecker composition of two states of the same kind; mode lists concatenate.
pub trait Tensor {
    fn tensor(&self, other: &Self) -> Self;
}

impl Tensor for FockVector {
    fn tensor(&self, other: &Self) -> Self {
        let a = CMatrix::from_column_slice(self.dim(), 1, self.amplitudes.as_slice());
        let b = CMatrix::from_column_slice(other.dim(), 1, other.amplitudes.as_slice());
        let k = linalg::kron(&a, &b);
        let mut mode_dims = self.mode_dims.clone();
        mode_dims.extend_from_slice(&other.mode_dims);
        Self { mode_dims, amplitudes: DVector::from_column_slice(k.as_slice()) }
    }
}

impl Tensor for DensityOp {
    fn tensor(&self, other: &Self) -> Self {
        let mut mode_dims = self.mode_dims.clone();
        mode_dims.extend_from_slice(&other.mode_dims);
        Self { mode_dims, matrix: linalg::kron(&self.matrix, &other.matrix) }
    }
}

/// Ordered Kraus decomposition of a single-mode channel.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    operators: Vec<CMatrix>,
    gamma: Option<f64>,
}

impl KrausSet {
    pub fn new(operators: Vec<CMatrix>, gamma: Option<f64>) -> Result<Self> {
        let first = operators.first().ok_or_else(|| param("operators", "empty Kraus set"))?;
        let shape = first.shape();
        if let Some(bad) = operators.iter().find(|op| op.shape() != shape) {
            return Err(Error::Shape(format!("Kraus operator {:?} vs {:?}", bad.shape(), shape)));
        }
        Ok(Self { operators, gamma })
    }

    pub fn identity(dim: usize) -> Self {
        Self { operators: vec![CMatrix::identity(dim, dim)], gamma: Some(0.0) }
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    pub fn gamma(&self) -> Option<f64> {
        self.gamma
    }

    pub fn input_dim(&self) -> usize {
        self.operators[0].ncols()
    }

    pub fn output_dim(&self) -> usize {
        self.operators[0].nrows()
    }

    /// `‖Σ A†A − I‖∞` (largest entry).
    pub fn completeness_defect(&self) -> f64 {
        let n = self.input_dim();
        let sum = self.operators.iter().fold(CMatrix::zeros(n, n), |acc, a| acc + a.adjoint() * a);
        linalg::max_abs_diff(&sum, &CMatrix::identity(n, n))
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Loss-channel Kraus operators `A_k`, `k = 0..dim-1`, on a mode truncated at
/// `dim` levels: `A_k |n⟩ = √C(n,k) √((1−γ)^{n−k} γ^k) |n−k⟩`.
///
/// The truncated set is exactly complete, since loss never raises the
/// photon number.
pub fn damping_kraus(gamma: f64, dim: usize) -> Result<KrausSet> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(param("gamma", format!("{gamma} outside [0, 1]")));
    }
    if dim == 0 {
        return Err(param("dim", "must be positive"));
    }
    let keep = 1.0 - gamma;
    let operators = (0..dim)
        .map(|k| {
            let mut a = CMatrix::zeros(dim, dim);
            for n in k..dim {
                let amp = binomial(n, k).sqrt() * (keep.powi((n - k) as i32) * gamma.powi(k as i32)).sqrt();
                a[(n - k, n)] = cr(amp);
            }
            a
        })
        .collect();
    Ok(KrausSet { operators, gamma: Some(gamma) })
}

/// Applies independent single-mode channels, one [`KrausSet`] per mode:
/// `ρ ↦ Σ (⊗_m A_{k_m}) ρ (⊗_m A_{k_m})†`.
pub fn apply_channel(rho: &DensityOp, per_mode: &[KrausSet]) -> Result<DensityOp> {
    if per_mode.len() != rho.mode_dims.len() {
        return Err(Error::Shape(format!(
            "{} Kraus sets for {} modes",
            per_mode.len(),
            rho.mode_dims.len()
        )));
    }
    let mut dims = rho.mode_dims.clone();
    let mut current = rho.matrix.clone();
    for (mode, kraus) in per_mode.iter().enumerate() {
        if kraus.input_dim() != dims[mode] {
            return Err(Error::Shape(format!(
                "mode {mode} has dim {} but Kraus set expects {}",
                dims[mode],
                kraus.input_dim()
            )));
        }
        let left = product(&dims[..mode]);
        let right = product(&dims[mode + 1..]);
        let id_left = CMatrix::identity(left, left);
        let id_right = CMatrix::identity(right, right);
        let out_dim = kraus.output_dim();
        let full_out = left * out_dim * right;
        let mut next = CMatrix::zeros(full_out, full_out);
        for a in &kraus.operators {
            if a.iter().all(|z| *z == ZERO) {
                continue;
            }
            let big = linalg::kron(&id_left, &linalg::kron(a, &id_right));
            next += &big * &current * big.adjoint();
        }
        dims[mode] = out_dim;
        current = next;
    }
    Ok(DensityOp { mode_dims: dims, matrix: current })
}

/// Reduced state on the modes listed in `keep` (kept in their original order).
pub fn partial_trace(rho: &DensityOp, keep: &[usize]) -> Result<DensityOp> {
    let n = rho.mode_dims.len();
    if keep.is_empty() {
        return Err(param("keep", "must name at least one mode"));
    }
    if let Some(&bad) = keep.iter().find(|&&m| m >= n) {
        return Err(param("keep", format!("mode index {bad} out of range for {n} modes")));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    let traced: Vec<usize> = (0..n).filter(|m| !kept.contains(m)).collect();
    let kept_dims: Vec<usize> = kept.iter().map(|&m| rho.mode_dims[m]).collect();
    let d_out = product(&kept_dims);
    let mut out = CMatrix::zeros(d_out, d_out);
    let d = rho.dim();
    let occs: Vec<Vec<usize>> = (0..d).map(|i| unflatten(&rho.mode_dims, i)).collect();
    for (i, oi) in occs.iter().enumerate() {
        for (j, oj) in occs.iter().enumerate() {
            if traced.iter().any(|&m| oi[m] != oj[m]) {
                continue;
            }
            let ki: Vec<usize> = kept.iter().map(|&m| oi[m]).collect();
            let kj: Vec<usize> = kept.iter().map(|&m| oj[m]).collect();
            out[(flatten(&kept_dims, &ki), flatten(&kept_dims, &kj))] += rho.matrix[(i, j)];
        }
    }
    Ok(DensityOp { mode_dims: kept_dims, matrix: out })
}

/// Truncation rule for coherent amplitudes: `⌈|α|² + 8|α| + 10⌉`.
pub fn coherent_dim(alpha_abs: f64) -> usize {
    (alpha_abs * alpha_abs + 8.0 * alpha_abs + 10.0).ceil() as usize
}

/// Poisson weight of photon numbers `≥ dim` for a coherent state of mean
/// photon number `mean`, summed directly (no `1 − Σ` cancellation).
fn poisson_tail(mean: f64, dim: usize) -> f64 {
    // log-space start to avoid underflow of e^{-mean} for large means
    let mut log_p = -mean;
    for n in 1..=dim {
        log_p += mean.ln() - (n as f64).ln();
    }
    if mean == 0.0 {
        return if dim == 0 { 1.0 } else { 0.0 };
    }
    let mut tail = 0.0;
    let mut n = dim;
    loop {
        let p = log_p.exp();
        tail += p;
        n += 1;
        log_p += mean.ln() - (n as f64).ln();
        if (n as f64) > mean && log_p.exp() < 1e-30 {
            break;
        }
    }
    tail
}

/// Normalized Fock expansion of the coherent state `|α⟩` on `dim` levels.
///
/// Fails with [`Error::Truncation`] if more than [`COHERENT_TAIL_TOL`] of the
/// photon-number distribution lies beyond the truncation.
pub fn coherent_vector(alpha: Complex64, dim: usize) -> Result<FockVector> {
    if dim == 0 {
        return Err(param("dim", "must be positive"));
    }
    let mean = alpha.norm_sqr();
    let tail = poisson_tail(mean, dim);
    if tail >= COHERENT_TAIL_TOL {
        let mut required = dim;
        while poisson_tail(mean, required) >= COHERENT_TAIL_TOL {
            required += 1;
        }
        return Err(Error::Truncation { dim, tail, required });
    }
    let mut amplitudes = DVector::zeros(dim);
    let mut a = cr((-0.5 * mean).exp());
    amplitudes[0] = a;
    for n in 1..dim {
        a = a * alpha / (n as f64).sqrt();
        amplitudes[n] = a;
    }
    FockVector::new(vec![dim], amplitudes)?.normalized()
}
