//! Gaussian states and channels in the covariance-matrix picture.
//!
//! Convention: quadratures are ordered `(x_1, p_1, x_2, p_2, ...)` and the
//! vacuum covariance matrix is the identity. A channel acts as
//! `σ ↦ M σ Mᵀ + N`, `d ↦ M d`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{param, Error, Result};
use crate::linalg::{self, CMatrix};

/// Tolerance on `σ + iJ ⪰ 0`.
pub const STATE_TOL: f64 = 1e-10;
/// Tolerance on the complete-positivity inequalities.
pub const CPTP_TOL: f64 = 1e-12;
/// Margins below `−VIOLATION_TOL` count as counterexamples.
pub const VIOLATION_TOL: f64 = 1e-9;

/// `J_n = ⊕ [[0, −1], [1, 0]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    n_modes: usize,
    matrix: DMatrix<f64>,
}

impl SymplecticForm {
    pub fn new(n_modes: usize) -> Self {
        let mut matrix = DMatrix::zeros(2 * n_modes, 2 * n_modes);
        for k in 0..n_modes {
            matrix[(2 * k, 2 * k + 1)] = -1.0;
            matrix[(2 * k + 1, 2 * k)] = 1.0;
        }
        Self { n_modes, matrix }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

fn symmetry_defect(m: &DMatrix<f64>) -> f64 {
    (m - m.transpose()).amax()
}

fn check_even_square(m: &DMatrix<f64>, name: &'static str) -> Result<usize> {
    let (r, c) = m.shape();
    if r != c || r == 0 || r % 2 != 0 {
        return Err(Error::Shape(format!("{name} must be square with even positive size, got {r}x{c}")));
    }
    Ok(r / 2)
}

/// Covariance matrix and displacement of a Gaussian state.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    cm: DMatrix<f64>,
    disp: DVector<f64>,
}

impl GaussianState {
    /// Zero-mean state with covariance matrix `cm`.
    pub fn new(cm: DMatrix<f64>) -> Result<Self> {
        let n = check_even_square(&cm, "covariance matrix")?;
        if symmetry_defect(&cm) > STATE_TOL {
            return Err(Error::Validity("covariance matrix is not symmetric".into()));
        }
        Ok(Self { cm, disp: DVector::zeros(2 * n) })
    }

    pub fn with_displacement(mut self, disp: DVector<f64>) -> Result<Self> {
        if disp.len() != self.cm.nrows() {
            return Err(Error::Shape(format!("displacement of length {} for {} quadratures", disp.len(), self.cm.nrows())));
        }
        self.disp = disp;
        Ok(self)
    }

    pub fn single(cm: Matrix2<f64>) -> Result<Self> {
        Self::new(DMatrix::from_iterator(2, 2, cm.iter().copied()))
    }

    pub fn vacuum(n_modes: usize) -> Self {
        Self { cm: DMatrix::identity(2 * n_modes, 2 * n_modes), disp: DVector::zeros(2 * n_modes) }
    }

    /// Thermal state with mean photon number `nbar`: `(2n̄ + 1) I`.
    pub fn thermal(nbar: f64) -> Result<Self> {
        if nbar < 0.0 {
            return Err(param("nbar", format!("{nbar} is negative")));
        }
        Self::new(DMatrix::identity(2, 2) * (2.0 * nbar + 1.0))
    }

    pub fn cm(&self) -> &DMatrix<f64> {
        &self.cm
    }

    pub fn disp(&self) -> &DVector<f64> {
        &self.disp
    }

    pub fn n_modes(&self) -> usize {
        self.cm.nrows() / 2
    }

    fn single_mode_cm(&self) -> Result<Matrix2<f64>> {
        if self.n_modes() != 1 {
            return Err(Error::Unsupported(format!("fidelity needs single-mode states, got {} modes", self.n_modes())));
        }
        if self.disp.iter().any(|&d| d != 0.0) {
            return Err(Error::Unsupported("fidelity is implemented for zero-mean states only".into()));
        }
        Ok(Matrix2::new(self.cm[(0, 0)], self.cm[(0, 1)], self.cm[(1, 0)], self.cm[(1, 1)]))
    }
}

/// Outcome of [`validate_state`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateCheck {
    pub valid: bool,
    /// Smallest eigenvalue of the Hermitian matrix `σ + iJ`.
    pub min_eigenvalue: f64,
}

/// Checks the uncertainty relation `σ + iJ ⪰ 0`.
pub fn validate_state(s: &GaussianState) -> StateCheck {
    let min_eigenvalue = min_eig_with_j(&s.cm, &SymplecticForm::new(s.n_modes()).matrix);
    StateCheck { valid: min_eigenvalue >= -STATE_TOL, min_eigenvalue }
}

/// Smallest eigenvalue of `a + i b` for real `a` symmetric and `b` antisymmetric.
fn min_eig_with_j(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let h = CMatrix::from_fn(a.nrows(), a.ncols(), |i, j| Complex64::new(a[(i, j)], b[(i, j)]));
    linalg::min_eigenvalue(&h)
}

/// Gaussian channel `(M, N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianChannel {
    m: DMatrix<f64>,
    n_mat: DMatrix<f64>,
}

impl GaussianChannel {
    pub fn new(m: DMatrix<f64>, n_mat: DMatrix<f64>) -> Result<Self> {
        check_even_square(&m, "M")?;
        if n_mat.shape() != m.shape() {
            return Err(Error::Shape(format!("N is {:?} but M is {:?}", n_mat.shape(), m.shape())));
        }
        if symmetry_defect(&n_mat) > CPTP_TOL {
            return Err(Error::Validity("N is not symmetric".into()));
        }
        Ok(Self { m, n_mat })
    }

    pub fn single(m: Matrix2<f64>, n_mat: Matrix2<f64>) -> Result<Self> {
        Self::new(to_dyn(&m), to_dyn(&n_mat))
    }

    pub fn identity(n_modes: usize) -> Self {
        let d = 2 * n_modes;
        Self { m: DMatrix::identity(d, d), n_mat: DMatrix::zeros(d, d) }
    }

    /// Single-mode pure loss: `M = √(1−γ) I`, `N = γ I`.
    pub fn loss(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(param("gamma", format!("{gamma} outside [0, 1]")));
        }
        Ok(Self { m: DMatrix::identity(2, 2) * (1.0 - gamma).sqrt(), n_mat: DMatrix::identity(2, 2) * gamma })
    }

    pub fn m(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn n_mat(&self) -> &DMatrix<f64> {
        &self.n_mat
    }

    pub fn n_modes(&self) -> usize {
        self.m.nrows() / 2
    }

    fn single_mode(&self) -> Result<(Matrix2<f64>, Matrix2<f64>)> {
        if self.n_modes() != 1 {
            return Err(Error::Unsupported(format!("expected a single-mode channel, got {} modes", self.n_modes())));
        }
        Ok((to_fixed(&self.m), to_fixed(&self.n_mat)))
    }
}

fn to_dyn(m: &Matrix2<f64>) -> DMatrix<f64> {
    DMatrix::from_iterator(2, 2, m.iter().copied())
}

fn to_fixed(m: &DMatrix<f64>) -> Matrix2<f64> {
    Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
}

/// Complete positivity: `N + i(J − M J Mᵀ) ⪰ 0`. For one mode this is
/// `N ⪰ 0` together with `det N ≥ (det M − 1)²`.
pub fn is_cptp(c: &GaussianChannel) -> bool {
    if c.n_modes() == 1 {
        let (m, n) = (to_fixed(&c.m), to_fixed(&c.n_mat));
        let n_psd = n.symmetric_eigenvalues().min() >= -CPTP_TOL;
        n_psd && n.determinant() >= (m.determinant() - 1.0).powi(2) - CPTP_TOL
    } else {
        let j = SymplecticForm::new(c.n_modes()).matrix;
        let b = &j - &c.m * &j * c.m.transpose();
        min_eig_with_j(&c.n_mat, &b) >= -CPTP_TOL
    }
}

/// `σ ↦ M σ Mᵀ + N`, `d ↦ M d`.
pub fn apply(c: &GaussianChannel, s: &GaussianState) -> Result<GaussianState> {
    if c.m.nrows() != s.cm.nrows() {
        return Err(Error::Shape(format!("{}-mode channel on {}-mode state", c.n_modes(), s.n_modes())));
    }
    if !is_cptp(c) {
        return Err(Error::NotCptp("det N < (det M - 1)^2 or N not positive".into()));
    }
    let cm = &c.m * &s.cm * c.m.transpose() + &c.n_mat;
    let cm = (&cm + cm.transpose()) * 0.5;
    Ok(GaussianState { cm, disp: &c.m * &s.disp })
}

/// Scutaru expression `2 / (√(Δ+δ) − √δ)` with `Δ = det(σ₁+σ₂)` and
/// `δ = (det σ₁ − 1)(det σ₂ − 1)`, evaluated as `2(√(Δ+δ) + √δ)/Δ`.
///
/// This is the squared Uhlmann fidelity `(Tr √(√ρ σ √ρ))²`.
pub fn scutaru(s1: &Matrix2<f64>, s2: &Matrix2<f64>) -> f64 {
    scutaru_from_dets((s1 + s2).determinant(), s1.determinant(), s2.determinant())
}

fn scutaru_from_dets(big_delta: f64, det1: f64, det2: f64) -> f64 {
    let delta = ((det1 - 1.0) * (det2 - 1.0)).max(0.0);
    2.0 * ((big_delta + delta).sqrt() + delta.sqrt()) / big_delta
}

/// Fidelity of two zero-mean single-mode states.
pub fn gaussian_fidelity(s1: &GaussianState, s2: &GaussianState) -> Result<f64> {
    let (a, b) = (s1.single_mode_cm()?, s2.single_mode_cm()?);
    for (k, s) in [s1, s2].iter().enumerate() {
        let check = validate_state(s);
        if !check.valid {
            return Err(Error::Validity(format!("state {} violates the uncertainty relation (min eigenvalue {:e})", k + 1, check.min_eigenvalue)));
        }
    }
    Ok(scutaru(&a, &b))
}

/// Fidelity after both states pass through `c`, with
/// `Δ' = det(Mσ₁Mᵀ + Mσ₂Mᵀ + 2N)`.
pub fn fidelity_after_channel(s1: &GaussianState, s2: &GaussianState, c: &GaussianChannel) -> Result<f64> {
    let (a, b) = (s1.single_mode_cm()?, s2.single_mode_cm()?);
    let (m, n) = c.single_mode()?;
    if !is_cptp(c) {
        return Err(Error::NotCptp("det N < (det M - 1)^2 or N not positive".into()));
    }
    Ok(fidelity_after_fixed(&a, &b, &m, &n))
}

fn fidelity_after_fixed(a: &Matrix2<f64>, b: &Matrix2<f64>, m: &Matrix2<f64>, n: &Matrix2<f64>) -> f64 {
    let ma = m * a * m.transpose();
    let mb = m * b * m.transpose();
    let big = (ma + mb + n * 2.0).determinant();
    scutaru_from_dets(big, (ma + n).determinant(), (mb + n).determinant())
}

/// Channel in normal form together with the symplectic maps relating it to
/// the original: `c(σ) = post⁻¹ · c'(pre⁻¹ σ pre⁻ᵀ) · post⁻ᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm {
    pub channel: GaussianChannel,
    /// Applied to the input before the original channel.
    pub pre: Matrix2<f64>,
    /// Applied to the output after the original channel.
    pub post: Matrix2<f64>,
}

fn rotation(phi: f64) -> Matrix2<f64> {
    let (s, c) = phi.sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// Reduces `M` to `η · diag(1, ±1)` with `η = √|det M|` by symplectic pre-
/// and post-processing; `det M` and `det N` are unchanged. A rank-one `M`
/// becomes `diag(1, 0)` and `M = 0` is returned as is.
pub fn channel_normal_form(c: &GaussianChannel) -> Result<NormalForm> {
    let (m, n) = c.single_mode()?;
    let svd = m.svd(true, true);
    let (mut u, mut v_t) = (svd.u.expect("u requested"), svd.v_t.expect("v_t requested"));
    let (s1, s2) = (svd.singular_values[0], svd.singular_values[1]);
    let (s1, s2, swap) = if s1 >= s2 { (s1, s2, false) } else { (s2, s1, true) };
    if swap {
        let p = Matrix2::new(0.0, 1.0, 1.0, 0.0);
        u *= p;
        v_t = p * v_t;
    }
    // make both orthogonal factors rotations, moving reflections into the sign of s2
    let mut sign = 1.0;
    if u.determinant() < 0.0 {
        u.set_column(1, &(-u.column(1)));
        sign = -sign;
    }
    if v_t.determinant() < 0.0 {
        v_t.set_row(1, &(-v_t.row(1)));
        sign = -sign;
    }
    if s1 == 0.0 {
        return Ok(NormalForm { channel: c.clone(), pre: Matrix2::identity(), post: Matrix2::identity() });
    }
    let (m_prime, squeeze) = if s2 <= s1 * 1e-300 {
        (Matrix2::new(1.0, 0.0, 0.0, 0.0), Matrix2::new(s1, 0.0, 0.0, 1.0 / s1))
    } else {
        let eta = (s1 * s2).sqrt();
        let z = (s1 / s2).sqrt();
        (Matrix2::new(eta, 0.0, 0.0, sign * eta), Matrix2::new(z, 0.0, 0.0, 1.0 / z))
    };
    // M = U diag(s1, sign s2) Vᵀ = U M' Z Vᵀ, so M' = Uᵀ M (Z Vᵀ)⁻¹
    let post = u.transpose();
    let pre = v_t.transpose() * squeeze.try_inverse().expect("squeeze is invertible");
    let n_prime = post * n * post.transpose();
    let n_prime = (n_prime + n_prime.transpose()) * 0.5;
    Ok(NormalForm { channel: GaussianChannel::single(m_prime, n_prime)?, pre, post })
}

/// Two-mode squeezed state with blocks `A_r = cosh r I`, `C_r = sinh r Λ`,
/// `Λ = diag(1, −1)`.
pub fn tmss_cm(r: f64) -> Result<GaussianState> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(param("r", format!("{r} must be finite and nonnegative")));
    }
    let (a, c) = (r.cosh(), r.sinh());
    let mut cm = DMatrix::identity(4, 4) * a;
    cm[(0, 2)] = c;
    cm[(2, 0)] = c;
    cm[(1, 3)] = -c;
    cm[(3, 1)] = -c;
    GaussianState::new(cm)
}

/// Finite-squeezing Choi covariance matrix
/// `[[Mᵀ A_r M + N, Mᵀ C_r], [C_r M, A_r]]`.
pub fn choi_cm(c: &GaussianChannel, r: f64) -> Result<GaussianState> {
    let (m, n) = c.single_mode()?;
    let t = tmss_cm(r)?;
    let a = to_fixed(&t.cm.view((0, 0), (2, 2)).into_owned());
    let cr_block = to_fixed(&t.cm.view((0, 2), (2, 2)).into_owned());
    let top_left = m.transpose() * a * m + n;
    let top_right = m.transpose() * cr_block;
    let bottom_left = cr_block * m;
    let mut cm = DMatrix::zeros(4, 4);
    cm.view_mut((0, 0), (2, 2)).copy_from(&top_left);
    cm.view_mut((0, 2), (2, 2)).copy_from(&top_right);
    cm.view_mut((2, 0), (2, 2)).copy_from(&bottom_left);
    cm.view_mut((2, 2), (2, 2)).copy_from(&a);
    let cm = (&cm + cm.transpose()) * 0.5;
    GaussianState::new(cm)
}

/// Random single-mode state `R(φ)ᵀ diag(ν e^{2r}, ν e^{−2r}) R(φ)` with
/// `ν = 2n̄ + 1`, `n̄ ~ U[0,3]`, `r ~ U[0,1.5]`, `φ ~ U[0,π)`.
pub fn sample_state(rng: &mut impl Rng) -> Matrix2<f64> {
    let nbar = rng.gen_range(0.0..=3.0);
    let r: f64 = rng.gen_range(0.0..=1.5);
    let phi = rng.gen_range(0.0..PI);
    let nu = 2.0 * nbar + 1.0;
    let rot = rotation(phi);
    rot.transpose() * Matrix2::new(nu * (2.0 * r).exp(), 0.0, 0.0, nu * (-2.0 * r).exp()) * rot
}

/// Random single-mode CPTP channel; `M` has entries in `[−2, 2]` and
/// `N = Oᵀ diag(c e^t s, c e^{−t} s) O` with `c = |det M − 1|`, so that
/// `det N = c² s²`. Boundary channels use `s = 1` (`det N = (det M − 1)²`).
pub fn sample_channel(rng: &mut impl Rng, boundary: bool) -> (Matrix2<f64>, Matrix2<f64>) {
    let m: Matrix2<f64> = Matrix2::from_fn(|_, _| rng.gen_range(-2.0..=2.0));
    let c = (m.determinant() - 1.0).abs();
    let t: f64 = rng.gen_range(-1.0..=1.0);
    let s = if boundary { 1.0 } else { 1.0 + rng.gen_range(0.0..=2.0) };
    let o = rotation(rng.gen_range(0.0..PI));
    let n = o.transpose() * Matrix2::new(c * t.exp() * s, 0.0, 0.0, c * (-t).exp() * s) * o;
    (m, (n + n.transpose()) * 0.5)
}

/// Random symplectic map `R(a) diag(e^s, e^{−s}) R(b)` with `N = 0`.
pub fn sample_symplectic(rng: &mut impl Rng) -> (Matrix2<f64>, Matrix2<f64>) {
    let s: f64 = rng.gen_range(-1.0..=1.0);
    let m = rotation(rng.gen_range(0.0..PI)) * Matrix2::new(s.exp(), 0.0, 0.0, (-s).exp()) * rotation(rng.gen_range(0.0..PI));
    (m, Matrix2::zeros())
}

/// Which channels [`verify_nogo_with`] draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NogoMode {
    /// Every tenth sample on the boundary, every tenth symplectic, the rest general.
    Mixed,
    General,
    Boundary,
    Symplectic,
}

impl NogoMode {
    fn kind(self, i: usize) -> ChannelKind {
        match self {
            NogoMode::Mixed => match i % 10 {
                0 => ChannelKind::Boundary,
                1 => ChannelKind::Symplectic,
                _ => ChannelKind::General,
            },
            NogoMode::General => ChannelKind::General,
            NogoMode::Boundary => ChannelKind::Boundary,
            NogoMode::Symplectic => ChannelKind::Symplectic,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NogoMode::Mixed => "mixed",
            NogoMode::General => "general",
            NogoMode::Boundary => "boundary",
            NogoMode::Symplectic => "symplectic",
        }
    }
}

impl std::str::FromStr for NogoMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [NogoMode::Mixed, NogoMode::General, NogoMode::Boundary, NogoMode::Symplectic]
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| param("mode", format!("unknown sampling mode `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ChannelKind {
    General,
    Boundary,
    Symplectic,
}

/// Statistics of one `|det M|` class.
#[derive(Debug, Clone, PartialEq)]
pub struct Stratum {
    pub label: &'static str,
    pub samples: usize,
    pub min_margin: f64,
    pub violations: usize,
}

/// Result of [`verify_nogo`]; margins are `F' − F`.
#[derive(Debug, Clone, PartialEq)]
pub struct NogoReport {
    pub seed: u64,
    pub mode: NogoMode,
    pub samples: usize,
    pub boundary_samples: usize,
    pub symplectic_samples: usize,
    pub min_margin: f64,
    pub violations: usize,
    /// `|det M| = 1`, `> 1`, `< 1`.
    pub strata: [Stratum; 3],
    /// Largest `|F' − F|` over symplectic samples.
    pub symplectic_max_deviation: f64,
}

const UNIT_DET_TOL: f64 = 1e-9;

/// Draws `n_samples` random state pairs and CPTP channels and records
/// `F' − F`; the no-go statement is that it is never negative.
pub fn verify_nogo(n_samples: usize, seed: u64) -> Result<NogoReport> {
    verify_nogo_with(n_samples, seed, NogoMode::Mixed)
}

pub fn verify_nogo_with(n_samples: usize, seed: u64, mode: NogoMode) -> Result<NogoReport> {
    if n_samples == 0 {
        return Err(param("n_samples", "must be at least 1"));
    }
    let new_stratum = |label| Stratum { label, samples: 0, min_margin: f64::INFINITY, violations: 0 };
    let mut report = NogoReport {
        seed,
        mode,
        samples: n_samples,
        boundary_samples: 0,
        symplectic_samples: 0,
        min_margin: f64::INFINITY,
        violations: 0,
        strata: [new_stratum("|det M| = 1"), new_stratum("|det M| > 1"), new_stratum("|det M| < 1")],
        symplectic_max_deviation: 0.0,
    };
    for i in 0..n_samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let a = sample_state(&mut rng);
        let b = sample_state(&mut rng);
        let kind = mode.kind(i);
        let (m, n) = match kind {
            ChannelKind::General => sample_channel(&mut rng, false),
            ChannelKind::Boundary => sample_channel(&mut rng, true),
            ChannelKind::Symplectic => sample_symplectic(&mut rng),
        };
        let before = scutaru(&a, &b);
        let after = fidelity_after_fixed(&a, &b, &m, &n);
        let margin = after - before;
        let violated = margin < -VIOLATION_TOL;
        let det = m.determinant().abs();
        let slot = if (det - 1.0).abs() <= UNIT_DET_TOL {
            0
        } else if det > 1.0 {
            1
        } else {
            2
        };
        let stratum = &mut report.strata[slot];
        stratum.samples += 1;
        stratum.min_margin = stratum.min_margin.min(margin);
        stratum.violations += violated as usize;
        report.min_margin = report.min_margin.min(margin);
        report.violations += violated as usize;
        match kind {
            ChannelKind::Boundary => report.boundary_samples += 1,
            ChannelKind::Symplectic => {
                report.symplectic_samples += 1;
                report.symplectic_max_deviation = report.symplectic_max_deviation.max(margin.abs());
            }
            ChannelKind::General => {}
        }
    }
    Ok(report)
}

impl fmt::Display for NogoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = |x: f64| if x.is_finite() { format!("{x:.12e}") } else { "n/a".to_string() };
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "mode: {}", self.mode.as_str())?;
        writeln!(f, "samples: {}", self.samples)?;
        writeln!(f, "boundary_samples: {}", self.boundary_samples)?;
        writeln!(f, "symplectic_samples: {}", self.symplectic_samples)?;
        writeln!(f, "violation_threshold: {:e}", -VIOLATION_TOL)?;
        writeln!(f, "min_margin: {}", num(self.min_margin))?;
        writeln!(f, "violations: {}", self.violations)?;
        writeln!(f, "symplectic_max_abs_deviation: {}", num(self.symplectic_max_deviation))?;
        for s in &self.strata {
            writeln!(
                f,
                "stratum {}: samples={} min_margin={} violations={}",
                s.label,
                s.samples,
                num(s.min_margin),
                s.violations
            )?;
        }
        Ok(())
    }
}
