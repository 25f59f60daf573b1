//! Discrete-variable photonic qubit codes: encodings, decoders, analytic
//! decoded outputs, effective qubit channels and Knill-Laflamme overlaps.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{param, Error, Result};
use crate::fock::{self, damping_kraus, DensityOp, FockVector, KrausSet};
use crate::linalg::{self, cr, CMatrix, ZERO};

/// Identifier of a discrete-variable code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodeId {
    /// Single-rail: vacuum and one photon in a single mode.
    Direct,
    /// One photon shared between two modes.
    DualRail,
    /// Three-mode repetition code.
    ThreeQubit,
    /// Two-mode four-photon code that corrects a single loss.
    Bosonic,
    /// Four-mode approximate code, available through its analytic outputs only.
    FourQubitApprox,
}

impl CodeId {
    pub const ALL: [CodeId; 5] =
        [CodeId::Direct, CodeId::DualRail, CodeId::ThreeQubit, CodeId::Bosonic, CodeId::FourQubitApprox];

    pub fn as_str(self) -> &'static str {
        match self {
            CodeId::Direct => "direct",
            CodeId::DualRail => "dual_rail",
            CodeId::ThreeQubit => "three_qubit",
            CodeId::Bosonic => "bosonic",
            CodeId::FourQubitApprox => "four_qubit_approx",
        }
    }

    /// Whether a Fock-level decoder is implemented.
    pub fn has_simulated_recovery(self) -> bool {
        !matches!(self, CodeId::FourQubitApprox)
    }

    pub fn spec(self) -> CodeSpec {
        CodeSpec::new(self)
    }
}

impl fmt::Display for CodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CodeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CodeId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| param("code", format!("unknown code id `{s}`")))
    }
}

/// Logical input `cos(w/2)|0⟩ + e^{iθ} sin(w/2)|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochInput {
    w: f64,
    theta: f64,
}

impl BlochInput {
    pub fn new(w: f64, theta: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&w) {
            return Err(param("w", format!("{w} outside [0, pi]")));
        }
        if !(0.0..TAU).contains(&theta) {
            return Err(param("theta", format!("{theta} outside [0, 2pi)")));
        }
        Ok(Self { w, theta })
    }

    /// Point with the given Bloch vector direction (need not be normalized).
    pub fn from_direction(r: [f64; 3]) -> Result<Self> {
        let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if norm == 0.0 {
            return Err(param("r", "zero vector has no direction"));
        }
        let w = (r[2] / norm).clamp(-1.0, 1.0).acos();
        let theta = r[1].atan2(r[0]).rem_euclid(TAU);
        Self::new(w, if theta >= TAU { 0.0 } else { theta })
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The orthogonal partner `sin(w/2)|0⟩ − e^{iθ} cos(w/2)|1⟩`, which is the
    /// point `(π − w, θ + π)`.
    pub fn antipode(&self) -> Self {
        let theta = (self.theta + PI).rem_euclid(TAU);
        Self { w: PI - self.w, theta: if theta >= TAU { 0.0 } else { theta } }
    }

    pub fn branch(&self, branch: Branch) -> Self {
        match branch {
            Branch::Q => *self,
            Branch::QTilde => self.antipode(),
        }
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        let (s, co) = (0.5 * self.w).sin_cos();
        [cr(co), Complex64::from_polar(s, self.theta)]
    }

    pub fn bloch_vector(&self) -> [f64; 3] {
        let (sw, cw) = self.w.sin_cos();
        let (st, ct) = self.theta.sin_cos();
        [sw * ct, sw * st, cw]
    }

    /// `|Q⟩⟨Q|` as a 2×2 matrix.
    pub fn density(&self) -> CMatrix {
        let [a, b] = self.amplitudes();
        CMatrix::from_row_slice(2, 2, &[a * a.conj(), a * b.conj(), b * a.conj(), b * b.conj()])
    }

    /// The six Pauli eigenstates `±x, ±y, ±z`, in that order.
    pub fn pauli_eigenstates() -> [BlochInput; 6] {
        let h = 0.5 * PI;
        [
            BlochInput { w: h, theta: 0.0 },
            BlochInput { w: h, theta: PI },
            BlochInput { w: h, theta: h },
            BlochInput { w: h, theta: 3.0 * h },
            BlochInput { w: 0.0, theta: 0.0 },
            BlochInput { w: PI, theta: 0.0 },
        ]
    }
}

/// Which member of an antipodal input pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Q,
    QTilde,
}

/// Decoding procedure attached to a code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recovery {
    /// The physical mode is the qubit.
    Identity,
    /// Count photons; one photon decodes, vacuum becomes `I/2`.
    DualRailCount,
    /// Majority vote over three modes.
    MajorityVote,
    /// Per-mode photon counting; four or three photons decode, fewer become `I/2`.
    BosonicCount,
    /// No Fock-level decoder; analytic outputs only.
    AnalyticOnly,
}

/// Analytic decoded output with the Hermiticity defect of the transcribed
/// matrix before symmetrization.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm {
    pub rho: DensityOp,
    pub hermiticity_defect: f64,
}

/// A code: codewords on a multi-mode Fock space and its decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeSpec {
    id: CodeId,
    logical_zero: FockVector,
    logical_one: FockVector,
    recovery: Recovery,
}

fn ket(dims: &[usize], occ: &[usize]) -> FockVector {
    FockVector::basis(dims, occ).expect("codeword occupations fit their truncation")
}

fn even_sum(a: FockVector, b: FockVector) -> FockVector {
    FockVector::superpose(&[(cr(FRAC_1_SQRT_2), &a), (cr(FRAC_1_SQRT_2), &b)]).expect("same mode dims")
}

impl CodeSpec {
    pub fn new(id: CodeId) -> Self {
        let (logical_zero, logical_one, recovery) = match id {
            CodeId::Direct => (ket(&[2], &[0]), ket(&[2], &[1]), Recovery::Identity),
            CodeId::DualRail => (ket(&[2, 2], &[0, 1]), ket(&[2, 2], &[1, 0]), Recovery::DualRailCount),
            CodeId::ThreeQubit => {
                (ket(&[2, 2, 2], &[0, 0, 0]), ket(&[2, 2, 2], &[1, 1, 1]), Recovery::MajorityVote)
            }
            CodeId::Bosonic => (
                even_sum(ket(&[5, 5], &[4, 0]), ket(&[5, 5], &[0, 4])),
                ket(&[5, 5], &[2, 2]),
                Recovery::BosonicCount,
            ),
            CodeId::FourQubitApprox => {
                let d = [2, 2, 2, 2];
                (
                    even_sum(ket(&d, &[0, 0, 0, 0]), ket(&d, &[1, 1, 1, 1])),
                    even_sum(ket(&d, &[0, 0, 1, 1]), ket(&d, &[1, 1, 0, 0])),
                    Recovery::AnalyticOnly,
                )
            }
        };
        Self { id, logical_zero, logical_one, recovery }
    }

    pub fn id(&self) -> CodeId {
        self.id
    }

    pub fn logical_zero(&self) -> &FockVector {
        &self.logical_zero
    }

    pub fn logical_one(&self) -> &FockVector {
        &self.logical_one
    }

    pub fn codeword(&self, i: usize) -> &FockVector {
        if i == 0 {
            &self.logical_zero
        } else {
            &self.logical_one
        }
    }

    pub fn recovery(&self) -> Recovery {
        self.recovery
    }

    pub fn mode_dims(&self) -> &[usize] {
        self.logical_zero.mode_dims()
    }

    /// `cos(w/2)|0_L⟩ + e^{iθ} sin(w/2)|1_L⟩`.
    pub fn encode(&self, q: BlochInput) -> FockVector {
        let [a, b] = q.amplitudes();
        FockVector::superpose(&[(a, &self.logical_zero), (b, &self.logical_one)])
            .expect("codewords share mode dims")
    }

    /// Decoder as a Kraus list of `2 × D` matrices, completed to a
    /// trace-preserving map by sending everything it does not handle to `I/2`.
    pub fn recovery_kraus(&self) -> Result<Vec<CMatrix>> {
        let dims = self.mode_dims().to_vec();
        let row = |b: usize, v: &FockVector| -> CMatrix {
            let mut m = CMatrix::zeros(2, v.dim());
            for (j, a) in v.amplitudes().iter().enumerate() {
                m[(b, j)] = a.conj();
            }
            m
        };
        let main: Vec<CMatrix> = match self.recovery {
            Recovery::AnalyticOnly => {
                return Err(Error::Unsupported(format!(
                    "{} has no Fock-level recovery; use the analytic outputs",
                    self.id
                )))
            }
            Recovery::Identity => vec![CMatrix::identity(2, 2)],
            Recovery::DualRailCount => vec![row(0, &self.logical_zero) + row(1, &self.logical_one)],
            Recovery::MajorityVote => [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
                .iter()
                .map(|x| {
                    let flipped: Vec<usize> = x.iter().map(|b| 1 - b).collect();
                    row(0, &ket(&dims, x)) + row(1, &ket(&dims, &flipped))
                })
                .collect(),
            Recovery::BosonicCount => vec![
                row(0, &self.logical_zero) + row(1, &self.logical_one),
                row(0, &ket(&dims, &[3, 0])) + row(1, &ket(&dims, &[1, 2])),
                row(0, &ket(&dims, &[0, 3])) + row(1, &ket(&dims, &[2, 1])),
            ],
        };
        Ok(complete_to_trace_preserving(main))
    }

    /// Physical loss on every mode followed by the decoder, applied to an
    /// arbitrary operator on the code's Fock space.
    pub fn decode_operator(&self, gamma: f64, op: &CMatrix) -> Result<CMatrix> {
        let recovery = self.recovery_kraus()?;
        let per_mode: Vec<KrausSet> =
            self.mode_dims().iter().map(|&d| damping_kraus(gamma, d)).collect::<Result<_>>()?;
        let state = DensityOp::new(self.mode_dims().to_vec(), op.clone())?;
        let lossy = fock::apply_channel(&state, &per_mode)?;
        let mut out = CMatrix::zeros(2, 2);
        for r in &recovery {
            out += r * lossy.matrix() * r.adjoint();
        }
        Ok(out)
    }

    /// Encodes `q`, sends every mode through loss `gamma` and decodes.
    pub fn transmit_and_decode(&self, gamma: f64, q: BlochInput) -> Result<DensityOp> {
        check_gamma(gamma)?;
        let encoded = self.encode(q).projector();
        DensityOp::qubit(self.decode_operator(gamma, encoded.matrix())?)
    }

    /// Analytic decoded output for the `branch` member of the pair built on `q`.
    pub fn closed_form_output(&self, gamma: f64, q: BlochInput, branch: Branch) -> Result<ClosedForm> {
        check_gamma(gamma)?;
        let raw = closed_form_matrix(self.id, gamma, q.branch(branch));
        let hermiticity_defect = linalg::hermiticity_defect(&raw);
        Ok(ClosedForm { rho: DensityOp::qubit(linalg::hermitize(&raw))?, hermiticity_defect })
    }

    /// Decoded output of `q`, simulated when a decoder exists and analytic otherwise.
    pub fn output(&self, gamma: f64, q: BlochInput) -> Result<DensityOp> {
        if self.id.has_simulated_recovery() {
            self.transmit_and_decode(gamma, q)
        } else {
            Ok(self.closed_form_output(gamma, q, Branch::Q)?.rho)
        }
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(param("gamma", format!("{gamma} outside [0, 1]")));
    }
    Ok(())
}

fn complete_to_trace_preserving(mut ops: Vec<CMatrix>) -> Vec<CMatrix> {
    let d = ops[0].ncols();
    let covered = ops.iter().fold(CMatrix::zeros(d, d), |acc, r| acc + r.adjoint() * r);
    let rest = CMatrix::identity(d, d) - covered;
    for m in 0..d {
        let row_m = rest.row(m);
        if row_m.iter().all(|z| z.norm() < 1e-15) {
            continue;
        }
        for b in 0..2 {
            let mut k = CMatrix::zeros(2, d);
            k.set_row(b, &(row_m * cr(FRAC_1_SQRT_2)));
            ops.push(k);
        }
    }
    ops
}

/// Transcribed analytic outputs for the state `q` itself; the antipodal
/// member is the same function at the antipodal point.
fn closed_form_matrix(id: CodeId, gamma: f64, q: BlochInput) -> CMatrix {
    let g = gamma;
    let eta = 1.0 - g;
    let (sw, cw) = q.w.sin_cos();
    let e_m = Complex64::from_polar(1.0, -q.theta);
    let e_p = e_m.conj();
    let m = |a00: Complex64, a01: Complex64, a10: Complex64, a11: Complex64| {
        CMatrix::from_row_slice(2, 2, &[a00, a01, a10, a11])
    };
    match id {
        CodeId::Direct => {
            let off = eta.sqrt() * sw;
            m(cr(1.0 + g + cw - g * cw), e_m * off, e_p * off, cr((g - 1.0) * (cw - 1.0))) * cr(0.5)
        }
        CodeId::DualRail => {
            let off = (g - 1.0) * sw;
            m(cr(1.0 + cw - g * cw), -e_m * off, -e_p * off, cr(1.0 + (g - 1.0) * cw)) * cr(0.5)
        }
        CodeId::ThreeQubit => {
            let p = g;
            let k = (p - 1.0).powi(2) * (1.0 + 2.0 * p);
            let off = (1.0 - p).powf(1.5) * sw;
            let half_sin_sq = (0.5 * q.w).sin().powi(2);
            m(
                cr(1.0 + (3.0 - 2.0 * p) * p * p + k * cw),
                e_m * off,
                e_p * off,
                cr((p - 1.0).powi(2) * (2.0 + 4.0 * p) * half_sin_sq),
            ) * cr(0.5)
        }
        CodeId::Bosonic => {
            let k = (g - 1.0).powi(3) * (1.0 + 3.0 * g);
            m(cr(1.0 - k * cw), -e_m * k * sw, -e_p * k * sw, cr(1.0 + k * cw)) * cr(0.5)
        }
        CodeId::FourQubitApprox => {
            let a = g * g - g.powi(3);
            let b = 2.0 + g * g * (3.0 * g - 5.0);
            let k = (g - 1.0).powi(2) * (1.0 + 2.0 * g);
            m(
                cr(0.5 * (1.0 + g * g * (2.0 * g - 1.0) + k * cw)),
                e_p * (cr(a) + e_m * e_m * b) * (0.25 * sw),
                e_m * (cr(a) + e_p * e_p * b) * (0.25 * sw),
                cr(0.5 * (1.0 + g * g - 2.0 * g.powi(3) - k * cw)),
            )
        }
    }
}

/// Single-qubit channel stored as its Choi matrix `J = Σ |i⟩⟨j| ⊗ E(|i⟩⟨j|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitChannel {
    choi: CMatrix,
}

impl QubitChannel {
    pub fn from_choi(choi: CMatrix) -> Result<Self> {
        if choi.shape() != (4, 4) {
            return Err(Error::Shape(format!("Choi matrix {:?}, expected 4x4", choi.shape())));
        }
        Ok(Self { choi })
    }

    /// Builds the Choi matrix from the images of the matrix units `|i⟩⟨j|`.
    pub fn from_action(mut f: impl FnMut(usize, usize) -> Result<CMatrix>) -> Result<Self> {
        let mut choi = CMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                let block = f(i, j)?;
                choi.view_mut((2 * i, 2 * j), (2, 2)).copy_from(&block);
            }
        }
        Ok(Self { choi })
    }

    /// Channel acting on Bloch vectors as `r ↦ T r + t`.
    pub fn from_affine(t_mat: [[f64; 3]; 3], t_vec: [f64; 3]) -> Self {
        let paulis = [linalg::pauli_x(), linalg::pauli_y(), linalg::pauli_z()];
        let image = |k: Option<usize>| -> CMatrix {
            // image of I (k = None) or of sigma_k
            let mut out = match k {
                None => CMatrix::identity(2, 2),
                Some(_) => CMatrix::zeros(2, 2),
            };
            for (row, p) in paulis.iter().enumerate() {
                let coeff = match k {
                    None => t_vec[row],
                    Some(col) => t_mat[row][col],
                };
                out += p * cr(coeff);
            }
            out
        };
        let id = image(None);
        let (sx, sy, sz) = (image(Some(0)), image(Some(1)), image(Some(2)));
        let half = cr(0.5);
        let e00 = (&id + &sz) * half;
        let e11 = (&id - &sz) * half;
        let e01 = (&sx + &sy * linalg::I) * half;
        let e10 = (&sx - &sy * linalg::I) * half;
        let blocks = [[e00, e01], [e10, e11]];
        Self::from_action(|i, j| Ok(blocks[i][j].clone())).expect("2x2 blocks")
    }

    /// Exact affine fit from the outputs on the six Pauli eigenstates.
    pub fn fit_from_outputs(mut output: impl FnMut(BlochInput) -> Result<CMatrix>) -> Result<Self> {
        let states = BlochInput::pauli_eigenstates();
        let mut r = Vec::with_capacity(6);
        for s in states {
            r.push(linalg::density_to_bloch(&output(s)?));
        }
        let mut t_mat = [[0.0; 3]; 3];
        let mut t_vec = [0.0; 3];
        for axis in 0..3 {
            let (plus, minus) = (r[2 * axis], r[2 * axis + 1]);
            for row in 0..3 {
                t_mat[row][axis] = 0.5 * (plus[row] - minus[row]);
                t_vec[row] += (plus[row] + minus[row]) / 6.0;
            }
        }
        Ok(Self::from_affine(t_mat, t_vec))
    }

    pub fn choi(&self) -> &CMatrix {
        &self.choi
    }

    /// `E(X)` for any 2×2 operator `X`.
    pub fn apply(&self, x: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                out += self.choi.view((2 * i, 2 * j), (2, 2)) * x[(i, j)];
            }
        }
        out
    }

    /// Affine Bloch representation `(T, t)`.
    pub fn affine(&self) -> ([[f64; 3]; 3], [f64; 3]) {
        let t_vec = linalg::density_to_bloch(&self.apply(&(CMatrix::identity(2, 2) * cr(0.5))));
        let paulis = [linalg::pauli_x(), linalg::pauli_y(), linalg::pauli_z()];
        let mut t_mat = [[0.0; 3]; 3];
        for (col, p) in paulis.iter().enumerate() {
            let image = linalg::density_to_bloch(&self.apply(&(p * cr(0.5))));
            for row in 0..3 {
                // density_to_bloch doubles the traceless part, so image is T e_col
                t_mat[row][col] = image[row];
            }
        }
        (t_mat, t_vec)
    }

    /// `max |Tr_out J − I|`.
    pub fn trace_preservation_defect(&self) -> f64 {
        let mut reduced = CMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                reduced[(i, j)] = linalg::trace(&self.choi.view((2 * i, 2 * j), (2, 2)).into_owned());
            }
        }
        linalg::max_abs_diff(&reduced, &CMatrix::identity(2, 2))
    }

    pub fn min_choi_eigenvalue(&self) -> f64 {
        linalg::min_eigenvalue(&self.choi)
    }

    /// Output of `(I ⊗ E)` on `(|00⟩ + |11⟩)/√2`, which is `J/2`.
    pub fn bell_output(&self) -> Result<DensityOp> {
        DensityOp::new(vec![2, 2], &self.choi * cr(0.5))
    }
}

/// Effective qubit channel of encoding, loss on every mode and decoding.
///
/// Simulated for codes with a decoder; for the approximate four-mode code it
/// is the affine map that reproduces the analytic outputs.
pub fn effective_channel(code: &CodeSpec, gamma: f64) -> Result<QubitChannel> {
    check_gamma(gamma)?;
    if code.id.has_simulated_recovery() {
        QubitChannel::from_action(|i, j| {
            let op = code.codeword(i).amplitudes() * code.codeword(j).amplitudes().adjoint();
            code.decode_operator(gamma, &op)
        })
    } else {
        QubitChannel::fit_from_outputs(|q| Ok(code.closed_form_output(gamma, q, Branch::Q)?.rho.into_matrix()))
    }
}

/// Knill-Laflamme overlaps `⟨χ_i|A_k† A_l|χ_j⟩` over multi-mode loss
/// patterns with bounded total loss.
#[derive(Debug, Clone, PartialEq)]
pub struct KlMatrix {
    patterns: Vec<Vec<usize>>,
    entries: Vec<Complex64>,
    /// Whether loss skews the two codewords unequally.
    pub deformable: bool,
    /// Largest codeword dependence among the total-loss sector weights.
    pub sector_skew: f64,
    /// Largest codeword dependence of a single diagonal entry `⟨χ_i|A_k†A_k|χ_i⟩`.
    pub per_kraus_skew: f64,
    /// Largest `|⟨χ_0|A_k†A_l|χ_1⟩|`.
    pub orthogonality_violation: f64,
}

impl KlMatrix {
    /// Loss patterns, one photon count per mode, in the index order of `get`.
    pub fn patterns(&self) -> &[Vec<usize>] {
        &self.patterns
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> Complex64 {
        let n = self.patterns.len();
        self.entries[((i * 2 + j) * n + k) * n + l]
    }

    /// Index of a loss pattern.
    pub fn pattern_index(&self, pattern: &[usize]) -> Option<usize> {
        self.patterns.iter().position(|p| p == pattern)
    }
}

/// Overlap tensor for `code` under loss `gamma` truncated to total loss `≤ max_loss`.
///
/// The deformability verdict compares, for each total loss `L`, the weight
/// `Σ_{|k|=L} ⟨χ_i|A_k†A_k|χ_i⟩` between codewords; patterns with equal total
/// loss are what a photon counter cannot distinguish.
pub fn kl_matrix(code: &CodeSpec, gamma: f64, max_loss: usize) -> Result<KlMatrix> {
    check_gamma(gamma)?;
    let dims = code.mode_dims().to_vec();
    let single: Vec<KrausSet> = dims.iter().map(|&d| damping_kraus(gamma, d)).collect::<Result<_>>()?;
    let total: usize = dims.iter().product();
    let patterns: Vec<Vec<usize>> = (0..total)
        .map(|idx| fock::unflatten(&dims, idx))
        .filter(|p| p.iter().sum::<usize>() <= max_loss)
        .collect();
    let ops: Vec<CMatrix> = patterns
        .iter()
        .map(|p| {
            p.iter()
                .zip(&single)
                .fold(CMatrix::identity(1, 1), |acc, (&k, set)| linalg::kron(&acc, &set.operators()[k]))
        })
        .collect();
    let kets: Vec<CMatrix> = (0..2)
        .map(|i| {
            let a = code.codeword(i).amplitudes();
            CMatrix::from_column_slice(a.len(), 1, a.as_slice())
        })
        .collect();
    let images: Vec<Vec<CMatrix>> = ops.iter().map(|a| kets.iter().map(|k| a * k).collect()).collect();
    let n = patterns.len();
    let mut entries = vec![ZERO; 4 * n * n];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..n {
                for l in 0..n {
                    entries[((i * 2 + j) * n + k) * n + l] = (images[k][i].adjoint() * &images[l][j])[(0, 0)];
                }
            }
        }
    }
    let at = |i: usize, j: usize, k: usize, l: usize| entries[((i * 2 + j) * n + k) * n + l];

    let mut per_kraus_skew = 0.0_f64;
    let mut sector = vec![[0.0_f64; 2]; max_loss + 1];
    for (k, p) in patterns.iter().enumerate() {
        let (d0, d1) = (at(0, 0, k, k).re, at(1, 1, k, k).re);
        per_kraus_skew = per_kraus_skew.max((d0 - d1).abs());
        let s = &mut sector[p.iter().sum::<usize>()];
        s[0] += d0;
        s[1] += d1;
    }
    let sector_skew = sector.iter().fold(0.0_f64, |acc, s| acc.max((s[0] - s[1]).abs()));
    let mut orthogonality_violation = 0.0_f64;
    for k in 0..n {
        for l in 0..n {
            orthogonality_violation = orthogonality_violation.max(at(0, 1, k, l).norm());
        }
    }
    Ok(KlMatrix {
        patterns,
        entries,
        deformable: sector_skew > 1e-12,
        sector_skew,
        per_kraus_skew,
        orthogonality_violation,
    })
}
