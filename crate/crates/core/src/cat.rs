//! Coherent-state qubits and the N-mode repetition code built from them.
//!
//! States of a single mode are kept as 2×2 matrices in the orthonormal
//! even/odd basis `u = (|α⟩ + |−α⟩)/(2μ)`, `v = (|α⟩ − |−α⟩)/(2ν)` with
//! `μ² = (1 + e^{−2α²})/2` and `ν² = (1 − e^{−2α²})/2`. At `α = 0` the basis
//! is taken as its limit `u = |0⟩`, `v = |1⟩`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{param, Error, Result};
use crate::fock::DensityOp;
use crate::linalg::{self, cr, CMatrix, ZERO};
use crate::measures::{fidelity_2x2, wootters_concurrence, OverlapResult};
use crate::quadrature::{sphere_average, SphereSampling};

/// `1 − e^{−2x}` without cancellation.
fn one_minus_exp2(x: f64) -> f64 {
    -(-2.0 * x).exp_m1()
}

/// `(1 − e^{−2·scale·a2}) / (1 − e^{−2·a2})`, continuous at `a2 = 0`.
fn damped_ratio(scale: f64, a2: f64) -> f64 {
    if a2 == 0.0 {
        scale
    } else {
        one_minus_exp2(scale * a2) / one_minus_exp2(a2)
    }
}

/// Even/odd cat basis at amplitude `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatBasis {
    alpha: f64,
    mu: f64,
    nu: f64,
}

impl CatBasis {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(param("alpha", format!("{alpha} must be finite and nonnegative")));
        }
        let a2 = alpha * alpha;
        let mu = (0.5 * (1.0 + (-2.0 * a2).exp())).sqrt();
        let nu = (0.5 * one_minus_exp2(a2)).sqrt();
        Ok(Self { alpha, mu, nu })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// `⟨α|−α⟩ = e^{−2α²}`.
    pub fn overlap(&self) -> f64 {
        (-2.0 * self.alpha * self.alpha).exp()
    }

    /// Coordinates of `|α⟩` (`sign = 1`) or `|−α⟩` (`sign = −1`).
    pub fn coherent(&self, sign: f64) -> [f64; 2] {
        [self.mu, sign * self.nu]
    }
}

/// Physical input `(√w |−α⟩ + e^{iθ} √(1−w) |α⟩) / √N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatInput {
    w: f64,
    theta: f64,
    alpha: f64,
}

impl CatInput {
    pub fn new(w: f64, theta: f64, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&w) {
            return Err(param("w", format!("{w} outside [0, 1]")));
        }
        if !(0.0..TAU).contains(&theta) {
            return Err(param("theta", format!("{theta} outside [0, 2pi)")));
        }
        CatBasis::new(alpha)?;
        Ok(Self { w, theta, alpha })
    }

    /// Input whose weights come from a sphere point: `w = (1 + cos ω)/2`.
    pub fn from_sphere(cos_w: f64, theta: f64, alpha: f64) -> Result<Self> {
        Self::new((0.5 * (1.0 + cos_w)).clamp(0.0, 1.0), theta, alpha)
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The partner `(1 − w, θ + π)` of the antipodal pair.
    pub fn antipode(&self) -> Self {
        let theta = (self.theta + PI).rem_euclid(TAU);
        Self { w: 1.0 - self.w, theta: if theta >= TAU { 0.0 } else { theta }, alpha: self.alpha }
    }

    /// `N = 1 + 2√(w(1−w)) cos θ e^{−2α²}`.
    pub fn norm_const(&self) -> f64 {
        1.0 + 2.0 * (self.w * (1.0 - self.w)).sqrt() * self.theta.cos() * (-2.0 * self.alpha * self.alpha).exp()
    }

    /// Normalized amplitudes on `(u, v)`.
    pub fn amplitudes(&self) -> Result<[Complex64; 2]> {
        let basis = CatBasis::new(self.alpha)?;
        let a = cr(self.w.sqrt());
        let b = Complex64::from_polar((1.0 - self.w).sqrt(), self.theta);
        let u = (a + b) * basis.mu;
        let v = (b - a) * basis.nu;
        let norm = (u.norm_sqr() + v.norm_sqr()).sqrt();
        if norm < 1e-12 {
            return Err(Error::Validity(format!(
                "input w={} theta={} vanishes at alpha={}",
                self.w, self.theta, self.alpha
            )));
        }
        Ok([u / norm, v / norm])
    }

    pub fn density(&self) -> Result<CMatrix> {
        let [a, b] = self.amplitudes()?;
        Ok(CMatrix::from_row_slice(2, 2, &[a * a.conj(), a * b.conj(), b * a.conj(), b * b.conj()]))
    }
}

/// A direct link (`n_modes = 1`) or an odd repetition code over `n_modes` modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatCode {
    n_modes: usize,
}

impl CatCode {
    pub fn new(n_modes: usize) -> Result<Self> {
        if n_modes == 0 || n_modes.is_multiple_of(2) {
            return Err(param("n_modes", format!("{n_modes} must be odd and positive")));
        }
        Ok(Self { n_modes })
    }

    pub fn direct() -> Self {
        Self { n_modes: 1 }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn is_direct(&self) -> bool {
        self.n_modes == 1
    }

    /// Column label: `direct` or `repN`.
    pub fn label(&self) -> String {
        if self.is_direct() {
            "direct".into()
        } else {
            format!("rep{}", self.n_modes)
        }
    }
}

impl std::str::FromStr for CatCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "direct" {
            return Ok(Self::direct());
        }
        let n = s
            .strip_prefix("rep")
            .and_then(|n| n.parse::<usize>().ok())
            .ok_or_else(|| param("code", format!("unknown cat code `{s}` (expected direct or repN)")))?;
        let code = Self::new(n)?;
        if code.is_direct() {
            return Err(param("code", "rep1 is spelled `direct`"));
        }
        Ok(code)
    }
}

/// Probability that loss `gamma` flips the parity of a cat of amplitude `alpha`.
pub fn p_flip(alpha: f64, gamma: f64) -> f64 {
    0.5 * one_minus_exp2(gamma * alpha * alpha)
}

/// Probability that a majority vote over `n` independent flips of
/// probability `p` comes out wrong.
pub fn residual_flip(p: f64, n: usize) -> f64 {
    let mut total = 0.0;
    let mut binom = 1.0;
    for k in 0..=n {
        if k > 0 {
            binom = binom * (n - k + 1) as f64 / k as f64;
        }
        if 2 * k > n {
            total += binom * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32);
        }
    }
    total
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(param("gamma", format!("{gamma} outside [0, 1]")));
    }
    Ok(())
}

fn check_2x2(x: &CMatrix) -> Result<()> {
    if x.shape() != (2, 2) {
        return Err(Error::Shape(format!("expected a 2x2 operator, got {:?}", x.shape())));
    }
    Ok(())
}

/// Exact loss on one mode, for any operator on `span{u, v}`; returns the
/// image in the basis at `α' = √(1−γ) α` together with `α'`.
///
/// Loss maps the cat span onto the cat span at the reduced amplitude:
/// populations mix through the parity flips and the coherences shrink by
/// `e^{−2γα²}`.
pub fn lossy_cat_mode(x: &CMatrix, alpha: f64, gamma: f64) -> Result<(CMatrix, f64)> {
    check_2x2(x)?;
    check_gamma(gamma)?;
    let basis = CatBasis::new(alpha)?;
    let eta = 1.0 - gamma;
    let alpha_out = eta.sqrt() * alpha;
    let out_basis = CatBasis::new(alpha_out)?;
    let a2 = alpha * alpha;
    let e = (-2.0 * gamma * a2).exp();
    let one_minus_e = one_minus_exp2(gamma * a2);
    let (mu2, mu2_out) = (basis.mu * basis.mu, out_basis.mu * out_basis.mu);
    let (a, b, b_rev, d) = (x[(0, 0)], x[(0, 1)], x[(1, 0)], x[(1, 1)]);

    // (1 − E)/(2ν²) and ν'²/ν² carried as ratios so that α → 0 is regular
    let d_to_u = damped_ratio(gamma, a2);
    let nu2_ratio = damped_ratio(eta, a2);
    let nu2_out = out_basis.nu * out_basis.nu;

    let uu = (a * ((1.0 + e) / (2.0 * mu2)) + d * d_to_u) * mu2_out;
    let vv = a * (nu2_out * one_minus_e / (2.0 * mu2)) + d * (nu2_ratio * (1.0 + e) / 2.0);
    let coh = out_basis.mu / basis.mu * nu2_ratio.sqrt() / 2.0;
    let uv = (b * (1.0 + e) + b_rev * one_minus_e) * coh;
    let vu = (b_rev * (1.0 + e) + b * one_minus_e) * coh;
    Ok((CMatrix::from_row_slice(2, 2, &[uu, uv, vu, vv]), alpha_out))
}

/// Encoding step of the repetition code as a map on 2×2 operators in the
/// `(u, v)` basis of one logical cat.
///
/// The output is expressed in the basis in which channel errors act as
/// `X` flips, so the ideal encoder is the basis change `W` itself.
pub trait EncodingModel: Send + Sync + std::fmt::Debug {
    fn encode(&self, x: &CMatrix, basis: &CatBasis) -> CMatrix;
}

fn w_matrix() -> CMatrix {
    let h = cr(FRAC_1_SQRT_2);
    CMatrix::from_row_slice(2, 2, &[h, -h, h, h])
}

/// Noise-free gates: the encoding is exactly the change of basis.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdealEncoder;

impl EncodingModel for IdealEncoder {
    fn encode(&self, x: &CMatrix, _basis: &CatBasis) -> CMatrix {
        let w = w_matrix();
        &w * x * w.adjoint()
    }
}

/// Deterministic operation of the encoder: the odd-parity component is only
/// transferred with relative weight `ν/μ`; the remainder ends up in the
/// maximally mixed state. It reduces to [`IdealEncoder`] as `α → ∞`.
#[derive(Debug, Clone, Copy, Default)]
pub struct DeterministicEncoder;

impl DeterministicEncoder {
    fn kraus(basis: &CatBasis) -> (CMatrix, CMatrix) {
        let r = basis.nu / basis.mu;
        let h = FRAC_1_SQRT_2;
        let k1 = CMatrix::from_row_slice(2, 2, &[cr(r * h), cr(-h), cr(r * h), cr(h)]);
        let k2 = CMatrix::from_row_slice(2, 2, &[cr((1.0 - r * r).max(0.0).sqrt()), ZERO, ZERO, ZERO]);
        (k1, k2)
    }
}

impl EncodingModel for DeterministicEncoder {
    fn encode(&self, x: &CMatrix, basis: &CatBasis) -> CMatrix {
        let (k1, k2) = Self::kraus(basis);
        let lost = linalg::trace(&(&k2 * x * k2.adjoint()));
        &k1 * x * k1.adjoint() + CMatrix::identity(2, 2) * (lost * 0.5)
    }
}

/// Per-mode loss model used on the direct link.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatChannel {
    /// Parity flip `X` with probability [`p_flip`], the large-α form of loss.
    ParityFlip,
    /// Exact loss within the cat span ([`lossy_cat_mode`]).
    Exact,
}

/// Noise and encoder model for the coherent-state pipelines.
#[derive(Debug, Clone)]
pub struct CatModel {
    pub channel: CatChannel,
    pub encoder: Arc<dyn EncodingModel>,
}

impl Default for CatModel {
    fn default() -> Self {
        Self { channel: CatChannel::ParityFlip, encoder: Arc::new(DeterministicEncoder) }
    }
}

impl CatModel {
    /// Parity-flip noise with noise-free encoding gates.
    pub fn ideal() -> Self {
        Self { channel: CatChannel::ParityFlip, encoder: Arc::new(IdealEncoder) }
    }

    pub fn with_channel(mut self, channel: CatChannel) -> Self {
        self.channel = channel;
        self
    }

    pub fn with_encoder(mut self, encoder: Arc<dyn EncodingModel>) -> Self {
        self.encoder = encoder;
        self
    }

    /// The linear map taking one logical cat through `code` under loss `gamma`.
    pub fn map(&self, code: CatCode, alpha: f64, gamma: f64) -> Result<CatMap> {
        check_gamma(gamma)?;
        let basis = CatBasis::new(alpha)?;
        let p = p_flip(alpha, gamma);
        Ok(if code.is_direct() {
            match self.channel {
                CatChannel::ParityFlip => CatMap::Flip { p },
                CatChannel::Exact => CatMap::Exact { alpha, gamma },
            }
        } else {
            CatMap::Repetition { p: residual_flip(p, code.n_modes), basis, encoder: Arc::clone(&self.encoder) }
        })
    }
}

/// A linear map on 2×2 operators produced by [`CatModel::map`].
#[derive(Debug, Clone)]
pub enum CatMap {
    Flip { p: f64 },
    Exact { alpha: f64, gamma: f64 },
    Repetition { p: f64, basis: CatBasis, encoder: Arc<dyn EncodingModel> },
}

fn bit_flip(x: &CMatrix, p: f64) -> CMatrix {
    let sx = linalg::pauli_x();
    x * cr(1.0 - p) + &sx * x * &sx * cr(p)
}

impl CatMap {
    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        check_2x2(x)?;
        Ok(match self {
            CatMap::Flip { p } => bit_flip(x, *p),
            CatMap::Exact { alpha, gamma } => lossy_cat_mode(x, *alpha, *gamma)?.0,
            CatMap::Repetition { p, basis, encoder } => {
                let w = w_matrix();
                let encoded = encoder.encode(x, basis);
                w.adjoint() * bit_flip(&encoded, *p) * w
            }
        })
    }

    /// `(I ⊗ L)` on a two-qubit operator.
    pub fn apply_second(&self, rho4: &CMatrix) -> Result<CMatrix> {
        if rho4.shape() != (4, 4) {
            return Err(Error::Shape(format!("expected 4x4, got {:?}", rho4.shape())));
        }
        let mut out = CMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                let block = self.apply(&rho4.view((2 * i, 2 * j), (2, 2)).into_owned())?;
                out.view_mut((2 * i, 2 * j), (2, 2)).copy_from(&block);
            }
        }
        Ok(out)
    }
}

/// Direct transmission of one cat qubit; output in the basis at `√(1−γ) α`.
pub fn cat_direct_pipeline(alpha: f64, gamma: f64, q: &CatInput, model: &CatModel) -> Result<DensityOp> {
    check_alpha(q, alpha)?;
    let out = model.map(CatCode::direct(), alpha, gamma)?.apply(&q.density()?)?;
    DensityOp::qubit(out)
}

/// Repetition-code transmission (majority vote over `code.n_modes()` modes).
pub fn gvr_pipeline(code: CatCode, alpha: f64, gamma: f64, q: &CatInput, model: &CatModel) -> Result<DensityOp> {
    check_alpha(q, alpha)?;
    if code.is_direct() {
        return Err(param("code", "the repetition pipeline needs at least three modes"));
    }
    let out = model.map(code, alpha, gamma)?.apply(&q.density()?)?;
    DensityOp::qubit(out)
}

fn check_alpha(q: &CatInput, alpha: f64) -> Result<()> {
    if q.alpha != alpha {
        return Err(param("alpha", format!("input prepared at alpha={} but pipeline run at {alpha}", q.alpha)));
    }
    Ok(())
}

/// `(|uv⟩ + |vu⟩)/√2`, the two-mode entangled cat state in the orthonormal basis.
pub fn entangled_cat_state() -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    for a in [1, 2] {
        for b in [1, 2] {
            m[(a, b)] = cr(0.5);
        }
    }
    m
}

/// Concurrence after the second half of [`entangled_cat_state`] passes through `code`.
pub fn cat_concurrence(code: CatCode, alpha: f64, gamma: f64, model: &CatModel) -> Result<f64> {
    let out = model.map(code, alpha, gamma)?.apply_second(&entangled_cat_state())?;
    wootters_concurrence(&DensityOp::new(vec![2, 2], out)?)
}

/// Sphere-averaged output fidelity of the physical antipodal input pairs.
pub fn cat_codeword_overlap(
    code: CatCode,
    alpha: f64,
    gamma: f64,
    sampling: &SphereSampling,
    model: &CatModel,
) -> Result<OverlapResult> {
    let map = model.map(code, alpha, gamma)?;
    let (value, stderr) = sphere_average(sampling, |p| {
        let q = CatInput::from_sphere(p.cos_w, p.theta, alpha)?;
        let a = map.apply(&q.density()?)?;
        let b = map.apply(&q.antipode().density()?)?;
        Ok(fidelity_2x2(&a, &b))
    })?;
    Ok(OverlapResult { value: value.clamp(0.0, 1.0), stderr, n_points: sampling.points()?.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs_diff};

    #[test]
    fn basis_is_normalized() {
        for alpha in [0.0, 1e-8, 0.3, 1.0, 3.0] {
            let b = CatBasis::new(alpha).unwrap();
            assert!((b.mu() * b.mu() + b.nu() * b.nu() - 1.0).abs() < 1e-12);
        }
        assert!(CatBasis::new(-1.0).is_err());
    }

    #[test]
    fn input_normalization_constant() {
        let q = CatInput::new(0.3, 1.1, 0.7).unwrap();
        let basis = CatBasis::new(0.7).unwrap();
        let a = cr(0.3f64.sqrt());
        let b = Complex64::from_polar(0.7f64.sqrt(), 1.1);
        let raw_norm = ((a + b) * basis.mu()).norm_sqr() + ((b - a) * basis.nu()).norm_sqr();
        assert!((raw_norm - q.norm_const()).abs() < 1e-12);
    }

    #[test]
    fn vanishing_input_is_rejected() {
        let q = CatInput::new(0.5, PI, 0.0).unwrap();
        assert!(matches!(q.amplitudes(), Err(Error::Validity(_))));
    }

    #[test]
    fn lossless_cat_mode_is_identity() {
        let x = CMatrix::from_row_slice(2, 2, &[cr(0.3), c(0.1, 0.2), c(0.1, -0.2), cr(0.7)]);
        let (y, a) = lossy_cat_mode(&x, 1.3, 0.0).unwrap();
        assert_eq!(a, 1.3);
        assert!(max_abs_diff(&x, &y) < 1e-14);
    }

    #[test]
    fn coherent_state_stays_coherent() {
        let (alpha, gamma) = (1.2, 0.3);
        let c_in = CatBasis::new(alpha).unwrap().coherent(1.0);
        let rho = CMatrix::from_row_slice(
            2,
            2,
            &[cr(c_in[0] * c_in[0]), cr(c_in[0] * c_in[1]), cr(c_in[0] * c_in[1]), cr(c_in[1] * c_in[1])],
        );
        let (out, a_out) = lossy_cat_mode(&rho, alpha, gamma).unwrap();
        let c_out = CatBasis::new(a_out).unwrap().coherent(1.0);
        let expected = CMatrix::from_row_slice(
            2,
            2,
            &[cr(c_out[0] * c_out[0]), cr(c_out[0] * c_out[1]), cr(c_out[0] * c_out[1]), cr(c_out[1] * c_out[1])],
        );
        assert!(max_abs_diff(&out, &expected) < 1e-12);
    }

    #[test]
    fn small_alpha_limit_is_qubit_damping() {
        let g = 0.4;
        let x = CMatrix::from_row_slice(2, 2, &[cr(0.3), c(0.1, 0.2), c(0.1, -0.2), cr(0.7)]);
        let (y, _) = lossy_cat_mode(&x, 0.0, g).unwrap();
        let expected = CMatrix::from_row_slice(
            2,
            2,
            &[cr(0.3 + g * 0.7), c(0.1, 0.2) * (1.0 - g).sqrt(), c(0.1, -0.2) * (1.0 - g).sqrt(), cr(0.7 * (1.0 - g))],
        );
        assert!(max_abs_diff(&y, &expected) < 1e-14);
        let (y_small, _) = lossy_cat_mode(&x, 1e-6, g).unwrap();
        assert!(max_abs_diff(&y_small, &expected) < 1e-9);
    }

    #[test]
    fn residual_flip_three() {
        let p: f64 = 0.17;
        let brute: f64 = (0..8u32)
            .filter(|m| m.count_ones() >= 2)
            .map(|m| p.powi(m.count_ones() as i32) * (1.0 - p).powi(3 - m.count_ones() as i32))
            .sum();
        assert!((residual_flip(p, 3) - brute).abs() < 1e-15);
        assert!((residual_flip(p, 3) - (3.0 * p * p * (1.0 - p) + p.powi(3))).abs() < 1e-15);
        assert_eq!(residual_flip(p, 1), p);
    }

    #[test]
    fn redundancy_helps_below_one_half() {
        let p = p_flip(2.0, 0.32);
        assert!(p < 0.5);
        let rates: Vec<f64> = [1, 3, 5, 11].iter().map(|&n| residual_flip(p, n)).collect();
        assert!(rates.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn even_codes_rejected() {
        assert!(CatCode::new(4).is_err());
        assert!("rep4".parse::<CatCode>().is_err());
        assert_eq!("rep11".parse::<CatCode>().unwrap().n_modes(), 11);
        assert!("direct".parse::<CatCode>().unwrap().is_direct());
    }

    #[test]
    fn lossless_repetition_is_perfect() {
        let model = CatModel::ideal();
        for n in [3, 5, 51] {
            let code = CatCode::new(n).unwrap();
            for alpha in [0.4, 1.5] {
                let q = CatInput::new(0.2, 0.9, alpha).unwrap();
                let out = gvr_pipeline(code, alpha, 0.0, &q, &model).unwrap();
                assert!(max_abs_diff(out.matrix(), &q.density().unwrap()) < 1e-12);
            }
        }
    }

    #[test]
    fn single_mode_repetition_is_direct_in_conjugate_basis() {
        let (alpha, gamma) = (0.9, 0.32);
        let model = CatModel::ideal();
        let rep = model.map(CatCode { n_modes: 1 }, alpha, gamma).unwrap();
        let rep = CatMap::Repetition {
            p: match rep {
                CatMap::Flip { p } => p,
                _ => unreachable!(),
            },
            basis: CatBasis::new(alpha).unwrap(),
            encoder: Arc::new(IdealEncoder),
        };
        let direct = model.map(CatCode::direct(), alpha, gamma).unwrap();
        let h = w_matrix();
        let x = CatInput::new(0.3, 0.4, alpha).unwrap().density().unwrap();
        let via_rep = rep.apply(&x).unwrap();
        let via_direct = h.adjoint() * direct.apply(&(&h * &x * h.adjoint())).unwrap() * &h;
        assert!(max_abs_diff(&via_rep, &via_direct) < 1e-14);
    }

    #[test]
    fn lossless_concurrence_is_one() {
        for n in [1, 3, 5, 51] {
            let c = cat_concurrence(CatCode::new(n).unwrap(), 1.5, 0.0, &CatModel::ideal()).unwrap();
            assert!((c - 1.0).abs() < 1e-9, "n={n}");
        }
        for model in [CatModel::default(), CatModel::default().with_channel(CatChannel::Exact)] {
            let c = cat_concurrence(CatCode::direct(), 0.8, 0.0, &model).unwrap();
            assert!((c - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn direct_concurrence_is_parity_coherence() {
        let (alpha, gamma) = (1.1, 0.32);
        let c = cat_concurrence(CatCode::direct(), alpha, gamma, &CatModel::default()).unwrap();
        assert!((c - (-2.0 * gamma * alpha * alpha).exp()).abs() < 1e-12);
        let small = cat_concurrence(CatCode::direct(), 1e-3, gamma, &CatModel::default()).unwrap();
        assert!(small > 1.0 - 1e-5);
    }

    #[test]
    fn overlap_endpoints() {
        let rule = SphereSampling::Quadrature { n_points: 256 };
        let model = CatModel::default();
        let tiny = cat_codeword_overlap(CatCode::direct(), 1e-4, 0.32, &rule, &model).unwrap();
        assert!(tiny.value > 1.0 - 1e-6);
        let zero = cat_codeword_overlap(CatCode::direct(), 0.0, 0.32, &rule, &model).unwrap();
        assert!((zero.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn outputs_are_states() {
        let model = CatModel::default();
        for alpha in [0.05, 0.5, 2.0] {
            for n in [1, 3, 51] {
                let code = CatCode::new(n).unwrap();
                let map = model.map(code, alpha, 0.32).unwrap();
                let q = CatInput::new(0.8, 2.5, alpha).unwrap();
                let out = DensityOp::qubit(map.apply(&q.density().unwrap()).unwrap()).unwrap();
                assert!(out.is_valid(), "n={n} alpha={alpha}");
            }
        }
    }
}
