//! Browser bindings for the codeword-overlap demo.
//!
//! Each exported function returns a flat `Float64Array`. The curve
//! functions interleave `[f_cw, concurrence]` per grid point.

use std::sync::Arc;

use nalgebra::Matrix2;
use wasm_bindgen::prelude::*;

use cwoverlap::cat::{cat_codeword_overlap, cat_concurrence, CatCode, CatModel, DeterministicEncoder, IdealEncoder};
use cwoverlap::gaussian::{fidelity_after_channel, gaussian_fidelity, GaussianChannel, GaussianState};
use cwoverlap::measures::{codeword_overlap, safeguarded_concurrence};
use cwoverlap::{CodeId, Result, SphereSampling};

fn sampling(points: usize) -> SphereSampling {
    SphereSampling::Quadrature { n_points: points.max(1) }
}

/// Overlap and concurrence of a discrete code over `gammas`.
pub fn code_curves(code: &str, gammas: &[f64], points: usize) -> Result<Vec<f64>> {
    let spec = code.parse::<CodeId>()?.spec();
    let mut out = Vec::with_capacity(2 * gammas.len());
    for &g in gammas {
        out.push(codeword_overlap(&spec, g, &sampling(points))?.value);
        out.push(safeguarded_concurrence(&spec, g)?);
    }
    Ok(out)
}

/// Overlap and concurrence of the `n_modes` cat code (1 = direct) over `alphas`.
pub fn cat_curves(n_modes: usize, gamma: f64, alphas: &[f64], ideal: bool, points: usize) -> Result<Vec<f64>> {
    let code = CatCode::new(n_modes)?;
    let model = if ideal {
        CatModel::default().with_encoder(Arc::new(IdealEncoder))
    } else {
        CatModel::default().with_encoder(Arc::new(DeterministicEncoder))
    };
    let mut out = Vec::with_capacity(2 * alphas.len());
    for &a in alphas {
        out.push(cat_codeword_overlap(code, a, gamma, &sampling(points), &model)?.value);
        out.push(cat_concurrence(code, a, gamma, &model)?);
    }
    Ok(out)
}

fn squeezed_thermal(nbar: f64, r: f64, phi: f64) -> Matrix2<f64> {
    let (s, c) = phi.sin_cos();
    let rot = Matrix2::new(c, -s, s, c);
    let sq = Matrix2::new((2.0 * r).exp(), 0.0, 0.0, (-2.0 * r).exp());
    rot * sq * rot.transpose() * (2.0 * nbar + 1.0)
}

/// `[F, F']` for two squeezed thermal states before and after a phase-
/// insensitive channel `M = √τ I`, `N = (|1 − τ| + 2 n_add) I`.
#[allow(clippy::too_many_arguments)]
pub fn gaussian_pair(nbar1: f64, r1: f64, phi1: f64, nbar2: f64, r2: f64, phi2: f64, tau: f64, n_add: f64) -> Result<Vec<f64>> {
    let a = GaussianState::single(squeezed_thermal(nbar1, r1, phi1))?;
    let b = GaussianState::single(squeezed_thermal(nbar2, r2, phi2))?;
    let ch = GaussianChannel::single(Matrix2::identity() * tau.max(0.0).sqrt(), Matrix2::identity() * ((1.0 - tau).abs() + 2.0 * n_add))?;
    let before = gaussian_fidelity(&a, &b)?;
    Ok(vec![before, fidelity_after_channel(&a, &b, &ch)?])
}

fn js(e: cwoverlap::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = codeCurves)]
pub fn code_curves_js(code: &str, gammas: &[f64], points: usize) -> std::result::Result<Vec<f64>, JsError> {
    code_curves(code, gammas, points).map_err(js)
}

#[wasm_bindgen(js_name = catCurves)]
pub fn cat_curves_js(n_modes: usize, gamma: f64, alphas: &[f64], ideal: bool, points: usize) -> std::result::Result<Vec<f64>, JsError> {
    cat_curves(n_modes, gamma, alphas, ideal, points).map_err(js)
}

#[allow(clippy::too_many_arguments)]
#[wasm_bindgen(js_name = gaussianPair)]
pub fn gaussian_pair_js(
    nbar1: f64,
    r1: f64,
    phi1: f64,
    nbar2: f64,
    r2: f64,
    phi2: f64,
    tau: f64,
    n_add: f64,
) -> std::result::Result<Vec<f64>, JsError> {
    gaussian_pair(nbar1, r1, phi1, nbar2, r2, phi2, tau, n_add).map_err(js)
}
