//! Uhlmann fidelity, the codeword-overlap average and Wootters concurrence.

use crate::codes::{effective_channel, BlochInput, CodeSpec, QubitChannel};
use crate::error::{Error, Result};
use crate::fock::{DensityOp, STRUCTURE_TOL};
use crate::linalg::{self, cr, CMatrix, ZERO};
use crate::quadrature::sphere_average;
pub use crate::quadrature::SphereSampling;

/// Squared fidelities below this are rounding noise from cancelling terms
/// and are reported as zero.
const FIDELITY_SQ_FLOOR: f64 = 16.0 * f64::EPSILON;
/// Eigenvalues of a unit-trace state at or below this are rounding noise.
const EIGEN_FLOOR: f64 = 64.0 * f64::EPSILON;

/// Sphere-averaged fidelity with its Monte Carlo standard error (zero for
/// quadrature rules).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapResult {
    pub value: f64,
    pub stderr: f64,
    pub n_points: usize,
}

fn check_pair(rho: &DensityOp, sigma: &DensityOp) -> Result<()> {
    if rho.mode_dims() != sigma.mode_dims() {
        return Err(Error::Shape(format!("mode dims {:?} vs {:?}", rho.mode_dims(), sigma.mode_dims())));
    }
    rho.validate(STRUCTURE_TOL)?;
    sigma.validate(STRUCTURE_TOL)
}

/// Root fidelity `Tr √(√ρ σ √ρ)`; two-level states use the closed form
/// `√(Tr ρσ + 2√(det ρ det σ))`.
pub fn uhlmann_fidelity(rho: &DensityOp, sigma: &DensityOp) -> Result<f64> {
    check_pair(rho, sigma)?;
    if rho.dim() == 2 {
        Ok(fidelity_2x2(rho.matrix(), sigma.matrix()))
    } else {
        Ok(fidelity_eigen(rho.matrix(), sigma.matrix()))
    }
}

/// Eigen-decomposition route, valid for any dimension.
pub fn uhlmann_fidelity_general(rho: &DensityOp, sigma: &DensityOp) -> Result<f64> {
    check_pair(rho, sigma)?;
    Ok(fidelity_eigen(rho.matrix(), sigma.matrix()))
}

fn fidelity_eigen(rho: &CMatrix, sigma: &CMatrix) -> f64 {
    let s = linalg::psd_sqrt(rho);
    let inner = &s * sigma * &s;
    let f: f64 = linalg::hermitian_eigenvalues(&inner).iter().map(|l| l.max(0.0).sqrt()).sum();
    f.clamp(0.0, 1.0)
}

fn det2(m: &CMatrix) -> f64 {
    (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re.max(0.0)
}

/// Closed-form root fidelity of two 2×2 density matrices (unchecked).
pub fn fidelity_2x2(rho: &CMatrix, sigma: &CMatrix) -> f64 {
    let overlap = linalg::trace(&(rho * sigma)).re;
    let sq = overlap + 2.0 * (det2(rho) * det2(sigma)).sqrt();
    if sq < FIDELITY_SQ_FLOOR {
        0.0
    } else {
        sq.sqrt().min(1.0)
    }
}

/// Sphere average of the output fidelity of antipodal inputs through `channel`.
pub fn channel_codeword_overlap(channel: &QubitChannel, sampling: &SphereSampling) -> Result<OverlapResult> {
    let (value, stderr) = sphere_average(sampling, |p| {
        let q = BlochInput::new(p.w(), p.theta)?;
        let a = channel.apply(&q.density());
        let b = channel.apply(&q.antipode().density());
        Ok(fidelity_2x2(&a, &b))
    })?;
    Ok(OverlapResult { value: value.clamp(0.0, 1.0), stderr, n_points: sampling.points()?.len() })
}

/// Codeword overlap of `code` under loss `gamma`.
pub fn codeword_overlap(code: &CodeSpec, gamma: f64, sampling: &SphereSampling) -> Result<OverlapResult> {
    channel_codeword_overlap(&effective_channel(code, gamma)?, sampling)
}

/// Wootters concurrence of a two-qubit state.
///
/// The square roots of the eigenvalues of `ρρ̃` are taken as the singular
/// values of `√ρ (σ_y⊗σ_y) √ρ*`, whose Gram matrix is the Hermitian
/// `√ρ ρ̃ √ρ`; this avoids square roots of rounding-level eigenvalues.
pub fn wootters_concurrence(rho4: &DensityOp) -> Result<f64> {
    if rho4.dim() != 4 {
        return Err(Error::Shape(format!("concurrence needs a 4x4 state, got {}", rho4.dim())));
    }
    rho4.validate(STRUCTURE_TOL)?;
    Ok(concurrence_unchecked(rho4.matrix()))
}

fn concurrence_unchecked(rho: &CMatrix) -> f64 {
    let s = linalg::hermitian_fn(rho, |x| if x > EIGEN_FLOOR { x.sqrt() } else { 0.0 });
    let yy = linalg::kron(&linalg::pauli_y(), &linalg::pauli_y());
    let a = &s * yy * s.map(|z| z.conj());
    let mut roots: Vec<f64> = a.singular_values().iter().copied().collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    (roots[0] - roots[1] - roots[2] - roots[3]).clamp(0.0, 1.0)
}

/// Concurrence left after sending the logical half of `(|00⟩ + |11⟩)/√2`
/// through encoding, loss and decoding.
pub fn safeguarded_concurrence(code: &CodeSpec, gamma: f64) -> Result<f64> {
    channel_concurrence(&effective_channel(code, gamma)?)
}

pub fn channel_concurrence(channel: &QubitChannel) -> Result<f64> {
    wootters_concurrence(&channel.bell_output()?)
}

/// `(|00⟩ + |11⟩)/√2` as a density matrix.
pub fn bell_state() -> DensityOp {
    let mut m = CMatrix::from_element(4, 4, ZERO);
    for (a, b) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
        m[(a, b)] = cr(0.5);
    }
    DensityOp::new(vec![2, 2], m).expect("4x4")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CodeId;
    use crate::linalg::{c, bloch_to_density};

    fn qubit(r: [f64; 3]) -> DensityOp {
        DensityOp::qubit(bloch_to_density(r)).unwrap()
    }

    #[test]
    fn fidelity_examples() {
        let a = qubit([0.3, -0.1, 0.4]);
        assert!((uhlmann_fidelity(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(uhlmann_fidelity(&qubit([0.0, 0.0, 1.0]), &qubit([0.0, 0.0, -1.0])).unwrap(), 0.0);
        let f = uhlmann_fidelity(&qubit([0.0; 3]), &qubit([0.0, 0.0, 1.0])).unwrap();
        assert!((f - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_eigen_route() {
        let pairs = [([0.3, -0.1, 0.4], [0.0, 0.5, -0.5]), ([0.99, 0.0, 0.0], [0.0, 0.0, 0.2]), ([0.0; 3], [0.1, 0.1, 0.1])];
        for (r, s) in pairs {
            let (a, b) = (qubit(r), qubit(s));
            let cf = uhlmann_fidelity(&a, &b).unwrap();
            let ge = uhlmann_fidelity_general(&a, &b).unwrap();
            assert!((cf - ge).abs() < 1e-10);
        }
    }

    #[test]
    fn fidelity_rejects_invalid_input() {
        let bad = DensityOp::qubit(CMatrix::from_row_slice(2, 2, &[cr(1.5), ZERO, ZERO, cr(-0.5)])).unwrap();
        assert!(matches!(uhlmann_fidelity(&bad, &qubit([0.0; 3])), Err(Error::Validity(_))));
    }

    #[test]
    fn concurrence_examples() {
        assert!((wootters_concurrence(&bell_state()).unwrap() - 1.0).abs() < 1e-12);
        let prod = qubit([0.2, 0.1, 0.3]).tensor(&qubit([0.0, -0.6, 0.1]));
        assert!(wootters_concurrence(&prod).unwrap() < 1e-7);
        let phase = {
            let mut m = bell_state().into_matrix();
            m[(0, 3)] = c(0.0, 0.5);
            m[(3, 0)] = c(0.0, -0.5);
            DensityOp::new(vec![2, 2], m).unwrap()
        };
        assert!((wootters_concurrence(&phase).unwrap() - 1.0).abs() < 1e-12);
    }

    use crate::fock::Tensor;

    #[test]
    fn lossless_endpoints() {
        for id in CodeId::ALL {
            let s = id.spec();
            let f = codeword_overlap(&s, 0.0, &SphereSampling::default()).unwrap();
            assert!(f.value <= 1e-9, "{id}: {}", f.value);
            assert!((safeguarded_concurrence(&s, 0.0).unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn fully_lossy_endpoints() {
        for id in CodeId::ALL {
            let s = id.spec();
            let f = codeword_overlap(&s, 1.0, &SphereSampling::default()).unwrap();
            assert!(f.value >= 1.0 - 1e-6, "{id}: {}", f.value);
        }
        assert!(safeguarded_concurrence(&CodeId::Direct.spec(), 1.0).unwrap() < 1e-9);
    }

    #[test]
    fn azimuthal_symmetry_for_direct_and_dual_rail() {
        for id in [CodeId::Direct, CodeId::DualRail] {
            let ch = effective_channel(&id.spec(), 0.4).unwrap();
            for w in [0.3, 1.0, 2.2] {
                let f = |theta: f64| {
                    let q = BlochInput::new(w, theta).unwrap();
                    fidelity_2x2(&ch.apply(&q.density()), &ch.apply(&q.antipode().density()))
                };
                let f0 = f(0.0);
                for theta in [0.7, 2.0, 4.5] {
                    assert!((f(theta) - f0).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn quadrature_resolution_is_converged() {
        for id in CodeId::ALL {
            let s = id.spec();
            for g in [0.1, 0.5, 0.9] {
                let coarse = codeword_overlap(&s, g, &SphereSampling::Quadrature { n_points: 1000 }).unwrap();
                let fine = codeword_overlap(&s, g, &SphereSampling::Quadrature { n_points: 4000 }).unwrap();
                assert!((coarse.value - fine.value).abs() <= 1e-4, "{id} g={g}");
            }
        }
    }
}
