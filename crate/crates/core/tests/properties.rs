use cwoverlap::codes::effective_channel;
use cwoverlap::fock::{apply_channel, damping_kraus};
use cwoverlap::gaussian::{
    apply, fidelity_after_channel, gaussian_fidelity, is_cptp, sample_channel, sample_state, scutaru, validate_state,
    GaussianChannel, GaussianState,
};
use cwoverlap::linalg::{bloch_to_density, max_abs_diff, CMatrix};
use cwoverlap::measures::{uhlmann_fidelity, uhlmann_fidelity_general};
use cwoverlap::{BlochInput, CodeId, DensityOp};
use nalgebra::Matrix2;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bloch() -> impl Strategy<Value = [f64; 3]> {
    (0.0..=1.0f64, -1.0..=1.0f64, 0.0..std::f64::consts::TAU).prop_map(|(r, z, phi)| {
        let s = (1.0 - z * z).sqrt();
        [r * s * phi.cos(), r * s * phi.sin(), r * z]
    })
}

fn qubit(r: [f64; 3]) -> DensityOp {
    DensityOp::qubit(bloch_to_density(r)).unwrap()
}

fn random_state(seed: u64, dim: usize) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    use rand::Rng;
    let g = CMatrix::from_fn(dim, dim, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let m = &g * g.adjoint();
    let t = m.trace();
    m / t
}

proptest! {
    #[test]
    fn loss_preserves_trace_and_positivity(gamma in 0.0..=1.0f64, dim in 2usize..8, seed in any::<u64>()) {
        let k = damping_kraus(gamma, dim).unwrap();
        prop_assert!(k.completeness_defect() < 1e-12);
        let rho = DensityOp::new(vec![dim], random_state(seed, dim)).unwrap();
        let out = apply_channel(&rho, &[k]).unwrap();
        prop_assert!((out.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(out.eigenvalues().iter().all(|l| *l > -1e-12));
    }

    #[test]
    fn two_mode_loss_preserves_trace(gamma in 0.0..=1.0f64, seed in any::<u64>()) {
        let rho = DensityOp::new(vec![3, 2], random_state(seed, 6)).unwrap();
        let k = [damping_kraus(gamma, 3).unwrap(), damping_kraus(gamma, 2).unwrap()];
        let out = apply_channel(&rho, &k).unwrap();
        prop_assert!((out.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(out.eigenvalues().iter().all(|l| *l > -1e-12));
    }

    #[test]
    fn fidelity_is_symmetric_and_bounded(a in bloch(), b in bloch()) {
        let (x, y) = (qubit(a), qubit(b));
        let f = uhlmann_fidelity(&x, &y).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!((f - uhlmann_fidelity(&y, &x).unwrap()).abs() < 1e-12);
        prop_assert!((f - uhlmann_fidelity_general(&x, &y).unwrap()).abs() < 1e-7);
    }

    #[test]
    fn effective_channel_reproduces_simulation(
        code in 0usize..4, gamma in 0.0..=1.0f64, w in 0.0..=std::f64::consts::PI, theta in 0.0..std::f64::consts::TAU,
    ) {
        let id = [CodeId::Direct, CodeId::DualRail, CodeId::ThreeQubit, CodeId::Bosonic][code];
        let spec = id.spec();
        let q = BlochInput::new(w, theta).unwrap();
        let ch = effective_channel(&spec, gamma).unwrap();
        let direct = spec.transmit_and_decode(gamma, q).unwrap();
        prop_assert!(max_abs_diff(&ch.apply(&q.density()), direct.matrix()) < 1e-10);
        prop_assert!(ch.trace_preservation_defect() < 1e-10);
        prop_assert!(ch.min_choi_eigenvalue() > -1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gaussian_definitions_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (sample_state(&mut rng), sample_state(&mut rng));
        let (m, n) = sample_channel(&mut rng, seed % 2 == 0);
        let ch = GaussianChannel::single(m, n).unwrap();
        prop_assert!(is_cptp(&ch));
        let (sa, sb) = (GaussianState::single(a).unwrap(), GaussianState::single(b).unwrap());
        prop_assert!(validate_state(&sa).valid && validate_state(&sb).valid);
        let out = apply(&ch, &sa).unwrap();
        prop_assert!(validate_state(&out).valid);
        let expect: Matrix2<f64> = m * a * m.transpose() + n;
        let got = out.cm();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!((got[(i, j)] - expect[(i, j)]).abs() < 1e-10 * expect.abs().max().max(1.0));
            }
        }
        let f = gaussian_fidelity(&sa, &sb).unwrap();
        prop_assert!((f - scutaru(&a, &b)).abs() < 1e-14);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&f));
        prop_assert!((f - scutaru(&b, &a)).abs() < 1e-12);
        let after = fidelity_after_channel(&sa, &sb, &ch).unwrap();
        prop_assert!(after >= f - 1e-9);
    }
}
