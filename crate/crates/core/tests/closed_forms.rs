mod support;

use cwoverlap::{BlochInput, Branch, CodeId};
use support::oracle::{printed_output, Mat};

fn grid() -> impl Iterator<Item = (f64, f64)> {
    (0..5).flat_map(|i| (0..5).map(move |j| (std::f64::consts::PI * i as f64 / 4.0, 1.2566 * j as f64)))
}

fn diff(a: &cwoverlap::linalg::CMatrix, b: &Mat) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn simulated_outputs_match_printed_pairs() {
    for id in [CodeId::Direct, CodeId::DualRail, CodeId::ThreeQubit, CodeId::Bosonic] {
        let spec = id.spec();
        for k in 0..=20 {
            let g = k as f64 / 20.0;
            for (w, theta) in grid() {
                let q = BlochInput::new(w, theta).unwrap();
                let out = spec.transmit_and_decode(g, q).unwrap();
                let out_t = spec.transmit_and_decode(g, q.antipode()).unwrap();
                let e = diff(out.matrix(), &printed_output(id.as_str(), g, w, theta, false));
                let e_t = diff(out_t.matrix(), &printed_output(id.as_str(), g, w, theta, true));
                assert!(e <= 1e-9 && e_t <= 1e-9, "{id} g={g} w={w} theta={theta}: {e:e} {e_t:e}");
            }
        }
    }
}

#[test]
fn four_qubit_transcription_agrees_for_both_branches() {
    let spec = CodeId::FourQubitApprox.spec();
    for g in [0.0, 0.2, 0.55, 1.0] {
        for (w, theta) in grid() {
            let q = BlochInput::new(w, theta).unwrap();
            for (branch, tilde) in [(Branch::Q, false), (Branch::QTilde, true)] {
                let cf = spec.closed_form_output(g, q, branch).unwrap();
                assert!(cf.hermiticity_defect < 1e-12);
                assert!(diff(cf.rho.matrix(), &printed_output("four_qubit_approx", g, w, theta, tilde)) < 1e-12);
            }
        }
    }
}

#[test]
fn printed_pairs_have_unit_trace_and_are_hermitian() {
    for code in ["direct", "dual_rail", "three_qubit", "bosonic", "four_qubit_approx"] {
        for g in [0.1, 0.5, 0.9] {
            for (w, theta) in grid() {
                for tilde in [false, true] {
                    let m = printed_output(code, g, w, theta, tilde);
                    assert!((m.trace().re - 1.0).abs() < 1e-12, "{code} g={g} tilde={tilde}");
                    assert!((&m - m.adjoint()).iter().all(|z| z.norm() < 1e-12), "{code}");
                }
            }
        }
    }
}
