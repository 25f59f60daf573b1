mod support;

use cwoverlap::measures::codeword_overlap;
use cwoverlap::{CodeId, SphereSampling};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::oracle::monte_carlo_overlap;

#[test]
fn quadrature_matches_brute_force_average() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for id in [CodeId::DualRail, CodeId::ThreeQubit, CodeId::FourQubitApprox] {
        for g in [0.2, 0.5] {
            let quad = codeword_overlap(&id.spec(), g, &SphereSampling::default()).unwrap().value;
            let (mc, se) = monte_carlo_overlap(id.as_str(), g, 10_000, &mut rng);
            assert!((quad - mc).abs() < 4.0 * se + 1e-12, "{id} g={g}: {quad} vs {mc} ± {se}");
        }
    }
}

#[test]
fn dual_rail_overlap_is_uniform_on_the_sphere() {
    // equal fidelity for every pair, so the average is that value
    for g in [0.1, 0.4, 0.8] {
        let f = codeword_overlap(&CodeId::DualRail.spec(), g, &SphereSampling::default()).unwrap();
        assert!((f.value - g.sqrt() * (2.0 - g).sqrt()).abs() < 1e-9, "g={g}: {}", f.value);
    }
}
