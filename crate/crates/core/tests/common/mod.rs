#![allow(dead_code)]

use std::f64::consts::PI;

use corrsplit::correlations::{holevo_term, MeasurementSet, ProjectiveAngles};
use corrsplit::entanglement::is_ppt;
use corrsplit::families::random_density;
use corrsplit::state::{BipartiteDims, DensityMatrix};

/// First `count` full-rank 2⊗2 random states (seeds from `first_seed` up) that pass the PPT test.
pub fn random_ppt_states(count: usize, first_seed: u64) -> Vec<DensityMatrix> {
    (first_seed..)
        .map(|seed| random_density(BipartiteDims::qubits(), 4, seed).unwrap())
        .filter(is_ppt)
        .take(count)
        .collect()
}

/// Holevo term of the projective measurement along (θ, φ), with no angle folding.
pub fn holevo_at(rho: &DensityMatrix, theta: f64, phi: f64) -> f64 {
    let angles = ProjectiveAngles { theta, phi };
    holevo_term(rho, &MeasurementSet::projective_qubit(angles)).unwrap()
}

/// Brute force over the whole sphere at 1°, then zooming local grids around
/// the best point until the spacing is below 1e-8 rad.
pub fn chi_oracle(rho: &DensityMatrix) -> f64 {
    let step = PI / 180.0;
    let (mut best, mut bt, mut bp) = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..=180 {
        for j in 0..360 {
            let (t, p) = (i as f64 * step, j as f64 * step);
            let h = holevo_at(rho, t, p);
            if h > best {
                (best, bt, bp) = (h, t, p);
            }
        }
    }
    let mut h = step;
    while h > 1e-8 {
        let (ct, cp) = (bt, bp);
        for i in -10..=10 {
            for j in -10..=10 {
                let (t, p) = (ct + i as f64 * h / 10.0, cp + j as f64 * h / 10.0);
                let v = holevo_at(rho, t, p);
                if v > best {
                    (best, bt, bp) = (v, t, p);
                }
            }
        }
        h /= 4.0;
    }
    best
}

/// Deterministic proptest settings: fixed seed, no regression files.
pub fn fixed_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(20_240_601),
        failure_persistence: None,
        ..proptest::test_runner::Config::default()
    }
}
