mod common;

use std::f64::consts::PI;

use num_complex::Complex64;

use corrsplit::entanglement::{closest_separable_state, is_ppt, negativity, product_lmo, ree, solve_ree, ReeConfig};
use corrsplit::families::{
    bell_state, random_density, random_local_unitary, random_pure_product, werner_state, StateRng,
};
use corrsplit::linalg::{binary_entropy, hermitian_eigenvalues, ComplexMatrix};
use corrsplit::selftest::random_hermitian;
use corrsplit::state::{relative_entropy, BipartiteDims, DensityMatrix, Subsystem, SUPPORT_TOL};
use corrsplit::Error;

#[test]
fn ree_vanishes_exactly_on_ppt_states() {
    let cfg = ReeConfig::default();
    let (mut ppt, mut npt) = (0, 0);
    for seed in 0..100u64 {
        let rho = random_density(BipartiteDims::qubits(), 2 + (seed as usize % 3), 300 + seed).unwrap();
        let r = ree(&rho, &cfg).unwrap();
        assert!(r.value >= 0.0);
        if is_ppt(&rho) {
            ppt += 1;
            assert!(r.value <= 1e-5, "seed {seed}: PPT state with REE {}", r.value);
        } else {
            npt += 1;
            assert!(
                r.value > 1e-5,
                "seed {seed}: NPT state with REE {} (negativity {})",
                r.value,
                negativity(&rho)
            );
        }
    }
    assert!(ppt > 5 && npt > 5, "{ppt} PPT / {npt} NPT");
}

#[test]
fn werner_ree_is_monotone_and_matches_fidelity_formula() {
    let cfg = ReeConfig::default();
    let mut previous = 0.0;
    for k in 34..=100 {
        let gamma = k as f64 / 100.0;
        let r = ree(&werner_state(gamma).unwrap(), &cfg).unwrap();
        assert!(previous <= r.value + 1e-5, "γ={gamma}: {previous} > {}", r.value);
        previous = r.value;
        let fidelity = (1.0 + 3.0 * gamma) / 4.0;
        assert!(
            (r.value - (1.0 - binary_entropy(fidelity))).abs() < 1e-5,
            "γ={gamma}: {}",
            r.value
        );
    }
}

#[test]
fn ree_is_local_unitary_invariant() {
    let cfg = ReeConfig::default();
    for trial in 0..50u64 {
        let rho = random_density(BipartiteDims::qubits(), 1 + (trial as usize % 4), 900 + trial).unwrap();
        let (ua, ub) = random_local_unitary(rho.dims(), 950 + trial);
        let rotated = rho.apply_local_unitary(&ua, &ub).unwrap();
        let (a, b) = (ree(&rho, &cfg).unwrap().value, ree(&rotated, &cfg).unwrap().value);
        assert!((a - b).abs() <= 2e-4, "trial {trial}: {a} vs {b}");
    }
}

fn separable_mixture(dims: BipartiteDims, seed: u64) -> DensityMatrix {
    let mut m = ComplexMatrix::zeros(dims.total(), dims.total());
    let terms = 2 * dims.total();
    for j in 0..terms as u64 {
        m.add_scaled(1.0 / terms as f64, random_pure_product(dims, seed * 64 + j).matrix());
    }
    DensityMatrix::validate(m, dims).unwrap()
}

#[test]
fn certificate_is_sound() {
    let cfg = ReeConfig::default();
    for (k, dims) in [
        BipartiteDims::qubits(),
        BipartiteDims::new(2, 3),
        BipartiteDims::new(3, 2),
    ]
    .into_iter()
    .cycle()
    .take(30)
    .enumerate()
    {
        let rho = random_density(dims, dims.total(), 1200 + k as u64).unwrap();
        let r = ree(&rho, &cfg).unwrap();
        assert!(r.gap <= cfg.tol && r.gap >= 0.0);
        let reeval = relative_entropy(&rho, &r.sigma_star, SUPPORT_TOL).unwrap().to_f64();
        assert!((reeval - r.value).abs() <= 1e-9, "{reeval} vs {}", r.value);
        assert!(r.certified, "σ* should pass the PPT check in {dims}");
        for j in 0..10 {
            let tau = separable_mixture(dims, 1300 + 10 * k as u64 + j);
            let upper = relative_entropy(&rho, &tau, SUPPORT_TOL).unwrap().to_f64();
            assert!(
                r.lower_bound() <= upper,
                "lower bound {} above {upper}",
                r.lower_bound()
            );
        }
        assert!(
            r.lower_bound()
                <= relative_entropy(&rho, &rho.marginal_product(), SUPPORT_TOL)
                    .unwrap()
                    .to_f64()
        );
    }
}

#[test]
fn werner_nearest_state_has_the_state_symmetries() {
    let rho = werner_state(0.8).unwrap();
    let sigma = closest_separable_state(&rho, &ReeConfig::default().with_tol(1e-9)).unwrap();
    assert!(is_ppt(&sigma));
    assert!(sigma.swap_subsystems().matrix().max_abs_diff(sigma.matrix()) < 1e-6);
    let half = ComplexMatrix::identity(2).scale(0.5);
    assert!(sigma.partial_trace(Subsystem::A).matrix().max_abs_diff(&half) < 1e-6);
    assert!(sigma.partial_trace(Subsystem::B).matrix().max_abs_diff(&half) < 1e-6);
    // the separable Werner state at γ = 1/3
    assert!(sigma.matrix().max_abs_diff(werner_state(1.0 / 3.0).unwrap().matrix()) < 1e-4);
}

#[test]
fn bell_nearest_state_is_dephased() {
    let r = ree(&bell_state(), &ReeConfig::default()).unwrap();
    let s = relative_entropy(&bell_state(), &r.sigma_star, SUPPORT_TOL)
        .unwrap()
        .to_f64();
    assert!((s - 1.0).abs() < 1e-4);
    let m = r.sigma_star.matrix();
    assert!((m[(0, 0)].re - 0.5).abs() < 1e-6 && (m[(3, 3)].re - 0.5).abs() < 1e-6);
}

#[test]
fn pure_entangled_states_reach_entanglement_entropy() {
    for seed in 0..10 {
        let rho = random_density(BipartiteDims::new(2, 3), 1, 1500 + seed).unwrap();
        let r = ree(&rho, &ReeConfig::default()).unwrap();
        let marginal = corrsplit::state::von_neumann_entropy(&rho.partial_trace(Subsystem::B));
        assert!((r.value - marginal).abs() < 1e-5, "{} vs {marginal}", r.value);
    }
}

#[test]
fn larger_dimensions_are_not_ppt_certified() {
    let rho = random_density(BipartiteDims::new(3, 3), 9, 41).unwrap();
    let r = solve_ree(&rho, &ReeConfig::default());
    assert!(!r.certified);
    assert!(r.converged, "gap {}", r.gap);
    let reeval = relative_entropy(&rho, &r.sigma_star, SUPPORT_TOL).unwrap().to_f64();
    assert!((reeval - r.value).abs() <= 1e-9);
}

#[test]
fn not_converged_is_reported() {
    let cfg = ReeConfig::default().with_max_iters(0).with_tol(1e-12);
    match ree(&werner_state(0.9).unwrap(), &cfg) {
        Err(Error::NotConverged(r)) => assert!(r.gap > 1e-12 && !r.converged),
        other => panic!("expected NotConverged, got {other:?}"),
    }
}

fn bloch_vector(theta: f64, phi: f64) -> Vec<Complex64> {
    let (s, c) = (0.5 * theta).sin_cos();
    vec![Complex64::new(c, 0.0), Complex64::from_polar(s, phi)]
}

/// max over a on a 1° Bloch grid of the exact best b, i.e. the top eigenvalue
/// of ⟨a|g|a⟩ acting on B.
fn lmo_grid_oracle(g: &ComplexMatrix) -> f64 {
    let step = PI / 180.0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=180 {
        for j in 0..360 {
            let a = bloch_vector(i as f64 * step, j as f64 * step);
            let contracted = ComplexMatrix::from_fn(2, 2, |x, y| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (p, ap) in a.iter().enumerate() {
                    for (q, aq) in a.iter().enumerate() {
                        acc += ap.conj() * g[(p * 2 + x, q * 2 + y)] * aq;
                    }
                }
                acc
            });
            best = best.max(hermitian_eigenvalues(&contracted.hermitian_part()).unwrap()[0]);
        }
    }
    best
}

#[test]
fn product_oracle_matches_bloch_grid() {
    let mut rng = StateRng::new(77);
    for trial in 0..10 {
        let g = random_hermitian(4, &mut rng);
        let found = product_lmo(&g, BipartiteDims::qubits(), 20, trial);
        let grid = lmo_grid_oracle(&g);
        let scale = g.frobenius_norm();
        assert!(
            found.value >= grid - 1e-10 * scale,
            "trial {trial}: {} < grid {grid}",
            found.value
        );
        assert!(
            found.value <= grid + 1e-3 * scale,
            "trial {trial}: {} far above grid {grid}",
            found.value
        );
        let direct = g.quadratic_form(&found.pair.vector()).re;
        assert!((direct - found.value).abs() < 1e-10 * scale);
    }
}
