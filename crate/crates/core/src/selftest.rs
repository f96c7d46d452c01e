//! Reduced-size property checks run by `corrsplit selftest`.

use std::f64::consts::PI;

use crate::correlations::{
    chi_projective, holevo_term, psi, MeasurementSet, ProjectiveAngles, CHI_GRID_STEP, CHI_REFINE_TOL,
};
use crate::entanglement::{solve_ree, ReeConfig};
use crate::error::Result;
use crate::families::{random_density, random_local_unitary, random_pure_product, werner_state, StateRng};
use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::state::{mutual_information, mutual_information_relative, relative_entropy, BipartiteDims, SUPPORT_TOL};

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub trials: usize,
    pub seed: u64,
    /// Perturbs the swap-symmetry check so the harness must report a failure.
    pub inject_fault: bool,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        Self {
            trials: 20,
            seed: 0,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct SelftestReport {
    pub outcomes: Vec<PropertyOutcome>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn first_failure(&self) -> Option<&PropertyOutcome> {
        self.outcomes.iter().find(|o| !o.passed)
    }
}

/// Random Hermitian matrix with complex Gaussian entries.
pub fn random_hermitian(n: usize, rng: &mut StateRng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(n, n, |_, _| rng.complex_normal());
    g.hermitian_part()
}

fn check(name: &'static str, worst: f64, bound: f64) -> PropertyOutcome {
    PropertyOutcome {
        name,
        passed: worst <= bound,
        detail: format!("worst {worst:.3e} (bound {bound:.1e})"),
    }
}

pub fn run_selftest(cfg: &SelftestConfig) -> Result<SelftestReport> {
    let n = cfg.trials.max(1) as u64;
    let qubits = BipartiteDims::qubits();
    let ree_cfg = ReeConfig::default();
    let mut report = SelftestReport::default();

    let mut rng = StateRng::new(cfg.seed);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let m = random_hermitian(4, &mut rng);
        let spec = hermitian_eig(&m)?;
        let recon = (&spec.reconstruct() - &m).frobenius_norm() / m.frobenius_norm().max(1.0);
        let ortho =
            (&(&spec.eigenvectors.adjoint() * &spec.eigenvectors) - &ComplexMatrix::identity(4)).frobenius_norm();
        worst = worst.max(recon).max(ortho);
    }
    report.outcomes.push(check("eigen_reconstruction", worst, 1e-10));

    let mut worst = 0.0f64;
    for k in 0..n {
        let rho = random_density(BipartiteDims::new(2, 3), 6, cfg.seed + k)?;
        worst = worst.max((mutual_information(&rho) - mutual_information_relative(&rho)?).abs());
    }
    report.outcomes.push(check("mutual_information_formulas", worst, 1e-8));

    let mut worst = 0.0f64;
    let mut swap_worst = 0.0f64;
    for k in 0..n {
        let rho = random_density(qubits, 4, cfg.seed + 100 + k)?;
        let p = psi(&rho, &ree_cfg)?;
        let mut q = psi(&rho.swap_subsystems(), &ree_cfg)?;
        if cfg.inject_fault {
            q += 1e-2;
        }
        worst = worst.max(-p);
        swap_worst = swap_worst.max((p - q).abs());
    }
    report.outcomes.push(check("psi_non_negative", worst, ree_cfg.tol));
    report.outcomes.push(check("psi_swap_symmetry", swap_worst, 2e-4));

    let w = werner_state(0.7)?;
    let base = psi(&w, &ree_cfg)?;
    let mut worst = 0.0f64;
    for k in 0..n {
        let (ua, ub) = random_local_unitary(qubits, cfg.seed + 200 + k);
        let rotated = w.apply_local_unitary(&ua, &ub)?;
        worst = worst.max((psi(&rotated, &ree_cfg)? - base).abs());
    }
    report.outcomes.push(check("psi_local_unitary_invariance", worst, 2e-4));

    let mut worst = 0.0f64;
    for k in 0..n {
        let a = random_density(BipartiteDims::new(2, 1), 2, cfg.seed + 300 + k)?;
        let b = random_density(BipartiteDims::new(2, 1), 2, cfg.seed + 400 + k)?;
        let rho = crate::state::DensityMatrix::product(&a, &b);
        worst = worst.max(psi(&rho, &ree_cfg)?.abs());
        let pure = random_pure_product(qubits, cfg.seed + 500 + k);
        worst = worst.max(psi(&pure, &ree_cfg)?.abs());
    }
    report.outcomes.push(check("psi_zero_on_products", worst, 1e-5));

    let mut worst = 0.0f64;
    for k in 0..n {
        let rho = random_density(qubits, 4, cfg.seed + 600 + k)?;
        let r = solve_ree(&rho, &ree_cfg);
        let reeval = relative_entropy(&rho, &r.sigma_star, SUPPORT_TOL)?.to_f64();
        worst = worst.max((reeval - r.value).abs());
        if r.lower_bound() > r.value || !r.converged {
            worst = f64::INFINITY;
        }
    }
    report.outcomes.push(check("ree_certificate", worst, 1e-9));

    let mut worst = 0.0f64;
    for k in 0..n.min(5) {
        let rho = random_density(qubits, 4, cfg.seed + 700 + k)?;
        let opt = chi_projective(&rho, CHI_GRID_STEP, CHI_REFINE_TOL)?;
        // every 5° grid point must be dominated by the optimizer
        let step = 5.0 * PI / 180.0;
        for i in 0..=36 {
            for j in 0..72 {
                let angles = ProjectiveAngles::normalized(i as f64 * step, j as f64 * step);
                let h = holevo_term(&rho, &MeasurementSet::projective_qubit(angles))?;
                worst = worst.max(h - opt.value);
            }
        }
    }
    report
        .outcomes
        .push(check("chi_projective_dominates_grid", worst, 1e-12));

    Ok(report)
}
