//! Classical-correlation measures.
//!
//! - `Ψ = I(ρ) − REE(ρ)`: total correlations minus the entanglement part.
//! - `C₁ = S(σ*‖σ*_A ⊗ σ*_B)` and `C₂ = S(σ*‖ρ_A ⊗ ρ_B)`, with σ* the nearest
//!   separable state.
//! - `χ_B`: the largest Holevo quantity `S(ρ_B) − Σ p_i S(ρ_B^i)` obtainable by
//!   measuring A. [`chi_projective`] optimizes over rank-one projective
//!   measurements on a qubit; [`chi_povm_search`] is a heuristic search over
//!   POVMs and only ever reports the best value it found.

use std::f64::consts::{FRAC_PI_2, PI};

use log::debug;
use num_complex::Complex64;
use serde::Serialize;

use crate::entanglement::{negativity, ree, solve_ree, ReeConfig, ReeResult};
use crate::error::{Error, Result};
use crate::families::StateRng;
use crate::linalg::{entropy_bits, hermitian_eigenvalues, psd_sqrt, ComplexMatrix};
use crate::state::{
    mutual_information, relative_entropy, von_neumann_entropy, BipartiteDims, DensityMatrix, Subsystem, SUPPORT_TOL,
};

/// Completeness tolerance on `‖Σ A_i†A_i − I‖_F`.
pub const COMPLETENESS_TOL: f64 = 1e-10;
/// Outcomes less likely than this are dropped from the entropy average.
pub const MIN_OUTCOME_PROB: f64 = 1e-12;

/// Measurement operators `A_i` acting on subsystem A.
#[derive(Clone, Debug)]
pub struct MeasurementSet {
    operators: Vec<ComplexMatrix>,
}

impl MeasurementSet {
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let d = operators
            .first()
            .ok_or_else(|| Error::InvalidArgument("measurement needs at least one operator".into()))?
            .rows();
        if operators.iter().any(|a| !a.is_square() || a.rows() != d) {
            return Err(Error::DimMismatch(
                "measurement operators must share one square shape".into(),
            ));
        }
        let mut sum = ComplexMatrix::zeros(d, d);
        for a in &operators {
            sum = &sum + &(&a.adjoint() * a);
        }
        let deviation = (&sum - &ComplexMatrix::identity(d)).frobenius_norm();
        if deviation > COMPLETENESS_TOL {
            return Err(Error::IncompleteMeasurement { deviation });
        }
        Ok(Self { operators })
    }

    /// Rank-one projective measurement `{|n⟩⟨n|, |n⊥⟩⟨n⊥|}` on a qubit, with
    /// `|n⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
    pub fn projective_qubit(angles: ProjectiveAngles) -> Self {
        let (n, n_perp) = angles.basis();
        Self {
            operators: vec![ComplexMatrix::outer(&n), ComplexMatrix::outer(&n_perp)],
        }
    }

    /// Computational-basis projectors on a `d`-level system.
    pub fn computational(d: usize) -> Self {
        let operators = (0..d)
            .map(|k| {
                let mut p = ComplexMatrix::zeros(d, d);
                p[(k, k)] = Complex64::new(1.0, 0.0);
                p
            })
            .collect();
        Self { operators }
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.operators[0].rows()
    }

    /// POVM elements `E_i = A_i†A_i`.
    pub fn elements(&self) -> Vec<ComplexMatrix> {
        self.operators.iter().map(|a| &a.adjoint() * a).collect()
    }
}

/// Bloch angles of a qubit projector pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProjectiveAngles {
    /// Polar angle in `[0, π]`.
    pub theta: f64,
    /// Azimuth in `[0, 2π)`.
    pub phi: f64,
}

impl ProjectiveAngles {
    /// Wraps arbitrary angles into the canonical ranges describing the same direction.
    pub fn normalized(theta: f64, phi: f64) -> Self {
        let mut t = theta.rem_euclid(2.0 * PI);
        let mut p = phi;
        if t > PI {
            t = 2.0 * PI - t;
            p += PI;
        }
        Self {
            theta: t,
            phi: p.rem_euclid(2.0 * PI),
        }
    }

    fn basis(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let (s, c) = (0.5 * self.theta).sin_cos();
        let e = Complex64::from_polar(1.0, self.phi);
        let n = vec![Complex64::new(c, 0.0), e * s];
        let n_perp = vec![-e.conj() * s, Complex64::new(c, 0.0)];
        (n, n_perp)
    }
}

/// Probabilities and conditional B states of a measurement on A.
#[derive(Clone, Debug)]
pub struct MeasurementOutcome {
    pub probs: Vec<f64>,
    /// `None` for outcomes with probability below [`MIN_OUTCOME_PROB`].
    pub post_states_b: Vec<Option<DensityMatrix>>,
}

/// ρ split into `d_b × d_b` blocks `ρ^{xy}[β, β'] = ρ[(x,β), (y,β')]`.
struct BlockedState {
    d_a: usize,
    d_b: usize,
    blocks: Vec<ComplexMatrix>,
}

impl BlockedState {
    fn new(rho: &DensityMatrix) -> Self {
        let BipartiteDims { d_a, d_b } = rho.dims();
        let m = rho.matrix();
        let blocks = (0..d_a * d_a)
            .map(|k| {
                let (x, y) = (k / d_a, k % d_a);
                ComplexMatrix::from_fn(d_b, d_b, |i, j| m[(x * d_b + i, y * d_b + j)])
            })
            .collect();
        Self { d_a, d_b, blocks }
    }

    /// `Tr_A[(E ⊗ I) ρ] = Σ_{x,y} E_{yx} ρ^{xy}`, unnormalized.
    fn conditional(&self, element: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.d_b, self.d_b);
        for x in 0..self.d_a {
            for y in 0..self.d_a {
                let e = element[(y, x)];
                if e != Complex64::new(0.0, 0.0) {
                    out = &out + &self.blocks[x * self.d_a + y].scale_complex(e);
                }
            }
        }
        out.hermitian_part()
    }

    /// `Σ p_i S(ρ_B^i)` over the given POVM elements.
    fn average_conditional_entropy(&self, elements: &[ComplexMatrix]) -> f64 {
        elements
            .iter()
            .map(|e| {
                let cond = self.conditional(e);
                let p = cond.trace().re;
                if p < MIN_OUTCOME_PROB {
                    return 0.0;
                }
                let eig = hermitian_eigenvalues(&cond.scale(1.0 / p)).expect("conditional state is Hermitian");
                p * entropy_bits(&eig)
            })
            .sum()
    }
}

fn check_measurement_dims(rho: &DensityMatrix, m: &MeasurementSet) -> Result<()> {
    if m.dim() != rho.dims().d_a {
        return Err(Error::DimMismatch(format!(
            "measurement on dimension {} applied to {} state",
            m.dim(),
            rho.dims()
        )));
    }
    Ok(())
}

/// Outcome probabilities `p_i` and conditional states `ρ_B^i` of measuring A.
pub fn apply_measurement(rho: &DensityMatrix, m: &MeasurementSet) -> Result<MeasurementOutcome> {
    check_measurement_dims(rho, m)?;
    let blocked = BlockedState::new(rho);
    let mut probs = Vec::with_capacity(m.len());
    let mut post_states_b = Vec::with_capacity(m.len());
    for e in m.elements() {
        let cond = blocked.conditional(&e);
        let p = cond.trace().re.max(0.0);
        probs.push(p);
        if p < MIN_OUTCOME_PROB {
            post_states_b.push(None);
        } else {
            let state = DensityMatrix::validate(cond.scale(1.0 / p), BipartiteDims::new(blocked.d_b, 1))?;
            post_states_b.push(Some(state));
        }
    }
    Ok(MeasurementOutcome { probs, post_states_b })
}

/// `S(ρ_B) − Σ p_i S(ρ_B^i)` for a fixed measurement on A.
pub fn holevo_term(rho: &DensityMatrix, m: &MeasurementSet) -> Result<f64> {
    check_measurement_dims(rho, m)?;
    let s_b = von_neumann_entropy(&rho.partial_trace(Subsystem::A));
    let blocked = BlockedState::new(rho);
    Ok((s_b - blocked.average_conditional_entropy(&m.elements())).max(0.0))
}

fn require_qubit_a(rho: &DensityMatrix, what: &str) -> Result<()> {
    if rho.dims().d_a != 2 {
        return Err(Error::UnsupportedDimension(format!(
            "{what} is implemented for a qubit A only (got {})",
            rho.dims()
        )));
    }
    Ok(())
}

struct ProjectiveObjective {
    blocked: BlockedState,
    s_b: f64,
}

impl ProjectiveObjective {
    fn new(rho: &DensityMatrix) -> Self {
        Self {
            blocked: BlockedState::new(rho),
            s_b: von_neumann_entropy(&rho.partial_trace(Subsystem::A)),
        }
    }

    fn eval(&self, theta: f64, phi: f64) -> f64 {
        let (n, n_perp) = ProjectiveAngles { theta, phi }.basis();
        let elements = [ComplexMatrix::outer(&n), ComplexMatrix::outer(&n_perp)];
        self.s_b - self.blocked.average_conditional_entropy(&elements)
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ProjectiveChi {
    /// Bits.
    pub value: f64,
    pub angles: ProjectiveAngles,
}

/// Default angular grid step for [`chi_projective`]: one degree.
pub const CHI_GRID_STEP: f64 = PI / 180.0;
pub const CHI_REFINE_TOL: f64 = 1e-10;

/// `χ_B` restricted to rank-one projective measurements on a qubit A.
///
/// Scans θ ∈ [0, π/2] and φ ∈ [0, 2π) on a grid of `grid_step` radians (the
/// pair {n, n⊥} covers the antipodal hemisphere), then refines the best cell
/// by compass pattern search until the step `h` satisfies `h² ≤ refine_tol`/100.
pub fn chi_projective(rho: &DensityMatrix, grid_step: f64, refine_tol: f64) -> Result<ProjectiveChi> {
    require_qubit_a(rho, "projective χ_B")?;
    if grid_step.is_nan() || grid_step <= 0.0 || refine_tol.is_nan() || refine_tol <= 0.0 {
        return Err(Error::InvalidArgument(
            "grid_step and refine_tol must be positive".into(),
        ));
    }
    let obj = ProjectiveObjective::new(rho);
    let n_theta = (FRAC_PI_2 / grid_step).round() as usize;
    let n_phi = ((2.0 * PI / grid_step).round() as usize).max(1);
    let (mut best, mut theta, mut phi) = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..=n_theta {
        let t = (i as f64 * grid_step).min(FRAC_PI_2);
        for j in 0..n_phi {
            let p = j as f64 * grid_step;
            let v = obj.eval(t, p);
            if v > best {
                best = v;
                theta = t;
                phi = p;
            }
        }
    }

    let mut h = grid_step;
    let h_min = (refine_tol / 100.0).sqrt();
    while h > h_min {
        let mut moved = false;
        for (dt, dp) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
            let v = obj.eval(theta + dt, phi + dp);
            if v > best {
                best = v;
                theta += dt;
                phi += dp;
                moved = true;
                break;
            }
        }
        if !moved {
            h *= 0.5;
        }
    }
    Ok(ProjectiveChi {
        value: best.max(0.0),
        angles: ProjectiveAngles::normalized(theta, phi),
    })
}

#[derive(Clone, Debug)]
pub struct PovmSearchResult {
    /// Best Holevo quantity found, in bits. A lower bound on the POVM `χ_B`.
    pub value: f64,
    pub trials: usize,
    pub measurement: MeasurementSet,
}

/// Free parameters of one non-closure element `w [(1−μ)|n⟩⟨n| + μ I/2]`.
#[derive(Clone, Copy, Debug)]
struct ElementParams {
    theta: f64,
    phi: f64,
    weight: f64,
    mixing: f64,
}

impl ElementParams {
    fn random(rng: &mut StateRng) -> Self {
        Self {
            theta: (1.0 - 2.0 * rng.uniform()).acos(),
            phi: 2.0 * PI * rng.uniform(),
            weight: rng.uniform(),
            mixing: 0.5 * rng.uniform(),
        }
    }

    fn perturbed(&self, rng: &mut StateRng, step: f64) -> Self {
        Self {
            theta: self.theta + step * rng.normal(),
            phi: self.phi + step * rng.normal(),
            weight: (self.weight + 0.5 * step * rng.normal()).clamp(0.0, 1.0),
            mixing: (self.mixing + 0.5 * step * rng.normal()).clamp(0.0, 1.0),
        }
    }

    fn element(&self) -> ComplexMatrix {
        let (n, _) = ProjectiveAngles {
            theta: self.theta,
            phi: self.phi,
        }
        .basis();
        let mut e = ComplexMatrix::outer(&n).scale(1.0 - self.mixing);
        e.add_scaled(0.5 * self.mixing, &ComplexMatrix::identity(2));
        e.scale(self.weight)
    }
}

/// Elements for the parameters plus the closure `I − Σ E_i`, or `None` if the
/// closure is not positive semidefinite.
fn povm_elements(params: &[ElementParams]) -> Option<Vec<ComplexMatrix>> {
    let mut elements: Vec<ComplexMatrix> = params.iter().map(ElementParams::element).collect();
    let mut closure = ComplexMatrix::identity(2);
    for e in &elements {
        closure.add_scaled(-1.0, e);
    }
    let min = *hermitian_eigenvalues(&closure).ok()?.last()?;
    if min < -1e-12 {
        return None;
    }
    elements.push(closure);
    Some(elements)
}

const POVM_LOCAL_STEPS: usize = 120;
const POVM_MAX_REDRAWS: usize = 1000;

/// Random-restart local search for a POVM on qubit A maximizing the Holevo term.
///
/// Each candidate has `outcomes − 1` parameterized elements and a closure element
/// that enforces completeness; candidates with a non-PSD closure are rejected.
/// The result is the best value found, not a certified supremum.
pub fn chi_povm_search(rho: &DensityMatrix, outcomes: usize, trials: usize, seed: u64) -> Result<PovmSearchResult> {
    require_qubit_a(rho, "POVM χ_B search")?;
    if !(2..=4).contains(&outcomes) {
        return Err(Error::InvalidArgument(format!(
            "POVM outcomes must be 2..=4 (got {outcomes})"
        )));
    }
    let blocked = BlockedState::new(rho);
    let s_b = von_neumann_entropy(&rho.partial_trace(Subsystem::A));
    let score = |elements: &[ComplexMatrix]| s_b - blocked.average_conditional_entropy(elements);
    let mut rng = StateRng::new(seed);
    let mut best_value = f64::NEG_INFINITY;
    let mut best_elements: Vec<ComplexMatrix> = vec![ComplexMatrix::identity(2)];

    for _ in 0..trials.max(1) {
        let mut start = None;
        for _ in 0..POVM_MAX_REDRAWS {
            let params: Vec<ElementParams> = (0..outcomes - 1).map(|_| ElementParams::random(&mut rng)).collect();
            if let Some(elements) = povm_elements(&params) {
                start = Some((params, elements));
                break;
            }
        }
        let Some((mut params, elements)) = start else { continue };
        let mut value = score(&elements);
        let mut current = elements;
        let mut step = 0.5;
        for _ in 0..POVM_LOCAL_STEPS {
            let proposal: Vec<ElementParams> = params.iter().map(|p| p.perturbed(&mut rng, step)).collect();
            match povm_elements(&proposal) {
                Some(elements) => {
                    let v = score(&elements);
                    if v > value {
                        value = v;
                        params = proposal;
                        current = elements;
                        step = (step * 1.3).min(1.0);
                    } else {
                        step *= 0.85;
                    }
                }
                None => step *= 0.85,
            }
        }
        if value > best_value {
            best_value = value;
            best_elements = current;
        }
    }

    let operators = best_elements.iter().map(psd_sqrt).collect::<Result<Vec<_>>>()?;
    let measurement = MeasurementSet::new(operators)?;
    Ok(PovmSearchResult {
        value: best_value.max(0.0),
        trials: trials.max(1),
        measurement,
    })
}

/// `Ψ` from an already-computed mutual information and REE, clipping noise below zero.
pub fn psi_from_parts(mutual_info: f64, ree: &ReeResult, tol: f64) -> f64 {
    let raw = mutual_info - ree.value;
    if raw < 0.0 && raw >= -tol.max(ree.gap) {
        debug!("Ψ clipped to 0 from raw value {raw:.3e}");
        0.0
    } else {
        raw
    }
}

/// `C₁ = S(σ* ‖ σ*_A ⊗ σ*_B)`
pub fn c1_from_sigma(sigma_star: &DensityMatrix) -> Result<f64> {
    relative_entropy(sigma_star, &sigma_star.marginal_product(), SUPPORT_TOL).map(|v| v.to_f64())
}

/// `C₂ = S(σ* ‖ ρ_A ⊗ ρ_B)`
pub fn c2_from_sigma(rho: &DensityMatrix, sigma_star: &DensityMatrix) -> Result<f64> {
    relative_entropy(sigma_star, &rho.marginal_product(), SUPPORT_TOL).map(|v| v.to_f64())
}

/// `Ψ = I(ρ) − REE(ρ)`
pub fn psi(rho: &DensityMatrix, cfg: &ReeConfig) -> Result<f64> {
    let r = ree(rho, cfg)?;
    Ok(psi_from_parts(mutual_information(rho), &r, cfg.tol))
}

pub fn c1(rho: &DensityMatrix, cfg: &ReeConfig) -> Result<f64> {
    c1_from_sigma(&ree(rho, cfg)?.sigma_star)
}

pub fn c2(rho: &DensityMatrix, cfg: &ReeConfig) -> Result<f64> {
    c2_from_sigma(rho, &ree(rho, cfg)?.sigma_star)
}

#[derive(Clone, Copy, Debug)]
pub struct PovmConfig {
    pub outcomes: usize,
    pub trials: usize,
}

#[derive(Clone, Debug)]
pub struct MeasureConfig {
    pub ree: ReeConfig,
    pub chi_grid_step: f64,
    pub chi_refine_tol: f64,
    /// Run the POVM search when set.
    pub povm: Option<PovmConfig>,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        Self {
            ree: ReeConfig::default(),
            chi_grid_step: CHI_GRID_STEP,
            chi_refine_tol: CHI_REFINE_TOL,
            povm: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MeasureDiagnostics {
    pub ree_gap: f64,
    pub ree_iterations: usize,
    pub ree_converged: bool,
    /// σ* certified separable by PPT (2⊗2, 2⊗3 only).
    pub ree_certified: bool,
    pub ree_support_atoms: usize,
    pub psi_raw: f64,
    pub chi_angles: Option<ProjectiveAngles>,
    pub povm_trials: Option<usize>,
}

/// Every measure for one state, sharing a single nearest-separable-state solve.
#[derive(Clone, Debug, Serialize)]
pub struct MeasureReport {
    pub mutual_info: f64,
    pub ree_value: f64,
    pub psi: f64,
    pub c1: f64,
    pub c2: f64,
    /// `None` when A is not a qubit.
    pub chi_projective: Option<f64>,
    pub chi_povm: Option<f64>,
    pub negativity: f64,
    pub diagnostics: MeasureDiagnostics,
}

pub fn measure_all(rho: &DensityMatrix, cfg: &MeasureConfig) -> Result<MeasureReport> {
    let mutual_info = mutual_information(rho);
    let r = solve_ree(rho, &cfg.ree);
    let psi = psi_from_parts(mutual_info, &r, cfg.ree.tol);
    let c1 = c1_from_sigma(&r.sigma_star)?;
    let c2 = c2_from_sigma(rho, &r.sigma_star)?;
    let chi = if rho.dims().d_a == 2 {
        Some(chi_projective(rho, cfg.chi_grid_step, cfg.chi_refine_tol)?)
    } else {
        None
    };
    let povm = match (cfg.povm, rho.dims().d_a) {
        (Some(p), 2) => Some(chi_povm_search(rho, p.outcomes, p.trials, cfg.ree.seed)?),
        _ => None,
    };
    Ok(MeasureReport {
        mutual_info,
        ree_value: r.value,
        psi,
        c1,
        c2,
        chi_projective: chi.map(|c| c.value),
        chi_povm: povm.as_ref().map(|p| p.value),
        negativity: negativity(rho),
        diagnostics: MeasureDiagnostics {
            ree_gap: r.gap,
            ree_iterations: r.iterations,
            ree_converged: r.converged,
            ree_certified: r.certified,
            ree_support_atoms: r.support_atoms,
            psi_raw: mutual_info - r.value,
            chi_angles: chi.map(|c| c.angles),
            povm_trials: povm.map(|p| p.trials),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{bell_state, classically_correlated, random_density, werner_state};
    use crate::linalg::binary_entropy;

    fn product_state(seed: u64) -> DensityMatrix {
        let a = random_density(BipartiteDims::new(2, 1), 2, seed).unwrap();
        let b = random_density(BipartiteDims::new(2, 1), 2, seed + 1000).unwrap();
        DensityMatrix::product(&a, &b)
    }

    #[test]
    fn completeness_is_enforced() {
        let half = ComplexMatrix::identity(2).scale(0.5);
        assert!(matches!(
            MeasurementSet::new(vec![half.clone()]),
            Err(Error::IncompleteMeasurement { .. })
        ));
        let s = 0.5f64.sqrt();
        assert!(MeasurementSet::new(vec![
            ComplexMatrix::identity(2).scale(s),
            ComplexMatrix::identity(2).scale(s)
        ])
        .is_ok());
        let rho = random_density(BipartiteDims::new(3, 2), 6, 1).unwrap();
        assert!(matches!(
            apply_measurement(&rho, &MeasurementSet::computational(2)),
            Err(Error::DimMismatch(_))
        ));
    }

    #[test]
    fn computational_basis_on_classical_state() {
        let out = apply_measurement(&classically_correlated(), &MeasurementSet::computational(2)).unwrap();
        assert!((out.probs[0] - 0.5).abs() < 1e-15 && (out.probs[1] - 0.5).abs() < 1e-15);
        let p0 = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let p1 = ComplexMatrix::from_diagonal(&[0.0, 1.0]);
        assert!(out.post_states_b[0].as_ref().unwrap().matrix().max_abs_diff(&p0) < 1e-15);
        assert!(out.post_states_b[1].as_ref().unwrap().matrix().max_abs_diff(&p1) < 1e-15);
    }

    #[test]
    fn product_state_post_states_equal_marginal() {
        let rho = product_state(3);
        let rho_b = rho.partial_trace(Subsystem::A);
        let m = MeasurementSet::projective_qubit(ProjectiveAngles { theta: 1.1, phi: 0.4 });
        let out = apply_measurement(&rho, &m).unwrap();
        for s in out.post_states_b.iter().flatten() {
            assert!(s.matrix().max_abs_diff(rho_b.matrix()) < 1e-12);
        }
        assert!(holevo_term(&rho, &m).unwrap() < 1e-12);
    }

    #[test]
    fn werner_z_measurement_post_spectrum() {
        let g = 0.6;
        let out = apply_measurement(&werner_state(g).unwrap(), &MeasurementSet::computational(2)).unwrap();
        for s in out.post_states_b.iter().flatten() {
            let eig = s.eigenvalues();
            assert!((eig[0] - (1.0 + g) / 2.0).abs() < 1e-14);
            assert!((eig[1] - (1.0 - g) / 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_probability_outcome_is_flagged() {
        let zero_zero = DensityMatrix::validate(
            ComplexMatrix::from_diagonal(&[1.0, 0.0, 0.0, 0.0]),
            BipartiteDims::qubits(),
        )
        .unwrap();
        let out = apply_measurement(&zero_zero, &MeasurementSet::computational(2)).unwrap();
        assert!(out.post_states_b[1].is_none());
        assert!(
            holevo_term(&zero_zero, &MeasurementSet::computational(2))
                .unwrap()
                .abs()
                < 1e-15
        );
    }

    #[test]
    fn holevo_examples() {
        let z = MeasurementSet::computational(2);
        assert!((holevo_term(&classically_correlated(), &z).unwrap() - 1.0).abs() < 1e-12);
        for k in 0..12 {
            let angles = ProjectiveAngles::normalized(0.27 * k as f64, 0.61 * k as f64);
            let h = holevo_term(&bell_state(), &MeasurementSet::projective_qubit(angles)).unwrap();
            assert!((h - 1.0).abs() < 1e-10, "{angles:?}: {h}");
        }
    }

    #[test]
    fn chi_projective_examples() {
        let w0 = chi_projective(&werner_state(0.0).unwrap(), CHI_GRID_STEP, CHI_REFINE_TOL).unwrap();
        assert!(w0.value.abs() < 1e-12);
        let bell = chi_projective(&bell_state(), CHI_GRID_STEP, CHI_REFINE_TOL).unwrap();
        assert!((bell.value - 1.0).abs() < 1e-10);
        let w = chi_projective(&werner_state(0.6).unwrap(), CHI_GRID_STEP, CHI_REFINE_TOL).unwrap();
        let closed_form = 1.0 - binary_entropy(0.8);
        assert!((w.value - closed_form).abs() < 1e-10);
        assert!((w.value - 0.278_072).abs() < 1e-6);
        let rho = random_density(BipartiteDims::new(3, 2), 6, 1).unwrap();
        assert!(matches!(
            chi_projective(&rho, CHI_GRID_STEP, CHI_REFINE_TOL),
            Err(Error::UnsupportedDimension(_))
        ));
    }

    #[test]
    fn werner_chi_is_angle_independent() {
        let rho = werner_state(0.7).unwrap();
        let reference = 1.0 - binary_entropy(0.85);
        for k in 0..20 {
            let angles = ProjectiveAngles::normalized(0.157 * k as f64, 0.33 * k as f64);
            let h = holevo_term(&rho, &MeasurementSet::projective_qubit(angles)).unwrap();
            assert!((h - reference).abs() < 1e-12);
        }
    }

    #[test]
    fn angles_normalize_into_range() {
        let a = ProjectiveAngles::normalized(-0.3, 7.0);
        assert!((0.0..=PI).contains(&a.theta) && (0.0..2.0 * PI).contains(&a.phi));
        // same projector pair before and after
        let rho = random_density(BipartiteDims::qubits(), 4, 12).unwrap();
        let raw = ProjectiveObjective::new(&rho).eval(-0.3, 7.0);
        let norm = ProjectiveObjective::new(&rho).eval(a.theta, a.phi);
        assert!((raw - norm).abs() < 1e-12);
    }

    #[test]
    fn povm_search_examples() {
        let p = chi_povm_search(&product_state(9), 3, 20, 1).unwrap();
        assert!(p.value < 1e-9);
        let b = chi_povm_search(&bell_state(), 2, 20, 2).unwrap();
        assert!(b.value <= 1.0 + 1e-9);
        assert!(b.value > 0.9);
        let elements = b.measurement.elements();
        let mut sum = ComplexMatrix::zeros(2, 2);
        for e in &elements {
            sum = &sum + e;
        }
        assert!(sum.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-10);
        assert!(matches!(
            chi_povm_search(&bell_state(), 5, 1, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn psi_examples() {
        let cfg = ReeConfig::default();
        assert!(psi(&product_state(4), &cfg).unwrap().abs() < 1e-6);
        assert!((psi(&bell_state(), &cfg).unwrap() - 1.0).abs() < 1e-4);
        assert!((psi(&classically_correlated(), &cfg).unwrap() - 1.0).abs() < 1e-5);
    }

    #[test]
    fn c1_c2_examples() {
        let cfg = ReeConfig::default();
        let cc = classically_correlated();
        assert!((c1(&cc, &cfg).unwrap() - 1.0).abs() < 2e-4);
        assert!((c1(&bell_state(), &cfg).unwrap() - 1.0).abs() < 1e-3);
        assert!((c2(&bell_state(), &cfg).unwrap() - 1.0).abs() < 1e-3);
        let w = werner_state(0.8).unwrap();
        assert!((c1(&w, &cfg).unwrap() - c2(&w, &cfg).unwrap()).abs() < 1e-3);
    }

    #[test]
    fn measure_all_endpoints() {
        let cfg = MeasureConfig::default();
        let r0 = measure_all(&werner_state(0.0).unwrap(), &cfg).unwrap();
        for v in [
            r0.mutual_info,
            r0.ree_value,
            r0.psi,
            r0.c1,
            r0.c2,
            r0.chi_projective.unwrap(),
        ] {
            assert!(v.abs() < 1e-9, "{v}");
        }
        let r1 = measure_all(&werner_state(1.0).unwrap(), &cfg).unwrap();
        assert!((r1.mutual_info - 2.0).abs() < 1e-9);
        for v in [r1.ree_value, r1.psi, r1.c1, r1.c2, r1.chi_projective.unwrap()] {
            assert!((v - 1.0).abs() < 1e-3, "{v}");
        }
        let r = measure_all(&werner_state(0.5).unwrap(), &cfg).unwrap();
        assert!(r.psi - r.chi_projective.unwrap() > 0.0);
        assert!((r.psi - (r.mutual_info - r.ree_value)).abs() <= 1e-12 || r.psi == 0.0);
    }
}
