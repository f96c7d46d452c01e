//! Entanglement side of the split: partial-transpose tests and the relative
//! entropy of entanglement.
//!
//! The REE is `min_σ S(ρ‖σ)` over separable σ. The separable set is handled
//! as the convex hull of pure product states `|a⟩⟨a| ⊗ |b⟩⟨b|`, which makes a
//! Frank–Wolfe method natural: the linear subproblem is a maximization of
//! `⟨a⊗b| G |a⊗b⟩`, solved by alternating top-eigenvector updates
//! ([`product_lmo`]). Each outer iteration adds the oracle's atom with an
//! exact line search and then refines all atoms collected so far (weights and
//! vectors together) with L-BFGS, which keeps the atom count small. The
//! reported gap `⟨∇f, σ − s⟩` bounds
//! `f(σ) − REE` from above whenever the oracle found the global maximum.

use std::f64::consts::LN_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::families::StateRng;
use crate::linalg::{hermitian_eig, hermitian_eigenvalues, kron_vec, ComplexMatrix};
use crate::state::{von_neumann_entropy, BipartiteDims, DensityMatrix, Subsystem};

/// Partial-transpose eigenvalues at or above `-PPT_TOL` count as non-negative.
pub const PPT_TOL: f64 = 1e-10;

const LMO_VALUE_TOL: f64 = 1e-12;
const LMO_MAX_ALTERNATIONS: usize = 200;
const LINE_SEARCH_TOL: f64 = 1e-10;
const GOLDEN: f64 = 0.618_033_988_749_894_9;
/// Eigenvalues of an iterate at or below this are treated as exactly zero.
const NULL_EIGENVALUE: f64 = 1e-14;
const LBFGS_MEMORY: usize = 10;
const ARMIJO: f64 = 1e-4;
/// Relative decrease below which a refinement step counts as a stall.
const REFINE_STALL: f64 = 1e-15;
/// Atoms lighter than this are dropped after refinement.
const DROP_WEIGHT: f64 = 1e-15;
/// Weight given to a new atom when the line search returns no progress.
const MIN_NEW_WEIGHT: f64 = 1e-6;
/// States whose top eigenvalue is within this of one are treated as pure.
const PURE_TOL: f64 = 1e-10;

fn partial_transpose_eigenvalues(rho: &DensityMatrix) -> Vec<f64> {
    hermitian_eigenvalues(&rho.partial_transpose(Subsystem::B)).expect("partial transpose is Hermitian")
}

/// Peres–Horodecki test: the partial transpose has no eigenvalue below `-1e-10`.
///
/// Equivalent to separability for 2⊗2 and 2⊗3.
pub fn is_ppt(rho: &DensityMatrix) -> bool {
    partial_transpose_eigenvalues(rho).last().is_none_or(|&l| l >= -PPT_TOL)
}

/// Twice the magnitude of the negative partial-transpose spectrum.
pub fn negativity(rho: &DensityMatrix) -> f64 {
    2.0 * partial_transpose_eigenvalues(rho)
        .into_iter()
        .filter(|&l| l < -PPT_TOL)
        .map(f64::abs)
        .sum::<f64>()
}

/// Unit vectors `a ∈ C^{d_a}` and `b ∈ C^{d_b}` describing the product state `|a⊗b⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductVectorPair {
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
}

impl ProductVectorPair {
    pub fn vector(&self) -> Vec<Complex64> {
        kron_vec(&self.a, &self.b)
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.vector())
    }
}

#[derive(Clone, Debug)]
pub struct LmoResult {
    pub pair: ProductVectorPair,
    /// `⟨a⊗b| g |a⊗b⟩`
    pub value: f64,
}

/// `M_A = (I ⊗ ⟨b|) g (I ⊗ |b⟩)`
fn contract_b(g: &ComplexMatrix, dims: BipartiteDims, b: &[Complex64]) -> ComplexMatrix {
    let d_b = dims.d_b;
    ComplexMatrix::from_fn(dims.d_a, dims.d_a, |i, j| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, bx) in b.iter().enumerate() {
            for (y, by) in b.iter().enumerate() {
                acc += bx.conj() * g[(i * d_b + x, j * d_b + y)] * by;
            }
        }
        acc
    })
}

/// `M_B = (⟨a| ⊗ I) g (|a⟩ ⊗ I)`
fn contract_a(g: &ComplexMatrix, dims: BipartiteDims, a: &[Complex64]) -> ComplexMatrix {
    let d_b = dims.d_b;
    ComplexMatrix::from_fn(d_b, d_b, |x, y| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, ai) in a.iter().enumerate() {
            for (j, aj) in a.iter().enumerate() {
                acc += ai.conj() * g[(i * d_b + x, j * d_b + y)] * aj;
            }
        }
        acc
    })
}

fn top_eigenpair(m: &ComplexMatrix) -> (f64, Vec<Complex64>) {
    let spec = hermitian_eig(&m.hermitian_part()).expect("contracted operator is Hermitian");
    (spec.eigenvalues[0], spec.eigenvector(0))
}

/// Alternating maximization of `⟨a⊗b| g |a⊗b⟩` from a starting `a`.
fn alternate(g: &ComplexMatrix, dims: BipartiteDims, start_a: Vec<Complex64>) -> LmoResult {
    let mut a = start_a;
    let (mut value, mut b) = top_eigenpair(&contract_a(g, dims, &a));
    for _ in 0..LMO_MAX_ALTERNATIONS {
        let (_, new_a) = top_eigenpair(&contract_b(g, dims, &b));
        a = new_a;
        let (new_value, new_b) = top_eigenpair(&contract_a(g, dims, &a));
        b = new_b;
        let change = (new_value - value).abs();
        value = new_value;
        if change < LMO_VALUE_TOL {
            break;
        }
    }
    LmoResult {
        pair: ProductVectorPair { a, b },
        value,
    }
}

/// Locally optimal maximizer of `⟨a⊗b| g |a⊗b⟩` over product vectors, best of
/// `restarts` random starts.
pub fn product_lmo(g: &ComplexMatrix, dims: BipartiteDims, restarts: usize, seed: u64) -> LmoResult {
    let mut rng = StateRng::new(seed);
    product_lmo_with(g, dims, restarts, &mut rng, None)
}

/// As [`product_lmo`], drawing starts from `rng` and optionally trying `warm` first.
///
/// Ties within 1e-12 keep the earlier atom (the warm start wins ties).
pub fn product_lmo_with(
    g: &ComplexMatrix,
    dims: BipartiteDims,
    restarts: usize,
    rng: &mut StateRng,
    warm: Option<&ProductVectorPair>,
) -> LmoResult {
    assert_eq!(g.rows(), dims.total(), "operator does not match dims");
    let mut best: Option<LmoResult> = warm.map(|w| alternate(g, dims, w.a.clone()));
    for _ in 0..restarts.max(1) {
        let candidate = alternate(g, dims, rng.unit_vector(dims.d_a));
        match &best {
            Some(b) if candidate.value <= b.value + LMO_VALUE_TOL => {}
            _ => best = Some(candidate),
        }
    }
    best.expect("at least one start")
}

#[derive(Clone, Debug)]
pub struct ReeConfig {
    /// Stop once the Frank–Wolfe gap is at or below this (bits).
    pub tol: f64,
    pub max_iters: usize,
    pub seed: u64,
    /// Random starts per oracle call, in addition to the warm start.
    pub lmo_restarts: usize,
    /// L-BFGS steps refining the atoms after each outer iteration.
    pub refine_steps: usize,
}

impl Default for ReeConfig {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            max_iters: 5000,
            seed: 0,
            lmo_restarts: 20,
            refine_steps: 200,
        }
    }
}

impl ReeConfig {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }
}

#[derive(Clone, Debug)]
pub struct ReeResult {
    /// `S(ρ‖σ*)` in bits.
    pub value: f64,
    /// The nearest separable state found.
    pub sigma_star: DensityMatrix,
    /// Frank–Wolfe duality gap at `sigma_star`.
    pub gap: f64,
    pub iterations: usize,
    pub converged: bool,
    /// True when σ* is PPT in a dimension where PPT implies separability
    /// (2⊗2, 2⊗3, 3⊗2). Otherwise the value is an upper bound with gap.
    pub certified: bool,
    /// Number of product atoms carrying weight in σ*.
    pub support_atoms: usize,
}

impl ReeResult {
    /// Lower bound on the true REE implied by the gap certificate.
    pub fn lower_bound(&self) -> f64 {
        (self.value - self.gap).max(0.0)
    }
}

/// `f(σ) = S(ρ‖σ)` together with its gradient in bits.
struct Objective<'a> {
    rho: &'a ComplexMatrix,
    rho_log_rho: f64,
}

impl<'a> Objective<'a> {
    fn new(rho: &'a DensityMatrix) -> Self {
        Self {
            rho: rho.matrix(),
            rho_log_rho: -von_neumann_entropy(rho),
        }
    }

    fn value(&self, sigma: &ComplexMatrix) -> f64 {
        let spec = match hermitian_eig(sigma) {
            Ok(s) => s,
            Err(_) => return f64::INFINITY,
        };
        let mut cross = 0.0;
        for (k, &l) in spec.eigenvalues.iter().enumerate() {
            let w = self.rho.quadratic_form(&spec.eigenvector(k)).re;
            if l > NULL_EIGENVALUE {
                cross += w * l.log2();
            } else if w > 1e-12 {
                return f64::INFINITY;
            }
        }
        self.rho_log_rho - cross
    }

    /// Value and `∇f = −D log₂(σ)[ρ]`, the Fréchet derivative evaluated in σ's
    /// eigenbasis with divided differences of `ln`.
    fn value_and_gradient(&self, sigma: &ComplexMatrix) -> (f64, ComplexMatrix) {
        let spec = hermitian_eig(sigma).expect("iterate is Hermitian");
        let n = sigma.rows();
        let v = &spec.eigenvectors;
        let lam = &spec.eigenvalues;
        let rot = &(&v.adjoint() * self.rho) * v;
        let mut cross = 0.0;
        for (k, &l) in lam.iter().enumerate() {
            let w = rot[(k, k)].re;
            if l > NULL_EIGENVALUE {
                cross += w * l.log2();
            } else if w > 1e-12 {
                cross = f64::NEG_INFINITY;
            }
        }
        let value = self.rho_log_rho - cross;
        let weighted = ComplexMatrix::from_fn(n, n, |i, j| {
            let (li, lj) = (lam[i], lam[j]);
            if li <= NULL_EIGENVALUE || lj <= NULL_EIGENVALUE {
                return Complex64::new(0.0, 0.0);
            }
            rot[(i, j)] * log_divided_difference(li, lj)
        });
        let grad = (&(v * &weighted) * &v.adjoint()).scale(-1.0 / LN_2);
        (value, grad.hermitian_part())
    }
}

/// `(ln x − ln y) / (x − y)`, and `1/x` on the diagonal.
fn log_divided_difference(x: f64, y: f64) -> f64 {
    let r = (x - y) / y;
    if r.abs() < 1e-8 {
        (1.0 - 0.5 * r + r * r / 3.0) / y
    } else {
        r.ln_1p() / (x - y)
    }
}

/// Weighted product atoms `σ = Σ_k |u_k⟩⟨u_k| ⊗ |v_k⟩⟨v_k| / Z` with unnormalized
/// vectors, so weights and directions are refined together.
struct Atoms {
    dims: BipartiteDims,
    u: Vec<Vec<Complex64>>,
    v: Vec<Vec<Complex64>>,
}

impl Atoms {
    /// The computational product basis with equal weights, i.e. `I/d`.
    fn maximally_mixed(dims: BipartiteDims) -> Self {
        let n = dims.total() as f64;
        let basis = |d: usize, i: usize, scale: f64| {
            (0..d)
                .map(|k| Complex64::new(if k == i { scale } else { 0.0 }, 0.0))
                .collect::<Vec<_>>()
        };
        let (mut u, mut v) = (Vec::new(), Vec::new());
        for i in 0..dims.d_a {
            for j in 0..dims.d_b {
                u.push(basis(dims.d_a, i, n.sqrt().recip()));
                v.push(basis(dims.d_b, j, 1.0));
            }
        }
        Self { dims, u, v }
    }

    /// `Σ_k s_k² |a_k⟩⟨a_k| ⊗ |b_k⟩⟨b_k|` from the Schmidt decomposition of a
    /// pure `ρ`, the dephased state that attains the REE of a pure state.
    /// `None` when `ρ` is mixed.
    fn schmidt_dephased(rho: &DensityMatrix) -> Option<Self> {
        let dims = rho.dims();
        let spec = hermitian_eig(rho.matrix()).ok()?;
        if spec.eigenvalues[0] < 1.0 - PURE_TOL {
            return None;
        }
        let psi = spec.eigenvector(0);
        let c = ComplexMatrix::from_fn(dims.d_a, dims.d_b, |i, j| psi[dims.index(i, j)]);
        let reduced = hermitian_eig(&(&c * &c.adjoint()).hermitian_part()).ok()?;
        let (mut u, mut v) = (Vec::new(), Vec::new());
        for k in 0..dims.d_a {
            let a = reduced.eigenvector(k);
            let b: Vec<Complex64> = (0..dims.d_b)
                .map(|j| (0..dims.d_a).map(|i| a[i].conj() * c[(i, j)]).sum())
                .collect();
            if norm_sqr(&b) > DROP_WEIGHT {
                u.push(a);
                v.push(b);
            }
        }
        let mut atoms = Self { dims, u, v };
        atoms.tidy();
        Some(atoms)
    }

    fn len(&self) -> usize {
        self.u.len()
    }

    fn weight(&self, k: usize) -> f64 {
        norm_sqr(&self.u[k]) * norm_sqr(&self.v[k])
    }

    /// Unnormalized sum `M` and its trace `Z`.
    fn unnormalized(&self) -> (ComplexMatrix, f64) {
        let n = self.dims.total();
        let mut m = ComplexMatrix::zeros(n, n);
        let mut z = 0.0;
        for (u, v) in self.u.iter().zip(&self.v) {
            let psi = kron_vec(u, v);
            z += norm_sqr(&psi);
            m.add_scaled(1.0, &ComplexMatrix::outer(&psi));
        }
        (m, z)
    }

    fn sigma(&self) -> ComplexMatrix {
        let (m, z) = self.unnormalized();
        m.scale(1.0 / z).hermitian_part()
    }

    fn pack(&self) -> Vec<f64> {
        let mut x = Vec::new();
        for (u, v) in self.u.iter().zip(&self.v) {
            for c in u.iter().chain(v) {
                x.push(c.re);
                x.push(c.im);
            }
        }
        x
    }

    fn unpack(&mut self, x: &[f64]) {
        let mut it = x.chunks_exact(2).map(|p| Complex64::new(p[0], p[1]));
        for (u, v) in self.u.iter_mut().zip(self.v.iter_mut()) {
            for c in u.iter_mut().chain(v.iter_mut()) {
                *c = it.next().expect("length matches");
            }
        }
    }

    /// Mixes in the atom `a⊗b` with weight `t`.
    fn push_mixed(&mut self, pair: &ProductVectorPair, t: f64) {
        let z = self.unnormalized().1;
        let keep = ((1.0 - t) / z).sqrt();
        for u in self.u.iter_mut() {
            u.iter_mut().for_each(|c| *c *= keep);
        }
        self.u.push(pair.a.iter().map(|c| c * t.sqrt()).collect());
        self.v.push(pair.b.clone());
    }

    /// Moves each atom's norm into `u`, normalizes the total weight to one and
    /// drops atoms that carry no weight.
    fn tidy(&mut self) {
        let z = self.unnormalized().1;
        for (u, v) in self.u.iter_mut().zip(self.v.iter_mut()) {
            let nv = norm_sqr(v).sqrt();
            if nv > 0.0 {
                v.iter_mut().for_each(|c| *c /= nv);
                u.iter_mut().for_each(|c| *c *= nv / z.sqrt());
            }
        }
        let mut k = 0;
        while k < self.len() && self.len() > 1 {
            if self.weight(k) < DROP_WEIGHT {
                self.u.swap_remove(k);
                self.v.swap_remove(k);
            } else {
                k += 1;
            }
        }
    }
}

fn norm_sqr(x: &[Complex64]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum()
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// `f` and its gradient with respect to the packed atom vectors.
fn atom_value_and_gradient(obj: &Objective, atoms: &Atoms) -> (f64, Vec<f64>) {
    let (m, z) = atoms.unnormalized();
    let sigma = m.scale(1.0 / z).hermitian_part();
    let (f, g) = obj.value_and_gradient(&sigma);
    if !f.is_finite() {
        return (f64::INFINITY, Vec::new());
    }
    // dσ = (dM − σ dZ)/Z, so df = ⟨(G − ⟨G,σ⟩ I)/Z, dM⟩.
    let shift = g.inner_real(&sigma);
    let mut h = g;
    for i in 0..h.rows() {
        h[(i, i)] -= shift;
    }
    let h = h.scale(1.0 / z);
    let mut grad = Vec::with_capacity(2 * atoms.len() * (atoms.dims.d_a + atoms.dims.d_b));
    for (u, v) in atoms.u.iter().zip(&atoms.v) {
        let hu = contract_b(&h, atoms.dims, v);
        let hv = contract_a(&h, atoms.dims, u);
        for (op, x) in [(hu, u), (hv, v)] {
            for i in 0..x.len() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, xj) in x.iter().enumerate() {
                    acc += op[(i, j)] * xj;
                }
                grad.push(2.0 * acc.re);
                grad.push(2.0 * acc.im);
            }
        }
    }
    (f, grad)
}

/// L-BFGS on the atom vectors with a backtracking Armijo search; infinite
/// objective values (support loss) count as failed trial steps.
fn refine(obj: &Objective, atoms: &mut Atoms, max_steps: usize) {
    let mut x = atoms.pack();
    let (mut f, mut g) = atom_value_and_gradient(obj, atoms);
    if !f.is_finite() {
        return;
    }
    let mut history: Vec<(Vec<f64>, Vec<f64>, f64)> = Vec::new();
    let mut stalls = 0;
    for _ in 0..max_steps {
        // two-loop recursion
        let mut d: Vec<f64> = g.iter().map(|c| -c).collect();
        let mut alphas = Vec::with_capacity(history.len());
        for (s, y, rho) in history.iter().rev() {
            let a = rho * dot(s, &d);
            d.iter_mut().zip(y).for_each(|(di, yi)| *di -= a * yi);
            alphas.push(a);
        }
        let gamma = match history.last() {
            Some((s, y, _)) => dot(s, y) / dot(y, y),
            None => 1e-2 / dot(&g, &g).sqrt().max(1e-300),
        };
        d.iter_mut().for_each(|di| *di *= gamma);
        for ((s, y, rho), a) in history.iter().zip(alphas.iter().rev()) {
            let b = rho * dot(y, &d);
            d.iter_mut().zip(s).for_each(|(di, si)| *di += (a - b) * si);
        }
        let mut slope = dot(&g, &d);
        if slope >= 0.0 {
            history.clear();
            d = g.iter().map(|c| -c * 1e-2 / dot(&g, &g).sqrt().max(1e-300)).collect();
            slope = dot(&g, &d);
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let trial: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + step * di).collect();
            atoms.unpack(&trial);
            let (ft, gt) = atom_value_and_gradient(obj, atoms);
            if ft.is_finite() && ft <= f + ARMIJO * step * slope {
                accepted = Some((trial, ft, gt));
                break;
            }
            step *= 0.5;
        }
        let Some((x_new, f_new, g_new)) = accepted else {
            atoms.unpack(&x);
            break;
        };
        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-300 {
            if history.len() == LBFGS_MEMORY {
                history.remove(0);
            }
            history.push((s, y, 1.0 / sy));
        }
        let decrease = f - f_new;
        x = x_new;
        f = f_new;
        g = g_new;
        if decrease <= REFINE_STALL * f.abs().max(1.0) {
            stalls += 1;
            if stalls >= 3 {
                break;
            }
        } else {
            stalls = 0;
        }
    }
    atoms.unpack(&x);
}

/// Minimizes `f(σ + t d)` over `t ∈ [0, t_max]` by golden-section search,
/// also comparing the endpoint.
fn line_search(obj: &Objective, sigma: &ComplexMatrix, dir: &ComplexMatrix, t_max: f64, f0: f64) -> (f64, f64) {
    let eval = |t: f64| {
        let mut s = sigma.clone();
        s.add_scaled(t, dir);
        obj.value(&s)
    };
    let tol = LINE_SEARCH_TOL * t_max;
    let (mut lo, mut hi) = (0.0, t_max);
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let mut f1 = eval(x1);
    let mut f2 = eval(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = eval(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = eval(x2);
        }
    }
    let (mut t, mut f) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    let f_end = eval(t_max);
    if f_end <= f {
        t = t_max;
        f = f_end;
    }
    if f < f0 {
        (t, f)
    } else {
        (0.0, f0)
    }
}

/// Relative entropy of entanglement by Frank–Wolfe over product states.
///
/// Always returns the best iterate; `converged` reports whether the gap
/// reached `cfg.tol`. See [`ree`] for the variant that errors instead.
pub fn solve_ree(rho: &DensityMatrix, cfg: &ReeConfig) -> ReeResult {
    let dims = rho.dims();
    let obj = Objective::new(rho);
    let mut rng = StateRng::new(cfg.seed);
    let mut atoms = Atoms::schmidt_dephased(rho).unwrap_or_else(|| Atoms::maximally_mixed(dims));
    let mut warm: Option<ProductVectorPair> = None;
    let mut iterations = 0;
    let mut converged = false;
    let mut gap;

    loop {
        let sigma = atoms.sigma();
        let (f, grad) = obj.value_and_gradient(&sigma);
        let lmo = product_lmo_with(&grad.scale(-1.0), dims, cfg.lmo_restarts, &mut rng, warm.as_ref());
        gap = (grad.inner_real(&sigma) + lmo.value).max(0.0);
        if gap <= cfg.tol {
            converged = true;
            break;
        }
        if iterations >= cfg.max_iters {
            break;
        }
        iterations += 1;

        let dir = &lmo.pair.projector() - &sigma;
        let (t, _) = line_search(&obj, &sigma, &dir, 1.0, f);
        atoms.push_mixed(&lmo.pair, t.max(MIN_NEW_WEIGHT));
        warm = Some(lmo.pair);

        refine(&obj, &mut atoms, cfg.refine_steps);
        atoms.tidy();
    }

    let sigma_matrix = atoms.sigma();
    let sigma_star = DensityMatrix::validate(sigma_matrix.clone(), dims)
        .unwrap_or_else(|_| DensityMatrix::from_trusted(sigma_matrix, dims));
    let value = obj.value(sigma_star.matrix()).max(0.0);
    let certified = is_ppt(&sigma_star) && matches!((dims.d_a, dims.d_b), (2, 2) | (2, 3) | (3, 2));
    ReeResult {
        value,
        sigma_star,
        gap,
        iterations,
        converged,
        certified,
        support_atoms: atoms.len(),
    }
}

/// Relative entropy of entanglement; errors with [`Error::NotConverged`] (carrying
/// the best result) if the gap did not reach `cfg.tol` within `cfg.max_iters`.
pub fn ree(rho: &DensityMatrix, cfg: &ReeConfig) -> Result<ReeResult> {
    let result = solve_ree(rho, cfg);
    if result.converged {
        Ok(result)
    } else {
        Err(Error::NotConverged(Box::new(result)))
    }
}

/// The minimizing separable state σ* of [`ree`].
pub fn closest_separable_state(rho: &DensityMatrix, cfg: &ReeConfig) -> Result<DensityMatrix> {
    ree(rho, cfg).map(|r| r.sigma_star)
}
