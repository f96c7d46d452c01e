//! Bipartite density matrices and their entropic quantities.
//!
//! All entropies are in bits. A [`DensityMatrix`] is immutable once
//! validated; operations return new states.

use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{entropy_bits, hermitian_eig, hermitian_eigenvalues, kron, ComplexMatrix};

/// Tolerance for the Hermitian, PSD and unit-trace checks in [`DensityMatrix::validate`].
pub const STATE_TOL: f64 = 1e-10;
/// Default support tolerance for relative entropy.
pub const SUPPORT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BipartiteDims {
    pub d_a: usize,
    pub d_b: usize,
}

impl BipartiteDims {
    pub fn new(d_a: usize, d_b: usize) -> Self {
        Self { d_a, d_b }
    }

    pub fn qubits() -> Self {
        Self { d_a: 2, d_b: 2 }
    }

    pub fn total(&self) -> usize {
        self.d_a * self.d_b
    }

    pub fn swapped(&self) -> Self {
        Self {
            d_a: self.d_b,
            d_b: self.d_a,
        }
    }

    #[inline]
    pub fn index(&self, a: usize, b: usize) -> usize {
        a * self.d_b + b
    }
}

impl fmt::Display for BipartiteDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}", self.d_a, self.d_b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Entropy-like value in bits; relative entropy may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EntropyValue {
    Finite(f64),
    Infinite,
}

impl EntropyValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            EntropyValue::Finite(v) => Some(v),
            EntropyValue::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, EntropyValue::Infinite)
    }

    /// Value as `f64`, mapping the sentinel to `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }
}

#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: BipartiteDims,
}

impl DensityMatrix {
    /// Checks that `m` is a density matrix on `dims`, absorbing float noise.
    ///
    /// Eigenvalues in `[-1e-10, 0)` are clipped to zero and a trace within
    /// 1e-10 of one is renormalized.
    pub fn validate(m: ComplexMatrix, dims: BipartiteDims) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimMismatch(format!(
                "{}x{} matrix is not square",
                m.rows(),
                m.cols()
            )));
        }
        if m.rows() != dims.total() || dims.d_a == 0 || dims.d_b == 0 {
            return Err(Error::DimMismatch(format!(
                "matrix dimension {} does not match dims {}",
                m.rows(),
                dims
            )));
        }
        if !m.is_finite() {
            return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
        }
        let deviation = m.hermiticity_defect();
        if deviation > STATE_TOL * m.frobenius_norm().max(1.0) {
            return Err(Error::NonHermitian { deviation });
        }
        let mut matrix = m.hermitian_part();
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > STATE_TOL {
            return Err(Error::TraceNotOne { trace });
        }
        let spec = hermitian_eig(&matrix)?;
        let min = spec.min_eigenvalue();
        if min < -STATE_TOL {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
        if min < 0.0 {
            matrix = spec.map(|l| l.max(0.0));
        }
        let trace = matrix.trace().re;
        if trace != 1.0 {
            matrix = matrix.scale(1.0 / trace);
        }
        Ok(Self { matrix, dims })
    }

    /// Wraps a matrix already known to be a valid state (generators, internal products).
    pub(crate) fn from_trusted(matrix: ComplexMatrix, dims: BipartiteDims) -> Self {
        debug_assert_eq!(matrix.rows(), dims.total());
        Self { matrix, dims }
    }

    /// Single-system state, stored with dims `(d, 1)`.
    pub fn single(m: ComplexMatrix) -> Result<Self> {
        let d = m.rows();
        Self::validate(m, BipartiteDims::new(d, 1))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix).expect("validated state is Hermitian")
    }

    /// Product state `a ⊗ b`; both inputs are read as single systems.
    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Self {
        let dims = BipartiteDims::new(a.dim(), b.dim());
        Self::from_trusted(kron(&a.matrix, &b.matrix), dims)
    }

    /// `ρ ⊗ τ` regrouped as a bipartite state of `A₁A₂ | B₁B₂`.
    pub fn tensor_across_cut(&self, other: &DensityMatrix) -> Self {
        let (p, q) = (self.dims, other.dims);
        let dims = BipartiteDims::new(p.d_a * q.d_a, p.d_b * q.d_b);
        let full = kron(&self.matrix, &other.matrix);
        // (a1, a2, b1, b2) -> row of kron in (a1 b1)(a2 b2) order
        let source = |k: usize| {
            let (a, b) = (k / dims.d_b, k % dims.d_b);
            let (a1, a2) = (a / q.d_a, a % q.d_a);
            let (b1, b2) = (b / q.d_b, b % q.d_b);
            p.index(a1, b1) * q.total() + q.index(a2, b2)
        };
        let m = ComplexMatrix::from_fn(dims.total(), dims.total(), |i, j| full[(source(i), source(j))]);
        Self::from_trusted(m, dims)
    }

    /// Trace out `traced`, returning the reduced state of the other party.
    pub fn partial_trace(&self, traced: Subsystem) -> DensityMatrix {
        let BipartiteDims { d_a, d_b } = self.dims;
        let m = &self.matrix;
        let reduced = match traced {
            Subsystem::B => {
                ComplexMatrix::from_fn(d_a, d_a, |i, j| (0..d_b).map(|b| m[(i * d_b + b, j * d_b + b)]).sum())
            }
            Subsystem::A => {
                ComplexMatrix::from_fn(d_b, d_b, |i, j| (0..d_a).map(|a| m[(a * d_b + i, a * d_b + j)]).sum())
            }
        };
        let d = reduced.rows();
        DensityMatrix::from_trusted(reduced, BipartiteDims::new(d, 1))
    }

    /// ρ_A ⊗ ρ_B built from this state's own marginals.
    pub fn marginal_product(&self) -> DensityMatrix {
        let a = self.partial_trace(Subsystem::B);
        let b = self.partial_trace(Subsystem::A);
        DensityMatrix::product(&a, &b)
    }

    /// Transposes the indices of `which`. The result is Hermitian with unit trace
    /// but need not be positive.
    pub fn partial_transpose(&self, which: Subsystem) -> ComplexMatrix {
        partial_transpose_matrix(&self.matrix, self.dims, which)
    }

    /// Exchanges the roles of A and B.
    pub fn swap_subsystems(&self) -> DensityMatrix {
        let dims = self.dims;
        let swapped = dims.swapped();
        let n = dims.total();
        // new index (b, a) -> old index (a, b)
        let old = |k: usize| {
            let (b, a) = (k / dims.d_a, k % dims.d_a);
            dims.index(a, b)
        };
        let m = ComplexMatrix::from_fn(n, n, |i, j| self.matrix[(old(i), old(j))]);
        DensityMatrix::from_trusted(m, swapped)
    }

    /// `(U_A ⊗ U_B) ρ (U_A ⊗ U_B)†`
    pub fn apply_local_unitary(&self, u_a: &ComplexMatrix, u_b: &ComplexMatrix) -> Result<DensityMatrix> {
        if u_a.rows() != self.dims.d_a || !u_a.is_square() || u_b.rows() != self.dims.d_b || !u_b.is_square() {
            return Err(Error::DimMismatch(format!(
                "unitaries {}x{} and {}x{} do not act on {}",
                u_a.rows(),
                u_a.cols(),
                u_b.rows(),
                u_b.cols(),
                self.dims
            )));
        }
        for u in [u_a, u_b] {
            let deviation = u.unitarity_defect();
            if deviation > STATE_TOL {
                return Err(Error::NotUnitary { deviation });
            }
        }
        let u = kron(u_a, u_b);
        let out = &(&u * &self.matrix) * &u.adjoint();
        Ok(DensityMatrix::from_trusted(out.hermitian_part(), self.dims))
    }

    /// Reads the JSON state format `{"d_a", "d_b", "re", "im"}` and validates it.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: StateFile = serde_json::from_str(s)?;
        file.into_state()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn to_state_file(&self) -> StateFile {
        let n = self.dim();
        let re = (0..n)
            .map(|i| (0..n).map(|j| self.matrix[(i, j)].re).collect())
            .collect();
        let im = (0..n)
            .map(|i| (0..n).map(|j| self.matrix[(i, j)].im).collect())
            .collect();
        StateFile {
            d_a: self.dims.d_a,
            d_b: self.dims.d_b,
            re,
            im,
        }
    }
}

pub(crate) fn partial_transpose_matrix(m: &ComplexMatrix, dims: BipartiteDims, which: Subsystem) -> ComplexMatrix {
    let d_b = dims.d_b;
    let n = dims.total();
    ComplexMatrix::from_fn(n, n, |i, j| {
        let (a, b) = (i / d_b, i % d_b);
        let (a2, b2) = (j / d_b, j % d_b);
        match which {
            Subsystem::B => m[(a * d_b + b2, a2 * d_b + b)],
            Subsystem::A => m[(a2 * d_b + b, a * d_b + b2)],
        }
    })
}

/// On-disk state format. `re` and `im` are row-major real and imaginary parts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub d_a: usize,
    pub d_b: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl StateFile {
    pub fn into_state(self) -> Result<DensityMatrix> {
        let n = self.re.len();
        if self.im.len() != n || self.re.iter().chain(&self.im).any(|row| row.len() != n) {
            return Err(Error::DimMismatch(
                "\"re\" and \"im\" must both be square arrays of the same size".into(),
            ));
        }
        let m = ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(self.re[i][j], self.im[i][j]));
        DensityMatrix::validate(m, BipartiteDims::new(self.d_a, self.d_b))
    }
}

/// Von Neumann entropy `-Tr ρ log₂ ρ`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_bits(&rho.eigenvalues())
}

/// `S(ρ‖σ) = Tr ρ (log₂ρ − log₂σ)`.
///
/// Returns [`EntropyValue::Infinite`] when ρ puts more than `support_tol` weight
/// outside the support of σ (eigenvalues of σ at or below `support_tol`).
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix, support_tol: f64) -> Result<EntropyValue> {
    if rho.dims() != sigma.dims() {
        return Err(Error::DimMismatch(format!(
            "relative entropy between {} and {} states",
            rho.dims(),
            sigma.dims()
        )));
    }
    let neg_entropy = -von_neumann_entropy(rho);
    let spec = hermitian_eig(sigma.matrix())?;
    let mut cross = 0.0;
    let mut outside = 0.0;
    for (k, &l) in spec.eigenvalues.iter().enumerate() {
        let weight = rho.matrix().quadratic_form(&spec.eigenvector(k)).re;
        if l > support_tol {
            cross += weight * l.log2();
        } else {
            outside += weight;
        }
    }
    if outside > support_tol {
        return Ok(EntropyValue::Infinite);
    }
    Ok(EntropyValue::Finite((neg_entropy - cross).max(0.0)))
}

/// `I(A:B) = S(ρ_A) + S(ρ_B) − S(ρ_AB)`.
pub fn mutual_information(rho: &DensityMatrix) -> f64 {
    let s_a = von_neumann_entropy(&rho.partial_trace(Subsystem::B));
    let s_b = von_neumann_entropy(&rho.partial_trace(Subsystem::A));
    (s_a + s_b - von_neumann_entropy(rho)).max(0.0)
}

/// Mutual information as `S(ρ_AB ‖ ρ_A ⊗ ρ_B)`; agrees with [`mutual_information`].
pub fn mutual_information_relative(rho: &DensityMatrix) -> Result<f64> {
    let product = rho.marginal_product();
    let value = relative_entropy(rho, &product, SUPPORT_TOL)?;
    // supp ρ ⊆ supp ρ_A ⊗ supp ρ_B always holds
    Ok(value.to_f64())
}
