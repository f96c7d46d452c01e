//! Named states and seeded random ensembles.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
//! uniform doubles via `rand`'s 53-bit conversion, and normals via Box–Muller.
//! A given seed reproduces the same state bit for bit.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix};
use crate::state::{BipartiteDims, DensityMatrix};

/// Seedable source of uniform and Gaussian variates.
pub struct StateRng {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl StateRng {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    pub fn uniform_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal via Box–Muller; the second variate of each pair is cached.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.uniform(); // (0, 1]
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (2.0 * PI * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }

    /// Complex normal with `E|z|² = 1`.
    pub fn complex_normal(&mut self) -> Complex64 {
        let re = self.normal();
        let im = self.normal();
        Complex64::new(re, im) * FRAC_1_SQRT_2
    }

    /// Haar-random unit vector in `C^d`.
    pub fn unit_vector(&mut self, d: usize) -> Vec<Complex64> {
        loop {
            let v: Vec<Complex64> = (0..d).map(|_| self.complex_normal()).collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-12 {
                return v.into_iter().map(|z| z / norm).collect();
            }
        }
    }
}

fn bell_vector() -> Vec<Complex64> {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let z = Complex64::new(0.0, 0.0);
    vec![h, z, z, h]
}

/// `(1−γ)/4 · I₄ + γ |ψ⁺⟩⟨ψ⁺|`
pub fn werner_state(gamma: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::GammaOutOfRange(gamma));
    }
    let mut m = ComplexMatrix::identity(4).scale((1.0 - gamma) / 4.0);
    m.add_scaled(gamma, &ComplexMatrix::outer(&bell_vector()));
    Ok(DensityMatrix::from_trusted(m, BipartiteDims::qubits()))
}

/// `|ψ⁺⟩⟨ψ⁺|` with `|ψ⁺⟩ = (|00⟩ + |11⟩)/√2`.
pub fn bell_state() -> DensityMatrix {
    DensityMatrix::from_trusted(ComplexMatrix::outer(&bell_vector()), BipartiteDims::qubits())
}

/// `½(|00⟩⟨00| + |11⟩⟨11|)`
pub fn classically_correlated() -> DensityMatrix {
    DensityMatrix::from_trusted(
        ComplexMatrix::from_diagonal(&[0.5, 0.0, 0.0, 0.5]),
        BipartiteDims::qubits(),
    )
}

/// `G G† / Tr(G G†)` with `G` a `d × rank` complex Gaussian matrix.
pub fn random_density(dims: BipartiteDims, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let n = dims.total();
    if rank == 0 || rank > n {
        return Err(Error::RankOutOfRange { rank, dim: n });
    }
    let mut rng = StateRng::new(seed);
    let g = ComplexMatrix::from_fn(n, rank, |_, _| rng.complex_normal());
    let gg = &g * &g.adjoint();
    let trace = gg.trace().re;
    Ok(DensityMatrix::from_trusted(
        gg.hermitian_part().scale(1.0 / trace),
        dims,
    ))
}

/// `|a⟩⟨a| ⊗ |b⟩⟨b|` with Haar-random unit vectors.
pub fn random_pure_product(dims: BipartiteDims, seed: u64) -> DensityMatrix {
    let mut rng = StateRng::new(seed);
    let a = rng.unit_vector(dims.d_a);
    let b = rng.unit_vector(dims.d_b);
    let m = kron(&ComplexMatrix::outer(&a), &ComplexMatrix::outer(&b));
    DensityMatrix::from_trusted(m, dims)
}

/// Haar-random unitary of size `d` from the QR decomposition of a complex Gaussian
/// matrix. Gram–Schmidt yields a positive real diagonal in R, which is the phase
/// correction that makes the distribution Haar.
pub fn haar_unitary(d: usize, rng: &mut StateRng) -> ComplexMatrix {
    loop {
        let g = ComplexMatrix::from_fn(d, d, |_, _| rng.complex_normal());
        let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
        let mut degenerate = false;
        for j in 0..d {
            let mut v = g.column(j);
            // two passes of modified Gram–Schmidt for orthogonality at 1e-15
            for _ in 0..2 {
                for q in &cols {
                    let proj: Complex64 = q.iter().zip(&v).map(|(qi, vi)| qi.conj() * vi).sum();
                    for (vi, qi) in v.iter_mut().zip(q) {
                        *vi -= proj * qi;
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-10 {
                degenerate = true;
                break;
            }
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
        if !degenerate {
            return ComplexMatrix::from_fn(d, d, |i, j| cols[j][i]);
        }
    }
}

/// Independent Haar unitaries `(U_A, U_B)` of sizes `d_a` and `d_b`.
pub fn random_local_unitary(dims: BipartiteDims, seed: u64) -> (ComplexMatrix, ComplexMatrix) {
    let mut rng = StateRng::new(seed);
    let u_a = haar_unitary(dims.d_a, &mut rng);
    let u_b = haar_unitary(dims.d_b, &mut rng);
    (u_a, u_b)
}
