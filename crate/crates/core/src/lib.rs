//! Classical and quantum correlation measures for bipartite quantum states.
//!
//! The total correlations of a state, measured by the quantum mutual
//! information, are split into a quantum part (the relative entropy of
//! entanglement, REE) and a classical remainder `Ψ = I − REE`. The crate also
//! provides the competing classical measures built from the nearest
//! separable state (`C₁`, `C₂`) and the measurement-based Holevo quantity
//! `χ_B`, plus the Werner-family sweep that compares them.
//!
//! Module map:
//! - [`linalg`]: dense complex matrices, Jacobi eigensolver, spectral functions.
//! - [`state`]: validated density matrices, partial trace/transpose, entropies.
//! - [`families`]: Werner/Bell/classical states and seeded random ensembles.
//! - [`entanglement`]: PPT test, negativity, REE via Frank–Wolfe.
//! - [`correlations`]: measurements, `χ_B`, `Ψ`, `C₁`, `C₂`, combined reports.
//! - [`sweep`]: Werner sweep rows and CSV output.
//! - [`selftest`]: reduced-size property checks used by the CLI.

pub mod correlations;
pub mod entanglement;
pub mod error;
pub mod families;
pub mod linalg;
pub mod selftest;
pub mod state;
pub mod sweep;

pub use error::{Error, Result};
