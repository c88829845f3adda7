//! Generalized self-contracting kernels built from two arbitrary function
//! sets, determinant integration identities, and unitary-ensemble
//! eigenvalue correlations.
//!
//! Given sets `{φ_j}` and `{ψ_j}` with overlap matrix `G = [∫ φ_i ψ_k]`,
//! the kernel `𝒦(p, q) = Σ φ_j(p) (G⁻¹)_{lj} ψ_l(q)` is self-contracting,
//! and an `(n−k)`-fold integral of `det_n[Σ_a φ_a(p_i) ψ_a(q_j)]` reduces to
//! `C (n−k)! det_k[𝒦(p_i, q_j)]` with `C = det G`. The [`theorems`] module
//! checks these reductions against brute-force tensor quadrature.

pub mod basis;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod gram;
pub mod kernel;
pub mod linalg;
pub mod points;
pub mod quadrature;
pub mod rmt;
pub mod suite;
pub mod theorems;

pub use basis::{monic_norms, wave_function, Domain, FunctionSet, Measure, Member, OrthoFamily};
pub use error::{Error, Result};
pub use gram::{compute_gram, GramMatrix};
pub use kernel::{BilinearQ, GeneralizedKernel, KernelMode};
pub use quadrature::{gauss_rule, gauss_rule_unweighted, integrate_1d, integrate_nd, QuadratureRule};
