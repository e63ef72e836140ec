//! Symmetric and antisymmetric multivariate sine and cosine functions.
//!
//! The four families `sin⁻`, `sin⁺`, `cos⁻`, `cos⁺` are determinants
//! (minus) or permanents (plus) of the `n × n` matrix of one-dimensional
//! kernels `sin 2πλᵢxⱼ` / `cos 2πλᵢxⱼ`. The crate provides
//!
//! - [`kernel`]: evaluation of the four families, a permutation-sum oracle,
//!   and the product forms at the special labels `ρ₁`, `ρ₂`, `ρ₃`;
//! - [`symmetry`]: the extended affine symmetric group `Sₙ × Z₂ⁿ × Tₙ`,
//!   folding into the fundamental domain, stabilizers, and enumeration of
//!   dominant label sets and grids;
//! - [`continuous`]: quadrature-based orthogonality, series coefficients,
//!   Plancherel sums and finite-difference eigen-equation checks;
//! - [`discrete`]: the finite transforms (1-D DST/DCT variants, the
//!   antisymmetric sine transform, the symmetric cosine transform and the
//!   AMDCT-k / SMDCT-k families) as orthogonality-certified pairs;
//! - [`io`] and [`verify`]: file formats and the invariant suite used by the
//!   `symtrig` command-line tool.

pub mod cli;
pub mod continuous;
pub mod discrete;
mod error;
pub mod io;
pub mod kernel;
pub mod symmetry;
pub mod verify;

pub use error::{Error, Result};
pub use kernel::{
    evaluate, evaluate_oracle, evaluate_slices, special_product, AngularConvention, Family, Label, Point,
    SpecialLabel,
};
