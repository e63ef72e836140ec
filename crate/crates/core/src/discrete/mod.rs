//! Finite transforms on grids: the 1-D sine and cosine transforms and their
//! four variants, and the antisymmetric and symmetric multivariate
//! transforms built from them.
//!
//! Kernels use the `π` convention with integer arguments: grid point `k/N`
//! and label `r` enter as `trig(π·r·k/N)` or its half-shifted variants.
//! Labels and grid points are enumerated in lexicographically descending
//! order, which is also the index order of every vector and matrix here.

mod kind;
mod transform;

pub use kind::{Entry, Symmetry, TransformKind};
pub use transform::{
    amdst_forward_separable, CoefficientVector, DataVector, Gram, KernelStrategy, Transform, TransformPlan,
    WeightTable,
};
