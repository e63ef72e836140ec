//! The extended affine symmetric group `Sₙ × Z₂ⁿ × Tₙ` and the sets it
//! carves out: the fundamental domain `½ ≥ x₁ ≥ … ≥ xₙ ≥ 0`, dominant
//! labels, and the finite grids used by the transforms.

mod domain;
mod group;
mod sets;

pub use domain::{fold, in_closed_domain, Folded};
pub use group::{AllPermutations, GroupElement, Permutation};
pub use sets::{
    binomial, enumerate_grid, enumerate_labels, factorial, stabilizer_order, DescendingSet, DominantLabelSet,
    GridKind, GridPoint, LabelSetKind,
};

use crate::error::Result;
use crate::kernel::Point;

/// `g · x`, with the fixed order permute → flip signs → shift.
pub fn act(g: &GroupElement, x: &Point) -> Result<Point> {
    g.act(x)
}
