//! Continuous-domain checks by quadrature and finite differences:
//! orthogonality on the fundamental domain, cross-orthogonality, truncated
//! series with their Plancherel identity, the eigen-equations of the
//! Laplacian and its higher analogues, and the boundary conditions.
//!
//! All functions here use the `sin 2πλx` convention.

mod eigen;
mod orthogonality;
mod quadrature;
mod series;

pub use eigen::{
    dirichlet_defect, elementary_symmetric, halving_ratio, laplace_eigen_defect, neumann_defect,
    normal_derivative, sigma_k_difference, sigma_k_eigen_defect, wall_points, Wall, DEFAULT_STEP, MIN_STEP,
};
pub use orthogonality::{
    cross_orthogonality, cross_orthogonality_chamber, expected_inner_product, in_extended_domain,
    inner_product_f, mixed_integral_on_domain, Mix,
};
pub use quadrature::{AccuracyWarning, CompensatedSum, Estimate, QuadratureRule, DEFAULT_POINTS};
pub use series::{
    default_bound, partial_sum, plancherel_defect, series_coefficient, series_coefficients, series_labels,
    Sample, SeriesCoefficients,
};

use crate::error::{invalid, Result};
use crate::kernel::{AngularConvention, Family, Label};
use crate::symmetry::stabilizer_order;

pub(crate) const CONV: AngularConvention = AngularConvention::TwoPi;

/// Norm `2^{2n} ∫_{F̄} f_m²` of an integer dominant label.
///
/// With `z` the number of zero entries of `m`: `cos⁻` gives `2^z`, `cos⁺`
/// gives `|G_m|·2^z`, and `sin±` give `0` when `z > 0` (the function
/// vanishes) and `1` resp. `|G_m|` otherwise.
pub fn norm_weight(family: Family, m: &[i64]) -> f64 {
    let zeros = m.iter().filter(|&&v| v == 0).count() as i32;
    let stab = if family.is_alternating() { 1.0 } else { stabilizer_order(m) as f64 };
    match family {
        Family::SinMinus | Family::SinPlus if zeros > 0 => 0.0,
        Family::SinMinus | Family::SinPlus => stab,
        Family::CosMinus | Family::CosPlus => stab * 2f64.powi(zeros),
    }
}

/// Checks that `label` is an integer dominant label for `family`: entries
/// non-negative and descending, strictly for minus families.
pub(crate) fn integer_label(family: Family, label: &Label) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(label.dim());
    for &v in label.as_slice() {
        if v.fract() != 0.0 || v < 0.0 || v > i64::MAX as f64 {
            return Err(invalid(format!("label entries must be non-negative integers, got {v}")));
        }
        out.push(v as i64);
    }
    let ok = out.windows(2).all(|w| if family.is_alternating() { w[0] > w[1] } else { w[0] >= w[1] });
    if !ok {
        let rel = if family.is_alternating() { "strictly" } else { "weakly" };
        return Err(invalid(format!("{family} labels must be {rel} descending, got {out:?}")));
    }
    Ok(out)
}

pub(crate) fn max_entry(m: &[i64]) -> i64 {
    m.iter().copied().max().unwrap_or(0)
}
