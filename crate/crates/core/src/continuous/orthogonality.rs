//! Continuous orthogonality on the fundamental domain and cross-orthogonality
//! on its extension by one reflection.

use std::fmt;
use std::str::FromStr;

use super::quadrature::{Estimate, QuadratureRule};
use super::{integer_label, max_entry, norm_weight, CONV};
use crate::error::{invalid, Error, Result};
use crate::kernel::{evaluate_slices, Family, Label};
use crate::symmetry::factorial;

/// `2^{2n} ∫_{F̄} f_m f_{m′} dx`, computed as `2^{2n}/n!` times the
/// integral over the box `[0,½]ⁿ`. The integrand is a product of two
/// functions of the same (anti)symmetry, hence symmetric, so the box
/// covers the domain exactly `n!` times.
///
/// The result is `δ_{m m′}` for minus families and `δ_{m m′}|G_m|` for plus
/// families whenever all label entries are positive; see [`norm_weight`]
/// for labels containing zeros.
pub fn inner_product_f(family: Family, m: &Label, m2: &Label, rule: &QuadratureRule) -> Result<Estimate> {
    let a = integer_label(family, m)?;
    let b = integer_label(family, m2)?;
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    let n = a.len();
    let (la, lb) = (m.as_slice(), m2.as_slice());
    let integral = rule.integrate_box(n, |x| evaluate_slices(family, CONV, la, x) * evaluate_slices(family, CONV, lb, x));
    Ok(Estimate {
        value: 4f64.powi(n as i32) / factorial(n) as f64 * integral,
        warning: rule.check_frequency((max_entry(&a) + max_entry(&b)) as u64),
    })
}

/// The value [`inner_product_f`] should return: `δ_{m m′}` times
/// [`norm_weight`].
pub fn expected_inner_product(family: Family, m: &[i64], m2: &[i64]) -> f64 {
    if m == m2 {
        norm_weight(family, m)
    } else {
        0.0
    }
}

/// The two mixed products that integrate to zero on the extended domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mix {
    /// `sin⁻_m · cos⁺_{m′}`.
    SinMinusCosPlus,
    /// `sin⁺_m · cos⁻_{m′}`.
    SinPlusCosMinus,
}

impl Mix {
    pub const ALL: [Mix; 2] = [Self::SinMinusCosPlus, Self::SinPlusCosMinus];

    pub fn families(self) -> (Family, Family) {
        match self {
            Self::SinMinusCosPlus => (Family::SinMinus, Family::CosPlus),
            Self::SinPlusCosMinus => (Family::SinPlus, Family::CosMinus),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::SinMinusCosPlus => "sin-minus-cos-plus",
            Self::SinPlusCosMinus => "sin-plus-cos-minus",
        }
    }
}

impl fmt::Display for Mix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| invalid(format!("unknown product '{s}'")))
    }
}

/// Whether `x ∈ [0,½]ⁿ` lies in `F̄ ∪ w₁F̄`, where `w₁` swaps the first two
/// coordinates: both of `x₁, x₂` dominate `x₃ ≥ … ≥ xₙ`.
pub fn in_extended_domain(x: &[f64]) -> bool {
    match x.len() {
        0 => false,
        1 => (0.0..=0.5).contains(&x[0]),
        _ => {
            let tail = &x[2..];
            let top = x[0].min(x[1]);
            x[0] <= 0.5
                && x[1] <= 0.5
                && tail.first().is_none_or(|&t| top >= t)
                && tail.windows(2).all(|w| w[0] >= w[1])
                && x.iter().all(|&t| t >= 0.0)
        }
    }
}

fn mixed_labels(mix: Mix, m: &Label, m2: &Label) -> Result<(Family, Family, u64)> {
    let (fa, fb) = mix.families();
    let a = integer_label(fa, m)?;
    let b = integer_label(fb, m2)?;
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    Ok((fa, fb, (max_entry(&a) + max_entry(&b)) as u64))
}

/// `∫_{F^ext} f_m g_{m′} dx` for the pair of families in `mix`, with
/// `F^ext = F̄ ∪ w₁F̄`. The integral is the box rule restricted by the
/// indicator of `F^ext`. For `n = 1` there is no transposition and the
/// extending reflection is `x ↦ −x`, so the integral runs over `[−½, ½]`.
pub fn cross_orthogonality(mix: Mix, m: &Label, m2: &Label, rule: &QuadratureRule) -> Result<Estimate> {
    let (fa, fb, freq) = mixed_labels(mix, m, m2)?;
    let (la, lb) = (m.as_slice(), m2.as_slice());
    let product = |x: &[f64]| evaluate_slices(fa, CONV, la, x) * evaluate_slices(fb, CONV, lb, x);
    let value = if la.len() == 1 {
        rule.integrate_box(1, |x| product(x) + product(&[-x[0]]))
    } else {
        rule.integrate_box(la.len(), |x| if in_extended_domain(x) { product(x) } else { 0.0 })
    };
    Ok(Estimate { value, warning: rule.check_frequency(freq) })
}

/// The same integral as [`cross_orthogonality`], split as
/// `∫_{F̄} (h + h∘s)` with `s` the extending reflection and the chamber
/// integrated through a smooth map. Independent of the indicator, so the
/// two agree only if both are right.
pub fn cross_orthogonality_chamber(mix: Mix, m: &Label, m2: &Label, rule: &QuadratureRule) -> Result<Estimate> {
    let (fa, fb, freq) = mixed_labels(mix, m, m2)?;
    let (la, lb) = (m.as_slice(), m2.as_slice());
    let product = |x: &[f64]| evaluate_slices(fa, CONV, la, x) * evaluate_slices(fb, CONV, lb, x);
    let value = rule.integrate_chamber(la.len(), |x| {
        let mut y = x.to_vec();
        if y.len() == 1 {
            y[0] = -y[0];
        } else {
            y.swap(0, 1);
        }
        product(x) + product(&y)
    });
    Ok(Estimate { value, warning: rule.check_frequency(freq) })
}

/// `∫_{F̄} f_m g_{m′}` alone, which is generally nonzero; useful to show
/// that the vanishing on `F^ext` is not trivial.
pub fn mixed_integral_on_domain(mix: Mix, m: &Label, m2: &Label, rule: &QuadratureRule) -> Result<f64> {
    let (fa, fb, _) = mixed_labels(mix, m, m2)?;
    let (la, lb) = (m.as_slice(), m2.as_slice());
    Ok(rule.integrate_chamber(la.len(), |x| evaluate_slices(fa, CONV, la, x) * evaluate_slices(fb, CONV, lb, x)))
}
