//! Product forms at the labels `ρ₁ = (n, …, 1)`, `ρ₂ = (n−½, …, ½)` and
//! `ρ₃ = (n−1, …, 0)`.
//!
//! [`special_product`] returns the closed product
//! `Π_{i<j} t(π(xᵢ−xⱼ))·t(π(xᵢ+xⱼ)) · Πᵢ s(xᵢ)` with `t = sin` for `sin⁻`
//! and `t = cos` for `cos⁺`. The product agrees with the function itself
//! only up to the constant reported by [`factorization_scale`], and for some
//! `(label, family, n)` there is no such constant at all.

use std::f64::consts::PI;
use std::str::FromStr;

use super::{Family, Label, Point};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialLabel {
    Rho1,
    Rho2,
    Rho3,
}

impl SpecialLabel {
    pub const ALL: [SpecialLabel; 3] = [Self::Rho1, Self::Rho2, Self::Rho3];

    pub fn label(self, n: usize) -> Label {
        let entries = (0..n)
            .map(|i| {
                let k = (n - i) as f64;
                match self {
                    Self::Rho1 => k,
                    Self::Rho2 => k - 0.5,
                    Self::Rho3 => k - 1.0,
                }
            })
            .collect();
        Label::new(entries).expect("n >= 1")
    }

    fn single_factor(self, trig: fn(f64) -> f64, x: f64) -> f64 {
        match self {
            Self::Rho1 => trig(2.0 * PI * x),
            Self::Rho2 => trig(PI * x),
            Self::Rho3 => 1.0,
        }
    }
}

impl FromStr for SpecialLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho1" => Ok(Self::Rho1),
            "rho2" => Ok(Self::Rho2),
            "rho3" => Ok(Self::Rho3),
            _ => Err(invalid(format!("unknown special label '{s}'"))),
        }
    }
}

pub fn special_product(which: SpecialLabel, family: Family, point: &Point) -> Result<f64> {
    let trig: fn(f64) -> f64 = match family {
        Family::SinMinus => f64::sin,
        Family::CosPlus => f64::cos,
        other => return Err(invalid(format!("no product form for {other}"))),
    };
    let x = point.as_slice();
    let n = x.len();
    let mut prod = 1.0;
    for i in 0..n {
        for j in i + 1..n {
            prod *= trig(PI * (x[i] - x[j])) * trig(PI * (x[i] + x[j]));
        }
    }
    for &xi in x {
        prod *= which.single_factor(trig, xi);
    }
    Ok(prod)
}

/// The constant `c` with `evaluate(family, TwoPi, ρ, x) = c · special_product(ρ, family, x)`
/// for all `x`, or `None` when the function is not a multiple of the product.
///
/// For `sin⁻` at `ρ₁` and `ρ₂` the determinant reduces (via Chebyshev
/// polynomials in `cos 2πxⱼ`) to a Vandermonde determinant, giving
/// `c = (−4)^{n(n−1)/2}`. `sin⁻` at `ρ₃` has a zero row for `n ≥ 2` and
/// vanishes identically. The permanents `cos⁺` do not factor beyond the
/// cases `n = 1` and `(ρ₃, n = 2)`, where `cos 2πx₁ + cos 2πx₂ = 2 cos π(x₁+x₂) cos π(x₁−x₂)`.
pub fn factorization_scale(which: SpecialLabel, family: Family, n: usize) -> Option<f64> {
    let pairs = (n * n.saturating_sub(1) / 2) as i32;
    match (family, which, n) {
        (_, _, 0) => None,
        (Family::SinMinus, SpecialLabel::Rho1 | SpecialLabel::Rho2, _) => Some((-4.0f64).powi(pairs)),
        (Family::SinMinus, SpecialLabel::Rho3, _) => None,
        (Family::CosPlus, _, 1) => Some(1.0),
        (Family::CosPlus, SpecialLabel::Rho3, 2) => Some(2.0),
        _ => None,
    }
}

/// The constant relating `cos⁻` at `ρ₃` to the `sin⁻` pair product:
/// `cos⁻_{ρ₃}(x) = 2^{(n−1)(n−2)/2} (−2)^{n(n−1)/2} Π_{i<j} sin π(xᵢ−xⱼ) sin π(xᵢ+xⱼ)`.
pub fn cos_minus_rho3_scale(n: usize) -> f64 {
    let pairs = (n * n.saturating_sub(1) / 2) as i32;
    let lead = (n.saturating_sub(1) * n.saturating_sub(2) / 2) as i32;
    2.0f64.powi(lead) * (-2.0f64).powi(pairs)
}
