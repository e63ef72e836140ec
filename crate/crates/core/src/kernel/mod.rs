//! Evaluation of `sin⁻`, `sin⁺`, `cos⁻`, `cos⁺`.
//!
//! Each family is built from the matrix `K(λ, x)ᵢⱼ = k(λᵢ, xⱼ)` with `k`
//! the one-dimensional sine or cosine kernel. Minus families take the
//! determinant of `K` and plus families the permanent.
//!
//! Two angular conventions are in use: `sin 2πλx` for functions on the
//! fundamental domain and `sin πms` for the finite transforms. They are
//! related by `TwoPi(λ, x) = Pi(λ, 2x)`.

pub mod matrix;
mod special;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::symmetry::Permutation;
pub use matrix::{SquareMatrix, RYSER_THRESHOLD};
pub use special::{cos_minus_rho3_scale, factorization_scale, special_product, SpecialLabel};

/// Largest `n` accepted by [`evaluate_oracle`].
pub const ORACLE_MAX_DIM: usize = 8;

/// A real `n`-vector indexing one function of a family.
///
/// Entries may be arbitrary finite reals; dominance is checked where it
/// matters (see [`crate::symmetry`]).
#[derive(Debug, Clone, PartialEq)]
pub struct Label(Vec<f64>);

/// A point of `Eₙ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

fn check_finite(what: &str, v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(invalid(format!("{what} must have at least one entry")));
    }
    if let Some(bad) = v.iter().find(|t| !t.is_finite()) {
        return Err(invalid(format!("{what} has non-finite entry {bad}")));
    }
    Ok(())
}

macro_rules! real_vector {
    ($ty:ident, $what:literal) => {
        impl $ty {
            pub fn new(entries: Vec<f64>) -> Result<Self> {
                check_finite($what, &entries)?;
                Ok(Self(entries))
            }

            pub fn from_ints(entries: &[i64]) -> Result<Self> {
                Self::new(entries.iter().map(|&m| m as f64).collect())
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn as_slice(&self) -> &[f64] {
                &self.0
            }

            pub fn into_vec(self) -> Vec<f64> {
                self.0
            }

            pub fn scaled(&self, c: f64) -> Result<Self> {
                Self::new(self.0.iter().map(|v| c * v).collect())
            }
        }

        impl TryFrom<Vec<f64>> for $ty {
            type Error = Error;
            fn try_from(v: Vec<f64>) -> Result<Self> {
                Self::new(v)
            }
        }
    };
}

real_vector!(Label, "label");
real_vector!(Point, "point");

impl Label {
    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    /// The same numbers read as a point (used by duality).
    pub fn as_point(&self) -> Point {
        Point(self.0.clone())
    }

    pub fn norm_squared(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum()
    }
}

impl Point {
    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn as_label(&self) -> Label {
        Label(self.0.clone())
    }
}

/// `sin 2πλx` / `cos 2πλx` versus `sin πλx` / `cos πλx`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AngularConvention {
    #[default]
    TwoPi,
    Pi,
}

impl AngularConvention {
    pub fn factor(self) -> f64 {
        match self {
            Self::TwoPi => 2.0 * PI,
            Self::Pi => PI,
        }
    }
}

impl FromStr for AngularConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two-pi" | "2pi" => Ok(Self::TwoPi),
            "pi" => Ok(Self::Pi),
            _ => Err(invalid(format!("unknown convention '{s}' (expected two-pi or pi)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Trig {
    Sin,
    Cos,
}

impl Trig {
    #[inline]
    pub fn apply(self, t: f64) -> f64 {
        match self {
            Self::Sin => t.sin(),
            Self::Cos => t.cos(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    SinMinus,
    SinPlus,
    CosMinus,
    CosPlus,
}

impl Family {
    pub const ALL: [Family; 4] = [Self::SinMinus, Self::SinPlus, Self::CosMinus, Self::CosPlus];

    pub fn trig(self) -> Trig {
        match self {
            Self::SinMinus | Self::SinPlus => Trig::Sin,
            Self::CosMinus | Self::CosPlus => Trig::Cos,
        }
    }

    /// Minus families alternate under permutations; plus families are invariant.
    pub fn is_alternating(self) -> bool {
        matches!(self, Self::SinMinus | Self::CosMinus)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::SinMinus => "sin-minus",
            Self::SinPlus => "sin-plus",
            Self::CosMinus => "cos-minus",
            Self::CosPlus => "cos-plus",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|fam| fam.name() == s)
            .ok_or_else(|| invalid(format!("unknown family '{s}'")))
    }
}

/// One-dimensional kernel `trig(c·λ·x)`.
///
/// The product `λ·x` is formed before scaling by `c` so that the two
/// conventions agree bit-for-bit: `2π·(λx) = π·(λ·2x)`.
#[inline]
pub fn kernel_1d(trig: Trig, conv: AngularConvention, lambda: f64, x: f64) -> f64 {
    trig.apply(conv.factor() * (lambda * x))
}

fn check_dims(label: &Label, point: &Point) -> Result<usize> {
    if label.dim() != point.dim() {
        return Err(Error::DimensionMismatch {
            expected: label.dim(),
            got: point.dim(),
        });
    }
    Ok(label.dim())
}

/// The matrix `K(λ, x)ᵢⱼ = k(λᵢ, xⱼ)`.
pub fn kernel_matrix(trig: Trig, conv: AngularConvention, label: &Label, point: &Point) -> Result<SquareMatrix> {
    let n = check_dims(label, point)?;
    let (l, x) = (label.as_slice(), point.as_slice());
    Ok(SquareMatrix::from_fn(n, |i, j| kernel_1d(trig, conv, l[i], x[j])))
}

/// Evaluates `family` at `(λ, x)`: an `O(n³)` determinant for minus
/// families and the permanent (direct below [`RYSER_THRESHOLD`], Ryser
/// above) for plus families.
pub fn evaluate(family: Family, conv: AngularConvention, label: &Label, point: &Point) -> Result<f64> {
    check_dims(label, point)?;
    Ok(evaluate_slices(family, conv, label.as_slice(), point.as_slice()))
}

/// [`evaluate`] on raw slices, for inner loops that have already checked
/// their inputs.
///
/// # Panics
/// If the slices differ in length.
pub fn evaluate_slices(family: Family, conv: AngularConvention, label: &[f64], point: &[f64]) -> f64 {
    assert_eq!(label.len(), point.len(), "label and point dimensions differ");
    let trig = family.trig();
    let k = SquareMatrix::from_fn(label.len(), |i, j| kernel_1d(trig, conv, label[i], point[j]));
    if family.is_alternating() {
        k.determinant()
    } else {
        k.permanent()
    }
}

/// Reference value `Σ_{w∈Sₙ} (det w)^ε Πᵢ k(λ_{w(i)}, xᵢ)` with `ε = 1` for
/// minus families and `ε = 0` for plus families.
pub fn evaluate_oracle(family: Family, conv: AngularConvention, label: &Label, point: &Point) -> Result<f64> {
    let n = check_dims(label, point)?;
    if n > ORACLE_MAX_DIM {
        return Err(Error::SizeLimit { n, max: ORACLE_MAX_DIM });
    }
    let (l, x) = (label.as_slice(), point.as_slice());
    let trig = family.trig();
    let mut total = 0.0;
    for w in Permutation::all(n) {
        let term: f64 = (0..n).map(|i| kernel_1d(trig, conv, l[w.image(i)], x[i])).product();
        if family.is_alternating() && w.parity() < 0 {
            total -= term;
        } else {
            total += term;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lab(v: &[f64]) -> Label {
        Label::new(v.to_vec()).unwrap()
    }
    fn pt(v: &[f64]) -> Point {
        Point::new(v.to_vec()).unwrap()
    }

    #[test]
    fn one_dimensional_reduces_to_sine() {
        let v = evaluate(Family::SinMinus, AngularConvention::TwoPi, &lab(&[1.0]), &pt(&[0.25])).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn equal_columns_vanish() {
        for t in [0.0, 0.1, 0.37, 0.5] {
            let v = evaluate(Family::SinMinus, AngularConvention::TwoPi, &lab(&[2.0, 1.0]), &pt(&[t, t])).unwrap();
            assert!(v.abs() < 1e-15);
        }
    }

    #[test]
    fn cos_plus_two_variable_expansion() {
        let (l1, l2, x1, x2) = (2.0, 1.0, 0.3, 0.1);
        let c = |t: f64| (2.0 * PI * t).cos();
        let expected = 0.5 * c(l1 * x1 - l2 * x2)
            + 0.5 * c(l1 * x1 + l2 * x2)
            + 0.5 * c(l1 * x2 - l2 * x1)
            + 0.5 * c(l1 * x2 + l2 * x1);
        let v = evaluate(Family::CosPlus, AngularConvention::TwoPi, &lab(&[l1, l2]), &pt(&[x1, x2])).unwrap();
        assert!((v - expected).abs() < 1e-14, "{v} vs {expected}");
    }

    #[test]
    fn oracle_small_cases() {
        let x = [0.13, 0.41];
        let s = |t: f64| (2.0 * PI * t).sin();
        let v = evaluate_oracle(Family::SinPlus, AngularConvention::TwoPi, &lab(&[1.0, 1.0]), &pt(&x)).unwrap();
        assert!((v - 2.0 * s(x[0]) * s(x[1])).abs() < 1e-15);
        let v = evaluate_oracle(Family::SinMinus, AngularConvention::TwoPi, &lab(&[1.0, 1.0]), &pt(&x)).unwrap();
        assert_eq!(v, 0.0);
        let v = evaluate_oracle(Family::CosPlus, AngularConvention::Pi, &lab(&[2.0, 1.0]), &pt(&[1.0 / 3.0, 0.25])).unwrap();
        let expected = (2.0 * PI / 3.0).cos() * (PI / 4.0).cos() + (PI / 3.0).cos() * (PI / 2.0).cos();
        assert!((v - expected).abs() < 1e-15);
    }

    #[test]
    fn oracle_size_limit() {
        let l = lab(&[1.0; 9]);
        let x = pt(&[0.1; 9]);
        assert_eq!(
            evaluate_oracle(Family::CosPlus, AngularConvention::TwoPi, &l, &x),
            Err(Error::SizeLimit { n: 9, max: 8 })
        );
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(
            evaluate(Family::SinMinus, AngularConvention::TwoPi, &lab(&[1.0, 2.0]), &pt(&[0.1])),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
        assert!(Label::new(vec![f64::NAN]).is_err());
        assert!(Point::new(vec![1.0, f64::INFINITY]).is_err());
        assert!(Point::new(vec![]).is_err());
    }

    #[test]
    fn matches_oracle_for_n4_cos_minus() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let l = lab(&(0..4).map(|_| rng.gen_range(-3.0..3.0)).collect::<Vec<_>>());
            let x = pt(&(0..4).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<_>>());
            let a = evaluate(Family::CosMinus, AngularConvention::TwoPi, &l, &x).unwrap();
            let b = evaluate_oracle(Family::CosMinus, AngularConvention::TwoPi, &l, &x).unwrap();
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn ryser_path_matches_oracle_at_n7() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let l = lab(&(0..7).map(|_| rng.gen_range(0.0..3.0)).collect::<Vec<_>>());
        let x = pt(&(0..7).map(|_| rng.gen_range(0.0..0.5)).collect::<Vec<_>>());
        for fam in [Family::SinPlus, Family::CosPlus] {
            let a = evaluate(fam, AngularConvention::TwoPi, &l, &x).unwrap();
            let b = evaluate_oracle(fam, AngularConvention::TwoPi, &l, &x).unwrap();
            assert!((a - b).abs() < 1e-10 * (1.0 + b.abs()), "{fam}: {a} vs {b}");
        }
    }

    #[test]
    fn convention_bridge_is_bitwise() {
        let l = lab(&[2.3, 1.1, 0.4]);
        let x = pt(&[0.31, 0.12, 0.07]);
        let x2 = x.scaled(2.0).unwrap();
        for fam in Family::ALL {
            let a = evaluate(fam, AngularConvention::TwoPi, &l, &x).unwrap();
            let b = evaluate(fam, AngularConvention::Pi, &l, &x2).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn parse_names() {
        for fam in Family::ALL {
            assert_eq!(fam.name().parse::<Family>().unwrap(), fam);
        }
        assert!("tan-plus".parse::<Family>().is_err());
        assert_eq!("pi".parse::<AngularConvention>().unwrap(), AngularConvention::Pi);
    }
}
