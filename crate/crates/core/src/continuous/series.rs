//! Truncated Fourier-like series on the fundamental domain: coefficients,
//! partial sums and the Plancherel identity.

use super::quadrature::{Estimate, QuadratureRule};
use super::{integer_label, max_entry, norm_weight, CONV};
use crate::error::{invalid, Error, Result};
use crate::kernel::{evaluate_slices, Family, Label, Point};
use crate::symmetry::{enumerate_labels, factorial, DominantLabelSet, LabelSetKind};

/// Default truncation bound on label entries for dimension `n`.
pub fn default_bound(n: usize) -> i64 {
    if n <= 2 {
        6
    } else {
        4
    }
}

/// Labels of the truncated basis for `family`: strictly descending
/// positive labels for minus families, weakly descending non-negative ones
/// for plus families. `sin⁺` labels with a zero entry are dropped since
/// those functions vanish identically.
pub fn series_labels(family: Family, bound: i64, n: usize) -> Vec<Vec<i64>> {
    let kind = if family.is_alternating() {
        LabelSetKind::StrictPositive
    } else {
        LabelSetKind::WeakNonneg
    };
    enumerate_labels(&DominantLabelSet::new(kind, bound, n))
        .into_iter()
        .filter(|m| norm_weight(family, m) != 0.0)
        .collect()
}

/// Coefficients `c_m` of a truncated series, in the canonical label order.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    family: Family,
    dim: usize,
    terms: Vec<(Vec<i64>, f64)>,
}

impl SeriesCoefficients {
    /// The zero series.
    pub fn empty(family: Family, dim: usize) -> Self {
        Self { family, dim, terms: Vec::new() }
    }

    /// Builds a series from explicit terms; every label must be a valid
    /// dominant label for `family` of dimension `dim`.
    pub fn from_terms(family: Family, dim: usize, terms: Vec<(Vec<i64>, f64)>) -> Result<Self> {
        for (m, c) in &terms {
            if m.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: m.len() });
            }
            integer_label(family, &Label::from_ints(m)?)?;
            if !c.is_finite() {
                return Err(invalid(format!("coefficient of {m:?} is not finite")));
            }
        }
        Ok(Self { family, dim, terms })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, m: &[i64]) -> Option<f64> {
        self.terms.iter().find(|(l, _)| l == m).map(|&(_, c)| c)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i64], f64)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), *c))
    }

    /// `Σ w_m c_m²` with `w_m` from [`norm_weight`].
    pub fn energy(&self) -> f64 {
        self.iter().map(|(m, c)| norm_weight(self.family, m) * c * c).sum()
    }
}

/// A function sampled on the closed box `[0,½]ⁿ`. It is expected to have
/// the (anti)symmetry of the family it is expanded in.
pub type Sample<'a> = &'a (dyn Fn(&[f64]) -> f64 + Sync);

/// `c_m = 2^{2n} w_m⁻¹ ∫_{F̄} f · f_m`, with `w_m` the norm from
/// [`norm_weight`] (`|G_m|` for plus families with positive labels, `1`
/// for minus families).
pub fn series_coefficient(family: Family, sample: Sample<'_>, m: &Label, rule: &QuadratureRule) -> Result<Estimate> {
    let ints = integer_label(family, m)?;
    let weight = norm_weight(family, &ints);
    if weight == 0.0 {
        return Err(invalid(format!("{family}_{ints:?} vanishes identically and has no coefficient")));
    }
    let n = ints.len();
    let l = m.as_slice();
    let integral = rule.integrate_box(n, |x| sample(x) * evaluate_slices(family, CONV, l, x));
    Ok(Estimate {
        value: 4f64.powi(n as i32) / factorial(n) as f64 * integral / weight,
        warning: rule.check_frequency(2 * max_entry(&ints) as u64),
    })
}

/// All coefficients over [`series_labels`]`(family, bound, n)`. The
/// warning, if any, is the one for the largest label.
pub fn series_coefficients(
    family: Family,
    sample: Sample<'_>,
    bound: i64,
    n: usize,
    rule: &QuadratureRule,
) -> Result<(SeriesCoefficients, Option<super::AccuracyWarning>)> {
    let mut terms = Vec::new();
    let mut warning = None;
    for m in series_labels(family, bound, n) {
        let est = series_coefficient(family, sample, &Label::from_ints(&m)?, rule)?;
        warning = warning.or(est.warning);
        terms.push((m, est.value));
    }
    Ok((SeriesCoefficients { family, dim: n, terms }, warning))
}

/// `Σ_m c_m f_m(x)`.
pub fn partial_sum(coeffs: &SeriesCoefficients, x: &Point) -> Result<f64> {
    if x.dim() != coeffs.dim {
        return Err(Error::DimensionMismatch { expected: coeffs.dim, got: x.dim() });
    }
    Ok(coeffs
        .iter()
        .map(|(m, c)| {
            let l: Vec<f64> = m.iter().map(|&v| v as f64).collect();
            c * evaluate_slices(coeffs.family, CONV, &l, x.as_slice())
        })
        .sum())
}

/// `|Σ w_m c_m² − 2^{2n} ∫_{F̄} f²|`.
pub fn plancherel_defect(coeffs: &SeriesCoefficients, sample: Sample<'_>, rule: &QuadratureRule) -> Result<Estimate> {
    let n = coeffs.dim;
    let norm = 4f64.powi(n as i32) / factorial(n) as f64 * rule.integrate_box(n, |x| sample(x).powi(2));
    let top = coeffs.iter().map(|(m, _)| max_entry(m)).max().unwrap_or(0);
    Ok(Estimate {
        value: (coeffs.energy() - norm).abs(),
        warning: rule.check_frequency(2 * top as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(family: Family, m: &[f64]) -> impl Fn(&[f64]) -> f64 + Sync + '_ {
        move |x| evaluate_slices(family, CONV, m, x)
    }

    fn l(v: &[i64]) -> Label {
        Label::from_ints(v).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let rule = QuadratureRule::default();
        let s21 = f(Family::SinMinus, &[2.0, 1.0]);
        let c = series_coefficient(Family::SinMinus, &s21, &l(&[2, 1]), &rule).unwrap();
        assert!((c.value - 1.0).abs() < 1e-8);
        let c = series_coefficient(Family::SinMinus, &s21, &l(&[3, 2]), &rule).unwrap();
        assert!(c.value.abs() < 1e-8);
        let c11 = f(Family::CosPlus, &[1.0, 1.0]);
        let c = series_coefficient(Family::CosPlus, &c11, &l(&[1, 1]), &rule).unwrap();
        assert!((c.value - 1.0).abs() < 1e-8);
    }

    #[test]
    fn partial_sum_trivia() {
        let x = Point::new(vec![0.31, 0.12]).unwrap();
        let one = SeriesCoefficients::from_terms(Family::SinMinus, 2, vec![(vec![2, 1], 1.0)]).unwrap();
        let direct = evaluate_slices(Family::SinMinus, CONV, &[2.0, 1.0], x.as_slice());
        assert_eq!(partial_sum(&one, &x).unwrap(), direct);
        assert_eq!(partial_sum(&SeriesCoefficients::empty(Family::CosPlus, 2), &x).unwrap(), 0.0);
        assert!(partial_sum(&one, &Point::new(vec![0.1]).unwrap()).is_err());
        assert!(SeriesCoefficients::from_terms(Family::SinMinus, 2, vec![(vec![1, 1], 1.0)]).is_err());
    }

    #[test]
    fn round_trip_every_family() {
        let rule = QuadratureRule::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for family in Family::ALL {
            let labels = series_labels(family, 4, 2);
            let weights: Vec<f64> = labels.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
            let lf: Vec<Vec<f64>> = labels.iter().map(|m| m.iter().map(|&v| v as f64).collect()).collect();
            let g = |x: &[f64]| -> f64 {
                lf.iter().zip(&weights).map(|(m, w)| w * evaluate_slices(family, CONV, m, x)).sum()
            };
            let (coeffs, warning) = series_coefficients(family, &g, 6, 2, &rule).unwrap();
            assert!(warning.is_none());
            for (m, c) in coeffs.iter() {
                let expected = labels.iter().position(|k| k == m).map_or(0.0, |i| weights[i]);
                assert!((c - expected).abs() < 1e-9, "{family} {m:?}: {c} vs {expected}");
            }
            for _ in 0..25 {
                let a: f64 = rng.gen_range(0.0..0.5);
                let b: f64 = rng.gen_range(0.0..a);
                let x = Point::new(vec![a, b]).unwrap();
                assert!((partial_sum(&coeffs, &x).unwrap() - g(x.as_slice())).abs() < 1e-6);
            }
            assert!(plancherel_defect(&coeffs, &g, &rule).unwrap().value < 1e-8);
        }
    }

    #[test]
    fn plancherel_examples() {
        let rule = QuadratureRule::default();
        let s = |x: &[f64]| {
            3.0 * evaluate_slices(Family::SinMinus, CONV, &[2.0, 1.0], x)
                - evaluate_slices(Family::SinMinus, CONV, &[3.0, 2.0], x)
        };
        let (coeffs, _) = series_coefficients(Family::SinMinus, &s, 6, 2, &rule).unwrap();
        assert!((coeffs.energy() - 10.0).abs() < 1e-8);
        assert!(plancherel_defect(&coeffs, &s, &rule).unwrap().value < 1e-8);
        let zero = |_: &[f64]| 0.0;
        let (coeffs, _) = series_coefficients(Family::SinMinus, &zero, 6, 2, &rule).unwrap();
        assert_eq!(plancherel_defect(&coeffs, &zero, &rule).unwrap().value, 0.0);
    }

    #[test]
    fn three_dimensional_series() {
        let rule = QuadratureRule::new(16).unwrap();
        let s = f(Family::CosPlus, &[2.0, 1.0, 1.0]);
        let (coeffs, _) = series_coefficients(Family::CosPlus, &s, 2, 3, &rule).unwrap();
        assert!((coeffs.get(&[2, 1, 1]).unwrap() - 1.0).abs() < 1e-9);
        assert!(plancherel_defect(&coeffs, &s, &rule).unwrap().value < 1e-8);
    }

    #[test]
    fn label_sets() {
        assert_eq!(series_labels(Family::SinMinus, 3, 2), vec![vec![3, 2], vec![3, 1], vec![2, 1]]);
        assert!(series_labels(Family::SinPlus, 2, 2).iter().all(|m| m[1] > 0));
        assert!(series_labels(Family::CosPlus, 2, 2).contains(&vec![0, 0]));
    }
}
