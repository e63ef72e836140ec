//! Tensor Gauss–Legendre quadrature on the box `[0,½]ⁿ` and on the chamber
//! `½ ≥ x₁ ≥ … ≥ xₙ ≥ 0`.

use std::fmt;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use rayon::prelude::*;

use crate::error::{invalid, Result};

/// Points per axis used when the caller does not choose.
pub const DEFAULT_POINTS: usize = 32;

/// Running sum with Neumaier compensation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Why a numerical result may be less accurate than its nominal tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AccuracyWarning {
    /// The integrand oscillates faster than the rule resolves.
    InsufficientPoints { points: usize, recommended: usize },
    /// A finite-difference step small enough for rounding to dominate.
    StepTooSmall { h: f64, min: f64 },
}

impl fmt::Display for AccuracyWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InsufficientPoints { points, recommended } => {
                write!(f, "{points} quadrature points per axis; at least {recommended} recommended")
            }
            Self::StepTooSmall { h, min } => write!(f, "step {h:e} is below {min:e}; cancellation dominates"),
        }
    }
}

/// A value together with an optional accuracy warning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub warning: Option<AccuracyWarning>,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self { value, warning: None }
    }

    pub fn is_reliable(&self) -> bool {
        self.warning.is_none()
    }
}

/// Gauss–Legendre rule on `[0,½]`, used per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self::new(DEFAULT_POINTS).expect("default size is positive")
    }
}

impl QuadratureRule {
    pub fn new(points: usize) -> Result<Self> {
        let degree = NonZeroUsize::new(points).ok_or_else(|| invalid("quadrature needs at least one point"))?;
        let rule = GaussLegendre::new(degree);
        let (nodes, weights) = rule
            .as_node_weight_pairs()
            .iter()
            .map(|&(t, w)| (0.25 * (t + 1.0), 0.25 * w))
            .unzip();
        Ok(Self { nodes, weights })
    }

    pub fn points(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Points per axis needed to integrate products of trigonometric
    /// functions of total frequency `2π·frequency` on `[0,½]` to about 1e-10.
    pub fn recommended_points(frequency: u64) -> usize {
        (1.8 * frequency as f64).ceil() as usize + 2
    }

    /// A warning when the rule is too coarse for the given frequency.
    pub fn check_frequency(&self, frequency: u64) -> Option<AccuracyWarning> {
        let recommended = Self::recommended_points(frequency);
        (self.points() < recommended).then_some(AccuracyWarning::InsufficientPoints {
            points: self.points(),
            recommended,
        })
    }

    pub fn integrate_1d(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).collect::<CompensatedSum>().value()
    }

    /// `∫_{[0,½]ⁿ} f`, parallel over the first axis. Partial sums are merged
    /// in index order, so the result does not depend on the thread count.
    pub fn integrate_box<F>(&self, n: usize, f: F) -> f64
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        if n == 0 {
            return f(&[]);
        }
        let partials: Vec<CompensatedSum> = (0..self.points())
            .into_par_iter()
            .map(|first| self.slab_sum(n, first, &f))
            .collect();
        let mut total = CompensatedSum::new();
        for p in partials {
            total.merge(p);
        }
        total.value()
    }

    /// Single-threaded reference for [`Self::integrate_box`] that accumulates
    /// every point into one compensated sum.
    pub fn integrate_box_serial<F>(&self, n: usize, f: F) -> f64
    where
        F: Fn(&[f64]) -> f64,
    {
        let mut total = CompensatedSum::new();
        self.for_each_point(n, None, |x, w| total.add(w * f(x)));
        total.value()
    }

    fn slab_sum<F>(&self, n: usize, first: usize, f: &F) -> CompensatedSum
    where
        F: Fn(&[f64]) -> f64,
    {
        let mut acc = CompensatedSum::new();
        self.for_each_point(n, Some(first), |x, w| acc.add(w * f(x)));
        acc
    }

    /// Visits tensor points in row-major order, optionally with the first
    /// index pinned.
    fn for_each_point(&self, n: usize, pinned: Option<usize>, mut visit: impl FnMut(&[f64], f64)) {
        let p = self.points();
        let mut idx = vec![0usize; n];
        if let Some(first) = pinned {
            idx[0] = first;
        }
        let start_axis = usize::from(pinned.is_some());
        let mut x: Vec<f64> = idx.iter().map(|&i| self.nodes[i]).collect();
        loop {
            let w: f64 = idx.iter().map(|&i| self.weights[i]).product();
            visit(&x, w);
            let mut axis = n;
            loop {
                if axis == start_axis {
                    return;
                }
                axis -= 1;
                idx[axis] += 1;
                if idx[axis] < p {
                    x[axis] = self.nodes[idx[axis]];
                    break;
                }
                idx[axis] = 0;
                x[axis] = self.nodes[0];
            }
        }
    }

    /// `∫` over the chamber `½ ≥ x₁ ≥ … ≥ xₙ ≥ 0`, through the smooth map
    /// `x₁ = u₁/2`, `x_k = x_{k−1}·u_k` from the unit cube. Unlike the
    /// box rule, this needs no symmetry of `f`.
    pub fn integrate_chamber<F>(&self, n: usize, f: F) -> f64
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        if n == 0 {
            return f(&[]);
        }
        // Nodes on [0,½] doubled give the same rule on [0,1].
        let scale = 2f64.powi(n as i32);
        self.integrate_box(n, |v| {
            let mut x = Vec::with_capacity(n);
            let mut jac = 0.5;
            let mut prev = 0.5;
            for (k, &half_u) in v.iter().enumerate() {
                let u = 2.0 * half_u;
                let xk = if k == 0 { 0.5 * u } else { prev * u };
                if k > 0 {
                    jac *= prev;
                }
                x.push(xk);
                prev = xk;
            }
            scale * jac * f(&x)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn one_dimensional_sine_orthogonality() {
        let worst = |points: usize, top: usize| {
            let rule = QuadratureRule::new(points).unwrap();
            let mut worst: f64 = 0.0;
            for k in 1..=top {
                for l in 1..=top {
                    let v = 4.0 * rule.integrate_1d(|t| (2.0 * PI * k as f64 * t).sin() * (2.0 * PI * l as f64 * t).sin());
                    worst = worst.max((v - if k == l { 1.0 } else { 0.0 }).abs());
                }
            }
            worst
        };
        assert!(worst(16, 3) < 1e-12);
        assert!(worst(DEFAULT_POINTS, 8) < 1e-12);
        assert!(worst(27, 8) < 1e-12);
        // Sixteen points do not resolve frequency 16.
        assert!(worst(16, 8) > 1e-3);
    }

    #[test]
    fn polynomial_exactness() {
        let rule = QuadratureRule::new(5).unwrap();
        // exact up to degree 9
        let v = rule.integrate_1d(|t| t.powi(9));
        assert!((v - 0.5f64.powi(10) / 10.0).abs() < 1e-16);
        let w: f64 = rule.weights().iter().sum();
        assert!((w - 0.5).abs() < 1e-15);
    }

    #[test]
    fn box_volume_and_separable_integral() {
        let rule = QuadratureRule::new(8).unwrap();
        assert!((rule.integrate_box(3, |_| 1.0) - 0.125).abs() < 1e-15);
        let v = rule.integrate_box(2, |x| x[0] * x[1] * x[1]);
        assert!((v - (0.125) * (1.0 / 24.0)).abs() < 1e-16);
    }

    #[test]
    fn chamber_volume_is_box_over_factorial() {
        let rule = QuadratureRule::new(12).unwrap();
        for n in 1..=4 {
            let fact: f64 = (1..=n).map(|k| k as f64).product();
            let v = rule.integrate_chamber(n, |_| 1.0);
            assert!((v - 0.5f64.powi(n as i32) / fact).abs() < 1e-15, "n={n}");
        }
        // ∫_{½≥x≥y≥0} x dy dx = ∫₀^½ x² dx = 1/24
        let v = rule.integrate_chamber(2, |x| x[0]);
        assert!((v - 1.0 / 24.0).abs() < 1e-15);
    }

    #[test]
    fn partition_independence() {
        let rule = QuadratureRule::new(20).unwrap();
        let f = |x: &[f64]| (7.0 * x[0]).sin() * (3.0 * x[1]).cos() + (11.0 * x[2]).exp() * 1e-3;
        let par = rule.integrate_box(3, f);
        let ser = rule.integrate_box_serial(3, f);
        assert!((par - ser).abs() <= 1e-13 * ser.abs().max(1.0));
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let single = pool.install(|| rule.integrate_box(3, f));
        assert_eq!(single, par);
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let s: CompensatedSum = [1e16, 1.0, -1e16].into_iter().collect();
        assert_eq!(s.value(), 1.0);
    }

    #[test]
    fn warnings() {
        let rule = QuadratureRule::new(32).unwrap();
        assert!(rule.check_frequency(16).is_none());
        assert!(rule.check_frequency(40).is_some());
        assert!(QuadratureRule::new(0).is_err());
    }
}
