//! Finite-difference checks of the eigen-equations and boundary conditions.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::quadrature::{AccuracyWarning, Estimate};
use super::CONV;
use crate::error::{invalid, Error, Result};
use crate::kernel::{evaluate_slices, Family, Label, Point};

/// Default finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Below this step rounding in the second difference dominates.
pub const MIN_STEP: f64 = 1e-5;

fn check_step(h: f64) -> Result<Option<AccuracyWarning>> {
    if !(h.is_finite() && h > 0.0) {
        return Err(invalid(format!("step must be positive, got {h}")));
    }
    Ok((h < MIN_STEP).then_some(AccuracyWarning::StepTooSmall { h, min: MIN_STEP }))
}

fn check_dims(label: &Label, x: &Point) -> Result<usize> {
    if label.dim() != x.dim() {
        return Err(Error::DimensionMismatch { expected: label.dim(), got: x.dim() });
    }
    Ok(label.dim())
}

/// `σ_k(a₁, …, aₙ)`, the `k`-th elementary symmetric polynomial.
pub fn elementary_symmetric(a: &[f64], k: usize) -> f64 {
    // e[j] after processing a prefix holds σ_j of that prefix.
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for &v in a {
        for j in (1..=k.min(a.len())).rev() {
            e[j] += v * e[j - 1];
        }
    }
    e[k]
}

/// `Π_{i∈axes} D_i f(x)` with `D_i` the central second difference along
/// axis `i`.
fn mixed_second_difference(f: &dyn Fn(&[f64]) -> f64, x: &[f64], axes: &[usize], h: f64) -> f64 {
    const STENCIL: [(f64, f64); 3] = [(-1.0, 1.0), (0.0, -2.0), (1.0, 1.0)];
    let k = axes.len();
    let mut y = x.to_vec();
    let mut total = 0.0;
    for code in 0..3usize.pow(k as u32) {
        let mut c = code;
        let mut weight = 1.0;
        for &axis in axes {
            let (offset, w) = STENCIL[c % 3];
            c /= 3;
            y[axis] = x[axis] + offset * h;
            weight *= w;
        }
        total += weight * f(&y);
    }
    total / h.powi(2 * k as i32)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `σ_k(D₁, …, Dₙ) f(x)` for the per-axis central second differences.
pub fn sigma_k_difference(f: &dyn Fn(&[f64]) -> f64, x: &[f64], k: usize, h: f64) -> f64 {
    subsets(x.len(), k).iter().map(|s| mixed_second_difference(f, x, s, h)).sum()
}

/// `|σ_k(D) f_λ(x) − (−4π²)^k σ_k(λ₁², …, λₙ²) f_λ(x)|`. Second order in `h`.
pub fn sigma_k_eigen_defect(family: Family, label: &Label, k: usize, x: &Point, h: f64) -> Result<Estimate> {
    let n = check_dims(label, x)?;
    if !(1..=n).contains(&k) {
        return Err(invalid(format!("k must lie in 1..={n}, got {k}")));
    }
    let warning = check_step(h)?;
    let l = label.as_slice();
    let f = |y: &[f64]| evaluate_slices(family, CONV, l, y);
    let squares: Vec<f64> = l.iter().map(|v| v * v).collect();
    let eigenvalue = (-4.0 * PI * PI).powi(k as i32) * elementary_symmetric(&squares, k);
    let lhs = sigma_k_difference(&f, x.as_slice(), k, h);
    Ok(Estimate {
        value: (lhs - eigenvalue * f(x.as_slice())).abs(),
        warning,
    })
}

/// `|Δ_h f_λ(x) + 4π²⟨λ,λ⟩ f_λ(x)|`, the `k = 1` case of
/// [`sigma_k_eigen_defect`].
pub fn laplace_eigen_defect(family: Family, label: &Label, x: &Point, h: f64) -> Result<Estimate> {
    sigma_k_eigen_defect(family, label, 1, x, h)
}

/// `defect(h) / defect(h/2)`; close to 4 for a second-order defect.
pub fn halving_ratio(defect: impl Fn(f64) -> Result<Estimate>, h: f64) -> Result<f64> {
    Ok(defect(h)?.value / defect(h / 2.0)?.value)
}

/// A face of the closed fundamental domain `½ ≥ x₁ ≥ … ≥ xₙ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Wall {
    /// `xᵢ = xᵢ₊₁` (0-based `i`).
    Diagonal(usize),
    /// `xₙ = 0`.
    Zero,
    /// `x₁ = ½`.
    Half,
}

impl Wall {
    pub fn all(n: usize) -> Vec<Wall> {
        let mut walls: Vec<Wall> = (0..n.saturating_sub(1)).map(Wall::Diagonal).collect();
        walls.push(Wall::Zero);
        walls.push(Wall::Half);
        walls
    }

    /// Outward-or-inward unit normal; the sign is irrelevant for the checks.
    pub fn normal(self, n: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        match self {
            Wall::Diagonal(i) => {
                v[i] = std::f64::consts::FRAC_1_SQRT_2;
                v[i + 1] = -std::f64::consts::FRAC_1_SQRT_2;
            }
            Wall::Zero => v[n - 1] = 1.0,
            Wall::Half => v[0] = 1.0,
        }
        v
    }

    /// Moves a point of the closed domain onto this wall.
    pub fn project(self, x: &[f64]) -> Vec<f64> {
        let mut y = x.to_vec();
        match self {
            Wall::Diagonal(i) => {
                let mid = 0.5 * (y[i] + y[i + 1]);
                y[i] = mid;
                y[i + 1] = mid;
            }
            Wall::Zero => *y.last_mut().expect("nonempty") = 0.0,
            Wall::Half => y[0] = 0.5,
        }
        y
    }
}

/// `count` pseudo-random points of the closed domain, cycled over its walls.
pub fn wall_points(n: usize, count: usize, seed: u64) -> Vec<(Wall, Vec<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let walls = Wall::all(n);
    (0..count)
        .map(|i| {
            let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..=0.5)).collect();
            x.sort_by(|a, b| b.total_cmp(a));
            let wall = walls[i % walls.len()];
            (wall, wall.project(&x))
        })
        .collect()
}

/// `max |f_m|` over [`wall_points`]; vanishes for `sin⁻` with integer labels.
pub fn dirichlet_defect(family: Family, label: &Label, count: usize, seed: u64) -> f64 {
    let l = label.as_slice();
    wall_points(label.dim(), count, seed)
        .iter()
        .map(|(_, x)| evaluate_slices(family, CONV, l, x).abs())
        .fold(0.0, f64::max)
}

/// Central-difference normal derivative of `f_λ` at a wall point:
/// `|f(x + hν) − f(x − hν)| / 2h`.
pub fn normal_derivative(family: Family, label: &Label, wall: Wall, x: &[f64], h: f64) -> Result<Estimate> {
    if x.len() != label.dim() {
        return Err(Error::DimensionMismatch { expected: label.dim(), got: x.len() });
    }
    let warning = check_step(h)?;
    let nu = wall.normal(x.len());
    let shifted = |s: f64| -> Vec<f64> { x.iter().zip(&nu).map(|(a, b)| a + s * h * b).collect() };
    let l = label.as_slice();
    let (plus, minus) = (shifted(1.0), shifted(-1.0));
    Ok(Estimate {
        value: (evaluate_slices(family, CONV, l, &plus) - evaluate_slices(family, CONV, l, &minus)).abs() / (2.0 * h),
        warning,
    })
}

/// `max` of [`normal_derivative`] over [`wall_points`].
pub fn neumann_defect(family: Family, label: &Label, count: usize, seed: u64, h: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (wall, x) in wall_points(label.dim(), count, seed) {
        worst = worst.max(normal_derivative(family, label, wall, &x, h)?.value);
    }
    Ok(worst)
}
