//! Transform instances, their kernel matrices, and the forward and inverse
//! maps.
//!
//! Every kind fits one scheme. With kernel `K(r,k) = |Sₙ|^{-1/2}·det` (or
//! permanent) of the 1-D entries, point weight `w_k = |Sₙ| c_k / |S_k|` and
//! label weight `D_r = (N/2)ⁿ h_r |S_r|`:
//!
//! ```text
//! Σ_k w_k K(r,k) K(r′,k) = D_r δ_{r r′}
//! a_r = D_r⁻¹ Σ_k w_k f_k K(r,k)        f_k = Σ_r a_r K(r,k)
//! Σ_k w_k f_k² = Σ_r D_r a_r²
//! ```
//!
//! For 1-D kinds `|S₁| = 1` and `K` is the bare entry.

use num_rational::Ratio;
use rayon::prelude::*;

use super::kind::{Symmetry, TransformKind};
use crate::error::{invalid, Error, Result};
use crate::kernel::SquareMatrix;
use crate::symmetry::{factorial, stabilizer_order, DescendingSet, GridPoint, Permutation};

fn to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// A transform kind with its grid parameter `N` and dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transform {
    kind: TransformKind,
    big_n: i64,
    dim: usize,
}

impl Transform {
    pub fn new(kind: TransformKind, big_n: i64, dim: usize) -> Result<Self> {
        if big_n < 1 {
            return Err(invalid(format!("N must be at least 1, got {big_n}")));
        }
        if dim < 1 {
            return Err(invalid("n must be at least 1"));
        }
        if kind.symmetry() == Symmetry::OneDimensional && dim != 1 {
            return Err(invalid(format!("{kind} is one-dimensional; got n = {dim}")));
        }
        Ok(Self { kind, big_n, dim })
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    pub fn big_n(&self) -> i64 {
        self.big_n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn strict(&self) -> bool {
        self.kind.symmetry() == Symmetry::Antisymmetric
    }

    pub fn label_set(&self) -> DescendingSet {
        let a = self.kind.label_axis();
        DescendingSet::new(a.lo, self.big_n + a.hi_offset, self.strict(), self.dim)
    }

    pub fn grid_set(&self) -> DescendingSet {
        let a = self.kind.grid_axis();
        DescendingSet::new(a.lo, self.big_n + a.hi_offset, self.strict(), self.dim)
    }

    /// Labels in canonical (lexicographically descending) order.
    pub fn labels(&self) -> Vec<Vec<i64>> {
        self.label_set().enumerate()
    }

    /// Grid numerators `k` (points `k/N`) in canonical order.
    pub fn grid(&self) -> Vec<Vec<i64>> {
        self.grid_set().enumerate()
    }

    pub fn grid_points(&self) -> Vec<GridPoint> {
        self.grid()
            .into_iter()
            .map(|numerators| GridPoint { numerators, denominator: self.big_n })
            .collect()
    }

    fn normalization(&self) -> f64 {
        (factorial(self.dim) as f64).sqrt()
    }

    fn entry_matrix(&self, r: &[i64], k: &[i64]) -> SquareMatrix {
        let entry = self.kind.entry();
        SquareMatrix::from_fn(self.dim, |i, j| entry.value(r[i], k[j], self.big_n))
    }

    /// `K(r,k)` for arbitrary integer tuples of the right length, without
    /// membership checks.
    ///
    /// # Panics
    /// If `r` or `k` has the wrong length.
    pub fn kernel_at(&self, r: &[i64], k: &[i64]) -> f64 {
        assert!(r.len() == self.dim && k.len() == self.dim, "tuple length differs from n");
        let m = self.entry_matrix(r, k);
        let raw = match self.kind.symmetry() {
            Symmetry::Symmetric => m.permanent(),
            _ => m.determinant(),
        };
        raw / self.normalization()
    }

    /// `K(r,k)` through the explicit sum over `Sₙ`.
    pub fn kernel_oracle(&self, r: &[i64], k: &[i64]) -> f64 {
        assert!(r.len() == self.dim && k.len() == self.dim, "tuple length differs from n");
        let entry = self.kind.entry();
        let signed = self.kind.symmetry() != Symmetry::Symmetric;
        let mut total = 0.0;
        for w in Permutation::all(self.dim) {
            let term: f64 = (0..self.dim).map(|i| entry.value(r[w.image(i)], k[i], self.big_n)).product();
            if signed && w.parity() < 0 {
                total -= term;
            } else {
                total += term;
            }
        }
        total / self.normalization()
    }

    /// `K(r,k)` with `r` checked against the label set and `k` against the grid.
    pub fn kernel_value(&self, r: &[i64], k: &GridPoint) -> Result<f64> {
        if r.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: r.len() });
        }
        if k.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: k.dim() });
        }
        if !self.label_set().contains(r) {
            return Err(Error::OutOfSet {
                what: "label",
                value: format!("{r:?}"),
                set: format!("the {} labels {}", self.kind, self.label_set()),
            });
        }
        if k.denominator != self.big_n || !self.grid_set().contains(&k.numerators) {
            return Err(Error::OutOfSet {
                what: "grid point",
                value: format!("{:?}/{}", k.numerators, k.denominator),
                set: format!("the {} grid {}/{}", self.kind, self.grid_set(), self.big_n),
            });
        }
        Ok(self.kernel_at(r, &k.numerators))
    }

    /// `h_r = Π h_{r_i}`.
    pub fn label_weight_h(&self, r: &[i64]) -> Ratio<i64> {
        r.iter().map(|&v| self.kind.label_weight_1d(v, self.big_n)).product()
    }

    /// `c_k = Π c_{k_i}`.
    pub fn point_weight_c(&self, k: &[i64]) -> Ratio<i64> {
        k.iter().map(|&v| self.kind.point_weight_1d(v, self.big_n)).product()
    }

    fn stabilizer(&self, t: &[i64]) -> i64 {
        if self.kind.symmetry() == Symmetry::Symmetric {
            stabilizer_order(t) as i64
        } else {
            1
        }
    }

    /// `D_r = (N/2)ⁿ h_r |S_r|`.
    pub fn gram_diagonal(&self, r: &[i64]) -> Ratio<i64> {
        Ratio::new(self.big_n, 2).pow(self.dim as i32) * self.label_weight_h(r) * self.stabilizer(r)
    }

    /// `w_k = |Sₙ| c_k / |S_k|`.
    pub fn point_weight(&self, k: &[i64]) -> Ratio<i64> {
        self.point_weight_c(k) * factorial(self.dim) as i64 / self.stabilizer(k)
    }

    pub fn weights(&self) -> WeightTable {
        WeightTable {
            label_weights: self.labels().iter().map(|r| self.gram_diagonal(r)).collect(),
            point_weights: self.grid().iter().map(|k| self.point_weight(k)).collect(),
        }
    }

    /// The orthogonality constant as each kind's own relation states it.
    /// Agrees with [`Self::gram_diagonal`] for every kind; kept separate as
    /// an independent statement of the expected values.
    pub fn stated_gram_diagonal(&self, r: &[i64]) -> Ratio<i64> {
        use TransformKind::*;
        let n = self.big_n;
        let half_n = Ratio::new(n, 2);
        let half_n_pow = half_n.pow(self.dim as i32);
        let h = self.label_weight_h(r);
        let stab = Ratio::from_integer(stabilizer_order(r) as i64);
        // r_m = 1 at the ends and ½ inside, for the cosine transform on the closed grid.
        let r_m: Ratio<i64> = r
            .iter()
            .map(|&m| if m == 0 || m == n { Ratio::from_integer(1) } else { Ratio::new(1, 2) })
            .product();
        match self.kind {
            Dst1d | Dst1 | Dct2 | Dct4 | Dst2 | Dst4 => half_n,
            Dct1d => r_m * n,
            Dct1 | Dct3 | Dst3 => h * half_n,
            Amdst | Amdct2 | Amdct4 => half_n_pow,
            Amdct1 | Amdct3 => h * half_n_pow,
            Smdct => Ratio::from_integer(n).pow(self.dim as i32) * r_m * stab,
            Smdct1 | Smdct3 => h * half_n_pow * stab,
            Smdct2 | Smdct4 => half_n_pow * stab,
        }
    }
}

/// Exact label weights `D_r` and point weights `w_k`, in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    pub label_weights: Vec<Ratio<i64>>,
    pub point_weights: Vec<Ratio<i64>>,
}

/// Values on a transform's grid, in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct DataVector {
    values: Vec<f64>,
}

/// Coefficients on a transform's label set, in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    values: Vec<f64>,
}

macro_rules! indexed_vector {
    ($ty:ident, $set:ident) => {
        impl $ty {
            pub fn new(transform: &Transform, values: Vec<f64>) -> Result<Self> {
                let expected = transform.$set().cardinality() as usize;
                if values.len() != expected {
                    return Err(Error::LengthMismatch { expected, got: values.len() });
                }
                Ok(Self { values })
            }

            pub fn zeros(transform: &Transform) -> Self {
                Self { values: vec![0.0; transform.$set().cardinality() as usize] }
            }

            pub fn values(&self) -> &[f64] {
                &self.values
            }

            pub fn len(&self) -> usize {
                self.values.len()
            }

            pub fn is_empty(&self) -> bool {
                self.values.is_empty()
            }

            pub fn into_vec(self) -> Vec<f64> {
                self.values
            }
        }
    };
}

indexed_vector!(DataVector, grid_set);
indexed_vector!(CoefficientVector, label_set);

/// How the kernel matrix of a plan is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KernelStrategy {
    /// Determinant or permanent of the entry matrix.
    #[default]
    Fast,
    /// The explicit sum over `Sₙ`.
    Oracle,
}

/// Weighted inner products of all kernel rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Gram {
    size: usize,
    data: Vec<f64>,
}

impl Gram {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.size + j]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.size).map(|i| self.get(i, i)).collect()
    }

    pub fn max_off_diagonal(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.size {
            for j in 0..self.size {
                if i != j {
                    worst = worst.max(self.get(i, j).abs());
                }
            }
        }
        worst
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.size.max(1))
    }
}

/// A transform with its kernel matrix materialized. Immutable and `Sync`,
/// so one plan can serve many threads.
#[derive(Debug, Clone)]
pub struct TransformPlan {
    transform: Transform,
    labels: Vec<Vec<i64>>,
    grid: Vec<Vec<i64>>,
    /// Row-major `labels × grid`.
    matrix: Vec<f64>,
    label_weights: Vec<f64>,
    point_weights: Vec<f64>,
}

impl TransformPlan {
    pub fn new(transform: Transform) -> Self {
        Self::with_strategy(transform, KernelStrategy::Fast)
    }

    pub fn with_strategy(transform: Transform, strategy: KernelStrategy) -> Self {
        let labels = transform.labels();
        let grid = transform.grid();
        let matrix: Vec<f64> = labels
            .par_iter()
            .flat_map_iter(|r| {
                grid.iter().map(move |k| match strategy {
                    KernelStrategy::Fast => transform.kernel_at(r, k),
                    KernelStrategy::Oracle => transform.kernel_oracle(r, k),
                })
            })
            .collect();
        let weights = transform.weights();
        Self {
            transform,
            matrix,
            label_weights: weights.label_weights.into_iter().map(to_f64).collect(),
            point_weights: weights.point_weights.into_iter().map(to_f64).collect(),
            labels,
            grid,
        }
    }

    pub fn transform(&self) -> &Transform {
        &self.transform
    }

    pub fn labels(&self) -> &[Vec<i64>] {
        &self.labels
    }

    pub fn grid(&self) -> &[Vec<i64>] {
        &self.grid
    }

    pub fn label_weights(&self) -> &[f64] {
        &self.label_weights
    }

    pub fn point_weights(&self) -> &[f64] {
        &self.point_weights
    }

    #[inline]
    pub fn kernel(&self, label_index: usize, grid_index: usize) -> f64 {
        self.matrix[label_index * self.grid.len() + grid_index]
    }

    fn row(&self, i: usize) -> &[f64] {
        let g = self.grid.len();
        &self.matrix[i * g..(i + 1) * g]
    }

    /// `a_r = D_r⁻¹ Σ_k w_k f_k K(r,k)`.
    pub fn forward(&self, data: &DataVector) -> Result<CoefficientVector> {
        if data.len() != self.grid.len() {
            return Err(Error::LengthMismatch { expected: self.grid.len(), got: data.len() });
        }
        let weighted: Vec<f64> = data.values.iter().zip(&self.point_weights).map(|(f, w)| f * w).collect();
        let values = (0..self.labels.len())
            .into_par_iter()
            .map(|i| {
                let s: f64 = self.row(i).iter().zip(&weighted).map(|(k, f)| k * f).sum();
                // `+ 0.0` turns a negative zero into a positive one.
                s / self.label_weights[i] + 0.0
            })
            .collect();
        Ok(CoefficientVector { values })
    }

    /// `f_k = Σ_r a_r K(r,k)`.
    pub fn inverse(&self, coeffs: &CoefficientVector) -> Result<DataVector> {
        if coeffs.len() != self.labels.len() {
            return Err(Error::LengthMismatch { expected: self.labels.len(), got: coeffs.len() });
        }
        let values = (0..self.grid.len())
            .into_par_iter()
            .map(|j| (0..self.labels.len()).map(|i| coeffs.values[i] * self.kernel(i, j)).sum::<f64>() + 0.0)
            .collect();
        Ok(DataVector { values })
    }

    /// `G_{r r′} = Σ_k w_k K(r,k) K(r′,k)`.
    pub fn gram_matrix(&self) -> Gram {
        let size = self.labels.len();
        let data = (0..size * size)
            .into_par_iter()
            .map(|idx| {
                let (a, b) = (self.row(idx / size), self.row(idx % size));
                a.iter().zip(b).zip(&self.point_weights).map(|((x, y), w)| w * x * y).sum()
            })
            .collect();
        Gram { size, data }
    }

    /// Kernel row `r` sampled on the grid.
    pub fn kernel_samples(&self, label_index: usize) -> DataVector {
        DataVector { values: self.row(label_index).to_vec() }
    }

    /// `(Σ_k w_k f_k², Σ_r D_r a_r²)` for `a = forward(f)`.
    pub fn plancherel_energies(&self, data: &DataVector) -> Result<(f64, f64)> {
        let coeffs = self.forward(data)?;
        let data_energy = data.values.iter().zip(&self.point_weights).map(|(f, w)| w * f * f).sum();
        let coeff_energy = coeffs.values.iter().zip(&self.label_weights).map(|(a, d)| d * a * a).sum();
        Ok((data_energy, coeff_energy))
    }

    /// `|Σ_k w_k f_k² − Σ_r D_r a_r²|`.
    pub fn plancherel_defect(&self, data: &DataVector) -> Result<f64> {
        let (a, b) = self.plancherel_energies(data)?;
        Ok((a - b).abs())
    }
}

/// AMDST coefficients through a second, independent path: extend the data
/// antisymmetrically to the full cube `{1,…,N−1}ⁿ`, apply the 1-D sine
/// transform `(2/N) Σ_s f(s) sin πms/N` along each axis, and read off the
/// dominant labels scaled by `√n!`.
pub fn amdst_forward_separable(big_n: i64, dim: usize, data: &DataVector) -> Result<CoefficientVector> {
    let t = Transform::new(TransformKind::Amdst, big_n, dim)?;
    let grid_set = t.grid_set();
    if data.len() != grid_set.cardinality() as usize {
        return Err(Error::LengthMismatch { expected: grid_set.cardinality() as usize, got: data.len() });
    }
    let side = (big_n - 1).max(0) as usize;
    let total = side.pow(dim as u32);
    let coords = |mut flat: usize| -> Vec<i64> {
        let mut c = vec![0i64; dim];
        for slot in c.iter_mut().rev() {
            *slot = (flat % side) as i64 + 1;
            flat /= side;
        }
        c
    };
    let mut cube: Vec<f64> = (0..total)
        .map(|flat| {
            let s = coords(flat);
            let mut order: Vec<usize> = (0..dim).collect();
            order.sort_by(|&a, &b| s[b].cmp(&s[a]));
            let sorted: Vec<i64> = order.iter().map(|&i| s[i]).collect();
            match grid_set.index_of(&sorted) {
                Some(idx) => {
                    let sign = Permutation::from_images(order).expect("sort order").parity();
                    f64::from(sign) * data.values[idx]
                }
                None => 0.0,
            }
        })
        .collect();
    let dst: Vec<f64> = (1..=side as i64)
        .flat_map(|m| {
            (1..=side as i64).map(move |s| 2.0 / big_n as f64 * (std::f64::consts::PI * (m * s) as f64 / big_n as f64).sin())
        })
        .collect();
    for axis in 0..dim {
        let stride = side.pow((dim - 1 - axis) as u32);
        let mut next = vec![0.0; total];
        for (flat, out) in next.iter_mut().enumerate() {
            let m = (flat / stride) % side;
            let base = flat - m * stride;
            *out = (0..side).map(|s| dst[m * side + s] * cube[base + s * stride]).sum();
        }
        cube = next;
    }
    let scale = (factorial(dim) as f64).sqrt();
    let values = t
        .labels()
        .iter()
        .map(|m| {
            let flat = m.iter().fold(0usize, |acc, &v| acc * side + (v - 1) as usize);
            scale * cube[flat]
        })
        .collect();
    Ok(CoefficientVector { values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;
    use TransformKind::*;

    fn random_data(t: &Transform, rng: &mut ChaCha8Rng) -> DataVector {
        let len = t.grid_set().cardinality() as usize;
        DataVector::new(t, (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
    }

    fn all_transforms(max_n: i64, max_dim: usize) -> Vec<Transform> {
        let mut out = Vec::new();
        for kind in TransformKind::ALL {
            for big_n in 1..=max_n {
                let dims = if kind.symmetry() == Symmetry::OneDimensional { 1 } else { max_dim };
                for dim in 1..=dims {
                    out.push(Transform::new(kind, big_n, dim).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn kernel_examples() {
        let t = Transform::new(Amdst, 4, 2).unwrap();
        let k = GridPoint::new(vec![1, 2], 4).unwrap();
        // (1,2) is not descending, so use the unchecked form for the worked example.
        assert!(t.kernel_value(&[2, 1], &k).is_err());
        // det [[sin π/2, sin π], [sin π/4, sin π/2]] / √2 = 1/√2
        let expected = std::f64::consts::FRAC_1_SQRT_2;
        assert!((t.kernel_at(&[2, 1], &[1, 2]) - expected).abs() < 1e-15);
        assert!((t.kernel_oracle(&[2, 1], &[1, 2]) - expected).abs() < 1e-15);
        assert!((t.kernel_at(&[2, 1], &[2, 1]) + expected).abs() < 1e-15);
        for dim in 1..=4 {
            let t = Transform::new(Smdct1, 3, dim).unwrap();
            let v = t.kernel_value(&vec![0; dim], &GridPoint::new(vec![2; dim], 3).unwrap()).unwrap();
            assert!((v - (factorial(dim) as f64).sqrt()).abs() < 1e-12);
        }
        let t = Transform::new(Dct4, 4, 1).unwrap();
        assert_eq!(t.kernel_value(&[0], &GridPoint::new(vec![0], 4).unwrap()).unwrap(), (PI / 16.0).cos());
    }

    #[test]
    fn membership_errors() {
        let t = Transform::new(Amdst, 4, 2).unwrap();
        assert!(matches!(t.kernel_value(&[2, 2], &GridPoint::new(vec![2, 1], 4).unwrap()), Err(Error::OutOfSet { .. })));
        assert!(matches!(t.kernel_value(&[2, 1], &GridPoint::new(vec![2, 1], 5).unwrap()), Err(Error::OutOfSet { .. })));
        assert!(t.kernel_value(&[2], &GridPoint::new(vec![2, 1], 4).unwrap()).is_err());
        assert!(Transform::new(Dct2, 4, 2).is_err());
        assert!(Transform::new(Amdst, 0, 2).is_err());
    }

    #[test]
    fn square_for_all_sizes() {
        for t in all_transforms(10, 4) {
            assert_eq!(t.label_set().cardinality(), t.grid_set().cardinality(), "{:?}", t);
        }
    }

    #[test]
    fn dst_worked_example() {
        let t = Transform::new(Dst1d, 4, 1).unwrap();
        let plan = TransformPlan::new(t);
        let data: Vec<f64> = plan.grid().iter().map(|k| (PI * k[0] as f64 / 4.0).sin()).collect();
        let a = plan.forward(&DataVector::new(&t, data).unwrap()).unwrap();
        // labels are ordered 3, 2, 1
        assert_eq!(plan.labels(), &[vec![3], vec![2], vec![1]]);
        assert!((a.values()[2] - 1.0).abs() < 1e-15);
        assert!(a.values()[0].abs() < 1e-15 && a.values()[1].abs() < 1e-15);
    }

    #[test]
    fn gram_examples() {
        let plan = TransformPlan::new(Transform::new(Amdst, 4, 2).unwrap());
        let g = plan.gram_matrix();
        assert_eq!(g.size(), 3);
        for (i, d) in g.diagonal().iter().enumerate() {
            assert!((d - 4.0).abs() < 1e-12, "{i}: {d}");
        }
        assert!(g.max_off_diagonal() < 1e-12);
        let plan = TransformPlan::new(Transform::new(Dct1d, 2, 1).unwrap());
        let g = plan.gram_matrix();
        let zero = plan.labels().iter().position(|r| r == &vec![0]).unwrap();
        assert!((g.get(zero, zero) - 2.0).abs() < 1e-15);
        let t = Transform::new(Smdct4, 2, 2).unwrap();
        let plan = TransformPlan::new(t);
        for (i, r) in plan.labels().iter().enumerate() {
            let expected = stabilizer_order(r) as f64;
            assert!((plan.gram_matrix().get(i, i) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn every_gram_matches_stated_diagonal() {
        for t in all_transforms(6, 3) {
            let plan = TransformPlan::new(t);
            let g = plan.gram_matrix();
            assert!(g.max_off_diagonal() < 1e-10, "{t:?}: {}", g.max_off_diagonal());
            for (i, r) in plan.labels().iter().enumerate() {
                let stated = t.stated_gram_diagonal(r);
                assert_eq!(stated, t.gram_diagonal(r), "{t:?} {r:?}");
                assert!((g.get(i, i) - to_f64(stated)).abs() < 1e-10, "{t:?} {r:?}");
            }
        }
    }

    #[test]
    fn unit_coefficients_from_kernel_samples() {
        for t in all_transforms(5, 3) {
            let plan = TransformPlan::new(t);
            for i in 0..plan.labels().len() {
                let a = plan.forward(&plan.kernel_samples(i)).unwrap();
                for (j, v) in a.values().iter().enumerate() {
                    let e = if i == j { 1.0 } else { 0.0 };
                    assert!((v - e).abs() < 1e-10, "{t:?}");
                }
            }
            let zero = plan.forward(&DataVector::zeros(&t)).unwrap();
            assert!(zero.values().iter().all(|&v| v == 0.0));
            let zero = plan.inverse(&CoefficientVector::zeros(&t)).unwrap();
            assert!(zero.values().iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn round_trips_and_plancherel() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for t in all_transforms(6, 3) {
            let plan = TransformPlan::new(t);
            for _ in 0..5 {
                let f = random_data(&t, &mut rng);
                let back = plan.inverse(&plan.forward(&f).unwrap()).unwrap();
                for (a, b) in f.values().iter().zip(back.values()) {
                    assert!((a - b).abs() < 1e-10, "{t:?}");
                }
                let a = CoefficientVector::new(&t, f.values().to_vec()).unwrap();
                let again = plan.forward(&plan.inverse(&a).unwrap()).unwrap();
                for (x, y) in a.values().iter().zip(again.values()) {
                    assert!((x - y).abs() < 1e-10, "{t:?}");
                }
                let (e1, e2) = plan.plancherel_energies(&f).unwrap();
                assert!((e1 - e2).abs() <= 1e-10 * e1.max(1e-300), "{t:?}");
            }
        }
    }

    #[test]
    fn length_checks() {
        let t = Transform::new(Amdst, 4, 2).unwrap();
        assert!(DataVector::new(&t, vec![0.0; 2]).is_err());
        let plan = TransformPlan::new(Transform::new(Amdst, 5, 2).unwrap());
        let wrong = DataVector::zeros(&t);
        assert!(matches!(plan.forward(&wrong), Err(Error::LengthMismatch { expected: 6, got: 3 })));
    }

    #[test]
    fn antisymmetry_and_vanishing() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for kind in TransformKind::MULTIVARIATE {
            let t = Transform::new(kind, 5, 3).unwrap();
            for r in t.labels() {
                let k: Vec<i64> = (0..3).map(|_| rng.gen_range(0..=4)).collect();
                let base = t.kernel_at(&r, &k);
                for w in Permutation::all(3) {
                    let v = t.kernel_at(&r, &w.permute(&k));
                    let sign = if kind.symmetry() == Symmetry::Antisymmetric { f64::from(w.parity()) } else { 1.0 };
                    assert!((v - sign * base).abs() < 1e-12);
                }
                if kind.symmetry() == Symmetry::Antisymmetric {
                    assert!(t.kernel_at(&r, &[3, 3, 1]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn one_dimensional_consistency() {
        for (multi, single) in [(Amdst, Dst1d), (Smdct, Dct1d), (Smdct1, Dct1), (Amdct1, Dct1)]
            .into_iter()
            .chain([(Amdct2, Dct2), (Smdct2, Dct2), (Amdct3, Dct3), (Smdct3, Dct3), (Amdct4, Dct4), (Smdct4, Dct4)])
        {
            for big_n in 1..=6 {
                let a = TransformPlan::new(Transform::new(multi, big_n, 1).unwrap());
                let b = TransformPlan::new(Transform::new(single, big_n, 1).unwrap());
                assert_eq!(a.labels(), b.labels());
                assert_eq!(a.grid(), b.grid());
                assert_eq!(a.matrix, b.matrix, "{multi} vs {single}");
                assert_eq!(a.label_weights, b.label_weights);
                assert_eq!(a.point_weights, b.point_weights);
            }
        }
    }

    #[test]
    fn oracle_kernels_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for kind in TransformKind::MULTIVARIATE {
            for dim in 1..=4 {
                let t = Transform::new(kind, 4, dim).unwrap();
                let fast = TransformPlan::new(t);
                let slow = TransformPlan::with_strategy(t, KernelStrategy::Oracle);
                let f = random_data(&t, &mut rng);
                let (a, b) = (fast.forward(&f).unwrap(), slow.forward(&f).unwrap());
                for (x, y) in a.values().iter().zip(b.values()) {
                    assert!((x - y).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn amdst_separable_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (big_n, dim) in [(4, 2), (6, 2), (5, 3), (6, 3), (6, 1)] {
            let t = Transform::new(Amdst, big_n, dim).unwrap();
            let plan = TransformPlan::new(t);
            let f = random_data(&t, &mut rng);
            let a = plan.forward(&f).unwrap();
            let b = amdst_forward_separable(big_n, dim, &f).unwrap();
            for (x, y) in a.values().iter().zip(b.values()) {
                assert!((x - y).abs() < 1e-10, "N={big_n} n={dim}");
            }
        }
    }

    #[test]
    fn smdct_and_smdct1_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for (big_n, dim) in [(4, 2), (3, 3)] {
            let a = TransformPlan::new(Transform::new(Smdct, big_n, dim).unwrap());
            let b = TransformPlan::new(Transform::new(Smdct1, big_n, dim).unwrap());
            let f = random_data(a.transform(), &mut rng);
            let (x, y) = (a.forward(&f).unwrap(), b.forward(&f).unwrap());
            for (u, v) in x.values().iter().zip(y.values()) {
                assert!((u - v).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn empty_sets() {
        let t = Transform::new(Amdst, 2, 2).unwrap();
        let plan = TransformPlan::new(t);
        assert!(plan.labels().is_empty());
        assert_eq!(plan.forward(&DataVector::zeros(&t)).unwrap().len(), 0);
        assert_eq!(plan.gram_matrix().max_off_diagonal(), 0.0);
    }
}
