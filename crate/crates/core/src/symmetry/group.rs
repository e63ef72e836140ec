//! Permutations and elements of `Sₙ × Z₂ⁿ × Tₙ`.

use crate::error::{invalid, Error, Result};
use crate::kernel::Point;

/// A permutation of `{0, …, n−1}` stored by images: `w(i) = images[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(invalid(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Self { images })
    }

    /// Swaps `i` and `j` (0-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Self { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &w)| i == w)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "permutation sizes differ");
        Self {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.len()];
        for (i, &w) in self.images.iter().enumerate() {
            images[w] = i;
        }
        Self { images }
    }

    /// `det w`: `(−1)^(n − #cycles)`.
    pub fn parity(&self) -> i8 {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if !seen[start] {
                cycles += 1;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    i = self.images[i];
                }
            }
        }
        if (n - cycles).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Moves entry `i` to position `w(i)`: `(w·v)_{w(i)} = vᵢ`.
    pub fn permute<T: Copy>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.len());
        let mut out = v.to_vec();
        for (i, &w) in self.images.iter().enumerate() {
            out[w] = v[i];
        }
        out
    }

    /// All of `Sₙ` in lexicographic order of the image vectors.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((0..n).collect()),
        }
    }
}

/// Iterator over `Sₙ`; see [`Permutation::all`].
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // Standard next-permutation step.
        if let Some(i) = (1..succ.len()).rev().find(|&i| succ[i - 1] < succ[i]) {
            let j = (i..succ.len()).rev().find(|&j| succ[j] > succ[i - 1]).unwrap();
            succ.swap(i - 1, j);
            succ[i..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation { images: current })
    }
}

/// `g = (w, ε, r)` acting by `x ↦ ε ⊙ (w·x) + r`: permute, then flip signs,
/// then shift.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    perm: Permutation,
    signs: Vec<i8>,
    shift: Vec<i64>,
}

impl GroupElement {
    pub fn new(perm: Permutation, signs: Vec<i8>, shift: Vec<i64>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: signs.len() });
        }
        if shift.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: shift.len() });
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(invalid(format!("signs must be ±1, got {signs:?}")));
        }
        Ok(Self { perm, signs, shift })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: Permutation::identity(n),
            signs: vec![1; n],
            shift: vec![0; n],
        }
    }

    pub fn from_perm(perm: Permutation) -> Self {
        let n = perm.len();
        Self { perm, signs: vec![1; n], shift: vec![0; n] }
    }

    pub fn from_shift(shift: Vec<i64>) -> Self {
        let n = shift.len();
        Self { perm: Permutation::identity(n), signs: vec![1; n], shift }
    }

    /// The sign change `εᵢ` of coordinate `i`.
    pub fn flip(n: usize, i: usize) -> Self {
        let mut signs = vec![1; n];
        signs[i] = -1;
        Self { perm: Permutation::identity(n), signs, shift: vec![0; n] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    /// `det w` of the permutation part.
    pub fn parity(&self) -> i8 {
        self.perm.parity()
    }

    /// `(−1)^{#flips}`.
    pub fn flip_parity(&self) -> i8 {
        self.signs.iter().product()
    }

    pub fn is_pure_shift(&self) -> bool {
        self.perm.is_identity() && self.signs.iter().all(|&s| s == 1)
    }

    pub fn act(&self, x: &Point) -> Result<Point> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.dim() });
        }
        Point::new(self.act_slice(x.as_slice()))
    }

    pub fn act_slice(&self, x: &[f64]) -> Vec<f64> {
        let mut y = self.perm.permute(x);
        for ((yi, &s), &r) in y.iter_mut().zip(&self.signs).zip(&self.shift) {
            *yi = f64::from(s) * *yi + r as f64;
        }
        y
    }

    /// `self · other`, acting as `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        // S₁P₁(S₂P₂x + r₂) + r₁ = (S₁·P₁S₂P₁⁻¹)(P₁P₂)x + S₁P₁r₂ + r₁
        let moved_signs = self.perm.permute(&other.signs);
        let moved_shift = self.perm.permute(&other.shift);
        Self {
            perm: self.perm.compose(&other.perm),
            signs: self.signs.iter().zip(&moved_signs).map(|(a, b)| a * b).collect(),
            shift: self
                .signs
                .iter()
                .zip(&moved_shift)
                .zip(&self.shift)
                .map(|((&s, &r2), &r1)| i64::from(s) * r2 + r1)
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        // x = P⁻¹S(y − r) = (P⁻¹SP)P⁻¹y − P⁻¹Sr
        let inv = self.perm.inverse();
        let signed_shift: Vec<i64> = self.signs.iter().zip(&self.shift).map(|(&s, &r)| -i64::from(s) * r).collect();
        Self {
            signs: inv.permute(&self.signs),
            shift: inv.permute(&signed_shift),
            perm: inv,
        }
    }
}
