//! Dominant label sets, grids and stabilizers.
//!
//! Every set used by the transforms is a set of descending integer tuples
//! `hi ≥ t₁ ⋄ t₂ ⋄ … ⋄ tₙ ≥ lo` with `⋄` either `>` or `≥`. Enumeration
//! order is lexicographically descending throughout.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::kernel::Point;

/// `C(a, b)`, zero for `b > a` or negative `a`.
pub fn binomial(a: i64, b: i64) -> u64 {
    if b < 0 || a < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1))
}

/// The tuples `hi ≥ t₁ ⋄ … ⋄ tₙ ≥ lo`, strict or weak.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DescendingSet {
    pub lo: i64,
    pub hi: i64,
    pub strict: bool,
    pub dim: usize,
}

impl DescendingSet {
    pub fn new(lo: i64, hi: i64, strict: bool, dim: usize) -> Self {
        Self { lo, hi, strict, dim }
    }

    /// Closed-form size: `C(hi−lo+1, n)` strict, `C(hi−lo+n, n)` weak.
    pub fn cardinality(&self) -> u64 {
        let width = self.hi - self.lo + 1;
        if width <= 0 {
            return u64::from(self.dim == 0);
        }
        let n = self.dim as i64;
        if self.strict {
            binomial(width, n)
        } else {
            binomial(width + n - 1, n)
        }
    }

    pub fn contains(&self, t: &[i64]) -> bool {
        t.len() == self.dim
            && t.iter().all(|&v| (self.lo..=self.hi).contains(&v))
            && t.windows(2).all(|w| if self.strict { w[0] > w[1] } else { w[0] >= w[1] })
    }

    pub fn enumerate(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(self.cardinality() as usize);
        let mut current = Vec::with_capacity(self.dim);
        self.extend(self.hi, &mut current, &mut out);
        out
    }

    fn extend(&self, top: i64, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if current.len() == self.dim {
            out.push(current.clone());
            return;
        }
        let mut v = top;
        while v >= self.lo {
            current.push(v);
            self.extend(if self.strict { v - 1 } else { v }, current, out);
            current.pop();
            v -= 1;
        }
    }

    /// Position of `t` in [`Self::enumerate`] order.
    pub fn index_of(&self, t: &[i64]) -> Option<usize> {
        if !self.contains(t) {
            return None;
        }
        // Count tuples that precede t lexicographically-descending.
        let mut index = 0u64;
        let mut top = self.hi;
        for (pos, &v) in t.iter().enumerate() {
            let rest = (self.dim - pos - 1) as i64;
            for bigger in (v + 1)..=top {
                let next_top = if self.strict { bigger - 1 } else { bigger };
                index += DescendingSet::new(self.lo, next_top, self.strict, rest as usize).cardinality();
            }
            top = if self.strict { v - 1 } else { v };
        }
        Some(index as usize)
    }
}

impl fmt::Display for DescendingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.strict { ">" } else { "≥" };
        write!(f, "{{{} ≥ t₁ {rel} … {rel} t{} ≥ {}}}", self.hi, self.dim, self.lo)
    }
}

/// Named dominant label sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelSetKind {
    /// `m₁ > … > mₙ > 0`, truncated at `m₁ ≤ bound`.
    StrictPositive,
    /// `m₁ ≥ … ≥ mₙ ≥ 0`, truncated at `m₁ ≤ bound`.
    WeakNonneg,
    /// `N > m₁ > … > mₙ > 0`.
    SineGrid,
    /// `N ≥ m₁ > … > mₙ ≥ 0`.
    StrictWithZero,
    /// `N ≥ m₁ ≥ … ≥ mₙ ≥ 0`.
    WeakBounded,
    /// `N−1 ≥ m₁ > … > mₙ ≥ 0`.
    VariantStrict,
    /// `N−1 ≥ m₁ ≥ … ≥ mₙ ≥ 0`.
    VariantWeak,
}

impl LabelSetKind {
    pub const ALL: [LabelSetKind; 7] = [
        Self::StrictPositive,
        Self::WeakNonneg,
        Self::SineGrid,
        Self::StrictWithZero,
        Self::WeakBounded,
        Self::VariantStrict,
        Self::VariantWeak,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::StrictPositive => "strict-positive",
            Self::WeakNonneg => "weak-nonneg",
            Self::SineGrid => "sine-grid",
            Self::StrictWithZero => "strict-with-zero",
            Self::WeakBounded => "weak-bounded",
            Self::VariantStrict => "variant-strict",
            Self::VariantWeak => "variant-weak",
        }
    }
}

impl FromStr for LabelSetKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| invalid(format!("unknown label set '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DominantLabelSet {
    pub kind: LabelSetKind,
    /// `N` for the bounded sets, the truncation bound `M` otherwise.
    pub bound: i64,
    pub dim: usize,
}

impl DominantLabelSet {
    pub fn new(kind: LabelSetKind, bound: i64, dim: usize) -> Self {
        Self { kind, bound, dim }
    }

    pub fn range(&self) -> DescendingSet {
        let (lo, hi, strict) = match self.kind {
            LabelSetKind::StrictPositive => (1, self.bound, true),
            LabelSetKind::WeakNonneg => (0, self.bound, false),
            LabelSetKind::SineGrid => (1, self.bound - 1, true),
            LabelSetKind::StrictWithZero => (0, self.bound, true),
            LabelSetKind::WeakBounded => (0, self.bound, false),
            LabelSetKind::VariantStrict => (0, self.bound - 1, true),
            LabelSetKind::VariantWeak => (0, self.bound - 1, false),
        };
        DescendingSet::new(lo, hi, strict, self.dim)
    }

    pub fn cardinality(&self) -> u64 {
        self.range().cardinality()
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        self.range().contains(m)
    }
}

pub fn enumerate_labels(set: &DominantLabelSet) -> Vec<Vec<i64>> {
    set.range().enumerate()
}

/// Named grids of numerators `k` (points `k/N`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridKind {
    /// `N−1 ≥ k₁ > … > kₙ ≥ 1`.
    SineInterior,
    /// `N ≥ k₁ ≥ … ≥ kₙ ≥ 0`.
    CosineClosed,
    /// `N ≥ k₁ > … > kₙ ≥ 0`.
    StrictClosed,
    /// `N−1 ≥ k₁ > … > kₙ ≥ 0`.
    HalfOpenStrict,
    /// `N−1 ≥ k₁ ≥ … ≥ kₙ ≥ 0`.
    HalfOpenWeak,
}

impl GridKind {
    pub const ALL: [GridKind; 5] = [
        Self::SineInterior,
        Self::CosineClosed,
        Self::StrictClosed,
        Self::HalfOpenStrict,
        Self::HalfOpenWeak,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::SineInterior => "sine-interior",
            Self::CosineClosed => "cosine-closed",
            Self::StrictClosed => "strict-closed",
            Self::HalfOpenStrict => "half-open-strict",
            Self::HalfOpenWeak => "half-open-weak",
        }
    }

    pub fn range(self, big_n: i64, dim: usize) -> DescendingSet {
        let (lo, hi, strict) = match self {
            Self::SineInterior => (1, big_n - 1, true),
            Self::CosineClosed => (0, big_n, false),
            Self::StrictClosed => (0, big_n, true),
            Self::HalfOpenStrict => (0, big_n - 1, true),
            Self::HalfOpenWeak => (0, big_n - 1, false),
        };
        DescendingSet::new(lo, hi, strict, dim)
    }
}

impl FromStr for GridKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| invalid(format!("unknown grid '{s}'")))
    }
}

/// The rational point `k/N`, kept as integer numerators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridPoint {
    pub numerators: Vec<i64>,
    pub denominator: i64,
}

impl GridPoint {
    pub fn new(numerators: Vec<i64>, denominator: i64) -> Result<Self> {
        if denominator < 1 {
            return Err(invalid(format!("grid denominator must be ≥ 1, got {denominator}")));
        }
        if let Some(k) = numerators.iter().find(|&&k| !(0..=denominator).contains(&k)) {
            return Err(invalid(format!("grid numerator {k} outside 0..={denominator}")));
        }
        Ok(Self { numerators, denominator })
    }

    pub fn dim(&self) -> usize {
        self.numerators.len()
    }

    pub fn to_point(&self) -> Point {
        let n = self.denominator as f64;
        Point::new(self.numerators.iter().map(|&k| k as f64 / n).collect()).expect("finite")
    }

    /// Strictly descending interior point: `N > k₁ > … > kₙ > 0`.
    pub fn in_sine_interior(&self) -> bool {
        GridKind::SineInterior.range(self.denominator, self.dim()).contains(&self.numerators)
    }

    /// Weakly descending closed point: `N ≥ k₁ ≥ … ≥ kₙ ≥ 0`.
    pub fn in_cosine_closed(&self) -> bool {
        GridKind::CosineClosed.range(self.denominator, self.dim()).contains(&self.numerators)
    }
}

pub fn enumerate_grid(kind: GridKind, big_n: i64, dim: usize) -> Vec<GridPoint> {
    kind.range(big_n, dim)
        .enumerate()
        .into_iter()
        .map(|numerators| GridPoint { numerators, denominator: big_n })
        .collect()
}

/// `|G_m|`: the number of permutations fixing `m`, i.e. the product of
/// `multiplicity!` over groups of equal entries.
pub fn stabilizer_order<T: PartialEq>(entries: &[T]) -> u64 {
    let mut counted = vec![false; entries.len()];
    let mut order = 1u64;
    for i in 0..entries.len() {
        if counted[i] {
            continue;
        }
        let mut mult = 0u64;
        for j in i..entries.len() {
            if !counted[j] && entries[j] == entries[i] {
                counted[j] = true;
                mult += 1;
            }
        }
        order *= (1..=mult).product::<u64>();
    }
    order
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::Permutation;
    use std::collections::HashSet;

    #[test]
    fn stabilizer_examples() {
        assert_eq!(stabilizer_order(&[3, 2, 1]), 1);
        assert_eq!(stabilizer_order(&[2, 2, 1]), 2);
        assert_eq!(stabilizer_order(&[2, 2, 2]), 6);
        assert_eq!(stabilizer_order(&[1, 0, 1, 0]), 4);
        assert_eq!(stabilizer_order::<i64>(&[]), 1);
    }

    #[test]
    fn stabilizer_matches_orbit_count() {
        for n in 1..=4 {
            for m in DescendingSet::new(0, 3, false, n).enumerate() {
                let orbit: HashSet<Vec<i64>> = Permutation::all(n).map(|w| w.permute(&m)).collect();
                assert_eq!(stabilizer_order(&m), factorial(n) / orbit.len() as u64, "{m:?}");
            }
        }
    }

    #[test]
    fn label_set_examples() {
        let s = DominantLabelSet::new(LabelSetKind::SineGrid, 4, 2);
        assert_eq!(enumerate_labels(&s), vec![vec![3, 2], vec![3, 1], vec![2, 1]]);
        assert_eq!(s.cardinality(), binomial(3, 2));
        let w = DominantLabelSet::new(LabelSetKind::WeakBounded, 1, 2);
        assert_eq!(enumerate_labels(&w), vec![vec![1, 1], vec![1, 0], vec![0, 0]]);
        let z = DominantLabelSet::new(LabelSetKind::StrictWithZero, 2, 2);
        assert_eq!(enumerate_labels(&z), vec![vec![2, 1], vec![2, 0], vec![1, 0]]);
        assert_eq!(z.cardinality(), binomial(3, 2));
    }

    #[test]
    fn empty_sets_are_not_errors() {
        let s = DominantLabelSet::new(LabelSetKind::SineGrid, 2, 2);
        assert!(enumerate_labels(&s).is_empty());
        assert_eq!(s.cardinality(), 0);
        assert!(enumerate_grid(GridKind::SineInterior, 2, 2).is_empty());
    }

    #[test]
    fn grid_examples() {
        let g: Vec<Vec<i64>> = enumerate_grid(GridKind::SineInterior, 4, 2).into_iter().map(|p| p.numerators).collect();
        assert_eq!(g, vec![vec![3, 2], vec![3, 1], vec![2, 1]]);
        let g: Vec<Vec<i64>> = enumerate_grid(GridKind::CosineClosed, 1, 2).into_iter().map(|p| p.numerators).collect();
        assert_eq!(g, vec![vec![1, 1], vec![1, 0], vec![0, 0]]);
    }

    #[test]
    fn closed_form_cardinalities_and_index() {
        for big_n in 1..=10 {
            for n in 1..=4 {
                for kind in LabelSetKind::ALL {
                    let set = DominantLabelSet::new(kind, big_n, n);
                    let all = enumerate_labels(&set);
                    assert_eq!(all.len() as u64, set.cardinality(), "{kind:?} N={big_n} n={n}");
                    for (i, m) in all.iter().enumerate() {
                        assert_eq!(set.range().index_of(m), Some(i));
                    }
                    // strictly descending lexicographic order
                    assert!(all.windows(2).all(|w| w[0] > w[1]));
                }
                assert_eq!(
                    enumerate_labels(&DominantLabelSet::new(LabelSetKind::SineGrid, big_n, n)).len(),
                    enumerate_grid(GridKind::SineInterior, big_n, n).len()
                );
                assert_eq!(
                    DominantLabelSet::new(LabelSetKind::SineGrid, big_n, n).cardinality(),
                    binomial(big_n - 1, n as i64)
                );
                assert_eq!(
                    DominantLabelSet::new(LabelSetKind::StrictWithZero, big_n, n).cardinality(),
                    binomial(big_n + 1, n as i64)
                );
                assert_eq!(
                    DominantLabelSet::new(LabelSetKind::WeakBounded, big_n, n).cardinality(),
                    binomial(big_n + n as i64, n as i64)
                );
            }
        }
    }

    #[test]
    fn grid_point_membership() {
        let p = GridPoint::new(vec![3, 1], 4).unwrap();
        assert!(p.in_sine_interior() && p.in_cosine_closed());
        let q = GridPoint::new(vec![4, 4], 4).unwrap();
        assert!(!q.in_sine_interior() && q.in_cosine_closed());
        let r = GridPoint::new(vec![1, 3], 4).unwrap();
        assert!(!r.in_sine_interior() && !r.in_cosine_closed());
        assert!(GridPoint::new(vec![5], 4).is_err());
        assert!(GridPoint::new(vec![0], 0).is_err());
        assert_eq!(p.to_point().as_slice(), &[0.75, 0.25]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(-1, 0), 0);
    }
}
