//! The twenty transform kinds as pure data: 1-D kernel entry, label and
//! grid ranges, and the one-dimensional weights `c_k` and `h_r`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{invalid, Error, Result};

/// One-dimensional kernel entries, as functions of integer `r`, `k` and `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Entry {
    /// `sin πrk/N`.
    Sine,
    /// `cos πrk/N`.
    Cosine,
    /// `cos π(r+½)k/N`.
    Cos2,
    /// `cos πr(k+½)/N`.
    Cos3,
    /// `cos π(r+½)(k+½)/N`.
    Cos4,
    /// `sin π(r+½)k/N`.
    Sin2,
    /// `sin πr(k+½)/N`.
    Sin3,
    /// `sin π(r+½)(k+½)/N`.
    Sin4,
}

impl Entry {
    /// The angle as `π·num/den` with integer `num`, `den`.
    fn angle(self, r: i64, k: i64, big_n: i64) -> (i64, i64) {
        match self {
            Entry::Sine | Entry::Cosine => (r * k, big_n),
            Entry::Cos2 | Entry::Sin2 => ((2 * r + 1) * k, 2 * big_n),
            Entry::Cos3 | Entry::Sin3 => (r * (2 * k + 1), 2 * big_n),
            Entry::Cos4 | Entry::Sin4 => ((2 * r + 1) * (2 * k + 1), 4 * big_n),
        }
    }

    pub fn is_sine(self) -> bool {
        matches!(self, Entry::Sine | Entry::Sin2 | Entry::Sin3 | Entry::Sin4)
    }

    #[inline]
    pub fn value(self, r: i64, k: i64, big_n: i64) -> f64 {
        let (num, den) = self.angle(r, k, big_n);
        let t = PI * num as f64 / den as f64;
        if self.is_sine() {
            t.sin()
        } else {
            t.cos()
        }
    }
}

/// How the multivariate kernel is assembled from the 1-D entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    /// A bare 1-D transform; `n` must be 1.
    OneDimensional,
    /// Determinant over strictly descending labels and grid points.
    Antisymmetric,
    /// Permanent over weakly descending labels and grid points.
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    Dst1d,
    Dct1d,
    Dct1,
    Dct2,
    Dct3,
    Dct4,
    Dst1,
    Dst2,
    Dst3,
    Dst4,
    Amdst,
    Smdct,
    Amdct1,
    Amdct2,
    Amdct3,
    Amdct4,
    Smdct1,
    Smdct2,
    Smdct3,
    Smdct4,
}

/// Inclusive range `lo..=N+hi_offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct AxisRange {
    pub lo: i64,
    pub hi_offset: i64,
}

impl TransformKind {
    pub const ALL: [TransformKind; 20] = [
        Self::Dst1d,
        Self::Dct1d,
        Self::Dct1,
        Self::Dct2,
        Self::Dct3,
        Self::Dct4,
        Self::Dst1,
        Self::Dst2,
        Self::Dst3,
        Self::Dst4,
        Self::Amdst,
        Self::Smdct,
        Self::Amdct1,
        Self::Amdct2,
        Self::Amdct3,
        Self::Amdct4,
        Self::Smdct1,
        Self::Smdct2,
        Self::Smdct3,
        Self::Smdct4,
    ];

    /// The ten multivariate kinds.
    pub const MULTIVARIATE: [TransformKind; 10] = [
        Self::Amdst,
        Self::Smdct,
        Self::Amdct1,
        Self::Amdct2,
        Self::Amdct3,
        Self::Amdct4,
        Self::Smdct1,
        Self::Smdct2,
        Self::Smdct3,
        Self::Smdct4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Dst1d => "dst1d",
            Self::Dct1d => "dct1d",
            Self::Dct1 => "dct-1",
            Self::Dct2 => "dct-2",
            Self::Dct3 => "dct-3",
            Self::Dct4 => "dct-4",
            Self::Dst1 => "dst-1",
            Self::Dst2 => "dst-2",
            Self::Dst3 => "dst-3",
            Self::Dst4 => "dst-4",
            Self::Amdst => "amdst",
            Self::Smdct => "smdct",
            Self::Amdct1 => "amdct-1",
            Self::Amdct2 => "amdct-2",
            Self::Amdct3 => "amdct-3",
            Self::Amdct4 => "amdct-4",
            Self::Smdct1 => "smdct-1",
            Self::Smdct2 => "smdct-2",
            Self::Smdct3 => "smdct-3",
            Self::Smdct4 => "smdct-4",
        }
    }

    pub fn symmetry(self) -> Symmetry {
        use TransformKind::*;
        match self {
            Dst1d | Dct1d | Dct1 | Dct2 | Dct3 | Dct4 | Dst1 | Dst2 | Dst3 | Dst4 => Symmetry::OneDimensional,
            Amdst | Amdct1 | Amdct2 | Amdct3 | Amdct4 => Symmetry::Antisymmetric,
            Smdct | Smdct1 | Smdct2 | Smdct3 | Smdct4 => Symmetry::Symmetric,
        }
    }

    pub fn entry(self) -> Entry {
        use TransformKind::*;
        match self {
            Dst1d | Dst1 | Amdst => Entry::Sine,
            Dct1d | Dct1 | Smdct | Amdct1 | Smdct1 => Entry::Cosine,
            Dct2 | Amdct2 | Smdct2 => Entry::Cos2,
            Dct3 | Amdct3 | Smdct3 => Entry::Cos3,
            Dct4 | Amdct4 | Smdct4 => Entry::Cos4,
            Dst2 => Entry::Sin2,
            Dst3 => Entry::Sin3,
            Dst4 => Entry::Sin4,
        }
    }

    /// The 1-D kind whose kernel, weights and ranges this kind is built from.
    pub fn base(self) -> TransformKind {
        use TransformKind::*;
        match self {
            Amdst => Dst1d,
            Smdct => Dct1d,
            Amdct1 | Smdct1 => Dct1,
            Amdct2 | Smdct2 => Dct2,
            Amdct3 | Smdct3 => Dct3,
            Amdct4 | Smdct4 => Dct4,
            k => k,
        }
    }

    pub(crate) fn label_axis(self) -> AxisRange {
        use TransformKind::*;
        match self.base() {
            Dst1d | Dst1 => AxisRange { lo: 1, hi_offset: -1 },
            Dct1d | Dct1 => AxisRange { lo: 0, hi_offset: 0 },
            Dst3 => AxisRange { lo: 1, hi_offset: 0 },
            _ => AxisRange { lo: 0, hi_offset: -1 },
        }
    }

    pub(crate) fn grid_axis(self) -> AxisRange {
        use TransformKind::*;
        match self.base() {
            Dst1d | Dst1 => AxisRange { lo: 1, hi_offset: -1 },
            Dct1d | Dct1 => AxisRange { lo: 0, hi_offset: 0 },
            Dst2 => AxisRange { lo: 1, hi_offset: 0 },
            _ => AxisRange { lo: 0, hi_offset: -1 },
        }
    }

    /// Per-axis point weight `c_k`.
    pub fn point_weight_1d(self, k: i64, big_n: i64) -> Ratio<i64> {
        use TransformKind::*;
        let half = Ratio::new(1, 2);
        match self.base() {
            Dct1d | Dct1 if k == 0 || k == big_n => half,
            Dct2 if k == 0 => half,
            Dst2 if k == big_n => half,
            _ => Ratio::from_integer(1),
        }
    }

    /// Per-axis label weight `h_r`, with `Σ_k c_k e(r,k) e(r′,k) = h_r (N/2) δ`.
    pub fn label_weight_1d(self, r: i64, big_n: i64) -> Ratio<i64> {
        use TransformKind::*;
        match self.base() {
            Dct1d | Dct1 if r == 0 || r == big_n => Ratio::from_integer(2),
            Dct3 if r == 0 => Ratio::from_integer(2),
            Dst3 if r == big_n => Ratio::from_integer(2),
            _ => Ratio::from_integer(1),
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|k| k.name() == lower)
            .ok_or_else(|| invalid(format!("unknown transform kind '{s}'")))
    }
}
