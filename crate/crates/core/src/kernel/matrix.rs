//! Dense square matrices with determinant and permanent.

/// Size at which [`SquareMatrix::permanent`] switches from the direct
/// expansion to Ryser's formula. The direct path costs about `e·n!`
/// multiplications against `n·2ⁿ` for Ryser; the two cross between 5 and 6.
pub const RYSER_THRESHOLD: usize = 6;

/// Row-major `n × n` matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn from_fn(n: usize, mut entry: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(entry(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds a matrix from row-major data; `None` if the length is not a square.
    pub fn from_rows(data: Vec<f64>) -> Option<Self> {
        let n = (data.len() as f64).sqrt().round() as usize;
        (n * n == data.len()).then_some(Self { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> f64 {
        let n = self.n;
        if n == 0 {
            return 1.0;
        }
        let mut a = self.data.clone();
        let mut det = 1.0;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&r, &s| a[r * n + col].abs().total_cmp(&a[s * n + col].abs()))
                .unwrap();
            let p = a[pivot * n + col];
            if p == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            det *= p;
            for r in col + 1..n {
                let factor = a[r * n + col] / p;
                if factor != 0.0 {
                    for j in col + 1..n {
                        a[r * n + j] -= factor * a[col * n + j];
                    }
                }
            }
        }
        det
    }

    /// Permanent: direct expansion below [`RYSER_THRESHOLD`], Ryser above.
    pub fn permanent(&self) -> f64 {
        if self.n < RYSER_THRESHOLD {
            self.permanent_direct()
        } else {
            self.permanent_ryser()
        }
    }

    /// Row-by-row expansion over unused columns; visits all `n!` terms.
    pub fn permanent_direct(&self) -> f64 {
        fn expand(m: &SquareMatrix, row: usize, used: u64) -> f64 {
            if row == m.n {
                return 1.0;
            }
            let mut acc = 0.0;
            for j in 0..m.n {
                if used & (1 << j) == 0 {
                    let a = m.get(row, j);
                    if a != 0.0 {
                        acc += a * expand(m, row + 1, used | (1 << j));
                    }
                }
            }
            acc
        }
        assert!(self.n < 64, "permanent_direct supports n < 64");
        expand(self, 0, 0)
    }

    /// Ryser's inclusion–exclusion formula, visiting column subsets in
    /// Gray-code order so each step updates the row sums by one column.
    pub fn permanent_ryser(&self) -> f64 {
        let n = self.n;
        if n == 0 {
            return 1.0;
        }
        assert!(n < 64, "permanent_ryser supports n < 64");
        let mut row_sums = vec![0.0; n];
        let mut total = 0.0;
        let mut prev_gray: u64 = 0;
        for step in 1u64..(1u64 << n) {
            let gray = step ^ (step >> 1);
            let changed = (gray ^ prev_gray).trailing_zeros() as usize;
            let sign = if gray & (1 << changed) != 0 { 1.0 } else { -1.0 };
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += sign * self.get(i, changed);
            }
            prev_gray = gray;
            let prod: f64 = row_sums.iter().product();
            if gray.count_ones() % 2 == (n as u32) % 2 {
                total += prod;
            } else {
                total -= prod;
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_determinants() {
        let m = SquareMatrix::from_rows(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(m.determinant(), -2.0);
        let m = SquareMatrix::from_rows(vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(m.determinant(), -1.0);
        let m = SquareMatrix::from_rows(vec![2.0, 0.0, 1.0, 1.0, 3.0, 2.0, 1.0, 1.0, 2.0]).unwrap();
        assert!((m.determinant() - 6.0).abs() < 1e-14);
        assert_eq!(SquareMatrix::from_fn(3, |_, _| 1.0).determinant(), 0.0);
    }

    #[test]
    fn all_ones_permanent_is_factorial() {
        let mut fact = 1.0;
        for n in 1..=9 {
            fact *= n as f64;
            let m = SquareMatrix::from_fn(n, |_, _| 1.0);
            assert_eq!(m.permanent_ryser(), fact, "ryser n={n}");
            assert_eq!(m.permanent_direct(), fact, "direct n={n}");
        }
    }

    #[test]
    fn ryser_matches_direct_on_pseudo_random_matrices() {
        for n in 1..=8 {
            let m = SquareMatrix::from_fn(n, |i, j| ((i * 7 + j * 13 + n) as f64 * 0.37).sin());
            let d = m.permanent_direct();
            let r = m.permanent_ryser();
            assert!((d - r).abs() <= 1e-12 * (1.0 + d.abs()), "n={n}: {d} vs {r}");
        }
    }

    #[test]
    fn non_square_rejected() {
        assert!(SquareMatrix::from_rows(vec![1.0, 2.0, 3.0]).is_none());
    }
}
