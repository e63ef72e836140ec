//! Folding points into the closed fundamental domain `½ ≥ x₁ ≥ … ≥ xₙ ≥ 0`.

use crate::kernel::{Family, Point};

/// Result of [`fold`].
#[derive(Debug, Clone, PartialEq)]
pub struct Folded {
    pub point: Point,
    /// `det w` of the sorting permutation.
    pub perm_parity: i8,
    /// `(−1)^{#reflections t ↦ 1 − t}` applied on the way.
    pub flip_parity: i8,
}

impl Folded {
    /// Sign `s` with `f_m(x) = s · f_m(x*)` for integer labels `m`.
    pub fn sign_for(&self, family: Family) -> i8 {
        match family {
            Family::SinMinus => self.perm_parity * self.flip_parity,
            Family::CosMinus => self.perm_parity,
            Family::SinPlus => self.flip_parity,
            Family::CosPlus => 1,
        }
    }
}

/// Maps `x` to `x* = g·x` in the closure of the fundamental domain of the
/// extended affine symmetric group: each coordinate is reduced mod 1, values
/// above `½` are reflected by `t ↦ 1 − t`, and the result is sorted in
/// descending order.
pub fn fold(x: &Point) -> Folded {
    let mut flip_parity = 1i8;
    let reduced: Vec<f64> = x
        .as_slice()
        .iter()
        .map(|&t| {
            let r = t.rem_euclid(1.0);
            if r > 0.5 {
                flip_parity = -flip_parity;
                1.0 - r
            } else {
                r
            }
        })
        .collect();
    // Stable sort keeps ties in place, so already-folded points get parity +1.
    let mut order: Vec<usize> = (0..reduced.len()).collect();
    order.sort_by(|&a, &b| reduced[b].total_cmp(&reduced[a]));
    let perm_parity = sort_parity(&order);
    let point = Point::new(order.iter().map(|&i| reduced[i]).collect()).expect("finite input stays finite");
    Folded { point, perm_parity, flip_parity }
}

fn sort_parity(order: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if order[i] > order[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Whether `x` lies in `½ ≥ x₁ ≥ … ≥ xₙ ≥ 0`.
pub fn in_closed_domain(x: &[f64]) -> bool {
    let Some(&first) = x.first() else { return false };
    first <= 0.5 && x.windows(2).all(|w| w[0] >= w[1]) && *x.last().unwrap() >= 0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{evaluate, AngularConvention, Label};
    use proptest::prelude::*;

    fn p(v: &[f64]) -> Point {
        Point::new(v.to_vec()).unwrap()
    }

    #[test]
    fn fixed_points() {
        let f = fold(&p(&[0.3, 0.1]));
        assert_eq!(f.point, p(&[0.3, 0.1]));
        assert_eq!((f.perm_parity, f.flip_parity), (1, 1));
    }

    #[test]
    fn single_transposition() {
        let f = fold(&p(&[0.1, 0.3]));
        assert_eq!(f.point, p(&[0.3, 0.1]));
        assert_eq!(f.perm_parity, -1);
    }

    #[test]
    fn shifts_and_reflections() {
        let x = p(&[1.7, -0.2]);
        let f = fold(&x);
        assert!((f.point.as_slice()[0] - 0.3).abs() < 1e-12);
        assert!((f.point.as_slice()[1] - 0.2).abs() < 1e-12);
        assert_eq!(f.perm_parity, 1);
        let m = Label::from_ints(&[3, 1]).unwrap();
        let at_x = evaluate(Family::SinMinus, AngularConvention::TwoPi, &m, &x).unwrap();
        let at_star = evaluate(Family::SinMinus, AngularConvention::TwoPi, &m, &f.point).unwrap();
        assert!((at_x - f64::from(f.sign_for(Family::SinMinus)) * at_star).abs() < 1e-12);
    }

    #[test]
    fn odd_reflection_count_is_recorded() {
        // 0.7 ↦ 0.3 is one reflection; sin⁻ changes sign although no permutation occurs.
        let x = p(&[0.7, 0.2]);
        let f = fold(&x);
        assert_eq!((f.perm_parity, f.flip_parity), (1, -1));
        let m = Label::from_ints(&[2, 1]).unwrap();
        let at_x = evaluate(Family::SinMinus, AngularConvention::TwoPi, &m, &x).unwrap();
        let at_star = evaluate(Family::SinMinus, AngularConvention::TwoPi, &m, &f.point).unwrap();
        assert!((at_x + at_star).abs() < 1e-12);
        assert!(at_x.abs() > 0.1);
    }

    proptest! {
        #[test]
        fn folded_point_is_in_domain_and_idempotent(x in prop::collection::vec(-5.0f64..5.0, 1..5)) {
            let f = fold(&p(&x));
            prop_assert!(in_closed_domain(f.point.as_slice()));
            let again = fold(&f.point);
            prop_assert_eq!(&again.point, &f.point);
            prop_assert_eq!((again.perm_parity, again.flip_parity), (1, 1));
        }

        #[test]
        fn folding_respects_all_four_families(
            x in prop::collection::vec(-3.0f64..3.0, 1..5),
            seed in prop::collection::vec(0i64..5, 4),
        ) {
            let n = x.len();
            let mut m: Vec<i64> = seed[..n].to_vec();
            m.sort_unstable_by(|a, b| b.cmp(a));
            let m = Label::from_ints(&m).unwrap();
            let x = p(&x);
            let f = fold(&x);
            for fam in Family::ALL {
                let a = evaluate(fam, AngularConvention::TwoPi, &m, &x).unwrap();
                let b = evaluate(fam, AngularConvention::TwoPi, &m, &f.point).unwrap();
                prop_assert!((a - f64::from(f.sign_for(fam)) * b).abs() < 1e-9, "{} {} {}", fam, a, b);
            }
        }
    }
}
