//! The invariant suite behind `symtrig verify`.
//!
//! Each check reports the largest defect it saw and the tolerance it is held
//! to. Inputs are drawn from a seeded generator, so runs are reproducible.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::continuous::{
    cross_orthogonality, dirichlet_defect, expected_inner_product, halving_ratio, inner_product_f,
    laplace_eigen_defect, neumann_defect, plancherel_defect, series_coefficients, sigma_k_eigen_defect, Mix,
    QuadratureRule, DEFAULT_POINTS, DEFAULT_STEP,
};
use crate::discrete::{
    amdst_forward_separable, CoefficientVector, DataVector, Symmetry, Transform, TransformKind, TransformPlan,
};
use crate::error::{invalid, Error, Result};
use crate::kernel::{
    evaluate_oracle, evaluate_slices, factorization_scale, special_product, AngularConvention, Family, Label, Point,
    SpecialLabel,
};
use crate::symmetry::{
    enumerate_labels, fold, in_closed_domain, DominantLabelSet, GroupElement, LabelSetKind, Permutation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Kernel,
    Symmetry,
    Continuous,
    Discrete,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Self::Kernel => "kernel",
            Self::Symmetry => "symmetry",
            Self::Continuous => "continuous",
            Self::Discrete => "discrete",
            Self::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [Self::Kernel, Self::Symmetry, Self::Continuous, Self::Discrete, Self::All]
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| invalid(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Restricts the discrete suite to this `N` (with `dim`).
    pub big_n: Option<i64>,
    pub dim: Option<usize>,
    pub quad_points: usize,
    /// Replaces every tolerance except the convergence-ratio band.
    pub tol: Option<f64>,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self { big_n: None, dim: None, quad_points: DEFAULT_POINTS, tol: None, seed: 2024 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub max_defect: f64,
    pub tol: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_defect <= self.tol
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}

struct Runner<'a> {
    config: &'a Config,
    rng: ChaCha8Rng,
    checks: Vec<Check>,
}

impl Runner<'_> {
    fn push(&mut self, name: impl Into<String>, max_defect: f64, tol: f64) {
        let tol = self.config.tol.unwrap_or(tol);
        self.checks.push(Check { name: name.into(), max_defect, tol });
    }

    /// For band checks: the defect is already measured against the band.
    fn push_fixed(&mut self, name: impl Into<String>, max_defect: f64, tol: f64) {
        self.checks.push(Check { name: name.into(), max_defect, tol });
    }

    fn reals(&mut self, n: usize, lo: f64, hi: f64) -> Vec<f64> {
        (0..n).map(|_| self.rng.gen_range(lo..hi)).collect()
    }

    fn ints(&mut self, n: usize, lo: i64, hi: i64) -> Vec<f64> {
        (0..n).map(|_| self.rng.gen_range(lo..=hi) as f64).collect()
    }

    fn permutation(&mut self, n: usize) -> Permutation {
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            images.swap(i, self.rng.gen_range(0..=i));
        }
        Permutation::from_images(images).expect("shuffle is a permutation")
    }

    fn group_element(&mut self, n: usize) -> GroupElement {
        let perm = self.permutation(n);
        let signs = (0..n).map(|_| if self.rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        let shift = (0..n).map(|_| self.rng.gen_range(-3..=3)).collect();
        GroupElement::new(perm, signs, shift).expect("consistent lengths")
    }
}

const CONV: AngularConvention = AngularConvention::TwoPi;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + b.abs())
}

fn kernel_suite(r: &mut Runner<'_>) -> Result<()> {
    let mut oracle: f64 = 0.0;
    for family in Family::ALL {
        for n in 1..=5 {
            for _ in 0..100 {
                let l = r.reals(n, -4.0, 4.0);
                let x = r.reals(n, -1.0, 1.0);
                let v = evaluate_slices(family, CONV, &l, &x);
                let o = evaluate_oracle(family, CONV, &Label::new(l)?, &Point::new(x)?)?;
                oracle = oracle.max(rel(v, o));
            }
        }
    }
    r.push("kernel: evaluate = permutation-sum oracle (n <= 5)", oracle, 1e-10);

    let (mut perm, mut flip, mut dual, mut scale, mut bridge, mut boundary) = (0f64, 0f64, 0f64, 0f64, 0f64, 0f64);
    for family in Family::ALL {
        for _ in 0..100 {
            let n = r.rng.gen_range(1..=4);
            let l = r.reals(n, -4.0, 4.0);
            let x = r.reals(n, -1.0, 1.0);
            let f = evaluate_slices(family, CONV, &l, &x);
            for w in Permutation::all(n) {
                let sign = if family.is_alternating() { f64::from(w.parity()) } else { 1.0 };
                perm = perm.max(rel(evaluate_slices(family, CONV, &l, &w.permute(&x)), sign * f));
            }
            let i = r.rng.gen_range(0..n);
            let mut y = x.clone();
            y[i] = -y[i];
            let sign = if family.trig() == crate::kernel::Trig::Sin { -1.0 } else { 1.0 };
            flip = flip.max(rel(evaluate_slices(family, CONV, &l, &y), sign * f));
            dual = dual.max(rel(evaluate_slices(family, CONV, &x, &l), f));
            let c = r.rng.gen_range(-3.0..3.0);
            let cl: Vec<f64> = l.iter().map(|v| c * v).collect();
            let cx: Vec<f64> = x.iter().map(|v| c * v).collect();
            scale = scale.max(rel(evaluate_slices(family, CONV, &cl, &x), evaluate_slices(family, CONV, &l, &cx)));
            let x2: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
            bridge = bridge.max(rel(f, evaluate_slices(family, AngularConvention::Pi, &l, &x2)));

            let m = r.ints(n, 0, 5);
            let mut z = r.reals(n, 0.0, 0.5);
            z.sort_by(|a, b| b.total_cmp(a));
            if n >= 2 {
                let j = r.rng.gen_range(0..n - 1);
                z[j + 1] = z[j];
                if family.is_alternating() {
                    boundary = boundary.max(evaluate_slices(family, CONV, &m, &z).abs());
                }
            }
            z[n - 1] = 0.0;
            if family.trig() == crate::kernel::Trig::Sin {
                boundary = boundary.max(evaluate_slices(family, CONV, &m, &z).abs());
            }
        }
    }
    r.push("kernel: permutation (anti)symmetry in x (n <= 4)", perm, 1e-12);
    r.push("kernel: sign flip of one coordinate", flip, 1e-12);
    r.push("kernel: duality label <-> point", dual, 1e-12);
    r.push("kernel: scaling c*label vs c*point", scale, 1e-12);
    r.push("kernel: two-pi at x equals pi at 2x", bridge, 1e-12);
    r.push("kernel: vanishing on walls", boundary, 1e-12);

    let mut product: f64 = 0.0;
    for which in [SpecialLabel::Rho1, SpecialLabel::Rho2] {
        for n in 2..=3 {
            let c = factorization_scale(which, Family::SinMinus, n).expect("sin- at rho1/rho2 has a scale");
            for _ in 0..100 {
                let x = Point::new(r.reals(n, 0.0, 0.5))?;
                let p = special_product(which, Family::SinMinus, &x)?;
                let v = evaluate_slices(Family::SinMinus, CONV, which.label(n).as_slice(), x.as_slice());
                product = product.max(rel(v, c * p));
            }
        }
    }
    r.push("kernel: sin- product form at rho1, rho2 up to (-4)^(n(n-1)/2)", product, 1e-10);
    Ok(())
}

fn symmetry_suite(r: &mut Runner<'_>) -> Result<()> {
    let (mut equi, mut folded, mut group) = (0f64, 0f64, 0f64);
    for _ in 0..200 {
        let n = r.rng.gen_range(1..=4);
        let g = r.group_element(n);
        let m = r.ints(n, 0, 5);
        let x = Point::new(r.reals(n, -1.0, 1.0))?;
        let gx = g.act(&x)?;
        let (det_w, flips) = (f64::from(g.parity()), f64::from(g.flip_parity()));
        let fx = fold(&x);
        folded = folded.max(if in_closed_domain(fx.point.as_slice()) { 0.0 } else { 1.0 });
        for (family, sign) in [
            (Family::SinMinus, det_w * flips),
            (Family::CosMinus, det_w),
            (Family::SinPlus, flips),
            (Family::CosPlus, 1.0),
        ] {
            let f = evaluate_slices(family, CONV, &m, x.as_slice());
            equi = equi.max((evaluate_slices(family, CONV, &m, gx.as_slice()) - sign * f).abs());
            let s = f64::from(fx.sign_for(family));
            folded = folded.max((f - s * evaluate_slices(family, CONV, &m, fx.point.as_slice())).abs());
        }
        let h = r.group_element(n);
        let y = g.compose(&h).act_slice(x.as_slice());
        let z = g.act_slice(&h.act_slice(x.as_slice()));
        let back = g.inverse().act_slice(gx.as_slice());
        for (a, b) in y.iter().zip(&z).chain(back.iter().zip(x.as_slice())) {
            group = group.max((a - b).abs());
        }
    }
    r.push("symmetry: sign laws under the extended affine group (n <= 4)", equi, 1e-12);
    r.push("symmetry: folding lands in the closed domain with the right sign", folded, 1e-12);
    r.push("symmetry: composition and inverse act consistently", group, 1e-12);

    let mut count: f64 = 0.0;
    for kind in LabelSetKind::ALL {
        for bound in 1..=8 {
            for n in 1..=3 {
                let set = DominantLabelSet::new(kind, bound, n);
                let listed = enumerate_labels(&set);
                let bad = listed.iter().any(|m| !set.contains(m)) || listed.len() as u64 != set.cardinality();
                count = count.max(if bad { 1.0 } else { 0.0 });
            }
        }
    }
    r.push_fixed("symmetry: label set enumeration matches cardinality", count, 0.0);
    Ok(())
}

fn continuous_suite(r: &mut Runner<'_>) -> Result<()> {
    let rule = QuadratureRule::new(r.config.quad_points)?;
    let mut one_d: f64 = 0.0;
    for k in 1..=8 {
        for k2 in 1..=8 {
            let v = 4.0 * rule.integrate_1d(|t| (2.0 * PI * k as f64 * t).sin() * (2.0 * PI * k2 as f64 * t).sin());
            one_d = one_d.max((v - if k == k2 { 1.0 } else { 0.0 }).abs());
        }
    }
    r.push(format!("continuous: 1-D sine orthogonality, k <= 8, {} points", rule.points()), one_d, 1e-12);

    for family in Family::ALL {
        let kind = if family.is_alternating() { LabelSetKind::StrictPositive } else { LabelSetKind::WeakNonneg };
        let labels: Vec<Vec<i64>> = enumerate_labels(&DominantLabelSet::new(kind, 3, 2))
            .into_iter()
            .filter(|m| m.iter().all(|&v| v > 0))
            .collect();
        let mut worst: f64 = 0.0;
        for a in &labels {
            for b in &labels {
                let v = inner_product_f(family, &Label::from_ints(a)?, &Label::from_ints(b)?, &rule)?.value;
                worst = worst.max((v - expected_inner_product(family, a, b)).abs());
            }
        }
        r.push(format!("continuous: {family} Gram on the domain, n = 2, entries <= 3"), worst, 1e-7);
    }

    let mut cross: f64 = 0.0;
    let minus: Vec<[i64; 2]> = vec![[2, 1], [3, 1], [3, 2], [2, 1], [3, 2]];
    let plus: Vec<[i64; 2]> = vec![[1, 1], [2, 1], [2, 2], [3, 1], [3, 3]];
    for mix in Mix::ALL {
        for (a, b) in minus.iter().zip(&plus) {
            let (m, m2) = match mix {
                Mix::SinMinusCosPlus => (a, b),
                Mix::SinPlusCosMinus => (b, a),
            };
            let v = cross_orthogonality(mix, &Label::from_ints(m)?, &Label::from_ints(m2)?, &rule)?.value;
            cross = cross.max(v.abs());
        }
    }
    r.push("continuous: cross-orthogonality on the extended domain, 10 pairs", cross, 1e-7);

    let mut ratio: f64 = 0.0;
    for i in 0..20 {
        let family = Family::ALL[i % 4];
        let kind = if family.is_alternating() { LabelSetKind::StrictPositive } else { LabelSetKind::WeakNonneg };
        // Labels with a zero entry make the σ₂ stencil exact, leaving no ratio to measure.
        let labels: Vec<Vec<i64>> = enumerate_labels(&DominantLabelSet::new(kind, 3, 2))
            .into_iter()
            .filter(|m| m.iter().all(|&v| v > 0))
            .collect();
        let m = &labels[r.rng.gen_range(0..labels.len())];
        let label = Label::from_ints(m)?;
        let x = Point::new(vec![r.rng.gen_range(0.3..0.45), r.rng.gen_range(0.05..0.2)])?;
        let q1 = halving_ratio(|h| laplace_eigen_defect(family, &label, &x, h), DEFAULT_STEP)?;
        let q2 = halving_ratio(|h| sigma_k_eigen_defect(family, &label, 2, &x, h), 1e-2)?;
        ratio = ratio.max((q1 - 4.0).abs()).max((q2 - 4.0).abs());
    }
    r.push_fixed("continuous: |h/(h/2) defect ratio - 4| for sigma_1, sigma_2 (n = 2)", ratio, 0.4);

    let mut dirichlet: f64 = 0.0;
    let mut neumann: f64 = 0.0;
    for m in [vec![2, 1], vec![4, 1], vec![3, 2, 1]] {
        dirichlet = dirichlet.max(dirichlet_defect(Family::SinMinus, &Label::from_ints(&m)?, 100, r.config.seed));
    }
    for m in [vec![1, 1], vec![3, 1], vec![2, 1, 0]] {
        neumann = neumann.max(neumann_defect(Family::CosPlus, &Label::from_ints(&m)?, 100, r.config.seed, 1e-3)?);
    }
    r.push("continuous: sin- vanishes on the walls", dirichlet, 1e-12);
    r.push("continuous: cos+ normal derivative on the walls (h = 1e-3)", neumann, 1e-6);

    let sample = |x: &[f64]| {
        0.5 * evaluate_slices(Family::CosMinus, CONV, &[2.0, 1.0], x) - evaluate_slices(Family::CosMinus, CONV, &[3.0, 1.0], x)
    };
    let (coeffs, _) = series_coefficients(Family::CosMinus, &sample, 4, 2, &rule)?;
    r.push("continuous: series Plancherel identity", plancherel_defect(&coeffs, &sample, &rule)?.value, 1e-8);
    Ok(())
}

fn instances(config: &Config) -> Result<Vec<Transform>> {
    let mut out = Vec::new();
    match (config.big_n, config.dim) {
        (None, None) => {
            for kind in [TransformKind::Amdst, TransformKind::Smdct] {
                for (big_n, n) in [(4, 2), (6, 2), (5, 3)] {
                    out.push(Transform::new(kind, big_n, n)?);
                }
            }
            for kind in TransformKind::MULTIVARIATE.into_iter().skip(2) {
                for (big_n, n) in [(4, 2), (3, 3)] {
                    out.push(Transform::new(kind, big_n, n)?);
                }
            }
            for kind in TransformKind::ALL.into_iter().filter(|k| k.symmetry() == Symmetry::OneDimensional) {
                out.push(Transform::new(kind, 4, 1)?);
            }
        }
        (big_n, dim) => {
            let (big_n, dim) = (big_n.unwrap_or(4), dim.unwrap_or(2));
            for kind in TransformKind::ALL {
                if kind.symmetry() != Symmetry::OneDimensional || dim == 1 {
                    out.push(Transform::new(kind, big_n, dim)?);
                }
            }
        }
    }
    Ok(out)
}

fn discrete_suite(r: &mut Runner<'_>) -> Result<()> {
    for t in instances(r.config)? {
        let tag = format!("discrete: {} N = {} n = {}", t.kind(), t.big_n(), t.dim());
        let plan = TransformPlan::new(t);
        let gram = plan.gram_matrix();
        let mut diag: f64 = 0.0;
        for (i, label) in plan.labels().iter().enumerate() {
            let stated = t.stated_gram_diagonal(label);
            diag = diag.max((gram.get(i, i) - *stated.numer() as f64 / *stated.denom() as f64).abs());
        }
        r.push(format!("{tag}: Gram max off-diagonal"), gram.max_off_diagonal(), 1e-10);
        r.push(format!("{tag}: Gram diagonal vs stated constants"), diag, 1e-10);

        let len = plan.grid().len();
        let (mut trip, mut planch, mut sep) = (0f64, 0f64, 0f64);
        for _ in 0..5 {
            let f = DataVector::new(&t, r.reals(len, -1.0, 1.0))?;
            let a = plan.forward(&f)?;
            for (x, y) in plan.inverse(&a)?.values().iter().zip(f.values()) {
                trip = trip.max((x - y).abs());
            }
            let c = CoefficientVector::new(&t, f.values().to_vec())?;
            for (x, y) in plan.forward(&plan.inverse(&c)?)?.values().iter().zip(c.values()) {
                trip = trip.max((x - y).abs());
            }
            let (e1, e2) = plan.plancherel_energies(&f)?;
            planch = planch.max((e1 - e2).abs() / e1.max(f64::MIN_POSITIVE));
            if t.kind() == TransformKind::Amdst {
                let b = amdst_forward_separable(t.big_n(), t.dim(), &f)?;
                for (x, y) in a.values().iter().zip(b.values()) {
                    sep = sep.max((x - y).abs());
                }
            }
        }
        r.push(format!("{tag}: forward/inverse round trips"), trip, 1e-10);
        r.push(format!("{tag}: Plancherel relative defect"), planch, 1e-10);
        if t.kind() == TransformKind::Amdst {
            r.push(format!("{tag}: separable 1-D sine path"), sep, 1e-10);
        }
    }
    Ok(())
}

/// Runs `suite` and returns one [`Check`] per invariant.
pub fn run(suite: Suite, config: &Config) -> Result<Vec<Check>> {
    let mut r = Runner { config, rng: ChaCha8Rng::seed_from_u64(config.seed), checks: Vec::new() };
    let all = suite == Suite::All;
    if all || suite == Suite::Kernel {
        kernel_suite(&mut r)?;
    }
    if all || suite == Suite::Symmetry {
        symmetry_suite(&mut r)?;
    }
    if all || suite == Suite::Continuous {
        continuous_suite(&mut r)?;
    }
    if all || suite == Suite::Discrete {
        discrete_suite(&mut r)?;
    }
    Ok(r.checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn each_suite_passes_at_defaults() {
        for suite in [Suite::Kernel, Suite::Symmetry, Suite::Continuous, Suite::Discrete] {
            let checks = run(suite, &Config::default()).unwrap();
            assert!(!checks.is_empty());
            for c in &checks {
                assert!(c.passed(), "{}: {} > {}", c.name, c.max_defect, c.tol);
            }
        }
    }

    #[test]
    fn restricted_discrete_suite() {
        let config = Config { big_n: Some(4), dim: Some(2), ..Config::default() };
        let checks = run(Suite::Discrete, &config).unwrap();
        assert_eq!(checks.iter().filter(|c| c.name.contains("off-diagonal")).count(), 10);
        assert!(all_passed(&checks));
    }

    #[test]
    fn tolerance_override_can_fail() {
        let config = Config { tol: Some(0.0), ..Config::default() };
        assert!(!all_passed(&run(Suite::Discrete, &config).unwrap()));
    }

    #[test]
    fn suite_names() {
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("everything".parse::<Suite>().is_err());
    }
}
