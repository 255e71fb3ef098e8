//! Operators of the form `(Af)(q) = w(q) f(φ(q))` and their compositions.
//!
//! A composite `A₁ ∘ … ∘ A_k` is stored as its factor list, outermost first,
//! and evaluated as `w₁(q) w₂(φ₁q) ⋯ f(φ_k ⋯ φ₁ q)`. Nothing is discretized:
//! every identity between operators is checked pointwise.

use std::f64::consts::PI;

use crate::error::{dim_err, Error, Result};
use crate::extension::GroupElement;
use crate::matrix::{Complex, RealMatrix};

use super::probe::{Region, Support, TestFunction};

/// `scale · |c·q0|^e · exp(iπ qᵀMq + 2iπ lᵀq)`; absent parts are 1.
#[derive(Debug, Clone, PartialEq)]
struct Weight {
    scale: f64,
    chirp: Option<RealMatrix>,
    wave: Option<Vec<f64>>,
    radial: Option<(f64, f64)>,
}

impl Weight {
    fn constant(scale: f64) -> Self {
        Self {
            scale,
            chirp: None,
            wave: None,
            radial: None,
        }
    }

    fn eval(&self, q: &[f64]) -> Complex {
        let mut mag = self.scale;
        if let Some((c, e)) = self.radial {
            mag *= (c * q[0]).abs().powf(e);
        }
        let mut phase = 0.0;
        if let Some(m) = &self.chirp {
            let mq = m.mul_vec(q);
            phase += PI * q.iter().zip(&mq).map(|(a, b)| a * b).sum::<f64>();
        }
        if let Some(l) = &self.wave {
            phase += 2.0 * PI * l.iter().zip(q).map(|(a, b)| a * b).sum::<f64>();
        }
        if phase == 0.0 {
            Complex::new(mag, 0.0)
        } else {
            Complex::from_polar(mag, phase)
        }
    }
}

/// Argument map `φ`.
#[derive(Debug, Clone, PartialEq)]
enum ArgMap {
    Identity,
    /// `q ↦ Lq + b`, with `L⁻¹` kept for region pullbacks.
    Affine {
        lin: RealMatrix,
        lin_inv: RealMatrix,
        shift: Vec<f64>,
    },
    /// `(u; v) ↦ (u²/2, u v)` on the half `sign·u > 0`.
    Fold(f64),
    /// Inverse of the fold onto the half `sign·u > 0`, defined for `r > 0`.
    Unfold(f64),
}

impl ArgMap {
    /// `None` where the map is undefined; the operator is zero there.
    fn apply(&self, q: &[f64]) -> Option<Vec<f64>> {
        match self {
            ArgMap::Identity => Some(q.to_vec()),
            ArgMap::Affine { lin, shift, .. } => {
                let mut out = lin.mul_vec(q);
                for (o, s) in out.iter_mut().zip(shift) {
                    *o += s;
                }
                Some(out)
            }
            ArgMap::Fold(sign) => (sign * q[0] > 0.0).then(|| fold(q)),
            ArgMap::Unfold(sign) => unfold(*sign, q).ok(),
        }
    }

    /// Box containing `{q : φ(q) ∈ r}`.
    fn pull(&self, r: &Region) -> Option<Region> {
        match self {
            ArgMap::Identity => Some(r.clone()),
            ArgMap::Affine { lin_inv, shift, .. } => {
                let pts: Vec<Vec<f64>> = r
                    .corners()
                    .iter()
                    .map(|c| {
                        let d: Vec<f64> = c.iter().zip(shift).map(|(a, b)| a - b).collect();
                        lin_inv.mul_vec(&d)
                    })
                    .collect();
                Some(Region::bounding(&pts))
            }
            ArgMap::Fold(sign) => {
                // r must stay away from 0, else v = ξ/u is unbounded.
                let r = r.clip(Support::FreqPos)?;
                if r.lo[0] <= 0.0 {
                    return None;
                }
                let us = [sign * (2.0 * r.lo[0]).sqrt(), sign * (2.0 * r.hi[0]).sqrt()];
                Some(bilinear_box(us, &r, |u, xi| xi / u))
            }
            ArgMap::Unfold(sign) => {
                let r = r.clip(Support::spatial(*sign))?;
                let us = [r.lo[0], r.hi[0]];
                let mut b = bilinear_box(us, &r, |u, v| u * v);
                b.lo[0] = 0.5 * us.iter().map(|u| u * u).fold(f64::INFINITY, f64::min);
                b.hi[0] = 0.5 * us.iter().map(|u| u * u).fold(0.0, f64::max);
                Some(b)
            }
        }
    }
}

/// Box for `(u, f(u, w_i))` with `u` over `us` and `w_i` over `r`'s ranges,
/// `f` monotone in each argument on the box.
fn bilinear_box(us: [f64; 2], r: &Region, f: impl Fn(f64, f64) -> f64) -> Region {
    let d = r.dim();
    let mut lo = vec![us[0].min(us[1]); d];
    let mut hi = vec![us[0].max(us[1]); d];
    for i in 1..d {
        let vals = [
            f(us[0], r.lo[i]),
            f(us[0], r.hi[i]),
            f(us[1], r.lo[i]),
            f(us[1], r.hi[i]),
        ];
        lo[i] = vals.iter().copied().fold(f64::INFINITY, f64::min);
        hi[i] = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    }
    Region { lo, hi }
}

/// How a factor moves support tags.
#[derive(Debug, Clone, Copy, PartialEq)]
enum SupportRule {
    Preserve,
    /// Output carries no half-space guarantee.
    Forget,
    /// Input must carry `from`; output carries `to`.
    Require { from: Support, to: Support },
}

#[derive(Debug, Clone, PartialEq)]
struct Factor {
    weight: Weight,
    map: ArgMap,
    rule: SupportRule,
}

/// What an operator was built from.
#[derive(Debug, Clone, PartialEq)]
pub enum OpKind {
    Identity,
    Translation,
    Modulation,
    Dilation,
    DualDilation,
    Chirp,
    Wavelet(GroupElement),
    Metaplectic(GroupElement),
    Intertwiner(f64),
    IntertwinerInverse(f64),
    Composite,
}

/// A weighted composition operator on functions of `ℝ^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct RepOperator {
    dim: usize,
    factors: Vec<Factor>,
    kind: OpKind,
}

impl RepOperator {
    fn single(dim: usize, weight: Weight, map: ArgMap, rule: SupportRule, kind: OpKind) -> Self {
        Self {
            dim,
            factors: vec![Factor { weight, map, rule }],
            kind,
        }
    }

    pub(crate) fn linear(dim: usize, weight_scale: f64, lin: RealMatrix, lin_inv: RealMatrix, kind: OpKind) -> Self {
        let rule = half_rule(&lin);
        Self::single(
            dim,
            Weight::constant(weight_scale),
            ArgMap::Affine {
                lin,
                lin_inv,
                shift: vec![0.0; dim],
            },
            rule,
            kind,
        )
    }

    /// Sets the phase of the single factor; used by the group operators.
    pub(crate) fn with_phase(mut self, chirp: Option<RealMatrix>, wave: Option<Vec<f64>>) -> Self {
        let w = &mut self.factors[0].weight;
        w.chirp = chirp;
        w.wave = wave;
        self
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            factors: Vec::new(),
            kind: OpKind::Identity,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &OpKind {
        &self.kind
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RepOperator) -> Result<RepOperator> {
        if self.dim != inner.dim {
            return dim_err("composing operators on different dimensions");
        }
        let mut factors = self.factors.clone();
        factors.extend(inner.factors.iter().cloned());
        Ok(Self {
            dim: self.dim,
            factors,
            kind: OpKind::Composite,
        })
    }

    /// Support tag of `Af` given the tag of `f`.
    pub fn propagate_support(&self, input: Support) -> Result<Support> {
        self.factors.iter().rev().try_fold(input, |s, f| match f.rule {
            SupportRule::Preserve => Ok(s),
            SupportRule::Forget => Ok(Support::Whole),
            SupportRule::Require { from, to } if s == from => Ok(to),
            SupportRule::Require { from, .. } => Err(Error::Support(format!(
                "operator needs input supported in {from:?}, got {s:?}"
            ))),
        })
    }

    /// `Af` as a new test function. Fails on a dimension or support-tag
    /// mismatch.
    pub fn apply(&self, f: &TestFunction) -> Result<TestFunction> {
        if f.dim() != self.dim {
            return dim_err(format!(
                "operator on dimension {} applied to a function of dimension {}",
                self.dim,
                f.dim()
            ));
        }
        self.propagate_support(f.support())?;
        Ok(TestFunction::transformed(self.clone(), f.clone()))
    }

    /// `(Af)(q)` without building the transformed function.
    pub fn eval_on(&self, f: &TestFunction, q: &[f64]) -> Complex {
        let mut acc = Complex::new(1.0, 0.0);
        let mut point = q.to_vec();
        for factor in &self.factors {
            acc *= factor.weight.eval(&point);
            match factor.map.apply(&point) {
                Some(p) => point = p,
                None => return Complex::new(0.0, 0.0),
            }
        }
        acc * f.eval(&point)
    }

    /// Final argument `φ_k ⋯ φ₁ q`, or `None` where undefined.
    pub fn argument(&self, q: &[f64]) -> Option<Vec<f64>> {
        self.factors
            .iter()
            .try_fold(q.to_vec(), |p, factor| factor.map.apply(&p))
    }

    /// Box where `Af` is concentrated given the box `r` of `f`.
    pub fn pull_region(&self, r: &Region) -> Option<Region> {
        self.factors
            .iter()
            .rev()
            .try_fold(r.clone(), |acc, f| f.map.pull(&acc))
    }
}

/// Preserve tags when `L` maps each half `±q0 > 0` into itself, i.e. its
/// first row is `(c, 0, …, 0)` with `c > 0`.
fn half_rule(lin: &RealMatrix) -> SupportRule {
    let first_row_ok = lin.get(0, 0) > 0.0 && (1..lin.cols()).all(|j| lin.get(0, j) == 0.0);
    if first_row_ok {
        SupportRule::Preserve
    } else {
        SupportRule::Forget
    }
}

/// `(T_x f)(q) = f(q − x)`.
pub fn translation(x: &[f64]) -> RepOperator {
    let d = x.len();
    let rule = if x[0] == 0.0 {
        SupportRule::Preserve
    } else {
        SupportRule::Forget
    };
    RepOperator::single(
        d,
        Weight::constant(1.0),
        ArgMap::Affine {
            lin: RealMatrix::identity(d),
            lin_inv: RealMatrix::identity(d),
            shift: x.iter().map(|v| -v).collect(),
        },
        rule,
        OpKind::Translation,
    )
}

/// `(E_x f)(q) = e^{2iπ xᵀq} f(q)`.
pub fn modulation(x: &[f64]) -> RepOperator {
    let mut w = Weight::constant(1.0);
    w.wave = Some(x.to_vec());
    RepOperator::single(x.len(), w, ArgMap::Identity, SupportRule::Preserve, OpKind::Modulation)
}

fn invert(a: &RealMatrix) -> Result<RealMatrix> {
    if !a.is_square() {
        return dim_err("dilation by a non-square matrix");
    }
    let det = a.determinant();
    if det == 0.0 || !det.is_finite() {
        return Err(Error::Domain("dilation by a singular matrix".into()));
    }
    a.inverse()
        .map_err(|_| Error::Domain("dilation by a singular matrix".into()))
}

/// `(S_a f)(q) = |det a|^{−1/2} f(a⁻¹q)`.
pub fn dilation(a: &RealMatrix) -> Result<RepOperator> {
    let inv = invert(a)?;
    Ok(RepOperator::linear(
        a.rows(),
        a.determinant().abs().powf(-0.5),
        inv,
        a.clone(),
        OpKind::Dilation,
    ))
}

/// `(Ŝ_a g)(ξ) = |det a|^{1/2} g(ξa)`; with `ξ` stored as a column this is
/// the argument map `aᵀ`.
pub fn dual_dilation(a: &RealMatrix) -> Result<RepOperator> {
    let inv = invert(a)?;
    Ok(RepOperator::linear(
        a.rows(),
        a.determinant().abs().sqrt(),
        a.transpose(),
        inv.transpose(),
        OpKind::DualDilation,
    ))
}

/// Chirp `(U_m f)(q) = e^{iπ qᵀmq} f(q)` for symmetric `m`.
pub fn chirp(m: &RealMatrix) -> Result<RepOperator> {
    if !m.is_square() {
        return dim_err("chirp matrix must be square");
    }
    if !m.is_symmetric(0.0) {
        return Err(Error::Domain("chirp matrix must be symmetric".into()));
    }
    let mut w = Weight::constant(1.0);
    w.chirp = Some(m.clone());
    Ok(RepOperator::single(m.rows(), w, ArgMap::Identity, SupportRule::Preserve, OpKind::Chirp))
}

/// The fold `Ψ(u; v) = (u²/2, u v)`.
pub fn fold(q: &[f64]) -> Vec<f64> {
    let u = q[0];
    std::iter::once(0.5 * u * u)
        .chain(q[1..].iter().map(|v| u * v))
        .collect()
}

/// `Ψ±⁻¹(r, ξ) = (±√(2r), ±ξ/√(2r))`; requires `r > 0`.
pub fn unfold(sign: f64, eta: &[f64]) -> Result<Vec<f64>> {
    let r = eta[0];
    if !(r > 0.0) {
        return Err(Error::Domain(format!("unfold needs r > 0, got {r}")));
    }
    let s = sign.signum() * (2.0 * r).sqrt();
    Ok(std::iter::once(s)
        .chain(eta[1..].iter().map(|xi| xi / s))
        .collect())
}

/// Jacobian determinant `u^{n+1}` of the fold on `ℝ^{n+1}`.
pub fn fold_jacobian(q: &[f64]) -> f64 {
    q[0].powi(q.len() as i32)
}

/// `(Q± f)(q) = |u|^{(n+1)/2} f(Ψ(q))` for `f` supported in `r > 0`; the
/// output lives on `±u > 0`.
pub fn intertwiner(sign: f64, dim: usize) -> RepOperator {
    let mut w = Weight::constant(1.0);
    w.radial = Some((1.0, 0.5 * dim as f64));
    RepOperator::single(
        dim,
        w,
        ArgMap::Fold(sign.signum()),
        SupportRule::Require {
            from: Support::FreqPos,
            to: Support::spatial(sign),
        },
        OpKind::Intertwiner(sign.signum()),
    )
}

/// `(Q±⁻¹ f)(r, ξ) = (2r)^{−(n+1)/4} f(Ψ±⁻¹(r, ξ))`, zero for `r ≤ 0`.
pub fn intertwiner_inverse(sign: f64, dim: usize) -> RepOperator {
    let mut w = Weight::constant(1.0);
    w.radial = Some((2.0, -0.25 * dim as f64));
    RepOperator::single(
        dim,
        w,
        ArgMap::Unfold(sign.signum()),
        SupportRule::Require {
            from: Support::spatial(sign),
            to: Support::FreqPos,
        },
        OpKind::IntertwinerInverse(sign.signum()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn probe(d: usize, seed: u64) -> TestFunction {
        TestFunction::random_gaussian(d, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    fn points(d: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..50)
            .map(|_| (0..d).map(|_| rng.random_range(-2.0..2.0)).collect())
            .collect()
    }

    fn max_gap(a: &TestFunction, b: &TestFunction, pts: &[Vec<f64>]) -> f64 {
        pts.iter()
            .map(|q| (a.eval(q) - b.eval(q)).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn trivial_primitives_are_identity() {
        let f = probe(2, 1);
        let pts = points(2, 2);
        for op in [
            translation(&[0.0, 0.0]),
            modulation(&[0.0, 0.0]),
            dilation(&RealMatrix::identity(2)).unwrap(),
            dual_dilation(&RealMatrix::identity(2)).unwrap(),
            chirp(&RealMatrix::zeros(2, 2)).unwrap(),
            RepOperator::identity(2),
        ] {
            assert_eq!(max_gap(&op.apply(&f).unwrap(), &f, &pts), 0.0);
        }
    }

    #[test]
    fn dual_dilation_formula() {
        let a = RealMatrix::from_rows(&[[1.5, 0.3], [-0.2, 0.8]]).unwrap();
        let f = probe(2, 3);
        let g = dual_dilation(&a).unwrap().apply(&f).unwrap();
        for xi in points(2, 4) {
            let want = f.eval(&a.row_mul(&xi)) * a.determinant().abs().sqrt();
            assert!((g.eval(&xi) - want).norm() <= 1e-12);
        }
    }

    #[test]
    fn dilation_formula_and_errors() {
        let a = RealMatrix::from_rows(&[[2.0, 0.0], [1.0, 0.5]]).unwrap();
        let f = probe(2, 5);
        let g = dilation(&a).unwrap().apply(&f).unwrap();
        let inv = a.inverse().unwrap();
        for q in points(2, 6) {
            let want = f.eval(&inv.mul_vec(&q)) * a.determinant().abs().powf(-0.5);
            assert!((g.eval(&q) - want).norm() <= 1e-12);
        }
        let singular = RealMatrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert!(matches!(dilation(&singular), Err(Error::Domain(_))));
        assert!(matches!(dual_dilation(&singular), Err(Error::Domain(_))));
        let skew = RealMatrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]).unwrap();
        assert!(matches!(chirp(&skew), Err(Error::Domain(_))));
    }

    #[test]
    fn translations_compose() {
        let f = probe(2, 7);
        let (x, y) = ([0.3, -0.7], [1.1, 0.4]);
        let lhs = translation(&x).compose(&translation(&y)).unwrap().apply(&f).unwrap();
        let rhs = translation(&[x[0] + y[0], x[1] + y[1]]).apply(&f).unwrap();
        assert!(max_gap(&lhs, &rhs, &points(2, 8)) <= 1e-12);
    }

    #[test]
    fn fold_examples() {
        assert_eq!(fold(&[1.0, 0.0]), vec![0.5, 0.0]);
        assert_eq!(fold_jacobian(&[1.0, 0.0]), 1.0);
        assert!(matches!(unfold(1.0, &[0.0, 1.0]), Err(Error::Domain(_))));
        assert!(matches!(unfold(-1.0, &[-2.0, 1.0]), Err(Error::Domain(_))));
        // Weight |J|^{1/2} at (1; 0) is 1.
        let f = TestFunction::isotropic(vec![0.5, 0.0], 1.0)
            .unwrap()
            .restrict(Support::FreqPos);
        let qf = intertwiner(1.0, 2).apply(&f).unwrap();
        assert!((qf.eval(&[1.0, 0.0]) - Complex::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn fold_jacobian_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for d in 1..=4 {
            for _ in 0..20 {
                let q: Vec<f64> = (0..d).map(|_| rng.random_range(0.2..2.0)).collect();
                let h = 1e-6;
                let jac = RealMatrix::from_fn(d, d, |i, j| {
                    let mut a = q.clone();
                    let mut b = q.clone();
                    a[j] += h;
                    b[j] -= h;
                    (fold(&a)[i] - fold(&b)[i]) / (2.0 * h)
                });
                let want = fold_jacobian(&q);
                assert!((jac.determinant() - want).abs() <= 1e-6 * want.abs());
            }
        }
    }

    #[test]
    fn intertwiners_check_tags() {
        let f = probe(2, 10);
        assert!(matches!(intertwiner(1.0, 2).apply(&f), Err(Error::Support(_))));
        let pos = f.restrict(Support::SpacePos);
        assert!(intertwiner_inverse(1.0, 2).apply(&pos).is_ok());
        assert!(matches!(
            intertwiner_inverse(-1.0, 2).apply(&pos),
            Err(Error::Support(_))
        ));
        let back = intertwiner_inverse(1.0, 2).apply(&pos).unwrap();
        assert_eq!(back.support(), Support::FreqPos);
        assert_eq!(
            intertwiner(-1.0, 2).apply(&back).unwrap().support(),
            Support::SpaceNeg
        );
        assert!(translation(&[0.0]).apply(&f).is_err());
    }

    #[test]
    fn intertwiner_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for sign in [1.0, -1.0] {
            for d in 1..=3 {
                let f = TestFunction::random_in_half(d, Support::FreqPos, &mut rng);
                let there = intertwiner(sign, d).apply(&f).unwrap();
                let back = intertwiner_inverse(sign, d).apply(&there).unwrap();
                for _ in 0..100 {
                    let mut eta: Vec<f64> = (0..d).map(|_| rng.random_range(-2.0..2.0)).collect();
                    eta[0] = rng.random_range(1e-3..4.0);
                    let (a, b) = (back.eval(&eta), f.eval(&eta));
                    assert!((a - b).norm() <= 1e-12 * (1.0 + b.norm()));
                }
            }
        }
    }

    #[test]
    fn pulled_regions_contain_mass() {
        let f = TestFunction::isotropic(vec![2.0, 0.5], 4.0)
            .unwrap()
            .restrict(Support::FreqPos);
        let q = intertwiner(-1.0, 2).apply(&f).unwrap();
        let r = q.region().unwrap();
        assert!(r.hi[0] < 0.0);
        // Ψ₋⁻¹ of the probe center lies inside.
        let c = unfold(-1.0, &[2.0, 0.5]).unwrap();
        assert!((0..2).all(|i| r.lo[i] <= c[i] && c[i] <= r.hi[i]));
        let back = intertwiner_inverse(-1.0, 2).apply(&q).unwrap().region().unwrap();
        assert!(back.lo[0] > 0.0 && back.lo[0] <= 2.0 && back.hi[0] >= 2.0);
        // Mass reaching the fold gives no bounded box.
        let wide = TestFunction::isotropic(vec![0.1, 0.0], 1.0)
            .unwrap()
            .restrict(Support::FreqPos);
        assert!(intertwiner(1.0, 2).apply(&wide).unwrap().region().is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn chirps_add(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sym = |rng: &mut ChaCha8Rng| {
                let a = RealMatrix::from_fn(2, 2, |_, _| rng.random_range(-1.0..1.0));
                (&a + &a.transpose()).scale(0.5)
            };
            let (m1, m2) = (sym(&mut rng), sym(&mut rng));
            let f = TestFunction::random_gaussian(2, &mut rng);
            let lhs = chirp(&m1).unwrap().compose(&chirp(&m2).unwrap()).unwrap().apply(&f).unwrap();
            let rhs = chirp(&(&m1 + &m2)).unwrap().apply(&f).unwrap();
            let modulus = chirp(&m1).unwrap().apply(&f).unwrap();
            for q in points(2, seed ^ 1) {
                prop_assert!((lhs.eval(&q) - rhs.eval(&q)).norm() <= 1e-12);
                prop_assert!((modulus.eval(&q).norm() - f.eval(&q).norm()).abs() <= 1e-15);
            }
        }

        #[test]
        fn composition_is_associative(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = translation(&[rng.random_range(-1.0..1.0), 0.2]);
            let b = dilation(&crate::sampling::random_gl(2, &mut rng)).unwrap();
            let c = modulation(&[0.4, rng.random_range(-1.0..1.0)]);
            let f = TestFunction::random_gaussian(2, &mut rng);
            let left = a.compose(&b).unwrap().compose(&c).unwrap().apply(&f).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap().apply(&f).unwrap();
            let nested = a.apply(&b.apply(&c.apply(&f).unwrap()).unwrap()).unwrap();
            for q in points(2, seed ^ 2) {
                prop_assert_eq!(left.eval(&q), right.eval(&q));
                prop_assert!((left.eval(&q) - nested.eval(&q)).norm() <= 1e-14);
            }
        }
    }
}
