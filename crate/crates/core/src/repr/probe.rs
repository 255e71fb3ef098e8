//! Test functions on `ℝ^{d}` and the half-space tags that track their support.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{dim_err, Error, Result};
use crate::matrix::{Complex, RealMatrix};

use super::operator::RepOperator;

/// Half-space a function is supported in.
///
/// Frequency-side tags refer to `r ≷ 0`, spatial-side tags to `u ≷ 0`; in both
/// cases that is the sign of the first coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Support {
    #[serde(rename = "none")]
    Whole,
    #[serde(rename = "O+")]
    FreqPos,
    #[serde(rename = "O-")]
    FreqNeg,
    #[serde(rename = "U+")]
    SpacePos,
    #[serde(rename = "U-")]
    SpaceNeg,
}

impl Support {
    pub fn spatial(sign: f64) -> Self {
        if sign > 0.0 {
            Support::SpacePos
        } else {
            Support::SpaceNeg
        }
    }

    pub fn frequency(sign: f64) -> Self {
        if sign > 0.0 {
            Support::FreqPos
        } else {
            Support::FreqNeg
        }
    }

    /// Sign of the first coordinate on the half-space; `None` for `Whole`.
    pub fn half_sign(self) -> Option<f64> {
        match self {
            Support::Whole => None,
            Support::FreqPos | Support::SpacePos => Some(1.0),
            Support::FreqNeg | Support::SpaceNeg => Some(-1.0),
        }
    }

    /// Membership of `q`; the boundary `q0 = 0` belongs to neither half.
    pub fn contains(self, q: &[f64]) -> bool {
        match self.half_sign() {
            None => true,
            Some(s) => s * q[0] > 0.0,
        }
    }
}

/// Axis-aligned box `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Region {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return dim_err("region bounds differ in length");
        }
        if lo.iter().zip(&hi).any(|(l, h)| !(l <= h)) {
            return Err(Error::Domain("region has lo > hi or NaN bounds".into()));
        }
        Ok(Self { lo, hi })
    }

    /// `[−w, w]^d`.
    pub fn cube(dim: usize, w: f64) -> Self {
        Self {
            lo: vec![-w; dim],
            hi: vec![w; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(l, h)| h - l).product()
    }

    /// All `2^d` vertices.
    pub fn corners(&self) -> Vec<Vec<f64>> {
        let d = self.dim();
        (0..1usize << d)
            .map(|mask| {
                (0..d)
                    .map(|i| if mask >> i & 1 == 1 { self.hi[i] } else { self.lo[i] })
                    .collect()
            })
            .collect()
    }

    /// Smallest box containing the points.
    pub fn bounding(points: &[Vec<f64>]) -> Self {
        let d = points[0].len();
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for p in points {
            for i in 0..d {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        Self { lo, hi }
    }

    /// Intersection with a half-space tag; `None` if empty.
    pub fn clip(&self, support: Support) -> Option<Self> {
        let mut r = self.clone();
        match support.half_sign() {
            None => {}
            Some(s) if s > 0.0 => r.lo[0] = r.lo[0].max(0.0),
            Some(_) => r.hi[0] = r.hi[0].min(0.0),
        }
        (r.lo[0] < r.hi[0]).then_some(r)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(&l, &h)| if l < h { rng.random_range(l..h) } else { l })
            .collect()
    }
}

/// `exp(−π (q−c)ᵀW(q−c)) · e^{2iπ ωᵀq}` with `W` symmetric positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct Gaussian {
    center: Vec<f64>,
    precision: RealMatrix,
    modulation: Vec<f64>,
}

impl Gaussian {
    pub fn new(center: Vec<f64>, precision: RealMatrix, modulation: Vec<f64>) -> Result<Self> {
        let d = center.len();
        if precision.rows() != d || precision.cols() != d || modulation.len() != d {
            return dim_err("gaussian center, precision and modulation disagree in size");
        }
        if !precision.is_symmetric(1e-12) {
            return Err(Error::Domain("gaussian precision is not symmetric".into()));
        }
        if precision.inner().clone().cholesky().is_none() {
            return Err(Error::Domain("gaussian precision is not positive definite".into()));
        }
        Ok(Self {
            center,
            precision,
            modulation,
        })
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    fn eval(&self, q: &[f64]) -> Complex {
        let d = self.dim();
        let diff: Vec<f64> = q.iter().zip(&self.center).map(|(a, c)| a - c).collect();
        let mut quad = 0.0;
        for i in 0..d {
            for j in 0..d {
                quad += diff[i] * self.precision.get(i, j) * diff[j];
            }
        }
        let phase: f64 = self.modulation.iter().zip(q).map(|(w, v)| w * v).sum();
        Complex::from_polar((-PI * quad).exp(), 2.0 * PI * phase)
    }

    /// Box of half-width `8σ` per axis, `σ` the marginal deviation of `|f|²`.
    fn region(&self) -> Region {
        let cov = self
            .precision
            .scale(4.0 * PI)
            .inverse()
            .expect("positive definite");
        let (lo, hi) = (0..self.dim())
            .map(|i| {
                let w = 8.0 * cov.get(i, i).sqrt();
                (self.center[i] - w, self.center[i] + w)
            })
            .unzip();
        Region { lo, hi }
    }
}

#[derive(Debug)]
enum Node {
    Gaussian(Gaussian),
    /// `Σ_k c_k e^{2iπ ω_kᵀq}` times a gaussian.
    TrigGaussian {
        gauss: Gaussian,
        terms: Vec<(Complex, Vec<f64>)>,
    },
    Restricted { inner: TestFunction, tag: Support },
    Transformed { op: RepOperator, arg: TestFunction },
}

/// A complex-valued, pointwise-evaluable function on `ℝ^d` with gaussian
/// decay. Cheap to clone.
#[derive(Debug, Clone)]
pub struct TestFunction(Arc<Node>);

impl TestFunction {
    pub fn gaussian(center: Vec<f64>, precision: RealMatrix, modulation: Vec<f64>) -> Result<Self> {
        Ok(Self(Arc::new(Node::Gaussian(Gaussian::new(
            center, precision, modulation,
        )?))))
    }

    /// Isotropic unmodulated gaussian `exp(−π w |q − c|²)`.
    pub fn isotropic(center: Vec<f64>, w: f64) -> Result<Self> {
        let d = center.len();
        Self::gaussian(center, RealMatrix::identity(d).scale(w), vec![0.0; d])
    }

    pub fn trig_gaussian(gauss: Gaussian, terms: Vec<(Complex, Vec<f64>)>) -> Result<Self> {
        if terms.iter().any(|(_, w)| w.len() != gauss.dim()) {
            return dim_err("trigonometric frequency of the wrong length");
        }
        Ok(Self(Arc::new(Node::TrigGaussian { gauss, terms })))
    }

    /// Random gaussian with center in `[−1, 1]^d`, diagonally dominant
    /// precision with diagonal in `[0.5, 2]`, modulation in `[−1, 1]^d`.
    pub fn random_gaussian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let center = (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect();
        Self::gaussian(center, random_precision(dim, rng), random_vec(dim, 1.0, rng))
            .expect("diagonally dominant")
    }

    /// Random gaussian centered well inside a half-space and restricted to it.
    /// The first coordinate of the center lies in `±[2, 3]` and its precision
    /// is at least 3, so the cut falls more than 8σ from the center.
    pub fn random_in_half<R: Rng + ?Sized>(dim: usize, tag: Support, rng: &mut R) -> Self {
        let s = tag.half_sign().unwrap_or(1.0);
        let mut center: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect();
        center[0] = s * rng.random_range(2.0..=3.0);
        let mut w = random_precision(dim, rng);
        let w00 = w.get(0, 0);
        w.set(0, 0, w00.max(2.5) + 0.5);
        Self::gaussian(center, w, random_vec(dim, 1.0, rng))
            .expect("diagonally dominant")
            .restrict(tag)
    }

    /// Zero outside the tagged half-space.
    pub fn restrict(&self, tag: Support) -> Self {
        Self(Arc::new(Node::Restricted {
            inner: self.clone(),
            tag,
        }))
    }

    pub(crate) fn transformed(op: RepOperator, arg: TestFunction) -> Self {
        Self(Arc::new(Node::Transformed { op, arg }))
    }

    pub fn dim(&self) -> usize {
        match &*self.0 {
            Node::Gaussian(g) | Node::TrigGaussian { gauss: g, .. } => g.dim(),
            Node::Restricted { inner, .. } => inner.dim(),
            Node::Transformed { op, .. } => op.dim(),
        }
    }

    /// The declared support tag. For transformed functions it is derived from
    /// the operator's support rule and is not enforced during evaluation.
    pub fn support(&self) -> Support {
        match &*self.0 {
            Node::Gaussian(_) | Node::TrigGaussian { .. } => Support::Whole,
            Node::Restricted { tag, .. } => *tag,
            Node::Transformed { op, arg } => op
                .propagate_support(arg.support())
                .unwrap_or(Support::Whole),
        }
    }

    pub fn eval(&self, q: &[f64]) -> Complex {
        match &*self.0 {
            Node::Gaussian(g) => g.eval(q),
            Node::TrigGaussian { gauss, terms } => {
                let poly: Complex = terms
                    .iter()
                    .map(|(c, w)| {
                        let ph: f64 = w.iter().zip(q).map(|(a, b)| a * b).sum();
                        c * Complex::from_polar(1.0, 2.0 * PI * ph)
                    })
                    .sum();
                poly * gauss.eval(q)
            }
            Node::Restricted { inner, tag } => {
                if tag.contains(q) {
                    inner.eval(q)
                } else {
                    Complex::new(0.0, 0.0)
                }
            }
            Node::Transformed { op, arg } => op.eval_on(arg, q),
        }
    }

    /// Box outside which `|f|²` is negligible; `None` when no bounded box
    /// exists (e.g. mass accumulating at a fold).
    pub fn region(&self) -> Option<Region> {
        match &*self.0 {
            Node::Gaussian(g) | Node::TrigGaussian { gauss: g, .. } => Some(g.region()),
            Node::Restricted { inner, tag } => inner.region()?.clip(*tag),
            Node::Transformed { op, arg } => op.pull_region(&arg.region()?),
        }
    }
}

fn random_vec<R: Rng + ?Sized>(d: usize, w: f64, rng: &mut R) -> Vec<f64> {
    (0..d).map(|_| rng.random_range(-w..=w)).collect()
}

fn random_precision<R: Rng + ?Sized>(d: usize, rng: &mut R) -> RealMatrix {
    let mut w = RealMatrix::zeros(d, d);
    for i in 0..d {
        w.set(i, i, rng.random_range(0.5..=2.0));
        for j in 0..i {
            // Off-diagonal mass ≤ 0.1·(d−1) < 0.5 keeps W diagonally dominant.
            let v = rng.random_range(-0.1..=0.1);
            w.set(i, j, v);
            w.set(j, i, v);
        }
    }
    w
}
