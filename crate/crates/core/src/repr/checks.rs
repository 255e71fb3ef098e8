//! Sampled verification of the representation identities.
//!
//! Pointwise identities (homomorphism, factorization, intertwining, support)
//! are evaluated exactly at seeded sample points; only norm checks use
//! quadrature. Every sample is drawn from one seeded stream before any work
//! is fanned out, so results do not depend on the execution strategy.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{nan_max, Exec};
use crate::extension::{g_mul, DilationParams, GroupElement};

use super::group::{chirp_matrix, dilation_block, metaplectic_operator, wavelet_operator};
use super::operator::{chirp, dilation, intertwiner, intertwiner_inverse, RepOperator};
use super::probe::{Region, Support, TestFunction};
use super::quadrature::{norm_sq, QuadConfig};

/// Which representation of the group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Wavelet,
    Metaplectic,
}

impl RepKind {
    pub fn name(self) -> &'static str {
        match self {
            RepKind::Wavelet => "wavelet",
            RepKind::Metaplectic => "metaplectic",
        }
    }

    pub fn operator(self, params: &DilationParams, g: &GroupElement) -> Result<RepOperator> {
        match self {
            RepKind::Wavelet => wavelet_operator(params, g),
            RepKind::Metaplectic => metaplectic_operator(params, g),
        }
    }

    /// The half-space tag on this representation's side.
    pub fn half(self, sign: f64) -> Support {
        match self {
            RepKind::Wavelet => Support::frequency(sign),
            RepKind::Metaplectic => Support::spatial(sign),
        }
    }
}

/// Sampling plan for the pointwise checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SampleCheckConfig {
    pub points: usize,
    pub probes: usize,
    pub pairs: usize,
    /// Points are drawn from `[−w, w]^{n+1}`.
    pub half_width: f64,
    /// Points with `|q0|` below this are redrawn, keeping clear of the fold.
    pub band: f64,
    pub seed: u64,
    pub tolerance: f64,
    /// Group elements per norm check.
    pub norm_elements: usize,
}

impl Default for SampleCheckConfig {
    fn default() -> Self {
        Self {
            points: 200,
            probes: 5,
            pairs: 50,
            half_width: 3.0,
            band: 1e-3,
            seed: 0x5eed,
            tolerance: 1e-9,
            norm_elements: 2,
        }
    }
}

impl SampleCheckConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::Domain("tolerance must be positive".into()));
        }
        if !(self.half_width > self.band && self.band >= 0.0) {
            return Err(Error::Domain("need 0 ≤ band < half_width".into()));
        }
        if self.points == 0 || self.probes == 0 || self.pairs == 0 {
            return Err(Error::Domain("sample counts must be positive".into()));
        }
        Ok(())
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// `points` samples from the box with `|q0| ≥ band`.
    pub fn sample_points<R: rand::Rng + ?Sized>(&self, dim: usize, rng: &mut R) -> Vec<Vec<f64>> {
        let region = Region::cube(dim, self.half_width);
        (0..self.points)
            .map(|_| loop {
                let q = region.sample(rng);
                if q[0].abs() >= self.band {
                    break q;
                }
            })
            .collect()
    }
}

/// JSON record of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckRecord {
    pub check: String,
    pub params: DilationParams,
    pub group_element: Option<GroupElement>,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(
        check: impl Into<String>,
        params: &DilationParams,
        group_element: Option<GroupElement>,
        max_error: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            check: check.into(),
            params: params.clone(),
            group_element,
            max_error,
            tolerance,
            pass: max_error <= tolerance,
        }
    }
}

/// `max_q |a(q) − b(q)|`.
pub fn max_pointwise_error(a: &TestFunction, b: &TestFunction, points: &[Vec<f64>], exec: Exec) -> f64 {
    exec.max(points, |q| (a.eval(q) - b.eval(q)).norm())
}

/// `max_q |ρ(g)ρ(h)f − ρ(gh)f|`.
pub fn homomorphism_defect(
    params: &DilationParams,
    kind: RepKind,
    g: &GroupElement,
    h: &GroupElement,
    f: &TestFunction,
    points: &[Vec<f64>],
    exec: Exec,
) -> Result<f64> {
    let lhs = kind.operator(params, g)?.apply(&kind.operator(params, h)?.apply(f)?)?;
    let rhs = kind.operator(params, &g_mul(params, g, h)?)?.apply(f)?;
    Ok(max_pointwise_error(&lhs, &rhs, points, exec))
}

/// `max_q |μ(g)f − U_{m(z,x)} S_{a(t,y)} f|`.
pub fn factorization_defect(
    params: &DilationParams,
    g: &GroupElement,
    f: &TestFunction,
    points: &[Vec<f64>],
    exec: Exec,
) -> Result<f64> {
    let direct = metaplectic_operator(params, g)?.apply(f)?;
    let factored = chirp(&chirp_matrix(g.z, &g.x))?
        .compose(&dilation(&dilation_block(params, g.t, &g.y))?)?
        .apply(f)?;
    Ok(max_pointwise_error(&direct, &factored, points, exec))
}

/// `max_q |[Q± π̂(g) Q±⁻¹ f](q) − [μ(g) f](q)|` for `f` tagged `U±`.
pub fn check_intertwining(
    params: &DilationParams,
    g: &GroupElement,
    sign: f64,
    f: &TestFunction,
    points: &[Vec<f64>],
    exec: Exec,
) -> Result<f64> {
    let want = Support::spatial(sign);
    if f.support() != want {
        return Err(Error::Support(format!(
            "intertwining check needs a probe tagged {want:?}, got {:?}",
            f.support()
        )));
    }
    let dim = params.n() + 1;
    let pulled = intertwiner_inverse(sign, dim).apply(f)?;
    let moved = wavelet_operator(params, g)?.apply(&pulled)?;
    let lhs = intertwiner(sign, dim).apply(&moved)?;
    let rhs = metaplectic_operator(params, g)?.apply(f)?;
    Ok(max_pointwise_error(&lhs, &rhs, points, exec))
}

fn relative_norm_gap(before: &TestFunction, after: &TestFunction, quad: &QuadConfig, exec: Exec) -> Result<f64> {
    let a = norm_sq(before, quad, exec)?.value.sqrt();
    let b = norm_sq(after, quad, exec)?.value.sqrt();
    Ok((b - a).abs() / a)
}

/// `|‖ρ(g)f‖ − ‖f‖| / ‖f‖` by quadrature.
pub fn check_unitarity(
    params: &DilationParams,
    kind: RepKind,
    g: &GroupElement,
    f: &TestFunction,
    quad: &QuadConfig,
    exec: Exec,
) -> Result<f64> {
    let out = kind.operator(params, g)?.apply(f)?;
    relative_norm_gap(f, &out, quad, exec)
}

/// Norm preservation of `Q±` (input tagged `O₊`) or `Q±⁻¹` (input tagged
/// `U±`).
pub fn intertwiner_unitarity(sign: f64, f: &TestFunction, quad: &QuadConfig, exec: Exec) -> Result<f64> {
    let dim = f.dim();
    let op = if f.support() == Support::FreqPos {
        intertwiner(sign, dim)
    } else {
        intertwiner_inverse(sign, dim)
    };
    relative_norm_gap(f, &op.apply(f)?, quad, exec)
}

/// Number of sampled evaluations where `ρ(g)` moves a point across the
/// boundary `q0 = 0` or `ρ(g)f` is nonzero off `f`'s half-space. Each point
/// is also tested with its first coordinate moved to `±band`, straddling the
/// boundary.
pub fn support_violations(
    params: &DilationParams,
    kind: RepKind,
    g: &GroupElement,
    f: &TestFunction,
    points: &[Vec<f64>],
    band: f64,
) -> Result<usize> {
    let tag = f.support();
    if tag != kind.half(1.0) && tag != kind.half(-1.0) {
        return Err(Error::Support(format!(
            "{} support check needs a half-space probe on its side, got {tag:?}",
            kind.name()
        )));
    }
    let op = kind.operator(params, g)?;
    let out = op.apply(f)?;
    let mut violations = usize::from(out.support() != tag);
    let mut test = |q: &[f64]| {
        let crossed = op.argument(q).is_none_or(|a| a[0].signum() != q[0].signum());
        let leaked = !tag.contains(q) && out.eval(q).norm() != 0.0;
        violations += usize::from(crossed) + usize::from(leaked);
    };
    for q in points {
        test(q);
        for edge in [band, -band] {
            let mut e = q.clone();
            e[0] = edge;
            test(&e);
        }
    }
    Ok(violations)
}

/// Largest value and the index that attained it; a NaN wins.
fn worst(values: &[f64]) -> (f64, usize) {
    let mut best = (0.0, 0);
    for (j, &v) in values.iter().enumerate() {
        if v.is_nan() {
            return (f64::NAN, j);
        }
        if v > best.0 {
            best = (v, j);
        }
    }
    best
}

fn fail_to_nan(r: Result<f64>) -> f64 {
    r.unwrap_or(f64::NAN)
}

/// The full pointwise suite on one parameter set: homomorphism of both
/// representations, metaplectic factorization, intertwining for both signs
/// and support invariance. With `quad`, norm checks are added.
pub fn run_suite(
    params: &DilationParams,
    cfg: &SampleCheckConfig,
    quad: Option<&QuadConfig>,
    exec: Exec,
) -> Result<Vec<CheckRecord>> {
    cfg.validate()?;
    params.require_closed()?;
    let n = params.n();
    let dim = n + 1;
    let mut rng = cfg.rng();
    let points = cfg.sample_points(dim, &mut rng);
    let probes: Vec<TestFunction> = (0..cfg.probes)
        .map(|_| TestFunction::random_gaussian(dim, &mut rng))
        .collect();
    let half_probes: Vec<[TestFunction; 2]> = (0..cfg.probes)
        .map(|_| {
            [
                TestFunction::random_in_half(dim, Support::SpacePos, &mut rng),
                TestFunction::random_in_half(dim, Support::SpaceNeg, &mut rng),
            ]
        })
        .collect();
    let pairs: Vec<(GroupElement, GroupElement)> = (0..cfg.pairs)
        .map(|_| (GroupElement::random(n, &mut rng), GroupElement::random(n, &mut rng)))
        .collect();
    let tol = cfg.tolerance;
    let mut records = Vec::new();

    // Per pair: the worst value over probes and points; points are evaluated
    // sequentially inside each pair so the parallel split is over pairs.
    let per_pair = |f: &(dyn Fn(&(GroupElement, GroupElement)) -> f64 + Sync)| -> (f64, GroupElement) {
        let vals = exec.map(&pairs, f);
        let (m, i) = worst(&vals);
        (m, pairs[i].0.clone())
    };
    let seq = Exec::Sequential;

    for kind in [RepKind::Wavelet, RepKind::Metaplectic] {
        let (m, g) = per_pair(&|(g, h)| {
            probes.iter().fold(0.0, |acc, f| {
                nan_max(acc, fail_to_nan(homomorphism_defect(params, kind, g, h, f, &points, seq)))
            })
        });
        records.push(CheckRecord::new(format!("{}_homomorphism", kind.name()), params, Some(g), m, tol));
    }

    let (m, g) = per_pair(&|(g, _)| {
        probes.iter().fold(0.0, |acc, f| {
            nan_max(acc, fail_to_nan(factorization_defect(params, g, f, &points, seq)))
        })
    });
    records.push(CheckRecord::new("metaplectic_factorization", params, Some(g), m, tol));

    for (idx, sign) in [(0, 1.0), (1, -1.0)] {
        let (m, g) = per_pair(&|(g, _)| {
            half_probes.iter().fold(0.0, |acc, fs| {
                nan_max(acc, fail_to_nan(check_intertwining(params, g, sign, &fs[idx], &points, seq)))
            })
        });
        let label = if sign > 0.0 { "intertwining_plus" } else { "intertwining_minus" };
        records.push(CheckRecord::new(label, params, Some(g), m, tol));
    }

    for kind in [RepKind::Wavelet, RepKind::Metaplectic] {
        let (m, g) = per_pair(&|(g, _)| {
            half_probes
                .iter()
                .flatten()
                .map(|f| {
                    // Wavelet checks use the same probes, retagged on the
                    // frequency side.
                    let tagged = match kind {
                        RepKind::Metaplectic => f.clone(),
                        RepKind::Wavelet => f.restrict(Support::frequency(f.support().half_sign().unwrap_or(1.0))),
                    };
                    support_violations(params, kind, g, &tagged, &points, cfg.band)
                        .map_or(f64::NAN, |v| v as f64)
                })
                .fold(0.0, nan_max)
        });
        records.push(CheckRecord::new(format!("{}_support", kind.name()), params, Some(g), m, 0.0));
    }

    if let Some(quad) = quad {
        records.extend(norm_suite(params, cfg, quad, exec)?);
    }
    Ok(records)
}

/// Norm checks for both representations and both intertwiners.
pub fn norm_suite(
    params: &DilationParams,
    cfg: &SampleCheckConfig,
    quad: &QuadConfig,
    exec: Exec,
) -> Result<Vec<CheckRecord>> {
    let n = params.n();
    let dim = n + 1;
    // Separate stream so norm checks do not shift the pointwise samples.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
    let elements: Vec<GroupElement> = (0..cfg.norm_elements)
        .map(|_| GroupElement::random(n, &mut rng))
        .collect();
    let probe = TestFunction::random_gaussian(dim, &mut rng);
    let freq = TestFunction::random_in_half(dim, Support::FreqPos, &mut rng);
    let spatial = [
        TestFunction::random_in_half(dim, Support::SpacePos, &mut rng),
        TestFunction::random_in_half(dim, Support::SpaceNeg, &mut rng),
    ];
    let tol = quad.tolerance;
    let mut records = Vec::new();
    for kind in [RepKind::Wavelet, RepKind::Metaplectic] {
        let vals: Vec<f64> = elements
            .iter()
            .map(|g| fail_to_nan(check_unitarity(params, kind, g, &probe, quad, exec)))
            .collect();
        let (m, i) = worst(&vals);
        records.push(CheckRecord::new(
            format!("{}_unitarity", kind.name()),
            params,
            elements.get(i).cloned(),
            m,
            tol,
        ));
    }
    let mut m: f64 = 0.0;
    for (k, sign) in [1.0, -1.0].into_iter().enumerate() {
        m = nan_max(m, fail_to_nan(intertwiner_unitarity(sign, &freq, quad, exec)));
        m = nan_max(m, fail_to_nan(intertwiner_unitarity(sign, &spatial[k], quad, exec)));
    }
    records.push(CheckRecord::new("intertwiner_unitarity", params, None, m, tol));
    Ok(records)
}
