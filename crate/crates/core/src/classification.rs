//! Isomorphism invariants, certificate verification and the catalog of
//! low-dimensional equivalence classes.
//!
//! Deciding isomorphism in general amounts to symplectic conjugacy of matrix
//! pencils, which is not attempted. Two parameter sets are *refuted* when an
//! invariant differs and *certified* when a supplied basis change and
//! symplectic matrix conjugate one pencil onto the other. Everything else is
//! inconclusive.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{dim_err, Error, Result};
use crate::exec::Exec;
use crate::extension::{golden_min, DilationParams};
use crate::lie::{
    phase_action, case_id, center_dim, derived_series_dims, is_nilpotent_algebra, lower_central_dims,
    nilradical_dim, normalize, transform, IsoCase, LinearMap,
};
use crate::matrix::{char_poly, jordan_chevalley, rank, spectrum, RealMatrix};
use crate::tolerance::{self, Tolerances};

/// Number of directions sampled in a pencil profile.
pub const PROFILE_SAMPLES: usize = 64;
/// Grid used to search for a matching direction.
pub const PROFILE_GRID: usize = 720;
/// Rank threshold for the span of the nilpotent parts; Jordan–Chevalley
/// parts of defective matrices are only accurate to about `√ε`.
const LOCUS_RANK: f64 = 1e-6;

/// Samples whose spectral scale falls below this fraction of `‖C(θ)‖` are
/// dropped: near a nilpotent direction the rescaled coefficients are
/// dominated by rounding error (relative error about `ε / ratio^{2n}`).
const PROFILE_MIN_RATIO: f64 = 1e-2;
/// Sub-steps per grid cell in the local scan around each grid minimum.
const REFINE_SUBSTEPS: usize = 8;

/// Characteristic-polynomial coefficients of `cos θ C1 + sin θ C2`, rescaled
/// so that the largest `|a_k|^{1/k}` is 1. Directions of a pencil are only
/// defined up to positive scale, and the rescaled vector is invariant under it.
/// `None` when the element is too close to nilpotent for the rescaling to be
/// meaningful.
fn profile_vector(c1: &RealMatrix, c2: &RealMatrix, theta: f64) -> Option<Vec<f64>> {
    let c = &c1.scale(theta.cos()) + &c2.scale(theta.sin());
    let a = char_poly(&c);
    let s = a
        .iter()
        .enumerate()
        .map(|(k, v)| v.abs().powf(1.0 / (k + 1) as f64))
        .fold(0.0, f64::max);
    if s <= PROFILE_MIN_RATIO * c.norm() {
        return None;
    }
    Some(
        a.iter()
            .enumerate()
            .map(|(k, v)| v / s.powi(k as i32 + 1))
            .collect(),
    )
}

fn sup_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
}

/// Sampled map `θ ↦ normalized characteristic polynomial of C(θ)` over
/// `θ ∈ [0, π)`, together with the generators used to evaluate it anywhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PencilProfile {
    pub c1: RealMatrix,
    pub c2: RealMatrix,
    pub samples: Vec<Vec<f64>>,
}

impl PencilProfile {
    pub fn new(c1: RealMatrix, c2: RealMatrix, samples: usize) -> Self {
        let samples = (0..samples)
            .filter_map(|i| profile_vector(&c1, &c2, PI * i as f64 / samples as f64))
            .collect();
        Self { c1, c2, samples }
    }

    /// Distance from `sample` to the profile at `theta`; infinite where the
    /// profile is undefined.
    fn dist_at(&self, sample: &[f64], theta: f64) -> f64 {
        profile_vector(&self.c1, &self.c2, theta)
            .map(|v| sup_dist(sample, &v))
            .unwrap_or(f64::INFINITY)
    }

    /// `max_i min_θ′ ‖self(θ_i) − other(θ′)‖_∞` over `θ′ ∈ [0, 2π)`: how far
    /// the sampled directions of `self` are from being found in `other`.
    pub fn one_sided_distance(&self, other: &PencilProfile) -> f64 {
        let h = 2.0 * PI / PROFILE_GRID as f64;
        let grid: Vec<Option<Vec<f64>>> = (0..PROFILE_GRID)
            .map(|k| profile_vector(&other.c1, &other.c2, k as f64 * h))
            .collect();
        let mut worst: f64 = 0.0;
        for sample in &self.samples {
            let d: Vec<f64> = grid
                .iter()
                .map(|g| g.as_ref().map_or(f64::INFINITY, |g| sup_dist(sample, g)))
                .collect();
            let mut minima: Vec<usize> = (0..PROFILE_GRID)
                .filter(|&k| {
                    let prev = d[(k + PROFILE_GRID - 1) % PROFILE_GRID];
                    let next = d[(k + 1) % PROFILE_GRID];
                    d[k].is_finite() && d[k] <= prev && d[k] <= next
                })
                .collect();
            minima.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
            let f = |th: f64| other.dist_at(sample, th);
            let best = minima
                .iter()
                .take(4)
                .map(|&k| {
                    // The distance is a sup of kinked curves, so a grid minimum
                    // can sit a cell away from the true one; scan ±2 cells
                    // finely before the golden-section step.
                    let step = h / REFINE_SUBSTEPS as f64;
                    let start = (k as f64 - 2.0) * h;
                    let (j, _) = (0..=4 * REFINE_SUBSTEPS)
                        .map(|j| (j, f(start + j as f64 * step)))
                        .fold((0, f64::INFINITY), |b, (j, v)| if v < b.1 { (j, v) } else { b });
                    let mid = start + j as f64 * step;
                    let th = golden_min(&f, mid - step, mid + step, 1e-12);
                    f(th).min(d[k])
                })
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(best);
        }
        worst
    }

    /// Symmetric distance; profiles match when it is below tolerance.
    pub fn distance(&self, other: &PencilProfile) -> f64 {
        self.one_sided_distance(other)
            .max(other.one_sided_distance(self))
    }
}

/// The set of pencil directions whose element is semisimple.
///
/// For commuting `C1`, `C2` the nilpotent part of `sC1 + tC2` is `sN1 + tN2`,
/// so the set is the null space of `(s, t) ↦ sN1 + tN2`. When it is a line,
/// the spectrum of the element on it (scaled to unit modulus, sorted) is
/// recorded as well; it is determined up to sign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemisimpleLocus {
    pub dim: usize,
    pub spectrum: Option<Vec<[f64; 2]>>,
}

fn normalized_spectrum(c: &RealMatrix) -> Result<Vec<[f64; 2]>> {
    let vals = spectrum(c)?.expanded();
    let scale = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let scale = if scale > 0.0 { scale } else { 1.0 };
    let mut out: Vec<[f64; 2]> = vals.iter().map(|v| [v.re / scale, v.im / scale]).collect();
    sort_pairs(&mut out);
    Ok(out)
}

fn sort_pairs(v: &mut [[f64; 2]]) {
    v.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
}

impl SemisimpleLocus {
    pub fn new(c1: &RealMatrix, c2: &RealMatrix) -> Result<Self> {
        let (_, n1) = jordan_chevalley(c1)?;
        let (_, n2) = jordan_chevalley(c2)?;
        let stacked = RealMatrix::from_rows(&[n1.to_vec(), n2.to_vec()]).expect("non-empty");
        let scale = 1.0 + c1.max_abs() + c2.max_abs();
        let r = if stacked.max_abs() <= LOCUS_RANK * scale {
            0
        } else {
            rank(&stacked, LOCUS_RANK)
        };
        let dim = 2 - r;
        let spectrum = if dim == 1 {
            // Null direction of (s, t) ↦ sN1 + tN2.
            let (a, b) = (n1.to_vec(), n2.to_vec());
            let (na, nb) = (norm2(&a), norm2(&b));
            let dir = if na >= nb {
                let t = 1.0;
                let s = -dot(&a, &b) / (na * na) * t;
                [s, t]
            } else {
                let s = 1.0;
                let t = -dot(&a, &b) / (nb * nb) * s;
                [s, t]
            };
            let c = &c1.scale(dir[0]) + &c2.scale(dir[1]);
            Some(normalized_spectrum(&c)?)
        } else {
            None
        };
        Ok(Self { dim, spectrum })
    }

    pub fn matches(&self, other: &SemisimpleLocus, tol: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        match (&self.spectrum, &other.spectrum) {
            (None, None) => true,
            (Some(a), Some(b)) if a.len() == b.len() => {
                let close = |x: &[[f64; 2]], y: &[[f64; 2]]| {
                    x.iter()
                        .zip(y)
                        .all(|(u, v)| (u[0] - v[0]).abs() <= tol && (u[1] - v[1]).abs() <= tol)
                };
                let mut neg: Vec<[f64; 2]> = b.iter().map(|v| [-v[0], -v[1]]).collect();
                sort_pairs(&mut neg);
                close(a, b) || close(a, &neg)
            }
            _ => false,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Isomorphism invariants of the algebra, computed on normalized parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantVector {
    pub n: usize,
    pub p1: u8,
    pub center_dim: usize,
    pub case_id: u8,
    pub nilradical_dim: usize,
    pub is_nilpotent_algebra: bool,
    pub derived_series_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub pencil_profile: PencilProfile,
    pub semisimple_locus: SemisimpleLocus,
}

pub fn invariant_vector(params: &DilationParams) -> Result<InvariantVector> {
    let (p, _) = normalize(params)?;
    let c1 = phase_action(&p, 1)?.value;
    let c2 = phase_action(&p, 2)?.value;
    Ok(InvariantVector {
        n: p.n(),
        p1: if p.p()[0] == 1.0 { 1 } else { 0 },
        center_dim: center_dim(&p),
        case_id: case_id(&p)?,
        nilradical_dim: nilradical_dim(&p)?,
        is_nilpotent_algebra: is_nilpotent_algebra(&p),
        derived_series_dims: derived_series_dims(&p),
        lower_central_dims: lower_central_dims(&p),
        semisimple_locus: SemisimpleLocus::new(&c1, &c2)?,
        pencil_profile: PencilProfile::new(c1, c2, PROFILE_SAMPLES),
    })
}

/// First invariant on which `a` and `b` differ, in field order.
pub fn differing_invariant(a: &InvariantVector, b: &InvariantVector, tol: f64) -> Option<&'static str> {
    if a.n != b.n {
        return Some("n");
    }
    if a.p1 != b.p1 {
        return Some("p1");
    }
    if a.center_dim != b.center_dim {
        return Some("center_dim");
    }
    if a.case_id != b.case_id {
        return Some("case_id");
    }
    if a.nilradical_dim != b.nilradical_dim {
        return Some("nilradical_dim");
    }
    if a.is_nilpotent_algebra != b.is_nilpotent_algebra {
        return Some("is_nilpotent_algebra");
    }
    if a.derived_series_dims != b.derived_series_dims {
        return Some("derived_series_dims");
    }
    if a.lower_central_dims != b.lower_central_dims {
        return Some("lower_central_dims");
    }
    if a.pencil_profile.distance(&b.pencil_profile) > tol {
        return Some("pencil_profile");
    }
    if !a.semisimple_locus.matches(&b.semisimple_locus, tol) {
        return Some("semisimple_locus");
    }
    None
}

/// A differing invariant proves non-isomorphism; `None` is inconclusive.
pub fn refute_isomorphism(a: &DilationParams, b: &DilationParams) -> Result<Option<&'static str>> {
    let ia = invariant_vector(a)?;
    let ib = invariant_vector(b)?;
    Ok(differing_invariant(&ia, &ib, tolerance::PROFILE_MATCH))
}

/// Basis change `A` of the target's dilation plane and symplectic `S`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(rename = "A")]
    pub a: [[f64; 2]; 2],
    #[serde(rename = "S")]
    pub s: RealMatrix,
}

impl Certificate {
    pub fn identity(n: usize) -> Self {
        Self {
            a: [[1.0, 0.0], [0.0, 1.0]],
            s: RealMatrix::identity(2 * n),
        }
    }
}

/// Residuals of a certificate check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub valid: bool,
    pub p_defect: f64,
    pub c_defects: [f64; 2],
    pub symplectic_defect: f64,
    pub tolerance: f64,
}

/// Checks that, with `M̃′_i = Σ_j A_ij M̃_j`, `p̃′ = p` and `C̃′_k = S C_k S⁻¹`.
///
/// Malformed certificates (wrong shape, singular `A`, `S` not symplectic)
/// are errors; a well-formed certificate that fails the conjugacy yields
/// `valid = false` with the residuals.
pub fn verify_certificate(
    a: &DilationParams,
    b: &DilationParams,
    cert: &Certificate,
    tol: &Tolerances,
) -> Result<CertificateReport> {
    let n = a.n();
    if b.n() != n {
        return dim_err("parameter sets differ in dimension");
    }
    if cert.s.rows() != 2 * n || !cert.s.is_square() {
        return Err(Error::CertificateInvalid(format!(
            "S is {}x{}, expected {}x{}",
            cert.s.rows(),
            cert.s.cols(),
            2 * n,
            2 * n
        )));
    }
    let symplectic_defect = cert.s.symplectic_defect(1.0)?;
    if symplectic_defect > tol.certificate * (1.0 + cert.s.norm().powi(2)) {
        return Err(Error::CertificateInvalid(format!(
            "S is not symplectic (‖SᵀJS − J‖ = {symplectic_defect:e})"
        )));
    }
    let b_prime = transform(b, &IsoCase::BasisChange { a: cert.a })?;
    let p_defect = (b_prime.p()[0] - a.p()[0])
        .abs()
        .max((b_prime.p()[1] - a.p()[1]).abs());
    let s_inv = cert.s.inverse()?;
    let mut c_defects = [0.0; 2];
    let mut scale: f64 = 1.0;
    for k in 1..=2 {
        let ck = phase_action(a, k)?.value;
        let target = phase_action(&b_prime, k)?.value;
        let conj = &(&cert.s * &ck) * &s_inv;
        c_defects[k - 1] = target.max_diff(&conj);
        scale = scale.max(target.max_abs()).max(conj.max_abs());
    }
    let bound = tol.certificate * scale;
    let valid = p_defect <= bound && c_defects.iter().all(|&d| d <= bound);
    Ok(CertificateReport {
        valid,
        p_defect,
        c_defects,
        symplectic_defect,
        tolerance: bound,
    })
}

/// The algebra isomorphism `g_a → g_b` induced by a certificate: `S` on the
/// Heisenberg part, then the basis change back from `M̃′` to `M̃`.
pub fn certificate_map(n: usize, cert: &Certificate) -> LinearMap {
    let dim = 2 * n + 3;
    let mut m = RealMatrix::identity(dim);
    m.set_block(2, 2, &cert.s);
    // s·M̃′ = (Aᵀs)·M̃.
    for i in 0..2 {
        for j in 0..2 {
            m.set(i, j, cert.a[j][i]);
        }
    }
    LinearMap { matrix: m }
}

/// Best-effort certificate search for `n = 1`.
///
/// Here `C_k = diag(b_k, p_k − b_k)` and `Sp(1, ℝ) = SL₂(ℝ)`; a symplectic
/// conjugation between such diagonal pencils either fixes the diagonal or
/// swaps it, so `S ∈ {I, 𝒥}` is tried and `A` solved from the remaining
/// linear equations. Degenerate pencils with repeated diagonal entries admit
/// other `S` that are not searched.
pub fn search_certificate_n1(a: &DilationParams, b: &DilationParams, tol: &Tolerances) -> Option<Certificate> {
    if a.n() != 1 || b.n() != 1 {
        return None;
    }
    let (pa, pb) = (a.p(), b.p());
    let (ba, bb) = ([a.b1().get(0, 0), a.b2().get(0, 0)], [b.b1().get(0, 0), b.b2().get(0, 0)]);
    let det = pb[0] * bb[1] - pb[1] * bb[0];
    if det.abs() < 1e-12 {
        return None;
    }
    for s in [RealMatrix::identity(2), RealMatrix::symplectic_unit(1)] {
        let swap = s.get(0, 0) == 0.0;
        let mut rows = [[0.0; 2]; 2];
        for i in 0..2 {
            let target = if swap { pa[i] - ba[i] } else { ba[i] };
            // [[p̃1, p̃2], [b̃1, b̃2]] (a_i1, a_i2)ᵀ = (p_i, target).
            rows[i] = [
                (pa[i] * bb[1] - pb[1] * target) / det,
                (pb[0] * target - bb[0] * pa[i]) / det,
            ];
        }
        let cert = Certificate { a: rows, s };
        if verify_certificate(a, b, &cert, tol).is_ok_and(|r| r.valid) {
            return Some(cert);
        }
    }
    None
}

/// Free parameter values for the catalog rows, one list per row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CatalogChoices {
    /// `(b, d)` pairs for `diag(½, b)`, `diag(1, d)`.
    pub diagonal: Vec<(f64, f64)>,
    /// `d` for the Jordan pair with `B2 = [[1, d], [0, 1]]`.
    pub jordan: Vec<f64>,
    /// `a` for `B1 = aI`, `B2` nilpotent.
    pub nilpotent: Vec<f64>,
    /// `(a, c)` for `B1 = aI`, `B2 = cI + R`.
    pub rotation: Vec<(f64, f64)>,
    /// `b` for `B1 = [[½, b], [−b, ½]]`, `B2 = I`.
    pub spiral: Vec<f64>,
}

impl Default for CatalogChoices {
    fn default() -> Self {
        let bs = [0.6, 0.9];
        let ds = [0.0, 0.5, 1.0];
        let az = [0.5, 1.0];
        let cs = [0.0, 1.0];
        Self {
            diagonal: bs.iter().flat_map(|&b| ds.iter().map(move |&d| (b, d))).collect(),
            jordan: ds.to_vec(),
            nilpotent: az.to_vec(),
            rotation: az.iter().flat_map(|&a| cs.iter().map(move |&c| (a, c))).collect(),
            spiral: bs.to_vec(),
        }
    }
}

/// One catalog entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub label: String,
    pub params: DilationParams,
}

fn entry(label: String, p: [f64; 2], b1: &[[f64; 2]], b2: &[[f64; 2]]) -> CatalogEntry {
    CatalogEntry {
        label,
        params: DilationParams::from_rows(p, b1, b2),
    }
}

fn out_of_range(row: &str, detail: String) -> Error {
    Error::InvalidParams(format!("{row}: {detail} is outside the admissible range"))
}

/// The representatives of every equivalence class for `n = 1, 2`, one entry
/// per row and parameter choice.
pub fn catalog(choices: &CatalogChoices) -> Result<Vec<CatalogEntry>> {
    let mut out = vec![CatalogEntry {
        label: "n1".into(),
        params: DilationParams::from_rows([1.0, 0.0], &[[0.5]], &[[1.0]]),
    }];
    let p0 = [0.0, 0.0];
    let p1 = [1.0, 0.0];
    out.push(entry("n2p0-diagonal".into(), p0, &[[1.0, 0.0], [0.0, 0.0]], &[[0.0, 0.0], [0.0, 1.0]]));
    out.push(entry("n2p0-nilpotent".into(), p0, &[[1.0, 0.0], [0.0, 1.0]], &[[0.0, 1.0], [0.0, 0.0]]));
    out.push(entry("n2p0-rotation".into(), p0, &[[1.0, 0.0], [0.0, 1.0]], &[[0.0, 1.0], [-1.0, 0.0]]));

    for &(b, d) in &choices.diagonal {
        let ok = (b > 0.5 && d.abs() <= 1.0) || (b == 0.5 && (0.0..=1.0).contains(&d));
        if !ok {
            return Err(out_of_range("diagonal row", format!("(b, d) = ({b}, {d})")));
        }
        out.push(entry(format!("n2p1-diagonal(b={b},d={d})"), p1, &[[0.5, 0.0], [0.0, b]], &[[1.0, 0.0], [0.0, d]]));
    }
    for &d in &choices.jordan {
        if d < 0.0 {
            return Err(out_of_range("Jordan row", format!("d = {d}")));
        }
        out.push(entry(format!("n2p1-jordan(d={d})"), p1, &[[0.5, 1.0], [0.0, 0.5]], &[[1.0, d], [0.0, 1.0]]));
    }
    out.push(entry("n2p1-scalar-jordan".into(), p1, &[[0.5, 0.0], [0.0, 0.5]], &[[1.0, 1.0], [0.0, 1.0]]));
    for &a in &choices.nilpotent {
        if a < 0.5 {
            return Err(out_of_range("nilpotent row", format!("a = {a}")));
        }
        out.push(entry(format!("n2p1-nilpotent(a={a})"), p1, &[[a, 0.0], [0.0, a]], &[[0.0, 1.0], [0.0, 0.0]]));
    }
    for &(a, c) in &choices.rotation {
        if a < 0.5 || c < 0.0 {
            return Err(out_of_range("rotation row", format!("(a, c) = ({a}, {c})")));
        }
        out.push(entry(format!("n2p1-rotation(a={a},c={c})"), p1, &[[a, 0.0], [0.0, a]], &[[c, 1.0], [-1.0, c]]));
    }
    for &b in &choices.spiral {
        if b <= 0.0 {
            return Err(out_of_range("spiral row", format!("b = {b}")));
        }
        out.push(entry(format!("n2p1-spiral(b={b})"), p1, &[[0.5, b], [-b, 0.5]], &[[1.0, 0.0], [0.0, 1.0]]));
    }
    Ok(out)
}

/// Pairwise separation of the catalog.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub labels: Vec<String>,
    pub rows: Vec<DilationParams>,
    /// `"refuted"` or `"inconclusive"`.
    pub verdicts: Vec<Vec<String>>,
    pub witnesses: Vec<Vec<Option<String>>>,
}

impl CatalogReport {
    /// Off-diagonal pairs left inconclusive, as index pairs `i < j`.
    pub fn inconclusive_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.rows.len();
        (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .filter(|&(i, j)| self.witnesses[i][j].is_none())
            .collect()
    }
}

pub fn catalog_report(choices: &CatalogChoices, exec: Exec) -> Result<CatalogReport> {
    let catalog = catalog(choices)?;
    let invariants = exec
        .map(&catalog, |e| invariant_vector(&e.params))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let m = catalog.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let found = exec.map(&pairs, |&(i, j)| {
        differing_invariant(&invariants[i], &invariants[j], tolerance::PROFILE_MATCH)
    });
    let mut witnesses = vec![vec![None; m]; m];
    for (&(i, j), w) in pairs.iter().zip(found) {
        witnesses[i][j] = w.map(str::to_string);
        witnesses[j][i] = w.map(str::to_string);
    }
    let verdicts = witnesses
        .iter()
        .map(|row| {
            row.iter()
                .map(|w| if w.is_some() { "refuted" } else { "inconclusive" }.to_string())
                .collect()
        })
        .collect();
    Ok(CatalogReport {
        labels: catalog.iter().map(|e| e.label.clone()).collect(),
        rows: catalog.into_iter().map(|e| e.params).collect(),
        verdicts,
        witnesses,
    })
}
