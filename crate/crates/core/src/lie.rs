//! The Lie algebra of `G_{p,B}`: brackets, matrix realization, isomorphisms
//! between parameter sets, normalization and structural invariants.
//!
//! Coordinates are taken in the ordered basis `(M1, M2, X_{e_1..e_n},
//! Y_{e_1..e_n}, Z)`, so the algebra has dimension `2n + 3`.

use serde::{Deserialize, Serialize};

use crate::error::{dim_err, Error, Result};
use crate::extension::DilationParams;
use crate::heisenberg::dot;
use crate::matrix::{is_nilpotent, rank, span_basis, spectrum, RealMatrix};
use crate::tolerance::{self, Tolerances};

/// Singular values below this fraction of the largest one are treated as
/// zero in structural rank computations.
pub const STRUCTURE_RANK: f64 = 1e-9;

/// `s1 M1 + s2 M2 + X_x + Y_y + Z_z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LieElement {
    pub s1: f64,
    pub s2: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: f64,
}

impl LieElement {
    pub fn zero(n: usize) -> Self {
        Self {
            s1: 0.0,
            s2: 0.0,
            x: vec![0.0; n],
            y: vec![0.0; n],
            z: 0.0,
        }
    }

    pub fn m(n: usize, k: usize) -> Self {
        let mut e = Self::zero(n);
        match k {
            1 => e.s1 = 1.0,
            2 => e.s2 = 1.0,
            _ => panic!("generator index {k} out of range"),
        }
        e
    }

    pub fn x_of(x: Vec<f64>) -> Self {
        let n = x.len();
        Self { x, ..Self::zero(n) }
    }

    pub fn y_of(y: Vec<f64>) -> Self {
        let n = y.len();
        Self { y, ..Self::zero(n) }
    }

    pub fn z_of(n: usize, z: f64) -> Self {
        Self { z, ..Self::zero(n) }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn to_coords(&self) -> Vec<f64> {
        let mut c = vec![self.s1, self.s2];
        c.extend(&self.x);
        c.extend(&self.y);
        c.push(self.z);
        c
    }

    pub fn from_coords(c: &[f64]) -> Result<Self> {
        if c.len() < 5 || !(c.len() - 3).is_multiple_of(2) {
            return dim_err(format!("{} is not a valid algebra dimension", c.len()));
        }
        let n = (c.len() - 3) / 2;
        Ok(Self {
            s1: c[0],
            s2: c[1],
            x: c[2..2 + n].to_vec(),
            y: c[2 + n..2 + 2 * n].to_vec(),
            z: c[2 + 2 * n],
        })
    }
}

/// Dimension `2n + 3` of the algebra.
pub fn algebra_dim(n: usize) -> usize {
    2 * n + 3
}

fn basis_vector(dim: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; dim];
    e[i] = 1.0;
    e
}

/// Bracket on coordinate vectors.
///
/// With `D = s1B1 + s2B2` and `q = s1p1 + s2p2` (and tildes for `v`):
/// `[u, v] = X_{Dx̃ − D̃x} + Y_{(q − Dᵀ)ỹ − (q̃ − D̃ᵀ)y} + Z_{qz̃ − q̃z + yᵀx̃ − ỹᵀx}`.
pub fn bracket_coords(params: &DilationParams, u: &[f64], v: &[f64]) -> Vec<f64> {
    let n = params.n();
    assert!(
        u.len() == algebra_dim(n) && v.len() == algebra_dim(n),
        "coordinate vector has the wrong length"
    );
    let [p1, p2] = params.p();
    let (su, sv) = ([u[0], u[1]], [v[0], v[1]]);
    let (xu, yu, zu) = (&u[2..2 + n], &u[2 + n..2 + 2 * n], u[2 + 2 * n]);
    let (xv, yv, zv) = (&v[2..2 + n], &v[2 + n..2 + 2 * n], v[2 + 2 * n]);
    let du = params.bt(su);
    let dv = params.bt(sv);
    let qu = su[0] * p1 + su[1] * p2;
    let qv = sv[0] * p1 + sv[1] * p2;

    let mut out = vec![0.0; algebra_dim(n)];
    let dxv = du.mul_vec(xv);
    let dxu = dv.mul_vec(xu);
    let dty_v = du.row_mul(yv);
    let dty_u = dv.row_mul(yu);
    for i in 0..n {
        out[2 + i] = dxv[i] - dxu[i];
        out[2 + n + i] = (qu * yv[i] - dty_v[i]) - (qv * yu[i] - dty_u[i]);
    }
    out[2 + 2 * n] = qu * zv - qv * zu + dot(yu, xv) - dot(yv, xu);
    out
}

pub fn bracket(params: &DilationParams, u: &LieElement, v: &LieElement) -> Result<LieElement> {
    if u.n() != params.n() || v.n() != params.n() {
        return dim_err("Lie element dimension does not match the parameters");
    }
    LieElement::from_coords(&bracket_coords(params, &u.to_coords(), &v.to_coords()))
}

/// `[[s·p, yᵀ, z], [0, s1B1 + s2B2, x], [0, 0, 0]]`.
pub fn lie_to_matrix(params: &DilationParams, u: &LieElement) -> Result<RealMatrix> {
    let n = params.n();
    if u.n() != n {
        return dim_err("Lie element dimension does not match the parameters");
    }
    let [p1, p2] = params.p();
    let mut m = RealMatrix::zeros(n + 2, n + 2);
    m.set(0, 0, u.s1 * p1 + u.s2 * p2);
    m.set_block(1, 1, &params.bt([u.s1, u.s2]));
    for i in 0..n {
        m.set(0, 1 + i, u.y[i]);
        m.set(1 + i, n + 1, u.x[i]);
    }
    m.set(0, n + 1, u.z);
    Ok(m)
}

/// `C_k = diag(B_k, p_k I − B_kᵀ)`, the action of `M_k` on `w = (x; y)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseAction {
    pub k: usize,
    pub value: RealMatrix,
}

pub fn phase_action(params: &DilationParams, k: usize) -> Result<PhaseAction> {
    if k != 1 && k != 2 {
        return Err(Error::InvalidParams(format!("pencil index {k} is not 1 or 2")));
    }
    let b = params.b(k);
    let pk = params.p()[k - 1];
    let lower = &RealMatrix::identity(params.n()).scale(pk) - &b.transpose();
    Ok(PhaseAction {
        k,
        value: RealMatrix::block_diag(&[b, &lower]),
    })
}

/// Structure constants as adjoint matrices: column `j` of `ad[i]` holds the
/// coordinates of `[e_i, e_j]`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    pub dim: usize,
    pub ad: Vec<RealMatrix>,
}

impl StructureConstants {
    pub fn new(params: &DilationParams) -> Self {
        let dim = algebra_dim(params.n());
        let basis: Vec<Vec<f64>> = (0..dim).map(|i| basis_vector(dim, i)).collect();
        let ad = (0..dim)
            .map(|i| {
                let cols: Vec<Vec<f64>> = (0..dim)
                    .map(|j| bracket_coords(params, &basis[i], &basis[j]))
                    .collect();
                RealMatrix::from_fn(dim, dim, |r, c| cols[c][r])
            })
            .collect();
        Self { dim, ad }
    }

    /// `[u, v]` from the tabulated constants.
    pub fn bracket(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0.0 {
                continue;
            }
            let w = self.ad[i].mul_vec(v);
            for (o, wk) in out.iter_mut().zip(w) {
                *o += ui * wk;
            }
        }
        out
    }

    /// `ad(u) = Σ u_i ad(e_i)`.
    pub fn ad_of(&self, u: &[f64]) -> RealMatrix {
        let mut m = RealMatrix::zeros(self.dim, self.dim);
        for (i, &ui) in u.iter().enumerate() {
            if ui != 0.0 {
                m = &m + &self.ad[i].scale(ui);
            }
        }
        m
    }
}

/// Square matrix on the ordered basis `(M1, M2, X, Y, Z)` (or on `(X, Y, Z)`
/// for maps of the Heisenberg part alone). Column `j` is the image of `e_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearMap {
    pub matrix: RealMatrix,
}

impl LinearMap {
    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        self.matrix.mul_vec(u)
    }

    pub fn compose(&self, first: &LinearMap) -> LinearMap {
        LinearMap {
            matrix: &self.matrix * &first.matrix,
        }
    }

    pub fn is_invertible(&self) -> bool {
        rank(&self.matrix, STRUCTURE_RANK) == self.matrix.rows()
    }

    /// `max_{i,j} ‖L[e_i, e_j] − [Le_i, Le_j]‖_∞`, brackets taken in `src`
    /// and `dst` respectively.
    pub fn bracket_defect(&self, src: &DilationParams, dst: &DilationParams) -> f64 {
        let dim = algebra_dim(src.n());
        assert_eq!(self.matrix.rows(), dim, "map does not match the algebra");
        defect_over_basis(
            dim,
            |a, b| bracket_coords(src, a, b),
            |a, b| bracket_coords(dst, a, b),
            |v| self.apply(v),
        )
    }

    /// Bracket defect for a map of the Heisenberg part `V_H` onto itself.
    pub fn heis_bracket_defect(&self) -> f64 {
        let dim = self.matrix.rows();
        defect_over_basis(dim, heis_bracket, heis_bracket, |v| self.apply(v))
    }
}

fn defect_over_basis(
    dim: usize,
    src: impl Fn(&[f64], &[f64]) -> Vec<f64>,
    dst: impl Fn(&[f64], &[f64]) -> Vec<f64>,
    map: impl Fn(&[f64]) -> Vec<f64>,
) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..dim {
        for j in i + 1..dim {
            let (ei, ej) = (basis_vector(dim, i), basis_vector(dim, j));
            let lhs = map(&src(&ei, &ej));
            let rhs = dst(&map(&ei), &map(&ej));
            for (a, b) in lhs.iter().zip(&rhs) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    worst
}

/// Bracket of the Heisenberg algebra on `(x, y, z)` coordinates:
/// `[W_w, W_w̃] = Z_{⟦w, w̃⟧}`.
pub fn heis_bracket(u: &[f64], v: &[f64]) -> Vec<f64> {
    let n = (u.len() - 1) / 2;
    let mut out = vec![0.0; u.len()];
    out[2 * n] = dot(&u[n..2 * n], &v[..n]) - dot(&v[n..2 * n], &u[..n]);
    out
}

/// The automorphism `W_w ↦ W_{λSw} + Z_{uᵀw}`, `Z_z ↦ Z_{±λ²z}` of the
/// Heisenberg algebra, for `SᵀJS = ±J`.
pub fn heis_automorphism(lambda: f64, u: &[f64], s: &RealMatrix, sign: f64) -> Result<LinearMap> {
    let m = s.rows();
    if !s.is_square() || !m.is_multiple_of(2) || u.len() != m {
        return dim_err("S must be 2n×2n and u of length 2n");
    }
    if !(lambda > 0.0) {
        return Err(Error::Precondition("λ must be positive".into()));
    }
    if sign != 1.0 && sign != -1.0 {
        return Err(Error::Precondition("sign must be ±1".into()));
    }
    if !s.is_symplectic(sign, tolerance::SYMPLECTIC) {
        return Err(Error::Precondition(format!(
            "SᵀJS ≠ {}J",
            if sign > 0.0 { "" } else { "−" }
        )));
    }
    let mut a = RealMatrix::zeros(m + 1, m + 1);
    a.set_block(0, 0, &s.scale(lambda));
    for (j, &uj) in u.iter().enumerate() {
        a.set(m, j, uj);
    }
    a.set(m, m, sign * lambda * lambda);
    Ok(LinearMap { matrix: a })
}

/// Parameters `(λ, u, S, sign)` of a Heisenberg automorphism.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisAutomorphismData {
    pub lambda: f64,
    pub u: Vec<f64>,
    pub s: RealMatrix,
    pub sign: f64,
}

/// Recovers `(λ, u, S, sign)` from a bracket-preserving map of `V_H` of the
/// block form `[[λS, 0], [uᵀ, ±λ²]]`.
pub fn decompose_heis_automorphism(map: &LinearMap) -> Result<HeisAutomorphismData> {
    let a = &map.matrix;
    let dim = a.rows();
    if !a.is_square() || dim.is_multiple_of(2) {
        return dim_err("map is not on a Heisenberg algebra");
    }
    let m = dim - 1;
    let corner = a.get(m, m);
    if corner == 0.0 {
        return Err(Error::Precondition("map does not preserve the center".into()));
    }
    let lambda = corner.abs().sqrt();
    Ok(HeisAutomorphismData {
        lambda,
        u: (0..m).map(|j| a.get(m, j)).collect(),
        s: a.block(0, 0, m, m).scale(1.0 / lambda),
        sign: corner.signum(),
    })
}

/// Hypotheses under which two parameter sets give isomorphic algebras.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IsoCase {
    /// `p̃ = p` and `C̃_k = S C_k S⁻¹` with `S` symplectic.
    Symplectic { s: RealMatrix },
    /// `p̃ = p` and `B̃_k = V B_k V⁻¹`.
    Conjugation { v: RealMatrix },
    /// `M̃_i = a_{i1} M1 + a_{i2} M2` with `det A ≠ 0`.
    BasisChange { a: [[f64; 2]; 2] },
    /// `M̃_k = α M_k`, `α ≠ 0`.
    Scaling { alpha: f64 },
}

fn det2(a: &[[f64; 2]; 2]) -> f64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

fn conj_diag(v: &RealMatrix) -> Result<RealMatrix> {
    let vit = v.inverse()?.transpose();
    Ok(RealMatrix::block_diag(&[v, &vit]))
}

/// Splits `C = diag(B, pI − Bᵀ)` back into `B`, failing when `C` is not of
/// that form.
fn b_from_c(c: &RealMatrix, p: f64, n: usize, tol: f64) -> Result<RealMatrix> {
    let b = c.block(0, 0, n, n);
    let mut expected = RealMatrix::zeros(2 * n, 2 * n);
    expected.set_block(0, 0, &b);
    expected.set_block(n, n, &(&RealMatrix::identity(n).scale(p) - &b.transpose()));
    let defect = c.max_diff(&expected);
    if defect > tol * (1.0 + c.max_abs()) {
        return Err(Error::CertificateInvalid(format!(
            "S C S⁻¹ is not of the form diag(B, pI − Bᵀ) (defect {defect:e})"
        )));
    }
    Ok(b)
}

/// The target parameters obtained by applying `case` to `params`.
pub fn transform(params: &DilationParams, case: &IsoCase) -> Result<DilationParams> {
    let n = params.n();
    let p = params.p();
    match case {
        IsoCase::Symplectic { s } => {
            if s.rows() != 2 * n || !s.is_square() {
                return dim_err("S must be 2n×2n");
            }
            if !s.is_symplectic(1.0, tolerance::SYMPLECTIC) {
                return Err(Error::CertificateInvalid("S is not symplectic".into()));
            }
            let s_inv = s.inverse()?;
            let mut bs = Vec::with_capacity(2);
            for k in 1..=2 {
                let c = phase_action(params, k)?.value;
                let conj = &(s * &c) * &s_inv;
                bs.push(b_from_c(&conj, p[k - 1], n, tolerance::CERTIFICATE)?);
            }
            let b2 = bs.pop().expect("two blocks");
            let b1 = bs.pop().expect("two blocks");
            DilationParams::new(p, b1, b2)
        }
        IsoCase::Conjugation { v } => {
            if v.rows() != n || !v.is_square() {
                return dim_err("V must be n×n");
            }
            let v_inv = v.inverse()?;
            let conj = |b: &RealMatrix| &(v * b) * &v_inv;
            DilationParams::new(p, conj(params.b1()), conj(params.b2()))
        }
        IsoCase::BasisChange { a } => {
            if det2(a).abs() <= f64::EPSILON * (1.0 + a.iter().flatten().map(|v| v * v).sum::<f64>()) {
                return Err(Error::CertificateInvalid("A is singular".into()));
            }
            let row = |i: usize| {
                (
                    a[i][0] * p[0] + a[i][1] * p[1],
                    params.bt([a[i][0], a[i][1]]),
                )
            };
            let (q1, b1) = row(0);
            let (q2, b2) = row(1);
            DilationParams::new([q1, q2], b1, b2)
        }
        IsoCase::Scaling { alpha } => {
            if *alpha == 0.0 {
                return Err(Error::CertificateInvalid("α must be nonzero".into()));
            }
            transform(
                params,
                &IsoCase::BasisChange {
                    a: [[*alpha, 0.0], [0.0, *alpha]],
                },
            )
        }
    }
}

/// The isomorphism `g_{src} → g_{dst}` induced by `case`, after checking that
/// `dst` really is related to `src` as the case requires.
pub fn isomorphism_map(
    src: &DilationParams,
    dst: &DilationParams,
    case: &IsoCase,
    tol: &Tolerances,
) -> Result<LinearMap> {
    let n = src.n();
    if dst.n() != n {
        return dim_err("source and target dimensions differ");
    }
    let expected = transform(src, case)?;
    let scale = 1.0 + src.b1().max_abs() + src.b2().max_abs() + src.p()[0].abs() + src.p()[1].abs();
    let defect = params_distance(&expected, dst);
    if defect > tol.certificate * scale {
        return Err(Error::CertificateInvalid(format!(
            "target parameters do not satisfy the hypothesis (defect {defect:e})"
        )));
    }
    let dim = algebra_dim(n);
    let mut m = RealMatrix::identity(dim);
    match case {
        IsoCase::Symplectic { s } => m.set_block(2, 2, s),
        IsoCase::Conjugation { v } => m.set_block(2, 2, &conj_diag(v)?),
        IsoCase::BasisChange { a } => {
            // s·M = (A⁻ᵀ s)·M̃.
            let d = det2(a);
            let inv_t = [[a[1][1] / d, -a[1][0] / d], [-a[0][1] / d, a[0][0] / d]];
            for (i, row) in inv_t.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    m.set(i, j, v);
                }
            }
        }
        IsoCase::Scaling { alpha } => {
            m.set(0, 0, 1.0 / alpha);
            m.set(1, 1, 1.0 / alpha);
        }
    }
    Ok(LinearMap { matrix: m })
}

/// Largest entrywise difference between two parameter sets of equal `n`.
pub fn params_distance(a: &DilationParams, b: &DilationParams) -> f64 {
    let dp = (a.p()[0] - b.p()[0]).abs().max((a.p()[1] - b.p()[1]).abs());
    dp.max(a.b1().max_diff(b.b1())).max(a.b2().max_diff(b.b2()))
}

/// Basis change bringing `p` to `(1, 0)` (or leaving `p = 0` alone).
///
/// With `k* = argmax |p_k|` (ties to 1) and `o` the other index, the rows of
/// `A` are `e_{k*}/p_{k*}` and `e_o − (p_o/p_{k*}) e_{k*}`.
pub fn normalize(params: &DilationParams) -> Result<(DilationParams, [[f64; 2]; 2])> {
    if !params.validation().m1_ok {
        return Err(Error::InvalidParams("M1 and M2 are linearly dependent".into()));
    }
    let p = params.p();
    if p == [0.0, 0.0] {
        return Ok((params.clone(), [[1.0, 0.0], [0.0, 1.0]]));
    }
    let k = if p[1].abs() > p[0].abs() { 1 } else { 0 };
    let o = 1 - k;
    let mut a = [[0.0; 2]; 2];
    a[0][k] = 1.0 / p[k];
    a[1][o] = 1.0;
    a[1][k] = -p[o] / p[k];
    let mut out = transform(params, &IsoCase::BasisChange { a })?;
    // Exact zeros so that downstream `p == (1, 0)` tests are reliable.
    out = DilationParams::new([1.0, 0.0], out.b1().clone(), out.b2().clone())?;
    Ok((out, a))
}

/// Dimension of the center: nullity of `u ↦ ([u, e_j])_j`.
pub fn center_dim(params: &DilationParams) -> usize {
    let sc = StructureConstants::new(params);
    let dim = sc.dim;
    // Row block j is ad(e_j) restricted so that (K u)_j = [e_j, u].
    let k = RealMatrix::from_fn(dim * dim, dim, |r, c| sc.ad[r / dim].get(r % dim, c));
    dim - rank(&k, STRUCTURE_RANK)
}

/// Dimension of `{(s, t) : s B1 + t B2 nilpotent}` among directions with
/// `s p1 + t p2 = 0`, which for commuting `B1`, `B2` is a subspace.
///
/// Simultaneous triangularization makes `Q(s, t) = Σ_j |λ_j(sB1 + tB2)|²` a
/// positive semidefinite quadratic form whose null space is exactly the
/// nilpotent set; its Gram matrix is read off from three evaluations.
/// Candidate null directions are confirmed with [`is_nilpotent`].
pub fn nilpotent_pencil_dim(params: &DilationParams) -> Result<usize> {
    let [p1, p2] = params.p();
    let nil = |st: [f64; 2]| is_nilpotent(&params.bt(st), tolerance::SPECTRAL);
    if p1 != 0.0 || p2 != 0.0 {
        let norm = p1.hypot(p2);
        return Ok(usize::from(nil([-p2 / norm, p1 / norm])));
    }
    let q = |st: [f64; 2]| -> Result<f64> {
        Ok(spectrum(&params.bt(st))?
            .expanded()
            .iter()
            .map(|l| l.norm_sqr())
            .sum())
    };
    let a = q([1.0, 0.0])?;
    let c = q([0.0, 1.0])?;
    let b = 0.5 * (q([1.0, 1.0])? - a - c);
    let scale = 1.0 + a + c;
    let cut = 1e-9 * scale;
    // Eigen-decomposition of [[a, b], [b, c]].
    let mean = 0.5 * (a + c);
    let radius = (0.25 * (a - c) * (a - c) + b * b).sqrt();
    let (lo, hi) = (mean - radius, mean + radius);
    if hi <= cut {
        return Ok(if nil([1.0, 0.0]) && nil([0.0, 1.0]) { 2 } else { 0 });
    }
    if lo <= cut {
        // Null eigenvector of the Gram matrix.
        let dir = if (a - lo).abs() + b.abs() >= (c - lo).abs() + b.abs() {
            [-b, a - lo]
        } else {
            [c - lo, -b]
        };
        let norm = dir[0].hypot(dir[1]);
        return Ok(usize::from(nil([dir[0] / norm, dir[1] / norm])));
    }
    Ok(0)
}

/// Nilradical dimension: `V_H` plus the nilpotent directions of the pencil.
pub fn nilradical_dim(params: &DilationParams) -> Result<usize> {
    Ok(2 * params.n() + 1 + nilpotent_pencil_dim(params)?)
}

/// Case label 1..=5 of normalized parameters.
///
/// For `p = (1, 0)`: 1, or 2 when `B2` is nilpotent. For `p = 0`: 3, 4 or 5
/// by the dimension (0, 1, 2) of the nilpotent part of the pencil.
pub fn case_id(params: &DilationParams) -> Result<u8> {
    let k = nilpotent_pencil_dim(params)? as u8;
    if params.p() == [0.0, 0.0] {
        Ok(3 + k)
    } else {
        Ok(1 + k)
    }
}

/// `max ‖[[u, v], w] + [[v, w], u] + [[w, u], v]‖_∞` over basis triples.
pub fn jacobi_defect(params: &DilationParams) -> f64 {
    let sc = StructureConstants::new(params);
    let dim = sc.dim;
    let e: Vec<Vec<f64>> = (0..dim).map(|i| basis_vector(dim, i)).collect();
    let mut worst: f64 = 0.0;
    for i in 0..dim {
        for j in i + 1..dim {
            let ij = sc.bracket(&e[i], &e[j]);
            for k in j + 1..dim {
                let jk = sc.bracket(&e[j], &e[k]);
                let ki = sc.bracket(&e[k], &e[i]);
                let a = sc.bracket(&ij, &e[k]);
                let b = sc.bracket(&jk, &e[i]);
                let c = sc.bracket(&ki, &e[j]);
                for t in 0..dim {
                    worst = worst.max((a[t] + b[t] + c[t]).abs());
                }
            }
        }
    }
    worst
}

/// Span of all `[a, b]` for `a` in `left`, `b` in `right`.
fn bracket_span(sc: &StructureConstants, left: &[Vec<f64>], right: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut vecs = Vec::with_capacity(left.len() * right.len());
    for a in left {
        for b in right {
            vecs.push(sc.bracket(a, b));
        }
    }
    span_basis(&vecs, sc.dim, STRUCTURE_RANK)
}

fn full_basis(dim: usize) -> Vec<Vec<f64>> {
    (0..dim).map(|i| basis_vector(dim, i)).collect()
}

/// Dimensions of `g ⊇ [g, g] ⊇ [g, [g, g]] ⊇ …`, stopping once the series
/// stabilizes (the last entry repeats the fixed point, or is 0).
pub fn lower_central_dims(params: &DilationParams) -> Vec<usize> {
    let sc = StructureConstants::new(params);
    let all = full_basis(sc.dim);
    series_dims(sc.dim, |current| bracket_span(&sc, &all, current))
}

/// Dimensions of the derived series `g ⊇ [g, g] ⊇ [g', g'] ⊇ …`, with the
/// same stopping rule as [`lower_central_dims`].
pub fn derived_series_dims(params: &DilationParams) -> Vec<usize> {
    let sc = StructureConstants::new(params);
    series_dims(sc.dim, |current| bracket_span(&sc, current, current))
}

/// Iterates a descending series from the full algebra. Each term lies in the
/// previous one, so the dimension can only drop; a non-decrease means the
/// series has stabilized.
fn series_dims(dim: usize, step: impl Fn(&[Vec<f64>]) -> Vec<Vec<f64>>) -> Vec<usize> {
    let mut dims = vec![dim];
    let mut current = full_basis(dim);
    loop {
        let next = step(&current);
        let last = *dims.last().expect("non-empty");
        let d = next.len().min(last);
        dims.push(d);
        if d == 0 || d == last {
            return dims;
        }
        current = next;
    }
}

/// The algebra is nilpotent iff its lower central series reaches zero.
pub fn is_nilpotent_algebra(params: &DilationParams) -> bool {
    lower_central_dims(params).last() == Some(&0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::commutator;
    use crate::sampling::{random_gl, random_symplectic};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn n1() -> DilationParams {
        DilationParams::from_rows([1.0, 0.0], &[[0.5]], &[[1.0]])
    }

    fn diag_p0() -> DilationParams {
        DilationParams::from_rows([0.0, 0.0], &[[1.0, 0.0], [0.0, 0.0]], &[[0.0, 0.0], [0.0, 1.0]])
    }

    fn nil_p1(a: f64) -> DilationParams {
        DilationParams::from_rows([1.0, 0.0], &[[a, 0.0], [0.0, a]], &[[0.0, 1.0], [0.0, 0.0]])
    }

    fn random_params(rng: &mut ChaCha8Rng, n: usize) -> DilationParams {
        // Polynomials in one matrix commute.
        let base = RealMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
        let (c0, c1, c2) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let b1 = base.clone();
        let b2 = &(&RealMatrix::identity(n).scale(c0) + &base.scale(c1)) + &(&base * &base).scale(c2);
        DilationParams::new([rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)], b1, b2).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let p = n1();
        let u = LieElement { s1: 0.3, s2: -1.0, x: vec![2.0], y: vec![0.5], z: 1.0 };
        assert_eq!(bracket(&p, &u, &u).unwrap(), LieElement::zero(1));
        let r = bracket(&p, &LieElement::m(1, 1), &LieElement::x_of(vec![1.0])).unwrap();
        assert_eq!(r, LieElement::x_of(vec![0.5]));
        let p2 = diag_p0();
        let r = bracket(&p2, &LieElement::y_of(vec![1.0, 2.0]), &LieElement::x_of(vec![3.0, 4.0])).unwrap();
        assert_eq!(r, LieElement::z_of(2, 11.0));
    }

    #[test]
    fn lie_to_matrix_examples() {
        let p = diag_p0();
        let mut want = RealMatrix::zeros(4, 4);
        want.set(0, 3, 2.5);
        assert_eq!(lie_to_matrix(&p, &LieElement::z_of(2, 2.5)).unwrap(), want);
        let p = n1();
        for k in 1..=2 {
            assert_eq!(lie_to_matrix(&p, &LieElement::m(1, k)).unwrap(), p.generator(k));
        }
    }

    #[test]
    fn c_matrix_examples() {
        let zero = DilationParams::from_rows([0.0, 1.0], &[[0.0]], &[[1.0]]);
        assert_eq!(phase_action(&zero, 1).unwrap().value.max_abs(), 0.0);
        assert_eq!(phase_action(&n1(), 1).unwrap().value, RealMatrix::from_diagonal(&[0.5, 0.5]));
        assert!(phase_action(&n1(), 3).is_err());
    }

    #[test]
    fn c_matrix_is_the_action_on_phase_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random_params(&mut rng, 3);
        for k in 1..=2 {
            let c = phase_action(&p, k).unwrap().value;
            for _ in 0..20 {
                let w: Vec<f64> = (0..6).map(|_| rng.random_range(-1.0..1.0)).collect();
                let v = LieElement { x: w[..3].to_vec(), y: w[3..].to_vec(), ..LieElement::zero(3) };
                let r = bracket(&p, &LieElement::m(3, k), &v).unwrap();
                let cw = c.mul_vec(&w);
                let got: Vec<f64> = r.x.iter().chain(&r.y).copied().collect();
                for (a, b) in got.iter().zip(&cw) {
                    assert!((a - b).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn bracket_matches_matrix_commutator() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=3 {
            let p = random_params(&mut rng, n);
            let dim = algebra_dim(n);
            for _ in 0..500 {
                let a: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
                let b: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
                let (ua, ub) = (LieElement::from_coords(&a).unwrap(), LieElement::from_coords(&b).unwrap());
                let lhs = lie_to_matrix(&p, &bracket(&p, &ua, &ub).unwrap()).unwrap();
                let rhs = commutator(&lie_to_matrix(&p, &ua).unwrap(), &lie_to_matrix(&p, &ub).unwrap()).unwrap();
                assert!(lhs.max_diff(&rhs) <= 1e-12);
            }
        }
    }

    #[test]
    fn heis_automorphism_examples() {
        let id = heis_automorphism(1.0, &[0.0; 4], &RealMatrix::identity(4), 1.0).unwrap();
        assert_eq!(id.matrix, RealMatrix::identity(5));
        let j = heis_automorphism(1.0, &[0.0; 4], &RealMatrix::symplectic_unit(2), 1.0).unwrap();
        assert!(j.heis_bracket_defect() <= 1e-12);
        let s = heis_automorphism(2.0, &[0.0; 2], &RealMatrix::identity(2), 1.0).unwrap();
        assert_eq!(s.apply(&[0.0, 0.0, 1.5])[2], 6.0);
        assert!(matches!(
            heis_automorphism(1.0, &[0.0; 2], &RealMatrix::identity(2).scale(2.0), 1.0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn heis_automorphisms_preserve_brackets_and_decompose() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for trial in 0..100 {
            let n = 1 + trial % 3;
            let sign = if trial % 2 == 0 { 1.0 } else { -1.0 };
            let s = random_symplectic(n, sign, &mut rng);
            let lambda = rng.random_range(0.2..3.0);
            let u: Vec<f64> = (0..2 * n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let map = heis_automorphism(lambda, &u, &s, sign).unwrap();
            let scale = 1.0 + map.matrix.max_abs().powi(2);
            assert!(map.heis_bracket_defect() <= 1e-12 * scale);
            let mut z = vec![0.0; 2 * n + 1];
            z[2 * n] = 1.0;
            assert_eq!(map.apply(&z)[2 * n], sign * lambda * lambda);
            let d = decompose_heis_automorphism(&map).unwrap();
            assert!((d.lambda - lambda).abs() <= 1e-10);
            assert_eq!(d.sign, sign);
            assert!(d.s.max_diff(&s) <= 1e-10 * (1.0 + s.max_abs()));
            assert!(d.u.iter().zip(&u).all(|(a, b)| (a - b).abs() <= 1e-10));
        }
    }

    #[test]
    fn isomorphism_examples() {
        let tol = Tolerances::default();
        let p = n1();
        let same = isomorphism_map(&p, &p, &IsoCase::Scaling { alpha: 1.0 }, &tol).unwrap();
        assert_eq!(same.matrix, RealMatrix::identity(5));

        let v = RealMatrix::from_rows(&[[2.0]]).unwrap();
        let case2 = IsoCase::Conjugation { v: v.clone() };
        let q = transform(&p, &case2).unwrap();
        assert_eq!(q, p);
        let m2 = isomorphism_map(&p, &q, &case2, &tol).unwrap();
        assert!(m2.bracket_defect(&p, &q) <= 1e-12);

        let case1 = IsoCase::Symplectic { s: conj_diag(&v).unwrap() };
        let m1 = isomorphism_map(&p, &q, &case1, &tol).unwrap();
        assert!(m1.matrix.max_diff(&m2.matrix) <= 1e-15);

        let wrong = DilationParams::from_rows([1.0, 0.0], &[[0.6]], &[[1.0]]);
        assert!(matches!(
            isomorphism_map(&p, &wrong, &case2, &tol),
            Err(Error::CertificateInvalid(_))
        ));
    }

    #[test]
    fn symplectic_unit_maps_b_to_its_dual() {
        let p = nil_p1(0.7);
        let s = RealMatrix::symplectic_unit(2);
        let q = transform(&p, &IsoCase::Symplectic { s: s.clone() }).unwrap();
        let dual = &RealMatrix::identity(2).scale(p.p()[0]) - &p.b1().transpose();
        assert!(q.b1().max_diff(&dual) <= 1e-15);
        let map = isomorphism_map(&p, &q, &IsoCase::Symplectic { s }, &Tolerances::default()).unwrap();
        assert!(map.bracket_defect(&p, &q) <= 1e-12);
    }

    #[test]
    fn normalize_examples() {
        let (q, a) = normalize(&n1()).unwrap();
        assert_eq!(q, n1());
        assert_eq!(a, [[1.0, 0.0], [0.0, 1.0]]);

        let p = DilationParams::from_rows([0.0, 3.0], &[[0.5]], &[[1.0]]);
        let (q, a) = normalize(&p).unwrap();
        assert_eq!(q.p(), [1.0, 0.0]);
        assert_eq!(a, [[0.0, 1.0 / 3.0], [1.0, 0.0]]);
        let map = isomorphism_map(&p, &q, &IsoCase::BasisChange { a }, &Tolerances::default()).unwrap();
        assert!(map.bracket_defect(&p, &q) <= 1e-12);

        let (q, _) = normalize(&diag_p0()).unwrap();
        assert_eq!(q, diag_p0());

        let dep = DilationParams::from_rows([1.0, 2.0], &[[1.0]], &[[2.0]]);
        assert!(matches!(normalize(&dep), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn normalize_handles_two_nonzero_components() {
        let p = DilationParams::from_rows([2.0, -3.0], &[[0.5, 0.0], [0.0, 1.0]], &[[1.0, 0.0], [0.0, -1.0]]);
        let (q, a) = normalize(&p).unwrap();
        let raw = transform(&p, &IsoCase::BasisChange { a }).unwrap();
        assert!((raw.p()[0] - 1.0).abs() < 1e-15 && raw.p()[1].abs() < 1e-15);
        let map = isomorphism_map(&p, &q, &IsoCase::BasisChange { a }, &Tolerances::default()).unwrap();
        assert!(map.bracket_defect(&p, &q) <= 1e-12);
        assert_eq!(center_dim(&q), center_dim(&p));
    }

    #[test]
    fn center_examples() {
        assert_eq!(center_dim(&n1()), 0);
        assert_eq!(center_dim(&diag_p0()), 1);
    }

    #[test]
    fn case_examples() {
        assert_eq!(case_id(&n1()).unwrap(), 1);
        assert_eq!(nilradical_dim(&n1()).unwrap(), 3);
        assert_eq!(case_id(&nil_p1(1.0)).unwrap(), 2);
        assert_eq!(nilradical_dim(&nil_p1(1.0)).unwrap(), 6);
        assert_eq!(case_id(&diag_p0()).unwrap(), 3);
        assert_eq!(nilradical_dim(&diag_p0()).unwrap(), 5);
        let row2 = DilationParams::from_rows([0.0, 0.0], &[[1.0, 0.0], [0.0, 1.0]], &[[0.0, 1.0], [0.0, 0.0]]);
        assert_eq!(case_id(&row2).unwrap(), 4);
        assert_eq!(nilradical_dim(&row2).unwrap(), 6);
        // Two independent commuting nilpotents need n ≥ 3.
        let mut e12 = RealMatrix::zeros(3, 3);
        e12.set(0, 1, 1.0);
        let mut e13 = RealMatrix::zeros(3, 3);
        e13.set(0, 2, 1.0);
        let all_nil = DilationParams::new([0.0, 0.0], e12, e13).unwrap();
        assert_eq!(case_id(&all_nil).unwrap(), 5);
        assert_eq!(nilradical_dim(&all_nil).unwrap(), 9);
        assert!(is_nilpotent_algebra(&all_nil));
        assert!(!is_nilpotent_algebra(&row2));
    }

    #[test]
    fn nilpotent_direction_off_axis() {
        // sB1 + tB2 nilpotent only along (1, −1).
        let b1 = RealMatrix::from_rows(&[[1.0, 1.0], [0.0, 1.0]]).unwrap();
        let b2 = RealMatrix::identity(2);
        let p = DilationParams::new([0.0, 0.0], b1, b2).unwrap();
        assert_eq!(nilpotent_pencil_dim(&p).unwrap(), 1);
        assert_eq!(case_id(&p).unwrap(), 4);
    }

    #[test]
    fn jacobi_examples() {
        assert!(jacobi_defect(&n1()) <= 1e-12);
        assert!(jacobi_defect(&diag_p0()) <= 1e-12);
        let sc = StructureConstants::new(&n1());
        let x = basis_vector(5, 2);
        assert_eq!(sc.bracket(&x, &x), vec![0.0; 5]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=3 {
            assert!(jacobi_defect(&random_params(&mut rng, n)) <= 1e-12);
        }
    }

    #[test]
    fn series_dims() {
        // p = (1, 0): [g, g] = V_H, and V_H is not reached by further brackets
        // beyond itself since M1 acts invertibly on it.
        assert_eq!(lower_central_dims(&n1()), vec![5, 3, 3]);
        assert_eq!(derived_series_dims(&n1()), vec![5, 3, 1, 0]);
    }

    proptest! {
        #[test]
        fn invariants_survive_isomorphisms(seed in any::<u64>(), which in 0usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let catalog = [n1(), nil_p1(0.5), diag_p0(), DilationParams::from_rows([0.0, 0.0], &[[1.0, 0.0], [0.0, 1.0]], &[[0.0, 1.0], [0.0, 0.0]])];
            let p = catalog[which].clone();
            let n = p.n();
            let case = match rng.random_range(0..3) {
                0 => IsoCase::Symplectic { s: random_symplectic(n, 1.0, &mut rng) },
                1 => IsoCase::Conjugation { v: random_gl(n, &mut rng) },
                _ => IsoCase::Scaling { alpha: rng.random_range(0.5..2.0) },
            };
            let q = match transform(&p, &case) {
                Ok(q) => q,
                // A random symplectic S rarely keeps C block-diagonal.
                Err(Error::CertificateInvalid(_)) => return Ok(()),
                Err(e) => panic!("{e}"),
            };
            let map = isomorphism_map(&p, &q, &case, &Tolerances::default()).unwrap();
            prop_assert!(map.bracket_defect(&p, &q) <= 1e-9 * (1.0 + map.matrix.max_abs().powi(2)));
            let (pn, _) = normalize(&p).unwrap();
            let (qn, _) = normalize(&q).unwrap();
            prop_assert_eq!(case_id(&pn).unwrap(), case_id(&qn).unwrap());
            prop_assert_eq!(nilradical_dim(&pn).unwrap(), nilradical_dim(&qn).unwrap());
            prop_assert_eq!(center_dim(&p), center_dim(&q));
        }
    }
}
