//! The symplectic and affine matrix models of `G_{p,B}` and the two unitary
//! representations they induce.
//!
//! Conventions: `M` is the space of symmetric `(n+1)`-matrices
//! `[[−z, −xᵀ], [−x, 0]]`, the dilation block `a(t, y)` acts on it by
//! `m ↦ a⁻ᵀ m a⁻¹`, and identifying `m(z, x)` with `(z; x)` turns that action
//! into the linear part `h(t, y)` of an affine map.

use crate::error::{dim_err, Result};
use crate::extension::{DilationParams, GroupElement};
use crate::heisenberg::dot;
use crate::matrix::RealMatrix;

use super::operator::{OpKind, RepOperator};

fn check(params: &DilationParams, g: &GroupElement) -> Result<()> {
    params.require_closed()?;
    if g.n() != params.n() {
        return dim_err(format!(
            "element of dimension {} for parameters of dimension {}",
            g.n(),
            params.n()
        ));
    }
    Ok(())
}

/// `[[−z, −xᵀ], [−x, 0]]`.
pub fn chirp_matrix(z: f64, x: &[f64]) -> RealMatrix {
    let n = x.len();
    let mut m = RealMatrix::zeros(n + 1, n + 1);
    m.set(0, 0, -z);
    for (i, &xi) in x.iter().enumerate() {
        m.set(0, 1 + i, -xi);
        m.set(1 + i, 0, -xi);
    }
    m
}

/// `a(t, y) = [[1, 0], [−y/2, I]] · diag(e^{−pt/2}, e^{pt/2} e^{−Btᵀ})`.
pub fn dilation_block(params: &DilationParams, t: [f64; 2], y: &[f64]) -> RealMatrix {
    let n = params.n();
    let half = 0.5 * params.pt(t);
    let lower = params.exp_bt([-t[0], -t[1]]).transpose().scale(half.exp());
    let mut a = RealMatrix::zeros(n + 1, n + 1);
    a.set(0, 0, (-half).exp());
    a.set_block(1, 1, &lower);
    for i in 0..n {
        a.set(1 + i, 0, -0.5 * y[i] * (-half).exp());
    }
    a
}

/// `a(t, y)⁻¹ = [[e^{pt/2}, 0], [e^{−pt/2} e^{Btᵀ} y/2, e^{−pt/2} e^{Btᵀ}]]`,
/// in closed form.
pub fn dilation_block_inverse(params: &DilationParams, t: [f64; 2], y: &[f64]) -> RealMatrix {
    let n = params.n();
    let half = 0.5 * params.pt(t);
    let lower = params.exp_bt(t).transpose().scale((-half).exp());
    let col = lower.mul_vec(y);
    let mut a = RealMatrix::zeros(n + 1, n + 1);
    a.set(0, 0, half.exp());
    a.set_block(1, 1, &lower);
    for i in 0..n {
        a.set(1 + i, 0, 0.5 * col[i]);
    }
    a
}

/// `h(t, y) = [[e^{pt}, yᵀe^{Bt}], [0, e^{Bt}]]`, the matrix of
/// `(z; x) ↦ (e^{pt}z + yᵀe^{Bt}x; e^{Bt}x)`.
pub fn affine_linear_part(params: &DilationParams, t: [f64; 2], y: &[f64]) -> RealMatrix {
    let n = params.n();
    let ebt = params.exp_bt(t);
    let top = ebt.row_mul(y);
    let mut h = RealMatrix::zeros(n + 1, n + 1);
    h.set(0, 0, params.pt(t).exp());
    h.set_block(1, 1, &ebt);
    for j in 0..n {
        h.set(0, 1 + j, top[j]);
    }
    h
}

/// `k(g) = [[a, 0], [m a, a⁻ᵀ]] ∈ Sp(n+1, ℝ)`.
pub fn symplectic_embedding(params: &DilationParams, g: &GroupElement) -> Result<RealMatrix> {
    check(params, g)?;
    let d = params.n() + 1;
    let a = dilation_block(params, g.t, &g.y);
    let a_inv = dilation_block_inverse(params, g.t, &g.y);
    let ma = &chirp_matrix(g.z, &g.x) * &a;
    let mut k = RealMatrix::zeros(2 * d, 2 * d);
    k.set_block(0, 0, &a);
    k.set_block(d, 0, &ma);
    k.set_block(d, d, &a_inv.transpose());
    Ok(k)
}

/// `[[h(t, y), (z; x)], [0, 1]] ∈ Aff(n+1, ℝ)`.
pub fn affine_embedding(params: &DilationParams, g: &GroupElement) -> Result<RealMatrix> {
    check(params, g)?;
    let d = params.n() + 1;
    let mut m = RealMatrix::identity(d + 1);
    m.set_block(0, 0, &affine_linear_part(params, g.t, &g.y));
    m.set(0, d, g.z);
    for (i, &xi) in g.x.iter().enumerate() {
        m.set(1 + i, d, xi);
    }
    Ok(m)
}

/// `δ(t) = det e^{Bt} = e^{tr Bt}`.
pub fn dilation_det(params: &DilationParams, t: [f64; 2]) -> f64 {
    params.bt(t).trace().exp()
}

/// The wavelet representation on the frequency side,
/// `[π̂(g)f](r, ξ) = δ^{1/2} e^{pt/2} e^{−2iπ(rz + ξx)} f(r e^{pt}, (r yᵀ + ξ) e^{Bt})`.
pub fn wavelet_operator(params: &DilationParams, g: &GroupElement) -> Result<RepOperator> {
    check(params, g)?;
    let h = affine_linear_part(params, g.t, &g.y);
    let h_inv = h.inverse()?;
    let scale = (dilation_det(params, g.t).sqrt()) * (0.5 * params.pt(g.t)).exp();
    let wave: Vec<f64> = std::iter::once(-g.z).chain(g.x.iter().map(|v| -v)).collect();
    // (r, ξ) h as a column is hᵀ (r; ξ).
    Ok(RepOperator::linear(
        params.n() + 1,
        scale,
        h.transpose(),
        h_inv.transpose(),
        OpKind::Wavelet(g.clone()),
    )
    .with_phase(None, Some(wave)))
}

/// The metaplectic representation restricted to the group,
/// `[μ(g)f](u; v) = δ^{1/2} e^{pt(1−n)/4} e^{−iπ(u²z + 2u vᵀx)}
/// f(e^{pt/2}u; e^{−pt/2} e^{Btᵀ}(u y/2 + v))`.
pub fn metaplectic_operator(params: &DilationParams, g: &GroupElement) -> Result<RepOperator> {
    check(params, g)?;
    let n = params.n() as f64;
    let scale = dilation_det(params, g.t).sqrt() * (params.pt(g.t) * (1.0 - n) / 4.0).exp();
    Ok(RepOperator::linear(
        params.n() + 1,
        scale,
        dilation_block_inverse(params, g.t, &g.y),
        dilation_block(params, g.t, &g.y),
        OpKind::Metaplectic(g.clone()),
    )
    .with_phase(Some(chirp_matrix(g.z, &g.x)), None))
}

/// `qᵀ m(z, x) q = −(u²z + 2u vᵀx)` for `q = (u; v)`.
pub fn chirp_form(z: f64, x: &[f64], q: &[f64]) -> f64 {
    let u = q[0];
    -(u * u * z + 2.0 * u * dot(&q[1..], x))
}
