//! Tensor-product composite Gauss–Legendre quadrature on boxes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;

use super::probe::{Region, TestFunction};

/// Refinement settings. Level `k` splits each axis into `2^k` panels of
/// `nodes` points; refinement stops once two successive levels agree to
/// `agreement` relative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadConfig {
    pub nodes: usize,
    pub min_level: u32,
    /// Refinement gives up before a level would exceed this many points.
    pub max_points: usize,
    pub agreement: f64,
    /// Pass threshold for checks built on the quadrature.
    pub tolerance: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            nodes: 12,
            min_level: 1,
            max_points: 1 << 22,
            agreement: 1e-6,
            tolerance: 1e-4,
        }
    }
}

/// Nodes and weights of the `m`-point rule on `[−1, 1]`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut deriv = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=m {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            deriv = m as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / deriv;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite rule on `[lo, hi]` with `panels` equal panels.
fn axis_rule(lo: f64, hi: f64, panels: usize, base: &(Vec<f64>, Vec<f64>)) -> (Vec<f64>, Vec<f64>) {
    let width = (hi - lo) / panels as f64;
    let mut xs = Vec::with_capacity(panels * base.0.len());
    let mut ws = Vec::with_capacity(panels * base.0.len());
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * width;
        for (x, w) in base.0.iter().zip(&base.1) {
            xs.push(mid + 0.5 * width * x);
            ws.push(0.5 * width * w);
        }
    }
    (xs, ws)
}

/// Result of [`integrate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quadrature {
    pub value: f64,
    pub level: u32,
    pub points: usize,
}

fn at_level<F>(f: &F, region: &Region, level: u32, base: &(Vec<f64>, Vec<f64>), exec: Exec) -> (f64, usize)
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    let d = region.dim();
    let rules: Vec<_> = (0..d)
        .map(|i| axis_rule(region.lo[i], region.hi[i], 1 << level, base))
        .collect();
    let per_axis = rules[0].0.len();
    let total = per_axis.pow(d as u32);
    let value = exec.sum_range(total, |mut idx| {
        let mut q = vec![0.0; d];
        let mut w = 1.0;
        for (i, (xs, ws)) in rules.iter().enumerate() {
            let k = idx % per_axis;
            idx /= per_axis;
            q[i] = xs[k];
            w *= ws[k];
        }
        w * f(&q)
    });
    (value, total)
}

/// `∫_region f`, refined until successive levels agree.
pub fn integrate<F>(f: F, region: &Region, cfg: &QuadConfig, exec: Exec) -> Result<Quadrature>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    let base = gauss_legendre(cfg.nodes);
    let d = region.dim() as u32;
    let mut prev: Option<f64> = None;
    let mut level = 0;
    loop {
        let (value, points) = at_level(&f, region, level, &base, exec);
        if let Some(p) = prev {
            if level >= cfg.min_level && (value - p).abs() <= cfg.agreement * value.abs() {
                return Ok(Quadrature {
                    value,
                    level,
                    points,
                });
            }
        }
        let next = (cfg.nodes << (level + 1)).checked_pow(d);
        if next.is_none_or(|n| n > cfg.max_points) {
            return Err(Error::Numerical {
                message: format!("quadrature did not stabilize by level {level}"),
                residual: prev.map_or(f64::INFINITY, |p| (value - p).abs() / value.abs()),
            });
        }
        prev = Some(value);
        level += 1;
    }
}

/// `‖f‖²` over `f`'s concentration box.
pub fn norm_sq(f: &TestFunction, cfg: &QuadConfig, exec: Exec) -> Result<Quadrature> {
    let region = f.region().ok_or_else(|| Error::Numerical {
        message: "function has no bounded concentration box".into(),
        residual: f64::INFINITY,
    })?;
    integrate(|q| f.eval(q).norm_sqr(), &region, cfg, exec)
}
