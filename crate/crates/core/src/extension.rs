//! Dilation parameters, the closedness conditions on them, and the extended
//! group `G_{p,B} = H_pol ⋊ ℝ²`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{dim_err, Error, Result};
use crate::heisenberg::{dot, PolarizedElement};
use crate::matrix::{is_skew_similar, mat_exp, rank, spectrum_with, RealMatrix};
use crate::tolerance::Tolerances;

/// The pair `p = (p1, p2)`, `B = (B1, B2)` defining one group.
///
/// Construction checks shapes only. Whether the pair commutes and satisfies
/// the closedness conditions is reported by [`validate_params`]; the report
/// at default tolerances is cached on first use.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "ParamsRepr", into = "ParamsRepr")]
pub struct DilationParams {
    n: usize,
    p: [f64; 2],
    b1: RealMatrix,
    b2: RealMatrix,
    report: OnceLock<ValidationReport>,
}

#[derive(Serialize, Deserialize)]
struct ParamsRepr {
    n: usize,
    p: [f64; 2],
    #[serde(rename = "B1")]
    b1: RealMatrix,
    #[serde(rename = "B2")]
    b2: RealMatrix,
}

impl TryFrom<ParamsRepr> for DilationParams {
    type Error = Error;
    fn try_from(r: ParamsRepr) -> Result<Self> {
        if r.b1.rows() != r.n {
            return dim_err(format!("n = {} but B1 has {} rows", r.n, r.b1.rows()));
        }
        Self::new(r.p, r.b1, r.b2)
    }
}

impl From<DilationParams> for ParamsRepr {
    fn from(p: DilationParams) -> Self {
        ParamsRepr {
            n: p.n,
            p: p.p,
            b1: p.b1,
            b2: p.b2,
        }
    }
}

impl PartialEq for DilationParams {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.b1 == other.b1 && self.b2 == other.b2
    }
}

impl std::fmt::Debug for DilationParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DilationParams")
            .field("p", &self.p)
            .field("B1", &self.b1)
            .field("B2", &self.b2)
            .finish()
    }
}

impl DilationParams {
    pub fn new(p: [f64; 2], b1: RealMatrix, b2: RealMatrix) -> Result<Self> {
        if !b1.is_square() || !b2.is_square() || b1.rows() != b2.rows() {
            return dim_err("B1 and B2 must be square of the same size");
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("p must be finite".into()));
        }
        Ok(Self {
            n: b1.rows(),
            p,
            b1,
            b2,
            report: OnceLock::new(),
        })
    }

    /// Convenience constructor from row lists; panics on malformed input.
    pub fn from_rows<R: AsRef<[f64]>>(p: [f64; 2], b1: &[R], b2: &[R]) -> Self {
        Self::new(
            p,
            RealMatrix::from_rows(b1).expect("B1"),
            RealMatrix::from_rows(b2).expect("B2"),
        )
        .expect("shapes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> [f64; 2] {
        self.p
    }

    pub fn b1(&self) -> &RealMatrix {
        &self.b1
    }

    pub fn b2(&self) -> &RealMatrix {
        &self.b2
    }

    /// `B_k` for `k ∈ {1, 2}`.
    pub fn b(&self, k: usize) -> &RealMatrix {
        match k {
            1 => &self.b1,
            2 => &self.b2,
            _ => panic!("pencil index {k} out of range"),
        }
    }

    /// `pt = p1 t1 + p2 t2`.
    pub fn pt(&self, t: [f64; 2]) -> f64 {
        self.p[0] * t[0] + self.p[1] * t[1]
    }

    /// `Bt = t1 B1 + t2 B2`.
    pub fn bt(&self, t: [f64; 2]) -> RealMatrix {
        &self.b1.scale(t[0]) + &self.b2.scale(t[1])
    }

    /// `e^{Bt}`.
    pub fn exp_bt(&self, t: [f64; 2]) -> RealMatrix {
        mat_exp(&self.bt(t)).expect("Bt is square")
    }

    /// `M_k = diag(p_k, B_k, 0)`.
    pub fn generator(&self, k: usize) -> RealMatrix {
        let n = self.n;
        let mut m = RealMatrix::zeros(n + 2, n + 2);
        m.set(0, 0, self.p[k - 1]);
        m.set_block(1, 1, self.b(k));
        m
    }

    /// Validation at default tolerances, computed once.
    pub fn validation(&self) -> &ValidationReport {
        self.report
            .get_or_init(|| validate_params(self, &Tolerances::default()))
    }

    /// Errors unless the pair commutes and satisfies both closedness
    /// conditions.
    pub fn require_closed(&self) -> Result<()> {
        let r = self.validation();
        if r.commute && r.m1_ok && r.m2_ok {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "parameters fail validation (commute={}, m1_ok={}, m2_ok={})",
                r.commute, r.m1_ok, r.m2_ok
            )))
        }
    }
}

/// Outcome of [`validate_params`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub commute: bool,
    pub commute_defect: f64,
    /// `M1`, `M2` linearly independent.
    pub m1_ok: bool,
    /// No nonzero `sM1 + tM2` is similar to a skew-symmetric matrix.
    pub m2_ok: bool,
    /// A direction `(s, t)` found to be skew-similar, if any.
    pub m2_witness: Option<[f64; 2]>,
    pub heuristic_flags: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.commute && self.m1_ok && self.m2_ok
    }
}

/// Grid size of the direction scan used when `p = 0`.
pub const M2_SCAN_POINTS: usize = 360;

/// Checks commutativity and the two closedness conditions.
///
/// For `p ≠ 0` a skew-similar `sM1 + tM2` must have `sp1 + tp2 = 0`, so one
/// spectral test on the kernel direction decides the second condition exactly. For `p = 0`
/// directions are scanned; see [`m2_scan`].
pub fn validate_params(params: &DilationParams, tol: &Tolerances) -> ValidationReport {
    let (b1, b2) = (&params.b1, &params.b2);
    let commute_defect = (b1 * b2 - b2 * b1).norm();
    let commute = commute_defect <= tol.commute * (1.0 + b1.norm() * b2.norm());

    let v1: Vec<f64> = std::iter::once(params.p[0]).chain(b1.to_vec()).collect();
    let v2: Vec<f64> = std::iter::once(params.p[1]).chain(b2.to_vec()).collect();
    let stacked = RealMatrix::from_rows(&[v1, v2]).expect("non-empty");
    let m1_ok = rank(&stacked, tol.spectral) == 2;

    let mut heuristic_flags = Vec::new();
    let m2_witness = if params.p != [0.0, 0.0] {
        let [p1, p2] = params.p;
        let norm = p1.hypot(p2);
        let dir = [-p2 / norm, p1 / norm];
        is_skew_similar(&pencil(params, dir), tol.spectral).then_some(dir)
    } else {
        heuristic_flags.push("m2_scan".to_string());
        m2_scan(params, M2_SCAN_POINTS, tol)
    };

    ValidationReport {
        commute,
        commute_defect,
        m1_ok,
        m2_ok: m2_witness.is_none(),
        m2_witness,
        heuristic_flags,
    }
}

/// `s B1 + t B2`.
pub fn pencil(params: &DilationParams, st: [f64; 2]) -> RealMatrix {
    params.bt(st)
}

/// Scan of `θ ↦ cos θ B1 + sin θ B2` over `[0, π)` for a skew-similar member.
///
/// `f(θ) = max |Re λ|` vanishes at any skew-similar direction. Every grid point
/// is tested, and each local minimum of `f` on the grid is refined by
/// golden-section search and tested again. Zeros narrower than the grid
/// spacing that do not produce a grid-level local minimum can be missed.
pub fn m2_scan(params: &DilationParams, points: usize, tol: &Tolerances) -> Option<[f64; 2]> {
    let dir = |th: f64| [th.cos(), th.sin()];
    let f = |th: f64| {
        spectrum_with(&pencil(params, dir(th)), tol)
            .map(|s| s.max_abs_real())
            .unwrap_or(f64::INFINITY)
    };
    let skew = |th: f64| is_skew_similar(&pencil(params, dir(th)), tol.spectral);
    let h = PI / points as f64;
    let values: Vec<f64> = (0..points).map(|i| f(i as f64 * h)).collect();
    for i in 0..points {
        let th = i as f64 * h;
        if skew(th) {
            return Some(dir(th));
        }
    }
    for i in 0..points {
        // f(θ + π) = f(θ), so the grid wraps around.
        let prev = values[(i + points - 1) % points];
        let next = values[(i + 1) % points];
        if values[i] <= prev && values[i] <= next {
            let th = golden_min(&f, (i as f64 - 1.0) * h, (i as f64 + 1.0) * h, 1e-13);
            if skew(th) {
                return Some(dir(th));
            }
        }
    }
    None
}

/// Golden-section minimization of a unimodal `f` on `[a, b]`. The step cap
/// guarantees termination when `tol` is below the float spacing at `a`.
pub(crate) fn golden_min(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    const MAX_STEPS: usize = 200;
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..MAX_STEPS {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Element `g(t, x, y, z)` of `G_{p,B}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    pub t: [f64; 2],
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: f64,
}

impl GroupElement {
    pub fn new(t: [f64; 2], x: Vec<f64>, y: Vec<f64>, z: f64) -> Result<Self> {
        if x.len() != y.len() {
            return dim_err("x and y differ in length");
        }
        Ok(Self { t, x, y, z })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            t: [0.0; 2],
            x: vec![0.0; n],
            y: vec![0.0; n],
            z: 0.0,
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Uniform sample with every coordinate in `[−1, 1]`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut u = || rng.random_range(-1.0..=1.0);
        Self {
            t: [u(), u()],
            x: (0..n).map(|_| u()).collect(),
            y: (0..n).map(|_| u()).collect(),
            z: u(),
        }
    }

    /// Largest coordinate difference.
    pub fn max_diff(&self, other: &GroupElement) -> f64 {
        let a = self.coords();
        let b = other.coords();
        a.iter().zip(&b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
    }

    /// `(t1, t2, x, y, z)` flattened.
    pub fn coords(&self) -> Vec<f64> {
        let mut c = vec![self.t[0], self.t[1]];
        c.extend(&self.x);
        c.extend(&self.y);
        c.push(self.z);
        c
    }
}

fn check_dim(params: &DilationParams, g: &GroupElement) -> Result<()> {
    if g.n() != params.n {
        return dim_err(format!(
            "element of dimension {} for parameters of dimension {}",
            g.n(),
            params.n
        ));
    }
    Ok(())
}

/// `d(t) = diag(e^{pt}, e^{Bt}, 1)`.
pub fn dilation_matrix(params: &DilationParams, t: [f64; 2]) -> RealMatrix {
    let n = params.n;
    let mut d = RealMatrix::identity(n + 2);
    d.set(0, 0, params.pt(t).exp());
    d.set_block(1, 1, &params.exp_bt(t));
    d
}

/// The action `α_t h = h(e^{Bt}x, e^{pt}e^{−Btᵀ}y, e^{pt}z)`.
pub fn dilation_action(params: &DilationParams, t: [f64; 2], h: &PolarizedElement) -> Result<PolarizedElement> {
    if h.n() != params.n {
        return dim_err("polarized element has the wrong dimension");
    }
    let ept = params.pt(t).exp();
    let e_neg = params.exp_bt([-t[0], -t[1]]);
    Ok(PolarizedElement {
        x: params.exp_bt(t).mul_vec(&h.x),
        y: e_neg.row_mul(&h.y).iter().map(|v| ept * v).collect(),
        z: ept * h.z,
    })
}

/// `g(t, x, y, z) g(t̃, x̃, ỹ, z̃) =
/// g(t + t̃, x + e^{Bt}x̃, y + e^{pt}e^{−Btᵀ}ỹ, z + e^{pt}z̃ + yᵀe^{Bt}x̃)`.
pub fn g_mul(params: &DilationParams, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    check_dim(params, a)?;
    check_dim(params, b)?;
    let ept = params.pt(a.t).exp();
    let ebt = params.exp_bt(a.t);
    let ebt_neg = params.exp_bt([-a.t[0], -a.t[1]]);
    let bx = ebt.mul_vec(&b.x);
    let by = ebt_neg.row_mul(&b.y);
    Ok(GroupElement {
        t: [a.t[0] + b.t[0], a.t[1] + b.t[1]],
        x: a.x.iter().zip(&bx).map(|(u, v)| u + v).collect(),
        y: a.y.iter().zip(&by).map(|(u, v)| u + ept * v).collect(),
        z: a.z + ept * b.z + dot(&a.y, &bx),
    })
}

/// `g⁻¹ = g(−t, −e^{−Bt}x, −e^{−pt}e^{Btᵀ}y, e^{−pt}(yᵀx − z))`.
pub fn g_inverse(params: &DilationParams, a: &GroupElement) -> Result<GroupElement> {
    check_dim(params, a)?;
    let e_npt = (-params.pt(a.t)).exp();
    let ebt = params.exp_bt(a.t);
    let ebt_neg = params.exp_bt([-a.t[0], -a.t[1]]);
    Ok(GroupElement {
        t: [-a.t[0], -a.t[1]],
        x: ebt_neg.mul_vec(&a.x).iter().map(|v| -v).collect(),
        y: ebt.row_mul(&a.y).iter().map(|v| -e_npt * v).collect(),
        z: e_npt * (dot(&a.y, &a.x) - a.z),
    })
}

/// `[[e^{pt}, yᵀe^{Bt}, z], [0, e^{Bt}, x], [0, 0, 1]]`, the faithful matrix
/// form; requires parameters that pass validation.
pub fn g_to_matrix(params: &DilationParams, a: &GroupElement) -> Result<RealMatrix> {
    params.require_closed()?;
    check_dim(params, a)?;
    Ok(g_to_matrix_raw(params, a))
}

pub(crate) fn g_to_matrix_raw(params: &DilationParams, a: &GroupElement) -> RealMatrix {
    let n = params.n;
    let ebt = params.exp_bt(a.t);
    let mut m = RealMatrix::identity(n + 2);
    m.set(0, 0, params.pt(a.t).exp());
    m.set_block(1, 1, &ebt);
    let ye = ebt.row_mul(&a.y);
    for i in 0..n {
        m.set(0, 1 + i, ye[i]);
        m.set(1 + i, n + 1, a.x[i]);
    }
    m.set(0, n + 1, a.z);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::pol_to_matrix;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn n1() -> DilationParams {
        DilationParams::from_rows([1.0, 0.0], &[[0.5]], &[[1.0]])
    }

    fn n2() -> DilationParams {
        DilationParams::from_rows(
            [1.0, 0.0],
            &[[0.5, 1.0], [0.0, 0.5]],
            &[[1.0, 0.5], [0.0, 1.0]],
        )
    }

    fn g(t: [f64; 2], x: f64, y: f64, z: f64) -> GroupElement {
        GroupElement::new(t, vec![x], vec![y], z).unwrap()
    }

    #[test]
    fn validate_examples() {
        let r = n1().validation().clone();
        assert!(r.commute && r.m1_ok && r.m2_ok);
        assert!(r.heuristic_flags.is_empty());

        let r = validate_params(
            &DilationParams::from_rows([0.0, 0.0], &[[0.3]], &[[-2.0]]),
            &Tolerances::default(),
        );
        assert!(!r.m1_ok);

        let p = DilationParams::from_rows(
            [0.0, 0.0],
            &[[1.0, 0.0], [0.0, 1.0]],
            &[[0.0, 1.0], [-1.0, 0.0]],
        );
        let r = p.validation();
        assert!(r.commute && r.m1_ok && !r.m2_ok);
        assert_eq!(r.heuristic_flags, ["m2_scan"]);
        let w = r.m2_witness.unwrap();
        assert!(w[0].abs() < 1e-9);
        assert!(p.require_closed().is_err());

        let p = DilationParams::from_rows(
            [1.0, 0.0],
            &[[1.0, 1.0], [0.0, 1.0]],
            &[[1.0, 0.0], [0.0, 2.0]],
        );
        assert!(!p.validation().commute);
    }

    #[test]
    fn m2_scan_refines_off_grid_zero() {
        // Skew-similar direction at an irrational angle: B1 = R, B2 = I, the
        // combination cos θ R + sin θ I is skew-similar only at θ = 0, so
        // rotate the pencil by an off-grid angle.
        let phi = 0.123_456_789f64;
        let r = RealMatrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]).unwrap();
        let id = RealMatrix::identity(2);
        // Pencil element along (cos φ, sin φ) is R; along the orthogonal direction it is I.
        let b1 = &r.scale(phi.cos()) + &id.scale(-phi.sin());
        let b2 = &r.scale(phi.sin()) + &id.scale(phi.cos());
        let p = DilationParams::new([0.0, 0.0], b1, b2).unwrap();
        let w = m2_scan(&p, 360, &Tolerances::default()).unwrap();
        assert!((w[1].atan2(w[0]) - phi).abs() < 1e-8);
    }

    #[test]
    fn serde_round_trip() {
        let p = n2();
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains("\"B1\""));
        let back: DilationParams = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"n":3,"p":[1,0],"B1":[[1]],"B2":[[1]]}"#;
        assert!(serde_json::from_str::<DilationParams>(bad).is_err());
    }

    #[test]
    fn d_of_t_examples() {
        let p = n1();
        assert_eq!(dilation_matrix(&p, [0.0, 0.0]), RealMatrix::identity(3));
        let d = dilation_matrix(&p, [1.0, 0.0]);
        let want = RealMatrix::from_diagonal(&[1f64.exp(), 0.5f64.exp(), 1.0]);
        assert!(d.max_diff(&want) < 1e-14);
    }

    #[test]
    fn g_mul_examples() {
        let p = n1();
        let a = g([0.3, -0.2], 0.1, 0.4, -1.0);
        assert_eq!(g_mul(&p, &GroupElement::identity(1), &a).unwrap(), a);
        let x = g([0.0; 2], 1.0, 0.0, 0.0);
        let y = g([0.0; 2], 0.0, 1.0, 0.0);
        assert_eq!(g_mul(&p, &x, &y).unwrap(), g([0.0; 2], 1.0, 1.0, 0.0));
        assert_eq!(g_mul(&p, &y, &x).unwrap(), g([0.0; 2], 1.0, 1.0, 1.0));
        let m = g_to_matrix(&p, &y).unwrap() * &g_to_matrix(&p, &x).unwrap();
        assert_eq!(m, g_to_matrix(&p, &g([0.0; 2], 1.0, 1.0, 1.0)).unwrap());
    }

    #[test]
    fn g_inverse_examples() {
        let p = n1();
        assert_eq!(
            g_inverse(&p, &GroupElement::identity(1)).unwrap(),
            GroupElement::identity(1)
        );
        let a = g([0.3, -0.2], 0.1, 0.4, -1.0);
        assert_eq!(g_inverse(&p, &a).unwrap().t, [-0.3, 0.2]);
    }

    #[test]
    fn g_to_matrix_examples() {
        let p = n1();
        assert_eq!(
            g_to_matrix(&p, &GroupElement::identity(1)).unwrap(),
            RealMatrix::identity(3)
        );
        let mut want = RealMatrix::identity(3);
        want.set(0, 2, 1.0);
        assert_eq!(g_to_matrix(&p, &g([0.0; 2], 0.0, 0.0, 1.0)).unwrap(), want);
        let bad = DilationParams::from_rows([0.0, 0.0], &[[1.0]], &[[2.0]]);
        assert!(matches!(
            g_to_matrix(&bad, &GroupElement::identity(1)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn group_law_agrees_with_matrices_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [n1(), n2()] {
            for _ in 0..1000 {
                let a = GroupElement::random(p.n(), &mut rng);
                let b = GroupElement::random(p.n(), &mut rng);
                let ab = g_to_matrix(&p, &g_mul(&p, &a, &b).unwrap()).unwrap();
                let prod = g_to_matrix(&p, &a).unwrap() * &g_to_matrix(&p, &b).unwrap();
                assert!(ab.max_diff(&prod) <= 1e-10 * (1.0 + prod.max_abs()));
                let inv = g_to_matrix(&p, &g_inverse(&p, &a).unwrap()).unwrap();
                let oracle = g_to_matrix(&p, &a).unwrap().inverse().unwrap();
                assert!(inv.max_diff(&oracle) <= 1e-10 * (1.0 + oracle.max_abs()));
            }
        }
    }

    #[test]
    fn dilation_action_matches_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = n2();
        for _ in 0..200 {
            let s = GroupElement::random(2, &mut rng);
            let h = PolarizedElement::new(s.x.clone(), s.y.clone(), s.z).unwrap();
            let d = dilation_matrix(&p, s.t);
            let oracle = &(&d * &pol_to_matrix(&h)) * &d.inverse().unwrap();
            let got = pol_to_matrix(&dilation_action(&p, s.t, &h).unwrap());
            assert!(got.max_diff(&oracle) <= 1e-10);
        }
    }

    fn pair_strategy() -> impl Strategy<Value = ([f64; 2], [f64; 2], Vec<f64>)> {
        (
            prop::array::uniform2(-2.0f64..2.0),
            prop::array::uniform2(-2.0f64..2.0),
            prop::collection::vec(-2.0f64..2.0, 3),
        )
    }

    proptest! {
        #[test]
        fn d_of_t_is_a_homomorphism_and_an_exponential((t, s, _) in pair_strategy()) {
            let p = n2();
            let lhs = &dilation_matrix(&p, t) * &dilation_matrix(&p, s);
            let rhs = dilation_matrix(&p, [t[0] + s[0], t[1] + s[1]]);
            prop_assert!(lhs.max_diff(&rhs) <= 1e-9 * (1.0 + rhs.max_abs()));
            let gen = &p.generator(1).scale(t[0]) + &p.generator(2).scale(t[1]);
            let e = mat_exp(&gen).unwrap();
            prop_assert!(e.max_diff(&dilation_matrix(&p, t)) <= 1e-12 * (1.0 + e.max_abs()));
        }

        #[test]
        fn dilation_action_is_an_action((t, s, h) in pair_strategy()) {
            let p = n1();
            let h = PolarizedElement::new(vec![h[0]], vec![h[1]], h[2]).unwrap();
            prop_assert_eq!(dilation_action(&p, [0.0; 2], &h).unwrap(), h.clone());
            let lhs = dilation_action(&p, t, &dilation_action(&p, s, &h).unwrap()).unwrap();
            let rhs = dilation_action(&p, [t[0] + s[0], t[1] + s[1]], &h).unwrap();
            let d = pol_to_matrix(&lhs).max_diff(&pol_to_matrix(&rhs));
            prop_assert!(d <= 1e-10 * (1.0 + pol_to_matrix(&rhs).max_abs()));
        }

        #[test]
        fn group_axioms(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = n2();
            let a = GroupElement::random(2, &mut rng);
            let b = GroupElement::random(2, &mut rng);
            let c = GroupElement::random(2, &mut rng);
            let l = g_mul(&p, &g_mul(&p, &a, &b).unwrap(), &c).unwrap();
            let r = g_mul(&p, &a, &g_mul(&p, &b, &c).unwrap()).unwrap();
            prop_assert!(l.max_diff(&r) <= 1e-10 * (1.0 + l.coords().iter().fold(0.0f64, |m, v| m.max(v.abs()))));
            let e = g_mul(&p, &a, &g_inverse(&p, &a).unwrap()).unwrap();
            prop_assert!(e.max_diff(&GroupElement::identity(2)) <= 1e-10);
            let e = g_mul(&p, &g_inverse(&p, &a).unwrap(), &a).unwrap();
            prop_assert!(e.max_diff(&GroupElement::identity(2)) <= 1e-10);
        }
    }
}
