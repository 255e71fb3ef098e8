//! Small dense real matrices and the spectral predicates built on them.
//!
//! Dimensions in this crate never exceed a dozen or so, so everything here
//! favours clarity and robustness over blocking or allocation tricks.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{dim_err, Error, Result};
use crate::tolerance::Tolerances;

pub type Complex = num_complex::Complex64;

/// Dense real matrix. Entries are finite and both dimensions are positive.
#[derive(Clone, PartialEq)]
pub struct RealMatrix(DMatrix<f64>);

// Serialized as a list of rows.
impl Serialize for RealMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(d)?;
        RealMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl RealMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, row_major: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return dim_err(format!("{rows}x{cols} matrix has an empty dimension"));
        }
        if row_major.len() != rows * cols {
            return dim_err(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                row_major.len()
            ));
        }
        if row_major.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        Ok(Self(DMatrix::from_row_slice(rows, cols, &row_major)))
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return dim_err("ragged rows");
        }
        let flat = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::new(rows.len(), cols, flat)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self(DMatrix::from_fn(n, n, |i, j| if i == j { diag[i] } else { 0.0 }))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> f64) -> Self {
        Self(DMatrix::from_fn(rows, cols, f))
    }

    /// Block-diagonal matrix with the given blocks along the diagonal.
    pub fn block_diag(blocks: &[&RealMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows()).sum();
        let cols = blocks.iter().map(|b| b.cols()).sum();
        let mut out = DMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.view_mut((r0, c0), (b.rows(), b.cols())).copy_from(&b.0);
            r0 += b.rows();
            c0 += b.cols();
        }
        Self(out)
    }

    /// The standard symplectic matrix `[[0, −I], [I, 0]]` of size `2n`.
    pub fn symplectic_unit(n: usize) -> Self {
        Self::from_fn(2 * n, 2 * n, |i, j| {
            if i < n && j == i + n {
                -1.0
            } else if i >= n && j + n == i {
                1.0
            } else {
                0.0
            }
        })
    }

    pub fn from_inner(m: DMatrix<f64>) -> Self {
        Self(m)
    }

    pub fn inner(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.0[(i, j)] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }

    /// Row-major flattening.
    pub fn to_vec(&self) -> Vec<f64> {
        self.to_rows().concat()
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &RealMatrix) {
        self.0
            .view_mut((r0, c0), (block.rows(), block.cols()))
            .copy_from(&block.0);
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> RealMatrix {
        Self(self.0.view((r0, c0), (rows, cols)).into_owned())
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(&self.0 * s)
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.amax()
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        self.0
            .column_iter()
            .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn checked_mul(&self, rhs: &RealMatrix) -> Result<RealMatrix> {
        if self.cols() != rhs.rows() {
            return dim_err(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            ));
        }
        Ok(Self(&self.0 * &rhs.0))
    }

    /// `A v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols(), v.len(), "matrix-vector dimension mismatch");
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.0[(i, j)] * v[j]).sum())
            .collect()
    }

    /// `ξ A` for a row vector `ξ`.
    pub fn row_mul(&self, xi: &[f64]) -> Vec<f64> {
        assert_eq!(self.rows(), xi.len(), "vector-matrix dimension mismatch");
        (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| xi[i] * self.0[(i, j)]).sum())
            .collect()
    }

    pub fn inverse(&self) -> Result<RealMatrix> {
        if !self.is_square() {
            return dim_err("inverse of a non-square matrix");
        }
        self.0
            .clone()
            .try_inverse()
            .map(Self)
            .ok_or_else(|| Error::Numerical {
                message: "matrix is singular".into(),
                residual: self.0.determinant().abs(),
            })
    }

    pub fn pow(&self, k: u32) -> RealMatrix {
        let mut out = Self::identity(self.rows());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square() && (&self.0 - self.0.transpose()).amax() <= tol * (1.0 + self.max_abs())
    }

    /// `‖AᵀJA − sign·J‖` where `J` is the symplectic unit.
    pub fn symplectic_defect(&self, sign: f64) -> Result<f64> {
        if !self.is_square() || !self.rows().is_multiple_of(2) {
            return dim_err("symplectic test needs an even square matrix");
        }
        let j = Self::symplectic_unit(self.rows() / 2);
        Ok((&(&self.transpose() * &j) * self - j.scale(sign)).norm())
    }

    /// Membership in `Sp(n, ℝ)` (sign `+1`) or its anti-symplectic coset (sign `−1`),
    /// with the scale-aware threshold `tol (1 + ‖A‖²)`.
    pub fn is_symplectic(&self, sign: f64, tol: f64) -> bool {
        self.symplectic_defect(sign)
            .map(|d| d <= tol * (1.0 + self.norm().powi(2)))
            .unwrap_or(false)
    }

    pub fn to_complex(&self) -> DMatrix<Complex> {
        self.0.map(|v| Complex::new(v, 0.0))
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_diff(&self, other: &RealMatrix) -> f64 {
        assert_eq!(self.0.shape(), other.0.shape(), "shape mismatch");
        (&self.0 - &other.0).amax()
    }
}

impl Mul for &RealMatrix {
    type Output = RealMatrix;
    fn mul(self, rhs: &RealMatrix) -> RealMatrix {
        RealMatrix(&self.0 * &rhs.0)
    }
}

impl Mul<&RealMatrix> for RealMatrix {
    type Output = RealMatrix;
    fn mul(self, rhs: &RealMatrix) -> RealMatrix {
        RealMatrix(self.0 * &rhs.0)
    }
}

impl Add for &RealMatrix {
    type Output = RealMatrix;
    fn add(self, rhs: &RealMatrix) -> RealMatrix {
        RealMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &RealMatrix {
    type Output = RealMatrix;
    fn sub(self, rhs: &RealMatrix) -> RealMatrix {
        RealMatrix(&self.0 - &rhs.0)
    }
}

impl Add for RealMatrix {
    type Output = RealMatrix;
    fn add(self, rhs: RealMatrix) -> RealMatrix {
        RealMatrix(self.0 + rhs.0)
    }
}

impl Sub for RealMatrix {
    type Output = RealMatrix;
    fn sub(self, rhs: RealMatrix) -> RealMatrix {
        RealMatrix(self.0 - rhs.0)
    }
}

impl Neg for &RealMatrix {
    type Output = RealMatrix;
    fn neg(self) -> RealMatrix {
        RealMatrix(-&self.0)
    }
}

// Scaling-and-squaring with the degree-13 Padé approximant (Higham 2005).
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential `e^A`.
///
/// Nilpotent inputs take the terminating power series; everything else goes
/// through scaling and squaring with a degree-13 Padé approximant.
pub fn mat_exp(a: &RealMatrix) -> Result<RealMatrix> {
    if !a.is_square() {
        return dim_err(format!("mat_exp of a {}x{} matrix", a.rows(), a.cols()));
    }
    let n = a.rows();
    if a.max_abs() == 0.0 {
        return Ok(RealMatrix::identity(n));
    }
    if is_nilpotent(a, 1e-14) {
        return Ok(nilpotent_exp(a));
    }

    let norm = a.norm_one();
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a.scale(0.5f64.powi(squarings));
    let a = &scaled.0;
    let id = DMatrix::<f64>::identity(n, n);
    let b = &PADE13;
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u_inner = &a6 * (&a6 * b[13] + &a4 * b[11] + &a2 * b[9])
        + &a6 * b[7]
        + &a4 * b[5]
        + &a2 * b[3]
        + &id * b[1];
    let u = a * u_inner;
    let v = &a6 * (&a6 * b[12] + &a4 * b[10] + &a2 * b[8])
        + &a6 * b[6]
        + &a4 * b[4]
        + &a2 * b[2]
        + &id * b[0];
    let p = &v + &u;
    let q = &v - &u;
    let mut r = q
        .lu()
        .solve(&p)
        .ok_or_else(|| Error::Numerical {
            message: "Padé denominator is singular".into(),
            residual: norm,
        })?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    if r.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical {
            message: "matrix exponential overflowed".into(),
            residual: norm,
        });
    }
    Ok(RealMatrix(r))
}

/// `Σ_{k<n} A^k / k!`, exact for nilpotent `A`.
fn nilpotent_exp(a: &RealMatrix) -> RealMatrix {
    let n = a.rows();
    let mut term = RealMatrix::identity(n);
    let mut sum = term.clone();
    for k in 1..n {
        term = (&term * a).scale(1.0 / k as f64);
        sum = &sum + &term;
    }
    sum
}

/// Commutator `AB − BA`.
pub fn commutator(a: &RealMatrix, b: &RealMatrix) -> Result<RealMatrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return dim_err(format!(
            "commutator of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        ));
    }
    Ok(&(a * b) - &(b * a))
}

/// `‖Aⁿ‖ ≤ tol (1 + ‖A‖ⁿ)` for an `n×n` matrix.
pub fn is_nilpotent(a: &RealMatrix, tol: f64) -> bool {
    if !a.is_square() {
        return false;
    }
    let n = a.rows() as i32;
    a.pow(n as u32).norm() <= tol * (1.0 + a.norm().powi(n))
}

/// One eigenvalue together with its algebraic multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigen {
    pub value: Complex,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Eigen>,
    pub semisimple: bool,
}

impl Spectrum {
    pub fn dimension(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.multiplicity).sum()
    }

    pub fn max_abs_real(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|e| e.value.re.abs())
            .fold(0.0, f64::max)
    }

    /// Multiplicity-expanded eigenvalue list.
    pub fn expanded(&self) -> Vec<Complex> {
        self.eigenvalues
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity))
            .collect()
    }
}

/// Singular values and right singular vectors (as columns of `V`) with a
/// bounded iteration count. The complex SVD can stall on clustered spectra,
/// so the eigendecomposition of the Gram matrix `MᴴM` serves as a fallback.
fn complex_svd(m: &DMatrix<Complex>) -> Result<(Vec<f64>, DMatrix<Complex>)> {
    const MAX_ITER: usize = 1_000;
    if let Some(svd) = m.clone().try_svd(false, true, f64::EPSILON, MAX_ITER) {
        let v = svd.v_t.expect("requested V").adjoint();
            return Ok((svd.singular_values.iter().copied().collect(), v));
    }
    let gram = m.adjoint() * m;
    let eig = gram.try_symmetric_eigen(f64::EPSILON, MAX_ITER).ok_or_else(|| Error::Numerical {
        message: "singular value iteration did not converge".into(),
        residual: m.norm(),
    })?;
    let sv = eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
    Ok((sv, eig.eigenvectors))
}

fn smallest_singular_value(m: &DMatrix<Complex>) -> Result<f64> {
    Ok(complex_svd(m)?.0.into_iter().fold(f64::INFINITY, f64::min))
}

/// Eigenvalues of a real quasi-triangular Schur factor. Each 2×2 block uses a
/// complex square root, so a slightly negative discriminant from rounding
/// yields a near-real pair rather than NaN.
fn quasi_triangular_eigenvalues(t: &DMatrix<f64>) -> Vec<Complex> {
    let n = t.nrows();
    let mut vals = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        if i + 1 < n && t[(i + 1, i)] != 0.0 {
            let (a, b, c, d) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
            let half_tr = 0.5 * (a + d);
            let disc = Complex::new(0.25 * (a - d) * (a - d) + b * c, 0.0).sqrt();
            vals.push(Complex::new(half_tr, 0.0) + disc);
            vals.push(Complex::new(half_tr, 0.0) - disc);
            i += 2;
        } else {
            vals.push(Complex::new(t[(i, i)], 0.0));
            i += 1;
        }
    }
    vals
}

/// Raw eigenvalues from a real Schur decomposition.
fn raw_eigenvalues(a: &RealMatrix) -> Result<Vec<Complex>> {
    if !a.is_square() {
        return dim_err("spectrum of a non-square matrix");
    }
    let schur = a
        .0
        .clone()
        .try_schur(f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Numerical {
            message: "Schur iteration did not converge".into(),
            residual: a.norm(),
        })?;
    let vals = quasi_triangular_eigenvalues(&schur.unpack().1);
    // Every computed eigenvalue must make A − λI numerically singular.
    let scale = 1.0 + a.norm();
    let ac = a.to_complex();
    for &lambda in &vals {
        let shifted = &ac - DMatrix::<Complex>::identity(a.rows(), a.rows()) * lambda;
        let smin = smallest_singular_value(&shifted)?;
        if smin > 1e-6 * scale {
            return Err(Error::Numerical {
                message: format!("eigenvalue {lambda} failed the residual check"),
                residual: smin,
            });
        }
    }
    Ok(vals)
}

/// Groups eigenvalues closer than `tol` (single linkage) and returns the
/// cluster means with multiplicities, sorted by real then imaginary part.
fn cluster(vals: &[Complex], tol: f64) -> Vec<Eigen> {
    let n = vals.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (vals[i] - vals[j]).norm() <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut groups: Vec<(usize, Complex, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += vals[i];
                g.2 += 1;
            }
            None => groups.push((r, vals[i], 1)),
        }
    }
    let mut out: Vec<Eigen> = groups
        .into_iter()
        .map(|(_, sum, m)| Eigen {
            value: sum / m as f64,
            multiplicity: m,
        })
        .collect();
    out.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    out
}

fn complex_rank(m: &DMatrix<Complex>, threshold: f64) -> Result<usize> {
    Ok(complex_svd(m)?.0.into_iter().filter(|&s| s > threshold).count())
}

/// Eigenvalues with multiplicities and the semisimplicity flag, using the
/// default tolerances.
pub fn spectrum(a: &RealMatrix) -> Result<Spectrum> {
    spectrum_with(a, &Tolerances::default())
}

/// As [`spectrum`] with explicit tolerances. An eigenvalue `λ` of multiplicity
/// `m` is semisimple when `rank(A − λI) = dim − m`, singular values below
/// `tol.rank · ‖A‖` counting as zero.
pub fn spectrum_with(a: &RealMatrix, tol: &Tolerances) -> Result<Spectrum> {
    let vals = raw_eigenvalues(a)?;
    let n = a.rows();
    let norm = a.norm();
    let eigenvalues = cluster(&vals, tol.cluster * (1.0 + norm));
    let ac = a.to_complex();
    let threshold = tol.rank * norm;
    let mut semisimple = true;
    for e in &eigenvalues {
        let shifted = &ac - DMatrix::<Complex>::identity(n, n) * e.value;
        if complex_rank(&shifted, threshold)? != n - e.multiplicity {
            semisimple = false;
            break;
        }
    }
    Ok(Spectrum {
        eigenvalues,
        semisimple,
    })
}

/// A real matrix is similar to a real skew-symmetric matrix exactly when it is
/// semisimple with purely imaginary spectrum.
pub fn is_skew_similar(a: &RealMatrix, tol: f64) -> bool {
    match spectrum(a) {
        Ok(s) => s.semisimple && s.max_abs_real() <= tol,
        Err(_) => false,
    }
}

/// Characteristic polynomial `λⁿ + c₁λⁿ⁻¹ + … + cₙ`, returned as `[c₁, …, cₙ]`
/// (Faddeev–LeVerrier). Coefficient `c_k` is homogeneous of degree `k` in `A`.
pub fn char_poly(a: &RealMatrix) -> Vec<f64> {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let n = a.rows();
    let id = DMatrix::<f64>::identity(n, n);
    let mut m = DMatrix::<f64>::zeros(n, n);
    let mut c_prev = 1.0;
    let mut coeffs = Vec::with_capacity(n);
    for k in 1..=n {
        m = &a.0 * &m + &id * c_prev;
        let ck = -(&a.0 * &m).trace() / k as f64;
        coeffs.push(ck);
        c_prev = ck;
    }
    coeffs
}

/// Jordan–Chevalley decomposition `A = S + N` with `S` semisimple, `N`
/// nilpotent and `SN = NS`. Computed from generalized eigenspaces: for an
/// eigenvalue cluster of multiplicity `m` the space is spanned by the `m`
/// right singular vectors of `(A − λI)^m` with the smallest singular values.
pub fn jordan_chevalley(a: &RealMatrix) -> Result<(RealMatrix, RealMatrix)> {
    let spec = spectrum(a)?;
    let n = a.rows();
    let ac = a.to_complex();
    let id = DMatrix::<Complex>::identity(n, n);
    let mut basis = DMatrix::<Complex>::zeros(n, n);
    let mut diag = Vec::with_capacity(n);
    let mut col = 0;
    for e in &spec.eigenvalues {
        let shifted = &ac - &id * e.value;
        let mut power = id.clone();
        for _ in 0..e.multiplicity {
            power = &power * &shifted;
        }
        let (sv, v) = complex_svd(&power)?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| sv[i].total_cmp(&sv[j]));
        for &i in order.iter().take(e.multiplicity) {
            for r in 0..n {
                basis[(r, col)] = v[(r, i)];
            }
            diag.push(e.value);
            col += 1;
        }
    }
    let inv = basis.clone().try_inverse().ok_or_else(|| Error::Numerical {
        message: "generalized eigenvectors are not independent".into(),
        residual: basis.determinant().norm(),
    })?;
    let lambda = DMatrix::<Complex>::from_diagonal(&nalgebra::DVector::from_vec(diag));
    let s = &basis * lambda * inv;
    let imag = s.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if imag > 1e-6 * (1.0 + a.norm()) {
        return Err(Error::Numerical {
            message: "semisimple part is not real".into(),
            residual: imag,
        });
    }
    let s = RealMatrix(s.map(|v| v.re));
    let nil = a - &s;
    Ok((s, nil))
}

/// Numerical rank: singular values above `tol · max(σ_max, 1)`.
pub fn rank(a: &RealMatrix, tol: f64) -> usize {
    let sv = a.0.singular_values();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > tol * smax.max(1.0)).count()
}

/// Orthonormal basis (as vectors) of the span of `vectors` in `ℝ^dim`.
/// Singular values below `tol · max(σ_max, 1)` are discarded.
pub fn span_basis(vectors: &[Vec<f64>], dim: usize, tol: f64) -> Vec<Vec<f64>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = DMatrix::from_fn(dim, vectors.len(), |i, j| vectors[j][i]);
    let svd = m.svd(true, false);
    let u = svd.u.expect("requested U");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cut = tol * smax.max(1.0);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > cut)
        .map(|(k, _)| u.column(k).iter().copied().collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> RealMatrix {
        RealMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn near_defective_block_has_finite_spectrum() {
        // Double eigenvalue 1/2 whose Schur block has a rounding-negative
        // discriminant.
        let a = m(&[
            &[0.6260716911760879, 1.9218159803707833, 0.0, 0.0],
            &[-0.00827033986517917, 0.3739283088239121, 0.0, 0.0],
            &[0.0, 0.0, 0.37392830882391215, 0.00827033986517917],
            &[0.0, 0.0, -1.9218159803707833, 0.626071691176088],
        ]);
        let spec = spectrum(&a).unwrap();
        for v in spec.expanded() {
            assert!((v - Complex::new(0.5, 0.0)).norm() < 1e-6, "{v}");
        }
        let (s, nil) = jordan_chevalley(&a).unwrap();
        assert!((&s + &nil - a).max_abs() < 1e-9);
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let e = mat_exp(&RealMatrix::zeros(3, 3)).unwrap();
        assert_eq!(e, RealMatrix::identity(3));
    }

    #[test]
    fn exp_of_jordan_block_terminates() {
        let e = mat_exp(&m(&[&[0.0, 1.0], &[0.0, 0.0]])).unwrap();
        assert!(e.max_diff(&m(&[&[1.0, 1.0], &[0.0, 1.0]])) < 1e-15);
    }

    #[test]
    fn exp_of_log_diagonal() {
        let e = mat_exp(&RealMatrix::from_diagonal(&[2f64.ln(), 3f64.ln()])).unwrap();
        assert!(e.max_diff(&RealMatrix::from_diagonal(&[2.0, 3.0])) < 1e-14);
    }

    #[test]
    fn exp_of_rotation_generator() {
        let t = 0.7f64;
        let e = mat_exp(&m(&[&[0.0, -t], &[t, 0.0]])).unwrap();
        let want = m(&[&[t.cos(), -t.sin()], &[t.sin(), t.cos()]]);
        assert!(e.max_diff(&want) < 1e-15);
    }

    #[test]
    fn exp_large_norm_uses_squaring() {
        let e = mat_exp(&RealMatrix::from_diagonal(&[10.0, -10.0])).unwrap();
        assert!((e.get(0, 0) / 10f64.exp() - 1.0).abs() < 1e-13);
        assert!((e.get(1, 1) / (-10f64).exp() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn exp_rejects_non_square() {
        assert!(matches!(
            mat_exp(&RealMatrix::zeros(2, 3)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum(&RealMatrix::identity(2)).unwrap();
        assert_eq!(s.eigenvalues.len(), 1);
        assert_eq!(s.eigenvalues[0].multiplicity, 2);
        assert!((s.eigenvalues[0].value - Complex::new(1.0, 0.0)).norm() < 1e-14);
        assert!(s.semisimple);

        let s = spectrum(&m(&[&[0.0, 1.0], &[0.0, 0.0]])).unwrap();
        assert_eq!(s.eigenvalues.len(), 1);
        assert_eq!(s.eigenvalues[0].multiplicity, 2);
        assert!(!s.semisimple);

        let s = spectrum(&m(&[&[0.0, 1.0], &[-1.0, 0.0]])).unwrap();
        assert_eq!(s.eigenvalues.len(), 2);
        assert!((s.eigenvalues[0].value - Complex::new(0.0, -1.0)).norm() < 1e-14);
        assert!((s.eigenvalues[1].value - Complex::new(0.0, 1.0)).norm() < 1e-14);
        assert!(s.semisimple);
        assert_eq!(s.dimension(), 2);
    }

    #[test]
    fn nilpotency_examples() {
        assert!(is_nilpotent(&m(&[&[0.0, 1.0], &[0.0, 0.0]]), 1e-12));
        assert!(!is_nilpotent(&RealMatrix::identity(2), 1e-12));
        // A² = 0 by hand.
        let a = m(&[&[1.0, 1.0], &[-1.0, -1.0]]);
        assert_eq!((&a * &a).max_abs(), 0.0);
        assert!(is_nilpotent(&a, 1e-12));
    }

    #[test]
    fn skew_similarity_examples() {
        assert!(is_skew_similar(&m(&[&[0.0, 1.0], &[-1.0, 0.0]]), 1e-8));
        assert!(!is_skew_similar(&RealMatrix::identity(2), 1e-8));
        assert!(!is_skew_similar(&m(&[&[0.0, 1.0], &[0.0, 0.0]]), 1e-8));
        // Similar to a rotation generator but not itself skew-symmetric.
        assert!(is_skew_similar(&m(&[&[1.0, 2.0], &[-1.0, -1.0]]), 1e-8));
    }

    #[test]
    fn commutator_examples() {
        let e = m(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let f = m(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let h = commutator(&e, &f).unwrap();
        assert_eq!(h, m(&[&[1.0, 0.0], &[0.0, -1.0]]));
        assert_eq!(commutator(&e, &e).unwrap().max_abs(), 0.0);
        assert_eq!(
            commutator(&RealMatrix::identity(2), &f).unwrap().max_abs(),
            0.0
        );
        assert!(commutator(&e, &RealMatrix::identity(3)).is_err());
    }

    #[test]
    fn char_poly_of_diagonal() {
        // (λ−1)(λ−2)(λ−3) = λ³ − 6λ² + 11λ − 6
        let c = char_poly(&RealMatrix::from_diagonal(&[1.0, 2.0, 3.0]));
        let want = [-6.0, 11.0, -6.0];
        for (a, b) in c.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn jordan_chevalley_splits_jordan_block() {
        let a = m(&[&[0.5, 1.0], &[0.0, 0.5]]);
        let (s, n) = jordan_chevalley(&a).unwrap();
        assert!(s.max_diff(&RealMatrix::from_diagonal(&[0.5, 0.5])) < 1e-7);
        assert!(n.max_diff(&m(&[&[0.0, 1.0], &[0.0, 0.0]])) < 1e-7);
        let (s, n) = jordan_chevalley(&m(&[&[0.0, 1.0], &[-1.0, 0.0]])).unwrap();
        assert!(n.max_abs() < 1e-12);
        assert!(s.max_diff(&m(&[&[0.0, 1.0], &[-1.0, 0.0]])) < 1e-12);
    }

    #[test]
    fn symplectic_unit_is_symplectic() {
        let j = RealMatrix::symplectic_unit(2);
        assert!(j.is_symplectic(1.0, 1e-12));
        assert!(!RealMatrix::identity(4).scale(2.0).is_symplectic(1.0, 1e-9));
        assert!(RealMatrix::from_diagonal(&[1.0, -1.0]).is_symplectic(-1.0, 1e-12));
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(RealMatrix::new(0, 2, vec![]).is_err());
        assert!(RealMatrix::new(1, 2, vec![1.0]).is_err());
        assert!(RealMatrix::new(1, 1, vec![f64::NAN]).is_err());
    }
}
