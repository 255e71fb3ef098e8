//! The Heisenberg group in its symplectic and polarized forms.

use serde::{Deserialize, Serialize};

use crate::error::{dim_err, Error, Result};
use crate::matrix::RealMatrix;
use crate::tolerance;

/// A phase-space vector `w = (x; y)` stored as the x-block followed by the
/// y-block. Length is always even.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct PhaseVector(Vec<f64>);

impl PhaseVector {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if !w.len().is_multiple_of(2) {
            return dim_err(format!("phase vector of odd length {}", w.len()));
        }
        Ok(Self(w))
    }

    pub fn from_parts(x: &[f64], y: &[f64]) -> Result<Self> {
        if x.len() != y.len() {
            return dim_err("x and y blocks differ in length");
        }
        Ok(Self([x, y].concat()))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; 2 * n])
    }

    /// Half the length.
    pub fn n(&self) -> usize {
        self.0.len() / 2
    }

    pub fn x(&self) -> &[f64] {
        &self.0[..self.n()]
    }

    pub fn y(&self) -> &[f64] {
        &self.0[self.n()..]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.iter().map(|v| v * s).collect())
    }
}

impl TryFrom<Vec<f64>> for PhaseVector {
    type Error = Error;
    fn try_from(w: Vec<f64>) -> Result<Self> {
        Self::new(w)
    }
}

impl From<PhaseVector> for Vec<f64> {
    fn from(w: PhaseVector) -> Self {
        w.0
    }
}

/// Element `(w, z)` of the Heisenberg group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeisenbergElement {
    pub w: PhaseVector,
    pub z: f64,
}

impl HeisenbergElement {
    pub fn new(w: PhaseVector, z: f64) -> Self {
        Self { w, z }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(PhaseVector::zeros(n), 0.0)
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.w.scale(-1.0), -self.z)
    }
}

/// Element `h(x, y, z)` of the polarized Heisenberg group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarizedElement {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: f64,
}

impl PolarizedElement {
    pub fn new(x: Vec<f64>, y: Vec<f64>, z: f64) -> Result<Self> {
        if x.len() != y.len() {
            return dim_err("x and y differ in length");
        }
        Ok(Self { x, y, z })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            x: vec![0.0; n],
            y: vec![0.0; n],
            z: 0.0,
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn inverse(&self) -> Self {
        Self {
            x: self.x.iter().map(|v| -v).collect(),
            y: self.y.iter().map(|v| -v).collect(),
            z: dot(&self.y, &self.x) - self.z,
        }
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

pub(crate) fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(u, v)| u + v).collect()
}

/// `⟦w, w̃⟧ = wᵀ𝒥w̃ = yᵀx̃ − xᵀỹ`.
pub fn symplectic_form(w: &PhaseVector, wt: &PhaseVector) -> Result<f64> {
    if w.n() != wt.n() {
        return dim_err("phase vectors differ in length");
    }
    Ok(dot(w.y(), wt.x()) - dot(w.x(), wt.y()))
}

/// `(w, z)(w̃, z̃) = (w + w̃, z + z̃ + ½⟦w, w̃⟧)`.
pub fn heis_mul(a: &HeisenbergElement, b: &HeisenbergElement) -> Result<HeisenbergElement> {
    let form = symplectic_form(&a.w, &b.w)?;
    Ok(HeisenbergElement::new(
        PhaseVector(add(a.w.as_slice(), b.w.as_slice())),
        a.z + b.z + 0.5 * form,
    ))
}

/// `h(x, y, z) h(x̃, ỹ, z̃) = h(x + x̃, y + ỹ, z + z̃ + yᵀx̃)`.
pub fn pol_mul(a: &PolarizedElement, b: &PolarizedElement) -> Result<PolarizedElement> {
    if a.n() != b.n() {
        return dim_err("polarized elements differ in dimension");
    }
    Ok(PolarizedElement {
        x: add(&a.x, &b.x),
        y: add(&a.y, &b.y),
        z: a.z + b.z + dot(&a.y, &b.x),
    })
}

/// The unipotent matrix `[[1, yᵀ, z], [0, I, x], [0, 0, 1]]`.
pub fn pol_to_matrix(h: &PolarizedElement) -> RealMatrix {
    let n = h.n();
    let mut m = RealMatrix::identity(n + 2);
    for i in 0..n {
        m.set(0, 1 + i, h.y[i]);
        m.set(1 + i, n + 1, h.x[i]);
    }
    m.set(0, n + 1, h.z);
    m
}

/// Isomorphism `(w, z) ↦ h(x, y, z + ½yᵀx)`.
pub fn to_polarized(h: &HeisenbergElement) -> PolarizedElement {
    let (x, y) = (h.w.x(), h.w.y());
    PolarizedElement {
        x: x.to_vec(),
        y: y.to_vec(),
        z: h.z + 0.5 * dot(y, x),
    }
}

pub fn from_polarized(h: &PolarizedElement) -> HeisenbergElement {
    HeisenbergElement::new(
        PhaseVector([h.x.as_slice(), h.y.as_slice()].concat()),
        h.z - 0.5 * dot(&h.y, &h.x),
    )
}

/// Automorphism `(w, z) ↦ (Aw, z)` for symplectic `A`.
pub fn sp_action(a: &RealMatrix, h: &HeisenbergElement) -> Result<HeisenbergElement> {
    if a.rows() != h.w.as_slice().len() || !a.is_square() {
        return dim_err(format!(
            "{}x{} matrix acting on a phase vector of length {}",
            a.rows(),
            a.cols(),
            h.w.as_slice().len()
        ));
    }
    if !a.is_symplectic(1.0, tolerance::SYMPLECTIC) {
        return Err(Error::Precondition("matrix is not symplectic".into()));
    }
    Ok(HeisenbergElement::new(
        PhaseVector(a.mul_vec(h.w.as_slice())),
        h.z,
    ))
}
