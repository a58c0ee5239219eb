//! The operator on the flat 2-torus: modulus, offset, eigenvalues and the
//! associated quadratic form.
//!
//! Eigenvalues are indexed by an integer lattice point (m, n):
//!
//! ```text
//! l_{mn} = (4π²/τ₂) |n − mτ|² + V₀,     τ = τ₁ + iτ₂,  τ₂ > 0,  V₀ > 0
//! ```
//!
//! |n − mτ|² is the Gram quadratic form with matrix
//! [[1, −τ₁], [−τ₁, τ₁² + τ₂²]], whose determinant is τ₂².

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Torus operator parameters: modulus τ = τ₁ + iτ₂ and offset V₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorSpec {
    pub tau1: f64,
    pub tau2: f64,
    pub v0: f64,
}

impl OperatorSpec {
    /// Validated constructor; τ₂ > 0 and V₀ > 0 are hard requirements
    /// (V₀ = 0 would make the zero mode collapse the determinant).
    pub fn new(tau1: f64, tau2: f64, v0: f64) -> Result<Self> {
        if !tau1.is_finite() || !tau2.is_finite() || !v0.is_finite() {
            return Err(Error::domain("operator parameters must be finite"));
        }
        if !(tau2 > 0.0) {
            return Err(Error::domain(
                "modulus must have positive imaginary part",
            ));
        }
        if !(v0 > 0.0) {
            return Err(Error::domain("offset must be positive"));
        }
        Ok(OperatorSpec { tau1, tau2, v0 })
    }

    /// |τ| = √(τ₁² + τ₂²).
    pub fn modulus_abs(&self) -> f64 {
        self.tau1.hypot(self.tau2)
    }
}

/// Validated constructor for [`OperatorSpec`].
pub fn make_operator(tau1: f64, tau2: f64, v0: f64) -> Result<OperatorSpec> {
    OperatorSpec::new(tau1, tau2, v0)
}

/// Integer lattice point (m, n) labelling one eigenstate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeIndex {
    pub m: i64,
    pub n: i64,
}

impl ModeIndex {
    pub fn new(m: i64, n: i64) -> Self {
        ModeIndex { m, n }
    }
}

/// Symmetric 2×2 Gram matrix of the lattice quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GramMatrix {
    pub w11: f64,
    pub w12: f64,
    pub w22: f64,
}

impl GramMatrix {
    pub fn det(&self) -> f64 {
        self.w11 * self.w22 - self.w12 * self.w12
    }

    /// Inverse of the (positive definite) matrix.
    pub fn inverse(&self) -> GramMatrix {
        let d = self.det();
        GramMatrix {
            w11: self.w22 / d,
            w12: -self.w12 / d,
            w22: self.w11 / d,
        }
    }

    /// v^T W v for integer v = (a, b).
    pub fn form(&self, a: f64, b: f64) -> f64 {
        self.w11 * a * a + 2.0 * self.w12 * a * b + self.w22 * b * b
    }

    /// Smallest eigenvalue; positive whenever the matrix is positive definite.
    pub fn min_eigenvalue(&self) -> f64 {
        let tr = self.w11 + self.w22;
        let disc = ((self.w11 - self.w22).powi(2) + 4.0 * self.w12 * self.w12).sqrt();
        0.5 * (tr - disc)
    }
}

/// Gram matrix Ω′ with n⃗ᵗ Ω′ n⃗ = |n − mτ|² for n⃗ = (n, m); det Ω′ = τ₂².
pub fn gram_matrix(spec: &OperatorSpec) -> GramMatrix {
    GramMatrix {
        w11: 1.0,
        w12: -spec.tau1,
        w22: spec.tau1 * spec.tau1 + spec.tau2 * spec.tau2,
    }
}

/// A_{nm} = (n − mτ₁)² + m²τ₂², the completed-square form of
/// n² − 2nmτ₁ + m²(τ₁² + τ₂²).
pub fn quadratic_form(spec: &OperatorSpec, mode: ModeIndex) -> f64 {
    let m = mode.m as f64;
    let n = mode.n as f64;
    let a = n - m * spec.tau1;
    a * a + m * m * spec.tau2 * spec.tau2
}

/// The expanded form n² − 2nmτ₁ + m²(τ₁² + τ₂²); kept as a test oracle for
/// [`quadratic_form`].
pub fn quadratic_form_expanded(spec: &OperatorSpec, mode: ModeIndex) -> f64 {
    let m = mode.m as f64;
    let n = mode.n as f64;
    n * n - 2.0 * n * m * spec.tau1 + m * m * (spec.tau1 * spec.tau1 + spec.tau2 * spec.tau2)
}

/// Eigenvalue l_{mn} = (4π²/τ₂) A_{nm} + V₀ > 0.
pub fn eigenvalue(spec: &OperatorSpec, mode: ModeIndex) -> f64 {
    let c = 4.0 * std::f64::consts::PI * std::f64::consts::PI / spec.tau2;
    c * quadratic_form(spec, mode) + spec.v0
}
