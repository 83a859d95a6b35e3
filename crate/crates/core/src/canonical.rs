//! Reduction of a two-mode covariance matrix to standard form.
//!
//! Every physical two-mode matrix is brought by a local symplectic
//! `S = S_a ⊕ S_b` to
//!
//! ```text
//! ⎡ η   0   c₁   0 ⎤
//! ⎢ 0   η   0  −c₂ ⎥
//! ⎢ c₁  0   ζ    0 ⎥
//! ⎣ 0  −c₂  0    ζ ⎦
//! ```
//!
//! Each local block is first made isotropic by its symmetric normalizer
//! (`η = √det A`, `ζ = √det B`), then the correlation block is diagonalized
//! with a pair of rotations. Ordering: `c₁ ≥ |c₂|`, and `c₂ ≥ 0` exactly
//! when `det C ≤ 0`.

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::covariance::{ensure_physical, validate, CovMat};
use crate::error::Result;
use crate::symplectic::{direct_sum, local_normalizer, rotation, rotation_svd};

/// Standard-form parameters `(η, ζ, c₁, c₂)`; the correlation block is `diag(c₁, −c₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalParams {
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub eta: f64,
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub zeta: f64,
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub c1: f64,
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub c2: f64,
}

impl CanonicalParams {
    pub fn new(eta: f64, zeta: f64, c1: f64, c2: f64) -> Self {
        Self { eta, zeta, c1, c2 }
    }

    /// `η + ζ`
    pub fn local_sum(&self) -> f64 {
        self.eta + self.zeta
    }

    /// `(η + ζ) − (c₁ + c₂)`, half the EPR uncertainty.
    pub fn epr_gap(&self) -> f64 {
        self.local_sum() - (self.c1 + self.c2)
    }

    pub fn is_physical(&self) -> bool {
        validate(&from_canonical(self)).physical
    }
}

/// Builds the standard-form matrix for `p`.
pub fn from_canonical(p: &CanonicalParams) -> CovMat {
    let a = Matrix2::identity() * p.eta;
    let b = Matrix2::identity() * p.zeta;
    let c = Matrix2::new(p.c1, 0.0, 0.0, -p.c2);
    CovMat::from_blocks(&a, &b, &c).expect("finite canonical parameters")
}

/// Returns the standard-form parameters and the local symplectic `S` with
/// `S V Sᵀ = from_canonical(params)`.
pub fn to_canonical(v: &CovMat) -> Result<(CanonicalParams, Matrix4<f64>)> {
    ensure_physical(v)?;
    let a = v.a();
    let b = v.b();
    let norm_a = local_normalizer(&a);
    let norm_b = local_normalizer(&b);
    let eta = a.determinant().sqrt();
    let zeta = b.determinant().sqrt();

    let c = norm_a * v.c() * norm_b.transpose();
    let (alpha, beta, d1, d2) = rotation_svd(&c);
    let s_a = rotation(alpha).transpose() * norm_a;
    let s_b = rotation(beta).transpose() * norm_b;

    let params = CanonicalParams::new(eta, zeta, d1, -d2);
    Ok((params, direct_sum(&s_a, &s_b)))
}
