//! EPR correlation and coherent-state teleportation criteria.
//!
//! For unit-gain Braunstein-Kimble teleportation of a coherent state the
//! fidelity is `F = 1/√det 𝓜` with
//!
//! ```text
//! 𝓜 = A − (C σ_z + σ_z Cᵀ) + σ_z B σ_z + I,
//! ```
//!
//! which is `A − {σ_z, C} + σ_z B σ_z + I` whenever `C` is symmetric (in
//! particular in standard form). `𝓜 − I` is the covariance of the EPR
//! quadratures `(x_a − x_b, p_a + p_b)` up to the sign of its off-diagonal,
//! so `tr 𝓜 = Δ_EPR + 2` and `Δ_EPR < 2` forces `det 𝓜 < 4`.

use std::fmt;

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use crate::canonical::CanonicalParams;
use crate::covariance::{ensure_physical, validate, CovMat};
use crate::entanglement::verdict_unchecked;
use crate::error::{Error, Result};

/// Per-state summary of the teleportation criteria.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriteriaReport {
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub delta_epr: f64,
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub f_epr: f64,
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub det_m: f64,
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub fidelity: f64,
    pub entangled: bool,
    pub epr_correlated: bool,
    pub qt: bool,
}

/// Region label of a state. Checked in the order listed, so the labels are
/// mutually exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Unphysical,
    Separable,
    EntangledNoQT,
    QTNoEPR,
    EPRCorrelated,
}

impl Classification {
    pub fn label(self) -> &'static str {
        match self {
            Self::Unphysical => "Unphysical",
            Self::Separable => "Separable",
            Self::EntangledNoQT => "EntangledNoQT",
            Self::QTNoEPR => "QTNoEPR",
            Self::EPRCorrelated => "EPRCorrelated",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn sigma_z() -> Matrix2<f64> {
    Matrix2::new(1.0, 0.0, 0.0, -1.0)
}

fn epr_uncertainty_raw(v: &CovMat) -> f64 {
    let m = v.matrix();
    m[(0, 0)] + m[(2, 2)] - 2.0 * m[(0, 2)] + m[(1, 1)] + m[(3, 3)] + 2.0 * m[(1, 3)]
}

fn m_matrix_raw(v: &CovMat) -> Matrix2<f64> {
    let sz = sigma_z();
    let c = v.c();
    v.a() - (c * sz + sz * c.transpose()) + sz * v.b() * sz + Matrix2::identity()
}

/// `Δ_EPR = ⟨Δ²(x_a − x_b)⟩ + ⟨Δ²(p_a + p_b)⟩`.
pub fn epr_uncertainty(v: &CovMat) -> Result<f64> {
    ensure_physical(v)?;
    Ok(epr_uncertainty_raw(v))
}

/// `f_EPR = max(0, 2 − Δ_EPR)`.
pub fn epr_degree(v: &CovMat) -> Result<f64> {
    Ok(degree_from_uncertainty(epr_uncertainty(v)?))
}

fn degree_from_uncertainty(delta: f64) -> f64 {
    (2.0 - delta).max(0.0)
}

pub fn m_matrix(v: &CovMat) -> Result<Matrix2<f64>> {
    ensure_physical(v)?;
    Ok(m_matrix_raw(v))
}

/// Coherent-state teleportation fidelity `1/√det 𝓜`.
pub fn fidelity(v: &CovMat) -> Result<f64> {
    ensure_physical(v)?;
    fidelity_from_det(m_matrix_raw(v).determinant())
}

fn fidelity_from_det(det_m: f64) -> Result<f64> {
    if det_m > 0.0 {
        Ok(1.0 / det_m.sqrt())
    } else {
        Err(Error::NumericalDomain(format!("det M = {det_m} is not positive")))
    }
}

/// `det 𝓜 = 1 + 4c₁c₂ + (s + 2)(s − (c₁ + c₂)) − s(c₁ + c₂)` with `s = η + ζ`.
pub fn detm_canonical(p: &CanonicalParams) -> f64 {
    let s = p.local_sum();
    let c = p.c1 + p.c2;
    1.0 + 4.0 * p.c1 * p.c2 + (s + 2.0) * (s - c) - s * c
}

/// `det 𝓜 = 4 − ε(4 − ε) − (c₁ − c₂)²` with `ε = 1 − ((η + ζ) − (c₁ + c₂))`.
pub fn detm_epsilon_form(p: &CanonicalParams) -> f64 {
    let eps = 1.0 - p.epr_gap();
    let d = p.c1 - p.c2;
    4.0 - eps * (4.0 - eps) - d * d
}

/// The teleportation condition in terms of the EPR gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QtEprBound {
    /// `(η + ζ) − (c₁ + c₂)`
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub lhs: f64,
    /// `√(4 + (c₁ − c₂)²) − 1`
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub rhs: f64,
    pub qt: bool,
}

/// `qt ⟺ lhs < rhs`, equivalent to `det 𝓜 < 4` whenever `lhs > −1`
/// (always the case for physical parameters, where `lhs ≥ 0`).
pub fn qt_epr_bound(p: &CanonicalParams) -> QtEprBound {
    let lhs = p.epr_gap();
    let d = p.c1 - p.c2;
    let rhs = (4.0 + d * d).sqrt() - 1.0;
    QtEprBound { lhs, rhs, qt: lhs < rhs }
}

/// Evaluates every criterion; unphysical input yields `(None, Unphysical)`.
///
/// The `entangled` flag is the PPT verdict.
pub fn classify(v: &CovMat) -> (Option<CriteriaReport>, Classification) {
    if !validate(v).physical {
        return (None, Classification::Unphysical);
    }
    let delta_epr = epr_uncertainty_raw(v);
    let det_m = m_matrix_raw(v).determinant();
    let Ok(fidelity) = fidelity_from_det(det_m) else {
        return (None, Classification::Unphysical);
    };
    let report = CriteriaReport {
        delta_epr,
        f_epr: degree_from_uncertainty(delta_epr),
        det_m,
        fidelity,
        entangled: verdict_unchecked(v).ppt_entangled,
        epr_correlated: delta_epr < 2.0,
        qt: det_m < 4.0,
    };
    (Some(report), report.classification())
}

impl CriteriaReport {
    pub fn classification(&self) -> Classification {
        if !self.entangled {
            Classification::Separable
        } else if self.epr_correlated {
            Classification::EPRCorrelated
        } else if self.qt {
            Classification::QTNoEPR
        } else {
            Classification::EntangledNoQT
        }
    }
}
