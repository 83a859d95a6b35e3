//! Inseparability of two-mode Gaussian states.

use serde::Serialize;

use crate::covariance::{ensure_physical, partial_transpose, validate, CovMat};
use crate::error::Result;
use crate::PHYSICAL_TOL;

/// Both entanglement verdicts for one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglementVerdict {
    /// `4Δ − 16σ` with `Δ = det A + det B − 2 det C` and `σ = det V`.
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub simon_lhs: f64,
    pub simon_entangled: bool,
    /// Smallest symplectic eigenvalue of the partially transposed matrix.
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub ppt_nu_minus: f64,
    pub ppt_entangled: bool,
}

/// Left-hand side of the Simon inequality `4Δ − 16σ > 1`.
pub fn simon_lhs(v: &CovMat) -> f64 {
    let [da, db, dc, dv] = v.invariants();
    4.0 * (da + db - 2.0 * dc) - 16.0 * dv
}

/// Smallest symplectic eigenvalue of the partial transpose.
pub fn ppt_nu_minus(v: &CovMat) -> f64 {
    validate(&partial_transpose(v)).nu_minus
}

pub fn simon_inseparable(v: &CovMat) -> Result<EntanglementVerdict> {
    ensure_physical(v)?;
    Ok(verdict_unchecked(v))
}

pub(crate) fn verdict_unchecked(v: &CovMat) -> EntanglementVerdict {
    let lhs = simon_lhs(v);
    let nu = ppt_nu_minus(v);
    EntanglementVerdict {
        simon_lhs: lhs,
        simon_entangled: lhs > 1.0,
        ppt_nu_minus: nu,
        ppt_entangled: nu < 0.5 - PHYSICAL_TOL,
    }
}
