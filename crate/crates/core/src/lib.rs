//! Two-mode Gaussian state analysis for continuous-variable teleportation.
//!
//! The crate works with 4×4 covariance matrices in the `(x_a, p_a, x_b, p_b)`
//! ordering with vacuum variance 1/2. It decides physicality, entanglement
//! (Simon form and PPT symplectic eigenvalue), EPR correlation and whether a
//! state beats the classical coherent-state teleportation limit `F = 1/2` in
//! the Braunstein-Kimble unit-gain protocol.
//!
//! - [`covariance`]: the [`CovMat`] data model, validity checks and JSON schema.
//! - [`entanglement`]: Simon and PPT inseparability verdicts.
//! - [`canonical`]: reduction to the standard form `A = ηI, B = ζI, C = diag(c₁, −c₂)`.
//! - [`teleport`]: EPR uncertainty, the fidelity matrix and state classification.
//! - [`resources`]: two-mode squeezed thermal and beam-splitter resource states.
//! - [`cf_oracle`]: fidelity from numerical integration of the characteristic function.
//! - [`sweep`]: parameter grids over resource families, serialized to CSV or JSON.

#![forbid(unsafe_code)]

pub mod canonical;
pub mod cf_oracle;
pub mod covariance;
pub mod entanglement;
mod error;
pub mod fmt;
pub mod resources;
pub mod sampler;
pub mod sweep;
pub mod symplectic;
pub mod teleport;

pub use canonical::{from_canonical, to_canonical, CanonicalParams};
pub use cf_oracle::{cf_value, fidelity_by_quadrature, QuadratureResult, QuadratureRule, QuadratureSpec};
pub use covariance::{partial_transpose, validate, CovMat, ValidityReport};
pub use entanglement::{simon_inseparable, EntanglementVerdict};
pub use error::{Error, Result};
pub use resources::{bs_resource, tmst, BsSpec, TmstSpec};
pub use sampler::StateSampler;
pub use teleport::{classify, fidelity, Classification, CriteriaReport};

/// Tolerance on the smallest symplectic eigenvalue for physicality and PPT.
pub const PHYSICAL_TOL: f64 = 1e-10;

/// Absolute tolerance for the symmetry check of a covariance matrix.
pub const SYMMETRY_TOL: f64 = 1e-12;
