//! Teleportation fidelity from the characteristic function.
//!
//! Independent of the closed form in [`crate::teleport`]: the coherent-state
//! fidelity is the integral
//!
//! ```text
//! F = ∫ d²λ/π  e^{−|λ|²} χ_ab(λ, λ*)
//! ```
//!
//! evaluated on a truncated square by a tensor-product rule. With
//! `λ = (Δx + iΔp)/√2` the displacement `D(λ)` is `exp(i√2 (Im λ · x − Re λ · p))`,
//! so a zero-mean Gaussian state has `χ(λ_a, λ_b) = exp(−½ uᵀVu)` with
//! `u = √2 (Im λ_a, −Re λ_a, Im λ_b, −Re λ_b)`.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::Vector4;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::covariance::{ensure_physical, CovMat};
use crate::error::{Error, Result};

/// est_error above which a [`QuadratureWarning`] is attached.
pub const WARNING_THRESHOLD: f64 = 1e-3;

/// Bound on the imaginary part of the accumulated integral.
const IMAG_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureRule {
    Midpoint,
    GaussLegendre,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    radius: f64,
    points_per_axis: usize,
    rule: QuadratureRule,
}

impl Default for QuadratureSpec {
    /// Midpoint rule on `[−6, 6]²` with 401 points per axis.
    fn default() -> Self {
        Self { radius: 6.0, points_per_axis: 401, rule: QuadratureRule::Midpoint }
    }
}

impl QuadratureSpec {
    pub const MIN_POINTS: usize = 51;

    pub fn new(radius: f64, points_per_axis: usize, rule: QuadratureRule) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidInput(format!("radius must be positive, got {radius}")));
        }
        if points_per_axis < Self::MIN_POINTS || points_per_axis.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "points per axis must be odd and >= {}, got {points_per_axis}",
                Self::MIN_POINTS
            )));
        }
        Ok(Self { radius, points_per_axis, rule })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }

    /// Nodes and weights on `[−radius, radius]` for `n` points.
    fn axis(&self, n: usize) -> Vec<(f64, f64)> {
        let r = self.radius;
        match self.rule {
            QuadratureRule::Midpoint => {
                let h = 2.0 * r / n as f64;
                (0..n).map(|i| (-r + (i as f64 + 0.5) * h, h)).collect()
            }
            QuadratureRule::GaussLegendre => {
                let n = NonZeroUsize::new(n).expect("at least one node");
                GaussLegendre::new(n).iter().map(|(x, w)| (r * x, r * w)).collect()
            }
        }
    }
}

/// The integration ran but its error estimate is above [`WARNING_THRESHOLD`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureWarning {
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub est_error: f64,
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub threshold: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub value: f64,
    /// `max(|value(N) − value(N/2)|, e^{−R²})`; the second term bounds the
    /// mass outside the square since `|χ| ≤ 1`.
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub est_error: f64,
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub resolution_error: f64,
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub truncation_bound: f64,
    pub warning: Option<QuadratureWarning>,
}

/// Quadrature displacement vector `u` for the two-mode point `(λ_a, λ_b)`.
fn displacement(la: Complex64, lb: Complex64) -> Vector4<f64> {
    let s = std::f64::consts::SQRT_2;
    Vector4::new(s * la.im, -s * la.re, s * lb.im, -s * lb.re)
}

fn cf_raw(v: &CovMat, la: Complex64, lb: Complex64) -> Complex64 {
    let u = displacement(la, lb);
    let q = u.dot(&(v.matrix() * u));
    Complex64::new((-0.5 * q).exp(), 0.0)
}

/// `χ_ab(λ_a, λ_b) = Tr[ρ D_a(λ_a) D_b(λ_b)]` for the zero-mean state with covariance `v`.
pub fn cf_two_mode(v: &CovMat, la: Complex64, lb: Complex64) -> Result<Complex64> {
    ensure_physical(v)?;
    Ok(cf_raw(v, la, lb))
}

/// `χ_ab(λ, λ*)`, the argument pattern of the fidelity integral.
pub fn cf_value(v: &CovMat, lam: Complex64) -> Result<Complex64> {
    cf_two_mode(v, lam, lam.conj())
}

/// Integrand `e^{−|λ|²} χ_ab(λ, λ*) / π`.
fn integrand(v: &CovMat, lam: Complex64) -> Complex64 {
    cf_raw(v, lam, lam.conj()) * ((-lam.norm_sqr()).exp() / std::f64::consts::PI)
}

/// Neumaier-compensated sum in a fixed order.
fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Tensor-product quadrature with `n` points per axis. Rows are reduced in
/// parallel and combined in row order, so the result does not depend on
/// scheduling.
fn integrate(v: &CovMat, spec: &QuadratureSpec, n: usize) -> Complex64 {
    let axis = spec.axis(n);
    let rows: Vec<Complex64> = axis
        .par_iter()
        .map(|&(y, wy)| {
            let re = compensated_sum(axis.iter().map(|&(x, wx)| wx * integrand(v, Complex64::new(x, y)).re));
            let im = compensated_sum(axis.iter().map(|&(x, wx)| wx * integrand(v, Complex64::new(x, y)).im));
            Complex64::new(wy * re, wy * im)
        })
        .collect();
    Complex64::new(compensated_sum(rows.iter().map(|z| z.re)), compensated_sum(rows.iter().map(|z| z.im)))
}

/// Value of `|integrand|` at the point `(radius, 0)` and its rotations;
/// exposed for truncation checks.
pub fn boundary_integrand_max(v: &CovMat, radius: f64) -> Result<f64> {
    ensure_physical(v)?;
    let n = 64;
    Ok((0..n)
        .map(|i| {
            let phi = std::f64::consts::TAU * i as f64 / n as f64;
            let lam = Complex64::from_polar(radius, phi);
            integrand(v, lam).norm()
        })
        .fold(0.0, f64::max))
}

/// Fidelity of coherent-state teleportation by direct integration.
pub fn fidelity_by_quadrature(v: &CovMat, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    ensure_physical(v)?;
    let n = spec.points_per_axis;
    let fine = integrate(v, spec, n);
    if fine.im.abs() >= IMAG_TOL {
        return Err(Error::NumericalDomain(format!(
            "imaginary part {} of the fidelity integral exceeds {IMAG_TOL}",
            fine.im
        )));
    }
    let coarse_n = {
        let half = n / 2;
        if half.is_multiple_of(2) {
            half + 1
        } else {
            half
        }
    };
    let coarse = integrate(v, spec, coarse_n);
    let resolution_error = (fine.re - coarse.re).abs();
    let truncation_bound = (-spec.radius * spec.radius).exp();
    let est_error = resolution_error.max(truncation_bound);
    let warning = (est_error > WARNING_THRESHOLD)
        .then_some(QuadratureWarning { est_error, threshold: WARNING_THRESHOLD });
    Ok(QuadratureResult { value: fine.re, est_error, resolution_error, truncation_bound, warning })
}
