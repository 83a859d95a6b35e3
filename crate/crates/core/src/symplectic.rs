//! Small symplectic building blocks for one and two modes.

use nalgebra::{Matrix2, Matrix4};

/// The single-mode symplectic form `J = [[0, 1], [-1, 0]]`.
pub fn j2() -> Matrix2<f64> {
    Matrix2::new(0.0, 1.0, -1.0, 0.0)
}

/// The two-mode symplectic form `Ω = J ⊕ J`.
pub fn omega() -> Matrix4<f64> {
    direct_sum(&j2(), &j2())
}

/// Phase-space rotation by `theta`.
pub fn rotation(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// Single-mode squeezer `diag(e^{-s}, e^{s})`; positive `s` squeezes `x`.
pub fn squeezer(s: f64) -> Matrix2<f64> {
    Matrix2::new((-s).exp(), 0.0, 0.0, s.exp())
}

/// Block-diagonal `a ⊕ b`.
pub fn direct_sum(a: &Matrix2<f64>, b: &Matrix2<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(b);
    m
}

/// Residual `max |S Ω Sᵀ − Ω|`; zero for an exact symplectic matrix.
pub fn symplectic_residual(s: &Matrix4<f64>) -> f64 {
    (s * omega() * s.transpose() - omega()).amax()
}

/// Symmetric symplectic `S` with `S a Sᵀ = √(det a) · I` for positive-definite `a`.
///
/// With `m = a / √det a` (unit determinant) this is `m^{-1/2}`, and for 2×2
/// unit-determinant matrices `m^{1/2} = (m + I)/√(tr m + 2)`.
pub(crate) fn local_normalizer(a: &Matrix2<f64>) -> Matrix2<f64> {
    let d = a.determinant();
    let m = a / d.sqrt();
    let m_inv = Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]);
    (m_inv + Matrix2::identity()) / (m.trace() + 2.0).sqrt()
}

/// Proper 2×2 singular value decomposition `m = R(α) diag(d₁, d₂) R(β)ᵀ`.
///
/// Only rotations are used, so `d₂` carries the sign of `det m` and
/// `d₁ ≥ |d₂|`. `α` is folded into `(−π/2, π/2]`. Returns `(α, β, d₁, d₂)`.
pub(crate) fn rotation_svd(m: &Matrix2<f64>) -> (f64, f64, f64, f64) {
    let p = 0.5 * (m[(0, 0)] + m[(1, 1)]);
    let q = 0.5 * (m[(1, 0)] - m[(0, 1)]);
    let r = 0.5 * (m[(0, 0)] - m[(1, 1)]);
    let s = 0.5 * (m[(0, 1)] + m[(1, 0)]);

    let scale_rot = p.hypot(q);
    let scale_refl = r.hypot(s);
    // atan2(0, 0) = 0 picks the smallest rotation when a part vanishes.
    let theta_rot = q.atan2(p);
    let theta_refl = s.atan2(r);

    let mut alpha = 0.5 * (theta_refl + theta_rot);
    let mut beta = 0.5 * (theta_refl - theta_rot);
    let half_pi = std::f64::consts::FRAC_PI_2;
    if alpha > half_pi {
        alpha -= std::f64::consts::PI;
        beta -= std::f64::consts::PI;
    } else if alpha <= -half_pi {
        alpha += std::f64::consts::PI;
        beta += std::f64::consts::PI;
    }
    (alpha, beta, scale_rot + scale_refl, scale_rot - scale_refl)
}
