//! Resource-state families: two-mode squeezed thermal states and
//! beam-splitter outputs of a single-mode squeezed thermal input.

use nalgebra::{Matrix2, Matrix4};
use serde::Serialize;

use crate::canonical::{from_canonical, CanonicalParams};
use crate::covariance::CovMat;
use crate::error::{Error, Result};
use crate::symplectic::direct_sum;

fn check_k(name: &str, k: f64) -> Result<()> {
    if k.is_finite() && k >= 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be a finite value >= 1/2, got {k}")))
    }
}

fn check_r(r: f64) -> Result<()> {
    if r.is_finite() && r >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("r must be a finite value >= 0, got {r}")))
    }
}

/// Two-mode squeezed thermal state `S_ab(r) (ρ_th(n̄₁) ⊗ ρ_th(n̄₂)) S_ab(r)†`
/// with `kᵢ = n̄ᵢ + 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TmstSpec {
    r: f64,
    k1: f64,
    k2: f64,
}

impl TmstSpec {
    pub fn new(r: f64, k1: f64, k2: f64) -> Result<Self> {
        check_r(r)?;
        check_k("k1", k1)?;
        check_k("k2", k2)?;
        Ok(Self { r, k1, k2 })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn k1(&self) -> f64 {
        self.k1
    }

    pub fn k2(&self) -> f64 {
        self.k2
    }
}

/// Covariance of the two-mode squeezed thermal state. `μ = cosh r`, `ν = sinh r`:
/// `η = μ²k₁ + ν²k₂`, `ζ = ν²k₁ + μ²k₂`, `C = c σ_z` with `c = μν(k₁ + k₂)`.
pub fn tmst(spec: &TmstSpec) -> CovMat {
    let mu = spec.r.cosh();
    let nu = spec.r.sinh();
    let (mu2, nu2) = (mu * mu, nu * nu);
    let eta = mu2 * spec.k1 + nu2 * spec.k2;
    let zeta = nu2 * spec.k1 + mu2 * spec.k2;
    let c = mu * nu * (spec.k1 + spec.k2);
    from_canonical(&CanonicalParams::new(eta, zeta, c, c))
}

/// Squeezing at which the two-mode squeezed thermal state becomes entangled.
pub fn r_ent_threshold(k1: f64, k2: f64) -> Result<f64> {
    check_k("k1", k1)?;
    check_k("k2", k2)?;
    let root = ((4.0 * k1 * k1 - 1.0) * (4.0 * k2 * k2 - 1.0)).sqrt();
    Ok(0.5 * ((1.0 + 4.0 * k1 * k2 + root) / (2.0 * (k1 + k2))).ln())
}

/// Squeezing at which the two-mode squeezed thermal state becomes EPR
/// correlated, which for this family coincides with beating `F = 1/2`.
pub fn r_qt_threshold(k1: f64, k2: f64) -> Result<f64> {
    check_k("k1", k1)?;
    check_k("k2", k2)?;
    Ok(0.5 * (k1 + k2).ln())
}

/// Squeezed thermal covariance `diag(k e^{−2r}, k e^{2r})`; `x` is squeezed
/// for `r > 0`.
pub fn single_mode_sth(r: f64, k: f64) -> Result<Matrix2<f64>> {
    check_r(r)?;
    check_k("k", k)?;
    Ok(Matrix2::new(k * (-2.0 * r).exp(), 0.0, 0.0, k * (2.0 * r).exp()))
}

/// Squeezing above which the squeezed thermal input is quadrature squeezed,
/// `½ ln 2k`.
pub fn nonclassicality_threshold(k: f64) -> Result<f64> {
    check_k("k", k)?;
    Ok(0.5 * (2.0 * k).ln())
}

/// Beam splitter of transmittance `T` fed with a squeezed thermal state in
/// one arm and vacuum in the other.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BsSpec {
    r: f64,
    k: f64,
    #[serde(rename = "T")]
    t: f64,
}

impl BsSpec {
    pub fn new(r: f64, k: f64, t: f64) -> Result<Self> {
        check_r(r)?;
        check_k("k", k)?;
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::InvalidInput(format!("T must lie in (0, 1), got {t}")));
        }
        Ok(Self { r, k, t })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn transmittance(&self) -> f64 {
        self.t
    }

    pub fn nonclassical_input(&self) -> bool {
        self.r > 0.5 * (2.0 * self.k).ln()
    }
}

/// Beam-splitter symplectic `[[√T I, √(1−T) I], [−√(1−T) I, √T I]]`.
pub fn beam_splitter(t: f64) -> Matrix4<f64> {
    let (st, sr) = (t.sqrt(), (1.0 - t).sqrt());
    let mut s = Matrix4::zeros();
    for i in 0..2 {
        s[(i, i)] = st;
        s[(i, i + 2)] = sr;
        s[(i + 2, i)] = -sr;
        s[(i + 2, i + 2)] = st;
    }
    s
}

/// Output covariance `S_BS (σ ⊕ I/2) S_BSᵀ`.
pub fn bs_resource(spec: &BsSpec) -> CovMat {
    let sigma = single_mode_sth(spec.r, spec.k).expect("validated spec");
    let input = direct_sum(&sigma, &(Matrix2::identity() * 0.5));
    CovMat::new(input).expect("finite input").conjugate(&beam_splitter(spec.t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariance::validate;
    use crate::entanglement::ppt_nu_minus;
    use crate::symplectic::symplectic_residual;
    use crate::teleport::classify;
    use approx::assert_abs_diff_eq;

    #[test]
    fn no_squeezing_gives_thermal_product() {
        let v = tmst(&TmstSpec::new(0.0, 1.0, 2.0).unwrap());
        let expected = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 2.0, 2.0));
        assert_eq!(*v.matrix(), expected);
        assert!(!classify(&v).0.unwrap().entangled);
    }

    #[test]
    fn tmsv_entries() {
        let v = tmst(&TmstSpec::new(0.5, 0.5, 0.5).unwrap());
        assert_abs_diff_eq!(v.matrix()[(0, 0)], 1.0f64.cosh() / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.matrix()[(0, 0)], 0.771540, epsilon = 5e-7);
        assert_abs_diff_eq!(v.matrix()[(0, 2)], 1.0f64.sinh() / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.matrix()[(0, 2)], 0.587600, epsilon = 1e-6);
        assert_abs_diff_eq!(v.matrix()[(1, 3)], -1.0f64.sinh() / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn tmst_symplectic_spectrum_is_thermal() {
        for &(r, k1, k2) in &[(0.3, 0.7, 2.1), (1.2, 2.5, 0.5), (0.0, 1.0, 1.4)] {
            let rep = validate(&tmst(&TmstSpec::new(r, k1, k2).unwrap()));
            let (lo, hi) = if k1 < k2 { (k1, k2) } else { (k2, k1) };
            assert_abs_diff_eq!(rep.nu_minus, lo, epsilon = 1e-10);
            assert_abs_diff_eq!(rep.nu_plus, hi, epsilon = 1e-10);
        }
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(r_ent_threshold(0.5, 0.5).unwrap(), 0.0);
        assert_abs_diff_eq!(r_ent_threshold(1.0, 1.0).unwrap(), 0.5 * 2.0f64.ln(), epsilon = 1e-15);
        let expected = 0.5 * ((5.5 + 10.0f64.sqrt()) / 4.5).ln();
        assert_abs_diff_eq!(r_ent_threshold(1.5, 0.75).unwrap(), expected, epsilon = 1e-15);
        assert_abs_diff_eq!(r_ent_threshold(1.5, 0.75).unwrap(), 0.3274501502372585, epsilon = 1e-12);

        assert_eq!(r_qt_threshold(0.5, 0.5).unwrap(), 0.0);
        assert_abs_diff_eq!(r_qt_threshold(1.5, 0.75).unwrap(), 0.405465, epsilon = 5e-7);
        assert_abs_diff_eq!(
            r_qt_threshold(1.0, 1.0).unwrap(),
            r_ent_threshold(1.0, 1.0).unwrap(),
            epsilon = 1e-15
        );

        assert!(matches!(r_ent_threshold(0.4, 1.0), Err(Error::InvalidInput(_))));
        assert!(matches!(r_qt_threshold(1.0, 0.49), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn threshold_onsets() {
        for &(k1, k2) in &[(1.0, 1.0), (1.5, 0.75), (0.6, 2.8), (2.0, 0.5)] {
            let r_ent = r_ent_threshold(k1, k2).unwrap();
            let above = tmst(&TmstSpec::new(r_ent + 1e-4, k1, k2).unwrap());
            let below = tmst(&TmstSpec::new((r_ent - 1e-4).max(0.0), k1, k2).unwrap());
            assert!(ppt_nu_minus(&above) < 0.5);
            assert!(ppt_nu_minus(&below) >= 0.5 - crate::PHYSICAL_TOL);

            let r_qt = r_qt_threshold(k1, k2).unwrap();
            let (above, _) = classify(&tmst(&TmstSpec::new(r_qt + 1e-4, k1, k2).unwrap()));
            let (below, _) = classify(&tmst(&TmstSpec::new((r_qt - 1e-4).max(0.0), k1, k2).unwrap()));
            let (above, below) = (above.unwrap(), below.unwrap());
            assert!(above.epr_correlated && above.qt);
            assert!(!below.epr_correlated && !below.qt);
        }
    }

    #[test]
    fn single_mode_examples() {
        assert_eq!(single_mode_sth(0.0, 0.5).unwrap(), Matrix2::identity() * 0.5);
        let s = single_mode_sth(0.5, 0.5).unwrap();
        assert_abs_diff_eq!(s[(0, 0)], 0.183940, epsilon = 5e-7);
        assert_abs_diff_eq!(s[(1, 1)], 1.359141, epsilon = 5e-7);
        for r in [0.0, 0.3, 1.7] {
            assert_abs_diff_eq!(single_mode_sth(r, 1.3).unwrap().determinant(), 1.69, epsilon = 1e-12);
        }
        assert!(single_mode_sth(-0.1, 1.0).is_err());
        assert!(single_mode_sth(0.1, 0.2).is_err());
    }

    #[test]
    fn nonclassicality_examples() {
        assert_eq!(nonclassicality_threshold(0.5).unwrap(), 0.0);
        assert_abs_diff_eq!(nonclassicality_threshold(1.0).unwrap(), 0.346574, epsilon = 5e-7);
        for i in 0..=50 {
            let k = 0.5 + 0.05 * i as f64;
            assert_abs_diff_eq!(
                nonclassicality_threshold(k).unwrap(),
                r_ent_threshold(k, k).unwrap(),
                epsilon = 1e-12
            );
        }
        assert!(nonclassicality_threshold(0.3).is_err());
    }

    #[test]
    fn beam_splitter_is_symplectic() {
        assert!(symplectic_residual(&beam_splitter(0.37)) < 1e-15);
    }

    #[test]
    fn bs_blocks_match_closed_form() {
        for &(r, k, t) in &[(0.5, 0.5, 0.5), (0.3, 0.6, 0.25), (1.1, 2.0, 0.8)] {
            let v = bs_resource(&BsSpec::new(r, k, t).unwrap());
            let sigma = single_mode_sth(r, k).unwrap();
            let half = Matrix2::identity() * 0.5;
            let a = sigma * t + half * (1.0 - t);
            let b = sigma * (1.0 - t) + half * t;
            let c = (half - sigma) * (t * (1.0 - t)).sqrt();
            assert!((v.a() - a).amax() < 1e-12);
            assert!((v.b() - b).amax() < 1e-12);
            assert!((v.c() - c).amax() < 1e-12);
            assert!(validate(&v).physical);
        }
    }

    #[test]
    fn bs_half_example() {
        let v = bs_resource(&BsSpec::new(0.5, 0.5, 0.5).unwrap());
        let e = 1.0f64.exp();
        let a = Matrix2::new((1.0 / e + 1.0) / 4.0, 0.0, 0.0, (e + 1.0) / 4.0);
        assert!((v.a() - a).amax() < 1e-12);
        assert_eq!(v.a(), v.b());
        assert_abs_diff_eq!(v.a()[(0, 0)], 0.3419698602928606, epsilon = 1e-12);
        assert_abs_diff_eq!(v.a()[(1, 1)], 0.9295704571147613, epsilon = 1e-12);
        assert_abs_diff_eq!(v.c()[(0, 0)], (1.0 - 1.0 / e) / 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v.c()[(1, 1)], (1.0 - e) / 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v.c()[(1, 1)], -0.429570, epsilon = 1e-6);
    }

    #[test]
    fn bs_vacuum_input_is_separable() {
        let v = bs_resource(&BsSpec::new(0.0, 0.5, 0.5).unwrap());
        assert!((v.matrix() - CovMat::vacuum().matrix()).amax() < 1e-15);
        assert!(!classify(&v).0.unwrap().entangled);
    }

    #[test]
    fn nonclassical_input_entangles() {
        let spec = BsSpec::new(0.3, 0.6, 0.25).unwrap();
        assert!(spec.nonclassical_input());
        assert!(classify(&bs_resource(&spec)).0.unwrap().entangled);
    }

    #[test]
    fn spec_ranges() {
        assert!(BsSpec::new(0.5, 0.5, 0.0).is_err());
        assert!(BsSpec::new(0.5, 0.5, 1.0).is_err());
        assert!(BsSpec::new(0.5, 0.4, 0.5).is_err());
        assert!(TmstSpec::new(-0.1, 1.0, 1.0).is_err());
        assert!(TmstSpec::new(0.1, f64::NAN, 1.0).is_err());
    }
}
