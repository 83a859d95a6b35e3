//! Seeded random physical two-mode states for property checks.

use nalgebra::{Matrix2, Matrix4};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canonical::CanonicalParams;
use crate::covariance::CovMat;
use crate::resources::{tmst, TmstSpec};
use crate::symplectic::{direct_sum, rotation, squeezer};

/// Draws physical covariance matrices that are physical by construction:
/// a two-mode squeezed thermal state with `r ∈ [0, 1.5]`, `k₁, k₂ ∈ [0.5, 3]`,
/// conjugated by random local rotations and squeezers with log-squeeze in
/// `[−0.5, 0.5]`.
#[derive(Debug, Clone)]
pub struct StateSampler {
    rng: ChaCha8Rng,
}

impl StateSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn tmst_spec(&mut self) -> TmstSpec {
        let r = self.uniform(0.0, 1.5);
        let k1 = self.uniform(0.5, 3.0);
        let k2 = self.uniform(0.5, 3.0);
        TmstSpec::new(r, k1, k2).expect("sampled ranges are valid")
    }

    /// Rotation, squeeze, rotation on one mode.
    pub fn local_mode_symplectic(&mut self) -> Matrix2<f64> {
        let tau = std::f64::consts::TAU;
        let outer = self.uniform(0.0, tau);
        let sq = self.uniform(-0.5, 0.5);
        let inner = self.uniform(0.0, tau);
        rotation(outer) * squeezer(sq) * rotation(inner)
    }

    pub fn local_symplectic(&mut self) -> Matrix4<f64> {
        let a = self.local_mode_symplectic();
        let b = self.local_mode_symplectic();
        direct_sum(&a, &b)
    }

    pub fn physical(&mut self) -> CovMat {
        let spec = self.tmst_spec();
        let s = self.local_symplectic();
        tmst(&spec).conjugate(&s)
    }

    /// Product of two locally transformed thermal states.
    pub fn separable(&mut self) -> CovMat {
        let k1 = self.uniform(0.5, 3.0);
        let k2 = self.uniform(0.5, 3.0);
        let s = self.local_symplectic();
        let thermal = Matrix4::from_diagonal(&nalgebra::Vector4::new(k1, k1, k2, k2));
        CovMat::new(thermal).expect("finite").conjugate(&s)
    }

    /// Standard-form parameters of a sampled two-mode squeezed thermal state,
    /// which always have `c₁ = c₂`.
    pub fn restricted_params(&mut self) -> CanonicalParams {
        let v = tmst(&self.tmst_spec());
        CanonicalParams::new(v.matrix()[(0, 0)], v.matrix()[(2, 2)], v.matrix()[(0, 2)], -v.matrix()[(1, 3)])
    }

    /// Symmetric standard-form parameters (`η = ζ`, `c₁ = c₂`), physical.
    pub fn symmetric_params(&mut self) -> CanonicalParams {
        let r = self.uniform(0.0, 1.5);
        let k = self.uniform(0.5, 3.0);
        let v = tmst(&TmstSpec::new(r, k, k).expect("valid"));
        CanonicalParams::new(v.matrix()[(0, 0)], v.matrix()[(2, 2)], v.matrix()[(0, 2)], -v.matrix()[(1, 3)])
    }
}
