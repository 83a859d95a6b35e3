//! The two-mode covariance matrix and its validity checks.
//!
//! Quadratures are ordered `(x_a, p_a, x_b, p_b)` and the vacuum has
//! covariance `I/2`. A covariance matrix is physical when it is symmetric,
//! positive definite and satisfies `V + (i/2)Ω ≥ 0`, which for a positive
//! definite `V` is equivalent to both symplectic eigenvalues being `≥ 1/2`.

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symplectic::omega;
use crate::{PHYSICAL_TOL, SYMMETRY_TOL};

/// Value of the `convention` field in covariance JSON files.
pub const CONVENTION: &str = "xpxp-vac-half";

/// A 4×4 real two-mode covariance matrix.
///
/// Construction only rejects non-finite entries; symmetry and physicality
/// are reported by [`validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovMat(Matrix4<f64>);

impl CovMat {
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("covariance matrix has non-finite entries".into()));
        }
        Ok(Self(m))
    }

    pub fn from_rows(rows: [[f64; 4]; 4]) -> Result<Self> {
        Self::new(Matrix4::from_fn(|i, j| rows[i][j]))
    }

    pub fn from_blocks(a: &Matrix2<f64>, b: &Matrix2<f64>, c: &Matrix2<f64>) -> Result<Self> {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(b);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(c);
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(&c.transpose());
        Self::new(m)
    }

    /// Two-mode vacuum, `I/2`.
    pub fn vacuum() -> Self {
        Self(Matrix4::identity() * 0.5)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn to_rows(&self) -> [[f64; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[(i, j)]))
    }

    /// Mode-a block `A`.
    pub fn a(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 0).into_owned()
    }

    /// Mode-b block `B`.
    pub fn b(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(2, 2).into_owned()
    }

    /// Correlation block `C` (rows mode a, columns mode b).
    pub fn c(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 2).into_owned()
    }

    /// `S V Sᵀ`.
    pub fn conjugate(&self, s: &Matrix4<f64>) -> Self {
        Self(s * self.0 * s.transpose())
    }

    /// The two local symplectic invariants and the global one:
    /// `(det A, det B, det C, det V)`.
    pub fn invariants(&self) -> [f64; 4] {
        [self.a().determinant(), self.b().determinant(), self.c().determinant(), self.0.determinant()]
    }

    pub fn is_symmetric(&self) -> bool {
        (self.0 - self.0.transpose()).amax() <= SYMMETRY_TOL
    }

    fn symmetrized(&self) -> Matrix4<f64> {
        (self.0 + self.0.transpose()) * 0.5
    }

    /// Parses the covariance JSON schema, rejecting other conventions.
    pub fn from_json(text: &str) -> Result<Self> {
        let schema = |field: &str, message: String| Error::Schema { field: field.into(), message };
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| schema("<root>", e.to_string()))?;
        let convention = value
            .get("convention")
            .ok_or_else(|| schema("convention", "missing field".into()))?
            .as_str()
            .ok_or_else(|| schema("convention", "expected a string".into()))?;
        let rows = value
            .get("matrix")
            .ok_or_else(|| schema("matrix", "missing field".into()))?
            .as_array()
            .filter(|rows| rows.len() == 4)
            .ok_or_else(|| schema("matrix", "expected an array of 4 rows".into()))?;
        let mut matrix = [[0.0; 4]; 4];
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .filter(|row| row.len() == 4)
                .ok_or_else(|| schema("matrix", format!("row {i} is not an array of 4 numbers")))?;
            for (j, x) in row.iter().enumerate() {
                matrix[i][j] = x
                    .as_f64()
                    .ok_or_else(|| schema("matrix", format!("entry ({i}, {j}) is not a number")))?;
            }
        }
        CovMatFile { convention: convention.to_owned(), matrix }.into_cov_mat()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CovMatFile::from(self)).expect("covariance JSON serialization")
    }
}

/// On-disk representation: `{"convention": "xpxp-vac-half", "matrix": [[..];4]}`.
#[derive(Debug, Clone, Serialize)]
pub struct CovMatFile {
    pub convention: String,
    #[serde(serialize_with = "crate::fmt::serialize_sig17_matrix")]
    pub matrix: [[f64; 4]; 4],
}

impl CovMatFile {
    pub fn into_cov_mat(self) -> Result<CovMat> {
        if self.convention != CONVENTION {
            return Err(Error::Schema {
                field: "convention".into(),
                message: format!("expected \"{CONVENTION}\", found \"{}\"", self.convention),
            });
        }
        CovMat::from_rows(self.matrix)
            .map_err(|e| Error::Schema { field: "matrix".into(), message: e.to_string() })
    }
}

impl From<&CovMat> for CovMatFile {
    fn from(v: &CovMat) -> Self {
        Self { convention: CONVENTION.to_owned(), matrix: v.to_rows() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidityReport {
    pub symmetric: bool,
    pub positive_definite: bool,
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub nu_minus: f64,
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub nu_plus: f64,
    pub physical: bool,
}

/// Checks symmetry, positivity and the uncertainty relation.
pub fn validate(v: &CovMat) -> ValidityReport {
    let symmetric = v.is_symmetric();
    let sym = v.symmetrized();
    let eig = SymmetricEigen::new(sym);
    let positive_definite = eig.eigenvalues.iter().all(|&l| l > 0.0);
    let (nu_minus, nu_plus) =
        if positive_definite { williamson_spectrum(&eig) } else { char_poly_spectrum(&sym) };
    ValidityReport {
        symmetric,
        positive_definite,
        nu_minus,
        nu_plus,
        physical: symmetric && positive_definite && nu_minus >= 0.5 - PHYSICAL_TOL,
    }
}

/// Symplectic eigenvalues `(ν₋, ν₊)` of a symmetric positive-definite matrix.
///
/// `K = V^{1/2} Ω V^{1/2}` is antisymmetric with eigenvalues `±iν`, so the
/// eigenvalues of the symmetric `KᵀK` are `ν₋², ν₋², ν₊², ν₊²`. Working with
/// `KᵀK` keeps degenerate spectra (pure states) accurate to rounding.
fn williamson_spectrum(eig: &SymmetricEigen<f64, nalgebra::U4>) -> (f64, f64) {
    let sqrt_diag = Matrix4::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
    let root = eig.eigenvectors * sqrt_diag * eig.eigenvectors.transpose();
    let k = root * omega() * root;
    let ktk = k.transpose() * k;
    let mut sq: Vec<f64> =
        SymmetricEigen::new((ktk + ktk.transpose()) * 0.5).eigenvalues.iter().copied().collect();
    sq.sort_by(f64::total_cmp);
    let lo = (0.5 * (sq[0] + sq[1])).max(0.0).sqrt();
    let hi = (0.5 * (sq[2] + sq[3])).max(0.0).sqrt();
    (lo, hi)
}

/// Moduli of the eigenvalues of `ΩV` from its characteristic polynomial
/// `λ⁴ + Δλ² + det V` (valid for symmetric `V`). Used for indefinite input,
/// where the result is only reported, never trusted for physicality.
fn char_poly_spectrum(sym: &Matrix4<f64>) -> (f64, f64) {
    let v = CovMat(*sym);
    let [da, db, dc, dv] = v.invariants();
    let delta = da + db + 2.0 * dc;
    let disc = delta * delta - 4.0 * dv;
    let (lo, hi) = if disc >= 0.0 {
        let root = disc.sqrt();
        let x1 = (0.5 * (delta - root)).abs().sqrt();
        let x2 = (0.5 * (delta + root)).abs().sqrt();
        (x1.min(x2), x1.max(x2))
    } else {
        let m = dv.abs().sqrt().sqrt();
        (m, m)
    };
    (lo, hi)
}

/// Partial transposition on mode b: `p_b ↦ −p_b`, i.e. `ΛVΛ` with `Λ = diag(1, 1, 1, −1)`.
pub fn partial_transpose(v: &CovMat) -> CovMat {
    let lambda = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 1.0, -1.0));
    CovMat(lambda * v.0 * lambda)
}

pub(crate) fn ensure_physical(v: &CovMat) -> Result<ValidityReport> {
    let report = validate(v);
    if report.physical {
        Ok(report)
    } else {
        Err(Error::PreconditionFailed(format!(
            "covariance matrix is not physical (symmetric: {}, positive definite: {}, nu_minus: {})",
            report.symmetric, report.positive_definite, report.nu_minus
        )))
    }
}
