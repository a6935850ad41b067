use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_asymmetry, hermitian_eigen, max_abs_entry, serde_matrix, serde_vector, CMatrix, CVector};
use crate::CONJUGATION_CONVENTION;

pub const DEFAULT_PSD_TOL: f64 = 1e-10;
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Factor of the tolerance inside which a verdict is reported as inconclusive.
pub const BORDERLINE_FACTOR: f64 = 10.0;

/// Eigenvalue certificate for a claim `M ⪰ 0` or `M ⋡ 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PickCertificate {
    #[serde(with = "serde_matrix")]
    pub matrix: CMatrix,
    /// All eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
    pub spectral_norm: f64,
    pub numerical_rank: usize,
    pub psd: bool,
    /// Unit eigenvector of the minimum eigenvalue.
    #[serde(with = "serde_vector")]
    pub witness: CVector,
    /// `λ_min / ‖M‖`: signed distance of the deciding eigenvalue from zero in
    /// units of the spectral norm.
    pub relative_margin: f64,
    /// The deciding eigenvalue lies within `10 · psd_tol · max(1, ‖M‖)` of 0.
    pub inconclusive: bool,
    pub psd_tol: f64,
    pub rank_tol: f64,
    pub convention: String,
}

impl PickCertificate {
    /// Threshold `-psd_tol · max(1, ‖M‖)` below which `M` is not PSD.
    pub fn threshold(&self) -> f64 {
        -self.psd_tol * self.spectral_norm.max(1.0)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `w* M w`, which equals `min_eigenvalue` up to rounding.
    pub fn witness_value(&self) -> f64 {
        crate::linalg::quadratic_form(&self.matrix, &self.witness).re
    }

    /// The verdict is PSD and clears zero by `margin` relative units.
    pub fn psd_with_margin(&self, margin: f64) -> bool {
        self.psd && self.min_eigenvalue >= margin * self.spectral_norm.max(1.0)
    }

    /// The verdict is non-PSD and falls below zero by `margin` relative units.
    pub fn not_psd_with_margin(&self, margin: f64) -> bool {
        !self.psd && self.min_eigenvalue <= -margin * self.spectral_norm.max(1.0)
    }
}

/// Decide positive semi-definiteness of a Hermitian matrix.
///
/// `psd ⇔ λ_min ≥ -psd_tol · max(1, ‖M‖)`; the numerical rank counts the
/// eigenvalues with `|λ| > rank_tol · max |λ|`.
pub fn certify_psd(m: &CMatrix, psd_tol: f64, rank_tol: f64) -> Result<PickCertificate> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::Dimension(format!(
            "expected a non-empty square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if !(psd_tol > 0.0) || !(rank_tol > 0.0) {
        return Err(Error::InvalidInput("tolerances must be positive".into()));
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let asym = hermitian_asymmetry(m);
    if asym > 1e-12 * max_abs_entry(m).max(1.0) {
        return Err(Error::NotHermitian { asymmetry: asym });
    }
    let (values, vectors) = hermitian_eigen(m);
    let min = values[0];
    let norm = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let scale = norm.max(1.0);
    let psd = min >= -psd_tol * scale;
    let rank = values.iter().filter(|v| v.abs() > rank_tol * norm).count();
    let witness = vectors.column(0).into_owned();
    Ok(PickCertificate {
        matrix: m.clone(),
        relative_margin: if norm > 0.0 { min / norm } else { 0.0 },
        inconclusive: min.abs() <= BORDERLINE_FACTOR * psd_tol * scale,
        eigenvalues: values,
        min_eigenvalue: min,
        spectral_norm: norm,
        numerical_rank: rank,
        psd,
        witness,
        psd_tol,
        rank_tol,
        convention: CONJUGATION_CONVENTION.to_string(),
    })
}
