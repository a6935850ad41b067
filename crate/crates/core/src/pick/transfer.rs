//! Cayley transfer between half-plane and disc Pick matrices.
//!
//! With `C(z) = (z - 1)/(z + 1)` one has
//! `1 - C(a) conj(C(b)) = 2 (a + b̄) / ((a + 1)(b̄ + 1))`, hence the disc Pick
//! matrix `Q` at the points `C(λ_i)` is the Schur product `P ⋄ R` of the
//! half-plane Pick matrix `P` with the rank-one matrix
//! `R = [(λ_i + 1)(conj(λ_j) + 1)/2]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::certificate::{certify_psd, PickCertificate, BORDERLINE_FACTOR};
use super::{pick_matrix_for, InterpolationProblem};
use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::linalg::{max_abs_entry, serde_matrix, CMatrix};
use crate::point::HalfPlanePoint;

/// `C(z) = (z - 1)/(z + 1)`, mapping `Re z > 0` onto the unit disc.
pub fn cayley(z: &HalfPlanePoint) -> Result<Complex64> {
    if z.re() <= 0.0 {
        return Err(Error::Domain(format!("Cayley transform needs Re(z) > 0, got {}", z.value())));
    }
    Ok(cayley_raw(z.value()))
}

pub(crate) fn cayley_raw(z: Complex64) -> Complex64 {
    (z - 1.0) / (z + 1.0)
}

/// `C^{-1}(w) = (1 + w)/(1 - w)` for `|w| < 1`.
pub fn inverse_cayley(w: Complex64) -> Result<Complex64> {
    if !(w.norm() < 1.0) {
        return Err(Error::Domain(format!("inverse Cayley transform needs |w| < 1, got {w}")));
    }
    Ok((1.0 + w) / (1.0 - w))
}

/// Entrywise product.
pub fn schur_product(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.shape() != b.shape() {
        return Err(Error::Dimension(format!(
            "Schur product of {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(a.component_mul(b))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferReport {
    /// Half-plane Pick matrix `[(1 - w_i w̄_j)/(λ_i + λ̄_j)]`.
    #[serde(with = "serde_matrix")]
    pub p: CMatrix,
    /// Disc Pick matrix at the Cayley images.
    #[serde(with = "serde_matrix")]
    pub q: CMatrix,
    /// `[(λ_i + 1)(λ̄_j + 1)/2]`.
    #[serde(with = "serde_matrix")]
    pub r: CMatrix,
    pub disc_nodes: Vec<Complex64>,
    /// `max |Q - P ⋄ R|`.
    pub factorization_residual: f64,
    pub p_certificate: PickCertificate,
    pub q_certificate: PickCertificate,
    pub r_certificate: PickCertificate,
    pub psd_agree: bool,
    pub rank_agree: bool,
    /// Either PSD verdict sits within the borderline band.
    pub borderline: bool,
}

/// Build `P`, `Q`, `R`, check `Q = P ⋄ R` and compare the verdicts.
pub fn lemma22_transfer(p: &InterpolationProblem) -> Result<TransferReport> {
    p.validate()?;
    if let Some(i) = p.nodes.iter().position(|z| z.re <= 0.0) {
        return Err(Error::Domain(format!("node {i} is not in the right half-plane")));
    }
    let n = p.len();
    let pm = pick_matrix_for(&KernelSpec::SzegoHalfPlane, &p.nodes, &p.targets)?;
    let disc_nodes: Vec<Complex64> = p.nodes.iter().map(|&z| cayley_raw(z)).collect();
    let qm = pick_matrix_for(&KernelSpec::SzegoDisc, &disc_nodes, &p.targets)?;
    let r = CMatrix::from_fn(n, n, |i, j| (p.nodes[i] + 1.0) * (p.nodes[j].conj() + 1.0) * 0.5);
    let residual = max_abs_entry(&(&qm - schur_product(&pm, &r)?));

    let pc = certify_psd(&pm, p.psd_tol, p.rank_tol)?;
    let qc = certify_psd(&qm, p.psd_tol, p.rank_tol)?;
    let rc = certify_psd(&r, p.psd_tol, p.rank_tol)?;
    let band = |c: &PickCertificate| {
        c.min_eigenvalue.abs() <= BORDERLINE_FACTOR * c.psd_tol * c.spectral_norm.max(1.0)
    };
    Ok(TransferReport {
        psd_agree: pc.psd == qc.psd,
        rank_agree: pc.numerical_rank == qc.numerical_rank,
        borderline: band(&pc) || band(&qc),
        factorization_residual: residual,
        p: pm,
        q: qm,
        r,
        disc_nodes,
        p_certificate: pc,
        q_certificate: qc,
        r_certificate: rc,
    })
}
