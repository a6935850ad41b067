//! Certificates for the two-point failure of the Pick property for powers of
//! the Szegö-Dirichlet kernel, and for the pair of necessary conditions on
//! Dirichlet-series interpolants.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::certificate::{certify_psd, PickCertificate, DEFAULT_PSD_TOL, DEFAULT_RANK_TOL};
use super::{pick_matrix_for, InterpolationProblem};
use crate::arith::zeta;
use crate::error::{Error, Result};
use crate::kernels::KernelSpec;

const THEOREM12_ZETA_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem12Report {
    pub power: u32,
    pub w2: Complex64,
    /// Open interval of admissible `|w_2|`: `(1/3, sqrt(1 - ζ(3)²/(ζ(2)ζ(4))))`.
    pub window: (f64, f64),
    pub zeta_certificate: PickCertificate,
    pub szego_certificate: PickCertificate,
    /// `ζ(2)^m (1 - |w_2|²) ζ(4)^m - ζ(3)^{2m}`.
    pub zeta_determinant: f64,
    /// `(1 - |w_2|²)/8 - 1/9`.
    pub szego_determinant: f64,
    /// `ζ(3)^{2m} (ζ(2)ζ(4)/ζ(3)² · (1 - |w_2|²) - 1)`.
    pub zeta_determinant_lower_bound: f64,
    /// Positive diagonal and positive determinant on the ζ^m side.
    pub zeta_psd_by_determinant: bool,
    /// Both conditions hold: ζ^m side PSD, Szegö side not PSD.
    pub holds: bool,
    pub inconclusive: bool,
}

/// `(1/3, sqrt(1 - ζ(3)²/(ζ(2)ζ(4))))`.
pub fn theorem12_window() -> Result<(f64, f64)> {
    let z = |x: f64| zeta(Complex64::new(x, 0.0), THEOREM12_ZETA_TOL).map(|v| v.re);
    let ratio = z(3.0)?.powi(2) / (z(2.0)? * z(4.0)?);
    Ok((1.0 / 3.0, (1.0 - ratio).sqrt()))
}

/// Check, at `λ = (1, 2)` and `w = (0, w_2)`, that the ζ^m Pick matrix is PSD
/// while the half-plane Szegö Pick matrix is not.
pub fn theorem12_certificate(power: u32, w2: Complex64) -> Result<Theorem12Report> {
    if power == 0 {
        return Err(Error::InvalidInput("power must be at least 1".into()));
    }
    let window = theorem12_window()?;
    let r = w2.norm();
    if !(r > window.0 && r < window.1) {
        return Err(Error::Precondition(format!(
            "|w2| = {r} must lie in the open window ({:.6}, {:.6})",
            window.0, window.1
        )));
    }
    let nodes = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)];
    let targets = [Complex64::new(0.0, 0.0), w2];
    let kernel = KernelSpec::SzegoDirichlet { power };
    let zm = pick_matrix_for(&kernel, &nodes, &targets)?;
    let sm = pick_matrix_for(&KernelSpec::SzegoHalfPlane, &nodes, &targets)?;
    let zc = certify_psd(&zm, DEFAULT_PSD_TOL, DEFAULT_RANK_TOL)?;
    let sc = certify_psd(&sm, DEFAULT_PSD_TOL, DEFAULT_RANK_TOL)?;

    let det = |m: &crate::linalg::CMatrix| (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
    let z = |x: f64| zeta(Complex64::new(x, 0.0), THEOREM12_ZETA_TOL).map(|v| v.re);
    let (z2, z3, z4) = (z(2.0)?, z(3.0)?, z(4.0)?);
    let m = power as i32;
    let lower = z3.powi(2 * m) * (z2 * z4 / (z3 * z3) * (1.0 - r * r) - 1.0);
    let zeta_det = det(&zm);
    let zeta_by_det = zm[(0, 0)].re > 0.0 && zm[(1, 1)].re > 0.0 && zeta_det > 0.0;
    Ok(Theorem12Report {
        power,
        w2,
        window,
        zeta_determinant: zeta_det,
        szego_determinant: det(&sm),
        zeta_determinant_lower_bound: lower,
        zeta_psd_by_determinant: zeta_by_det,
        holds: zeta_by_det && zc.psd && !sc.psd,
        inconclusive: zc.inconclusive || sc.inconclusive,
        zeta_certificate: zc,
        szego_certificate: sc,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem21Report {
    /// `[(1 - w_i w̄_j) ζ(λ_i + λ̄_j)]`.
    pub cond_i: PickCertificate,
    /// `[(1 - w_i w̄_j)/(λ_i + λ̄_j)]`.
    pub cond_ii: PickCertificate,
    /// `cond_ii` has numerical rank `n`.
    pub rank_full: bool,
    /// All necessary conditions for a Dirichlet-series interpolant hold. This
    /// is not a sufficient condition.
    pub necessary_conditions_hold: bool,
}

/// Evaluate the two necessary conditions for a contractive Dirichlet-series
/// interpolant on `Re > 0` at nodes in `Re > 1/2`.
pub fn theorem21_check(p: &InterpolationProblem) -> Result<Theorem21Report> {
    p.validate()?;
    p.require_open_disc_targets()?;
    if let Some(i) = p.nodes.iter().position(|z| z.re <= 0.5) {
        return Err(Error::Domain(format!("node {i} = {} is not in Re > 1/2", p.nodes[i])));
    }
    let mi = pick_matrix_for(&KernelSpec::zeta(), &p.nodes, &p.targets)?;
    let mii = pick_matrix_for(&KernelSpec::SzegoHalfPlane, &p.nodes, &p.targets)?;
    let cond_i = certify_psd(&mi, p.psd_tol, p.rank_tol)?;
    let cond_ii = certify_psd(&mii, p.psd_tol, p.rank_tol)?;
    let rank_full = cond_ii.numerical_rank == p.len();
    Ok(Theorem21Report {
        necessary_conditions_hold: cond_i.psd && cond_ii.psd && rank_full,
        rank_full,
        cond_i,
        cond_ii,
    })
}
