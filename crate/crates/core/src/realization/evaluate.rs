use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::lurking::RealizationModel;
use super::t_lambda::{build_t_lambda, TLambdaModel};
use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::pick::{certify_psd, pick_matrix_for, PickCertificate, DEFAULT_RANK_TOL};
use crate::point::HalfPlanePoint;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealizationValue {
    pub value: Complex64,
    /// `‖T^{-1}‖ · ‖D‖`, certified below 1 before solving.
    pub neumann_bound: f64,
}

/// `a + <(T_{s̄} ⊗ I - D)^{-1} γ, β>` with `T_{s̄}` taken from `t_models`.
pub fn evaluate_realization(model: &RealizationModel, t_models: &[TLambdaModel], s: &HalfPlanePoint) -> Result<Complex64> {
    let target = s.value().conj();
    let t = t_models
        .iter()
        .find(|t| (t.lambda.value() - target).norm() <= 1e-14 * target.norm().max(1.0))
        .ok_or_else(|| Error::InvalidInput(format!("no T_lambda model for lambda = {target}")))?;
    evaluate_with(model, t).map(|v| v.value)
}

/// Build `T_{s̄}` with the given `α` and evaluate.
pub fn evaluate_at(model: &RealizationModel, s: &HalfPlanePoint, alpha: Complex64) -> Result<RealizationValue> {
    if model.r == 0 {
        return Ok(RealizationValue {
            value: model.a,
            neumann_bound: 0.0,
        });
    }
    let t = build_t_lambda(&s.conj(), alpha, model.n)?;
    evaluate_with(model, &t)
}

/// Solve `(T ⊗ I - D) z = γ` by the Woodbury identity on the factored `D`.
pub fn evaluate_with(model: &RealizationModel, t: &TLambdaModel) -> Result<RealizationValue> {
    if model.r == 0 {
        return Ok(RealizationValue {
            value: model.a,
            neumann_bound: 0.0,
        });
    }
    if t.n != model.n {
        return Err(Error::Dimension(format!("T_lambda has N = {} but the model has N = {}", t.n, model.n)));
    }
    let bound = t.inverse_norm_bound * model.d_norm();
    if !(bound < 1.0) {
        return Err(Error::NotInvertible { bound });
    }
    let r = model.r;
    let q = model.d_left.ncols();
    let u = &model.d_left * Complex64::new(model.d_scale, 0.0);
    let ainv_gamma = t.apply_inverse_kron(&model.gamma, r);
    let mut ainv_u = DMatrix::<Complex64>::zeros(u.nrows(), q);
    for j in 0..q {
        let col: Vec<Complex64> = u.column(j).iter().copied().collect();
        let image = t.apply_inverse_kron(&col, r);
        ainv_u.column_mut(j).copy_from_slice(&image);
    }
    let v = &model.d_right;
    let k = DMatrix::<Complex64>::identity(q, q) - v.adjoint() * &ainv_u;
    let rhs = v.adjoint() * nalgebra::DVector::from_column_slice(&ainv_gamma);
    let y = k
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::IllConditioned("Woodbury capacitance matrix is singular".into()))?;
    let correction = &ainv_u * y;
    let value = model.a
        + ainv_gamma
            .iter()
            .zip(correction.iter())
            .zip(&model.beta)
            .map(|((g, c), b)| (g + c) * b.conj())
            .sum::<Complex64>();
    Ok(RealizationValue {
        value,
        neumann_bound: bound,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub grid: Vec<HalfPlanePoint>,
    pub values: Vec<Complex64>,
    pub sigma_max: f64,
    pub contraction_ok: bool,
    /// `(1 - φφ̄) ζ` on the grid.
    pub certificate: Option<PickCertificate>,
    /// The reconstructed function passes every check, which certifies
    /// `‖φ‖ <= 1` as a multiplier on the sampled grid.
    pub passes: bool,
    pub failure: Option<String>,
}

/// Reconstruct `φ` on `grid` and certify that `(1 - φφ̄)ζ` is PSD there.
pub fn verify_direction_ii_to_i(
    model: &RealizationModel,
    grid: &[HalfPlanePoint],
    alpha: Complex64,
    psd_tol: f64,
) -> Result<VerificationReport> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("verification grid is empty".into()));
    }
    if let Some(p) = grid.iter().find(|p| p.re() <= 0.5) {
        return Err(Error::Domain(format!("grid point {} is not in Re > 1/2", p.value())));
    }
    let sigma_max = model.sigma_max();
    let contraction_ok = sigma_max <= 1.0 + 1e-8;
    let mut report = VerificationReport {
        grid: grid.to_vec(),
        values: Vec::new(),
        sigma_max,
        contraction_ok,
        certificate: None,
        passes: false,
        failure: None,
    };
    if !contraction_ok {
        report.failure = Some(format!("block matrix is not a contraction: sigma_max = {sigma_max}"));
    }
    for p in grid {
        match evaluate_at(model, p, alpha) {
            Ok(v) => report.values.push(v.value),
            Err(e @ (Error::NotInvertible { .. } | Error::IllConditioned(_))) => {
                report.failure.get_or_insert_with(|| format!("evaluation at {} failed: {e}", p.value()));
                return Ok(report);
            }
            Err(e) => return Err(e),
        }
    }
    let nodes: Vec<Complex64> = grid.iter().map(|p| p.value()).collect();
    let m = pick_matrix_for(&KernelSpec::zeta(), &nodes, &report.values)?;
    let cert = certify_psd(&m, psd_tol, DEFAULT_RANK_TOL)?;
    if !cert.psd {
        report
            .failure
            .get_or_insert_with(|| format!("reconstructed Gram has min eigenvalue {:e}", cert.min_eigenvalue));
    }
    report.passes = report.failure.is_none();
    report.certificate = Some(cert);
    Ok(report)
}
