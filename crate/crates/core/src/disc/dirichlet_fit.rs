use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::param::parametrization_matrix;
use super::schur::SchurParameter;
use crate::error::{Error, Result};
use crate::pick::transfer::cayley_raw;
use crate::pick::{theorem21_check, InterpolationProblem};

/// Sampling of the vertical line `Re s = sigma0` used for the fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirichletFitConfig {
    pub sigma0: f64,
    /// Samples are spread uniformly over `Im s ∈ [-height, height]`.
    pub height: f64,
    pub samples: usize,
}

impl Default for DirichletFitConfig {
    fn default() -> Self {
        Self {
            sigma0: 1.0,
            height: 20.0,
            samples: 256,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirichletFit {
    /// Position of the parameter in the input family.
    pub index: usize,
    pub label: String,
    /// Root mean square of the least-squares residual over the samples.
    pub residual_rms: f64,
    /// `‖A c - b‖ / ‖b‖`.
    pub relative_residual: f64,
    /// Best-fit coefficients of `1, 2^{-s}, …, N^{-s}`.
    pub coefficients: Vec<Complex64>,
}

/// Distance of each solution `φ_h` from length-`n` Dirichlet polynomials,
/// measured by least squares on a vertical line. Ranked by residual.
///
/// This is exploratory: a small residual is not a proof that a Dirichlet
/// series solution exists.
pub fn search_dirichlet_solution(
    p: &InterpolationProblem,
    h_family: &[SchurParameter],
    n: usize,
    cfg: &DirichletFitConfig,
) -> Result<Vec<DirichletFit>> {
    if n == 0 {
        return Err(Error::InvalidInput("Dirichlet polynomial length must be positive".into()));
    }
    if !(cfg.sigma0 > 0.5) || !(cfg.height > 0.0) || cfg.samples < n {
        return Err(Error::InvalidInput(format!(
            "need sigma0 > 1/2, height > 0 and at least {n} samples, got {cfg:?}"
        )));
    }
    let report = theorem21_check(p)?;
    if !report.necessary_conditions_hold {
        return Err(Error::Precondition(
            "both Pick conditions (with full rank) must hold before searching".into(),
        ));
    }
    if h_family.is_empty() {
        return Ok(Vec::new());
    }
    let images: Vec<Complex64> = p.nodes.iter().map(|&s| cayley_raw(s)).collect();
    let g = parametrization_matrix(&images, &p.targets)?;

    let m = cfg.samples;
    let points: Vec<Complex64> = (0..m)
        .map(|k| {
            let t = if m == 1 {
                0.0
            } else {
                -cfg.height + 2.0 * cfg.height * k as f64 / (m - 1) as f64
            };
            Complex64::new(cfg.sigma0, t)
        })
        .collect();
    let a = DMatrix::from_fn(m, n, |i, j| Complex64::new((j + 1) as f64, 0.0).powc(-points[i]));
    let svd = a.clone().svd(true, true);

    let mut out = Vec::with_capacity(h_family.len());
    for (index, h) in h_family.iter().enumerate() {
        let b = DVector::from_iterator(m, points.iter().map(|&s| g.chain_value(cayley_raw(s), h)));
        let x = svd
            .solve(&b, 1e-14)
            .map_err(|e| Error::IllConditioned(format!("least-squares solve failed: {e}")))?;
        let r = (&a * &x - &b).norm();
        let bn = b.norm();
        out.push(DirichletFit {
            index,
            label: h.label(),
            residual_rms: r / (m as f64).sqrt(),
            relative_residual: if bn > 0.0 { r / bn } else { r },
            coefficients: x.iter().copied().collect(),
        });
    }
    out.sort_by(|x, y| x.residual_rms.total_cmp(&y.residual_rms).then(x.index.cmp(&y.index)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::param::parametrization_matrix;
    use crate::kernels::KernelSpec;

    #[test]
    fn empty_family_gives_empty_report() {
        let nodes = [1.0, 1.5, 3.0];
        let targets: Vec<f64> = nodes.iter().map(|s: &f64| 0.5 * 2f64.powf(-s)).collect();
        let q = InterpolationProblem::real(&nodes, &targets, KernelSpec::zeta()).unwrap();
        let cfg = DirichletFitConfig::default();
        assert!(search_dirichlet_solution(&q, &[], 4, &cfg).unwrap().is_empty());
    }

    #[test]
    fn generating_parameter_is_a_dirichlet_polynomial() {
        let c = Complex64::new(0.0, 0.5);
        let nodes = vec![Complex64::new(1.0, 0.0), Complex64::new(1.5, 1.0), Complex64::new(3.0, -2.0)];
        let targets: Vec<Complex64> = nodes.iter().map(|&s| c * Complex64::new(2.0, 0.0).powc(-s)).collect();
        let p = InterpolationProblem::new(nodes.clone(), targets.clone(), KernelSpec::zeta()).unwrap();
        let images: Vec<Complex64> = nodes.iter().map(|&s| cayley_raw(s)).collect();
        let g = parametrization_matrix(&images, &targets).unwrap();
        let generating = SchurParameter::tail_of(&g.steps, "generator", move |z| {
            let s = (1.0 + z) / (1.0 - z);
            c * Complex64::new(2.0, 0.0).powc(-s)
        });
        let family = vec![SchurParameter::constant(Complex64::new(0.3, 0.0)), generating];
        let cfg = DirichletFitConfig {
            sigma0: 2.0,
            ..Default::default()
        };
        let fits = search_dirichlet_solution(&p, &family, 4, &cfg).unwrap();
        assert_eq!(fits[0].label, "generator");
        assert!(fits[0].residual_rms <= 1e-6, "{}", fits[0].residual_rms);
        assert!((fits[0].coefficients[1] - c).norm() < 1e-6);
        assert!(fits[1].residual_rms > fits[0].residual_rms);
    }
}
