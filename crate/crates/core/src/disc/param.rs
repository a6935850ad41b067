use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::{self, Poly};
use super::schur::{chain_product, eval_chain, RationalSchurFunction, SchurParameter, SchurStep};
use super::solver::{schur_reduction, validate_disc_data};
use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::pick::{certify_psd, pick_matrix_for, DEFAULT_PSD_TOL, DEFAULT_RANK_TOL};

pub const UNITARITY_SAMPLES: usize = 512;

/// `numerator / denominator`, coefficients ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalFunction {
    pub numerator: Poly,
    pub denominator: Poly,
}

impl RationalFunction {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        poly::eval(&self.numerator, z) / poly::eval(&self.denominator, z)
    }

    pub fn degree(&self) -> usize {
        let deg = |p: &Poly| poly::trim(p, 1e-14).len().saturating_sub(1);
        deg(&self.numerator).max(deg(&self.denominator))
    }
}

/// Coefficient matrix `[g_ij]` of the linear-fractional map
/// `h ↦ g11 + g12 g21 h (1 - g22 h)^{-1}` onto all solutions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParametrizationMatrix {
    pub g11: RationalFunction,
    pub g12: RationalFunction,
    pub g21: RationalFunction,
    pub g22: RationalFunction,
    pub nodes: Vec<Complex64>,
    pub steps: Vec<SchurStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitarityReport {
    pub samples: usize,
    /// `max ‖G(ζ)* G(ζ) - I‖_max` over the sampled circle.
    pub unitarity_deviation: f64,
    /// `max |g12(z_i)|` over the nodes.
    pub node_vanishing: f64,
}

impl ParametrizationMatrix {
    /// Build `[g_ij]` from the Schur parameters of strictly positive data.
    pub fn from_steps(steps: &[SchurStep]) -> Self {
        let theta = chain_product(steps);
        let one = Complex64::new(1.0, 0.0);
        let c = steps
            .iter()
            .map(|s| 1.0 - s.parameter.norm_sqr())
            .product::<f64>()
            .sqrt();
        let mut left: Poly = vec![Complex64::new(c, 0.0)];
        let mut right: Poly = vec![Complex64::new(c, 0.0)];
        for s in steps {
            left = poly::mul(&left, &[-s.node, one]);
            right = poly::mul(&right, &[one, -s.node.conj()]);
        }
        let den = theta[1][1].clone();
        let over = |p: Poly| RationalFunction {
            numerator: p,
            denominator: den.clone(),
        };
        ParametrizationMatrix {
            g11: over(theta[0][1].clone()),
            g12: over(left),
            g21: over(right),
            g22: over(poly::scale(&theta[1][0], -one)),
            nodes: steps.iter().map(|s| s.node).collect(),
            steps: steps.to_vec(),
        }
    }

    pub fn eval(&self, z: Complex64) -> [[Complex64; 2]; 2] {
        [
            [self.g11.eval(z), self.g12.eval(z)],
            [self.g21.eval(z), self.g22.eval(z)],
        ]
    }

    /// `φ_h(z)` from the linear-fractional formula.
    pub fn apply(&self, z: Complex64, h: Complex64) -> Complex64 {
        let [[g11, g12], [g21, g22]] = self.eval(z);
        g11 + g12 * g21 * h / (Complex64::new(1.0, 0.0) - g22 * h)
    }

    pub fn solution_value(&self, z: Complex64, h: &SchurParameter) -> Complex64 {
        self.apply(z, h.eval(z))
    }

    /// The same solution as an explicit chain with tail `h`.
    pub fn solution(&self, h: RationalSchurFunction) -> RationalSchurFunction {
        RationalSchurFunction::SchurChain {
            steps: self.steps.clone(),
            tail: Box::new(h),
        }
    }

    /// `φ_h` evaluated through the chain, valid for any parameter kind.
    pub fn chain_value(&self, z: Complex64, h: &SchurParameter) -> Complex64 {
        eval_chain(&self.steps, z, h.eval(z))
    }

    pub fn unitarity(&self, samples: usize) -> UnitarityReport {
        let mut dev = 0.0f64;
        for k in 0..samples {
            let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / samples as f64);
            let g = self.eval(z);
            for i in 0..2 {
                for j in 0..2 {
                    let gram: Complex64 = (0..2).map(|r| g[r][i].conj() * g[r][j]).sum();
                    let target = if i == j { 1.0 } else { 0.0 };
                    dev = dev.max((gram - target).norm());
                }
            }
        }
        let vanish = self.nodes.iter().map(|&z| self.g12.eval(z).norm()).fold(0.0f64, f64::max);
        UnitarityReport {
            samples,
            unitarity_deviation: dev,
            node_vanishing: vanish,
        }
    }
}

/// The parametrization of all solutions of strictly positive data.
pub fn parametrization_matrix(z: &[Complex64], w: &[Complex64]) -> Result<ParametrizationMatrix> {
    validate_disc_data(z, w)?;
    let cert = certify_psd(
        &pick_matrix_for(&KernelSpec::SzegoDisc, z, w)?,
        DEFAULT_PSD_TOL,
        DEFAULT_RANK_TOL,
    )?;
    if !cert.psd {
        return Err(Error::Precondition(format!(
            "Pick matrix is not positive semi-definite (min eigenvalue {:e}); no solutions",
            cert.min_eigenvalue
        )));
    }
    if cert.numerical_rank < z.len() {
        return Err(Error::Degenerate(format!(
            "Pick matrix has rank {} < {}; the solution is unique, use solve_disc",
            cert.numerical_rank,
            z.len()
        )));
    }
    let reduction = schur_reduction(z, w, cert.numerical_rank, DEFAULT_PSD_TOL)?;
    if reduction.terminal.is_some() {
        return Err(Error::Degenerate(
            "a Schur parameter reached the unit circle; the solution is unique, use solve_disc".into(),
        ));
    }
    Ok(ParametrizationMatrix::from_steps(&reduction.steps))
}

/// `φ_h = g11 + g12 g21 h (1 - g22 h)^{-1}`, returned in chain form.
pub fn parametrize_solutions(z: &[Complex64], w: &[Complex64], h: &RationalSchurFunction) -> Result<RationalSchurFunction> {
    Ok(parametrization_matrix(z, w)?.solution(h.clone()))
}
