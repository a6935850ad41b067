use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{CoefficientSeries, TailBound};
use crate::error::{Error, Result};
use crate::kernels::{check_distinct, KernelSpec};
use crate::linalg::{hermitian_eigen, max_abs_entry, CMatrix};
use crate::pick::pick_matrix_for;
use crate::point::HalfPlanePoint;

/// Slack allowed on `Σ |c_n| <= 1`.
const NORM_SLACK: f64 = 1e-12;

/// A Dirichlet polynomial `Σ c_n n^{-s}` certified contractive on `Re s > 0`
/// by `Σ |c_n| <= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestMultiplier {
    pub coeffs: CoefficientSeries,
    /// `Σ |c_n|`, an upper bound for the sup norm.
    pub declared_norm: f64,
}

impl TestMultiplier {
    pub fn new(coeffs: CoefficientSeries) -> Result<Self> {
        if coeffs.tail != TailBound::Finite {
            return Err(Error::InvalidInput("test multipliers must be finite Dirichlet polynomials".into()));
        }
        let norm: f64 = coeffs.coeffs().iter().map(|c| c.norm()).sum();
        if !norm.is_finite() || norm > 1.0 + NORM_SLACK {
            return Err(Error::Hypothesis(format!(
                "coefficient sum {norm} exceeds 1; no contractivity certificate"
            )));
        }
        Ok(Self {
            coeffs,
            declared_norm: norm,
        })
    }

    /// `c · k^{-s}`.
    pub fn monomial(c: Complex64, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("Dirichlet indices start at 1".into()));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k];
        coeffs[k - 1] = c;
        Self::new(CoefficientSeries::new(format!("{c}*{k}^-s"), coeffs, TailBound::Finite)?)
    }

    pub fn constant(c: Complex64) -> Result<Self> {
        Self::monomial(c, 1)
    }

    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        if !(s.re > 0.0) || !s.im.is_finite() {
            return Err(Error::Domain(format!("multiplier evaluation needs Re(s) > 0, got {s}")));
        }
        Ok(self.coeffs.partial_sum(s))
    }
}

/// `G[i][j] = (1 - φ(s_i) conj(φ(s_j))) ζ(s_i + conj(s_j))`.
pub fn kappa_phi_gram(phi: &TestMultiplier, points: &[HalfPlanePoint]) -> Result<CMatrix> {
    let (nodes, values) = sample(phi, points)?;
    pick_matrix_for(&KernelSpec::zeta(), &nodes, &values)
}

pub(crate) fn sample(phi: &TestMultiplier, points: &[HalfPlanePoint]) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    if points.is_empty() {
        return Err(Error::InvalidInput("at least one sample point is required".into()));
    }
    if let Some(p) = points.iter().find(|p| p.re() <= 0.5) {
        return Err(Error::Domain(format!("sample point {} is not in Re > 1/2", p.value())));
    }
    let nodes: Vec<Complex64> = points.iter().map(|p| p.value()).collect();
    check_distinct(&nodes)?;
    let values = nodes.iter().map(|&s| phi.eval(s)).collect::<Result<Vec<_>>>()?;
    Ok((nodes, values))
}

/// Moore factorization `G = Ψ Ψ*`; row `i` of `Ψ` is `ψ(s_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiFactor {
    pub psi: CMatrix,
    pub rank: usize,
    /// `‖G - Ψ Ψ*‖_max`.
    pub residual: f64,
}

pub fn factor_psi(g: &CMatrix, tol: f64) -> Result<PsiFactor> {
    if g.nrows() != g.ncols() {
        return Err(Error::Dimension(format!("Gram matrix is {}x{}", g.nrows(), g.ncols())));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("factorization tolerance must be positive".into()));
    }
    let k = g.nrows();
    if k == 0 || max_abs_entry(g) == 0.0 {
        return Ok(PsiFactor {
            psi: CMatrix::zeros(k, 0),
            rank: 0,
            residual: 0.0,
        });
    }
    let (vals, vecs) = hermitian_eigen(g);
    let top = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if vals[0] < -tol * top {
        return Err(Error::Hypothesis(format!(
            "Gram matrix is not positive semi-definite: min eigenvalue {:e}, max {:e}",
            vals[0], top
        )));
    }
    let keep: Vec<usize> = (0..k).rev().filter(|&i| vals[i] > tol * top).collect();
    let rank = keep.len();
    let psi = CMatrix::from_fn(k, rank, |i, j| vecs[(i, keep[j])] * vals[keep[j]].sqrt());
    let residual = max_abs_entry(&(g - &psi * psi.adjoint()));
    if residual > 10.0 * tol * top.max(f64::MIN_POSITIVE) {
        return Err(Error::Accuracy(format!("factorization residual {residual:e} is too large")));
    }
    Ok(PsiFactor { psi, rank, residual })
}
