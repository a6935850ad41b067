use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{zeta, DEFAULT_ZETA_TOL};
use crate::error::{Error, Result};
use crate::kernels::{inner, FeatureMap, KernelSpec};
use crate::linalg::CMatrix;
use crate::point::HalfPlanePoint;

pub const DEFAULT_ALPHA: f64 = 2.0;

/// Truncated stand-in for `T_λ = V_λ ⊕ α U_λ`: the rank-one map sending the
/// `ζ`-feature `e` of `λ` to the `κ_μ`-feature `f`, plus `α` times a unitary
/// from `e^⊥` onto `f^⊥` built from two Householder reflections.
///
/// Stored in factored form; [`TLambdaModel::to_dense`] assembles the matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TLambdaModel {
    pub lambda: HalfPlanePoint,
    pub alpha: Complex64,
    pub n: usize,
    /// Unit vector along the `ζ`-feature of `λ`.
    pub e: Vec<Complex64>,
    /// Unit vector along the `κ_μ`-feature of `λ`.
    pub f: Vec<Complex64>,
    /// `‖κ_μ-feature‖ / ‖ζ-feature‖`.
    pub scale: f64,
    /// `‖V_λ^{-1}‖ = 1 / scale`.
    pub v_inverse_norm: f64,
    /// `sqrt((ζ(2σ)² + 1/2) / (ζ(2σ)² + 1))`.
    pub epsilon_tilde: f64,
    /// `max(‖V_λ^{-1}‖, 1/|α|)`.
    pub inverse_norm_bound: f64,
    pub zeta_2sigma: f64,
    pub kappa_mu_2sigma: f64,
    /// `ζ(2σ) < ζ(2σ) + 1/ζ(2σ)`.
    pub diagonal_inequality: bool,
    /// `‖T e_raw - f_raw‖ / ‖f_raw‖`.
    pub defining_residual: f64,
}

/// Householder reflection `H = I - 2 v v*/(v* v)` with `H x ∈ span(e_1)`.
fn householder(x: &[Complex64]) -> (Vec<Complex64>, f64) {
    let x0 = x[0];
    let omega = if x0.norm() > 0.0 {
        -x0 / x0.norm()
    } else {
        Complex64::new(-1.0, 0.0)
    };
    let mut v = x.to_vec();
    v[0] -= omega;
    let vv: f64 = v.iter().map(|c| c.norm_sqr()).sum();
    (v, vv)
}

fn reflect(v: &[Complex64], vv: f64, y: &mut [Complex64]) {
    let coef = inner(y, v) * (2.0 / vv);
    for (yi, vi) in y.iter_mut().zip(v) {
        *yi -= vi * coef;
    }
}

fn normalized(x: Vec<Complex64>) -> Result<(Vec<Complex64>, f64)> {
    let norm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if !(norm > 0.0) {
        return Err(Error::Degenerate("feature vector vanishes".into()));
    }
    Ok((x.into_iter().map(|c| c / norm).collect(), norm))
}

/// `ε̃(σ) = sqrt((ζ(2σ)² + 1/2) / (ζ(2σ)² + 1))`.
pub fn epsilon_tilde(sigma: f64) -> Result<f64> {
    let z = zeta(Complex64::new(2.0 * sigma, 0.0), DEFAULT_ZETA_TOL)?.re;
    Ok(((z * z + 0.5) / (z * z + 1.0)).sqrt())
}

pub fn build_t_lambda(lambda: &HalfPlanePoint, alpha: Complex64, n: usize) -> Result<TLambdaModel> {
    if !(alpha.norm() > 1.0) {
        return Err(Error::InvalidInput(format!("|alpha| must exceed 1, got {}", alpha.norm())));
    }
    if lambda.re() <= 0.5 {
        return Err(Error::Domain(format!("T_lambda needs Re(lambda) > 1/2, got {}", lambda.value())));
    }
    if n < 2 {
        return Err(Error::InvalidInput("feature truncation must be at least 2".into()));
    }
    let at = lambda.value().conj();
    let zeta_map = FeatureMap::new(&KernelSpec::zeta(), n)?;
    let mu_map = FeatureMap::new(&KernelSpec::KappaMu, n)?;
    let e_raw = zeta_map.coords(at);
    let f_raw = mu_map.coords(at);
    let (e, e_norm) = normalized(e_raw.clone())?;
    let (f, f_norm) = normalized(f_raw.clone())?;
    let sigma = lambda.re();
    let z2 = zeta(Complex64::new(2.0 * sigma, 0.0), DEFAULT_ZETA_TOL)?.re;
    let kappa = z2 + 1.0 / z2;
    let scale = f_norm / e_norm;
    let v_inverse_norm = 1.0 / scale;
    let mut model = TLambdaModel {
        lambda: *lambda,
        alpha,
        n,
        e,
        f,
        scale,
        v_inverse_norm,
        epsilon_tilde: ((z2 * z2 + 0.5) / (z2 * z2 + 1.0)).sqrt(),
        inverse_norm_bound: v_inverse_norm.max(1.0 / alpha.norm()),
        zeta_2sigma: z2,
        kappa_mu_2sigma: kappa,
        diagonal_inequality: z2 < kappa,
        defining_residual: 0.0,
    };
    let mut image = e_raw;
    model.apply(&mut image);
    let diff: f64 = image.iter().zip(&f_raw).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
    model.defining_residual = diff / f_norm;
    Ok(model)
}

impl TLambdaModel {
    /// `‖V_λ^{-1}‖ <= ε̃ < 1` and `‖T_λ^{-1}‖ < 1`.
    pub fn certified(&self) -> bool {
        self.v_inverse_norm <= self.epsilon_tilde && self.epsilon_tilde < 1.0 && self.inverse_norm_bound < 1.0
    }

    /// `x ← T x`.
    pub fn apply(&self, x: &mut [Complex64]) {
        let (he, hev) = householder(&self.e);
        let (hf, hfv) = householder(&self.f);
        let along = inner(x, &self.e);
        for (xi, ei) in x.iter_mut().zip(&self.e) {
            *xi -= ei * along;
        }
        reflect(&he, hev, x);
        reflect(&hf, hfv, x);
        let c = along * self.scale;
        for (xi, fi) in x.iter_mut().zip(&self.f) {
            *xi = *xi * self.alpha + fi * c;
        }
    }

    /// `x ← T^{-1} x`.
    pub fn apply_inverse(&self, x: &mut [Complex64]) {
        let (he, hev) = householder(&self.e);
        let (hf, hfv) = householder(&self.f);
        self.apply_inverse_with(x, (&he, hev), (&hf, hfv));
    }

    fn apply_inverse_with(&self, x: &mut [Complex64], he: (&[Complex64], f64), hf: (&[Complex64], f64)) {
        let along = inner(x, &self.f);
        for (xi, fi) in x.iter_mut().zip(&self.f) {
            *xi -= fi * along;
        }
        reflect(hf.0, hf.1, x);
        reflect(he.0, he.1, x);
        let c = along / self.scale;
        let inv_alpha = self.alpha.inv();
        for (xi, ei) in x.iter_mut().zip(&self.e) {
            *xi = *xi * inv_alpha + ei * c;
        }
    }

    /// `(T^{-1} ⊗ I_r)` applied to each column of `x`, coordinates laid out as
    /// `x[m * r + ρ]`.
    pub fn apply_inverse_kron(&self, x: &[Complex64], r: usize) -> Vec<Complex64> {
        let (he, hev) = householder(&self.e);
        let (hf, hfv) = householder(&self.f);
        let mut out = vec![Complex64::new(0.0, 0.0); x.len()];
        let mut slice = vec![Complex64::new(0.0, 0.0); self.n];
        for rho in 0..r {
            for m in 0..self.n {
                slice[m] = x[m * r + rho];
            }
            self.apply_inverse_with(&mut slice, (&he, hev), (&hf, hfv));
            for m in 0..self.n {
                out[m * r + rho] = slice[m];
            }
        }
        out
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.n, self.n);
        for j in 0..self.n {
            let mut col = vec![Complex64::new(0.0, 0.0); self.n];
            col[j] = Complex64::new(1.0, 0.0);
            self.apply(&mut col);
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_one_norms() {
        let lam = HalfPlanePoint::real(1.0, 0.5).unwrap();
        let t = build_t_lambda(&lam, Complex64::new(2.0, 0.0), 100_000).unwrap();
        // sqrt(ζ(2) / (ζ(2) + 1/ζ(2))) and sqrt((ζ(2)² + 1/2)/(ζ(2)² + 1)).
        assert!((t.v_inverse_norm - 0.854_49).abs() < 1e-4, "{}", t.v_inverse_norm);
        assert!((t.epsilon_tilde - 0.930_07).abs() < 1e-4, "{}", t.epsilon_tilde);
        assert!(t.certified() && t.diagonal_inequality);
        assert!(t.defining_residual < 1e-10);
    }

    #[test]
    fn dense_inverse_norm_matches_bound() {
        let lam = HalfPlanePoint::dirichlet(Complex64::new(0.8, 3.0)).unwrap();
        let t = build_t_lambda(&lam, Complex64::new(0.0, 2.0), 40).unwrap();
        let dense = t.to_dense();
        let inv = dense.clone().try_inverse().unwrap();
        let sv = inv.singular_values();
        let top = sv.iter().fold(0.0f64, |a, &b| a.max(b));
        assert!((top - t.inverse_norm_bound).abs() < 1e-10, "{top} vs {}", t.inverse_norm_bound);
        let mut x: Vec<Complex64> = (0..40).map(|k| Complex64::new(k as f64, 1.0 - k as f64)).collect();
        let orig = x.clone();
        t.apply(&mut x);
        t.apply_inverse(&mut x);
        let err: f64 = x.iter().zip(&orig).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-12);
    }

    #[test]
    fn alpha_must_exceed_one() {
        let lam = HalfPlanePoint::real(1.0, 0.5).unwrap();
        assert!(matches!(build_t_lambda(&lam, Complex64::new(1.0, 0.0), 10), Err(Error::InvalidInput(_))));
    }
}
