use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::zeta::{ZetaConfig, DEFAULT_ZETA_TOL};
use crate::error::{Error, Result};

/// What is known about the coefficients beyond the truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TailBound {
    /// The series is a Dirichlet polynomial: every coefficient past `N` is 0.
    Finite,
    /// `|a_n| <= constant` for every `n > N`.
    Dominated { constant: f64 },
    /// `a_n = d_m(n)`, the coefficients of ζ^m.
    ZetaPower { power: u32 },
    Unknown,
}

/// Truncated Dirichlet coefficients `a_1, …, a_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSeries {
    pub label: String,
    coeffs: Vec<Complex64>,
    pub tail: TailBound,
}

impl CoefficientSeries {
    pub fn new(label: impl Into<String>, coeffs: Vec<Complex64>, tail: TailBound) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("coefficient series must be non-empty".into()));
        }
        Ok(Self {
            label: label.into(),
            coeffs,
            tail,
        })
    }

    pub fn from_real(label: impl Into<String>, coeffs: &[f64], tail: TailBound) -> Result<Self> {
        Self::new(
            label,
            coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
            tail,
        )
    }

    /// Coefficients of ζ: all ones.
    pub fn ones(n: usize) -> Self {
        Self {
            label: "zeta".into(),
            coeffs: vec![Complex64::new(1.0, 0.0); n.max(1)],
            tail: TailBound::Dominated { constant: 1.0 },
        }
    }

    /// The Dirichlet unit `(1, 0, 0, …)`.
    pub fn unit(n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n.max(1)];
        coeffs[0] = Complex64::new(1.0, 0.0);
        Self {
            label: "unit".into(),
            coeffs,
            tail: TailBound::Finite,
        }
    }

    /// Coefficients of 1/ζ: the Möbius function.
    pub fn mobius(n: usize) -> Self {
        let mu = super::mobius_sieve(n.max(1));
        Self {
            label: "mobius".into(),
            coeffs: mu[1..].iter().map(|&m| Complex64::new(m as f64, 0.0)).collect(),
            tail: TailBound::Dominated { constant: 1.0 },
        }
    }

    /// Coefficients `1 + μ(n)` of `κ_μ = ζ + 1/ζ`.
    pub fn kappa_mu(n: usize) -> Self {
        let mu = super::mobius_sieve(n.max(1));
        Self {
            label: "kappa_mu".into(),
            coeffs: mu[1..]
                .iter()
                .map(|&m| Complex64::new(1.0 + m as f64, 0.0))
                .collect(),
            tail: TailBound::Dominated { constant: 2.0 },
        }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `a_n` for `1 <= n <= N`.
    pub fn get(&self, n: usize) -> Option<Complex64> {
        n.checked_sub(1).and_then(|i| self.coeffs.get(i).copied())
    }

    pub fn is_nonnegative_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0 && c.re >= 0.0)
    }

    /// `Σ_{n ≤ N} a_n n^{-s}`.
    pub fn partial_sum(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c != Complex64::new(0.0, 0.0) {
                acc += c * (-s * ((i + 1) as f64).ln()).exp();
            }
        }
        acc
    }

    /// Bound on `Σ_{n > N} |a_n| n^{-x}` for real `x`.
    pub fn tail_bound(&self, x: f64) -> f64 {
        let n = self.truncation() as f64;
        match self.tail {
            TailBound::Finite => 0.0,
            TailBound::Unknown => f64::INFINITY,
            _ if x <= 1.0 => f64::INFINITY,
            // Σ_{n>N} n^{-x} <= ∫_N^∞ t^{-x} dt.
            TailBound::Dominated { constant } => constant * n.powf(1.0 - x) / (x - 1.0),
            TailBound::ZetaPower { power } => {
                let cfg = ZetaConfig {
                    guard: 0.0,
                    ..ZetaConfig::default()
                };
                match cfg.zeta(Complex64::new(x, 0.0), DEFAULT_ZETA_TOL) {
                    Ok(z) => {
                        let full = z.re.powi(power as i32);
                        let head = self.partial_sum(Complex64::new(x, 0.0)).re;
                        (full - head).max(0.0) + 1e-12 * full
                    }
                    Err(_) => f64::INFINITY,
                }
            }
        }
    }
}

/// Dirichlet convolution `c_n = Σ_{d | n} a_d b_{n/d}`.
pub fn dirichlet_convolve(a: &CoefficientSeries, b: &CoefficientSeries) -> Result<CoefficientSeries> {
    let n = a.truncation();
    if b.truncation() != n {
        return Err(Error::Dimension(format!(
            "truncations differ: {} vs {}",
            n,
            b.truncation()
        )));
    }
    let mut c = vec![Complex64::new(0.0, 0.0); n];
    for d in 1..=n {
        let ad = a.coeffs[d - 1];
        if ad == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (k, m) in (d..=n).step_by(d).enumerate() {
            c[m - 1] += ad * b.coeffs[k];
        }
    }
    Ok(CoefficientSeries {
        label: format!("({})*({})", a.label, b.label),
        coeffs: c,
        tail: TailBound::Unknown,
    })
}

/// `d_m(n)` for `n <= N`: the `m`-fold convolution of the all-ones sequence.
pub fn zeta_power_coeffs(m: u32, n: usize) -> Result<CoefficientSeries> {
    if m == 0 {
        return Err(Error::InvalidInput("power must be at least 1".into()));
    }
    if n == 0 {
        return Err(Error::InvalidInput("truncation must be at least 1".into()));
    }
    let ones = CoefficientSeries::ones(n);
    let mut acc = ones.clone();
    for _ in 1..m {
        acc = dirichlet_convolve(&acc, &ones)?;
    }
    acc.label = format!("zeta^{m}");
    acc.tail = TailBound::ZetaPower { power: m };
    Ok(acc)
}
