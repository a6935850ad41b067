//! Riemann ζ on `Re(s) > 1` by Euler-Maclaurin summation.
//!
//! ζ(s) = Σ_{n<M} n^{-s} + M^{1-s}/(s-1) + M^{-s}/2
//!        + Σ_{k=1}^{6} B_{2k}/(2k)! · s(s+1)…(s+2k-2) · M^{-s-2k+1} + R,
//!
//! with |R| bounded by |s+13|/(σ+13) times the first omitted (B_14) term.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const DEFAULT_ZETA_TOL: f64 = 1e-12;
pub const DEFAULT_GUARD: f64 = 1e-6;

/// B_2, B_4, …, B_14 divided by (2k)!.
const BERNOULLI_OVER_FACTORIAL: [f64; 7] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaConfig {
    /// Points with `Re(s) <= 1 + guard` are rejected.
    pub guard: f64,
    /// Largest cutoff `M` the summation may use.
    pub max_terms: u64,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        Self {
            guard: DEFAULT_GUARD,
            max_terms: 10_000_000,
        }
    }
}

/// A ζ value with its error budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaEvaluation {
    pub value: Complex64,
    /// Euler-Maclaurin remainder bound plus a floating-point summation budget.
    pub error_bound: f64,
    pub cutoff: u64,
}

fn check_domain(s: Complex64, target: f64, cfg: &ZetaConfig) -> Result<()> {
    if !(target > 0.0) {
        return Err(Error::InvalidInput(format!(
            "target error must be positive, got {target}"
        )));
    }
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {s}")));
    }
    if s.re <= 1.0 + cfg.guard {
        return Err(Error::Domain(format!(
            "zeta requires Re(s) > 1 + {:e}, got Re(s) = {}",
            cfg.guard, s.re
        )));
    }
    Ok(())
}

/// Magnitude of the first omitted correction, times the |s+13|/(σ+13) factor.
fn remainder_bound(s: Complex64, m: f64) -> f64 {
    let mut rising = 1.0;
    for j in 0..13 {
        rising *= (s + j as f64).norm();
    }
    let first_omitted = BERNOULLI_OVER_FACTORIAL[6].abs() * rising * m.powf(-s.re - 13.0);
    first_omitted * (s + 13.0).norm() / (s.re + 13.0)
}

impl ZetaConfig {
    pub fn evaluate(&self, s: Complex64, target_abs_err: f64) -> Result<ZetaEvaluation> {
        check_domain(s, target_abs_err, self)?;
        // Cutoff: smallest M (from a geometric ladder) whose remainder is
        // below half the target.
        let mut m = 8u64.max((s.norm() / 4.0).ceil() as u64);
        while remainder_bound(s, m as f64) > 0.5 * target_abs_err {
            if m >= self.max_terms {
                return Err(Error::Accuracy(format!(
                    "zeta({s}) cannot reach {target_abs_err:e} within {} terms",
                    self.max_terms
                )));
            }
            m = (m + m / 2).min(self.max_terms);
        }

        let mut partial = Complex64::new(0.0, 0.0);
        // Sum small terms first.
        for n in (1..m).rev() {
            partial += (-s * (n as f64).ln()).exp();
        }
        let mf = m as f64;
        let ln_m = mf.ln();
        let m_pow = (-s * ln_m).exp(); // M^{-s}
        let mut value = partial + m_pow * mf / (s - 1.0) + m_pow * 0.5;

        // Correction terms: B_{2k}/(2k)! · (s)_{2k-1} · M^{-s-2k+1}.
        let mut rising = s; // (s)_1
        let mut power = m_pow / mf; // M^{-s-1}
        for (k, coef) in BERNOULLI_OVER_FACTORIAL[..6].iter().enumerate() {
            value += rising * power * *coef;
            let j = 2 * k as u32 + 1;
            rising = rising * (s + j as f64) * (s + (j + 1) as f64);
            power /= mf * mf;
        }

        let rounding = 4.0 * f64::EPSILON * (m as f64).sqrt() * value.norm().max(1.0)
            + f64::EPSILON * partial.norm();
        Ok(ZetaEvaluation {
            value,
            error_bound: remainder_bound(s, mf) + rounding,
            cutoff: m,
        })
    }

    pub fn zeta(&self, s: Complex64, target_abs_err: f64) -> Result<Complex64> {
        self.evaluate(s, target_abs_err).map(|e| e.value)
    }

    pub fn zeta_reciprocal(&self, s: Complex64, target_abs_err: f64) -> Result<Complex64> {
        // d(1/ζ) = -dζ/ζ², so tighten the ζ target by |ζ|².
        let mut target = 0.5 * target_abs_err;
        let mut z = self.zeta(s, target)?;
        let needed = 0.5 * target_abs_err * z.norm_sqr();
        if needed < target {
            target = needed;
            z = self.zeta(s, target)?;
        }
        Ok(z.inv())
    }
}

/// ζ(s) with the default configuration.
pub fn zeta(s: Complex64, target_abs_err: f64) -> Result<Complex64> {
    ZetaConfig::default().zeta(s, target_abs_err)
}

/// 1/ζ(s), computed as the reciprocal of ζ(s).
pub fn zeta_reciprocal(s: Complex64, target_abs_err: f64) -> Result<Complex64> {
    ZetaConfig::default().zeta_reciprocal(s, target_abs_err)
}
