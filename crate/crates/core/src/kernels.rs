//! Positive semi-definite kernels on the disc and on right half-planes.
//!
//! Dirichlet-type kernels `κ(s, u) = Σ a_m m^{-s-ū}` are evaluated in closed
//! form where one exists (powers of ζ, `ζ + 1/ζ`) and by truncated summation
//! with an explicit tail bound otherwise.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{zeta_power_coeffs, CoefficientSeries, TailBound, ZetaConfig};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::point::HalfPlanePoint;

/// Minimum separation below which two nodes count as the same point.
pub const MIN_SEPARATION: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KernelJson", into = "KernelJson")]
pub enum KernelSpec {
    /// `1 / (1 - z w̄)` on the unit disc.
    SzegoDisc,
    /// `1 / (s + ū)` on `Re > 0`.
    SzegoHalfPlane,
    /// `ζ(s + ū)^m` on `Re > 1/2`.
    SzegoDirichlet { power: u32 },
    /// `Σ (1 + μ(m)) m^{-s-ū} = ζ(s + ū) + 1/ζ(s + ū)` on `Re > 1/2`.
    KappaMu,
    /// `Σ a_m m^{-s-ū}` with nonnegative `a_m`, on `Re > 1/2`.
    DiagonalDirichlet(CoefficientSeries),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct KernelJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    power: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coeffs: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tail: Option<TailBound>,
}

impl TryFrom<KernelJson> for KernelSpec {
    type Error = Error;

    fn try_from(raw: KernelJson) -> Result<Self> {
        let spec = match raw.kind.as_str() {
            "szego_disc" => KernelSpec::SzegoDisc,
            "szego_half_plane" => KernelSpec::SzegoHalfPlane,
            "szego_dirichlet" => KernelSpec::SzegoDirichlet {
                power: raw.power.unwrap_or(1),
            },
            "kappa_mu" => KernelSpec::KappaMu,
            "diagonal_dirichlet" => {
                let coeffs = raw.coeffs.ok_or_else(|| {
                    Error::InvalidInput("diagonal_dirichlet kernel needs \"coeffs\"".into())
                })?;
                let series = CoefficientSeries::from_real(
                    "diagonal",
                    &coeffs,
                    raw.tail.unwrap_or(TailBound::Finite),
                )?;
                KernelSpec::diagonal(series)?
            }
            other => return Err(Error::InvalidInput(format!("unknown kernel kind {other:?}"))),
        };
        if let KernelSpec::SzegoDirichlet { power: 0 } = spec {
            return Err(Error::InvalidInput("kernel power must be >= 1".into()));
        }
        Ok(spec)
    }
}

impl From<KernelSpec> for KernelJson {
    fn from(k: KernelSpec) -> Self {
        let mut out = KernelJson {
            kind: k.kind_name().to_string(),
            power: None,
            coeffs: None,
            tail: None,
        };
        match k {
            KernelSpec::SzegoDirichlet { power } => out.power = Some(power),
            KernelSpec::DiagonalDirichlet(series) => {
                out.coeffs = Some(series.coeffs().iter().map(|c| c.re).collect());
                out.tail = Some(series.tail);
            }
            _ => {}
        }
        out
    }
}

impl KernelSpec {
    /// The Szegö-Dirichlet kernel `ζ(s + ū)`.
    pub fn zeta() -> Self {
        KernelSpec::SzegoDirichlet { power: 1 }
    }

    pub fn diagonal(series: CoefficientSeries) -> Result<Self> {
        if !series.is_nonnegative_real() {
            return Err(Error::InvalidInput(
                "diagonal Dirichlet kernels need nonnegative real coefficients".into(),
            ));
        }
        Ok(KernelSpec::DiagonalDirichlet(series))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            KernelSpec::SzegoDisc => "szego_disc",
            KernelSpec::SzegoHalfPlane => "szego_half_plane",
            KernelSpec::SzegoDirichlet { .. } => "szego_dirichlet",
            KernelSpec::KappaMu => "kappa_mu",
            KernelSpec::DiagonalDirichlet(_) => "diagonal_dirichlet",
        }
    }

    /// The `δ` of the half-plane `Re > δ`, or `None` for the disc kernel.
    pub fn domain_floor(&self) -> Option<f64> {
        match self {
            KernelSpec::SzegoDisc => None,
            KernelSpec::SzegoHalfPlane => Some(0.0),
            _ => Some(0.5),
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        match self.domain_floor() {
            None => z.norm() < 1.0,
            Some(floor) => z.re > floor,
        }
    }

    fn check_domain(&self, z: Complex64) -> Result<()> {
        if z.re.is_finite() && z.im.is_finite() && self.contains(z) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{z} is outside the domain of the {} kernel",
                self.kind_name()
            )))
        }
    }

    /// Dirichlet coefficients `a_1..a_N`, when the kernel is diagonal.
    pub fn coefficient_series(&self, n: usize) -> Result<CoefficientSeries> {
        match self {
            KernelSpec::SzegoDirichlet { power } => zeta_power_coeffs(*power, n),
            KernelSpec::KappaMu => Ok(CoefficientSeries::kappa_mu(n)),
            KernelSpec::DiagonalDirichlet(series) => {
                let mut coeffs = series.coeffs().to_vec();
                coeffs.resize(n.max(1), Complex64::new(0.0, 0.0));
                let tail = if n >= series.truncation() {
                    series.tail
                } else {
                    TailBound::Unknown
                };
                CoefficientSeries::new(series.label.clone(), coeffs, tail)
            }
            _ => Err(Error::InvalidInput(format!(
                "the {} kernel has no Dirichlet coefficients",
                self.kind_name()
            ))),
        }
    }

    /// `κ(s, u)` with absolute error at most `tol`.
    pub fn eval(&self, s: Complex64, u: Complex64, tol: f64) -> Result<Complex64> {
        self.eval_with_tail(s, u, tol).map(|(v, _)| v)
    }

    /// `κ(s, u)` together with the truncation tail bound (0 for closed forms).
    pub fn eval_with_tail(&self, s: Complex64, u: Complex64, tol: f64) -> Result<(Complex64, f64)> {
        self.check_domain(s)?;
        self.check_domain(u)?;
        let x = s + u.conj();
        let zeta_cfg = ZetaConfig {
            guard: 0.0,
            ..ZetaConfig::default()
        };
        let one = Complex64::new(1.0, 0.0);
        let value = match self {
            KernelSpec::SzegoDisc => one / (one - s * u.conj()),
            KernelSpec::SzegoHalfPlane => one / x,
            KernelSpec::SzegoDirichlet { power } => {
                let m = *power as i32;
                let mut z = zeta_cfg.zeta(x, tol)?;
                if m > 1 {
                    let scale = m as f64 * z.norm().max(1.0).powi(m - 1);
                    z = zeta_cfg.zeta(x, tol / scale)?;
                }
                z.powi(m)
            }
            KernelSpec::KappaMu => {
                zeta_cfg.zeta(x, 0.5 * tol)? + zeta_cfg.zeta_reciprocal(x, 0.5 * tol)?
            }
            KernelSpec::DiagonalDirichlet(series) => {
                let tail = series.tail_bound(x.re);
                if tail > tol {
                    return Err(Error::Truncation(format!(
                        "tail bound {tail:e} at Re(s+ū) = {} exceeds tolerance {tol:e}",
                        x.re
                    )));
                }
                return Ok((series.partial_sum(x), tail));
            }
        };
        Ok((value, 0.0))
    }

    /// `κ(s, u)` for points carrying their half-plane tags.
    pub fn eval_points(&self, s: &HalfPlanePoint, u: &HalfPlanePoint, tol: f64) -> Result<Complex64> {
        self.eval(s.value(), u.value(), tol)
    }
}

pub fn check_distinct(points: &[Complex64]) -> Result<()> {
    for i in 0..points.len() {
        for j in 0..i {
            if (points[i] - points[j]).norm() <= MIN_SEPARATION {
                return Err(Error::InvalidInput(format!(
                    "points {j} and {i} coincide ({})",
                    points[i]
                )));
            }
        }
    }
    Ok(())
}

/// `G[i][j] = κ(λ_i, λ_j)`. The lower triangle is the conjugate of the upper
/// one, so `G` is Hermitian exactly.
pub fn gram_matrix(kernel: &KernelSpec, points: &[Complex64], tol: f64) -> Result<CMatrix> {
    check_distinct(points)?;
    let n = points.len();
    let mut g = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = kernel.eval(points[i], points[j], tol)?;
            if i == j {
                g[(i, i)] = Complex64::new(v.re, 0.0);
            } else {
                g[(i, j)] = v;
                g[(j, i)] = v.conj();
            }
        }
    }
    Ok(g)
}

/// Truncated coordinates `sqrt(a_m) m^{-s}`, `m = 1..N`, of a diagonal kernel,
/// so that `Σ_m coords_m(s) conj(coords_m(u)) = Σ_{m ≤ N} a_m m^{-s-ū}`.
#[derive(Debug, Clone)]
pub struct FeatureMap {
    sqrt_coeffs: Vec<f64>,
    log_index: Vec<f64>,
    series: CoefficientSeries,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub coords: Vec<Complex64>,
    pub point: Complex64,
    pub kernel: String,
}

impl FeatureMap {
    pub fn new(kernel: &KernelSpec, n: usize) -> Result<Self> {
        let series = kernel.coefficient_series(n)?;
        if !series.is_nonnegative_real() {
            return Err(Error::InvalidInput("feature maps need nonnegative coefficients".into()));
        }
        Ok(Self {
            sqrt_coeffs: series.coeffs().iter().map(|c| c.re.sqrt()).collect(),
            log_index: (1..=series.truncation()).map(|m| (m as f64).ln()).collect(),
            series,
        })
    }

    pub fn dim(&self) -> usize {
        self.sqrt_coeffs.len()
    }

    pub fn series(&self) -> &CoefficientSeries {
        &self.series
    }

    pub fn coords(&self, s: Complex64) -> Vec<Complex64> {
        self.sqrt_coeffs
            .iter()
            .zip(&self.log_index)
            .map(|(&w, &l)| {
                if w == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    (-s * l).exp() * w
                }
            })
            .collect()
    }

    pub fn feature(&self, s: &HalfPlanePoint) -> Result<FeatureVector> {
        if s.re() <= 0.5 {
            return Err(Error::Domain(format!("feature maps need Re(s) > 1/2, got {}", s.re())));
        }
        Ok(FeatureVector {
            coords: self.coords(s.value()),
            point: s.value(),
            kernel: self.series.label.clone(),
        })
    }

    /// Bound on `|κ(s, u) - <feature(s), feature(u)>|`.
    pub fn tail_bound(&self, s: Complex64, u: Complex64) -> f64 {
        self.series.tail_bound(2.0 * s.re.min(u.re))
    }
}

/// `feature_map(k, s, N)`.
pub fn feature_map(kernel: &KernelSpec, s: &HalfPlanePoint, n: usize) -> Result<FeatureVector> {
    FeatureMap::new(kernel, n)?.feature(s)
}

/// `Σ_m x_m conj(y_m)`.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}
