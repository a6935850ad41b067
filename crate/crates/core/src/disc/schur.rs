use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::{self, Poly};

/// Number of boundary samples used to certify `sup_𝕋 |φ| <= 1`.
pub const BOUNDARY_SAMPLES: usize = 2048;

/// One Schur-Nevanlinna step: `φ = (γ + b_a ψ)/(1 + γ̄ b_a ψ)` with
/// `b_a(z) = (z - a)/(1 - ā z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchurStep {
    pub node: Complex64,
    pub parameter: Complex64,
}

/// `(z - a)/(1 - ā z)`.
pub fn disc_automorphism(a: Complex64, z: Complex64) -> Complex64 {
    (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z)
}

impl SchurStep {
    pub fn apply(&self, z: Complex64, inner: Complex64) -> Complex64 {
        let bp = disc_automorphism(self.node, z) * inner;
        (self.parameter + bp) / (Complex64::new(1.0, 0.0) + self.parameter.conj() * bp)
    }

    /// Inverse of [`SchurStep::apply`] in the inner value; singular at the
    /// step node itself.
    pub fn peel(&self, z: Complex64, outer: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        (outer - self.parameter) / ((one - self.parameter.conj() * outer) * disc_automorphism(self.node, z))
    }

    /// Chain-scattering matrix `[[z - a, γ(1 - āz)], [γ̄(z - a), 1 - āz]]`.
    pub fn theta(&self) -> [[Poly; 2]; 2] {
        let one = Complex64::new(1.0, 0.0);
        let a = self.node;
        let g = self.parameter;
        let za: Poly = vec![-a, one];
        let oz: Poly = vec![one, -a.conj()];
        [
            [za.clone(), poly::scale(&oz, g)],
            [poly::scale(&za, g.conj()), oz],
        ]
    }
}

/// A rational function mapping the unit disc into its closure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum RationalSchurFunction {
    Constant {
        value: Complex64,
    },
    /// `u · Π (z - α_k)/(1 - ᾱ_k z)`.
    Blaschke {
        zeros: Vec<Complex64>,
        unimodular: Complex64,
    },
    /// `steps[0] ∘ steps[1] ∘ … ∘ tail`.
    SchurChain {
        steps: Vec<SchurStep>,
        tail: Box<RationalSchurFunction>,
    },
}

/// Compose the steps, innermost last, around the tail value `inner`.
pub fn eval_chain(steps: &[SchurStep], z: Complex64, inner: Complex64) -> Complex64 {
    steps.iter().rev().fold(inner, |v, step| step.apply(z, v))
}

/// Free parameter `h` of the solution set: a rational Schur function or an
/// arbitrary closure on the disc.
#[derive(Clone)]
pub enum SchurParameter {
    Rational(RationalSchurFunction),
    Function {
        label: String,
        f: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    },
}

impl fmt::Debug for SchurParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchurParameter::Rational(r) => f.debug_tuple("Rational").field(r).finish(),
            SchurParameter::Function { label, .. } => f.debug_struct("Function").field("label", label).finish(),
        }
    }
}

impl SchurParameter {
    pub fn constant(value: Complex64) -> Self {
        SchurParameter::Rational(RationalSchurFunction::constant(value))
    }

    pub fn function(label: impl Into<String>, f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        SchurParameter::Function {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    /// The parameter whose chain composition reproduces `target`: peel every
    /// step off `target`. Singular at the step nodes.
    pub fn tail_of(
        steps: &[SchurStep],
        label: impl Into<String>,
        target: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        let steps = steps.to_vec();
        Self::function(label, move |z| steps.iter().fold(target(z), |v, step| step.peel(z, v)))
    }

    pub fn label(&self) -> String {
        match self {
            SchurParameter::Rational(RationalSchurFunction::Constant { value }) => {
                format!("constant({}, {})", value.re, value.im)
            }
            SchurParameter::Rational(r) => format!("rational(degree {})", r.degree()),
            SchurParameter::Function { label, .. } => label.clone(),
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            SchurParameter::Rational(r) => r.eval(z),
            SchurParameter::Function { f, .. } => f(z),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchurClassCertificate {
    pub samples: usize,
    pub max_modulus: f64,
    /// Largest sampled `|φ(e^{iθ_{k+1}}) - φ(e^{iθ_k})| / Δθ`.
    pub lipschitz_estimate: f64,
    /// `max_modulus + lipschitz_estimate · Δθ / 2`.
    pub certified_bound: f64,
    pub passes: bool,
}

pub(crate) fn chain_product(steps: &[SchurStep]) -> [[Poly; 2]; 2] {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut acc: [[Poly; 2]; 2] = [[vec![one], vec![zero]], [vec![zero], vec![one]]];
    for step in steps {
        let t = step.theta();
        let mut next: [[Poly; 2]; 2] = Default::default();
        for (i, row) in next.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = poly::add(&poly::mul(&acc[i][0], &t[0][j]), &poly::mul(&acc[i][1], &t[1][j]));
            }
        }
        acc = next;
    }
    acc
}

impl RationalSchurFunction {
    pub fn constant(value: Complex64) -> Self {
        RationalSchurFunction::Constant { value }
    }

    pub fn blaschke(zeros: Vec<Complex64>, unimodular: Complex64) -> Self {
        RationalSchurFunction::Blaschke { zeros, unimodular }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            RationalSchurFunction::Constant { value } => *value,
            RationalSchurFunction::Blaschke { zeros, unimodular } => zeros
                .iter()
                .fold(*unimodular, |acc, &a| acc * disc_automorphism(a, z)),
            RationalSchurFunction::SchurChain { steps, tail } => eval_chain(steps, z, tail.eval(z)),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            RationalSchurFunction::Constant { .. } => 0,
            RationalSchurFunction::Blaschke { zeros, .. } => zeros.len(),
            RationalSchurFunction::SchurChain { steps, tail } => steps.len() + tail.degree(),
        }
    }

    /// Sampled maximum modulus on the unit circle with a Lipschitz margin.
    pub fn schur_certificate(&self, samples: usize, tol: f64) -> SchurClassCertificate {
        let dt = 2.0 * PI / samples as f64;
        let values: Vec<Complex64> = (0..samples)
            .map(|k| self.eval(Complex64::from_polar(1.0, k as f64 * dt)))
            .collect();
        let max_modulus = values.iter().fold(0.0f64, |a, v| a.max(v.norm()));
        let lipschitz = (0..samples)
            .map(|k| (values[(k + 1) % samples] - values[k]).norm() / dt)
            .fold(0.0f64, f64::max);
        SchurClassCertificate {
            samples,
            max_modulus,
            lipschitz_estimate: lipschitz,
            certified_bound: max_modulus + 0.5 * lipschitz * dt,
            passes: max_modulus <= 1.0 + tol,
        }
    }

    /// Rewrite a chain ending in a unimodular constant as an explicit finite
    /// Blaschke product. Other shapes are returned unchanged.
    pub fn to_blaschke(&self) -> Self {
        let RationalSchurFunction::SchurChain { steps, tail } = self else {
            return self.clone();
        };
        let RationalSchurFunction::Constant { value: u } = **tail else {
            return self.clone();
        };
        if (u.norm() - 1.0).abs() > 1e-8 {
            return self.clone();
        }
        let theta = chain_product(steps);
        let numerator = poly::add(&poly::scale(&theta[0][0], u), &theta[0][1]);
        let zeros = poly::roots(&numerator);
        let probe = Complex64::new(1.0, 0.0);
        let partial = zeros.iter().fold(Complex64::new(1.0, 0.0), |acc, &a| acc * disc_automorphism(a, probe));
        let unimodular = self.eval(probe) / partial;
        RationalSchurFunction::Blaschke {
            zeros,
            unimodular: unimodular / unimodular.norm(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn blaschke_is_unimodular_on_the_circle() {
        let b = RationalSchurFunction::blaschke(vec![c(0.3, 0.4), c(-0.8, 0.1)], c(0.0, 1.0));
        for k in 0..64 {
            let z = Complex64::from_polar(1.0, k as f64 * 0.1);
            assert!((b.eval(z).norm() - 1.0).abs() < 1e-13);
        }
        assert!(b.eval(c(0.3, 0.4)).norm() < 1e-15);
        let cert = b.schur_certificate(BOUNDARY_SAMPLES, 1e-8);
        assert!(cert.passes);
        assert_eq!(b.degree(), 2);
    }

    #[test]
    fn step_peel_inverts_apply() {
        let s = SchurStep {
            node: c(0.2, -0.1),
            parameter: c(0.5, 0.3),
        };
        let z = c(-0.4, 0.6);
        let inner = c(0.1, -0.7);
        assert!((s.peel(z, s.apply(z, inner)) - inner).norm() < 1e-14);
    }

    #[test]
    fn chain_with_unimodular_tail_becomes_blaschke() {
        let chain = RationalSchurFunction::SchurChain {
            steps: vec![
                SchurStep { node: c(0.0, 0.0), parameter: c(0.2, 0.1) },
                SchurStep { node: c(0.5, 0.0), parameter: c(-0.3, 0.4) },
            ],
            tail: Box::new(RationalSchurFunction::constant(Complex64::from_polar(1.0, 0.7))),
        };
        let b = chain.to_blaschke();
        assert!(matches!(b, RationalSchurFunction::Blaschke { ref zeros, .. } if zeros.len() == 2));
        for k in 0..20 {
            let z = Complex64::from_polar(0.9, k as f64);
            assert!((b.eval(z) - chain.eval(z)).norm() < 1e-12);
        }
    }

    #[test]
    fn json_shape() {
        let f = RationalSchurFunction::constant(c(0.5, 0.0));
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"type":"constant","value":[0.5,0.0]}"#);
    }
}
