use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::schur::{RationalSchurFunction, SchurClassCertificate, SchurStep, BOUNDARY_SAMPLES};
use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::pick::transfer::cayley_raw;
use crate::pick::{certify_psd, pick_matrix_for, InterpolationProblem, PickCertificate, DEFAULT_PSD_TOL, DEFAULT_RANK_TOL};

/// A reduced target this close to the unit circle ends the recursion.
pub const DEGENERATE_TOL: f64 = 1e-10;
/// Targets with `|w| > 1 - NEAR_BOUNDARY_TOL` are flagged ill-conditioned.
pub const NEAR_BOUNDARY_TOL: f64 = 1e-8;
pub const MIN_NODE_SEPARATION: f64 = 1e-6;

const SCHUR_CLASS_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum SolveOutcome<T> {
    Solved(T),
    Infeasible { certificate: Box<PickCertificate> },
}

impl<T> SolveOutcome<T> {
    pub fn solved(self) -> Option<T> {
        match self {
            SolveOutcome::Solved(t) => Some(t),
            SolveOutcome::Infeasible { .. } => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveOutcome::Solved(_))
    }
}

/// Output of the Schur algorithm run on the data in the given node order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchurReduction {
    pub steps: Vec<SchurStep>,
    /// Unimodular constant closing the chain when the data are degenerate.
    pub terminal: Option<Complex64>,
    /// `λ_min / max(1, ‖M‖)` of each reduced Pick matrix.
    pub reduced_margins: Vec<f64>,
    pub reduced_psd: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscSolution {
    pub nodes: Vec<Complex64>,
    pub targets: Vec<Complex64>,
    pub function: RationalSchurFunction,
    pub reduction: SchurReduction,
    pub pick: PickCertificate,
    pub degenerate: bool,
    pub node_residual: f64,
    pub schur_class: SchurClassCertificate,
    pub ill_conditioned: bool,
    pub warnings: Vec<String>,
}

impl DiscSolution {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.function.eval(z)
    }

    pub fn degree(&self) -> usize {
        self.function.degree()
    }
}

/// `φ = f ∘ C` on the right half-plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfPlaneSolution {
    pub nodes: Vec<Complex64>,
    pub targets: Vec<Complex64>,
    pub disc: DiscSolution,
    pub node_residual: f64,
}

impl HalfPlaneSolution {
    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        if !(s.re > 0.0) || !s.im.is_finite() {
            return Err(Error::Domain(format!("evaluation point {s} is not in Re(s) > 0")));
        }
        Ok(self.eval_unchecked(s))
    }

    pub(crate) fn eval_unchecked(&self, s: Complex64) -> Complex64 {
        self.disc.eval(cayley_raw(s))
    }
}

pub(crate) fn validate_disc_data(z: &[Complex64], w: &[Complex64]) -> Result<()> {
    if z.is_empty() {
        return Err(Error::InvalidInput("at least one node is required".into()));
    }
    if z.len() != w.len() {
        return Err(Error::Dimension(format!("{} nodes but {} targets", z.len(), w.len())));
    }
    for (i, (a, b)) in z.iter().zip(w).enumerate() {
        if !(a.norm() < 1.0) {
            return Err(Error::Domain(format!("node {i} = {a} is not in the open unit disc")));
        }
        if !(b.norm() <= 1.0) {
            return Err(Error::InvalidInput(format!("target {i} = {b} lies outside the closed unit disc")));
        }
    }
    for i in 0..z.len() {
        for j in 0..i {
            let d = (z[i] - z[j]).norm();
            if d < MIN_NODE_SEPARATION {
                return Err(Error::IllConditioned(format!(
                    "nodes {j} and {i} are {d:e} apart (minimum {MIN_NODE_SEPARATION:e})"
                )));
            }
        }
    }
    Ok(())
}

/// Schur algorithm with a positivity check of every reduced Pick matrix.
///
/// `rank` is the numerical rank of the full Pick matrix; when it is below
/// `n`, step `rank` is closed by a unimodular constant even if rounding
/// kept the reduced target slightly inside the disc.
pub fn schur_reduction(z: &[Complex64], w: &[Complex64], rank: usize, psd_tol: f64) -> Result<SchurReduction> {
    let n = z.len();
    let mut targets = w.to_vec();
    let mut steps = Vec::with_capacity(n);
    let mut margins = Vec::new();
    let mut reduced_psd = true;
    let mut terminal = None;
    for k in 0..n {
        let gamma = targets[k];
        if gamma.norm() >= 1.0 - DEGENERATE_TOL || (rank < n && k == rank) {
            terminal = Some(if gamma.norm() > 0.0 {
                gamma / gamma.norm()
            } else {
                Complex64::new(1.0, 0.0)
            });
            break;
        }
        let step = SchurStep {
            node: z[k],
            parameter: gamma,
        };
        for j in k + 1..n {
            targets[j] = step.peel(z[j], targets[j]);
        }
        steps.push(step);
        if k + 1 < n {
            let m = pick_matrix_for(&KernelSpec::SzegoDisc, &z[k + 1..], &targets[k + 1..])?;
            let cert = certify_psd(&m, psd_tol, DEFAULT_RANK_TOL)?;
            margins.push(cert.min_eigenvalue / cert.spectral_norm.max(1.0));
            reduced_psd &= cert.psd;
        }
    }
    Ok(SchurReduction {
        steps,
        terminal,
        reduced_margins: margins,
        reduced_psd,
    })
}

pub fn solve_disc(z: &[Complex64], w: &[Complex64]) -> Result<SolveOutcome<DiscSolution>> {
    solve_disc_with(z, w, DEFAULT_PSD_TOL, DEFAULT_RANK_TOL)
}

/// Find a Schur-class `φ` with `φ(z_i) = w_i`, or certify that none exists.
pub fn solve_disc_with(
    z: &[Complex64],
    w: &[Complex64],
    psd_tol: f64,
    rank_tol: f64,
) -> Result<SolveOutcome<DiscSolution>> {
    validate_disc_data(z, w)?;
    let pick = certify_psd(&pick_matrix_for(&KernelSpec::SzegoDisc, z, w)?, psd_tol, rank_tol)?;
    if !pick.psd {
        return Ok(SolveOutcome::Infeasible {
            certificate: Box::new(pick),
        });
    }
    let mut warnings = Vec::new();
    let ill_conditioned = w.iter().any(|t| t.norm() > 1.0 - NEAR_BOUNDARY_TOL);
    if ill_conditioned {
        warnings.push("a target lies within 1e-8 of the unit circle".to_string());
    }
    if pick.inconclusive {
        warnings.push("Pick matrix positivity is inconclusive".to_string());
    }
    let reduction = schur_reduction(z, w, pick.numerical_rank, psd_tol)?;
    if !reduction.reduced_psd {
        warnings.push("a reduced Pick matrix failed the positivity check".to_string());
    }
    let (function, degenerate) = match reduction.terminal {
        Some(u) => (
            RationalSchurFunction::SchurChain {
                steps: reduction.steps.clone(),
                tail: Box::new(RationalSchurFunction::constant(u)),
            }
            .to_blaschke(),
            true,
        ),
        None => (
            RationalSchurFunction::SchurChain {
                steps: reduction.steps.clone(),
                tail: Box::new(RationalSchurFunction::constant(Complex64::new(0.0, 0.0))),
            },
            false,
        ),
    };
    let node_residual = z
        .iter()
        .zip(w)
        .map(|(a, b)| (function.eval(*a) - b).norm())
        .fold(0.0f64, f64::max);
    let schur_class = function.schur_certificate(BOUNDARY_SAMPLES, SCHUR_CLASS_TOL);
    if !schur_class.passes {
        warnings.push(format!("boundary sup {} exceeds 1", schur_class.max_modulus));
    }
    Ok(SolveOutcome::Solved(DiscSolution {
        nodes: z.to_vec(),
        targets: w.to_vec(),
        function,
        reduction,
        pick,
        degenerate,
        node_residual,
        schur_class,
        ill_conditioned,
        warnings,
    }))
}

/// Solve on `Re s > 0` by solving at the Cayley images `C(λ_i)`.
pub fn solve_halfplane(p: &InterpolationProblem) -> Result<SolveOutcome<HalfPlaneSolution>> {
    p.validate()?;
    if let Some(s) = p.nodes.iter().find(|s| !(s.re > 0.0)) {
        return Err(Error::Domain(format!("node {s} is not in Re(s) > 0")));
    }
    let images: Vec<Complex64> = p.nodes.iter().map(|&s| cayley_raw(s)).collect();
    let disc = match solve_disc_with(&images, &p.targets, p.psd_tol, p.rank_tol)? {
        SolveOutcome::Solved(d) => d,
        SolveOutcome::Infeasible { certificate } => return Ok(SolveOutcome::Infeasible { certificate }),
    };
    let mut out = HalfPlaneSolution {
        nodes: p.nodes.clone(),
        targets: p.targets.clone(),
        disc,
        node_residual: 0.0,
    };
    out.node_residual = p
        .nodes
        .iter()
        .zip(&p.targets)
        .map(|(s, t)| (out.eval_unchecked(*s) - t).norm())
        .fold(0.0f64, f64::max);
    Ok(SolveOutcome::Solved(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn one_point_gives_constant_value() {
        let sol = solve_disc(&[c(0.0, 0.0)], &[c(0.5, 0.0)]).unwrap().solved().unwrap();
        assert!((sol.eval(c(0.0, 0.0)) - 0.5).norm() < 1e-15);
        assert!((sol.eval(c(0.3, -0.2)) - 0.5).norm() < 1e-15);
        assert!(sol.schur_class.passes);
    }

    #[test]
    fn one_two_witness_in_the_disc_is_infeasible() {
        let out = solve_disc(&[c(0.0, 0.0), c(1.0 / 3.0, 0.0)], &[c(0.0, 0.0), c(0.4, 0.0)]).unwrap();
        match out {
            SolveOutcome::Infeasible { certificate } => {
                let det = 1.0 * (0.84 / (8.0 / 9.0)) - 1.0;
                assert!(det < 0.0);
                assert!(certificate.min_eigenvalue < 0.0);
                assert!((certificate.witness_value() - certificate.min_eigenvalue).abs() < 1e-12);
            }
            SolveOutcome::Solved(_) => panic!("expected infeasible"),
        }
    }

    #[test]
    fn blaschke_data_recovers_generator() {
        let b = RationalSchurFunction::blaschke(vec![c(0.2, 0.3), c(-0.5, 0.1)], Complex64::from_polar(1.0, 0.3));
        let z = [c(0.1, 0.0), c(-0.3, 0.4), c(0.6, -0.2), c(0.0, -0.5)];
        let w: Vec<_> = z.iter().map(|&x| b.eval(x)).collect();
        let sol = solve_disc(&z, &w).unwrap().solved().unwrap();
        assert!(sol.degenerate);
        assert_eq!(sol.degree(), 2);
        for k in 0..10 {
            let p = Complex64::from_polar(0.7, 0.3 + k as f64 * 0.6);
            assert!((sol.eval(p) - b.eval(p)).norm() < 1e-6);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(solve_disc(&[c(0.0, 0.0)], &[c(1.1, 0.0)]), Err(Error::InvalidInput(_))));
        assert!(matches!(
            solve_disc(&[c(0.0, 0.0), c(1e-7, 0.0)], &[c(0.0, 0.0), c(0.0, 0.0)]),
            Err(Error::IllConditioned(_))
        ));
        let sol = solve_disc(&[c(0.0, 0.0)], &[c(1.0 - 1e-9, 0.0)]).unwrap().solved().unwrap();
        assert!(sol.ill_conditioned);
    }

    #[test]
    fn halfplane_one_six_instance_is_feasible() {
        let p = InterpolationProblem::real(&[1.0, 6.0], &[0.0, 0.5f64.sqrt()], KernelSpec::SzegoHalfPlane).unwrap();
        let sol = solve_halfplane(&p).unwrap().solved().unwrap();
        assert!(sol.node_residual < 1e-8);
        let witness = InterpolationProblem::real(&[1.0, 2.0], &[0.0, 0.4], KernelSpec::SzegoHalfPlane).unwrap();
        assert!(!solve_halfplane(&witness).unwrap().is_feasible());
    }

    #[test]
    fn constant_targets_give_constant_solution() {
        let p = InterpolationProblem::new(
            vec![c(1.0, 0.0), c(2.0, 1.0), c(0.5, -3.0)],
            vec![c(0.3, 0.4); 3],
            KernelSpec::SzegoHalfPlane,
        )
        .unwrap();
        let sol = solve_halfplane(&p).unwrap().solved().unwrap();
        for s in [c(0.1, 0.0), c(7.0, 2.0), c(1.0, -40.0)] {
            assert!((sol.eval(s).unwrap() - c(0.3, 0.4)).norm() < 1e-12);
        }
    }
}
