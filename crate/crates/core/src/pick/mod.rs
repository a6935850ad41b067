//! Pick matrices and their positivity certificates.

mod certificate;
mod search;
mod theorems;
pub(crate) mod transfer;

pub use certificate::{certify_psd, PickCertificate, BORDERLINE_FACTOR, DEFAULT_PSD_TOL, DEFAULT_RANK_TOL};
pub use search::{counterexample_search, CounterexampleWitness, SearchGrid};
pub use theorems::{theorem12_certificate, theorem12_window, theorem21_check, Theorem12Report, Theorem21Report};
pub use transfer::{cayley, inverse_cayley, lemma22_transfer, schur_product, TransferReport};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::DEFAULT_ZETA_TOL;
use crate::error::{Error, Result};
use crate::kernels::{check_distinct, KernelSpec};
use crate::linalg::CMatrix;

/// Nodes `λ_i`, targets `w_i` and the kernel the Pick matrix is built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterpolationProblem {
    pub nodes: Vec<Complex64>,
    pub targets: Vec<Complex64>,
    pub kernel: KernelSpec,
    #[serde(default = "default_psd_tol")]
    pub psd_tol: f64,
    #[serde(default = "default_rank_tol")]
    pub rank_tol: f64,
}

fn default_psd_tol() -> f64 {
    DEFAULT_PSD_TOL
}

fn default_rank_tol() -> f64 {
    DEFAULT_RANK_TOL
}

impl InterpolationProblem {
    pub fn new(nodes: Vec<Complex64>, targets: Vec<Complex64>, kernel: KernelSpec) -> Result<Self> {
        let p = Self {
            nodes,
            targets,
            kernel,
            psd_tol: DEFAULT_PSD_TOL,
            rank_tol: DEFAULT_RANK_TOL,
        };
        p.validate()?;
        Ok(p)
    }

    /// Real nodes and targets, e.g. `λ = (1, 2)`, `w = (0, 0.4)`.
    pub fn real(nodes: &[f64], targets: &[f64], kernel: KernelSpec) -> Result<Self> {
        Self::new(
            nodes.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            targets.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            kernel,
        )
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Shape, distinctness, domain and `|w_i| <= 1` checks.
    pub fn validate(&self) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(Error::InvalidInput("at least one node is required".into()));
        }
        if self.nodes.len() != self.targets.len() {
            return Err(Error::Dimension(format!(
                "{} nodes but {} targets",
                self.nodes.len(),
                self.targets.len()
            )));
        }
        if !(self.psd_tol > 0.0) || !(self.rank_tol > 0.0) {
            return Err(Error::InvalidInput("tolerances must be positive".into()));
        }
        check_distinct(&self.nodes)?;
        for (i, z) in self.nodes.iter().enumerate() {
            if !self.kernel.contains(*z) {
                return Err(Error::Domain(format!(
                    "node {i} = {z} is outside the domain of the {} kernel",
                    self.kernel.kind_name()
                )));
            }
        }
        for (i, w) in self.targets.iter().enumerate() {
            if !(w.norm() <= 1.0) {
                return Err(Error::InvalidInput(format!("target {i} = {w} lies outside the closed unit disc")));
            }
        }
        Ok(())
    }

    /// Targets strictly inside the unit disc, as Pick-property checks require.
    pub fn require_open_disc_targets(&self) -> Result<()> {
        match self.targets.iter().position(|w| w.norm() >= 1.0) {
            Some(i) => Err(Error::Precondition(format!(
                "target {i} = {} is not in the open unit disc",
                self.targets[i]
            ))),
            None => Ok(()),
        }
    }

    pub fn with_kernel(&self, kernel: KernelSpec) -> Self {
        Self {
            kernel,
            ..self.clone()
        }
    }

    pub fn certify(&self) -> Result<PickCertificate> {
        certify_psd(&pick_matrix(self)?, self.psd_tol, self.rank_tol)
    }
}

/// `M[i][j] = (1 - w_i conj(w_j)) κ(λ_i, λ_j)`.
pub fn pick_matrix(p: &InterpolationProblem) -> Result<CMatrix> {
    pick_matrix_for(&p.kernel, &p.nodes, &p.targets)
}

pub fn pick_matrix_for(kernel: &KernelSpec, nodes: &[Complex64], targets: &[Complex64]) -> Result<CMatrix> {
    if nodes.len() != targets.len() {
        return Err(Error::Dimension(format!("{} nodes but {} targets", nodes.len(), targets.len())));
    }
    let mut m = crate::kernels::gram_matrix(kernel, nodes, DEFAULT_ZETA_TOL)?;
    let n = nodes.len();
    let one = Complex64::new(1.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] *= one - targets[i] * targets[j].conj();
        }
        m[(i, i)].im = 0.0;
    }
    Ok(m)
}
