use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::certificate::{certify_psd, BORDERLINE_FACTOR, DEFAULT_PSD_TOL, DEFAULT_RANK_TOL};
use super::pick_matrix_for;
use crate::error::{Error, Result};
use crate::kernels::KernelSpec;

/// Grid of real node pairs and targets `w_1`, `w_2 = r e^{iθ}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchGrid {
    pub nodes: Vec<f64>,
    pub w1: Vec<Complex64>,
    pub w2_moduli: Vec<f64>,
    pub w2_phases: Vec<f64>,
    pub psd_tol: f64,
}

impl Default for SearchGrid {
    fn default() -> Self {
        Self {
            nodes: vec![0.6, 0.8, 1.0, 1.5, 2.0, 3.0],
            w1: vec![Complex64::new(0.0, 0.0)],
            w2_moduli: (1..=19).map(|k| 0.05 * k as f64).collect(),
            w2_phases: vec![0.0, PI / 2.0, PI],
            psd_tol: DEFAULT_PSD_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleWitness {
    pub lambda1: f64,
    pub lambda2: f64,
    pub w1: Complex64,
    pub w2: Complex64,
    pub kernel_min_eigenvalue: f64,
    pub szego_min_eigenvalue: f64,
}

/// All grid points where the kernel's Pick matrix is PSD and the half-plane
/// Szegö Pick matrix is not, both with margin `10 · psd_tol`. The list is in
/// lexicographic order.
pub fn counterexample_search(kernel: &KernelSpec, grid: &SearchGrid) -> Result<Vec<CounterexampleWitness>> {
    if kernel.domain_floor().is_none() {
        return Err(Error::InvalidInput("counterexample search needs a half-plane kernel".into()));
    }
    let margin = BORDERLINE_FACTOR * grid.psd_tol;
    let mut out = Vec::new();
    for &l1 in &grid.nodes {
        for &l2 in &grid.nodes {
            if l1 == l2 {
                continue;
            }
            let nodes = [Complex64::new(l1, 0.0), Complex64::new(l2, 0.0)];
            if !nodes.iter().all(|z| kernel.contains(*z) && z.re > 0.0) {
                continue;
            }
            for &w1 in &grid.w1 {
                for &r in &grid.w2_moduli {
                    for &theta in &grid.w2_phases {
                        let w2 = Complex64::from_polar(r, theta);
                        if w1.norm() >= 1.0 || w2.norm() >= 1.0 {
                            continue;
                        }
                        let targets = [w1, w2];
                        let kc = certify_psd(&pick_matrix_for(kernel, &nodes, &targets)?, grid.psd_tol, DEFAULT_RANK_TOL)?;
                        if !kc.psd_with_margin(margin) {
                            continue;
                        }
                        let sc = certify_psd(
                            &pick_matrix_for(&KernelSpec::SzegoHalfPlane, &nodes, &targets)?,
                            grid.psd_tol,
                            DEFAULT_RANK_TOL,
                        )?;
                        if sc.not_psd_with_margin(margin) {
                            out.push(CounterexampleWitness {
                                lambda1: l1,
                                lambda2: l2,
                                w1,
                                w2,
                                kernel_min_eigenvalue: kc.min_eigenvalue,
                                szego_min_eigenvalue: sc.min_eigenvalue,
                            });
                        }
                    }
                }
            }
        }
    }
    let key = |w: &CounterexampleWitness| [w.lambda1, w.lambda2, w.w1.re, w.w1.im, w.w2.re, w.w2.im];
    out.sort_by(|a, b| {
        key(a)
            .iter()
            .zip(key(b).iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}
