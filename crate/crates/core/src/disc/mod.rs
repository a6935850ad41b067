//! Nevanlinna-Pick interpolation in the unit disc by the Schur algorithm,
//! the linear-fractional description of all solutions, and the transfer to
//! the right half-plane through the Cayley transform.

mod dirichlet_fit;
mod param;
pub mod poly;
mod schur;
mod solver;

pub use dirichlet_fit::{search_dirichlet_solution, DirichletFit, DirichletFitConfig};
pub use param::{parametrization_matrix, parametrize_solutions, UNITARITY_SAMPLES, ParametrizationMatrix, RationalFunction, UnitarityReport};
pub use schur::{
    disc_automorphism, eval_chain, RationalSchurFunction, SchurClassCertificate, SchurParameter, SchurStep,
    BOUNDARY_SAMPLES,
};
pub use solver::{
    schur_reduction, solve_disc, solve_halfplane, DiscSolution, HalfPlaneSolution, SchurReduction, SolveOutcome,
    DEGENERATE_TOL, MIN_NODE_SEPARATION, NEAR_BOUNDARY_TOL,
};
