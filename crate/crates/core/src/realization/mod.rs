//! Finite-truncation transfer-function realization of contractive Dirichlet
//! multipliers.
//!
//! For `φ` with `Σ|c_n| <= 1`, the Gram matrix `κ_φ = (1 - φφ̄)ζ` at `k`
//! sample points is factored as `Ψ Ψ*`, the lifted vectors
//! `x_i = 1 ⊕ (ζ-feature ⊗ ψ_i)` and `y_i = φ(s_i) ⊕ (κ_μ-feature ⊗ ψ_i)`
//! have equal Gram matrices up to truncation, and a partial isometry with
//! `Ṽ x_i ≈ y_i` gives the blocks of `φ(s) = a + <(T_{s̄} ⊗ I - D)^{-1} γ, β>`.

mod evaluate;
mod lurking;
mod multiplier;
mod t_lambda;

pub use evaluate::{evaluate_at, evaluate_realization, evaluate_with, verify_direction_ii_to_i, RealizationValue, VerificationReport};
pub use lurking::{build_lurking_isometry, RealizationCertificates, RealizationModel, DEFAULT_GRAM_TOL, FACTOR_TOL, SPAN_DROP_TOL};
pub use multiplier::{factor_psi, kappa_phi_gram, PsiFactor, TestMultiplier};
pub use t_lambda::{build_t_lambda, epsilon_tilde, TLambdaModel, DEFAULT_ALPHA};
