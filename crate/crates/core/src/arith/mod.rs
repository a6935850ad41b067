//! Arithmetic of Dirichlet series: ζ and 1/ζ, Möbius values, Dirichlet
//! convolution, coefficient sequences of ζ^m and smooth-number sums.

mod primes;
mod series;
mod smooth;
mod zeta;

pub use primes::{mobius_sieve, PrimeTable};
pub use series::{dirichlet_convolve, zeta_power_coeffs, CoefficientSeries, TailBound};
pub use smooth::{euler_product, smooth_numbers, smooth_partial_sum};
pub use zeta::{zeta, zeta_reciprocal, ZetaConfig, ZetaEvaluation, DEFAULT_GUARD, DEFAULT_ZETA_TOL};
