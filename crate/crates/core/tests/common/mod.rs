#![allow(dead_code)]

use pickzeta::disc::RationalSchurFunction;
use pickzeta::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_disc_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn random_blaschke(rng: &mut ChaCha8Rng, degree: usize) -> RationalSchurFunction {
    RationalSchurFunction::blaschke(
        (0..degree).map(|_| random_disc_point(rng, 0.8)).collect(),
        Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)),
    )
}

/// Nodes in `|z| < 0.85` pairwise at least `gap` apart.
pub fn separated_nodes(rng: &mut ChaCha8Rng, n: usize, gap: f64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    while out.len() < n {
        let z = random_disc_point(rng, 0.85);
        if out.iter().all(|w| (w - z).norm() >= gap) {
            out.push(z);
        }
    }
    out
}

/// `scale · B(z)` for a random Blaschke product `B`: Schur class, not inner.
pub fn random_schur_function(rng: &mut ChaCha8Rng) -> (RationalSchurFunction, f64) {
    let degree = rng.gen_range(1..=3);
    (random_blaschke(rng, degree), rng.gen_range(0.3..0.95))
}

pub fn circle(k: usize, samples: usize, radius: f64) -> Complex64 {
    Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / samples as f64)
}
