//! Dense complex polynomials, coefficients in ascending order.

use num_complex::Complex64;

pub type Poly = Vec<Complex64>;

pub fn eval(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

pub fn mul(a: &[Complex64], b: &[Complex64]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn add(a: &[Complex64], b: &[Complex64]) -> Poly {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

pub fn scale(a: &[Complex64], s: Complex64) -> Poly {
    a.iter().map(|x| x * s).collect()
}

fn derivative(p: &[Complex64]) -> Poly {
    p.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

/// Drop leading coefficients below `tol` times the largest coefficient.
pub fn trim(p: &[Complex64], tol: f64) -> Poly {
    let scale = p.iter().fold(0.0f64, |a, c| a.max(c.norm()));
    let mut out = p.to_vec();
    while out.len() > 1 && out.last().is_some_and(|c| c.norm() <= tol * scale) {
        out.pop();
    }
    out
}

/// All roots by Aberth-Ehrlich iteration followed by Newton polishing.
pub fn roots(p: &[Complex64]) -> Vec<Complex64> {
    let p = trim(p, 1e-14);
    let deg = p.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = p[deg];
    let monic: Poly = p.iter().map(|c| c / lead).collect();
    let dp = derivative(&monic);
    let radius = 1.0 + monic[..deg].iter().fold(0.0f64, |a, c| a.max(c.norm()));
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(0.5 * radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / deg as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let ratio = eval(&monic, z[i]) / eval(&dp, z[i]);
            if !ratio.re.is_finite() || !ratio.im.is_finite() {
                continue;
            }
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm());
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let d = eval(&dp, *r);
            if d.norm() == 0.0 {
                break;
            }
            let step = eval(&monic, *r) / d;
            if !(step.norm() < 1e-6) {
                break;
            }
            *r -= step;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn roots_of_product_of_linear_factors() {
        let want = [c(0.3, 0.1), c(-0.5, 0.2), c(0.0, -0.7), c(0.9, 0.0)];
        let mut p = vec![c(1.0, 0.0)];
        for r in want {
            p = mul(&p, &[-r, c(1.0, 0.0)]);
        }
        let got = roots(&p);
        assert_eq!(got.len(), 4);
        for r in want {
            let best = got.iter().map(|g| (g - r).norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-12, "{r}: {best}");
        }
    }

    #[test]
    fn horner_and_arithmetic() {
        let p = vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        assert_eq!(eval(&p, c(2.0, 0.0)), c(17.0, 0.0));
        assert_eq!(add(&p, &[c(1.0, 0.0)]), vec![c(2.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        assert_eq!(trim(&[c(1.0, 0.0), c(1e-20, 0.0)], 1e-14).len(), 1);
        assert!(roots(&[c(5.0, 0.0)]).is_empty());
    }
}
